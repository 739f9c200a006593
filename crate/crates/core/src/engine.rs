//! The rotor-routing game.
//!
//! A routing at `v` advances the rotor of `v` to the next slot and then sends
//! one chip from `v` along the *new* rotor edge. It is legal when `v` holds a
//! positive number of chips.

use std::collections::HashMap;

use crate::config::{rotor_subgraph_cycles, Divisor, Drc, RotorCycles};
use crate::error::{Error, Result};
use crate::graph::RibbonDigraph;
use crate::lattice::PeriodVector;
use crate::scalar::Int;

/// Default step budget for open-ended simulations.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Number of routings per vertex.
pub type RoutingVector<T> = Vec<T>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Legality {
    /// Refuse to route a vertex without a positive chip count.
    Legal,
    Unconstrained,
}

impl<T: Int> Drc<T> {
    /// Routes once at `v` in place.
    pub fn route_mut(&mut self, graph: &RibbonDigraph, v: usize, legality: Legality) -> Result<()> {
        graph.check_vertex(v)?;
        if legality == Legality::Legal && !self.divisor[v].is_positive() {
            return Err(Error::IllegalRouting { vertex: v });
        }
        let slot = (self.rotor.slot(v) + 1) % graph.out_degree(v);
        self.rotor.set_slot(v, slot);
        let head = graph.out_list(v)[slot];
        self.divisor[v] = self.divisor[v].clone() - T::one();
        self.divisor[head] = self.divisor[head].clone() + T::one();
        Ok(())
    }
}

pub fn route_at<T: Int>(graph: &RibbonDigraph, drc: &Drc<T>, v: usize, legality: Legality) -> Result<Drc<T>> {
    let mut next = drc.clone();
    next.route_mut(graph, v, legality)?;
    Ok(next)
}

/// Performs `r(v)` unconstrained routings at every `v`, in bulk.
///
/// Full turns of the rotor at `v` send `d(v, u)` chips to every
/// out-neighbour `u`; the remaining partial sweep is walked slot by slot.
pub fn apply_routing_vector<T: Int>(graph: &RibbonDigraph, drc: &Drc<T>, r: &[T]) -> Result<Drc<T>> {
    drc.check(graph)?;
    if r.len() != graph.n() {
        return Err(Error::LengthMismatch { expected: graph.n(), actual: r.len() });
    }
    if let Some(v) = r.iter().position(|x| x.is_negative()) {
        return Err(Error::NegativeRouting { vertex: v });
    }
    let mut out = drc.clone();
    for v in graph.vertices() {
        if r[v].is_zero() {
            continue;
        }
        let d = graph.out_degree(v);
        let (turns, rem) = r[v].div_rem(&T::from_count(d));
        let rem = rem.to_count().expect("remainder below out-degree");
        out.divisor[v] = out.divisor[v].clone() - r[v].clone();
        if !turns.is_zero() {
            for &(u, count) in graph.head_counts(v) {
                out.divisor[u] = out.divisor[u].clone() + turns.clone() * T::from_count(count);
            }
        }
        let start = drc.rotor.slot(v);
        for step in 1..=rem {
            let head = graph.out_list(v)[(start + step) % d];
            out.divisor.add_count(head, 1);
        }
        out.rotor.set_slot(v, (start + rem) % d);
    }
    Ok(out)
}

/// One step of the single-chip walk: a legal routing at the chip's vertex.
pub fn classical_step<T: Int>(graph: &RibbonDigraph, drc: &Drc<T>) -> Result<Drc<T>> {
    drc.check(graph)?;
    let v = drc.divisor.single_chip().ok_or(Error::NotOneChip)?;
    route_at(graph, drc, v, Legality::Legal)
}

/// One chip whose vertex lies on the unique cycle of the rotor subgraph.
pub fn is_unicycle<T: Int>(graph: &RibbonDigraph, drc: &Drc<T>) -> bool {
    let Some(v) = drc.divisor.single_chip() else {
        return false;
    };
    let cycles = rotor_subgraph_cycles(graph, &drc.rotor);
    cycles.cycles.len() == 1 && cycles.on_cycle(v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recurrence {
    Recurrent,
    NegativeEntry { vertex: usize },
    /// A rotor cycle none of whose vertices holds a chip.
    ChiplessCycle { cycle: Vec<usize> },
}

impl Recurrence {
    pub fn is_recurrent(&self) -> bool {
        matches!(self, Recurrence::Recurrent)
    }
}

/// Recurrent iff `x >= 0` and every rotor cycle carries a chip.
pub fn recurrence<T: Int>(graph: &RibbonDigraph, drc: &Drc<T>) -> Recurrence {
    if let Some(vertex) = drc.divisor.first_negative() {
        return Recurrence::NegativeEntry { vertex };
    }
    let cycles = rotor_subgraph_cycles(graph, &drc.rotor);
    for cycle in cycles.cycles {
        if !cycle.iter().any(|&v| drc.divisor[v].is_positive()) {
            return Recurrence::ChiplessCycle { cycle };
        }
    }
    Recurrence::Recurrent
}

pub fn is_recurrent<T: Int>(graph: &RibbonDigraph, drc: &Drc<T>) -> bool {
    recurrence(graph, drc).is_recurrent()
}

/// `Σ_v per(v)·d⁺(v)`: the orbit size of every unicycle, and the length of
/// the shortest return game of every recurrent configuration.
pub fn orbit_size<T: Int>(graph: &RibbonDigraph, period: &PeriodVector<T>) -> T {
    graph
        .vertices()
        .fold(T::zero(), |acc, v| acc + period.get(v).clone() * T::from_count(graph.out_degree(v)))
}

/// `d⁺(v)·per(v)` for every `v`: a routing vector that is the identity.
pub fn full_turn_vector<T: Int>(graph: &RibbonDigraph, period: &PeriodVector<T>) -> RoutingVector<T> {
    graph
        .vertices()
        .map(|v| period.get(v).clone() * T::from_count(graph.out_degree(v)))
        .collect()
}

/// Sequence of routed vertices together with the resulting configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTrace<T> {
    pub moves: Vec<usize>,
    pub end: Drc<T>,
}

/// Replays `moves` from `start`, checking legality when asked.
pub fn replay<T: Int>(graph: &RibbonDigraph, start: &Drc<T>, moves: &[usize], legality: Legality) -> Result<Drc<T>> {
    start.check(graph)?;
    let mut drc = start.clone();
    for &v in moves {
        drc.route_mut(graph, v, legality)?;
    }
    Ok(drc)
}

/// A legal game from a recurrent `drc` back to itself in which every `v` is
/// routed exactly `d⁺(v)·per(v)` times.
///
/// One chip per rotor cycle is singled out; chip by chip, the vertex holding
/// that chip is routed until the chip reaches a vertex that has already been
/// routed its full quota. Every other chip rides along untouched, and each
/// singled-out chip stops where it started.
pub fn return_game<T: Int>(
    graph: &RibbonDigraph,
    period: &PeriodVector<T>,
    drc: &Drc<T>,
    budget: u64,
) -> Result<GameTrace<T>> {
    drc.check(graph)?;
    if !is_recurrent(graph, drc) {
        return Err(Error::NotRecurrent);
    }
    let cycles: RotorCycles = rotor_subgraph_cycles(graph, &drc.rotor);
    let carriers: Vec<usize> = cycles
        .cycles
        .iter()
        .map(|c| *c.iter().find(|&&v| drc.divisor[v].is_positive()).expect("recurrent"))
        .collect();

    let quota = full_turn_vector(graph, period);
    let total = quota.iter().fold(T::zero(), |acc, q| acc + q.clone());
    if total > T::from_u64(budget).unwrap_or_else(|| total.clone()) {
        return Err(Error::BudgetExceeded { budget });
    }
    let quota: Vec<usize> = quota
        .iter()
        .map(|q| q.to_count().expect("quota within budget"))
        .collect();

    let mut routed = vec![0usize; graph.n()];
    let mut moves = Vec::new();
    let mut state = drc.clone();
    for &start in &carriers {
        let mut at = start;
        while routed[at] < quota[at] {
            state.route_mut(graph, at, Legality::Legal)?;
            routed[at] += 1;
            moves.push(at);
            at = graph.head(state.rotor.edge(at));
        }
        debug_assert_eq!(at, start);
    }
    debug_assert_eq!(routed, quota);
    debug_assert_eq!(&state, drc);
    Ok(GameTrace { moves, end: state })
}

/// Where a deterministic legal game first revisits a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Repeat<T> {
    /// The first configuration seen twice; it is recurrent.
    pub repeated: Drc<T>,
    /// Steps taken before first reaching `repeated`.
    pub steps_to_enter: u64,
    /// Steps between the two visits.
    pub cycle_length: u64,
}

/// Plays the legal game that always routes the smallest-index vertex with a
/// positive chip count, until a configuration recurs.
pub fn run_legal_until_repeat<T: Int>(graph: &RibbonDigraph, drc: &Drc<T>, budget: u64) -> Result<Repeat<T>> {
    drc.check(graph)?;
    let degree = drc.divisor.degree();
    if degree < T::one() {
        return Err(Error::DegreeTooSmall { degree: degree.to_string() });
    }
    let mut seen: HashMap<Drc<T>, u64> = HashMap::new();
    let mut state = drc.clone();
    let mut step = 0u64;
    loop {
        if let Some(&first) = seen.get(&state) {
            return Ok(Repeat {
                repeated: state,
                steps_to_enter: first,
                cycle_length: step - first,
            });
        }
        if step >= budget {
            return Err(Error::BudgetExceeded { budget });
        }
        seen.insert(state.clone(), step);
        let v = state
            .divisor
            .chips()
            .iter()
            .position(|c| c.is_positive())
            .expect("positive degree leaves a positive vertex");
        state.route_mut(graph, v, Legality::Legal)?;
        step += 1;
    }
}

/// Convenience: a divisor with a single chip at `v`.
pub fn one_chip<T: Int>(graph: &RibbonDigraph, v: usize) -> Divisor<T> {
    Divisor::unit(graph.n(), v)
}
