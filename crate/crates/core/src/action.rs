//! The rotor-router action of the degree-zero Picard group on spanning
//! in-arborescences of an Eulerian digraph, and base-point questions for
//! bidirected ribbon graphs.

use crate::arborescence::{arborescence_to_rotor, Arborescence};
use crate::config::{rotor_subgraph_cycles, Divisor, Drc, RotorConfiguration};
use crate::embedding::{tree_to_arborescence, Bidirected, SpanningTree};
use crate::engine::{apply_routing_vector, classical_step, route_at, run_legal_until_repeat, Legality, DEFAULT_BUDGET};
use crate::equivalence::drc_equivalent;
use crate::error::{Error, Result};
use crate::graph::{EdgeRef, RibbonDigraph};
use crate::lattice::Lattice;
use crate::scalar::{div_ceil, Int};

/// Which positive non-root vertex the simulated game routes next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    #[default]
    SmallestFirst,
    LargestFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActionOptions {
    /// Slot of the root's out-edge `r→w` used to complete the arborescence
    /// to a rotor configuration.
    pub root_slot: usize,
    pub schedule: Schedule,
    pub budget: u64,
}

impl Default for ActionOptions {
    fn default() -> Self {
        ActionOptions { root_slot: 0, schedule: Schedule::SmallestFirst, budget: DEFAULT_BUDGET }
    }
}

/// A divisor equivalent to `x` that is nonnegative everywhere except
/// possibly at `root`.
///
/// Vertices are visited in reverse breadth-first order from `root`; a vertex
/// short of chips has its tree parent fired just often enough to cover the
/// deficit. Firing a parent only lowers the parent, which is visited later.
pub fn make_nonneg_off_root<T: Int>(graph: &RibbonDigraph, x: &Divisor<T>, root: usize) -> Result<Divisor<T>> {
    x.check_len(graph.n())?;
    graph.check_vertex(root)?;
    let (order, parent) = graph.bfs_tree(root);
    let mut out = x.clone();
    for &v in order.iter().rev() {
        if v == root || !out[v].is_negative() {
            continue;
        }
        let p = parent[v].expect("non-root vertex has a parent").tail;
        let times = div_ceil(&-out[v].clone(), &T::from_count(graph.multiplicity(p, v)));
        out[p] = out[p].clone() - times.clone() * T::from_count(graph.out_degree(p));
        for &(h, m) in graph.head_counts(p) {
            out[h] = out[h].clone() + times.clone() * T::from_count(m);
        }
    }
    Ok(out)
}

fn require_action_input<T: Int>(graph: &RibbonDigraph, x: &Divisor<T>, tree: &Arborescence) -> Result<()> {
    graph.require_eulerian()?;
    x.check_len(graph.n())?;
    let degree = x.degree();
    if !degree.is_zero() {
        return Err(Error::DegreeNotZero { degree: degree.to_string() });
    }
    if tree.edges().len() != graph.n() {
        return Err(Error::LengthMismatch { expected: graph.n(), actual: tree.edges().len() });
    }
    Ok(())
}

/// `x_r(T)` by playing the legal game that never routes the root until every
/// chip has reached it.
pub fn action_simulate<T: Int>(
    graph: &RibbonDigraph,
    x: &Divisor<T>,
    tree: &Arborescence,
    options: ActionOptions,
) -> Result<Arborescence> {
    require_action_input(graph, x, tree)?;
    let root = tree.root();
    let rotor = arborescence_to_rotor(graph, tree, EdgeRef::new(root, options.root_slot))?;
    let mut state = Drc::new(make_nonneg_off_root(graph, x, root)?, rotor);

    let mut moves = 0u64;
    loop {
        let positive = |v: &usize| *v != root && state.divisor[*v].is_positive();
        let next = match options.schedule {
            Schedule::SmallestFirst => graph.vertices().find(positive),
            Schedule::LargestFirst => graph.vertices().rev().find(positive),
        };
        let Some(v) = next else { break };
        if moves >= options.budget {
            return Err(Error::BudgetExceeded { budget: options.budget });
        }
        // All chips at `v` are routed at once; each single routing is legal.
        let mut r = vec![T::zero(); graph.n()];
        r[v] = state.divisor[v].clone();
        state = apply_routing_vector(graph, &state, &r)?;
        moves += 1;
    }
    debug_assert!(state.divisor.chips().iter().all(|c| c.is_zero()));
    Arborescence::from_rotor(graph, &state.rotor, root)
}

/// The unique `r→w`-good configuration in a degree-zero class: zero divisor,
/// rotor `r→w` at the root, and a spanning in-arborescence to the root
/// everywhere else.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RwGoodForm {
    pub root: usize,
    pub root_edge: EdgeRef,
    pub rotor: RotorConfiguration,
}

impl RwGoodForm {
    pub fn arborescence(&self, graph: &RibbonDigraph) -> Arborescence {
        Arborescence::from_rotor(graph, &self.rotor, self.root).expect("rw-good rotor is an arborescence off the root")
    }

    pub fn to_drc<T: Int>(&self) -> Drc<T> {
        Drc::new(Divisor::zero(self.rotor.len()), self.rotor.clone())
    }
}

/// The `r→w`-good configuration equivalent to a degree-zero `drc`.
///
/// One chip is added at the root, the legal game is run to a unicycle, and
/// the single-chip walk is followed until the chip sits at the root with the
/// root's rotor on `r→w`; removing the chip gives the answer.
pub fn rw_good_canonical<T: Int>(
    graph: &RibbonDigraph,
    drc: &Drc<T>,
    root: usize,
    root_slot: usize,
    budget: u64,
) -> Result<RwGoodForm> {
    graph.require_eulerian()?;
    drc.check(graph)?;
    let root_edge = EdgeRef::new(root, root_slot);
    graph.check_edge(root_edge)?;
    let degree = drc.divisor.degree();
    if !degree.is_zero() {
        return Err(Error::DegreeNotZero { degree: degree.to_string() });
    }
    let mut lifted = drc.clone();
    lifted.divisor[root] = lifted.divisor[root].clone() + T::one();
    let mut state = run_legal_until_repeat(graph, &lifted, budget)?.repeated;

    // Per is all ones on Eulerian graphs, so one orbit has |E| steps.
    let orbit = graph.edge_count() as u64;
    for _ in 0..=orbit {
        if state.divisor.single_chip() == Some(root) && state.rotor.slot(root) == root_slot {
            return Ok(RwGoodForm { root, root_edge, rotor: state.rotor });
        }
        state = classical_step(graph, &state)?;
    }
    unreachable!("the chip visits the root with every rotor position within one orbit")
}

/// `x_r(T)` via the `r→w`-good representative of `(x, T ∪ r→w)`.
pub fn action_alternative<T: Int>(
    graph: &RibbonDigraph,
    x: &Divisor<T>,
    tree: &Arborescence,
    options: ActionOptions,
) -> Result<Arborescence> {
    require_action_input(graph, x, tree)?;
    let root = tree.root();
    let rotor = arborescence_to_rotor(graph, tree, EdgeRef::new(root, options.root_slot))?;
    let form = rw_good_canonical(graph, &Drc::new(x.clone(), rotor), root, options.root_slot, options.budget)?;
    Ok(form.arborescence(graph))
}

/// Whether `x_r(from) = to`, decided by one equivalence check.
pub fn action_decide<T: Int>(
    graph: &RibbonDigraph,
    lattice: &Lattice<T>,
    x: &Divisor<T>,
    from: &Arborescence,
    to: &Arborescence,
    root_slot: usize,
) -> Result<bool> {
    require_action_input(graph, x, from)?;
    if from.root() != to.root() {
        return Err(Error::RootMismatch { expected: from.root(), actual: to.root() });
    }
    let extra = EdgeRef::new(from.root(), root_slot);
    let a = Drc::new(x.clone(), arborescence_to_rotor(graph, from, extra)?);
    let b = Drc::new(Divisor::zero(graph.n()), arborescence_to_rotor(graph, to, extra)?);
    drc_equivalent(graph, lattice, &a, &b)
}

/// Reverses every rotor cycle; rotors off the cycles are kept.
pub fn reverse_cycles(b: &Bidirected, rotor: &RotorConfiguration) -> Result<RotorConfiguration> {
    let graph = b.graph();
    rotor.check_len(graph.n())?;
    let mut out = rotor.clone();
    for cycle in rotor_subgraph_cycles(graph, rotor).cycles {
        for (i, &v) in cycle.iter().enumerate() {
            let next = cycle[(i + 1) % cycle.len()];
            let back = b.reverse(rotor.edge(v));
            debug_assert_eq!(back.tail, next);
            out.set_slot(next, back.slot);
        }
    }
    Ok(out)
}

/// Outcome of the reversal test: the first one-cycle rotor configuration
/// `ρ` with `(0, ρ)` not equivalent to `(0, reversed ρ)`, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversalReport {
    pub checked: usize,
    pub counterexample: Option<RotorConfiguration>,
}

impl ReversalReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Whether every unicycle is equivalent to its reversal.
///
/// Equivalence ignores a common chip added to both sides, so it suffices to
/// test `(0, ρ) ~ (0, reversed ρ)` once per one-cycle rotor configuration.
/// `cap` bounds the number of rotor configurations examined.
pub fn reversal_test<T: Int>(b: &Bidirected, lattice: &Lattice<T>, cap: usize) -> Result<ReversalReport> {
    let graph = b.graph();
    let rotors = RotorConfiguration::enumerate(graph, cap).ok_or(Error::CapExceeded { cap })?;
    let zero = Divisor::<T>::zero(graph.n());
    let mut checked = 0;
    for rotor in rotors {
        if rotor_subgraph_cycles(graph, &rotor).cycles.len() != 1 {
            continue;
        }
        checked += 1;
        let reversed = reverse_cycles(b, &rotor)?;
        let a = Drc::new(zero.clone(), rotor.clone());
        let r = Drc::new(zero.clone(), reversed);
        if !drc_equivalent(graph, lattice, &a, &r)? {
            return Ok(ReversalReport { checked, counterexample: Some(rotor) });
        }
    }
    Ok(ReversalReport { checked, counterexample: None })
}

/// Whether the action on spanning trees is the same for every base vertex.
pub fn base_point_independent<T: Int>(b: &Bidirected, lattice: &Lattice<T>, cap: usize) -> Result<bool> {
    Ok(reversal_test(b, lattice, cap)?.holds())
}

/// The action on undirected spanning trees with base vertex `root`: orient
/// towards `root`, act, forget orientations.
pub fn tree_action<T: Int>(
    b: &Bidirected,
    x: &Divisor<T>,
    tree: &SpanningTree,
    root: usize,
    root_slot: usize,
    budget: u64,
) -> Result<SpanningTree> {
    let arb = tree_to_arborescence(b, tree, root)?;
    let options = ActionOptions { root_slot, budget, ..Default::default() };
    Ok(b.tree_of(&action_alternative(b.graph(), x, &arb, options)?))
}

/// Two base vertices on which the action of `divisor` on `tree` differs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePointWitness<T> {
    pub v: usize,
    pub w: usize,
    pub tree: SpanningTree,
    pub divisor: Divisor<T>,
    pub image_at_v: SpanningTree,
    pub image_at_w: SpanningTree,
}

/// Builds `(v, w, T', x)` with `x_v(T') ≠ x_w(T')` from a one-cycle rotor
/// configuration that is not equivalent to its reversal.
///
/// `v` is the smallest cycle vertex and `w` the head of its rotor. Starting
/// from `(0, ρ)`, `w` is routed until its rotor is the reverse of `ρ(v)`; the
/// resulting divisor is `x`, and `T'` forgets the orientation of `ρ` off `w`.
/// Returns `None` when the two actions agree, which happens exactly when
/// `ρ` was equivalent to its reversal.
pub fn base_point_witness<T: Int>(
    b: &Bidirected,
    rotor: &RotorConfiguration,
    budget: u64,
) -> Result<Option<BasePointWitness<T>>> {
    let graph = b.graph();
    rotor.check_len(graph.n())?;
    let cycles = rotor_subgraph_cycles(graph, rotor);
    if cycles.cycles.len() != 1 {
        return Err(Error::NotUnicycle);
    }
    let v = cycles.cycles[0][0];
    let forward = rotor.edge(v);
    let w = graph.head(forward);
    let back = b.reverse(forward);

    let mut state = Drc::new(Divisor::<T>::zero(graph.n()), rotor.clone());
    while state.rotor.slot(w) != back.slot {
        state = route_at(graph, &state, w, Legality::Unconstrained)?;
    }
    let tree = b.tree_of(&Arborescence::from_rotor(graph, rotor, w)?);
    let image_at_v = tree_action(b, &state.divisor, &tree, v, forward.slot, budget)?;
    let image_at_w = tree_action(b, &state.divisor, &tree, w, back.slot, budget)?;
    if image_at_v == image_at_w {
        return Ok(None);
    }
    Ok(Some(BasePointWitness { v, w, tree, divisor: state.divisor, image_at_v, image_at_w }))
}

/// Compares the actions at every base vertex against base vertex 0 for all
/// spanning trees and the given degree-zero divisors. Returns the first
/// disagreement.
pub fn compare_base_points<T: Int>(
    b: &Bidirected,
    divisors: &[Divisor<T>],
    cap: usize,
    budget: u64,
) -> Result<Option<BasePointWitness<T>>> {
    let graph = b.graph();
    let trees = b.spanning_trees(cap)?;
    for tree in &trees {
        for x in divisors {
            let image_at_v = tree_action(b, x, tree, 0, 0, budget)?;
            for w in 1..graph.n() {
                let image_at_w = tree_action(b, x, tree, w, 0, budget)?;
                if image_at_w != image_at_v {
                    return Ok(Some(BasePointWitness {
                        v: 0,
                        w,
                        tree: tree.clone(),
                        divisor: x.clone(),
                        image_at_v,
                        image_at_w,
                    }));
                }
            }
        }
    }
    Ok(None)
}
