//! Linear equivalence of divisor-and-rotor configurations and the decisions
//! built on it: reachability of recurrent targets, unicycle orbits, and the
//! orbit count.
//!
//! Two configurations are equivalent when one can be turned into the other by
//! unconstrained routings. Routing `α(v)` times at every `v`, where `α(v)` is
//! the forward slot distance from the first rotor to the second, aligns the
//! rotors; what remains is a question about divisors with equal rotors, which
//! is linear equivalence of divisors.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::config::{rotor_subgraph_cycles, Divisor, Drc, RotorConfiguration};
use crate::engine::{apply_routing_vector, classical_step, is_recurrent, is_unicycle, run_legal_until_repeat, RoutingVector};
use crate::error::{Error, Result};
use crate::graph::RibbonDigraph;
use crate::lattice::{nonneg_shift, Lattice};
use crate::scalar::Int;

/// `α(v) = (slot(ρ2(v)) - slot(ρ1(v))) mod d⁺(v)`: routing `α` turns `ρ1`
/// into `ρ2`.
pub fn alpha_vector<T: Int>(
    graph: &RibbonDigraph,
    from: &RotorConfiguration,
    to: &RotorConfiguration,
) -> Result<RoutingVector<T>> {
    from.check_len(graph.n())?;
    to.check_len(graph.n())?;
    Ok(graph
        .vertices()
        .map(|v| {
            let d = graph.out_degree(v);
            T::from_count((to.slot(v) + d - from.slot(v)) % d)
        })
        .collect())
}

/// A nonnegative routing vector taking `a` to `b`, if `a ~ b`.
///
/// The witness is `α + (d⁺(v)·z(v))_v` where `z` is a firing vector taking
/// the rotor-aligned divisor to `b`'s divisor, shifted by the least multiple
/// of the period vector that makes it nonnegative.
pub fn equivalence_witness<T: Int>(
    graph: &RibbonDigraph,
    lattice: &Lattice<T>,
    a: &Drc<T>,
    b: &Drc<T>,
) -> Result<Option<RoutingVector<T>>> {
    a.check(graph)?;
    b.check(graph)?;
    let alpha = alpha_vector(graph, &a.rotor, &b.rotor)?;
    let aligned = apply_routing_vector(graph, a, &alpha)?;
    debug_assert_eq!(aligned.rotor, b.rotor);
    let Some(z) = lattice.equivalence_witness(&aligned.divisor, &b.divisor) else {
        return Ok(None);
    };
    let (z, _) = nonneg_shift(lattice.period(), &z);
    Ok(Some(
        alpha
            .into_iter()
            .zip(z)
            .enumerate()
            .map(|(v, (al, zv))| al + zv * T::from_count(graph.out_degree(v)))
            .collect(),
    ))
}

pub fn drc_equivalent<T: Int>(graph: &RibbonDigraph, lattice: &Lattice<T>, a: &Drc<T>, b: &Drc<T>) -> Result<bool> {
    a.check(graph)?;
    b.check(graph)?;
    let alpha = alpha_vector(graph, &a.rotor, &b.rotor)?;
    let aligned = apply_routing_vector(graph, a, &alpha)?;
    Ok(lattice.divisors_equivalent(&aligned.divisor, &b.divisor))
}

/// Whether a legal game leads from `from` to the recurrent `target`.
///
/// For recurrent targets this is exactly equivalence. Other targets are
/// refused.
pub fn reachable<T: Int>(graph: &RibbonDigraph, lattice: &Lattice<T>, from: &Drc<T>, target: &Drc<T>) -> Result<bool> {
    target.check(graph)?;
    if !is_recurrent(graph, target) {
        return Err(Error::NotRecurrent);
    }
    drc_equivalent(graph, lattice, from, target)
}

/// Whether two unicycles lie in the same orbit of the single-chip walk.
pub fn same_orbit<T: Int>(graph: &RibbonDigraph, lattice: &Lattice<T>, a: &Drc<T>, b: &Drc<T>) -> Result<bool> {
    a.check(graph)?;
    b.check(graph)?;
    if !is_unicycle(graph, a) || !is_unicycle(graph, b) {
        return Err(Error::NotUnicycle);
    }
    drc_equivalent(graph, lattice, a, b)
}

/// All unicycles `(1_v, ρ)`: rotor configurations in mixed-radix order, and
/// for each one with a single rotor cycle, every chip position on that cycle
/// in ascending order. `cap` bounds the number of rotor configurations
/// examined.
pub fn enumerate_unicycles<T: Int>(graph: &RibbonDigraph, cap: usize) -> Result<Vec<Drc<T>>> {
    let rotors = RotorConfiguration::enumerate(graph, cap).ok_or(Error::CapExceeded { cap })?;
    let mut out = Vec::new();
    for rotor in rotors {
        let cycles = rotor_subgraph_cycles(graph, &rotor);
        if cycles.cycles.len() != 1 {
            continue;
        }
        let mut on_cycle = cycles.cycles[0].clone();
        on_cycle.sort_unstable();
        for v in on_cycle {
            out.push(Drc::new(Divisor::unit(graph.n(), v), rotor.clone()));
        }
    }
    Ok(out)
}

/// The orbit of a unicycle under the single-chip walk, starting with it.
pub fn unicycle_orbit<T: Int>(graph: &RibbonDigraph, start: &Drc<T>, budget: u64) -> Result<Vec<Drc<T>>> {
    if !is_unicycle(graph, start) {
        return Err(Error::NotUnicycle);
    }
    let mut orbit = vec![start.clone()];
    let mut state = classical_step(graph, start)?;
    while &state != start {
        if orbit.len() as u64 >= budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let next = classical_step(graph, &state)?;
        orbit.push(state);
        state = next;
    }
    Ok(orbit)
}

/// Unicycles grouped by orbit. Each orbit is keyed by its lexicographically
/// least configuration; orbits are listed in order of first appearance in
/// `unicycles` and each orbit lists its members' indices ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub orbits: Vec<Vec<usize>>,
}

/// Partitions `unicycles` by simulated orbits; `jobs > 1` simulates orbits
/// on that many threads. The result does not depend on `jobs`.
pub fn orbit_partition<T: Int>(
    graph: &RibbonDigraph,
    unicycles: &[Drc<T>],
    budget: u64,
    jobs: usize,
) -> Result<OrbitPartition> {
    let key = |u: &Drc<T>| -> Result<Drc<T>> {
        let orbit = unicycle_orbit(graph, u, budget)?;
        Ok(orbit.into_iter().min().expect("orbit contains its start"))
    };
    let keys: Vec<Drc<T>> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| unicycles.par_iter().map(key).collect::<Result<_>>())?
    } else {
        unicycles.iter().map(key).collect::<Result<_>>()?
    };

    let mut index: HashMap<&Drc<T>, usize> = HashMap::new();
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for (i, k) in keys.iter().enumerate() {
        let slot = *index.entry(k).or_insert_with(|| {
            orbits.push(Vec::new());
            orbits.len() - 1
        });
        orbits[slot].push(i);
    }
    Ok(OrbitPartition { orbits })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitCountMethod {
    /// Enumerate all unicycles and partition them by simulated orbits.
    Enumeration,
    /// The order of the Picard group.
    Picard,
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationLimits {
    /// Maximum number of rotor configurations to enumerate.
    pub cap: usize,
    /// Step budget per orbit.
    pub budget: u64,
    pub jobs: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { cap: 1 << 20, budget: crate::engine::DEFAULT_BUDGET, jobs: 1 }
    }
}

/// Number of unicycle orbits of the single-chip walk.
pub fn count_unicycle_orbits<T: Int>(
    graph: &RibbonDigraph,
    lattice: &Lattice<T>,
    method: OrbitCountMethod,
    limits: EnumerationLimits,
) -> Result<T> {
    match method {
        OrbitCountMethod::Picard => Ok(lattice.picard_order()),
        OrbitCountMethod::Enumeration => {
            let unicycles = enumerate_unicycles::<T>(graph, limits.cap)?;
            let partition = orbit_partition(graph, &unicycles, limits.budget, limits.jobs)?;
            Ok(T::from_count(partition.orbits.len()))
        }
    }
}

/// A recurrent configuration equivalent to, and legally reachable from,
/// `drc`: the first configuration the deterministic legal game revisits.
pub fn recurrent_representative<T: Int>(graph: &RibbonDigraph, drc: &Drc<T>, budget: u64) -> Result<Drc<T>> {
    Ok(run_legal_until_repeat(graph, drc, budget)?.repeated)
}
