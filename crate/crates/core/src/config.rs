//! Game state: divisors, rotor configurations and their pairs.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Sub};

use crate::error::{Error, Result};
use crate::graph::{EdgeRef, RibbonDigraph};
use crate::scalar::Int;

/// Integer chip count per vertex. Entries may be negative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Divisor<T> {
    chips: Vec<T>,
}

impl<T: Int> Divisor<T> {
    pub fn new(chips: Vec<T>) -> Self {
        Divisor { chips }
    }

    pub fn zero(n: usize) -> Self {
        Divisor::new(vec![T::zero(); n])
    }

    /// All-ones divisor.
    pub fn ones(n: usize) -> Self {
        Divisor::new(vec![T::one(); n])
    }

    /// One chip on `v`, nothing elsewhere.
    pub fn unit(n: usize, v: usize) -> Self {
        let mut d = Divisor::zero(n);
        d.chips[v] = T::one();
        d
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Divisor::new(
            values
                .iter()
                .map(|&c| T::from_i64(c).expect("chip count fits the scalar type"))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.chips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chips.is_empty()
    }

    pub fn chips(&self) -> &[T] {
        &self.chips
    }

    pub fn into_chips(self) -> Vec<T> {
        self.chips
    }

    pub fn degree(&self) -> T {
        self.chips.iter().fold(T::zero(), |acc, c| acc + c.clone())
    }

    /// Coordinatewise `x >= 0`.
    pub fn is_effective(&self) -> bool {
        self.chips.iter().all(|c| !c.is_negative())
    }

    pub fn first_negative(&self) -> Option<usize> {
        self.chips.iter().position(|c| c.is_negative())
    }

    /// The vertex holding the chip when this is `1_v`.
    pub fn single_chip(&self) -> Option<usize> {
        let mut found = None;
        for (v, c) in self.chips.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_one() || found.is_some() {
                return None;
            }
            found = Some(v);
        }
        found
    }

    pub(crate) fn add_count(&mut self, v: usize, count: usize) {
        if count != 0 {
            self.chips[v] = self.chips[v].clone() + T::from_count(count);
        }
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: n, actual: self.len() })
        }
    }
}

impl<T> Index<usize> for Divisor<T> {
    type Output = T;
    fn index(&self, v: usize) -> &T {
        &self.chips[v]
    }
}

impl<T> IndexMut<usize> for Divisor<T> {
    fn index_mut(&mut self, v: usize) -> &mut T {
        &mut self.chips[v]
    }
}

impl<T: Int> Add for &Divisor<T> {
    type Output = Divisor<T>;
    fn add(self, rhs: &Divisor<T>) -> Divisor<T> {
        assert_eq!(self.len(), rhs.len());
        Divisor::new(
            self.chips
                .iter()
                .zip(&rhs.chips)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

impl<T: Int> Sub for &Divisor<T> {
    type Output = Divisor<T>;
    fn sub(self, rhs: &Divisor<T>) -> Divisor<T> {
        assert_eq!(self.len(), rhs.len());
        Divisor::new(
            self.chips
                .iter()
                .zip(&rhs.chips)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

impl<T: fmt::Display> fmt::Display for Divisor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.chips.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// One out-edge slot per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RotorConfiguration {
    slots: Vec<usize>,
}

impl RotorConfiguration {
    pub fn new(graph: &RibbonDigraph, slots: Vec<usize>) -> Result<Self> {
        if slots.len() != graph.n() {
            return Err(Error::LengthMismatch { expected: graph.n(), actual: slots.len() });
        }
        for (v, &slot) in slots.iter().enumerate() {
            graph.check_edge(EdgeRef::new(v, slot))?;
        }
        Ok(RotorConfiguration { slots })
    }

    /// Every rotor at slot 0.
    pub fn initial(graph: &RibbonDigraph) -> Self {
        RotorConfiguration { slots: vec![0; graph.n()] }
    }

    /// Rotors pointing at the given heads (first matching slot).
    pub fn from_heads(graph: &RibbonDigraph, heads: &[usize]) -> Result<Self> {
        if heads.len() != graph.n() {
            return Err(Error::LengthMismatch { expected: graph.n(), actual: heads.len() });
        }
        let slots = heads
            .iter()
            .enumerate()
            .map(|(v, &h)| {
                graph
                    .slot_towards(v, h)
                    .ok_or(Error::NoSuchEdge { tail: v, head: h })
            })
            .collect::<Result<_>>()?;
        Ok(RotorConfiguration { slots })
    }

    pub(crate) fn from_slots_unchecked(slots: Vec<usize>) -> Self {
        RotorConfiguration { slots }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slot(&self, v: usize) -> usize {
        self.slots[v]
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    pub fn edge(&self, v: usize) -> EdgeRef {
        EdgeRef::new(v, self.slots[v])
    }

    pub(crate) fn set_slot(&mut self, v: usize, slot: usize) {
        self.slots[v] = slot;
    }

    /// Head of the rotor at every vertex.
    pub fn heads(&self, graph: &RibbonDigraph) -> Vec<usize> {
        (0..self.len()).map(|v| graph.head(self.edge(v))).collect()
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: n, actual: self.len() })
        }
    }

    /// All rotor configurations of `graph` in mixed-radix order (vertex 0
    /// varies slowest), or `None` if there are more than `cap`.
    pub fn enumerate(graph: &RibbonDigraph, cap: usize) -> Option<Vec<RotorConfiguration>> {
        let total = graph
            .vertices()
            .try_fold(1usize, |acc, v| acc.checked_mul(graph.out_degree(v)))?;
        if total > cap {
            return None;
        }
        let n = graph.n();
        let mut out = Vec::with_capacity(total);
        let mut slots = vec![0usize; n];
        loop {
            out.push(RotorConfiguration { slots: slots.clone() });
            let mut v = n;
            loop {
                if v == 0 {
                    return Some(out);
                }
                v -= 1;
                slots[v] += 1;
                if slots[v] < graph.out_degree(v) {
                    break;
                }
                slots[v] = 0;
            }
        }
    }
}

/// Divisor-and-rotor configuration: the full state of the game.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Drc<T> {
    pub divisor: Divisor<T>,
    pub rotor: RotorConfiguration,
}

impl<T: Int> Drc<T> {
    pub fn new(divisor: Divisor<T>, rotor: RotorConfiguration) -> Self {
        Drc { divisor, rotor }
    }

    /// Checks both parts have one entry per vertex of `graph` and every
    /// rotor slot is in range.
    pub fn check(&self, graph: &RibbonDigraph) -> Result<()> {
        self.divisor.check_len(graph.n())?;
        self.rotor.check_len(graph.n())?;
        for v in graph.vertices() {
            graph.check_edge(self.rotor.edge(v))?;
        }
        Ok(())
    }
}

/// Directed cycles of a rotor subgraph and the weak component of every vertex.
///
/// The rotor subgraph has out-degree one everywhere, so each weak component
/// contains exactly one cycle, and the non-cycle vertices of a component form
/// in-trees hanging off that cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotorCycles {
    /// Each cycle lists its vertices in rotor order, starting at its smallest
    /// vertex. Cycles are ordered by smallest vertex.
    pub cycles: Vec<Vec<usize>>,
    /// `component[v]` indexes the cycle whose weak component contains `v`.
    pub component: Vec<usize>,
}

impl RotorCycles {
    pub fn cycle_of(&self, v: usize) -> &[usize] {
        &self.cycles[self.component[v]]
    }

    pub fn on_cycle(&self, v: usize) -> bool {
        self.cycle_of(v).contains(&v)
    }
}

pub fn rotor_subgraph_cycles(graph: &RibbonDigraph, rotor: &RotorConfiguration) -> RotorCycles {
    let next = rotor.heads(graph);
    let n = next.len();
    const UNSEEN: usize = usize::MAX;
    let mut component = vec![UNSEEN; n];
    // Stamps the walk currently in progress so cycles are recognised on the fly.
    let mut walk = vec![UNSEEN; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();

    for start in 0..n {
        if component[start] != UNSEEN {
            continue;
        }
        let mut path = Vec::new();
        let mut v = start;
        while component[v] == UNSEEN && walk[v] != start {
            walk[v] = start;
            path.push(v);
            v = next[v];
        }
        let id = if component[v] != UNSEEN {
            component[v]
        } else {
            // `v` closes a new cycle inside this walk.
            let pos = path.iter().position(|&u| u == v).expect("cycle vertex on path");
            let mut cycle = path[pos..].to_vec();
            let min_pos = (0..cycle.len()).min_by_key(|&i| cycle[i]).expect("nonempty");
            cycle.rotate_left(min_pos);
            cycles.push(cycle);
            cycles.len() - 1
        };
        for u in path {
            component[u] = id;
        }
    }

    // Discovery order follows walk starts, not cycle minima.
    let mut order: Vec<usize> = (0..cycles.len()).collect();
    order.sort_by_key(|&i| cycles[i][0]);
    let mut remap = vec![0; cycles.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new;
    }
    let cycles = order.iter().map(|&i| cycles[i].clone()).collect();
    let component = component.into_iter().map(|c| remap[c]).collect();
    RotorCycles { cycles, component }
}
