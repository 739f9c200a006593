//! Spanning in-arborescences and their rotor configurations.

use crate::config::{rotor_subgraph_cycles, RotorConfiguration};
use crate::error::{Error, Result};
use crate::graph::{EdgeRef, RibbonDigraph};

/// A spanning in-arborescence: one out-edge at every vertex except the root,
/// every directed path ending at the root.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arborescence {
    root: usize,
    edges: Vec<Option<EdgeRef>>,
}

impl Arborescence {
    pub fn new(graph: &RibbonDigraph, root: usize, edges: Vec<Option<EdgeRef>>) -> Result<Self> {
        graph.check_vertex(root)?;
        if edges.len() != graph.n() {
            return Err(Error::LengthMismatch { expected: graph.n(), actual: edges.len() });
        }
        for (v, e) in edges.iter().enumerate() {
            match (v == root, e) {
                (true, Some(_)) => {
                    return Err(Error::NotArborescence(format!("root {root} has an out-edge")))
                }
                (false, None) => {
                    return Err(Error::NotArborescence(format!("vertex {v} has no out-edge")))
                }
                (false, Some(e)) => {
                    if e.tail != v {
                        return Err(Error::NotArborescence(format!(
                            "edge {e} assigned to vertex {v}"
                        )));
                    }
                    graph.check_edge(*e)?;
                }
                (true, None) => {}
            }
        }
        let arb = Arborescence { root, edges };
        if let Some(v) = arb.first_vertex_missing_root(graph) {
            return Err(Error::NotArborescence(format!(
                "the path from vertex {v} never reaches the root {root}"
            )));
        }
        Ok(arb)
    }

    /// Reads the arborescence off the non-root rotors of `rotor`.
    pub fn from_rotor(graph: &RibbonDigraph, rotor: &RotorConfiguration, root: usize) -> Result<Self> {
        rotor.check_len(graph.n())?;
        let edges = graph
            .vertices()
            .map(|v| (v != root).then(|| rotor.edge(v)))
            .collect();
        Arborescence::new(graph, root, edges)
    }

    fn first_vertex_missing_root(&self, graph: &RibbonDigraph) -> Option<usize> {
        let n = graph.n();
        // 0 = unknown, 1 = on current path, 2 = reaches root
        let mut state = vec![0u8; n];
        state[self.root] = 2;
        for start in 0..n {
            let mut path = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = graph.head(self.edges[v].expect("non-root edge"));
            }
            if state[v] == 1 {
                return Some(start);
            }
            for u in path {
                state[u] = 2;
            }
        }
        None
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Out-edge of `v`; `None` at the root.
    pub fn edge(&self, v: usize) -> Option<EdgeRef> {
        self.edges[v]
    }

    pub fn edges(&self) -> &[Option<EdgeRef>] {
        &self.edges
    }

    /// `T ∪ extra` as a rotor configuration; `extra` must leave the root.
    pub fn to_rotor(&self, graph: &RibbonDigraph, extra: EdgeRef) -> Result<RotorConfiguration> {
        arborescence_to_rotor(graph, self, extra)
    }

    /// All spanning in-arborescences rooted at `root`, in mixed-radix order
    /// of the non-root slot choices. Fails when the number of candidate slot
    /// assignments exceeds `cap`.
    pub fn enumerate(graph: &RibbonDigraph, root: usize, cap: usize) -> Result<Vec<Arborescence>> {
        graph.check_vertex(root)?;
        let mut radix = Vec::new();
        let mut total = 1usize;
        for v in graph.vertices().filter(|&v| v != root) {
            radix.push(v);
            total = total
                .checked_mul(graph.out_degree(v))
                .filter(|&t| t <= cap)
                .ok_or(Error::CapExceeded { cap })?;
        }
        let mut out = Vec::new();
        let mut slots = vec![0usize; radix.len()];
        loop {
            let mut edges = vec![None; graph.n()];
            for (i, &v) in radix.iter().enumerate() {
                edges[v] = Some(EdgeRef::new(v, slots[i]));
            }
            let candidate = Arborescence { root, edges };
            if candidate.first_vertex_missing_root(graph).is_none() {
                out.push(candidate);
            }
            let mut i = radix.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                slots[i] += 1;
                if slots[i] < graph.out_degree(radix[i]) {
                    break;
                }
                slots[i] = 0;
            }
        }
    }
}

/// Rotor configuration equal to `arb` off the root and `extra` at the root.
/// Its rotor subgraph has exactly one cycle, through the root.
pub fn arborescence_to_rotor(
    graph: &RibbonDigraph,
    arb: &Arborescence,
    extra: EdgeRef,
) -> Result<RotorConfiguration> {
    graph.check_edge(extra)?;
    if extra.tail != arb.root {
        return Err(Error::RootEdgeMismatch { root: arb.root, tail: extra.tail, slot: extra.slot });
    }
    let slots = graph
        .vertices()
        .map(|v| match arb.edges[v] {
            Some(e) => e.slot,
            None => extra.slot,
        })
        .collect();
    let rotor = RotorConfiguration::from_slots_unchecked(slots);
    debug_assert_eq!(rotor_subgraph_cycles(graph, &rotor).cycles.len(), 1);
    Ok(rotor)
}
