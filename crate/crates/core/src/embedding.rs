//! Undirected ribbon graphs viewed as bidirected digraphs.
//!
//! Each undirected edge `{a, b}` becomes the two directed edges `a -> b` and
//! `b -> a`; the [`EdgePairing`] maps every directed edge to its reverse. The
//! rotation system is the ribbon structure itself, so it determines a
//! cellular embedding whose genus [`genus`] computes by face tracing.

use crate::arborescence::Arborescence;
use crate::error::{Error, Result};
use crate::graph::{EdgeRef, RibbonDigraph};

/// An undirected loopless multigraph with a rotation system: `rotation[v]`
/// lists the ids of the edges incident to `v` in cyclic order, slot 0 first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub rotation: Vec<Vec<usize>>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, rotation: Vec<Vec<usize>>) -> Self {
        UndirectedGraph { n, edges, rotation }
    }

    /// Rotation at each vertex = incident edges in edge-list order.
    pub fn with_incidence_rotation(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut rotation = vec![Vec::new(); n];
        for (id, &(a, b)) in edges.iter().enumerate() {
            if a < n {
                rotation[a].push(id);
            }
            if b < n && b != a {
                rotation[b].push(id);
            }
        }
        UndirectedGraph { n, edges, rotation }
    }
}

/// Involution on directed edges mapping each edge to its reverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgePairing {
    reverse: Vec<Vec<EdgeRef>>,
}

impl EdgePairing {
    pub fn new(reverse: Vec<Vec<EdgeRef>>) -> Self {
        EdgePairing { reverse }
    }

    pub fn reverse(&self, e: EdgeRef) -> EdgeRef {
        self.reverse[e.tail][e.slot]
    }

    /// Confirms the pairing is an involution swapping tails and heads.
    pub fn check(&self, graph: &RibbonDigraph) -> Result<()> {
        let bad = |msg: String| Err(Error::PairingInconsistent(msg));
        if self.reverse.len() != graph.n() {
            return bad(format!("{} rows for {} vertices", self.reverse.len(), graph.n()));
        }
        for v in graph.vertices() {
            if self.reverse[v].len() != graph.out_degree(v) {
                return bad(format!("vertex {v} has {} paired slots", self.reverse[v].len()));
            }
            for slot in 0..graph.out_degree(v) {
                let e = EdgeRef::new(v, slot);
                let r = self.reverse(e);
                if graph.check_edge(r).is_err() {
                    return bad(format!("reverse of {e} is not an edge"));
                }
                if r.tail != graph.head(e) || graph.head(r) != v {
                    return bad(format!("{r} does not reverse {e}"));
                }
                if self.reverse(r) != e {
                    return bad(format!("pairing of {e} is not an involution"));
                }
            }
        }
        Ok(())
    }
}

/// A bidirected ribbon digraph with its edge pairing and undirected edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bidirected {
    graph: RibbonDigraph,
    pairing: EdgePairing,
    edge_id: Vec<Vec<usize>>,
    ends: Vec<(EdgeRef, EdgeRef)>,
}

/// Turns an undirected graph with a rotation system into a bidirected ribbon
/// digraph whose out-lists follow the rotation.
pub fn import_undirected(input: &UndirectedGraph) -> Result<Bidirected> {
    let n = input.n;
    for (id, &(a, b)) in input.edges.iter().enumerate() {
        if a >= n || b >= n {
            return Err(Error::BadRotation(format!("edge {id} has an endpoint out of range")));
        }
        if a == b {
            return Err(Error::UndirectedLoop { vertex: a });
        }
    }
    if input.rotation.len() != n {
        return Err(Error::BadRotation(format!(
            "{} rotations for {n} vertices",
            input.rotation.len()
        )));
    }
    // Where each edge end sits in the rotation: ends[id] = (slot at a, slot at b).
    let mut slot_at = vec![(None, None); input.edges.len()];
    for (v, rot) in input.rotation.iter().enumerate() {
        for (slot, &id) in rot.iter().enumerate() {
            let Some(&(a, b)) = input.edges.get(id) else {
                return Err(Error::BadRotation(format!("vertex {v} lists unknown edge {id}")));
            };
            let cell = if v == a {
                &mut slot_at[id].0
            } else if v == b {
                &mut slot_at[id].1
            } else {
                return Err(Error::BadRotation(format!("edge {id} is not incident to vertex {v}")));
            };
            if cell.replace(slot).is_some() {
                return Err(Error::BadRotation(format!("edge {id} listed twice at vertex {v}")));
            }
        }
    }
    let mut ends = Vec::with_capacity(input.edges.len());
    for (id, &(a, b)) in input.edges.iter().enumerate() {
        match slot_at[id] {
            (Some(sa), Some(sb)) => ends.push((EdgeRef::new(a, sa), EdgeRef::new(b, sb))),
            _ => {
                return Err(Error::BadRotation(format!(
                    "edge {id} missing from a rotation at its endpoints"
                )))
            }
        }
    }

    // Connectivity of the undirected graph.
    let mut seen = vec![false; n];
    if n > 0 {
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &id in &input.rotation[v] {
                let (a, b) = input.edges[id];
                let u = if a == v { b } else { a };
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::Disconnected { vertex: v });
    }

    let out_lists = input
        .rotation
        .iter()
        .enumerate()
        .map(|(v, rot)| {
            rot.iter()
                .map(|&id| {
                    let (a, b) = input.edges[id];
                    if a == v {
                        b
                    } else {
                        a
                    }
                })
                .collect()
        })
        .collect();
    let graph = RibbonDigraph::new(out_lists)?;
    let mut reverse: Vec<Vec<EdgeRef>> = graph
        .vertices()
        .map(|v| vec![EdgeRef::new(v, 0); graph.out_degree(v)])
        .collect();
    for &(ea, eb) in &ends {
        reverse[ea.tail][ea.slot] = eb;
        reverse[eb.tail][eb.slot] = ea;
    }
    let edge_id = input.rotation.clone();
    Ok(Bidirected {
        graph,
        pairing: EdgePairing { reverse },
        edge_id,
        ends,
    })
}

impl Bidirected {
    /// Wraps a digraph that has an explicit reverse for every edge.
    pub fn from_pairing(graph: RibbonDigraph, pairing: EdgePairing) -> Result<Self> {
        pairing.check(&graph)?;
        let mut edge_id: Vec<Vec<usize>> = graph
            .vertices()
            .map(|v| vec![usize::MAX; graph.out_degree(v)])
            .collect();
        let mut ends = Vec::new();
        for v in graph.vertices() {
            for slot in 0..graph.out_degree(v) {
                if edge_id[v][slot] != usize::MAX {
                    continue;
                }
                let e = EdgeRef::new(v, slot);
                let r = pairing.reverse(e);
                edge_id[v][slot] = ends.len();
                edge_id[r.tail][r.slot] = ends.len();
                ends.push((e, r));
            }
        }
        Ok(Bidirected { graph, pairing, edge_id, ends })
    }

    /// Pairs the `k`-th edge `u -> v` (in slot order at `u`) with the `k`-th
    /// edge `v -> u` (in slot order at `v`). Fails unless the multiplicities
    /// of `u -> v` and `v -> u` agree for every pair.
    pub fn from_digraph(graph: RibbonDigraph) -> Result<Self> {
        let n = graph.n();
        let mut reverse: Vec<Vec<EdgeRef>> = graph
            .vertices()
            .map(|v| vec![EdgeRef::new(v, 0); graph.out_degree(v)])
            .collect();
        for u in 0..n {
            for &(v, count) in graph.head_counts(u) {
                if graph.multiplicity(v, u) != count {
                    return Err(Error::PairingInconsistent(format!(
                        "{count} edges {u}->{v} but {} edges {v}->{u}",
                        graph.multiplicity(v, u)
                    )));
                }
                let forward = slots_towards(&graph, u, v);
                let backward = slots_towards(&graph, v, u);
                for (f, b) in forward.into_iter().zip(backward) {
                    reverse[u][f] = EdgeRef::new(v, b);
                }
            }
        }
        Bidirected::from_pairing(graph, EdgePairing { reverse })
    }

    pub fn graph(&self) -> &RibbonDigraph {
        &self.graph
    }

    pub fn pairing(&self) -> &EdgePairing {
        &self.pairing
    }

    pub fn reverse(&self, e: EdgeRef) -> EdgeRef {
        self.pairing.reverse(e)
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    /// Undirected edge id carried by the directed edge `e`.
    pub fn undirected_edge(&self, e: EdgeRef) -> usize {
        self.edge_id[e.tail][e.slot]
    }

    /// The two directed edges of undirected edge `id`.
    pub fn ends(&self, id: usize) -> (EdgeRef, EdgeRef) {
        self.ends[id]
    }

    pub fn genus(&self) -> usize {
        genus(&self.graph, &self.pairing).expect("pairing validated on construction")
    }

    /// Forgets the orientation of an arborescence.
    pub fn tree_of(&self, arb: &Arborescence) -> SpanningTree {
        let mut edges: Vec<usize> = arb
            .edges()
            .iter()
            .flatten()
            .map(|&e| self.undirected_edge(e))
            .collect();
        edges.sort_unstable();
        SpanningTree { edges }
    }

    /// All spanning trees, sorted.
    pub fn spanning_trees(&self, cap: usize) -> Result<Vec<SpanningTree>> {
        let mut trees: Vec<SpanningTree> = Arborescence::enumerate(&self.graph, 0, cap)?
            .iter()
            .map(|a| self.tree_of(a))
            .collect();
        trees.sort();
        Ok(trees)
    }
}

fn slots_towards(graph: &RibbonDigraph, u: usize, v: usize) -> Vec<usize> {
    graph
        .out_list(u)
        .iter()
        .enumerate()
        .filter(|&(_, &h)| h == v)
        .map(|(s, _)| s)
        .collect()
}

/// Number of faces of the embedding: orbits of `e ↦ next_rotor(reverse(e))`.
pub fn face_count(graph: &RibbonDigraph, pairing: &EdgePairing) -> Result<usize> {
    pairing.check(graph)?;
    let mut seen: Vec<Vec<bool>> = graph.vertices().map(|v| vec![false; graph.out_degree(v)]).collect();
    let mut faces = 0;
    for v in graph.vertices() {
        for slot in 0..graph.out_degree(v) {
            if seen[v][slot] {
                continue;
            }
            faces += 1;
            let mut e = EdgeRef::new(v, slot);
            while !seen[e.tail][e.slot] {
                seen[e.tail][e.slot] = true;
                e = graph.next_rotor(pairing.reverse(e))?;
            }
        }
    }
    Ok(faces)
}

/// Genus of the embedding determined by the rotation system, from
/// `V - E + F = 2 - 2g`.
pub fn genus(graph: &RibbonDigraph, pairing: &EdgePairing) -> Result<usize> {
    let faces = face_count(graph, pairing)? as i64;
    let v = graph.n() as i64;
    let e = (graph.edge_count() / 2) as i64;
    let twice = 2 - v + e - faces;
    debug_assert!(twice >= 0 && twice % 2 == 0);
    Ok((twice / 2) as usize)
}

/// Undirected spanning tree as a sorted list of undirected edge ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpanningTree {
    pub edges: Vec<usize>,
}

impl SpanningTree {
    pub fn new(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        SpanningTree { edges }
    }
}

/// Orients every tree edge towards `root`.
pub fn tree_to_arborescence(b: &Bidirected, tree: &SpanningTree, root: usize) -> Result<Arborescence> {
    let g = &b.graph;
    g.check_vertex(root)?;
    if tree.edges.len() + 1 != g.n() {
        return Err(Error::NotSpanningTree(format!(
            "{} edges on {} vertices",
            tree.edges.len(),
            g.n()
        )));
    }
    let mut incident = vec![Vec::new(); g.n()];
    for &id in &tree.edges {
        if id >= b.edge_count() {
            return Err(Error::NotSpanningTree(format!("unknown edge {id}")));
        }
        let (ea, eb) = b.ends[id];
        incident[ea.tail].push(eb);
        incident[eb.tail].push(ea);
    }
    // incident[v] holds edges pointing into v; walking them backwards orients towards root.
    let mut edges = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &e in &incident[v] {
            if !seen[e.tail] {
                seen[e.tail] = true;
                edges[e.tail] = Some(e);
                stack.push(e.tail);
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::NotSpanningTree(format!("vertex {v} not reached")));
    }
    Arborescence::new(g, root, edges)
}
