//! Ribbon digraphs: multidigraphs with a cyclic order of out-edges at every
//! vertex.
//!
//! Vertices are `0..n`. The out-edges of `v` are the slots of `out_lists[v]`;
//! slot `i` is the edge `v -> out_lists[v][i]`, so parallel edges are
//! distinguished by slot. The cyclic successor of slot `i` is
//! `(i + 1) mod d⁺(v)`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};

/// One directed edge, identified by its tail and its position in the tail's
/// out-list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub tail: usize,
    pub slot: usize,
}

impl EdgeRef {
    pub fn new(tail: usize, slot: usize) -> Self {
        EdgeRef { tail, slot }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tail, self.slot)
    }
}

/// First standing assumption a candidate graph violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {tail} has an out-edge to {head}, which is not a vertex")]
    HeadOutOfRange { tail: usize, head: usize },
    #[error("loop at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("vertex {vertex} has no out-edges")]
    NoOutEdges { vertex: usize },
    #[error("not strongly connected, no path {from}->{to}")]
    NotStronglyConnected { from: usize, to: usize },
    #[error("{labels} labels given for {n} vertices")]
    LabelCount { labels: usize, n: usize },
}

/// Checks the standing assumptions: at least one vertex, heads in range, no
/// loops, strongly connected, every out-degree positive.
///
/// Strong connectivity is tested by one search from vertex 0 along out-edges
/// and one along in-edges; the witness pair names a path that does not exist.
pub fn validate(out_lists: &[Vec<usize>]) -> Result<(), Violation> {
    let n = out_lists.len();
    if n == 0 {
        return Err(Violation::Empty);
    }
    for (v, heads) in out_lists.iter().enumerate() {
        for &h in heads {
            if h >= n {
                return Err(Violation::HeadOutOfRange { tail: v, head: h });
            }
            if h == v {
                return Err(Violation::Loop { vertex: v });
            }
        }
    }
    let forward = search(n, 0, |v| out_lists[v].to_vec());
    if let Some(v) = forward.iter().position(|&seen| !seen) {
        return Err(Violation::NotStronglyConnected { from: 0, to: v });
    }
    let mut in_lists = vec![Vec::new(); n];
    for (v, heads) in out_lists.iter().enumerate() {
        for &h in heads {
            in_lists[h].push(v);
        }
    }
    let backward = search(n, 0, |v| in_lists[v].clone());
    if let Some(v) = backward.iter().position(|&seen| !seen) {
        return Err(Violation::NotStronglyConnected { from: v, to: 0 });
    }
    // Only reachable for a single isolated vertex.
    if let Some(v) = out_lists.iter().position(Vec::is_empty) {
        return Err(Violation::NoOutEdges { vertex: v });
    }
    Ok(())
}

fn search(n: usize, start: usize, next: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in next(v) {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen
}

/// A validated, strongly connected, loopless ribbon digraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RibbonDigraph {
    out_lists: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    // (head, multiplicity) per vertex, heads ascending.
    head_counts: Vec<Vec<(usize, usize)>>,
    in_degree: Vec<usize>,
}

impl RibbonDigraph {
    pub fn new(out_lists: Vec<Vec<usize>>) -> Result<Self> {
        validate(&out_lists)?;
        let n = out_lists.len();
        let mut head_counts = Vec::with_capacity(n);
        let mut in_degree = vec![0; n];
        for heads in &out_lists {
            let mut counts = vec![0usize; n];
            for &h in heads {
                counts[h] += 1;
                in_degree[h] += 1;
            }
            head_counts.push(
                counts
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, c)| c > 0)
                    .collect(),
            );
        }
        Ok(RibbonDigraph {
            out_lists,
            labels: None,
            head_counts,
            in_degree,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Violation::LabelCount {
                labels: labels.len(),
                n: self.n(),
            }
            .into());
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.out_lists.len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn out_list(&self, v: usize) -> &[usize] {
        &self.out_lists[v]
    }

    pub fn out_lists(&self) -> &[Vec<usize>] {
        &self.out_lists
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `v`: its label, or `v<index>` when unlabeled.
    pub fn name(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => format!("v{v}"),
        }
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_lists[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_degree[v]
    }

    /// Total number of directed edges.
    pub fn edge_count(&self) -> usize {
        self.out_lists.iter().map(Vec::len).sum()
    }

    /// Out-neighbours of `v` with edge multiplicities, heads ascending.
    pub fn head_counts(&self, v: usize) -> &[(usize, usize)] {
        &self.head_counts[v]
    }

    /// Number of parallel edges `u -> v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.head_counts[u]
            .binary_search_by_key(&v, |&(h, _)| h)
            .map(|i| self.head_counts[u][i].1)
            .unwrap_or(0)
    }

    pub fn is_eulerian(&self) -> bool {
        self.first_unbalanced().is_none()
    }

    pub(crate) fn first_unbalanced(&self) -> Option<usize> {
        self.vertices()
            .find(|&v| self.in_degree(v) != self.out_degree(v))
    }

    pub(crate) fn require_eulerian(&self) -> Result<()> {
        match self.first_unbalanced() {
            Some(vertex) => Err(Error::NotEulerian { vertex }),
            None => Ok(()),
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn check_edge(&self, e: EdgeRef) -> Result<()> {
        self.check_vertex(e.tail)?;
        let d = self.out_degree(e.tail);
        if e.slot < d {
            Ok(())
        } else {
            Err(Error::InvalidSlot {
                vertex: e.tail,
                slot: e.slot,
                out_degree: d,
            })
        }
    }

    pub fn head(&self, e: EdgeRef) -> usize {
        self.out_lists[e.tail][e.slot]
    }

    /// The edge following `e` in the cyclic order at its tail.
    pub fn next_rotor(&self, e: EdgeRef) -> Result<EdgeRef> {
        self.check_edge(e)?;
        Ok(EdgeRef::new(e.tail, (e.slot + 1) % self.out_degree(e.tail)))
    }

    /// First slot of `u` whose head is `v`.
    pub fn slot_towards(&self, u: usize, v: usize) -> Option<usize> {
        self.out_lists[u].iter().position(|&h| h == v)
    }

    /// Breadth-first order from `root` along out-edges, with the parent edge
    /// of every non-root vertex (the first edge through which it was found).
    pub(crate) fn bfs_tree(&self, root: usize) -> (Vec<usize>, Vec<Option<EdgeRef>>) {
        let mut order = Vec::with_capacity(self.n());
        let mut parent = vec![None; self.n()];
        let mut seen = vec![false; self.n()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for (slot, &h) in self.out_lists[v].iter().enumerate() {
                if !seen[h] {
                    seen[h] = true;
                    parent[h] = Some(EdgeRef::new(v, slot));
                    queue.push_back(h);
                }
            }
        }
        (order, parent)
    }
}
