//! Graph generators and brute-force oracles shared by the integration tests.
//! The oracles work on raw out-lists and never call the library's routing,
//! lattice or enumeration code.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rotorlab::config::{Divisor, Drc};
use rotorlab::{RibbonDigraph, RotorConfiguration};

pub type OutLists = Vec<Vec<usize>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn graph(out: &OutLists) -> RibbonDigraph {
    RibbonDigraph::new(out.clone()).expect("generator produced a valid graph")
}

pub fn cycle3() -> OutLists {
    vec![vec![1], vec![2], vec![0]]
}

pub fn triangle() -> OutLists {
    vec![vec![1, 2], vec![0, 2], vec![0, 1]]
}

pub fn k4_planar() -> OutLists {
    vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]
}

pub fn k4_torus() -> OutLists {
    vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 1, 2]]
}

pub fn strongly_connected(out: &OutLists) -> bool {
    let n = out.len();
    if n == 0 || out.iter().enumerate().any(|(v, hs)| hs.is_empty() || hs.contains(&v)) {
        return false;
    }
    let mut rev = vec![Vec::new(); n];
    for (v, hs) in out.iter().enumerate() {
        for &h in hs {
            rev[h].push(v);
        }
    }
    let reach_all = |adj: &Vec<Vec<usize>>| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &h in &adj[v] {
                if !seen[h] {
                    seen[h] = true;
                    stack.push(h);
                }
            }
        }
        seen.iter().all(|&s| s)
    };
    reach_all(out) && reach_all(&rev)
}

pub fn is_eulerian(out: &OutLists) -> bool {
    let mut indeg = vec![0; out.len()];
    for hs in out {
        for &h in hs {
            indeg[h] += 1;
        }
    }
    out.iter().zip(&indeg).all(|(hs, &d)| hs.len() == d)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every strongly connected digraph on `n` vertices with edge multiplicities
/// at most `max_mult`, one per isomorphism class. Out-lists are sorted.
pub fn all_digraphs(n: usize, max_mult: usize) -> Vec<OutLists> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let base = max_mult + 1;
    let total = base.pow(pairs.len() as u32);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for code in 0..total {
        let mut m = vec![vec![0usize; n]; n];
        let mut c = code;
        for &(u, v) in &pairs {
            m[u][v] = c % base;
            c /= base;
        }
        let lists: OutLists = (0..n)
            .map(|u| (0..n).flat_map(|v| std::iter::repeat_n(v, m[u][v])).collect())
            .collect();
        if !strongly_connected(&lists) {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| {
                let mut key = vec![0usize; n * n];
                for u in 0..n {
                    for v in 0..n {
                        key[p[u] * n + p[v]] = m[u][v];
                    }
                }
                key
            })
            .min()
            .unwrap();
        if seen.insert(canonical) {
            out.push(lists);
        }
    }
    out
}

/// A random strongly connected digraph: every ordered pair gets an edge with
/// probability `density`, multiplicities up to `max_mult`, out-lists shuffled.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, max_mult: usize, density: f64) -> OutLists {
    loop {
        let mut out: OutLists = vec![Vec::new(); n];
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(density) {
                    let m = rng.gen_range(1..=max_mult);
                    out[u].extend(std::iter::repeat_n(v, m));
                }
            }
            out[u].shuffle(rng);
        }
        if strongly_connected(&out) {
            return out;
        }
    }
}

/// A random Eulerian digraph: a Hamiltonian cycle plus a few random cycles,
/// multiplicities up to `max_mult`.
pub fn random_eulerian(rng: &mut ChaCha8Rng, n: usize, max_mult: usize) -> OutLists {
    'retry: loop {
        let mut m = vec![vec![0usize; n]; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut cycles = vec![order];
        for _ in 0..rng.gen_range(0..=n) {
            let len = rng.gen_range(2..=n);
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(rng);
            vs.truncate(len);
            cycles.push(vs);
        }
        for c in &cycles {
            for i in 0..c.len() {
                let (u, v) = (c[i], c[(i + 1) % c.len()]);
                m[u][v] += 1;
                if m[u][v] > max_mult {
                    continue 'retry;
                }
            }
        }
        let mut out: OutLists =
            (0..n).map(|u| (0..n).flat_map(|v| std::iter::repeat_n(v, m[u][v])).collect()).collect();
        for l in &mut out {
            l.shuffle(rng);
        }
        return out;
    }
}

/// `L·z` with `L(u,u) = -d⁺(u)` and `L(u,v)` the number of `v→u` edges.
pub fn laplacian_times(out: &OutLists, z: &[i64]) -> Vec<i64> {
    let mut r = vec![0i64; out.len()];
    for (v, hs) in out.iter().enumerate() {
        r[v] -= hs.len() as i64 * z[v];
        for &h in hs {
            r[h] += z[v];
        }
    }
    r
}

/// All rotor slot vectors in mixed-radix order.
pub fn all_rotors(out: &OutLists) -> Vec<Vec<usize>> {
    let mut res = vec![vec![]];
    for hs in out {
        res = res
            .into_iter()
            .flat_map(|p| (0..hs.len()).map(move |s| {
                let mut q = p.clone();
                q.push(s);
                q
            }))
            .collect();
    }
    res
}

/// Cycles of the functional graph `v ↦ out[v][slots[v]]`.
pub fn rotor_cycles(out: &OutLists, slots: &[usize]) -> Vec<Vec<usize>> {
    let n = out.len();
    let next = |v: usize| out[v][slots[v]];
    let mut state = vec![0u8; n];
    let mut cycles = Vec::new();
    for s in 0..n {
        let mut path = Vec::new();
        let mut v = s;
        while state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = next(v);
        }
        if state[v] == 1 {
            let i = path.iter().position(|&u| u == v).unwrap();
            cycles.push(path[i..].to_vec());
        }
        for u in path {
            state[u] = 2;
        }
    }
    cycles
}

/// Unicycles as `(chip vertex, slots)`.
pub fn unicycles(out: &OutLists) -> Vec<(usize, Vec<usize>)> {
    let mut res = Vec::new();
    for slots in all_rotors(out) {
        let cycles = rotor_cycles(out, &slots);
        if cycles.len() == 1 {
            let mut on = cycles[0].clone();
            on.sort_unstable();
            for v in on {
                res.push((v, slots.clone()));
            }
        }
    }
    res
}

/// One step of the single-chip walk: advance the rotor, then move along it.
pub fn walk_step(out: &OutLists, chip: &mut usize, slots: &mut [usize]) {
    let v = *chip;
    slots[v] = (slots[v] + 1) % out[v].len();
    *chip = out[v][slots[v]];
}

/// Orbits of the single-chip walk on unicycles, by plain simulation.
pub fn orbit_partition(out: &OutLists) -> Vec<Vec<(usize, Vec<usize>)>> {
    let all = unicycles(out);
    let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
    let mut orbits = Vec::new();
    for u in all {
        if seen.contains(&u) {
            continue;
        }
        let mut orbit = vec![u.clone()];
        seen.insert(u.clone());
        let (mut chip, mut slots) = u.clone();
        loop {
            walk_step(out, &mut chip, &mut slots);
            let s = (chip, slots.clone());
            if s == u {
                break;
            }
            seen.insert(s.clone());
            orbit.push(s);
        }
        orbits.push(orbit);
    }
    orbits
}

/// Number of spanning in-arborescences rooted at `root`, by brute force over
/// one out-edge choice per non-root vertex.
pub fn count_arborescences(out: &OutLists, root: usize) -> usize {
    let mut count = 0;
    for slots in all_rotors(out) {
        if slots[root] != 0 {
            continue;
        }
        let ok = (0..out.len()).all(|s| {
            let mut v = s;
            for _ in 0..out.len() {
                if v == root {
                    return true;
                }
                v = out[v][slots[v]];
            }
            v == root
        });
        if ok {
            count += 1;
        }
    }
    count
}

/// A configuration in the brute-force state space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub chips: Vec<i64>,
    pub slots: Vec<usize>,
}

impl State {
    pub fn to_drc(&self, g: &RibbonDigraph) -> Drc<i64> {
        Drc::new(Divisor::new(self.chips.clone()), RotorConfiguration::new(g, self.slots.clone()).unwrap())
    }
}

/// The legal-game state graph generated from a set of start states. Edges
/// are labelled with the routed vertex.
pub struct StateGraph {
    pub states: Vec<State>,
    pub index: HashMap<State, usize>,
    pub succ: Vec<Vec<(usize, usize)>>,
}

impl StateGraph {
    pub fn explore(out: &OutLists, starts: impl IntoIterator<Item = State>) -> Self {
        let mut g = StateGraph { states: Vec::new(), index: HashMap::new(), succ: Vec::new() };
        let mut queue = VecDeque::new();
        for s in starts {
            let id = g.intern(s);
            queue.push_back(id);
        }
        while let Some(id) = queue.pop_front() {
            if !g.succ[id].is_empty() {
                continue;
            }
            let s = g.states[id].clone();
            let mut edges = Vec::new();
            for v in 0..out.len() {
                if s.chips[v] <= 0 {
                    continue;
                }
                let mut t = s.clone();
                t.slots[v] = (t.slots[v] + 1) % out[v].len();
                t.chips[v] -= 1;
                t.chips[out[v][t.slots[v]]] += 1;
                let before = g.states.len();
                let tid = g.intern(t);
                if tid == before {
                    queue.push_back(tid);
                }
                edges.push((tid, v));
            }
            g.succ[id] = edges;
        }
        g
    }

    fn intern(&mut self, s: State) -> usize {
        if let Some(&i) = self.index.get(&s) {
            return i;
        }
        let i = self.states.len();
        self.index.insert(s.clone(), i);
        self.states.push(s);
        self.succ.push(Vec::new());
        i
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    /// Strongly connected components (iterative Tarjan). Components come out
    /// in reverse topological order: every edge leaves a component for one
    /// listed no later.
    pub fn components(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.len();
        const NONE: usize = usize::MAX;
        let mut index = vec![NONE; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comp = vec![NONE; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut counter = 0;
        for root in 0..n {
            if index[root] != NONE {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut i)) = call.last_mut() {
                if *i < self.succ[v].len() {
                    let w = self.succ[v][*i].0;
                    *i += 1;
                    if index[w] == NONE {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(p, _)) = call.last() {
                        low[p] = low[p].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let id = comps.len();
                        let mut c = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp[w] = id;
                            c.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comps.push(c);
                    }
                }
            }
        }
        (comp, comps)
    }

    /// Shortest path of routed vertices from `from` to `to` inside the
    /// component `within`, if any.
    pub fn path(&self, from: usize, to: usize, comp: &[usize], within: usize) -> Option<Vec<usize>> {
        let mut parent: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = HashSet::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut moves = Vec::new();
                let mut cur = to;
                while cur != from {
                    let (p, mv) = parent[&cur];
                    moves.push(mv);
                    cur = p;
                }
                moves.reverse();
                return Some(moves);
            }
            for &(w, mv) in &self.succ[v] {
                if comp[w] == within && seen.insert(w) {
                    parent.insert(w, (v, mv));
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// Every divisor with entries in `lo..=hi`.
pub fn divisor_box(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut res = vec![vec![]];
    for _ in 0..n {
        res = res
            .into_iter()
            .flat_map(|p| (lo..=hi).map(move |c| {
                let mut q = p.clone();
                q.push(c);
                q
            }))
            .collect();
    }
    res
}

/// All degree-zero divisors with entries in `-bound..=bound`, grouped into
/// classes by `same_class`, one representative per class (the first found).
pub fn class_representatives(n: usize, bound: i64, same_class: impl Fn(&[i64], &[i64]) -> bool) -> Vec<Vec<i64>> {
    let mut reps: Vec<Vec<i64>> = Vec::new();
    for x in divisor_box(n, -bound, bound) {
        if x.iter().sum::<i64>() != 0 {
            continue;
        }
        if !reps.iter().any(|r| same_class(r, &x)) {
            reps.push(x);
        }
    }
    reps
}

/// Every rotation system of a simple undirected graph given by neighbour
/// lists: all cyclic orders at every vertex, each written starting from its
/// smallest neighbour.
pub fn rotation_systems(neighbours: &[Vec<usize>]) -> Vec<OutLists> {
    let mut res: Vec<OutLists> = vec![vec![]];
    for nb in neighbours {
        let first = nb[0];
        let rest = &nb[1..];
        let orders: Vec<Vec<usize>> = permutations(rest.len())
            .into_iter()
            .map(|p| std::iter::once(first).chain(p.iter().map(|&i| rest[i])).collect())
            .collect();
        res = res
            .into_iter()
            .flat_map(|sys| {
                orders.iter().map(move |o| {
                    let mut s = sys.clone();
                    s.push(o.clone());
                    s
                })
            })
            .collect();
    }
    res
}

/// The same rotation system with the out-list of `v` rotated by `k`.
pub fn rotate_at(out: &OutLists, v: usize, k: usize) -> OutLists {
    let mut o = out.clone();
    let len = o[v].len();
    o[v].rotate_left(k % len);
    o
}

/// Faces of the embedding, traced with the k-th-to-k-th edge pairing.
pub fn face_count(out: &OutLists) -> usize {
    // reverse of the k-th u→v slot is the k-th v→u slot
    let rank = |u: usize, s: usize| out[u][..s].iter().filter(|&&h| h == out[u][s]).count();
    let reverse = |u: usize, s: usize| {
        let v = out[u][s];
        let k = rank(u, s);
        let t = out[v].iter().enumerate().filter(|&(_, &h)| h == u).nth(k).unwrap().0;
        (v, t)
    };
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut faces = 0;
    for u in 0..out.len() {
        for s in 0..out[u].len() {
            if seen.contains(&(u, s)) {
                continue;
            }
            faces += 1;
            let mut e = (u, s);
            while seen.insert(e) {
                let (v, t) = reverse(e.0, e.1);
                e = (v, (t + 1) % out[v].len());
            }
        }
    }
    faces
}

pub fn genus_oracle(out: &OutLists) -> usize {
    let v = out.len() as i64;
    let e = out.iter().map(Vec::len).sum::<usize>() as i64 / 2;
    let f = face_count(out) as i64;
    ((2 - v + e - f) / 2) as usize
}
