//! Acceptance suite: nine exact checks, one PASS/FAIL line each.
//!
//! Run with `cargo test -p rotorlab --test acceptance`.

mod common;

use std::collections::{HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::Rng;

use rotorlab::action::{
    action_alternative, action_decide, action_simulate, base_point_witness, compare_base_points, reversal_test,
    ActionOptions, Schedule,
};
use rotorlab::config::{Divisor, Drc};
use rotorlab::engine::{classical_step, is_recurrent, replay, Legality, DEFAULT_BUDGET};
use rotorlab::equivalence::{count_unicycle_orbits, drc_equivalent, reachable, EnumerationLimits, OrbitCountMethod};
use rotorlab::lattice::{period_vector, Lattice};
use rotorlab::{Arborescence, Bidirected, RibbonDigraph, RotorConfiguration};

use common::*;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rotor(g: &RibbonDigraph, slots: &[usize]) -> RotorConfiguration {
    RotorConfiguration::new(g, slots.to_vec()).unwrap()
}

fn drc(g: &RibbonDigraph, chips: &[i64], slots: &[usize]) -> Drc<i64> {
    Drc::new(Divisor::new(chips.to_vec()), rotor(g, slots))
}

fn product_of_degrees(out: &OutLists) -> usize {
    out.iter().map(Vec::len).product()
}

// 1. Every unicycle returns to itself after exactly Σ per(v)·d⁺(v) steps.
fn orbit_size_theorem() -> Check {
    let mut corpus = Vec::new();
    for n in 2..=4 {
        corpus.extend(all_digraphs(n, 2));
    }
    let exhaustive = corpus.len();
    let mut r = rng(1);
    while corpus.len() < exhaustive + 50 {
        let n = r.gen_range(2..=7);
        let out = random_digraph(&mut r, n, 2, 0.35);
        if product_of_degrees(&out) <= 20_000 {
            corpus.push(out);
        }
    }

    let mut walked = 0usize;
    for out in &corpus {
        let g = graph(out);
        let per = period_vector::<i64>(&g);
        let size: i64 = g.vertices().map(|v| per.entries()[v] * g.out_degree(v) as i64).sum();
        let all = unicycles(out);
        let mut seen: HashSet<Drc<i64>> = HashSet::new();
        for (chip, slots) in &all {
            let mut chips = vec![0; g.n()];
            chips[*chip] = 1;
            let start = drc(&g, &chips, slots);
            if seen.contains(&start) {
                continue;
            }
            // A first return after exactly `size` steps makes the orbit a cycle
            // of distinct states, each of which then also returns after `size`.
            let mut state = start.clone();
            let mut steps = 0i64;
            loop {
                seen.insert(state.clone());
                state = classical_step(&g, &state).map_err(|e| e.to_string())?;
                steps += 1;
                if state == start || steps > size {
                    break;
                }
            }
            ensure(state == start && steps == size, || {
                format!("{out:?}: unicycle {start:?} returned after {steps} steps, expected {size}")
            })?;
        }
        ensure(seen.len() == all.len(), || format!("{out:?}: orbits cover {} of {} unicycles", seen.len(), all.len()))?;
        walked += all.len();
    }
    Ok(format!("{} graphs ({exhaustive} exhaustive, 50 random), {walked} unicycles", corpus.len()))
}

/// The legal-game state space of one small graph from every DRC with
/// entries in [-1, 2].
struct Explored {
    out: OutLists,
    starts: Vec<usize>,
    space: StateGraph,
    comp: Vec<usize>,
    comps: Vec<Vec<usize>>,
}

impl Explored {
    fn on_cycle(&self, s: usize) -> bool {
        self.comps[self.comp[s]].len() > 1
    }
}

fn small_corpus() -> &'static Vec<Explored> {
    static CORPUS: OnceLock<Vec<Explored>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut graphs = all_digraphs(2, 2);
        graphs.extend(all_digraphs(3, 2));
        graphs
            .into_iter()
            .map(|out| {
                let mut starts_states = Vec::new();
                for chips in divisor_box(out.len(), -1, 2) {
                    for slots in all_rotors(&out) {
                        starts_states.push(State { chips: chips.clone(), slots });
                    }
                }
                let space = StateGraph::explore(&out, starts_states.iter().cloned());
                let starts = starts_states.iter().map(|s| space.index[s]).collect();
                let (comp, comps) = space.components();
                Explored { out, starts, space, comp, comps }
            })
            .collect()
    })
}

// 2. Recurrent iff some nonempty legal game returns to the configuration.
fn recurrence_characterization() -> Check {
    let corpus = small_corpus();
    let mut checked = 0;
    let mut recurrent = 0;
    for ex in corpus {
        let g = graph(&ex.out);
        for &s in &ex.starts {
            let state = &ex.space.states[s];
            let lib = is_recurrent(&g, &state.to_drc(&g));
            let brute = ex.on_cycle(s);
            ensure(lib == brute, || format!("{:?}: {state:?} library {lib}, brute force {brute}", ex.out))?;
            checked += 1;
            recurrent += brute as usize;
        }
    }
    let states: usize = corpus.iter().map(|e| e.space.len()).sum();
    Ok(format!("{} graphs, {checked} DRCs ({recurrent} recurrent), {states} states explored", corpus.len()))
}

// 3. Routing counts of returning games are k·d⁺(v)·per(v) for one k >= 1.
fn period_rigidity() -> Check {
    let corpus = small_corpus();
    let mut games = 0;
    for ex in corpus {
        let g = graph(&ex.out);
        let per = period_vector::<i64>(&g);
        let step: Vec<i64> = g.vertices().map(|v| g.out_degree(v) as i64 * per.entries()[v]).collect();
        // One anchor per component; games go start -> anchor -> start.
        let mut anchor: HashMap<usize, usize> = HashMap::new();
        for &s in &ex.starts {
            if !ex.on_cycle(s) {
                continue;
            }
            let c = ex.comp[s];
            let a = *anchor.entry(c).or_insert(s);
            let moves = if a == s {
                let (next, mv) = *ex.space.succ[s].iter().find(|(w, _)| ex.comp[*w] == c).unwrap();
                let mut m = vec![mv];
                m.extend(ex.space.path(next, s, &ex.comp, c).unwrap());
                m
            } else {
                let mut m = ex.space.path(s, a, &ex.comp, c).unwrap();
                m.extend(ex.space.path(a, s, &ex.comp, c).unwrap());
                m
            };
            let start = ex.space.states[s].to_drc(&g);
            let end = replay(&g, &start, &moves, Legality::Legal).map_err(|e| e.to_string())?;
            ensure(end == start, || format!("{:?}: game from {start:?} does not return", ex.out))?;
            let mut counts = vec![0i64; g.n()];
            for &v in &moves {
                counts[v] += 1;
            }
            let k = counts[0] / step[0];
            ensure(
                k >= 1 && counts.iter().zip(&step).all(|(c, s)| *c == k * s),
                || format!("{:?}: game from {start:?} routes {counts:?}, not a multiple of {step:?}", ex.out),
            )?;
            games += 1;
        }
    }
    Ok(format!("{games} returning games checked"))
}

/// Boxes of routing vectors that together contain every routing whose
/// chip change has all entries within `reach` in absolute value, up to
/// adding whole periods.
///
/// Write r = s + d⁺·q with 0 <= s < d⁺. Subtracting whole periods leaves
/// some q(v0) < per(v0), and then q off v0 solves a reduced Laplacian
/// system whose inverse is nonnegative, which bounds it. One box per v0.
fn routing_boxes(out: &OutLists, per: &[i64], reach: i64) -> Vec<Vec<usize>> {
    let n = out.len();
    let mut lap = vec![vec![0f64; n]; n];
    for (v, heads) in out.iter().enumerate() {
        lap[v][v] -= heads.len() as f64;
        for &u in heads {
            lap[u][v] += 1.0;
        }
    }
    let in_deg = |u: usize| out.iter().flatten().filter(|&&w| w == u).count();
    let slack = reach as f64 + (0..n).map(|v| out[v].len() + in_deg(v)).max().unwrap() as f64;
    let mut boxes = Vec::new();
    for v0 in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&v| v != v0).collect();
        let m = rest.len();
        // Invert -L restricted to rest by Gauss-Jordan.
        let mut a: Vec<Vec<f64>> = rest
            .iter()
            .enumerate()
            .map(|(i, &u)| {
                let mut row: Vec<f64> = rest.iter().map(|&w| -lap[u][w]).collect();
                row.extend((0..m).map(|j| (i == j) as u8 as f64));
                row
            })
            .collect();
        for c in 0..m {
            let p = (c..m).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
            a.swap(c, p);
            let pivot = a[c][c];
            a[c].iter_mut().for_each(|x| *x /= pivot);
            for r in 0..m {
                if r != c {
                    let f = a[r][c];
                    let pr = a[c].clone();
                    a[r].iter_mut().zip(&pr).for_each(|(x, y)| *x -= f * y);
                }
            }
        }
        let mut bound = vec![0usize; n];
        bound[v0] = out[v0].len() * per[v0] as usize;
        for (i, &u) in rest.iter().enumerate() {
            let q: f64 = (0..m).map(|j| a[i][m + j].max(0.0) * (slack + per[v0] as f64 * lap[rest[j]][v0].abs())).sum();
            bound[u] = out[u].len() * (q.floor() as usize + 2);
        }
        boxes.push(bound);
    }
    boxes
}

// 4. drc_equivalent agrees with a search over routing vectors in a box.
fn equivalence_soundness() -> Check {
    let mut corpus = all_digraphs(2, 1);
    corpus.extend(all_digraphs(3, 1));
    corpus.push(vec![vec![1, 1], vec![0]]);
    corpus.push(vec![vec![1, 1], vec![0, 0, 0]]);
    corpus.push(vec![vec![1, 1], vec![2], vec![0]]);
    corpus.push(vec![vec![1, 2, 1], vec![0, 2], vec![0]]);

    let mut pairs = 0usize;
    let mut equivalent = 0usize;
    for out in &corpus {
        let g = graph(out);
        let lat = Lattice::<i64>::new(&g);
        let per = lat.period().entries().to_vec();
        let n = g.n();
        let rotors = all_rotors(out);
        let divisors = divisor_box(n, -2, 2);
        let boxes = routing_boxes(out, &per, 4);

        for rho1 in &rotors {
            // Unconstrained routing moves chips independently of the divisor,
            // so the reachable set from (x, ρ1) is x + reach(ρ1).
            let mut reach: HashSet<(Vec<i64>, Vec<usize>)> = HashSet::new();
            for bound in &boxes {
                let mut r = vec![0usize; n];
                loop {
                    let mut delta = vec![0i64; n];
                    let mut slots = rho1.clone();
                    for v in 0..n {
                        let d = out[v].len();
                        delta[v] -= r[v] as i64;
                        for i in 1..=r[v] {
                            delta[out[v][(rho1[v] + i) % d]] += 1;
                        }
                        slots[v] = (rho1[v] + r[v]) % d;
                    }
                    if delta.iter().all(|c| c.abs() <= 4) {
                        reach.insert((delta, slots));
                    }
                    let mut i = 0;
                    while i < n {
                        r[i] += 1;
                        if r[i] < bound[i] {
                            break;
                        }
                        r[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                }
            }

            for x1 in &divisors {
                let a = drc(&g, x1, rho1);
                let d1: i64 = x1.iter().sum();
                for rho2 in &rotors {
                    for x2 in &divisors {
                        if x2.iter().sum::<i64>() != d1 {
                            continue;
                        }
                        let diff: Vec<i64> = x2.iter().zip(x1).map(|(p, q)| p - q).collect();
                        let brute = reach.contains(&(diff, rho2.clone()));
                        let lib = drc_equivalent(&g, &lat, &a, &drc(&g, x2, rho2)).map_err(|e| e.to_string())?;
                        ensure(lib == brute, || {
                            format!("{out:?}: ({x1:?},{rho1:?}) vs ({x2:?},{rho2:?}): library {lib}, search {brute}")
                        })?;
                        pairs += 1;
                        equivalent += lib as usize;
                    }
                }
            }
        }
    }
    Ok(format!("{} graphs, {pairs} equal-degree pairs ({equivalent} equivalent)", corpus.len()))
}

// 5. For recurrent targets, reachable agrees with legal-game search.
fn reachability() -> Check {
    let corpus = small_corpus();
    let mut pairs = 0usize;
    let mut yes = 0usize;
    for ex in corpus {
        let g = graph(&ex.out);
        let lat = Lattice::<i64>::new(&g);
        let targets: Vec<usize> = ex.starts.iter().copied().filter(|&s| ex.on_cycle(s)).collect();
        let mut bit_of: HashMap<usize, usize> = HashMap::new();
        for &t in &targets {
            let next = bit_of.len();
            bit_of.entry(ex.comp[t]).or_insert(next);
        }
        let words = bit_of.len().div_ceil(64);
        // Components are listed sinks first, so successors are done before.
        let mut reach = vec![vec![0u64; words]; ex.comps.len()];
        for (c, members) in ex.comps.iter().enumerate() {
            let mut bits = vec![0u64; words];
            if let Some(&b) = bit_of.get(&c) {
                bits[b / 64] |= 1 << (b % 64);
            }
            for &s in members {
                for &(w, _) in &ex.space.succ[s] {
                    let cw = ex.comp[w];
                    if cw != c {
                        for (x, y) in bits.iter_mut().zip(&reach[cw]) {
                            *x |= *y;
                        }
                    }
                }
            }
            reach[c] = bits;
        }

        let mut by_degree: HashMap<i64, Vec<(usize, Drc<i64>)>> = HashMap::new();
        for &t in &targets {
            let st = &ex.space.states[t];
            by_degree.entry(st.chips.iter().sum()).or_default().push((t, st.to_drc(&g)));
        }
        for &s in &ex.starts {
            let st = &ex.space.states[s];
            let Some(ts) = by_degree.get(&st.chips.iter().sum()) else { continue };
            let from = st.to_drc(&g);
            let bits = &reach[ex.comp[s]];
            for (t, target) in ts {
                let b = bit_of[&ex.comp[*t]];
                let brute = bits[b / 64] >> (b % 64) & 1 == 1;
                let lib = reachable(&g, &lat, &from, target).map_err(|e| e.to_string())?;
                ensure(lib == brute, || format!("{:?}: {st:?} -> {target:?}: library {lib}, search {brute}", ex.out))?;
                pairs += 1;
                yes += lib as usize;
            }
        }
    }
    Ok(format!("{pairs} (start, recurrent target) pairs, {yes} reachable"))
}

// 6. Orbit count by enumeration equals the Picard order.
fn orbit_count_equals_picard() -> Check {
    let mut corpus = vec![(cycle3(), Some(1)), (triangle(), Some(3)), (k4_planar(), Some(16))];
    let mut r = rng(6);
    while corpus.len() < 33 {
        let n = r.gen_range(2..=5);
        let out = random_digraph(&mut r, n, 2, 0.45);
        if product_of_degrees(&out) <= 5_000 {
            corpus.push((out, None));
        }
    }
    let limits = EnumerationLimits::default();
    let mut summary = Vec::new();
    for (out, expected) in &corpus {
        let g = graph(out);
        let lat = Lattice::<i64>::new(&g);
        let by_enum = count_unicycle_orbits(&g, &lat, OrbitCountMethod::Enumeration, limits).map_err(|e| e.to_string())?;
        let by_picard = count_unicycle_orbits(&g, &lat, OrbitCountMethod::Picard, limits).map_err(|e| e.to_string())?;
        let simulated = orbit_partition(out).len() as i64;
        ensure(by_enum == by_picard && by_enum == simulated, || {
            format!("{out:?}: enumeration {by_enum}, picard {by_picard}, simulation {simulated}")
        })?;
        if let Some(e) = expected {
            ensure(by_picard == *e, || format!("{out:?}: expected {e}, got {by_picard}"))?;
            summary.push(by_picard.to_string());
        }
    }
    Ok(format!("{} graphs; named graphs give {}", corpus.len(), summary.join(", ")))
}

fn class_reps(g: &RibbonDigraph, lat: &Lattice<i64>) -> Vec<Divisor<i64>> {
    class_representatives(g.n(), 2, |a, b| {
        lat.divisors_equivalent(&Divisor::new(a.to_vec()), &Divisor::new(b.to_vec()))
    })
    .into_iter()
    .map(Divisor::new)
    .collect()
}

// 7. The three action definitions agree; group-action laws hold.
fn action_agreement() -> Check {
    let mut checked = 0usize;
    for out in [triangle(), k4_planar()] {
        let g = graph(&out);
        let lat = Lattice::<i64>::new(&g);
        let reps = class_reps(&g, &lat);
        ensure(reps.len() as i64 == lat.picard_order(), || {
            format!("{out:?}: {} classes found, Picard order {}", reps.len(), lat.picard_order())
        })?;
        let zero = Divisor::<i64>::zero(g.n());
        for r in g.vertices() {
            let trees = Arborescence::enumerate(&g, r, 10_000).map_err(|e| e.to_string())?;
            ensure(trees.len() == count_arborescences(&out, r) && trees.len() as i64 == lat.picard_order(), || {
                format!("{out:?}: {} arborescences at {r}", trees.len())
            })?;
            let act = |x: &Divisor<i64>, t: &Arborescence| {
                action_alternative(&g, x, t, ActionOptions::default()).map_err(|e| e.to_string())
            };
            for t in &trees {
                ensure(act(&zero, t)? == *t, || format!("{out:?}: zero does not act trivially"))?;
                for x in &reps {
                    let mut images = Vec::new();
                    for schedule in [Schedule::SmallestFirst, Schedule::LargestFirst] {
                        for root_slot in [0, 1] {
                            let o = ActionOptions { root_slot, schedule, budget: DEFAULT_BUDGET };
                            images.push(action_simulate(&g, x, t, o).map_err(|e| e.to_string())?);
                        }
                    }
                    for root_slot in [0, 1] {
                        let o = ActionOptions { root_slot, ..Default::default() };
                        images.push(action_alternative(&g, x, t, o).map_err(|e| e.to_string())?);
                    }
                    let image = images[0].clone();
                    ensure(images.iter().all(|i| *i == image), || {
                        format!("{out:?}: root {r}, x {x:?}: definitions disagree: {images:?}")
                    })?;
                    for t2 in &trees {
                        let d = action_decide(&g, &lat, x, t, t2, 0).map_err(|e| e.to_string())?;
                        ensure(d == (*t2 == image), || format!("{out:?}: decide disagrees for root {r}, x {x:?}"))?;
                    }
                    checked += 1;
                }
            }
            for x in &reps {
                let images: HashSet<Arborescence> = trees.iter().map(|t| act(x, t)).collect::<Result<_, _>>()?;
                ensure(images.len() == trees.len(), || format!("{out:?}: action of {x:?} at {r} is not a bijection"))?;
            }
            let orbit: HashSet<Arborescence> = reps.iter().map(|x| act(x, &trees[0])).collect::<Result<_, _>>()?;
            ensure(orbit.len() == trees.len(), || format!("{out:?}: action at {r} is not transitive"))?;
            for v in g.vertices().filter(|&v| v != r) {
                let mut gen = vec![0i64; g.n()];
                gen[v] = 1;
                gen[r] = -1;
                let gen = Divisor::new(gen);
                for x in &reps {
                    let sum = x + &gen;
                    for t in &trees {
                        ensure(act(&sum, t)? == act(x, &act(&gen, t)?)?, || {
                            format!("{out:?}: composition fails at root {r} for {x:?} + e_{v} - e_{r}")
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} (tree, root, class) triples on K3 and K4"))
}

// 8. Base-point independence, reversal and genus 0 coincide.
fn base_point_reversal_genus() -> Check {
    let mut systems = Vec::new();
    let k3 = rotation_systems(&[vec![1, 2], vec![0, 2], vec![0, 1]]);
    for sys in &k3 {
        for mask in 0..8 {
            let mut o = sys.clone();
            for v in 0..3 {
                if mask >> v & 1 == 1 {
                    o = rotate_at(&o, v, 1);
                }
            }
            systems.push(("K3", o));
        }
    }
    let k4 = rotation_systems(&[vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]]);
    for sys in &k4 {
        systems.push(("K4", sys.clone()));
        systems.push(("K4", rotate_at(&rotate_at(sys, 0, 1), 2, 2)));
    }

    let mut genus_counts: HashMap<(&str, usize), usize> = HashMap::new();
    for (name, out) in &systems {
        let b = Bidirected::from_digraph(graph(out)).map_err(|e| e.to_string())?;
        let lat = Lattice::<i64>::new(b.graph());
        let genus = b.genus();
        ensure(genus == genus_oracle(out), || format!("{out:?}: genus {genus}, face tracing oracle disagrees"))?;
        let report = reversal_test(&b, &lat, 100_000).map_err(|e| e.to_string())?;
        let reps = class_reps(b.graph(), &lat);
        let direct = compare_base_points(&b, &reps, 100_000, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let verdicts = (direct.is_none(), report.holds(), genus == 0);
        ensure(verdicts.0 == verdicts.1 && verdicts.1 == verdicts.2, || {
            format!("{name} {out:?}: direct {}, reversal {}, genus {genus}", verdicts.0, verdicts.1)
        })?;
        if let Some(rho) = &report.counterexample {
            let w = base_point_witness::<i64>(&b, rho, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(w.is_some(), || format!("{out:?}: reversal counterexample gives no base-point witness"))?;
        }
        *genus_counts.entry((name, genus)).or_default() += 1;
    }
    let k4_total = systems.iter().filter(|(n, _)| *n == "K4").count();
    let g0 = genus_counts.get(&("K4", 0)).copied().unwrap_or(0);
    let g1 = genus_counts.get(&("K4", 1)).copied().unwrap_or(0);
    ensure(k4_total >= 20 && g0 > 0 && g1 > 0, || format!("K4 coverage: {k4_total} systems, genus 0: {g0}, genus 1: {g1}"))?;
    Ok(format!(
        "{} K3 presentations, {k4_total} K4 presentations (genus 0: {g0}, genus 1: {g1})",
        systems.len() - k4_total
    ))
}

// 9. The period vector is a positive primitive kernel vector, all ones
// exactly on Eulerian graphs.
fn period_contract() -> Check {
    let mut r = rng(9);
    let mut eulerian = 0;
    for i in 0..200 {
        let n = r.gen_range(2..=8);
        let out = if i % 4 == 0 { random_eulerian(&mut r, n, 3) } else { random_digraph(&mut r, n, 3, 0.4) };
        let g = graph(&out);
        let per = period_vector::<i64>(&g).entries().to_vec();
        ensure(laplacian_times(&out, &per).iter().all(|&c| c == 0), || format!("{out:?}: L·per != 0 for {per:?}"))?;
        ensure(per.iter().all(|&p| p > 0), || format!("{out:?}: per {per:?} not positive"))?;
        let gcd = per.iter().fold(0i64, |a, &b| {
            let (mut a, mut b) = (a, b);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        });
        ensure(gcd == 1, || format!("{out:?}: per {per:?} has gcd {gcd}"))?;
        let ones = per.iter().all(|&p| p == 1);
        ensure(ones == is_eulerian(&out), || format!("{out:?}: per {per:?}, Eulerian {}", is_eulerian(&out)))?;
        eulerian += ones as usize;
    }
    ensure(eulerian > 0 && eulerian < 200, || format!("{eulerian} Eulerian graphs out of 200"))?;
    Ok(format!("200 graphs, {eulerian} Eulerian"))
}

fn main() {
    let criteria: [(&str, Option<u64>, fn() -> Check); 9] = [
        ("orbit size of unicycles", Some(60), orbit_size_theorem),
        ("recurrence characterization", Some(300), recurrence_characterization),
        ("period rigidity of returning games", None, period_rigidity),
        ("equivalence decision soundness", Some(300), equivalence_soundness),
        ("reachability for recurrent targets", None, reachability),
        ("orbit count equals Picard order", Some(60), orbit_count_equals_picard),
        ("action definitions agree", Some(120), action_agreement),
        ("base point, reversal and genus", Some(300), base_point_reversal_genus),
        ("period vector contract", Some(30), period_contract),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = t.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if elapsed > Duration::from_secs(l) => Err(format!("took {elapsed:.1?}, limit {l}s")),
            (r, _) => r,
        };
        let limit = limit.map_or(String::new(), |l| format!(", limit {l}s"));
        match result {
            Ok(detail) => println!("criterion {} PASS  {name} ({elapsed:.1?}{limit}): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {} FAIL  {name} ({elapsed:.1?}{limit}): {why}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
