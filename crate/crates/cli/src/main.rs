mod graphfile;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{Map, Value};

use rotorlab::action::{
    action_alternative, action_decide, action_simulate, base_point_witness, reversal_test, ActionOptions, Schedule,
};
use rotorlab::embedding::face_count;
use rotorlab::engine::{apply_routing_vector, classical_step, orbit_size, recurrence};
use rotorlab::equivalence::{count_unicycle_orbits, drc_equivalent, equivalence_witness, reachable, same_orbit};
use rotorlab::lattice::laplacian;
use rotorlab::{
    Arborescence, Bidirected, Divisor, Drc, EdgeRef, EnumerationLimits, Lattice, OrbitCountMethod, Recurrence,
    RibbonDigraph, SpanningTree, DEFAULT_BUDGET,
};

use graphfile::{describe, FileError, GraphFile};
use report::{answer, num, nums, Format, Report};

#[derive(Parser)]
#[command(name = "rotorlab", version, about = "Rotor-routing on ribbon digraphs")]
struct Cli {
    /// Output rendering.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Step budget for simulations.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the graph against the standing assumptions.
    Validate { file: PathBuf },
    /// Print the Laplacian (column v is the effect of firing v).
    Laplacian { file: PathBuf },
    /// Print the period vector.
    Period { file: PathBuf },
    /// Print the order of the degree-zero Picard group.
    PicardOrder { file: PathBuf },
    /// Print the orbit size of every unicycle.
    OrbitSize { file: PathBuf },
    /// Route at a vertex and print the resulting configuration.
    Route {
        file: PathBuf,
        vertex: String,
        /// Refuse routings at vertices without enough chips.
        #[arg(long)]
        legal: bool,
        #[arg(long, default_value_t = 1)]
        times: u64,
    },
    /// Fire a vertex (one full turn of its rotor) and print the result.
    Fire {
        file: PathBuf,
        vertex: String,
        #[arg(long, default_value_t = 1)]
        times: u64,
    },
    /// Run the single-chip walk.
    Walk {
        file: PathBuf,
        #[arg(long)]
        steps: u64,
    },
    /// Decide whether the configuration is recurrent.
    Recurrent { file: PathBuf },
    /// Decide linear equivalence of two configurations on the same graph.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Print a nonnegative routing vector taking A to B.
        #[arg(long)]
        witness: bool,
    },
    /// Decide whether a legal game leads from A to the recurrent B.
    Reachable { a: PathBuf, b: PathBuf },
    /// Decide whether two unicycles lie in the same orbit.
    SameOrbit { a: PathBuf, b: PathBuf },
    /// Count the unicycle orbits.
    OrbitCount {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = CountMethod::Picard)]
        method: CountMethod,
        /// Threads for orbit simulation.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Maximum number of rotor configurations to enumerate.
        #[arg(long, default_value_t = 1 << 20)]
        cap: usize,
    },
    /// Apply the rotor-router action to a spanning in-arborescence.
    Action {
        file: PathBuf,
        /// Root vertex.
        #[arg(long)]
        root: String,
        /// Degree-zero divisor as `name=count,...`; defaults to the file's chips.
        #[arg(long)]
        divisor: Option<String>,
        /// Arborescence as `name=slot,...` for every non-root vertex; defaults
        /// to the file's rotors off the root.
        #[arg(long)]
        tree: Option<String>,
        /// Head of the root edge; defaults to the root's slot 0.
        #[arg(long)]
        w: Option<String>,
        /// Compare the image with this arborescence.
        #[arg(long)]
        check: Option<String>,
        #[arg(long, value_enum, default_value_t = ActionMethod::Simulate)]
        method: ActionMethod,
    },
    /// Decide whether every unicycle is equivalent to its reversal.
    ReversalTest {
        file: PathBuf,
        #[arg(long, default_value_t = 1 << 20)]
        cap: usize,
    },
    /// Genus of the embedding given by the rotation system.
    Genus { file: PathBuf },
    /// Decide whether the action on spanning trees is independent of the root.
    BasePointIndependent {
        file: PathBuf,
        #[arg(long, default_value_t = 1 << 20)]
        cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CountMethod {
    Enum,
    Picard,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ActionMethod {
    Simulate,
    Alt,
    Decide,
}

/// A finished command: what to print and the exit code.
struct Outcome {
    report: Report,
    code: u8,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, code: 0 }
    }

    fn decision(yes: bool, report: Report) -> Self {
        Outcome { report: Report::new().field("answer", answer(yes)).append(report), code: if yes { 0 } else { 1 } }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.report.render(cli.format));
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<Result<GraphFile, FileError>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(graphfile::parse(&text))
}

fn load(path: &Path) -> anyhow::Result<GraphFile> {
    read(path)?.with_context(|| path.display().to_string())
}

/// Two files over one graph.
fn load_pair(a: &Path, b: &Path) -> anyhow::Result<(RibbonDigraph, Drc, Drc)> {
    let fa = load(a)?;
    let fb = load(b)?;
    if fa.graph != fb.graph {
        bail!(
            "{} and {} describe different graphs; both files need identical vertex and out lines",
            a.display(),
            b.display()
        );
    }
    Ok((fa.graph, fa.drc, fb.drc))
}

/// Core errors with vertex names filled in.
fn named(graph: &RibbonDigraph) -> impl Fn(rotorlab::Error) -> anyhow::Error + '_ {
    move |e| anyhow!(describe(&e, &|v| graph.name(v)))
}

fn vertex(graph: &RibbonDigraph, name: &str) -> anyhow::Result<usize> {
    graph
        .vertices()
        .find(|&v| graph.name(v) == name)
        .ok_or_else(|| anyhow!("unknown vertex '{name}'"))
}

fn per_vertex<'a>(graph: &RibbonDigraph, values: impl IntoIterator<Item = &'a BigInt>) -> Value {
    let map: Map<String, Value> = graph.vertices().map(|v| graph.name(v)).zip(values.into_iter().map(num)).collect();
    Value::Object(map)
}

fn rotor_value(graph: &RibbonDigraph, drc: &Drc) -> Value {
    Value::Object(graph.vertices().map(|v| (graph.name(v), Value::from(drc.rotor.slot(v)))).collect())
}

fn configuration(report: Report, graph: &RibbonDigraph, drc: &Drc, format: Format) -> Report {
    let report = if format == Format::Machine {
        report.field("chips", per_vertex(graph, drc.divisor.chips())).field("rotor", rotor_value(graph, drc))
    } else {
        report
    };
    report.drc(graphfile::render(graph, drc))
}

/// `name=value` pairs separated by commas or whitespace.
fn assignments(spec: &str) -> anyhow::Result<Vec<(&str, &str)>> {
    spec.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|item| {
            item.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| anyhow!("expected name=value, got '{item}'"))
        })
        .collect()
}

fn parse_divisor(graph: &RibbonDigraph, spec: &str) -> anyhow::Result<Divisor> {
    let mut chips = vec![BigInt::zero(); graph.n()];
    for (name, value) in assignments(spec)? {
        let v = vertex(graph, name)?;
        chips[v] = value.parse().map_err(|_| anyhow!("chip count '{value}' is not an integer"))?;
    }
    Ok(Divisor::new(chips))
}

fn parse_tree(graph: &RibbonDigraph, root: usize, spec: &str) -> anyhow::Result<Arborescence> {
    let mut edges = vec![None; graph.n()];
    for (name, value) in assignments(spec)? {
        let v = vertex(graph, name)?;
        if v == root {
            bail!("the arborescence has no edge at the root {name}");
        }
        let slot: usize = value.parse().map_err(|_| anyhow!("slot '{value}' is not a nonnegative integer"))?;
        if edges[v].replace(EdgeRef::new(v, slot)).is_some() {
            bail!("vertex {name} given twice");
        }
    }
    if let Some(v) = graph.vertices().find(|&v| v != root && edges[v].is_none()) {
        bail!("the arborescence has no edge at {}", graph.name(v));
    }
    Arborescence::new(graph, root, edges).map_err(named(graph))
}

fn tree_value(graph: &RibbonDigraph, arb: &Arborescence) -> Value {
    Value::Object(
        graph
            .vertices()
            .filter_map(|v| arb.edge(v).map(|e| (graph.name(v), Value::from(e.slot))))
            .collect(),
    )
}

fn tree_heads(graph: &RibbonDigraph, arb: &Arborescence) -> Value {
    Value::Array(
        graph
            .vertices()
            .filter_map(|v| arb.edge(v).map(|e| Value::from(format!("{}->{}", graph.name(v), graph.name(graph.head(e))))))
            .collect(),
    )
}

fn spanning_tree_value(b: &Bidirected, tree: &SpanningTree) -> Value {
    let g = b.graph();
    Value::Array(
        tree.edges
            .iter()
            .map(|&id| {
                let (x, y) = b.ends(id);
                Value::from(format!("{}-{}", g.name(x.tail), g.name(y.tail)))
            })
            .collect(),
    )
}

fn bidirected(graph: &RibbonDigraph) -> anyhow::Result<Bidirected> {
    Bidirected::from_digraph(graph.clone())
        .map_err(|e| anyhow!("{e}; this command needs a bidirected graph (every u->v edge matched by a v->u edge)"))
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let budget = cli.budget;
    let format = cli.format;
    match &cli.command {
        Command::Validate { file } => match read(file)? {
            Ok(f) => {
                let g = &f.graph;
                Ok(Outcome::decision(
                    true,
                    Report::new()
                        .field("vertices", g.n())
                        .field("edges", g.edge_count())
                        .field("eulerian", answer(g.is_eulerian())),
                ))
            }
            Err(e @ FileError::Graph { .. }) => Ok(Outcome::decision(false, Report::new().field("reason", e.to_string()))),
            Err(e) => Err(anyhow!(e).context(file.display().to_string())),
        },
        Command::Laplacian { file } => {
            let f = load(file)?;
            let l = laplacian::<BigInt>(&f.graph);
            let rows: Vec<Value> = l.matrix().to_rows().iter().map(nums).collect();
            Ok(Outcome::ok(
                Report::new()
                    .field("vertices", Value::Array(f.graph.vertices().map(|v| Value::from(f.graph.name(v))).collect()))
                    .field("laplacian", Value::Array(rows)),
            ))
        }
        Command::Period { file } => {
            let f = load(file)?;
            let lat = Lattice::new(&f.graph);
            Ok(Outcome::ok(Report::new().field("period", per_vertex(&f.graph, lat.period().entries()))))
        }
        Command::PicardOrder { file } => {
            let f = load(file)?;
            Ok(Outcome::ok(Report::new().field("picard_order", num(&Lattice::new(&f.graph).picard_order()))))
        }
        Command::OrbitSize { file } => {
            let f = load(file)?;
            let lat = Lattice::new(&f.graph);
            Ok(Outcome::ok(Report::new().field("orbit_size", num(&orbit_size(&f.graph, lat.period())))))
        }
        Command::Route { file, vertex: name, legal, times } => {
            let f = load(file)?;
            let g = &f.graph;
            let v = vertex(g, name)?;
            let k = BigInt::from(*times);
            // Routings at v never bring chips back to v, so k legal routings
            // in a row need k chips up front.
            if *legal && f.drc.divisor[v] < k {
                return Err(named(g)(rotorlab::Error::IllegalRouting { vertex: v }));
            }
            let mut r = vec![BigInt::zero(); g.n()];
            r[v] = k;
            let out = apply_routing_vector(g, &f.drc, &r).map_err(named(g))?;
            Ok(Outcome::ok(configuration(Report::new(), g, &out, format)))
        }
        Command::Fire { file, vertex: name, times } => {
            let f = load(file)?;
            let g = &f.graph;
            let v = vertex(g, name)?;
            let mut z = vec![BigInt::zero(); g.n()];
            z[v] = BigInt::from(*times);
            let delta = laplacian::<BigInt>(g).apply(&z);
            let chips = f.drc.divisor.chips().iter().zip(delta).map(|(a, d)| a + d).collect();
            let out = Drc::new(Divisor::new(chips), f.drc.rotor.clone());
            Ok(Outcome::ok(configuration(Report::new(), g, &out, format)))
        }
        Command::Walk { file, steps } => {
            let f = load(file)?;
            let g = &f.graph;
            let mut state = f.drc.clone();
            let mut trace = Vec::new();
            for _ in 0..*steps {
                let at = state.divisor.single_chip().ok_or_else(|| named(g)(rotorlab::Error::NotOneChip))?;
                trace.push(Value::from(g.name(at)));
                state = classical_step(g, &state).map_err(named(g))?;
            }
            let report = Report::new().field("trace_length", *steps).field("trace", Value::Array(trace));
            Ok(Outcome::ok(configuration(report, g, &state, format)))
        }
        Command::Recurrent { file } => {
            let f = load(file)?;
            let g = &f.graph;
            Ok(match recurrence(g, &f.drc) {
                Recurrence::Recurrent => Outcome::decision(true, Report::new()),
                Recurrence::NegativeEntry { vertex } => Outcome::decision(
                    false,
                    Report::new().field("reason", "divisor has negative entry").field("vertex", g.name(vertex)),
                ),
                Recurrence::ChiplessCycle { cycle } => Outcome::decision(
                    false,
                    Report::new()
                        .field("reason", "rotor cycle carries no chip")
                        .field("cycle", Value::Array(cycle.iter().map(|&v| Value::from(g.name(v))).collect())),
                ),
            })
        }
        Command::Equiv { a, b, witness } => {
            let (g, x, y) = load_pair(a, b)?;
            let lat = Lattice::new(&g);
            if *witness {
                let w = equivalence_witness(&g, &lat, &x, &y).map_err(named(&g))?;
                let report = match &w {
                    Some(r) => Report::new().field("witness", per_vertex(&g, r)),
                    None => Report::new(),
                };
                Ok(Outcome::decision(w.is_some(), report))
            } else {
                let yes = drc_equivalent(&g, &lat, &x, &y).map_err(named(&g))?;
                Ok(Outcome::decision(yes, Report::new()))
            }
        }
        Command::Reachable { a, b } => {
            let (g, x, y) = load_pair(a, b)?;
            let lat = Lattice::new(&g);
            match reachable(&g, &lat, &x, &y) {
                Ok(yes) => Ok(Outcome::decision(yes, Report::new())),
                Err(rotorlab::Error::NotRecurrent) => {
                    let why = match recurrence(&g, &y) {
                        Recurrence::NegativeEntry { vertex } => format!("negative chip count at {}", g.name(vertex)),
                        Recurrence::ChiplessCycle { cycle } => format!(
                            "rotor cycle {} carries no chip",
                            cycle.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join("->")
                        ),
                        Recurrence::Recurrent => unreachable!(),
                    };
                    bail!("target configuration is not recurrent ({why}); reachability is only decided for recurrent targets")
                }
                Err(e) => Err(named(&g)(e)),
            }
        }
        Command::SameOrbit { a, b } => {
            let (g, x, y) = load_pair(a, b)?;
            let lat = Lattice::new(&g);
            match same_orbit(&g, &lat, &x, &y) {
                Ok(yes) => Ok(Outcome::decision(yes, Report::new())),
                Err(rotorlab::Error::NotUnicycle) => {
                    bail!("both configurations must be unicycles (one chip, on the only rotor cycle)")
                }
                Err(e) => Err(named(&g)(e)),
            }
        }
        Command::OrbitCount { file, method, jobs, cap } => {
            let f = load(file)?;
            let lat = Lattice::new(&f.graph);
            let (method, label) = match method {
                CountMethod::Enum => (OrbitCountMethod::Enumeration, "enum"),
                CountMethod::Picard => (OrbitCountMethod::Picard, "picard"),
            };
            let limits = EnumerationLimits { cap: *cap, budget, jobs: (*jobs).max(1) };
            let count = count_unicycle_orbits(&f.graph, &lat, method, limits).map_err(named(&f.graph))?;
            Ok(Outcome::ok(Report::new().field("orbit_count", num(&count)).field("method", label)))
        }
        Command::Action { file, root, divisor, tree, w, check, method } => {
            let f = load(file)?;
            let g = &f.graph;
            let r = vertex(g, root)?;
            let x = match divisor {
                Some(spec) => parse_divisor(g, spec)?,
                None => f.drc.divisor.clone(),
            };
            let from = match tree {
                Some(spec) => parse_tree(g, r, spec)?,
                None => Arborescence::from_rotor(g, &f.drc.rotor, r)
                    .map_err(named(g))
                    .context("the file's rotors off the root do not form an arborescence; pass --tree")?,
            };
            let root_slot = match w {
                Some(name) => {
                    let h = vertex(g, name)?;
                    g.slot_towards(r, h).ok_or_else(|| anyhow!("no edge {root}->{name}"))?
                }
                None => 0,
            };
            let target = check.as_deref().map(|spec| parse_tree(g, r, spec)).transpose()?;
            let options = ActionOptions { root_slot, schedule: Schedule::SmallestFirst, budget };
            let image = match method {
                ActionMethod::Simulate => action_simulate(g, &x, &from, options).map_err(named(g))?,
                ActionMethod::Alt => action_alternative(g, &x, &from, options).map_err(named(g))?,
                ActionMethod::Decide => {
                    let target = target.ok_or_else(|| anyhow!("--method decide needs --check"))?;
                    let lat = Lattice::new(g);
                    let yes = action_decide(g, &lat, &x, &from, &target, root_slot).map_err(named(g))?;
                    return Ok(Outcome::decision(yes, Report::new()));
                }
            };
            let report = Report::new().field("tree", tree_value(g, &image)).field("tree_edges", tree_heads(g, &image));
            Ok(match target {
                Some(t) => Outcome::decision(image == t, report),
                None => Outcome::ok(report),
            })
        }
        Command::ReversalTest { file, cap } => {
            let f = load(file)?;
            let b = bidirected(&f.graph)?;
            let lat = Lattice::new(b.graph());
            let rep = reversal_test(&b, &lat, *cap).map_err(named(&f.graph))?;
            let mut report = Report::new().field("checked", rep.checked);
            if let Some(rotor) = &rep.counterexample {
                let drc = Drc::new(Divisor::zero(f.graph.n()), rotor.clone());
                report = report.field("counterexample", rotor_value(&f.graph, &drc));
            }
            Ok(Outcome::decision(rep.holds(), report))
        }
        Command::Genus { file } => {
            let f = load(file)?;
            let b = bidirected(&f.graph)?;
            let faces = face_count(b.graph(), b.pairing()).map_err(named(&f.graph))?;
            Ok(Outcome::ok(Report::new().field("genus", b.genus()).field("faces", faces)))
        }
        Command::BasePointIndependent { file, cap } => {
            let f = load(file)?;
            let g = &f.graph;
            let b = bidirected(g)?;
            let lat = Lattice::new(g);
            let rep = reversal_test(&b, &lat, *cap).map_err(named(g))?;
            let Some(rotor) = rep.counterexample else {
                return Ok(Outcome::decision(true, Report::new()));
            };
            let witness = base_point_witness::<BigInt>(&b, &rotor, budget)
                .map_err(named(g))?
                .ok_or_else(|| anyhow!("internal: reversal counterexample did not yield differing actions"))?;
            let report = Report::new()
                .field("v", g.name(witness.v))
                .field("w", g.name(witness.w))
                .field("tree", spanning_tree_value(&b, &witness.tree))
                .field("divisor", per_vertex(g, witness.divisor.chips()))
                .field("image_at_v", spanning_tree_value(&b, &witness.image_at_v))
                .field("image_at_w", spanning_tree_value(&b, &witness.image_at_w));
            Ok(Outcome::decision(false, report))
        }
    }
}
