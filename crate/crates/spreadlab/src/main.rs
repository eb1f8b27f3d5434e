use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use spreadlab::constructions;
use spreadlab::decomposition::{self, UnitKind};
use spreadlab::families::{self, LabeledGraph};
use spreadlab::graph::{Graph, VertexSet};
use spreadlab::solver::{self, SolveOptions, SolveOutcome};
use spreadlab::spreading::{self, Limit, SpreadParams};
use spreadlab::theory;

/// Spreading dynamics on graphs: generators, structural analysis,
/// simulation, exact solvers, constructions and prediction checks.
#[derive(Parser)]
#[command(name = "spreadlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named family member or a random claw-free cubic graph.
    Generate(GenerateArgs),
    /// Report the triangle-diamond partition and family classification.
    Analyze(AnalyzeArgs),
    /// Run the color change rule from a given blue set.
    Simulate(SimulateArgs),
    /// Compute the minimum spreading set exactly.
    Solve(SolveArgs),
    /// Run a proof-derived set construction and validate it.
    Construct(ConstructArgs),
    /// Check solver results against the closed-form predictions.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// Family: N (diamond necklace), F (triangle necklace),
    /// H (triangle-diamond necklace), theta, k4, random
    #[arg(long)]
    family: String,

    /// Size parameter for N/F/H (N_k, F_2k, H_2k)
    #[arg(long)]
    k: Option<usize>,

    /// Triangle-unit count for the random family
    #[arg(long)]
    triangles: Option<usize>,

    /// Diamond-unit count for the random family
    #[arg(long)]
    diamonds: Option<usize>,

    /// RNG seed for the random family
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl FamilyArgs {
    fn build(&self) -> Result<(String, LabeledGraph)> {
        let need_k = || {
            self.k
                .ok_or_else(|| anyhow!("--k is required for family {}", self.family))
        };
        match self.family.as_str() {
            "N" | "n" => {
                let k = need_k()?;
                Ok((format!("N_{k}"), families::diamond_necklace(k)?))
            }
            "F" | "f" => {
                let k = need_k()?;
                Ok((format!("F_{}", 2 * k), families::triangle_necklace(k)?))
            }
            "H" | "h" => {
                let k = need_k()?;
                Ok((
                    format!("H_{}", 2 * k),
                    families::triangle_diamond_necklace(k)?,
                ))
            }
            "theta" => Ok(("theta".into(), families::theta_graph())),
            "k4" | "K4" => {
                let graph = Graph::complete(4);
                let labels = (0..4).map(|v| (format!("v{v}"), v)).collect();
                Ok(("K_4".into(), LabeledGraph { graph, labels }))
            }
            "random" => {
                let t = self
                    .triangles
                    .ok_or_else(|| anyhow!("--triangles is required for the random family"))?;
                let d = self
                    .diamonds
                    .ok_or_else(|| anyhow!("--diamonds is required for the random family"))?;
                Ok((
                    format!("random_t{t}_d{d}_s{}", self.seed),
                    families::random_claw_free_cubic(t, d, self.seed)?,
                ))
            }
            other => bail!("unknown family {other:?}"),
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    family: FamilyArgs,

    /// Write the edge list here (a .labels.json sidecar is written next to
    /// it); stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Edge-list file
    #[arg(long)]
    graph: PathBuf,

    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    graph: PathBuf,

    #[arg(long)]
    p: usize,

    /// Positive integer or "inf"
    #[arg(long)]
    q: String,

    /// Initial blue set: inline like "0,4,9" or a file of indices
    #[arg(long)]
    blue: String,

    /// Report synchronous rounds instead of the canonical sequential trace
    #[arg(long)]
    synchronous: bool,

    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,

    #[arg(long)]
    p: usize,

    /// Positive integer or "inf"
    #[arg(long)]
    q: String,

    /// DFS node budget
    #[arg(long, default_value_t = 100_000_000)]
    budget: u64,

    #[arg(long)]
    json: bool,

    /// Include wall-clock timing in output (breaks byte-determinism)
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    graph: PathBuf,

    /// ind-set | cover | perc3 | s31 | perc2 | s22 | s21
    #[arg(long)]
    method: String,

    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Edge-list file (alternative to --family)
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,

    #[command(flatten)]
    family: OptionalFamilyArgs,

    /// Cells like "2,2;2,3;1,inf"
    #[arg(long)]
    cells: String,

    /// Number of random instances (seeds seed..seed+count)
    #[arg(long, default_value_t = 1)]
    count: usize,

    #[arg(long, default_value_t = 100_000_000)]
    budget: u64,

    /// Emit JSON to stdout, or to the given path
    #[arg(long, value_name = "PATH", num_args = 0..=1)]
    json: Option<Option<PathBuf>>,
}

#[derive(Args)]
struct OptionalFamilyArgs {
    #[arg(long)]
    family: Option<String>,

    #[arg(long)]
    k: Option<usize>,

    #[arg(long)]
    triangles: Option<usize>,

    #[arg(long)]
    diamonds: Option<usize>,

    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate(args) => generate(args),
        Command::Analyze(args) => analyze(args),
        Command::Simulate(args) => simulate(args),
        Command::Solve(args) => solve(args),
        Command::Construct(args) => construct(args),
        Command::Verify(args) => verify(args),
    }
}

fn load_graph(path: &PathBuf) -> Result<Graph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading edge list {}", path.display()))?;
    Ok(Graph::parse_edge_list(&text)?)
}

fn parse_params(p: usize, q: &str) -> Result<SpreadParams> {
    let q: Limit = q.parse()?;
    Ok(SpreadParams::new(p, q)?)
}

fn parse_cells(spec: &str) -> Result<Vec<SpreadParams>> {
    let mut out = Vec::new();
    for cell in spec.split(';').filter(|c| !c.trim().is_empty()) {
        let (p, q) = cell
            .trim()
            .split_once(',')
            .ok_or_else(|| anyhow!("cell {cell:?} is not of the form p,q"))?;
        let p: usize = p.trim().parse().context("cell p")?;
        out.push(parse_params(p, q.trim())?);
    }
    if out.is_empty() {
        bail!("no cells given");
    }
    Ok(out)
}

fn parse_blue(spec: &str, g: &Graph) -> Result<VertexSet> {
    let tokens: Vec<&str> = spec
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    let inline: Option<Vec<usize>> = tokens.iter().map(|t| t.parse::<usize>().ok()).collect();
    let indices = match inline {
        Some(v) if !v.is_empty() => v,
        _ => {
            let text = fs::read_to_string(spec)
                .with_context(|| format!("reading blue set from {spec}"))?;
            text.split_whitespace()
                .map(|t| t.parse::<usize>().context("blue vertex index"))
                .collect::<Result<Vec<usize>>>()?
        }
    };
    let set = VertexSet::from_unsorted(indices);
    set.validate_for(g)?;
    Ok(set)
}

fn graph_block(g: &Graph) -> Value {
    json!({"n": g.n(), "m": g.m()})
}

fn params_block(params: SpreadParams) -> Value {
    json!({
        "p": params.p,
        "q": params.q.finite(),
        "q_infinite": params.q.is_infinite(),
    })
}

fn generate(args: GenerateArgs) -> Result<ExitCode> {
    let (name, labeled) = args.family.build()?;
    let edge_list = labeled.graph.to_edge_list();
    match args.output {
        Some(path) => {
            fs::write(&path, &edge_list).with_context(|| format!("writing {}", path.display()))?;
            let sidecar = path.with_extension("labels.json");
            let meta = json!({
                "schema": 1,
                "family": name,
                "n": labeled.graph.n(),
                "m": labeled.graph.m(),
                "labels": labeled.labels,
            });
            fs::write(&sidecar, format!("{:#}\n", meta))
                .with_context(|| format!("writing {}", sidecar.display()))?;
            eprintln!(
                "wrote {} ({} vertices, {} edges) and {}",
                path.display(),
                labeled.graph.n(),
                labeled.graph.m(),
                sidecar.display()
            );
        }
        None => print!("{edge_list}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn analyze(args: AnalyzeArgs) -> Result<ExitCode> {
    let g = load_graph(&args.graph)?;
    let family = decomposition::classify_family(&g)?;
    let part = match decomposition::delta_d_partition(&g) {
        Ok(part) => Some(part),
        Err(spreadlab::Error::NoPartitionForK4) => None,
        Err(err) => return Err(err.into()),
    };
    if args.json {
        let units: Vec<Value> = part
            .as_ref()
            .map(|p| {
                p.units
                    .iter()
                    .map(|u| {
                        json!({
                            "kind": match u.kind { UnitKind::Triangle => "triangle", UnitKind::Diamond => "diamond" },
                            "vertices": u.vertices,
                            "dominating": u.dominating,
                        })
                    })
                    .collect()
            })
            .unwrap_or_default();
        let adjacency: Vec<Value> = part
            .as_ref()
            .map(|p| {
                p.unit_edges
                    .iter()
                    .map(|ue| json!({"units": [ue.units.0, ue.units.1], "edge": [ue.edge.0, ue.edge.1]}))
                    .collect()
            })
            .unwrap_or_default();
        let bonds: Vec<Value> = part
            .as_ref()
            .map(|p| {
                let mut pairs: Vec<(usize, usize)> =
                    p.unit_edges.iter().map(|ue| ue.units).collect();
                pairs.dedup();
                pairs
                    .into_iter()
                    .map(|(i, j)| json!({"units": [i, j], "multiplicity": p.multiplicity(i, j)}))
                    .collect()
            })
            .unwrap_or_default();
        let report = json!({
            "schema": 1,
            "graph": graph_block(&g),
            "family": format!("{family:?}"),
            "u": part.as_ref().map(|p| p.unit_count()),
            "units": units,
            "unit_adjacency": adjacency,
            "bonds": bonds,
        });
        println!("{report:#}");
    } else {
        println!("n = {}, m = {}", g.n(), g.m());
        println!("family = {family:?}");
        match &part {
            Some(part) => {
                println!("u = {}", part.unit_count());
                for (i, unit) in part.units.iter().enumerate() {
                    println!(
                        "unit {i}: {:?} {}{}",
                        unit.kind,
                        unit.vertices,
                        if unit.dominating.is_empty() {
                            String::new()
                        } else {
                            format!(" dominating {}", unit.dominating)
                        }
                    );
                }
                for ue in &part.unit_edges {
                    println!(
                        "bond: unit {} - unit {} via edge {} {}",
                        ue.units.0, ue.units.1, ue.edge.0, ue.edge.1
                    );
                }
            }
            None => println!("no triangle-diamond partition (complete graph on four vertices)"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn simulate(args: SimulateArgs) -> Result<ExitCode> {
    let g = load_graph(&args.graph)?;
    let params = parse_params(args.p, &args.q)?;
    let blue = parse_blue(&args.blue, &g)?;
    if args.synchronous {
        let (closure, rounds) = spreading::closure_rounds(&g, &blue, params)?;
        let spreading_set = closure.len() == g.n();
        if args.json {
            let report = json!({
                "schema": 1,
                "graph": graph_block(&g),
                "query": params_block(params),
                "blue": blue,
                "rounds": rounds,
                "closure": closure,
                "spreading": spreading_set,
            });
            println!("{report:#}");
        } else {
            println!("initial blue: {blue}");
            for (i, round) in rounds.iter().enumerate() {
                let fired: Vec<String> = round
                    .iter()
                    .map(|s| format!("{} (witness {})", s.vertex, s.witness))
                    .collect();
                println!("round {}: {}", i + 1, fired.join(", "));
            }
            println!("closure: {closure}");
            println!("spreading set: {spreading_set}");
        }
    } else {
        let result = spreading::closure(&g, &blue, params)?;
        let spreading_set = result.blue.len() == g.n();
        if args.json {
            let report = json!({
                "schema": 1,
                "graph": graph_block(&g),
                "query": params_block(params),
                "blue": blue,
                "steps": result.trace.steps,
                "closure": result.blue,
                "spreading": spreading_set,
            });
            println!("{report:#}");
        } else {
            println!("initial blue: {blue}");
            for (i, step) in result.trace.steps.iter().enumerate() {
                println!(
                    "step {}: vertex {} fires (witness {}, {} blue neighbors)",
                    i + 1,
                    step.vertex,
                    step.witness,
                    step.blue_neighbors
                );
            }
            println!("closure: {}", result.blue);
            println!("spreading set: {spreading_set}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn solve(args: SolveArgs) -> Result<ExitCode> {
    let g = load_graph(&args.graph)?;
    let params = parse_params(args.p, &args.q)?;
    let opts = SolveOptions {
        node_budget: args.budget,
    };
    let outcome = solver::sigma_exact(&g, params, &opts)?;
    match outcome {
        SolveOutcome::Exact(res) => {
            if args.json {
                let report = json!({
                    "schema": 1,
                    "graph": graph_block(&g),
                    "query": params_block(params),
                    "result": {
                        "value": res.value,
                        "witness": res.witness,
                        "nodes_explored": res.nodes_explored,
                        "exact": true,
                    },
                    "timing_ms": args.timing.then(|| res.elapsed.as_millis() as u64),
                });
                println!("{report:#}");
            } else {
                println!("sigma = {}", res.value);
                println!("witness = {}", res.witness);
                println!("nodes_explored = {}", res.nodes_explored);
                if args.timing {
                    println!("elapsed_ms = {}", res.elapsed.as_millis());
                }
            }
        }
        SolveOutcome::BudgetExceeded {
            lower_bound,
            nodes_explored,
            elapsed,
        } => {
            if args.json {
                let report = json!({
                    "schema": 1,
                    "graph": graph_block(&g),
                    "query": params_block(params),
                    "result": {
                        "interval": [lower_bound, g.n()],
                        "nodes_explored": nodes_explored,
                        "exact": false,
                    },
                    "timing_ms": args.timing.then(|| elapsed.as_millis() as u64),
                });
                println!("{report:#}");
            } else {
                println!("budget exhausted: sigma in [{lower_bound}, {}]", g.n());
                println!("nodes_explored = {nodes_explored}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn construct(args: ConstructArgs) -> Result<ExitCode> {
    let g = load_graph(&args.graph)?;
    let (set, formula, validated, log, params): (
        VertexSet,
        String,
        bool,
        Vec<String>,
        Option<SpreadParams>,
    ) = match args.method.as_str() {
        "ind-set" => {
            let set = constructions::triangle_hitting_independent_set(&g)?;
            (
                set,
                "independent, one vertex per triangle".into(),
                true,
                vec![],
                None,
            )
        }
        "cover" => {
            let set = constructions::vertex_cover_two_per_triangle(&g)?;
            (
                set,
                "vertex cover, two per triangle".into(),
                true,
                vec![],
                None,
            )
        }
        method => {
            let res = match method {
                "perc3" => constructions::percolating_set_3(&g)?,
                "s31" => constructions::spreading_set_31(&g)?,
                "perc2" => constructions::percolating_set_2(&g)?,
                "s22" => constructions::spreading_set_22(&g)?,
                "s21" => constructions::spreading_set_21(&g)?,
                other => bail!("unknown method {other:?}"),
            };
            (
                res.set,
                res.size_formula,
                res.validated,
                res.log,
                Some(res.params),
            )
        }
    };
    if args.json {
        let report = json!({
            "schema": 1,
            "graph": graph_block(&g),
            "method": args.method,
            "params": params.map(params_block),
            "result": {
                "set": set,
                "size": set.len(),
                "size_formula": formula,
                "validated": validated,
                "log": log,
            },
        });
        println!("{report:#}");
    } else {
        println!("set = {set}");
        println!("size = {} ({})", set.len(), formula);
        if let Some(p) = params {
            println!("params = {p}");
        }
        println!("validated = {validated}");
        for line in &log {
            println!("  {line}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn worker_threads() -> usize {
    std::env::var("SPREADLAB_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let cells = parse_cells(&args.cells)?;
    let opts = SolveOptions {
        node_budget: args.budget,
    };
    let mut instances: Vec<(String, Graph)> = Vec::new();
    if let Some(path) = &args.graph {
        instances.push((path.display().to_string(), load_graph(path)?));
    } else {
        let family = FamilyArgs {
            family: args
                .family
                .family
                .clone()
                .ok_or_else(|| anyhow!("either --graph or --family is required"))?,
            k: args.family.k,
            triangles: args.family.triangles,
            diamonds: args.family.diamonds,
            seed: args.family.seed,
        };
        if family.family == "random" && args.count > 1 {
            for offset in 0..args.count as u64 {
                let spec = FamilyArgs {
                    family: family.family.clone(),
                    k: family.k,
                    triangles: family.triangles,
                    diamonds: family.diamonds,
                    seed: family.seed + offset,
                };
                let (label, labeled) = spec.build()?;
                instances.push((label, labeled.graph));
            }
        } else {
            let (label, labeled) = family.build()?;
            instances.push((label, labeled.graph));
        }
    }

    let report = theory::survey(&instances, &cells, &opts, worker_threads())?;

    match &args.json {
        Some(target) => {
            let value = json!({
                "schema": 1,
                "report": report,
            });
            let text = format!("{value:#}\n");
            match target {
                Some(path) => {
                    fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{text}"),
            }
        }
        None => {
            for inst in &report.reports {
                println!(
                    "{} (n={}, family={}, u={})",
                    inst.graph.label,
                    inst.graph.n,
                    inst.graph.family,
                    inst.graph.units.map_or("-".into(), |u| u.to_string())
                );
                for cell in &inst.cells {
                    let q = cell.params.q.map_or("inf".to_string(), |q| q.to_string());
                    let exact = cell.exact.map_or("-".to_string(), |v| v.to_string());
                    println!(
                        "  ({},{}): prediction {:?} [{}], exact {}, verdict {:?}",
                        cell.params.p,
                        q,
                        cell.prediction.kind,
                        cell.prediction.provenance,
                        exact,
                        cell.verdict
                    );
                }
            }
            println!(
                "summary: {} instances, {} violations, {} skipped",
                report.reports.len(),
                report.violations,
                report.skipped
            );
        }
    }
    if report.violations > 0 {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}
