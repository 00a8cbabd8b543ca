//! `normrig`: global rigidity of graphs in analytic normed planes.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use normrig::io::{emit_graph, emit_report, emit_script, parse_graph, parse_placement, parse_script};
use normrig::{
    certify, framework_rank, is_globally_rigid_analytic, random_regular_placement, reduce_to_base, run_experiment,
    Graph, GraphFormat, Model, NormedPlane, Placement, RankMode,
};

#[derive(Parser)]
#[command(name = "normrig", version, about = "Global rigidity of graphs in analytic normed planes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide global rigidity and print the report.
    Check(GraphInput),
    /// Reduce an M(2,2)-connected graph to K5- or B1 and print the move script that rebuilds it.
    Reduce(GraphInput),
    /// Replay a move script and print the graph.
    Build {
        /// Script file; stdin when absent or `-`.
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
    },
    /// Rank of the rigidity operator at a placement.
    Rank {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        plane: PlaneArgs,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Relative singular-value threshold in float mode.
        #[arg(long, default_value_t = RankMode::DEFAULT_TOL)]
        tol: f64,
        /// Placement file (`v x y` lines); random when absent.
        #[arg(long)]
        placement: Option<PathBuf>,
    },
    /// Combinatorial report plus a numeric cross-check at a random placement.
    Certify {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        plane: PlaneArgs,
    },
    /// Print a seeded random graph.
    Random {
        #[command(flatten)]
        model: ModelArgs,
        /// Number of vertices (ignored by m22).
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
    },
    /// Frequency of global rigidity among random graphs.
    Experiment {
        #[command(flatten)]
        model: ModelArgs,
        /// Vertex counts, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [8, 10, 12])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Args)]
struct GraphInput {
    /// Graph file; stdin when absent or `-`.
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Edgelist)]
    format: Format,
}

#[derive(Args)]
struct PlaneArgs {
    /// Exponent of the ℓp norm.
    #[arg(long, default_value_t = 4.0)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelName::Gnp)]
    model: ModelName,
    /// Edge probability for gnp.
    #[arg(long, default_value_t = 0.5)]
    prob: f64,
    /// Degree for regular.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Number of forward moves for m22.
    #[arg(long, default_value_t = 10)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ModelArgs {
    fn model(&self) -> Model {
        match self.model {
            ModelName::Gnp => Model::Gnp { p: self.prob },
            ModelName::Regular => Model::Regular { k: self.k },
            ModelName::M22 => Model::M22 { steps: self.steps },
        }
    }

    fn describe(&self) -> String {
        match self.model {
            ModelName::Gnp => format!("model: gnp\nprob: {}\n", self.prob),
            ModelName::Regular => format!("model: regular\nk: {}\n", self.k),
            ModelName::M22 => format!("model: m22\nsteps: {}\n", self.steps),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

impl From<Format> for GraphFormat {
    fn from(f: Format) -> GraphFormat {
        match f {
            Format::Graph6 => GraphFormat::Graph6,
            Format::Edgelist => GraphFormat::EdgeList,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelName {
    Gnp,
    Regular,
    M22,
}

/// An input that violates a precondition; exit status 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(e.to_string())
    }
}

fn read_text(file: &Option<PathBuf>) -> Result<String, Failure> {
    match file {
        Some(path) if path.as_os_str() != "-" => {
            std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_graph(input: &GraphInput) -> Result<Graph, Failure> {
    Ok(parse_graph(&read_text(&input.file)?, input.format.into())?)
}

fn plane(args: &PlaneArgs) -> Result<NormedPlane, Failure> {
    Ok(NormedPlane::lp(args.p)?)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Check(input) => Ok(emit_report(&is_globally_rigid_analytic(&read_graph(&input)?))),
        Command::Reduce(input) => {
            let g = read_graph(&input)?;
            let trace = reduce_to_base(&g)?;
            let (script, _) = trace.construction();
            let mut out = String::new();
            for step in &trace.steps {
                let _ = writeln!(out, "# reduce: {}", step.mv);
            }
            let _ = writeln!(out, "# reached: {}", trace.base.name());
            out.push_str(&emit_script(&script));
            Ok(out)
        }
        Command::Build { file, format } => {
            let script = parse_script(&read_text(&file)?)?;
            Ok(emit_graph(&script.replay()?, format.into()))
        }
        Command::Rank { input, plane: args, mode, tol, placement } => {
            let g = read_graph(&input)?;
            let plane = plane(&args)?;
            let placement: Placement = match &placement {
                Some(path) => parse_placement(&read_text(&Some(path.clone()))?)?,
                None => random_regular_placement(&g, args.seed)?,
            };
            if placement.len() != g.n() {
                return Err(Failure(format!("placement has {} points for {} vertices", placement.len(), g.n())));
            }
            let mode = match mode {
                Some(Mode::Exact) => RankMode::Exact,
                Some(Mode::Float) => RankMode::Float { tol },
                None => match RankMode::preferred(&placement, &plane) {
                    RankMode::Float { .. } => RankMode::Float { tol },
                    exact => exact,
                },
            };
            let rank = framework_rank(&g, &placement, &plane, mode)?;
            let target = (2 * g.n()).saturating_sub(plane.trivial_flex_dim());
            let mode_name = match mode {
                RankMode::Exact => "exact".to_string(),
                RankMode::Float { tol } => format!("float (tol {tol:e})"),
            };
            Ok(format!(
                "rank: {rank}\ntarget: {target}\ninf_rigid: {}\np: {}\nmode: {mode_name}\nseed: {}\n",
                rank == target,
                args.p,
                args.seed
            ))
        }
        Command::Certify { input, plane: args } => {
            let g = read_graph(&input)?;
            Ok(emit_report(&certify(&g, &plane(&args)?, args.seed)?))
        }
        Command::Random { model, n, format } => {
            let g = model.model().sample(n, model.seed)?;
            Ok(emit_graph(&g, format.into()))
        }
        Command::Experiment { model, n, samples } => {
            let rows = run_experiment(model.model(), &n, samples, model.seed)?;
            let mut out = model.describe();
            let _ = writeln!(out, "seed: {}\nsamples: {samples}", model.seed);
            let _ = writeln!(out, "n\tglobally_rigid\tfrequency");
            for r in &rows {
                let _ = writeln!(out, "{}\t{}/{}\t{:.4}", r.n, r.globally_rigid, r.samples, r.frequency());
            }
            for r in rows.iter().filter(|r| !r.failures.is_empty()) {
                let seeds: Vec<String> = r.failures.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "not_globally_rigid n={}: {}", r.n, seeds.join(" "));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
