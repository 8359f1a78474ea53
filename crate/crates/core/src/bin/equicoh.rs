use std::io::{Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use equicoh::io::{
    parse_roots, parse_slices, run_compute, run_example, run_file, validate_input, ExampleParams, Format, Kind, Options,
    ResultReport, TaskError, TaskFile, EXIT_MATH,
};

#[derive(Parser)]
#[command(name = "equicoh", version, about = "Exact Lie algebra, equivariant and Poisson cohomology")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for rank computations (0 = all cores).
    #[arg(long, global = true, value_name = "K")]
    jobs: Option<usize>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Number of spectral sequence pages to report.
    #[arg(long, global = true, value_name = "R")]
    pages: Option<usize>,
    /// Symmetric-degree truncation M.
    #[arg(long = "sym-cap", global = true, value_name = "M")]
    sym_cap: Option<usize>,
    /// Polynomial coefficient degree bound N.
    #[arg(long = "max-degree", global = true, value_name = "N")]
    max_degree: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a task file.
    Compute { file: String },
    /// Run a named example.
    Example {
        name: String,
        #[arg(long)]
        roots: Option<String>,
        #[arg(long)]
        fprime: Option<String>,
        /// `a..b`, `a..=b` or a comma list.
        #[arg(long)]
        slices: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Schema and cheap mathematical gates, no cohomology.
    Validate { file: String },
    /// Axiom report for a G-differential complex.
    GdiffCheck { file: String },
    /// Poisson cohomology of a polynomial bivector.
    PoissonCohomology {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        slice: Option<i64>,
    },
    /// Momentum-map spectral sequence.
    MomentumSs {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        slice: Option<i64>,
    },
}

fn read_input(path: &str) -> Result<String, TaskError> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut s)).map(|_| ())
    };
    res.map_err(|e| TaskError::Io(format!("{path}: {e}")))?;
    Ok(s)
}

/// The report, whether every gate passed, and a format requested by the task file.
fn run(cli: &Cli) -> Result<(ResultReport, bool, Option<Format>), TaskError> {
    let g = &cli.global;
    let mut opts = Options {
        format: g.format,
        pages: g.pages,
        sym_cap: g.sym_cap,
        max_degree: g.max_degree,
        slices: None,
    };
    let file_kind = |file: &str, kind: Kind, opts: &Options| run_file(&read_input(file)?, Some(kind), opts);
    let report = match &cli.command {
        Command::Compute { file } => {
            let task = TaskFile::parse(&read_input(file)?)?;
            let r = run_compute(&task, &opts)?;
            return Ok((r, true, task.options.format));
        }
        Command::Example { name, roots, fprime, slices, rank, algebra } => {
            let bad = |flag: &str, m: String| TaskError::schema(format!("/params/{flag}"), m);
            let params = ExampleParams {
                algebra: algebra.clone(),
                roots: roots.as_deref().map(parse_roots).transpose().map_err(|m| bad("roots", m))?,
                fprime: fprime.clone(),
                slices: slices.as_deref().map(parse_slices).transpose().map_err(|m| bad("slices", m))?,
                rank: *rank,
                sym_cap: g.sym_cap,
                max_degree: g.max_degree,
                pages: g.pages,
            };
            run_example(name, &params)?
        }
        Command::Validate { file } => {
            let r = validate_input(&read_input(file)?)?;
            let ok = r.passed();
            return Ok((r, ok, None));
        }
        Command::GdiffCheck { file } => file_kind(file, Kind::GDiffCheck, &opts)?,
        Command::PoissonCohomology { file, slice } => {
            opts.slices = slice.map(|s| vec![s]);
            file_kind(file, Kind::PoissonCohomology, &opts)?
        }
        Command::MomentumSs { file, slice } => {
            opts.slices = slice.map(|s| vec![s]);
            file_kind(file, Kind::MomentumSs, &opts)?
        }
    };
    Ok((report, true, None))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("equicoh: {e}");
        }
    }
    let start = Instant::now();
    let mut out = std::io::stdout().lock();
    match run(&cli) {
        Ok((mut report, ok, file_format)) => {
            let format = cli.global.format.or(file_format).unwrap_or_default();
            if cli.global.timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            let _ = out.write_all(report.render(format).as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("equicoh: validation gates failed");
                ExitCode::from(EXIT_MATH as u8)
            }
        }
        Err(e) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&e.to_json()).expect("error serializes"));
            eprintln!("equicoh: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
