use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qweight::laurent::engine::ExpandOptions;
use qweight::sym::Partition;
use qweight::verify::{
    emit_report, exit_code, run_suite, statements, Cache, Context, Grid, ReportFormat, SuiteSpec, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "qweight",
    version,
    about = "Exact verification of q-weight constant-term identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the grid suite of one statement, or `all`.
    Verify(Box<VerifyArgs>),
    /// List statement ids.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Args)]
struct VerifyArgs {
    /// Statement id, e.g. conj-2.1, prop-5.1, A1; `all` runs every suite.
    id: String,
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    n0: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    n1: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    n2: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    lam: Option<Vec<usize>>,
    #[arg(short, long, value_delimiter = ',')]
    a: Option<Vec<usize>>,
    #[arg(short, long, value_delimiter = ',')]
    b: Option<Vec<usize>>,
    /// Partition sizes, or the integer index of suites that take one.
    #[arg(short, long, value_delimiter = ',')]
    k: Option<Vec<usize>>,
    /// Operator orders.
    #[arg(short, long, value_delimiter = ',')]
    r: Option<Vec<usize>>,
    /// A partition such as `2,1,1` or `2 1^2`; repeat for several.
    #[arg(long)]
    kappa: Vec<Partition>,
    #[arg(long, value_enum, default_value = "human")]
    report: Format,
    #[arg(long, default_value = ".qweight-cache")]
    cache_dir: PathBuf,
    #[arg(long)]
    no_cache: bool,
    /// Eliminate one variable of degree-zero products before expanding.
    #[arg(long)]
    opt_dehomogenize: bool,
    /// Seed for the spot-check evaluation points.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

fn verify(args: VerifyArgs) -> Result<Vec<VerificationReport>, qweight::Error> {
    let cache = if args.no_cache {
        None
    } else {
        Some(Cache::open(&args.cache_dir)?)
    };
    let mut ctx = Context::new(
        ExpandOptions {
            dehomogenize: args.opt_dehomogenize,
        },
        cache,
    );
    ctx.jobs = args.jobs;
    let grid = Grid {
        p: args.p,
        n0: args.n0,
        n1: args.n1,
        n2: args.n2,
        lam: args.lam,
        a: args.a,
        b: args.b,
        k: args.k,
        r: args.r,
        kappa: (!args.kappa.is_empty()).then_some(args.kappa),
    };
    let ids: Vec<String> = if args.id == "all" {
        statements().iter().map(|s| s.id.to_string()).collect()
    } else {
        vec![args.id]
    };
    let mut out = Vec::new();
    for id in ids {
        let spec = SuiteSpec {
            id,
            grid: grid.clone(),
            seed: args.seed,
        };
        out.extend(run_suite(&spec, &ctx)?);
    }
    Ok(out)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for s in statements() {
                println!(
                    "{:<10} {:<11} {}",
                    s.id,
                    format!("{:?}", s.kind).to_lowercase(),
                    s.title
                );
            }
            ExitCode::SUCCESS
        }
        Command::Verify(args) => {
            let format = match args.report {
                Format::Human => ReportFormat::Human,
                Format::Structured => ReportFormat::Structured,
            };
            match verify(*args) {
                Ok(reports) => {
                    print!("{}", emit_report(&reports, format));
                    ExitCode::from(exit_code(&reports) as u8)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(3)
                }
            }
        }
    }
}
