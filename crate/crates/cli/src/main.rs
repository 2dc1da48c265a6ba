//! `duorep`: batch front end for the representation theory of finite
//! regular left duo monoids.

mod commands;
mod error;
mod source;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use duorep::PrimeField;
use serde_json::Value;

use commands::{Complex, Level};
use error::CliError;
use source::Instance;

#[derive(Parser)]
#[command(name = "duorep", version, about = "Representation theory of finite regular left duo monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args)]
struct Options {
    /// Builtin (sigma, sigma_n, hsiao, group_zmod) or a table file path.
    #[arg(long, global = true)]
    monoid: Option<String>,
    /// Ground set size for sigma and hsiao.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Abelian group by invariant factors, e.g. "2" or "2x2".
    #[arg(long, global = true)]
    group: Option<String>,
    /// A prime, or "auto" for the least splitting prime ≥ 3.
    #[arg(long, global = true, default_value = "auto")]
    prime: String,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Level::Fast)]
    level: Level,
    /// JSON output for gen and quiver; every other subcommand always prints JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the multiplication table of a builtin monoid.
    Gen {
        /// Builtin name; overrides --monoid.
        name: Option<String>,
    },
    /// Axiom report: right semicentral, left duo, regular, LRB of groups.
    Axioms,
    /// Support lattice with representatives and covers.
    Lattice,
    /// Supports and coefficients of the η and γ idempotents.
    Idempotents,
    /// Reduced Betti numbers of boundary complexes, or of a poset file.
    Betti {
        /// Poset dump: node count, then one "a b" cover pair per line.
        #[arg(long)]
        poset: Option<PathBuf>,
    },
    /// Ext table by topology, the closed form and the oracle, with agreement.
    Ext {
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Ext-quiver with relations: DOT, or JSON with --json.
    Quiver {
        /// Also write DOT here, with the relations in a .relations.json sidecar.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Degree concentration and dimension count of the Ext algebra.
    Koszul {
        /// Include the violating triples and the nonzero Ext entries.
        #[arg(long)]
        report: bool,
    },
    /// Cellular or order-complex resolution of simple modules.
    Resolve {
        /// Label index or "apex|character"; all labels when omitted.
        #[arg(long)]
        label: Option<String>,
        #[arg(long, value_enum, default_value_t = Complex::Cellular)]
        complex: Complex,
    },
    /// Linear-algebra computations independent of the topology.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Run every agreement check; exit 1 on any mismatch.
    Crosscheck,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Ext table from minimal projective resolutions.
    Ext {
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Minimal projective resolution of simple modules.
    Resolve {
        #[arg(long)]
        label: Option<String>,
        #[arg(long)]
        max_length: Option<usize>,
    },
}

struct Run {
    text: String,
    status: u8,
}

impl Run {
    fn json(value: &Value) -> Self {
        Run {
            text: commands::render(value),
            status: 0,
        }
    }
}

fn instance(opts: &Options) -> Result<Instance, CliError> {
    let name = opts
        .monoid
        .as_deref()
        .ok_or_else(|| CliError::Usage("--monoid is required".into()))?;
    source::load(name, opts.n, opts.group.as_deref())
}

fn with_field(opts: &Options) -> Result<(Instance, PrimeField), CliError> {
    let inst = instance(opts)?;
    let f = source::resolve_prime(&opts.prime, &inst)?;
    Ok((inst, f))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(&path.display().to_string(), e))
}

fn sidecar_path(dot: &Path) -> PathBuf {
    dot.with_extension("relations.json")
}

fn run(cli: &Cli) -> Result<Run, CliError> {
    let opts = &cli.opts;
    Ok(match &cli.command {
        Command::Gen { name } => {
            let name = name.as_deref().or(opts.monoid.as_deref()).ok_or_else(|| {
                CliError::Usage("gen needs a builtin name or --monoid".into())
            })?;
            let inst = source::load(name, opts.n, opts.group.as_deref())?;
            Run {
                text: commands::gen(inst.monoid(), opts.json),
                status: 0,
            }
        }
        Command::Axioms => Run::json(&commands::axioms(&instance(opts)?)),
        Command::Lattice => Run::json(&commands::lattice(&instance(opts)?)?),
        Command::Idempotents => {
            let (inst, f) = with_field(opts)?;
            Run::json(&commands::idempotents(&inst, f, opts.level)?)
        }
        Command::Betti { poset: Some(path) } => {
            let p = match opts.prime.as_str() {
                "auto" => 3,
                s => s
                    .parse()
                    .map_err(|_| CliError::Usage(format!("--prime expects a prime or auto, got {s:?}")))?,
            };
            let text = source::read_text(path)?;
            Run::json(&commands::betti_poset(&text, PrimeField::new(p)?)?)
        }
        Command::Betti { poset: None } => {
            let (inst, f) = with_field(opts)?;
            Run::json(&commands::betti_monoid(&inst, f)?)
        }
        Command::Ext { max_degree } => {
            let (inst, f) = with_field(opts)?;
            Run::json(&commands::ext(&inst, f, *max_degree)?)
        }
        Command::Quiver { dot } => {
            let (inst, f) = with_field(opts)?;
            let q = commands::quiver(&inst, f)?;
            if let Some(path) = dot {
                write_file(path, &q.dot)?;
                let sidecar = commands::relations_sidecar(&q.json);
                write_file(&sidecar_path(path), &commands::render(&sidecar))?;
            }
            if opts.json || dot.is_some() {
                Run::json(&q.json)
            } else {
                Run {
                    text: q.dot,
                    status: 0,
                }
            }
        }
        Command::Koszul { report } => {
            let (inst, f) = with_field(opts)?;
            Run::json(&commands::koszul(&inst, f, *report)?)
        }
        Command::Resolve { label, complex } => {
            let (inst, f) = with_field(opts)?;
            Run::json(&commands::resolve(&inst, f, label.as_deref(), *complex)?)
        }
        Command::Oracle { command } => {
            let (inst, f) = with_field(opts)?;
            match command {
                OracleCommand::Ext { max_degree } => {
                    Run::json(&commands::oracle_ext(&inst, f, *max_degree)?)
                }
                OracleCommand::Resolve { label, max_length } => Run::json(
                    &commands::oracle_resolve(&inst, f, label.as_deref(), *max_length)?,
                ),
            }
        }
        Command::Crosscheck => {
            let (inst, f) = with_field(opts)?;
            let out = commands::crosscheck(&inst, f, opts.level)?;
            Run {
                text: commands::render(&out.json),
                status: if out.ok { 0 } else { 1 },
            }
        }
    })
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("DUOREP_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("DUOREP_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(&cli)).and_then(|r| {
        match &cli.opts.out {
            Some(path) => write_file(path, &r.text)?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(r.text.as_bytes())
                    .and_then(|()| stdout.flush())
                    .map_err(|e| CliError::io("stdout", e))?;
            }
        }
        Ok(r.status)
    });
    match result {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprint!("{}", commands::render(&e.to_json()));
            ExitCode::from(2)
        }
    }
}
