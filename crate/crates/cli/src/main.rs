use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sgincl_core::catalog::{Catalog, CatalogError};
use sgincl_core::classes::registry;
use sgincl_core::lattice::{
    build_matrix, derive_lattice, explore_cover_of_i, probe_metatheorems, prop32_suite,
    render_text, verify_proposition, GeneratorParams, DEFAULT_SEED, DIAGRAM_NODES,
};
use sgincl_core::semigroup::parse_semigroup;
use sgincl_core::{find_violation, parse_system, CanonicalMode};

const DEFAULT_CLASSES: &[&str] = &[
    "{0}", "Z", "L", "R", "B", "RB", "IB", "IL", "IR", "IRB", "GB", "GL", "GR", "GRB", "GRB_l",
    "GRB_r", "I",
];

#[derive(Parser)]
#[command(
    name = "sgincl",
    version,
    about = "Inclusion classes of finite semigroups"
)]
struct Cli {
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Log progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Iso,
    Equiv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Text,
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate semigroups up to an order and write a catalog.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "iso")]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check one semigroup against an inclusion system.
    Check {
        #[arg(long)]
        semigroup: PathBuf,
        #[arg(long)]
        system: String,
    },
    /// Print the membership matrix of a catalog as CSV.
    Classify {
        #[arg(long)]
        catalog: PathBuf,
        /// Comma-separated class names.
        #[arg(long, value_delimiter = ',')]
        classes: Option<Vec<String>>,
    },
    /// Verify the class equalities over a catalog.
    Verify {
        #[arg(long)]
        catalog: PathBuf,
        /// A list such as `1,3,5`, a range `1..18` or `2-4`.
        #[arg(long, default_value = "1..18")]
        props: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Probe the lattice implications on random systems.
    Probe {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Derive the lattice of classes below I.
    Lattice {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Run the non-variety witness checks.
    Prop32 {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Search for classes strictly between I and GRB.
    ExploreCover {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the class registry as JSON.
    Classes,
}

enum Failure {
    Semantic,
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Semantic => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &Path) -> Result<Catalog, Failure> {
    Catalog::load(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn parse_props(spec: &str) -> Result<Vec<u8>, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "invalid --props `{spec}`; expected e.g. 1,3 or 1..18"
        ))
    };
    let num = |s: &str| -> Result<u8, Failure> {
        s.trim()
            .parse::<u8>()
            .ok()
            .filter(|n| (1..=18).contains(n))
            .ok_or_else(bad)
    };
    let mut out = Vec::new();
    for part in spec.split(',') {
        let range = part.split_once("..").or_else(|| part.split_once('-'));
        match range {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Enumerate { order, mode, out } => {
            let mode = match mode {
                Mode::Iso => CanonicalMode::Iso,
                Mode::Equiv => CanonicalMode::IsoOrAntiIso,
            };
            let catalog = Catalog::build(order, mode).map_err(|e| match e {
                CatalogError::OrderTooLarge(_) | CatalogError::ZeroOrder => {
                    Failure::Usage(e.to_string())
                }
                other => Failure::Io(other.to_string()),
            })?;
            catalog
                .save(&out)
                .map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
            for (k, count) in catalog.counts().iter().enumerate() {
                println!("order {}: {count}", k + 1);
            }
            println!("total: {} ({})", catalog.len(), mode.as_str());
            Ok(())
        }
        Command::Check { semigroup, system } => {
            let text = std::fs::read_to_string(&semigroup)
                .map_err(|e| Failure::Io(format!("{}: {e}", semigroup.display())))?;
            let s = parse_semigroup(&text)
                .map_err(|e| Failure::Io(format!("{}: {e}", semigroup.display())))?;
            let system =
                parse_system(&system).map_err(|e| Failure::Usage(format!("--system: {e}")))?;
            match find_violation(&s, &system) {
                None => {
                    println!("satisfied: {system}");
                    Ok(())
                }
                Some(v) => {
                    println!("violated: {v}");
                    Err(Failure::Semantic)
                }
            }
        }
        Command::Classify { catalog, classes } => {
            let catalog = load(&catalog)?;
            let names: Vec<String> =
                classes.unwrap_or_else(|| DEFAULT_CLASSES.iter().map(|s| s.to_string()).collect());
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let matrix =
                build_matrix(&catalog, &refs).map_err(|e| Failure::Usage(e.to_string()))?;
            print!("{}", matrix.to_csv());
            Ok(())
        }
        Command::Verify {
            catalog,
            props,
            format,
        } => {
            let props = parse_props(&props)?;
            let catalog = load(&catalog)?;
            let reports: Vec<_> = props
                .iter()
                .map(|&p| verify_proposition(p, &catalog))
                .collect();
            match format {
                Format::Text => print!("{}", render_text(&reports)),
                Format::Json => println!("{}", to_json(&reports)),
            }
            if reports.iter().all(|r| r.equal) {
                Ok(())
            } else {
                Err(Failure::Semantic)
            }
        }
        Command::Probe {
            catalog,
            trials,
            seed,
            format,
        } => {
            if trials == 0 {
                return Err(Failure::Usage("--trials must be at least 1".into()));
            }
            let catalog = load(&catalog)?;
            let report = probe_metatheorems(&catalog, trials, seed, &GeneratorParams::default());
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", to_json(&report)),
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Semantic)
            }
        }
        Command::Lattice { catalog, emit } => {
            let catalog = load(&catalog)?;
            let matrix =
                build_matrix(&catalog, DIAGRAM_NODES).map_err(|e| Failure::Usage(e.to_string()))?;
            let diagram = derive_lattice(&matrix);
            for w in diagram.warnings() {
                log::warn!("{w}");
            }
            match emit {
                Emit::Text => print!("{}", diagram.to_text()),
                Emit::Dot => print!("{}", diagram.to_dot()),
                Emit::Json => println!("{}", to_json(&diagram)),
            }
            Ok(())
        }
        Command::Prop32 { format } => {
            let report = prop32_suite();
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", to_json(&report)),
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Semantic)
            }
        }
        Command::ExploreCover {
            catalog,
            trials,
            seed,
            format,
        } => {
            let catalog = load(&catalog)?;
            let report = explore_cover_of_i(&catalog, trials, seed);
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", to_json(&report)),
            }
            Ok(())
        }
        Command::Classes => {
            println!("{}", registry().to_json());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.verbose {
            log::LevelFilter::Info
        } else {
            log::LevelFilter::Warn
        })
        .format_timestamp(None)
        .init();

    let result = match cli.jobs {
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(cli.command)),
            Err(e) => Err(Failure::Io(format!("thread pool: {e}"))),
        },
        None => run(cli.command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Io(m) => eprintln!("error: {m}"),
                Failure::Semantic => {}
            }
            ExitCode::from(f.code())
        }
    }
}
