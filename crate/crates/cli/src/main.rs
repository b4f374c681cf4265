use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use springer_cli::cache::{self, Cache};
use springer_cli::checks::standard_registry;
use springer_cli::config::{Config, Format};
use springer_cli::registry::{CheckError, Registry};
use springer_cli::report::{CheckReport, Params, Status, SuiteReport};

/// Exact verification of quantum connections, Toda limits and shift operators.
#[derive(Parser)]
#[command(name = "springer", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Cartan type such as `B2`, or a family letter combined with --rank.
    #[arg(long = "type", global = true)]
    cartan_type: Option<String>,
    /// Rank; alone it restricts the default types.
    #[arg(long, global = true)]
    rank: Option<usize>,
    /// Height in q, or polynomial degree, depending on the check.
    #[arg(long, global = true, allow_negative_numbers = true)]
    order: Option<i64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// TOML file with defaults for these options.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Record wall-clock time; output is then no longer reproducible.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ChevalleyMode {
    Flag,
    Cotangent,
}

#[derive(Subcommand)]
enum Command {
    /// Root data, R+' and the reflection length bound.
    Roots {
        /// Cartan type; overrides --type.
        #[arg(value_name = "TYPE")]
        kind: Option<String>,
    },
    /// Relations of H_t and the nil-Hecke algebra, and reduced-word independence.
    CheckHecke,
    /// Flatness of the quantum connection.
    Flatness,
    /// Weyl-group equivariance of the quantum connection.
    Equivariance,
    /// Quantum Chevalley operators.
    Chevalley {
        #[arg(long, value_enum, default_value = "flag")]
        mode: ChevalleyMode,
        /// Note that Slodowy slices share the cotangent formula.
        #[arg(long)]
        slodowy: bool,
    },
    /// Toda limit of the quantum connection.
    LimitToda,
    /// Toda limit of the Calogero-Moser Hamiltonian.
    LimitCm,
    /// Quadratic Toda Hamiltonian against the Casimir.
    CasimirToda,
    /// Rank-one spectral curve.
    CmSpectral,
    /// Shift operators.
    Shift {
        /// Cocharacter `l1,...,lr;t` in simple-coroot coordinates.
        #[arg(long)]
        cochar: Option<String>,
        /// Delta convention: printed, shifted or reciprocal.
        #[arg(long)]
        convention: Option<String>,
        /// Height of the window used for rational reconstruction.
        #[arg(long)]
        window: Option<i64>,
    },
    /// Run a registered check by name.
    Run { name: String },
    /// Run every registered check, or those named.
    Suite { names: Vec<String> },
    /// List registered checks.
    List,
}

#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Config(#[from] springer_cli::config::ConfigError),
}

struct Settings {
    format: Format,
    cache: Option<Cache>,
    timings: bool,
}

fn base_params(g: &Global, config: &Config) -> Result<Params, CheckError> {
    let cartan_type = match (&g.cartan_type, g.rank) {
        (Some(t), Some(r)) if t.chars().all(|c| c.is_ascii_alphabetic()) => Some(format!("{t}{r}")),
        (Some(t), Some(r)) => {
            let kind = springer_cli::registry::parse_type(t)?;
            if kind.rank != r {
                return Err(CheckError::Usage(format!("--type {t} conflicts with --rank {r}")));
            }
            Some(t.clone())
        }
        (t, _) => t.clone(),
    };
    let rank = if cartan_type.is_some() { None } else { g.rank };
    Ok(Params {
        cartan_type,
        rank,
        order: g.order.or(config.order),
        flags: Default::default(),
    })
}

fn settings(g: &Global, config: &Config) -> Settings {
    let no_cache = g.no_cache || config.no_cache.unwrap_or(false);
    let cache = if no_cache {
        None
    } else {
        let dir = g.cache_dir.clone().or(config.cache_dir.clone()).map(Ok).unwrap_or_else(cache::default_dir);
        match dir.and_then(Cache::open) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("warning: cache disabled: {e}");
                None
            }
        }
    };
    Settings {
        format: g.format.or(config.format).unwrap_or(Format::Text),
        cache,
        timings: g.timings || config.timings.unwrap_or(false),
    }
}

fn run_one(reg: &Registry, s: &Settings, name: &str, params: &Params) -> Result<CheckReport, CheckError> {
    if !s.timings {
        if let Some(hit) = s.cache.as_ref().and_then(|c| c.get(name, params)) {
            return Ok(hit);
        }
    }
    let report = reg.run(name, params, s.timings)?;
    if let Some(c) = &s.cache {
        if let Err(e) = c.put(&report) {
            eprintln!("warning: {e}");
        }
    }
    Ok(report)
}

fn jobs(reg: &Registry, command: Command, base: Params) -> Result<Option<Vec<(String, Params)>>, CheckError> {
    let one = |name: &str, p: Params| Ok(Some(vec![(name.to_string(), p)]));
    match command {
        Command::Roots { kind } => {
            let mut p = base;
            if kind.is_some() {
                p.cartan_type = kind;
                p.rank = None;
            }
            one("roots", p)
        }
        Command::CheckHecke => Ok(Some(vec![("hecke-relations".into(), base.clone()), ("nil-words".into(), base)])),
        Command::Flatness => one("flatness", base),
        Command::Equivariance => one("equivariance", base),
        Command::Chevalley { mode: ChevalleyMode::Flag, slodowy } => {
            if slodowy {
                return Err(CheckError::Usage("--slodowy applies to --mode cotangent".into()));
            }
            one("chevalley-flag", base)
        }
        Command::Chevalley { mode: ChevalleyMode::Cotangent, slodowy } => {
            one("chevalley-cotangent", if slodowy { base.with_flag("slodowy", "true") } else { base })
        }
        Command::LimitToda => one("limit-toda", base),
        Command::LimitCm => one("limit-cm", base),
        Command::CasimirToda => one("casimir-toda", base),
        Command::CmSpectral => one("cm-spectral", base),
        Command::Shift { cochar, convention, window } => {
            let mut p = base;
            for (k, v) in [("cochar", cochar), ("convention", convention), ("window", window.map(|w| w.to_string()))] {
                if let Some(v) = v {
                    p = p.with_flag(k, v);
                }
            }
            one("shift", p)
        }
        Command::Run { name } => one(&name, base),
        Command::Suite { names } => {
            let names: Vec<String> = if names.is_empty() { reg.names().map(String::from).collect() } else { names };
            Ok(Some(names.into_iter().map(|n| (n, base.clone())).collect()))
        }
        Command::List => Ok(None),
    }
}

fn app() -> Result<ExitCode, AppError> {
    let cli = Cli::parse();
    let config = match &cli.global.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let base = base_params(&cli.global, &config)?;
    let settings = settings(&cli.global, &config);
    let reg = standard_registry();
    let is_suite = matches!(cli.command, Command::Suite { .. } | Command::CheckHecke);
    let Some(jobs) = jobs(&reg, cli.command, base)? else {
        for check in reg.iter() {
            println!("{:<20} {}", check.name(), check.about());
        }
        return Ok(ExitCode::SUCCESS);
    };
    let reports = jobs
        .iter()
        .map(|(name, p)| run_one(&reg, &settings, name, p))
        .collect::<Result<Vec<_>, _>>()?;
    let suite = SuiteReport::new(reports);
    let out = match (settings.format, is_suite) {
        (Format::Json, true) => suite.to_json(),
        (Format::Json, false) => {
            let mut s = serde_json::to_string_pretty(&suite.reports[0]).expect("reports serialize");
            s.push('\n');
            s
        }
        (Format::Text, _) => suite.to_text(),
    };
    print!("{out}");
    Ok(if suite.status == Status::Fail { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    app().unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
