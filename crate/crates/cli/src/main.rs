mod commands;
mod report;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use report::Report;
use slemma_kit::acceptance::{self, CriterionReport};
use slemma_kit::certify::SamplingConfig;
use slemma_kit::par::ExecMode;
use slemma_kit::s4solve::S4Config;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

/// Exact S-lemma certificates, quartic multipliers, quadratic-module
/// stability checks and counterexample verification.
///
/// Exit status: 0 proved, 2 disproved, 3 unknown, 1 usage or internal error.
#[derive(Parser)]
#[command(name = "slemma-kit", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for every sampling step.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of samples for randomized searches.
    #[arg(long)]
    budget: Option<usize>,
    /// Also write the JSON report to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run loops on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn mode(&self) -> ExecMode {
        if self.sequential {
            ExecMode::Sequential
        } else {
            ExecMode::Parallel
        }
    }

    fn sampling(&self) -> SamplingConfig {
        let cfg = SamplingConfig::with_seed(self.seed).with_mode(self.mode());
        match self.budget {
            Some(b) => cfg.with_budget(b),
            None => cfg,
        }
    }
}

#[derive(Args)]
struct Pair {
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    #[arg(long, allow_hyphen_values = true)]
    g: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Scalar multiplier t >= 0 with f - t*g >= 0 for quadratics.
    Slemma(SlemmaCmd),
    /// Quadratic multiplier for a quartic f and quadratic g in at most two variables.
    S4 {
        #[command(flatten)]
        pair: Pair,
        /// Point with g > 0, e.g. `1,0`; searched for when absent.
        #[arg(long)]
        slater: Option<String>,
        /// Re-verify a certificate (or a full report) instead of solving.
        #[arg(long)]
        verify_only: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Stability of quadratic modules under gradings.
    Stability {
        #[command(subcommand)]
        cmd: StabilityCmd,
    },
    /// The counterexample catalog and its exact checks.
    Counter {
        #[command(subcommand)]
        cmd: CounterCmd,
    },
    /// Search for a point with g >= 0 > f.
    CheckInclusion {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        common: Common,
    },
    /// Run the bundled acceptance suite and print a pass/fail table.
    Acceptance {
        /// Run only criteria whose number or title contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = acceptance::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct SlemmaCmd {
    #[command(subcommand)]
    action: Option<SlemmaAction>,
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long)]
    slater: Option<String>,
    /// Treat f and g as general quadratics even when both are forms.
    #[arg(long)]
    affine: bool,
    #[arg(long)]
    verify_only: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum SlemmaAction {
    /// Show that no constant t >= 0 makes f - t*g nonnegative.
    NoConstantMultiplier {
        #[command(flatten)]
        pair: Pair,
        /// Values of t to instantiate the argument for, e.g. `1,1/100`.
        #[arg(long)]
        t: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum StabilityCmd {
    /// Classify T0(q) for a quadratic form q.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[command(flatten)]
        common: Common,
    },
    /// Look for a point where every z-leading form is positive.
    #[command(alias = "density")]
    Dense {
        /// Generators, comma separated or by repeating the flag.
        #[arg(
            long = "gens",
            alias = "gen",
            required = true,
            allow_hyphen_values = true,
            value_delimiter = ','
        )]
        gens: Vec<String>,
        #[arg(long)]
        z: String,
        #[command(flatten)]
        common: Common,
    },
    /// Sign-flip witness that no nonnegative t makes p - t*q nonnegative.
    #[command(alias = "flip")]
    NoMultiplier {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        z: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum CounterCmd {
    /// List the catalog.
    List {
        #[command(flatten)]
        common: Common,
    },
    /// Run the exact check for a catalog entry, e.g. `nongeom` or
    /// `ternary-perturbed:1/64`. Plain `ternary-perturbed` scans epsilon.
    Verify {
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Iterated blow-ups of the two-variable pair.
    Tower {
        #[arg(long, default_value_t = 5)]
        levels: u32,
        #[command(flatten)]
        common: Common,
    },
    /// The tower pair meant for degree d.
    Blonk {
        #[arg(long)]
        degree: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Refute f - t*g >= 0 for the ternary pair and a given even-degree t.
    EvenDegree {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[command(flatten)]
        common: Common,
    },
}

fn emit(report: Report, json: Option<&PathBuf>, seed: u64, start: Instant) -> Result<i32> {
    let report = Report {
        seed,
        timing_ms: start.elapsed().as_millis() as u64,
        ..report
    };
    let text = serde_json::to_string_pretty(&report)?;
    print_out(&text)?;
    if let Some(path) = json {
        std::fs::write(path, format!("{text}\n"))?;
    }
    Ok(report.exit_code())
}

/// Writes a line to stdout; a closed pipe is not an error.
fn print_out(text: &str) -> std::io::Result<()> {
    use std::io::Write;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => r,
    }
}

fn run_acceptance(filter: Option<&str>, seed: u64, json: Option<&PathBuf>) -> Result<i32> {
    let wanted = |id: u8| match filter {
        None => true,
        Some(f) => {
            let f = f.to_lowercase();
            id.to_string() == f
                || acceptance::TITLES[id as usize - 1]
                    .to_lowercase()
                    .contains(&f)
        }
    };
    let reports: Vec<CriterionReport> = (1..=10u8)
        .filter(|&id| wanted(id))
        .filter_map(|id| acceptance::run(id, seed))
        .collect();
    if reports.is_empty() {
        anyhow::bail!("no criterion matches {:?}", filter.unwrap_or(""));
    }
    for r in &reports {
        print_out(&r.to_string())?;
        for c in r.failed_checks() {
            print_out(&format!("       failed: {}: {}", c.name, c.detail))?;
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    print_out(&format!("{passed}/{} criteria passed", reports.len()))?;
    if let Some(path) = json {
        std::fs::write(path, serde_json::to_string_pretty(&reports)? + "\n")?;
    }
    Ok(if passed == reports.len() { 0 } else { 2 })
}

fn dispatch(cmd: Cmd) -> Result<i32> {
    let start = Instant::now();
    let (report, common) = match cmd {
        Cmd::Acceptance { filter, seed, json } => {
            return run_acceptance(filter.as_deref(), seed, json.as_ref())
        }
        Cmd::Slemma(s) => match s.action {
            Some(SlemmaAction::NoConstantMultiplier { pair, t, common }) => (
                commands::no_constant(&pair.f, &pair.g, t.as_deref())?,
                common,
            ),
            None => {
                let (Some(f), Some(g)) = (s.f, s.g) else {
                    anyhow::bail!("slemma needs --f and --g");
                };
                let r = commands::slemma(
                    &f,
                    &g,
                    s.affine,
                    s.slater.as_deref(),
                    s.verify_only.as_deref(),
                    &s.common.sampling(),
                )?;
                (r, s.common)
            }
        },
        Cmd::S4 {
            pair,
            slater,
            verify_only,
            common,
        } => {
            let cfg = S4Config {
                sampling: common.sampling(),
                ..Default::default()
            };
            (
                commands::s4_cmd(
                    &pair.f,
                    &pair.g,
                    slater.as_deref(),
                    verify_only.as_deref(),
                    &cfg,
                )?,
                common,
            )
        }
        Cmd::CheckInclusion { pair, common } => (
            commands::check_inclusion(&pair.f, &pair.g, &common.sampling())?,
            common,
        ),
        Cmd::Stability { cmd } => match cmd {
            StabilityCmd::Classify { q, common } => (commands::stability_classify(&q)?, common),
            StabilityCmd::Dense { gens, z, common } => {
                let budget = common.budget.unwrap_or(2000);
                (
                    commands::stability_density(&gens, &z, budget, common.mode())?,
                    common,
                )
            }
            StabilityCmd::NoMultiplier { q, p, z, common } => (
                commands::stability_flip(&q, &p, z.as_deref(), common.mode())?,
                common,
            ),
        },
        Cmd::Counter { cmd } => match cmd {
            CounterCmd::List { common } => (commands::counter_list(), common),
            CounterCmd::Verify { name, common } => {
                let cfg = commands::scan_config(common.sampling());
                (commands::counter_verify(&name, &cfg)?, common)
            }
            CounterCmd::Tower { levels, common } => (commands::counter_tower(levels), common),
            CounterCmd::Blonk { degree, common } => (commands::counter_blonk(degree)?, common),
            CounterCmd::EvenDegree { t, common } => (commands::counter_even_degree(&t)?, common),
        },
    };
    emit(report, common.json.as_ref(), common.seed, start)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
