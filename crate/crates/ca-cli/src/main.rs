//! `ca`: analyze one-dimensional cellular automata from the command line.
//!
//! Exit status: 0 = ran (including Unknown or budget outcomes), 1 = input
//! error, 2 = internal invariant violation.

mod analyses;
mod record;
mod render;
mod rules;
mod simulate;
mod survey;
mod verify_cmd;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};

use analyses::AnalysisOptions;
use rules::LoadedRule;
use simulate::RenderKind;

#[derive(Parser)]
#[command(
    name = "ca",
    version,
    about = "Exact and statistical analysis of one-dimensional cellular automata"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct RuleArgs {
    /// Rule file (alphabet/neighborhood/table or eca sections).
    #[arg(long, value_name = "FILE")]
    rule: Option<PathBuf>,
    /// Elementary rule code 0..=255.
    #[arg(long, value_name = "CODE")]
    eca: Option<u16>,
}

impl RuleArgs {
    fn load(&self) -> Result<LoadedRule> {
        match (&self.rule, self.eca) {
            (Some(path), None) => rules::load_file(path),
            (None, Some(code)) => rules::load_eca(code),
            _ => bail!("give exactly one of --rule FILE or --eca CODE"),
        }
    }
}

#[derive(Args)]
struct BoundsArgs {
    /// Seed for all randomized analyses.
    #[arg(long, env = "CA_SEED", default_value_t = 0)]
    seed: u64,
    /// Longest blocking word enumerated.
    #[arg(long, default_value_t = 4)]
    max_blocking_len: usize,
    /// Monte-Carlo samples per ratio point.
    #[arg(long, default_value_t = 2000)]
    gilman_samples: u64,
    /// Monte-Carlo trace horizon.
    #[arg(long, default_value_t = 128)]
    gilman_horizon: u64,
    /// Longest gap words tried by the periodic-point search.
    #[arg(long, default_value_t = 2)]
    stp_max_ingredient: usize,
    /// Canonical center length that aborts iteration.
    #[arg(long, default_value_t = 4096)]
    max_center: usize,
}

impl BoundsArgs {
    fn options(&self, only: Option<&str>) -> Result<AnalysisOptions> {
        let only = match only {
            None => None,
            Some(list) => {
                let known = [
                    "surjectivity",
                    "injectivity",
                    "blocking",
                    "kurka",
                    "gilman",
                    "stp",
                    "factor",
                ];
                let set: BTreeSet<String> =
                    list.split(',').map(|s| s.trim().to_string()).collect();
                for name in &set {
                    if !known.contains(&name.as_str()) {
                        bail!("unknown analysis {name:?}; known: {}", known.join(", "));
                    }
                }
                Some(set)
            }
        };
        Ok(AnalysisOptions {
            seed: self.seed,
            only,
            max_blocking_len: self.max_blocking_len,
            gilman_samples: self.gilman_samples,
            gilman_horizon: self.gilman_horizon,
            stp_max_ingredient: self.stp_max_ingredient,
            max_center: self.max_center,
        })
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Render a space-time diagram from an initial configuration literal.
    Simulate {
        #[command(flatten)]
        rule: RuleArgs,
        /// Initial configuration, e.g. "^(wr000w)^" or "^(0)^ 1 ^(0)^".
        #[arg(long)]
        init: String,
        /// Number of steps; the diagram has steps+1 rows.
        #[arg(long)]
        steps: u64,
        /// Cell window "lo..hi" (defaults to one period or the center).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, value_enum, default_value = "ascii")]
        render: RenderKind,
        /// Output path (required for pixmap; stdout otherwise).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 4096)]
        max_center: usize,
    },
    /// Run analyses for one rule and print the record as JSON.
    Analyze {
        #[command(flatten)]
        rule: RuleArgs,
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Comma-separated subset of analyses to run.
        #[arg(long)]
        only: Option<String>,
    },
    /// Analyze a rule set into a line-delimited record file (resumable).
    Survey {
        /// Rule sets: "eca:all", "eca:30,90", rule files or directories.
        #[arg(required = true)]
        rulesets: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; output bytes do not depend on this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Comma-separated subset of analyses to run.
        #[arg(long)]
        only: Option<String>,
    },
    /// Re-check every certificate in a record file against the rule.
    Verify {
        #[command(flatten)]
        rule: RuleArgs,
        /// Record file: output of analyze (one line) or survey (many).
        #[arg(long)]
        record: PathBuf,
    },
}

fn parse_window(text: &str) -> Result<(i64, i64)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| anyhow::anyhow!("--window must look like lo..hi"))?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Simulate {
            rule,
            init,
            steps,
            window,
            render,
            out,
            max_center,
        } => {
            let loaded = rule.load()?;
            let window = window.as_deref().map(parse_window).transpose()?;
            simulate::run(
                &loaded.ca,
                &simulate::SimulateArgs {
                    init,
                    steps,
                    window,
                    render,
                    out,
                    max_center,
                },
            )
        }
        Cmd::Analyze { rule, bounds, only } => {
            let loaded = rule.load()?;
            let opts = bounds.options(only.as_deref())?;
            let record = analyses::analyze_rule(&loaded.ca, &loaded.id, &opts);
            println!("{}", serde_json::to_string(&record)?);
            Ok(0)
        }
        Cmd::Survey {
            rulesets,
            out,
            jobs,
            bounds,
            only,
        } => {
            let opts = bounds.options(only.as_deref())?;
            survey::run(&rulesets, &out, jobs, &opts)
        }
        Cmd::Verify { rule, record } => {
            let loaded = rule.load()?;
            verify_cmd::run(&loaded.ca, &record)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let run = std::panic::catch_unwind(move || dispatch(cli));
    match run {
        Ok(Ok(code)) => ExitCode::from(code as u8),
        Ok(Err(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
        Err(_) => {
            eprintln!("error: internal invariant violation");
            ExitCode::from(2)
        }
    }
}
