//! The `simulate` verb: render a space-time diagram.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use ca_core::config::{parse_config, Configuration};
use ca_core::dynamics::{trace, Budget, Window};
use ca_core::rule::CellularAutomaton;

use crate::render;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RenderKind {
    Ascii,
    Pixmap,
}

pub struct SimulateArgs {
    pub init: String,
    pub steps: u64,
    pub window: Option<(i64, i64)>,
    pub render: RenderKind,
    pub out: Option<PathBuf>,
    pub max_center: usize,
}

fn default_window(ca: &CellularAutomaton, cfg: &Configuration) -> Window {
    let pad = 2 * ca.radius() + 1;
    match cfg {
        Configuration::Periodic(p) => Window::new(0, p.period_len() as i64 - 1),
        Configuration::TwoSided(t) => {
            let lo = t.anchor() - pad;
            let hi = t.anchor() + t.center_len().max(1) as i64 - 1 + pad;
            Window::new(lo, hi)
        }
    }
}

pub fn run(ca: &CellularAutomaton, args: &SimulateArgs) -> Result<i32> {
    let alphabet = ca.alphabet().clone();
    let cfg = parse_config(&alphabet, &args.init)
        .map_err(|e| anyhow::anyhow!("bad --init literal: {e}"))?;
    let window = match args.window {
        Some((lo, hi)) => {
            if lo > hi {
                bail!("empty --window {lo}..{hi}");
            }
            Window::new(lo, hi)
        }
        None => default_window(ca, &cfg),
    };
    let budget = Budget {
        max_steps: args.steps + 1,
        max_center: args.max_center,
    };
    let rows = match trace(ca, &cfg, window, args.steps, budget) {
        Ok(t) => t.rows,
        Err(b) => {
            eprintln!("budget exceeded: {b}");
            return Ok(0);
        }
    };
    match args.render {
        RenderKind::Ascii => {
            let text = render::ascii(&alphabet, &rows);
            match &args.out {
                Some(path) => fs::write(path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
        }
        RenderKind::Pixmap => {
            let Some(path) = &args.out else {
                bail!("--render pixmap requires --out FILE");
            };
            fs::write(path, render::ppm(&rows))
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(0)
}
