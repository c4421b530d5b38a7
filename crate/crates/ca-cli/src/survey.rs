//! The `survey` verb: batch analysis over a rule set into a line-delimited
//! record file. Deterministic content for a fixed seed regardless of the
//! worker count; resumable by rule identity.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::{bail, Context, Result};
use ca_core::rule::CellularAutomaton;

use crate::analyses::{analyze_rule, AnalysisOptions};
use crate::rules::{load_eca, load_file};

/// One resolved entry: a loadable rule, or the load error to report in
/// that rule's record slot.
pub type Resolved = (String, Result<CellularAutomaton, String>);

/// Expands rule-set specs in argument order: `eca:all`, `eca:N[,N...]`, a
/// rule-file path, or a directory of `*.rule` files (sorted by name).
/// Malformed rule files resolve to an error entry (reported per-record)
/// rather than aborting the survey; unusable specs are input errors.
pub fn resolve_rulesets(specs: &[String]) -> Result<Vec<Resolved>> {
    let mut out: Vec<Resolved> = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for spec in specs {
        if let Some(rest) = spec.strip_prefix("eca:") {
            if rest == "all" {
                for code in 0..=255u16 {
                    let r = load_eca(code)?;
                    push(&mut out, &mut seen, r.id, Ok(r.ca));
                }
            } else {
                for tok in rest.split(',') {
                    let code: u16 = tok
                        .trim()
                        .parse()
                        .with_context(|| format!("bad elementary code {tok:?}"))?;
                    let r = load_eca(code)?;
                    push(&mut out, &mut seen, r.id, Ok(r.ca));
                }
            }
            continue;
        }
        let path = Path::new(spec);
        if path.is_dir() {
            let mut files: Vec<PathBuf> = fs::read_dir(path)
                .with_context(|| format!("reading directory {spec}"))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "rule"))
                .collect();
            files.sort();
            if files.is_empty() {
                bail!("no .rule files in directory {spec}");
            }
            for f in files {
                push_file(&mut out, &mut seen, &f);
            }
        } else if path.is_file() {
            push_file(&mut out, &mut seen, path);
        } else {
            bail!("rule set spec {spec:?} is neither eca:... nor an existing path");
        }
    }
    Ok(out)
}

fn push(
    out: &mut Vec<Resolved>,
    seen: &mut BTreeSet<String>,
    id: String,
    ca: Result<CellularAutomaton, String>,
) {
    if seen.insert(id.clone()) {
        out.push((id, ca));
    }
}

fn push_file(out: &mut Vec<Resolved>, seen: &mut BTreeSet<String>, path: &Path) {
    match load_file(path) {
        Ok(r) => push(out, seen, r.id, Ok(r.ca)),
        Err(e) => {
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "rule".into());
            let hash = fs::read(path).map(|b| crate::rules::fnv64(&b)).unwrap_or(0);
            push(
                out,
                seen,
                format!("file:{stem}:{hash:016x}"),
                Err(format!("{e:#}")),
            );
        }
    }
}

fn existing_ids(path: &Path) -> Result<BTreeSet<String>> {
    let mut ids = BTreeSet::new();
    if !path.exists() {
        return Ok(ids);
    }
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading existing output {}", path.display()))?;
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v: serde_json::Value = serde_json::from_str(line)
            .with_context(|| format!("{}:{} is not a record", path.display(), lineno + 1))?;
        if let Some(id) = v.get("id").and_then(|x| x.as_str()) {
            ids.insert(id.to_string());
        }
    }
    Ok(ids)
}

pub fn run(
    specs: &[String],
    out: &Path,
    jobs: usize,
    opts: &AnalysisOptions,
) -> Result<i32> {
    let all = resolve_rulesets(specs)?;
    let done = existing_ids(out)?;
    let pending: Vec<&Resolved> = all.iter().filter(|(id, _)| !done.contains(id)).collect();
    eprintln!(
        "survey: {} rules, {} already present, {} to run",
        all.len(),
        done.len(),
        pending.len()
    );

    let jobs = jobs.max(1).min(pending.len().max(1));
    let lines: Mutex<Vec<Option<String>>> = Mutex::new(vec![None; pending.len()]);
    let next = AtomicUsize::new(0);
    let started = std::time::Instant::now();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= pending.len() {
                    break;
                }
                let (id, ca) = pending[i];
                let line = match ca {
                    Ok(ca) => {
                        let record = analyze_rule(ca, id, opts);
                        serde_json::to_string(&record).expect("record serializes")
                    }
                    Err(msg) => serde_json::to_string(&serde_json::json!({
                        "id": id,
                        "error": msg,
                    }))
                    .expect("error record serializes"),
                };
                lines.lock().unwrap()[i] = Some(line);
            });
        }
    });
    eprintln!("survey: analyses finished in {:.1?}", started.elapsed());

    let mut file = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(out)
        .with_context(|| format!("opening {}", out.display()))?;
    for line in lines.into_inner().unwrap() {
        let line = line.expect("every pending record computed");
        writeln!(file, "{line}")?;
    }
    Ok(0)
}
