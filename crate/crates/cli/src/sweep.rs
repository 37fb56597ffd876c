//! `qht sweep`: verify-theorem over a parameter grid, appended as JSON lines.

use std::collections::HashSet;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;

use qh_toeplitz::theorem::{verify_theorem1, TheoremParams, VerificationReport};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;

use crate::{emit, usage, CliError, Format, Output};

/// Inclusive `[lo, hi]` ranges.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub p: [u32; 2],
    pub s: [u32; 2],
    #[serde(rename = "M")]
    pub phi_order: [u32; 2],
    #[serde(rename = "N")]
    pub psi_order: [u32; 2],
    #[serde(default = "default_m_max")]
    pub m_max: u32,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn default_m_max() -> u32 {
    20
}

impl SweepConfig {
    /// Tuples with `p >= s` are skipped.
    pub fn tuples(&self) -> Result<Vec<TheoremParams>, CliError> {
        for (name, [lo, hi]) in [("p", self.p), ("s", self.s), ("M", self.phi_order), ("N", self.psi_order)] {
            if lo > hi {
                return Err(usage(format!("config range {name} = [{lo}, {hi}] is empty")));
            }
        }
        let mut out = Vec::new();
        for p in self.p[0]..=self.p[1] {
            for s in self.s[0]..=self.s[1] {
                for m in self.phi_order[0]..=self.phi_order[1] {
                    for n in self.psi_order[0]..=self.psi_order[1] {
                        if p < s {
                            out.push(TheoremParams::new(p, s, m, n).map_err(usage)?);
                        }
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(usage("config grid has no tuple with p < s"));
        }
        if let Some(p) = out.iter().find(|t| t.p > self.m_max) {
            return Err(usage(format!("m_max = {} is below p = {}", self.m_max, p.p)));
        }
        Ok(out)
    }
}

/// Reports already in `path`. A torn final line from an interrupted run is cut off.
fn load_existing(path: &Path) -> Result<Vec<VerificationReport>, CliError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(usage(format!("{}: {e}", path.display()))),
    };
    let complete = text.rfind('\n').map_or(0, |i| i + 1);
    if complete < text.len() {
        let f = OpenOptions::new().write(true).open(path).map_err(usage)?;
        f.set_len(complete as u64).map_err(usage)?;
    }
    text[..complete]
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| usage(format!("{}:{}: {e}", path.display(), i + 1)))
        })
        .collect()
}

pub fn run(fmt: Format, config: &Path, out: Option<&Path>, jobs: Option<usize>) -> Result<Output, CliError> {
    let raw = fs::read_to_string(config).map_err(|e| usage(format!("{}: {e}", config.display())))?;
    let cfg: SweepConfig =
        serde_json::from_str(&raw).map_err(|e| usage(format!("{}: {e}", config.display())))?;
    let grid = cfg.tuples()?;
    let out_path = out.map(Path::to_path_buf).or(cfg.out.clone());

    let existing = match &out_path {
        Some(p) => load_existing(p)?,
        None => Vec::new(),
    };
    let done: HashSet<TheoremParams> = existing.iter().map(|r| r.params).collect();
    let todo: Vec<TheoremParams> = grid.iter().copied().filter(|t| !done.contains(t)).collect();

    let mut sink: Box<dyn Write + Send> = match &out_path {
        Some(p) => Box::new(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(p)
                .map_err(|e| usage(format!("{}: {e}", p.display())))?,
        ),
        None => Box::new(io::stdout()),
    };

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(usage)?;

    let (tx, rx) = mpsc::channel();
    let m_max = cfg.m_max;
    let mut fresh = Vec::with_capacity(todo.len());
    std::thread::scope(|scope| -> Result<(), CliError> {
        scope.spawn(move || {
            pool.install(|| {
                todo.par_iter().for_each_with(tx, |tx, t| {
                    let _ = tx.send(verify_theorem1(t, m_max));
                })
            })
        });
        // single writer: one line per finished tuple, flushed so an interrupt loses at most one
        for res in rx {
            let report = res.map_err(usage)?;
            let line = serde_json::to_string(&report).expect("serializable");
            writeln!(sink, "{line}").and_then(|_| sink.flush()).map_err(usage)?;
            fresh.push(report);
        }
        Ok(())
    })?;

    let in_grid: HashSet<TheoremParams> = grid.iter().copied().collect();
    let relevant: Vec<&VerificationReport> = existing
        .iter()
        .filter(|r| in_grid.contains(&r.params))
        .chain(&fresh)
        .collect();
    let failed: Vec<String> = relevant.iter().filter(|r| !r.confirmed()).map(|r| r.params.to_string()).collect();
    let skipped = grid.len() - fresh.len();

    let summary = emit(
        fmt,
        || {
            let mut s = format!(
                "{} tuples: {} computed, {} resumed, {} not confirmed",
                grid.len(),
                fresh.len(),
                skipped,
                failed.len()
            );
            for f in &failed {
                s += &format!("\nnot confirmed: {f}");
            }
            s
        },
        json!({
            "tuples": grid.len(),
            "computed": fresh.len(),
            "resumed": skipped,
            "not_confirmed": failed,
        }),
    );
    if out_path.is_none() {
        // stdout already carries the JSON lines; keep the summary off it
        eprintln!("{summary}");
        return Ok(Output { text: String::new(), ok: failed.is_empty() });
    }
    Ok(Output { text: summary, ok: failed.is_empty() })
}
