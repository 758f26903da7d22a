//! Report assembly shared by every scenario, campaign and file command.
//!
//! A report carries a scenario id, the echoed configuration, a PASS/FAIL
//! verdict, witnesses in exact rational form and skip records. The JSON
//! projection contains only deterministic fields, so re-running with the
//! same inputs reproduces it byte for byte; timing lives in the text
//! rendering only.

use std::collections::BTreeMap;
use std::time::Duration;

use num_traits::Zero;
use serde::Serialize;

use crate::exterior::MultiVector;
use crate::rat::Rat;

/// A rational as an exact `num/den` string, the wire format for every
/// coefficient in reports and witness files.
pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn vec_str(v: &[Rat]) -> String {
    let body: Vec<String> = v.iter().map(rat_str).collect();
    format!("({})", body.join(", "))
}

/// Sparse exact rendering of a multivector: nonzero dense coordinates
/// only, as `index: num/den` pairs. `from_dense` on the full vector
/// reconstructs the input, so the rendering is replayable.
pub fn mv_str(m: &MultiVector) -> String {
    let dense = m.to_dense();
    let body: Vec<String> = dense
        .iter()
        .enumerate()
        .filter(|(_, c)| !Zero::is_zero(*c))
        .map(|(i, c)| format!("{i}: {}", rat_str(c)))
        .collect();
    format!("degree {} over Q^{} [{}]", m.degree(), m.ambient(), body.join(", "))
}

/// One piece of evidence: a labeled bundle of exact detail lines, plus an
/// optional replay file in the scheme text format that reproduces the
/// finding through the `classify`/`decompose` commands.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub label: String,
    pub detail: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scenario: String,
    pub config: BTreeMap<String, String>,
    pub verdict: String,
    pub witnesses: Vec<Witness>,
    pub skipped: Vec<String>,
    pub seed: u64,
    pub version: String,
    #[serde(skip)]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new(scenario: impl Into<String>, seed: u64) -> Self {
        Report {
            scenario: scenario.into(),
            config: BTreeMap::new(),
            verdict: "PASS".into(),
            witnesses: Vec::new(),
            skipped: Vec::new(),
            seed,
            version: env!("CARGO_PKG_VERSION").into(),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.config.insert(key.into(), value.into());
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Record one named check as a pass/fail line; any failed check flips
    /// the verdict.
    pub fn check(&mut self, what: &str, ok: bool) -> bool {
        self.notes.push(format!("check: {what} ... {}", if ok { "ok" } else { "FAILED" }));
        if !ok {
            self.verdict = "FAIL".into();
        }
        ok
    }

    pub fn fail(&mut self) {
        self.verdict = "FAIL".into();
    }

    pub fn push_witness(&mut self, w: Witness) {
        self.witnesses.push(w);
    }

    pub fn skip(&mut self, line: impl Into<String>) {
        self.skipped.push(line.into());
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == "PASS"
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is total");
        s.push('\n');
        s
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario: {}\n", self.scenario));
        for (k, v) in &self.config {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        for n in &self.notes {
            out.push_str(n);
            out.push('\n');
        }
        for (i, w) in self.witnesses.iter().enumerate() {
            out.push_str(&format!("witness[{i}]: {}\n", w.label));
            for d in &w.detail {
                out.push_str(&format!("  {d}\n"));
            }
            if let Some(replay) = &w.replay {
                out.push_str("  replay:\n");
                for line in replay.lines() {
                    out.push_str(&format!("    {line}\n"));
                }
            }
        }
        for s in &self.skipped {
            out.push_str(&format!("skipped: {s}\n"));
        }
        out.push_str(&format!("seed: {}\n", self.seed));
        out.push_str(&format!("elapsed: {:.1?}\n", self.elapsed));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}
