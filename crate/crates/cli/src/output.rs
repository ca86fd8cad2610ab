//! Output documents: flat table records, bars and diagnostics.

use std::collections::BTreeMap;

use cocycle_core::persist::{Bar, Direction, Endpoint, LevelPoint, StandardPersistence};
use cocycle_core::reduce::Death;
use cocycle_core::Rational;
use serde::Serialize;

use crate::input::format_rational;

/// A table index: a stage or step, or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Index {
    Finite(usize),
    Inf(&'static str),
}

impl From<Death> for Index {
    fn from(d: Death) -> Self {
        match d {
            Death::Finite(k) => Index::Finite(k),
            Death::Infinite => Index::Inf("inf"),
        }
    }
}

impl From<usize> for Index {
    fn from(k: usize) -> Self {
        Index::Finite(k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub kind: &'static str,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<Index>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<Index>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<Index>,
    /// `τ` of the step index, for up and down tables.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_down: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_up: Option<String>,
    pub value: usize,
}

impl Record {
    fn new(kind: &'static str, r: usize, value: usize) -> Self {
        Self {
            kind,
            r,
            i: None,
            j: None,
            k: None,
            tau: None,
            tau_down: None,
            tau_up: None,
            value,
        }
    }

    fn i(mut self, i: impl Into<Index>) -> Self {
        self.i = Some(i.into());
        self
    }

    fn j(mut self, j: impl Into<Index>) -> Self {
        self.j = Some(j.into());
        self
    }

    fn k(mut self, k: impl Into<Index>) -> Self {
        self.k = Some(k.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarRecord {
    pub r: usize,
    pub direction: &'static str,
    pub birth_value: String,
    pub death_value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_death_value: Option<String>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: &'static str,
    pub ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub i: usize,
    pub s: String,
    pub up_tau: Vec<String>,
    pub down_tau: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OutputDocument {
    pub command: String,
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub critical: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub levels: Vec<LevelSummary>,
    pub tables: Vec<Record>,
    pub bars: Vec<BarRecord>,
    pub diagnostics: Vec<Diagnostic>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckReport>,
}

impl OutputDocument {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Self::default()
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("output serializes");
        s.push('\n');
        s
    }
}

fn endpoint(e: Endpoint) -> String {
    match e {
        Endpoint::Value(v) => format_rational(&v),
        Endpoint::Infinite => "inf".to_string(),
    }
}

pub fn bar_records(bars: &[Bar]) -> Vec<BarRecord> {
    bars.iter()
        .map(|b| BarRecord {
            r: b.degree,
            direction: match b.direction {
                Direction::Up => "up",
                Direction::Down => "down",
                Direction::Pair => "pair",
            },
            birth_value: format_rational(&b.birth),
            death_value: endpoint(b.death),
            lower_death_value: b.lower_death.map(endpoint),
            multiplicity: b.multiplicity,
        })
        .collect()
}

/// μ, β, κ and kernel tables of sublevel persistence, stages from 0.
pub fn standard_records(p: &StandardPersistence) -> Vec<Record> {
    let mut out: Vec<Record> = p
        .mu_table()
        .iter()
        .map(|(&(r, i, j), &n)| Record::new("mu", r, n).i(i).j(j))
        .collect();
    let n = p.stages();
    for r in 0..p.degrees() {
        for i in 0..n {
            out.push(Record::new("kappa", r, p.kappa(r, i)).i(i));
            for j in i..n {
                out.push(Record::new("beta", r, p.beta(r, i, j)).i(i).j(j));
            }
            for j in i + 1..n {
                out.push(Record::new("kappa", r, p.kappa_pair(r, i, j)).i(i).j(j));
            }
        }
    }
    out
}

fn tau(t: Option<Rational>) -> String {
    t.map_or_else(|| "inf".to_string(), |t| format_rational(&t))
}

pub fn level_summary(p: &LevelPoint) -> LevelSummary {
    LevelSummary {
        i: p.index(),
        s: format_rational(&p.value()),
        up_tau: (1..=p.max_up())
            .map(|k| format_rational(&p.up_tau(k)))
            .collect(),
        down_tau: (1..=p.max_down())
            .map(|k| format_rational(&p.down_tau(k)))
            .collect(),
    }
}

/// l, ν±, l±, ω and the nonzero entries of e at one level point.
pub fn level_records(p: &LevelPoint) -> Vec<Record> {
    let i = p.index();
    let up = |k: Death| tau(k.finite().map(|k| p.up_tau(k)));
    let down = |k: Death| tau(k.finite().map(|k| p.down_tau(k)));
    let mut out = Vec::new();
    for r in 0..p.degrees() {
        out.push(Record::new("l", r, p.l(r)).i(i));
    }
    for (&(r, k), &n) in p.nu_plus_table() {
        let mut rec = Record::new("nu+", r, n).i(i).k(k);
        rec.tau = Some(up(k));
        out.push(rec);
    }
    for (&(r, k), &n) in p.nu_minus_table() {
        let mut rec = Record::new("nu-", r, n).i(i).k(k);
        rec.tau = Some(down(k));
        out.push(rec);
    }
    for r in 0..p.degrees() {
        for j in 0..=p.max_up() {
            let mut rec = Record::new("l+", r, p.l_plus(r, j)).i(i).j(j);
            rec.tau = Some(up(Death::Finite(j)));
            out.push(rec);
        }
        for j in 0..=p.max_down() {
            let mut rec = Record::new("l-", r, p.l_minus(r, j)).i(i).j(j);
            rec.tau = Some(down(Death::Finite(j)));
            out.push(rec);
        }
    }
    for (&(r, j, k), &n) in p.omega_table() {
        let mut rec = Record::new("omega", r, n).i(i).j(j).k(k);
        rec.tau_down = Some(down(j));
        rec.tau_up = Some(up(k));
        out.push(rec);
    }
    let downs: Vec<Death> = (0..=p.max_down())
        .map(Death::Finite)
        .chain([Death::Infinite])
        .collect();
    let ups: Vec<Death> = (0..=p.max_up())
        .map(Death::Finite)
        .chain([Death::Infinite])
        .collect();
    for r in 0..p.degrees() {
        for &j in &downs {
            for &k in &ups {
                if p.e(r, j, k) == 0 {
                    continue;
                }
                let mut rec = Record::new("e", r, p.e(r, j, k)).i(i).j(j).k(k);
                rec.tau_down = Some(down(j));
                rec.tau_up = Some(up(k));
                out.push(rec);
            }
        }
    }
    out
}
