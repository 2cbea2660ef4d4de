//! Report types and their text, JSON and CSV renderings.

use std::fmt::Write as _;
use std::time::Duration;

use clap::ValueEnum;
use hdepth::{HilbertPartition, SearchConfig, SearchStats, Space};
use serde::Serialize;

use crate::problem::format_monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Hilbert,
    Stanley,
}

impl Kind {
    pub fn label(self) -> &'static str {
        match self {
            Kind::Hilbert => "hdepth",
            Kind::Stanley => "sdepth",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartLine {
    pub low: Vec<u32>,
    pub high: Vec<u32>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceLine {
    pub shift: Vec<u32>,
    pub monomial: String,
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsOut {
    pub nodes_visited: u64,
    pub covers_tried: u64,
    pub dead_ends: u64,
    pub memo_hits: u64,
    pub elapsed_ms: f64,
}

impl From<&SearchStats> for StatsOut {
    fn from(s: &SearchStats) -> Self {
        Self {
            nodes_visited: s.nodes_visited,
            covers_tried: s.covers_tried,
            dead_ends: s.dead_ends,
            memo_hits: s.memo_hits,
            elapsed_ms: millis(s.elapsed),
        }
    }
}

pub(crate) fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigOut {
    pub order: String,
    pub cover_order: String,
    pub driver: String,
    pub timeout_secs: Option<f64>,
    pub node_limit: Option<u64>,
    pub memoize_failures: bool,
    pub counting_bound: bool,
    pub disjointness_check: bool,
}

impl From<&SearchConfig> for ConfigOut {
    fn from(c: &SearchConfig) -> Self {
        Self {
            order: c.element_order.to_string(),
            cover_order: c.cover_order.to_string(),
            driver: c.driver.to_string(),
            timeout_secs: c.time_limit.map(|d| d.as_secs_f64()),
            node_limit: c.node_limit,
            memoize_failures: c.memoize_failures,
            counting_bound: c.counting_bound,
            disjointness_check: c.disjointness_check,
        }
    }
}

/// Answer to a `check` or `verify` query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Query {
    pub s: Option<usize>,
    pub holds: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub kind: Kind,
    pub variables: Vec<String>,
    pub bound: Vec<u32>,
    pub value: Option<usize>,
    pub query: Option<Query>,
    pub partition: Option<Vec<PartLine>>,
    pub decomposition: Option<Vec<SpaceLine>>,
    pub stats: StatsOut,
    pub config: ConfigOut,
    pub warnings: Vec<String>,
}

pub fn part_lines(pp: &HilbertPartition) -> Vec<PartLine> {
    pp.grouped()
        .into_iter()
        .map(|(iv, k)| PartLine {
            low: iv.low().coords().to_vec(),
            high: iv.high().coords().to_vec(),
            multiplicity: k,
        })
        .collect()
}

pub fn space_lines(vars: &[String], spaces: &[Space]) -> Vec<SpaceLine> {
    let mut sorted = spaces.to_vec();
    sorted.sort();
    sorted
        .iter()
        .map(|sp| SpaceLine {
            shift: sp.shift.coords().to_vec(),
            monomial: format_monomial(vars, &sp.shift),
            vars: sp.vars.iter().map(|j| vars[j].clone()).collect(),
        })
        .collect()
}

impl RunReport {
    pub fn to_text(&self, with_stats: bool) -> String {
        let mut s = String::new();
        let label = self.kind.label();
        match (&self.query, self.value) {
            (Some(q), _) if self.command == "verify" => {
                writeln!(s, "partition valid : {}", q.holds).unwrap();
                if let Some(d) = &q.detail {
                    writeln!(s, "{d}").unwrap();
                }
            }
            (Some(q), _) => writeln!(s, "{label} ≥ {} : {}", q.s.unwrap_or(0), q.holds).unwrap(),
            (None, Some(v)) => writeln!(s, "{label} = {v}").unwrap(),
            (None, None) => {}
        }
        if let Some(parts) = &self.partition {
            let total: usize = parts.iter().map(|p| p.multiplicity).sum();
            writeln!(s, "partition ({total} intervals, g = {}):", join(&self.bound)).unwrap();
            for p in parts {
                writeln!(s, "[{} ; {}] x{}", join(&p.low), join(&p.high), p.multiplicity).unwrap();
            }
        }
        if let Some(spaces) = &self.decomposition {
            writeln!(s, "decomposition ({} spaces):", spaces.len()).unwrap();
            for sp in spaces {
                writeln!(s, "shift={} vars={{{}}}", sp.monomial, sp.vars.join(", ")).unwrap();
            }
        }
        if with_stats {
            let st = &self.stats;
            let c = &self.config;
            writeln!(s, "nodes visited: {}", st.nodes_visited).unwrap();
            writeln!(s, "covers tried: {}", st.covers_tried).unwrap();
            writeln!(s, "dead ends: {}", st.dead_ends).unwrap();
            writeln!(s, "memo hits: {}", st.memo_hits).unwrap();
            writeln!(s, "elapsed: {:.3} ms", st.elapsed_ms).unwrap();
            writeln!(
                s,
                "config: order={} cover-order={} driver={}",
                c.order, c.cover_order, c.driver
            )
            .unwrap();
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "command",
            "kind",
            "n",
            "value",
            "s",
            "holds",
            "nodes_visited",
            "covers_tried",
            "dead_ends",
            "memo_hits",
            "elapsed_ms",
        ])
        .unwrap();
        let opt = |v: Option<String>| v.unwrap_or_default();
        w.write_record([
            self.command.clone(),
            self.kind.label().to_string(),
            self.variables.len().to_string(),
            opt(self.value.map(|v| v.to_string())),
            opt(self.query.as_ref().and_then(|q| q.s).map(|s| s.to_string())),
            opt(self.query.as_ref().map(|q| q.holds.to_string())),
            self.stats.nodes_visited.to_string(),
            self.stats.covers_tried.to_string(),
            self.stats.dead_ends.to_string(),
            self.stats.memo_hits.to_string(),
            format!("{:.3}", self.stats.elapsed_ms),
        ])
        .unwrap();
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    LimitExceeded,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub value: Option<usize>,
    pub expected: usize,
    pub elapsed_ms: f64,
    pub nodes_visited: Option<u64>,
    pub status: RowStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub command: String,
    pub kind: Kind,
    pub config: ConfigOut,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{:>3}  {:>5}  {:>8}  {:>12}  {:>12}  status\n",
            "n", "value", "expected", "elapsed_ms", "nodes"
        );
        for r in &self.rows {
            let value = r.value.map_or("-".to_string(), |v| v.to_string());
            let status = match r.status {
                RowStatus::Ok => "ok",
                RowStatus::LimitExceeded => "limit exceeded",
            };
            writeln!(
                s,
                "{:>3}  {:>5}  {:>8}  {:>12.3}  {:>12}  {status}",
                r.n,
                value,
                r.expected,
                r.elapsed_ms,
                r.nodes_visited.map_or("-".to_string(), |k| k.to_string())
            )
            .unwrap();
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "value", "expected", "elapsed_ms", "nodes_visited", "status"])
            .unwrap();
        for r in &self.rows {
            let status = match r.status {
                RowStatus::Ok => "ok",
                RowStatus::LimitExceeded => "limit_exceeded",
            };
            w.write_record([
                r.n.to_string(),
                r.value.map(|v| v.to_string()).unwrap_or_default(),
                r.expected.to_string(),
                format!("{:.3}", r.elapsed_ms),
                r.nodes_visited.map(|k| k.to_string()).unwrap_or_default(),
                status.to_string(),
            ])
            .unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}
