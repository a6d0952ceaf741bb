//! Machine-readable run reports. The layout is described by
//! `schema/run-report.schema.json`.

use basisgrid_core::descent::{CounterexampleCertificate, DescentOutcome, DescentTrace, StepRecord};
use basisgrid_core::grid::{Grid, SolveReport, SolveStatus};
use basisgrid_core::sweep::SweepReport;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::format::{serialize_grid_instance, serialize_matroid};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of a canonical serialisation.
pub fn digest(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SolveJson {
    pub status: String,
    pub grid: Option<Vec<Vec<usize>>>,
    pub count: Option<u64>,
    pub nodes: u64,
    pub millis: u64,
}

fn status_str(s: SolveStatus) -> String {
    match s {
        SolveStatus::Sat => "SAT".into(),
        SolveStatus::Unsat => "UNSAT".into(),
    }
}

fn grid_rows(g: &Grid) -> Vec<Vec<usize>> {
    g.rows().to_vec()
}

impl From<&SolveReport> for SolveJson {
    fn from(r: &SolveReport) -> Self {
        SolveJson {
            status: status_str(r.status),
            grid: r.grid.as_ref().map(grid_rows),
            count: r.count,
            nodes: r.nodes,
            millis: r.elapsed.map_or(0, |d| d.as_millis() as u64),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StepJson {
    pub block: Vec<usize>,
    pub mu_before: usize,
    pub mu_after: usize,
    /// Inline grid-instance document.
    pub subinstance: String,
    pub nodes: u64,
    pub millis: u64,
}

impl From<&StepRecord> for StepJson {
    fn from(s: &StepRecord) -> Self {
        StepJson {
            block: s.block.clone(),
            mu_before: s.mu_before,
            mu_after: s.mu_after,
            subinstance: serialize_grid_instance(&s.subinstance.instance, None),
            nodes: s.report.nodes,
            millis: s.report.elapsed.map_or(0, |d| d.as_millis() as u64),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateJson {
    pub matroid: String,
    pub grid_instance: String,
    pub bases: Vec<Vec<usize>>,
    pub to_parent: Vec<usize>,
    pub nodes: u64,
}

pub fn certificate_json(c: &CounterexampleCertificate) -> CertificateJson {
    CertificateJson {
        matroid: serialize_matroid(c.instance.matroid()),
        grid_instance: serialize_grid_instance(&c.instance, None),
        bases: c.bases.clone(),
        to_parent: c.to_parent.clone(),
        nodes: c.report.nodes,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TraceJson {
    pub initial_mu: usize,
    pub steps: Vec<StepJson>,
    /// `grid`, `counterexample`, or `advanced` for a single descent step
    /// that has not reached μ = 0.
    pub outcome: String,
    pub grid: Option<Vec<Vec<usize>>>,
    pub certificate: Option<CertificateJson>,
}

impl From<&DescentTrace> for TraceJson {
    fn from(t: &DescentTrace) -> Self {
        let (outcome, grid, certificate) = match &t.outcome {
            DescentOutcome::Grid(g) => ("grid", Some(grid_rows(g)), None),
            DescentOutcome::Counterexample(c) => ("counterexample", None, Some(certificate_json(c))),
        };
        TraceJson {
            initial_mu: t.initial_mu,
            steps: t.steps.iter().map(StepJson::from).collect(),
            outcome: outcome.into(),
            grid,
            certificate,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SweepJson {
    pub matroid: String,
    pub families: u64,
    pub sat: u64,
    pub unsat: u64,
    pub examples_of_unsat: Vec<Vec<Vec<usize>>>,
}

impl From<&SweepReport> for SweepJson {
    fn from(r: &SweepReport) -> Self {
        SweepJson {
            matroid: r.matroid.clone(),
            families: r.families,
            sat: r.sat,
            unsat: r.unsat,
            examples_of_unsat: r.unsat_examples.iter().map(|f| f.0.clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ViolationJson {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub x: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckJson {
    pub name: String,
    pub ground: usize,
    pub rank: usize,
    #[serde(rename = "type")]
    pub kind: String,
    /// Number of bases, when the family was enumerated or given explicitly.
    pub bases: Option<usize>,
    pub exchange_ok: bool,
    pub violation: Option<ViolationJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", content = "report", rename_all = "kebab-case")]
pub enum Payload {
    Solve(SolveJson),
    Rota(TraceJson),
    DescentStep(TraceJson),
    Sweep(Vec<SweepJson>),
    CheckMatroid(CheckJson),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunReport {
    pub command: Vec<String>,
    pub version: String,
    pub digest: String,
    /// `ok`, `ok (basis partition not checked)`, or the first failed
    /// hypothesis. Absent for commands without grid hypotheses.
    pub hypotheses: Option<String>,
    #[serde(flatten)]
    pub payload: Payload,
}
