//! Goal manifests and batch reports. The JSON schema is versioned; the text
//! rendering is derived from the same data.

use crate::solver::SolverAnswer;
use pbv::ast::AxiomMode;
use pbv::goals::{Expected, GoalKind};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestGoal {
    pub id: String,
    pub kind: String,
    /// Translated SMT-LIB file, relative to the manifest directory.
    pub file: String,
    /// The parametric source, relative to the manifest directory.
    pub pbv_file: String,
    pub expected: String,
    pub provenance: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub generator: String,
    pub mode: AxiomMode,
    pub grid: Option<pbv::goals::GridReport>,
    pub goals: Vec<ManifestGoal>,
}

pub fn kind_str(kind: GoalKind) -> &'static str {
    match kind {
        GoalKind::IcRtlPrime => "ic-rtl-prime",
        GoalKind::IcLtr => "ic-ltr",
        GoalKind::IcLtrPrime => "ic-ltr-prime",
        GoalKind::LiftedEquiv => "lifted-equiv",
        GoalKind::RewritePair => "rewrite-pair",
    }
}

pub fn expected_str(expected: Expected) -> &'static str {
    match expected {
        Expected::Valid => "valid",
        Expected::Unknown => "unknown",
    }
}

/// Per-goal outcome in a prove batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GoalStatus {
    Proved,
    Disproved,
    Unknown,
    Timeout,
    Error,
}

impl GoalStatus {
    pub fn from_answer(answer: SolverAnswer) -> GoalStatus {
        // Validity encoding: the file asserts the negated implication, so
        // unsat answers prove the goal.
        match answer {
            SolverAnswer::Unsat => GoalStatus::Proved,
            SolverAnswer::Sat => GoalStatus::Disproved,
            SolverAnswer::Unknown => GoalStatus::Unknown,
            SolverAnswer::Timeout => GoalStatus::Timeout,
            SolverAnswer::Error => GoalStatus::Error,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GoalStatus::Proved => "proved",
            GoalStatus::Disproved => "disproved",
            GoalStatus::Unknown => "unknown",
            GoalStatus::Timeout => "timeout",
            GoalStatus::Error => "error",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoalResult {
    pub id: String,
    pub kind: String,
    pub expected: String,
    pub status: GoalStatus,
    pub answer: String,
    pub wall_ms: u64,
}

/// Classification of invertibility-condition slots in the style of the
/// mode-comparison table: both directions proved, one only, or neither.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct IcMatrix {
    pub both: usize,
    pub rtl_only: usize,
    pub ltr_only: usize,
    pub neither: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatchReport {
    pub schema_version: u32,
    pub mode: AxiomMode,
    pub goals: Vec<GoalResult>,
    pub totals: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ic_matrix: Option<IcMatrix>,
}

impl BatchReport {
    pub fn new(mode: AxiomMode, mut goals: Vec<GoalResult>) -> BatchReport {
        goals.sort_by(|a, b| a.id.cmp(&b.id));
        let mut totals: BTreeMap<String, usize> = BTreeMap::new();
        for status in [
            GoalStatus::Proved,
            GoalStatus::Disproved,
            GoalStatus::Unknown,
            GoalStatus::Timeout,
            GoalStatus::Error,
        ] {
            totals.insert(status.name().to_string(), 0);
        }
        for goal in &goals {
            *totals.entry(goal.status.name().to_string()).or_insert(0) += 1;
        }
        let ic_matrix = Self::ic_matrix(&goals);
        BatchReport {
            schema_version: SCHEMA_VERSION,
            mode,
            goals,
            totals,
            ic_matrix,
        }
    }

    /// Groups `<slot>_rtl` / `<slot>_ltr` goal ids into per-slot outcomes.
    fn ic_matrix(goals: &[GoalResult]) -> Option<IcMatrix> {
        let mut slots: BTreeMap<String, (Option<bool>, Option<bool>)> = BTreeMap::new();
        let mut any = false;
        for goal in goals {
            let (slot, is_rtl) = if let Some(slot) = goal.id.strip_suffix("_rtl") {
                (slot, true)
            } else if let Some(slot) = goal.id.strip_suffix("_ltr") {
                (slot, false)
            } else {
                continue;
            };
            if !goal.kind.starts_with("ic-") {
                continue;
            }
            any = true;
            let entry = slots.entry(slot.to_string()).or_default();
            let proved = goal.status == GoalStatus::Proved;
            if is_rtl {
                entry.0 = Some(proved);
            } else {
                entry.1 = Some(proved);
            }
        }
        if !any {
            return None;
        }
        let mut matrix = IcMatrix::default();
        for (_, (rtl, ltr)) in slots {
            let rtl = rtl.unwrap_or(false);
            let ltr = ltr.unwrap_or(false);
            match (rtl, ltr) {
                (true, true) => matrix.both += 1,
                (true, false) => matrix.rtl_only += 1,
                (false, true) => matrix.ltr_only += 1,
                (false, false) => matrix.neither += 1,
            }
        }
        Some(matrix)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("batch report (mode {})\n", self.mode));
        for goal in &self.goals {
            out.push_str(&format!(
                "  {:<24} {:<14} {:<9} expected {:<8} answer {:?} ({} ms)\n",
                goal.id,
                goal.kind,
                goal.status.name(),
                goal.expected,
                goal.answer,
                goal.wall_ms
            ));
        }
        out.push_str("totals:");
        for (name, count) in &self.totals {
            out.push_str(&format!(" {name}={count}"));
        }
        out.push('\n');
        if let Some(matrix) = &self.ic_matrix {
            out.push_str(&format!(
                "ic slots: both={} rtl-only={} ltr-only={} neither={}\n",
                matrix.both, matrix.rtl_only, matrix.ltr_only, matrix.neither
            ));
        }
        out
    }
}
