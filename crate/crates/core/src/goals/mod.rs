//! Proof-obligation generation for the three case studies: invertibility
//! conditions with conditional inverses, fixed-width problems lifted to a
//! symbolic width, and rewrite-pair equivalences with the fixpoint
//! axiom-accumulation loop.

mod ic;
mod lift;
mod rewrite;

pub use ic::{
    builtin_ic_entries, check_inverse, check_inverse_sampled, gen_ic_goals, load_ic_table,
    Condition, GridReport, ICEntry, InverseVerdict, LiteralShape, Relation, ShapeOp,
};
pub use lift::{lift_qfbv, LiftOptions};
pub use rewrite::{rewrite_fixpoint, FixpointResult, ProveOutcome, RewritePair};

use crate::ast::{ParamFormula, ParseError, WidthMap};
use crate::oracle::OracleError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GoalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("malformed entry: {0}")]
    Malformed(String),
    #[error("entry {0} has no inverse to check")]
    MissingInverse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GoalKind {
    #[serde(rename = "ic-rtl-prime")]
    IcRtlPrime,
    #[serde(rename = "ic-ltr")]
    IcLtr,
    #[serde(rename = "ic-ltr-prime")]
    IcLtrPrime,
    #[serde(rename = "lifted-equiv")]
    LiftedEquiv,
    #[serde(rename = "rewrite-pair")]
    RewritePair,
}

/// The recorded expectation for a goal: `Valid` when the obligation is known
/// to hold (desk-verified or trivial), `Unknown` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    Valid,
    Unknown,
}

/// A named proof obligation together with its width map and provenance.
#[derive(Debug, Clone)]
pub struct Goal {
    pub id: String,
    pub kind: GoalKind,
    pub formula: ParamFormula,
    pub omega: WidthMap,
    pub expected: Expected,
    pub provenance: String,
}

impl Goal {
    /// The goal as a standalone `.pbv` document.
    pub fn to_pbv(&self) -> String {
        crate::ast::pretty_problem(&self.formula, &self.omega)
    }

    /// Wraps a lifted fixed-width problem as a proof obligation; proving it
    /// establishes the property for every bit-width.
    pub fn from_lifted(
        id: impl Into<String>,
        formula: ParamFormula,
        omega: WidthMap,
        original_width: u32,
    ) -> Goal {
        Goal {
            id: id.into(),
            kind: GoalKind::LiftedEquiv,
            formula,
            omega,
            expected: Expected::Unknown,
            provenance: format!("lifted from a width-{original_width} problem"),
        }
    }

    /// Wraps a rewrite pair as an equivalence obligation.
    pub fn from_rewrite_pair(pair: &RewritePair, omega: WidthMap) -> Goal {
        Goal {
            id: pair.id.clone(),
            kind: GoalKind::RewritePair,
            formula: pair.equivalence(),
            omega,
            expected: Expected::Unknown,
            provenance: "rewrite-pair equivalence".to_string(),
        }
    }
}
