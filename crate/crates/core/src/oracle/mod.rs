//! Concrete-width instantiation and brute-force evaluation: the ground-truth
//! engine that certifies the translation, the axioms, and candidate inverses
//! at small widths.

mod bv;
mod checks;
mod fixed;
mod intended;

pub use bv::{Bits, BvValue};
pub use checks::{
    check_axiom_validity, check_lemma_suite, check_translation_equiv, check_valid_at_widths,
    AxiomCheckConfig, AxiomReport, EquivReport, Invalid, LemmaReport, MismatchWitness,
    ValidityOutcome,
};
pub use fixed::{
    assumptions_hold, eval_formula, eval_term, eval_term_bits, eval_width_term, free_fixed_vars,
    instantiate, instantiate_term, typecheck_formula, typecheck_term, ConcreteAssignment,
    FixedFormula, FixedTerm,
};
pub use intended::{eval_int_formula, eval_int_term, IntEnv};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("width `{width}` of `{symbol}` evaluates to {value}, which is not positive")]
    NonPositiveWidth {
        symbol: String,
        width: String,
        value: i128,
    },
    #[error("width of `{symbol}` evaluates to {value}, beyond the 64-bit oracle limit")]
    WidthTooLarge { symbol: String, value: i128 },
    #[error("arithmetic overflow while evaluating `{0}`")]
    Overflow(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("pow2 applied to negative argument {0}")]
    NegativePow2(i128),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("application of `{0}` was not eliminated before evaluation")]
    UneliminatedApplication(String),
    #[error("quantified variable `{0}` has no finite guard-derived domain")]
    UnboundedQuantifier(String),
    #[error("quantifier domain of {0} points exceeds the enumeration cap")]
    DomainTooLarge(u128),
    #[error("range term `{0}` is outside the supported fragment")]
    UnsupportedRangeTerm(String),
    #[error("uninterpreted function applied outside its intended domain: {0}")]
    UfOutOfDomain(String),
}
