//! SMT-LIB 2 rendering of a translation result.

use super::{TranslationResult, UfSym};
use crate::ast::{IntFormula, WidthMap};
use std::collections::BTreeSet;

/// Whether the file asserts the negated implication (validity checking: the
/// input is valid iff the solver answers unsat) or the positive conjunction
/// (satisfiable-instance exploration).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssertStyle {
    Validity,
    Satisfiability,
}

/// Renders `(set-logic UFNIA)`, the needed declarations, one assert, and
/// `(check-sat)`. Deterministic: identical inputs give identical bytes.
pub fn to_smtlib(result: &TranslationResult, omega: &WidthMap, style: AssertStyle) -> String {
    let mut out = String::new();
    out.push_str("(set-logic UFNIA)\n");
    for uf in [UfSym::Pow2, UfSym::And, UfSym::Or, UfSym::Xor] {
        if result.used_ufs.contains(&uf) {
            match uf {
                UfSym::Pow2 => out.push_str("(declare-fun pow2 (Int) Int)\n"),
                _ => out.push_str(&format!("(declare-fun {} (Int Int Int) Int)\n", uf.name())),
            }
        }
    }
    let width_vars = omega.free_width_vars();
    let mut free: BTreeSet<String> = result.prelude.free_vars();
    free.extend(result.body.free_vars());
    for w in &width_vars {
        out.push_str(&format!("(declare-const {w} Int)\n"));
    }
    for v in &free {
        if !width_vars.contains(v) {
            out.push_str(&format!("(declare-const {v} Int)\n"));
        }
    }
    let assertion = match style {
        AssertStyle::Validity => IntFormula::not(result.implication()),
        AssertStyle::Satisfiability => IntFormula::and(result.prelude.clone(), result.body.clone()),
    };
    out.push_str(&format!("(assert {assertion})\n"));
    out.push_str("(check-sat)\n");
    out
}
