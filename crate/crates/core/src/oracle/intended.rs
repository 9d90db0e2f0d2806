//! Evaluation of integer terms and formulas under the intended semantics:
//! `pow2` is the genuine power of two, and the bitwise symbols are the
//! width-`k` bitwise operations on nonnegative integers.
//!
//! Quantifiers are evaluated by enumeration over guard-bounded domains only;
//! anything unbounded is an error, never a silent approximation.

use super::OracleError;
use crate::ast::{BvUfOp, IntFormula, IntFormulaNode, IntNode, IntRel, IntTerm};
use std::collections::BTreeMap;

pub type IntEnv = BTreeMap<String, i128>;

const QUANTIFIER_POINTS_CAP: i128 = 1 << 16;

pub fn eval_int_term(t: &IntTerm, env: &IntEnv) -> Result<i128, OracleError> {
    let checked = |v: Option<i128>| v.ok_or_else(|| OracleError::Overflow(t.to_string()));
    match t.node() {
        IntNode::Num(n) => Ok(*n),
        IntNode::Var(v) => env
            .get(v)
            .copied()
            .ok_or_else(|| OracleError::UnboundVariable(v.clone())),
        IntNode::Add(a, b) => checked(eval_int_term(a, env)?.checked_add(eval_int_term(b, env)?)),
        IntNode::Sub(a, b) => checked(eval_int_term(a, env)?.checked_sub(eval_int_term(b, env)?)),
        IntNode::Mul(a, b) => checked(eval_int_term(a, env)?.checked_mul(eval_int_term(b, env)?)),
        IntNode::Div(a, b) => {
            let d = eval_int_term(b, env)?;
            if d == 0 {
                return Err(OracleError::DivisionByZero);
            }
            Ok(eval_int_term(a, env)?.div_euclid(d))
        }
        IntNode::Mod(a, b) => {
            let d = eval_int_term(b, env)?;
            if d == 0 {
                return Err(OracleError::DivisionByZero);
            }
            Ok(eval_int_term(a, env)?.rem_euclid(d))
        }
        IntNode::Abs(a) => Ok(eval_int_term(a, env)?.abs()),
        IntNode::Pow2(a) => {
            let e = eval_int_term(a, env)?;
            if e < 0 {
                return Err(OracleError::NegativePow2(e));
            }
            if e > 100 {
                return Err(OracleError::Overflow(t.to_string()));
            }
            Ok(1i128 << e)
        }
        IntNode::Ite(c, then, els) => {
            if eval_int_formula(c, env)? {
                eval_int_term(then, env)
            } else {
                eval_int_term(els, env)
            }
        }
        IntNode::BvApp { op, width, args } => {
            if !op.is_bitwise_uf() {
                return Err(OracleError::UneliminatedApplication(op.name().to_string()));
            }
            let k = eval_int_term(width, env)?;
            if !(1..=64).contains(&k) {
                return Err(OracleError::UfOutOfDomain(format!(
                    "{}: width {k} out of range",
                    op.name()
                )));
            }
            let x = eval_int_term(&args[0], env)?;
            let y = eval_int_term(&args[1], env)?;
            let bound = 1i128 << k;
            if !(0..bound).contains(&x) || !(0..bound).contains(&y) {
                return Err(OracleError::UfOutOfDomain(format!(
                    "{}({k}, {x}, {y}): operand outside [0, 2^{k})",
                    op.name()
                )));
            }
            Ok(match op {
                BvUfOp::And => x & y,
                BvUfOp::Or => x | y,
                BvUfOp::Xor => x ^ y,
                _ => unreachable!(),
            })
        }
    }
}

pub fn eval_int_formula(f: &IntFormula, env: &IntEnv) -> Result<bool, OracleError> {
    match f.node() {
        IntFormulaNode::True => Ok(true),
        IntFormulaNode::False => Ok(false),
        IntFormulaNode::Cmp(rel, a, b) => {
            let x = eval_int_term(a, env)?;
            let y = eval_int_term(b, env)?;
            Ok(match rel {
                IntRel::Eq => x == y,
                IntRel::Ne => x != y,
                IntRel::Lt => x < y,
                IntRel::Le => x <= y,
                IntRel::Gt => x > y,
                IntRel::Ge => x >= y,
            })
        }
        IntFormulaNode::Not(g) => Ok(!eval_int_formula(g, env)?),
        IntFormulaNode::And(a, b) => Ok(eval_int_formula(a, env)? && eval_int_formula(b, env)?),
        IntFormulaNode::Or(a, b) => Ok(eval_int_formula(a, env)? || eval_int_formula(b, env)?),
        IntFormulaNode::Implies(a, b) => {
            Ok(!eval_int_formula(a, env)? || eval_int_formula(b, env)?)
        }
        IntFormulaNode::Iff(a, b) => Ok(eval_int_formula(a, env)? == eval_int_formula(b, env)?),
        IntFormulaNode::Forall(vars, body) => eval_quantifier(vars, body, env, true),
        IntFormulaNode::Exists(vars, body) => eval_quantifier(vars, body, env, false),
        IntFormulaNode::BvRelApp { rel, .. } => Err(OracleError::UneliminatedApplication(format!(
            "int{}",
            rel.smtlib_name()
        ))),
    }
}

/// Splits the quantifier body into its guard and the rest: the translation
/// emits `forall v. guard => body` and `exists v. guard and body`.
fn guard_of<'a>(body: &'a IntFormula, universal: bool) -> (Option<&'a IntFormula>, &'a IntFormula) {
    match (body.node(), universal) {
        (IntFormulaNode::Implies(g, rest), true) => (Some(g), rest),
        (IntFormulaNode::And(g, rest), false) => (Some(g), rest),
        _ => (None, body),
    }
}

fn conjuncts<'a>(f: &'a IntFormula, out: &mut Vec<&'a IntFormula>) {
    match f.node() {
        IntFormulaNode::And(a, b) => {
            conjuncts(a, out);
            conjuncts(b, out);
        }
        _ => out.push(f),
    }
}

/// Derives `lo..=hi` for one quantified variable from the guard conjuncts,
/// evaluating bound terms in the outer environment.
fn bounds_for(var: &str, guard: &IntFormula, env: &IntEnv) -> Result<(i128, i128), OracleError> {
    let mut lo: Option<i128> = None;
    let mut hi: Option<i128> = None;
    let mut parts = Vec::new();
    conjuncts(guard, &mut parts);
    for part in parts {
        if let IntFormulaNode::Cmp(rel, a, b) = part.node() {
            let var_on_left = matches!(a.node(), IntNode::Var(v) if v == var);
            let var_on_right = matches!(b.node(), IntNode::Var(v) if v == var);
            if var_on_left && !var_on_right {
                if let Ok(bound) = eval_int_term(b, env) {
                    match rel {
                        IntRel::Lt => hi = Some(hi.map_or(bound - 1, |h: i128| h.min(bound - 1))),
                        IntRel::Le => hi = Some(hi.map_or(bound, |h: i128| h.min(bound))),
                        IntRel::Gt => lo = Some(lo.map_or(bound + 1, |l: i128| l.max(bound + 1))),
                        IntRel::Ge => lo = Some(lo.map_or(bound, |l: i128| l.max(bound))),
                        _ => {}
                    }
                }
            } else if var_on_right && !var_on_left {
                if let Ok(bound) = eval_int_term(a, env) {
                    match rel {
                        IntRel::Lt => lo = Some(lo.map_or(bound + 1, |l: i128| l.max(bound + 1))),
                        IntRel::Le => lo = Some(lo.map_or(bound, |l: i128| l.max(bound))),
                        IntRel::Gt => hi = Some(hi.map_or(bound - 1, |h: i128| h.min(bound - 1))),
                        IntRel::Ge => hi = Some(hi.map_or(bound, |h: i128| h.min(bound))),
                        _ => {}
                    }
                }
            }
        }
    }
    match (lo, hi) {
        (Some(lo), Some(hi)) => Ok((lo, hi)),
        _ => Err(OracleError::UnboundedQuantifier(var.to_string())),
    }
}

fn eval_quantifier(
    vars: &[String],
    body: &IntFormula,
    env: &IntEnv,
    universal: bool,
) -> Result<bool, OracleError> {
    let (guard, _) = guard_of(body, universal);
    let guard = guard.ok_or_else(|| {
        OracleError::UnboundedQuantifier(format!("quantifier over {vars:?} carries no range guard"))
    })?;
    let mut ranges = Vec::with_capacity(vars.len());
    let mut points: i128 = 1;
    for var in vars {
        let (lo, hi) = bounds_for(var, guard, env)?;
        let n = (hi - lo + 1).max(0);
        points = points
            .checked_mul(n)
            .ok_or(OracleError::DomainTooLarge(u128::MAX))?;
        if points > QUANTIFIER_POINTS_CAP {
            return Err(OracleError::DomainTooLarge(points as u128));
        }
        ranges.push((var.clone(), lo, hi));
    }
    let mut scratch = env.clone();
    fn rec(
        ranges: &[(String, i128, i128)],
        body: &IntFormula,
        scratch: &mut IntEnv,
        universal: bool,
    ) -> Result<bool, OracleError> {
        match ranges.split_first() {
            None => eval_int_formula(body, scratch),
            Some(((var, lo, hi), rest)) => {
                for v in *lo..=*hi {
                    scratch.insert(var.clone(), v);
                    let verdict = rec(rest, body, scratch, universal)?;
                    if universal && !verdict {
                        scratch.remove(var);
                        return Ok(false);
                    }
                    if !universal && verdict {
                        scratch.remove(var);
                        return Ok(true);
                    }
                }
                scratch.remove(var);
                Ok(universal)
            }
        }
    }
    rec(&ranges, body, &mut scratch, universal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitwise_base_case() {
        let t = IntTerm::bv_app(
            BvUfOp::And,
            IntTerm::num(1),
            vec![IntTerm::num(1), IntTerm::num(1)],
        );
        assert_eq!(eval_int_term(&t, &IntEnv::new()).unwrap(), 1);
    }

    #[test]
    fn pow2_of_zero() {
        let t = IntTerm::pow2(IntTerm::num(0));
        assert_eq!(eval_int_term(&t, &IntEnv::new()).unwrap(), 1);
    }

    #[test]
    fn xor_on_four_bits() {
        let t = IntTerm::bv_app(
            BvUfOp::Xor,
            IntTerm::num(4),
            vec![IntTerm::num(12), IntTerm::num(10)],
        );
        assert_eq!(eval_int_term(&t, &IntEnv::new()).unwrap(), 6);
    }

    #[test]
    fn negative_pow2_argument_is_an_error() {
        let t = IntTerm::pow2(IntTerm::num(-1));
        assert!(matches!(
            eval_int_term(&t, &IntEnv::new()),
            Err(OracleError::NegativePow2(-1))
        ));
    }

    #[test]
    fn guarded_forall_enumerates() {
        // forall v. (0 <= v and v < pow2(3)) => v < 8
        let v = IntTerm::var("v");
        let guard = IntFormula::and(
            IntFormula::le(IntTerm::num(0), v.clone()),
            IntFormula::lt(v.clone(), IntTerm::pow2(IntTerm::num(3))),
        );
        let f = IntFormula::forall(
            vec!["v".to_string()],
            IntFormula::implies(guard.clone(), IntFormula::lt(v.clone(), IntTerm::num(8))),
        );
        assert!(eval_int_formula(&f, &IntEnv::new()).unwrap());
        let g = IntFormula::forall(
            vec!["v".to_string()],
            IntFormula::implies(guard, IntFormula::lt(v, IntTerm::num(7))),
        );
        assert!(!eval_int_formula(&g, &IntEnv::new()).unwrap());
    }

    #[test]
    fn unguarded_quantifier_is_an_error() {
        let f = IntFormula::forall(
            vec!["v".to_string()],
            IntFormula::eq(IntTerm::var("v"), IntTerm::var("v")),
        );
        assert!(matches!(
            eval_int_formula(&f, &IntEnv::new()),
            Err(OracleError::UnboundedQuantifier(_))
        ));
    }

    #[test]
    fn out_of_domain_uf_application_is_an_error() {
        let t = IntTerm::bv_app(
            BvUfOp::And,
            IntTerm::num(2),
            vec![IntTerm::num(9), IntTerm::num(1)],
        );
        assert!(matches!(
            eval_int_term(&t, &IntEnv::new()),
            Err(OracleError::UfOutOfDomain(_))
        ));
    }
}
