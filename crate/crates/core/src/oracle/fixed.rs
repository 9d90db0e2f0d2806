//! Concrete-width instantiation `phi|omega,I` and evaluation of the
//! resulting fixed-size formulas.

use super::bv::{Bits, BvValue};
use super::OracleError;
use crate::ast::{
    BvBinop, BvRel, BvUnop, FormulaNode, IntFormula, IntFormulaNode, IntNode, IntRel, IntTerm,
    ParamFormula, ParamTerm, SymbolKind, TermNode, WidthMap,
};
use std::collections::BTreeMap;

/// Concrete values for the width variables and the bit-vector variables.
#[derive(Debug, Clone, Default)]
pub struct ConcreteAssignment {
    pub width_vals: BTreeMap<String, u32>,
    pub var_vals: BTreeMap<String, u128>,
}

impl ConcreteAssignment {
    /// Instantiates the formula at the assignment's widths and evaluates it
    /// under its variable values.
    pub fn eval(&self, formula: &ParamFormula, omega: &WidthMap) -> Result<bool, OracleError> {
        let fixed = instantiate(formula, omega, &self.width_vals)?;
        eval_formula(&fixed, &self.var_vals)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedTerm {
    Const(BvValue),
    Var {
        name: String,
        width: u32,
    },
    Unop(BvUnop, Box<FixedTerm>),
    Binop(BvBinop, Box<FixedTerm>, Box<FixedTerm>),
    Extract {
        hi: u32,
        lo: u32,
        arg: Box<FixedTerm>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedFormula {
    True,
    False,
    Eq(FixedTerm, FixedTerm),
    Ne(FixedTerm, FixedTerm),
    Rel(BvRel, FixedTerm, FixedTerm),
    Not(Box<FixedFormula>),
    And(Box<FixedFormula>, Box<FixedFormula>),
    Or(Box<FixedFormula>, Box<FixedFormula>),
    Implies(Box<FixedFormula>, Box<FixedFormula>),
    Iff(Box<FixedFormula>, Box<FixedFormula>),
    Forall(Vec<(String, u32)>, Box<FixedFormula>),
    Exists(Vec<(String, u32)>, Box<FixedFormula>),
}

/// Evaluates an integer range term of the width map under concrete width
/// variables. `pow2` is the genuine power function here.
pub fn eval_width_term(t: &IntTerm, env: &BTreeMap<String, u32>) -> Result<i128, OracleError> {
    let int_env: BTreeMap<String, i128> = env
        .iter()
        .map(|(k, v)| (k.clone(), i128::from(*v)))
        .collect();
    eval_range_term(t, &int_env)
}

fn eval_range_term(t: &IntTerm, env: &BTreeMap<String, i128>) -> Result<i128, OracleError> {
    let checked = |v: Option<i128>| v.ok_or_else(|| OracleError::Overflow(t.to_string()));
    match t.node() {
        IntNode::Num(n) => Ok(*n),
        IntNode::Var(v) => env
            .get(v)
            .copied()
            .ok_or_else(|| OracleError::UnboundVariable(v.clone())),
        IntNode::Add(a, b) => {
            checked(eval_range_term(a, env)?.checked_add(eval_range_term(b, env)?))
        }
        IntNode::Sub(a, b) => {
            checked(eval_range_term(a, env)?.checked_sub(eval_range_term(b, env)?))
        }
        IntNode::Mul(a, b) => {
            checked(eval_range_term(a, env)?.checked_mul(eval_range_term(b, env)?))
        }
        IntNode::Div(a, b) => {
            let d = eval_range_term(b, env)?;
            if d == 0 {
                return Err(OracleError::DivisionByZero);
            }
            Ok(eval_range_term(a, env)?.div_euclid(d))
        }
        IntNode::Mod(a, b) => {
            let d = eval_range_term(b, env)?;
            if d == 0 {
                return Err(OracleError::DivisionByZero);
            }
            Ok(eval_range_term(a, env)?.rem_euclid(d))
        }
        IntNode::Abs(a) => Ok(eval_range_term(a, env)?.abs()),
        IntNode::Pow2(a) => {
            let e = eval_range_term(a, env)?;
            if e < 0 {
                return Err(OracleError::NegativePow2(e));
            }
            if e > 100 {
                return Err(OracleError::Overflow(t.to_string()));
            }
            Ok(1i128 << e)
        }
        _ => Err(OracleError::UnsupportedRangeTerm(t.to_string())),
    }
}

struct Instantiator<'a> {
    omega: &'a WidthMap,
    width_vals: &'a BTreeMap<String, u32>,
}

impl<'a> Instantiator<'a> {
    fn concrete_width(&self, name: &str) -> Result<u32, OracleError> {
        let term = self
            .omega
            .width_of(name)
            .ok_or_else(|| OracleError::UnboundVariable(name.to_string()))?;
        let value = eval_width_term(term, self.width_vals)?;
        if value < 1 {
            return Err(OracleError::NonPositiveWidth {
                symbol: name.to_string(),
                width: term.to_string(),
                value,
            });
        }
        if value > 64 {
            return Err(OracleError::WidthTooLarge {
                symbol: name.to_string(),
                value,
            });
        }
        Ok(value as u32)
    }

    fn term(&self, t: &ParamTerm) -> Result<FixedTerm, OracleError> {
        match t.node() {
            TermNode::Symbol(sym) => {
                let width = self.concrete_width(&sym.name)?;
                match sym.kind {
                    SymbolKind::Variable => Ok(FixedTerm::Var {
                        name: sym.name.clone(),
                        width,
                    }),
                    SymbolKind::SymConst => {
                        let value_term = self
                            .omega
                            .value_of(&sym.name)
                            .ok_or_else(|| OracleError::UnboundVariable(sym.name.clone()))?;
                        let value = eval_width_term(value_term, self.width_vals)?;
                        let modulus = 1i128 << width;
                        Ok(FixedTerm::Const(BvValue::new(
                            width,
                            value.rem_euclid(modulus) as u128,
                        )))
                    }
                }
            }
            TermNode::Unop(op, a) => Ok(FixedTerm::Unop(*op, Box::new(self.term(a)?))),
            TermNode::Binop(op, a, b) => Ok(FixedTerm::Binop(
                *op,
                Box::new(self.term(a)?),
                Box::new(self.term(b)?),
            )),
            TermNode::Extract { hi, lo, arg } => Ok(FixedTerm::Extract {
                hi: *hi,
                lo: *lo,
                arg: Box::new(self.term(arg)?),
            }),
        }
    }

    fn formula(&self, f: &ParamFormula) -> Result<FixedFormula, OracleError> {
        Ok(match f.node() {
            FormulaNode::True => FixedFormula::True,
            FormulaNode::False => FixedFormula::False,
            FormulaNode::Eq(a, b) => FixedFormula::Eq(self.term(a)?, self.term(b)?),
            FormulaNode::Ne(a, b) => FixedFormula::Ne(self.term(a)?, self.term(b)?),
            FormulaNode::Rel(r, a, b) => FixedFormula::Rel(*r, self.term(a)?, self.term(b)?),
            FormulaNode::Not(g) => FixedFormula::Not(Box::new(self.formula(g)?)),
            FormulaNode::And(a, b) => {
                FixedFormula::And(Box::new(self.formula(a)?), Box::new(self.formula(b)?))
            }
            FormulaNode::Or(a, b) => {
                FixedFormula::Or(Box::new(self.formula(a)?), Box::new(self.formula(b)?))
            }
            FormulaNode::Implies(a, b) => {
                FixedFormula::Implies(Box::new(self.formula(a)?), Box::new(self.formula(b)?))
            }
            FormulaNode::Iff(a, b) => {
                FixedFormula::Iff(Box::new(self.formula(a)?), Box::new(self.formula(b)?))
            }
            FormulaNode::Forall(vars, g) => {
                let binder = self.binder(vars)?;
                FixedFormula::Forall(binder, Box::new(self.formula(g)?))
            }
            FormulaNode::Exists(vars, g) => {
                let binder = self.binder(vars)?;
                FixedFormula::Exists(binder, Box::new(self.formula(g)?))
            }
        })
    }

    fn binder(&self, vars: &[crate::ast::BvSymbol]) -> Result<Vec<(String, u32)>, OracleError> {
        vars.iter()
            .map(|v| Ok((v.name.clone(), self.concrete_width(&v.name)?)))
            .collect()
    }
}

/// Replaces every symbol by a fixed-width variable or constant under the
/// given width-variable valuation.
pub fn instantiate(
    formula: &ParamFormula,
    omega: &WidthMap,
    width_vals: &BTreeMap<String, u32>,
) -> Result<FixedFormula, OracleError> {
    let inst = Instantiator { omega, width_vals };
    inst.formula(formula)
}

/// Term-level instantiation.
pub fn instantiate_term(
    term: &ParamTerm,
    omega: &WidthMap,
    width_vals: &BTreeMap<String, u32>,
) -> Result<FixedTerm, OracleError> {
    let inst = Instantiator { omega, width_vals };
    inst.term(term)
}

/// Do the recorded width assumptions hold under this valuation? Valuations
/// violating them are outside the instantiation domain.
pub fn assumptions_hold(
    omega: &WidthMap,
    width_vals: &BTreeMap<String, u32>,
) -> Result<bool, OracleError> {
    for assumption in &omega.assumptions {
        if !eval_assumption(assumption, width_vals)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn eval_assumption(
    f: &IntFormula,
    width_vals: &BTreeMap<String, u32>,
) -> Result<bool, OracleError> {
    match f.node() {
        IntFormulaNode::True => Ok(true),
        IntFormulaNode::False => Ok(false),
        IntFormulaNode::And(a, b) => {
            Ok(eval_assumption(a, width_vals)? && eval_assumption(b, width_vals)?)
        }
        IntFormulaNode::Cmp(rel, a, b) => {
            let x = eval_width_term(a, width_vals)?;
            let y = eval_width_term(b, width_vals)?;
            Ok(match rel {
                IntRel::Eq => x == y,
                IntRel::Ne => x != y,
                IntRel::Lt => x < y,
                IntRel::Le => x <= y,
                IntRel::Gt => x > y,
                IntRel::Ge => x >= y,
            })
        }
        _ => Err(OracleError::UnsupportedRangeTerm(f.to_string())),
    }
}

// ---------------------------------------------------------------------------
// Standard fixed-size type checking (used to cross-check the sort checker)
// ---------------------------------------------------------------------------

pub fn typecheck_term(t: &FixedTerm) -> Result<u32, String> {
    match t {
        FixedTerm::Const(v) => Ok(v.width()),
        FixedTerm::Var { width, .. } => Ok(*width),
        FixedTerm::Unop(_, a) => typecheck_term(a),
        FixedTerm::Binop(op, a, b) => {
            let wa = typecheck_term(a)?;
            let wb = typecheck_term(b)?;
            if *op == BvBinop::Concat {
                Ok(wa + wb)
            } else if wa == wb {
                Ok(wa)
            } else {
                Err(format!("operand widths {wa} and {wb} differ"))
            }
        }
        FixedTerm::Extract { hi, lo, arg } => {
            let w = typecheck_term(arg)?;
            if *hi >= w {
                Err(format!("extract bound {hi} out of range for width {w}"))
            } else {
                Ok(hi - lo + 1)
            }
        }
    }
}

pub fn typecheck_formula(f: &FixedFormula) -> Result<(), String> {
    match f {
        FixedFormula::True | FixedFormula::False => Ok(()),
        FixedFormula::Eq(a, b) | FixedFormula::Ne(a, b) | FixedFormula::Rel(_, a, b) => {
            let wa = typecheck_term(a)?;
            let wb = typecheck_term(b)?;
            if wa == wb {
                Ok(())
            } else {
                Err(format!("compared widths {wa} and {wb} differ"))
            }
        }
        FixedFormula::Not(g) => typecheck_formula(g),
        FixedFormula::And(a, b)
        | FixedFormula::Or(a, b)
        | FixedFormula::Implies(a, b)
        | FixedFormula::Iff(a, b) => {
            typecheck_formula(a)?;
            typecheck_formula(b)
        }
        FixedFormula::Forall(_, g) | FixedFormula::Exists(_, g) => typecheck_formula(g),
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

const QUANTIFIER_POINTS_CAP: u128 = 1 << 16;

/// Word-level evaluation of a fixed term.
pub fn eval_term(t: &FixedTerm, vals: &BTreeMap<String, u128>) -> Result<BvValue, OracleError> {
    match t {
        FixedTerm::Const(v) => Ok(*v),
        FixedTerm::Var { name, width } => {
            let nat = vals
                .get(name)
                .copied()
                .ok_or_else(|| OracleError::UnboundVariable(name.clone()))?;
            Ok(BvValue::new(*width, nat))
        }
        FixedTerm::Unop(op, a) => Ok(BvValue::unop(*op, eval_term(a, vals)?)),
        FixedTerm::Binop(op, a, b) => Ok(BvValue::binop(
            *op,
            eval_term(a, vals)?,
            eval_term(b, vals)?,
        )),
        FixedTerm::Extract { hi, lo, arg } => Ok(BvValue::extract(*hi, *lo, eval_term(arg, vals)?)),
    }
}

/// Word-level evaluation of a fixed formula; bounded quantifiers are
/// enumerated.
pub fn eval_formula(f: &FixedFormula, vals: &BTreeMap<String, u128>) -> Result<bool, OracleError> {
    match f {
        FixedFormula::True => Ok(true),
        FixedFormula::False => Ok(false),
        FixedFormula::Eq(a, b) => Ok(eval_term(a, vals)? == eval_term(b, vals)?),
        FixedFormula::Ne(a, b) => Ok(eval_term(a, vals)? != eval_term(b, vals)?),
        FixedFormula::Rel(r, a, b) => {
            Ok(BvValue::rel(*r, eval_term(a, vals)?, eval_term(b, vals)?))
        }
        FixedFormula::Not(g) => Ok(!eval_formula(g, vals)?),
        FixedFormula::And(a, b) => Ok(eval_formula(a, vals)? && eval_formula(b, vals)?),
        FixedFormula::Or(a, b) => Ok(eval_formula(a, vals)? || eval_formula(b, vals)?),
        FixedFormula::Implies(a, b) => Ok(!eval_formula(a, vals)? || eval_formula(b, vals)?),
        FixedFormula::Iff(a, b) => Ok(eval_formula(a, vals)? == eval_formula(b, vals)?),
        FixedFormula::Forall(binder, g) => {
            enumerate(binder, vals, &mut |vals| eval_formula(g, vals), true)
        }
        FixedFormula::Exists(binder, g) => {
            enumerate(binder, vals, &mut |vals| eval_formula(g, vals), false)
        }
    }
}

fn enumerate(
    binder: &[(String, u32)],
    vals: &BTreeMap<String, u128>,
    eval: &mut dyn FnMut(&BTreeMap<String, u128>) -> Result<bool, OracleError>,
    universal: bool,
) -> Result<bool, OracleError> {
    let mut points: u128 = 1;
    for (_, w) in binder {
        points = points
            .checked_mul(1u128 << w)
            .ok_or(OracleError::DomainTooLarge(u128::MAX))?;
        if points > QUANTIFIER_POINTS_CAP {
            return Err(OracleError::DomainTooLarge(points));
        }
    }
    let mut scratch = vals.clone();
    let mut counters = vec![0u128; binder.len()];
    loop {
        for (i, (name, _)) in binder.iter().enumerate() {
            scratch.insert(name.clone(), counters[i]);
        }
        let verdict = eval(&scratch)?;
        if universal && !verdict {
            return Ok(false);
        }
        if !universal && verdict {
            return Ok(true);
        }
        // Odometer step.
        let mut i = 0;
        loop {
            if i == binder.len() {
                return Ok(universal);
            }
            counters[i] += 1;
            if counters[i] < (1u128 << binder[i].1) {
                break;
            }
            counters[i] = 0;
            i += 1;
        }
    }
}

/// Bit-array evaluation of a fixed term (the independent cross-check).
pub fn eval_term_bits(t: &FixedTerm, vals: &BTreeMap<String, u128>) -> Result<Bits, OracleError> {
    match t {
        FixedTerm::Const(v) => Ok(Bits::from_value(*v)),
        FixedTerm::Var { name, width } => {
            let nat = vals
                .get(name)
                .copied()
                .ok_or_else(|| OracleError::UnboundVariable(name.clone()))?;
            Ok(Bits::from_value(BvValue::new(*width, nat)))
        }
        FixedTerm::Unop(op, a) => Ok(Bits::unop(*op, &eval_term_bits(a, vals)?)),
        FixedTerm::Binop(op, a, b) => Ok(Bits::binop(
            *op,
            &eval_term_bits(a, vals)?,
            &eval_term_bits(b, vals)?,
        )),
        FixedTerm::Extract { hi, lo, arg } => {
            Ok(Bits::extract(*hi, *lo, &eval_term_bits(arg, vals)?))
        }
    }
}

/// The free variables of a fixed formula together with their widths.
pub fn free_fixed_vars(f: &FixedFormula) -> BTreeMap<String, u32> {
    fn term(t: &FixedTerm, bound: &mut Vec<String>, out: &mut BTreeMap<String, u32>) {
        match t {
            FixedTerm::Const(_) => {}
            FixedTerm::Var { name, width } => {
                if !bound.contains(name) {
                    out.insert(name.clone(), *width);
                }
            }
            FixedTerm::Unop(_, a) => term(a, bound, out),
            FixedTerm::Binop(_, a, b) => {
                term(a, bound, out);
                term(b, bound, out);
            }
            FixedTerm::Extract { arg, .. } => term(arg, bound, out),
        }
    }
    fn go(f: &FixedFormula, bound: &mut Vec<String>, out: &mut BTreeMap<String, u32>) {
        match f {
            FixedFormula::True | FixedFormula::False => {}
            FixedFormula::Eq(a, b) | FixedFormula::Ne(a, b) | FixedFormula::Rel(_, a, b) => {
                term(a, bound, out);
                term(b, bound, out);
            }
            FixedFormula::Not(g) => go(g, bound, out),
            FixedFormula::And(a, b)
            | FixedFormula::Or(a, b)
            | FixedFormula::Implies(a, b)
            | FixedFormula::Iff(a, b) => {
                go(a, bound, out);
                go(b, bound, out);
            }
            FixedFormula::Forall(binder, g) | FixedFormula::Exists(binder, g) => {
                let n = bound.len();
                bound.extend(binder.iter().map(|(v, _)| v.clone()));
                go(g, bound, out);
                bound.truncate(n);
            }
        }
    }
    let mut out = BTreeMap::new();
    go(f, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse_pbv;

    fn example1() -> (ParamFormula, WidthMap) {
        parse_pbv(
            "(declare-width a)\n(declare-pbv x :bits a)\n\
             (declare-pbv z0 :bits a :value 0)\n(declare-pbv z1 :bits a :value 1)\n\
             (assert (distinct (bvadd (bvadd x x) z1) z0))",
        )
        .unwrap()
    }

    #[test]
    fn example1_at_width_3() {
        let (f, omega) = example1();
        let widths: BTreeMap<String, u32> = [("a".to_string(), 3)].into();
        let fixed = instantiate(&f, &omega, &widths).unwrap();
        typecheck_formula(&fixed).unwrap();
        // 2x + 1 is odd, hence never 0 mod 8.
        for x in 0..8u128 {
            let vals: BTreeMap<String, u128> = [("x".to_string(), x)].into();
            assert!(eval_formula(&fixed, &vals).unwrap());
        }
    }

    #[test]
    fn symbolic_constant_value_is_evaluated() {
        let (_, omega) = parse_pbv(
            "(declare-width w) (declare-pbv z :bits w :value (- (pow2 w) 1)) (assert true)",
        )
        .unwrap();
        let widths: BTreeMap<String, u32> = [("w".to_string(), 4)].into();
        let z = instantiate_term(
            &ParamTerm::symbol(crate::ast::BvSymbol::sym_const("z")),
            &omega,
            &widths,
        )
        .unwrap();
        assert_eq!(z, FixedTerm::Const(BvValue::new(4, 15)));
    }

    #[test]
    fn zero_width_is_rejected() {
        let (_, omega) = parse_pbv(
            "(declare-width a1) (declare-width a2) (declare-pbv x :bits (- a1 a2)) (assert true)",
        )
        .unwrap();
        let widths: BTreeMap<String, u32> = [("a1".to_string(), 2), ("a2".to_string(), 2)].into();
        let err = instantiate_term(
            &ParamTerm::symbol(crate::ast::BvSymbol::var("x")),
            &omega,
            &widths,
        )
        .unwrap_err();
        assert!(
            matches!(err, OracleError::NonPositiveWidth { value: 0, .. }),
            "{err}"
        );
    }

    #[test]
    fn quantifier_enumeration() {
        let text = "\
(declare-width k)
(declare-pbv x :bits k)
(declare-pbv s :bits k)
(assert (exists (x) (= (bvand x s) s)))
";
        let (f, omega) = parse_pbv(text).unwrap();
        let widths: BTreeMap<String, u32> = [("k".to_string(), 3)].into();
        let fixed = instantiate(&f, &omega, &widths).unwrap();
        for s in 0..8u128 {
            let vals: BTreeMap<String, u128> = [("s".to_string(), s)].into();
            assert!(
                eval_formula(&fixed, &vals).unwrap(),
                "x = s is always a witness"
            );
        }
    }
}
