//! Lifting fixed-width SMT-LIB 2 problems to parametric bit-width.
//!
//! Every bit-vector variable becomes a fresh parametric variable of width
//! `k`, and every constant becomes a fresh symbolic constant whose value
//! generalizes the concrete one: `0`, `1`, all-ones (`pow2(k)-1`), signed
//! min (`pow2(k-1)`), signed max (`pow2(k-1)-1`), or the bit-width itself
//! (`k`). Any other constant is width-dependent in an unrecognized way and
//! aborts the lift. Inputs mixing several bit-widths are rejected, except
//! that width-1 terms may be kept at concrete width 1 when the caller opts
//! in (such terms act as Booleans).

use crate::ast::{
    read_sexps, BvBinop, BvRel, BvSymbol, IntTerm, ParamFormula, ParamTerm, SExp, WidthMap,
};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LiftError {
    #[error("{0}")]
    Syntax(String),
    #[error("multiple bit-widths in use: {0} and {1}")]
    MultiWidth(u32, u32),
    #[error("constant {value} of width {width} is not in the recognized set")]
    UnrecognizedConstant { value: u128, width: u32 },
    #[error("unsupported operator `{0}`")]
    UnsupportedOperator(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LiftOptions {
    /// Keep width-1 terms at concrete width 1 instead of rejecting a second
    /// width (the Boolean reading of 1-bit terms).
    pub allow_width1: bool,
}

struct Lifter {
    opts: LiftOptions,
    omega: WidthMap,
    /// The single lifted width, once seen.
    main_width: Option<u32>,
    vars: BTreeMap<String, u32>,
    const_count: usize,
}

impl Lifter {
    fn width_term(&self, width: u32) -> IntTerm {
        if self.opts.allow_width1 && width == 1 && self.main_width != Some(1) {
            IntTerm::num(1)
        } else {
            IntTerm::var("k")
        }
    }

    fn note_width(&mut self, width: u32) -> Result<(), LiftError> {
        if self.opts.allow_width1 && width == 1 {
            return Ok(());
        }
        match self.main_width {
            None => {
                self.main_width = Some(width);
                Ok(())
            }
            Some(w) if w == width => Ok(()),
            Some(w) => Err(LiftError::MultiWidth(w, width)),
        }
    }

    /// The generalized value of a constant, or an error if the constant is
    /// width-dependent in an unrecognized way. Recognition order: 0, 1,
    /// all-ones, signed min, signed max, then the bit-width itself.
    fn lift_constant(&mut self, value: u128, width: u32) -> Result<ParamTerm, LiftError> {
        self.note_width(width)?;
        let k = IntTerm::var("k");
        let keep_concrete = self.opts.allow_width1 && width == 1 && self.main_width != Some(1);
        let k1 = IntTerm::sub(k.clone(), IntTerm::num(1));
        let generalized = if keep_concrete {
            IntTerm::num(value as i128)
        } else if value == 0 {
            IntTerm::num(0)
        } else if value == 1 {
            IntTerm::num(1)
        } else if width < 64 && value == (1u128 << width) - 1
            || width == 64 && value == u64::MAX as u128
        {
            IntTerm::sub(IntTerm::pow2(k.clone()), IntTerm::num(1))
        } else if value == 1u128 << (width - 1) {
            IntTerm::pow2(k1)
        } else if value == (1u128 << (width - 1)) - 1 {
            IntTerm::sub(IntTerm::pow2(k1), IntTerm::num(1))
        } else if value == u128::from(width) {
            k.clone()
        } else {
            return Err(LiftError::UnrecognizedConstant { value, width });
        };
        self.const_count += 1;
        let name = format!("c{}", self.const_count);
        let width_term = self.width_term(width);
        let sym = self.omega.declare_const(name, width_term, generalized);
        Ok(ParamTerm::symbol(sym))
    }

    fn declare(&mut self, name: &str, width: u32) -> Result<(), LiftError> {
        self.note_width(width)?;
        if self.vars.contains_key(name) {
            return Err(LiftError::Syntax(format!(
                "duplicate declaration of `{name}`"
            )));
        }
        self.vars.insert(name.to_string(), width);
        let width_term = self.width_term(width);
        self.omega.declare_var(name, width_term);
        Ok(())
    }

    fn term(&mut self, sexp: &SExp) -> Result<(ParamTerm, u32), LiftError> {
        match sexp {
            SExp::Atom(a, _) => {
                if let Some(rest) = a.strip_prefix("#b") {
                    let width = rest.len() as u32;
                    let value = u128::from_str_radix(rest, 2)
                        .map_err(|_| LiftError::Syntax(format!("bad literal `{a}`")))?;
                    return Ok((self.lift_constant(value, width)?, width));
                }
                if let Some(rest) = a.strip_prefix("#x") {
                    let width = 4 * rest.len() as u32;
                    let value = u128::from_str_radix(rest, 16)
                        .map_err(|_| LiftError::Syntax(format!("bad literal `{a}`")))?;
                    return Ok((self.lift_constant(value, width)?, width));
                }
                match self.vars.get(a) {
                    Some(width) => Ok((ParamTerm::symbol(BvSymbol::var(a.clone())), *width)),
                    None => Err(LiftError::UnknownSymbol(a.clone())),
                }
            }
            SExp::List(items, _) => {
                // (_ bvN w)
                if items.len() == 3 && items[0].as_atom() == Some("_") {
                    if let (Some(bv), Some(w)) = (items[1].as_atom(), items[2].as_atom()) {
                        if let Some(num) = bv.strip_prefix("bv") {
                            let value = num
                                .parse::<u128>()
                                .map_err(|_| LiftError::Syntax(format!("bad literal `{bv}`")))?;
                            let width = w
                                .parse::<u32>()
                                .map_err(|_| LiftError::Syntax(format!("bad width `{w}`")))?;
                            let masked = if width >= 128 {
                                value
                            } else {
                                value & ((1u128 << width) - 1)
                            };
                            return Ok((self.lift_constant(masked, width)?, width));
                        }
                    }
                }
                let head = items
                    .first()
                    .and_then(SExp::as_atom)
                    .ok_or_else(|| LiftError::Syntax("expected an operator".to_string()))?
                    .to_string();
                let mut args = Vec::new();
                for item in &items[1..] {
                    args.push(self.term(item)?);
                }
                let width = args
                    .first()
                    .map(|(_, w)| *w)
                    .ok_or_else(|| LiftError::Syntax(format!("`{head}` needs arguments")))?;
                match head.as_str() {
                    "bvnot" | "bvneg" => {
                        if args.len() != 1 {
                            return Err(LiftError::Syntax(format!("`{head}` is unary")));
                        }
                        let (a, w) = args.into_iter().next().unwrap();
                        let t = if head == "bvnot" {
                            ParamTerm::not(a)
                        } else {
                            ParamTerm::neg(a)
                        };
                        Ok((t, w))
                    }
                    "bvsub" => {
                        if args.len() != 2 {
                            return Err(LiftError::Syntax("`bvsub` is binary".to_string()));
                        }
                        let mut it = args.into_iter();
                        let (a, w) = it.next().unwrap();
                        let (b, _) = it.next().unwrap();
                        Ok((ParamTerm::sub(a, b), w))
                    }
                    _ => {
                        let op = BvBinop::ALL
                            .iter()
                            .find(|op| op.smtlib_name() == head && **op != BvBinop::Concat)
                            .copied()
                            .ok_or_else(|| LiftError::UnsupportedOperator(head.clone()))?;
                        if args.len() != 2 {
                            return Err(LiftError::Syntax(format!("`{head}` is binary")));
                        }
                        let mut it = args.into_iter();
                        let (a, _) = it.next().unwrap();
                        let (b, _) = it.next().unwrap();
                        Ok((ParamTerm::binop(op, a, b), width))
                    }
                }
            }
        }
    }

    fn formula(&mut self, sexp: &SExp) -> Result<ParamFormula, LiftError> {
        match sexp {
            SExp::Atom(a, _) => match a.as_str() {
                "true" => Ok(ParamFormula::tru()),
                "false" => Ok(ParamFormula::fls()),
                other => Err(LiftError::Syntax(format!("`{other}` is not a formula"))),
            },
            SExp::List(items, _) => {
                let head = items
                    .first()
                    .and_then(SExp::as_atom)
                    .ok_or_else(|| LiftError::Syntax("expected a connective".to_string()))?
                    .to_string();
                match head.as_str() {
                    "=" | "distinct" => {
                        if items.len() != 3 {
                            return Err(LiftError::Syntax(format!("`{head}` is binary")));
                        }
                        let (a, _) = self.term(&items[1])?;
                        let (b, _) = self.term(&items[2])?;
                        Ok(if head == "=" {
                            ParamFormula::eq(a, b)
                        } else {
                            ParamFormula::ne(a, b)
                        })
                    }
                    "not" => {
                        if items.len() != 2 {
                            return Err(LiftError::Syntax("`not` is unary".to_string()));
                        }
                        Ok(ParamFormula::not(self.formula(&items[1])?))
                    }
                    "and" | "or" => {
                        let parts: Vec<ParamFormula> = items[1..]
                            .iter()
                            .map(|e| self.formula(e))
                            .collect::<Result<_, _>>()?;
                        if parts.len() < 2 {
                            return Err(LiftError::Syntax(format!("`{head}` needs 2+ arguments")));
                        }
                        let mut it = parts.into_iter();
                        let first = it.next().unwrap();
                        Ok(if head == "and" {
                            it.fold(first, ParamFormula::and)
                        } else {
                            it.fold(first, ParamFormula::or)
                        })
                    }
                    "=>" => {
                        let parts: Vec<ParamFormula> = items[1..]
                            .iter()
                            .map(|e| self.formula(e))
                            .collect::<Result<_, _>>()?;
                        if parts.len() < 2 {
                            return Err(LiftError::Syntax("`=>` needs 2+ arguments".to_string()));
                        }
                        let mut it = parts.into_iter().rev();
                        let last = it.next().unwrap();
                        Ok(it.fold(last, |acc, f| ParamFormula::implies(f, acc)))
                    }
                    "forall" | "exists" => {
                        if items.len() != 3 {
                            return Err(LiftError::Syntax(format!(
                                "`{head}` expects binders and a body"
                            )));
                        }
                        let binders = items[1]
                            .as_list()
                            .ok_or_else(|| LiftError::Syntax("expected binders".to_string()))?;
                        let mut vars = Vec::new();
                        for b in binders {
                            let pair = b.as_list().ok_or_else(|| {
                                LiftError::Syntax("expected (v sort)".to_string())
                            })?;
                            if pair.len() != 2 {
                                return Err(LiftError::Syntax("expected (v sort)".to_string()));
                            }
                            let name = pair[0]
                                .as_atom()
                                .ok_or_else(|| LiftError::Syntax("expected a name".to_string()))?;
                            let width = parse_bv_sort(&pair[1])?;
                            self.declare(name, width)?;
                            vars.push(BvSymbol::var(name));
                        }
                        let body = self.formula(&items[2])?;
                        Ok(if head == "forall" {
                            ParamFormula::forall(vars, body)
                        } else {
                            ParamFormula::exists(vars, body)
                        })
                    }
                    _ => {
                        let rel = BvRel::ALL
                            .iter()
                            .find(|r| r.smtlib_name() == head)
                            .copied()
                            .ok_or_else(|| LiftError::UnsupportedOperator(head.clone()))?;
                        if items.len() != 3 {
                            return Err(LiftError::Syntax(format!("`{head}` is binary")));
                        }
                        let (a, _) = self.term(&items[1])?;
                        let (b, _) = self.term(&items[2])?;
                        Ok(ParamFormula::rel(rel, a, b))
                    }
                }
            }
        }
    }
}

fn parse_bv_sort(sexp: &SExp) -> Result<u32, LiftError> {
    let items = sexp
        .as_list()
        .ok_or_else(|| LiftError::Syntax(format!("expected a bit-vector sort, got {sexp:?}")))?;
    if items.len() == 3 && items[0].as_atom() == Some("_") && items[1].as_atom() == Some("BitVec") {
        if let Some(w) = items[2].as_atom().and_then(|a| a.parse::<u32>().ok()) {
            if (1..=64).contains(&w) {
                return Ok(w);
            }
        }
    }
    Err(LiftError::Syntax(
        "expected (_ BitVec n) with n in 1..=64".to_string(),
    ))
}

/// Lifts a fixed-width SMT-LIB 2 problem (single bit-width, operators from
/// the supported set) to a parametric formula over a fresh width variable
/// `k`. Returns the formula, the width map, and the original width.
pub fn lift_qfbv(
    text: &str,
    opts: LiftOptions,
) -> Result<(ParamFormula, WidthMap, u32), LiftError> {
    let sexps = read_sexps(text).map_err(|e| LiftError::Syntax(e.to_string()))?;
    let mut lifter = Lifter {
        opts,
        omega: WidthMap::new(),
        main_width: None,
        vars: BTreeMap::new(),
        const_count: 0,
    };
    let mut asserts = Vec::new();
    for sexp in &sexps {
        let items = sexp
            .as_list()
            .ok_or_else(|| LiftError::Syntax("expected a command".to_string()))?;
        let head = items
            .first()
            .and_then(SExp::as_atom)
            .ok_or_else(|| LiftError::Syntax("expected a command name".to_string()))?;
        match head {
            "set-logic" | "set-info" | "set-option" | "check-sat" | "exit" => {}
            "declare-const" => {
                if items.len() != 3 {
                    return Err(LiftError::Syntax(
                        "`declare-const` expects name sort".into(),
                    ));
                }
                let name = items[1]
                    .as_atom()
                    .ok_or_else(|| LiftError::Syntax("expected a name".to_string()))?;
                let width = parse_bv_sort(&items[2])?;
                lifter.declare(name, width)?;
            }
            "declare-fun" => {
                if items.len() != 4 || items[2].as_list().map(|l| l.len()) != Some(0) {
                    return Err(LiftError::Syntax(
                        "only nullary `declare-fun` is supported".to_string(),
                    ));
                }
                let name = items[1]
                    .as_atom()
                    .ok_or_else(|| LiftError::Syntax("expected a name".to_string()))?;
                let width = parse_bv_sort(&items[3])?;
                lifter.declare(name, width)?;
            }
            "assert" => {
                if items.len() != 2 {
                    return Err(LiftError::Syntax(
                        "`assert` expects one formula".to_string(),
                    ));
                }
                asserts.push(lifter.formula(&items[1])?);
            }
            other => return Err(LiftError::Syntax(format!("unknown command `{other}`"))),
        }
    }
    let formula = match asserts.len() {
        0 => ParamFormula::tru(),
        _ => {
            let mut it = asserts.into_iter();
            let first = it.next().unwrap();
            it.fold(first, ParamFormula::and)
        }
    };
    let width = lifter.main_width.unwrap_or(1);
    Ok((formula, lifter.omega, width))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use std::collections::BTreeMap;

    #[test]
    fn transitivity_shape_lifts() {
        // (a <s C1 and a <s C2) => a <s C1 with recognizable constants.
        let text = "\
(declare-const a (_ BitVec 4))
(assert (=> (and (bvslt a #x1) (bvslt a #x7)) (bvslt a #x1)))
";
        let (f, omega, width) = lift_qfbv(text, LiftOptions::default()).unwrap();
        assert_eq!(width, 4);
        assert_eq!(omega.width_of("a"), Some(&IntTerm::var("k")));
        // #x7 at width 4 is the signed maximum and generalizes to pow2(k-1)-1.
        assert_eq!(
            omega.value_of("c2").unwrap().to_string(),
            "(- (pow2 (- k 1)) 1)"
        );
        assert!(f.to_string().contains("bvslt"));
    }

    #[test]
    fn mixed_widths_are_rejected() {
        let text = "\
(declare-const a (_ BitVec 8))
(declare-const b (_ BitVec 16))
(assert (= a a))
(assert (= b b))
";
        let err = lift_qfbv(text, LiftOptions::default()).unwrap_err();
        assert!(matches!(err, LiftError::MultiWidth(8, 16)), "{err}");
    }

    #[test]
    fn all_ones_is_recognized() {
        let text = "\
(declare-const a (_ BitVec 4))
(assert (= a #xf))
";
        let (_, omega, _) = lift_qfbv(text, LiftOptions::default()).unwrap();
        assert_eq!(omega.value_of("c1").unwrap().to_string(), "(- (pow2 k) 1)");
    }

    #[test]
    fn unrecognized_constant_aborts() {
        let text = "\
(declare-const a (_ BitVec 4))
(assert (= a #x5))
";
        let err = lift_qfbv(text, LiftOptions::default()).unwrap_err();
        assert!(
            matches!(err, LiftError::UnrecognizedConstant { value: 5, width: 4 }),
            "{err}"
        );
    }

    #[test]
    fn width1_terms_keep_concrete_width_when_allowed() {
        let text = "\
(declare-const a (_ BitVec 8))
(declare-const flag (_ BitVec 1))
(assert (and (= a a) (= flag #b1)))
";
        assert!(lift_qfbv(text, LiftOptions::default()).is_err());
        let (_, omega, width) = lift_qfbv(text, LiftOptions { allow_width1: true }).unwrap();
        assert_eq!(width, 8);
        assert_eq!(omega.width_of("flag"), Some(&IntTerm::num(1)));
        assert_eq!(omega.width_of("a"), Some(&IntTerm::var("k")));
    }

    #[test]
    fn lift_then_instantiate_reproduces_the_input() {
        let text = "\
(declare-const a (_ BitVec 3))
(declare-const b (_ BitVec 3))
(assert (= (bvadd a b) (bvadd b a)))
";
        let (f, omega, width) = lift_qfbv(text, LiftOptions::default()).unwrap();
        let widths: BTreeMap<String, u32> = [("k".to_string(), width)].into();
        let fixed = oracle::instantiate(&f, &omega, &widths).unwrap();
        for a in 0..8u128 {
            for b in 0..8u128 {
                let vals: BTreeMap<String, u128> =
                    [("a".to_string(), a), ("b".to_string(), b)].into();
                assert!(oracle::eval_formula(&fixed, &vals).unwrap());
            }
        }
    }
}
