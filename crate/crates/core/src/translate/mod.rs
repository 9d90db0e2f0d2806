//! The translation from parametric bit-vector formulas to integer formulas
//! with the uninterpreted symbols `pow2`, `intand`, `intor`, `intxor`.
//!
//! The result delivered to solvers is `prelude => body`, where the prelude
//! constrains every integer variable to the range of its bit-width, asserts
//! positivity of the width variables, and conjoins the axiom blocks of the
//! selected mode.

mod axioms;
mod smt;

pub use axioms::{all_axioms, axioms, DomainHint, NamedAxiom, UfSym};
pub use smt::{to_smtlib, AssertStyle};

use crate::ast::{
    AxiomMode, BvRel, BvUfOp, BvUnop, FormulaNode, IntFormula, IntNode, IntTerm, ParamFormula,
    ParamTerm, SymbolKind, TermNode, VarMap, WidthMap,
};
use crate::sortcheck::{self, SortError, WidthAnnotation};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TranslateError {
    #[error(transparent)]
    Sort(#[from] SortError),
    #[error("formula contains extract; run extract elimination first")]
    ExtractPresent,
    #[error("symbol `{name}` has no width map entry (sortcheck bypass)")]
    UnhousedSymbol { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranslateOptions {
    pub mode: AxiomMode,
    /// Reproduce the verbatim urem-by-zero branch `pow2(k)-1` instead of the
    /// SMT-LIB value `x`.
    pub fig1_urem: bool,
}

impl TranslateOptions {
    pub fn new(mode: AxiomMode) -> Self {
        TranslateOptions {
            mode,
            fig1_urem: false,
        }
    }
}

impl Default for TranslateOptions {
    fn default() -> Self {
        TranslateOptions::new(AxiomMode::Combined)
    }
}

/// The output of [`translate`].
#[derive(Debug, Clone)]
pub struct TranslationResult {
    pub prelude: IntFormula,
    pub body: IntFormula,
    pub var_map: VarMap,
    pub mode: AxiomMode,
    pub used_ufs: BTreeSet<UfSym>,
}

impl TranslationResult {
    /// The formula whose validity coincides with validity of the input.
    pub fn implication(&self) -> IntFormula {
        IntFormula::implies(self.prelude.clone(), self.body.clone())
    }
}

// ---------------------------------------------------------------------------
// Folding constructors
//
// The only simplification applied by the translation: numeral arithmetic,
// the 0-identities of + and *, `c mod pow2(w) -> c` for c in {0, 1} (the
// width is positive by admissibility), and absorption of an inner
// `_ mod pow2(k)` on the additive spine of an outer `mod pow2(k)`.
// ---------------------------------------------------------------------------

fn fadd(a: IntTerm, b: IntTerm) -> IntTerm {
    match (a.as_num(), b.as_num()) {
        (Some(x), Some(y)) => IntTerm::num(x + y),
        (Some(0), None) => b,
        (None, Some(0)) => a,
        _ => IntTerm::add(a, b),
    }
}

fn fsub(a: IntTerm, b: IntTerm) -> IntTerm {
    match (a.as_num(), b.as_num()) {
        (Some(x), Some(y)) => IntTerm::num(x - y),
        (None, Some(0)) => a,
        _ => IntTerm::sub(a, b),
    }
}

fn fmul(a: IntTerm, b: IntTerm) -> IntTerm {
    match (a.as_num(), b.as_num()) {
        (Some(x), Some(y)) => IntTerm::num(x * y),
        (Some(0), None) | (None, Some(0)) => IntTerm::num(0),
        _ => IntTerm::mul(a, b),
    }
}

fn fdiv(a: IntTerm, b: IntTerm) -> IntTerm {
    match (a.as_num(), b.as_num()) {
        (Some(x), Some(y)) if y != 0 => IntTerm::num(x.div_euclid(y)),
        _ => IntTerm::div(a, b),
    }
}

fn fpow2(a: IntTerm) -> IntTerm {
    match a.as_num() {
        Some(n) if (0..=62).contains(&n) => IntTerm::num(1i128 << n),
        _ => IntTerm::pow2(a),
    }
}

/// Drops `mod m` subterms on the additive spine of `t`; sound when the
/// result is reduced `mod m` again.
fn strip_congruent_mod(t: &IntTerm, m: &IntTerm) -> IntTerm {
    match t.node() {
        IntNode::Add(a, b) => IntTerm::add(strip_congruent_mod(a, m), strip_congruent_mod(b, m)),
        IntNode::Sub(a, b) => IntTerm::sub(strip_congruent_mod(a, m), strip_congruent_mod(b, m)),
        IntNode::Mod(inner, m2) if m2 == m => strip_congruent_mod(inner, m),
        _ => t.clone(),
    }
}

fn fmod(a: IntTerm, b: IntTerm) -> IntTerm {
    if let (Some(x), Some(y)) = (a.as_num(), b.as_num()) {
        if y != 0 {
            return IntTerm::num(x.rem_euclid(y));
        }
    }
    // Elimination only ever reduces by pow2 of a width, either symbolic
    // (a Pow2 node) or already folded to a positive numeral.
    let modulus_known_positive =
        matches!(b.node(), IntNode::Pow2(_)) || b.as_num().is_some_and(|m| m >= 1);
    if modulus_known_positive {
        if let Some(c) = a.as_num() {
            if (c == 0 || c == 1) && matches!(b.node(), IntNode::Pow2(_)) {
                return a;
            }
        }
        let stripped = strip_congruent_mod(&a, &b);
        return IntTerm::modulo(stripped, b);
    }
    IntTerm::modulo(a, b)
}

/// `uts(k, x) = 2 * (x mod pow2(k - 1)) - x`, the signed reinterpretation of
/// an unsigned encoding.
pub fn uts(k: &IntTerm, x: IntTerm) -> IntTerm {
    fsub(
        fmul(
            IntTerm::num(2),
            fmod(x.clone(), fpow2(fsub(k.clone(), IntTerm::num(1)))),
        ),
        x,
    )
}

// ---------------------------------------------------------------------------
// Elim
// ---------------------------------------------------------------------------

fn elim_app(op: BvUfOp, k: &IntTerm, args: &[IntTerm], fig1_urem: bool) -> IntTerm {
    let pk = || fpow2(k.clone());
    match op {
        BvUfOp::Add => fmod(fadd(args[0].clone(), args[1].clone()), pk()),
        BvUfOp::Sub => fmod(fsub(args[0].clone(), args[1].clone()), pk()),
        BvUfOp::Mul => fmod(fmul(args[0].clone(), args[1].clone()), pk()),
        BvUfOp::Udiv => IntTerm::ite(
            IntFormula::eq(args[1].clone(), IntTerm::num(0)),
            fsub(pk(), IntTerm::num(1)),
            fdiv(args[0].clone(), args[1].clone()),
        ),
        BvUfOp::Urem => {
            let zero_branch = if fig1_urem {
                fsub(pk(), IntTerm::num(1))
            } else {
                args[0].clone()
            };
            IntTerm::ite(
                IntFormula::eq(args[1].clone(), IntTerm::num(0)),
                zero_branch,
                fmod(args[0].clone(), args[1].clone()),
            )
        }
        BvUfOp::Not => fsub(pk(), fadd(args[0].clone(), IntTerm::num(1))),
        BvUfOp::Neg => fmod(fsub(pk(), args[0].clone()), pk()),
        BvUfOp::Shl => fmod(fmul(args[0].clone(), fpow2(args[1].clone())), pk()),
        BvUfOp::Lshr => fmod(fdiv(args[0].clone(), fpow2(args[1].clone())), pk()),
        BvUfOp::Ashr => {
            // bvashr x y = ite(msb(x) = 0, bvlshr x y, bvnot (bvlshr (bvnot x) y)),
            // expanded through the Not/Lshr rules above.
            let x = args[0].clone();
            let y = args[1].clone();
            let msb_zero = IntFormula::eq(
                fdiv(x.clone(), fpow2(fsub(k.clone(), IntTerm::num(1)))),
                IntTerm::num(0),
            );
            let pos = elim_app(BvUfOp::Lshr, k, &[x.clone(), y.clone()], fig1_urem);
            let not_x = elim_app(BvUfOp::Not, k, &[x], fig1_urem);
            let shifted = elim_app(BvUfOp::Lshr, k, &[not_x, y], fig1_urem);
            let neg = elim_app(BvUfOp::Not, k, &[shifted], fig1_urem);
            IntTerm::ite(msb_zero, pos, neg)
        }
        BvUfOp::Concat => fadd(fmul(args[0].clone(), pk()), args[1].clone()),
        BvUfOp::And | BvUfOp::Or | BvUfOp::Xor => IntTerm::bv_app(op, k.clone(), args.to_vec()),
    }
}

fn elim_rel(rel: BvRel, k: &IntTerm, lhs: IntTerm, rhs: IntTerm) -> IntFormula {
    if rel.is_signed() {
        IntFormula::cmp(rel.int_rel(), uts(k, lhs), uts(k, rhs))
    } else {
        IntFormula::cmp(rel.int_rel(), lhs, rhs)
    }
}

/// One elimination step on an operator application; any other term is
/// returned unchanged. The bitwise applications `intand`/`intor`/`intxor`
/// are not eliminable.
pub fn elim_term(t: &IntTerm, fig1_urem: bool) -> IntTerm {
    match t.node() {
        IntNode::BvApp { op, width, args } if !op.is_bitwise_uf() => {
            elim_app(*op, width, args, fig1_urem)
        }
        _ => t.clone(),
    }
}

/// One elimination step on a converted relation application.
pub fn elim_formula(f: &IntFormula, _fig1_urem: bool) -> IntFormula {
    match f.node() {
        crate::ast::IntFormulaNode::BvRelApp {
            rel,
            width,
            lhs,
            rhs,
        } => elim_rel(*rel, width, lhs.clone(), rhs.clone()),
        _ => f.clone(),
    }
}

// ---------------------------------------------------------------------------
// Conv
// ---------------------------------------------------------------------------

struct Converter<'a> {
    omega: &'a WidthMap,
    chi: &'a VarMap,
    ann: &'a WidthAnnotation,
    fig1_urem: bool,
}

impl<'a> Converter<'a> {
    fn width_of(&self, t: &ParamTerm) -> Result<IntTerm, TranslateError> {
        self.ann
            .width_of(t)
            .cloned()
            .ok_or_else(|| TranslateError::UnhousedSymbol {
                name: t.to_string(),
            })
    }

    fn term(&self, t: &ParamTerm) -> Result<IntTerm, TranslateError> {
        match t.node() {
            TermNode::Symbol(sym) => match sym.kind {
                SymbolKind::Variable => {
                    let name =
                        self.chi
                            .get(&sym.name)
                            .ok_or_else(|| TranslateError::UnhousedSymbol {
                                name: sym.name.clone(),
                            })?;
                    Ok(IntTerm::var(name))
                }
                SymbolKind::SymConst => {
                    let value = self.omega.value_of(&sym.name).ok_or_else(|| {
                        TranslateError::UnhousedSymbol {
                            name: sym.name.clone(),
                        }
                    })?;
                    let width = self.omega.width_of(&sym.name).ok_or_else(|| {
                        TranslateError::UnhousedSymbol {
                            name: sym.name.clone(),
                        }
                    })?;
                    Ok(fmod(value.clone(), fpow2(width.clone())))
                }
            },
            TermNode::Unop(op, a) => {
                let k = self.width_of(a)?;
                let ca = self.term(a)?;
                let uf = match op {
                    BvUnop::Not => BvUfOp::Not,
                    BvUnop::Neg => BvUfOp::Neg,
                };
                Ok(elim_app(uf, &k, &[ca], self.fig1_urem))
            }
            TermNode::Binop(op, a, b) => {
                // The width argument is the width of the last operand, which
                // for concat is the width of the low part.
                let k = self.width_of(b)?;
                let ca = self.term(a)?;
                let cb = self.term(b)?;
                let uf = match op {
                    crate::ast::BvBinop::And => BvUfOp::And,
                    crate::ast::BvBinop::Or => BvUfOp::Or,
                    crate::ast::BvBinop::Xor => BvUfOp::Xor,
                    crate::ast::BvBinop::Shl => BvUfOp::Shl,
                    crate::ast::BvBinop::Lshr => BvUfOp::Lshr,
                    crate::ast::BvBinop::Ashr => BvUfOp::Ashr,
                    crate::ast::BvBinop::Add => BvUfOp::Add,
                    crate::ast::BvBinop::Mul => BvUfOp::Mul,
                    crate::ast::BvBinop::Urem => BvUfOp::Urem,
                    crate::ast::BvBinop::Udiv => BvUfOp::Udiv,
                    crate::ast::BvBinop::Concat => BvUfOp::Concat,
                };
                Ok(elim_app(uf, &k, &[ca, cb], self.fig1_urem))
            }
            TermNode::Extract { .. } => Err(TranslateError::ExtractPresent),
        }
    }

    fn range_guard(&self, var_name: &str, int_name: &str) -> Result<IntFormula, TranslateError> {
        let width =
            self.omega
                .width_of(var_name)
                .ok_or_else(|| TranslateError::UnhousedSymbol {
                    name: var_name.to_string(),
                })?;
        let v = IntTerm::var(int_name);
        Ok(IntFormula::and(
            IntFormula::le(IntTerm::num(0), v.clone()),
            IntFormula::lt(v, fpow2(width.clone())),
        ))
    }

    fn formula(&self, f: &ParamFormula) -> Result<IntFormula, TranslateError> {
        match f.node() {
            FormulaNode::True => Ok(IntFormula::tru()),
            FormulaNode::False => Ok(IntFormula::fls()),
            FormulaNode::Eq(a, b) => Ok(IntFormula::eq(self.term(a)?, self.term(b)?)),
            FormulaNode::Ne(a, b) => Ok(IntFormula::ne(self.term(a)?, self.term(b)?)),
            FormulaNode::Rel(rel, a, b) => {
                let k = self.width_of(b)?;
                Ok(elim_rel(*rel, &k, self.term(a)?, self.term(b)?))
            }
            FormulaNode::Not(g) => Ok(IntFormula::not(self.formula(g)?)),
            FormulaNode::And(a, b) => Ok(IntFormula::and(self.formula(a)?, self.formula(b)?)),
            FormulaNode::Or(a, b) => Ok(IntFormula::or(self.formula(a)?, self.formula(b)?)),
            FormulaNode::Implies(a, b) => {
                Ok(IntFormula::implies(self.formula(a)?, self.formula(b)?))
            }
            FormulaNode::Iff(a, b) => Ok(IntFormula::iff(self.formula(a)?, self.formula(b)?)),
            FormulaNode::Forall(vars, g) => {
                let (names, guard) = self.binder(vars)?;
                Ok(IntFormula::forall(
                    names,
                    IntFormula::implies(guard, self.formula(g)?),
                ))
            }
            FormulaNode::Exists(vars, g) => {
                let (names, guard) = self.binder(vars)?;
                Ok(IntFormula::exists(
                    names,
                    IntFormula::and(guard, self.formula(g)?),
                ))
            }
        }
    }

    fn binder(
        &self,
        vars: &[crate::ast::BvSymbol],
    ) -> Result<(Vec<String>, IntFormula), TranslateError> {
        let mut names = Vec::new();
        let mut guards = Vec::new();
        for v in vars {
            let int_name = self
                .chi
                .get(&v.name)
                .ok_or_else(|| TranslateError::UnhousedSymbol {
                    name: v.name.clone(),
                })?;
            names.push(int_name.to_string());
            guards.push(self.range_guard(&v.name, int_name)?);
        }
        Ok((names, IntFormula::and_all(guards)))
    }
}

/// Converts a well-sorted, extract-free formula to its integer form; the
/// caller supplies the variable correspondence.
pub fn convert_formula(
    formula: &ParamFormula,
    omega: &WidthMap,
    chi: &VarMap,
    fig1_urem: bool,
) -> Result<IntFormula, TranslateError> {
    let ann = sortcheck::check_well_sorted(formula, omega)?;
    let conv = Converter {
        omega,
        chi,
        ann: &ann,
        fig1_urem,
    };
    conv.formula(formula)
}

/// Converts a well-sorted, extract-free term.
pub fn convert_term(
    term: &ParamTerm,
    omega: &WidthMap,
    chi: &VarMap,
    fig1_urem: bool,
) -> Result<IntTerm, TranslateError> {
    let mut ann = WidthAnnotation::default();
    sortcheck::annotate_term(term, omega, &mut ann)?;
    let conv = Converter {
        omega,
        chi,
        ann: &ann,
        fig1_urem,
    };
    conv.term(term)
}

/// The full translation: sortcheck, conversion, and the mode's prelude.
pub fn translate(
    formula: &ParamFormula,
    omega: &WidthMap,
    opts: TranslateOptions,
) -> Result<TranslationResult, TranslateError> {
    if formula.contains_extract() {
        return Err(TranslateError::ExtractPresent);
    }
    let ann = sortcheck::check_well_sorted(formula, omega)?;
    let chi = VarMap::for_formula(formula);
    let conv = Converter {
        omega,
        chi: &chi,
        ann: &ann,
        fig1_urem: opts.fig1_urem,
    };
    let body = conv.formula(formula)?;

    // Range constraints for the free variables.
    let mut ranges = Vec::new();
    for sym in formula.free_symbols() {
        if sym.kind == SymbolKind::Variable {
            let int_name = chi
                .get(&sym.name)
                .ok_or_else(|| TranslateError::UnhousedSymbol {
                    name: sym.name.clone(),
                })?;
            ranges.push(conv.range_guard(&sym.name, int_name)?);
        }
    }
    let ranges = IntFormula::and_all(ranges);

    // Positivity of the width variables, plus any recorded assumptions.
    let mut width_guards: Vec<IntFormula> = omega
        .free_width_vars()
        .into_iter()
        .map(|w| IntFormula::gt(IntTerm::var(w), IntTerm::num(0)))
        .collect();
    width_guards.extend(omega.assumptions.iter().cloned());
    let width_guards = IntFormula::and_all(width_guards);

    // Which uninterpreted symbols does the result need?
    let mut bv_ops = BTreeSet::new();
    body.collect_uf_ops(&mut bv_ops);
    let residual: Vec<BvUfOp> = bv_ops
        .iter()
        .copied()
        .filter(|op| !op.is_bitwise_uf())
        .collect();
    assert!(
        residual.is_empty(),
        "elimination left uninterpreted applications: {residual:?}"
    );
    let mut used_ufs: BTreeSet<UfSym> = bv_ops
        .iter()
        .map(|op| match op {
            BvUfOp::And => UfSym::And,
            BvUfOp::Or => UfSym::Or,
            BvUfOp::Xor => UfSym::Xor,
            _ => unreachable!(),
        })
        .collect();
    if !used_ufs.is_empty() || body.uses_pow2() || ranges.uses_pow2() || width_guards.uses_pow2() {
        used_ufs.insert(UfSym::Pow2);
    }

    let axiom_block = IntFormula::and_all(
        axioms(opts.mode, &used_ufs)
            .into_iter()
            .map(|a| a.formula)
            .collect(),
    );

    let mut prelude_parts = Vec::new();
    if !matches!(ranges.node(), crate::ast::IntFormulaNode::True) {
        prelude_parts.push(ranges);
    }
    if !matches!(width_guards.node(), crate::ast::IntFormulaNode::True) {
        prelude_parts.push(width_guards);
    }
    if !matches!(axiom_block.node(), crate::ast::IntFormulaNode::True) {
        prelude_parts.push(axiom_block);
    }
    let prelude = IntFormula::and_all(prelude_parts);

    Ok(TranslationResult {
        prelude,
        body,
        var_map: chi,
        mode: opts.mode,
        used_ufs,
    })
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
    fn example1_body_matches_the_worked_example() {
        let (f, omega) = example1();
        let result = translate(&f, &omega, TranslateOptions::new(AxiomMode::Qf)).unwrap();
        assert_eq!(
            result.body.to_string(),
            "(distinct (mod (+ (+ _ix_x _ix_x) 1) (pow2 a)) 0)"
        );
    }

    #[test]
    fn example1_prelude_has_range_and_positivity() {
        let (f, omega) = example1();
        let result = translate(&f, &omega, TranslateOptions::new(AxiomMode::Qf)).unwrap();
        let prelude = result.prelude.to_string();
        assert!(
            prelude.contains("(and (<= 0 _ix_x) (< _ix_x (pow2 a)))"),
            "{prelude}"
        );
        assert!(prelude.contains("(> a 0)"), "{prelude}");
        assert!(prelude.contains("(= (pow2 0) 1)"), "{prelude}");
        assert!(prelude.contains("(= (pow2 3) 8)"), "{prelude}");
    }

    #[test]
    fn zero_constant_folds_away() {
        let (_, mut omega) = parse_pbv(
            "(declare-width a) (declare-pbv x :bits a) (declare-pbv z0 :bits a :value 0) (assert true)",
        )
        .unwrap();
        let f = crate::ast::parse_formula_str("(= x z0)", &mut omega).unwrap();
        let chi = VarMap::for_formula(&f);
        let body = convert_formula(&f, &omega, &chi, false).unwrap();
        assert_eq!(body.to_string(), "(= _ix_x 0)");
    }

    #[test]
    fn homomorphic_equality_of_variables() {
        let (_, mut omega) = parse_pbv(
            "(declare-width k) (declare-pbv x :bits k) (declare-pbv y :bits k) (assert true)",
        )
        .unwrap();
        let f = crate::ast::parse_formula_str("(= x y)", &mut omega).unwrap();
        let chi = VarMap::for_formula(&f);
        let body = convert_formula(&f, &omega, &chi, false).unwrap();
        assert_eq!(body.to_string(), "(= _ix_x _ix_y)");
    }

    #[test]
    fn elim_add_folds_numerals() {
        let app = IntTerm::bv_app(
            BvUfOp::Add,
            IntTerm::num(3),
            vec![IntTerm::num(5), IntTerm::num(6)],
        );
        assert_eq!(elim_term(&app, false), IntTerm::num(3));
    }

    #[test]
    fn elim_udiv_by_zero_is_all_ones() {
        let app = IntTerm::bv_app(
            BvUfOp::Udiv,
            IntTerm::var("k"),
            vec![IntTerm::var("x"), IntTerm::num(0)],
        );
        let out = elim_term(&app, false);
        assert_eq!(out.to_string(), "(ite (= 0 0) (- (pow2 k) 1) (div x 0))");
    }

    #[test]
    fn elim_urem_zero_branch_follows_smtlib_by_default() {
        let app = IntTerm::bv_app(
            BvUfOp::Urem,
            IntTerm::var("k"),
            vec![IntTerm::var("x"), IntTerm::var("y")],
        );
        let smtlib = elim_term(&app, false).to_string();
        assert_eq!(smtlib, "(ite (= y 0) x (mod x y))");
        let verbatim = elim_term(&app, true).to_string();
        assert_eq!(verbatim, "(ite (= y 0) (- (pow2 k) 1) (mod x y))");
    }

    #[test]
    fn uts_reinterprets_signed_values() {
        // uts(4, 12) = 2*(12 mod 8) - 12 = -4
        let t = uts(&IntTerm::num(4), IntTerm::num(12));
        assert_eq!(t, IntTerm::num(-4));
    }

    #[test]
    fn signed_comparison_uses_uts() {
        let (_, mut omega) = parse_pbv(
            "(declare-width k) (declare-pbv x :bits k) (declare-pbv y :bits k) (assert true)",
        )
        .unwrap();
        let f = crate::ast::parse_formula_str("(bvslt x y)", &mut omega).unwrap();
        let chi = VarMap::for_formula(&f);
        let body = convert_formula(&f, &omega, &chi, false).unwrap();
        assert_eq!(
            body.to_string(),
            "(< (- (* 2 (mod _ix_x (pow2 (- k 1)))) _ix_x) \
             (- (* 2 (mod _ix_y (pow2 (- k 1)))) _ix_y))"
        );
    }

    #[test]
    fn trivial_formula_uses_no_ufs() {
        let (f, omega) = parse_pbv("(assert true)").unwrap();
        let result = translate(&f, &omega, TranslateOptions::new(AxiomMode::Combined)).unwrap();
        assert!(result.used_ufs.is_empty());
        assert_eq!(result.implication().to_string(), "(=> true true)");
    }

    #[test]
    fn and_with_zero_keeps_only_needed_ufs() {
        let (f, omega) = parse_pbv(
            "(declare-width k)\n(declare-pbv x :bits k)\n(declare-pbv z0 :bits k :value 0)\n\
             (assert (= (bvand x z0) z0))",
        )
        .unwrap();
        let result = translate(&f, &omega, TranslateOptions::new(AxiomMode::Partial)).unwrap();
        assert_eq!(result.body.to_string(), "(= (intand k _ix_x 0) 0)");
        assert!(result.used_ufs.contains(&UfSym::And));
        assert!(result.used_ufs.contains(&UfSym::Pow2));
        assert!(!result.used_ufs.contains(&UfSym::Or));
        let prelude = result.prelude.to_string();
        assert!(
            prelude.contains("(= (intand k x 0) 0)"),
            "min axiom expected: {prelude}"
        );
        assert!(
            !prelude.contains("intor"),
            "unused or-block leaked: {prelude}"
        );
    }

    #[test]
    fn concrete_widths_fold_and_absorb_like_symbolic_ones() {
        let (f, omega) = parse_pbv(
            "(declare-pbv x :bits 3)\n\
             (declare-pbv z0 :bits 3 :value 0)\n(declare-pbv z1 :bits 3 :value 1)\n\
             (assert (distinct (bvadd (bvadd x x) z1) z0))",
        )
        .unwrap();
        let result = translate(&f, &omega, TranslateOptions::new(AxiomMode::Qf)).unwrap();
        assert_eq!(
            result.body.to_string(),
            "(distinct (mod (+ (+ _ix_x _ix_x) 1) 8) 0)"
        );
    }

    #[test]
    fn translation_is_deterministic() {
        let (f, omega) = example1();
        let r1 = translate(&f, &omega, TranslateOptions::default()).unwrap();
        let r2 = translate(&f, &omega, TranslateOptions::default()).unwrap();
        assert_eq!(r1.implication().to_string(), r2.implication().to_string());
    }

    #[test]
    fn quantified_variables_get_guards() {
        let (f, omega) = parse_pbv(
            "(declare-width k)\n(declare-pbv x :bits k)\n(declare-pbv s :bits k)\n\
             (assert (exists (x) (= (bvadd x s) s)))",
        )
        .unwrap();
        let result = translate(&f, &omega, TranslateOptions::new(AxiomMode::Qf)).unwrap();
        let body = result.body.to_string();
        assert!(
            body.starts_with("(exists ((_ix_x Int)) (and (and (<= 0 _ix_x) (< _ix_x (pow2 k)))"),
            "{body}"
        );
    }
}
