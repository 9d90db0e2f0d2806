//! Admissibility of width maps, well-sortedness of parametric formulas, and
//! goal-level elimination of `extract`.
//!
//! Width-term equality is decided by a sum-of-monomials normal form over
//! `+`, `*`, numerals, width variables, and `pow2` atoms; anything else in a
//! width term is treated as an opaque atom compared by its printed form.
//! Positivity checking is syntactic and incomplete by design: a width map
//! the checker cannot prove admissible is rejected with a reason rather than
//! accepted.

use crate::ast::{
    BvSymbol, FormulaNode, IntFormula, IntFormulaNode, IntNode, IntRel, IntTerm, ParamFormula,
    ParamTerm, SymbolKind, TermNode, WidthMap,
};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SortError {
    #[error("width map is not admissible: width `{width}` of `{symbol}` {reason}")]
    NotAdmissible {
        symbol: String,
        width: String,
        reason: String,
    },
    #[error("width mismatch in {context}: `{left}` vs `{right}`")]
    WidthMismatch {
        context: String,
        left: String,
        right: String,
    },
    #[error("unknown symbol `{name}` (no width map entry)")]
    UnknownSymbol { name: String },
    #[error("extract upper bound {hi} is out of range for width {width}")]
    ExtractOutOfRange { hi: u32, width: i128 },
    #[error("unsupported extract context: {context}")]
    UnsupportedExtract { context: String },
    #[error("quantified symbol `{name}` is a constant")]
    QuantifiedConstant { name: String },
}

// ---------------------------------------------------------------------------
// Width normal form
// ---------------------------------------------------------------------------

/// An atom of a width monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum WidthAtom {
    Var(String),
    Pow2(WidthNf),
    /// A width subterm outside the `{+, *, pow2, numerals, vars}` fragment,
    /// compared by its printed form.
    Opaque(String),
}

/// Sum-of-monomials normal form: monomial (a multiset of atoms) to
/// coefficient. The empty monomial is the constant term.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct WidthNf {
    monos: BTreeMap<BTreeMap<WidthAtom, u32>, i128>,
}

impl WidthNf {
    fn constant(n: i128) -> Self {
        let mut monos = BTreeMap::new();
        if n != 0 {
            monos.insert(BTreeMap::new(), n);
        }
        WidthNf { monos }
    }

    fn atom(a: WidthAtom) -> Self {
        let mut mono = BTreeMap::new();
        mono.insert(a, 1);
        let mut monos = BTreeMap::new();
        monos.insert(mono, 1);
        WidthNf { monos }
    }

    fn add(mut self, other: WidthNf) -> Self {
        for (mono, coef) in other.monos {
            let entry = self.monos.entry(mono).or_insert(0);
            *entry += coef;
            if *entry == 0 {
                self.monos.retain(|_, c| *c != 0);
            }
        }
        self.monos.retain(|_, c| *c != 0);
        self
    }

    fn scale(mut self, k: i128) -> Self {
        if k == 0 {
            return WidthNf::default();
        }
        for coef in self.monos.values_mut() {
            *coef *= k;
        }
        self
    }

    fn mul(&self, other: &WidthNf) -> Self {
        let mut out = WidthNf::default();
        for (m1, c1) in &self.monos {
            for (m2, c2) in &other.monos {
                let mut mono = m1.clone();
                for (a, e) in m2 {
                    *mono.entry(a.clone()).or_insert(0) += e;
                }
                let entry = out.monos.entry(mono).or_insert(0);
                *entry += c1 * c2;
            }
        }
        out.monos.retain(|_, c| *c != 0);
        out
    }

    pub fn as_constant(&self) -> Option<i128> {
        match self.monos.len() {
            0 => Some(0),
            1 => {
                let (mono, coef) = self.monos.iter().next().unwrap();
                if mono.is_empty() {
                    Some(*coef)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// A sound lower bound of the normal form when every width variable is
    /// at least its entry in `bounds` (default 1). Returns `None` when no
    /// bound can be established (negative coefficient on a non-constant
    /// monomial, opaque atom, or a `pow2` whose argument may be negative).
    fn lower_bound(&self, bounds: &BTreeMap<String, i128>) -> Option<i128> {
        let mut total: i128 = 0;
        for (mono, coef) in &self.monos {
            if mono.is_empty() {
                total = total.checked_add(*coef)?;
                continue;
            }
            if *coef < 0 {
                return None;
            }
            let mut mono_min: i128 = 1;
            for (atom, exp) in mono {
                let base = match atom {
                    WidthAtom::Var(v) => *bounds.get(v).unwrap_or(&1),
                    WidthAtom::Pow2(arg) => {
                        let arg_min = arg.lower_bound(bounds)?;
                        if arg_min < 0 {
                            return None;
                        }
                        1i128.checked_shl(arg_min.min(100) as u32)?
                    }
                    WidthAtom::Opaque(_) => return None,
                };
                if base < 0 {
                    return None;
                }
                for _ in 0..*exp {
                    mono_min = mono_min.checked_mul(base)?;
                }
            }
            total = total.checked_add(coef.checked_mul(mono_min)?)?;
        }
        Some(total)
    }
}

/// Normalizes a width term.
pub fn width_nf(t: &IntTerm) -> WidthNf {
    match t.node() {
        IntNode::Num(n) => WidthNf::constant(*n),
        IntNode::Var(v) => WidthNf::atom(WidthAtom::Var(v.clone())),
        IntNode::Add(a, b) => width_nf(a).add(width_nf(b)),
        IntNode::Sub(a, b) => width_nf(a).add(width_nf(b).scale(-1)),
        IntNode::Mul(a, b) => width_nf(a).mul(&width_nf(b)),
        IntNode::Pow2(a) => {
            let inner = width_nf(a);
            if let Some(c) = inner.as_constant() {
                if (0..=62).contains(&c) {
                    return WidthNf::constant(1i128 << c);
                }
            }
            WidthNf::atom(WidthAtom::Pow2(inner))
        }
        _ => WidthNf::atom(WidthAtom::Opaque(t.to_string())),
    }
}

/// Structural equality of width terms modulo associativity, commutativity,
/// and numeral arithmetic of `+` and `*`.
pub fn widths_equal(a: &IntTerm, b: &IntTerm) -> bool {
    width_nf(a) == width_nf(b)
}

// ---------------------------------------------------------------------------
// Admissibility
// ---------------------------------------------------------------------------

/// Extracts per-variable lower bounds from assumption formulas. Only
/// conjunctions of `v >= c`, `v > c`, `c <= v`, `c < v` are used; anything
/// else is ignored (which is sound: fewer assumptions, stricter check).
fn assumption_bounds(assumptions: &[IntFormula]) -> BTreeMap<String, i128> {
    let mut bounds: BTreeMap<String, i128> = BTreeMap::new();
    let mut todo: Vec<&IntFormula> = assumptions.iter().collect();
    while let Some(f) = todo.pop() {
        match f.node() {
            IntFormulaNode::And(a, b) => {
                todo.push(a);
                todo.push(b);
            }
            IntFormulaNode::Cmp(rel, lhs, rhs) => {
                let bound = match (rel, lhs.node(), rhs.node()) {
                    (IntRel::Ge, IntNode::Var(v), IntNode::Num(c)) => Some((v.clone(), *c)),
                    (IntRel::Gt, IntNode::Var(v), IntNode::Num(c)) => Some((v.clone(), *c + 1)),
                    (IntRel::Le, IntNode::Num(c), IntNode::Var(v)) => Some((v.clone(), *c)),
                    (IntRel::Lt, IntNode::Num(c), IntNode::Var(v)) => Some((v.clone(), *c + 1)),
                    _ => None,
                };
                if let Some((v, c)) = bound {
                    let entry = bounds.entry(v).or_insert(1);
                    *entry = (*entry).max(c);
                }
            }
            _ => {}
        }
    }
    bounds
}

/// Decides admissibility of a width map: every range width term must be
/// provably positive whenever all free width variables are positive (and the
/// map's assumptions hold). The check is syntactic; "unknown" rejects.
pub fn check_admissible(omega: &WidthMap, extra: &[IntFormula]) -> Result<(), SortError> {
    let mut assumptions = omega.assumptions.clone();
    assumptions.extend_from_slice(extra);
    let bounds = assumption_bounds(&assumptions);
    for sym in omega.symbols() {
        let width = omega
            .width_of(&sym.name)
            .expect("declared symbol has a width");
        let nf = width_nf(width);
        match nf.lower_bound(&bounds) {
            Some(min) if min >= 1 => {}
            Some(min) => {
                return Err(SortError::NotAdmissible {
                    symbol: sym.name,
                    width: width.to_string(),
                    reason: format!("can be as small as {min} when width variables are positive"),
                });
            }
            None => {
                return Err(SortError::NotAdmissible {
                    symbol: sym.name,
                    width: width.to_string(),
                    reason: "positivity could not be established syntactically".to_string(),
                });
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Well-sortedness
// ---------------------------------------------------------------------------

/// Maps every subterm occurrence (keyed structurally, which is unambiguous
/// under a fixed width map) to its symbolic width.
#[derive(Debug, Default, Clone)]
pub struct WidthAnnotation {
    map: HashMap<ParamTerm, IntTerm>,
}

impl WidthAnnotation {
    pub fn width_of(&self, t: &ParamTerm) -> Option<&IntTerm> {
        self.map.get(t)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

fn term_width(
    t: &ParamTerm,
    omega: &WidthMap,
    ann: &mut WidthAnnotation,
) -> Result<IntTerm, SortError> {
    if let Some(w) = ann.map.get(t) {
        return Ok(w.clone());
    }
    let width = match t.node() {
        TermNode::Symbol(sym) => match omega.width_of(&sym.name) {
            Some(w) => w.clone(),
            None => {
                return Err(SortError::UnknownSymbol {
                    name: sym.name.clone(),
                })
            }
        },
        TermNode::Unop(_, a) => term_width(a, omega, ann)?,
        TermNode::Binop(op, a, b) => {
            let wa = term_width(a, omega, ann)?;
            let wb = term_width(b, omega, ann)?;
            if *op == crate::ast::BvBinop::Concat {
                IntTerm::add(wa, wb)
            } else {
                if !widths_equal(&wa, &wb) {
                    return Err(SortError::WidthMismatch {
                        context: format!("({} {} {})", op.smtlib_name(), a, b),
                        left: wa.to_string(),
                        right: wb.to_string(),
                    });
                }
                // The typing rules take the width of the last operand.
                wb
            }
        }
        TermNode::Extract { hi, lo, arg } => {
            let wa = term_width(arg, omega, ann)?;
            if let Some(c) = width_nf(&wa).as_constant() {
                if i128::from(*hi) >= c {
                    return Err(SortError::ExtractOutOfRange { hi: *hi, width: c });
                }
            }
            IntTerm::num(i128::from(*hi) - i128::from(*lo) + 1)
        }
    };
    ann.map.insert(t.clone(), width.clone());
    Ok(width)
}

fn formula_widths(
    f: &ParamFormula,
    omega: &WidthMap,
    ann: &mut WidthAnnotation,
) -> Result<(), SortError> {
    match f.node() {
        FormulaNode::True | FormulaNode::False => Ok(()),
        FormulaNode::Eq(a, b) | FormulaNode::Ne(a, b) | FormulaNode::Rel(_, a, b) => {
            let wa = term_width(a, omega, ann)?;
            let wb = term_width(b, omega, ann)?;
            if !widths_equal(&wa, &wb) {
                return Err(SortError::WidthMismatch {
                    context: format!("comparison of {a} and {b}"),
                    left: wa.to_string(),
                    right: wb.to_string(),
                });
            }
            Ok(())
        }
        FormulaNode::Not(g) => formula_widths(g, omega, ann),
        FormulaNode::And(a, b)
        | FormulaNode::Or(a, b)
        | FormulaNode::Implies(a, b)
        | FormulaNode::Iff(a, b) => {
            formula_widths(a, omega, ann)?;
            formula_widths(b, omega, ann)
        }
        FormulaNode::Forall(vars, g) | FormulaNode::Exists(vars, g) => {
            for v in vars {
                match omega.kind_of(&v.name) {
                    Some(SymbolKind::Variable) => {}
                    Some(SymbolKind::SymConst) => {
                        return Err(SortError::QuantifiedConstant {
                            name: v.name.clone(),
                        })
                    }
                    None => {
                        return Err(SortError::UnknownSymbol {
                            name: v.name.clone(),
                        })
                    }
                }
            }
            formula_widths(g, omega, ann)
        }
    }
}

/// Checks that `formula` is well sorted under `omega` and returns the width
/// of every subterm. Admissibility is checked first.
pub fn check_well_sorted(
    formula: &ParamFormula,
    omega: &WidthMap,
) -> Result<WidthAnnotation, SortError> {
    check_admissible(omega, &[])?;
    let mut ann = WidthAnnotation::default();
    formula_widths(formula, omega, &mut ann)?;
    Ok(ann)
}

/// Computes widths for a single term, extending `ann`.
pub fn annotate_term(
    term: &ParamTerm,
    omega: &WidthMap,
    ann: &mut WidthAnnotation,
) -> Result<IntTerm, SortError> {
    term_width(term, omega, ann)
}

// ---------------------------------------------------------------------------
// Extract elimination
// ---------------------------------------------------------------------------

/// Rewrites every literal `s = t[u:l]` (or its mirror image) into the
/// concatenation scheme: fresh variables `y1, y2, y3` of widths `n-1-u`,
/// `u-l+1`, `l` with the literal replaced by `t = y1 ++ (y2 ++ y3) => s = y2`
/// and the fresh variables universally quantified at the goal level.
/// Boundary slices drop the corresponding piece; a full-range extract is the
/// identity. Any other occurrence of extract is an error.
pub fn eliminate_extract(
    goal: &ParamFormula,
    omega: &WidthMap,
) -> Result<(ParamFormula, WidthMap), SortError> {
    if !goal.contains_extract() {
        return Ok((goal.clone(), omega.clone()));
    }
    let mut ann = WidthAnnotation::default();
    // Well-sortedness of the pre-elimination goal; admissibility is the
    // caller's concern and is re-checked by translation.
    formula_widths(goal, omega, &mut ann)?;
    let mut out = omega.clone();
    let mut fresh: Vec<BvSymbol> = Vec::new();
    let rewritten = rewrite(goal, true, false, &mut out, &ann, &mut fresh)?;
    let result = if fresh.is_empty() {
        rewritten
    } else {
        ParamFormula::forall(fresh, rewritten)
    };
    Ok((result, out))
}

fn rewrite(
    f: &ParamFormula,
    positive: bool,
    under_binder: bool,
    omega: &mut WidthMap,
    ann: &WidthAnnotation,
    fresh: &mut Vec<BvSymbol>,
) -> Result<ParamFormula, SortError> {
    match f.node() {
        FormulaNode::True | FormulaNode::False => Ok(f.clone()),
        FormulaNode::Eq(a, b) => {
            let (s, extr) = match (is_plain_extract(a), is_plain_extract(b)) {
                (None, None) => {
                    ensure_extract_free(f)?;
                    return Ok(f.clone());
                }
                (Some(_), Some(_)) => {
                    return Err(SortError::UnsupportedExtract {
                        context: format!("both sides of {f} are extracts"),
                    })
                }
                (Some(e), None) => (b, e),
                (None, Some(e)) => (a, e),
            };
            if s.contains_extract() {
                return Err(SortError::UnsupportedExtract {
                    context: format!("nested extract in {f}"),
                });
            }
            if !positive {
                return Err(SortError::UnsupportedExtract {
                    context: format!("negative polarity occurrence {f}"),
                });
            }
            if under_binder {
                return Err(SortError::UnsupportedExtract {
                    context: format!("occurrence under a quantifier: {f}"),
                });
            }
            let (hi, lo, t) = extr;
            if t.contains_extract() {
                return Err(SortError::UnsupportedExtract {
                    context: format!("nested extract in {f}"),
                });
            }
            Ok(expand_literal(s, t, hi, lo, omega, ann, fresh)?)
        }
        FormulaNode::Ne(..) | FormulaNode::Rel(..) => {
            ensure_extract_free(f)?;
            Ok(f.clone())
        }
        FormulaNode::Not(g) => Ok(ParamFormula::not(rewrite(
            g,
            !positive,
            under_binder,
            omega,
            ann,
            fresh,
        )?)),
        FormulaNode::And(a, b) => Ok(ParamFormula::and(
            rewrite(a, positive, under_binder, omega, ann, fresh)?,
            rewrite(b, positive, under_binder, omega, ann, fresh)?,
        )),
        FormulaNode::Or(a, b) => Ok(ParamFormula::or(
            rewrite(a, positive, under_binder, omega, ann, fresh)?,
            rewrite(b, positive, under_binder, omega, ann, fresh)?,
        )),
        FormulaNode::Implies(a, b) => Ok(ParamFormula::implies(
            rewrite(a, !positive, under_binder, omega, ann, fresh)?,
            rewrite(b, positive, under_binder, omega, ann, fresh)?,
        )),
        FormulaNode::Iff(a, b) => {
            // Both polarities at once; only extract-free operands are allowed.
            ensure_extract_free(a)?;
            ensure_extract_free(b)?;
            Ok(f.clone())
        }
        FormulaNode::Forall(vars, g) => Ok(ParamFormula::forall(
            vars.clone(),
            rewrite(g, positive, true, omega, ann, fresh)?,
        )),
        FormulaNode::Exists(vars, g) => Ok(ParamFormula::exists(
            vars.clone(),
            rewrite(g, positive, true, omega, ann, fresh)?,
        )),
    }
}

fn ensure_extract_free(f: &ParamFormula) -> Result<(), SortError> {
    if f.contains_extract() {
        Err(SortError::UnsupportedExtract {
            context: format!("extract outside the s = t[u:l] literal pattern in {f}"),
        })
    } else {
        Ok(())
    }
}

fn is_plain_extract(t: &ParamTerm) -> Option<(u32, u32, &ParamTerm)> {
    match t.node() {
        TermNode::Extract { hi, lo, arg } => Some((*hi, *lo, arg)),
        _ => None,
    }
}

fn expand_literal(
    s: &ParamTerm,
    t: &ParamTerm,
    hi: u32,
    lo: u32,
    omega: &mut WidthMap,
    ann: &WidthAnnotation,
    fresh: &mut Vec<BvSymbol>,
) -> Result<ParamFormula, SortError> {
    let n = ann
        .width_of(t)
        .cloned()
        .ok_or_else(|| SortError::UnknownSymbol {
            name: t.to_string(),
        })?;
    let n_const = width_nf(&n).as_constant();

    // Full-range extract is the identity.
    if lo == 0 && n_const == Some(i128::from(hi) + 1) {
        return Ok(ParamFormula::eq(s.clone(), t.clone()));
    }

    // y1 covers bits above hi; dropped when hi = n-1. With a symbolic n that
    // boundary is not decidable, so y1 is kept under the recorded assumption
    // n >= hi + 2.
    let y1 = match n_const {
        Some(c) if i128::from(hi) + 1 == c => None,
        _ => {
            let width = IntTerm::sub(
                IntTerm::sub(n.clone(), IntTerm::num(1)),
                IntTerm::num(i128::from(hi)),
            );
            if n_const.is_none() {
                omega
                    .assumptions
                    .push(IntFormula::ge(n.clone(), IntTerm::num(i128::from(hi) + 2)));
            }
            let name = omega.fresh_name("_y1_");
            let sym = omega.declare_var(name, width);
            fresh.push(sym.clone());
            Some(ParamTerm::symbol(sym))
        }
    };
    let y2 = {
        let width = IntTerm::num(i128::from(hi) - i128::from(lo) + 1);
        let name = omega.fresh_name("_y2_");
        let sym = omega.declare_var(name, width);
        fresh.push(sym.clone());
        ParamTerm::symbol(sym)
    };
    let y3 = if lo == 0 {
        None
    } else {
        let name = omega.fresh_name("_y3_");
        let sym = omega.declare_var(name, IntTerm::num(i128::from(lo)));
        fresh.push(sym.clone());
        Some(ParamTerm::symbol(sym))
    };

    let mut concat = y2.clone();
    if let Some(y3) = y3 {
        concat = ParamTerm::binop(crate::ast::BvBinop::Concat, concat, y3);
    }
    if let Some(y1) = y1 {
        concat = ParamTerm::binop(crate::ast::BvBinop::Concat, y1, concat);
    }
    Ok(ParamFormula::implies(
        ParamFormula::eq(t.clone(), concat),
        ParamFormula::eq(s.clone(), y2),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::parse_pbv;

    #[test]
    fn admissible_positive_variable() {
        let (_, omega) =
            parse_pbv("(declare-width a) (declare-pbv x :bits a) (assert true)").unwrap();
        assert!(check_admissible(&omega, &[]).is_ok());
    }

    #[test]
    fn difference_of_widths_is_rejected() {
        let (_, omega) = parse_pbv(
            "(declare-width a1) (declare-width a2) (declare-pbv x :bits (- a1 a2)) (assert true)",
        )
        .unwrap();
        let err = check_admissible(&omega, &[]).unwrap_err();
        match err {
            SortError::NotAdmissible { width, .. } => assert_eq!(width, "(- a1 a2)"),
            other => panic!("expected NotAdmissible, got {other}"),
        }
    }

    #[test]
    fn sum_with_constant_is_admissible() {
        let (_, omega) =
            parse_pbv("(declare-width a) (declare-pbv x :bits (+ a 3)) (assert true)").unwrap();
        assert!(check_admissible(&omega, &[]).is_ok());
    }

    #[test]
    fn pow2_minus_one_is_admissible() {
        let (_, omega) =
            parse_pbv("(declare-width a) (declare-pbv x :bits (- (pow2 a) 1)) (assert true)")
                .unwrap();
        assert!(check_admissible(&omega, &[]).is_ok());
    }

    #[test]
    fn assumptions_refine_bounds() {
        let (_, omega) =
            parse_pbv("(declare-width n) (declare-pbv x :bits (- n 2)) (assert true)").unwrap();
        assert!(check_admissible(&omega, &[]).is_err());
        let assumption = IntFormula::ge(IntTerm::var("n"), IntTerm::num(3));
        assert!(check_admissible(&omega, &[assumption]).is_ok());
    }

    #[test]
    fn running_example_is_well_sorted() {
        let text = "\
(declare-width a)
(declare-pbv x :bits a)
(declare-pbv z0 :bits a :value 0)
(declare-pbv z1 :bits a :value 1)
(assert (distinct (bvadd (bvadd x x) z1) z0))
";
        let (f, omega) = parse_pbv(text).unwrap();
        let ann = check_well_sorted(&f, &omega).unwrap();
        assert!(!ann.is_empty());
    }

    #[test]
    fn mismatched_widths_are_rejected() {
        let text = "\
(declare-width a1)
(declare-width a2)
(declare-pbv x :bits a1)
(declare-pbv z0 :bits a1 :value 0)
(declare-pbv z1 :bits a2 :value 1)
(assert (distinct (bvadd (bvadd x x) z1) z0))
";
        let (f, omega) = parse_pbv(text).unwrap();
        let err = check_well_sorted(&f, &omega).unwrap_err();
        assert!(matches!(err, SortError::WidthMismatch { .. }), "{err}");
    }

    #[test]
    fn concat_width_is_the_sum() {
        let text = "\
(declare-width a)
(declare-width b)
(declare-pbv x :bits a)
(declare-pbv y :bits b)
(declare-pbv z :bits (+ a b))
(assert (= (concat x y) z))
";
        let (f, omega) = parse_pbv(text).unwrap();
        assert!(check_well_sorted(&f, &omega).is_ok());
        // Same problem with z of the commuted width: normal forms agree.
        let text2 = text.replace("(+ a b)", "(+ b a)");
        let (f2, omega2) = parse_pbv(&text2).unwrap();
        assert!(check_well_sorted(&f2, &omega2).is_ok());
    }

    #[test]
    fn width_normal_form_is_canonical() {
        let a = IntTerm::var("a");
        let b = IntTerm::var("b");
        let t1 = IntTerm::mul(IntTerm::add(a.clone(), b.clone()), IntTerm::num(2));
        let t2 = IntTerm::add(
            IntTerm::add(b.clone(), a.clone()),
            IntTerm::add(a.clone(), b.clone()),
        );
        assert!(widths_equal(&t1, &t2));
        let p1 = IntTerm::pow2(IntTerm::add(a.clone(), b.clone()));
        let p2 = IntTerm::pow2(IntTerm::add(b, a));
        assert!(widths_equal(&p1, &p2));
    }

    #[test]
    fn extract_mid_slice_expands_to_three_pieces() {
        let text = "\
(declare-width n)
(declare-pbv s :bits 2)
(declare-pbv t :bits n)
(assert (= s ((_ extract 2 1) t)))
";
        let (f, omega) = parse_pbv(text).unwrap();
        let (g, omega2) = eliminate_extract(&f, &omega).unwrap();
        let printed = g.to_string();
        assert!(printed.starts_with("(forall (_y1_ _y2_ _y3_)"), "{printed}");
        assert!(
            printed.contains("(concat _y1_ (concat _y2_ _y3_))"),
            "{printed}"
        );
        assert!(printed.ends_with("(= s _y2_)))"), "{printed}");
        assert_eq!(
            omega2.width_of("_y1_").unwrap().to_string(),
            "(- (- n 1) 2)"
        );
        assert_eq!(omega2.width_of("_y2_").unwrap(), &IntTerm::num(2));
        assert_eq!(omega2.width_of("_y3_").unwrap(), &IntTerm::num(1));
        // The kept y1 piece records the assumption n >= hi + 2.
        assert_eq!(omega2.assumptions.len(), 1);
    }

    #[test]
    fn full_range_extract_is_identity() {
        let text = "\
(declare-pbv s :bits 4)
(declare-pbv t :bits 4)
(assert (= s ((_ extract 3 0) t)))
";
        let (f, omega) = parse_pbv(text).unwrap();
        let (g, _) = eliminate_extract(&f, &omega).unwrap();
        assert_eq!(g.to_string(), "(= s t)");
    }

    #[test]
    fn extract_in_shift_argument_is_an_error() {
        let text = "\
(declare-pbv s :bits 2)
(declare-pbv t :bits 8)
(declare-pbv u :bits 2)
(assert (= s (bvshl ((_ extract 2 1) t) u)))
";
        let (f, omega) = parse_pbv(text).unwrap();
        let err = eliminate_extract(&f, &omega).unwrap_err();
        assert!(matches!(err, SortError::UnsupportedExtract { .. }), "{err}");
    }

    #[test]
    fn extract_out_of_range_is_rejected() {
        let text = "\
(declare-pbv s :bits 2)
(declare-pbv t :bits 3)
(assert (= s ((_ extract 3 2) t)))
";
        let (f, omega) = parse_pbv(text).unwrap();
        let err = check_well_sorted(&f, &omega).unwrap_err();
        assert!(
            matches!(err, SortError::ExtractOutOfRange { hi: 3, width: 3 }),
            "{err}"
        );
    }
}
