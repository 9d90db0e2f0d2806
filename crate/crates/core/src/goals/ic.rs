//! Invertibility-condition entries and goal generation.
//!
//! A literal shape is one of the sixteen forms `op(x) ~ t`, `op(x, s) ~ t`,
//! or `op(s, x) ~ t` (commutative operators counted once), paired with one
//! of ten relations: a 16 x 10 grid of 160 slots. An entry carries the
//! invertibility condition for its slot when one is known (the exact
//! condition is `exists x. l[x]` by definition, and that semantic reading is
//! the fallback), plus an optional conditional inverse term over `s` and `t`.

use super::{Expected, Goal, GoalError, GoalKind};
use crate::ast::{
    read_sexps, BvBinop, BvRel, BvSymbol, IntTerm, ParamFormula, ParamTerm, SExp, WidthMap,
};
use crate::oracle::{self, Invalid};
use serde::Serialize;

/// The ten relations of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Eq,
    Ne,
    Ult,
    Ugt,
    Ule,
    Uge,
    Slt,
    Sgt,
    Sle,
    Sge,
}

impl Relation {
    pub const ALL: [Relation; 10] = [
        Relation::Eq,
        Relation::Ne,
        Relation::Ult,
        Relation::Ugt,
        Relation::Ule,
        Relation::Uge,
        Relation::Slt,
        Relation::Sgt,
        Relation::Sle,
        Relation::Sge,
    ];

    pub fn spelling(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Ne => "distinct",
            Relation::Ult => "bvult",
            Relation::Ugt => "bvugt",
            Relation::Ule => "bvule",
            Relation::Uge => "bvuge",
            Relation::Slt => "bvslt",
            Relation::Sgt => "bvsgt",
            Relation::Sle => "bvsle",
            Relation::Sge => "bvsge",
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Relation::Eq => "eq",
            Relation::Ne => "ne",
            Relation::Ult => "ult",
            Relation::Ugt => "ugt",
            Relation::Ule => "ule",
            Relation::Uge => "uge",
            Relation::Slt => "slt",
            Relation::Sgt => "sgt",
            Relation::Sle => "sle",
            Relation::Sge => "sge",
        }
    }

    pub fn formula(self, lhs: ParamTerm, rhs: ParamTerm) -> ParamFormula {
        match self {
            Relation::Eq => ParamFormula::eq(lhs, rhs),
            Relation::Ne => ParamFormula::ne(lhs, rhs),
            Relation::Ult => ParamFormula::rel(BvRel::Ult, lhs, rhs),
            Relation::Ugt => ParamFormula::rel(BvRel::Ugt, lhs, rhs),
            Relation::Ule => ParamFormula::rel(BvRel::Ule, lhs, rhs),
            Relation::Uge => ParamFormula::rel(BvRel::Uge, lhs, rhs),
            Relation::Slt => ParamFormula::rel(BvRel::Slt, lhs, rhs),
            Relation::Sgt => ParamFormula::rel(BvRel::Sgt, lhs, rhs),
            Relation::Sle => ParamFormula::rel(BvRel::Sle, lhs, rhs),
            Relation::Sge => ParamFormula::rel(BvRel::Sge, lhs, rhs),
        }
    }
}

/// The sixteen literal shapes. `x_first` distinguishes `x op s` from
/// `s op x` for the non-commutative operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LiteralShape {
    pub op: ShapeOp,
    pub x_first: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeOp {
    Neg,
    Not,
    And,
    Or,
    Shl,
    Lshr,
    Ashr,
    Add,
    Mul,
    Udiv,
    Urem,
}

impl ShapeOp {
    pub fn spelling(self) -> &'static str {
        match self {
            ShapeOp::Neg => "bvneg",
            ShapeOp::Not => "bvnot",
            ShapeOp::And => "bvand",
            ShapeOp::Or => "bvor",
            ShapeOp::Shl => "bvshl",
            ShapeOp::Lshr => "bvlshr",
            ShapeOp::Ashr => "bvashr",
            ShapeOp::Add => "bvadd",
            ShapeOp::Mul => "bvmul",
            ShapeOp::Udiv => "bvudiv",
            ShapeOp::Urem => "bvurem",
        }
    }

    fn is_unary(self) -> bool {
        matches!(self, ShapeOp::Neg | ShapeOp::Not)
    }

    fn is_commutative(self) -> bool {
        matches!(
            self,
            ShapeOp::And | ShapeOp::Or | ShapeOp::Add | ShapeOp::Mul
        )
    }
}

impl LiteralShape {
    /// All sixteen shapes, in a stable order.
    pub fn all() -> Vec<LiteralShape> {
        let mut out = Vec::with_capacity(16);
        for op in [
            ShapeOp::Neg,
            ShapeOp::Not,
            ShapeOp::And,
            ShapeOp::Or,
            ShapeOp::Shl,
            ShapeOp::Lshr,
            ShapeOp::Ashr,
            ShapeOp::Add,
            ShapeOp::Mul,
            ShapeOp::Udiv,
            ShapeOp::Urem,
        ] {
            out.push(LiteralShape { op, x_first: true });
            if !op.is_unary() && !op.is_commutative() {
                out.push(LiteralShape { op, x_first: false });
            }
        }
        out
    }

    pub fn short_name(self) -> String {
        let base = self.op.spelling().trim_start_matches("bv").to_string();
        if self.op.is_unary() || self.op.is_commutative() {
            base
        } else if self.x_first {
            format!("{base}_xs")
        } else {
            format!("{base}_sx")
        }
    }

    /// Whether the literal mentions `s` at all.
    pub fn uses_s(self) -> bool {
        !self.op.is_unary()
    }

    /// Builds `l[x]` applied to the given term for `x`.
    pub fn literal_with(self, x: ParamTerm, rel: Relation) -> ParamFormula {
        let lhs = match self.op {
            ShapeOp::Neg => ParamTerm::neg(x),
            ShapeOp::Not => ParamTerm::not(x),
            _ => {
                let op = match self.op {
                    ShapeOp::And => BvBinop::And,
                    ShapeOp::Or => BvBinop::Or,
                    ShapeOp::Shl => BvBinop::Shl,
                    ShapeOp::Lshr => BvBinop::Lshr,
                    ShapeOp::Ashr => BvBinop::Ashr,
                    ShapeOp::Add => BvBinop::Add,
                    ShapeOp::Mul => BvBinop::Mul,
                    ShapeOp::Udiv => BvBinop::Udiv,
                    ShapeOp::Urem => BvBinop::Urem,
                    ShapeOp::Neg | ShapeOp::Not => unreachable!(),
                };
                if self.x_first {
                    ParamTerm::binop(op, x, var_s())
                } else {
                    ParamTerm::binop(op, var_s(), x)
                }
            }
        };
        rel.formula(lhs, var_t())
    }

    pub fn literal(self, rel: Relation) -> ParamFormula {
        self.literal_with(ParamTerm::symbol(BvSymbol::var("x")), rel)
    }
}

/// The invertibility condition of an entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    /// A supplied condition over `s` and `t` (possibly `true`).
    Formula(ParamFormula),
    /// Not supplied: the defining condition `exists x. l[x]` is used.
    Semantic,
}

impl Condition {
    pub fn top() -> Condition {
        Condition::Formula(ParamFormula::tru())
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Condition::Formula(f) if *f == ParamFormula::tru())
    }

    /// The condition as a formula; the semantic reading materializes as an
    /// existential over the literal.
    pub fn as_formula(&self, shape: LiteralShape, rel: Relation) -> ParamFormula {
        match self {
            Condition::Formula(f) => f.clone(),
            Condition::Semantic => {
                ParamFormula::exists(vec![BvSymbol::var("x")], shape.literal(rel))
            }
        }
    }
}

/// One slot of the grid: the literal shape and relation, the condition, and
/// the optional conditional inverse (a term over `s` and `t`).
#[derive(Debug, Clone)]
pub struct ICEntry {
    pub shape: LiteralShape,
    pub relation: Relation,
    pub condition: Condition,
    pub inverse: Option<ParamTerm>,
}

impl ICEntry {
    pub fn slot_name(&self) -> String {
        format!("{}_{}", self.shape.short_name(), self.relation.short_name())
    }

    /// The width map for this entry: one width variable `k`, the variables
    /// `x`, `s`, `t`, and whichever symbolic constants occur.
    pub fn omega(&self) -> WidthMap {
        let mut omega = WidthMap::new();
        let k = IntTerm::var("k");
        omega.declare_var("x", k.clone());
        if self.shape.uses_s() || self.mentions("s") {
            omega.declare_var("s", k.clone());
        }
        omega.declare_var("t", k.clone());
        let k1 = || IntTerm::sub(k.clone(), IntTerm::num(1));
        let consts: [(&str, IntTerm); 5] = [
            ("zero", IntTerm::num(0)),
            ("one", IntTerm::num(1)),
            (
                "allones",
                IntTerm::sub(IntTerm::pow2(k.clone()), IntTerm::num(1)),
            ),
            ("smin", IntTerm::pow2(k1())),
            ("smax", IntTerm::sub(IntTerm::pow2(k1()), IntTerm::num(1))),
        ];
        for (name, value) in consts {
            if self.mentions(name) {
                omega.declare_const(name, k.clone(), value);
            }
        }
        omega
    }

    fn mentions(&self, name: &str) -> bool {
        let in_inverse = self
            .inverse
            .as_ref()
            .is_some_and(|t| t.symbols().iter().any(|s| s.name == name));
        let in_condition = match &self.condition {
            Condition::Formula(f) => f.all_symbols().iter().any(|s| s.name == name),
            Condition::Semantic => false,
        };
        in_inverse || in_condition
    }
}

fn var_s() -> ParamTerm {
    ParamTerm::symbol(BvSymbol::var("s"))
}

fn var_t() -> ParamTerm {
    ParamTerm::symbol(BvSymbol::var("t"))
}

// ---------------------------------------------------------------------------
// Built-in table
// ---------------------------------------------------------------------------

mod dsl {
    //! Term builders for transcribing the inverse tables.
    use super::*;

    pub fn s() -> ParamTerm {
        var_s()
    }

    pub fn t() -> ParamTerm {
        var_t()
    }

    pub fn zero() -> ParamTerm {
        ParamTerm::symbol(BvSymbol::sym_const("zero"))
    }

    pub fn smin() -> ParamTerm {
        ParamTerm::symbol(BvSymbol::sym_const("smin"))
    }

    pub fn smax() -> ParamTerm {
        ParamTerm::symbol(BvSymbol::sym_const("smax"))
    }

    pub fn neg(a: ParamTerm) -> ParamTerm {
        ParamTerm::neg(a)
    }

    pub fn not(a: ParamTerm) -> ParamTerm {
        ParamTerm::not(a)
    }

    pub fn add(a: ParamTerm, b: ParamTerm) -> ParamTerm {
        ParamTerm::add(a, b)
    }

    pub fn sub(a: ParamTerm, b: ParamTerm) -> ParamTerm {
        ParamTerm::sub(a, b)
    }

    pub fn and(a: ParamTerm, b: ParamTerm) -> ParamTerm {
        ParamTerm::binop(BvBinop::And, a, b)
    }

    pub fn or(a: ParamTerm, b: ParamTerm) -> ParamTerm {
        ParamTerm::binop(BvBinop::Or, a, b)
    }

    pub fn shl(a: ParamTerm, b: ParamTerm) -> ParamTerm {
        ParamTerm::binop(BvBinop::Shl, a, b)
    }

    pub fn lshr(a: ParamTerm, b: ParamTerm) -> ParamTerm {
        ParamTerm::binop(BvBinop::Lshr, a, b)
    }

    pub fn mul(a: ParamTerm, b: ParamTerm) -> ParamTerm {
        ParamTerm::binop(BvBinop::Mul, a, b)
    }
}

/// The verified conditional inverse for a slot, when the table has one.
fn builtin_inverse(shape: LiteralShape, rel: Relation) -> Option<ParamTerm> {
    use dsl::*;
    let name = shape.short_name();
    let key = (name.as_str(), rel);
    Some(match key {
        // Relations = and distinct.
        ("neg", Relation::Eq) => neg(t()),
        ("neg", Relation::Ne) => not(t()),
        ("not", Relation::Eq) => not(t()),
        ("not", Relation::Ne) => t(),
        ("add", Relation::Eq) => sub(t(), s()),
        ("add", Relation::Ne) => not(add(s(), t())),
        ("and", Relation::Eq) => t(),
        ("and", Relation::Ne) => not(t()),
        ("ashr_xs", Relation::Ne) => not(t()),
        ("ashr_sx", Relation::Ne) => lshr(t(), sub(s(), t())),
        ("lshr_xs", Relation::Eq) => shl(t(), s()),
        ("lshr_xs", Relation::Ne) => shl(smin(), t()),
        ("lshr_sx", Relation::Ne) => neg(t()),
        ("mul", Relation::Ne) => shl(smax(), t()),
        ("or", Relation::Eq) => t(),
        ("or", Relation::Ne) => not(t()),
        ("shl_xs", Relation::Eq) => lshr(t(), s()),
        ("shl_xs", Relation::Ne) => shl(smax(), t()),
        ("shl_sx", Relation::Ne) => t(),
        ("udiv_xs", Relation::Eq) => mul(s(), t()),
        ("udiv_xs", Relation::Ne) => lshr(s(), t()),
        ("udiv_sx", Relation::Ne) => and(t(), smin()),
        ("urem_xs", Relation::Eq) => t(),
        ("urem_xs", Relation::Ne) => neg(not(t())),
        ("urem_sx", Relation::Eq) => sub(s(), t()),
        ("urem_sx", Relation::Ne) => t(),

        // Signed less-than / less-or-equal.
        ("neg", Relation::Slt) => smin(),
        ("neg", Relation::Sle) => smin(),
        ("not", Relation::Slt) => smax(),
        ("not", Relation::Sle) => smax(),
        ("add", Relation::Slt) => sub(smin(), s()),
        ("add", Relation::Sle) => sub(t(), s()),
        ("and", Relation::Slt) => smin(),
        ("and", Relation::Sle) => t(),
        ("ashr_xs", Relation::Slt) => smin(),
        ("ashr_xs", Relation::Sle) => smin(),
        ("ashr_sx", Relation::Slt) => not(or(s(), smax())),
        ("ashr_sx", Relation::Sle) => not(or(s(), smax())),
        ("lshr_xs", Relation::Slt) => shl(smin(), s()),
        ("lshr_xs", Relation::Sle) => t(),
        ("lshr_sx", Relation::Slt) => not(or(s(), smax())),
        ("lshr_sx", Relation::Sle) => not(or(s(), smax())),
        ("or", Relation::Slt) => smin(),
        ("or", Relation::Sle) => smin(),
        ("shl_xs", Relation::Slt) => lshr(smin(), s()),
        ("shl_xs", Relation::Sle) => lshr(t(), s()),
        ("udiv_xs", Relation::Slt) => not(neg(t())),
        ("udiv_xs", Relation::Sle) => t(),
        ("urem_xs", Relation::Slt) => not(or(smax(), neg(s()))),
        ("urem_xs", Relation::Sle) => and(t(), smin()),
        ("urem_sx", Relation::Slt) => t(),
        ("urem_sx", Relation::Sle) => sub(s(), t()),

        // Signed greater-than / greater-or-equal.
        ("neg", Relation::Sgt) => not(t()),
        ("neg", Relation::Sge) => neg(t()),
        ("not", Relation::Sgt) => smin(),
        ("not", Relation::Sge) => smin(),
        ("add", Relation::Sgt) => sub(smax(), s()),
        ("add", Relation::Sge) => sub(t(), s()),
        ("and", Relation::Sgt) => smax(),
        ("and", Relation::Sge) => smax(),
        ("ashr_xs", Relation::Sgt) => smax(),
        ("ashr_xs", Relation::Sge) => smax(),
        ("ashr_sx", Relation::Sgt) => and(s(), smin()),
        ("ashr_sx", Relation::Sge) => and(s(), smin()),
        ("lshr_xs", Relation::Sgt) => shl(smax(), s()),
        ("lshr_xs", Relation::Sge) => shl(t(), s()),
        ("or", Relation::Sgt) => smax(),
        ("or", Relation::Sge) => t(),
        ("shl_xs", Relation::Sgt) => lshr(smax(), s()),
        ("shl_xs", Relation::Sge) => lshr(smax(), s()),
        ("urem_xs", Relation::Sgt) => neg(not(t())),
        ("urem_xs", Relation::Sge) => t(),
        ("urem_sx", Relation::Sgt) => sub(or(s(), smin()), and(smax(), sub(t(), smax()))),
        ("urem_sx", Relation::Sge) => sub(or(s(), smin()), and(t(), smax())),

        // Unsigned less-than / less-or-equal.
        ("neg", Relation::Ult) => zero(),
        ("neg", Relation::Ule) => zero(),
        ("not", Relation::Ult) => neg(t()),
        ("not", Relation::Ule) => not(t()),
        ("add", Relation::Ult) => neg(s()),
        ("add", Relation::Ule) => neg(s()),
        ("and", Relation::Ult) => zero(),
        ("and", Relation::Ule) => t(),
        ("ashr_xs", Relation::Ult) => zero(),
        ("ashr_xs", Relation::Ule) => zero(),
        ("ashr_sx", Relation::Ult) => not(or(s(), smax())),
        ("ashr_sx", Relation::Ule) => not(or(s(), smax())),
        ("lshr_xs", Relation::Ult) => s(),
        ("lshr_xs", Relation::Ule) => s(),
        ("lshr_sx", Relation::Ult) => s(),
        ("lshr_sx", Relation::Ule) => s(),
        ("mul", Relation::Ult) => zero(),
        ("mul", Relation::Ule) => zero(),
        ("or", Relation::Ult) => s(),
        ("or", Relation::Ule) => s(),
        ("shl_xs", Relation::Ult) => zero(),
        ("shl_xs", Relation::Ule) => zero(),
        ("shl_sx", Relation::Ult) => smin(),
        ("shl_sx", Relation::Ule) => smin(),
        ("udiv_xs", Relation::Ult) => zero(),
        ("udiv_xs", Relation::Ule) => t(),
        ("udiv_sx", Relation::Ult) => not(zero()),
        ("udiv_sx", Relation::Ule) => not(zero()),
        ("urem_xs", Relation::Ult) => s(),
        ("urem_xs", Relation::Ule) => s(),
        ("urem_sx", Relation::Ult) => s(),
        ("urem_sx", Relation::Ule) => s(),

        // Unsigned greater-than / greater-or-equal.
        ("neg", Relation::Ugt) => not(t()),
        ("neg", Relation::Uge) => neg(t()),
        ("not", Relation::Ugt) => zero(),
        ("not", Relation::Uge) => zero(),
        ("add", Relation::Ugt) => not(s()),
        ("add", Relation::Uge) => not(s()),
        ("and", Relation::Ugt) => s(),
        ("and", Relation::Uge) => s(),
        ("ashr_xs", Relation::Ugt) => not(zero()),
        ("ashr_xs", Relation::Uge) => not(zero()),
        ("ashr_sx", Relation::Ugt) => and(s(), smin()),
        ("ashr_sx", Relation::Uge) => and(s(), smin()),
        ("lshr_xs", Relation::Ugt) => not(s()),
        ("lshr_xs", Relation::Uge) => not(s()),
        ("lshr_sx", Relation::Ugt) => zero(),
        ("lshr_sx", Relation::Uge) => zero(),
        ("or", Relation::Ugt) => not(s()),
        ("or", Relation::Uge) => t(),
        ("shl_xs", Relation::Ugt) => not(zero()),
        ("shl_xs", Relation::Uge) => not(zero()),
        ("udiv_xs", Relation::Ugt) => not(zero()),
        ("udiv_sx", Relation::Ugt) => zero(),
        ("udiv_sx", Relation::Uge) => zero(),
        ("urem_xs", Relation::Ugt) => not(neg(s())),
        ("urem_xs", Relation::Uge) => t(),
        ("urem_sx", Relation::Ugt) => zero(),
        ("urem_sx", Relation::Uge) => zero(),

        _ => return None,
    })
}

/// Slots whose condition is unconditionally `true`: each of these inverses
/// satisfies `l[inverse]` outright, by a width-independent argument (for
/// example `(t - s) + s = t`, or sign-bit preservation under `bvashr`).
/// Every claim here is re-verified exhaustively by the inverse checker.
const TOP_CONDITION_SLOTS: &[(&str, Relation)] = &[
    ("neg", Relation::Eq),
    ("not", Relation::Eq),
    ("add", Relation::Eq),
    ("neg", Relation::Ne),
    ("not", Relation::Ne),
    ("add", Relation::Ne),
    ("ashr_xs", Relation::Ne),
    ("neg", Relation::Ule),
    ("not", Relation::Ule),
    ("add", Relation::Ule),
    ("and", Relation::Ule),
    ("ashr_xs", Relation::Ule),
    ("lshr_xs", Relation::Ule),
    ("lshr_sx", Relation::Ule),
    ("mul", Relation::Ule),
    ("shl_xs", Relation::Ule),
    ("shl_sx", Relation::Ule),
    ("urem_xs", Relation::Ule),
    ("urem_sx", Relation::Ule),
    ("neg", Relation::Uge),
    ("not", Relation::Uge),
    ("add", Relation::Uge),
    ("ashr_xs", Relation::Uge),
    ("udiv_sx", Relation::Uge),
    ("neg", Relation::Sle),
    ("not", Relation::Sle),
    ("add", Relation::Sle),
    ("neg", Relation::Sge),
    ("not", Relation::Sge),
    ("add", Relation::Sge),
];

fn builtin_condition(shape: LiteralShape, rel: Relation) -> Condition {
    use dsl::*;
    let name = shape.short_name();
    // The two conditions quoted outright: for x & s = t it is t & s = t, and
    // for x & s != t it is t != 0 or s != 0.
    if name == "and" && rel == Relation::Eq {
        return Condition::Formula(ParamFormula::eq(and(t(), s()), t()));
    }
    if name == "and" && rel == Relation::Ne {
        return Condition::Formula(ParamFormula::or(
            ParamFormula::ne(t(), zero()),
            ParamFormula::ne(s(), zero()),
        ));
    }
    if TOP_CONDITION_SLOTS.contains(&(name.as_str(), rel)) {
        return Condition::top();
    }
    Condition::Semantic
}

/// The built-in entries: the full 16 x 10 grid, with the two directly
/// known conditions, the unconditional slots, and every inverse the
/// bundled tables carry (blank cells are recorded as absent).
pub fn builtin_ic_entries() -> Vec<ICEntry> {
    let mut out = Vec::with_capacity(160);
    for shape in LiteralShape::all() {
        for rel in Relation::ALL {
            out.push(ICEntry {
                shape,
                relation: rel,
                condition: builtin_condition(shape, rel),
                inverse: builtin_inverse(shape, rel),
            });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Goal generation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, serde::Deserialize)]
pub struct GridReport {
    pub slots: usize,
    pub with_explicit_condition: usize,
    pub top_conditions: usize,
    pub with_inverse: usize,
}

impl GridReport {
    pub fn for_entries(entries: &[ICEntry]) -> GridReport {
        use std::collections::BTreeSet;
        let slots: BTreeSet<(String, Relation)> = entries
            .iter()
            .map(|e| (e.shape.short_name(), e.relation))
            .collect();
        GridReport {
            slots: slots.len(),
            with_explicit_condition: entries
                .iter()
                .filter(|e| matches!(e.condition, Condition::Formula(_)))
                .count(),
            top_conditions: entries.iter().filter(|e| e.condition.is_top()).count(),
            with_inverse: entries.iter().filter(|e| e.inverse.is_some()).count(),
        }
    }
}

/// Generates the proof obligations for a list of entries.
///
/// For an entry with an explicit condition, the right-to-left direction is
/// the quantifier-free goal `not (l[x] and not cond)`; the left-to-right
/// direction is `cond => l[inverse]` when an inverse is present (also
/// quantifier-free) and `cond => exists x. l[x]` otherwise. For an entry
/// whose condition is semantic, only the conditional-inverse obligation
/// `(exists x. l[x]) => l[inverse]` can be generated.
pub fn gen_ic_goals(entries: &[ICEntry]) -> Vec<Goal> {
    let mut goals = Vec::new();
    let x = BvSymbol::var("x");
    for entry in entries {
        let slot = entry.slot_name();
        let literal = entry.shape.literal(entry.relation);
        let omega = entry.omega();
        match &entry.condition {
            Condition::Formula(cond) => {
                let rtl = ParamFormula::not(ParamFormula::and(
                    literal.clone(),
                    ParamFormula::not(cond.clone()),
                ));
                goals.push(Goal {
                    id: format!("{slot}_rtl"),
                    kind: GoalKind::IcRtlPrime,
                    formula: rtl,
                    omega: omega.clone(),
                    expected: Expected::Valid,
                    provenance: format!("rtl' for {slot} with explicit condition"),
                });
                match &entry.inverse {
                    Some(inverse) => {
                        let ltr = ParamFormula::implies(cond.clone(), literal.subst(&x, inverse));
                        goals.push(Goal {
                            id: format!("{slot}_ltr"),
                            kind: GoalKind::IcLtrPrime,
                            formula: ltr,
                            omega,
                            expected: Expected::Valid,
                            provenance: format!(
                                "ltr' for {slot} with conditional inverse {inverse}"
                            ),
                        });
                    }
                    None => {
                        let ltr = ParamFormula::implies(
                            cond.clone(),
                            ParamFormula::exists(vec![x.clone()], literal.clone()),
                        );
                        goals.push(Goal {
                            id: format!("{slot}_ltr"),
                            kind: GoalKind::IcLtr,
                            formula: ltr,
                            omega,
                            expected: Expected::Valid,
                            provenance: format!("ltr for {slot} (no inverse available)"),
                        });
                    }
                }
            }
            Condition::Semantic => {
                if let Some(inverse) = &entry.inverse {
                    let ltr = ParamFormula::implies(
                        ParamFormula::exists(vec![x.clone()], literal.clone()),
                        literal.subst(&x, inverse),
                    );
                    goals.push(Goal {
                        id: format!("{slot}_ltr"),
                        kind: GoalKind::IcLtr,
                        formula: ltr,
                        omega,
                        expected: Expected::Valid,
                        provenance: format!(
                            "conditional-inverse obligation for {slot} (semantic condition)"
                        ),
                    });
                }
            }
        }
    }
    goals
}

// ---------------------------------------------------------------------------
// Inverse checking
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub enum InverseVerdict {
    Pass { checked_assignments: u64 },
    Fail { witness: Invalid },
}

impl InverseVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, InverseVerdict::Pass { .. })
    }
}

/// Exhaustively verifies `cond => l[inverse]` for all `s`, `t` at widths
/// `1..=width_bound`, with the semantic condition when none is supplied.
pub fn check_inverse(entry: &ICEntry, width_bound: u32) -> Result<InverseVerdict, GoalError> {
    let inverse = entry
        .inverse
        .as_ref()
        .ok_or_else(|| GoalError::MissingInverse(entry.slot_name()))?;
    let x = BvSymbol::var("x");
    let literal = entry.shape.literal(entry.relation);
    let cond = entry.condition.as_formula(entry.shape, entry.relation);
    let obligation = ParamFormula::implies(cond, literal.subst(&x, inverse));
    let omega = entry.omega();
    let outcome = oracle::check_valid_at_widths(&obligation, &omega, width_bound, 2 * 64)?;
    Ok(match outcome.counterexample {
        None => InverseVerdict::Pass {
            checked_assignments: outcome.checked_assignments,
        },
        Some(witness) => InverseVerdict::Fail { witness },
    })
}

/// Randomized check of `cond => l[inverse]` at the given widths, for widths
/// beyond exhaustive reach. Failures are real counterexamples; a pass means
/// no failure was found among the samples. With a semantic condition the
/// existential is decided by exhaustive `x` enumeration when the width
/// allows, otherwise by probing a fixed set of distinguished values plus
/// random samples (which can only under-approximate the condition, so no
/// spurious failures arise).
pub fn check_inverse_sampled(
    entry: &ICEntry,
    widths: &[u32],
    samples_per_width: u32,
    seed: u64,
) -> Result<InverseVerdict, GoalError> {
    use rand::{rngs::StdRng, Rng, SeedableRng};

    let inverse = entry
        .inverse
        .as_ref()
        .ok_or_else(|| GoalError::MissingInverse(entry.slot_name()))?;
    let x = BvSymbol::var("x");
    let literal = entry.shape.literal(entry.relation);
    let applied = literal.subst(&x, inverse);
    let omega = entry.omega();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checked: u64 = 0;

    for &k in widths {
        if !(1..=63).contains(&k) {
            return Err(GoalError::Malformed(format!(
                "sampled width {k} outside 1..=63"
            )));
        }
        let width_vals: std::collections::BTreeMap<String, u32> = [("k".to_string(), k)].into();
        let fixed_literal = oracle::instantiate(&literal, &omega, &width_vals)?;
        let fixed_applied = oracle::instantiate(&applied, &omega, &width_vals)?;
        let explicit_cond = match &entry.condition {
            Condition::Formula(f) => Some(oracle::instantiate(f, &omega, &width_vals)?),
            Condition::Semantic => None,
        };
        let m = 1u128 << k;
        for _ in 0..samples_per_width {
            let s_val = rng.random_range(0..m);
            let t_val = rng.random_range(0..m);
            let mut vals: std::collections::BTreeMap<String, u128> =
                [("s".to_string(), s_val), ("t".to_string(), t_val)].into();
            let cond_holds = match &explicit_cond {
                Some(cond) => oracle::eval_formula(cond, &vals)?,
                None => {
                    // Probe distinguished values first, then random ones.
                    let probes = [0, 1, m - 1, m / 2, m / 2 - 1, s_val, t_val];
                    let mut found = false;
                    for x_val in probes
                        .into_iter()
                        .chain((0..512u32).map(|_| rng.random_range(0..m)))
                    {
                        vals.insert("x".to_string(), x_val);
                        if oracle::eval_formula(&fixed_literal, &vals)? {
                            found = true;
                            break;
                        }
                    }
                    vals.remove("x");
                    found
                }
            };
            if cond_holds {
                checked += 1;
                if !oracle::eval_formula(&fixed_applied, &vals)? {
                    return Ok(InverseVerdict::Fail {
                        witness: Invalid {
                            widths: width_vals.clone(),
                            vars: vals,
                        },
                    });
                }
            }
        }
    }
    Ok(InverseVerdict::Pass {
        checked_assignments: checked,
    })
}

// ---------------------------------------------------------------------------
// External `.ic` tables
// ---------------------------------------------------------------------------

/// Parses entries in the `.ic` format:
/// `(ic (literal (<op> <pos>) <rel>) (cond <formula>|true) (inverse <term>|none))`
/// with `x`, `s`, `t` reserved; `0`, `1`, `allones`, `smin`, `smax` denote
/// the width-`k` symbolic constants.
pub fn load_ic_table(text: &str) -> Result<Vec<ICEntry>, GoalError> {
    let sexps = read_sexps(text).map_err(GoalError::Parse)?;
    sexps.iter().map(parse_entry).collect()
}

fn parse_entry(sexp: &SExp) -> Result<ICEntry, GoalError> {
    let items = expect_list(sexp, "ic", 4)?;
    // (literal (<op> <pos>) <rel>)
    let lit = expect_list(&items[1], "literal", 3)?;
    let shape = {
        let op_pos = lit[1]
            .as_list()
            .ok_or_else(|| GoalError::Malformed("expected (op pos)".to_string()))?;
        if op_pos.len() != 2 {
            return Err(GoalError::Malformed("expected (op pos)".to_string()));
        }
        let op_name = op_pos[0]
            .as_atom()
            .ok_or_else(|| GoalError::Malformed("expected an operator".to_string()))?;
        let op = [
            ShapeOp::Neg,
            ShapeOp::Not,
            ShapeOp::And,
            ShapeOp::Or,
            ShapeOp::Shl,
            ShapeOp::Lshr,
            ShapeOp::Ashr,
            ShapeOp::Add,
            ShapeOp::Mul,
            ShapeOp::Udiv,
            ShapeOp::Urem,
        ]
        .into_iter()
        .find(|op| op.spelling() == op_name)
        .ok_or_else(|| GoalError::Malformed(format!("unknown shape operator `{op_name}`")))?;
        let x_first = match op_pos[1].as_atom() {
            Some("x") => true,
            Some("s") => false,
            _ => {
                return Err(GoalError::Malformed(
                    "position must be `x` or `s`".to_string(),
                ))
            }
        };
        if (op.is_unary() || op.is_commutative()) && !x_first {
            return Err(GoalError::Malformed(format!(
                "`{op_name}` has a single canonical position `x`"
            )));
        }
        LiteralShape { op, x_first }
    };
    let relation = {
        let rel_name = lit[2]
            .as_atom()
            .ok_or_else(|| GoalError::Malformed("expected a relation".to_string()))?;
        Relation::ALL
            .into_iter()
            .find(|r| r.spelling() == rel_name)
            .ok_or_else(|| GoalError::Malformed(format!("unknown relation `{rel_name}`")))?
    };

    // The entry vocabulary, for parsing the condition and inverse.
    let mut omega = WidthMap::new();
    let k = IntTerm::var("k");
    let k1 = IntTerm::sub(k.clone(), IntTerm::num(1));
    omega.declare_var("x", k.clone());
    omega.declare_var("s", k.clone());
    omega.declare_var("t", k.clone());
    omega.declare_const("zero", k.clone(), IntTerm::num(0));
    omega.declare_const("one", k.clone(), IntTerm::num(1));
    omega.declare_const(
        "allones",
        k.clone(),
        IntTerm::sub(IntTerm::pow2(k.clone()), IntTerm::num(1)),
    );
    omega.declare_const("smin", k.clone(), IntTerm::pow2(k1.clone()));
    omega.declare_const("smax", k, IntTerm::sub(IntTerm::pow2(k1), IntTerm::num(1)));

    let cond_items = expect_list(&items[2], "cond", 2)?;
    let condition = match cond_items[1].as_atom() {
        Some("true") => Condition::top(),
        Some("semantic") => Condition::Semantic,
        _ => {
            let renamed = rename_const_tokens(&cond_items[1]);
            let f =
                crate::ast::formula_from_sexp(&renamed, &mut omega).map_err(GoalError::Parse)?;
            let bad: Vec<String> = f
                .free_symbols()
                .into_iter()
                .filter(|sym| sym.name == "x")
                .map(|sym| sym.name)
                .collect();
            if !bad.is_empty() {
                return Err(GoalError::Malformed(
                    "condition must be over s and t only".to_string(),
                ));
            }
            Condition::Formula(f)
        }
    };

    let inv_items = expect_list(&items[3], "inverse", 2)?;
    let inverse = match inv_items[1].as_atom() {
        Some("none") => None,
        _ => {
            let renamed = rename_const_tokens(&inv_items[1]);
            let t = crate::ast::term_from_sexp(&renamed, &mut omega).map_err(GoalError::Parse)?;
            if t.symbols().iter().any(|sym| sym.name == "x") {
                return Err(GoalError::Malformed(
                    "inverse must be over s and t only".to_string(),
                ));
            }
            Some(t)
        }
    };

    Ok(ICEntry {
        shape,
        relation,
        condition,
        inverse,
    })
}

fn expect_list<'a>(sexp: &'a SExp, head: &str, len: usize) -> Result<&'a [SExp], GoalError> {
    let items = sexp
        .as_list()
        .ok_or_else(|| GoalError::Malformed(format!("expected ({head} ...)")))?;
    if items.len() != len || items[0].as_atom() != Some(head) {
        return Err(GoalError::Malformed(format!(
            "expected ({head} ...) with {} item(s)",
            len - 1
        )));
    }
    Ok(items)
}

/// Maps the numeral shorthands of the `.ic` surface to the symbolic
/// constants of the entry vocabulary.
fn rename_const_tokens(sexp: &SExp) -> SExp {
    match sexp {
        SExp::Atom(a, pos) => {
            let renamed = match a.as_str() {
                "0" => "zero",
                "1" => "one",
                _ => a.as_str(),
            };
            SExp::Atom(renamed.to_string(), *pos)
        }
        SExp::List(items, pos) => SExp::List(items.iter().map(rename_const_tokens).collect(), *pos),
    }
}
