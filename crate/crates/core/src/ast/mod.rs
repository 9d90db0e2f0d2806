//! Core ASTs: parametric bit-vector terms and formulas, integer terms and
//! formulas with the uninterpreted symbols `pow2`/`intand`/`intor`/`intxor`,
//! and the width map that assigns symbolic bit-widths and values.
//!
//! All ASTs are immutable trees behind `Arc`s: cloning is cheap, sharing is
//! permitted, and structural equality/hashing is by tree shape.

mod parse;
mod print;

pub(crate) use parse::{formula_from_sexp, term_from_sexp};
pub use parse::{
    parse_formula_str, parse_int_term_str, parse_pbv, parse_term_str, read_sexps, ParseError, SExp,
};
pub use print::pretty_problem;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// Whether a symbol is a variable (from `X*`) or a symbolic constant (from `Z*`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    Variable,
    SymConst,
}

/// A parametric bit-vector symbol. Its bit-width (and value, for constants)
/// lives in the [`WidthMap`], not here.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BvSymbol {
    pub name: String,
    pub kind: SymbolKind,
}

impl BvSymbol {
    pub fn var(name: impl Into<String>) -> Self {
        BvSymbol {
            name: name.into(),
            kind: SymbolKind::Variable,
        }
    }

    pub fn sym_const(name: impl Into<String>) -> Self {
        BvSymbol {
            name: name.into(),
            kind: SymbolKind::SymConst,
        }
    }
}

/// Unary bit-vector operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BvUnop {
    Not,
    Neg,
}

/// Binary bit-vector operators. `Concat` is the only one whose arguments may
/// have different widths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BvBinop {
    And,
    Or,
    Xor,
    Shl,
    Lshr,
    Ashr,
    Add,
    Mul,
    Urem,
    Udiv,
    Concat,
}

impl BvBinop {
    pub const ALL: [BvBinop; 11] = [
        BvBinop::And,
        BvBinop::Or,
        BvBinop::Xor,
        BvBinop::Shl,
        BvBinop::Lshr,
        BvBinop::Ashr,
        BvBinop::Add,
        BvBinop::Mul,
        BvBinop::Urem,
        BvBinop::Udiv,
        BvBinop::Concat,
    ];

    pub fn smtlib_name(self) -> &'static str {
        match self {
            BvBinop::And => "bvand",
            BvBinop::Or => "bvor",
            BvBinop::Xor => "bvxor",
            BvBinop::Shl => "bvshl",
            BvBinop::Lshr => "bvlshr",
            BvBinop::Ashr => "bvashr",
            BvBinop::Add => "bvadd",
            BvBinop::Mul => "bvmul",
            BvBinop::Urem => "bvurem",
            BvBinop::Udiv => "bvudiv",
            BvBinop::Concat => "concat",
        }
    }
}

/// Bit-vector comparison relations (equality and disequality are separate
/// formula nodes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BvRel {
    Ult,
    Ugt,
    Ule,
    Uge,
    Slt,
    Sgt,
    Sle,
    Sge,
}

impl BvRel {
    pub const ALL: [BvRel; 8] = [
        BvRel::Ult,
        BvRel::Ugt,
        BvRel::Ule,
        BvRel::Uge,
        BvRel::Slt,
        BvRel::Sgt,
        BvRel::Sle,
        BvRel::Sge,
    ];

    pub fn smtlib_name(self) -> &'static str {
        match self {
            BvRel::Ult => "bvult",
            BvRel::Ugt => "bvugt",
            BvRel::Ule => "bvule",
            BvRel::Uge => "bvuge",
            BvRel::Slt => "bvslt",
            BvRel::Sgt => "bvsgt",
            BvRel::Sle => "bvsle",
            BvRel::Sge => "bvsge",
        }
    }

    pub fn is_signed(self) -> bool {
        matches!(self, BvRel::Slt | BvRel::Sgt | BvRel::Sle | BvRel::Sge)
    }

    /// The corresponding integer relation on the unsigned (or `uts`) values.
    pub fn int_rel(self) -> IntRel {
        match self {
            BvRel::Ult | BvRel::Slt => IntRel::Lt,
            BvRel::Ugt | BvRel::Sgt => IntRel::Gt,
            BvRel::Ule | BvRel::Sle => IntRel::Le,
            BvRel::Uge | BvRel::Sge => IntRel::Ge,
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum TermNode {
    Symbol(BvSymbol),
    Unop(BvUnop, ParamTerm),
    Binop(BvBinop, ParamTerm, ParamTerm),
    /// `t[hi:lo]` with concrete bounds, `lo <= hi`. Width checks are the
    /// sort checker's job.
    Extract {
        hi: u32,
        lo: u32,
        arg: ParamTerm,
    },
}

/// A parametric bit-vector term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamTerm(Arc<TermNode>);

impl ParamTerm {
    fn new(node: TermNode) -> Self {
        ParamTerm(Arc::new(node))
    }

    pub fn node(&self) -> &TermNode {
        &self.0
    }

    pub fn symbol(sym: BvSymbol) -> Self {
        Self::new(TermNode::Symbol(sym))
    }

    pub fn unop(op: BvUnop, arg: ParamTerm) -> Self {
        Self::new(TermNode::Unop(op, arg))
    }

    pub fn binop(op: BvBinop, lhs: ParamTerm, rhs: ParamTerm) -> Self {
        Self::new(TermNode::Binop(op, lhs, rhs))
    }

    pub fn not(arg: ParamTerm) -> Self {
        Self::unop(BvUnop::Not, arg)
    }

    pub fn neg(arg: ParamTerm) -> Self {
        Self::unop(BvUnop::Neg, arg)
    }

    pub fn add(lhs: ParamTerm, rhs: ParamTerm) -> Self {
        Self::binop(BvBinop::Add, lhs, rhs)
    }

    /// `bvsub` is not in the operator set; it desugars to `bvadd(a, bvneg b)`.
    pub fn sub(lhs: ParamTerm, rhs: ParamTerm) -> Self {
        Self::add(lhs, Self::neg(rhs))
    }

    pub fn extract(hi: u32, lo: u32, arg: ParamTerm) -> Self {
        assert!(lo <= hi, "extract bounds must satisfy lo <= hi");
        Self::new(TermNode::Extract { hi, lo, arg })
    }

    /// Free symbols of the term (terms have no binders).
    pub fn symbols(&self) -> BTreeSet<BvSymbol> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<BvSymbol>) {
        match self.node() {
            TermNode::Symbol(s) => {
                out.insert(s.clone());
            }
            TermNode::Unop(_, a) => a.collect_symbols(out),
            TermNode::Binop(_, a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            TermNode::Extract { arg, .. } => arg.collect_symbols(out),
        }
    }

    /// Replace every occurrence of the variable `var` by `replacement`.
    pub fn subst(&self, var: &BvSymbol, replacement: &ParamTerm) -> ParamTerm {
        match self.node() {
            TermNode::Symbol(s) => {
                if s == var {
                    replacement.clone()
                } else {
                    self.clone()
                }
            }
            TermNode::Unop(op, a) => ParamTerm::unop(*op, a.subst(var, replacement)),
            TermNode::Binop(op, a, b) => {
                ParamTerm::binop(*op, a.subst(var, replacement), b.subst(var, replacement))
            }
            TermNode::Extract { hi, lo, arg } => {
                ParamTerm::extract(*hi, *lo, arg.subst(var, replacement))
            }
        }
    }

    pub fn contains_extract(&self) -> bool {
        match self.node() {
            TermNode::Symbol(_) => false,
            TermNode::Unop(_, a) => a.contains_extract(),
            TermNode::Binop(_, a, b) => a.contains_extract() || b.contains_extract(),
            TermNode::Extract { .. } => true,
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum FormulaNode {
    True,
    False,
    Eq(ParamTerm, ParamTerm),
    Ne(ParamTerm, ParamTerm),
    Rel(BvRel, ParamTerm, ParamTerm),
    Not(ParamFormula),
    And(ParamFormula, ParamFormula),
    Or(ParamFormula, ParamFormula),
    Implies(ParamFormula, ParamFormula),
    Iff(ParamFormula, ParamFormula),
    /// Quantified symbols are always variables; their widths live in the
    /// width map like everything else.
    Forall(Vec<BvSymbol>, ParamFormula),
    Exists(Vec<BvSymbol>, ParamFormula),
}

/// A parametric bit-vector formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamFormula(Arc<FormulaNode>);

impl ParamFormula {
    fn new(node: FormulaNode) -> Self {
        ParamFormula(Arc::new(node))
    }

    pub fn node(&self) -> &FormulaNode {
        &self.0
    }

    pub fn tru() -> Self {
        Self::new(FormulaNode::True)
    }

    pub fn fls() -> Self {
        Self::new(FormulaNode::False)
    }

    pub fn eq(lhs: ParamTerm, rhs: ParamTerm) -> Self {
        Self::new(FormulaNode::Eq(lhs, rhs))
    }

    pub fn ne(lhs: ParamTerm, rhs: ParamTerm) -> Self {
        Self::new(FormulaNode::Ne(lhs, rhs))
    }

    pub fn rel(rel: BvRel, lhs: ParamTerm, rhs: ParamTerm) -> Self {
        Self::new(FormulaNode::Rel(rel, lhs, rhs))
    }

    pub fn not(f: ParamFormula) -> Self {
        Self::new(FormulaNode::Not(f))
    }

    pub fn and(a: ParamFormula, b: ParamFormula) -> Self {
        Self::new(FormulaNode::And(a, b))
    }

    pub fn or(a: ParamFormula, b: ParamFormula) -> Self {
        Self::new(FormulaNode::Or(a, b))
    }

    pub fn implies(a: ParamFormula, b: ParamFormula) -> Self {
        Self::new(FormulaNode::Implies(a, b))
    }

    pub fn iff(a: ParamFormula, b: ParamFormula) -> Self {
        Self::new(FormulaNode::Iff(a, b))
    }

    pub fn forall(vars: Vec<BvSymbol>, body: ParamFormula) -> Self {
        debug_assert!(vars.iter().all(|v| v.kind == SymbolKind::Variable));
        Self::new(FormulaNode::Forall(vars, body))
    }

    pub fn exists(vars: Vec<BvSymbol>, body: ParamFormula) -> Self {
        debug_assert!(vars.iter().all(|v| v.kind == SymbolKind::Variable));
        Self::new(FormulaNode::Exists(vars, body))
    }

    /// Free symbols of the formula, respecting quantifier binders.
    pub fn free_symbols(&self) -> BTreeSet<BvSymbol> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<BvSymbol>, out: &mut BTreeSet<BvSymbol>) {
        match self.node() {
            FormulaNode::True | FormulaNode::False => {}
            FormulaNode::Eq(a, b) | FormulaNode::Ne(a, b) | FormulaNode::Rel(_, a, b) => {
                for s in a.symbols().into_iter().chain(b.symbols()) {
                    if !bound.contains(&s) {
                        out.insert(s);
                    }
                }
            }
            FormulaNode::Not(f) => f.collect_free(bound, out),
            FormulaNode::And(a, b)
            | FormulaNode::Or(a, b)
            | FormulaNode::Implies(a, b)
            | FormulaNode::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            FormulaNode::Forall(vars, f) | FormulaNode::Exists(vars, f) => {
                let n = bound.len();
                bound.extend(vars.iter().cloned());
                f.collect_free(bound, out);
                bound.truncate(n);
            }
        }
    }

    /// All symbols, free or bound.
    pub fn all_symbols(&self) -> BTreeSet<BvSymbol> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut BTreeSet<BvSymbol>) {
        match self.node() {
            FormulaNode::True | FormulaNode::False => {}
            FormulaNode::Eq(a, b) | FormulaNode::Ne(a, b) | FormulaNode::Rel(_, a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            FormulaNode::Not(f) => f.collect_all(out),
            FormulaNode::And(a, b)
            | FormulaNode::Or(a, b)
            | FormulaNode::Implies(a, b)
            | FormulaNode::Iff(a, b) => {
                a.collect_all(out);
                b.collect_all(out);
            }
            FormulaNode::Forall(vars, f) | FormulaNode::Exists(vars, f) => {
                out.extend(vars.iter().cloned());
                f.collect_all(out);
            }
        }
    }

    /// Replace free occurrences of the variable `var` by `replacement`.
    /// Binders that rebind `var` shadow it.
    pub fn subst(&self, var: &BvSymbol, replacement: &ParamTerm) -> ParamFormula {
        match self.node() {
            FormulaNode::True | FormulaNode::False => self.clone(),
            FormulaNode::Eq(a, b) => {
                ParamFormula::eq(a.subst(var, replacement), b.subst(var, replacement))
            }
            FormulaNode::Ne(a, b) => {
                ParamFormula::ne(a.subst(var, replacement), b.subst(var, replacement))
            }
            FormulaNode::Rel(r, a, b) => {
                ParamFormula::rel(*r, a.subst(var, replacement), b.subst(var, replacement))
            }
            FormulaNode::Not(f) => ParamFormula::not(f.subst(var, replacement)),
            FormulaNode::And(a, b) => {
                ParamFormula::and(a.subst(var, replacement), b.subst(var, replacement))
            }
            FormulaNode::Or(a, b) => {
                ParamFormula::or(a.subst(var, replacement), b.subst(var, replacement))
            }
            FormulaNode::Implies(a, b) => {
                ParamFormula::implies(a.subst(var, replacement), b.subst(var, replacement))
            }
            FormulaNode::Iff(a, b) => {
                ParamFormula::iff(a.subst(var, replacement), b.subst(var, replacement))
            }
            FormulaNode::Forall(vars, f) => {
                if vars.contains(var) {
                    self.clone()
                } else {
                    ParamFormula::forall(vars.clone(), f.subst(var, replacement))
                }
            }
            FormulaNode::Exists(vars, f) => {
                if vars.contains(var) {
                    self.clone()
                } else {
                    ParamFormula::exists(vars.clone(), f.subst(var, replacement))
                }
            }
        }
    }

    pub fn contains_extract(&self) -> bool {
        match self.node() {
            FormulaNode::True | FormulaNode::False => false,
            FormulaNode::Eq(a, b) | FormulaNode::Ne(a, b) | FormulaNode::Rel(_, a, b) => {
                a.contains_extract() || b.contains_extract()
            }
            FormulaNode::Not(f) => f.contains_extract(),
            FormulaNode::And(a, b)
            | FormulaNode::Or(a, b)
            | FormulaNode::Implies(a, b)
            | FormulaNode::Iff(a, b) => a.contains_extract() || b.contains_extract(),
            FormulaNode::Forall(_, f) | FormulaNode::Exists(_, f) => f.contains_extract(),
        }
    }
}

// ---------------------------------------------------------------------------
// Integer / UF layer
// ---------------------------------------------------------------------------

/// The uninterpreted operator applications produced by the conversion before
/// elimination. After elimination only `And`, `Or`, `Xor` may remain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BvUfOp {
    Add,
    Sub,
    Mul,
    Udiv,
    Urem,
    Not,
    Neg,
    Shl,
    Lshr,
    Ashr,
    Concat,
    And,
    Or,
    Xor,
}

impl BvUfOp {
    pub fn name(self) -> &'static str {
        match self {
            BvUfOp::Add => "intadd",
            BvUfOp::Sub => "intsub",
            BvUfOp::Mul => "intmul",
            BvUfOp::Udiv => "intudiv",
            BvUfOp::Urem => "inturem",
            BvUfOp::Not => "intnot",
            BvUfOp::Neg => "intneg",
            BvUfOp::Shl => "intshl",
            BvUfOp::Lshr => "intlshr",
            BvUfOp::Ashr => "intashr",
            BvUfOp::Concat => "intconcat",
            BvUfOp::And => "intand",
            BvUfOp::Or => "intor",
            BvUfOp::Xor => "intxor",
        }
    }

    /// The three operators that survive elimination as uninterpreted symbols.
    pub fn is_bitwise_uf(self) -> bool {
        matches!(self, BvUfOp::And | BvUfOp::Or | BvUfOp::Xor)
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum IntNode {
    Num(i128),
    Var(String),
    Add(IntTerm, IntTerm),
    Sub(IntTerm, IntTerm),
    Mul(IntTerm, IntTerm),
    Div(IntTerm, IntTerm),
    Mod(IntTerm, IntTerm),
    Abs(IntTerm),
    Pow2(IntTerm),
    Ite(IntFormula, IntTerm, IntTerm),
    /// `op(width, args...)`; arity 1 for Not/Neg, 2 otherwise.
    BvApp {
        op: BvUfOp,
        width: IntTerm,
        args: Vec<IntTerm>,
    },
}

/// An integer term over `+ - * div mod abs ite`, numerals, variables, and
/// the uninterpreted symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntTerm(Arc<IntNode>);

impl IntTerm {
    fn new(node: IntNode) -> Self {
        IntTerm(Arc::new(node))
    }

    pub fn node(&self) -> &IntNode {
        &self.0
    }

    pub fn num(n: i128) -> Self {
        Self::new(IntNode::Num(n))
    }

    pub fn var(name: impl Into<String>) -> Self {
        Self::new(IntNode::Var(name.into()))
    }

    pub fn add(a: IntTerm, b: IntTerm) -> Self {
        Self::new(IntNode::Add(a, b))
    }

    pub fn sub(a: IntTerm, b: IntTerm) -> Self {
        Self::new(IntNode::Sub(a, b))
    }

    pub fn mul(a: IntTerm, b: IntTerm) -> Self {
        Self::new(IntNode::Mul(a, b))
    }

    pub fn div(a: IntTerm, b: IntTerm) -> Self {
        Self::new(IntNode::Div(a, b))
    }

    pub fn modulo(a: IntTerm, b: IntTerm) -> Self {
        Self::new(IntNode::Mod(a, b))
    }

    pub fn abs(a: IntTerm) -> Self {
        Self::new(IntNode::Abs(a))
    }

    pub fn pow2(a: IntTerm) -> Self {
        Self::new(IntNode::Pow2(a))
    }

    pub fn ite(c: IntFormula, t: IntTerm, e: IntTerm) -> Self {
        Self::new(IntNode::Ite(c, t, e))
    }

    pub fn bv_app(op: BvUfOp, width: IntTerm, args: Vec<IntTerm>) -> Self {
        let arity = match op {
            BvUfOp::Not | BvUfOp::Neg => 1,
            _ => 2,
        };
        assert_eq!(
            args.len(),
            arity,
            "{} expects {} argument(s)",
            op.name(),
            arity
        );
        Self::new(IntNode::BvApp { op, width, args })
    }

    /// `min(a, b)` rendered as an ite, which is what the target logic gets.
    pub fn min(a: IntTerm, b: IntTerm) -> Self {
        Self::ite(IntFormula::le(a.clone(), b.clone()), a, b)
    }

    /// `max(a, b)` rendered as an ite.
    pub fn max(a: IntTerm, b: IntTerm) -> Self {
        Self::ite(IntFormula::le(a.clone(), b.clone()), b, a)
    }

    pub fn as_num(&self) -> Option<i128> {
        match self.node() {
            IntNode::Num(n) => Some(*n),
            _ => None,
        }
    }

    /// Free integer variables. Integer terms have no binders, so this is
    /// every variable occurrence.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self.node() {
            IntNode::Num(_) => {}
            IntNode::Var(v) => {
                out.insert(v.clone());
            }
            IntNode::Add(a, b)
            | IntNode::Sub(a, b)
            | IntNode::Mul(a, b)
            | IntNode::Div(a, b)
            | IntNode::Mod(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            IntNode::Abs(a) | IntNode::Pow2(a) => a.collect_vars(out),
            IntNode::Ite(c, t, e) => {
                c.collect_free_into(&mut Vec::new(), out);
                t.collect_vars(out);
                e.collect_vars(out);
            }
            IntNode::BvApp { width, args, .. } => {
                width.collect_vars(out);
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    /// The set of `BvApp` operators occurring in the term.
    pub fn collect_uf_ops(&self, out: &mut BTreeSet<BvUfOp>) {
        match self.node() {
            IntNode::Num(_) | IntNode::Var(_) => {}
            IntNode::Add(a, b)
            | IntNode::Sub(a, b)
            | IntNode::Mul(a, b)
            | IntNode::Div(a, b)
            | IntNode::Mod(a, b) => {
                a.collect_uf_ops(out);
                b.collect_uf_ops(out);
            }
            IntNode::Abs(a) | IntNode::Pow2(a) => a.collect_uf_ops(out),
            IntNode::Ite(c, t, e) => {
                c.collect_uf_ops(out);
                t.collect_uf_ops(out);
                e.collect_uf_ops(out);
            }
            IntNode::BvApp { op, width, args } => {
                out.insert(*op);
                width.collect_uf_ops(out);
                for a in args {
                    a.collect_uf_ops(out);
                }
            }
        }
    }

    pub fn uses_pow2(&self) -> bool {
        match self.node() {
            IntNode::Num(_) | IntNode::Var(_) => false,
            IntNode::Pow2(_) => true,
            IntNode::Add(a, b)
            | IntNode::Sub(a, b)
            | IntNode::Mul(a, b)
            | IntNode::Div(a, b)
            | IntNode::Mod(a, b) => a.uses_pow2() || b.uses_pow2(),
            IntNode::Abs(a) => a.uses_pow2(),
            IntNode::Ite(c, t, e) => c.uses_pow2() || t.uses_pow2() || e.uses_pow2(),
            IntNode::BvApp { width, args, .. } => {
                width.uses_pow2() || args.iter().any(|a| a.uses_pow2())
            }
        }
    }
}

/// Integer comparison relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntRel {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum IntFormulaNode {
    True,
    False,
    Cmp(IntRel, IntTerm, IntTerm),
    Not(IntFormula),
    And(IntFormula, IntFormula),
    Or(IntFormula, IntFormula),
    Implies(IntFormula, IntFormula),
    Iff(IntFormula, IntFormula),
    Forall(Vec<String>, IntFormula),
    Exists(Vec<String>, IntFormula),
    /// A converted bit-vector relation before elimination.
    BvRelApp {
        rel: BvRel,
        width: IntTerm,
        lhs: IntTerm,
        rhs: IntTerm,
    },
}

/// An integer formula in the target logic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntFormula(Arc<IntFormulaNode>);

impl IntFormula {
    fn new(node: IntFormulaNode) -> Self {
        IntFormula(Arc::new(node))
    }

    pub fn node(&self) -> &IntFormulaNode {
        &self.0
    }

    pub fn tru() -> Self {
        Self::new(IntFormulaNode::True)
    }

    pub fn fls() -> Self {
        Self::new(IntFormulaNode::False)
    }

    pub fn cmp(rel: IntRel, a: IntTerm, b: IntTerm) -> Self {
        Self::new(IntFormulaNode::Cmp(rel, a, b))
    }

    pub fn eq(a: IntTerm, b: IntTerm) -> Self {
        Self::cmp(IntRel::Eq, a, b)
    }

    pub fn ne(a: IntTerm, b: IntTerm) -> Self {
        Self::cmp(IntRel::Ne, a, b)
    }

    pub fn lt(a: IntTerm, b: IntTerm) -> Self {
        Self::cmp(IntRel::Lt, a, b)
    }

    pub fn le(a: IntTerm, b: IntTerm) -> Self {
        Self::cmp(IntRel::Le, a, b)
    }

    pub fn gt(a: IntTerm, b: IntTerm) -> Self {
        Self::cmp(IntRel::Gt, a, b)
    }

    pub fn ge(a: IntTerm, b: IntTerm) -> Self {
        Self::cmp(IntRel::Ge, a, b)
    }

    pub fn not(f: IntFormula) -> Self {
        Self::new(IntFormulaNode::Not(f))
    }

    pub fn and(a: IntFormula, b: IntFormula) -> Self {
        Self::new(IntFormulaNode::And(a, b))
    }

    pub fn or(a: IntFormula, b: IntFormula) -> Self {
        Self::new(IntFormulaNode::Or(a, b))
    }

    pub fn implies(a: IntFormula, b: IntFormula) -> Self {
        Self::new(IntFormulaNode::Implies(a, b))
    }

    pub fn iff(a: IntFormula, b: IntFormula) -> Self {
        Self::new(IntFormulaNode::Iff(a, b))
    }

    pub fn forall(vars: Vec<String>, body: IntFormula) -> Self {
        Self::new(IntFormulaNode::Forall(vars, body))
    }

    pub fn exists(vars: Vec<String>, body: IntFormula) -> Self {
        Self::new(IntFormulaNode::Exists(vars, body))
    }

    pub fn bv_rel_app(rel: BvRel, width: IntTerm, lhs: IntTerm, rhs: IntTerm) -> Self {
        Self::new(IntFormulaNode::BvRelApp {
            rel,
            width,
            lhs,
            rhs,
        })
    }

    /// Conjunction of a list; empty conjunction is `true`.
    pub fn and_all(mut fs: Vec<IntFormula>) -> IntFormula {
        match fs.len() {
            0 => IntFormula::tru(),
            1 => fs.pop().unwrap(),
            _ => {
                let mut it = fs.into_iter();
                let first = it.next().unwrap();
                it.fold(first, IntFormula::and)
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_into(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_into(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self.node() {
            IntFormulaNode::True | IntFormulaNode::False => {}
            IntFormulaNode::Cmp(_, a, b) => {
                for v in a.free_vars().into_iter().chain(b.free_vars()) {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            IntFormulaNode::Not(f) => f.collect_free_into(bound, out),
            IntFormulaNode::And(a, b)
            | IntFormulaNode::Or(a, b)
            | IntFormulaNode::Implies(a, b)
            | IntFormulaNode::Iff(a, b) => {
                a.collect_free_into(bound, out);
                b.collect_free_into(bound, out);
            }
            IntFormulaNode::Forall(vars, f) | IntFormulaNode::Exists(vars, f) => {
                let n = bound.len();
                bound.extend(vars.iter().cloned());
                f.collect_free_into(bound, out);
                bound.truncate(n);
            }
            IntFormulaNode::BvRelApp {
                width, lhs, rhs, ..
            } => {
                for v in width
                    .free_vars()
                    .into_iter()
                    .chain(lhs.free_vars())
                    .chain(rhs.free_vars())
                {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
        }
    }

    pub fn collect_uf_ops(&self, out: &mut BTreeSet<BvUfOp>) {
        match self.node() {
            IntFormulaNode::True | IntFormulaNode::False => {}
            IntFormulaNode::Cmp(_, a, b) => {
                a.collect_uf_ops(out);
                b.collect_uf_ops(out);
            }
            IntFormulaNode::Not(f) => f.collect_uf_ops(out),
            IntFormulaNode::And(a, b)
            | IntFormulaNode::Or(a, b)
            | IntFormulaNode::Implies(a, b)
            | IntFormulaNode::Iff(a, b) => {
                a.collect_uf_ops(out);
                b.collect_uf_ops(out);
            }
            IntFormulaNode::Forall(_, f) | IntFormulaNode::Exists(_, f) => f.collect_uf_ops(out),
            IntFormulaNode::BvRelApp {
                width, lhs, rhs, ..
            } => {
                width.collect_uf_ops(out);
                lhs.collect_uf_ops(out);
                rhs.collect_uf_ops(out);
            }
        }
    }

    pub fn uses_pow2(&self) -> bool {
        match self.node() {
            IntFormulaNode::True | IntFormulaNode::False => false,
            IntFormulaNode::Cmp(_, a, b) => a.uses_pow2() || b.uses_pow2(),
            IntFormulaNode::Not(f) => f.uses_pow2(),
            IntFormulaNode::And(a, b)
            | IntFormulaNode::Or(a, b)
            | IntFormulaNode::Implies(a, b)
            | IntFormulaNode::Iff(a, b) => a.uses_pow2() || b.uses_pow2(),
            IntFormulaNode::Forall(_, f) | IntFormulaNode::Exists(_, f) => f.uses_pow2(),
            IntFormulaNode::BvRelApp {
                width, lhs, rhs, ..
            } => width.uses_pow2() || lhs.uses_pow2() || rhs.uses_pow2(),
        }
    }
}

// ---------------------------------------------------------------------------
// Width map and variable map
// ---------------------------------------------------------------------------

/// Axiomatization modes for the translation.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum AxiomMode {
    Full,
    Partial,
    Combined,
    Qf,
}

impl AxiomMode {
    pub const ALL: [AxiomMode; 4] = [
        AxiomMode::Full,
        AxiomMode::Partial,
        AxiomMode::Combined,
        AxiomMode::Qf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomMode::Full => "full",
            AxiomMode::Partial => "partial",
            AxiomMode::Combined => "combined",
            AxiomMode::Qf => "qf",
        }
    }
}

impl std::str::FromStr for AxiomMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(AxiomMode::Full),
            "partial" => Ok(AxiomMode::Partial),
            "combined" => Ok(AxiomMode::Combined),
            "qf" => Ok(AxiomMode::Qf),
            other => Err(format!("unknown axiomatization mode `{other}`")),
        }
    }
}

impl std::fmt::Display for AxiomMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The width map: symbolic bit-widths for every symbol and symbolic values
/// for the constants. `assumptions` carries extra constraints on the width
/// variables (beyond positivity) under which the map is admissible; the
/// extract elimination introduces such constraints.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WidthMap {
    widths: BTreeMap<String, IntTerm>,
    values: BTreeMap<String, IntTerm>,
    pub assumptions: Vec<IntFormula>,
}

impl WidthMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare_var(&mut self, name: impl Into<String>, width: IntTerm) -> BvSymbol {
        let name = name.into();
        assert!(
            !self.widths.contains_key(&name),
            "duplicate symbol `{name}` in width map"
        );
        self.widths.insert(name.clone(), width);
        BvSymbol::var(name)
    }

    pub fn declare_const(
        &mut self,
        name: impl Into<String>,
        width: IntTerm,
        value: IntTerm,
    ) -> BvSymbol {
        let name = name.into();
        assert!(
            !self.widths.contains_key(&name),
            "duplicate symbol `{name}` in width map"
        );
        self.widths.insert(name.clone(), width);
        self.values.insert(name.clone(), value);
        BvSymbol::sym_const(name)
    }

    pub fn width_of(&self, name: &str) -> Option<&IntTerm> {
        self.widths.get(name)
    }

    pub fn value_of(&self, name: &str) -> Option<&IntTerm> {
        self.values.get(name)
    }

    pub fn kind_of(&self, name: &str) -> Option<SymbolKind> {
        if !self.widths.contains_key(name) {
            None
        } else if self.values.contains_key(name) {
            Some(SymbolKind::SymConst)
        } else {
            Some(SymbolKind::Variable)
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = BvSymbol> + '_ {
        self.widths.keys().map(|name| match self.kind_of(name) {
            Some(SymbolKind::SymConst) => BvSymbol::sym_const(name.clone()),
            _ => BvSymbol::var(name.clone()),
        })
    }

    pub fn contains(&self, name: &str) -> bool {
        self.widths.contains_key(name)
    }

    /// `fv(omega)`: the union of the free variables of all range terms.
    pub fn free_width_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for t in self.widths.values().chain(self.values.values()) {
            out.extend(t.free_vars());
        }
        for a in &self.assumptions {
            out.extend(a.free_vars());
        }
        out
    }

    /// A fresh symbol name with the given prefix, avoiding every declared
    /// symbol and width variable.
    pub fn fresh_name(&self, prefix: &str) -> String {
        let taken: BTreeSet<&str> = self.widths.keys().map(|s| s.as_str()).collect();
        let widths = self.free_width_vars();
        if !taken.contains(prefix) && !widths.contains(prefix) {
            return prefix.to_string();
        }
        for i in 0.. {
            let candidate = format!("{prefix}{i}");
            if !taken.contains(candidate.as_str()) && !widths.contains(&candidate) {
                return candidate;
            }
        }
        unreachable!()
    }
}

/// The injective mapping from parametric bit-vector variables to integer
/// variables in the translation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VarMap {
    map: BTreeMap<String, String>,
}

impl VarMap {
    /// Builds the map for every variable of the formula (free and bound),
    /// prefixing names so the range stays disjoint from the width variables.
    pub fn for_formula(formula: &ParamFormula) -> VarMap {
        let mut map = BTreeMap::new();
        for sym in formula.all_symbols() {
            if sym.kind == SymbolKind::Variable {
                map.insert(sym.name.clone(), format!("_ix_{}", sym.name));
            }
        }
        VarMap { map }
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.map.get(name).map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
