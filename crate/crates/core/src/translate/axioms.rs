//! The axiom blocks for the four modes.
//!
//! `full` asserts the intended semantics of `pow2` and the bitwise symbols by
//! recursion on the width; `partial` asserts a hand-picked set of properties;
//! `combined` asserts both; `qf` keeps only the quantifier-free part of
//! `partial` (the `pow2` base cases) and nothing for the bitwise symbols.
//! Every quantified axiom carries its guards explicitly: widths positive and
//! encoded values within `[0, pow2(k))`.
//!
//! The `intor` blocks are the duals of the `intand` ones with `max` in place
//! of `min`, identity `x | 0 = x`, saturation `x | max = max`, tautology
//! `x | ~x = max`, a mirrored difference property, and the range
//! `max(x, y) <= x | y <= pow2(k) - 1`.

use crate::ast::{AxiomMode, BvUfOp, IntFormula, IntTerm};
use std::collections::BTreeSet;

/// The uninterpreted symbols a translation may need.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UfSym {
    Pow2,
    And,
    Or,
    Xor,
}

impl UfSym {
    pub fn name(self) -> &'static str {
        match self {
            UfSym::Pow2 => "pow2",
            UfSym::And => "intand",
            UfSym::Or => "intor",
            UfSym::Xor => "intxor",
        }
    }
}

/// How the oracle should enumerate one quantified variable when checking an
/// axiom instance at desk scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainHint {
    /// A bit-width: `1..=k_max`.
    Width,
    /// A `pow2` exponent: `1..=exp_max`.
    Exponent,
    /// A value encoding a bit-vector of the width bound by the named
    /// variable: `0..pow2(k)`.
    ValueOf(&'static str),
    /// A value of fixed width 1: `{0, 1}`.
    Bit,
    /// A nonnegative integer, enumerated up to the oracle's cap.
    NonNegInt,
}

/// A named axiom: the closed formula, plus the quantifier matrix and domain
/// hints the oracle uses for exhaustive checking.
#[derive(Debug, Clone)]
pub struct NamedAxiom {
    pub uf: UfSym,
    pub mode: AxiomMode,
    pub name: &'static str,
    pub vars: Vec<(&'static str, DomainHint)>,
    /// The guarded body with `vars` free.
    pub matrix: IntFormula,
    /// `forall vars. matrix` (or the matrix itself when `vars` is empty).
    pub formula: IntFormula,
}

fn named(
    uf: UfSym,
    mode: AxiomMode,
    name: &'static str,
    vars: Vec<(&'static str, DomainHint)>,
    matrix: IntFormula,
) -> NamedAxiom {
    let formula = if vars.is_empty() {
        matrix.clone()
    } else {
        IntFormula::forall(
            vars.iter().map(|(v, _)| v.to_string()).collect(),
            matrix.clone(),
        )
    };
    NamedAxiom {
        uf,
        mode,
        name,
        vars,
        matrix,
        formula,
    }
}

fn v(name: &str) -> IntTerm {
    IntTerm::var(name)
}

fn n(x: i128) -> IntTerm {
    IntTerm::num(x)
}

fn pow2(t: IntTerm) -> IntTerm {
    IntTerm::pow2(t)
}

/// `h_select(i, x) = (x div pow2(i)) mod 2`, the i-th bit of the encoding.
fn h_select(i: IntTerm, x: IntTerm) -> IntTerm {
    IntTerm::modulo(IntTerm::div(x, pow2(i)), n(2))
}

fn max_k(k: IntTerm) -> IntTerm {
    IntTerm::sub(pow2(k), n(1))
}

fn app(op: BvUfOp, k: IntTerm, x: IntTerm, y: IntTerm) -> IntTerm {
    IntTerm::bv_app(op, k, vec![x, y])
}

/// `intnot` is not an uninterpreted symbol; axioms mentioning bitwise
/// negation inline its elimination `pow2(k) - (x + 1)`.
fn not_k(k: IntTerm, x: IntTerm) -> IntTerm {
    IntTerm::sub(pow2(k), IntTerm::add(x, n(1)))
}

fn positive(t: IntTerm) -> IntFormula {
    IntFormula::gt(t, n(0))
}

fn in_range(x: IntTerm, k: IntTerm) -> IntFormula {
    IntFormula::and(IntFormula::le(n(0), x.clone()), IntFormula::lt(x, pow2(k)))
}

fn guarded(guards: Vec<IntFormula>, body: IntFormula) -> IntFormula {
    IntFormula::implies(IntFormula::and_all(guards), body)
}

fn pow2_full() -> Vec<NamedAxiom> {
    vec![
        named(
            UfSym::Pow2,
            AxiomMode::Full,
            "base",
            vec![],
            IntFormula::eq(pow2(n(0)), n(1)),
        ),
        named(
            UfSym::Pow2,
            AxiomMode::Full,
            "recursion",
            vec![("k", DomainHint::Exponent)],
            guarded(
                vec![positive(v("k"))],
                IntFormula::eq(
                    pow2(v("k")),
                    IntTerm::mul(n(2), pow2(IntTerm::sub(v("k"), n(1)))),
                ),
            ),
        ),
    ]
}

/// The recursive definition of a bitwise symbol: the low `k-1` bits plus the
/// top bit combined with `min` (and), `max` (or), or `|x - y|` (xor).
fn bitwise_full(uf: UfSym, op: BvUfOp) -> NamedAxiom {
    let k = v("k");
    let x = v("x");
    let y = v("y");
    let k1 = IntTerm::sub(k.clone(), n(1));
    let low = app(
        op,
        k1.clone(),
        IntTerm::modulo(x.clone(), pow2(k1.clone())),
        IntTerm::modulo(y.clone(), pow2(k1.clone())),
    );
    let low = IntTerm::ite(IntFormula::gt(k.clone(), n(1)), low, n(0));
    let bx = h_select(k1.clone(), x.clone());
    let by = h_select(k1.clone(), y.clone());
    let top = match op {
        BvUfOp::And => IntTerm::min(bx, by),
        BvUfOp::Or => IntTerm::max(bx, by),
        BvUfOp::Xor => IntTerm::abs(IntTerm::sub(bx, by)),
        _ => unreachable!(),
    };
    let rhs = IntTerm::add(low, IntTerm::mul(pow2(k1), top));
    named(
        uf,
        AxiomMode::Full,
        "recursion",
        vec![
            ("k", DomainHint::Width),
            ("x", DomainHint::ValueOf("k")),
            ("y", DomainHint::ValueOf("k")),
        ],
        guarded(
            vec![
                positive(k.clone()),
                in_range(x.clone(), k.clone()),
                in_range(y.clone(), k.clone()),
            ],
            IntFormula::eq(app(op, k, x, y), rhs),
        ),
    )
}

fn pow2_partial() -> Vec<NamedAxiom> {
    let mode = AxiomMode::Partial;
    vec![
        named(
            UfSym::Pow2,
            mode,
            "base cases",
            vec![],
            IntFormula::and_all(vec![
                IntFormula::eq(pow2(n(0)), n(1)),
                IntFormula::eq(pow2(n(1)), n(2)),
                IntFormula::eq(pow2(n(2)), n(4)),
                IntFormula::eq(pow2(n(3)), n(8)),
            ]),
        ),
        named(
            UfSym::Pow2,
            mode,
            "weak monotonicity",
            vec![("i", DomainHint::Exponent), ("j", DomainHint::Exponent)],
            guarded(
                vec![positive(v("i")), positive(v("j"))],
                IntFormula::implies(
                    IntFormula::le(v("i"), v("j")),
                    IntFormula::le(pow2(v("i")), pow2(v("j"))),
                ),
            ),
        ),
        named(
            UfSym::Pow2,
            mode,
            "strong monotonicity",
            vec![("i", DomainHint::Exponent), ("j", DomainHint::Exponent)],
            guarded(
                vec![positive(v("i")), positive(v("j"))],
                IntFormula::implies(
                    IntFormula::lt(v("i"), v("j")),
                    IntFormula::lt(pow2(v("i")), pow2(v("j"))),
                ),
            ),
        ),
        named(
            UfSym::Pow2,
            mode,
            "modularity",
            vec![
                ("i", DomainHint::Exponent),
                ("j", DomainHint::Exponent),
                ("x", DomainHint::NonNegInt),
            ],
            guarded(
                vec![
                    positive(v("i")),
                    positive(v("j")),
                    IntFormula::ge(v("x"), n(0)),
                ],
                IntFormula::implies(
                    IntFormula::ne(
                        IntTerm::modulo(IntTerm::mul(v("x"), pow2(v("i"))), pow2(v("j"))),
                        n(0),
                    ),
                    IntFormula::lt(v("i"), v("j")),
                ),
            ),
        ),
        named(
            UfSym::Pow2,
            mode,
            "never even",
            vec![("i", DomainHint::Exponent), ("x", DomainHint::NonNegInt)],
            guarded(
                vec![positive(v("i")), IntFormula::ge(v("x"), n(0))],
                IntFormula::ne(IntTerm::sub(pow2(v("i")), n(1)), IntTerm::mul(n(2), v("x"))),
            ),
        ),
        named(
            UfSym::Pow2,
            mode,
            "always positive",
            vec![("i", DomainHint::Exponent)],
            guarded(vec![positive(v("i"))], IntFormula::ge(pow2(v("i")), n(1))),
        ),
        named(
            UfSym::Pow2,
            mode,
            "div 0",
            vec![("i", DomainHint::Exponent)],
            guarded(
                vec![positive(v("i"))],
                IntFormula::eq(IntTerm::div(v("i"), pow2(v("i"))), n(0)),
            ),
        ),
    ]
}

/// Standard guard set and variable list for `forall k, x.` axioms.
fn kx_axiom(
    uf: UfSym,
    name: &'static str,
    body: impl Fn(IntTerm, IntTerm) -> IntFormula,
) -> NamedAxiom {
    named(
        uf,
        AxiomMode::Partial,
        name,
        vec![("k", DomainHint::Width), ("x", DomainHint::ValueOf("k"))],
        guarded(
            vec![positive(v("k")), in_range(v("x"), v("k"))],
            body(v("k"), v("x")),
        ),
    )
}

fn kxy_axiom(
    uf: UfSym,
    name: &'static str,
    body: impl Fn(IntTerm, IntTerm, IntTerm) -> IntFormula,
) -> NamedAxiom {
    named(
        uf,
        AxiomMode::Partial,
        name,
        vec![
            ("k", DomainHint::Width),
            ("x", DomainHint::ValueOf("k")),
            ("y", DomainHint::ValueOf("k")),
        ],
        guarded(
            vec![
                positive(v("k")),
                in_range(v("x"), v("k")),
                in_range(v("y"), v("k")),
            ],
            body(v("k"), v("x"), v("y")),
        ),
    )
}

/// `forall k, x, y, z. x != y => op(k, x, z) != y or op(k, y, z) != x`.
fn difference_axiom(uf: UfSym, op: BvUfOp) -> NamedAxiom {
    named(
        uf,
        AxiomMode::Partial,
        "difference",
        vec![
            ("k", DomainHint::Width),
            ("x", DomainHint::ValueOf("k")),
            ("y", DomainHint::ValueOf("k")),
            ("z", DomainHint::ValueOf("k")),
        ],
        guarded(
            vec![
                positive(v("k")),
                in_range(v("x"), v("k")),
                in_range(v("y"), v("k")),
                in_range(v("z"), v("k")),
            ],
            IntFormula::implies(
                IntFormula::ne(v("x"), v("y")),
                IntFormula::or(
                    IntFormula::ne(app(op, v("k"), v("x"), v("z")), v("y")),
                    IntFormula::ne(app(op, v("k"), v("y"), v("z")), v("x")),
                ),
            ),
        ),
    )
}

fn bit_base_axiom(uf: UfSym, op: BvUfOp) -> NamedAxiom {
    let bx = h_select(n(0), v("x"));
    let by = h_select(n(0), v("y"));
    let rhs = match op {
        BvUfOp::And => IntTerm::min(bx, by),
        BvUfOp::Or => IntTerm::max(bx, by),
        BvUfOp::Xor => IntTerm::ite(IntFormula::eq(bx, by), n(0), n(1)),
        _ => unreachable!(),
    };
    named(
        uf,
        AxiomMode::Partial,
        "base case",
        vec![("x", DomainHint::Bit), ("y", DomainHint::Bit)],
        guarded(
            vec![in_range(v("x"), n(1)), in_range(v("y"), n(1))],
            IntFormula::eq(app(op, n(1), v("x"), v("y")), rhs),
        ),
    )
}

fn and_partial() -> Vec<NamedAxiom> {
    let op = BvUfOp::And;
    let uf = UfSym::And;
    vec![
        bit_base_axiom(uf, op),
        kx_axiom(uf, "max", |k, x| {
            IntFormula::eq(app(op, k.clone(), x.clone(), max_k(k)), x)
        }),
        kx_axiom(uf, "min", |k, x| IntFormula::eq(app(op, k, x, n(0)), n(0))),
        kx_axiom(uf, "idempotence", |k, x| {
            IntFormula::eq(app(op, k, x.clone(), x.clone()), x)
        }),
        kx_axiom(uf, "contradiction", |k, x| {
            IntFormula::eq(app(op, k.clone(), x.clone(), not_k(k, x)), n(0))
        }),
        kxy_axiom(uf, "symmetry", |k, x, y| {
            IntFormula::eq(app(op, k.clone(), x.clone(), y.clone()), app(op, k, y, x))
        }),
        difference_axiom(uf, op),
        kxy_axiom(uf, "range", |k, x, y| {
            let a = app(op, k, x.clone(), y.clone());
            IntFormula::and(
                IntFormula::le(n(0), a.clone()),
                IntFormula::le(a, IntTerm::min(x, y)),
            )
        }),
    ]
}

fn or_partial() -> Vec<NamedAxiom> {
    let op = BvUfOp::Or;
    let uf = UfSym::Or;
    vec![
        bit_base_axiom(uf, op),
        kx_axiom(uf, "min", |k, x| {
            IntFormula::eq(app(op, k, x.clone(), n(0)), x)
        }),
        kx_axiom(uf, "max", |k, x| {
            IntFormula::eq(app(op, k.clone(), x, max_k(k.clone())), max_k(k))
        }),
        kx_axiom(uf, "idempotence", |k, x| {
            IntFormula::eq(app(op, k, x.clone(), x.clone()), x)
        }),
        kx_axiom(uf, "tautology", |k, x| {
            IntFormula::eq(app(op, k.clone(), x.clone(), not_k(k.clone(), x)), max_k(k))
        }),
        kxy_axiom(uf, "symmetry", |k, x, y| {
            IntFormula::eq(app(op, k.clone(), x.clone(), y.clone()), app(op, k, y, x))
        }),
        difference_axiom(uf, op),
        kxy_axiom(uf, "range", |k, x, y| {
            let a = app(op, k.clone(), x.clone(), y.clone());
            IntFormula::and(
                IntFormula::le(IntTerm::max(x, y), a.clone()),
                IntFormula::le(a, max_k(k)),
            )
        }),
    ]
}

fn xor_partial() -> Vec<NamedAxiom> {
    let op = BvUfOp::Xor;
    let uf = UfSym::Xor;
    vec![
        bit_base_axiom(uf, op),
        kx_axiom(uf, "zero", |k, x| {
            IntFormula::eq(app(op, k, x.clone(), x), n(0))
        }),
        kx_axiom(uf, "one", |k, x| {
            IntFormula::eq(app(op, k.clone(), x.clone(), not_k(k.clone(), x)), max_k(k))
        }),
        kxy_axiom(uf, "symmetry", |k, x, y| {
            IntFormula::eq(app(op, k.clone(), x.clone(), y.clone()), app(op, k, y, x))
        }),
        kxy_axiom(uf, "range", |k, x, y| {
            let a = app(op, k.clone(), x, y);
            IntFormula::and(IntFormula::le(n(0), a.clone()), IntFormula::le(a, max_k(k)))
        }),
    ]
}

fn full_axioms() -> Vec<NamedAxiom> {
    let mut out = pow2_full();
    out.push(bitwise_full(UfSym::And, BvUfOp::And));
    out.push(bitwise_full(UfSym::Or, BvUfOp::Or));
    out.push(bitwise_full(UfSym::Xor, BvUfOp::Xor));
    out
}

fn partial_axioms() -> Vec<NamedAxiom> {
    let mut out = pow2_partial();
    out.extend(and_partial());
    out.extend(or_partial());
    out.extend(xor_partial());
    out
}

/// All axioms of a mode, unrestricted.
pub fn all_axioms(mode: AxiomMode) -> Vec<NamedAxiom> {
    match mode {
        AxiomMode::Full => full_axioms(),
        AxiomMode::Partial => partial_axioms(),
        AxiomMode::Combined => {
            let mut out = full_axioms();
            out.extend(partial_axioms());
            out
        }
        // qf keeps exactly the quantifier-free part of partial: the pow2
        // base cases. The bitwise blocks contribute nothing.
        AxiomMode::Qf => partial_axioms()
            .into_iter()
            .filter(|a| a.vars.is_empty())
            .collect(),
    }
}

/// The axioms of a mode restricted to the uninterpreted symbols in use.
pub fn axioms(mode: AxiomMode, used: &BTreeSet<UfSym>) -> Vec<NamedAxiom> {
    all_axioms(mode)
        .into_iter()
        .filter(|a| used.contains(&a.uf))
        .collect()
}
