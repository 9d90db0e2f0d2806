//! Property tests: print/parse round-trips on generated formulas and the
//! algebraic laws of the width normal form.

use pbv::ast::{
    parse_formula_str, parse_pbv, pretty_problem, BvBinop, BvRel, BvSymbol, BvUnop, IntTerm,
    ParamFormula, ParamTerm, WidthMap,
};
use pbv::sortcheck::widths_equal;
use proptest::prelude::*;

fn base_omega() -> WidthMap {
    let (_, omega) = parse_pbv(
        "(declare-width a)\n(declare-width b)\n\
         (declare-pbv x :bits a)\n(declare-pbv y :bits a)\n\
         (declare-pbv w :bits (+ a b))\n\
         (declare-pbv z0 :bits a :value 0)\n\
         (declare-pbv z1 :bits a :value (- (pow2 a) 1))\n\
         (assert true)",
    )
    .unwrap();
    omega
}

fn leaf() -> impl Strategy<Value = ParamTerm> {
    prop_oneof![
        Just(ParamTerm::symbol(BvSymbol::var("x"))),
        Just(ParamTerm::symbol(BvSymbol::var("y"))),
        Just(ParamTerm::symbol(BvSymbol::var("w"))),
        Just(ParamTerm::symbol(BvSymbol::sym_const("z0"))),
        Just(ParamTerm::symbol(BvSymbol::sym_const("z1"))),
    ]
}

fn term() -> impl Strategy<Value = ParamTerm> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (any::<u8>(), inner.clone()).prop_map(|(op, a)| {
                let op = if op % 2 == 0 {
                    BvUnop::Not
                } else {
                    BvUnop::Neg
                };
                ParamTerm::unop(op, a)
            }),
            (0usize..BvBinop::ALL.len(), inner.clone(), inner.clone())
                .prop_map(|(i, a, b)| ParamTerm::binop(BvBinop::ALL[i], a, b)),
            (0u32..4, 0u32..4, inner).prop_map(|(u, l, a)| {
                let (hi, lo) = if u >= l { (u, l) } else { (l, u) };
                ParamTerm::extract(hi, lo, a)
            }),
        ]
    })
}

fn atom() -> impl Strategy<Value = ParamFormula> {
    prop_oneof![
        Just(ParamFormula::tru()),
        Just(ParamFormula::fls()),
        (term(), term()).prop_map(|(a, b)| ParamFormula::eq(a, b)),
        (term(), term()).prop_map(|(a, b)| ParamFormula::ne(a, b)),
        (0usize..BvRel::ALL.len(), term(), term()).prop_map(|(i, a, b)| ParamFormula::rel(
            BvRel::ALL[i],
            a,
            b
        )),
    ]
}

fn formula() -> impl Strategy<Value = ParamFormula> {
    atom().prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(ParamFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ParamFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ParamFormula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ParamFormula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ParamFormula::iff(a, b)),
            inner
                .clone()
                .prop_map(|f| ParamFormula::exists(vec![BvSymbol::var("x")], f)),
            inner.prop_map(|f| ParamFormula::forall(
                vec![BvSymbol::var("x"), BvSymbol::var("y")],
                f
            )),
        ]
    })
}

proptest! {
    #[test]
    fn parse_of_pretty_is_identity(f in formula()) {
        let mut omega = base_omega();
        let printed = f.to_string();
        let reparsed = parse_formula_str(&printed, &mut omega).unwrap();
        prop_assert_eq!(f, reparsed);
    }

    #[test]
    fn problem_level_round_trip(f in formula()) {
        let omega = base_omega();
        let document = pretty_problem(&f, &omega);
        let (f2, omega2) = parse_pbv(&document).unwrap();
        prop_assert_eq!(f, f2);
        prop_assert_eq!(omega, omega2);
    }
}

// ---------------------------------------------------------------------------
// Random single-width formulas translate equivalently: the bit-vector
// semantics and the intended integer semantics of the conversion agree on
// every assignment at small widths. This exercises every elimination rule
// and every folding rule end to end.
// ---------------------------------------------------------------------------

fn same_width_omega() -> WidthMap {
    let (_, omega) = parse_pbv(
        "(declare-width k)\n\
         (declare-pbv x :bits k)\n(declare-pbv y :bits k)\n\
         (declare-pbv z0 :bits k :value 0)\n\
         (declare-pbv z1 :bits k :value 1)\n\
         (declare-pbv zmax :bits k :value (- (pow2 k) 1))\n\
         (assert true)",
    )
    .unwrap();
    omega
}

fn same_width_term() -> impl Strategy<Value = ParamTerm> {
    let leaf = prop_oneof![
        Just(ParamTerm::symbol(BvSymbol::var("x"))),
        Just(ParamTerm::symbol(BvSymbol::var("y"))),
        Just(ParamTerm::symbol(BvSymbol::sym_const("z0"))),
        Just(ParamTerm::symbol(BvSymbol::sym_const("z1"))),
        Just(ParamTerm::symbol(BvSymbol::sym_const("zmax"))),
    ];
    // Concat and extract change widths; everything else preserves them.
    let ops = [
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
    ];
    leaf.prop_recursive(3, 12, 2, move |inner| {
        prop_oneof![
            (any::<bool>(), inner.clone()).prop_map(|(not, a)| {
                ParamTerm::unop(if not { BvUnop::Not } else { BvUnop::Neg }, a)
            }),
            (0usize..ops.len(), inner.clone(), inner)
                .prop_map(move |(i, a, b)| ParamTerm::binop(ops[i], a, b)),
        ]
    })
}

fn same_width_formula() -> impl Strategy<Value = ParamFormula> {
    let atom = prop_oneof![
        (same_width_term(), same_width_term()).prop_map(|(a, b)| ParamFormula::eq(a, b)),
        (same_width_term(), same_width_term()).prop_map(|(a, b)| ParamFormula::ne(a, b)),
        (0usize..BvRel::ALL.len(), same_width_term(), same_width_term())
            .prop_map(|(i, a, b)| ParamFormula::rel(BvRel::ALL[i], a, b)),
    ];
    atom.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(ParamFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ParamFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ParamFormula::implies(a, b)),
            inner
                .clone()
                .prop_map(|f| ParamFormula::exists(vec![BvSymbol::var("y")], f)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn random_formulas_translate_equivalently(f in same_width_formula()) {
        let omega = same_width_omega();
        let report = pbv::oracle::check_translation_equiv(
            &f,
            &omega,
            pbv::translate::TranslateOptions::default(),
            2,
            12,
        )
        .unwrap();
        prop_assert!(report.passed(), "{report}\nformula: {f}");
    }
}

fn width_term() -> impl Strategy<Value = IntTerm> {
    let leaf = prop_oneof![
        Just(IntTerm::var("a")),
        Just(IntTerm::var("b")),
        (0i128..6).prop_map(IntTerm::num),
    ];
    leaf.prop_recursive(4, 20, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| IntTerm::add(x, y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| IntTerm::mul(x, y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| IntTerm::sub(x, y)),
            inner.prop_map(IntTerm::pow2),
        ]
    })
}

proptest! {
    #[test]
    fn width_normal_form_respects_ac_laws(
        t1 in width_term(),
        t2 in width_term(),
        t3 in width_term(),
    ) {
        let comm_add = (
            IntTerm::add(t1.clone(), t2.clone()),
            IntTerm::add(t2.clone(), t1.clone()),
        );
        prop_assert!(widths_equal(&comm_add.0, &comm_add.1));
        let assoc_add = (
            IntTerm::add(IntTerm::add(t1.clone(), t2.clone()), t3.clone()),
            IntTerm::add(t1.clone(), IntTerm::add(t2.clone(), t3.clone())),
        );
        prop_assert!(widths_equal(&assoc_add.0, &assoc_add.1));
        let comm_mul = (
            IntTerm::mul(t1.clone(), t2.clone()),
            IntTerm::mul(t2.clone(), t1.clone()),
        );
        prop_assert!(widths_equal(&comm_mul.0, &comm_mul.1));
        let distrib = (
            IntTerm::mul(t1.clone(), IntTerm::add(t2.clone(), t3.clone())),
            IntTerm::add(IntTerm::mul(t1.clone(), t2), IntTerm::mul(t1, t3)),
        );
        prop_assert!(widths_equal(&distrib.0, &distrib.1));
    }
}
