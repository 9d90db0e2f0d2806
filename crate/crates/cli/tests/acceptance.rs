//! The acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Run with `cargo test -p pbv-cli --test acceptance -- --nocapture`.

use pbv::ast::{parse_pbv, AxiomMode, BvBinop, BvRel, BvUnop, ParamFormula, ParamTerm};
use pbv::goals::{self, LiftOptions};
use pbv::oracle::{self, AxiomCheckConfig, BvValue, FixedFormula, FixedTerm};
use pbv::sortcheck::eliminate_extract;
use pbv::translate::{all_axioms, UfSym};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

fn verdict(criterion: &str, passed: bool, detail: &str) {
    let status = if passed { "PASS" } else { "FAIL" };
    println!(
        "[acceptance] {criterion}: {status}{}{detail}",
        if detail.is_empty() { "" } else { " " }
    );
    assert!(passed, "{criterion} failed: {detail}");
}

fn pbv_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pbv"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

// -------------------------------------------------------------------------
// C1: translating the running example in mode qf reproduces the worked
// example, byte-exact against the golden file.
// -------------------------------------------------------------------------
#[test]
fn c01_worked_example_fidelity() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.smt2");
    let status = pbv_bin()
        .args(["translate"])
        .arg(fixture("example1.pbv"))
        .args(["--mode", "qf", "--out"])
        .arg(&out_path)
        .status()
        .unwrap();
    assert!(status.success());
    let produced = std::fs::read_to_string(&out_path).unwrap();
    let golden = std::fs::read_to_string(fixture("example1_qf.golden.smt2")).unwrap();
    let body_ok = produced.contains("(distinct (mod (+ (+ _ix_x _ix_x) 1) (pow2 a)) 0)");
    let prelude_ok =
        produced.contains("(and (<= 0 _ix_x) (< _ix_x (pow2 a)))") && produced.contains("(> a 0)");
    verdict(
        "C1 worked-example fidelity",
        produced == golden && body_ok && prelude_ok,
        "",
    );
}

// -------------------------------------------------------------------------
// C2: for every operator, widths 1..=5 with exhaustive operands, the
// integer evaluation of the eliminated form equals the bit-vector
// semantics; extract goes through the concatenation scheme.
// -------------------------------------------------------------------------
#[test]
fn c02_elim_soundness() {
    let mut detail = String::new();
    let mut all_ok = true;

    let mut run = |label: &str, text: &str, bits: u32| {
        let (f, omega) = parse_pbv(text).unwrap();
        let report = oracle::check_translation_equiv(
            &f,
            &omega,
            pbv::translate::TranslateOptions::default(),
            5,
            bits,
        )
        .unwrap();
        if !report.passed() || report.checked_valuations == 0 {
            all_ok = false;
            detail.push_str(&format!("{label}: {report}"));
        }
    };

    for op in BvBinop::ALL {
        if op == BvBinop::Concat {
            continue;
        }
        let text = format!(
            "(declare-width k)(declare-pbv x :bits k)(declare-pbv y :bits k)\
             (declare-pbv z :bits k)(assert (= ({} x y) z))",
            op.smtlib_name()
        );
        run(op.smtlib_name(), &text, 15);
    }
    for (op, name) in [(BvUnop::Not, "bvnot"), (BvUnop::Neg, "bvneg")] {
        let _ = op;
        let text = format!(
            "(declare-width k)(declare-pbv x :bits k)(declare-pbv z :bits k)\
             (assert (= ({name} x) z))"
        );
        run(name, &text, 10);
    }
    for rel in BvRel::ALL {
        let text = format!(
            "(declare-width k)(declare-pbv x :bits k)(declare-pbv y :bits k)\
             (assert ({} x y))",
            rel.smtlib_name()
        );
        run(rel.smtlib_name(), &text, 10);
    }
    // Concatenation mixes two widths; the result variable doubles the bits.
    run(
        "concat",
        "(declare-width k1)(declare-width k2)(declare-pbv x :bits k1)\
         (declare-pbv y :bits k2)(declare-pbv z :bits (+ k1 k2))\
         (assert (= (concat x y) z))",
        20,
    );

    // Extract: the rewritten goal is pointwise equivalent to the original
    // literal at every concrete width and slice.
    for n in 1..=5u32 {
        for u in 0..n {
            for l in 0..=u {
                let mut omega = pbv::ast::WidthMap::new();
                let s = omega.declare_var("s", pbv::ast::IntTerm::num(i128::from(u - l + 1)));
                let t = omega.declare_var("t", pbv::ast::IntTerm::num(i128::from(n)));
                let original = ParamFormula::eq(
                    ParamTerm::symbol(s),
                    ParamTerm::extract(u, l, ParamTerm::symbol(t)),
                );
                let (eliminated, omega2) = eliminate_extract(&original, &omega).unwrap();
                let iff = ParamFormula::iff(original, eliminated);
                let outcome = oracle::check_valid_at_widths(&iff, &omega2, 1, 16).unwrap();
                if !outcome.is_valid() {
                    all_ok = false;
                    detail.push_str(&format!(
                        "extract n={n} u={u} l={l}: {:?}",
                        outcome.counterexample
                    ));
                }
            }
        }
    }
    verdict(
        "C2 elim soundness (widths 1..=5, exhaustive)",
        all_ok,
        &detail,
    );
}

// -------------------------------------------------------------------------
// C3: every axiom of both tables (including the or-duals) holds under the
// intended semantics for k <= 6 exhaustive, pow2 exponents <= 16.
// -------------------------------------------------------------------------
#[test]
fn c03_axiom_validity() {
    let cfg = AxiomCheckConfig {
        k_max: 6,
        exp_max: 16,
        nonneg_cap: 4096,
    };
    let report = oracle::check_axiom_validity(AxiomMode::Combined, cfg).unwrap();
    verdict(
        "C3 axiom validity (k <= 6, exponents <= 16)",
        report.passed(),
        &format!("{report}"),
    );
}

// -------------------------------------------------------------------------
// C4: the unsigned-interpretation lemmas hold exhaustively for k <= 5.
// -------------------------------------------------------------------------
#[test]
fn c04_lemma_suite() {
    let report = oracle::check_lemma_suite(5);
    verdict(
        "C4 lemma suite (k <= 5)",
        report.passed(),
        &format!("{report}"),
    );
}

// -------------------------------------------------------------------------
// C5: every non-blank inverse of the bundled tables passes cond =>
// l[inverse] exhaustively at widths 1..=4, and a corrupted inverse fails.
//
// KNOWN FAILURE, kept faithful to the source tables: the two `smax << t`
// inverses (shl_xs at distinct, mul at distinct) are refuted at width 1,
// where smax = 0 - e.g. x << s != t at k=1, s=0, t=0 is solvable by x=1
// while (smax << t) << s = 0 = t. Both verify for widths 2..=4. See the
// decisions ledger; the criterion is asserted as stated.
// -------------------------------------------------------------------------
#[test]
fn c05_inverse_verification() {
    let entries = goals::builtin_ic_entries();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for entry in &entries {
        if entry.inverse.is_none() {
            continue;
        }
        checked += 1;
        match goals::check_inverse(entry, 4).unwrap() {
            goals::InverseVerdict::Pass { .. } => {}
            goals::InverseVerdict::Fail { witness } => {
                failures.push(format!("{}: {witness:?}", entry.slot_name()));
            }
        }
    }

    // Negative control: a corrupted inverse must be refuted.
    let add_eq = entries
        .iter()
        .find(|e| e.shape.short_name() == "add" && e.relation == goals::Relation::Eq)
        .unwrap();
    let mut corrupted = add_eq.clone();
    corrupted.inverse = Some(ParamTerm::add(
        ParamTerm::symbol(pbv::ast::BvSymbol::var("t")),
        ParamTerm::symbol(pbv::ast::BvSymbol::var("s")),
    ));
    let control_fails = !goals::check_inverse(&corrupted, 4).unwrap().passed();

    verdict(
        &format!("C5 inverse verification ({checked} inverses, widths 1..=4)"),
        failures.is_empty() && control_fails,
        &format!(
            "{} failure(s): {:?}; corrupted control refuted: {control_fails}",
            failures.len(),
            failures
        ),
    );
}

// -------------------------------------------------------------------------
// C6: the generator covers exactly the 16 x 10 grid.
// -------------------------------------------------------------------------
#[test]
fn c06_goal_count_reproduction() {
    let entries = goals::builtin_ic_entries();
    let report = goals::GridReport::for_entries(&entries);
    verdict(
        "C6 goal-count reproduction (16 x 10 grid)",
        entries.len() == 160 && report.slots == 160,
        &format!("{} entries, {} slots", entries.len(), report.slots),
    );
}

// -------------------------------------------------------------------------
// C7: combined equals full union partial, and qf-pow2 equals partial's
// base cases (structural comparisons).
// -------------------------------------------------------------------------
#[test]
fn c07_mode_structure() {
    let key = |a: &pbv::translate::NamedAxiom| (a.uf, a.name, a.formula.to_string());
    let combined: std::collections::BTreeSet<_> =
        all_axioms(AxiomMode::Combined).iter().map(key).collect();
    let mut union: std::collections::BTreeSet<_> =
        all_axioms(AxiomMode::Full).iter().map(key).collect();
    union.extend(all_axioms(AxiomMode::Partial).iter().map(key));
    let combined_ok = combined == union;

    let qf = all_axioms(AxiomMode::Qf);
    let partial_base = all_axioms(AxiomMode::Partial)
        .into_iter()
        .find(|a| a.uf == UfSym::Pow2 && a.name == "base cases")
        .unwrap();
    let qf_ok = qf.len() == 1 && key(&qf[0]) == key(&partial_base);
    verdict(
        "C7 mode structure (combined = full + partial, qf = base cases)",
        combined_ok && qf_ok,
        "",
    );
}

// -------------------------------------------------------------------------
// C8: lifting then instantiating at the original width is pointwise
// equivalent to the input, for twenty fixtures of at most 12 total bits.
// The input side is evaluated by a direct fixed-width parser written here,
// independent of the lifter.
// -------------------------------------------------------------------------

mod fixed_smt2 {
    //! A minimal independent reader of fixed-width SMT-LIB for the
    //! round-trip oracle: no lifting, no generalization.
    use super::*;
    use pbv::ast::SExp;

    pub fn parse(text: &str) -> FixedFormula {
        let sexps = pbv::ast::read_sexps(text).unwrap();
        let mut vars: BTreeMap<String, u32> = BTreeMap::new();
        let mut asserts = Vec::new();
        for sexp in &sexps {
            let items = sexp.as_list().unwrap();
            match items[0].as_atom().unwrap() {
                "set-logic" | "check-sat" => {}
                "declare-const" => {
                    let name = items[1].as_atom().unwrap().to_string();
                    vars.insert(name, sort_width(&items[2]));
                }
                "declare-fun" => {
                    let name = items[1].as_atom().unwrap().to_string();
                    vars.insert(name, sort_width(&items[3]));
                }
                "assert" => asserts.push(formula(&items[1], &mut vars)),
                other => panic!("unsupported command {other}"),
            }
        }
        let mut it = asserts.into_iter();
        let first = it.next().unwrap_or(FixedFormula::True);
        it.fold(first, |a, b| FixedFormula::And(Box::new(a), Box::new(b)))
    }

    fn sort_width(sexp: &SExp) -> u32 {
        let items = sexp.as_list().unwrap();
        assert_eq!(items[1].as_atom(), Some("BitVec"));
        items[2].as_atom().unwrap().parse().unwrap()
    }

    fn term(sexp: &SExp, vars: &BTreeMap<String, u32>) -> (FixedTerm, u32) {
        match sexp {
            SExp::Atom(a, _) => {
                if let Some(rest) = a.strip_prefix("#b") {
                    let w = rest.len() as u32;
                    let v = u128::from_str_radix(rest, 2).unwrap();
                    return (FixedTerm::Const(BvValue::new(w, v)), w);
                }
                if let Some(rest) = a.strip_prefix("#x") {
                    let w = 4 * rest.len() as u32;
                    let v = u128::from_str_radix(rest, 16).unwrap();
                    return (FixedTerm::Const(BvValue::new(w, v)), w);
                }
                let w = vars[a.as_str()];
                (
                    FixedTerm::Var {
                        name: a.clone(),
                        width: w,
                    },
                    w,
                )
            }
            SExp::List(items, _) => {
                if items.len() == 3 && items[0].as_atom() == Some("_") {
                    let v: u128 = items[1]
                        .as_atom()
                        .unwrap()
                        .strip_prefix("bv")
                        .unwrap()
                        .parse()
                        .unwrap();
                    let w: u32 = items[2].as_atom().unwrap().parse().unwrap();
                    return (FixedTerm::Const(BvValue::new(w, v)), w);
                }
                let head = items[0].as_atom().unwrap();
                match head {
                    "bvnot" | "bvneg" => {
                        let (a, w) = term(&items[1], vars);
                        let op = if head == "bvnot" {
                            BvUnop::Not
                        } else {
                            BvUnop::Neg
                        };
                        (FixedTerm::Unop(op, Box::new(a)), w)
                    }
                    "bvsub" => {
                        let (a, w) = term(&items[1], vars);
                        let (b, _) = term(&items[2], vars);
                        (
                            FixedTerm::Binop(
                                BvBinop::Add,
                                Box::new(a),
                                Box::new(FixedTerm::Unop(BvUnop::Neg, Box::new(b))),
                            ),
                            w,
                        )
                    }
                    _ => {
                        let op = BvBinop::ALL
                            .iter()
                            .find(|op| op.smtlib_name() == head)
                            .copied()
                            .unwrap_or_else(|| panic!("unsupported op {head}"));
                        let (a, w) = term(&items[1], vars);
                        let (b, _) = term(&items[2], vars);
                        (FixedTerm::Binop(op, Box::new(a), Box::new(b)), w)
                    }
                }
            }
        }
    }

    fn formula(sexp: &SExp, vars: &mut BTreeMap<String, u32>) -> FixedFormula {
        match sexp {
            SExp::Atom(a, _) => match a.as_str() {
                "true" => FixedFormula::True,
                "false" => FixedFormula::False,
                other => panic!("unsupported atom {other}"),
            },
            SExp::List(items, _) => {
                let head = items[0].as_atom().unwrap();
                match head {
                    "=" => {
                        let (a, _) = term(&items[1], vars);
                        let (b, _) = term(&items[2], vars);
                        FixedFormula::Eq(a, b)
                    }
                    "distinct" => {
                        let (a, _) = term(&items[1], vars);
                        let (b, _) = term(&items[2], vars);
                        FixedFormula::Ne(a, b)
                    }
                    "not" => FixedFormula::Not(Box::new(formula(&items[1], vars))),
                    "and" | "or" | "=>" => {
                        let parts: Vec<FixedFormula> =
                            items[1..].iter().map(|e| formula(e, vars)).collect();
                        let mut it = parts.into_iter();
                        let first = it.next().unwrap();
                        match head {
                            "and" => {
                                it.fold(first, |a, b| FixedFormula::And(Box::new(a), Box::new(b)))
                            }
                            "or" => {
                                it.fold(first, |a, b| FixedFormula::Or(Box::new(a), Box::new(b)))
                            }
                            _ => {
                                let mut parts = vec![first];
                                parts.extend(it);
                                let last = parts.pop().unwrap();
                                parts.into_iter().rev().fold(last, |acc, f| {
                                    FixedFormula::Implies(Box::new(f), Box::new(acc))
                                })
                            }
                        }
                    }
                    "forall" | "exists" => {
                        let binders: Vec<(String, u32)> = items[1]
                            .as_list()
                            .unwrap()
                            .iter()
                            .map(|b| {
                                let pair = b.as_list().unwrap();
                                let name = pair[0].as_atom().unwrap().to_string();
                                let w = sort_width(&pair[1]);
                                vars.insert(name.clone(), w);
                                (name, w)
                            })
                            .collect();
                        let body = Box::new(formula(&items[2], vars));
                        if head == "forall" {
                            FixedFormula::Forall(binders, body)
                        } else {
                            FixedFormula::Exists(binders, body)
                        }
                    }
                    _ => {
                        let rel = BvRel::ALL
                            .iter()
                            .find(|r| r.smtlib_name() == head)
                            .copied()
                            .unwrap_or_else(|| panic!("unsupported relation {head}"));
                        let (a, _) = term(&items[1], vars);
                        let (b, _) = term(&items[2], vars);
                        FixedFormula::Rel(rel, a, b)
                    }
                }
            }
        }
    }
}

fn lifter_fixtures() -> Vec<(&'static str, &'static str, bool)> {
    vec![
        ("add-comm", "(declare-const a (_ BitVec 4))(declare-const b (_ BitVec 4))(assert (= (bvadd a b) (bvadd b a)))", false),
        ("slt-transitivity", "(declare-const a (_ BitVec 4))(assert (=> (and (bvslt a #x1) (bvslt a #x7)) (bvslt a #x1)))", false),
        ("and-zero", "(declare-const a (_ BitVec 4))(assert (= (bvand a #x0) #x0))", false),
        ("or-ones", "(declare-const a (_ BitVec 4))(assert (= (bvor a #xf) #xf))", false),
        ("xor-self", "(declare-const a (_ BitVec 4))(assert (= (bvxor a a) #x0))", false),
        ("not-not", "(declare-const a (_ BitVec 4))(assert (= (bvnot (bvnot a)) a))", false),
        ("neg-as-sub", "(declare-const a (_ BitVec 4))(assert (= (bvneg a) (bvsub #x0 a)))", false),
        ("smin-flip", "(declare-const a (_ BitVec 4))(assert (= (bvxor a #x8) (bvadd a #x8)))", false),
        ("shl-one-doubles", "(declare-const a (_ BitVec 4))(assert (= (bvshl a #x1) (bvadd a a)))", false),
        ("lshr-vs-udiv", "(declare-const a (_ BitVec 2))(assert (= (bvlshr a #b01) (bvudiv a (_ bv2 2))))", true),
        ("width-constant-shift", "(declare-const a (_ BitVec 4))(assert (= (bvshl a #x4) #x0))", false),
        ("urem-bound", "(declare-const a (_ BitVec 3))(declare-const b (_ BitVec 3))(assert (bvule (bvurem a b) (bvor a b)))", true),
        ("udiv-le", "(declare-const a (_ BitVec 3))(declare-const b (_ BitVec 3))(assert (bvule (bvudiv a b) a))", true),
        ("ashr-sign", "(declare-const a (_ BitVec 4))(assert (=> (bvsge a #x0) (= (bvashr a #x1) (bvlshr a #x1))))", false),
        ("ule-total", "(declare-const a (_ BitVec 3))(declare-const b (_ BitVec 3))(assert (or (bvule a b) (bvule b a)))", false),
        ("distinct-succ", "(declare-const a (_ BitVec 4))(assert (distinct (bvadd a #x1) a))", false),
        ("de-morgan", "(declare-const a (_ BitVec 3))(declare-const b (_ BitVec 3))(assert (= (bvnot (bvand a b)) (bvor (bvnot a) (bvnot b))))", false),
        ("mul-one", "(declare-const a (_ BitVec 4))(assert (= (bvmul a #x1) a))", false),
        ("not-valid-probe", "(declare-const a (_ BitVec 4))(declare-const b (_ BitVec 4))(assert (bvult a b))", false),
        ("quantified", "(declare-const a (_ BitVec 3))(assert (exists ((w (_ BitVec 3))) (= (bvadd a w) #b000)))", false),
    ]
}

#[test]
fn c08_lifter_round_trip() {
    let fixtures = lifter_fixtures();
    assert_eq!(fixtures.len(), 20);
    let mut all_ok = true;
    let mut detail = String::new();
    for (name, text, _3bit) in &fixtures {
        let (lifted, omega, width) = goals::lift_qfbv(text, LiftOptions::default())
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        let widths: BTreeMap<String, u32> = [("k".to_string(), width)].into();
        let via_lift = oracle::instantiate(&lifted, &omega, &widths).unwrap();
        let direct = fixed_smt2::parse(text);
        let free = oracle::free_fixed_vars(&direct);
        let total_bits: u32 = free.values().sum();
        assert!(total_bits <= 12, "{name} exceeds the 12-bit budget");
        // Enumerate every assignment and compare the two readings.
        let names: Vec<&String> = free.keys().collect();
        let mut counters = vec![0u128; names.len()];
        'outer: loop {
            let vals: BTreeMap<String, u128> = names
                .iter()
                .map(|n| (n.to_string(), 0))
                .zip(counters.iter().copied())
                .map(|((n, _), v)| (n, v))
                .collect();
            let a = oracle::eval_formula(&via_lift, &vals).unwrap();
            let b = oracle::eval_formula(&direct, &vals).unwrap();
            if a != b {
                all_ok = false;
                detail.push_str(&format!("{name}: differs at {vals:?} ({a} vs {b}); "));
                break;
            }
            let mut i = 0;
            loop {
                if i == counters.len() {
                    break 'outer;
                }
                counters[i] += 1;
                if counters[i] < (1u128 << free[names[i]]) {
                    break;
                }
                counters[i] = 0;
                i += 1;
            }
        }
    }
    verdict("C8 lifter round-trip (20 fixtures)", all_ok, &detail);
}

// -------------------------------------------------------------------------
// C9 (optional): with a user-supplied UFNIA solver (PBV_SOLVER), the
// and-eq rtl' and add-eq ltr' goals are answered unsat in mode combined
// within 30 seconds. Skipped, not failed, when no solver is configured.
// -------------------------------------------------------------------------
#[test]
fn c09_real_solver_smoke() {
    let Some(solver) = std::env::var_os("PBV_SOLVER") else {
        println!("[acceptance] C9 real-solver smoke: SKIPPED (PBV_SOLVER not set)");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.ic");
    std::fs::write(
        &table,
        "(ic (literal (bvand x) =) (cond (= (bvand t s) t)) (inverse t))\n\
         (ic (literal (bvadd x) =) (cond true) (inverse (bvsub t s)))\n",
    )
    .unwrap();
    let goals_dir = dir.path().join("goals");
    assert!(pbv_bin()
        .args(["gen-ic", "--table"])
        .arg(&table)
        .arg("--out")
        .arg(&goals_dir)
        .args(["--mode", "combined"])
        .status()
        .unwrap()
        .success());
    let json = dir.path().join("report.json");
    let out = pbv_bin()
        .args(["prove"])
        .arg(&goals_dir)
        .args([
            "--mode",
            "combined",
            "--timeout",
            "30",
            "--no-timing",
            "--json",
        ])
        .arg(&json)
        .env("PBV_SOLVER", &solver)
        .output()
        .unwrap();
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let status_of = |id: &str| {
        report["goals"]
            .as_array()
            .unwrap()
            .iter()
            .find(|g| g["id"] == id)
            .map(|g| g["status"].as_str().unwrap().to_string())
            .unwrap_or_default()
    };
    let ok = status_of("and_eq_rtl") == "proved" && status_of("add_eq_ltr") == "proved";
    verdict(
        "C9 real-solver smoke (and-eq rtl', add-eq ltr')",
        ok,
        &format!(
            "and_eq_rtl={}, add_eq_ltr={}, stdout: {}",
            status_of("and_eq_rtl"),
            status_of("add_eq_ltr"),
            String::from_utf8_lossy(&out.stdout)
        ),
    );
}

// -------------------------------------------------------------------------
// C10: gen-ic --builtin followed by prove with a scripted stub yields a
// byte-stable JSON report, independent of --jobs.
// -------------------------------------------------------------------------
#[test]
fn c10_stub_solver_end_to_end() {
    use std::os::unix::fs::PermissionsExt;
    let dir = tempfile::tempdir().unwrap();
    let goals_dir = dir.path().join("goals");
    assert!(pbv_bin()
        .args(["gen-ic", "--builtin", "--out"])
        .arg(&goals_dir)
        .status()
        .unwrap()
        .success());
    let stub = dir.path().join("stub.sh");
    std::fs::write(&stub, "#!/bin/sh\necho unsat\n").unwrap();
    std::fs::set_permissions(&stub, std::fs::Permissions::from_mode(0o755)).unwrap();
    let run = |jobs: &str, json: &Path| {
        let status = pbv_bin()
            .args(["prove"])
            .arg(&goals_dir)
            .args(["--jobs", jobs, "--no-timing", "--json"])
            .arg(json)
            .env("PBV_SOLVER", &stub)
            .stdout(std::process::Stdio::null())
            .status()
            .unwrap();
        assert!(status.success());
    };
    let json1 = dir.path().join("r1.json");
    let json2 = dir.path().join("r2.json");
    let json8 = dir.path().join("r8.json");
    run("1", &json1);
    run("1", &json2);
    run("8", &json8);
    let bytes1 = std::fs::read(&json1).unwrap();
    let stable =
        bytes1 == std::fs::read(&json2).unwrap() && bytes1 == std::fs::read(&json8).unwrap();
    let report: serde_json::Value = serde_json::from_slice(&bytes1).unwrap();
    let shaped = report["goals"].as_array().unwrap().len() == 165
        && report["totals"]["proved"] == 165
        && report["ic_matrix"]["both"] == 32;
    verdict("C10 stub-solver end-to-end", stable && shaped, "");
}
