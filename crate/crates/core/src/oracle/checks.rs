//! The oracle's check suites: translation equivalence, axiom validity under
//! the intended semantics, the bit-manipulation lemmas behind the recursive
//! axiomatization, and brute-force validity of parametric formulas.

use super::bv::BvValue;
use super::fixed::{
    assumptions_hold, eval_formula, free_fixed_vars, instantiate, typecheck_formula,
};
use super::intended::{eval_int_formula, IntEnv};
use super::OracleError;
use crate::ast::AxiomMode;
use crate::ast::{BvBinop, BvUfOp, IntTerm, ParamFormula, VarMap, WidthMap};
use crate::translate::{all_axioms, convert_formula, DomainHint, NamedAxiom, TranslateOptions};
use serde::Serialize;
use std::collections::BTreeMap;

/// Iterates all assignments of `1..=bound` to the named width variables.
fn width_valuations(vars: &[String], bound: u32) -> Vec<BTreeMap<String, u32>> {
    let mut out = vec![BTreeMap::new()];
    for var in vars {
        let mut next = Vec::with_capacity(out.len() * bound as usize);
        for partial in &out {
            for w in 1..=bound {
                let mut m = partial.clone();
                m.insert(var.clone(), w);
                next.push(m);
            }
        }
        out = next;
    }
    out
}

/// Iterates all assignments of values to fixed-width variables.
fn var_valuations(vars: &BTreeMap<String, u32>) -> VarIter {
    VarIter {
        names: vars.keys().cloned().collect(),
        widths: vars.values().copied().collect(),
        counters: vec![0; vars.len()],
        done: false,
    }
}

struct VarIter {
    names: Vec<String>,
    widths: Vec<u32>,
    counters: Vec<u128>,
    done: bool,
}

impl Iterator for VarIter {
    type Item = BTreeMap<String, u128>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item: BTreeMap<String, u128> = self
            .names
            .iter()
            .cloned()
            .zip(self.counters.iter().copied())
            .collect();
        let mut i = 0;
        loop {
            if i == self.counters.len() {
                self.done = true;
                break;
            }
            self.counters[i] += 1;
            if self.counters[i] < (1u128 << self.widths[i]) {
                break;
            }
            self.counters[i] = 0;
            i += 1;
        }
        Some(item)
    }
}

// ---------------------------------------------------------------------------
// Translation equivalence
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct MismatchWitness {
    pub widths: BTreeMap<String, u32>,
    pub vars: BTreeMap<String, u128>,
    pub bv_value: bool,
    pub int_value: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivReport {
    pub width_bound: u32,
    pub bit_budget: u32,
    pub checked_valuations: u64,
    pub checked_assignments: u64,
    pub skipped_valuations: Vec<String>,
    pub mismatch: Option<MismatchWitness>,
}

impl EquivReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl std::fmt::Display for EquivReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "translation equivalence: widths 1..={}, bit budget {}",
            self.width_bound, self.bit_budget
        )?;
        writeln!(
            f,
            "  checked {} width valuation(s), {} assignment(s)",
            self.checked_valuations, self.checked_assignments
        )?;
        for s in &self.skipped_valuations {
            writeln!(f, "  skipped: {s}")?;
        }
        match &self.mismatch {
            None => writeln!(f, "  PASS"),
            Some(w) => writeln!(
                f,
                "  MISMATCH at widths {:?}, vars {:?}: bit-vector {} vs integer {}",
                w.widths, w.vars, w.bv_value, w.int_value
            ),
        }
    }
}

/// Exhaustively compares the bit-vector semantics of `formula` against the
/// intended integer semantics of its conversion, over every width valuation
/// up to `width_bound` and every variable assignment within `bit_budget`
/// total bits. The mode never affects the body, only the axioms, so any
/// options value gives the same verdict apart from the urem flag.
pub fn check_translation_equiv(
    formula: &ParamFormula,
    omega: &WidthMap,
    opts: TranslateOptions,
    width_bound: u32,
    bit_budget: u32,
) -> Result<EquivReport, OracleError> {
    let chi = VarMap::for_formula(formula);
    let body = convert_formula(formula, omega, &chi, opts.fig1_urem)
        .map_err(|e| OracleError::UnsupportedRangeTerm(e.to_string()))?;
    let width_vars: Vec<String> = omega.free_width_vars().into_iter().collect();
    let mut report = EquivReport {
        width_bound,
        bit_budget,
        checked_valuations: 0,
        checked_assignments: 0,
        skipped_valuations: Vec::new(),
        mismatch: None,
    };
    for widths in width_valuations(&width_vars, width_bound) {
        if !assumptions_hold(omega, &widths)? {
            report
                .skipped_valuations
                .push(format!("{widths:?}: width assumptions not satisfied"));
            continue;
        }
        let fixed = match instantiate(formula, omega, &widths) {
            Ok(fixed) => fixed,
            Err(e @ (OracleError::NonPositiveWidth { .. } | OracleError::WidthTooLarge { .. })) => {
                report.skipped_valuations.push(format!("{widths:?}: {e}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let free = free_fixed_vars(&fixed);
        let total_bits: u64 = free.values().map(|w| u64::from(*w)).sum();
        if total_bits > u64::from(bit_budget) {
            report.skipped_valuations.push(format!(
                "{widths:?}: {total_bits} total bits exceed the budget"
            ));
            continue;
        }
        report.checked_valuations += 1;
        let mut int_env: IntEnv = widths
            .iter()
            .map(|(k, v)| (k.clone(), i128::from(*v)))
            .collect();
        for vals in var_valuations(&free) {
            let bv_value = eval_formula(&fixed, &vals)?;
            for (name, value) in &vals {
                let int_name = chi.get(name).unwrap_or(name);
                int_env.insert(int_name.to_string(), *value as i128);
            }
            let int_value = eval_int_formula(&body, &int_env)?;
            report.checked_assignments += 1;
            if bv_value != int_value {
                report.mismatch = Some(MismatchWitness {
                    widths: widths.clone(),
                    vars: vals,
                    bv_value,
                    int_value,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Axiom validity under the intended semantics
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct AxiomCheckConfig {
    pub k_max: u32,
    pub exp_max: u32,
    pub nonneg_cap: i128,
}

impl Default for AxiomCheckConfig {
    fn default() -> Self {
        AxiomCheckConfig {
            k_max: 6,
            exp_max: 16,
            nonneg_cap: 4096,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomInstanceFailure {
    pub axiom: String,
    pub env: BTreeMap<String, i128>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub mode: AxiomMode,
    pub k_max: u32,
    pub axioms_checked: usize,
    pub instances_checked: u64,
    pub failures: Vec<AxiomInstanceFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "axiom validity (mode {}, k <= {}): {} axiom(s), {} instance(s)",
            self.mode, self.k_max, self.axioms_checked, self.instances_checked
        )?;
        if self.failures.is_empty() {
            writeln!(f, "  PASS")
        } else {
            for fail in &self.failures {
                writeln!(
                    f,
                    "  FAIL {} at {:?}: {}",
                    fail.axiom, fail.env, fail.detail
                )?;
            }
            Ok(())
        }
    }
}

fn check_axiom(
    axiom: &NamedAxiom,
    cfg: &AxiomCheckConfig,
    report: &mut AxiomReport,
) -> Result<(), OracleError> {
    let label = format!("{}/{}[{}]", axiom.mode, axiom.uf.name(), axiom.name);
    // Enumerate hint domains left to right; `ValueOf` consults earlier
    // width variables in the environment.
    fn rec(
        axiom: &NamedAxiom,
        label: &str,
        vars: &[(&'static str, DomainHint)],
        env: &mut IntEnv,
        cfg: &AxiomCheckConfig,
        report: &mut AxiomReport,
    ) -> Result<(), OracleError> {
        match vars.split_first() {
            None => {
                report.instances_checked += 1;
                match eval_int_formula(&axiom.matrix, env) {
                    Ok(true) => {}
                    Ok(false) => report.failures.push(AxiomInstanceFailure {
                        axiom: label.to_string(),
                        env: env.clone(),
                        detail: "instance is false".to_string(),
                    }),
                    Err(e) => report.failures.push(AxiomInstanceFailure {
                        axiom: label.to_string(),
                        env: env.clone(),
                        detail: e.to_string(),
                    }),
                }
                Ok(())
            }
            Some(((name, hint), rest)) => {
                let range: Vec<i128> = match hint {
                    DomainHint::Width => (1..=i128::from(cfg.k_max)).collect(),
                    DomainHint::Exponent => (1..=i128::from(cfg.exp_max)).collect(),
                    DomainHint::Bit => vec![0, 1],
                    DomainHint::NonNegInt => (0..=cfg.nonneg_cap).collect(),
                    DomainHint::ValueOf(k) => {
                        let k = *env
                            .get(*k)
                            .ok_or_else(|| OracleError::UnboundVariable(k.to_string()))?;
                        (0..(1i128 << k)).collect()
                    }
                };
                for v in range {
                    env.insert(name.to_string(), v);
                    rec(axiom, label, rest, env, cfg, report)?;
                }
                env.remove(*name);
                Ok(())
            }
        }
    }
    rec(axiom, &label, &axiom.vars, &mut IntEnv::new(), cfg, report)
}

/// Every axiom of the mode holds under the intended semantics, widths
/// exhaustive up to `cfg.k_max`, `pow2` exponents up to `cfg.exp_max`.
pub fn check_axiom_validity(
    mode: AxiomMode,
    cfg: AxiomCheckConfig,
) -> Result<AxiomReport, OracleError> {
    let axioms = all_axioms(mode);
    let mut report = AxiomReport {
        mode,
        k_max: cfg.k_max,
        axioms_checked: axioms.len(),
        instances_checked: 0,
        failures: Vec::new(),
    };
    for axiom in &axioms {
        check_axiom(axiom, &cfg, &mut report)?;
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Lemma suite
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub k_max: u32,
    pub checks: Vec<(String, u64)>,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "lemma suite (k <= {}):", self.k_max)?;
        for (name, n) in &self.checks {
            writeln!(f, "  {name}: {n} instance(s)")?;
        }
        if self.failures.is_empty() {
            writeln!(f, "  PASS")
        } else {
            for fail in &self.failures {
                writeln!(f, "  FAIL {fail}")?;
            }
            Ok(())
        }
    }
}

/// The unsigned-interpretation identities behind the recursive
/// axiomatization: concatenation/mod/div against slices, the bitwise
/// correspondence, and bit selection via `(x div pow2(i)) mod 2`.
pub fn check_lemma_suite(k_max: u32) -> LemmaReport {
    let mut report = LemmaReport {
        k_max,
        checks: Vec::new(),
        failures: Vec::new(),
    };

    // [i ++ a]_N = 2^k * i + [a]_N for i in {0, 1}.
    let mut n1 = 0;
    for k in 1..=k_max.min(63) {
        for a in 0..(1u128 << k) {
            for i in 0..=1u128 {
                n1 += 1;
                let va = BvValue::new(k, a);
                let vi = BvValue::new(1, i);
                let concat = BvValue::binop(BvBinop::Concat, vi, va);
                if concat.to_nat() != (1u128 << k) * i + a {
                    report
                        .failures
                        .push(format!("concat lemma at k={k}, a={a}, i={i}"));
                }
            }
        }
    }
    report.checks.push(("concat".to_string(), n1));

    // n mod 2^(k-1) = [a[k-2:0]]_N and n div 2 = [a[k-1:1]]_N for k >= 2.
    let mut n2 = 0;
    for k in 2..=k_max {
        for a in 0..(1u128 << k) {
            n2 += 2;
            let va = BvValue::new(k, a);
            let low = BvValue::extract(k - 2, 0, va);
            if a % (1u128 << (k - 1)) != low.to_nat() {
                report.failures.push(format!("mod lemma at k={k}, a={a}"));
            }
            let high = BvValue::extract(k - 1, 1, va);
            if a / 2 != high.to_nat() {
                report.failures.push(format!("div lemma at k={k}, a={a}"));
            }
        }
    }
    report.checks.push(("mod/div slices".to_string(), n2));

    // [a op b]_N = opN(k, [a]_N, [b]_N) with the bitwise intended semantics.
    let mut n3 = 0;
    for k in 1..=k_max {
        for a in 0..(1u128 << k) {
            for b in 0..(1u128 << k) {
                for (op, uf) in [
                    (BvBinop::And, BvUfOp::And),
                    (BvBinop::Or, BvUfOp::Or),
                    (BvBinop::Xor, BvUfOp::Xor),
                ] {
                    n3 += 1;
                    let bv = BvValue::binop(op, BvValue::new(k, a), BvValue::new(k, b));
                    let app = IntTerm::bv_app(
                        uf,
                        IntTerm::num(i128::from(k)),
                        vec![IntTerm::num(a as i128), IntTerm::num(b as i128)],
                    );
                    let int = super::intended::eval_int_term(&app, &IntEnv::new());
                    match int {
                        Ok(v) if v == bv.to_nat() as i128 => {}
                        other => report.failures.push(format!(
                            "bitwise lemma at k={k}, a={a}, b={b}, {op:?}: {other:?}"
                        )),
                    }
                }
            }
        }
    }
    report
        .checks
        .push(("bitwise correspondence".to_string(), n3));

    // h_select: (n div 2^i) mod 2 equals bit i.
    let mut n4 = 0;
    for k in 1..=k_max {
        for a in 0..(1u128 << k) {
            for i in 0..k {
                n4 += 1;
                let selected = (a >> i) & 1;
                let v = BvValue::new(k, a);
                if (a / (1u128 << i)) % 2 != selected || u128::from(v.bit(i)) != selected {
                    report
                        .failures
                        .push(format!("h_select at k={k}, a={a}, i={i}"));
                }
            }
        }
    }
    report.checks.push(("h_select".to_string(), n4));

    report
}

// ---------------------------------------------------------------------------
// Brute-force validity of parametric formulas
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct Invalid {
    pub widths: BTreeMap<String, u32>,
    pub vars: BTreeMap<String, u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidityOutcome {
    pub checked_valuations: u64,
    pub checked_assignments: u64,
    pub skipped_valuations: Vec<String>,
    pub counterexample: Option<Invalid>,
}

impl ValidityOutcome {
    pub fn is_valid(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Evaluates the formula under every width valuation up to `width_bound`
/// (instantiations with nonpositive widths or beyond the bit budget are
/// skipped and recorded) and every assignment; reports the first falsifying
/// assignment.
pub fn check_valid_at_widths(
    formula: &ParamFormula,
    omega: &WidthMap,
    width_bound: u32,
    bit_budget: u32,
) -> Result<ValidityOutcome, OracleError> {
    let width_vars: Vec<String> = omega.free_width_vars().into_iter().collect();
    let mut outcome = ValidityOutcome {
        checked_valuations: 0,
        checked_assignments: 0,
        skipped_valuations: Vec::new(),
        counterexample: None,
    };
    for widths in width_valuations(&width_vars, width_bound) {
        if !assumptions_hold(omega, &widths)? {
            outcome
                .skipped_valuations
                .push(format!("{widths:?}: width assumptions not satisfied"));
            continue;
        }
        let fixed = match instantiate(formula, omega, &widths) {
            Ok(fixed) => fixed,
            Err(e @ (OracleError::NonPositiveWidth { .. } | OracleError::WidthTooLarge { .. })) => {
                outcome.skipped_valuations.push(format!("{widths:?}: {e}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        typecheck_formula(&fixed).map_err(OracleError::UnsupportedRangeTerm)?;
        let free = free_fixed_vars(&fixed);
        let total_bits: u64 = free.values().map(|w| u64::from(*w)).sum();
        if total_bits > u64::from(bit_budget) {
            outcome.skipped_valuations.push(format!(
                "{widths:?}: {total_bits} total bits exceed the budget"
            ));
            continue;
        }
        outcome.checked_valuations += 1;
        for vals in var_valuations(&free) {
            outcome.checked_assignments += 1;
            if !eval_formula(&fixed, &vals)? {
                outcome.counterexample = Some(Invalid { widths, vars: vals });
                return Ok(outcome);
            }
        }
    }
    Ok(outcome)
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
    fn example1_equivalence_at_small_widths() {
        let (f, omega) = example1();
        let report =
            check_translation_equiv(&f, &omega, TranslateOptions::default(), 4, 16).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.checked_valuations, 4);
        assert_eq!(report.checked_assignments, 2 + 4 + 8 + 16);
    }

    #[test]
    fn fig1_urem_flag_surfaces_the_discrepancy() {
        let text = "\
(declare-width k)
(declare-pbv x :bits k)
(declare-pbv z0 :bits k :value 0)
(assert (= (bvurem x z0) x))
";
        let (f, omega) = parse_pbv(text).unwrap();
        let ok = check_translation_equiv(&f, &omega, TranslateOptions::default(), 3, 16).unwrap();
        assert!(ok.passed(), "{ok}");
        let bad = check_translation_equiv(
            &f,
            &omega,
            TranslateOptions {
                fig1_urem: true,
                ..Default::default()
            },
            3,
            16,
        )
        .unwrap();
        let witness = bad
            .mismatch
            .expect("mismatch expected under the verbatim branch");
        assert_eq!(witness.widths.get("k"), Some(&1));
    }

    #[test]
    fn eliminated_udiv_by_zero_evaluates_to_the_maximum() {
        use crate::ast::BvUfOp;
        let app = IntTerm::bv_app(
            BvUfOp::Udiv,
            IntTerm::var("k"),
            vec![IntTerm::var("x"), IntTerm::num(0)],
        );
        let out = crate::translate::elim_term(&app, false);
        let env: IntEnv = [("k".to_string(), 3), ("x".to_string(), 5)].into();
        assert_eq!(super::super::intended::eval_int_term(&out, &env).unwrap(), 7);
    }

    #[test]
    fn quantified_formulas_translate_equivalently() {
        let exists = "\
(declare-width k)
(declare-pbv x :bits k)
(declare-pbv s :bits k)
(assert (exists (x) (= (bvand x s) s)))
";
        let (f, omega) = parse_pbv(exists).unwrap();
        let report =
            check_translation_equiv(&f, &omega, TranslateOptions::default(), 3, 16).unwrap();
        assert!(report.passed(), "{report}");

        let forall = "\
(declare-width k)
(declare-pbv x :bits k)
(declare-pbv s :bits k)
(assert (forall (x) (bvule (bvand x s) s)))
";
        let (f, omega) = parse_pbv(forall).unwrap();
        let report =
            check_translation_equiv(&f, &omega, TranslateOptions::default(), 3, 16).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn partial_axioms_hold_at_small_scale() {
        let cfg = AxiomCheckConfig {
            k_max: 4,
            exp_max: 8,
            nonneg_cap: 64,
        };
        let report = check_axiom_validity(AxiomMode::Partial, cfg).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn full_axioms_hold_at_small_scale() {
        let cfg = AxiomCheckConfig {
            k_max: 4,
            exp_max: 8,
            nonneg_cap: 64,
        };
        let report = check_axiom_validity(AxiomMode::Full, cfg).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn lemma_suite_small() {
        let report = check_lemma_suite(4);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn budget_exceeded_is_reported_not_dropped() {
        let (f, omega) = example1();
        let report =
            check_translation_equiv(&f, &omega, TranslateOptions::default(), 4, 2).unwrap();
        assert!(report.passed());
        assert_eq!(report.checked_valuations, 2);
        assert_eq!(report.skipped_valuations.len(), 2);
    }

    #[test]
    fn validity_check_finds_counterexamples() {
        let text = "\
(declare-width k)
(declare-pbv x :bits k)
(declare-pbv y :bits k)
(assert (= (bvand x y) x))
";
        let (f, omega) = parse_pbv(text).unwrap();
        let outcome = check_valid_at_widths(&f, &omega, 3, 16).unwrap();
        let cex = outcome.counterexample.expect("not valid");
        assert_eq!(cex.widths.get("k"), Some(&1));
    }

    #[test]
    fn sortcheck_agrees_with_fixed_size_typing() {
        // Well-sorted parametric formulas instantiate to well-typed
        // fixed-size formulas at every positive valuation.
        let text = "\
(declare-width a)
(declare-width b)
(declare-pbv x :bits a)
(declare-pbv y :bits b)
(declare-pbv z :bits (+ a b))
(assert (= (concat x y) z))
";
        let (f, omega) = parse_pbv(text).unwrap();
        crate::sortcheck::check_well_sorted(&f, &omega).unwrap();
        for a in 1..=5u32 {
            for b in 1..=5u32 {
                let widths: BTreeMap<String, u32> =
                    [("a".to_string(), a), ("b".to_string(), b)].into();
                let fixed = instantiate(&f, &omega, &widths).unwrap();
                typecheck_formula(&fixed).unwrap();
            }
        }
    }
}
