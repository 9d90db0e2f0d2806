//! The rewrite-pair fixpoint loop: prove `t1 = t2` equivalences, then add
//! every proved equivalence as a universally quantified axiom (with the
//! usual range guards) to the remaining problems, and repeat until a round
//! proves nothing new.

use crate::ast::{IntFormula, IntTerm, ParamFormula, ParamTerm, SymbolKind, VarMap, WidthMap};
use crate::translate::{convert_formula, TranslateError};

/// A candidate rewrite: two terms claimed equivalent under the shared map.
#[derive(Debug, Clone)]
pub struct RewritePair {
    pub id: String,
    pub lhs: ParamTerm,
    pub rhs: ParamTerm,
}

impl RewritePair {
    pub fn equivalence(&self) -> ParamFormula {
        ParamFormula::eq(self.lhs.clone(), self.rhs.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProveOutcome {
    Proved,
    Unproved,
}

#[derive(Debug, Clone)]
pub struct FixpointResult {
    pub proved: Vec<String>,
    pub iterations: u32,
}

/// Turns a proved equivalence into an axiom usable by later rounds: the
/// converted equation universally quantified over its integer variables,
/// each guarded to the range of its bit-width.
fn equivalence_axiom(pair: &RewritePair, omega: &WidthMap) -> Result<IntFormula, TranslateError> {
    let formula = pair.equivalence();
    let chi = VarMap::for_formula(&formula);
    let body = convert_formula(&formula, omega, &chi, false)?;
    let mut vars = Vec::new();
    let mut guards = Vec::new();
    for sym in formula.free_symbols() {
        if sym.kind == SymbolKind::Variable {
            let int_name = chi.get(&sym.name).expect("mapped variable");
            let width = omega
                .width_of(&sym.name)
                .cloned()
                .unwrap_or_else(|| IntTerm::num(1));
            let v = IntTerm::var(int_name);
            vars.push(int_name.to_string());
            guards.push(IntFormula::and(
                IntFormula::le(IntTerm::num(0), v.clone()),
                IntFormula::lt(v, IntTerm::pow2(width)),
            ));
        }
    }
    if vars.is_empty() {
        return Ok(body);
    }
    Ok(IntFormula::forall(
        vars,
        IntFormula::implies(IntFormula::and_all(guards), body),
    ))
}

/// Runs prover rounds until a fixpoint. The prover sees each unproved pair
/// together with the axioms accumulated from everything proved so far; its
/// failures mark the pair unproved for the round, never abort the loop.
pub fn rewrite_fixpoint(
    pairs: &[RewritePair],
    omega: &WidthMap,
    mut prover: impl FnMut(&RewritePair, &[IntFormula]) -> ProveOutcome,
) -> FixpointResult {
    let mut proved: Vec<String> = Vec::new();
    let mut axioms: Vec<IntFormula> = Vec::new();
    let mut remaining: Vec<&RewritePair> = pairs.iter().collect();
    let mut iterations = 0;
    loop {
        iterations += 1;
        let mut next_remaining = Vec::new();
        let mut newly_proved = Vec::new();
        for pair in remaining {
            match prover(pair, &axioms) {
                ProveOutcome::Proved => {
                    proved.push(pair.id.clone());
                    newly_proved.push(pair);
                }
                ProveOutcome::Unproved => next_remaining.push(pair),
            }
        }
        for pair in &newly_proved {
            if let Ok(axiom) = equivalence_axiom(pair, omega) {
                axioms.push(axiom);
            }
        }
        if newly_proved.is_empty() || next_remaining.is_empty() {
            return FixpointResult { proved, iterations };
        }
        remaining = next_remaining;
    }
}
