//! S-expression printing for all four ASTs. The printed form is exactly what
//! the parsers in this module accept, so `parse(pretty(e)) == e`.

use super::*;
use std::fmt;

impl fmt::Display for ParamTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            TermNode::Symbol(s) => f.write_str(&s.name),
            TermNode::Unop(op, a) => {
                let name = match op {
                    BvUnop::Not => "bvnot",
                    BvUnop::Neg => "bvneg",
                };
                write!(f, "({name} {a})")
            }
            TermNode::Binop(op, a, b) => write!(f, "({} {a} {b})", op.smtlib_name()),
            TermNode::Extract { hi, lo, arg } => {
                write!(f, "((_ extract {hi} {lo}) {arg})")
            }
        }
    }
}

impl fmt::Display for ParamFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            FormulaNode::True => f.write_str("true"),
            FormulaNode::False => f.write_str("false"),
            FormulaNode::Eq(a, b) => write!(f, "(= {a} {b})"),
            FormulaNode::Ne(a, b) => write!(f, "(distinct {a} {b})"),
            FormulaNode::Rel(r, a, b) => write!(f, "({} {a} {b})", r.smtlib_name()),
            FormulaNode::Not(g) => write!(f, "(not {g})"),
            FormulaNode::And(a, b) => write!(f, "(and {a} {b})"),
            FormulaNode::Or(a, b) => write!(f, "(or {a} {b})"),
            FormulaNode::Implies(a, b) => write!(f, "(=> {a} {b})"),
            FormulaNode::Iff(a, b) => write!(f, "(iff {a} {b})"),
            FormulaNode::Forall(vars, g) => write_quant(f, "forall", vars, g),
            FormulaNode::Exists(vars, g) => write_quant(f, "exists", vars, g),
        }
    }
}

fn write_quant(
    f: &mut fmt::Formatter<'_>,
    word: &str,
    vars: &[BvSymbol],
    body: &ParamFormula,
) -> fmt::Result {
    write!(f, "({word} (")?;
    for (i, v) in vars.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        f.write_str(&v.name)?;
    }
    write!(f, ") {body})")
}

impl fmt::Display for IntTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            IntNode::Num(n) => {
                if *n < 0 {
                    write!(f, "(- {})", -n)
                } else {
                    write!(f, "{n}")
                }
            }
            IntNode::Var(v) => f.write_str(v),
            IntNode::Add(a, b) => write!(f, "(+ {a} {b})"),
            IntNode::Sub(a, b) => write!(f, "(- {a} {b})"),
            IntNode::Mul(a, b) => write!(f, "(* {a} {b})"),
            IntNode::Div(a, b) => write!(f, "(div {a} {b})"),
            IntNode::Mod(a, b) => write!(f, "(mod {a} {b})"),
            IntNode::Abs(a) => write!(f, "(abs {a})"),
            IntNode::Pow2(a) => write!(f, "(pow2 {a})"),
            IntNode::Ite(c, t, e) => write!(f, "(ite {c} {t} {e})"),
            IntNode::BvApp { op, width, args } => {
                write!(f, "({} {width}", op.name())?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for IntFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            IntFormulaNode::True => f.write_str("true"),
            IntFormulaNode::False => f.write_str("false"),
            IntFormulaNode::Cmp(rel, a, b) => {
                let name = match rel {
                    IntRel::Eq => "=",
                    IntRel::Ne => "distinct",
                    IntRel::Lt => "<",
                    IntRel::Le => "<=",
                    IntRel::Gt => ">",
                    IntRel::Ge => ">=",
                };
                write!(f, "({name} {a} {b})")
            }
            IntFormulaNode::Not(g) => write!(f, "(not {g})"),
            IntFormulaNode::And(a, b) => write!(f, "(and {a} {b})"),
            IntFormulaNode::Or(a, b) => write!(f, "(or {a} {b})"),
            IntFormulaNode::Implies(a, b) => write!(f, "(=> {a} {b})"),
            IntFormulaNode::Iff(a, b) => write!(f, "(= {a} {b})"),
            IntFormulaNode::Forall(vars, g) => write_int_quant(f, "forall", vars, g),
            IntFormulaNode::Exists(vars, g) => write_int_quant(f, "exists", vars, g),
            IntFormulaNode::BvRelApp {
                rel,
                width,
                lhs,
                rhs,
            } => {
                write!(f, "(int{} {width} {lhs} {rhs})", rel.smtlib_name())
            }
        }
    }
}

fn write_int_quant(
    f: &mut fmt::Formatter<'_>,
    word: &str,
    vars: &[String],
    body: &IntFormula,
) -> fmt::Result {
    write!(f, "({word} (")?;
    for (i, v) in vars.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "({v} Int)")?;
    }
    write!(f, ") {body})")
}

/// Renders a formula together with its width map as a complete `.pbv`
/// document: width declarations, symbol declarations, one assert.
pub fn pretty_problem(formula: &ParamFormula, omega: &WidthMap) -> String {
    let mut out = String::new();
    for w in omega.free_width_vars() {
        out.push_str(&format!("(declare-width {w})\n"));
    }
    for sym in omega.symbols() {
        let width = omega
            .width_of(&sym.name)
            .expect("declared symbol has a width");
        match sym.kind {
            SymbolKind::Variable => {
                out.push_str(&format!("(declare-pbv {} :bits {width})\n", sym.name));
            }
            SymbolKind::SymConst => {
                let value = omega.value_of(&sym.name).expect("constant has a value");
                out.push_str(&format!(
                    "(declare-pbv {} :bits {width} :value {value})\n",
                    sym.name
                ));
            }
        }
    }
    for assumption in &omega.assumptions {
        out.push_str(&format!("(assume-width {assumption})\n"));
    }
    out.push_str(&format!("(assert {formula})\n"));
    out
}
