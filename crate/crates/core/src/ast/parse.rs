//! The `.pbv` surface syntax: an S-expression format with
//! `(declare-width w)`, `(declare-pbv x :bits t)` for variables,
//! `(declare-pbv z :bits t :value v)` for symbolic constants, optional
//! `(assume-width f)` constraints, and `(assert f)`. Operator spellings
//! follow SMT-LIB 2. Concrete bit-vector literals (`#b...`, `#x...`,
//! `(_ bvN w)`) are desugared at parse time into symbolic constants with
//! concrete width and value.

use super::*;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{pos}: syntax error: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("{pos}: duplicate symbol `{name}`")]
    DuplicateSymbol { pos: Pos, name: String },
    #[error("{pos}: unknown identifier `{name}`")]
    UnknownIdentifier { pos: Pos, name: String },
    #[error("{pos}: unknown operator `{name}`")]
    UnknownOperator { pos: Pos, name: String },
    #[error("{pos}: reserved name `{name}` cannot be declared")]
    ReservedName { pos: Pos, name: String },
}

impl ParseError {
    fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            pos,
            message: message.into(),
        }
    }
}

/// A parsed S-expression with source positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExp {
    Atom(String, Pos),
    List(Vec<SExp>, Pos),
}

impl SExp {
    pub fn pos(&self) -> Pos {
        match self {
            SExp::Atom(_, p) | SExp::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExp::Atom(s, _) => Some(s),
            SExp::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExp]> {
        match self {
            SExp::List(items, _) => Some(items),
            SExp::Atom(..) => None,
        }
    }
}

/// Reads a sequence of top-level S-expressions. Comments run from `;` to the
/// end of the line.
pub fn read_sexps(text: &str) -> Result<Vec<SExp>, ParseError> {
    let mut chars = text.chars().peekable();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut stack: Vec<(Vec<SExp>, Pos)> = Vec::new();
    let mut top = Vec::new();

    macro_rules! push {
        ($e:expr) => {
            match stack.last_mut() {
                Some((items, _)) => items.push($e),
                None => top.push($e),
            }
        };
    }

    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '(' => {
                chars.next();
                col += 1;
                stack.push((Vec::new(), pos));
            }
            ')' => {
                chars.next();
                col += 1;
                match stack.pop() {
                    Some((items, open_pos)) => push!(SExp::List(items, open_pos)),
                    None => return Err(ParseError::syntax(pos, "unmatched `)`")),
                }
            }
            _ => {
                let mut atom = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    atom.push(c);
                    chars.next();
                    col += 1;
                }
                push!(SExp::Atom(atom, pos));
            }
        }
    }
    if let Some((_, open_pos)) = stack.pop() {
        return Err(ParseError::syntax(open_pos, "unclosed `(`"));
    }
    Ok(top)
}

const RESERVED: &[&str] = &[
    "true", "false", "and", "or", "not", "=>", "iff", "=", "distinct", "forall", "exists", "ite",
    "abs", "div", "mod", "pow2", "concat", "extract", "bvnot", "bvneg", "bvand", "bvor", "bvxor",
    "bvshl", "bvlshr", "bvashr", "bvadd", "bvsub", "bvmul", "bvurem", "bvudiv", "bvult", "bvugt",
    "bvule", "bvuge", "bvslt", "bvsgt", "bvsle", "bvsge", "intand", "intor", "intxor", "_", "+",
    "-", "*",
];

fn check_declarable(name: &str, pos: Pos) -> Result<(), ParseError> {
    if RESERVED.contains(&name) || name.starts_with('_') || name.parse::<i128>().is_ok() {
        return Err(ParseError::ReservedName {
            pos,
            name: name.to_string(),
        });
    }
    Ok(())
}

/// Parser state for one `.pbv` document.
struct PbvParser {
    omega: WidthMap,
    width_vars: BTreeSet<String>,
}

impl PbvParser {
    fn new() -> Self {
        PbvParser {
            omega: WidthMap::new(),
            width_vars: BTreeSet::new(),
        }
    }

    fn lookup_symbol(&self, name: &str, pos: Pos) -> Result<BvSymbol, ParseError> {
        match self.omega.kind_of(name) {
            Some(SymbolKind::Variable) => Ok(BvSymbol::var(name)),
            Some(SymbolKind::SymConst) => Ok(BvSymbol::sym_const(name)),
            None => Err(ParseError::UnknownIdentifier {
                pos,
                name: name.to_string(),
            }),
        }
    }

    /// Desugars a concrete bit-vector literal into a symbolic constant with
    /// concrete width and value, reusing the constant if it already exists.
    fn literal_const(&mut self, value: u128, width: u32) -> ParamTerm {
        let name = format!("_c{value}_{width}");
        if !self.omega.contains(&name) {
            self.omega.declare_const(
                &name,
                IntTerm::num(width as i128),
                IntTerm::num(value as i128),
            );
        }
        ParamTerm::symbol(BvSymbol::sym_const(name))
    }

    fn parse_int_term(&self, sexp: &SExp) -> Result<IntTerm, ParseError> {
        match sexp {
            SExp::Atom(a, pos) => {
                if let Ok(n) = a.parse::<i128>() {
                    return Ok(IntTerm::num(n));
                }
                if self.width_vars.contains(a) {
                    return Ok(IntTerm::var(a.clone()));
                }
                Err(ParseError::UnknownIdentifier {
                    pos: *pos,
                    name: a.clone(),
                })
            }
            SExp::List(items, pos) => {
                let head = items
                    .first()
                    .and_then(SExp::as_atom)
                    .ok_or_else(|| ParseError::syntax(*pos, "expected an operator"))?;
                let args: Vec<IntTerm> = items[1..]
                    .iter()
                    .map(|e| self.parse_int_term(e))
                    .collect::<Result<_, _>>()?;
                let binary_fold = |ctor: fn(IntTerm, IntTerm) -> IntTerm,
                                   args: Vec<IntTerm>|
                 -> Result<IntTerm, ParseError> {
                    if args.len() < 2 {
                        return Err(ParseError::syntax(
                            *pos,
                            format!("`{head}` expects at least 2 arguments"),
                        ));
                    }
                    let mut it = args.into_iter();
                    let first = it.next().unwrap();
                    Ok(it.fold(first, ctor))
                };
                match head {
                    "+" => binary_fold(IntTerm::add, args),
                    "*" => binary_fold(IntTerm::mul, args),
                    "-" => match args.len() {
                        1 => Ok(IntTerm::sub(
                            IntTerm::num(0),
                            args.into_iter().next().unwrap(),
                        )),
                        _ => binary_fold(IntTerm::sub, args),
                    },
                    "div" | "mod" | "pow2" | "abs" => {
                        let expected = if head == "pow2" || head == "abs" {
                            1
                        } else {
                            2
                        };
                        if args.len() != expected {
                            return Err(ParseError::syntax(
                                *pos,
                                format!("`{head}` expects {expected} argument(s)"),
                            ));
                        }
                        let mut it = args.into_iter();
                        Ok(match head {
                            "div" => IntTerm::div(it.next().unwrap(), it.next().unwrap()),
                            "mod" => IntTerm::modulo(it.next().unwrap(), it.next().unwrap()),
                            "pow2" => IntTerm::pow2(it.next().unwrap()),
                            _ => IntTerm::abs(it.next().unwrap()),
                        })
                    }
                    other => Err(ParseError::UnknownOperator {
                        pos: *pos,
                        name: other.to_string(),
                    }),
                }
            }
        }
    }

    /// Integer comparison formulas, used by `assume-width`.
    fn parse_int_formula(&self, sexp: &SExp) -> Result<IntFormula, ParseError> {
        let pos = sexp.pos();
        let items = sexp
            .as_list()
            .ok_or_else(|| ParseError::syntax(pos, "expected a comparison"))?;
        let head = items
            .first()
            .and_then(SExp::as_atom)
            .ok_or_else(|| ParseError::syntax(pos, "expected an operator"))?;
        if head == "and" {
            let parts: Vec<IntFormula> = items[1..]
                .iter()
                .map(|e| self.parse_int_formula(e))
                .collect::<Result<_, _>>()?;
            if parts.is_empty() {
                return Err(ParseError::syntax(pos, "`and` expects arguments"));
            }
            return Ok(IntFormula::and_all(parts));
        }
        let rel = match head {
            "=" => IntRel::Eq,
            "distinct" => IntRel::Ne,
            "<" => IntRel::Lt,
            "<=" => IntRel::Le,
            ">" => IntRel::Gt,
            ">=" => IntRel::Ge,
            other => {
                return Err(ParseError::UnknownOperator {
                    pos,
                    name: other.to_string(),
                })
            }
        };
        if items.len() != 3 {
            return Err(ParseError::syntax(
                pos,
                format!("`{head}` expects 2 arguments"),
            ));
        }
        Ok(IntFormula::cmp(
            rel,
            self.parse_int_term(&items[1])?,
            self.parse_int_term(&items[2])?,
        ))
    }

    fn parse_term(&mut self, sexp: &SExp) -> Result<ParamTerm, ParseError> {
        match sexp {
            SExp::Atom(a, pos) => {
                if let Some(rest) = a.strip_prefix("#b") {
                    let width = rest.len() as u32;
                    let value = u128::from_str_radix(rest, 2).map_err(|_| {
                        ParseError::syntax(*pos, format!("bad binary literal `{a}`"))
                    })?;
                    if width == 0 || width > 64 {
                        return Err(ParseError::syntax(*pos, "literal width must be 1..=64"));
                    }
                    return Ok(self.literal_const(value, width));
                }
                if let Some(rest) = a.strip_prefix("#x") {
                    let width = 4 * rest.len() as u32;
                    let value = u128::from_str_radix(rest, 16)
                        .map_err(|_| ParseError::syntax(*pos, format!("bad hex literal `{a}`")))?;
                    if width == 0 || width > 64 {
                        return Err(ParseError::syntax(*pos, "literal width must be 1..=64"));
                    }
                    return Ok(self.literal_const(value, width));
                }
                let sym = self.lookup_symbol(a, *pos)?;
                Ok(ParamTerm::symbol(sym))
            }
            SExp::List(items, pos) => {
                // (_ bvN w) literals
                if items.len() == 3 {
                    if let (Some("_"), Some(bv), Some(w)) =
                        (items[0].as_atom(), items[1].as_atom(), items[2].as_atom())
                    {
                        if let Some(num) = bv.strip_prefix("bv") {
                            let value = num.parse::<u128>().map_err(|_| {
                                ParseError::syntax(*pos, format!("bad literal `{bv}`"))
                            })?;
                            let width = w.parse::<u32>().map_err(|_| {
                                ParseError::syntax(*pos, format!("bad literal width `{w}`"))
                            })?;
                            if width == 0 || width > 64 {
                                return Err(ParseError::syntax(
                                    *pos,
                                    "literal width must be 1..=64",
                                ));
                            }
                            return Ok(self.literal_const(value & mask(width), width));
                        }
                    }
                }
                // ((_ extract u l) t)
                if items.len() == 2 {
                    if let Some(inner) = items[0].as_list() {
                        if inner.len() == 4
                            && inner[0].as_atom() == Some("_")
                            && inner[1].as_atom() == Some("extract")
                        {
                            let hi = atom_u32(&inner[2])?;
                            let lo = atom_u32(&inner[3])?;
                            if lo > hi {
                                return Err(ParseError::syntax(
                                    *pos,
                                    format!("extract bounds must satisfy l <= u, got [{hi}:{lo}]"),
                                ));
                            }
                            let arg = self.parse_term(&items[1])?;
                            return Ok(ParamTerm::extract(hi, lo, arg));
                        }
                    }
                }
                let head = items
                    .first()
                    .and_then(SExp::as_atom)
                    .ok_or_else(|| ParseError::syntax(*pos, "expected an operator"))?
                    .to_string();
                let expect = |n: usize| -> Result<(), ParseError> {
                    if items.len() - 1 != n {
                        Err(ParseError::syntax(
                            *pos,
                            format!("`{head}` expects {n} argument(s), got {}", items.len() - 1),
                        ))
                    } else {
                        Ok(())
                    }
                };
                match head.as_str() {
                    "bvnot" | "bvneg" => {
                        expect(1)?;
                        let arg = self.parse_term(&items[1])?;
                        let op = if head == "bvnot" {
                            BvUnop::Not
                        } else {
                            BvUnop::Neg
                        };
                        Ok(ParamTerm::unop(op, arg))
                    }
                    "bvsub" => {
                        expect(2)?;
                        let a = self.parse_term(&items[1])?;
                        let b = self.parse_term(&items[2])?;
                        Ok(ParamTerm::sub(a, b))
                    }
                    _ => {
                        let op = BvBinop::ALL
                            .iter()
                            .find(|op| op.smtlib_name() == head)
                            .copied()
                            .ok_or_else(|| ParseError::UnknownOperator {
                                pos: *pos,
                                name: head.clone(),
                            })?;
                        expect(2)?;
                        let a = self.parse_term(&items[1])?;
                        let b = self.parse_term(&items[2])?;
                        Ok(ParamTerm::binop(op, a, b))
                    }
                }
            }
        }
    }

    fn parse_formula(&mut self, sexp: &SExp) -> Result<ParamFormula, ParseError> {
        match sexp {
            SExp::Atom(a, pos) => match a.as_str() {
                "true" => Ok(ParamFormula::tru()),
                "false" => Ok(ParamFormula::fls()),
                other => Err(ParseError::syntax(
                    *pos,
                    format!("`{other}` is not a formula (bare terms are not Boolean)"),
                )),
            },
            SExp::List(items, pos) => {
                let head = items
                    .first()
                    .and_then(SExp::as_atom)
                    .ok_or_else(|| ParseError::syntax(*pos, "expected a connective or relation"))?
                    .to_string();
                match head.as_str() {
                    "=" | "distinct" => {
                        if items.len() != 3 {
                            return Err(ParseError::syntax(
                                *pos,
                                format!("`{head}` expects 2 arguments"),
                            ));
                        }
                        let a = self.parse_term(&items[1])?;
                        let b = self.parse_term(&items[2])?;
                        Ok(if head == "=" {
                            ParamFormula::eq(a, b)
                        } else {
                            ParamFormula::ne(a, b)
                        })
                    }
                    "not" => {
                        if items.len() != 2 {
                            return Err(ParseError::syntax(*pos, "`not` expects 1 argument"));
                        }
                        Ok(ParamFormula::not(self.parse_formula(&items[1])?))
                    }
                    "and" | "or" => {
                        if items.len() < 3 {
                            return Err(ParseError::syntax(
                                *pos,
                                format!("`{head}` expects at least 2 arguments"),
                            ));
                        }
                        let parts: Vec<ParamFormula> = items[1..]
                            .iter()
                            .map(|e| self.parse_formula(e))
                            .collect::<Result<_, _>>()?;
                        let mut it = parts.into_iter();
                        let first = it.next().unwrap();
                        Ok(if head == "and" {
                            it.fold(first, ParamFormula::and)
                        } else {
                            it.fold(first, ParamFormula::or)
                        })
                    }
                    "=>" => {
                        if items.len() < 3 {
                            return Err(ParseError::syntax(
                                *pos,
                                "`=>` expects at least 2 arguments",
                            ));
                        }
                        let parts: Vec<ParamFormula> = items[1..]
                            .iter()
                            .map(|e| self.parse_formula(e))
                            .collect::<Result<_, _>>()?;
                        let mut it = parts.into_iter().rev();
                        let last = it.next().unwrap();
                        Ok(it.fold(last, |acc, f| ParamFormula::implies(f, acc)))
                    }
                    "iff" => {
                        if items.len() != 3 {
                            return Err(ParseError::syntax(*pos, "`iff` expects 2 arguments"));
                        }
                        Ok(ParamFormula::iff(
                            self.parse_formula(&items[1])?,
                            self.parse_formula(&items[2])?,
                        ))
                    }
                    "forall" | "exists" => {
                        if items.len() != 3 {
                            return Err(ParseError::syntax(
                                *pos,
                                format!("`{head}` expects a binder list and a body"),
                            ));
                        }
                        let binder = items[1].as_list().ok_or_else(|| {
                            ParseError::syntax(items[1].pos(), "expected a binder list")
                        })?;
                        let mut vars = Vec::new();
                        for b in binder {
                            let name = b.as_atom().ok_or_else(|| {
                                ParseError::syntax(
                                    b.pos(),
                                    "binders are plain declared variable names",
                                )
                            })?;
                            let sym = self.lookup_symbol(name, b.pos())?;
                            if sym.kind != SymbolKind::Variable {
                                return Err(ParseError::syntax(
                                    b.pos(),
                                    format!("`{name}` is a constant and cannot be quantified"),
                                ));
                            }
                            vars.push(sym);
                        }
                        if vars.is_empty() {
                            return Err(ParseError::syntax(*pos, "empty binder list"));
                        }
                        let body = self.parse_formula(&items[2])?;
                        Ok(if head == "forall" {
                            ParamFormula::forall(vars, body)
                        } else {
                            ParamFormula::exists(vars, body)
                        })
                    }
                    _ => {
                        let rel = BvRel::ALL
                            .iter()
                            .find(|r| r.smtlib_name() == head)
                            .copied()
                            .ok_or_else(|| ParseError::UnknownOperator {
                                pos: *pos,
                                name: head.clone(),
                            })?;
                        if items.len() != 3 {
                            return Err(ParseError::syntax(
                                *pos,
                                format!("`{head}` expects 2 arguments"),
                            ));
                        }
                        let a = self.parse_term(&items[1])?;
                        let b = self.parse_term(&items[2])?;
                        Ok(ParamFormula::rel(rel, a, b))
                    }
                }
            }
        }
    }

    fn parse_command(
        &mut self,
        sexp: &SExp,
        asserts: &mut Vec<ParamFormula>,
    ) -> Result<(), ParseError> {
        let pos = sexp.pos();
        let items = sexp
            .as_list()
            .ok_or_else(|| ParseError::syntax(pos, "expected a command"))?;
        let head = items
            .first()
            .and_then(SExp::as_atom)
            .ok_or_else(|| ParseError::syntax(pos, "expected a command name"))?;
        match head {
            "declare-width" => {
                if items.len() != 2 {
                    return Err(ParseError::syntax(pos, "`declare-width` expects one name"));
                }
                let name = items[1]
                    .as_atom()
                    .ok_or_else(|| ParseError::syntax(items[1].pos(), "expected a name"))?;
                check_declarable(name, items[1].pos())?;
                if self.width_vars.contains(name) || self.omega.contains(name) {
                    return Err(ParseError::DuplicateSymbol {
                        pos: items[1].pos(),
                        name: name.to_string(),
                    });
                }
                self.width_vars.insert(name.to_string());
                Ok(())
            }
            "declare-pbv" => {
                if items.len() != 4 && items.len() != 6 {
                    return Err(ParseError::syntax(
                        pos,
                        "`declare-pbv` expects `<name> :bits <term>` and optionally `:value <term>`",
                    ));
                }
                let name = items[1]
                    .as_atom()
                    .ok_or_else(|| ParseError::syntax(items[1].pos(), "expected a name"))?;
                check_declarable(name, items[1].pos())?;
                if self.width_vars.contains(name) || self.omega.contains(name) {
                    return Err(ParseError::DuplicateSymbol {
                        pos: items[1].pos(),
                        name: name.to_string(),
                    });
                }
                if items[2].as_atom() != Some(":bits") {
                    return Err(ParseError::syntax(items[2].pos(), "expected `:bits`"));
                }
                let width = self.parse_int_term(&items[3])?;
                if items.len() == 6 {
                    if items[4].as_atom() != Some(":value") {
                        return Err(ParseError::syntax(items[4].pos(), "expected `:value`"));
                    }
                    let value = self.parse_int_term(&items[5])?;
                    self.omega.declare_const(name, width, value);
                } else {
                    self.omega.declare_var(name, width);
                }
                Ok(())
            }
            "assume-width" => {
                if items.len() != 2 {
                    return Err(ParseError::syntax(
                        pos,
                        "`assume-width` expects one formula",
                    ));
                }
                let f = self.parse_int_formula(&items[1])?;
                self.omega.assumptions.push(f);
                Ok(())
            }
            "assert" => {
                if items.len() != 2 {
                    return Err(ParseError::syntax(pos, "`assert` expects one formula"));
                }
                let f = self.parse_formula(&items[1])?;
                asserts.push(f);
                Ok(())
            }
            "set-logic" | "set-info" | "set-option" | "check-sat" | "exit" => Ok(()),
            other => Err(ParseError::syntax(
                pos,
                format!("unknown command `{other}`"),
            )),
        }
    }
}

fn mask(width: u32) -> u128 {
    if width >= 128 {
        u128::MAX
    } else {
        (1u128 << width) - 1
    }
}

fn atom_u32(sexp: &SExp) -> Result<u32, ParseError> {
    sexp.as_atom()
        .and_then(|a| a.parse::<u32>().ok())
        .ok_or_else(|| ParseError::syntax(sexp.pos(), "expected a natural number"))
}

/// Parses a complete `.pbv` document. Multiple asserts are conjoined; a
/// document with no asserts denotes `true`.
pub fn parse_pbv(text: &str) -> Result<(ParamFormula, WidthMap), ParseError> {
    let sexps = read_sexps(text)?;
    let mut parser = PbvParser::new();
    let mut asserts = Vec::new();
    for sexp in &sexps {
        parser.parse_command(sexp, &mut asserts)?;
    }
    let formula = match asserts.len() {
        0 => ParamFormula::tru(),
        _ => {
            let mut it = asserts.into_iter();
            let first = it.next().unwrap();
            it.fold(first, ParamFormula::and)
        }
    };
    Ok((formula, parser.omega))
}

/// Parses a formula from an already-read S-expression against an existing
/// width map.
pub(crate) fn formula_from_sexp(
    sexp: &SExp,
    omega: &mut WidthMap,
) -> Result<ParamFormula, ParseError> {
    let mut parser = PbvParser {
        omega: std::mem::take(omega),
        width_vars: BTreeSet::new(),
    };
    parser.width_vars = parser.omega.free_width_vars();
    let result = parser.parse_formula(sexp);
    *omega = parser.omega;
    result
}

/// Parses a term from an already-read S-expression against an existing
/// width map.
pub(crate) fn term_from_sexp(sexp: &SExp, omega: &mut WidthMap) -> Result<ParamTerm, ParseError> {
    let mut parser = PbvParser {
        omega: std::mem::take(omega),
        width_vars: BTreeSet::new(),
    };
    parser.width_vars = parser.omega.free_width_vars();
    let result = parser.parse_term(sexp);
    *omega = parser.omega;
    result
}

/// Parses a single term against an existing width map. Literals may extend
/// the map with desugared constants.
pub fn parse_term_str(text: &str, omega: &mut WidthMap) -> Result<ParamTerm, ParseError> {
    let sexps = read_sexps(text)?;
    if sexps.len() != 1 {
        return Err(ParseError::syntax(
            Pos { line: 1, col: 1 },
            "expected exactly one term",
        ));
    }
    let mut parser = PbvParser {
        omega: std::mem::take(omega),
        width_vars: BTreeSet::new(),
    };
    parser.width_vars = parser.omega.free_width_vars();
    let result = parser.parse_term(&sexps[0]);
    *omega = parser.omega;
    result
}

/// Parses a single formula against an existing width map.
pub fn parse_formula_str(text: &str, omega: &mut WidthMap) -> Result<ParamFormula, ParseError> {
    let sexps = read_sexps(text)?;
    if sexps.len() != 1 {
        return Err(ParseError::syntax(
            Pos { line: 1, col: 1 },
            "expected exactly one formula",
        ));
    }
    let mut parser = PbvParser {
        omega: std::mem::take(omega),
        width_vars: BTreeSet::new(),
    };
    parser.width_vars = parser.omega.free_width_vars();
    let result = parser.parse_formula(&sexps[0]);
    *omega = parser.omega;
    result
}

/// Parses a single integer term. Every identifier is read as an integer
/// variable.
pub fn parse_int_term_str(text: &str) -> Result<IntTerm, ParseError> {
    let sexps = read_sexps(text)?;
    if sexps.len() != 1 {
        return Err(ParseError::syntax(
            Pos { line: 1, col: 1 },
            "expected exactly one term",
        ));
    }
    parse_int_term_open(&sexps[0])
}

/// Reuses the pbv int-term grammar with an open variable namespace: every
/// non-numeral, non-operator atom is read as an integer variable.
fn parse_int_term_open(sexp: &SExp) -> Result<IntTerm, ParseError> {
    fn collect_atoms(sexp: &SExp, out: &mut BTreeSet<String>, head: bool) {
        match sexp {
            SExp::Atom(a, _) => {
                if !head && a.parse::<i128>().is_err() {
                    out.insert(a.clone());
                }
            }
            SExp::List(items, _) => {
                for (i, item) in items.iter().enumerate() {
                    collect_atoms(item, out, i == 0);
                }
            }
        }
    }
    let mut parser = PbvParser::new();
    collect_atoms(sexp, &mut parser.width_vars, false);
    parser.parse_int_term(sexp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn declaration_readback() {
        let (f, omega) =
            parse_pbv("(declare-width a) (declare-pbv x :bits a) (assert (distinct x x))").unwrap();
        let x = ParamTerm::symbol(BvSymbol::var("x"));
        assert_eq!(f, ParamFormula::ne(x.clone(), x));
        assert_eq!(omega.width_of("x"), Some(&IntTerm::var("a")));
        assert_eq!(omega.kind_of("x"), Some(SymbolKind::Variable));
    }

    #[test]
    fn running_example_parses() {
        let text = "\
(declare-width a)
(declare-pbv x :bits a)
(declare-pbv z0 :bits a :value 0)
(declare-pbv z1 :bits a :value 1)
(assert (distinct (bvadd (bvadd x x) z1) z0))
";
        let (f, omega) = parse_pbv(text).unwrap();
        assert_eq!(omega.value_of("z0"), Some(&IntTerm::num(0)));
        assert_eq!(omega.value_of("z1"), Some(&IntTerm::num(1)));
        assert_eq!(
            omega.free_width_vars().into_iter().collect::<Vec<_>>(),
            vec!["a"]
        );
        assert_eq!(f.to_string(), "(distinct (bvadd (bvadd x x) z1) z0)");
    }

    #[test]
    fn symbolic_max_constant() {
        let (_, omega) = parse_pbv(
            "(declare-width w) (declare-pbv z :bits w :value (- (pow2 w) 1)) (assert true)",
        )
        .unwrap();
        assert_eq!(
            omega.value_of("z"),
            Some(&IntTerm::sub(
                IntTerm::pow2(IntTerm::var("w")),
                IntTerm::num(1)
            ))
        );
    }

    #[test]
    fn duplicate_symbol_is_rejected() {
        let err = parse_pbv("(declare-width a) (declare-pbv a :bits 3)").unwrap_err();
        assert!(matches!(err, ParseError::DuplicateSymbol { .. }), "{err}");
    }

    #[test]
    fn unknown_operator_is_rejected_with_location() {
        let err = parse_pbv("(declare-width a) (declare-pbv x :bits a) (assert (= (bvfoo x x) x))")
            .unwrap_err();
        match err {
            ParseError::UnknownOperator { name, pos } => {
                assert_eq!(name, "bvfoo");
                assert_eq!(pos.line, 1);
            }
            other => panic!("expected unknown operator, got {other}"),
        }
    }

    #[test]
    fn literals_desugar_to_constants() {
        let (f, omega) =
            parse_pbv("(declare-width a) (declare-pbv x :bits 3) (assert (= x #b101))").unwrap();
        assert_eq!(omega.kind_of("_c5_3"), Some(SymbolKind::SymConst));
        assert_eq!(omega.value_of("_c5_3"), Some(&IntTerm::num(5)));
        assert_eq!(f.to_string(), "(= x _c5_3)");
        let _ = a_unused(&omega);
    }

    fn a_unused(omega: &WidthMap) -> bool {
        // `a` was declared but occurs in no range term, so it is not free in omega.
        !omega.free_width_vars().contains("a")
    }

    #[test]
    fn pretty_problem_round_trips() {
        let text = "\
(declare-width a)
(declare-pbv x :bits a)
(declare-pbv z1 :bits a :value 1)
(assert (bvult x z1))
";
        let (f, omega) = parse_pbv(text).unwrap();
        let printed = pretty_problem(&f, &omega);
        let (f2, omega2) = parse_pbv(&printed).unwrap();
        assert_eq!(f, f2);
        assert_eq!(omega, omega2);
    }

    #[test]
    fn quantifier_round_trip() {
        let text = "\
(declare-width k)
(declare-pbv x :bits k)
(declare-pbv s :bits k)
(assert (exists (x) (= (bvand x s) s)))
";
        let (f, omega) = parse_pbv(text).unwrap();
        let printed = pretty_problem(&f, &omega);
        let (f2, _) = parse_pbv(&printed).unwrap();
        assert_eq!(f, f2);
    }
}
