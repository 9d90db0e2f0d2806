//! Parametric bit-vector formulas and their encoding into UFNIA.
//!
//! A *parametric* bit-vector formula is built from the usual fixed-size
//! bit-vector operators, except that the bit-widths of its variables and
//! constants are symbolic integer terms supplied by a separate width map.
//! This crate provides:
//!
//! - [`ast`]: the parametric bit-vector AST, the integer/UF AST, and the
//!   width map, with parsing and printing for the `.pbv` surface syntax;
//! - [`sortcheck`]: admissibility of width maps, well-sortedness under a
//!   width map, and goal-level elimination of `extract`;
//! - [`translate`]: the conversion of parametric formulas to integer
//!   formulas over `pow2`/`intand`/`intor`/`intxor`, with four
//!   axiomatization modes (`full`, `partial`, `combined`, `qf`) and
//!   SMT-LIB 2 output;
//! - [`oracle`]: concrete-width instantiation and brute-force evaluation,
//!   used to certify the translation, the axioms, and candidate inverses
//!   at small widths;
//! - [`goals`]: generation of invertibility-condition proof obligations,
//!   lifting of fixed-width SMT-LIB problems to parametric form, and the
//!   rewrite-pair fixpoint loop.

pub mod ast;
pub mod goals;
pub mod oracle;
pub mod sortcheck;
pub mod translate;

pub use ast::{
    parse_pbv, AxiomMode, BvSymbol, IntFormula, IntTerm, ParamFormula, ParamTerm, ParseError,
    SymbolKind, VarMap, WidthMap,
};
