//! Finite-trace LTLf/LDLf toolkit.
//!
//! Formulas with future, past, path-modal and metric-next connectives are
//! parsed, evaluated directly by [`oracle`], and compiled to alternating
//! ([`afa`]), nondeterministic and deterministic ([`fa`]) and two-way
//! alternating ([`twafa`]) automata. [`metric`] handles programs of
//! universal rules with metric-next heads through difference constraints.

pub mod afa;
pub mod closure;
pub mod corpus;
mod display;
pub mod error;
pub mod fa;
pub mod formula;
pub mod metric;
pub mod oracle;
pub mod parser;
pub mod pbf;
pub mod trace;
pub mod twafa;

pub use display::format;
pub use error::{Error, Result};
pub use formula::{atoms, nnf, normalize, to_dynamic_core, Formula, Interval, PathExpr};
pub use parser::{parse_formula, parse_program, parse_trace, ParseError};
pub use trace::{Alphabet, AnyTrace, Letter, TimedTrace, Trace};
