//! Canonical text rendering of formulas and paths, parseable by
//! [`crate::parser::parse_formula`].

use std::fmt;

use crate::formula::{Formula, PathExpr};

// Binding strength, loosest first.
const IMPLIES: u8 = 0;
const OR: u8 = 1;
const AND: u8 = 2;
const BINARY_TEMPORAL: u8 = 3;
const UNARY: u8 = 4;
const ATOMIC: u8 = 5;

const ALT: u8 = 0;
const SEQ: u8 = 1;
const POSTFIX: u8 = 2;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Atom(_) | Formula::True | Formula::False => ATOMIC,
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Until(..) | Formula::Release(..) | Formula::Since(..) | Formula::Trigger(..) => {
            BINARY_TEMPORAL
        }
        _ => UNARY,
    }
}

fn write_formula(out: &mut fmt::Formatter<'_>, f: &Formula, context: u8) -> fmt::Result {
    let own = precedence(f);
    let parens = own < context;
    if parens {
        out.write_str("(")?;
    }
    match f {
        Formula::Atom(a) => out.write_str(a)?,
        Formula::True => out.write_str("tt")?,
        Formula::False => out.write_str("ff")?,
        Formula::Not(g) => {
            out.write_str("!")?;
            write_formula(out, g, UNARY)?;
        }
        Formula::Implies(a, b) => binary(out, a, " -> ", b, IMPLIES + 1, IMPLIES)?,
        Formula::Or(a, b) => binary(out, a, " | ", b, OR, OR + 1)?,
        Formula::And(a, b) => binary(out, a, " & ", b, AND, AND + 1)?,
        Formula::Until(a, b) => binary(out, a, " U ", b, UNARY, BINARY_TEMPORAL)?,
        Formula::Release(a, b) => binary(out, a, " R ", b, UNARY, BINARY_TEMPORAL)?,
        Formula::Since(a, b) => binary(out, a, " S ", b, UNARY, BINARY_TEMPORAL)?,
        Formula::Trigger(a, b) => binary(out, a, " T ", b, UNARY, BINARY_TEMPORAL)?,
        Formula::Next(g) => prefix(out, "X ", g)?,
        Formula::WeakNext(g) => prefix(out, "WX ", g)?,
        Formula::Eventually(g) => prefix(out, "F ", g)?,
        Formula::Always(g) => prefix(out, "G ", g)?,
        Formula::Prev(g) => prefix(out, "Y ", g)?,
        Formula::WeakPrev(g) => prefix(out, "WY ", g)?,
        Formula::MetricNext(i, g) => {
            write!(out, "X{i} ")?;
            write_formula(out, g, UNARY)?;
        }
        Formula::WeakMetricNext(i, g) => {
            write!(out, "WX{i} ")?;
            write_formula(out, g, UNARY)?;
        }
        Formula::Diamond(p, g) => {
            out.write_str("<")?;
            write_path(out, p, ALT)?;
            out.write_str("> ")?;
            write_formula(out, g, UNARY)?;
        }
        Formula::Box(p, g) => {
            out.write_str("[")?;
            write_path(out, p, ALT)?;
            out.write_str("] ")?;
            write_formula(out, g, UNARY)?;
        }
    }
    if parens {
        out.write_str(")")?;
    }
    Ok(())
}

fn binary(
    out: &mut fmt::Formatter<'_>,
    a: &Formula,
    op: &str,
    b: &Formula,
    left: u8,
    right: u8,
) -> fmt::Result {
    write_formula(out, a, left)?;
    out.write_str(op)?;
    write_formula(out, b, right)
}

fn prefix(out: &mut fmt::Formatter<'_>, op: &str, g: &Formula) -> fmt::Result {
    out.write_str(op)?;
    write_formula(out, g, UNARY)
}

fn path_precedence(p: &PathExpr) -> u8 {
    match p {
        PathExpr::Alt(..) => ALT,
        PathExpr::Seq(..) => SEQ,
        _ => POSTFIX,
    }
}

fn write_path(out: &mut fmt::Formatter<'_>, p: &PathExpr, context: u8) -> fmt::Result {
    let parens = path_precedence(p) < context;
    if parens {
        out.write_str("(")?;
    }
    match p {
        PathExpr::Step(g) => write_formula(out, g, ATOMIC)?,
        PathExpr::Test(f) => {
            write_formula(out, f, ATOMIC)?;
            out.write_str("?")?;
        }
        PathExpr::Seq(a, b) => {
            write_path(out, a, SEQ)?;
            out.write_str(" ; ")?;
            write_path(out, b, SEQ + 1)?;
        }
        PathExpr::Alt(a, b) => {
            write_path(out, a, ALT)?;
            out.write_str(" + ")?;
            write_path(out, b, ALT + 1)?;
        }
        PathExpr::Star(a) => {
            write_path(out, a, POSTFIX)?;
            out.write_str("*")?;
        }
    }
    if parens {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, IMPLIES)
    }
}

impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_path(f, self, ALT)
    }
}

/// Canonical text of a formula.
pub fn format(f: &Formula) -> String {
    f.to_string()
}
