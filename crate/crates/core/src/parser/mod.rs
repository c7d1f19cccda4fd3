//! Text grammars for formulas, traces and metric programs.
//!
//! Formula precedence, loosest first: `->` (right), `|`, `&`,
//! `U R S T` (right), then prefix operators `! X WX F G Y WY X[l,u) WX[l,u)`
//! and the modalities `<p> f`, `[p] f`. Inside a path: `+` (loosest), `;`,
//! postfix `*` and `?`. A path leaf without `?` is a propositional step guard.
//! `%` starts a line comment in every grammar.

mod lexer;

use std::collections::BTreeSet;
use std::fmt;

use lexer::{tokenize, Tok, Token};

use crate::formula::{is_atom_name, Formula, Interval, PathExpr};
use crate::metric::{Head, Literal, MetricProgram, MetricRule};
use crate::trace::{AnyTrace, Letter, TimedTrace, Trace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    pub fn new(
        line: usize,
        column: usize,
        expected: impl Into<String>,
        found: impl Into<String>,
    ) -> Self {
        ParseError {
            line,
            column,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: expected {}, found {}",
            self.line, self.column, self.expected, self.found
        )
    }
}

type PResult<T> = Result<T, ParseError>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

/// A path component whose role (step guard or test) is not settled until
/// we see whether `?` follows.
enum PathItem {
    Leaf(Formula, usize),
    Path(PathExpr),
}

impl Parser {
    fn new(src: &str) -> PResult<Self> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: impl Into<String>) -> ParseError {
        self.error_at(self.pos, expected)
    }

    fn error_at(&self, index: usize, expected: impl Into<String>) -> ParseError {
        let t = &self.toks[index];
        ParseError::new(t.line, t.column, expected, t.tok.describe())
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> PResult<Token> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.error_here(expected))
        }
    }

    fn expect_eof(&self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error_here("end of input"))
        }
    }

    // ---- formulas ----

    fn implies(&mut self, first: Option<Formula>) -> PResult<Formula> {
        let lhs = self.or(first)?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implies(None)?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self, first: Option<Formula>) -> PResult<Formula> {
        let mut lhs = self.and(first)?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.and(None)?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self, first: Option<Formula>) -> PResult<Formula> {
        let mut lhs = self.temporal(first)?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.temporal(None)?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn temporal(&mut self, first: Option<Formula>) -> PResult<Formula> {
        let lhs = match first {
            Some(f) => f,
            None => self.unary()?,
        };
        let ctor: fn(Formula, Formula) -> Formula = match self.peek() {
            Tok::Keyword("U") => Formula::until,
            Tok::Keyword("R") => Formula::release,
            Tok::Keyword("S") => Formula::since,
            Tok::Keyword("T") => Formula::trigger,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.temporal(None)?;
        Ok(ctor(lhs, rhs))
    }

    fn is_metric_bracket(&self) -> bool {
        *self.peek() == Tok::LBracket && matches!(self.peek_at(1), Tok::Number(_))
    }

    fn interval(&mut self) -> PResult<Interval> {
        let open = self.pos;
        self.expect(Tok::LBracket, "'['")?;
        let lo = match self.bump().tok {
            Tok::Number(n) => n,
            _ => return Err(self.error_at(self.pos - 1, "lower bound")),
        };
        self.expect(Tok::Comma, "','")?;
        let hi = match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                Some(n)
            }
            Tok::Ident(ref s) if s == "inf" => {
                self.bump();
                None
            }
            _ => return Err(self.error_here("upper bound or 'inf'")),
        };
        self.expect(Tok::RParen, "')' closing a right-open interval")?;
        Interval::new(lo, hi).ok_or_else(|| {
            let t = &self.toks[open];
            ParseError::new(
                t.line,
                t.column,
                "non-empty interval with lower < upper",
                format!("[{lo},{})", hi.unwrap_or(0)),
            )
        })
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Keyword(k @ ("X" | "WX")) => {
                self.bump();
                if self.is_metric_bracket() {
                    let interval = self.interval()?;
                    let body = self.unary()?;
                    Ok(if k == "X" {
                        Formula::metric_next(interval, body)
                    } else {
                        Formula::weak_metric_next(interval, body)
                    })
                } else {
                    let body = self.unary()?;
                    Ok(if k == "X" {
                        Formula::next(body)
                    } else {
                        Formula::weak_next(body)
                    })
                }
            }
            Tok::Keyword(k @ ("F" | "G" | "Y" | "WY")) => {
                self.bump();
                let body = self.unary()?;
                Ok(match k {
                    "F" => Formula::eventually(body),
                    "G" => Formula::always(body),
                    "Y" => Formula::prev(body),
                    _ => Formula::weak_prev(body),
                })
            }
            Tok::Lt => {
                self.bump();
                let p = self.path()?;
                self.expect(Tok::Gt, "'>' closing a diamond")?;
                Ok(Formula::diamond(p, self.unary()?))
            }
            Tok::LBracket => {
                self.bump();
                let p = self.path()?;
                self.expect(Tok::RBracket, "']' closing a box")?;
                Ok(Formula::boxed(p, self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.implies(None)?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(match name.as_str() {
                    "tt" => Formula::True,
                    "ff" => Formula::False,
                    _ => Formula::Atom(name),
                })
            }
            _ => Err(self.error_here("formula")),
        }
    }

    // ---- paths ----

    fn path(&mut self) -> PResult<PathExpr> {
        let item = self.path_alt()?;
        self.settle(item)
    }

    fn settle(&self, item: PathItem) -> PResult<PathExpr> {
        match item {
            PathItem::Path(p) => Ok(p),
            PathItem::Leaf(f, at) => {
                if f.is_propositional() {
                    Ok(PathExpr::Step(f))
                } else {
                    Err(self.error_at(at, "propositional step guard (add '?' to make it a test)"))
                }
            }
        }
    }

    fn path_alt(&mut self) -> PResult<PathItem> {
        let mut lhs = self.path_seq()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.path_seq()?;
            lhs = PathItem::Path(PathExpr::alt(self.settle(lhs)?, self.settle(rhs)?));
        }
        Ok(lhs)
    }

    fn path_seq(&mut self) -> PResult<PathItem> {
        let mut lhs = self.path_postfix()?;
        while *self.peek() == Tok::Semi {
            self.bump();
            let rhs = self.path_postfix()?;
            lhs = PathItem::Path(PathExpr::seq(self.settle(lhs)?, self.settle(rhs)?));
        }
        Ok(lhs)
    }

    fn path_postfix(&mut self) -> PResult<PathItem> {
        let mut item = self.path_primary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    item = PathItem::Path(PathExpr::star(self.settle(item)?));
                }
                Tok::Question => {
                    let at = self.pos;
                    self.bump();
                    item = match item {
                        PathItem::Leaf(f, _) => PathItem::Path(PathExpr::Test(f)),
                        PathItem::Path(_) => {
                            return Err(self.error_at(at, "'?' only after a formula"))
                        }
                    };
                }
                _ => return Ok(item),
            }
        }
    }

    fn path_primary(&mut self) -> PResult<PathItem> {
        let start = self.pos;
        if *self.peek() == Tok::LParen {
            self.bump();
            let inner = self.path_alt()?;
            self.expect(Tok::RParen, "')'")?;
            return Ok(match inner {
                // `(a | b) & c` inside a path: keep parsing the formula.
                PathItem::Leaf(f, _) if self.continues_formula() => {
                    PathItem::Leaf(self.implies(Some(f))?, start)
                }
                PathItem::Leaf(f, _) => PathItem::Leaf(f, start),
                p => p,
            });
        }
        Ok(PathItem::Leaf(self.implies(None)?, start))
    }

    fn continues_formula(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Amp | Tok::Pipe | Tok::Arrow | Tok::Keyword("U" | "R" | "S" | "T")
        )
    }

    // ---- traces ----

    fn trace(&mut self) -> PResult<AnyTrace> {
        if matches!(self.peek(), Tok::Ident(s) if s == "eps") {
            self.bump();
            self.expect_eof()?;
            return Ok(AnyTrace::Untimed(Trace::empty()));
        }
        let mut letters = Vec::new();
        let mut times: Vec<Option<u64>> = Vec::new();
        loop {
            let step_start = self.pos;
            self.expect(Tok::LBrace, "'{' opening a step (or 'eps')")?;
            let mut atoms = BTreeSet::new();
            if *self.peek() != Tok::RBrace {
                loop {
                    match self.peek().clone() {
                        Tok::Ident(a) if is_atom_name(&a) => {
                            self.bump();
                            atoms.insert(a);
                        }
                        _ => return Err(self.error_here("atom")),
                    }
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
            self.expect(Tok::RBrace, "'}' or ','")?;
            let time = if *self.peek() == Tok::At {
                self.bump();
                match self.peek().clone() {
                    Tok::Number(n) => {
                        self.bump();
                        Some(n)
                    }
                    _ => return Err(self.error_here("timestamp")),
                }
            } else {
                None
            };
            if let Some(prev) = times.last() {
                if prev.is_some() != time.is_some() {
                    return Err(
                        self.error_at(step_start, "steps that are either all timed or all untimed")
                    );
                }
                if let (Some(p), Some(t)) = (prev, time) {
                    if t < *p {
                        let mut e = self.error_at(self.pos - 1, format!("timestamp >= {p}"));
                        e.found = format!("'{t}'");
                        return Err(e);
                    }
                }
            }
            letters.push(Letter::new(atoms));
            times.push(time);
            match self.peek() {
                Tok::Semi => {
                    self.bump();
                }
                Tok::Eof => break,
                _ => return Err(self.error_here("';' or end of input")),
            }
        }
        if times[0].is_some() {
            let times = times.into_iter().map(|t| t.unwrap_or_default()).collect();
            Ok(AnyTrace::Timed(
                TimedTrace::new(letters, times).expect("checked non-decreasing"),
            ))
        } else {
            Ok(AnyTrace::Untimed(Trace::new(letters)))
        }
    }

    // ---- programs ----

    fn program(&mut self) -> PResult<MetricProgram> {
        let mut rules = Vec::new();
        while *self.peek() != Tok::Eof {
            rules.push(self.rule()?);
        }
        Ok(MetricProgram::new(rules))
    }

    fn rule(&mut self) -> PResult<MetricRule> {
        let head = if *self.peek() == Tok::ColonDash {
            Head::Constraint
        } else {
            self.head()?
        };
        let mut body = Vec::new();
        if *self.peek() == Tok::ColonDash {
            self.bump();
            loop {
                body.push(self.literal()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        } else if head == Head::Constraint {
            return Err(self.error_here("':-'"));
        }
        self.expect(Tok::Dot, "'.' ending the rule")?;
        Ok(MetricRule { head, body })
    }

    fn plain_atom(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(a) if a != "not" && a != "tt" && a != "ff" => {
                self.bump();
                Ok(a)
            }
            _ => Err(self.error_here("atom")),
        }
    }

    fn head(&mut self) -> PResult<Head> {
        match self.peek() {
            Tok::Keyword("X") if matches!(self.peek_at(1), Tok::LBracket) => {
                self.bump();
                if !self.is_metric_bracket() {
                    return Err(self.error_here("metric interval '[l,u)'"));
                }
                let interval = self.interval()?;
                let atom = self.plain_atom()?;
                Ok(Head::Metric(interval, atom))
            }
            Tok::Keyword(_) => Err(self.error_here("atom or metric next 'X[l,u) atom'")),
            _ => Ok(Head::Atom(self.plain_atom()?)),
        }
    }

    fn literal(&mut self) -> PResult<Literal> {
        match self.peek().clone() {
            Tok::Ident(n) if n == "not" => {
                self.bump();
                Ok(Literal {
                    atom: self.plain_atom()?,
                    positive: false,
                })
            }
            Tok::Keyword(_) => Err(self.error_here("plain body literal (no metric operators)")),
            _ => Ok(Literal {
                atom: self.plain_atom()?,
                positive: true,
            }),
        }
    }
}

/// Parses a formula.
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.implies(None)?;
    p.expect_eof()?;
    Ok(f)
}

/// Parses a trace: `eps`, or `;`-separated steps `{a,b}` optionally
/// timestamped as `{a}@5`.
pub fn parse_trace(src: &str) -> Result<AnyTrace, ParseError> {
    Parser::new(src)?.trace()
}

/// Parses a metric logic program, one `.`-terminated rule at a time.
pub fn parse_program(src: &str) -> Result<MetricProgram, ParseError> {
    Parser::new(src)?.program()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::display::format;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn metric_next_example() {
        assert_eq!(
            f("X[20,40) school"),
            Formula::metric_next(
                Interval::new(20, Some(40)).unwrap(),
                Formula::atom("school")
            )
        );
        assert_eq!(
            f("X[3,inf) a"),
            Formula::metric_next(Interval::unbounded(3), Formula::atom("a"))
        );
    }

    #[test]
    fn until_as_path() {
        assert_eq!(
            f("<(a? ; tt)*> b"),
            Formula::diamond(
                PathExpr::star(PathExpr::seq(
                    PathExpr::Test(Formula::atom("a")),
                    PathExpr::Step(Formula::True)
                )),
                Formula::atom("b")
            )
        );
    }

    #[test]
    fn incomplete_input() {
        let e = parse_formula("a U").unwrap_err();
        assert_eq!((e.line, e.column), (1, 4));
        assert_eq!(e.expected, "formula");
        assert_eq!(e.found, "end of input");
    }

    #[test]
    fn precedence() {
        assert_eq!(f("a | b & c"), f("a | (b & c)"));
        assert_eq!(f("a -> b -> c"), f("a -> (b -> c)"));
        assert_eq!(f("a & b U c"), f("a & (b U c)"));
        assert_eq!(f("a U b R c"), f("a U (b R c)"));
        assert_eq!(f("F a & b"), f("(F a) & b"));
        assert_eq!(f("<a> b U c"), f("(<a> b) U c"));
        assert_eq!(f("!a | b"), f("(!a) | b"));
    }

    #[test]
    fn next_of_box_is_not_metric() {
        assert_eq!(
            f("X [tt] a"),
            Formula::next(Formula::boxed(PathExpr::any_step(), Formula::atom("a")))
        );
        assert_eq!(f("X[tt] a"), f("X [tt] a"));
    }

    #[test]
    fn path_leaves() {
        assert_eq!(
            f("<(a | b) & c> d"),
            Formula::diamond(PathExpr::Step(f("(a | b) & c")), f("d"))
        );
        assert_eq!(
            f("<(F a)?> b"),
            Formula::diamond(PathExpr::Test(f("F a")), f("b"))
        );
        assert_eq!(
            f("<a + b ; c*> d"),
            Formula::diamond(
                PathExpr::alt(
                    PathExpr::Step(f("a")),
                    PathExpr::seq(
                        PathExpr::Step(f("b")),
                        PathExpr::star(PathExpr::Step(f("c")))
                    )
                ),
                f("d")
            )
        );
        assert_eq!(f("<!a*> b"), f("<(!a)*> b"));
    }

    #[test]
    fn temporal_step_guard_rejected() {
        let e = parse_formula("<X a> b").unwrap_err();
        assert_eq!((e.line, e.column), (1, 2));
        assert!(parse_formula("<(a ; b)?> c").is_err());
    }

    #[test]
    fn empty_interval_rejected() {
        let e = parse_formula("X[5,5) a").unwrap_err();
        assert_eq!((e.line, e.column), (1, 2));
        assert!(parse_formula("X[7,3) a").is_err());
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(f("a % trailing\n & b"), f("a & b"));
    }

    #[test]
    fn formula_round_trip_samples() {
        for s in [
            "a & b",
            "!(a | b) -> X WX c",
            "<(a? ; tt)*> b",
            "[((!a)? ; tt)*] b",
            "(a U b) U c",
            "Y a S WY b T c",
            "X[20,40) school",
            "WX[0,inf) !a",
            "<(a + b)* ; c?> [d ; e] ff",
            "<(<a> tt)?> tt",
            "X [tt] a",
            "!!a",
        ] {
            let once = f(s);
            assert_eq!(f(&format(&once)), once, "{s}");
        }
    }

    #[test]
    fn traces() {
        match parse_trace("{drive}@0;{school}@25").unwrap() {
            AnyTrace::Timed(t) => {
                assert_eq!(t.len(), 2);
                assert_eq!(t.times(), &[0, 25]);
                assert!(t.letters()[0].contains("drive"));
                assert!(t.letters()[1].contains("school"));
            }
            other => panic!("expected timed trace, got {other:?}"),
        }
        assert_eq!(
            parse_trace("eps").unwrap(),
            AnyTrace::Untimed(Trace::empty())
        );
        assert_eq!(
            parse_trace(" {b, a} ; {} ").unwrap(),
            AnyTrace::Untimed(Trace::new(vec![
                Letter::from_atoms(["a", "b"]),
                Letter::from_atoms::<&str>([])
            ]))
        );
    }

    #[test]
    fn trace_errors() {
        let e = parse_trace("{a}@5;{b}@3").unwrap_err();
        assert_eq!((e.line, e.column), (1, 11));
        assert!(parse_trace("{a}@5;{b}").is_err());
        assert!(parse_trace("{a};{b}@1").is_err());
        assert!(parse_trace("{a} # {b}").is_err());
        assert!(parse_trace("").is_err());
        assert!(parse_trace("{a};").is_err());
        assert!(parse_trace("eps;{a}").is_err());
    }

    #[test]
    fn programs() {
        let p = parse_program("X[20,40) school :- drive.").unwrap();
        assert_eq!(p.rules().len(), 1);
        assert_eq!(
            p.rules()[0].head,
            Head::Metric(Interval::new(20, Some(40)).unwrap(), "school".into())
        );
        assert_eq!(p.rules()[0].body, vec![Literal::pos("drive")]);

        let p = parse_program(":- drive, not licensed.").unwrap();
        assert_eq!(p.rules()[0].head, Head::Constraint);
        assert_eq!(
            p.rules()[0].body,
            vec![Literal::pos("drive"), Literal::neg("licensed")]
        );

        let p = parse_program("% facts\nhome.\nwork :- home, not sick.").unwrap();
        assert_eq!(p.rules().len(), 2);
        assert!(p.rules()[0].body.is_empty());
    }

    #[test]
    fn program_errors() {
        let e = parse_program("school :- X[1,2) drive.").unwrap_err();
        assert_eq!((e.line, e.column), (1, 11));
        assert!(parse_program("F school :- drive.").is_err());
        assert!(parse_program("X school :- drive.").is_err());
        assert!(parse_program("X[4,2) school :- drive.").is_err());
        assert!(parse_program("school :- drive").is_err());
        assert!(parse_program(":- .").is_err());
    }
}
