//! Direct evaluation of formulas over finite traces.
//!
//! Positions run over `0..=len`. Position `len` is the letterless end point:
//! atoms are false there, strong next fails and weak next holds. Every
//! automaton backend is checked against this module.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::formula::{Formula, PathExpr};
use crate::trace::{AnyTrace, Letter, TimedTrace, Trace};

/// Square boolean matrix over positions `0..=len`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.set(i, i);
        }
        r
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.n + j] = true;
    }

    fn compose(&self, other: &Relation) -> Relation {
        let mut out = Relation::empty(self.n);
        for i in 0..self.n {
            for k in (0..self.n).filter(|&k| self.get(i, k)) {
                for j in 0..self.n {
                    if other.get(k, j) {
                        out.set(i, j);
                    }
                }
            }
        }
        out
    }

    fn union(&self, other: &Relation) -> Relation {
        Relation {
            n: self.n,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| *a || *b)
                .collect(),
        }
    }

    fn reflexive_transitive_closure(&self) -> Relation {
        let mut r = self.union(&Relation::identity(self.n));
        for k in 0..self.n {
            for i in 0..self.n {
                if r.get(i, k) {
                    for j in 0..self.n {
                        if r.get(k, j) {
                            r.set(i, j);
                        }
                    }
                }
            }
        }
        r
    }

    fn pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    out.insert((i, j));
                }
            }
        }
        out
    }
}

struct Evaluator<'a> {
    letters: &'a [Letter],
    times: Option<&'a [u64]>,
}

impl Evaluator<'_> {
    /// Number of positions including the end point.
    fn positions(&self) -> usize {
        self.letters.len() + 1
    }

    fn end(&self) -> usize {
        self.letters.len()
    }

    /// Truth value of `f` at every position.
    fn sat(&self, f: &Formula) -> Result<Vec<bool>> {
        let n = self.positions();
        let end = self.end();
        Ok(match f {
            Formula::Atom(a) => (0..n)
                .map(|i| i < end && self.letters[i].contains(a))
                .collect(),
            Formula::True => vec![true; n],
            Formula::False => vec![false; n],
            Formula::Not(g) => self.sat(g)?.into_iter().map(|b| !b).collect(),
            Formula::And(a, b) => zip(self.sat(a)?, self.sat(b)?, |x, y| x && y),
            Formula::Or(a, b) => zip(self.sat(a)?, self.sat(b)?, |x, y| x || y),
            Formula::Implies(a, b) => zip(self.sat(a)?, self.sat(b)?, |x, y| !x || y),
            Formula::Next(g) => {
                let g = self.sat(g)?;
                (0..n).map(|i| i < end && g[i + 1]).collect()
            }
            Formula::WeakNext(g) => {
                let g = self.sat(g)?;
                (0..n).map(|i| i == end || g[i + 1]).collect()
            }
            Formula::Until(a, b) => {
                let (a, b) = (self.sat(a)?, self.sat(b)?);
                let mut out = vec![false; n];
                out[end] = b[end];
                for i in (0..end).rev() {
                    out[i] = b[i] || (a[i] && out[i + 1]);
                }
                out
            }
            Formula::Release(a, b) => {
                let (a, b) = (self.sat(a)?, self.sat(b)?);
                let mut out = vec![false; n];
                out[end] = b[end];
                for i in (0..end).rev() {
                    out[i] = b[i] && (a[i] || out[i + 1]);
                }
                out
            }
            Formula::Eventually(g) => {
                let g = self.sat(g)?;
                (0..n).map(|i| g[i..].iter().any(|&x| x)).collect()
            }
            Formula::Always(g) => {
                let g = self.sat(g)?;
                (0..n).map(|i| g[i..].iter().all(|&x| x)).collect()
            }
            Formula::Prev(g) => {
                let g = self.sat(g)?;
                (0..n).map(|i| i > 0 && g[i - 1]).collect()
            }
            Formula::WeakPrev(g) => {
                let g = self.sat(g)?;
                (0..n).map(|i| i == 0 || g[i - 1]).collect()
            }
            Formula::Since(a, b) => {
                let (a, b) = (self.sat(a)?, self.sat(b)?);
                let mut out = vec![false; n];
                out[0] = b[0];
                for i in 1..n {
                    out[i] = b[i] || (a[i] && out[i - 1]);
                }
                out
            }
            Formula::Trigger(a, b) => {
                let (a, b) = (self.sat(a)?, self.sat(b)?);
                let mut out = vec![false; n];
                out[0] = b[0];
                for i in 1..n {
                    out[i] = b[i] && (a[i] || out[i - 1]);
                }
                out
            }
            Formula::Diamond(p, g) => {
                let (r, g) = (self.relation(p)?, self.sat(g)?);
                (0..n)
                    .map(|i| (0..n).any(|j| r.get(i, j) && g[j]))
                    .collect()
            }
            Formula::Box(p, g) => {
                let (r, g) = (self.relation(p)?, self.sat(g)?);
                (0..n)
                    .map(|i| (0..n).all(|j| !r.get(i, j) || g[j]))
                    .collect()
            }
            Formula::MetricNext(interval, g) => {
                let times = self.times.ok_or(Error::UntimedMetric)?;
                let g = self.sat(g)?;
                (0..n)
                    .map(|i| i + 1 < end && interval.contains(times[i + 1] - times[i]) && g[i + 1])
                    .collect()
            }
            Formula::WeakMetricNext(interval, g) => {
                let times = self.times.ok_or(Error::UntimedMetric)?;
                let g = self.sat(g)?;
                (0..n)
                    .map(|i| {
                        i + 1 >= end || !interval.contains(times[i + 1] - times[i]) || g[i + 1]
                    })
                    .collect()
            }
        })
    }

    fn relation(&self, p: &PathExpr) -> Result<Relation> {
        let n = self.positions();
        Ok(match p {
            PathExpr::Step(g) => {
                let mut r = Relation::empty(n);
                for (i, letter) in self.letters.iter().enumerate() {
                    if g.satisfied_by(letter.atoms()) {
                        r.set(i, i + 1);
                    }
                }
                r
            }
            PathExpr::Test(f) => {
                let f = self.sat(f)?;
                let mut r = Relation::empty(n);
                for (i, _) in f.iter().enumerate().filter(|(_, b)| **b) {
                    r.set(i, i);
                }
                r
            }
            PathExpr::Seq(a, b) => self.relation(a)?.compose(&self.relation(b)?),
            PathExpr::Alt(a, b) => self.relation(a)?.union(&self.relation(b)?),
            PathExpr::Star(a) => self.relation(a)?.reflexive_transitive_closure(),
        })
    }
}

fn zip(a: Vec<bool>, b: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

fn check_position(len: usize, i: usize) -> Result<()> {
    if i > len {
        return Err(Error::InvalidTrace(format!(
            "position {i} is beyond the end point {len}"
        )));
    }
    Ok(())
}

/// Truth of `f` at position `i` (`0..=t.len()`) of an untimed trace.
/// Metric operators are rejected.
pub fn eval(f: &Formula, t: &Trace, i: usize) -> Result<bool> {
    check_position(t.len(), i)?;
    let ev = Evaluator {
        letters: t.letters(),
        times: None,
    };
    Ok(ev.sat(f)?[i])
}

/// Truth of `f` at position `i` of a timed trace; metric next is supported.
pub fn eval_timed(f: &Formula, t: &TimedTrace, i: usize) -> Result<bool> {
    check_position(t.len(), i)?;
    let ev = Evaluator {
        letters: t.letters(),
        times: Some(t.times()),
    };
    Ok(ev.sat(f)?[i])
}

/// Reachability relation of a path over the positions of `t`.
pub fn path_relation(p: &PathExpr, t: &Trace) -> Result<BTreeSet<(usize, usize)>> {
    let ev = Evaluator {
        letters: t.letters(),
        times: None,
    };
    Ok(ev.relation(p)?.pairs())
}

/// Whether the trace is a model of `f`, i.e. `f` holds at position 0.
pub fn holds(f: &Formula, t: &Trace) -> Result<bool> {
    eval(f, t, 0)
}

pub fn holds_timed(f: &Formula, t: &TimedTrace) -> Result<bool> {
    eval_timed(f, t, 0)
}

pub fn holds_any(f: &Formula, t: &AnyTrace) -> Result<bool> {
    match t {
        AnyTrace::Untimed(t) => holds(f, t),
        AnyTrace::Timed(t) => holds_timed(f, t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{nnf, to_dynamic_core};
    use crate::parser::{parse_formula, parse_trace};
    use crate::trace::{enumerate_traces, Alphabet};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn t(s: &str) -> Trace {
        match parse_trace(s).unwrap() {
            AnyTrace::Untimed(t) => t,
            AnyTrace::Timed(t) => t.untimed(),
        }
    }

    fn timed(s: &str) -> TimedTrace {
        match parse_trace(s).unwrap() {
            AnyTrace::Timed(t) => t,
            other => panic!("untimed: {other}"),
        }
    }

    #[test]
    fn end_point_semantics() {
        assert!(holds(&f("tt"), &t("eps")).unwrap());
        assert!(!holds(&f("a"), &t("eps")).unwrap());
        assert!(holds(&f("!a"), &t("eps")).unwrap());
        assert!(!holds(&f("X tt"), &t("eps")).unwrap());
        assert!(holds(&f("WX ff"), &t("eps")).unwrap());
        assert!(holds(&f("X tt"), &t("{a}")).unwrap());
        // The end point is a position, so `G a` needs `a` where no letter exists.
        assert!(!holds(&f("G a"), &t("eps")).unwrap());
        assert!(!holds(&f("G a"), &t("{a};{a}")).unwrap());
        assert!(!holds(&f("G (a | X ff)"), &t("{a};{a}")).unwrap());
        assert!(holds(&f("G (a | WX ff)"), &t("{a};{a}")).unwrap());
    }

    #[test]
    fn worked_examples() {
        assert!(holds(&f("<a> tt"), &t("{a}")).unwrap());
        assert!(holds(&f("a U b"), &t("{a};{a};{b}")).unwrap());
        assert!(!holds(&f("a U b"), &t("{a};{};{b}")).unwrap());
        assert!(holds(&f("F b"), &t("{a};{b}")).unwrap());
        assert!(eval(&f("Y a"), &t("{a};{b}"), 1).unwrap());
        assert!(!eval(&f("Y a"), &t("{a};{b}"), 0).unwrap());
        assert!(eval(&f("WY ff"), &t("{a};{b}"), 0).unwrap());
        assert!(eval(&f("a S b"), &t("{b};{a};{a}"), 2).unwrap());
        assert!(!eval(&f("a S b"), &t("{b};{};{a}"), 2).unwrap());
        assert!(eval(&f("a T b"), &t("{b};{b};{b}"), 2).unwrap());
        assert!(eval(&f("a T b"), &t("{};{a,b};{b}"), 2).unwrap());
        assert!(!eval(&f("a T b"), &t("{};{b};{b}"), 2).unwrap());
    }

    #[test]
    fn path_relations() {
        let tr = t("{a};{}");
        let pairs = |s: &[(usize, usize)]| s.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(
            path_relation(&PathExpr::any_step(), &tr).unwrap(),
            pairs(&[(0, 1), (1, 2)])
        );
        assert_eq!(
            path_relation(&PathExpr::Test(f("a")), &tr).unwrap(),
            pairs(&[(0, 0)])
        );
        assert_eq!(
            path_relation(&PathExpr::star(PathExpr::any_step()), &t("{a}")).unwrap(),
            pairs(&[(0, 0), (0, 1), (1, 1)])
        );
    }

    #[test]
    fn star_idempotence() {
        let p = PathExpr::alt(PathExpr::Step(f("a")), PathExpr::Test(f("b")));
        let once = PathExpr::star(p);
        let twice = PathExpr::star(once.clone());
        for tr in enumerate_traces(&Alphabet::new(["a", "b"]), 3).unwrap() {
            assert_eq!(
                path_relation(&once, &tr).unwrap(),
                path_relation(&twice, &tr).unwrap()
            );
        }
    }

    #[test]
    fn metric_next() {
        let rule = f("X[20,40) school");
        assert!(holds_timed(&rule, &timed("{drive}@0;{school}@25")).unwrap());
        assert!(!holds_timed(&rule, &timed("{drive}@0;{school}@45")).unwrap());
        assert!(!holds_timed(&f("X[0,inf) a"), &timed("{a}@0")).unwrap());
        assert!(holds_timed(&f("WX[0,inf) ff"), &timed("{a}@0")).unwrap());
        assert!(holds_timed(&f("WX[20,40) ff"), &timed("{a}@0;{}@10")).unwrap());
        assert_eq!(
            holds(&rule, &t("{drive};{school}")),
            Err(Error::UntimedMetric)
        );
        assert!(holds_timed(&f("F b"), &timed("{a}@0;{b}@3")).unwrap());
    }

    #[test]
    fn rewrites_preserve_truth_exhaustively() {
        let traces: Vec<_> = enumerate_traces(&Alphabet::new(["a", "b"]), 4)
            .unwrap()
            .collect();
        assert_eq!(traces.len(), 341);
        for (sugar, core) in [
            ("F b", "<tt*> b"),
            ("a U b", "<(a? ; tt)*> b"),
            ("a R b", "[((!a)? ; tt)*] b"),
            ("X a", "<tt> a"),
            ("WX a", "[tt] a"),
        ] {
            for tr in &traces {
                assert_eq!(holds(&f(sugar), tr), holds(&f(core), tr), "{sugar} on {tr}");
                let rewritten = to_dynamic_core(&nnf(&f(sugar)));
                assert_eq!(holds(&f(sugar), tr), holds(&rewritten, tr));
            }
        }
    }

    #[test]
    fn duality_on_samples() {
        let traces: Vec<_> = enumerate_traces(&Alphabet::new(["a", "b"]), 3)
            .unwrap()
            .collect();
        for s in [
            "a U b",
            "Y a S b",
            "<(a? ; b)*> [b*] a",
            "G (a -> F b)",
            "WY (a T b)",
        ] {
            let neg = nnf(&Formula::not(f(s)));
            for tr in &traces {
                for i in 0..=tr.len() {
                    assert_eq!(eval(&neg, tr, i).unwrap(), !eval(&f(s), tr, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn position_out_of_range() {
        assert!(eval(&f("a"), &t("{a}"), 2).is_err());
        assert!(eval(&f("a"), &t("{a}"), 1).is_ok());
    }
}
