//! Two-way alternating automata with past operators.
//!
//! The head reads a word framed by a BEGIN marker (position −1) and an END
//! marker (position `len`). Transitions are positive boolean formulas over
//! (state, move) pairs. Stars unfold with stationary moves and no guard:
//! acceptance is the least fixpoint over configurations, which rejects
//! diamond loops that never move. Box stars unfold through the consuming
//! part of their body so that every loop they take moves right, keeping the
//! least fixpoint sound for them as well.
//!
//! Besides the closure formulas there is one probe state, true exactly at
//! BEGIN, used to express weak past operators.

use std::fmt;

use crate::closure::{closure, StateSet};
use crate::error::{Error, Result};
use crate::formula::{atoms, nnf, normalize, Formula, PathExpr};
use crate::pbf::Pbf;
use crate::trace::{Alphabet, Letter, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Left,
    Stay,
    Right,
}

impl Move {
    fn apply(self, pos: isize) -> isize {
        match self {
            Move::Left => pos - 1,
            Move::Stay => pos,
            Move::Right => pos + 1,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::Left => "L",
            Move::Stay => "S",
            Move::Right => "R",
        })
    }
}

/// What the head sees at a position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marked<'a> {
    Begin,
    Letter(&'a Letter),
    End,
}

impl fmt::Display for Marked<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Marked::Begin => f.write_str("BEGIN"),
            Marked::Letter(l) => write!(f, "{l}"),
            Marked::End => f.write_str("END"),
        }
    }
}

pub type Successor = (usize, Move);

#[derive(Debug, Clone)]
pub struct TwoAfa {
    alphabet: Alphabet,
    states: StateSet,
}

pub fn translate_2afa(f: &Formula) -> Result<TwoAfa> {
    translate_2afa_over(f, &Alphabet::new(atoms(f)))
}

pub fn translate_2afa_over(f: &Formula, alphabet: &Alphabet) -> Result<TwoAfa> {
    if f.has_metric() {
        return Err(Error::Unsupported(
            "metric next (evaluate on timed traces instead)".into(),
        ));
    }
    let root = normalize(f);
    Ok(TwoAfa {
        alphabet: alphabet.union(&Alphabet::new(atoms(f))),
        states: closure(&root),
    })
}

impl TwoAfa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Formula states; the probe state has ordinal `states().len()`.
    pub fn states(&self) -> &StateSet {
        &self.states
    }

    pub fn begin_probe(&self) -> usize {
        self.states.len()
    }

    pub fn state_count(&self) -> usize {
        self.states.len() + 1
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn state_label(&self, q: usize) -> String {
        if q == self.begin_probe() {
            "⊢".to_string()
        } else {
            self.states.get(q).to_string()
        }
    }

    fn at(&self, f: &Formula, m: Move) -> Pbf<Successor> {
        let q = self
            .states
            .ordinal(f)
            .unwrap_or_else(|| panic!("closure is missing successor {f}"));
        Pbf::leaf((q, m))
    }

    fn stay(&self, f: &Formula) -> Pbf<Successor> {
        self.at(f, Move::Stay)
    }

    /// Transition of state `q` reading `marked`.
    pub fn transition(&self, q: usize, marked: Marked<'_>) -> Pbf<Successor> {
        if q == self.begin_probe() {
            return Pbf::constant(marked == Marked::Begin);
        }
        if marked == Marked::Begin {
            return Pbf::False;
        }
        let letter = match marked {
            Marked::Letter(l) => Some(l),
            _ => None,
        };
        let probe = || Pbf::leaf((self.begin_probe(), Move::Left));
        match self.states.get(q) {
            Formula::Atom(a) => Pbf::constant(letter.is_some_and(|l| l.contains(a))),
            Formula::True => Pbf::True,
            Formula::False => Pbf::False,
            Formula::Not(g) => match &**g {
                Formula::Atom(a) => Pbf::constant(!letter.is_some_and(|l| l.contains(a))),
                other => unreachable!("negation of {other} outside NNF"),
            },
            Formula::And(a, b) => Pbf::and(self.stay(a), self.stay(b)),
            Formula::Or(a, b) => Pbf::or(self.stay(a), self.stay(b)),
            Formula::Prev(g) => self.at(g, Move::Left),
            Formula::WeakPrev(g) => Pbf::or(self.at(g, Move::Left), probe()),
            // a S b  =  b | (a & Y (a S b))
            whole @ Formula::Since(a, b) => Pbf::or(
                self.stay(b),
                Pbf::and(self.stay(a), self.at(whole, Move::Left)),
            ),
            // a T b  =  b & (a | WY (a T b))
            whole @ Formula::Trigger(a, b) => Pbf::and(
                self.stay(b),
                Pbf::or(self.stay(a), Pbf::or(self.at(whole, Move::Left), probe())),
            ),
            whole @ Formula::Diamond(p, h) => match &**p {
                PathExpr::Step(g) => match letter {
                    Some(l) if g.satisfied_by(l.atoms()) => self.at(h, Move::Right),
                    _ => Pbf::False,
                },
                PathExpr::Test(e) => Pbf::and(self.stay(e), self.stay(h)),
                PathExpr::Seq(a, b) => self.stay(&Formula::diamond(
                    (**a).clone(),
                    Formula::diamond((**b).clone(), (**h).clone()),
                )),
                PathExpr::Alt(a, b) => Pbf::or(
                    self.stay(&Formula::diamond((**a).clone(), (**h).clone())),
                    self.stay(&Formula::diamond((**b).clone(), (**h).clone())),
                ),
                PathExpr::Star(a) => Pbf::or(
                    self.stay(h),
                    self.stay(&Formula::diamond((**a).clone(), whole.clone())),
                ),
            },
            whole @ Formula::Box(p, h) => match &**p {
                PathExpr::Step(g) => match letter {
                    Some(l) if g.satisfied_by(l.atoms()) => self.at(h, Move::Right),
                    _ => Pbf::True,
                },
                PathExpr::Test(e) => {
                    Pbf::or(self.stay(&nnf(&Formula::not(e.clone()))), self.stay(h))
                }
                PathExpr::Seq(a, b) => self.stay(&Formula::boxed(
                    (**a).clone(),
                    Formula::boxed((**b).clone(), (**h).clone()),
                )),
                PathExpr::Alt(a, b) => Pbf::and(
                    self.stay(&Formula::boxed((**a).clone(), (**h).clone())),
                    self.stay(&Formula::boxed((**b).clone(), (**h).clone())),
                ),
                PathExpr::Star(a) => Pbf::and(
                    self.stay(h),
                    self.stay(&Formula::boxed(a.consuming(), whole.clone())),
                ),
            },
            other => unreachable!("not in the normalized fragment: {other}"),
        }
    }

    /// Number of (state, symbol) pairs, markers included, whose transition
    /// is not `False`.
    pub fn transition_count(&self) -> usize {
        let letters: Vec<Letter> = self.alphabet.letters().collect();
        let mut marks = vec![Marked::Begin, Marked::End];
        marks.extend(letters.iter().map(Marked::Letter));
        (0..self.state_count())
            .map(|q| {
                marks
                    .iter()
                    .filter(|&&m| self.transition(q, m) != Pbf::False)
                    .count()
            })
            .sum()
    }

    /// Least-fixpoint truth table over configurations; index `[q][pos + 1]`
    /// for positions `-1..=len`.
    fn least_fixpoint(&self, t: &Trace) -> (Vec<Vec<Pbf<Successor>>>, Vec<Vec<bool>>) {
        let len = t.len() as isize;
        let width = t.len() + 2;
        let marked = |pos: isize| {
            if pos < 0 {
                Marked::Begin
            } else if pos == len {
                Marked::End
            } else {
                Marked::Letter(&t.letters()[pos as usize])
            }
        };
        let table: Vec<Vec<Pbf<Successor>>> = (0..self.state_count())
            .map(|q| {
                (0..width)
                    .map(|k| self.transition(q, marked(k as isize - 1)))
                    .collect()
            })
            .collect();
        let mut value = vec![vec![false; width]; self.state_count()];
        loop {
            let mut changed = false;
            for q in 0..self.state_count() {
                for k in 0..width {
                    if value[q][k] {
                        continue;
                    }
                    let pos = k as isize - 1;
                    let v = table[q][k].eval(&mut |&(r, m)| {
                        let target = m.apply(pos);
                        debug_assert!((-1..=len).contains(&target), "head left the tape");
                        value[r][(target + 1) as usize]
                    });
                    if v {
                        value[q][k] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        (table, value)
    }

    pub fn accepts(&self, t: &Trace) -> Result<bool> {
        self.alphabet.indices(t)?;
        let (_, value) = self.least_fixpoint(t);
        // position 0 is END itself for the empty trace
        Ok(value[self.initial()][1])
    }

    /// Configurations reachable from the initial one, with their truth in the
    /// least fixpoint and the moves between them.
    pub fn run_graph(&self, t: &Trace) -> Result<RunGraph> {
        self.alphabet.indices(t)?;
        let (table, value) = self.least_fixpoint(t);
        let mut nodes = vec![(self.initial(), 0isize)];
        let mut edges = Vec::new();
        let mut k = 0;
        while k < nodes.len() {
            let (q, pos) = nodes[k];
            for (r, m) in table[q][(pos + 1) as usize].leaves() {
                let target = (r, m.apply(pos));
                let idx = match nodes.iter().position(|n| *n == target) {
                    Some(i) => i,
                    None => {
                        nodes.push(target);
                        nodes.len() - 1
                    }
                };
                edges.push((k, idx, m));
            }
            k += 1;
        }
        let accepted = nodes
            .iter()
            .map(|&(q, pos)| value[q][(pos + 1) as usize])
            .collect();
        Ok(RunGraph {
            nodes,
            accepted,
            edges,
        })
    }
}

pub fn twafa_accepts(a: &TwoAfa, t: &Trace) -> Result<bool> {
    a.accepts(t)
}

/// Explored configurations of a 2AFA on one trace.
#[derive(Debug, Clone)]
pub struct RunGraph {
    /// (state, position) with position −1 for BEGIN and `len` for END.
    pub nodes: Vec<(usize, isize)>,
    /// Whether each configuration is in the least fixpoint.
    pub accepted: Vec<bool>,
    /// (from node, to node, move).
    pub edges: Vec<(usize, usize, Move)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::parser::{parse_formula, parse_trace};
    use crate::trace::enumerate_traces;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn t(s: &str) -> Trace {
        parse_trace(s).unwrap().untimed()
    }

    fn agrees_with_oracle(s: &str, max_len: usize) {
        let ap = Alphabet::new(["a", "b"]);
        let a = translate_2afa_over(&f(s), &ap).unwrap();
        for tr in enumerate_traces(&ap, max_len).unwrap() {
            assert_eq!(
                a.accepts(&tr).unwrap(),
                oracle::holds(&f(s), &tr).unwrap(),
                "{s} on {tr}"
            );
        }
    }

    #[test]
    fn yesterday_fails_at_start() {
        let a = translate_2afa_over(&f("Y a"), &Alphabet::new(["a"])).unwrap();
        for tr in enumerate_traces(a.alphabet(), 4).unwrap() {
            assert!(!a.accepts(&tr).unwrap());
        }
    }

    #[test]
    fn past_inside_future() {
        let a = translate_2afa(&f("F (b & Y a)")).unwrap();
        assert!(a.accepts(&t("{a};{b}")).unwrap());
        assert!(!a.accepts(&t("{b};{a}")).unwrap());
    }

    #[test]
    fn progress_free_loops() {
        agrees_with_oracle("<(tt?)*> a", 4);
        agrees_with_oracle("<(a?)*> b", 4);
        agrees_with_oracle("[(tt?)*] a", 4);
        agrees_with_oracle("[(a? ; (b? + tt))*] !b", 4);
        let a = translate_2afa_over(&f("<(tt?)*> ff"), &Alphabet::new(["a"])).unwrap();
        for tr in enumerate_traces(a.alphabet(), 3).unwrap() {
            assert!(!a.accepts(&tr).unwrap());
        }
    }

    #[test]
    fn past_operators_match_oracle() {
        for s in [
            "WY a",
            "F (a S b)",
            "G (a T b) | F (Y Y a)",
            "<tt*> (b & WY !a)",
            "<tt ; (Y a)?> tt",
            "[tt*] (b -> (a S !b))",
        ] {
            agrees_with_oracle(s, 4);
        }
    }

    #[test]
    fn empty_trace_reads_end() {
        let a = translate_2afa(&f("tt")).unwrap();
        assert!(a.accepts(&Trace::empty()).unwrap());
        let a = translate_2afa(&f("WY ff")).unwrap();
        assert!(a.accepts(&Trace::empty()).unwrap());
    }

    #[test]
    fn no_left_at_begin_no_right_at_end() {
        let a = translate_2afa(&f("G (a T <(b ; tt?)*> Y WY b)")).unwrap();
        let letters: Vec<Letter> = a.alphabet().letters().collect();
        for q in 0..a.state_count() {
            let at_begin = a.transition(q, Marked::Begin).leaves();
            assert!(at_begin.iter().all(|&(_, m)| m != Move::Left));
            let at_end = a.transition(q, Marked::End).leaves();
            assert!(at_end.iter().all(|&(_, m)| m != Move::Right));
            for l in &letters {
                a.transition(q, Marked::Letter(l));
            }
        }
    }

    #[test]
    fn run_graph_reports_initial_truth() {
        let a = translate_2afa(&f("F (b & Y a)")).unwrap();
        let g = a.run_graph(&t("{a};{b}")).unwrap();
        assert_eq!(g.nodes[0], (0, 0));
        assert!(g.accepted[0]);
        assert!(g.edges.iter().any(|&(_, _, m)| m == Move::Left));
    }

    #[test]
    fn refuses_metric() {
        assert!(matches!(
            translate_2afa(&f("X[0,1) a")),
            Err(Error::Unsupported(_))
        ));
    }
}
