//! Alternating finite automata for future-only formulas.
//!
//! States are the formulas of the closure. A transition maps a state and a
//! letter to a positive boolean combination of states that must hold from
//! the next position on. Star loops that make no progress inside a single
//! transition are cut by a stack of stars under expansion: a diamond that
//! re-enters its own star yields `False`, a box yields `True`.

use std::collections::HashMap;

use crate::closure::{closure, StateSet};
use crate::error::{Error, Result};
use crate::formula::{atoms, nnf, normalize, Formula, PathExpr};
use crate::oracle;
use crate::pbf::Pbf;
use crate::trace::{Alphabet, Letter, Trace};

#[derive(Debug, Clone)]
pub struct Afa {
    alphabet: Alphabet,
    states: StateSet,
    final_values: Vec<bool>,
}

/// Translates `f` (normalized to NNF and the dynamic core first) over the
/// alphabet of its own atoms.
pub fn translate_afa(f: &Formula) -> Result<Afa> {
    translate_afa_over(f, &Alphabet::new(atoms(f)))
}

/// Translates over an explicit alphabet, which is widened to cover the
/// atoms of `f`.
pub fn translate_afa_over(f: &Formula, alphabet: &Alphabet) -> Result<Afa> {
    if f.has_past() {
        return Err(Error::Unsupported(
            "past operators (use the two-way backend)".into(),
        ));
    }
    if f.has_metric() {
        return Err(Error::Unsupported(
            "metric next (evaluate on timed traces instead)".into(),
        ));
    }
    let alphabet = alphabet.union(&Alphabet::new(atoms(f)));
    if alphabet.len() > crate::trace::MAX_AUTOMATON_ATOMS {
        return Err(Error::SizeLimit(format!(
            "{} atoms exceed the automaton alphabet cap of {}",
            alphabet.len(),
            crate::trace::MAX_AUTOMATON_ATOMS
        )));
    }
    let root = normalize(f);
    let states = closure(&root);
    let empty = Trace::empty();
    let final_values = states
        .iter()
        .map(|q| oracle::holds(q, &empty))
        .collect::<Result<Vec<_>>>()?;
    Ok(Afa {
        alphabet,
        states,
        final_values,
    })
}

impl Afa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &StateSet {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    /// Acceptance value of a state at the end of the trace.
    pub fn final_value(&self, q: usize) -> bool {
        self.final_values[q]
    }

    /// Transition image of state `q` under `letter`.
    pub fn delta(&self, q: usize, letter: &Letter) -> Pbf<usize> {
        let mut stack = Vec::new();
        self.expand(self.states.get(q), letter, &mut stack)
    }

    fn state_ref(&self, f: &Formula) -> Pbf<usize> {
        let q = self
            .states
            .ordinal(f)
            .unwrap_or_else(|| panic!("closure is missing successor {f}"));
        Pbf::leaf(q)
    }

    fn expand(&self, f: &Formula, letter: &Letter, stars: &mut Vec<Formula>) -> Pbf<usize> {
        match f {
            Formula::Atom(a) => Pbf::constant(letter.contains(a)),
            Formula::True => Pbf::True,
            Formula::False => Pbf::False,
            Formula::Not(g) => match &**g {
                Formula::Atom(a) => Pbf::constant(!letter.contains(a)),
                other => self.expand(&nnf(&Formula::not(other.clone())), letter, stars),
            },
            Formula::And(a, b) => {
                Pbf::and(self.expand(a, letter, stars), self.expand(b, letter, stars))
            }
            Formula::Or(a, b) => {
                Pbf::or(self.expand(a, letter, stars), self.expand(b, letter, stars))
            }
            Formula::Diamond(p, h) => self.expand_diamond(f, p, h, letter, stars),
            Formula::Box(p, h) => self.expand_box(f, p, h, letter, stars),
            other => unreachable!("not in the normalized future fragment: {other}"),
        }
    }

    fn expand_diamond(
        &self,
        whole: &Formula,
        p: &PathExpr,
        h: &Formula,
        letter: &Letter,
        stars: &mut Vec<Formula>,
    ) -> Pbf<usize> {
        match p {
            PathExpr::Step(g) => {
                if g.satisfied_by(letter.atoms()) {
                    self.state_ref(h)
                } else {
                    Pbf::False
                }
            }
            PathExpr::Test(e) => {
                Pbf::and(self.expand(e, letter, stars), self.expand(h, letter, stars))
            }
            PathExpr::Seq(a, b) => self.expand(
                &Formula::diamond((**a).clone(), Formula::diamond((**b).clone(), h.clone())),
                letter,
                stars,
            ),
            PathExpr::Alt(a, b) => Pbf::or(
                self.expand(&Formula::diamond((**a).clone(), h.clone()), letter, stars),
                self.expand(&Formula::diamond((**b).clone(), h.clone()), letter, stars),
            ),
            PathExpr::Star(a) => {
                if stars.contains(whole) {
                    return Pbf::False;
                }
                stars.push(whole.clone());
                let stop = self.expand(h, letter, stars);
                let again = self.expand(
                    &Formula::diamond((**a).clone(), whole.clone()),
                    letter,
                    stars,
                );
                stars.pop();
                Pbf::or(stop, again)
            }
        }
    }

    fn expand_box(
        &self,
        whole: &Formula,
        p: &PathExpr,
        h: &Formula,
        letter: &Letter,
        stars: &mut Vec<Formula>,
    ) -> Pbf<usize> {
        match p {
            PathExpr::Step(g) => {
                if g.satisfied_by(letter.atoms()) {
                    self.state_ref(h)
                } else {
                    Pbf::True
                }
            }
            PathExpr::Test(e) => Pbf::or(
                self.expand(&nnf(&Formula::not(e.clone())), letter, stars),
                self.expand(h, letter, stars),
            ),
            PathExpr::Seq(a, b) => self.expand(
                &Formula::boxed((**a).clone(), Formula::boxed((**b).clone(), h.clone())),
                letter,
                stars,
            ),
            PathExpr::Alt(a, b) => Pbf::and(
                self.expand(&Formula::boxed((**a).clone(), h.clone()), letter, stars),
                self.expand(&Formula::boxed((**b).clone(), h.clone()), letter, stars),
            ),
            PathExpr::Star(a) => {
                if stars.contains(whole) {
                    return Pbf::True;
                }
                stars.push(whole.clone());
                let stop = self.expand(h, letter, stars);
                let again =
                    self.expand(&Formula::boxed((**a).clone(), whole.clone()), letter, stars);
                stars.pop();
                Pbf::and(stop, again)
            }
        }
    }

    /// Transition images for every state and letter index, computed once.
    pub fn transition_table(&self) -> Vec<Vec<Pbf<usize>>> {
        let letters: Vec<Letter> = self.alphabet.letters().collect();
        (0..self.state_count())
            .map(|q| letters.iter().map(|l| self.delta(q, l)).collect())
            .collect()
    }

    /// Whether the automaton accepts `t`, evaluated position by position with
    /// a memo over (state, position).
    pub fn accepts(&self, t: &Trace) -> Result<bool> {
        self.alphabet.indices(t)?;
        let mut memo: HashMap<(usize, usize), bool> = HashMap::new();
        Ok(self.accepting_from(self.initial(), 0, t, &mut memo))
    }

    fn accepting_from(
        &self,
        q: usize,
        i: usize,
        t: &Trace,
        memo: &mut HashMap<(usize, usize), bool>,
    ) -> bool {
        if i == t.len() {
            return self.final_values[q];
        }
        if let Some(&v) = memo.get(&(q, i)) {
            return v;
        }
        let image = self.delta(q, &t.letters()[i]);
        let v = image.eval(&mut |&r| self.accepting_from(r, i + 1, t, memo));
        memo.insert((q, i), v);
        v
    }
}

pub fn afa_accepts(a: &Afa, t: &Trace) -> Result<bool> {
    a.accepts(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_formula, parse_trace};
    use crate::trace::enumerate_traces;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn t(s: &str) -> Trace {
        parse_trace(s).unwrap().untimed()
    }

    #[test]
    fn atom_automaton() {
        let a = translate_afa(&f("a")).unwrap();
        assert!(a.accepts(&t("{a}")).unwrap());
        assert!(!a.accepts(&t("{}")).unwrap());
        assert!(!a.accepts(&t("eps")).unwrap());
    }

    #[test]
    fn always_rejects_gap() {
        let a = translate_afa(&f("[tt*] a")).unwrap();
        assert!(!a.accepts(&t("{a};{}")).unwrap());
    }

    #[test]
    fn delta_rules() {
        let a = translate_afa(&f("a")).unwrap();
        assert_eq!(a.delta(0, &Letter::from_atoms(["a"])), Pbf::True);
        let a = translate_afa(&f("<tt> a")).unwrap();
        let target = a.states().ordinal(&f("a")).unwrap();
        for l in a.alphabet().letters() {
            assert_eq!(a.delta(0, &l), Pbf::leaf(target));
        }
        let a = translate_afa(&f("<(tt?)*> a")).unwrap();
        assert_eq!(a.delta(0, &Letter::default()), Pbf::False);
        assert_eq!(a.delta(0, &Letter::from_atoms(["a"])), Pbf::True);
    }

    #[test]
    fn final_values() {
        let fv = |s: &str| translate_afa(&f(s)).unwrap().final_value(0);
        assert!(fv("tt"));
        assert!(!fv("a"));
        assert!(fv("!a"));
        assert!(!fv("<tt> tt"));
        assert!(fv("[tt] ff"));
        // `[tt*] a` is reflexive, so it constrains the end point itself.
        assert!(!fv("[tt*] a"));
        assert!(fv("[tt*] !a"));
    }

    #[test]
    fn next_step_existence() {
        let a = translate_afa(&f("<tt> tt")).unwrap();
        assert!(a.accepts(&t("{}")).unwrap());
        assert!(!a.accepts(&t("eps")).unwrap());
    }

    #[test]
    fn progress_free_star_matches_oracle() {
        let ap = Alphabet::new(["a", "b"]);
        for s in [
            "<(tt?)*> a",
            "<(a?)*> b",
            "[(a?)*] b",
            "<(a? + b?)* ; tt> a",
            "[((a?)* ; b?)*] ff",
        ] {
            let afa = translate_afa_over(&f(s), &ap).unwrap();
            for tr in enumerate_traces(&ap, 3).unwrap() {
                assert_eq!(
                    afa.accepts(&tr).unwrap(),
                    oracle::holds(&f(s), &tr).unwrap(),
                    "{s} on {tr}"
                );
            }
        }
    }

    #[test]
    fn refuses_past_and_metric() {
        assert!(matches!(
            translate_afa(&f("Y a")),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            translate_afa(&f("X[1,2) a")),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn alphabet_mismatch() {
        let a = translate_afa(&f("a")).unwrap();
        assert!(matches!(
            a.accepts(&t("{b}")),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn delta_is_deterministic() {
        let a = translate_afa(&f("<(a? ; tt)* + b*> [tt*] !a")).unwrap();
        for q in 0..a.state_count() {
            for l in a.alphabet().letters() {
                assert_eq!(a.delta(q, &l), a.delta(q, &l));
            }
        }
    }
}
