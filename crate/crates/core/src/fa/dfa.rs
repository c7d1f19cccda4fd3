use std::collections::VecDeque;

use crate::error::Result;
use crate::trace::{check_enumeration_bounds, enumerate_traces, Alphabet, Trace};

/// Complete DFA over the letters of an alphabet (letter `x` is the bitmask index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    transitions: Vec<Vec<usize>>,
    accepting: Vec<bool>,
}

impl Dfa {
    /// # Panics
    /// If the table is not total over the alphabet's letters or refers to a
    /// missing state.
    pub fn from_parts(
        alphabet: Alphabet,
        initial: usize,
        transitions: Vec<Vec<usize>>,
        accepting: Vec<bool>,
    ) -> Self {
        let n = transitions.len();
        assert_eq!(accepting.len(), n, "one acceptance flag per state");
        assert!(initial < n, "initial state out of range");
        for row in &transitions {
            assert_eq!(
                row.len(),
                alphabet.letter_count(),
                "transition table must be total"
            );
            assert!(row.iter().all(|&t| t < n), "transition to a missing state");
        }
        Dfa {
            alphabet,
            initial,
            transitions,
            accepting,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn next(&self, s: usize, letter: usize) -> usize {
        self.transitions[s][letter]
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.state_count()).filter(|&s| self.accepting[s])
    }

    pub(crate) fn table(&self) -> &[Vec<usize>] {
        &self.transitions
    }

    pub fn run(&self, word: &[usize]) -> usize {
        word.iter()
            .fold(self.initial, |s, &x| self.transitions[s][x])
    }

    pub fn accepts(&self, t: &Trace) -> Result<bool> {
        let word = self.alphabet.indices(t)?;
        Ok(self.accepting[self.run(&word)])
    }

    /// States reachable from the initial one, in breadth-first order over
    /// letter indices.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut k = 0;
        while k < order.len() {
            let s = order[k];
            k += 1;
            for &t in &self.transitions[s] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// Shortest accepted trace, found breadth-first (ties broken by letter index).
    pub fn shortest_accepted(&self) -> Option<Trace> {
        let n = self.state_count();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(s) = queue.pop_front() {
            if self.accepting[s] {
                let mut word = Vec::new();
                let mut cur = s;
                while let Some((p, x)) = parent[cur] {
                    word.push(x);
                    cur = p;
                }
                word.reverse();
                return Some(Trace::new(
                    word.into_iter().map(|x| self.alphabet.letter(x)).collect(),
                ));
            }
            for (x, &t) in self.transitions[s].iter().enumerate() {
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((s, x));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_accepted().is_none()
    }
}

pub fn dfa_accepts(d: &Dfa, t: &Trace) -> Result<bool> {
    d.accepts(t)
}

/// `(true, None)` when no accepting state is reachable, otherwise
/// `(false, Some(shortest accepted trace))`.
pub fn is_empty(d: &Dfa) -> (bool, Option<Trace>) {
    match d.shortest_accepted() {
        None => (true, None),
        witness => (false, witness),
    }
}

/// Same automaton with accepting and rejecting states swapped.
pub fn complement(d: &Dfa) -> Dfa {
    Dfa {
        accepting: d.accepting.iter().map(|a| !a).collect(),
        ..d.clone()
    }
}

/// Accepted traces of length at most `max_len`, in enumeration order.
pub fn enumerate_accepted(d: &Dfa, max_len: usize) -> Result<Vec<Trace>> {
    check_enumeration_bounds(&d.alphabet, max_len)?;
    let mut out = Vec::new();
    for t in enumerate_traces(&d.alphabet, max_len)? {
        if d.accepts(&t)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// Shortest trace on which two DFAs over the same alphabet disagree.
pub(crate) fn distinguishing_trace(a: &Dfa, b: &Dfa) -> Option<Trace> {
    assert_eq!(a.alphabet, b.alphabet, "product needs a shared alphabet");
    let letters = a.alphabet.letter_count();
    let key = |p: usize, q: usize| p * b.state_count() + q;
    let mut parent: Vec<Option<(usize, usize, usize)>> =
        vec![None; a.state_count() * b.state_count()];
    let mut seen = vec![false; a.state_count() * b.state_count()];
    let mut queue = VecDeque::from([(a.initial, b.initial)]);
    seen[key(a.initial, b.initial)] = true;
    while let Some((p, q)) = queue.pop_front() {
        if a.accepting[p] != b.accepting[q] {
            let mut word = Vec::new();
            let mut cur = key(p, q);
            while let Some((pp, pq, x)) = parent[cur] {
                word.push(x);
                cur = key(pp, pq);
            }
            word.reverse();
            return Some(Trace::new(
                word.into_iter().map(|x| a.alphabet.letter(x)).collect(),
            ));
        }
        for x in 0..letters {
            let (np, nq) = (a.transitions[p][x], b.transitions[q][x]);
            if !seen[key(np, nq)] {
                seen[key(np, nq)] = true;
                parent[key(np, nq)] = Some((p, q, x));
                queue.push_back((np, nq));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fa::{compile_dfa, compile_min_dfa, DEFAULT_STATE_BUDGET};
    use crate::parser::parse_formula;

    fn min_dfa(s: &str, atoms: &[&str]) -> Dfa {
        compile_min_dfa(
            &parse_formula(s).unwrap(),
            &Alphabet::new(atoms.iter().copied()),
            DEFAULT_STATE_BUDGET,
        )
        .unwrap()
    }

    #[test]
    fn emptiness() {
        assert_eq!(is_empty(&min_dfa("ff", &[])), (true, None));
        assert!(is_empty(&min_dfa("a & !a", &["a"])).0);
        let (empty, witness) = is_empty(&min_dfa("<tt> a", &["a"]));
        assert!(!empty);
        let w = witness.unwrap();
        assert_eq!(w.len(), 2);
        assert!(w.letters()[1].contains("a"));
    }

    #[test]
    fn accepted_enumeration() {
        let listed: Vec<String> = enumerate_accepted(&min_dfa("a", &["a"]), 2)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(listed, vec!["{a}", "{a};{}", "{a};{a}"]);
        assert!(enumerate_accepted(&min_dfa("ff", &["a"]), 3)
            .unwrap()
            .is_empty());
        let all: Vec<String> = enumerate_accepted(&min_dfa("tt", &["a"]), 1)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(all, vec!["eps", "{}", "{a}"]);
    }

    #[test]
    fn complement_partitions_enumeration() {
        let d = compile_dfa(
            &parse_formula("a U b").unwrap(),
            &Alphabet::new(["a", "b"]),
            1 << 20,
        )
        .unwrap();
        let kept = enumerate_accepted(&d, 3).unwrap().len();
        let dropped = enumerate_accepted(&complement(&d), 3).unwrap().len();
        assert_eq!(kept + dropped, 85);
    }

    #[test]
    fn tt_accepts_empty_trace() {
        let d = min_dfa("tt", &[]);
        assert!(d.accepts(&Trace::empty()).unwrap());
        let d = min_dfa("a", &["a"]);
        assert!(!d.accepts(&Trace::new(vec![Default::default()])).unwrap());
    }

    #[test]
    #[should_panic(expected = "total")]
    fn partial_table_rejected() {
        Dfa::from_parts(Alphabet::new(["a"]), 0, vec![vec![0]], vec![true]);
    }
}
