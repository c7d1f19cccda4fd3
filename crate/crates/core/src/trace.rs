//! Finite traces, letters over an alphabet, and exhaustive enumeration.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// The set of atoms true at one time point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Letter(BTreeSet<String>);

impl Letter {
    pub fn new(atoms: BTreeSet<String>) -> Self {
        Letter(atoms)
    }

    pub fn from_atoms<S: Into<String>>(atoms: impl IntoIterator<Item = S>) -> Self {
        Letter(atoms.into_iter().map(Into::into).collect())
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.0.contains(atom)
    }

    pub fn atoms(&self) -> &BTreeSet<String> {
        &self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(a)?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Trace {
    letters: Vec<Letter>,
}

impl Trace {
    pub fn new(letters: Vec<Letter>) -> Self {
        Trace { letters }
    }

    pub fn empty() -> Self {
        Trace::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Pairs the letters with timestamps, which must be non-decreasing.
    pub fn with_times(self, times: Vec<u64>) -> Result<TimedTrace> {
        TimedTrace::new(self.letters, times)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TimedTrace {
    letters: Vec<Letter>,
    times: Vec<u64>,
}

impl TimedTrace {
    pub fn new(letters: Vec<Letter>, times: Vec<u64>) -> Result<Self> {
        if letters.len() != times.len() {
            return Err(Error::InvalidTrace(format!(
                "{} letters but {} timestamps",
                letters.len(),
                times.len()
            )));
        }
        if let Some(w) = times.windows(2).find(|w| w[1] < w[0]) {
            return Err(Error::InvalidTrace(format!(
                "timestamps decrease from {} to {}",
                w[0], w[1]
            )));
        }
        Ok(TimedTrace { letters, times })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn times(&self) -> &[u64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Drops the timestamps.
    pub fn untimed(&self) -> Trace {
        Trace::new(self.letters.clone())
    }
}

/// Result of parsing a trace, which may or may not carry timestamps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyTrace {
    Untimed(Trace),
    Timed(TimedTrace),
}

impl AnyTrace {
    pub fn letters(&self) -> &[Letter] {
        match self {
            AnyTrace::Untimed(t) => t.letters(),
            AnyTrace::Timed(t) => t.letters(),
        }
    }

    pub fn untimed(&self) -> Trace {
        match self {
            AnyTrace::Untimed(t) => t.clone(),
            AnyTrace::Timed(t) => t.untimed(),
        }
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("eps");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Display for TimedTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("eps");
        }
        for (i, (l, t)) in self.letters.iter().zip(&self.times).enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{l}@{t}")?;
        }
        Ok(())
    }
}

impl fmt::Display for AnyTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyTrace::Untimed(t) => t.fmt(f),
            AnyTrace::Timed(t) => t.fmt(f),
        }
    }
}

/// Canonical text form; atoms inside a letter are listed in lexicographic order.
pub fn format_trace(t: &AnyTrace) -> String {
    t.to_string()
}

/// A sorted, duplicate-free list of atoms. Letters over it are indexed by
/// bitmask: bit `k` is set when the `k`-th atom is true.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    atoms: Vec<String>,
}

/// Largest alphabet the explicit-letter automata accept.
pub const MAX_AUTOMATON_ATOMS: usize = 16;

impl Alphabet {
    pub fn new<S: Into<String>>(atoms: impl IntoIterator<Item = S>) -> Self {
        let set: BTreeSet<String> = atoms.into_iter().map(Into::into).collect();
        Alphabet {
            atoms: set.into_iter().collect(),
        }
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Number of letters, `2^|atoms|`.
    pub fn letter_count(&self) -> usize {
        1usize << self.atoms.len()
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet::new(self.atoms.iter().chain(&other.atoms).cloned())
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.atoms
            .binary_search_by(|a| a.as_str().cmp(atom))
            .is_ok()
    }

    pub fn letter(&self, index: usize) -> Letter {
        Letter::from_atoms(
            self.atoms
                .iter()
                .enumerate()
                .filter(|(k, _)| index & (1 << k) != 0)
                .map(|(_, a)| a.clone()),
        )
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letter_count()).map(|i| self.letter(i))
    }

    /// Bitmask index of `letter`; fails when it mentions an atom outside the alphabet.
    pub fn index_of(&self, letter: &Letter) -> Result<usize> {
        let mut index = 0;
        for a in letter.atoms() {
            match self.atoms.binary_search(a) {
                Ok(k) => index |= 1 << k,
                Err(_) => {
                    return Err(Error::AlphabetMismatch {
                        atom: a.clone(),
                        alphabet: self.atoms.clone(),
                    })
                }
            }
        }
        Ok(index)
    }

    /// Restricts a letter to this alphabet, dropping foreign atoms.
    pub fn project(&self, letter: &Letter) -> Letter {
        Letter::from_atoms(letter.atoms().iter().filter(|a| self.contains(a)).cloned())
    }

    pub fn indices(&self, trace: &Trace) -> Result<Vec<usize>> {
        trace.letters().iter().map(|l| self.index_of(l)).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.atoms.join(","))
    }
}

/// Bounds for exhaustive enumeration.
pub const MAX_ENUMERATION_ATOMS: usize = 8;
pub const MAX_TRACES_PER_LENGTH: u128 = 1_000_000;

/// Checks `|ap| <= 8` and `(2^|ap|)^max_len <= 10^6`.
pub fn check_enumeration_bounds(ap: &Alphabet, max_len: usize) -> Result<()> {
    let per_length = (ap.letter_count() as u128).checked_pow(max_len as u32);
    if ap.len() > MAX_ENUMERATION_ATOMS || per_length.is_none_or(|n| n > MAX_TRACES_PER_LENGTH) {
        return Err(Error::SizeLimit(format!(
            "enumerating traces of length {max_len} over {} atoms exceeds the limit",
            ap.len()
        )));
    }
    Ok(())
}

/// Lazily yields every trace of length `0..=max_len` over `2^ap`, shorter
/// first, and lexicographically by letter index within a length.
#[derive(Debug, Clone)]
pub struct TraceEnumerator {
    alphabet: Alphabet,
    max_len: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for TraceEnumerator {
    type Item = Trace;

    fn next(&mut self) -> Option<Trace> {
        let digits = self.current.as_mut()?;
        let out = Trace::new(digits.iter().map(|&i| self.alphabet.letter(i)).collect());
        // Advance like an odometer; on overflow move to the next length.
        let base = self.alphabet.letter_count();
        let mut k = digits.len();
        loop {
            if k == 0 {
                if digits.len() == self.max_len {
                    self.current = None;
                } else {
                    let n = digits.len() + 1;
                    *digits = vec![0; n];
                }
                break;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < base {
                break;
            }
            digits[k] = 0;
        }
        Some(out)
    }
}

pub fn enumerate_traces(ap: &Alphabet, max_len: usize) -> Result<TraceEnumerator> {
    check_enumeration_bounds(ap, max_len)?;
    Ok(TraceEnumerator {
        alphabet: ap.clone(),
        max_len,
        current: Some(Vec::new()),
    })
}

/// Traces of exactly `len` letters, in the same order as [`enumerate_traces`].
pub fn enumerate_traces_of_length(
    ap: &Alphabet,
    len: usize,
) -> Result<impl Iterator<Item = Trace>> {
    Ok(enumerate_traces(ap, len)?.filter(move |t| t.len() == len))
}

/// Closed-form count of traces of length `0..=max_len`.
pub fn trace_count(ap: &Alphabet, max_len: usize) -> usize {
    (0..=max_len as u32).map(|k| ap.letter_count().pow(k)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_trace;

    #[test]
    fn small_enumerations() {
        let a = Alphabet::new(["a"]);
        let all: Vec<String> = enumerate_traces(&a, 1)
            .unwrap()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(all, vec!["eps", "{}", "{a}"]);
        assert_eq!(
            enumerate_traces(&Alphabet::new(["a", "b"]), 2)
                .unwrap()
                .count(),
            21
        );
        let only: Vec<_> = enumerate_traces(&a, 0).unwrap().collect();
        assert_eq!(only, vec![Trace::empty()]);
    }

    #[test]
    fn enumeration_matches_closed_form_without_duplicates() {
        for (atoms, len) in [
            (vec!["a", "b"], 4),
            (vec!["p"], 6),
            (vec![], 3),
            (vec!["x", "y", "z"], 3),
        ] {
            let ap = Alphabet::new(atoms);
            let traces: Vec<_> = enumerate_traces(&ap, len).unwrap().collect();
            let distinct: std::collections::HashSet<_> = traces.iter().collect();
            assert_eq!(traces.len(), trace_count(&ap, len));
            assert_eq!(distinct.len(), traces.len());
        }
        assert_eq!(trace_count(&Alphabet::new(["a", "b"]), 4), 341);
    }

    #[test]
    fn size_limit() {
        let nine = Alphabet::new((0..9).map(|i| format!("p{i}")));
        assert!(matches!(
            enumerate_traces(&nine, 1),
            Err(Error::SizeLimit(_))
        ));
        let two = Alphabet::new(["a", "b"]);
        assert!(enumerate_traces(&two, 9).is_ok());
        assert!(enumerate_traces(&two, 10).is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(Trace::empty().to_string(), "eps");
        let t = Trace::new(vec![Letter::from_atoms(["b", "a"]), Letter::default()]);
        assert_eq!(t.to_string(), "{a,b};{}");
        let timed = Trace::new(vec![
            Letter::from_atoms(["drive"]),
            Letter::from_atoms(["school"]),
        ])
        .with_times(vec![0, 25])
        .unwrap();
        assert_eq!(timed.to_string(), "{drive}@0;{school}@25");
        assert_eq!(
            format_trace(&parse_trace(&timed.to_string()).unwrap()),
            "{drive}@0;{school}@25"
        );
    }

    #[test]
    fn letter_indices() {
        let ap = Alphabet::new(["b", "a"]);
        assert_eq!(ap.atoms(), &["a".to_string(), "b".to_string()]);
        assert_eq!(ap.index_of(&Letter::from_atoms(["b"])).unwrap(), 2);
        assert_eq!(ap.letter(3), Letter::from_atoms(["a", "b"]));
        assert!(ap.index_of(&Letter::from_atoms(["c"])).is_err());
        assert_eq!(
            ap.project(&Letter::from_atoms(["a", "c"])),
            Letter::from_atoms(["a"])
        );
    }

    #[test]
    fn timed_trace_validation() {
        assert!(TimedTrace::new(vec![Letter::default(); 2], vec![3, 1]).is_err());
        assert!(TimedTrace::new(vec![Letter::default(); 2], vec![1]).is_err());
        assert!(TimedTrace::new(vec![Letter::default(); 2], vec![1, 1]).is_ok());
    }
}
