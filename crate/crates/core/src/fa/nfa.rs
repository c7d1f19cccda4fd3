use std::collections::{BTreeSet, HashMap, VecDeque};

use super::dfa::Dfa;
use crate::afa::Afa;
use crate::error::{Error, Result};
use crate::pbf::{product, Pbf};
use crate::trace::{Alphabet, Trace};

/// NFA whose states are sets of AFA states. State 0 is the initial `{0}`.
#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: Alphabet,
    states: Vec<BTreeSet<usize>>,
    /// `transitions[state][letter]` lists successor states.
    transitions: Vec<Vec<Vec<usize>>>,
    accepting: Vec<bool>,
}

impl Nfa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, s: usize) -> &BTreeSet<usize> {
        &self.states[s]
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn successors(&self, s: usize, letter: usize) -> &[usize] {
        &self.transitions[s][letter]
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.iter().flatten().map(Vec::len).sum()
    }

    pub fn accepts(&self, t: &Trace) -> Result<bool> {
        let word = self.alphabet.indices(t)?;
        let mut current = BTreeSet::from([self.initial()]);
        for x in word {
            current = current
                .iter()
                .flat_map(|&s| self.transitions[s][x].iter().copied())
                .collect();
            if current.is_empty() {
                return Ok(false);
            }
        }
        Ok(current.iter().any(|&s| self.accepting[s]))
    }
}

pub fn nfa_accepts(n: &Nfa, t: &Trace) -> Result<bool> {
    n.accepts(t)
}

/// AFA to NFA. Successors of a state set `S` under a letter are the minimal
/// sets satisfying the conjunction of the members' transition images.
pub fn dealternate(afa: &Afa, budget: usize) -> Result<Nfa> {
    let table = afa.transition_table();
    let letters = afa.alphabet().letter_count();
    let mut model_cache: HashMap<(usize, usize), Vec<BTreeSet<usize>>> = HashMap::new();
    let mut models = |q: usize, x: usize, table: &[Vec<Pbf<usize>>]| {
        model_cache
            .entry((q, x))
            .or_insert_with(|| table[q][x].minimal_models())
            .clone()
    };

    let mut states = vec![BTreeSet::from([afa.initial()])];
    let mut index = HashMap::from([(states[0].clone(), 0usize)]);
    let mut transitions: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);

    while let Some(s) = queue.pop_front() {
        let set = states[s].clone();
        let mut row = Vec::with_capacity(letters);
        for x in 0..letters {
            let mut acc = vec![BTreeSet::new()];
            for &q in &set {
                acc = product(&acc, &models(q, x, &table));
                if acc.is_empty() {
                    break;
                }
            }
            let mut targets = Vec::with_capacity(acc.len());
            for target in acc {
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= budget {
                            return Err(Error::Budget {
                                what: "NFA",
                                limit: budget,
                            });
                        }
                        let id = states.len();
                        index.insert(target.clone(), id);
                        states.push(target);
                        queue.push_back(id);
                        id
                    }
                };
                targets.push(id);
            }
            row.push(targets);
        }
        transitions.push(row);
    }

    let accepting = states
        .iter()
        .map(|set| set.iter().all(|&q| afa.final_value(q)))
        .collect();
    Ok(Nfa {
        alphabet: afa.alphabet().clone(),
        states,
        transitions,
        accepting,
    })
}

/// Subset construction. The empty macro-state, when reachable, is kept as a
/// rejecting sink so the result is total.
pub fn determinize(n: &Nfa, budget: usize) -> Result<Dfa> {
    let letters = n.alphabet.letter_count();
    let start = BTreeSet::from([n.initial()]);
    let mut macros = vec![start.clone()];
    let mut index = HashMap::from([(start, 0usize)]);
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);

    while let Some(m) = queue.pop_front() {
        let members = macros[m].clone();
        let mut row = Vec::with_capacity(letters);
        for x in 0..letters {
            let target: BTreeSet<usize> = members
                .iter()
                .flat_map(|&s| n.transitions[s][x].iter().copied())
                .collect();
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    if macros.len() >= budget {
                        return Err(Error::Budget {
                            what: "DFA",
                            limit: budget,
                        });
                    }
                    let id = macros.len();
                    index.insert(target.clone(), id);
                    macros.push(target);
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        transitions.push(row);
    }

    let accepting = macros
        .iter()
        .map(|m| m.iter().any(|&s| n.accepting[s]))
        .collect();
    Ok(Dfa::from_parts(
        n.alphabet.clone(),
        0,
        transitions,
        accepting,
    ))
}
