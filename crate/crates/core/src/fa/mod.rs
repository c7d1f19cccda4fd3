//! Nondeterministic and deterministic automata: dealternation, subset
//! construction, minimization, and the language queries built on them.

mod dfa;
mod minimize;
mod nfa;

pub use dfa::{complement, dfa_accepts, enumerate_accepted, is_empty, Dfa};
pub use minimize::{isomorphic, minimize, minimize_moore, minimize_seeded};
pub use nfa::{dealternate, determinize, nfa_accepts, Nfa};

use crate::afa::translate_afa_over;
use crate::error::Result;
use crate::formula::{atoms, Formula};
use crate::trace::{Alphabet, Trace};

/// Default cap on generated automaton states.
pub const DEFAULT_STATE_BUDGET: usize = 1 << 20;

/// Formula to DFA over `alphabet` (widened to the formula's atoms).
pub fn compile_dfa(f: &Formula, alphabet: &Alphabet, budget: usize) -> Result<Dfa> {
    let afa = translate_afa_over(f, alphabet)?;
    let nfa = dealternate(&afa, budget)?;
    determinize(&nfa, budget)
}

pub fn compile_min_dfa(f: &Formula, alphabet: &Alphabet, budget: usize) -> Result<Dfa> {
    Ok(minimize(&compile_dfa(f, alphabet, budget)?))
}

/// Outcome of a language-equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    /// A shortest trace accepted by exactly one side.
    pub counterexample: Option<Trace>,
}

/// Decides language equivalence via minimal-DFA isomorphism over the union
/// of both formulas' atoms.
pub fn equivalent(f: &Formula, g: &Formula) -> Result<Equivalence> {
    equivalent_with_budget(f, g, DEFAULT_STATE_BUDGET)
}

pub fn equivalent_with_budget(f: &Formula, g: &Formula, budget: usize) -> Result<Equivalence> {
    let ap = Alphabet::new(atoms(f).into_iter().chain(atoms(g)));
    let a = compile_min_dfa(f, &ap, budget)?;
    let b = compile_min_dfa(g, &ap, budget)?;
    if isomorphic(&a, &b) {
        return Ok(Equivalence {
            equivalent: true,
            counterexample: None,
        });
    }
    Ok(Equivalence {
        equivalent: false,
        counterexample: dfa::distinguishing_trace(&a, &b),
    })
}
