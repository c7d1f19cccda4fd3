//! The automaton state space: all formulas reachable from a root by the
//! one-step expansions used by the AFA and 2AFA transition functions.

use std::collections::{HashMap, VecDeque};

use crate::formula::{nnf, Formula, PathExpr};

/// Formulas interned by structure, numbered in breadth-first order of a
/// left-to-right expansion starting from the root at ordinal 0.
#[derive(Debug, Clone, Default)]
pub struct StateSet {
    states: Vec<Formula>,
    index: HashMap<Formula, usize>,
}

impl StateSet {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn get(&self, ordinal: usize) -> &Formula {
        &self.states[ordinal]
    }

    pub fn ordinal(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.index.contains_key(f)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.states.iter()
    }

    fn insert(&mut self, f: Formula) -> bool {
        if self.index.contains_key(&f) {
            return false;
        }
        self.index.insert(f.clone(), self.states.len());
        self.states.push(f);
        true
    }
}

/// Formulas a state may hand obligations to in one transition.
pub fn expansion(f: &Formula) -> Vec<Formula> {
    match f {
        Formula::Atom(_) | Formula::True | Formula::False => vec![],
        Formula::Not(g)
        | Formula::Next(g)
        | Formula::WeakNext(g)
        | Formula::Eventually(g)
        | Formula::Always(g)
        | Formula::Prev(g)
        | Formula::WeakPrev(g)
        | Formula::MetricNext(_, g)
        | Formula::WeakMetricNext(_, g) => {
            if matches!(f, Formula::Not(_)) {
                vec![]
            } else {
                vec![(**g).clone()]
            }
        }
        Formula::And(a, b)
        | Formula::Or(a, b)
        | Formula::Implies(a, b)
        | Formula::Until(a, b)
        | Formula::Release(a, b)
        | Formula::Since(a, b)
        | Formula::Trigger(a, b) => vec![(**a).clone(), (**b).clone()],
        Formula::Diamond(p, h) => match &**p {
            PathExpr::Step(_) => vec![(**h).clone()],
            PathExpr::Test(e) => vec![e.clone(), (**h).clone()],
            PathExpr::Seq(a, b) => vec![Formula::diamond(
                (**a).clone(),
                Formula::diamond((**b).clone(), (**h).clone()),
            )],
            PathExpr::Alt(a, b) => vec![
                Formula::diamond((**a).clone(), (**h).clone()),
                Formula::diamond((**b).clone(), (**h).clone()),
            ],
            PathExpr::Star(a) => vec![(**h).clone(), Formula::diamond((**a).clone(), f.clone())],
        },
        Formula::Box(p, h) => match &**p {
            PathExpr::Step(_) => vec![(**h).clone()],
            PathExpr::Test(e) => vec![nnf(&Formula::not(e.clone())), (**h).clone()],
            PathExpr::Seq(a, b) => vec![Formula::boxed(
                (**a).clone(),
                Formula::boxed((**b).clone(), (**h).clone()),
            )],
            PathExpr::Alt(a, b) => vec![
                Formula::boxed((**a).clone(), (**h).clone()),
                Formula::boxed((**b).clone(), (**h).clone()),
            ],
            PathExpr::Star(a) => vec![
                (**h).clone(),
                // one unfolding, as used by the AFA
                Formula::boxed((**a).clone(), f.clone()),
                // progress-forcing unfolding, as used by the 2AFA
                Formula::boxed(a.consuming(), f.clone()),
            ],
        },
    }
}

/// Smallest [`StateSet`] containing `f` and closed under [`expansion`].
pub fn closure(f: &Formula) -> StateSet {
    let mut set = StateSet::default();
    let mut queue = VecDeque::from([f.clone()]);
    set.insert(f.clone());
    while let Some(g) = queue.pop_front() {
        for h in expansion(&g) {
            if set.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    set
}
