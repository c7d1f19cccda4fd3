//! Positive boolean formulas over automaton successor references.

use std::collections::BTreeSet;

/// A negation-free boolean combination of leaves. Constructors absorb
/// `True`/`False`, so a simplified formula mentions a constant only when it
/// is that constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pbf<L> {
    True,
    False,
    Leaf(L),
    And(Box<Pbf<L>>, Box<Pbf<L>>),
    Or(Box<Pbf<L>>, Box<Pbf<L>>),
}

impl<L: Clone + Ord> Pbf<L> {
    pub fn leaf(l: L) -> Self {
        Pbf::Leaf(l)
    }

    pub fn constant(b: bool) -> Self {
        if b {
            Pbf::True
        } else {
            Pbf::False
        }
    }

    pub fn and(a: Pbf<L>, b: Pbf<L>) -> Self {
        match (a, b) {
            (Pbf::False, _) | (_, Pbf::False) => Pbf::False,
            (Pbf::True, x) | (x, Pbf::True) => x,
            (x, y) if x == y => x,
            (x, y) => Pbf::And(Box::new(x), Box::new(y)),
        }
    }

    pub fn or(a: Pbf<L>, b: Pbf<L>) -> Self {
        match (a, b) {
            (Pbf::True, _) | (_, Pbf::True) => Pbf::True,
            (Pbf::False, x) | (x, Pbf::False) => x,
            (x, y) if x == y => x,
            (x, y) => Pbf::Or(Box::new(x), Box::new(y)),
        }
    }

    pub fn eval(&self, assign: &mut impl FnMut(&L) -> bool) -> bool {
        match self {
            Pbf::True => true,
            Pbf::False => false,
            Pbf::Leaf(l) => assign(l),
            Pbf::And(a, b) => a.eval(assign) && b.eval(assign),
            Pbf::Or(a, b) => a.eval(assign) || b.eval(assign),
        }
    }

    pub fn leaves(&self) -> BTreeSet<L> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<L>) {
        match self {
            Pbf::True | Pbf::False => {}
            Pbf::Leaf(l) => {
                out.insert(l.clone());
            }
            Pbf::And(a, b) | Pbf::Or(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    /// Minimal satisfying leaf sets (an antichain). `True` yields `{∅}`,
    /// `False` yields no sets.
    pub fn minimal_models(&self) -> Vec<BTreeSet<L>> {
        match self {
            Pbf::True => vec![BTreeSet::new()],
            Pbf::False => Vec::new(),
            Pbf::Leaf(l) => vec![BTreeSet::from([l.clone()])],
            Pbf::Or(a, b) => {
                let mut all = a.minimal_models();
                all.extend(b.minimal_models());
                minimize_antichain(all)
            }
            Pbf::And(a, b) => product(&a.minimal_models(), &b.minimal_models()),
        }
    }
}

/// Pairwise unions of two model families, reduced to an antichain.
pub fn product<L: Clone + Ord>(xs: &[BTreeSet<L>], ys: &[BTreeSet<L>]) -> Vec<BTreeSet<L>> {
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for x in xs {
        for y in ys {
            out.push(x.union(y).cloned().collect());
        }
    }
    minimize_antichain(out)
}

/// Keeps only the subset-minimal sets, sorted and deduplicated.
pub fn minimize_antichain<L: Ord + Clone>(mut sets: Vec<BTreeSet<L>>) -> Vec<BTreeSet<L>> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<BTreeSet<L>> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(x: u32) -> Pbf<u32> {
        Pbf::leaf(x)
    }

    #[test]
    fn absorption() {
        assert_eq!(Pbf::and(Pbf::True, l(1)), l(1));
        assert_eq!(Pbf::and(Pbf::False, l(1)), Pbf::False);
        assert_eq!(Pbf::or(Pbf::True, l(1)), Pbf::True);
        assert_eq!(Pbf::or(Pbf::False, l(1)), l(1));
        assert_eq!(Pbf::or(l(2), l(2)), l(2));
    }

    #[test]
    fn models() {
        assert_eq!(Pbf::<u32>::True.minimal_models(), vec![BTreeSet::new()]);
        assert!(Pbf::<u32>::False.minimal_models().is_empty());
        // (1 | 2) & (1 | 3) -> {1}, {2,3}
        let f = Pbf::and(Pbf::or(l(1), l(2)), Pbf::or(l(1), l(3)));
        assert_eq!(
            f.minimal_models(),
            vec![BTreeSet::from([1]), BTreeSet::from([2, 3])]
        );
    }

    #[test]
    fn minimal_models_satisfy_and_are_minimal() {
        let f = Pbf::or(Pbf::and(l(1), Pbf::or(l(2), l(3))), Pbf::and(l(2), l(3)));
        for m in f.minimal_models() {
            assert!(f.eval(&mut |x| m.contains(x)));
            for drop in &m {
                assert!(!f.eval(&mut |x| x != drop && m.contains(x)));
            }
        }
    }
}
