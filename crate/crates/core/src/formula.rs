//! Formula and path-expression syntax trees, negation normal form, and the
//! rewriting of temporal sugar into the dynamic (path-modal) core.

use std::collections::BTreeSet;
use std::fmt;

/// A right-open interval `[lo, hi)` over natural time differences.
/// `hi == None` stands for an unbounded upper end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: u64,
    pub hi: Option<u64>,
}

impl Interval {
    /// Returns `None` when the interval would be empty (`lo >= hi`).
    pub fn new(lo: u64, hi: Option<u64>) -> Option<Self> {
        match hi {
            Some(h) if lo >= h => None,
            _ => Some(Interval { lo, hi }),
        }
    }

    pub fn unbounded(lo: u64) -> Self {
        Interval { lo, hi: None }
    }

    pub fn contains(&self, delta: u64) -> bool {
        delta >= self.lo && self.hi.is_none_or(|h| delta < h)
    }

    /// Largest admissible integer difference, i.e. `hi - 1`.
    pub fn closed_upper(&self) -> Option<u64> {
        self.hi.map(|h| h - 1)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) => write!(f, "[{},{})", self.lo, h),
            None => write!(f, "[{},inf)", self.lo),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    WeakNext(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    Eventually(Box<Formula>),
    Always(Box<Formula>),
    Prev(Box<Formula>),
    WeakPrev(Box<Formula>),
    Since(Box<Formula>, Box<Formula>),
    Trigger(Box<Formula>, Box<Formula>),
    Diamond(Box<PathExpr>, Box<Formula>),
    Box(Box<PathExpr>, Box<Formula>),
    /// Holds when the next letter exists, its time difference lies in the
    /// interval, and the body holds there.
    MetricNext(Interval, Box<Formula>),
    /// Dual of [`Formula::MetricNext`]: no next letter, or the difference
    /// misses the interval, or the body holds there. Produced by [`nnf`].
    WeakMetricNext(Interval, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathExpr {
    /// Consume one letter satisfying a propositional guard.
    Step(Formula),
    /// Stay put if the formula holds.
    Test(Formula),
    Seq(Box<PathExpr>, Box<PathExpr>),
    Alt(Box<PathExpr>, Box<PathExpr>),
    Star(Box<PathExpr>),
}

/// Whether `name` is a well-formed atom identifier: `[a-z][a-zA-Z0-9_]*`.
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

// Constructors. Kept terse because translations build many derived terms.
impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }
    pub fn and(f: Formula, g: Formula) -> Self {
        Formula::And(Box::new(f), Box::new(g))
    }
    pub fn or(f: Formula, g: Formula) -> Self {
        Formula::Or(Box::new(f), Box::new(g))
    }
    pub fn implies(f: Formula, g: Formula) -> Self {
        Formula::Implies(Box::new(f), Box::new(g))
    }
    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }
    pub fn weak_next(f: Formula) -> Self {
        Formula::WeakNext(Box::new(f))
    }
    pub fn until(f: Formula, g: Formula) -> Self {
        Formula::Until(Box::new(f), Box::new(g))
    }
    pub fn release(f: Formula, g: Formula) -> Self {
        Formula::Release(Box::new(f), Box::new(g))
    }
    pub fn eventually(f: Formula) -> Self {
        Formula::Eventually(Box::new(f))
    }
    pub fn always(f: Formula) -> Self {
        Formula::Always(Box::new(f))
    }
    pub fn prev(f: Formula) -> Self {
        Formula::Prev(Box::new(f))
    }
    pub fn weak_prev(f: Formula) -> Self {
        Formula::WeakPrev(Box::new(f))
    }
    pub fn since(f: Formula, g: Formula) -> Self {
        Formula::Since(Box::new(f), Box::new(g))
    }
    pub fn trigger(f: Formula, g: Formula) -> Self {
        Formula::Trigger(Box::new(f), Box::new(g))
    }
    pub fn diamond(p: PathExpr, f: Formula) -> Self {
        Formula::Diamond(Box::new(p), Box::new(f))
    }
    pub fn boxed(p: PathExpr, f: Formula) -> Self {
        Formula::Box(Box::new(p), Box::new(f))
    }
    pub fn metric_next(interval: Interval, f: Formula) -> Self {
        Formula::MetricNext(interval, Box::new(f))
    }
    pub fn weak_metric_next(interval: Interval, f: Formula) -> Self {
        Formula::WeakMetricNext(interval, Box::new(f))
    }

    /// True for formulas built only from atoms, constants and boolean connectives.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => true,
            Formula::Not(f) => f.is_propositional(),
            Formula::And(f, g) | Formula::Or(f, g) | Formula::Implies(f, g) => {
                f.is_propositional() && g.is_propositional()
            }
            _ => false,
        }
    }

    /// Propositional evaluation against the set of true atoms.
    ///
    /// Non-propositional connectives evaluate to `false`; callers only pass
    /// step guards, which the parser and constructors keep propositional.
    pub fn satisfied_by(&self, letter: &BTreeSet<String>) -> bool {
        match self {
            Formula::Atom(a) => letter.contains(a),
            Formula::True => true,
            Formula::False => false,
            Formula::Not(f) => !f.satisfied_by(letter),
            Formula::And(f, g) => f.satisfied_by(letter) && g.satisfied_by(letter),
            Formula::Or(f, g) => f.satisfied_by(letter) || g.satisfied_by(letter),
            Formula::Implies(f, g) => !f.satisfied_by(letter) || g.satisfied_by(letter),
            _ => false,
        }
    }

    pub fn has_past(&self) -> bool {
        self.any(&|f| {
            matches!(
                f,
                Formula::Prev(_) | Formula::WeakPrev(_) | Formula::Since(..) | Formula::Trigger(..)
            )
        })
    }

    pub fn has_metric(&self) -> bool {
        self.any(&|f| matches!(f, Formula::MetricNext(..) | Formula::WeakMetricNext(..)))
    }

    /// Whether every node of the formula is NNF: negation only on atoms, no implication.
    pub fn is_nnf(&self) -> bool {
        !self.any(&|f| match f {
            Formula::Not(g) => !matches!(**g, Formula::Atom(_)),
            Formula::Implies(..) => true,
            _ => false,
        })
    }

    /// Whether the formula is free of the future temporal sugar handled by
    /// [`to_dynamic_core`].
    pub fn is_dynamic_core(&self) -> bool {
        !self.any(&|f| {
            matches!(
                f,
                Formula::Next(_)
                    | Formula::WeakNext(_)
                    | Formula::Until(..)
                    | Formula::Release(..)
                    | Formula::Eventually(_)
                    | Formula::Always(_)
            )
        })
    }

    /// Pre-order search over every formula node, including those inside paths.
    pub fn any(&self, pred: &dyn Fn(&Formula) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => false,
            Formula::Not(f)
            | Formula::Next(f)
            | Formula::WeakNext(f)
            | Formula::Eventually(f)
            | Formula::Always(f)
            | Formula::Prev(f)
            | Formula::WeakPrev(f)
            | Formula::MetricNext(_, f)
            | Formula::WeakMetricNext(_, f) => f.any(pred),
            Formula::And(f, g)
            | Formula::Or(f, g)
            | Formula::Implies(f, g)
            | Formula::Until(f, g)
            | Formula::Release(f, g)
            | Formula::Since(f, g)
            | Formula::Trigger(f, g) => f.any(pred) || g.any(pred),
            Formula::Diamond(p, f) | Formula::Box(p, f) => p.any(pred) || f.any(pred),
        }
    }

    /// Number of AST nodes. Step wrappers are implicit and not counted.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => 1,
            Formula::Not(f)
            | Formula::Next(f)
            | Formula::WeakNext(f)
            | Formula::Eventually(f)
            | Formula::Always(f)
            | Formula::Prev(f)
            | Formula::WeakPrev(f)
            | Formula::MetricNext(_, f)
            | Formula::WeakMetricNext(_, f) => 1 + f.size(),
            Formula::And(f, g)
            | Formula::Or(f, g)
            | Formula::Implies(f, g)
            | Formula::Until(f, g)
            | Formula::Release(f, g)
            | Formula::Since(f, g)
            | Formula::Trigger(f, g) => 1 + f.size() + g.size(),
            Formula::Diamond(p, f) | Formula::Box(p, f) => 1 + p.size() + f.size(),
        }
    }
}

impl PathExpr {
    pub fn step(g: Formula) -> Self {
        PathExpr::Step(g)
    }
    pub fn test(f: Formula) -> Self {
        PathExpr::Test(f)
    }
    pub fn seq(p: PathExpr, q: PathExpr) -> Self {
        PathExpr::Seq(Box::new(p), Box::new(q))
    }
    pub fn alt(p: PathExpr, q: PathExpr) -> Self {
        PathExpr::Alt(Box::new(p), Box::new(q))
    }
    pub fn star(p: PathExpr) -> Self {
        PathExpr::Star(Box::new(p))
    }

    /// `tt` as a step: consume any letter.
    pub fn any_step() -> Self {
        PathExpr::Step(Formula::True)
    }

    pub fn any(&self, pred: &dyn Fn(&Formula) -> bool) -> bool {
        match self {
            PathExpr::Step(g) | PathExpr::Test(g) => g.any(pred),
            PathExpr::Seq(p, q) | PathExpr::Alt(p, q) => p.any(pred) || q.any(pred),
            PathExpr::Star(p) => p.any(pred),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            PathExpr::Step(g) => g.size(),
            PathExpr::Test(f) => 1 + f.size(),
            PathExpr::Seq(p, q) | PathExpr::Alt(p, q) => 1 + p.size() + q.size(),
            PathExpr::Star(p) => 1 + p.size(),
        }
    }

    /// Formula that holds exactly where the path can be traversed without
    /// consuming a letter.
    pub fn stay_condition(&self) -> Formula {
        match self {
            PathExpr::Step(_) => Formula::False,
            PathExpr::Test(f) => f.clone(),
            PathExpr::Seq(p, q) => and_simplified(p.stay_condition(), q.stay_condition()),
            PathExpr::Alt(p, q) => or_simplified(p.stay_condition(), q.stay_condition()),
            PathExpr::Star(_) => Formula::True,
        }
    }

    /// The sub-relation of paths that consume at least one letter. An empty
    /// relation is represented as `ff?`.
    pub fn consuming(&self) -> PathExpr {
        let empty = PathExpr::Test(Formula::False);
        match self {
            PathExpr::Step(_) => self.clone(),
            PathExpr::Test(_) => empty,
            PathExpr::Seq(p, q) => {
                let first = p.consuming();
                let first = if first == empty {
                    None
                } else {
                    Some(PathExpr::seq(first, (**q).clone()))
                };
                let stay = p.stay_condition();
                let rest = q.consuming();
                let second = if stay == Formula::False || rest == empty {
                    None
                } else if stay == Formula::True {
                    Some(rest)
                } else {
                    Some(PathExpr::seq(PathExpr::Test(stay), rest))
                };
                match (first, second) {
                    (Some(a), Some(b)) => PathExpr::alt(a, b),
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => empty,
                }
            }
            PathExpr::Alt(p, q) => {
                let (a, b) = (p.consuming(), q.consuming());
                if a == empty {
                    b
                } else if b == empty {
                    a
                } else {
                    PathExpr::alt(a, b)
                }
            }
            PathExpr::Star(p) => {
                let a = p.consuming();
                if a == empty {
                    empty
                } else {
                    PathExpr::seq(a, self.clone())
                }
            }
        }
    }
}

fn and_simplified(f: Formula, g: Formula) -> Formula {
    match (f, g) {
        (Formula::False, _) | (_, Formula::False) => Formula::False,
        (Formula::True, x) | (x, Formula::True) => x,
        (x, y) => Formula::and(x, y),
    }
}

fn or_simplified(f: Formula, g: Formula) -> Formula {
    match (f, g) {
        (Formula::True, _) | (_, Formula::True) => Formula::True,
        (Formula::False, x) | (x, Formula::False) => x,
        (x, y) => Formula::or(x, y),
    }
}

/// Negation normal form: `Not` only on atoms, `Implies` eliminated.
pub fn nnf(f: &Formula) -> Formula {
    positive(f)
}

fn positive(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) | Formula::True | Formula::False => f.clone(),
        Formula::Not(g) => negative(g),
        Formula::And(a, b) => Formula::and(positive(a), positive(b)),
        Formula::Or(a, b) => Formula::or(positive(a), positive(b)),
        Formula::Implies(a, b) => Formula::or(negative(a), positive(b)),
        Formula::Next(g) => Formula::next(positive(g)),
        Formula::WeakNext(g) => Formula::weak_next(positive(g)),
        Formula::Until(a, b) => Formula::until(positive(a), positive(b)),
        Formula::Release(a, b) => Formula::release(positive(a), positive(b)),
        Formula::Eventually(g) => Formula::eventually(positive(g)),
        Formula::Always(g) => Formula::always(positive(g)),
        Formula::Prev(g) => Formula::prev(positive(g)),
        Formula::WeakPrev(g) => Formula::weak_prev(positive(g)),
        Formula::Since(a, b) => Formula::since(positive(a), positive(b)),
        Formula::Trigger(a, b) => Formula::trigger(positive(a), positive(b)),
        Formula::Diamond(p, g) => Formula::diamond(nnf_path(p), positive(g)),
        Formula::Box(p, g) => Formula::boxed(nnf_path(p), positive(g)),
        Formula::MetricNext(i, g) => Formula::metric_next(*i, positive(g)),
        Formula::WeakMetricNext(i, g) => Formula::weak_metric_next(*i, positive(g)),
    }
}

/// NNF of `Not f`.
fn negative(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) => Formula::not(f.clone()),
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Not(g) => positive(g),
        Formula::And(a, b) => Formula::or(negative(a), negative(b)),
        Formula::Or(a, b) => Formula::and(negative(a), negative(b)),
        Formula::Implies(a, b) => Formula::and(positive(a), negative(b)),
        Formula::Next(g) => Formula::weak_next(negative(g)),
        Formula::WeakNext(g) => Formula::next(negative(g)),
        Formula::Until(a, b) => Formula::release(negative(a), negative(b)),
        Formula::Release(a, b) => Formula::until(negative(a), negative(b)),
        Formula::Eventually(g) => Formula::always(negative(g)),
        Formula::Always(g) => Formula::eventually(negative(g)),
        Formula::Prev(g) => Formula::weak_prev(negative(g)),
        Formula::WeakPrev(g) => Formula::prev(negative(g)),
        Formula::Since(a, b) => Formula::trigger(negative(a), negative(b)),
        Formula::Trigger(a, b) => Formula::since(negative(a), negative(b)),
        Formula::Diamond(p, g) => Formula::boxed(nnf_path(p), negative(g)),
        Formula::Box(p, g) => Formula::diamond(nnf_path(p), negative(g)),
        Formula::MetricNext(i, g) => Formula::weak_metric_next(*i, negative(g)),
        Formula::WeakMetricNext(i, g) => Formula::metric_next(*i, negative(g)),
    }
}

fn nnf_path(p: &PathExpr) -> PathExpr {
    match p {
        PathExpr::Step(g) => PathExpr::Step(positive(g)),
        PathExpr::Test(f) => PathExpr::Test(positive(f)),
        PathExpr::Seq(a, b) => PathExpr::seq(nnf_path(a), nnf_path(b)),
        PathExpr::Alt(a, b) => PathExpr::alt(nnf_path(a), nnf_path(b)),
        PathExpr::Star(a) => PathExpr::star(nnf_path(a)),
    }
}

/// Rewrites `X`, `WX`, `U`, `R`, `F` and `G` into path modalities.
///
/// Past operators and metric next are kept, with their arguments rewritten.
/// The input is expected in NNF; negations introduced for `R` tests are
/// normalized so the output stays in NNF.
pub fn to_dynamic_core(f: &Formula) -> Formula {
    let tt_star = || PathExpr::star(PathExpr::any_step());
    match f {
        Formula::Atom(_) | Formula::True | Formula::False => f.clone(),
        Formula::Not(g) => Formula::not(to_dynamic_core(g)),
        Formula::And(a, b) => Formula::and(to_dynamic_core(a), to_dynamic_core(b)),
        Formula::Or(a, b) => Formula::or(to_dynamic_core(a), to_dynamic_core(b)),
        Formula::Implies(a, b) => Formula::implies(to_dynamic_core(a), to_dynamic_core(b)),
        Formula::Next(g) => Formula::diamond(PathExpr::any_step(), to_dynamic_core(g)),
        Formula::WeakNext(g) => Formula::boxed(PathExpr::any_step(), to_dynamic_core(g)),
        Formula::Eventually(g) => Formula::diamond(tt_star(), to_dynamic_core(g)),
        Formula::Always(g) => Formula::boxed(tt_star(), to_dynamic_core(g)),
        Formula::Until(a, b) => Formula::diamond(
            PathExpr::star(PathExpr::seq(
                PathExpr::Test(to_dynamic_core(a)),
                PathExpr::any_step(),
            )),
            to_dynamic_core(b),
        ),
        Formula::Release(a, b) => Formula::boxed(
            PathExpr::star(PathExpr::seq(
                PathExpr::Test(to_dynamic_core(&nnf(&Formula::not((**a).clone())))),
                PathExpr::any_step(),
            )),
            to_dynamic_core(b),
        ),
        Formula::Prev(g) => Formula::prev(to_dynamic_core(g)),
        Formula::WeakPrev(g) => Formula::weak_prev(to_dynamic_core(g)),
        Formula::Since(a, b) => Formula::since(to_dynamic_core(a), to_dynamic_core(b)),
        Formula::Trigger(a, b) => Formula::trigger(to_dynamic_core(a), to_dynamic_core(b)),
        Formula::Diamond(p, g) => Formula::diamond(core_path(p), to_dynamic_core(g)),
        Formula::Box(p, g) => Formula::boxed(core_path(p), to_dynamic_core(g)),
        Formula::MetricNext(i, g) => Formula::metric_next(*i, to_dynamic_core(g)),
        Formula::WeakMetricNext(i, g) => Formula::weak_metric_next(*i, to_dynamic_core(g)),
    }
}

fn core_path(p: &PathExpr) -> PathExpr {
    match p {
        PathExpr::Step(g) => PathExpr::Step(g.clone()),
        PathExpr::Test(f) => PathExpr::Test(to_dynamic_core(f)),
        PathExpr::Seq(a, b) => PathExpr::seq(core_path(a), core_path(b)),
        PathExpr::Alt(a, b) => PathExpr::alt(core_path(a), core_path(b)),
        PathExpr::Star(a) => PathExpr::star(core_path(a)),
    }
}

/// `nnf` followed by `to_dynamic_core`: the input form every automaton
/// translation works on.
pub fn normalize(f: &Formula) -> Formula {
    to_dynamic_core(&nnf(f))
}

/// Atom names occurring anywhere in `f`, including path guards and tests.
pub fn atoms(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_atoms(f, &mut out);
    out
}

fn collect_atoms(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(a) => {
            out.insert(a.clone());
        }
        Formula::True | Formula::False => {}
        Formula::Not(g)
        | Formula::Next(g)
        | Formula::WeakNext(g)
        | Formula::Eventually(g)
        | Formula::Always(g)
        | Formula::Prev(g)
        | Formula::WeakPrev(g)
        | Formula::MetricNext(_, g)
        | Formula::WeakMetricNext(_, g) => collect_atoms(g, out),
        Formula::And(a, b)
        | Formula::Or(a, b)
        | Formula::Implies(a, b)
        | Formula::Until(a, b)
        | Formula::Release(a, b)
        | Formula::Since(a, b)
        | Formula::Trigger(a, b) => {
            collect_atoms(a, out);
            collect_atoms(b, out);
        }
        Formula::Diamond(p, g) | Formula::Box(p, g) => {
            collect_path_atoms(p, out);
            collect_atoms(g, out);
        }
    }
}

fn collect_path_atoms(p: &PathExpr, out: &mut BTreeSet<String>) {
    match p {
        PathExpr::Step(g) | PathExpr::Test(g) => collect_atoms(g, out),
        PathExpr::Seq(a, b) | PathExpr::Alt(a, b) => {
            collect_path_atoms(a, out);
            collect_path_atoms(b, out);
        }
        PathExpr::Star(a) => collect_path_atoms(a, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn de_morgan() {
        assert_eq!(nnf(&p("!(a & b)")), p("!a | !b"));
    }

    #[test]
    fn diamond_box_duality() {
        assert_eq!(nnf(&p("!<tt*> a")), p("[tt*] !a"));
    }

    #[test]
    fn until_negation_is_release_of_negations() {
        assert_eq!(nnf(&p("!(a U b)")), p("(!a) R (!b)"));
    }

    #[test]
    fn metric_negation_uses_weak_dual() {
        assert_eq!(nnf(&p("!X[20,40) school")), p("WX[20,40) !school"));
        assert_eq!(nnf(&p("!WX[1,inf) a")), p("X[1,inf) !a"));
    }

    #[test]
    fn nnf_is_idempotent_on_samples() {
        for s in [
            "!(a -> X b)",
            "!(a S !b)",
            "![a* ; (b | c)?] F a",
            "!G (a R WY b)",
        ] {
            let once = nnf(&p(s));
            assert!(once.is_nnf(), "{s}");
            assert_eq!(nnf(&once), once);
        }
    }

    #[test]
    fn core_rewrites() {
        assert_eq!(to_dynamic_core(&p("F a")), p("<tt*> a"));
        assert_eq!(to_dynamic_core(&p("G a")), p("[tt*] a"));
        assert_eq!(to_dynamic_core(&p("X a")), p("<tt> a"));
        assert_eq!(to_dynamic_core(&p("WX a")), p("[tt] a"));
        assert_eq!(to_dynamic_core(&p("a U b")), p("<(a? ; tt)*> b"));
        assert_eq!(to_dynamic_core(&p("a R b")), p("[((!a)? ; tt)*] b"));
        assert_eq!(to_dynamic_core(&p("Y F a")), p("Y <tt*> a"));
        assert!(to_dynamic_core(&p("<(X a)?> G b")).is_dynamic_core());
    }

    #[test]
    fn atoms_cover_guards_and_tests() {
        let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(atoms(&p("a & !b")), set(&["a", "b"]));
        assert_eq!(atoms(&p("<(c?)*> tt")), set(&["c"]));
        assert_eq!(atoms(&p("tt")), set(&[]));
        assert_eq!(atoms(&p("<d & e> X[1,2) f")), set(&["d", "e", "f"]));
    }

    #[test]
    fn interval_membership() {
        let i = Interval::new(20, Some(40)).unwrap();
        assert!(i.contains(20) && i.contains(39) && !i.contains(40) && !i.contains(19));
        assert_eq!(i.closed_upper(), Some(39));
        assert!(Interval::new(3, Some(3)).is_none());
        assert!(Interval::unbounded(0).contains(u64::MAX));
    }

    #[test]
    fn consuming_part_of_until_body_is_itself() {
        let body = PathExpr::seq(PathExpr::Test(p("!a")), PathExpr::any_step());
        assert_eq!(body.consuming(), body);
        assert_eq!(
            PathExpr::Test(p("a")).consuming(),
            PathExpr::Test(Formula::False)
        );
        assert_eq!(
            PathExpr::star(PathExpr::Test(p("a"))).stay_condition(),
            Formula::True
        );
    }

    #[test]
    fn atom_names() {
        assert!(is_atom_name("school"));
        assert!(is_atom_name("a1_B"));
        assert!(!is_atom_name("School"));
        assert!(!is_atom_name("1a"));
        assert!(!is_atom_name(""));
    }
}
