//! Formula, trace and constraint-system generators for cross-validation.
//!
//! Everything random is driven by a seeded ChaCha8 stream, so a seed fixes
//! the corpus across platforms.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Formula, Interval, PathExpr};
use crate::metric::{ConstraintSystem, DiffConstraint};
use crate::trace::{Letter, TimedTrace, Trace};

/// Every NNF dynamic-core formula over `atoms` with at most `max_size` AST
/// nodes, ordered by size.
pub fn exhaustive_nnf_core(atoms: &[&str], max_size: usize) -> Vec<Formula> {
    let mut e = Exhaustive {
        atoms: atoms.iter().map(|a| a.to_string()).collect(),
        formulas: BTreeMap::new(),
        paths: BTreeMap::new(),
        guards: BTreeMap::new(),
    };
    (1..=max_size).flat_map(|n| e.formulas(n)).collect()
}

struct Exhaustive {
    atoms: Vec<String>,
    formulas: BTreeMap<usize, Vec<Formula>>,
    paths: BTreeMap<usize, Vec<PathExpr>>,
    guards: BTreeMap<usize, Vec<Formula>>,
}

impl Exhaustive {
    fn literals(&self, n: usize) -> Vec<Formula> {
        match n {
            1 => self
                .atoms
                .iter()
                .map(|a| Formula::atom(a.clone()))
                .chain([Formula::True, Formula::False])
                .collect(),
            2 => self
                .atoms
                .iter()
                .map(|a| Formula::not(Formula::atom(a.clone())))
                .collect(),
            _ => Vec::new(),
        }
    }

    fn guards(&mut self, n: usize) -> Vec<Formula> {
        if let Some(v) = self.guards.get(&n) {
            return v.clone();
        }
        let mut out = self.literals(n);
        for i in 1..n.saturating_sub(1) {
            let j = n - 1 - i;
            for a in self.guards(i) {
                for b in self.guards(j) {
                    out.push(Formula::and(a.clone(), b.clone()));
                    out.push(Formula::or(a.clone(), b));
                }
            }
        }
        self.guards.insert(n, out.clone());
        out
    }

    fn paths(&mut self, n: usize) -> Vec<PathExpr> {
        if let Some(v) = self.paths.get(&n) {
            return v.clone();
        }
        let mut out: Vec<PathExpr> = self.guards(n).into_iter().map(PathExpr::step).collect();
        if n >= 2 {
            out.extend(self.formulas(n - 1).into_iter().map(PathExpr::test));
            out.extend(self.paths(n - 1).into_iter().map(PathExpr::star));
        }
        for i in 1..n.saturating_sub(1) {
            let j = n - 1 - i;
            for p in self.paths(i) {
                for q in self.paths(j) {
                    out.push(PathExpr::seq(p.clone(), q.clone()));
                    out.push(PathExpr::alt(p.clone(), q));
                }
            }
        }
        self.paths.insert(n, out.clone());
        out
    }

    fn formulas(&mut self, n: usize) -> Vec<Formula> {
        if let Some(v) = self.formulas.get(&n) {
            return v.clone();
        }
        let mut out = self.literals(n);
        for i in 1..n.saturating_sub(1) {
            let j = n - 1 - i;
            for a in self.formulas(i) {
                for b in self.formulas(j) {
                    out.push(Formula::and(a.clone(), b.clone()));
                    out.push(Formula::or(a.clone(), b));
                }
            }
            for p in self.paths(i) {
                for g in self.formulas(j) {
                    out.push(Formula::diamond(p.clone(), g.clone()));
                    out.push(Formula::boxed(p.clone(), g));
                }
            }
        }
        self.formulas.insert(n, out.clone());
        out
    }
}

/// Which connectives a random formula may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fragment {
    /// Future temporal and dynamic operators.
    Future,
    /// Future plus `Y`, `WY`, `S`, `T`.
    Past,
    /// Everything, including metric next.
    Full,
}

/// Seeded generator of formulas, traces and constraint systems.
#[derive(Debug, Clone)]
pub struct Generator {
    rng: ChaCha8Rng,
    atoms: Vec<String>,
}

impl Generator {
    pub fn new(seed: u64, atoms: &[&str]) -> Self {
        assert!(!atoms.is_empty(), "generator needs at least one atom");
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms: atoms.iter().map(|a| a.to_string()).collect(),
        }
    }

    fn atom(&mut self) -> Formula {
        Formula::atom(self.atoms.choose(&mut self.rng).expect("atoms").clone())
    }

    fn leaf(&mut self) -> Formula {
        match self.rng.gen_range(0..8) {
            0 => Formula::True,
            1 => Formula::False,
            _ => self.atom(),
        }
    }

    /// A formula of `1..=max_size` nodes.
    pub fn formula(&mut self, fragment: Fragment, max_size: usize) -> Formula {
        let n = self.rng.gen_range(1..=max_size.max(1));
        self.sized(fragment, n)
    }

    /// A formula of at most `max_size` nodes containing a past operator.
    pub fn past_formula(&mut self, max_size: usize) -> Formula {
        assert!(max_size >= 2, "a past operator needs two nodes");
        loop {
            let f = self.formula(Fragment::Past, max_size);
            if f.has_past() {
                return f;
            }
        }
    }

    fn interval(&mut self) -> Interval {
        let lo = self.rng.gen_range(0..30);
        if self.rng.gen_bool(0.2) {
            Interval::unbounded(lo)
        } else {
            Interval::new(lo, Some(lo + self.rng.gen_range(1..30))).expect("non-empty")
        }
    }

    fn sized(&mut self, fragment: Fragment, n: usize) -> Formula {
        if n <= 1 {
            return self.leaf();
        }
        let mut unary: Vec<&str> = vec!["!", "X", "WX", "F", "G"];
        let mut binary: Vec<&str> = vec!["&", "|", "->", "U", "R", "<>", "[]"];
        if fragment != Fragment::Future {
            unary.extend(["Y", "WY"]);
            binary.extend(["S", "T"]);
        }
        if fragment == Fragment::Full {
            unary.push("X[]");
        }
        if n == 2 || self.rng.gen_bool(0.3) {
            let op = *unary.choose(&mut self.rng).expect("unary");
            let g = self.sized(fragment, n - 1);
            return match op {
                "!" => Formula::not(g),
                "X" => Formula::next(g),
                "WX" => Formula::weak_next(g),
                "F" => Formula::eventually(g),
                "G" => Formula::always(g),
                "Y" => Formula::prev(g),
                "WY" => Formula::weak_prev(g),
                _ => {
                    let i = self.interval();
                    Formula::metric_next(i, g)
                }
            };
        }
        let op = *binary.choose(&mut self.rng).expect("binary");
        let left = self.rng.gen_range(1..n - 1);
        let right = n - 1 - left;
        match op {
            "<>" | "[]" => {
                let p = self.path(fragment, left);
                let g = self.sized(fragment, right);
                if op == "<>" {
                    Formula::diamond(p, g)
                } else {
                    Formula::boxed(p, g)
                }
            }
            _ => {
                let a = self.sized(fragment, left);
                let b = self.sized(fragment, right);
                match op {
                    "&" => Formula::and(a, b),
                    "|" => Formula::or(a, b),
                    "->" => Formula::implies(a, b),
                    "U" => Formula::until(a, b),
                    "R" => Formula::release(a, b),
                    "S" => Formula::since(a, b),
                    _ => Formula::trigger(a, b),
                }
            }
        }
    }

    fn guard(&mut self, n: usize) -> Formula {
        match n {
            0 | 1 => self.leaf(),
            2 => Formula::not(self.leaf()),
            _ => {
                if self.rng.gen_bool(0.2) {
                    return Formula::not(self.guard(n - 1));
                }
                let left = self.rng.gen_range(1..n - 1);
                let (a, b) = (self.guard(left), self.guard(n - 1 - left));
                match self.rng.gen_range(0..3) {
                    0 => Formula::and(a, b),
                    1 => Formula::or(a, b),
                    _ => Formula::implies(a, b),
                }
            }
        }
    }

    fn path(&mut self, fragment: Fragment, n: usize) -> PathExpr {
        if n <= 1 {
            return PathExpr::step(self.guard(1));
        }
        match self.rng.gen_range(0..if n >= 3 { 5 } else { 3 }) {
            0 => PathExpr::step(self.guard(n)),
            1 => PathExpr::test(self.sized(fragment, n - 1)),
            2 => PathExpr::star(self.path(fragment, n - 1)),
            k => {
                let left = self.rng.gen_range(1..n - 1);
                let p = self.path(fragment, left);
                let q = self.path(fragment, n - 1 - left);
                if k == 3 {
                    PathExpr::seq(p, q)
                } else {
                    PathExpr::alt(p, q)
                }
            }
        }
    }

    pub fn letter(&mut self) -> Letter {
        let atoms: Vec<String> = self
            .atoms
            .clone()
            .into_iter()
            .filter(|_| self.rng.gen_bool(0.5))
            .collect();
        Letter::from_atoms(atoms)
    }

    pub fn trace(&mut self, max_len: usize) -> Trace {
        let n = self.rng.gen_range(0..=max_len);
        Trace::new((0..n).map(|_| self.letter()).collect())
    }

    /// A non-empty timed trace with non-decreasing times.
    pub fn timed_trace(&mut self, max_len: usize) -> TimedTrace {
        let n = self.rng.gen_range(1..=max_len.max(1));
        let letters: Vec<Letter> = (0..n).map(|_| self.letter()).collect();
        let mut now = 0;
        let times = (0..n)
            .map(|_| {
                now += self.rng.gen_range(0..20);
                now
            })
            .collect();
        TimedTrace::new(letters, times).expect("times are non-decreasing")
    }

    /// Up to `max_constraints` constraints over `1..=max_vars` variables with
    /// bounds drawn from `0..=max_bound`; about a quarter have no upper bound.
    pub fn constraint_system(
        &mut self,
        max_vars: usize,
        max_constraints: usize,
        max_bound: i64,
    ) -> ConstraintSystem {
        let n = self.rng.gen_range(1..=max_vars.max(1));
        if n == 1 {
            return ConstraintSystem::new(1, Vec::new());
        }
        let m = self.rng.gen_range(0..=max_constraints);
        let constraints = (0..m)
            .map(|_| {
                let i = self.rng.gen_range(0..n);
                let j = (i + self.rng.gen_range(1..n)) % n;
                let lo = self.rng.gen_range(0..=max_bound);
                let hi = if self.rng.gen_bool(0.25) {
                    None
                } else {
                    Some(self.rng.gen_range(lo..=max_bound))
                };
                DiffConstraint::new(i, j, lo, hi)
            })
            .collect();
        ConstraintSystem::new(n, constraints)
    }
}
