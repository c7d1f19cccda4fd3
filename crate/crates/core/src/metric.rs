//! Metric logic programs: universal rules whose heads may carry a metric
//! next, checked on timed traces or compiled to difference constraints on
//! untimed ones.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Result;
use crate::formula::Interval;
use crate::trace::{enumerate_traces_of_length, Alphabet, Letter, TimedTrace, Trace};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Head {
    /// Integrity constraint: the body must never hold.
    Constraint,
    Atom(String),
    /// `X[l,u) a`: `a` holds at the next step, `l <= Δt < u` later.
    Metric(Interval, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub atom: String,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: impl Into<String>) -> Self {
        Literal {
            atom: atom.into(),
            positive: true,
        }
    }

    pub fn neg(atom: impl Into<String>) -> Self {
        Literal {
            atom: atom.into(),
            positive: false,
        }
    }

    pub fn holds(&self, letter: &Letter) -> bool {
        letter.contains(&self.atom) == self.positive
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MetricRule {
    pub head: Head,
    pub body: Vec<Literal>,
}

impl MetricRule {
    pub fn body_holds(&self, letter: &Letter) -> bool {
        self.body.iter().all(|l| l.holds(letter))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MetricProgram {
    rules: Vec<MetricRule>,
}

impl MetricProgram {
    pub fn new(rules: Vec<MetricRule>) -> Self {
        MetricProgram { rules }
    }

    pub fn rules(&self) -> &[MetricRule] {
        &self.rules
    }

    /// Every atom the program mentions.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            match &r.head {
                Head::Constraint => {}
                Head::Atom(a) | Head::Metric(_, a) => {
                    out.insert(a.clone());
                }
            }
            out.extend(r.body.iter().map(|l| l.atom.clone()));
        }
        out
    }
}

impl fmt::Display for Head {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Head::Constraint => Ok(()),
            Head::Atom(a) => f.write_str(a),
            Head::Metric(i, a) => write!(f, "X{i} {a}"),
        }
    }
}

impl fmt::Display for MetricRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            if self.head != Head::Constraint {
                f.write_str(" ")?;
            }
            f.write_str(":- ")?;
            for (k, l) in self.body.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                if !l.positive {
                    f.write_str("not ")?;
                }
                f.write_str(&l.atom)?;
            }
        }
        f.write_str(".")
    }
}

impl fmt::Display for MetricProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// A rule whose body holds at `position` while its head fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Violation {
    pub rule: usize,
    pub position: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {} at step {}", self.rule, self.position)
    }
}

/// Violations in rule-major order. Extra atoms in the trace are ignored.
pub fn check_program(p: &MetricProgram, t: &TimedTrace) -> Vec<Violation> {
    let letters = t.letters();
    let times = t.times();
    let mut out = Vec::new();
    for (r, rule) in p.rules.iter().enumerate() {
        for i in 0..letters.len() {
            if !rule.body_holds(&letters[i]) {
                continue;
            }
            let ok = match &rule.head {
                Head::Constraint => false,
                Head::Atom(a) => letters[i].contains(a),
                Head::Metric(interval, a) => {
                    i + 1 < letters.len()
                        && letters[i + 1].contains(a)
                        && interval.contains(times[i + 1] - times[i])
                }
            };
            if !ok {
                out.push(Violation {
                    rule: r,
                    position: i,
                });
            }
        }
    }
    out
}

/// `lo <= t_j - t_i <= hi`, with `hi = None` unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiffConstraint {
    pub i: usize,
    pub j: usize,
    pub lo: i64,
    pub hi: Option<i64>,
}

impl DiffConstraint {
    pub fn new(i: usize, j: usize, lo: i64, hi: Option<i64>) -> Self {
        DiffConstraint { i, j, lo, hi }
    }

    pub fn satisfied_by(&self, times: &[i64]) -> bool {
        let d = times[self.j] - times[self.i];
        self.lo <= d && self.hi.is_none_or(|h| d <= h)
    }
}

impl fmt::Display for DiffConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= t{} - t{}", self.lo, self.j, self.i)?;
        if let Some(h) = self.hi {
            write!(f, " <= {h}")?;
        }
        Ok(())
    }
}

/// Difference constraints over `t_0..t_{n-1}`, all naturals, with `t_0 = 0`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub n_vars: usize,
    pub constraints: Vec<DiffConstraint>,
}

impl ConstraintSystem {
    pub fn new(n_vars: usize, constraints: Vec<DiffConstraint>) -> Self {
        assert!(
            constraints
                .iter()
                .all(|c| c.i < n_vars && c.j < n_vars && c.i != c.j),
            "constraint refers to a missing or repeated variable"
        );
        ConstraintSystem {
            n_vars,
            constraints,
        }
    }

    /// Whether `times` is a natural assignment with `t_0 = 0` meeting every constraint.
    pub fn satisfied_by(&self, times: &[i64]) -> bool {
        times.len() == self.n_vars
            && times.first().is_none_or(|&t0| t0 == 0)
            && times.iter().all(|&t| t >= 0)
            && self.constraints.iter().all(|c| c.satisfied_by(times))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TimeModel {
    #[default]
    NonDecreasing,
    /// Consecutive timestamps differ by at least 1.
    Strict,
}

/// Emits the difference constraints an untimed trace needs to satisfy `p`,
/// or every violation no choice of timestamps can repair.
pub fn extract_constraints(
    p: &MetricProgram,
    t: &Trace,
) -> std::result::Result<ConstraintSystem, Vec<Violation>> {
    extract_constraints_with(p, t, TimeModel::default())
}

pub fn extract_constraints_with(
    p: &MetricProgram,
    t: &Trace,
    model: TimeModel,
) -> std::result::Result<ConstraintSystem, Vec<Violation>> {
    let letters = t.letters();
    let mut violations = Vec::new();
    let mut constraints = Vec::new();
    for (r, rule) in p.rules.iter().enumerate() {
        for i in 0..letters.len() {
            if !rule.body_holds(&letters[i]) {
                continue;
            }
            let ok = match &rule.head {
                Head::Constraint => false,
                Head::Atom(a) => letters[i].contains(a),
                Head::Metric(interval, a) => {
                    let fired = i + 1 < letters.len() && letters[i + 1].contains(a);
                    if fired {
                        constraints.push(DiffConstraint::new(
                            i,
                            i + 1,
                            interval.lo as i64,
                            interval.closed_upper().map(|h| h as i64),
                        ));
                    }
                    fired
                }
            };
            if !ok {
                violations.push(Violation {
                    rule: r,
                    position: i,
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    let step = match model {
        TimeModel::NonDecreasing => 0,
        TimeModel::Strict => 1,
    };
    for i in 1..letters.len() {
        constraints.push(DiffConstraint::new(i - 1, i, step, None));
    }
    Ok(ConstraintSystem::new(letters.len(), constraints))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// The least solution, component-wise.
    Witness(Vec<u64>),
    /// Indices of constraints forming a negative cycle.
    Infeasible(Vec<usize>),
}

/// Solves by shortest paths to the anchor: with `d(v)` the shortest distance
/// from `v` to `t_0` in the constraint graph, `t_v = -d(v)` is the least
/// solution. Implicit zero-weight edges `v -> 0` encode `t_v >= 0`.
pub fn feasible(c: &ConstraintSystem) -> Feasibility {
    let n = c.n_vars;
    if n == 0 {
        return Feasibility::Witness(Vec::new());
    }
    // Edges of the reversed graph: (from, to, weight, constraint index).
    let mut edges: Vec<(usize, usize, i64, Option<usize>)> = Vec::new();
    for (k, d) in c.constraints.iter().enumerate() {
        // t_i - t_j <= -lo  is the edge j -> i, reversed to i -> j
        edges.push((d.i, d.j, -d.lo, Some(k)));
        if let Some(h) = d.hi {
            // t_j - t_i <= h  is the edge i -> j, reversed to j -> i
            edges.push((d.j, d.i, h, Some(k)));
        }
    }
    for v in 1..n {
        edges.push((0, v, 0, None));
    }

    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    dist[0] = Some(0);
    let mut relaxed_last = None;
    for _ in 0..n {
        relaxed_last = None;
        for (e, &(u, v, w, _)) in edges.iter().enumerate() {
            if let Some(du) = dist[u] {
                if dist[v].is_none_or(|dv| du + w < dv) {
                    dist[v] = Some(du + w);
                    pred[v] = Some(e);
                    relaxed_last = Some(v);
                }
            }
        }
        if relaxed_last.is_none() {
            break;
        }
    }

    if let Some(mut v) = relaxed_last {
        // n more steps back along predecessors land on the cycle
        for _ in 0..n {
            v = edges[pred[v].expect("relaxed vertex has a predecessor")].0;
        }
        let start = v;
        let mut cycle = Vec::new();
        loop {
            let e = pred[v].expect("cycle vertex has a predecessor");
            if let Some(k) = edges[e].3 {
                cycle.push(k);
            }
            v = edges[e].0;
            if v == start {
                break;
            }
        }
        cycle.sort_unstable();
        cycle.dedup();
        return Feasibility::Infeasible(cycle);
    }

    let times: Vec<i64> = dist
        .iter()
        .map(|d| -d.expect("every variable reaches the anchor"))
        .collect();
    assert!(
        c.satisfied_by(&times),
        "witness violates its constraint system"
    );
    Feasibility::Witness(times.into_iter().map(|t| t as u64).collect())
}

/// Every trace of exactly `horizon` letters over `ap` that can be timed to
/// satisfy `p`, paired with its least timestamps.
pub fn enumerate_models<'p>(
    p: &'p MetricProgram,
    ap: &Alphabet,
    horizon: usize,
) -> Result<impl Iterator<Item = TimedTrace> + 'p> {
    enumerate_models_with(p, ap, horizon, TimeModel::default())
}

pub fn enumerate_models_with<'p>(
    p: &'p MetricProgram,
    ap: &Alphabet,
    horizon: usize,
    model: TimeModel,
) -> Result<impl Iterator<Item = TimedTrace> + 'p> {
    Ok(
        enumerate_traces_of_length(ap, horizon)?.filter_map(move |t| {
            let system = extract_constraints_with(p, &t, model).ok()?;
            match feasible(&system) {
                Feasibility::Witness(times) => Some(
                    t.with_times(times)
                        .expect("least witness is non-decreasing and has one time per letter"),
                ),
                Feasibility::Infeasible(_) => None,
            }
        }),
    )
}
