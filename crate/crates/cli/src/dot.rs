//! Graphviz DOT rendering of automata and 2AFA runs.
//!
//! Output is deterministic: states are emitted in ordinal order and edges
//! sharing a source, target set and label are merged, with letters listed in
//! index order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use ldlf::afa::Afa;
use ldlf::fa::{Dfa, Nfa};
use ldlf::pbf::Pbf;
use ldlf::trace::Alphabet;
use ldlf::twafa::{Marked, Move, RunGraph, TwoAfa};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn header(out: &mut String, name: &str) {
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  __start [shape=point];").unwrap();
}

fn state(out: &mut String, id: &str, label: &str, accepting: bool) {
    let shape = if accepting { "doublecircle" } else { "circle" };
    writeln!(out, "  {id} [shape={shape}, label=\"{}\"];", escape(label)).unwrap();
}

fn edge(out: &mut String, from: &str, to: &str, label: &str) {
    writeln!(out, "  {from} -> {to} [label=\"{}\"];", escape(label)).unwrap();
}

/// Hyper-edges keyed by (source, target set), each with the labels that
/// produce it.
type HyperEdges<T> = BTreeMap<(usize, BTreeSet<T>), Vec<String>>;

fn add_models<T: Ord + Clone>(edges: &mut HyperEdges<T>, q: usize, image: &Pbf<T>, label: String) {
    for model in image.minimal_models() {
        edges.entry((q, model)).or_default().push(label.clone());
    }
}

/// Emits hyper-edges: single targets directly, the empty conjunction into a
/// shared `true` sink, larger ones through a conjunction node.
fn hyper_edges<T: Ord>(
    out: &mut String,
    edges: &HyperEdges<T>,
    target: impl Fn(&T) -> (String, String),
) {
    let mut needs_true = false;
    for (k, ((q, model), labels)) in edges.iter().enumerate() {
        let label = labels.join(" ");
        let from = format!("q{q}");
        match model.len() {
            0 => {
                needs_true = true;
                edge(out, &from, "__true", &label);
            }
            1 => {
                let (to, suffix) = target(model.iter().next().unwrap());
                edge(out, &from, &to, &format!("{label}{suffix}"));
            }
            _ => {
                let and = format!("and{k}");
                writeln!(out, "  {and} [shape=box, label=\"∧\"];").unwrap();
                edge(out, &from, &and, &label);
                for t in model {
                    let (to, suffix) = target(t);
                    writeln!(
                        out,
                        "  {and} -> {to} [label=\"{}\"];",
                        escape(suffix.trim_start())
                    )
                    .unwrap();
                }
            }
        }
    }
    if needs_true {
        writeln!(out, "  __true [shape=plaintext, label=\"tt\"];").unwrap();
    }
}

pub fn afa_to_dot(a: &Afa) -> String {
    let mut out = String::new();
    header(&mut out, "afa");
    for q in 0..a.state_count() {
        state(
            &mut out,
            &format!("q{q}"),
            &a.states().get(q).to_string(),
            a.final_value(q),
        );
    }
    edge(&mut out, "__start", &format!("q{}", a.initial()), "");
    let mut edges = HyperEdges::new();
    for q in 0..a.state_count() {
        for letter in a.alphabet().letters() {
            add_models(&mut edges, q, &a.delta(q, &letter), letter.to_string());
        }
    }
    hyper_edges(&mut out, &edges, |&r| (format!("q{r}"), String::new()));
    out.push_str("}\n");
    out
}

pub fn twafa_to_dot(a: &TwoAfa) -> String {
    let mut out = String::new();
    header(&mut out, "twafa");
    for q in 0..a.state_count() {
        // acceptance is decided by the fixpoint, so no state is marked final
        state(&mut out, &format!("q{q}"), &a.state_label(q), false);
    }
    edge(&mut out, "__start", &format!("q{}", a.initial()), "");
    let letters: Vec<_> = a.alphabet().letters().collect();
    let mut marks = vec![Marked::Begin];
    marks.extend(letters.iter().map(Marked::Letter));
    marks.push(Marked::End);
    let mut edges = HyperEdges::new();
    for q in 0..a.state_count() {
        for &m in &marks {
            add_models(&mut edges, q, &a.transition(q, m), m.to_string());
        }
    }
    hyper_edges(&mut out, &edges, |&(r, mv): &(usize, Move)| {
        (format!("q{r}"), format!(" / {mv}"))
    });
    out.push_str("}\n");
    out
}

fn letter_edges(
    out: &mut String,
    alphabet: &Alphabet,
    rows: impl Iterator<Item = (usize, usize, usize)>,
) {
    let mut grouped: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for (s, x, t) in rows {
        grouped
            .entry((s, t))
            .or_default()
            .push(alphabet.letter(x).to_string());
    }
    for ((s, t), labels) in grouped {
        edge(out, &format!("s{s}"), &format!("s{t}"), &labels.join(" "));
    }
}

pub fn nfa_to_dot(n: &Nfa) -> String {
    let mut out = String::new();
    header(&mut out, "nfa");
    for s in 0..n.state_count() {
        state(
            &mut out,
            &format!("s{s}"),
            &s.to_string(),
            n.is_accepting(s),
        );
    }
    edge(&mut out, "__start", &format!("s{}", n.initial()), "");
    let letters = n.alphabet().letter_count();
    let rows = (0..n.state_count()).flat_map(|s| {
        (0..letters).flat_map(move |x| n.successors(s, x).iter().map(move |&t| (s, x, t)))
    });
    letter_edges(&mut out, n.alphabet(), rows);
    out.push_str("}\n");
    out
}

pub fn dfa_to_dot(d: &Dfa) -> String {
    let mut out = String::new();
    header(&mut out, "dfa");
    for s in 0..d.state_count() {
        state(
            &mut out,
            &format!("s{s}"),
            &s.to_string(),
            d.is_accepting(s),
        );
    }
    edge(&mut out, "__start", &format!("s{}", d.initial()), "");
    let letters = d.alphabet().letter_count();
    let rows = (0..d.state_count()).flat_map(|s| (0..letters).map(move |x| (s, x, d.next(s, x))));
    letter_edges(&mut out, d.alphabet(), rows);
    out.push_str("}\n");
    out
}

/// A 2AFA run: configurations labeled `state @ position`, accepted ones
/// double-circled.
pub fn run_to_dot(a: &TwoAfa, run: &RunGraph) -> String {
    let mut out = String::new();
    header(&mut out, "run");
    for (k, &(q, pos)) in run.nodes.iter().enumerate() {
        let label = format!("{} @ {pos}", a.state_label(q));
        state(&mut out, &format!("c{k}"), &label, run.accepted[k]);
    }
    edge(&mut out, "__start", "c0", "");
    for &(from, to, mv) in &run.edges {
        edge(
            &mut out,
            &format!("c{from}"),
            &format!("c{to}"),
            &mv.to_string(),
        );
    }
    out.push_str("}\n");
    out
}
