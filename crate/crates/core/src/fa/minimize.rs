//! DFA minimization by partition refinement.
//!
//! [`minimize_seeded`] runs Hopcroft's algorithm with a seeded processing
//! order; [`minimize_moore`] is the signature-based Moore refinement. Both
//! return the quotient renumbered breadth-first from the initial state, so
//! equal languages give equal values.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dfa::Dfa;

pub fn minimize(d: &Dfa) -> Dfa {
    minimize_seeded(d, 0)
}

/// Restriction to reachable states, renumbered breadth-first.
fn canonical(d: &Dfa) -> Dfa {
    let order = d.reachable();
    let mut renum = vec![usize::MAX; d.state_count()];
    for (new, &old) in order.iter().enumerate() {
        renum[old] = new;
    }
    let transitions = order
        .iter()
        .map(|&s| d.table()[s].iter().map(|&t| renum[t]).collect())
        .collect();
    let accepting = order.iter().map(|&s| d.is_accepting(s)).collect();
    Dfa::from_parts(d.alphabet().clone(), 0, transitions, accepting)
}

/// Quotient of a trimmed DFA by a block assignment.
fn quotient(d: &Dfa, block_of: &[usize], blocks: usize) -> Dfa {
    let mut transitions = vec![Vec::new(); blocks];
    let mut accepting = vec![false; blocks];
    let mut done = vec![false; blocks];
    for s in 0..d.state_count() {
        let b = block_of[s];
        if !done[b] {
            done[b] = true;
            transitions[b] = d.table()[s].iter().map(|&t| block_of[t]).collect();
            accepting[b] = d.is_accepting(s);
        }
    }
    canonical(&Dfa::from_parts(
        d.alphabet().clone(),
        block_of[d.initial()],
        transitions,
        accepting,
    ))
}

/// Hopcroft refinement; `seed` permutes the splitter and letter order.
pub fn minimize_seeded(d: &Dfa, seed: u64) -> Dfa {
    let d = canonical(d);
    let n = d.state_count();
    let letters = d.alphabet().letter_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut inverse = vec![vec![Vec::new(); n]; letters];
    for s in 0..n {
        for (x, &t) in d.table()[s].iter().enumerate() {
            inverse[x][t].push(s);
        }
    }

    let (acc, rej): (Vec<usize>, Vec<usize>) = (0..n).partition(|&s| d.is_accepting(s));
    let mut blocks: Vec<Vec<usize>> = [acc, rej].into_iter().filter(|b| !b.is_empty()).collect();
    blocks.shuffle(&mut rng);
    let mut block_of = vec![0; n];
    for (b, members) in blocks.iter().enumerate() {
        for &s in members {
            block_of[s] = b;
        }
    }
    let mut worklist: Vec<usize> = (0..blocks.len()).collect();
    let mut in_worklist = vec![true; blocks.len()];
    let mut letter_order: Vec<usize> = (0..letters).collect();
    let mut marked = vec![false; n];

    while !worklist.is_empty() {
        let pick = rng.gen_range(0..worklist.len());
        let splitter = worklist.swap_remove(pick);
        in_worklist[splitter] = false;
        let splitter_states = blocks[splitter].clone();
        letter_order.shuffle(&mut rng);

        for &x in &letter_order {
            let mut preds = Vec::new();
            for &t in &splitter_states {
                for &s in &inverse[x][t] {
                    if !marked[s] {
                        marked[s] = true;
                        preds.push(s);
                    }
                }
            }
            let mut touched: Vec<usize> = preds.iter().map(|&s| block_of[s]).collect();
            touched.sort_unstable();
            touched.dedup();
            for y in touched {
                let (inside, outside): (Vec<usize>, Vec<usize>) =
                    blocks[y].iter().partition(|&&s| marked[s]);
                if outside.is_empty() {
                    continue;
                }
                let new = blocks.len();
                for &s in &outside {
                    block_of[s] = new;
                }
                let smaller_is_new = outside.len() <= inside.len();
                blocks[y] = inside;
                blocks.push(outside);
                in_worklist.push(false);
                if in_worklist[y] {
                    worklist.push(new);
                    in_worklist[new] = true;
                } else {
                    let chosen = if smaller_is_new { new } else { y };
                    worklist.push(chosen);
                    in_worklist[chosen] = true;
                }
            }
            for s in preds {
                marked[s] = false;
            }
        }
    }
    quotient(&d, &block_of, blocks.len())
}

/// Moore refinement: split by (block, successor blocks) signatures until stable.
pub fn minimize_moore(d: &Dfa) -> Dfa {
    let d = canonical(d);
    let n = d.state_count();
    let mut block_of: Vec<usize> = (0..n).map(|s| usize::from(d.is_accepting(s))).collect();
    let mut count = block_of
        .iter()
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|s| {
                let sig = (
                    block_of[s],
                    d.table()[s]
                        .iter()
                        .map(|&t| block_of[t])
                        .collect::<Vec<_>>(),
                );
                let fresh = ids.len();
                *ids.entry(sig).or_insert(fresh)
            })
            .collect();
        block_of = next;
        if ids.len() == count {
            break;
        }
        count = ids.len();
    }
    quotient(&d, &block_of, count)
}

/// Isomorphism of the reachable parts.
pub fn isomorphic(a: &Dfa, b: &Dfa) -> bool {
    a.alphabet() == b.alphabet() && canonical(a) == canonical(b)
}
