//! Membership in Ŝ (sparse up to multiplication by a rational function):
//! binomial multipliers for the positive direction, and vertex witnesses
//! for the negative direction.

use std::fmt;

use petgraph::algo::kosaraju_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::sparse::{is_sparse, path_to, tied_flags_any_start, tied_witness, word, Sparseness, TiedWitness};
use crate::dfao::{mul_by_binomial, Dfao};
use crate::error::Result;

/// Default largest binomial exponent tried.
pub const DEFAULT_MMAX: u64 = 64;

/// Why a series is in Ŝ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HatSYes {
    /// The series itself is sparse.
    Sparse { rank: usize },
    /// `(t^m + 1)σ` is sparse.
    Binomial { m: u64, rank: usize },
}

impl fmt::Display for HatSYes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HatSYes::Sparse { rank } => write!(f, "sparse of rank {rank}"),
            HatSYes::Binomial { m: 1, rank } => write!(f, "(t+1)·σ is sparse of rank {rank}"),
            HatSYes::Binomial { m, rank } => write!(f, "(t^{m}+1)·σ is sparse of rank {rank}"),
        }
    }
}

/// A vertex `v` reached by `prefix · loop^ℓ · suffix` for every `ℓ ≥ 0`
/// (reading order) such that moving the start to the `digit`-child of `v`
/// gives a non-sparse automaton while the other child gives a sparse one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatSWitness {
    pub prefix: Vec<u32>,
    pub cycle: Vec<u32>,
    pub suffix: Vec<u32>,
    /// The child whose automaton is not sparse.
    pub digit: u32,
    /// Tied-vertex witness in the automaton started at that child.
    pub tied: TiedWitness,
    /// Whether the sparse child is an absorbing state with output 0.
    pub sparse_child_is_zero_sink: bool,
}

impl HatSWitness {
    pub fn verify(&self, a: &Dfao) -> bool {
        if a.p() != 2 || self.cycle.is_empty() || self.digit > 1 {
            return false;
        }
        let v = a.walk(a.start(), &[self.prefix.as_slice(), &self.suffix].concat());
        let mut w = self.prefix.clone();
        for _ in 0..3 {
            w.extend(&self.cycle);
            if a.walk(a.start(), &[w.as_slice(), &self.suffix].concat()) != v {
                return false;
            }
        }
        let bad = a.with_start(a.next(v, self.digit)).prune();
        let good = a.with_start(a.next(v, 1 - self.digit)).prune();
        self.tied.verify(&bad) && tied_witness(&good).is_none()
    }
}

impl fmt::Display for HatSWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "walks {}·({})^ℓ·{} reach a vertex whose {}-child is not sparse and whose {}-child is sparse",
            word(&self.prefix),
            word(&self.cycle),
            word(&self.suffix),
            self.digit,
            1 - self.digit
        )
    }
}

/// Outcome of the Ŝ test on one automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HatS {
    Yes(HatSYes),
    No(HatSWitness),
    /// Neither arm succeeded within the bounds.
    Inconclusive { mmax: u64, vertices: usize },
}

/// Searches for a vertex witness (binary automata only). The sparse/not
/// sparse status of every start state is read off one tied-vertex
/// computation.
pub fn hats_witness(a: &Dfao) -> Option<HatSWitness> {
    if a.p() != 2 {
        return None;
    }
    let a = a.prune();
    let n = a.num_states();
    let tied = tied_flags_any_start(&a);
    // States reaching a tied vertex have non-sparse automata.
    let mut reaches_tied = tied.clone();
    loop {
        let mut changed = false;
        for s in 0..n {
            if !reaches_tied[s] && (0..2).any(|r| reaches_tied[a.next(s, r)]) {
                reaches_tied[s] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // Vertices reached by arbitrarily long walks: those reachable from a
    // nontrivial strongly connected component.
    let mut g: DiGraph<(), ()> = DiGraph::new();
    for _ in 0..n {
        g.add_node(());
    }
    for s in 0..n {
        for r in 0..2 {
            g.add_edge(NodeIndex::new(s), NodeIndex::new(a.next(s, r)), ());
        }
    }
    let sccs = kosaraju_scc(&g);
    let mut cyclic = vec![false; n];
    for c in &sccs {
        let nodes: Vec<usize> = c.iter().map(|x| x.index()).collect();
        if nodes.len() > 1 || (0..2).any(|r| a.next(nodes[0], r) == nodes[0]) {
            for &x in &nodes {
                cyclic[x] = true;
            }
        }
    }
    let mut preds = vec![Vec::new(); n];
    for s in 0..n {
        for r in 0..2 {
            preds[a.next(s, r)].push(s);
        }
    }
    for v in 0..n {
        let (c0, c1) = (a.next(v, 0), a.next(v, 1));
        if reaches_tied[c0] == reaches_tied[c1] {
            continue;
        }
        // A cyclic vertex from which v is reachable, and a cycle through it.
        let Some(c) = nearest_backwards(&preds, v, &cyclic) else {
            continue;
        };
        let prefix = path_to(&a, a.start(), |s| s == c).expect("accessible");
        let cycle = (0..2)
            .filter_map(|r| path_to(&a, a.next(c, r), |s| s == c).map(|mut w| {
                w.insert(0, r);
                w
            }))
            .min_by_key(Vec::len)
            .expect("cyclic vertex");
        let suffix = path_to(&a, c, |s| s == v).expect("reachable");
        let digit = if reaches_tied[c0] { 0 } else { 1 };
        let bad = a.with_start(a.next(v, digit)).prune();
        let tied = tied_witness(&bad).expect("child reaches a tied vertex");
        let sink = a.next(v, 1 - digit);
        return Some(HatSWitness {
            prefix,
            cycle,
            suffix,
            digit,
            tied,
            sparse_child_is_zero_sink: a.is_absorbing(sink) && a.label(sink) == 0,
        });
    }
    None
}

/// Closest state (backwards from `v`, `v` included) with `flag` set.
fn nearest_backwards(preds: &[Vec<usize>], v: usize, flag: &[bool]) -> Option<usize> {
    let mut seen = vec![false; preds.len()];
    seen[v] = true;
    let mut queue = std::collections::VecDeque::from([v]);
    while let Some(s) = queue.pop_front() {
        if flag[s] {
            return Some(s);
        }
        for &q in &preds[s] {
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
    None
}

/// The Ŝ test: sparse itself, a vertex witness against membership, or the
/// least `m ≤ mmax` with `(t^m + 1)σ` sparse.
///
/// The witness search runs before the binomial search: it is cheap, and the
/// two outcomes exclude each other.
pub fn hats_test(a: &Dfao, mmax: u64) -> Result<HatS> {
    if let Sparseness::Sparse { rank } = is_sparse(a)? {
        return Ok(HatS::Yes(HatSYes::Sparse { rank }));
    }
    if let Some(w) = hats_witness(a) {
        return Ok(HatS::No(w));
    }
    for m in 1..=mmax {
        let b = mul_by_binomial(a, m).minimize();
        if let Sparseness::Sparse { rank } = is_sparse(&b)? {
            return Ok(HatS::Yes(HatSYes::Binomial { m, rank }));
        }
    }
    Ok(HatS::Inconclusive {
        mmax,
        vertices: a.num_states(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfao::tests::klopsch3;

    #[test]
    fn klopsch_three_has_a_witness() {
        let a = klopsch3();
        match hats_test(&a, 8).unwrap() {
            HatS::No(w) => assert!(w.verify(&a), "{w}"),
            other => panic!("{other:?}"),
        }
    }
}
