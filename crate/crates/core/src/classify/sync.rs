//! Synchronizing words and absorbing states.

use std::collections::VecDeque;

use super::sparse::tied_witness;
use crate::dfao::Dfao;

/// Result of the synchronization analysis (on the accessible part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncReport {
    /// States all of whose transitions are self-loops (indices of the pruned
    /// automaton, which numbers states in BFS order from the start).
    pub absorbing: Vec<usize>,
    /// A synchronizing word in reading order, if the automaton has one.
    pub word: Option<Vec<u32>>,
    /// Two states that no word merges, if the automaton is not
    /// synchronizing.
    pub obstruction: Option<(usize, usize)>,
    /// For minimal sparse automata: whether there is exactly one absorbing
    /// state and every state reaches it.
    pub sparse_minimal_check: Option<bool>,
}

impl SyncReport {
    pub fn is_synchronizing(&self) -> bool {
        self.word.is_some()
    }
}

/// Whether reading `w` from every state of `a` ends in one state.
pub fn is_synchronizing_word(a: &Dfao, w: &[u32]) -> bool {
    let a = a.prune();
    let end = a.walk(0, w);
    (0..a.num_states()).all(|s| a.walk(s, w) == end)
}

/// Decides synchronizability by pair merging and builds a word greedily.
pub fn sync_analysis(a: &Dfao) -> SyncReport {
    let a = a.prune();
    let n = a.num_states();
    let p = a.p();
    let absorbing: Vec<usize> = (0..n).filter(|&s| a.is_absorbing(s)).collect();
    // Backward BFS on unordered pairs from the diagonal; `step[pair]` is a
    // digit that moves the pair strictly closer to the diagonal.
    let idx = |u: usize, v: usize| if u <= v { u * n + v } else { v * n + u };
    let mut preds = vec![vec![Vec::new(); p as usize]; n];
    for s in 0..n {
        for r in 0..p {
            preds[a.next(s, r)][r as usize].push(s);
        }
    }
    let mut step: Vec<Option<u32>> = vec![None; n * n];
    let mut done = vec![false; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        done[idx(s, s)] = true;
        queue.push_back((s, s));
    }
    while let Some((x, y)) = queue.pop_front() {
        for r in 0..p as usize {
            for &u in &preds[x][r] {
                for &v in &preds[y][r] {
                    let k = idx(u, v);
                    if !done[k] {
                        done[k] = true;
                        step[k] = Some(r as u32);
                        queue.push_back((u, v));
                    }
                }
            }
        }
    }
    let obstruction = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .find(|&(u, v)| !done[idx(u, v)]);
    let word = obstruction.is_none().then(|| {
        let mut current: Vec<usize> = (0..n).collect();
        let mut word = Vec::new();
        loop {
            current.sort_unstable();
            current.dedup();
            if current.len() <= 1 {
                break word;
            }
            let (mut u, mut v) = (current[0], current[1]);
            while u != v {
                let r = step[idx(u, v)].expect("mergeable pair");
                word.push(r);
                u = a.next(u, r);
                v = a.next(v, r);
                for s in current.iter_mut() {
                    *s = a.next(*s, r);
                }
            }
        }
    });
    let sparse_minimal_check = (a.is_minimal() && tied_witness(&a).is_none()).then(|| {
        absorbing.len() == 1 && {
            let z = absorbing[0];
            (0..n).all(|s| super::sparse::path_to(&a, s, |t| t == z).is_some())
        }
    });
    SyncReport {
        absorbing,
        word,
        obstruction,
        sparse_minimal_check,
    }
}
