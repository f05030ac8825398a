//! Deterministic finite automata with output (DFAOs) reading base-p digits
//! least significant first, and the power series they generate.

mod codec;
mod minimize;
mod ops;
mod pattern;

use std::collections::VecDeque;
use std::fmt;

use crate::algebra::{fp, FpPoly, TruncSeries};
use crate::error::{Error, Result};

pub use ops::{add_series, mul_by_binomial, polynomial_automaton, product, shift_by};
pub use pattern::SupportPattern;

/// A p-automaton with output labels in F_p.
///
/// States are numbered `0..n`; the transition on digit `r` from state `s`
/// is `trans[s * p + r]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dfao {
    p: u32,
    labels: Vec<u8>,
    trans: Vec<u32>,
    start: usize,
}

/// A violated automaton invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The state cannot be reached from the start state.
    Inaccessible { state: usize },
    /// `label(δ(s, 0)) ≠ label(s)`.
    LeadingZeros { state: usize, target: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Inaccessible { state } => write!(f, "state {} is inaccessible", state + 1),
            Violation::LeadingZeros { state, target } => write!(
                f,
                "0-edge from state {} to state {} changes the label",
                state + 1,
                target + 1
            ),
        }
    }
}

impl Dfao {
    /// Builds an automaton, checking shapes, ranges and the modulus.
    pub fn new(p: u32, labels: Vec<u8>, trans: Vec<u32>, start: usize) -> Result<Self> {
        fp::check_prime(p)?;
        let n = labels.len();
        if n == 0 || start >= n {
            return Err(Error::Precondition("automaton needs a valid start state".into()));
        }
        if trans.len() != n * p as usize {
            return Err(Error::Precondition(format!(
                "expected {} transitions, got {}",
                n * p as usize,
                trans.len()
            )));
        }
        if trans.iter().any(|&t| t as usize >= n) {
            return Err(Error::Precondition("transition target out of range".into()));
        }
        if labels.iter().any(|&l| l as u32 >= p) {
            return Err(Error::Precondition("label outside F_p".into()));
        }
        Ok(Dfao {
            p,
            labels,
            trans,
            start,
        })
    }

    /// The one-state automaton of the zero series.
    pub fn zero(p: u32) -> Self {
        Dfao {
            p,
            labels: vec![0],
            trans: vec![0; p as usize],
            start: 0,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn label(&self, s: usize) -> u8 {
        self.labels[s]
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    #[inline]
    pub fn next(&self, s: usize, r: u32) -> usize {
        self.trans[s * self.p as usize + r as usize] as usize
    }

    /// Same transitions with a different start state.
    pub fn with_start(&self, start: usize) -> Self {
        Dfao {
            start,
            ..self.clone()
        }
    }

    /// Same graph with new labels.
    pub fn with_labels(&self, labels: Vec<u8>) -> Self {
        assert_eq!(labels.len(), self.num_states());
        Dfao {
            labels,
            ..self.clone()
        }
    }

    /// Final state of the walk along `digits` from `s`.
    pub fn walk(&self, s: usize, digits: &[u32]) -> usize {
        digits.iter().fold(s, |s, &r| self.next(s, r))
    }

    /// Digits of `k` in base p, least significant first (`0` ↦ empty word).
    pub fn digits(&self, mut k: u128) -> Vec<u32> {
        let mut out = Vec::new();
        while k > 0 {
            out.push((k % self.p as u128) as u32);
            k /= self.p as u128;
        }
        out
    }

    /// Coefficient `a_k`: the label reached by reading the base-p digits of
    /// `k` least significant first.
    pub fn coeff_at(&self, k: u128) -> u8 {
        self.labels[self.walk(self.start, &self.digits(k))]
    }

    /// States reached by all `k < n`, each walked with exactly as many digits
    /// as the longest index needs (built by appending one digit at a time).
    fn states_up_to(&self, n: usize) -> Vec<u32> {
        let mut states = vec![self.start as u32];
        let p = self.p as usize;
        while states.len() < n {
            let len = states.len();
            let mut next = Vec::with_capacity(len * p);
            for r in 0..p {
                next.extend(states.iter().map(|&s| self.trans[s as usize * p + r]));
            }
            states = next;
        }
        states.truncate(n);
        states
    }

    /// `a_0 + a_1 t + … + a_{n−1} t^{n−1} + O(t^n)`.
    pub fn series_prefix(&self, n: usize) -> TruncSeries {
        let states = self.states_up_to(n);
        TruncSeries::new(self.p, states.iter().map(|&s| self.labels[s as usize]).collect())
    }

    /// Accessibility flags from the start state.
    pub fn accessible(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.start]);
        seen[self.start] = true;
        while let Some(s) = queue.pop_front() {
            for r in 0..self.p {
                let t = self.next(s, r);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Checks accessibility and leading-zeros invariance (the edge count is
    /// guaranteed by construction).
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (s, ok) in self.accessible().into_iter().enumerate() {
            if !ok {
                out.push(Violation::Inaccessible { state: s });
            }
        }
        for s in 0..self.num_states() {
            let t = self.next(s, 0);
            if self.labels[t] != self.labels[s] {
                out.push(Violation::LeadingZeros { state: s, target: t });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Renumbers the accessible part in BFS order from the start, digits
    /// ascending. Inaccessible states are dropped.
    pub fn canonical(&self) -> Dfao {
        let n = self.num_states();
        let p = self.p as usize;
        let mut index = vec![u32::MAX; n];
        let mut order = vec![self.start];
        index[self.start] = 0;
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for r in 0..p {
                let t = self.trans[s * p + r] as usize;
                if index[t] == u32::MAX {
                    index[t] = order.len() as u32;
                    order.push(t);
                }
            }
        }
        let labels = order.iter().map(|&s| self.labels[s]).collect();
        let mut trans = Vec::with_capacity(order.len() * p);
        for &s in &order {
            for r in 0..p {
                trans.push(index[self.trans[s * p + r] as usize]);
            }
        }
        Dfao {
            p: self.p,
            labels,
            trans,
            start: 0,
        }
    }

    /// Removes inaccessible states (same series).
    pub fn prune(&self) -> Dfao {
        self.canonical()
    }

    /// Whether every transition of `s` is a self-loop.
    pub fn is_absorbing(&self, s: usize) -> bool {
        (0..self.p).all(|r| self.next(s, r) == s)
    }

    /// Whether two automata generate the same sequence.
    pub fn equal_series(&self, other: &Dfao) -> bool {
        self.p == other.p && self.minimize() == other.minimize()
    }

    /// Graphviz description (layout is left to external tools).
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph dfao {\n  rankdir=LR;\n  start [shape=point];\n");
        s.push_str(&format!("  start -> q{};\n", self.start + 1));
        for q in 0..self.num_states() {
            s.push_str(&format!("  q{} [label=\"{}/{}\"];\n", q + 1, q + 1, self.labels[q]));
        }
        for q in 0..self.num_states() {
            for r in 0..self.p {
                s.push_str(&format!("  q{} -> q{} [label=\"{}\"];\n", q + 1, self.next(q, r) + 1, r));
            }
        }
        s.push_str("}\n");
        s
    }

    /// The automaton of the polynomial `Σ c_i t^i`.
    pub fn from_polynomial(f: &FpPoly) -> Dfao {
        polynomial_automaton(f)
    }
}

impl fmt::Debug for Dfao {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
