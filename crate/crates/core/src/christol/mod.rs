//! From algebraic equations to automata.
//!
//! A root `σ` of `F(t, X)` is encoded as a distinguished vector `s₀` of a
//! finite-dimensional F_p-space `V` on which the Cartier-type operators
//! `Λ_0, …, Λ_{p−1}` act; the orbit of `s₀` is the state set of an automaton
//! whose labels are the constant terms of the represented series.

mod diagonal;
mod labels;
mod ore;
mod solve;

use std::collections::HashMap;
use std::hash::Hash;

use crate::dfao::Dfao;
use crate::error::{Error, Result};

pub use diagonal::{diagonal_automaton, reduce, DiagonalSpace, Reduction};
pub use labels::{hensel_labels, reaching_integers};
pub use ore::{to_ore_form, OreForm, OreSpace};
pub use solve::{solve, space_dimension, Method, Solution, SolveOptions};

/// Default bound on the number of orbit elements.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

/// A finite-dimensional F_p-space with a start vector and `p` operators.
pub trait OperatorSpace {
    type Elem: Clone + Eq + Hash;
    fn p(&self) -> u32;
    /// Dimension of `V` over F_p.
    fn dim(&self) -> usize;
    fn start(&self) -> Self::Elem;
    fn apply(&self, r: u32, v: &Self::Elem) -> Self::Elem;
}

/// The orbit of `s₀` under the operators, with its transition structure.
#[derive(Clone, Debug)]
pub struct Orbit<E> {
    pub p: u32,
    /// Orbit elements in discovery (FIFO) order; element 0 is `s₀`.
    pub elements: Vec<E>,
    /// `trans[i * p + r]` is the index of `Λ_r(elements[i])`.
    pub trans: Vec<u32>,
}

impl<E> Orbit<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Attaches labels, giving an automaton with start state 0.
    pub fn to_dfao(&self, labels: Vec<u8>) -> Result<Dfao> {
        Dfao::new(self.p, labels, self.trans.clone(), 0)
    }

    /// Same graph with all labels zero (for label-agnostic callers).
    pub fn unlabeled(&self) -> Dfao {
        Dfao::new(self.p, vec![0; self.len()], self.trans.clone(), 0).expect("well-formed orbit")
    }
}

/// Work-list closure of `s₀` under all `Λ_r`.
pub fn build_graph<S: OperatorSpace>(space: &S, cap: usize) -> Result<Orbit<S::Elem>> {
    let p = space.p();
    let start = space.start();
    let mut index: HashMap<S::Elem, u32> = HashMap::new();
    index.insert(start.clone(), 0);
    let mut elements = vec![start];
    let mut trans = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let v = elements[head].clone();
        head += 1;
        for r in 0..p {
            let w = space.apply(r, &v);
            let id = match index.get(&w) {
                Some(&id) => id,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::OrbitCap { cap });
                    }
                    let id = elements.len() as u32;
                    index.insert(w.clone(), id);
                    elements.push(w);
                    id
                }
            };
            trans.push(id);
        }
    }
    Ok(Orbit { p, elements, trans })
}

/// An explicitly given space: row vectors acted on by right multiplication
/// with `p` square matrices over F_p.
#[derive(Clone, Debug)]
pub struct MatrixSpace {
    pub p: u32,
    pub start: Vec<u8>,
    /// `matrices[r][i][j]`.
    pub matrices: Vec<Vec<Vec<u8>>>,
}

impl MatrixSpace {
    pub fn new(p: u32, start: Vec<u8>, matrices: Vec<Vec<Vec<u8>>>) -> Result<Self> {
        let n = start.len();
        if matrices.len() != p as usize
            || matrices.iter().any(|m| m.len() != n || m.iter().any(|row| row.len() != n))
        {
            return Err(Error::Precondition("need p square matrices matching the vector length".into()));
        }
        Ok(MatrixSpace { p, start, matrices })
    }
}

impl OperatorSpace for MatrixSpace {
    type Elem = Vec<u8>;
    fn p(&self) -> u32 {
        self.p
    }
    fn dim(&self) -> usize {
        self.start.len()
    }
    fn start(&self) -> Vec<u8> {
        self.start.clone()
    }
    fn apply(&self, r: u32, v: &Vec<u8>) -> Vec<u8> {
        let m = &self.matrices[r as usize];
        let n = v.len();
        (0..n)
            .map(|j| {
                let s: u32 = (0..n).map(|i| v[i] as u32 * m[i][j] as u32).sum();
                (s % self.p) as u8
            })
            .collect()
    }
}
