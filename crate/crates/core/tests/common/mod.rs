//! Strategies and property checks shared by the proptest suite and the
//! acceptance harness's randomized backstop.

#![allow(dead_code)]

use autseries::algebra::{hensel_root, hensel_root_coefficientwise, BiPoly, FpPoly, TruncSeries};
use autseries::classify::{counting_function, decompose_sparse, is_sparse, Sparseness};
use autseries::dfao::Dfao;
use autseries::nottingham::WittVec;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

type Check = Result<(), TestCaseError>;

/// Labels constant on the components of the 0-edges, so that the automaton
/// ignores leading zeros.
fn zero_invariant_labels(p: u32, trans: &[u32], bits: &[u8]) -> Vec<u8> {
    let k = bits.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for s in 0..k {
        let (a, b) = (find(&mut parent, s), find(&mut parent, trans[s * p as usize] as usize));
        parent[a] = b;
    }
    (0..k).map(|s| bits[find(&mut parent, s)]).collect()
}

/// Random automaton over `p` on `1..=max_states` states that ignores
/// leading zeros (start state 0; not necessarily accessible or minimal).
pub fn arb_dfao(p: u32, max_states: usize) -> impl Strategy<Value = Dfao> {
    (1..=max_states).prop_flat_map(move |k| {
        (
            prop::collection::vec(0..k as u32, k * p as usize),
            prop::collection::vec(0..p as u8, k),
        )
            .prop_map(move |(trans, bits)| {
                let labels = zero_invariant_labels(p, &trans, &bits);
                Dfao::new(p, labels, trans, 0).expect("well-formed automaton")
            })
    })
}

/// `a` with its states renumbered by a random permutation.
pub fn arb_renumbered(a: Dfao) -> impl Strategy<Value = (Dfao, Dfao)> {
    let k = a.num_states();
    Just((0..k).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(move |perm| {
            let p = a.p();
            let mut labels = vec![0; k];
            let mut trans = vec![0; k * p as usize];
            for s in 0..k {
                labels[perm[s]] = a.label(s);
                for r in 0..p {
                    trans[perm[s] * p as usize + r as usize] = perm[a.next(s, r)] as u32;
                }
            }
            let b = Dfao::new(p, labels, trans, perm[a.start()]).expect("renumbering");
            (a.clone(), b)
        })
}

pub fn arb_poly(p: u32, max_len: usize) -> impl Strategy<Value = FpPoly> {
    prop::collection::vec(0..p as u8, 0..=max_len).prop_map(move |c| FpPoly::new(p, c))
}

/// `X + t·(G(t, X) + c(t))`: its derivative in `X` is a unit at `X = 0`,
/// so the zero seed lifts to a unique root.
pub fn arb_hensel_equation(p: u32) -> impl Strategy<Value = BiPoly> {
    (
        prop::collection::vec(arb_poly(p, 4), 1..=4),
        arb_poly(p, 4),
    )
        .prop_map(move |(g, c)| {
            let mut rows: Vec<FpPoly> = g.iter().map(|r| r.shift(1)).collect();
            rows[0] = &rows[0] + &c.shift(1);
            let x = BiPoly::monomial(p, 1, 0, 1);
            let rest = BiPoly::new(p, rows);
            &rest + &x
        })
}

pub fn arb_witt(len: usize) -> impl Strategy<Value = WittVec<FpPoly>> {
    prop::collection::vec(arb_poly(2, 4), len).prop_map(|c| WittVec::new(c).expect("length 2 or 3"))
}

/// `f = Σ_r t^r · (C_r f)(t^p)`.
pub fn check_cartier_reconstruction(f: &FpPoly) -> Check {
    let p = f.p();
    let mut sum = FpPoly::zero(p);
    for r in 0..p {
        sum = &sum + &f.cartier(r).expect("digit below p").frobenius_stretch().shift(r as usize);
    }
    prop_assert_eq!(&sum, f);
    Ok(())
}

/// The lifted root is a root modulo `t^n` and agrees with the
/// coefficient-by-coefficient lift.
pub fn check_hensel_residual(f: &BiPoly, n: usize) -> Check {
    let p = f.p();
    let seed = TruncSeries::zero(p, 1);
    let root = hensel_root(f, &seed, n).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(root.precision(), n);
    let residual = TruncSeries::eval_poly(f, &root);
    prop_assert!(residual.valuation().is_none(), "F(root) = {} for F = {}", residual, f);
    let slow = hensel_root_coefficientwise(f, &seed, n).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(root, slow);
    Ok(())
}

pub fn check_minimize_idempotent(a: &Dfao) -> Check {
    let m = a.minimize();
    prop_assert!(m.is_minimal());
    prop_assert!(m.num_states() <= a.num_states());
    prop_assert!(m.equal_series(a));
    prop_assert_eq!(&m.minimize(), &m);
    Ok(())
}

/// Reflexivity, symmetry, invariance under renumbering, transitivity
/// through the minimized automaton, and agreement with a prefix oracle: a
/// distinguishing word has length below the number of state pairs, so the
/// series agree iff they agree on indices below `p^(|a|·|b|)`.
pub fn check_equal_series_laws(a: &Dfao, renumbered: &Dfao, b: &Dfao) -> Check {
    prop_assert!(a.equal_series(a));
    prop_assert!(a.equal_series(renumbered) && renumbered.equal_series(a));
    let m = a.minimize();
    prop_assert!(renumbered.equal_series(&m));
    prop_assert_eq!(a.equal_series(b), b.equal_series(a));
    let pairs = (a.num_states() * b.num_states()) as u32;
    if pairs <= 12 {
        let bound = (a.p() as usize).pow(pairs);
        let oracle = a.series_prefix(bound) == b.series_prefix(bound);
        prop_assert_eq!(a.equal_series(b), oracle);
    }
    Ok(())
}

/// The digit DP agrees with brute force; a sparse verdict's patterns cover
/// exactly the support and have the stated rank; a non-sparse witness
/// replays and forces exponentially many nonzero coefficients.
pub fn check_counting_and_rank(a: &Dfao, n: u128) -> Check {
    let brute = (0..=n).filter(|&k| a.coeff_at(k) != 0).count() as u128;
    prop_assert_eq!(counting_function(a, n), brute);
    let verdict = is_sparse(a).map_err(|e| TestCaseError::fail(e.to_string()))?;
    match verdict {
        Sparseness::Sparse { rank } => {
            let patterns = decompose_sparse(a).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let bound = 1u128 << 11;
            let mut members: Vec<u128> = patterns.iter().flat_map(|q| q.members_below(bound)).collect();
            members.sort_unstable();
            members.dedup();
            let support: Vec<u128> = (0..bound).filter(|&k| a.coeff_at(k) != 0).collect();
            prop_assert_eq!(members, support);
            if !patterns.is_empty() {
                prop_assert_eq!(patterns.iter().map(|q| q.rank()).max(), Some(rank));
            }
        }
        Sparseness::NotSparse(w) => {
            prop_assert!(w.verify(a));
            let j = 8u32;
            let len = w.path.len() + j as usize * w.loops.0.len() + w.to_nonzero.len();
            if a.p() == 2 && len < 127 {
                prop_assert!(counting_function(a, (1u128 << len) - 1) >= 1u128 << j);
            }
        }
    }
    Ok(())
}

/// Commutative ring axioms of `W_n` with `0`, `1` and negation.
pub fn check_witt_axioms(a: &WittVec<FpPoly>, b: &WittVec<FpPoly>, c: &WittVec<FpPoly>) -> Check {
    let add = |x: &WittVec<FpPoly>, y: &WittVec<FpPoly>| x.add(y).expect("equal lengths");
    let mul = |x: &WittVec<FpPoly>, y: &WittVec<FpPoly>| x.mul(y).expect("equal lengths");
    prop_assert_eq!(add(a, b), add(b, a));
    prop_assert_eq!(mul(a, b), mul(b, a));
    prop_assert_eq!(add(&add(a, b), c), add(a, &add(b, c)));
    prop_assert_eq!(mul(&mul(a, b), c), mul(a, &mul(b, c)));
    prop_assert_eq!(mul(a, &add(b, c)), add(&mul(a, b), &mul(a, c)));
    prop_assert_eq!(add(a, &a.zero_like()), a.clone());
    prop_assert_eq!(mul(a, &a.one_like()), a.clone());
    prop_assert_eq!(add(a, &a.neg()), a.zero_like());
    prop_assert_eq!(a.sub(b).expect("equal lengths"), add(a, &b.neg()));
    Ok(())
}
