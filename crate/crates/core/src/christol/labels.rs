//! Labels read off the Hensel expansion: every vertex is reached by some
//! word, and its label is the root coefficient at the integer that word
//! spells (least significant digit first).

use std::collections::VecDeque;

use crate::algebra::{hensel_root, BiPoly, TruncSeries};
use crate::dfao::Dfao;
use crate::error::{Error, Result};

/// For each state of `graph`, the integer spelled by a shortest path to it
/// from the start state.
pub fn reaching_integers(graph: &Dfao) -> Vec<Option<u128>> {
    let p = graph.p();
    let n = graph.num_states();
    let mut out: Vec<Option<u128>> = vec![None; n];
    let mut weight: Vec<u128> = vec![0; n];
    out[graph.start()] = Some(0);
    weight[graph.start()] = 1;
    let mut queue = VecDeque::from([graph.start()]);
    while let Some(s) = queue.pop_front() {
        let (k, w) = (out[s].expect("visited"), weight[s]);
        for r in 0..p {
            let t = graph.next(s, r);
            if out[t].is_none() {
                out[t] = Some(k + r as u128 * w);
                weight[t] = w.saturating_mul(p as u128);
                queue.push_back(t);
            }
        }
    }
    out
}

/// Labels of `graph` (an orbit graph of a root of `F`) computed from the
/// Hensel expansion of the root seeded by `seed`. Fails if some state needs
/// a coefficient beyond `cap`.
pub fn hensel_labels(graph: &Dfao, f: &BiPoly, seed: &TruncSeries, cap: usize) -> Result<Vec<u8>> {
    let ks = reaching_integers(graph);
    let max = ks.iter().flatten().copied().max().unwrap_or(0);
    if max >= cap as u128 {
        return Err(Error::CapsExhausted(format!(
            "a state is first reached at index {max}, beyond the coefficient cap {cap}"
        )));
    }
    let root = hensel_root(f, seed, max as usize + 1)?;
    Ok(ks.iter().map(|k| k.map_or(0, |k| root.coeff(k as usize))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_bipoly, parse_series};
    use crate::christol::{build_graph, DiagonalSpace};

    #[test]
    fn hensel_labels_agree_with_direct_labels() {
        let f = parse_bipoly("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t", 2).unwrap();
        let orbit = build_graph(&DiagonalSpace::new(&f).unwrap(), 1000).unwrap();
        let direct = DiagonalSpace::labels(&orbit.elements);
        let via_hensel = hensel_labels(&orbit.unlabeled(), &f, &parse_series("t+t^2", 2).unwrap(), 1 << 16).unwrap();
        assert_eq!(direct, via_hensel);
    }
}
