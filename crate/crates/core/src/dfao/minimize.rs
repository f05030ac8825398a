//! Moore partition refinement.

use std::collections::HashMap;

use super::Dfao;

impl Dfao {
    /// The unique minimal automaton generating the same sequence, in
    /// canonical BFS numbering.
    pub fn minimize(&self) -> Dfao {
        let a = self.canonical();
        let n = a.num_states();
        let p = a.p as usize;
        // Initial partition by label.
        let mut class: Vec<u32> = a.labels.iter().map(|&l| l as u32).collect();
        let mut count = {
            let mut seen = [false; 256];
            a.labels.iter().for_each(|&l| seen[l as usize] = true);
            seen.iter().filter(|&&b| b).count()
        };
        let mut sig: Vec<u32> = vec![0; p + 1];
        loop {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::with_capacity(count * 2);
            let mut next = vec![0u32; n];
            for s in 0..n {
                sig[0] = class[s];
                for r in 0..p {
                    sig[r + 1] = class[a.trans[s * p + r] as usize];
                }
                let fresh = ids.len() as u32;
                next[s] = *ids.entry(sig.clone()).or_insert(fresh);
            }
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut labels = vec![0u8; count];
        let mut trans = vec![0u32; count * p];
        for s in 0..n {
            let c = class[s] as usize;
            labels[c] = a.labels[s];
            for r in 0..p {
                trans[c * p + r] = class[a.trans[s * p + r] as usize];
            }
        }
        Dfao {
            p: a.p,
            labels,
            trans,
            start: class[a.start] as usize,
        }
        .canonical()
    }

    /// Whether the automaton is already minimal.
    pub fn is_minimal(&self) -> bool {
        self.minimize().num_states() == self.num_states() && self.accessible().iter().all(|&b| b)
    }
}

#[cfg(test)]
mod tests {
    use super::super::Dfao;

    /// The 6-state orbit automaton of σ_min from the diagonal method.
    fn six_state() -> Dfao {
        Dfao::new(
            2,
            vec![0, 0, 1, 1, 0, 1],
            vec![1, 2, 1, 2, 3, 4, 3, 2, 4, 5, 2, 5],
            0,
        )
        .unwrap()
    }

    #[test]
    fn merges_to_five_states() {
        let m = six_state().minimize();
        assert_eq!(m.num_states(), 5);
        assert_eq!(m.series_prefix(8).support(), vec![1, 2, 4, 5, 7]);
        assert_eq!(m.minimize(), m);
    }

    #[test]
    fn permuted_states_are_equal() {
        let a = six_state();
        // Swap states 2 and 4.
        let perm = [0usize, 1, 4, 3, 2, 5];
        let mut labels = vec![0; 6];
        let mut trans = vec![0; 12];
        for s in 0..6 {
            labels[perm[s]] = a.label(s);
            for r in 0..2 {
                trans[perm[s] * 2 + r] = perm[a.next(s, r as u32)] as u32;
            }
        }
        let b = Dfao::new(2, labels, trans, 0).unwrap();
        assert!(a.equal_series(&b));
    }
}
