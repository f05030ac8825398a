//! Exact counting of nonzero coefficients by digit dynamic programming.

use crate::dfao::Dfao;

/// `#{k ≤ n : a_k ≠ 0}`, computed over the digits of `n` without
/// enumerating indices. Relies on the automaton ignoring leading zeros.
pub fn counting_function(a: &Dfao, n: u128) -> u128 {
    let p = a.p();
    let digits = a.digits(n);
    let states = a.num_states();
    // cnt[s][le]: number of digit strings of the current length reaching
    // `s`, where `le` says whether the string (as a number) is at most the
    // same-length suffix of `n`.
    let mut cnt = vec![[0u128; 2]; states];
    cnt[a.start()][1] = 1;
    for &d in &digits {
        let mut next = vec![[0u128; 2]; states];
        for s in 0..states {
            for le in 0..2 {
                let c = cnt[s][le];
                if c == 0 {
                    continue;
                }
                for r in 0..p {
                    let t = a.next(s, r);
                    let nle = usize::from(r < d || (r == d && le == 1));
                    next[t][nle] += c;
                }
            }
        }
        cnt = next;
    }
    (0..states).filter(|&s| a.label(s) != 0).map(|s| cnt[s][1]).sum()
}
