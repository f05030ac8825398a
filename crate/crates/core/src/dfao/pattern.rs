//! Simple sparse sets `{ v_r w_r^{ℓ_r} ⋯ v_1 w_1^{ℓ_1} v_0 : ℓ_i ≥ 0 }` of
//! integers written in base p (most significant digit first).

use std::collections::BTreeSet;
use std::fmt;

/// Words are stored most significant digit first, as they are written.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportPattern {
    pub p: u32,
    /// `v_0, …, v_r`.
    pub v: Vec<Vec<u8>>,
    /// `w_1, …, w_r` (each nonempty).
    pub w: Vec<Vec<u8>>,
}

/// One piece of the pattern read left to right.
enum Seg<'a> {
    Lit(&'a [u8]),
    Star(&'a [u8]),
}

impl SupportPattern {
    pub fn new(p: u32, v: Vec<Vec<u8>>, w: Vec<Vec<u8>>) -> Self {
        assert_eq!(v.len(), w.len() + 1, "need r+1 fixed words and r loops");
        assert!(w.iter().all(|x| !x.is_empty()), "loop words must be nonempty");
        SupportPattern { p, v, w }
    }

    /// Parses a written word such as `"101"` into digits.
    pub fn word(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    pub fn rank(&self) -> usize {
        self.w.len()
    }

    fn segments(&self) -> Vec<Seg<'_>> {
        let r = self.rank();
        let mut segs = Vec::new();
        for i in (0..=r).rev() {
            segs.push(Seg::Lit(&self.v[i]));
            if i > 0 {
                segs.push(Seg::Star(&self.w[i - 1]));
            }
        }
        segs
    }

    /// NFA positions are `(segment, offset)`; `closure` adds ε-moves.
    fn closure(&self, segs: &[Seg<'_>], set: &mut BTreeSet<(usize, usize)>) {
        let mut stack: Vec<(usize, usize)> = set.iter().copied().collect();
        while let Some((s, o)) = stack.pop() {
            let mut push = |x: (usize, usize), st: &mut Vec<(usize, usize)>| {
                if set.insert(x) {
                    st.push(x);
                }
            };
            if s == segs.len() {
                continue;
            }
            match segs[s] {
                Seg::Lit(w) if o == w.len() => push((s + 1, 0), &mut stack),
                Seg::Star(w) if o == 0 || o == w.len() => {
                    push((s + 1, 0), &mut stack);
                    if o == w.len() {
                        push((s, 0), &mut stack);
                    }
                }
                _ => {}
            }
        }
    }

    fn step(&self, segs: &[Seg<'_>], set: &BTreeSet<(usize, usize)>, d: u8) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for &(s, o) in set {
            if s == segs.len() {
                continue;
            }
            let w = match segs[s] {
                Seg::Lit(w) | Seg::Star(w) => w,
            };
            if o < w.len() && w[o] == d {
                out.insert((s, o + 1));
            }
        }
        self.closure(segs, &mut out);
        out
    }

    /// Whether `k` is represented (leading zeros of a pattern word are
    /// allowed, so `0…0 word(k)` counts as a representation of `k`).
    pub fn contains(&self, k: u128) -> bool {
        let segs = self.segments();
        let mut set = BTreeSet::from([(0usize, 0usize)]);
        self.closure(&segs, &mut set);
        loop {
            let z = self.step(&segs, &set, 0);
            let before = set.len();
            set.extend(z);
            if set.len() == before {
                break;
            }
        }
        let mut digits = Vec::new();
        let mut x = k;
        while x > 0 {
            digits.push((x % self.p as u128) as u8);
            x /= self.p as u128;
        }
        for &d in digits.iter().rev() {
            set = self.step(&segs, &set, d);
            if set.is_empty() {
                return false;
            }
        }
        set.contains(&(segs.len(), 0))
    }

    /// All represented integers below `bound`, sorted.
    pub fn members_below(&self, bound: u128) -> Vec<u128> {
        let mut out = BTreeSet::new();
        let max_len = {
            let mut n = 0usize;
            let mut b = 1u128;
            while b < bound {
                b = b.saturating_mul(self.p as u128);
                n += 1;
            }
            n + 1
        };
        let segs = self.segments();
        self.gen(&segs, 0, 0, 0, max_len, bound, &mut out);
        out.into_iter().collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn gen(
        &self,
        segs: &[Seg<'_>],
        s: usize,
        value: u128,
        len: usize,
        max_len: usize,
        bound: u128,
        out: &mut BTreeSet<u128>,
    ) {
        if value >= bound && value > 0 {
            return;
        }
        if s == segs.len() {
            out.insert(value);
            return;
        }
        let p = self.p as u128;
        let append = |value: u128, w: &[u8]| -> u128 {
            w.iter().fold(value, |acc, &d| acc.saturating_mul(p).saturating_add(d as u128))
        };
        match segs[s] {
            Seg::Lit(w) => {
                if len + w.len() <= max_len + w.len() {
                    self.gen(segs, s + 1, append(value, w), len + w.len(), max_len, bound, out);
                }
            }
            Seg::Star(w) => {
                let mut v = value;
                let mut l = len;
                loop {
                    self.gen(segs, s + 1, v, l, max_len, bound, out);
                    v = append(v, w);
                    l += w.len();
                    if l > max_len + 64 || (v >= bound && v > 0) {
                        break;
                    }
                    if v == 0 && l > max_len {
                        break;
                    }
                }
            }
        }
    }
}

impl fmt::Display for SupportPattern {
    /// E.g. `1(01)*0` for `v_1 = 1, w_1 = 01, v_0 = 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |w: &[u8]| w.iter().map(|d| d.to_string()).collect::<String>();
        for i in (0..=self.rank()).rev() {
            write!(f, "{}", word(&self.v[i]))?;
            if i > 0 {
                write!(f, "({})*", word(&self.w[i - 1]))?;
            }
        }
        if self.v.iter().all(|v| v.is_empty()) && self.rank() == 0 {
            write!(f, "ε")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<u8> {
        SupportPattern::word(s)
    }

    #[test]
    fn membership_and_generation_agree() {
        // 10^{μ-1}(10^{μ-2})^ℓ 0 with μ = 3: 100(10)*0
        let pat = SupportPattern::new(2, vec![w("0"), w("100")], vec![w("10")]);
        let members = pat.members_below(1 << 12);
        assert_eq!(&members[..3], &[0b1000, 0b100100, 0b10010100]);
        for k in 0..(1u128 << 12) {
            assert_eq!(pat.contains(k), members.contains(&k), "k = {k}");
        }
        assert_eq!(pat.to_string(), "100(10)*0");
    }

    #[test]
    fn leading_zero_words() {
        let pat = SupportPattern::new(2, vec![w("01")], vec![]);
        assert!(pat.contains(1));
        assert!(!pat.contains(2));
    }
}
