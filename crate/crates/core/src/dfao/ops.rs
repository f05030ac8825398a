//! Series-level constructions on automata.

use std::collections::HashMap;
use std::collections::VecDeque;

use super::Dfao;
use crate::algebra::{fp, FpPoly};

/// Product automaton on the accessible state pairs, with labels combined by
/// `f`. The result is not minimized.
pub fn product(a: &Dfao, b: &Dfao, f: impl Fn(u8, u8) -> u8) -> Dfao {
    assert_eq!(a.p, b.p, "moduli differ");
    let p = a.p as usize;
    let mut index: HashMap<(u32, u32), u32> = HashMap::new();
    let mut order: Vec<(u32, u32)> = Vec::new();
    let start = (a.start as u32, b.start as u32);
    index.insert(start, 0);
    order.push(start);
    let mut trans = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let (x, y) = order[head];
        head += 1;
        for r in 0..p {
            let key = (a.trans[x as usize * p + r], b.trans[y as usize * p + r]);
            let id = *index.entry(key).or_insert_with(|| {
                order.push(key);
                (order.len() - 1) as u32
            });
            trans.push(id);
        }
    }
    let labels = order
        .iter()
        .map(|&(x, y)| f(a.labels[x as usize], b.labels[y as usize]))
        .collect();
    Dfao {
        p: a.p,
        labels,
        trans,
        start: 0,
    }
}

/// The automaton of the coefficientwise sum, minimized.
pub fn add_series(a: &Dfao, b: &Dfao) -> Dfao {
    let p = a.p;
    product(a, b, |x, y| fp::add(x, y, p)).minimize()
}

/// The automaton of `t^m · σ` (that is `b_k = a_{k−m}`, `b_k = 0` for
/// `k < m`), built by composing with the LSB-first subtraction of `m`.
pub fn shift_by(a: &Dfao, m: u64) -> Dfao {
    let p = a.p;
    let mdigits = a.digits(m as u128);
    let len = mdigits.len();
    // Composed state: (state of `a`, digits consumed capped at len, borrow).
    type Key = (u32, u32, u8);
    let step = |(s, pos, borrow): Key, r: u32| -> Key {
        let md = mdigits.get(pos as usize).copied().unwrap_or(0);
        let mut v = r as i64 - md as i64 - borrow as i64;
        let nb = if v < 0 {
            v += p as i64;
            1
        } else {
            0
        };
        let ns = a.next(s as usize, v as u32) as u32;
        (ns, (pos + 1).min(len as u32), nb)
    };
    let label = |mut key: Key| -> u8 {
        while (key.1 as usize) < len {
            key = step(key, 0);
        }
        if key.2 == 1 {
            0
        } else {
            a.labels[key.0 as usize]
        }
    };
    let mut index: HashMap<Key, u32> = HashMap::new();
    let mut order: Vec<Key> = Vec::new();
    let start: Key = (a.start as u32, 0, 0);
    index.insert(start, 0);
    order.push(start);
    let mut trans = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some(key) = queue.pop_front() {
        for r in 0..p {
            let nk = step(key, r);
            let id = *index.entry(nk).or_insert_with(|| {
                order.push(nk);
                queue.push_back(nk);
                (order.len() - 1) as u32
            });
            trans.push(id);
        }
    }
    let labels = order.iter().map(|&k| label(k)).collect();
    Dfao {
        p,
        labels,
        trans,
        start: 0,
    }
    .minimize()
}

/// The automaton of `(t^m + 1) · σ`.
pub fn mul_by_binomial(a: &Dfao, m: u64) -> Dfao {
    add_series(a, &shift_by(a, m))
}

/// The minimal automaton of a polynomial.
pub fn polynomial_automaton(f: &FpPoly) -> Dfao {
    let p = f.p() as u64;
    let deg = f.degree().unwrap_or(0) as u64;
    // Smallest number of digits after which every further nonzero digit
    // overshoots the degree.
    let mut cap = 0u32;
    while p.pow(cap) <= deg {
        cap += 1;
    }
    // Key: (value read so far, digits read capped at `cap`); `None` is dead.
    type Key = Option<(u64, u32)>;
    let mut index: HashMap<Key, u32> = HashMap::new();
    let mut order: Vec<Key> = vec![Some((0, 0))];
    index.insert(Some((0, 0)), 0);
    let mut trans = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let key = order[head];
        head += 1;
        for r in 0..p {
            let nk = match key {
                None => None,
                Some((v, j)) => {
                    if j >= cap {
                        if r == 0 {
                            Some((v, j))
                        } else {
                            None
                        }
                    } else {
                        let nv = v + r * p.pow(j);
                        if nv > deg && r != 0 {
                            None
                        } else {
                            Some((nv, j + 1))
                        }
                    }
                }
            };
            let id = *index.entry(nk).or_insert_with(|| {
                order.push(nk);
                (order.len() - 1) as u32
            });
            trans.push(id);
        }
    }
    let labels = order
        .iter()
        .map(|k| k.map_or(0, |(v, _)| f.coeff(v as usize)))
        .collect();
    Dfao {
        p: f.p(),
        labels,
        trans,
        start: 0,
    }
    .minimize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TruncSeries;

    fn all_ones() -> Dfao {
        // a_0 = 0, a_k = 1 for k ≥ 1.
        Dfao::new(2, vec![0, 1], vec![0, 1, 1, 1], 0).unwrap()
    }

    #[test]
    fn shift_of_all_ones() {
        let s = shift_by(&all_ones(), 3);
        assert_eq!(s.coeff_at(2), 0);
        assert_eq!(s.coeff_at(3), 0);
        assert_eq!(s.coeff_at(4), 1);
        assert_eq!(s.coeff_at(5), 1);
    }

    #[test]
    fn identity_series_has_three_states() {
        let t = polynomial_automaton(&FpPoly::monomial(2, 1, 1));
        assert_eq!(t.num_states(), 3);
        assert_eq!(t.series_prefix(10).support(), vec![1]);
    }

    #[test]
    fn sum_of_monomials() {
        let a = polynomial_automaton(&FpPoly::monomial(2, 1, 1));
        let b = polynomial_automaton(&FpPoly::monomial(2, 1, 2));
        let s = add_series(&a, &b);
        assert!(s.equal_series(&polynomial_automaton(&FpPoly::from_exponents(2, &[1, 2]))));
        assert_eq!(add_series(&a, &a).num_states(), 1);
    }

    #[test]
    fn polynomial_automata_reproduce_coefficients() {
        for exps in [vec![0], vec![5, 9, 17], vec![1, 2, 3, 4, 6]] {
            let f = FpPoly::from_exponents(2, &exps);
            let a = polynomial_automaton(&f);
            assert!(a.is_valid());
            assert_eq!(a.series_prefix(64), TruncSeries::from_poly(&f, 64));
        }
        let g = FpPoly::new(3, vec![0, 2, 0, 1]);
        assert_eq!(polynomial_automaton(&g).series_prefix(30), TruncSeries::from_poly(&g, 30));
    }
}
