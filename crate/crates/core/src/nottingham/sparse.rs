//! Involutions of given depth: the Klopsch series and the sparse
//! representatives of their conjugacy classes.

use crate::algebra::{hensel_root, parse_bipoly, truncated_solutions, BiPoly, FpPoly, TruncSeries};
use crate::dfao::SupportPattern;
use crate::error::{Error, Result};

/// `(t^m + 1) X^m + t^m`.
pub fn klopsch_equation(m: u32) -> Result<BiPoly> {
    if m % 2 == 0 {
        return Err(Error::Precondition(format!("m = {m} must be odd")));
    }
    let m = m as usize;
    Ok(BiPoly::new(
        2,
        (0..=m)
            .map(|j| match j {
                0 => FpPoly::monomial(2, 1, m),
                j if j == m => FpPoly::from_exponents(2, &[0, m]),
                _ => FpPoly::zero(2),
            })
            .collect(),
    ))
}

/// The root `t/(1+t^m)^{1/m} = t + t^{m+1} + …` of [`klopsch_equation`],
/// modulo `t^n`.
pub fn klopsch(m: u32, n: usize) -> Result<TruncSeries> {
    let f = klopsch_equation(m)?;
    root_near_t(&f, n)
}

/// The unique root `t + O(t²)` of `f`, lifted to precision `n`.
fn root_near_t(f: &BiPoly, n: usize) -> Result<TruncSeries> {
    let seeds = truncated_solutions(f, Some(&TruncSeries::identity(2, 2)))?;
    let seed = match seeds.as_slice() {
        [s] => s,
        [] => return Err(Error::NoSeed),
        _ => return Err(Error::Precondition("several roots t + O(t^2)".into())),
    };
    Ok(hensel_root(f, seed, n.max(seed.precision()))?.truncate(n))
}

/// Admissible depths `m` of a sparse representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    One,
    /// `m = 2^μ − 1`, `μ ≥ 2`.
    Minus(u32),
    /// `m = 2^μ + 1`, `μ ≥ 2` (`μ = 1` coincides with `2² − 1`).
    Plus(u32),
}

fn shape(m: u32) -> Result<Shape> {
    if m == 1 {
        return Ok(Shape::One);
    }
    if (m + 1).is_power_of_two() && m >= 3 {
        return Ok(Shape::Minus((m + 1).trailing_zeros()));
    }
    if m >= 5 && (m - 1).is_power_of_two() {
        return Ok(Shape::Plus((m - 1).trailing_zeros()));
    }
    Err(Error::Precondition(format!("m = {m} is not 1 or 2^μ ± 1")))
}

/// A sparse involution of depth `m` with its support description.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseRep {
    pub m: u32,
    pub series: TruncSeries,
    /// An equation satisfied by the series (symmetric in `t` and `X`).
    pub equation: BiPoly,
    /// The support as a union of simple sparse sets, when it is given by a
    /// finite list of patterns; `None` for `m = 2^μ + 1`, whose support is
    /// described arithmetically (`m(ℓ−1)+1` with restricted binary `ℓ`).
    pub patterns: Option<Vec<SupportPattern>>,
}

fn word(s: &str) -> Vec<u8> {
    SupportPattern::word(s)
}

/// The sparse representative of depth `m ∈ {1} ∪ {2^μ ± 1}` modulo `t^n`.
pub fn sparse_rep(m: u32, n: usize) -> Result<SparseRep> {
    let nn = n as u128;
    let (exps, equation, patterns): (Vec<u128>, String, Option<Vec<SupportPattern>>) = match shape(m)? {
        Shape::One => {
            let mut e = vec![1u128];
            let mut k = 2;
            while (1u128 << k) - 2 < nn {
                e.extend([(1u128 << k) - 2, (1u128 << k) - 1]);
                k += 1;
            }
            let pats = vec![
                SupportPattern::new(2, vec![word("1")], vec![]),
                SupportPattern::new(2, vec![word(""), word("11")], vec![word("1")]),
                SupportPattern::new(2, vec![word("0"), word("1")], vec![word("1")]),
            ];
            (e, "t^2*X^2+(t+1)*X+t".into(), Some(pats))
        }
        Shape::Minus(mu) => {
            let step = mu as u128 - 1;
            let mut e = vec![1u128];
            let mut head = 0u128;
            for k in 0.. {
                if k > 0 {
                    head += 1 << (k as u128 * step);
                }
                let x = head + (2u128 << ((k as u128 + 1) * step));
                if x >= nn {
                    break;
                }
                e.push(x);
            }
            let v1 = format!("1{}", "0".repeat(mu as usize - 1));
            let w1 = format!("1{}", "0".repeat(mu as usize - 2));
            let pats = vec![
                SupportPattern::new(2, vec![word("1")], vec![]),
                SupportPattern::new(2, vec![word("0"), word(&v1)], vec![word(&w1)]),
            ];
            let q = 1u32 << (mu - 1);
            (e, format!("t^{q}*X^{q}+X+t"), Some(pats))
        }
        Shape::Plus(mu) => {
            // t^{−q}(Π_{j<μ}(1 + Σ_k t^{(q+1)2^j q^k}) − 1)
            let q = 1usize << mu;
            let len = n + q;
            let mut prod = TruncSeries::from_poly(&FpPoly::one(2), len);
            for j in 0..mu {
                let mut factor = vec![0u8; len];
                factor[0] = 1;
                let mut e = (q + 1) << j;
                while e < len {
                    factor[e] ^= 1;
                    e *= q;
                }
                prod = prod.mul(&TruncSeries::new(2, factor));
            }
            let e = prod.support().into_iter().filter(|&e| e > q).map(|e| (e - q) as u128).collect();
            (e, format!("t^{q}*X^{q}+X^{}+t^{}", q - 1, q - 1), None)
        }
    };
    let series = TruncSeries::from_exponents(2, exps.into_iter().map(|e| e as usize), n);
    let equation = parse_bipoly(&equation, 2)?;
    Ok(SparseRep {
        m,
        series,
        equation,
        patterns,
    })
}

impl SparseRep {
    /// Re-derives the series by Hensel lifting the root of its equation
    /// from the shortest prefix that determines it (`2e + 1` terms with
    /// `e = ord F_X(t, σ)`).
    pub fn series_from_equation(&self) -> Result<TruncSeries> {
        let n = self.series.precision();
        let e = TruncSeries::eval_poly(&self.equation.derivative_x(), &self.series)
            .valuation()
            .ok_or(Error::Inseparable)?;
        if 2 * e + 1 > n {
            return Err(Error::InsufficientPrecision { have: n, need: 2 * e + 1 });
        }
        hensel_root(&self.equation, &self.series.truncate(2 * e + 1), n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_series;

    #[test]
    fn klopsch_three() {
        assert_eq!(klopsch(3, 15).unwrap(), parse_series("t+t^4+t^13+O(t^15)", 2).unwrap());
        assert!(klopsch(4, 10).is_err());
    }

    #[test]
    fn klopsch_one_is_geometric() {
        let s = klopsch(1, 50).unwrap();
        assert_eq!(s.support(), (1..50).collect::<Vec<_>>());
    }

    #[test]
    fn klopsch_is_an_involution() {
        for m in [1, 3, 5, 7] {
            let s = klopsch(m, 100).unwrap();
            assert!(TruncSeries::compose(&s, &s).unwrap().is_identity(), "m = {m}");
        }
    }

    #[test]
    fn sparse_reps_solve_their_equations() {
        for m in [1, 3, 5, 7, 9, 15, 17, 31, 33] {
            let r = sparse_rep(m, 400).unwrap();
            assert_eq!(r.series_from_equation().unwrap(), r.series, "m = {m}");
            assert_eq!(r.series.depth(), Some(m as usize), "m = {m}");
            let sq = TruncSeries::compose(&r.series, &r.series).unwrap();
            assert!(sq.is_identity(), "m = {m}");
        }
    }

    #[test]
    fn patterns_match_support() {
        for m in [1, 3, 7, 15] {
            let r = sparse_rep(m, 3000).unwrap();
            let pats = r.patterns.unwrap();
            for k in 0..3000u128 {
                let inside = pats.iter().any(|p| p.contains(k));
                assert_eq!(inside, r.series.coeff(k as usize) == 1, "m = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn plus_shape_support() {
        let r = sparse_rep(5, 500).unwrap();
        assert!(r.series.support().iter().all(|&e| (e - 1) % 5 == 0));
        assert!(sparse_rep(11, 10).is_err());
        assert_eq!(sparse_rep(1, 16).unwrap().series.support(), vec![1, 2, 3, 6, 7, 14, 15]);
    }
}
