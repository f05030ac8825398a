//! Closed formulas for the named series over F₂, as truncated series.
//!
//! Exponent sums are taken modulo 2: a monomial listed twice cancels.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{FpPoly, TruncSeries};
use crate::error::{Error, Result};

/// A named closed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// `t + t² + Σ_k Σ_{ℓ<2^k} t^{6·2^k+2ℓ}`.
    Cs,
    /// `Σ_k (t^{3·2^k−2} + t^{4·2^k−2})`.
    Cs3,
    /// `t + Σ_k Σ_{ℓ<2^k} t^{4·2^k+2ℓ}`.
    Cs2,
    /// `Σ_k t^{2^k} / (t+1)^{3·2^k−1}`.
    J,
    /// The same series as [`ClosedForm::J`] written as a sparse-plus-rational sum.
    JSparse,
    /// `Σ_k t^{2·2^k−1} / (t+1)^{3·2^k−2}`.
    J3,
    /// The same series as [`ClosedForm::J3`] written as a sparse-plus-rational sum.
    J3Sparse,
    T1,
    T2,
    T3,
    T4,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 11] = [
        ClosedForm::Cs,
        ClosedForm::Cs3,
        ClosedForm::Cs2,
        ClosedForm::J,
        ClosedForm::JSparse,
        ClosedForm::J3,
        ClosedForm::J3Sparse,
        ClosedForm::T1,
        ClosedForm::T2,
        ClosedForm::T3,
        ClosedForm::T4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::Cs => "cs",
            ClosedForm::Cs3 => "cs3",
            ClosedForm::Cs2 => "cs2",
            ClosedForm::J => "j",
            ClosedForm::JSparse => "j-sparse",
            ClosedForm::J3 => "j3",
            ClosedForm::J3Sparse => "j3-sparse",
            ClosedForm::T1 => "t1",
            ClosedForm::T2 => "t2",
            ClosedForm::T3 => "t3",
            ClosedForm::T4 => "t4",
        }
    }

    /// Whether the support is sparse (so long prefixes are cheap to check).
    pub fn is_sparse(self) -> bool {
        !matches!(self, ClosedForm::J | ClosedForm::J3 | ClosedForm::JSparse | ClosedForm::J3Sparse)
    }

    /// The series modulo `t^n`.
    pub fn series(self, n: usize) -> TruncSeries {
        match self {
            ClosedForm::Cs => exps(n, |out| {
                out(1);
                out(2);
                for k in 0..bits(n) {
                    for l in 0..(1i128 << k) {
                        out(6 * (1 << k) + 2 * l);
                    }
                }
            }),
            ClosedForm::Cs3 => exps(n, |out| {
                for k in 0..bits(n) {
                    out(3 * (1 << k) - 2);
                    out(4 * (1 << k) - 2);
                }
            }),
            ClosedForm::Cs2 => exps(n, |out| {
                out(1);
                for k in 0..bits(n) {
                    for l in 0..(1i128 << k) {
                        out(4 * (1 << k) + 2 * l);
                    }
                }
            }),
            ClosedForm::J => rational_sum(n, |k| (1 << k, 3 * (1 << k) - 1)),
            ClosedForm::J3 => rational_sum(n, |k| (2 * (1 << k) - 1, 3 * (1 << k) - 2)),
            ClosedForm::JSparse => exps(n, |out| {
                out(1);
                for k in 0..=(n as i128 / 8) {
                    out(8 * k + 7);
                    out(8 * k + 2);
                }
                for k in 0..bits(n) {
                    for l in 0..=(n as i128 / 4) {
                        out(4 * (1 << k) * (4 * l + 1) + 1);
                        out(4 * (1 << k) * (4 * l + 3));
                    }
                }
            }),
            ClosedForm::J3Sparse => exps(n, |out| {
                out(1);
                // (t^11 + t^5)/(t^16 + 1) and t^2/(t^2 + 1) expand to
                // arithmetic progressions.
                for k in 0..=(n as i128 / 16) {
                    out(16 * k + 11);
                    out(16 * k + 5);
                }
                for k in 0..=(n as i128 / 2) {
                    out(2 * k + 2);
                }
                for k in 3..bits(n) {
                    for l in 0..=(n as i128 / 4) {
                        out((1 << k) * (4 * l + 1) - 1);
                        out((1 << k) * (4 * l + 3) + 1);
                    }
                }
            }),
            ClosedForm::T1 => exps(n, |out| {
                out(1);
                for k in 2..bits(n) {
                    let q = 1i128 << k;
                    out(q - 2);
                    out(2 * q - 1);
                    out(4 * q - 5);
                    for l in 2..bits(n) {
                        out(q * ((1 << l) - 3) + 1);
                    }
                }
            }),
            ClosedForm::T2 => exps(n, |out| {
                out(1);
                out(2);
                for k in 3..bits(n) {
                    let q = 1i128 << k;
                    for e in [q - 4, q - 3, q - 1, 4 * q - 6, 4 * q - 5, 8 * q - 22, 8 * q - 21] {
                        out(e);
                    }
                    for l in 3..bits(n) {
                        // (t + 1)·t^e
                        let e = q * ((1 << l) - 6) + 2;
                        out(e);
                        out(e + 1);
                    }
                }
                for k in 2..bits(n) {
                    for l in 2..bits(n) {
                        for m in 2..bits(n) {
                            let e = (1i128 << (k + l)) * ((1 << m) - 3) + 2 * (1 << k) - 2;
                            out(e);
                            out(e + 1);
                        }
                    }
                }
            }),
            ClosedForm::T3 => exps(n, |out| {
                for e in [1, 8, 44] {
                    out(e);
                }
                for k in 2..bits(n) {
                    let q = 1i128 << k;
                    for e in [q - 2, 3 * q - 2, 8 * q - 4, 8 * q + 4, 8 * q + 20, 16 * q + 44, 24 * q - 4] {
                        out(e);
                    }
                    for l in 2..bits(n) {
                        let r = 1i128 << l;
                        out(q * (r + 3) - 2);
                        out(4 * q * (r + 2) + 4);
                        out(8 * q * (r + 3) - 4);
                        out(8 * q * (r + 2) + 12);
                    }
                }
                t_triple(n, out);
            }),
            ClosedForm::T4 => exps(n, |out| {
                for e in [1, 4, 8, 20] {
                    out(e);
                }
                for k in 2..bits(n) {
                    let q = 1i128 << k;
                    for e in [q - 2, 8 * q - 4, 8 * q + 20, 16 * q + 12, 16 * q + 44] {
                        out(e);
                    }
                    for l in 2..bits(n) {
                        let r = 1i128 << l;
                        out(q * (r + 1) - 2);
                        out(8 * q * (r + 1) - 4);
                        out(4 * q * (r + 2) + 4);
                        out(8 * q * (r + 2) + 12);
                        out(q * (r + 3) - 2);
                        out(8 * q * (r + 3) - 4);
                    }
                }
                t_triple(n, out);
            }),
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosedForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClosedForm::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownEntry(s.to_string()))
    }
}

/// The triple sum shared by the third and fourth formulas of the table.
fn t_triple(n: usize, out: &mut dyn FnMut(i128)) {
    for k in 2..bits(n) {
        for l in 2..bits(n) {
            for m in 1..bits(n) {
                let base = (1i128 << (k + l)) * ((1 << m) + 1);
                out(base + (1 << k) - 2);
                out(8 * base + 8 * (1 << k) - 4);
            }
        }
    }
}

/// Enough powers of two that `2^k ≥ 2n`; the loops above rely on every
/// exponent being at least `2^k` minus a small constant.
fn bits(n: usize) -> u32 {
    usize::BITS - n.leading_zeros() + 2
}

/// Collects exponents (mod 2) below `n`, ignoring the out-of-range ones.
fn exps(n: usize, gen: impl FnOnce(&mut dyn FnMut(i128))) -> TruncSeries {
    let mut coeffs = vec![0u8; n];
    let mut out = |e: i128| {
        if (0..n as i128).contains(&e) {
            coeffs[e as usize] ^= 1;
        }
    };
    gen(&mut out);
    TruncSeries::new(2, coeffs)
}

/// `Σ_k t^{a_k} / (t+1)^{b_k}` with `(a_k, b_k) = term(k)`, summing while
/// `a_k < n`.
fn rational_sum(n: usize, term: impl Fn(u32) -> (usize, u64)) -> TruncSeries {
    let inv = TruncSeries::from_poly(&FpPoly::from_exponents(2, &[0, 1]), n)
        .invert_unit()
        .expect("1 + t is a unit");
    let mut acc = TruncSeries::zero(2, n);
    for k in 0.. {
        let (a, b) = term(k);
        if a >= n {
            break;
        }
        let num = TruncSeries::from_exponents(2, [a], n);
        acc = acc.add(&num.mul(&series_pow(&inv, b)));
    }
    acc
}

fn series_pow(s: &TruncSeries, mut e: u64) -> TruncSeries {
    let mut acc = TruncSeries::from_poly(&FpPoly::one(s.p()), s.precision());
    let mut base = s.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{hensel_root, parse_bipoly, parse_series};

    fn root(eq: &str, prefix: &str, n: usize) -> TruncSeries {
        let f = parse_bipoly(eq, 2).unwrap();
        let c = parse_series(prefix, 2).unwrap();
        let seeds = crate::algebra::truncated_solutions(&f, Some(&c)).unwrap();
        assert_eq!(seeds.len(), 1, "{eq}");
        hensel_root(&f, &seeds[0], n).unwrap()
    }

    #[test]
    fn closed_forms_solve_their_equations() {
        let n = 300;
        let cases = [
            (ClosedForm::Cs, "(t+1)^2*X^2+X+t", "t"),
            (ClosedForm::Cs3, "t^2*X^2+X+t^2+t", "t"),
            (ClosedForm::Cs2, "(t^2+1)*X^2+X+t^2+t", "t"),
            (ClosedForm::J, "(t+1)*X^2+(t^2+1)*X+t", "t"),
            (ClosedForm::JSparse, "(t+1)*X^2+(t^2+1)*X+t", "t"),
            (ClosedForm::J3, "t*X^2+(t^2+1)*X+t^2+t", "t"),
            (ClosedForm::J3Sparse, "t*X^2+(t^2+1)*X+t^2+t", "t"),
            (ClosedForm::T1, "t^2*X^4+(t^4+t^2+t+1)*X^2+(t^3+t^2+t)*X+t^3", "t+t^2+O(t^5)"),
            (
                ClosedForm::T2,
                "t^2*X^4+(t+1)*X^3+(t^4+t^2+t)*X^2+(t^2+t)*X+t^2",
                "t+t^2+t^4+t^5+O(t^7)",
            ),
            (
                ClosedForm::T3,
                "t^4*X^4+(t^2+1)*X^3+(t^3+t)*X^2+t^2*X+t^3",
                "t+t^2+t^6+t^8+t^10+O(t^13)",
            ),
            (
                ClosedForm::T4,
                "t^4*X^4+(t^2+1)*X^3+(t^3+t)*X^2+t^2*X+t^3",
                "t+t^2+t^4+t^6+t^8+O(t^13)",
            ),
        ];
        for (form, eq, prefix) in cases {
            assert_eq!(form.series(n), root(eq, prefix, n), "{form}");
        }
    }

    #[test]
    fn names_round_trip() {
        for c in ClosedForm::ALL {
            assert_eq!(c.name().parse::<ClosedForm>().unwrap(), c);
        }
        assert!("nope".parse::<ClosedForm>().is_err());
    }
}
