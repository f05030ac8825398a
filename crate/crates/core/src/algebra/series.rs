//! Power series over F_p known modulo `t^N`.

use std::fmt;

use super::bipoly::BiPoly;
use super::fp;
use super::poly::FpPoly;
use crate::error::{Error, Result};

/// Default working precision for series computations.
pub const DEFAULT_PRECISION: usize = 200;

/// `Σ_{i<N} a_i t^i + O(t^N)`. The coefficient vector always has length `N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    p: u32,
    coeffs: Vec<u8>,
}

impl TruncSeries {
    /// Series with the given known coefficients; the precision is their count.
    pub fn new(p: u32, coeffs: Vec<u8>) -> Self {
        TruncSeries {
            p,
            coeffs: coeffs.into_iter().map(|c| (c as u32 % p) as u8).collect(),
        }
    }

    pub fn zero(p: u32, n: usize) -> Self {
        TruncSeries {
            p,
            coeffs: vec![0; n],
        }
    }

    /// The identity series `t + O(t^n)`.
    pub fn identity(p: u32, n: usize) -> Self {
        Self::from_poly(&FpPoly::monomial(p, 1, 1), n)
    }

    pub fn from_poly(f: &FpPoly, n: usize) -> Self {
        let mut coeffs = vec![0u8; n];
        for (i, &c) in f.coeffs().iter().enumerate().take(n) {
            coeffs[i] = c;
        }
        TruncSeries { p: f.p(), coeffs }
    }

    /// Series with `a_e = 1` for each listed exponent `e < n` (summed in F_p).
    pub fn from_exponents(p: u32, exps: impl IntoIterator<Item = usize>, n: usize) -> Self {
        let mut coeffs = vec![0u8; n];
        for e in exps {
            if e < n {
                coeffs[e] = fp::add(coeffs[e], 1, p);
            }
        }
        TruncSeries { p, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs[i]
    }

    /// Known coefficients as a polynomial.
    pub fn to_poly(&self) -> FpPoly {
        FpPoly::from_reduced(self.p, self.coeffs.clone())
    }

    /// Exponents with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// First nonzero index, or `None` if the series vanishes to its precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// `ord_t(s − t) − 1`, or `None` if `s ≡ t` to the known precision.
    pub fn depth(&self) -> Option<usize> {
        let diff = self.sub(&Self::identity(self.p, self.precision()));
        diff.valuation().map(|v| v.saturating_sub(1))
    }

    pub fn is_identity(&self) -> bool {
        self.precision() >= 2 && self.depth().is_none()
    }

    pub fn truncate(&self, n: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(n);
        TruncSeries { p: self.p, coeffs: c }
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "moduli differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        let n = self.precision().min(other.precision());
        let mut c = self.coeffs[..n].to_vec();
        fp::add_into(&mut c, &other.coeffs[..n], self.p);
        TruncSeries { p: self.p, coeffs: c }
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        TruncSeries {
            p,
            coeffs: self.coeffs.iter().map(|&c| fp::neg(c, p)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u8) -> Self {
        let p = self.p;
        TruncSeries {
            p,
            coeffs: self.coeffs.iter().map(|&a| fp::mul(a, c, p)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        let n = self.precision().min(other.precision());
        self.mul_to(other, n)
    }

    fn mul_to(&self, other: &Self, n: usize) -> Self {
        let mut c = fp::mul_truncated(&self.coeffs[..n.min(self.precision())], &other.coeffs[..n.min(other.precision())], n, self.p);
        c.resize(n, 0);
        TruncSeries { p: self.p, coeffs: c }
    }

    /// Multiplication by a polynomial; precision is unchanged.
    pub fn mul_poly(&self, f: &FpPoly) -> Self {
        let n = self.precision();
        let mut c = fp::mul_truncated(&self.coeffs, f.coeffs(), n, self.p);
        c.resize(n, 0);
        TruncSeries { p: self.p, coeffs: c }
    }

    /// Multiplicative inverse of a unit.
    pub fn invert_unit(&self) -> Result<Self> {
        let n = self.precision();
        if n == 0 {
            return Ok(self.clone());
        }
        let p = self.p;
        let a0 = self.coeffs[0];
        if a0 == 0 {
            return Err(Error::NotUnit);
        }
        let inv0 = fp::inv(a0, p);
        let mut r = vec![0u8; n];
        r[0] = inv0;
        for k in 1..n {
            let mut s = 0u32;
            for j in 1..=k {
                let a = self.coeffs[j];
                if a != 0 && r[k - j] != 0 {
                    s += a as u32 * r[k - j] as u32;
                }
            }
            let s = (s % p) as u8;
            r[k] = fp::mul(fp::neg(s, p), inv0, p);
        }
        Ok(TruncSeries { p, coeffs: r })
    }

    /// `F(t, s(t)) mod t^N` where `N` is the precision of `s`.
    pub fn eval_poly(f: &BiPoly, s: &Self) -> Self {
        let n = s.precision();
        let mut acc = Self::zero(s.p, n);
        for a in f.coeffs_by_x().iter().rev() {
            acc = acc.mul(s).add(&Self::from_poly(a, n));
        }
        acc
    }

    /// `outer(inner(t)) mod t^N` with `N` the smaller precision, by Horner
    /// substitution. The intermediate Horner value for coefficient `k` only
    /// matters modulo `t^{N-k}` since it is later multiplied by `inner^k`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        outer.same_field(inner);
        let n = outer.precision().min(inner.precision());
        if n == 0 {
            return Ok(Self::zero(outer.p, 0));
        }
        if inner.coeffs[0] != 0 {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = Self::zero(outer.p, 0);
        for k in (0..n).rev() {
            let keep = n - k;
            let mut next = if acc.precision() == 0 {
                Self::zero(outer.p, keep)
            } else {
                acc.mul_to(inner, keep)
            };
            next.coeffs[0] = fp::add(next.coeffs[0], outer.coeffs[k], outer.p);
            acc = next;
        }
        Ok(acc)
    }

    /// Compositional inverse of `s = t + O(t^2)`.
    pub fn comp_inverse(&self) -> Result<Self> {
        let n = self.precision();
        if n < 2 || self.coeffs[0] != 0 || self.coeffs[1] != 1 {
            return Err(Error::NotTangentToIdentity);
        }
        let id = Self::identity(self.p, n);
        let mut r = id.clone();
        loop {
            let err = Self::compose(self, &r)?.sub(&id);
            if err.valuation().is_none() {
                return Ok(r);
            }
            r = r.sub(&err);
        }
    }

    /// `σ^{∘k}` by repeated squaring of composition.
    pub fn compose_power(&self, mut k: u64) -> Result<Self> {
        let n = self.precision();
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, n);
        while k > 0 {
            if k & 1 == 1 {
                acc = Self::compose(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = Self::compose(&base, &base)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for TruncSeries {
    /// Ascending terms followed by the order term, e.g. `t+t^2+O(t^5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}*t^{i}")?,
            }
        }
        if !first {
            write!(f, "+")?;
        }
        match self.precision() {
            1 => write!(f, "O(t)"),
            n => write!(f, "O(t^{n})"),
        }
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[p={}]({})", self.p, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2(exps: &[usize], n: usize) -> TruncSeries {
        TruncSeries::from_exponents(2, exps.iter().copied(), n)
    }

    #[test]
    fn square_of_one_plus_t() {
        let a = s2(&[0, 1], 4);
        assert_eq!(a.mul(&a), s2(&[0, 2], 4));
    }

    #[test]
    fn geometric_inverse() {
        assert_eq!(s2(&[0, 1], 4).invert_unit().unwrap(), s2(&[0, 1, 2, 3], 4));
        assert_eq!(s2(&[1], 4).invert_unit(), Err(Error::NotUnit));
    }

    #[test]
    fn compose_by_hand() {
        let got = TruncSeries::compose(&s2(&[1, 2], 7), &s2(&[1, 3], 7)).unwrap();
        assert_eq!(got, s2(&[1, 2, 3, 6], 7));
    }

    #[test]
    fn phi_is_an_involution() {
        // φ = t/(1+t) = t + t^2 + t^3 + ... over F_2
        let phi = s2(&(1..200).collect::<Vec<_>>(), 200);
        assert!(TruncSeries::compose(&phi, &phi).unwrap().is_identity());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(s2(&[1, 2], 5).comp_inverse().unwrap(), s2(&[1, 2, 4], 5));
        assert_eq!(s2(&[1], 5).comp_inverse().unwrap(), s2(&[1], 5));
        assert_eq!(
            s2(&[1, 3], 12).comp_inverse().unwrap(),
            s2(&[1, 3, 5, 9, 11], 12)
        );
    }

    #[test]
    fn nonzero_constant_inner_rejected() {
        assert_eq!(
            TruncSeries::compose(&s2(&[1], 4), &s2(&[0, 1], 4)),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn display_format() {
        assert_eq!(s2(&[1, 2, 4], 8).to_string(), "t+t^2+t^4+O(t^8)");
        assert_eq!(s2(&[], 3).to_string(), "O(t^3)");
    }
}
