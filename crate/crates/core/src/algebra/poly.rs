//! Univariate polynomials over F_p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp;
use crate::error::{Error, Result};

/// A polynomial in `t` over F_p. The last stored coefficient is nonzero
/// unless the polynomial is zero (empty storage).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u8>,
}

impl FpPoly {
    /// Builds a polynomial from coefficients in ascending degree, reducing
    /// each mod p and trimming trailing zeros.
    pub fn new(p: u32, coeffs: Vec<u8>) -> Self {
        let mut coeffs: Vec<u8> = coeffs.into_iter().map(|c| (c as u32 % p) as u8).collect();
        fp::trim(&mut coeffs);
        FpPoly { p, coeffs }
    }

    pub(crate) fn from_reduced(p: u32, mut coeffs: Vec<u8>) -> Self {
        fp::trim(&mut coeffs);
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u32, c: u8) -> Self {
        Self::new(p, vec![c])
    }

    /// `c · t^k`.
    pub fn monomial(p: u32, c: u8, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(p, v)
    }

    /// Sum of `t^e` over the given exponents (repeated exponents add up).
    pub fn from_exponents(p: u32, exps: &[usize]) -> Self {
        let len = exps.iter().max().map_or(0, |m| m + 1);
        let mut v = vec![0u8; len];
        for &e in exps {
            v[e] = fp::add(v[e], 1, p);
        }
        Self::from_reduced(p, v)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u8> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// t-adic valuation, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// True when the polynomial is `c · t^k` for some nonzero `c`.
    pub fn is_monomial(&self) -> bool {
        self.weight() == 1
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "moduli differ");
    }

    pub fn scale(&self, c: u8) -> Self {
        let p = self.p;
        Self::from_reduced(p, self.coeffs.iter().map(|&a| fp::mul(a, c, p)).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        FpPoly { p: self.p, coeffs: v }
    }

    /// Division by `t^k`, discarding the low coefficients.
    pub fn unshift(&self, k: usize) -> Self {
        Self::from_reduced(self.p, self.coeffs.iter().skip(k).copied().collect())
    }

    /// Keeps the coefficients of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::from_reduced(self.p, self.coeffs.iter().take(n).copied().collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(fp::inv(self.leading(), self.p))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        self.same_field(d);
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let p = self.p;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let lead_inv = fp::inv(d.leading(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u8; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            let f = fp::mul(c, lead_inv, p);
            q[i - dd] = f;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = fp::sub(r[idx], fp::mul(f, dj, p), p);
            }
        }
        r.truncate(dd);
        Ok((Self::from_reduced(p, q), Self::from_reduced(p, r)))
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::DivisionNotExact);
        }
        Ok(q)
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Whether `d` divides `self`.
    pub fn divisible_by(&self, d: &Self) -> bool {
        matches!(self.div_rem(d), Ok((_, r)) if r.is_zero())
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        self.same_field(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::from_reduced(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| fp::mul(c, (i as u32 % p) as u8, p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u8) -> u8 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0u8, |acc, &c| fp::add(fp::mul(acc, x, p), c, p))
    }

    /// Cartier operator: `C_r(Σ a_i t^i) = Σ a_{p i + r} t^i`.
    pub fn cartier(&self, r: u32) -> Result<Self> {
        if r >= self.p {
            return Err(Error::DigitOutOfRange { digit: r, p: self.p });
        }
        let p = self.p as usize;
        Ok(Self::from_reduced(
            self.p,
            self.coeffs.iter().skip(r as usize).step_by(p).copied().collect(),
        ))
    }

    /// `f(t^p)`; together with `cartier` this realizes Frobenius descent.
    pub fn frobenius_stretch(&self) -> Self {
        let p = self.p as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0u8; (self.coeffs.len() - 1) * p + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * p] = c;
        }
        Self::from_reduced(self.p, v)
    }

    /// The p-th root of a polynomial whose exponents are all multiples of p
    /// (over F_p every coefficient is its own p-th root).
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.p as usize;
        if self.coeffs.iter().enumerate().any(|(i, &c)| c != 0 && i % p != 0) {
            return None;
        }
        Some(Self::from_reduced(
            self.p,
            self.coeffs.iter().step_by(p).copied().collect(),
        ))
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = Self::one(self.p);
        for (f, _) in self.squarefree_decomposition() {
            out = &out * &f;
        }
        out
    }

    /// Yun-style decomposition into pairwise coprime squarefree monic
    /// factors with multiplicities, handling p-th powers.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        self.sqf_into(1, &mut out);
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.coeffs.cmp(&b.0.coeffs)));
        out
    }

    fn sqf_into(&self, mult: usize, out: &mut Vec<(Self, usize)>) {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return;
        }
        let d = f.derivative();
        if d.is_zero() {
            let root = f.pth_root().expect("vanishing derivative implies p-th power");
            root.sqf_into(mult * self.p as usize, out);
            return;
        }
        let mut c = f.gcd(&d);
        let mut w = f.exact_div(&c).expect("gcd divides");
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.exact_div(&y).expect("gcd divides");
            if z.degree().unwrap_or(0) > 0 {
                push_factor(out, z, i * mult);
            }
            w = y.clone();
            c = c.exact_div(&y).expect("gcd divides");
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            let root = c.pth_root().expect("remaining cofactor is a p-th power");
            root.sqf_into(mult * self.p as usize, out);
        }
    }

    /// Factorization into monic irreducibles with multiplicities (the unit
    /// is dropped). Uses squarefree decomposition, then removal of the
    /// smallest-degree monic divisors found by trial division; intended for
    /// the moderate degrees that occur in the catalog (tens, not hundreds).
    pub fn factor(&self) -> Vec<(Self, usize)> {
        let mut out: Vec<(Self, usize)> = Vec::new();
        for (g, m) in self.squarefree_decomposition() {
            for f in split_squarefree(&g) {
                push_factor(&mut out, f, m);
            }
        }
        out.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
        });
        out
    }

    pub fn is_irreducible(&self) -> bool {
        let f = self.factor();
        self.degree().unwrap_or(0) > 0 && f.len() == 1 && f[0].1 == 1
    }

    /// Distinct roots in F_p.
    pub fn roots(&self) -> Vec<u8> {
        (0..self.p as u8).filter(|&x| self.eval(x) == 0).collect()
    }
}

fn push_factor(out: &mut Vec<(FpPoly, usize)>, f: FpPoly, m: usize) {
    if let Some(entry) = out.iter_mut().find(|(g, _)| *g == f) {
        entry.1 += m;
    } else {
        out.push((f, m));
    }
}

/// Splits a monic squarefree polynomial by trial division with monic
/// polynomials of increasing degree; the first divisor found at each degree
/// is irreducible because smaller factors were already removed.
fn split_squarefree(g: &FpPoly) -> Vec<FpPoly> {
    let p = g.p;
    let mut rest = g.clone();
    let mut found = Vec::new();
    let mut k = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * k {
        let mut advanced = false;
        for cand in MonicIter::new(p, k) {
            if rest.divisible_by(&cand) {
                rest = rest.exact_div(&cand).expect("checked");
                found.push(cand);
                advanced = true;
                break;
            }
        }
        if !advanced {
            k += 1;
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        found.push(rest.monic());
    }
    found
}

/// All monic polynomials of a fixed degree, in lexicographic order.
struct MonicIter {
    p: u32,
    digits: Vec<u8>,
    done: bool,
}

impl MonicIter {
    fn new(p: u32, k: usize) -> Self {
        MonicIter {
            p,
            digits: vec![0; k],
            done: false,
        }
    }
}

impl Iterator for MonicIter {
    type Item = FpPoly;
    fn next(&mut self) -> Option<FpPoly> {
        if self.done {
            return None;
        }
        let mut v = self.digits.clone();
        v.push(1);
        let out = FpPoly::from_reduced(self.p, v);
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] as u32 == self.p {
                self.digits[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        Some(out)
    }
}

impl Add for &FpPoly {
    type Output = FpPoly;
    fn add(self, rhs: &FpPoly) -> FpPoly {
        self.same_field(rhs);
        let mut v = self.coeffs.clone();
        fp::add_into(&mut v, &rhs.coeffs, self.p);
        FpPoly::from_reduced(self.p, v)
    }
}

impl Sub for &FpPoly {
    type Output = FpPoly;
    fn sub(self, rhs: &FpPoly) -> FpPoly {
        self + &(-rhs)
    }
}

impl Neg for &FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        let p = self.p;
        FpPoly::from_reduced(p, self.coeffs.iter().map(|&c| fp::neg(c, p)).collect())
    }
}

impl Mul for &FpPoly {
    type Output = FpPoly;
    fn mul(self, rhs: &FpPoly) -> FpPoly {
        self.same_field(rhs);
        let len = (self.coeffs.len() + rhs.coeffs.len()).saturating_sub(1);
        FpPoly::from_reduced(self.p, fp::mul_truncated(&self.coeffs, &rhs.coeffs, len, self.p))
    }
}

impl fmt::Display for FpPoly {
    /// Descending powers of `t`, e.g. `t^3+t+1`; nonunit coefficients are
    /// written as `c*t^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
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
        Ok(())
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[p={}]({})", self.p, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t2(exps: &[usize]) -> FpPoly {
        FpPoly::from_exponents(2, exps)
    }

    #[test]
    fn gcd_of_square_and_linear() {
        assert_eq!(t2(&[2, 0]).gcd(&t2(&[1, 0])), t2(&[1, 0]));
    }

    #[test]
    fn squarefree_part_drops_multiplicities() {
        let f = &t2(&[1, 0]).pow(3) * &t2(&[1]);
        assert_eq!(f.squarefree_part(), t2(&[2, 1]));
    }

    #[test]
    fn factor_t4_plus_t() {
        let f = t2(&[4, 1]).factor();
        let got: Vec<FpPoly> = f.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(got, vec![t2(&[1]), t2(&[1, 0]), t2(&[2, 1, 0])]);
        assert!(f.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn factor_handles_pth_powers() {
        let f = &t2(&[2, 1, 0]).pow(4) * &t2(&[1, 0]).pow(3);
        let fac = f.factor();
        assert_eq!(fac, vec![(t2(&[1, 0]), 3), (t2(&[2, 1, 0]), 4)]);
    }

    #[test]
    fn cartier_examples() {
        assert_eq!(t2(&[3, 1]).cartier(1).unwrap(), t2(&[1, 0]));
        assert_eq!(t2(&[3, 1, 5]).cartier(0).unwrap(), FpPoly::zero(2));
        assert!(t2(&[1]).cartier(2).is_err());
    }

    #[test]
    fn display_descending() {
        assert_eq!(t2(&[0, 1, 3]).to_string(), "t^3+t+1");
        assert_eq!(FpPoly::new(3, vec![2, 0, 1]).to_string(), "t^2+2");
    }

    #[test]
    fn exact_div_rejects_remainder() {
        assert_eq!(t2(&[2]).exact_div(&t2(&[1, 0])), Err(Error::DivisionNotExact));
        assert_eq!(t2(&[2]).exact_div(&FpPoly::zero(2)), Err(Error::ZeroDivisor));
    }
}
