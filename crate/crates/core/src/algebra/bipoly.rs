//! Bivariate polynomials `F(t, X)` over F_p, stored as polynomials in `X`
//! whose coefficients are polynomials in `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp;
use super::poly::FpPoly;
use crate::error::{Error, Result};

/// `Σ_i a_i(t) X^i`; the leading `X`-coefficient is nonzero unless the
/// polynomial is zero (empty storage).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    p: u32,
    coeffs: Vec<FpPoly>,
}

/// Result of a squarefree reduction in `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Squarefree {
    pub part: BiPoly,
    /// Set when `∂F/∂X = 0` and no `p`-th root could be extracted; `part`
    /// is then the input unchanged.
    pub inseparable: bool,
}

impl BiPoly {
    pub fn new(p: u32, mut coeffs: Vec<FpPoly>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.p() == p));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        BiPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::from_t_poly(FpPoly::one(p))
    }

    /// A polynomial in `t` only.
    pub fn from_t_poly(a: FpPoly) -> Self {
        let p = a.p();
        Self::new(p, vec![a])
    }

    /// Reinterprets a univariate polynomial as a polynomial in `X` with
    /// constant coefficients.
    pub fn from_x_poly(a: &FpPoly) -> Self {
        let p = a.p();
        Self::new(p, a.coeffs().iter().map(|&c| FpPoly::constant(p, c)).collect())
    }

    /// The monomial `c · t^i X^j`.
    pub fn monomial(p: u32, c: u8, i: usize, j: usize) -> Self {
        let mut coeffs = vec![FpPoly::zero(p); j + 1];
        coeffs[j] = FpPoly::monomial(p, c, i);
        Self::new(p, coeffs)
    }

    /// Sum of monomials `t^i X^j` over the listed `(i, j)` pairs.
    pub fn from_terms(p: u32, terms: &[(usize, usize)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(p), |acc, &(i, j)| &acc + &Self::monomial(p, 1, i, j))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs_by_x(&self) -> &[FpPoly] {
        &self.coeffs
    }

    pub fn coeff_x(&self, i: usize) -> FpPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FpPoly::zero(self.p))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    pub fn leading_x(&self) -> FpPoly {
        self.coeffs.last().cloned().unwrap_or_else(|| FpPoly::zero(self.p))
    }

    /// Nonzero terms as `(t-exponent, X-exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, usize, u8)> {
        let mut out = Vec::new();
        for (j, a) in self.coeffs.iter().enumerate() {
            for (i, &c) in a.coeffs().iter().enumerate() {
                if c != 0 {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    /// Coefficient of `t^i X^j`.
    pub fn coeff(&self, i: usize, j: usize) -> u8 {
        self.coeffs.get(j).map_or(0, |a| a.coeff(i))
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "moduli differ");
    }

    pub fn scale_poly(&self, a: &FpPoly) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|c| c * a).collect())
    }

    pub fn scale(&self, c: u8) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// Multiplication by `X^k`.
    pub fn shift_x(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![FpPoly::zero(self.p); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(self.p, v)
    }

    /// Minimum t-adic valuation over all coefficients.
    pub fn t_valuation(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.valuation()).min()
    }

    /// Exact division by `t^k`.
    pub fn div_t_power(&self, k: usize) -> Result<Self> {
        if self.t_valuation().is_some_and(|v| v < k) {
            return Err(Error::DivisionNotExact);
        }
        Ok(Self::new(self.p, self.coeffs.iter().map(|c| c.unshift(k)).collect()))
    }

    pub fn derivative_x(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale((i as u32 % p) as u8))
                .collect(),
        )
    }

    /// Cartier operator applied with the same digit in both variables.
    pub fn cartier(&self, r: u32) -> Result<Self> {
        if r >= self.p {
            return Err(Error::DigitOutOfRange { digit: r, p: self.p });
        }
        let mut out = Vec::new();
        for c in self.coeffs.iter().skip(r as usize).step_by(self.p as usize) {
            out.push(c.cartier(r)?);
        }
        Ok(Self::new(self.p, out))
    }

    /// `F(X, t)`: exchanges the roles of the two variables.
    pub fn swap_vars(&self) -> Self {
        let p = self.p;
        let dt = match self.deg_t() {
            Some(d) => d,
            None => return self.clone(),
        };
        let mut rows = vec![vec![0u8; self.coeffs.len()]; dt + 1];
        for (i, j, c) in self.terms() {
            rows[i][j] = c;
        }
        Self::new(p, rows.into_iter().map(|r| FpPoly::from_reduced(p, r)).collect())
    }

    /// `F(tX, X)`: the monomial `t^a X^b` becomes `t^a X^{a+b}`.
    pub fn subst_t_by_tx(&self) -> Self {
        let p = self.p;
        let dx = self.deg_x().unwrap_or(0) + self.deg_t().unwrap_or(0);
        let mut rows = vec![vec![0u8; self.deg_t().map_or(0, |d| d + 1)]; dx + 1];
        for (a, b, c) in self.terms() {
            rows[a + b][a] = c;
        }
        Self::new(p, rows.into_iter().map(|r| FpPoly::from_reduced(p, r)).collect())
    }

    /// Substitutes `X ↦ g(t, X)` by Horner's rule.
    pub fn compose_x(&self, g: &BiPoly) -> Self {
        let mut acc = Self::zero(self.p);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::from_t_poly(a.clone());
        }
        acc
    }

    /// Substitutes `X ↦ h(t)` giving a polynomial in `t`.
    pub fn eval_x(&self, h: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::zero(self.p);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * h) + a;
        }
        acc
    }

    /// Monic gcd of all `t`-coefficients.
    pub fn content(&self) -> FpPoly {
        self.coeffs
            .iter()
            .fold(FpPoly::zero(self.p), |g, c| g.gcd(c))
    }

    /// Divides out the content and scales so that the leading `X`-coefficient
    /// is monic in `t`.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let q = Self::new(
            self.p,
            self.coeffs
                .iter()
                .map(|a| a.exact_div(&c).expect("content divides"))
                .collect(),
        );
        let lead = q.leading_x().leading();
        q.scale(fp::inv(lead, self.p))
    }

    /// Pseudo-remainder of `self` by `d` as polynomials in `X` over `F_p[t]`.
    pub fn pseudo_rem(&self, d: &Self) -> Result<Self> {
        self.same_field(d);
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let dd = d.coeffs.len() - 1;
        let lc = d.leading_x();
        let mut r = self.clone();
        while let Some(dr) = r.deg_x() {
            if dr < dd {
                break;
            }
            let top = r.leading_x();
            r = &r.scale_poly(&lc) - &d.scale_poly(&top).shift_x(dr - dd);
        }
        Ok(r)
    }

    /// Exact quotient in `F_p[t][X]`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        self.same_field(d);
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let p = self.p;
        let dd = d.coeffs.len() - 1;
        let lc = d.leading_x();
        let mut r = self.clone();
        let mut q = vec![FpPoly::zero(p); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(dr) = r.deg_x() {
            if dr < dd {
                return Err(Error::DivisionNotExact);
            }
            let c = r.leading_x().exact_div(&lc)?;
            r = &r - &Self::from_t_poly(c.clone()).shift_x(dr - dd).mul_ref(d);
            q[dr - dd] = c;
        }
        Ok(Self::new(p, q))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    /// Greatest common divisor in `F_p(t)[X]`, returned primitive.
    pub fn gcd_x(&self, other: &Self) -> Self {
        self.same_field(other);
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.deg_x() < b.deg_x() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        if a.deg_x() == Some(0) {
            return Self::one(self.p);
        }
        a.primitive_part()
    }

    /// Whether `d` divides `self` in `F_p(t)[X]`.
    pub fn divisible_by_x(&self, d: &Self) -> bool {
        matches!(self.pseudo_rem(d), Ok(r) if r.is_zero())
    }

    /// Squarefree part in `X` over `F_p(t)`, primitive.
    ///
    /// Yun's algorithm; factors whose multiplicity is a multiple of `p`
    /// surface as a `p`-th power and are handled by extracting the root. If
    /// that root does not exist (an inseparable irreducible factor such as
    /// `X^2 + t` over F₂), the input is returned unchanged with the flag set.
    pub fn squarefree_part(&self) -> Squarefree {
        let f = self.primitive_part();
        if f.deg_x().unwrap_or(0) == 0 {
            return Squarefree {
                part: f,
                inseparable: false,
            };
        }
        let d = f.derivative_x();
        let mut c = if d.is_zero() { f.clone() } else { f.gcd_x(&d) };
        let mut w = f.exact_div(&c).expect("gcd divides").primitive_part();
        let mut part = Self::one(self.p);
        while w.deg_x().unwrap_or(0) > 0 {
            let y = w.gcd_x(&c);
            let z = w.exact_div(&y).expect("gcd divides");
            if z.deg_x().unwrap_or(0) > 0 {
                part = &part * &z;
            }
            c = c.exact_div(&y).expect("gcd divides").primitive_part();
            w = y;
        }
        if c.deg_x().unwrap_or(0) > 0 {
            match c.pth_root() {
                Some(root) => {
                    let inner = root.squarefree_part();
                    if inner.inseparable {
                        return Squarefree {
                            part: self.clone(),
                            inseparable: true,
                        };
                    }
                    part = &part * &inner.part;
                }
                None => {
                    return Squarefree {
                        part: self.clone(),
                        inseparable: true,
                    }
                }
            }
        }
        Squarefree {
            part: part.primitive_part(),
            inseparable: false,
        }
    }

    /// `g` with `g^p = self`, when every exponent in both variables is a
    /// multiple of `p`.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.p as usize;
        let mut out = Vec::new();
        for (j, a) in self.coeffs.iter().enumerate() {
            if j % p != 0 {
                if !a.is_zero() {
                    return None;
                }
                continue;
            }
            out.push(a.pth_root()?);
        }
        Some(Self::new(self.p, out))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.same_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = FpPoly::zero(self.p);
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = rhs.coeffs.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        BiPoly::new(self.p, v)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.p, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        if self.p == 2 {
            return self + rhs;
        }
        self + &(-rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero(self.p);
        }
        let mut v = vec![FpPoly::zero(self.p); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        BiPoly::new(self.p, v)
    }
}

impl fmt::Display for BiPoly {
    /// Descending `X`-degree, each coefficient in descending `t`-degree;
    /// multi-term `t`-factors are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let xpart = match j {
                0 => String::new(),
                1 => "X".to_string(),
                j => format!("X^{j}"),
            };
            if j == 0 {
                if !first {
                    write!(f, "+")?;
                }
                write!(f, "{a}")?;
            } else {
                let coeff = a.to_string();
                let body = if a.is_one() {
                    xpart
                } else if a.weight() == 1 {
                    format!("{coeff}*{xpart}")
                } else {
                    format!("({coeff})*{xpart}")
                };
                if !first {
                    write!(f, "+")?;
                }
                write!(f, "{body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[p={}]({})", self.p, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartier_in_both_variables() {
        // C_0(t^2 X^2 + t X) = t X
        let f = BiPoly::from_terms(2, &[(2, 2), (1, 1)]);
        assert_eq!(f.cartier(0).unwrap(), BiPoly::from_terms(2, &[(1, 1)]));
        assert_eq!(f.cartier(1).unwrap(), BiPoly::from_terms(2, &[(0, 0)]));
    }

    #[test]
    fn swap_and_diagonal_substitution() {
        let f = BiPoly::from_terms(2, &[(2, 1), (0, 3)]);
        assert_eq!(f.swap_vars(), BiPoly::from_terms(2, &[(1, 2), (3, 0)]));
        assert_eq!(f.subst_t_by_tx(), BiPoly::from_terms(2, &[(2, 3), (0, 3)]));
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = BiPoly::from_terms(2, &[(0, 1), (1, 0)]); // X + t
        let b = BiPoly::from_terms(2, &[(0, 1), (0, 0)]); // X + 1
        let f = &(&a * &a) * &b;
        let g = f.gcd_x(&(&a * &BiPoly::from_terms(2, &[(0, 2), (1, 0)])));
        assert_eq!(g, a);
        assert_eq!(f.exact_div(&a).unwrap(), &a * &b);
        assert_eq!(f.squarefree_part().part, &a * &b);
    }

    #[test]
    fn inseparable_input_flagged() {
        // X^2 + t is not a square over F_2(t).
        let f = BiPoly::from_terms(2, &[(0, 2), (1, 0)]);
        let s = f.squarefree_part();
        assert!(s.inseparable);
        assert_eq!(s.part, f);
        // X^2 + t^2 = (X + t)^2.
        let g = BiPoly::from_terms(2, &[(0, 2), (2, 0)]);
        let s = g.squarefree_part();
        assert!(!s.inseparable);
        assert_eq!(s.part, BiPoly::from_terms(2, &[(0, 1), (1, 0)]));
    }

    #[test]
    fn display_format() {
        let f = BiPoly::new(
            2,
            vec![
                FpPoly::from_exponents(2, &[1, 3]),
                FpPoly::from_exponents(2, &[0, 1, 3]),
                FpPoly::from_exponents(2, &[1, 3]),
                FpPoly::from_exponents(2, &[0, 1, 2, 3]),
            ],
        );
        assert_eq!(
            f.to_string(),
            "(t^3+t^2+t+1)*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t"
        );
        assert_eq!(BiPoly::from_terms(2, &[(2, 2), (0, 1)]).to_string(), "t^2*X^2+X");
    }
}
