//! Sylvester resultants by fraction-free (Bareiss) elimination.

use super::bipoly::BiPoly;
use super::poly::FpPoly;
use crate::error::{Error, Result};

/// An integral domain with exact division, enough for Bareiss elimination.
pub trait ExactRing: Clone {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, d: &Self) -> Result<Self>;
}

impl ExactRing for FpPoly {
    fn zero_like(&self) -> Self {
        FpPoly::zero(self.p())
    }
    fn is_zero(&self) -> bool {
        FpPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, d: &Self) -> Result<Self> {
        FpPoly::exact_div(self, d)
    }
}

impl ExactRing for BiPoly {
    fn zero_like(&self) -> Self {
        BiPoly::zero(self.p())
    }
    fn is_zero(&self) -> bool {
        BiPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, d: &Self) -> Result<Self> {
        BiPoly::exact_div(self, d)
    }
}

/// Determinant of a square matrix by Bareiss fraction-free elimination.
pub fn determinant<R: ExactRing>(mut m: Vec<Vec<R>>, one: R) -> Result<R> {
    let n = m.len();
    if n == 0 {
        return Ok(one);
    }
    let mut prev = one;
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(m[0][0].zero_like()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].mul(&m[k][k]);
                let b = m[i][k].mul(&m[k][j]);
                m[i][j] = a.sub(&b).exact_div(&prev)?;
            }
            m[i][k] = m[i][k].zero_like();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Sylvester matrix of `a = Σ a_i Y^i` and `b = Σ b_j Y^j` (coefficients in
/// ascending order), rows written with descending powers.
fn sylvester<R: ExactRing>(a: &[R], b: &[R]) -> Vec<Vec<R>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let zero = a[0].zero_like();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant in `X` of two polynomials with coefficients in `F_p[t]`.
pub fn resultant_x(f: &BiPoly, g: &BiPoly) -> Result<FpPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Precondition("resultant of a zero polynomial".into()));
    }
    let p = f.p();
    if f.deg_x() == Some(0) {
        return Ok(f.coeff_x(0).pow(g.deg_x().unwrap() as u64));
    }
    if g.deg_x() == Some(0) {
        return Ok(g.coeff_x(0).pow(f.deg_x().unwrap() as u64));
    }
    determinant(sylvester(f.coeffs_by_x(), g.coeffs_by_x()), FpPoly::one(p))
}

/// `Res_Y(A(t, Y), B(Y, X))`: `A` is read with its `X` slot holding `Y`,
/// `B` with its `t` slot holding `Y`. The result is a polynomial in `(t, X)`.
pub fn resultant_y(a: &BiPoly, b: &BiPoly) -> Result<BiPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition("resultant of a zero polynomial".into()));
    }
    let p = a.p();
    // Coefficients of Y^i in A: polynomials in t, constant in X.
    let ac: Vec<BiPoly> = a
        .coeffs_by_x()
        .iter()
        .map(|c| BiPoly::from_t_poly(c.clone()))
        .collect();
    // Coefficients of Y^i in B: polynomials in X, constant in t.
    let bt = b.swap_vars();
    let bc: Vec<BiPoly> = bt.coeffs_by_x().iter().map(BiPoly::from_x_poly).collect();
    if ac.len() < 2 || bc.len() < 2 {
        return Err(Error::Precondition("resultant needs positive degree in Y".into()));
    }
    determinant(sylvester(&ac, &bc), BiPoly::one(p))
}
