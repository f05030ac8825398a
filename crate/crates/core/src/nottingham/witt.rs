//! Witt vectors of length 2 and 3 over commutative F₂-algebras, using the
//! explicit component formulas for characteristic 2.

use std::fmt;

use crate::algebra::{FpPoly, RatFn};
use crate::error::{Error, Result};

/// A commutative F₂-algebra whose elements know how to make `0` and `1` of
/// their own ring (so that polynomial rings can carry their modulus).
pub trait F2Algebra: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn square(&self) -> Self {
        self.times(self)
    }
}

/// The prime field F₂ (values 0 and 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct F2(pub u8);

impl F2Algebra for F2 {
    fn zero_like(&self) -> Self {
        F2(0)
    }
    fn one_like(&self) -> Self {
        F2(1)
    }
    fn plus(&self, other: &Self) -> Self {
        F2((self.0 ^ other.0) & 1)
    }
    fn times(&self, other: &Self) -> Self {
        F2(self.0 & other.0 & 1)
    }
}

impl F2Algebra for FpPoly {
    fn zero_like(&self) -> Self {
        FpPoly::zero(self.p())
    }
    fn one_like(&self) -> Self {
        FpPoly::one(self.p())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl F2Algebra for RatFn {
    fn zero_like(&self) -> Self {
        RatFn::zero(self.num().p())
    }
    fn one_like(&self) -> Self {
        RatFn::one(self.num().p())
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// `(a_0, …, a_{n−1})` with `n ∈ {2, 3}`.
#[derive(Clone, Debug, PartialEq)]
pub struct WittVec<A: F2Algebra> {
    comps: Vec<A>,
}

impl<A: F2Algebra> WittVec<A> {
    pub fn new(comps: Vec<A>) -> Result<Self> {
        if !(2..=3).contains(&comps.len()) {
            return Err(Error::Precondition("Witt vectors of length 2 or 3 only".into()));
        }
        Ok(WittVec { comps })
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn comps(&self) -> &[A] {
        &self.comps
    }

    pub fn zero_like(&self) -> Self {
        let z = self.comps[0].zero_like();
        WittVec {
            comps: vec![z; self.len()],
        }
    }

    /// `1 = (1, 0, …, 0)`.
    pub fn one_like(&self) -> Self {
        let mut v = self.zero_like();
        v.comps[0] = self.comps[0].one_like();
        v
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(())
    }

    pub fn add(&self, b: &Self) -> Result<Self> {
        self.check(b)?;
        let a = &self.comps;
        let b = &b.comps;
        let mut out = vec![a[0].plus(&b[0]), a[1].plus(&b[1]).plus(&a[0].times(&b[0]))];
        if a.len() == 3 {
            // a2 + b2 + a1 b1 + a0 a1 b0 + a0 b0 b1 + a0^3 b0 + a0 b0^3
            let a0b0 = a[0].times(&b[0]);
            let c = a[2]
                .plus(&b[2])
                .plus(&a[1].times(&b[1]))
                .plus(&a0b0.times(&a[1]))
                .plus(&a0b0.times(&b[1]))
                .plus(&a0b0.times(&a[0].square()))
                .plus(&a0b0.times(&b[0].square()));
            out.push(c);
        }
        Ok(WittVec { comps: out })
    }

    pub fn mul(&self, b: &Self) -> Result<Self> {
        self.check(b)?;
        let a = &self.comps;
        let b = &b.comps;
        let (a0s, b0s) = (a[0].square(), b[0].square());
        let mut out = vec![a[0].times(&b[0]), a0s.times(&b[1]).plus(&a[1].times(&b0s))];
        if a.len() == 3 {
            // a1^2 b1^2 + a0^4 b2 + a2 b0^4 + a0^2 a1 b0^2 b1
            let c = a[1]
                .square()
                .times(&b[1].square())
                .plus(&a0s.square().times(&b[2]))
                .plus(&a[2].times(&b0s.square()))
                .plus(&a0s.times(&a[1]).times(&b0s).times(&b[1]));
            out.push(c);
        }
        Ok(WittVec { comps: out })
    }

    /// Additive inverse, solved component by component from `add`: the
    /// `k`-th sum component is `b_k` plus terms in earlier components.
    pub fn neg(&self) -> Self {
        let mut b = self.zero_like();
        for k in 0..self.len() {
            let s = self.add(&b).expect("equal lengths").comps[k].clone();
            b.comps[k] = s;
        }
        b
    }

    pub fn sub(&self, b: &Self) -> Result<Self> {
        self.add(&b.neg())
    }

    pub fn frobenius(&self) -> Self {
        WittVec {
            comps: self.comps.iter().map(|c| c.square()).collect(),
        }
    }

    /// `℘(a) = Frob(a) − a`.
    pub fn wp(&self) -> Self {
        self.frobenius().sub(self).expect("equal lengths")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u8]) -> WittVec<F2> {
        WittVec::new(v.iter().map(|&x| F2(x)).collect()).unwrap()
    }

    fn poly(exps: &[usize]) -> FpPoly {
        FpPoly::from_exponents(2, exps)
    }

    #[test]
    fn negation_of_length_two() {
        let a = WittVec::new(vec![poly(&[1]), poly(&[0, 3])]).unwrap();
        let n = a.neg();
        assert_eq!(n.comps()[0], poly(&[1]));
        assert_eq!(n.comps()[1], &poly(&[0, 3]) + &poly(&[2]));
        assert_eq!(a.add(&n).unwrap(), a.zero_like());
    }

    #[test]
    fn wp_of_length_two() {
        let a0 = poly(&[1]);
        let a1 = poly(&[2, 0]);
        let a = WittVec::new(vec![a0.clone(), a1.clone()]).unwrap();
        let want1 = &(&(&a1.square() + &a1) + &a0.square()) + &a0.pow(3);
        assert_eq!(a.wp().comps(), &[&a0.square() + &a0, want1]);
    }

    #[test]
    fn units_and_zero() {
        let a = w(&[1, 0, 1]);
        assert_eq!(a.add(&a.zero_like()).unwrap(), a);
        assert_eq!(a.mul(&a.one_like()).unwrap(), a);
        assert!(matches!(a.add(&w(&[1, 1])), Err(Error::LengthMismatch(3, 2))));
    }

    #[test]
    fn additive_order_of_one() {
        // (1,0,0) has additive order 8 in W_3(F_2).
        let one = w(&[1, 0, 0]);
        let mut acc = one.clone();
        let mut k = 1;
        while acc != one.zero_like() {
            acc = acc.add(&one).unwrap();
            k += 1;
        }
        assert_eq!(k, 8);
    }
}
