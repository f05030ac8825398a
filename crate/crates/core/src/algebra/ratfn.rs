//! Rational functions in `t` over F_p, kept in lowest terms.

use std::fmt;

use super::poly::FpPoly;
use crate::error::{Error, Result};

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    num: FpPoly,
    den: FpPoly,
}

impl RatFn {
    pub fn new(num: FpPoly, den: FpPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_zero() || g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lead = d.leading();
        if lead != 1 {
            let inv = super::fp::inv(lead, d.p());
            n = n.scale(inv);
            d = d.scale(inv);
        }
        if n.is_zero() {
            d = FpPoly::one(d.p());
        }
        Ok(RatFn { num: n, den: d })
    }

    pub fn from_poly(num: FpPoly) -> Self {
        let p = num.p();
        RatFn {
            num,
            den: FpPoly::one(p),
        }
    }

    pub fn zero(p: u32) -> Self {
        Self::from_poly(FpPoly::zero(p))
    }

    pub fn one(p: u32) -> Self {
        Self::from_poly(FpPoly::one(p))
    }

    pub fn num(&self) -> &FpPoly {
        &self.num
    }

    pub fn den(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(&self.num + &other.num, self.den.clone()).expect("monic den");
        }
        let n = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(n, &self.den * &other.den).expect("nonzero den")
    }

    pub fn neg(&self) -> Self {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero den")
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
