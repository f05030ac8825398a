//! Exact finite-order testing in the Nottingham group.

use std::fmt;

use super::compose::power_step;
use super::guess::{guess_equation, GuessCaps};
use crate::algebra::{BiPoly, FpPoly, TruncSeries};
use crate::dfao::Dfao;
use crate::error::{Error, Result};

/// Precision of the truncated-composition filter.
pub const FILTER_PRECISION: usize = 256;
/// Precision of the series carried along the certified route.
pub const CERTIFY_PRECISION: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    /// Order `p^n`.
    Finite { n: u32 },
    /// `σ^{∘p^i} ≠ t` for all `i ≤ nmax`.
    NotFiniteUpTo { nmax: u32 },
}

/// How an [`Order`] was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderEvidence {
    /// Equations for `σ^{∘p^i}`, `i = 0..=n`, each certified; the last has
    /// the root `t` selected by Hensel's criterion.
    Certified { equations: Vec<BiPoly> },
    /// `σ^{∘p^n} ≡ t` only to the given precision (the certified route ran
    /// out of caps); `σ^{∘p^{n−1}} ≠ t` is still exact.
    Truncated { precision: usize, reason: String },
    /// A nonzero coefficient of `σ^{∘p^i} − t` for every `i ≤ nmax` (exact).
    NonIdentity { precision: usize },
    /// Certified equations for `σ^{∘p^i}`, `i = 0..=nmax`; the powers that
    /// agree with `t` to the filter precision do not have the root `t`.
    Refuted { equations: Vec<BiPoly> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub order: Order,
    pub evidence: OrderEvidence,
}

impl OrderReport {
    pub fn is_certified(&self) -> bool {
        !matches!(self.evidence, OrderEvidence::Truncated { .. })
    }
}

impl fmt::Display for OrderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.order {
            Order::Finite { n } => write!(f, "order p^{n}")?,
            Order::NotFiniteUpTo { nmax } => write!(f, "not of finite order p^n for n ≤ {nmax}")?,
        }
        match &self.evidence {
            OrderEvidence::Certified { .. } => write!(f, " (certified)"),
            OrderEvidence::Truncated { precision, .. } => write!(f, " (truncated to O(t^{precision}))"),
            OrderEvidence::NonIdentity { precision } => write!(f, " (exact, witnessed below t^{precision})"),
            OrderEvidence::Refuted { .. } => write!(f, " (exact, t is not a root of the certified equations)"),
        }
    }
}

/// Least `i ≤ nmax` with `σ^{∘p^i} ≡ t` to the precision of `s`.
pub fn truncated_order(s: &TruncSeries, nmax: u32) -> Result<Option<u32>> {
    let p = s.p() as u64;
    let id = TruncSeries::identity(s.p(), s.precision());
    let mut cur = s.clone();
    for i in 0..=nmax {
        if cur == id {
            return Ok(Some(i));
        }
        if i < nmax {
            cur = cur.compose_power(p)?;
        }
    }
    Ok(None)
}

fn require_tangent(s: &TruncSeries) -> Result<()> {
    if s.coeff(0) != 0 || s.coeff(1) != 1 {
        return Err(Error::NotTangentToIdentity);
    }
    Ok(())
}

/// Exact order of the series of `a` (which must be `t + O(t²)`), up to
/// `p^{nmax}`.
pub fn exact_order(a: &Dfao, nmax: u32) -> Result<OrderReport> {
    exact_order_with(a, nmax, GuessCaps::default())
}

pub fn exact_order_with(a: &Dfao, nmax: u32, caps: GuessCaps) -> Result<OrderReport> {
    let p = a.p();
    let s = a.series_prefix(FILTER_PRECISION);
    require_tangent(&s)?;
    let Some(_) = truncated_order(&s, nmax)? else {
        return Ok(OrderReport {
            order: Order::NotFiniteUpTo { nmax },
            evidence: OrderEvidence::NonIdentity {
                precision: FILTER_PRECISION,
            },
        });
    };
    // Agreement with t at the filter precision can be coincidental (Σ t^{4^k}
    // has σ^{∘4} = t + t^256 + …); a longer look is far cheaper than guessing
    // equations, and any nonzero coefficient it finds is exact.
    let Some(n) = truncated_order(&a.series_prefix(CERTIFY_PRECISION), nmax)? else {
        return Ok(OrderReport {
            order: Order::NotFiniteUpTo { nmax },
            evidence: OrderEvidence::NonIdentity {
                precision: CERTIFY_PRECISION,
            },
        });
    };
    let truncated = |reason: String| -> Result<OrderReport> {
        // A longer look before settling for truncated evidence.
        let longer = a.series_prefix(2 * FILTER_PRECISION);
        if truncated_order(&longer, n)? != Some(n) {
            return Err(Error::CertificationFailed(format!(
                "truncated filter inconsistent at O(t^{})",
                2 * FILTER_PRECISION
            )));
        }
        Ok(OrderReport {
            order: Order::Finite { n },
            evidence: OrderEvidence::Truncated {
                precision: 2 * FILTER_PRECISION,
                reason,
            },
        })
    };
    let cert = match guess_equation(a, caps) {
        Ok(c) => c,
        Err(Error::CapsExhausted(msg)) => return truncated(msg),
        Err(e) => return Err(e),
    };
    let mut g = cert.f;
    let mut cur = a.series_prefix(CERTIFY_PRECISION);
    let mut equations = vec![g.clone()];
    let t = FpPoly::monomial(p, 1, 1);
    // equations[i] annihilates σ^{∘p^i}. Powers below p^n are already
    // exactly non-identity; from p^n on, t must be an isolated root.
    for i in 0..=nmax {
        if i >= n {
            if g.eval_x(&t).is_zero() {
                // t is the root selected by the exact approximation `cur`
                // when ord(cur − t) > ord g_X(t, t).
                let e = g.derivative_x().eval_x(&t).valuation();
                let agree = cur
                    .sub(&TruncSeries::identity(p, cur.precision()))
                    .valuation()
                    .unwrap_or(cur.precision());
                return match e {
                    Some(e) if agree > e => Ok(OrderReport {
                        order: Order::Finite { n: i },
                        evidence: OrderEvidence::Certified { equations },
                    }),
                    _ => Err(Error::CertificationFailed("the root t is not isolated".into())),
                };
            }
            if i == nmax {
                return Ok(OrderReport {
                    order: Order::NotFiniteUpTo { nmax },
                    evidence: OrderEvidence::Refuted { equations },
                });
            }
        }
        match power_step(&g, &cur, p, caps.dmax, caps.hmax) {
            Ok((ng, ns)) => {
                g = ng;
                cur = ns;
            }
            Err(e) if i < n => return truncated(e.to_string()),
            Err(e) => {
                return Err(Error::CapsExhausted(format!(
                    "σ^{{∘{}}} ≠ t is certified but higher powers are not resolved: {e}",
                    (p as u64).pow(n)
                )))
            }
        }
        equations.push(g.clone());
    }
    unreachable!("n ≤ nmax")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_bipoly, parse_series};
    use crate::christol::{solve, SolveOptions};

    fn automaton(eq: &str, prefix: &str) -> Dfao {
        let f = parse_bipoly(eq, 2).unwrap();
        let c = parse_series(prefix, 2).unwrap();
        solve(&f, Some(&c), &SolveOptions::default()).unwrap().remove(0).automaton
    }

    #[test]
    fn sigma_min_has_order_four() {
        let a = automaton("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t", "t+t^2");
        let r = exact_order(&a, 4).unwrap();
        assert_eq!(r.order, Order::Finite { n: 2 });
        assert!(r.is_certified(), "{r}");
    }

    #[test]
    fn even_depth_is_not_finite() {
        let a = crate::dfao::polynomial_automaton(&FpPoly::from_exponents(2, &[1, 3]));
        let r = exact_order(&a, 4).unwrap();
        assert_eq!(r.order, Order::NotFiniteUpTo { nmax: 4 });
    }

    #[test]
    fn boundary_agreement_is_exposed() {
        // Σ t^{4^k} is the root of X^4 + X + t; its fourth power is
        // t + t^256 + …, which passes the 256-term filter.
        let a = automaton("X^4+X+t", "t");
        let r = exact_order(&a, 2).unwrap();
        assert_eq!(r.order, Order::NotFiniteUpTo { nmax: 2 });
        assert!(r.is_certified(), "{r}");
    }

    #[test]
    fn identity_has_order_one() {
        let a = crate::dfao::polynomial_automaton(&FpPoly::monomial(2, 1, 1));
        let r = exact_order(&a, 4).unwrap();
        assert_eq!(r.order, Order::Finite { n: 0 });
        assert!(r.is_certified());
    }
}
