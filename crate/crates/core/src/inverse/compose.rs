//! Equations for compositional powers, by elimination.

use super::guess::hermite_pade;
use crate::algebra::{resultant_y, BiPoly, TruncSeries};
use crate::error::{Error, Result};

/// `Res_Y(A(t, Y), B(Y, X))` with one retry after stripping contents if the
/// resultant vanishes identically.
fn eliminate(a: &BiPoly, b: &BiPoly) -> Result<BiPoly> {
    let r = resultant_y(a, b)?;
    if !r.is_zero() {
        return Ok(r);
    }
    let r = resultant_y(&a.primitive_part(), &b.primitive_part())?;
    if r.is_zero() {
        return Err(Error::DegenerateResultant);
    }
    Ok(r)
}

fn squarefree(r: &BiPoly) -> Result<BiPoly> {
    let sq = r.squarefree_part();
    if sq.inseparable {
        return Err(Error::Inseparable);
    }
    Ok(sq.part.primitive_part())
}

/// Applies `n` doublings: returns an equation for `σ^{∘2ⁿ}` and that series
/// truncated to the precision of `seed`.
pub fn compose_power(f: &BiPoly, seed: &TruncSeries, n: u32) -> Result<(BiPoly, TruncSeries)> {
    if seed.precision() < 2 || seed.coeff(0) != 0 || seed.coeff(1) != 1 {
        return Err(Error::NotTangentToIdentity);
    }
    let mut f = f.clone();
    let mut s = seed.clone();
    for _ in 0..n {
        f = squarefree(&eliminate(&f, &f)?)?;
        s = TruncSeries::compose(&s, &s)?;
    }
    Ok((f, s))
}

/// `ord_t` of `f(t, s)` and `f_X(t, s)`, with `None` for "vanishes to the
/// available precision".
fn orders(f: &BiPoly, s: &TruncSeries) -> (Option<usize>, Option<usize>) {
    (
        TruncSeries::eval_poly(f, s).valuation(),
        TruncSeries::eval_poly(&f.derivative_x(), s).valuation(),
    )
}

/// Whether the root of `h` near `s` is forced to be the root of `r` near
/// `s`, given that `h | r` and that `s` agrees with a root of `r` to the
/// full precision of `s`.
///
/// Hensel: `h` has a root agreeing with `s` modulo `t^{v_h − e_h}`; any two
/// roots of `r` agreeing modulo `t^k` with `k > ord r_X(s)` coincide.
pub fn ball_selects(h: &BiPoly, r: &BiPoly, s: &TruncSeries) -> bool {
    let n = s.precision();
    let (vh, eh) = orders(h, s);
    let Some(eh) = eh else { return false };
    let vh = vh.unwrap_or(n);
    if vh <= 2 * eh {
        return false;
    }
    let k = n.min(vh - eh);
    let Some(er) = orders(r, s).1 else { return false };
    k > er && r.divisible_by_x(h)
}

/// One step `σ_k ↦ σ_k^{∘p}` on certified data: `g` annihilates the series
/// that `s` approximates to its full precision. The resultant is replaced by
/// a smaller guessed factor whenever [`ball_selects`] certifies it.
pub fn power_step(g: &BiPoly, s: &TruncSeries, p: u32, dmax: usize, hmax: usize) -> Result<(BiPoly, TruncSeries)> {
    let mut e = g.clone();
    let mut power = s.clone();
    for _ in 1..p {
        let r = squarefree(&eliminate(&e, g)?)?;
        power = TruncSeries::compose(s, &power)?;
        e = r;
        if e.deg_x().unwrap_or(0) > 1 {
            for h in hermite_pade(&power, dmax.min(e.deg_x().unwrap_or(0)), hmax) {
                if h.deg_x() < e.deg_x() && ball_selects(&h, &e, &power) {
                    e = h;
                    break;
                }
            }
        }
    }
    Ok((e, power))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{hensel_root, parse_bipoly, parse_series};

    #[test]
    fn square_of_cs_series() {
        let f = parse_bipoly("(t+1)^2*X^2+X+t", 2).unwrap();
        let seed = hensel_root(&f, &parse_series("t", 2).unwrap(), 64).unwrap();
        let (g, s) = compose_power(&f, &seed, 1).unwrap();
        assert!(TruncSeries::eval_poly(&g, &s).valuation().is_none());
        let target = parse_bipoly("(t^2+1)*X^2+X+t^2+t", 2).unwrap();
        assert!(TruncSeries::eval_poly(&target, &s).valuation().is_none());
        assert!(g.divisible_by_x(&target));
        assert_eq!(s.truncate(5), parse_series("t+t^4+O(t^5)", 2).unwrap());
    }

    #[test]
    fn zero_steps_is_identity() {
        let f = parse_bipoly("X+t", 2).unwrap();
        let seed = parse_series("t+O(t^8)", 2).unwrap();
        assert_eq!(compose_power(&f, &seed, 0).unwrap(), (f, seed));
    }

    #[test]
    fn sigma_min_square() {
        let f = parse_bipoly("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t", 2).unwrap();
        let seed = hensel_root(&f, &parse_series("t+t^2", 2).unwrap(), 128).unwrap();
        let (g, s) = compose_power(&f, &seed, 1).unwrap();
        assert!(TruncSeries::eval_poly(&g, &s).valuation().is_none());
        assert_eq!(s.truncate(5), parse_series("t+t^4+O(t^5)", 2).unwrap());
    }
}
