//! Roots of `F(t, X)` in `F_p⟦t⟧`: seed enumeration and Hensel lifting.

use super::bipoly::BiPoly;
use super::fp;
use super::resultant::resultant_x;
use super::series::TruncSeries;
use crate::error::{Error, Result};

/// `ord_t Res_X(F, ∂F/∂X)`, or `None` if the resultant vanishes (repeated
/// factors or an inseparable polynomial).
pub fn disc_valuation(f: &BiPoly) -> Option<usize> {
    let d = f.derivative_x();
    if d.is_zero() {
        return None;
    }
    resultant_x(f, &d).ok()?.valuation()
}

/// Orders of `F(t, s)` and `F_X(t, s)` for a polynomial approximation `s`,
/// evaluated to precision `prec` (`prec` stands for "vanishes to precision").
fn residual_orders(f: &BiPoly, fx: &BiPoly, s: &TruncSeries, prec: usize) -> (usize, usize) {
    let s = extend(s, prec);
    let v = TruncSeries::eval_poly(f, &s).valuation().unwrap_or(prec);
    let e = TruncSeries::eval_poly(fx, &s).valuation().unwrap_or(prec);
    (v, e)
}

/// Zero-pads (or truncates) a series, treating it as an exact polynomial.
fn extend(s: &TruncSeries, n: usize) -> TruncSeries {
    TruncSeries::from_poly(&s.to_poly(), n)
}

/// Checks the Hensel condition for a polynomial approximation and returns
/// `(k, e)`: the approximation agrees with a unique root modulo `t^k`, and
/// `e = ord_t F_X` along that root.
fn hensel_start(f: &BiPoly, fx: &BiPoly, seed: &TruncSeries, probe: usize) -> Result<(usize, usize)> {
    let (v, e) = residual_orders(f, fx, seed, probe);
    if e >= probe || v < 2 * e + 1 {
        return Err(Error::NotLiftable { index: v });
    }
    Ok((v - e, e))
}

/// The unique root of `F` extending `seed`, to precision `n`.
///
/// The seed is read as an exact polynomial `σ₀`; the Hensel condition
/// `ord F(σ₀) > 2·ord F_X(σ₀)` must hold. Lifting solves the linear
/// condition `F(σ₀) + δ·F_X(σ₀) ≡ 0` for a whole block of coefficients at
/// once (each round roughly doubles the known precision); the per-coefficient
/// variant [`hensel_root_coefficientwise`] is kept as a cross-check.
pub fn hensel_root(f: &BiPoly, seed: &TruncSeries, n: usize) -> Result<TruncSeries> {
    let fx = f.derivative_x();
    let probe = (2 * seed.precision() + 2).max(n.min(4 * seed.precision() + 8));
    let (mut k, e) = hensel_start(f, &fx, seed, probe)?;
    let p = f.p();
    let mut s = seed.to_poly().truncate(k);
    while k < n {
        let target = (2 * k - e).min(n);
        let prec = target + e;
        let sig = TruncSeries::from_poly(&s, prec);
        let fv = TruncSeries::eval_poly(f, &sig);
        let fd = TruncSeries::eval_poly(&fx, &sig);
        let a = TruncSeries::new(p, fv.coeffs()[e..].to_vec());
        let u = TruncSeries::new(p, fd.coeffs()[e..].to_vec());
        let delta = a.truncate(target).mul(&u.invert_unit()?).neg();
        s = &s + &delta.to_poly().truncate(target);
        k = target;
    }
    Ok(TruncSeries::from_poly(&s, n))
}

/// Hensel lifting one coefficient at a time: for each `k` past the known
/// block, substitute `σ₀ + c·t^k` and solve the linear condition for `c`.
pub fn hensel_root_coefficientwise(f: &BiPoly, seed: &TruncSeries, n: usize) -> Result<TruncSeries> {
    let fx = f.derivative_x();
    let probe = 2 * seed.precision() + 2;
    let (k0, e) = hensel_start(f, &fx, seed, probe)?;
    let p = f.p();
    let mut coeffs = extend(seed, n.max(k0)).coeffs().to_vec();
    for c in coeffs.iter_mut().skip(k0) {
        *c = 0;
    }
    let lead = {
        let s = TruncSeries::new(p, coeffs[..(e + 1).min(coeffs.len())].to_vec());
        TruncSeries::eval_poly(&fx, &extend(&s, e + 1)).coeff(e)
    };
    let inv = fp::inv(lead, p);
    for k in k0..n {
        let s = TruncSeries::new(p, coeffs[..k].to_vec());
        let val = TruncSeries::eval_poly(f, &extend(&s, k + e + 1)).coeff(k + e);
        coeffs[k] = fp::mul(fp::neg(val, p), inv, p);
    }
    coeffs.truncate(n);
    Ok(TruncSeries::new(p, coeffs))
}

/// All roots of `F` in `F_p⟦t⟧` compatible with `constraint`, each returned
/// as a Hensel seed: the root modulo `t^{max(2m+1, |constraint|)}` where
/// `m = ord_t Res_X(F, F_X)` (computed on the squarefree part).
///
/// The search fixes digits `a_0, a_1, …` depth-first, pruning a branch as
/// soon as `F(σ₀) ≢ 0 mod t^j`, and stops branching once the prefix
/// determines a unique root by Hensel's criterion.
pub fn truncated_solutions(f: &BiPoly, constraint: Option<&TruncSeries>) -> Result<Vec<TruncSeries>> {
    if f.is_zero() {
        return Err(Error::Precondition("zero polynomial".into()));
    }
    let sq = f.squarefree_part();
    if sq.inseparable {
        return Err(Error::Inseparable);
    }
    let g = sq.part;
    if g.deg_x().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let m = disc_valuation(&g).ok_or(Error::Inseparable)?;
    let cons_len = constraint.map_or(0, |c| c.precision());
    let depth = (2 * m + 1).max(cons_len);
    let gx = g.derivative_x();
    let p = g.p();
    let mut found: Vec<TruncSeries> = Vec::new();
    let mut stack: Vec<Vec<u8>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        let j = prefix.len();
        let sig = TruncSeries::new(p, prefix.clone());
        if j > 0 {
            let val = TruncSeries::eval_poly(&g, &extend(&sig, j));
            if val.valuation().is_some() {
                continue;
            }
            // Hensel-determined prefix: record its root and stop branching.
            // Only `e = ord F_X(σ₀) < j` and `F(σ₀) ≡ 0 mod t^{2e+1}` matter,
            // so both are evaluated no further than needed (the search can
            // visit ~p^e nodes before wrong digits are pruned).
            let e = TruncSeries::eval_poly(&gx, &extend(&sig, j)).valuation();
            let determined = e.is_some_and(|e| {
                TruncSeries::eval_poly(&g, &extend(&sig, 2 * e + 1))
                    .valuation()
                    .is_none()
            });
            if determined {
                let root = hensel_root(&g, &sig, depth)?;
                let matches = constraint.is_none_or(|c| c.coeffs() == &root.coeffs()[..c.precision()]);
                if matches && !found.contains(&root) {
                    found.push(root);
                }
                continue;
            }
            if j >= depth {
                continue;
            }
        }
        let digits: Vec<u8> = match constraint {
            Some(c) if j < c.precision() => vec![c.coeff(j)],
            _ => (0..p as u8).collect(),
        };
        for d in digits.into_iter().rev() {
            let mut next = prefix.clone();
            next.push(d);
            stack.push(next);
        }
    }
    found.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    Ok(found)
}
