//! Field-theoretic obstructions to sparseness, read off an annihilating
//! polynomial: degree and Newton-polygon tests, the cubic resolvent of a
//! quartic, integrality, and the Kummer family.

use std::fmt;

use crate::algebra::{newton_slopes, BiPoly, FpPoly, NewtonSlopes, Place};
use crate::nottingham::klopsch_equation;

/// Which level a certificate excludes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Excludes {
    /// Not in QS (hence in neither Ŝ nor S).
    Qs,
    /// Not sparse.
    S,
}

/// A replayable field-theoretic certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldCert {
    /// `deg_X F` is not a power of two and the root valuations at `t = 0`
    /// have coprime multiplicities.
    Degree { degree: usize, slopes: NewtonSlopes },
    /// `deg_X F = 4`, the cubic resolvent has no root in `F₂(t)`, and both
    /// polygons have coprime multiplicities.
    Resolvent {
        resolvent: BiPoly,
        slopes: NewtonSlopes,
        resolvent_slopes: NewtonSlopes,
    },
    /// The leading coefficient is not a monomial, so the series is not
    /// integral over `F̄₂[t, t⁻¹]`.
    NotIntegral { leading: FpPoly },
    /// `F = (t^m + 1)X^m + t^m` with odd `m ≥ 3`.
    Kummer { m: u32 },
}

impl FieldCert {
    pub fn excludes(&self) -> Excludes {
        match self {
            FieldCert::NotIntegral { .. } => Excludes::S,
            _ => Excludes::Qs,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FieldCert::Degree { .. } => "degree",
            FieldCert::Resolvent { .. } => "resolvent",
            FieldCert::NotIntegral { .. } => "integrality",
            FieldCert::Kummer { .. } => "kummer",
        }
    }

    /// Recomputes the certificate from `f`.
    pub fn verify(&self, f: &BiPoly) -> bool {
        field_tests(f).contains(self)
    }
}

impl fmt::Display for FieldCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCert::Degree { degree, slopes } => {
                write!(f, "degree {degree} is not a power of 2 and V_t = {slopes}")
            }
            FieldCert::Resolvent {
                resolvent,
                slopes,
                resolvent_slopes,
            } => write!(
                f,
                "cubic resolvent {resolvent} is irreducible, V_t = {slopes}, V_t(R3) = {resolvent_slopes}"
            ),
            FieldCert::NotIntegral { leading } => write!(f, "leading coefficient {leading} is not a monomial"),
            FieldCert::Kummer { m } => write!(f, "Kummer equation with odd m = {m}"),
        }
    }
}

/// `a₄³X³ + a₂a₄²X² + a₁a₃a₄X + a₀a₃² + a₁²a₄` for `F = Σ a_i X^i` of degree 4.
pub fn cubic_resolvent(f: &BiPoly) -> Option<BiPoly> {
    if f.deg_x() != Some(4) {
        return None;
    }
    let a: Vec<FpPoly> = (0..=4).map(|i| f.coeff_x(i)).collect();
    let c3 = &(&a[4] * &a[4]) * &a[4];
    let c2 = &(&a[2] * &a[4]) * &a[4];
    let c1 = &(&a[1] * &a[3]) * &a[4];
    let c0 = &(&(&a[0] * &a[3]) * &a[3]) + &(&(&a[1] * &a[1]) * &a[4]);
    Some(BiPoly::new(f.p(), vec![c0, c1, c2, c3]))
}

/// All monic divisors of a nonzero polynomial.
fn divisors(a: &FpPoly) -> Vec<FpPoly> {
    let mut out = vec![FpPoly::one(a.p())];
    for (q, m) in a.factor() {
        let mut next = Vec::new();
        for d in &out {
            let mut x = d.clone();
            for _ in 0..=m {
                next.push(x.clone());
                x = &x * &q;
            }
        }
        out = next;
    }
    out
}

/// Whether a cubic over `F_p(t)` has a root `u/v` (rational root test on the
/// primitive part: `u | c₀`, `v | c₃`).
fn cubic_has_root(r: &BiPoly) -> bool {
    let r = r.primitive_part();
    let c0 = r.coeff_x(0);
    if c0.is_zero() {
        return true;
    }
    let p = r.p();
    let units: Vec<u8> = (1..p as u8).collect();
    let us = divisors(&c0);
    let vs = divisors(&r.leading_x());
    for u in &us {
        for v in &vs {
            if u.gcd(v).degree() != Some(0) {
                continue;
            }
            for &c in &units {
                let u = u.scale(c);
                let d = r.deg_x().unwrap_or(0);
                let mut acc = FpPoly::zero(p);
                for i in 0..=d {
                    let term = &(&r.coeff_x(i) * &u.pow(i as u64)) * &v.pow((d - i) as u64);
                    acc = &acc + &term;
                }
                if acc.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Runs every applicable test on `f` (which should be the minimal
/// polynomial of the series; that is the caller's responsibility).
pub fn field_tests(f: &BiPoly) -> Vec<FieldCert> {
    let mut out = Vec::new();
    let Some(d) = f.deg_x() else { return out };
    if d == 0 {
        return out;
    }
    let slopes = newton_slopes(f, Place::T);
    if !d.is_power_of_two() && slopes.multiplicity_gcd() == 1 {
        out.push(FieldCert::Degree {
            degree: d,
            slopes: slopes.clone(),
        });
    }
    if let Some(r) = cubic_resolvent(f) {
        let rs = newton_slopes(&r, Place::T);
        if !cubic_has_root(&r) && slopes.multiplicity_gcd() == 1 && rs.multiplicity_gcd() == 1 {
            out.push(FieldCert::Resolvent {
                resolvent: r,
                slopes: slopes.clone(),
                resolvent_slopes: rs,
            });
        }
    }
    let lead = f.leading_x();
    if !lead.is_monomial() {
        out.push(FieldCert::NotIntegral { leading: lead });
    }
    if f.p() == 2 && d >= 3 && d % 2 == 1 {
        if let Ok(k) = klopsch_equation(d as u32) {
            if f.primitive_part() == k.primitive_part() {
                out.push(FieldCert::Kummer { m: d as u32 });
            }
        }
    }
    out
}
