//! The Ore route: rewrite `F` as an additive (p-linearized) relation
//! `Σ_{i=0}^{d} B_i(t) X^{p^i}`, then act on `V = {Σ_{k<d} D_k X^{p^k} :
//! deg D_k ≤ N}`.

use std::fmt;

use super::OperatorSpace;
use crate::algebra::{BiPoly, FpPoly, RatFn, TruncSeries};
use crate::error::{Error, Result};

/// `Σ_i b[i] · X^{p^i}` with `b[0] ≠ 0` and `ord_t b[0] ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreForm {
    pub p: u32,
    pub b: Vec<FpPoly>,
}

impl OreForm {
    /// Highest Frobenius exponent `d`.
    pub fn order(&self) -> usize {
        self.b.len() - 1
    }

    /// `ℓ = ord_t B_0`.
    pub fn ell(&self) -> usize {
        self.b[0].valuation().expect("B_0 is nonzero")
    }

    /// As an ordinary polynomial in `X`.
    pub fn to_bipoly(&self) -> BiPoly {
        let p = self.p as usize;
        let mut coeffs = vec![FpPoly::zero(self.p); p.pow(self.order() as u32) + 1];
        for (i, bi) in self.b.iter().enumerate() {
            coeffs[p.pow(i as u32)] = bi.clone();
        }
        BiPoly::new(self.p, coeffs)
    }

    /// Divides out the common content and makes the top coefficient monic.
    fn normalized(p: u32, mut b: Vec<FpPoly>) -> Self {
        while b.last().is_some_and(|x| x.is_zero()) {
            b.pop();
        }
        let g = b.iter().fold(FpPoly::zero(p), |g, x| g.gcd(x));
        let mut b: Vec<FpPoly> = b.iter().map(|x| x.exact_div(&g).expect("content divides")).collect();
        let lead = b.last().expect("nonzero relation").leading();
        let inv = crate::algebra::fp::inv(lead, p);
        for x in &mut b {
            *x = x.scale(inv);
        }
        OreForm { p, b }
    }
}

impl fmt::Display for OreForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bipoly())
    }
}

/// Reduces a polynomial in `X` (rational coefficients) modulo the monic
/// `X^d + Σ f[j] X^j`.
fn reduce_mod(mut a: Vec<RatFn>, f: &[RatFn]) -> Vec<RatFn> {
    let d = f.len();
    for k in (d..a.len()).rev() {
        let c = a[k].clone();
        if c.is_zero() {
            continue;
        }
        for (j, fj) in f.iter().enumerate() {
            if !fj.is_zero() {
                a[k - d + j] = a[k - d + j].sub(&c.mul(fj));
            }
        }
    }
    a.truncate(d);
    a
}

/// `(Σ c_j X^j)^p = Σ c_j(t^p) X^{pj}` in characteristic p.
fn frobenius(v: &[RatFn], p: u32) -> Vec<RatFn> {
    let mut out = vec![RatFn::zero(p); (v.len().max(1) - 1) * p as usize + 1];
    for (j, c) in v.iter().enumerate() {
        out[j * p as usize] =
            RatFn::new(c.num().frobenius_stretch(), c.den().frobenius_stretch()).expect("nonzero den");
    }
    out
}

/// The first linear relation among `X, X^p, X^{p^2}, …` modulo `F`, with
/// `B_0 = 0` removed by Cartier descent and `ord B_0 ≥ 1` enforced (if `B_0`
/// is a unit every `B_i` is multiplied by `t`, which keeps the roots).
pub fn to_ore_form(f: &BiPoly) -> Result<OreForm> {
    let p = f.p();
    let d = f.deg_x().ok_or_else(|| Error::Precondition("zero polynomial".into()))?;
    if d == 0 {
        return Err(Error::Precondition("polynomial is constant in X".into()));
    }
    let lead = RatFn::from_poly(f.leading_x());
    let monic: Vec<RatFn> = (0..d)
        .map(|j| RatFn::from_poly(f.coeff_x(j)).div(&lead))
        .collect::<Result<_>>()?;

    // Incremental elimination: each stored row keeps its combination of the
    // powers X^{p^i} so that a vanishing row yields the relation.
    struct Row {
        vec: Vec<RatFn>,
        combo: Vec<RatFn>,
        pivot: usize,
    }
    let mut rows: Vec<Row> = Vec::new();
    let mut power = reduce_mod(
        {
            let mut v = vec![RatFn::zero(p); 2];
            v[1] = RatFn::one(p);
            v
        },
        &monic,
    );
    power.resize(d, RatFn::zero(p));
    let relation = 'search: {
        for i in 0..=d {
            let mut w = power.clone();
            let mut combo = vec![RatFn::zero(p); i + 1];
            combo[i] = RatFn::one(p);
            for row in &rows {
                let c = w[row.pivot].clone();
                if c.is_zero() {
                    continue;
                }
                let factor = c.div(&row.vec[row.pivot])?;
                for (x, y) in w.iter_mut().zip(&row.vec) {
                    *x = x.sub(&factor.mul(y));
                }
                for (x, y) in combo.iter_mut().zip(&row.combo) {
                    *x = x.sub(&factor.mul(y));
                }
            }
            match w.iter().position(|x| !x.is_zero()) {
                None => break 'search combo,
                Some(pivot) => rows.push(Row { vec: w, combo, pivot }),
            }
            let mut next = reduce_mod(frobenius(&power, p), &monic);
            next.resize(d, RatFn::zero(p));
            power = next;
        }
        return Err(Error::Precondition("no additive relation found".into()));
    };

    // Clear denominators.
    let lcm = relation.iter().fold(FpPoly::one(p), |l, c| {
        let g = l.gcd(c.den());
        (&l * c.den()).exact_div(&g).expect("gcd divides")
    });
    let mut b: Vec<FpPoly> = relation
        .iter()
        .map(|c| &(c.num() * &lcm).exact_div(c.den()).expect("lcm") * &FpPoly::one(p))
        .collect();

    // Cartier descent while B_0 = 0.
    while b[0].is_zero() {
        let s = (0..p)
            .find(|&s| b[1..].iter().any(|x| !x.cartier(s).expect("digit").is_zero()))
            .expect("nonzero relation");
        b = b[1..].iter().map(|x| x.cartier(s).expect("digit")).collect();
    }
    let mut form = OreForm::normalized(p, b);
    if form.ell() == 0 {
        let t = FpPoly::monomial(p, 1, 1);
        form.b = form.b.iter().map(|x| x * &t).collect();
    }
    Ok(form)
}

/// The space `V` of the Ore route with the operators
/// `Λ_r(Σ D_k X^{p^k}) = Σ_{k≥1} C_r(D_k − D_0 B_k B_0^{p^k−2}) X^{p^{k−1}}`.
#[derive(Clone, Debug)]
pub struct OreSpace {
    form: OreForm,
    /// `W_k = B_k · B_0^{p^k − 2}` for `k = 1..=d` (index `k − 1`).
    w: Vec<FpPoly>,
    /// Degree bound `N` for the `D_k`.
    bound: usize,
}

impl OreSpace {
    pub fn new(form: OreForm) -> Self {
        let p = form.p as usize;
        let b0 = &form.b[0];
        let deg0 = b0.degree().expect("B_0 nonzero");
        let w: Vec<FpPoly> = (1..=form.order())
            .map(|k| &form.b[k] * &b0.pow((p.pow(k as u32) - 2) as u64))
            .collect();
        let mut bound = deg0;
        for (i, bi) in form.b.iter().enumerate().skip(1) {
            let num = bi.degree().unwrap_or(0) + (p.pow(i as u32) - 2) * deg0;
            bound = bound.max(num.div_ceil(p - 1).saturating_sub(1));
        }
        // Closure: C_r(D_0 W_k) must stay within the bound.
        while w.iter().any(|wk| (bound + wk.degree().unwrap_or(0)) / p > bound) {
            bound += 1;
        }
        OreSpace { form, w, bound }
    }

    pub fn form(&self) -> &OreForm {
        &self.form
    }

    pub fn degree_bound(&self) -> usize {
        self.bound
    }

    /// Constant term of the series represented by `v` along the root `σ`:
    /// with `y = σ / B_0`, vertex `Σ D_k X^{p^k}` stands for `Σ D_k y^{p^k}`.
    pub fn labels(&self, elements: &[Vec<FpPoly>], root: &TruncSeries) -> Result<Vec<u8>> {
        let p = self.form.p;
        let ell = self.form.ell();
        if root.precision() < ell + 1 {
            return Err(Error::InsufficientPrecision {
                have: root.precision(),
                need: ell + 1,
            });
        }
        // Y = y · t^ℓ = σ · (B_0 / t^ℓ)^{-1}, needed modulo t^{ℓ+1}.
        let unit = TruncSeries::from_poly(&self.form.b[0].unshift(ell), ell + 1);
        let y = root.truncate(ell + 1).mul(&unit.invert_unit()?);
        let pk: Vec<usize> = (0..self.form.order()).map(|k| (p as usize).pow(k as u32)).collect();
        Ok(elements
            .iter()
            .map(|v| {
                let mut acc = 0u32;
                for (k, dk) in v.iter().enumerate() {
                    for (i, &c) in dk.coeffs().iter().enumerate() {
                        if c != 0 && i % pk[k] == 0 && i / pk[k] <= ell {
                            acc += c as u32 * y.coeff(ell - i / pk[k]) as u32;
                        }
                    }
                }
                (acc % p) as u8
            })
            .collect())
    }
}

impl OperatorSpace for OreSpace {
    type Elem = Vec<FpPoly>;

    fn p(&self) -> u32 {
        self.form.p
    }

    fn dim(&self) -> usize {
        self.form.order() * (self.bound + 1)
    }

    fn start(&self) -> Vec<FpPoly> {
        let mut v = vec![FpPoly::zero(self.form.p); self.form.order()];
        v[0] = self.form.b[0].clone();
        v
    }

    fn apply(&self, r: u32, v: &Vec<FpPoly>) -> Vec<FpPoly> {
        let d = self.form.order();
        (1..=d)
            .map(|k| {
                let prod = &v[0] * &self.w[k - 1];
                let e = if k < d { &v[k] - &prod } else { -&prod };
                e.cartier(r).expect("digit below p")
            })
            .collect()
    }
}
