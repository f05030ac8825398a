//! The diagonal route: a root `τ` with `τ(0) = 0` of `G` satisfying
//! `G(0,0) = 0`, `c = G_X(0,0) ≠ 0` is the diagonal of `P/Q` with
//! `P = c⁻¹ X G_X(tX, X)` and `Q = c⁻¹ X⁻¹ G(tX, X)`. The operators are
//! `Λ_r(s) = C_r(s · Q^{p−1})` on polynomials `s` in a fixed box.

use super::{build_graph, OperatorSpace};
use crate::algebra::{fp, BiPoly, FpPoly, TruncSeries};
use crate::dfao::{add_series, polynomial_automaton, shift_by, Dfao};
use crate::error::{Error, Result};

/// Polynomials `s(t, X)` with `deg_t s ≤ T`, `deg_X s ≤ M`, stored densely as
/// `s[i * (M + 1) + j]` for the coefficient of `t^i X^j`.
#[derive(Clone, Debug)]
pub struct DiagonalSpace {
    p: u32,
    t_bound: usize,
    x_bound: usize,
    start: Vec<u8>,
    /// Nonzero terms `(a, b, c)` of `Q^{p−1}`.
    q_terms: Vec<(usize, usize, u8)>,
}

impl DiagonalSpace {
    /// Requires `G(0,0) = 0` and `G_X(0,0) ≠ 0`.
    pub fn new(g: &BiPoly) -> Result<Self> {
        let p = g.p();
        if g.coeff(0, 0) != 0 {
            return Err(Error::Precondition("G(0,0) must vanish".into()));
        }
        let c = g.coeff(0, 1);
        if c == 0 {
            return Err(Error::Precondition("G_X(0,0) must be nonzero".into()));
        }
        let cinv = fp::inv(c, p);
        let sub = g.subst_t_by_tx();
        let q = BiPoly::new(p, sub.coeffs_by_x()[1..].to_vec()).scale(cinv);
        let pp = g.derivative_x().subst_t_by_tx().shift_x(1).scale(cinv);
        let t_bound = pp.deg_t().unwrap_or(0).max(q.deg_t().unwrap_or(0));
        let x_bound = pp.deg_x().unwrap_or(0).max(q.deg_x().unwrap_or(0));
        let mut qp = BiPoly::one(p);
        for _ in 0..p - 1 {
            qp = &qp * &q;
        }
        let q_terms = qp.terms();
        let mut start = vec![0u8; (t_bound + 1) * (x_bound + 1)];
        for (i, j, c) in pp.terms() {
            start[i * (x_bound + 1) + j] = c;
        }
        Ok(DiagonalSpace {
            p,
            t_bound,
            x_bound,
            start,
            q_terms,
        })
    }

    /// `(T, M)`.
    pub fn bounds(&self) -> (usize, usize) {
        (self.t_bound, self.x_bound)
    }

    /// The label of a vertex is its constant coefficient `s(0,0)`.
    pub fn labels(elements: &[Vec<u8>]) -> Vec<u8> {
        elements.iter().map(|s| s[0]).collect()
    }
}

impl OperatorSpace for DiagonalSpace {
    type Elem = Vec<u8>;

    fn p(&self) -> u32 {
        self.p
    }

    fn dim(&self) -> usize {
        (self.t_bound + 1) * (self.x_bound + 1)
    }

    fn start(&self) -> Vec<u8> {
        self.start.clone()
    }

    fn apply(&self, r: u32, s: &Vec<u8>) -> Vec<u8> {
        let p = self.p as usize;
        let r = r as usize;
        let w = self.x_bound + 1;
        let mut out = vec![0u32; s.len()];
        // out[i][j] = Σ_{(a,b,c)} s[p i + r − a][p j + r − b] · c
        for &(a, b, c) in &self.q_terms {
            for i in 0..=self.t_bound {
                let si = p * i + r;
                if si < a || si - a > self.t_bound {
                    continue;
                }
                let row = (si - a) * w;
                for j in 0..w {
                    let sj = p * j + r;
                    if sj < b || sj - b > self.x_bound {
                        continue;
                    }
                    let v = s[row + sj - b];
                    if v != 0 {
                        out[i * w + j] += v as u32 * c as u32;
                    }
                }
            }
        }
        out.into_iter().map(|x| (x % self.p) as u8).collect()
    }
}

/// Parameters of the general-case reduction: `σ = q + t^m τ` and
/// `G(t, X) = t^{−s} F(t, t^m X + q)`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub q: FpPoly,
    pub m: usize,
    pub s: usize,
    pub g: BiPoly,
}

/// With `e = ord_t F_X(t, σ)`, take `m = e`, `q = σ mod t^{m+1}` and
/// `s = 2e`; then `G(0,0) = 0`, `G_X(0,0) ≠ 0` and `τ(0) = 0`.
pub fn reduce(f: &BiPoly, root: &TruncSeries) -> Result<Reduction> {
    let p = f.p();
    let e = TruncSeries::eval_poly(&f.derivative_x(), root)
        .valuation()
        .ok_or(Error::InsufficientPrecision {
            have: root.precision(),
            need: root.precision() + 1,
        })?;
    if root.precision() < 2 * e + 2 {
        return Err(Error::InsufficientPrecision {
            have: root.precision(),
            need: 2 * e + 2,
        });
    }
    let m = e;
    let q = root.truncate(m + 1).to_poly();
    let sub = BiPoly::new(p, vec![q.clone(), FpPoly::monomial(p, 1, m)]);
    let g = f.compose_x(&sub).div_t_power(2 * e)?;
    Ok(Reduction { q, m, s: 2 * e, g })
}

/// The automaton of the root `σ` of `F` (squarefree) given to enough
/// precision to be Hensel-determined, through the diagonal route.
/// Returns the (minimized) automaton and the orbit size for `τ`.
pub fn diagonal_automaton(f: &BiPoly, root: &TruncSeries, cap: usize) -> Result<(Dfao, usize)> {
    let red = reduce(f, root)?;
    let space = DiagonalSpace::new(&red.g)?;
    let orbit = build_graph(&space, cap)?;
    let tau = orbit.to_dfao(DiagonalSpace::labels(&orbit.elements))?.minimize();
    let sigma = if red.m == 0 && red.q.is_zero() {
        tau
    } else {
        add_series(&polynomial_automaton(&red.q), &shift_by(&tau, red.m as u64))
    };
    Ok((sigma, orbit.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{hensel_root, parse_bipoly, parse_series};

    const EQ_MIN: &str = "(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t";

    #[test]
    fn sigma_min_orbit() {
        let f = parse_bipoly(EQ_MIN, 2).unwrap();
        let space = DiagonalSpace::new(&f).unwrap();
        assert_eq!(space.dim(), 28);
        let orbit = build_graph(&space, 1000).unwrap();
        assert_eq!(orbit.len(), 6);
        let a = orbit.to_dfao(DiagonalSpace::labels(&orbit.elements)).unwrap();
        let want = parse_series("t+t^2+t^4+t^5+t^7+O(t^8)", 2).unwrap();
        assert_eq!(a.series_prefix(8), want);
        assert_eq!(a.minimize().num_states(), 5);
    }

    #[test]
    fn general_case_matches_hensel() {
        // Klopsch m = 3 root t + t^4 + …, where F_X vanishes at t = 0.
        let f = parse_bipoly("(t^3+1)*X^3+t^3", 2).unwrap();
        let root = hensel_root(&f, &parse_series("t+t^4", 2).unwrap(), 400).unwrap();
        let (a, _) = diagonal_automaton(&f, &root, 100_000).unwrap();
        assert_eq!(a.series_prefix(400), root);
        assert!(a.equal_series(&crate::dfao::tests::klopsch3()));
        assert_eq!(a.num_states(), 6);
    }

    #[test]
    fn linear_root() {
        let f = parse_bipoly("X+t", 2).unwrap();
        let root = hensel_root(&f, &parse_series("t", 2).unwrap(), 20).unwrap();
        let (a, _) = diagonal_automaton(&f, &root, 100).unwrap();
        assert_eq!(a.num_states(), 3);
    }
}
