//! Newton polygons of polynomials in `X` over `F_p(t)`.

use std::fmt;

use num_rational::Ratio;

use super::bipoly::BiPoly;

/// The valuation used for the polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Place {
    /// `v(a) = ord_t a`.
    T,
    /// `v(a) = −deg a` (the place at infinity).
    TInverse,
}

/// Multiset of root valuations read off the lower convex hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonSlopes {
    /// `(valuation of the roots, multiplicity)`, valuations ascending.
    pub slopes: Vec<(Ratio<i64>, usize)>,
    /// Number of roots `X = 0` (slope ∞), reported apart from `slopes`.
    pub zero_roots: usize,
}

impl NewtonSlopes {
    /// gcd of the finite-slope multiplicities (0 when there are none).
    pub fn multiplicity_gcd(&self) -> usize {
        self.slopes.iter().fold(0, |g, &(_, m)| gcd(g, m))
    }

    pub fn total_multiplicity(&self) -> usize {
        self.slopes.iter().map(|&(_, m)| m).sum()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for NewtonSlopes {
    /// Written like `{(-2)^2,(-1)^2,0,1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (s, m)) in self.slopes.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            let body = if *s.denom() == 1 {
                s.numer().to_string()
            } else {
                format!("{}/{}", s.numer(), s.denom())
            };
            let body = if *s.numer() < 0 || *s.denom() != 1 {
                format!("({body})")
            } else {
                body
            };
            if *m == 1 {
                write!(f, "{body}")?;
            } else {
                write!(f, "{body}^{m}")?;
            }
        }
        write!(f, "}}")
    }
}

/// Root valuations of `F` at the given place: the negated slopes of the
/// lower convex hull of the points `(i, v(a_i))`.
pub fn newton_slopes(f: &BiPoly, place: Place) -> NewtonSlopes {
    let pts: Vec<(i64, i64)> = f
        .coeffs_by_x()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| {
            let v = match place {
                Place::T => a.valuation().unwrap() as i64,
                Place::TInverse => -(a.degree().unwrap() as i64),
            };
            (i as i64, v)
        })
        .collect();
    let zero_roots = pts.first().map_or(0, |&(i, _)| i as usize);
    // Monotone-chain lower hull (points are sorted by abscissa).
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut slopes: Vec<(Ratio<i64>, usize)> = hull
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            (-Ratio::new(b.1 - a.1, b.0 - a.0), (b.0 - a.0) as usize)
        })
        .collect();
    slopes.sort();
    NewtonSlopes { slopes, zero_roots }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_bipoly;

    #[test]
    fn double_slope() {
        let f = parse_bipoly("X^2+t*X+t^2", 2).unwrap();
        let s = newton_slopes(&f, Place::T);
        assert_eq!(s.slopes, vec![(Ratio::from_integer(1), 2)]);
        assert_eq!(s.zero_roots, 0);
    }

    #[test]
    fn zero_roots_reported_apart() {
        let f = parse_bipoly("X^3+t*X", 2).unwrap();
        let s = newton_slopes(&f, Place::T);
        assert_eq!(s.zero_roots, 1);
        assert_eq!(s.slopes, vec![(Ratio::new(1, 2), 2)]);
        assert_eq!(s.to_string(), "{(1/2)^2}");
    }
}
