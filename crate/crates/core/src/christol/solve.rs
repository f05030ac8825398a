//! End-to-end: all roots of `F` in `F_p⟦t⟧` (optionally matching a prefix)
//! together with their minimal automata.

use std::fmt;
use std::str::FromStr;

use super::diagonal::diagonal_automaton;
use super::ore::{to_ore_form, OreSpace};
use super::{build_graph, OperatorSpace, DEFAULT_ORBIT_CAP};
use crate::algebra::{hensel_root, truncated_solutions, BiPoly, TruncSeries, DEFAULT_PRECISION};
use crate::dfao::Dfao;
use crate::error::{Error, Result};

/// Which construction produces the automaton.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    Ore,
    #[default]
    Diagonal,
    /// Run both and require equal series.
    Both,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ore" => Ok(Method::Ore),
            "diagonal" => Ok(Method::Diagonal),
            "both" => Ok(Method::Both),
            other => Err(Error::Precondition(format!("unknown method `{other}`"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Ore => "ore",
            Method::Diagonal => "diagonal",
            Method::Both => "both",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub method: Method,
    /// Precision of the returned root expansions.
    pub precision: usize,
    pub orbit_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            method: Method::default(),
            precision: DEFAULT_PRECISION,
            orbit_cap: DEFAULT_ORBIT_CAP,
        }
    }
}

/// One root with its automaton.
#[derive(Clone, Debug)]
pub struct Solution {
    /// The root to `precision` coefficients.
    pub root: TruncSeries,
    /// The minimal automaton (canonical numbering).
    pub automaton: Dfao,
    /// Number of orbit elements before minimization (per route used).
    pub orbit_sizes: Vec<(Method, usize)>,
}

/// Solves `F = 0` in `F_p⟦t⟧`. Repeated factors are removed first; an
/// inseparable squarefree part is an error.
pub fn solve(f: &BiPoly, constraint: Option<&TruncSeries>, opts: &SolveOptions) -> Result<Vec<Solution>> {
    let sq = f.squarefree_part();
    if sq.inseparable {
        return Err(Error::Inseparable);
    }
    let g = sq.part;
    let seeds = truncated_solutions(&g, constraint)?;
    if seeds.is_empty() {
        return Ok(Vec::new());
    }
    let ore = match opts.method {
        Method::Ore | Method::Both => {
            let space = OreSpace::new(to_ore_form(&g)?);
            let orbit = build_graph(&space, opts.orbit_cap)?;
            Some((space, orbit))
        }
        Method::Diagonal => None,
    };
    let mut out = Vec::with_capacity(seeds.len());
    for seed in &seeds {
        let ell = ore.as_ref().map_or(0, |(s, _)| s.form().ell());
        let n = opts.precision.max(2 * seed.precision() + 2).max(ell + 1);
        let root = hensel_root(&g, seed, n)?;
        let mut sizes = Vec::new();
        let mut automata: Vec<Dfao> = Vec::new();
        if let Some((space, orbit)) = &ore {
            let labels = space.labels(&orbit.elements, &root)?;
            automata.push(orbit.to_dfao(labels)?.minimize());
            sizes.push((Method::Ore, orbit.len()));
        }
        if opts.method != Method::Ore {
            let (a, size) = diagonal_automaton(&g, &root, opts.orbit_cap)?;
            automata.push(a);
            sizes.push((Method::Diagonal, size));
        }
        if automata.len() == 2 && !automata[0].equal_series(&automata[1]) {
            return Err(Error::CertificationFailed("Ore and diagonal automata disagree".into()));
        }
        let automaton = automata.swap_remove(0);
        if automaton.series_prefix(n) != root {
            return Err(Error::CertificationFailed("automaton disagrees with the Hensel expansion".into()));
        }
        out.push(Solution {
            root: root.truncate(opts.precision),
            automaton,
            orbit_sizes: sizes,
        });
    }
    Ok(out)
}

/// Dimension of the space used by a route (for reports).
pub fn space_dimension(f: &BiPoly, method: Method) -> Result<usize> {
    match method {
        Method::Ore => Ok(OreSpace::new(to_ore_form(f)?).dim()),
        _ => Ok(super::DiagonalSpace::new(f)?.dim()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_bipoly, parse_series};

    #[test]
    fn both_routes_agree_on_sigma_min() {
        let f = parse_bipoly("(t+1)^3*X^3+(t^3+t)*X^2+(t^3+t+1)*X+t^3+t", 2).unwrap();
        let c = parse_series("t+O(t^2)", 2).unwrap();
        let opts = SolveOptions {
            method: Method::Both,
            ..Default::default()
        };
        let sols = solve(&f, Some(&c), &opts).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].automaton.num_states(), 5);
        assert_eq!(sols[0].root.truncate(8), parse_series("t+t^2+t^4+t^5+t^7+O(t^8)", 2).unwrap());
    }

    #[test]
    fn identity_has_three_states() {
        let f = parse_bipoly("X-t", 2).unwrap();
        let opts = SolveOptions {
            method: Method::Both,
            ..Default::default()
        };
        let sols = solve(&f, None, &opts).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].automaton.num_states(), 3);
    }

    #[test]
    fn klopsch_three_both_routes() {
        let f = parse_bipoly("(t^3+1)*X^3+t^3", 2).unwrap();
        let opts = SolveOptions {
            method: Method::Both,
            ..Default::default()
        };
        let c = parse_series("t+t^4", 2).unwrap();
        let sols = solve(&f, Some(&c), &opts).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols[0].automaton.equal_series(&crate::dfao::tests::klopsch3()));
    }
}
