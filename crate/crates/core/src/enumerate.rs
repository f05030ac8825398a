//! Exhaustive search for minimal leading-zeros-invariant 2-automata on at
//! most `N` states whose series has compositional order `2^n`.
//!
//! Transition tables are generated directly in canonical BFS numbering
//! (state 0 is the start; a transition may only target an existing state or
//! the next new one), so every accessible automaton appears exactly once up
//! to renumbering. Labels are constant along 0-edges, the start label is 0
//! and the 1-successor of the start is labelled 1. Surviving tables are
//! kept if minimal, passed through truncated-composition filters at
//! increasing precision, and certified with
//! [`exact_order`](crate::inverse::exact_order).

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::algebra::TruncSeries;
use crate::dfao::Dfao;
use crate::error::{Error, Result};
use crate::inverse::{exact_order, truncated_order, Order, FILTER_PRECISION};

/// Largest supported state bound.
pub const MAX_STATES: usize = 6;
/// Largest supported order exponent.
pub const MAX_ORDER_EXPONENT: u32 = 3;
/// Precision of the cheap first filter.
const QUICK_PRECISION: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximal number of states `N`.
    pub max_states: usize,
    /// Target order `2^n`.
    pub n: u32,
    /// Precision of the truncated-composition filter.
    pub prefilter: usize,
    /// Certify survivors with the exact order test.
    pub exact: bool,
    /// Percentage of filter rejections re-checked with the exact test.
    pub audit_percent: u32,
}

impl SearchConfig {
    pub fn new(max_states: usize, n: u32) -> Self {
        SearchConfig {
            max_states,
            n,
            prefilter: FILTER_PRECISION,
            exact: true,
            audit_percent: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_states == 0 || self.max_states > MAX_STATES {
            return Err(Error::Precondition(format!(
                "state bound must be between 1 and {MAX_STATES}"
            )));
        }
        if self.n == 0 || self.n > MAX_ORDER_EXPONENT {
            return Err(Error::Precondition(format!(
                "order exponent must be between 1 and {MAX_ORDER_EXPONENT}"
            )));
        }
        if self.prefilter < QUICK_PRECISION {
            return Err(Error::Precondition(format!("prefilter precision must be at least {QUICK_PRECISION}")));
        }
        if self.audit_percent > 100 {
            return Err(Error::Precondition("audit percentage above 100".into()));
        }
        Ok(())
    }
}

/// Candidate counts after each stage.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Manifest {
    /// Canonical accessible transition tables.
    pub tables: u64,
    /// Labelled tables satisfying the label constraints.
    pub labelled: u64,
    /// Minimal ones among those.
    pub minimal: u64,
    /// Survivors of the filter at the quick precision.
    pub quick_filter: u64,
    /// Survivors of the filter at the full prefilter precision.
    pub prefilter: u64,
    /// Survivors of exact certification (or of the prefilter when exact
    /// certification is off).
    pub certified: u64,
    /// Filter rejections re-checked exactly, and how many of those the
    /// exact test would have accepted.
    pub audited: u64,
    pub audit_disagreements: u64,
}

impl Manifest {
    fn merge(mut self, o: Manifest) -> Manifest {
        self.tables += o.tables;
        self.labelled += o.labelled;
        self.minimal += o.minimal;
        self.quick_filter += o.quick_filter;
        self.prefilter += o.prefilter;
        self.certified += o.certified;
        self.audited += o.audited;
        self.audit_disagreements += o.audit_disagreements;
        self
    }
}

impl fmt::Display for Manifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tables = {}", self.tables)?;
        writeln!(f, "labelled = {}", self.labelled)?;
        writeln!(f, "minimal = {}", self.minimal)?;
        writeln!(f, "quick_filter = {}", self.quick_filter)?;
        writeln!(f, "prefilter = {}", self.prefilter)?;
        writeln!(f, "certified = {}", self.certified)?;
        writeln!(f, "audited = {}", self.audited)?;
        writeln!(f, "audit_disagreements = {}", self.audit_disagreements)
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub config: SearchConfig,
    /// Emitted automata, sorted by their text encoding.
    pub automata: Vec<Dfao>,
    pub manifest: Manifest,
}

impl Enumeration {
    /// Writes `NNN.aut` files and `manifest.txt` into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Precondition(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        for (i, a) in self.automata.iter().enumerate() {
            fs::write(dir.join(format!("{:03}.aut", i + 1)), a.to_text()).map_err(io)?;
        }
        let c = &self.config;
        let head = format!(
            "max_states = {}\norder = {}\nprefilter = {}\nexact = {}\nemitted = {}\n",
            c.max_states,
            1u64 << c.n,
            c.prefilter,
            c.exact,
            self.automata.len()
        );
        fs::write(dir.join("manifest.txt"), head + &self.manifest.to_string()).map_err(io)
    }
}

/// One partially filled canonical transition table.
struct Search<'a> {
    cfg: &'a SearchConfig,
    k: usize,
    trans: Vec<u32>,
    manifest: Manifest,
    found: Vec<Dfao>,
}

impl Search<'_> {
    /// Fills slot `i = 2s + d`; `top` is the largest state introduced.
    fn fill(&mut self, i: usize, top: usize) -> Result<()> {
        if i == 2 * self.k {
            if top + 1 == self.k {
                self.manifest.tables += 1;
                self.label()?;
            }
            return Ok(());
        }
        let s = i / 2;
        if s > top {
            return Ok(());
        }
        // States still to be introduced must fit in the remaining slots.
        let hi = (top + 1).min(self.k - 1);
        for target in 0..=hi {
            self.trans[i] = target as u32;
            self.fill(i + 1, top.max(target))?;
        }
        Ok(())
    }

    /// Enumerates labellings constant on 0-edge components.
    fn label(&mut self) -> Result<()> {
        let k = self.k;
        // Union-find over 0-edges.
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for s in 0..k {
            let (a, b) = (find(&mut parent, s), find(&mut parent, self.trans[2 * s] as usize));
            parent[a] = b;
        }
        let root: Vec<usize> = (0..k).map(|s| find(&mut parent, s)).collect();
        let zero = root[0];
        let one = root[self.trans[1] as usize];
        if zero == one {
            return Ok(());
        }
        let free: Vec<usize> = (0..k)
            .filter(|&s| root[s] == s && s != zero && s != one)
            .collect();
        for mask in 0u32..(1 << free.len()) {
            let mut comp_label = vec![0u8; k];
            comp_label[one] = 1;
            for (j, &c) in free.iter().enumerate() {
                comp_label[c] = ((mask >> j) & 1) as u8;
            }
            let labels = (0..k).map(|s| comp_label[root[s]]).collect();
            self.manifest.labelled += 1;
            let a = Dfao::new(2, labels, self.trans.clone(), 0)?;
            self.test(a, mask as u64)?;
        }
        Ok(())
    }

    fn test(&mut self, a: Dfao, salt: u64) -> Result<()> {
        if !a.is_minimal() {
            return Ok(());
        }
        self.manifest.minimal += 1;
        let n = self.cfg.n;
        let has_order = |s: &TruncSeries| -> Result<bool> { Ok(truncated_order(s, n)? == Some(n)) };
        let quick = has_order(&a.series_prefix(QUICK_PRECISION))?;
        let passed = quick && {
            self.manifest.quick_filter += 1;
            has_order(&a.series_prefix(self.cfg.prefilter))?
        };
        if !passed {
            let sample = self.cfg.audit_percent > 0
                && (self.manifest.minimal.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt) % 100
                    < self.cfg.audit_percent as u64;
            if sample {
                self.manifest.audited += 1;
                if certified_order(&a, n)? == Some(n) {
                    self.manifest.audit_disagreements += 1;
                }
            }
            return Ok(());
        }
        self.manifest.prefilter += 1;
        if self.cfg.exact && certified_order(&a, n)? != Some(n) {
            return Ok(());
        }
        self.manifest.certified += 1;
        self.found.push(a);
        Ok(())
    }
}

/// Exact order exponent (at most `n`) with certified evidence, if any.
/// Higher powers are irrelevant to whether the order is exactly `2^n`.
fn certified_order(a: &Dfao, n: u32) -> Result<Option<u32>> {
    let rep = exact_order(a, n)?;
    Ok(match rep.order {
        Order::Finite { n } if rep.is_certified() => Some(n),
        _ => None,
    })
}

/// Runs the search with `workers` threads (0 = rayon's default). Work is
/// split by state count and by the transitions of the start state.
pub fn enumerate_finite_order(cfg: &SearchConfig, workers: usize) -> Result<Enumeration> {
    cfg.validate()?;
    // Each class fixes k and the start state's two transitions.
    let mut classes = Vec::new();
    for k in 1..=cfg.max_states {
        let hi = 1.min(k - 1);
        for t0 in 0..=hi {
            let top = t0;
            for t1 in 0..=(top + 1).min(k - 1) {
                classes.push((k, t0, t1));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?;
    let parts: Vec<Result<(Vec<Dfao>, Manifest)>> = pool.install(|| {
        classes
            .par_iter()
            .map(|&(k, t0, t1)| {
                let mut s = Search {
                    cfg,
                    k,
                    trans: vec![0; 2 * k],
                    manifest: Manifest::default(),
                    found: Vec::new(),
                };
                s.trans[0] = t0 as u32;
                s.trans[1] = t1 as u32;
                s.fill(2, t0.max(t1))?;
                Ok((s.found, s.manifest))
            })
            .collect()
    });
    let mut manifest = Manifest::default();
    let mut seen = BTreeSet::new();
    for part in parts {
        let (found, m) = part?;
        manifest = manifest.merge(m);
        for a in found {
            seen.insert(a.minimize().to_text());
        }
    }
    let automata = seen
        .into_iter()
        .map(|t| Dfao::from_text(&t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Enumeration {
        config: *cfg,
        automata,
        manifest,
    })
}
