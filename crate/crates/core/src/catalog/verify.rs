//! End-to-end verification of catalog entries.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::entry::{CatalogEntry, Level, SyncExpectation};
use super::fixture;
use crate::christol::{solve, SolveOptions};
use crate::classify::{
    classify_hierarchy, is_synchronizing_word, sync_analysis, ClassReport, ClassifyOptions, HatSNo, QsNo, Sparseness,
    Verdict,
};
use crate::dfao::Dfao;
use crate::error::{Error, Result};
use crate::inverse::{break_sequence_of, exact_order, Order, BREAK_PRECISION_CAP};
use crate::nottingham::klopsch_equation;

/// Coefficients compared against sparse generators.
pub const SPARSE_CHECK_PRECISION: usize = 2000;
/// Coefficients compared against all other generators.
pub const CHECK_PRECISION: usize = 200;

/// One expectation and its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub what: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

/// Outcome of verifying one entry. `observed` records values computed
/// without an expectation.
#[derive(Clone, Debug)]
pub struct EntryReport {
    pub name: String,
    pub states: Option<usize>,
    pub checks: Vec<Check>,
    pub observed: Vec<(String, String)>,
    pub elapsed: Duration,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for EntryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let states = self.states.map_or("no automaton".to_string(), |s| format!("{s} states"));
        writeln!(
            f,
            "{}: {} ({states}, {} checks)",
            self.name,
            if self.passed() { "pass" } else { "FAIL" },
            self.checks.len()
        )?;
        for c in &self.checks {
            if c.pass {
                writeln!(f, "  ok   {}: {}", c.what, c.got)?;
            } else {
                writeln!(f, "  FAIL {}: expected {}, got {}", c.what, c.expected, c.got)?;
            }
        }
        for (k, v) in &self.observed {
            writeln!(f, "  info {k}: {v}")?;
        }
        Ok(())
    }
}

/// Which stages [`verify_entry`] runs.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub order: bool,
    pub breaks: bool,
    pub classify: bool,
    pub closed_forms: bool,
    pub classify_options: ClassifyOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            order: true,
            breaks: true,
            classify: true,
            closed_forms: true,
            classify_options: ClassifyOptions::default(),
        }
    }
}

struct Recorder {
    checks: Vec<Check>,
    observed: Vec<(String, String)>,
}

impl Recorder {
    fn check(&mut self, what: &str, expected: impl fmt::Display, got: impl fmt::Display, pass: bool) {
        self.checks.push(Check {
            what: what.into(),
            expected: expected.to_string(),
            got: got.to_string(),
            pass,
        });
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, what: &str, expected: T, got: T) {
        let pass = expected == got;
        self.check(what, format!("{expected:?}"), format!("{got:?}"), pass);
    }

    fn fail(&mut self, what: &str, expected: impl fmt::Display, err: &Error) {
        self.check(what, expected, format!("error: {err}"), false);
    }

    fn observe(&mut self, what: &str, value: impl fmt::Display) {
        self.observed.push((what.into(), value.to_string()));
    }
}

/// Solves the entry's equation for its root and returns the minimal
/// automaton.
pub fn solve_entry(e: &CatalogEntry) -> Result<Dfao> {
    let mut sols = solve(&e.equation, Some(&e.prefix), &SolveOptions::default())?;
    match sols.len() {
        1 => Ok(sols.remove(0).automaton),
        0 => Err(Error::NoSeed),
        k => Err(Error::CertificationFailed(format!("prefix selects {k} roots"))),
    }
}

fn level_of(r: &ClassReport) -> Option<Level> {
    match r.levels() {
        (s, Some(h), Some(q)) => Level::from_flags((s, h, q)),
        _ => None,
    }
}

fn describe_level(r: &ClassReport) -> String {
    match level_of(r) {
        Some(l) => l.to_string(),
        None => {
            let (s, h, q) = r.levels();
            format!("inconclusive (S {s}, Ŝ {h:?}, QS {q:?})")
        }
    }
}

fn field_name(r: &ClassReport) -> Option<&'static str> {
    match (&r.hat_s, &r.qs) {
        (_, Verdict::No(QsNo::Field(c))) | (Verdict::No(HatSNo::Field(c)), _) => Some(c.name()),
        _ => None,
    }
}

/// Runs every expectation of `e` that `opts` enables.
pub fn verify_entry(e: &CatalogEntry, opts: &VerifyOptions) -> EntryReport {
    let start = Instant::now();
    let mut r = Recorder {
        checks: Vec::new(),
        observed: Vec::new(),
    };
    let a = match solve_entry(e) {
        Ok(a) => a,
        Err(err) => {
            r.fail("solve", "one root", &err);
            return EntryReport {
                name: e.name.clone(),
                states: None,
                checks: r.checks,
                observed: r.observed,
                elapsed: start.elapsed(),
            };
        }
    };
    let states = a.num_states();
    match e.states {
        Some(s) => r.eq("states", s, states),
        None => r.observe("states", states),
    }
    r.check("minimal", "minimize is the identity", a.is_minimal(), a.is_minimal());
    if let Some(s) = &e.series {
        let got = a.series_prefix(s.precision());
        r.check("series", s, &got, &got == s);
    }
    if let Some(name) = &e.fixture {
        match fixture(name).map(Dfao::from_text) {
            Some(Ok(b)) => {
                let same = b.equal_series(&a);
                r.check("fixture", name, if same { "equal series" } else { "different series" }, same);
                r.check("fixture minimal", "minimize is the identity", b.is_minimal(), b.is_minimal());
            }
            Some(Err(err)) => r.fail("fixture", name, &err),
            None => r.check("fixture", name, "missing", false),
        }
    }
    if opts.order {
        if let Some(o) = e.order {
            match exact_order(&a, 4) {
                Ok(rep) => {
                    let got = match rep.order {
                        Order::Finite { n } => 1u64 << n,
                        Order::NotFiniteUpTo { .. } => 0,
                    };
                    r.check("order", o, &rep, got == o);
                }
                Err(err) => r.fail("order", o, &err),
            }
        }
    }
    if opts.breaks {
        let n = e.breaks.as_ref().map(Vec::len).or(e.order_exponent().map(|n| n as usize));
        if let Some(n) = n {
            match (break_sequence_of(&a, n, BREAK_PRECISION_CAP), &e.breaks) {
                (Ok(b), Some(want)) => r.eq("breaks", want.clone(), b),
                (Ok(b), None) => r.observe("breaks", format!("{b:?}")),
                (Err(err), Some(want)) => r.fail("breaks", format!("{want:?}"), &err),
                (Err(err), None) => r.observe("breaks", format!("error: {err}")),
            }
        }
    }
    if let Some(w) = &e.tied {
        r.check("tied-vertex witness", "replays", w.verify(&a), w.verify(&a));
    }
    if let Some(w) = &e.hats_witness {
        r.check("Ŝ witness", "replays", w.verify(&a), w.verify(&a));
    }
    if let Some(s) = &e.sync {
        let rep = sync_analysis(&a);
        match s {
            SyncExpectation::Word(w) => {
                let ok = is_synchronizing_word(&a, w);
                r.check("sync word", crate::classify::word(w), if ok { "synchronizes" } else { "does not synchronize" }, ok);
            }
            SyncExpectation::NotSynchronizing => {
                r.check("sync", "not synchronizing", rep.is_synchronizing(), !rep.is_synchronizing());
            }
        }
        if let Some(k) = e.absorbing {
            r.eq("absorbing states", k, rep.absorbing.len());
        }
    }
    if opts.classify && (e.level.is_some() || e.rank.is_some() || e.field.is_some()) {
        match classify_hierarchy(&a, Some(&e.equation), opts.classify_options) {
            Ok(rep) => {
                if let Some(l) = e.level {
                    r.check("level", l, describe_level(&rep), level_of(&rep) == Some(l));
                }
                if let Some(k) = e.rank {
                    let got = match rep.sparse {
                        Sparseness::Sparse { rank } => Some(rank),
                        Sparseness::NotSparse(_) => None,
                    };
                    r.eq("rank", Some(k), got);
                }
                if let Some(name) = &e.field {
                    let got = field_name(&rep).unwrap_or("none");
                    r.check("field certificate", name, got, got == name);
                }
                r.check("certificates", "replay", rep.verify(&a), rep.verify(&a));
            }
            Err(err) => r.fail("classify", "a report", &err),
        }
    }
    if opts.closed_forms {
        for g in &e.closed_forms {
            let n = if g.is_sparse() {
                SPARSE_CHECK_PRECISION
            } else {
                CHECK_PRECISION
            };
            match g.series(n) {
                Ok(s) => {
                    let got = a.series_prefix(n);
                    let first = (0..n).find(|&k| s.coeff(k) != got.coeff(k));
                    let desc = match first {
                        None => format!("agrees to O(t^{n})"),
                        Some(k) => format!("differs at t^{k}"),
                    };
                    r.check(&format!("closed form {g}"), format!("agreement to O(t^{n})"), desc, first.is_none());
                }
                Err(err) => r.fail(&format!("closed form {g}"), "a series", &err),
            }
        }
    }
    EntryReport {
        name: e.name.clone(),
        states: Some(states),
        checks: r.checks,
        observed: r.observed,
        elapsed: start.elapsed(),
    }
}

/// Verifies the named entry (case-insensitive), or every entry for `all`,
/// on `workers` threads (0 = rayon's default). Reports come back in catalog
/// order.
pub fn catalog_verify(name: &str, opts: &VerifyOptions, workers: usize) -> Result<Vec<EntryReport>> {
    let entries = super::entries()?;
    let chosen: Vec<&CatalogEntry> = if name.eq_ignore_ascii_case("all") {
        entries.iter().collect()
    } else {
        vec![entries
            .iter()
            .find(|e| e.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::Precondition(format!("no catalog entry `{name}`")))?]
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?;
    Ok(pool.install(|| chosen.par_iter().map(|e| verify_entry(e, opts)).collect()))
}

/// Minimal state counts of the automata of Klopsch's series
/// `(t^m + 1)X^m + t^m = 0`, `σ = t + O(t²)`, for odd `m`.
pub fn klopsch_state_counts(ms: &[u32]) -> Result<Vec<usize>> {
    ms.iter()
        .map(|&m| {
            let f = klopsch_equation(m)?;
            let prefix = crate::algebra::parse_series("t+O(t^2)", 2)?;
            let mut sols = solve(&f, Some(&prefix), &SolveOptions::default())?;
            if sols.len() != 1 {
                return Err(Error::CertificationFailed(format!("{} roots t + O(t^2)", sols.len())));
            }
            Ok(sols.remove(0).automaton.num_states())
        })
        .collect()
}
