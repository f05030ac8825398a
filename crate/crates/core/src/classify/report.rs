//! The combined classification S ⊂ Ŝ ⊂ QS with certificates.

use std::fmt::{self, Write as _};

use super::counting::counting_function;
use super::field::{field_tests, Excludes, FieldCert};
use super::hats::{hats_test, HatS, HatSWitness, HatSYes};
use super::sparse::{is_sparse, word, Sparseness};
use super::sync::{sync_analysis, SyncReport};
use crate::algebra::{BiPoly, TruncSeries};
use crate::christol::{solve, SolveOptions};
use crate::dfao::Dfao;
use crate::error::{Error, Result};
use crate::inverse::{guess_equation, GuessCaps};
use crate::nottingham::{phi_series, phi_twist};

/// A three-valued verdict; the inconclusive case records why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<Y, N> {
    Yes(Y),
    No(N),
    Inconclusive(String),
}

impl<Y, N> Verdict<Y, N> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    fn key(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No(_) => "no",
            Verdict::Inconclusive(_) => "inconclusive",
        }
    }
}

/// Why a series is not in Ŝ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HatSNo {
    Witness(HatSWitness),
    Field(FieldCert),
}

/// Why a series is in QS: the series or its twist `σ ∘ t/(t+1)` is in Ŝ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QsYes {
    Direct(HatSYes),
    Twisted(HatSYes),
}

/// Why a series is not in QS.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QsNo {
    Field(FieldCert),
    /// Vertex witnesses for the series and for its twist.
    Witnesses(HatSWitness, HatSWitness),
}

/// Classification of one automatic series.
#[derive(Clone, Debug)]
pub struct ClassReport {
    pub equation: Option<BiPoly>,
    pub sparse: Sparseness,
    pub hat_s: Verdict<HatSYes, HatSNo>,
    pub qs: Verdict<QsYes, QsNo>,
    pub field: Vec<FieldCert>,
    pub sync: SyncReport,
    /// `(N, #{k ≤ N : a_k ≠ 0})`.
    pub counts: Vec<(u128, u128)>,
}

/// Options for [`classify_hierarchy`].
#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub mmax: u64,
    pub guess: GuessCaps,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            mmax: super::hats::DEFAULT_MMAX,
            guess: GuessCaps::default(),
        }
    }
}

/// Number of terms of `σ ∘ t/(t+1)` used to pick the twisted root.
const TWIST_PREFIX: usize = 64;

/// The automaton of `σ ∘ t/(t+1)`, solved from the twisted equation.
pub fn twisted_automaton(a: &Dfao, f: &BiPoly) -> Result<Dfao> {
    let s = a.series_prefix(TWIST_PREFIX);
    let twisted = TruncSeries::compose(&s, &phi_series(TWIST_PREFIX))?;
    let g = phi_twist(f);
    let mut sols = solve(&g, Some(&twisted), &SolveOptions::default())?;
    match sols.len() {
        1 => Ok(sols.remove(0).automaton),
        0 => Err(Error::NoSeed),
        _ => Err(Error::CertificationFailed("twisted root is not unique".into())),
    }
}

/// Classifies the series of `a`; `f` (its minimal polynomial) is guessed
/// and certified when not supplied. Only p = 2 is supported.
pub fn classify_hierarchy(a: &Dfao, f: Option<&BiPoly>, opts: ClassifyOptions) -> Result<ClassReport> {
    if a.p() != 2 {
        return Err(Error::Precondition("classification is implemented for p = 2".into()));
    }
    let equation = match f {
        Some(f) => Some(f.clone()),
        None => match guess_equation(a, opts.guess) {
            Ok(c) => Some(c.f),
            Err(Error::CapsExhausted(_)) => None,
            Err(e) => return Err(e),
        },
    };
    let sparse = is_sparse(a)?;
    let field = equation.as_ref().map(field_tests).unwrap_or_default();
    let not_qs = field.iter().find(|c| c.excludes() == Excludes::Qs).cloned();

    let hat_s;
    let qs;
    if let Some(cert) = not_qs {
        // QS ⊃ Ŝ ⊃ S, so a QS obstruction settles everything.
        hat_s = Verdict::No(HatSNo::Field(cert.clone()));
        qs = Verdict::No(QsNo::Field(cert));
    } else {
        let direct = hats_test(a, opts.mmax)?;
        hat_s = match &direct {
            HatS::Yes(y) => Verdict::Yes(y.clone()),
            HatS::No(w) => Verdict::No(HatSNo::Witness(w.clone())),
            HatS::Inconclusive { mmax, vertices } => Verdict::Inconclusive(format!(
                "no vertex witness among {vertices} states and (t^m+1)σ not sparse for m ≤ {mmax}"
            )),
        };
        qs = match (&direct, &equation) {
            (HatS::Yes(y), _) => Verdict::Yes(QsYes::Direct(y.clone())),
            (_, None) => Verdict::Inconclusive("no certified equation for the twist".into()),
            (_, Some(f)) => match twisted_automaton(a, f) {
                Err(e) => Verdict::Inconclusive(format!("twist not solved: {e}")),
                Ok(b) => match (hats_test(&b, opts.mmax)?, &direct) {
                    (HatS::Yes(y), _) => Verdict::Yes(QsYes::Twisted(y)),
                    (HatS::No(w2), HatS::No(w1)) => Verdict::No(QsNo::Witnesses(w1.clone(), w2)),
                    _ => Verdict::Inconclusive("neither σ nor its twist is certified in or out of Ŝ".into()),
                },
            },
        };
    }
    let counts = [1u128 << 8, 1 << 16, 1 << 32, 1 << 64]
        .into_iter()
        .map(|n| (n, counting_function(a, n)))
        .collect();
    Ok(ClassReport {
        equation,
        sparse,
        hat_s,
        qs,
        field,
        sync: sync_analysis(a),
        counts,
    })
}

impl ClassReport {
    /// `(in S, in Ŝ, in QS)` with `None` for inconclusive.
    pub fn levels(&self) -> (bool, Option<bool>, Option<bool>) {
        let tri = |yes: bool, no: bool| {
            if yes {
                Some(true)
            } else if no {
                Some(false)
            } else {
                None
            }
        };
        (
            self.sparse.is_sparse(),
            tri(self.hat_s.is_yes(), self.hat_s.is_no()),
            tri(self.qs.is_yes(), self.qs.is_no()),
        )
    }

    /// Replays every certificate against `a` (and the stored equation).
    pub fn verify(&self, a: &Dfao) -> bool {
        let sparse_ok = match &self.sparse {
            Sparseness::NotSparse(w) => w.verify(a),
            Sparseness::Sparse { .. } => is_sparse(a).map(|s| s == self.sparse).unwrap_or(false),
        };
        let field_ok = self
            .equation
            .as_ref()
            .is_none_or(|f| self.field.iter().all(|c| c.verify(f)));
        let hats_ok = match &self.hat_s {
            Verdict::No(HatSNo::Witness(w)) => w.verify(a),
            _ => true,
        };
        let sync_ok = self.sync.word.as_ref().is_none_or(|w| super::sync::is_synchronizing_word(a, w));
        sparse_ok && field_ok && hats_ok && sync_ok
    }

    /// Key–value certificate block (one `key = value` per line; words are
    /// digit strings in reading order, `ε` for the empty word).
    pub fn certificate(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        if let Some(f) = &self.equation {
            kv("equation", f.to_string());
        }
        match &self.sparse {
            Sparseness::Sparse { rank } => {
                kv("s", "yes".into());
                kv("s.rank", rank.to_string());
            }
            Sparseness::NotSparse(w) => {
                kv("s", "no".into());
                kv("s.path", word(&w.path));
                kv("s.to_nonzero", word(&w.to_nonzero));
                kv("s.loops", format!("{},{}", word(&w.loops.0), word(&w.loops.1)));
            }
        }
        kv("hat_s", self.hat_s.key().into());
        match &self.hat_s {
            Verdict::Yes(y) => hats_yes_kv(&mut kv, "hat_s", y),
            Verdict::No(HatSNo::Witness(w)) => witness_kv(&mut kv, "hat_s", w),
            Verdict::No(HatSNo::Field(c)) => kv("hat_s.field", c.name().into()),
            Verdict::Inconclusive(why) => kv("hat_s.bounds", why.clone()),
        }
        kv("qs", self.qs.key().into());
        match &self.qs {
            Verdict::Yes(QsYes::Direct(y)) => {
                kv("qs.route", "direct".into());
                hats_yes_kv(&mut kv, "qs", y);
            }
            Verdict::Yes(QsYes::Twisted(y)) => {
                kv("qs.route", "twisted".into());
                hats_yes_kv(&mut kv, "qs", y);
            }
            Verdict::No(QsNo::Field(c)) => kv("qs.field", c.name().into()),
            Verdict::No(QsNo::Witnesses(w1, w2)) => {
                witness_kv(&mut kv, "qs.direct", w1);
                witness_kv(&mut kv, "qs.twisted", w2);
            }
            Verdict::Inconclusive(why) => kv("qs.bounds", why.clone()),
        }
        for c in &self.field {
            kv(&format!("field.{}", c.name()), c.to_string());
        }
        kv(
            "sync",
            if self.sync.is_synchronizing() { "yes" } else { "no" }.into(),
        );
        if let Some(w) = &self.sync.word {
            kv("sync.word", word(w));
        }
        if let Some((u, v)) = self.sync.obstruction {
            kv("sync.unmergeable", format!("{},{}", u + 1, v + 1));
        }
        kv(
            "sync.absorbing",
            self.sync.absorbing.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join(","),
        );
        for (n, c) in &self.counts {
            kv(&format!("count.{n}"), c.to_string());
        }
        out
    }
}

fn hats_yes_kv(kv: &mut impl FnMut(&str, String), prefix: &str, y: &HatSYes) {
    match y {
        HatSYes::Sparse { rank } => {
            kv(&format!("{prefix}.m"), "0".into());
            kv(&format!("{prefix}.rank"), rank.to_string());
        }
        HatSYes::Binomial { m, rank } => {
            kv(&format!("{prefix}.m"), m.to_string());
            kv(&format!("{prefix}.rank"), rank.to_string());
        }
    }
}

fn witness_kv(kv: &mut impl FnMut(&str, String), prefix: &str, w: &HatSWitness) {
    kv(
        &format!("{prefix}.walk"),
        format!("{},{},{}", word(&w.prefix), word(&w.cycle), word(&w.suffix)),
    );
    kv(&format!("{prefix}.digit"), w.digit.to_string());
    kv(&format!("{prefix}.tied_path"), word(&w.tied.path));
    kv(&format!("{prefix}.tied_to_nonzero"), word(&w.tied.to_nonzero));
    kv(
        &format!("{prefix}.tied_loops"),
        format!("{},{}", word(&w.tied.loops.0), word(&w.tied.loops.1)),
    );
}

impl fmt::Display for ClassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: Option<bool>| match b {
            Some(true) => "yes",
            Some(false) => "no",
            None => "inconclusive",
        };
        let (s, h, q) = self.levels();
        if let Some(eq) = &self.equation {
            writeln!(f, "equation: {eq}")?;
        }
        writeln!(f, "S:  {} ({})", mark(Some(s)), self.sparse)?;
        let hat_detail = match &self.hat_s {
            Verdict::Yes(y) => y.to_string(),
            Verdict::No(HatSNo::Witness(w)) => w.to_string(),
            Verdict::No(HatSNo::Field(c)) => c.to_string(),
            Verdict::Inconclusive(why) => why.clone(),
        };
        writeln!(f, "Ŝ:  {} ({hat_detail})", mark(h))?;
        let qs_detail = match &self.qs {
            Verdict::Yes(QsYes::Direct(y)) => format!("σ: {y}"),
            Verdict::Yes(QsYes::Twisted(y)) => format!("σ∘t/(t+1): {y}"),
            Verdict::No(QsNo::Field(c)) => c.to_string(),
            Verdict::No(QsNo::Witnesses(..)) => "vertex witnesses for σ and σ∘t/(t+1)".into(),
            Verdict::Inconclusive(why) => why.clone(),
        };
        writeln!(f, "QS: {} ({qs_detail})", mark(q))?;
        match &self.sync.word {
            Some(w) => writeln!(f, "synchronizing word: {}", word(w))?,
            None => writeln!(
                f,
                "not synchronizing ({} absorbing states)",
                self.sync.absorbing.len()
            )?,
        }
        writeln!(f)?;
        writeln!(f, "[certificate]")?;
        f.write_str(&self.certificate())
    }
}
