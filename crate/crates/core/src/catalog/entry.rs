//! Catalog entries and their key–value file format.
//!
//! One entry per file; each non-empty line not starting with `#` is
//! `key: value`. Words are digit strings in reading order (least
//! significant digit first), `ε` for the empty word.
//!
//! | key | value |
//! |---|---|
//! | `name` | identifier (required) |
//! | `equation` | annihilating polynomial in `t`, `X` (required) |
//! | `prefix` | seed selecting the root, e.g. `t+O(t^2)` (required) |
//! | `series` | expected initial coefficients |
//! | `states` | expected minimal state count |
//! | `order` | expected compositional order (a power of 2) |
//! | `breaks` | expected lower break sequence, comma separated |
//! | `level` | `s`, `hat-s` (Ŝ∖S), `qs` (QS∖Ŝ) or `none` (not in QS) |
//! | `rank` | expected sparseness rank (with `level: s`) |
//! | `field` | name of an expected field certificate |
//! | `tied` | `path=… to_nonzero=… loops=…,…` tied-vertex witness |
//! | `hats_witness` | `walk=prefix,cycle,suffix digit=… tied_path=… tied_to_nonzero=… tied_loops=…,…` |
//! | `sync` | a synchronizing word, or `none` |
//! | `absorbing` | expected number of absorbing states |
//! | `closed_form` | comma-separated generator names (closed forms or `sparse-m`) |
//! | `fixture` | automaton file shipped alongside the catalog |

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{parse_bipoly, parse_series, BiPoly, TruncSeries};
use crate::classify::{parse_word, HatSWitness, TiedWitness};
use crate::error::{Error, Result};
use crate::nottingham::{sparse_rep, ClosedForm};

/// Expected position in the hierarchy S ⊂ Ŝ ⊂ QS.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Sparse.
    S,
    /// In Ŝ but not sparse.
    HatS,
    /// In QS but not in Ŝ.
    Qs,
    /// Not in QS.
    None,
}

impl Level {
    /// `(in S, in Ŝ, in QS)`.
    pub fn flags(self) -> (bool, bool, bool) {
        match self {
            Level::S => (true, true, true),
            Level::HatS => (false, true, true),
            Level::Qs => (false, false, true),
            Level::None => (false, false, false),
        }
    }

    pub fn from_flags(flags: (bool, bool, bool)) -> Option<Level> {
        [Level::S, Level::HatS, Level::Qs, Level::None]
            .into_iter()
            .find(|l| l.flags() == flags)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::S => "S",
            Level::HatS => "Ŝ \\ S",
            Level::Qs => "QS \\ Ŝ",
            Level::None => "not QS",
        })
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" => Ok(Level::S),
            "hat-s" => Ok(Level::HatS),
            "qs" => Ok(Level::Qs),
            "none" => Ok(Level::None),
            other => Err(Error::Precondition(format!("unknown level `{other}`"))),
        }
    }
}

/// A coefficient generator to compare against the automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Closed(ClosedForm),
    /// The sparse representative of break `m`.
    Sparse(u32),
}

impl Generator {
    pub fn is_sparse(self) -> bool {
        match self {
            Generator::Closed(c) => c.is_sparse(),
            Generator::Sparse(_) => true,
        }
    }

    pub fn series(self, n: usize) -> Result<TruncSeries> {
        match self {
            Generator::Closed(c) => Ok(c.series(n)),
            Generator::Sparse(m) => Ok(sparse_rep(m, n)?.series),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Closed(c) => write!(f, "{c}"),
            Generator::Sparse(m) => write!(f, "sparse-{m}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.strip_prefix("sparse-") {
            Some(m) => m
                .parse()
                .map(Generator::Sparse)
                .map_err(|_| Error::Precondition(format!("bad generator `{s}`"))),
            None => s.parse().map(Generator::Closed),
        }
    }
}

/// Expected synchronization behaviour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyncExpectation {
    Word(Vec<u32>),
    NotSynchronizing,
}

/// One named series with its machine-checkable expectations.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub equation: BiPoly,
    pub prefix: TruncSeries,
    pub series: Option<TruncSeries>,
    pub states: Option<usize>,
    pub order: Option<u64>,
    pub breaks: Option<Vec<usize>>,
    pub level: Option<Level>,
    pub rank: Option<usize>,
    pub field: Option<String>,
    pub tied: Option<TiedWitness>,
    pub hats_witness: Option<HatSWitness>,
    pub sync: Option<SyncExpectation>,
    pub absorbing: Option<usize>,
    pub closed_forms: Vec<Generator>,
    pub fixture: Option<String>,
}

fn bad(key: &str, value: &str) -> Error {
    Error::Precondition(format!("bad value for `{key}`: `{value}`"))
}

/// `a=… b=…` fields of a structured value.
fn fields<'a>(key: &str, value: &'a str) -> Result<BTreeMap<&'a str, &'a str>> {
    value
        .split_whitespace()
        .map(|kv| kv.split_once('=').ok_or_else(|| bad(key, value)))
        .collect()
}

fn field_word(key: &str, map: &BTreeMap<&str, &str>, name: &str) -> Result<Vec<u32>> {
    map.get(name)
        .and_then(|w| parse_word(w))
        .ok_or_else(|| bad(key, name))
}

fn word_pair(key: &str, map: &BTreeMap<&str, &str>, name: &str) -> Result<(Vec<u32>, Vec<u32>)> {
    let v = map.get(name).ok_or_else(|| bad(key, name))?;
    let (a, b) = v.split_once(',').ok_or_else(|| bad(key, v))?;
    Ok((
        parse_word(a).ok_or_else(|| bad(key, a))?,
        parse_word(b).ok_or_else(|| bad(key, b))?,
    ))
}

fn parse_tied(key: &str, map: &BTreeMap<&str, &str>, prefix: &str) -> Result<TiedWitness> {
    Ok(TiedWitness {
        path: field_word(key, map, &format!("{prefix}path"))?,
        to_nonzero: field_word(key, map, &format!("{prefix}to_nonzero"))?,
        loops: word_pair(key, map, &format!("{prefix}loops"))?,
    })
}

fn parse_hats_witness(key: &str, value: &str) -> Result<HatSWitness> {
    let map = fields(key, value)?;
    let walk = map.get("walk").ok_or_else(|| bad(key, value))?;
    let parts: Vec<Vec<u32>> = walk
        .split(',')
        .map(|w| parse_word(w).ok_or_else(|| bad(key, w)))
        .collect::<Result<_>>()?;
    let [prefix, cycle, suffix]: [Vec<u32>; 3] = parts.try_into().map_err(|_| bad(key, walk))?;
    let digit = map
        .get("digit")
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| bad(key, value))?;
    Ok(HatSWitness {
        prefix,
        cycle,
        suffix,
        digit,
        tied: parse_tied(key, &map, "tied_")?,
        sparse_child_is_zero_sink: true,
    })
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| bad(key, value))
}

impl FromStr for CatalogEntry {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once(':').ok_or_else(|| Error::Parse {
                line: i + 1,
                column: 1,
                message: "expected `key: value`".into(),
            })?;
            if map.insert(k.trim(), v.trim()).is_some() {
                return Err(Error::Parse {
                    line: i + 1,
                    column: 1,
                    message: format!("duplicate key `{}`", k.trim()),
                });
            }
        }
        let required = |k: &str| map.get(k).copied().ok_or_else(|| Error::Precondition(format!("missing `{k}`")));
        let get = |k: &str| map.get(k).copied();
        let entry = CatalogEntry {
            name: required("name")?.to_string(),
            equation: parse_bipoly(required("equation")?, 2)?,
            prefix: parse_series(required("prefix")?, 2)?,
            series: get("series").map(|s| parse_series(s, 2)).transpose()?,
            states: get("states").map(|v| parse_num("states", v)).transpose()?,
            order: get("order").map(|v| parse_num("order", v)).transpose()?,
            breaks: get("breaks")
                .map(|v| v.split(',').map(|b| parse_num("breaks", b.trim())).collect())
                .transpose()?,
            level: get("level").map(str::parse).transpose()?,
            rank: get("rank").map(|v| parse_num("rank", v)).transpose()?,
            field: get("field").map(str::to_string),
            tied: get("tied")
                .map(|v| fields("tied", v).and_then(|m| parse_tied("tied", &m, "")))
                .transpose()?,
            hats_witness: get("hats_witness").map(|v| parse_hats_witness("hats_witness", v)).transpose()?,
            sync: get("sync")
                .map(|v| match v {
                    "none" => Ok(SyncExpectation::NotSynchronizing),
                    w => parse_word(w).map(SyncExpectation::Word).ok_or_else(|| bad("sync", w)),
                })
                .transpose()?,
            absorbing: get("absorbing").map(|v| parse_num("absorbing", v)).transpose()?,
            closed_forms: get("closed_form")
                .map(|v| v.split(',').map(|g| g.trim().parse()).collect())
                .transpose()?
                .unwrap_or_default(),
            fixture: get("fixture").map(str::to_string),
        };
        if let Some(o) = entry.order {
            if !o.is_power_of_two() {
                return Err(bad("order", &o.to_string()));
            }
        }
        Ok(entry)
    }
}

impl CatalogEntry {
    /// `n` with expected order `2^n`.
    pub fn order_exponent(&self) -> Option<u32> {
        self.order.map(u64::trailing_zeros)
    }
}
