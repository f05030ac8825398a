//! Named series with machine-checked expectations. The entries live in
//! `data/catalog/*.txt` (format documented in [`entry`]) and are compiled
//! into the library; the automaton fixtures live in `data/automata`.

pub mod entry;
pub mod verify;

pub use entry::{CatalogEntry, Generator, Level, SyncExpectation};
pub use verify::{
    catalog_verify, klopsch_state_counts, solve_entry, verify_entry, Check, EntryReport, VerifyOptions,
    CHECK_PRECISION, SPARSE_CHECK_PRECISION,
};

use crate::error::{Error, Result};

macro_rules! catalog_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../data/catalog/", $name, ".txt")))),*]
    };
}

/// The raw entry files, in catalog order.
pub const ENTRY_FILES: &[(&str, &str)] = catalog_files!(
    "sigma_min", "sigma_CS", "sigma_CS3", "sigma_CS2", "sigma_J", "sigma_J3", "sigma_T1", "sigma_T2", "sigma_T3",
    "sigma_T4", "sigma_1_5", "sigma_1_9", "sigma_8", "sigma_8_1", "sigma_8_2", "sigma_V1", "sigma_V2", "sigma_V3",
    "sigma_S1", "sigma_S3", "sigma_S5", "sigma_S7", "sigma_S9", "sigma_K3", "sigma_K5", "sigma_K7", "sigma_K9",
    "sigma_K11",
);

/// Automaton fixtures by file name.
const FIXTURES: &[(&str, &str)] = &[
    ("sigma_min.aut", include_str!("../../data/automata/sigma_min.aut")),
    ("sigma_1_9.aut", include_str!("../../data/automata/sigma_1_9.aut")),
    ("sigma_8.aut", include_str!("../../data/automata/sigma_8.aut")),
];

/// Text of a shipped automaton fixture.
pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// All parsed entries, in catalog order.
pub fn entries() -> Result<Vec<CatalogEntry>> {
    ENTRY_FILES
        .iter()
        .map(|(file, text)| {
            let e: CatalogEntry = text.parse()?;
            if e.name != *file {
                return Err(Error::Precondition(format!("entry {file} is named {}", e.name)));
            }
            Ok(e)
        })
        .collect()
}

/// The entry called `name` (case-insensitive).
pub fn entry(name: &str) -> Result<CatalogEntry> {
    entries()?
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Precondition(format!("no catalog entry `{name}`")))
}
