//! The sparseness hierarchy S ⊂ Ŝ ⊂ QS: exact sparseness decisions with
//! witnesses, counting functions, field-theoretic obstructions and
//! synchronization.

pub mod counting;
pub mod field;
pub mod hats;
pub mod report;
pub mod sparse;
pub mod sync;

pub use counting::counting_function;
pub use field::{cubic_resolvent, field_tests, Excludes, FieldCert};
pub use hats::{hats_test, hats_witness, HatS, HatSWitness, HatSYes, DEFAULT_MMAX};
pub use report::{classify_hierarchy, twisted_automaton, ClassReport, ClassifyOptions, HatSNo, QsNo, QsYes, Verdict};
pub use sparse::{decompose_sparse, is_sparse, parse_word, tied_vertices, tied_witness, word, Sparseness, TiedWitness};
pub use sync::{is_synchronizing_word, sync_analysis, SyncReport};
