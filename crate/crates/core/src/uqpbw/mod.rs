//! Generic-parameter quantum group: word normal form, pairing, braid action, PBW bases.

pub mod braid;
pub mod engine;
pub mod pairing;
pub mod pbw;
pub mod suites;
pub mod tables;
pub mod words;

pub use braid::BraidDir;
pub use engine::{Engine, Tri};
pub use tables::Tables;
pub use pbw::{Exps, Pbw, PbwError, PbwKey};
pub use words::{word_weight, words_of_weight, Word, WordAlgebra, WordPoly, WordTri, Wt};
