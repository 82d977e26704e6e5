//! Exact computation in the genus-2 mapping class group via the
//! Birman-Hilden correspondence: chain twist words act as half-twist
//! automorphisms of the fundamental group of the 6-punctured sphere and as
//! symplectic 4x4 integer matrices, and a word is trivial exactly when it
//! is inner downstairs (with trivial puncture permutation) and trivial on
//! homology. Everything is integer/free-group arithmetic; no floats, no
//! randomness outside the property tests.

pub mod curves;
pub mod derivation;
pub mod dsl;
pub mod equivalence;
pub mod factorization;
pub mod homology;
pub mod mcg;
pub mod word;

/// The shipped factorizations, certificates, and derivation script.
pub mod data {
    pub const HAMADA_FACT: &str = include_str!("../data/hamada.fact");
    pub const XIAO_FACT: &str = include_str!("../data/xiao.fact");
    pub const BK_FACT: &str = include_str!("../data/bk.fact");
    pub const BK_TO_HAMADA_CERT: &str = include_str!("../data/bk_to_hamada.cert");
    pub const XIAO_TO_HAMADA_CERT: &str = include_str!("../data/xiao_to_hamada.cert");
    pub const SECTION5_DERIV: &str = include_str!("../data/section5.deriv");
}

pub use curves::{CurveClass, CurveDef, CurveError, CurveLibrary, NamedCurve};
pub use equivalence::{
    search_equivalence, verify_certificate, EquivalenceError, MoveCertificate, OrbitKey,
};
pub use factorization::{Entry, Factorization, FactorizationError, FactorizationType, Move};
pub use homology::{transvection, HomologyClass, SpMatrix};
pub use mcg::{evaluate_word, iota_word, Convention, MappingClass, McgError, Pi1Auto};
pub use word::{Alphabet, Letter, Word, WordError};
