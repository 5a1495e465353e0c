//! Embeddings into bounded-displacement permutation groups: per-word
//! permutation modules, the path-transported copy of F(a, b), fixed-point
//! and local-finiteness certificates, the lamplighter action on Z, and
//! transport between Z and N windows.

pub mod lamplighter;
pub mod perm_module;
pub mod wobble;

pub use lamplighter::{lamplighter_compose, LamplighterElement};
pub use perm_module::{act_word, word_module, PermModule};
pub use wobble::{
    disjoint_path_family, embed_f2, local_finiteness_certificate, semiregular_check,
    word_permutation, zn_transport, BoundedPermutation, F2Embedding, FinitenessCertificate,
    LocalFinitenessReport, SemiregularReport, WordCertificate, WordFixedPoints,
};
