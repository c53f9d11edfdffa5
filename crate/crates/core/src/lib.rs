//! Exact-arithmetic computations with the symplectic representation of
//! mapping class groups of closed surfaces.
//!
//! The crate decides liftability of mapping classes under the standard
//! k-sheeted regular cyclic covers, derives finite generating sets with
//! constructive factorizations back over those generators, counts orbits and
//! subgroup indices over `Z_k`, certifies the self-normalizing property by
//! exhaustive witness search, and carries the genus-2 side of the
//! hyperelliptic correspondence with sphere braids. All arithmetic is exact;
//! mapping classes travel as words over a small twist alphabet.

pub mod arith;
pub mod braid;
pub mod census;
pub mod factor;
pub mod gamma1;
pub mod generators;
pub mod io;
pub mod lifting;
pub mod matrix;
pub mod verify;
pub mod words;

pub use factor::{factor_lmod, factor_stab_e1, FactorLetter, FactorizationResult};
pub use gamma1::{gamma1_contains, gamma1_generators, sl2_decompose, unit_coset_words, CosetTable};
pub use generators::{
    bounding_pair, eta_embed, generating_set_lmod, iota_matrix, standard_chain, twist_matrix,
    BoundingPairSpec, Chain, ChainSelection, HomologyClass,
};
pub use lifting::{
    lcm_law, lmod_contains, lmod_contains_word, stab_e1_contains, stab_e1_contains_word,
    stabilizes_ladder_image, umod_contains, umod_contains_word, CoverParams, MembershipVerdict,
};
pub use matrix::{is_symplectic, mat_product, IntMatrix, ResidueMatrix, SymplecticForm};
pub use words::{parse_word, GeneratorSymbol, Word};
