//! Exact computation with principal specializations of Schur functions.
//!
//! The library decides when two plethysms of SL₂(ℂ)-representations are
//! isomorphic, i.e. when ∇^λ Sym^ℓ E ≅ ∇^μ Sym^m E for the 2-dimensional
//! natural module E.  At character level this is the question of when
//! s_λ(1,q,…,q^ℓ) and s_μ(1,q,…,q^m) agree up to a power of q.
//!
//! Modules:
//! - [`partitions`]: partitions and their statistics (hooks, contents,
//!   differences, Durfee-square data, complements).
//! - [`qpoly`]: exact integer-coefficient Laurent polynomials in q, quantum
//!   integers and q-binomial coefficients.
//! - [`tableaux`]: brute-force enumeration oracles — semistandard tableaux,
//!   weight enumerators, plane partitions, the complement bijection.
//! - [`specialize`]: fast formula routes for s_λ(1,q,…,q^ℓ) (hook content
//!   and pyramid), skew specializations, Q-characters.
//! - [`equivalence`]: the decision kernel — difference-multiset invariants,
//!   the equivalence predicate, lifting divisors, the infinite-family
//!   criterion for conjugate pairs.
//! - [`irreducible`]: structural and oracle tests for ℓ-irreducibility of
//!   skew Schur functions.
//! - [`identities`]: MacMahon's plane-partition product, q-binomial
//!   determinant identities, Chu–Vandermonde checks.
//! - [`classify`]: the search engine — exhaustive enumeration of
//!   equivalences by canonical-key grouping, classification labels, and
//!   theorem verifiers.

pub mod classify;
pub mod equivalence;
pub mod identities;
pub mod irreducible;
pub mod partitions;
pub mod qpoly;
pub mod specialize;
pub mod tableaux;

pub use equivalence::{DiffMultiset, EquivalenceRecord};
pub use partitions::Partition;
pub use qpoly::QPoly;
pub use tableaux::SkewShape;
