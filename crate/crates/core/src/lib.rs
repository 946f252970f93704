//! Computational equivariant algebra over a finite group.
//!
//! The crate builds finite G-sets and their dependent products, and uses
//! them to compute free (semi-)Tambara functors on represented Mackey
//! functors through an explicit calculus of bispans `T <- U -> V -> X`.
//! Every structure comes with an exhaustive checker so that the axioms can be
//! verified at desk scale:
//!
//! * [`group`]: finite groups as multiplication tables, subgroup lattices,
//!   homomorphisms into symmetric groups.
//! * [`gset`]: finite G-sets, equivariant maps, pullbacks, coproducts,
//!   induction and restriction.
//! * [`exponential`]: dependent products (exponential diagrams) and the
//!   isomorphism test for distributors.
//! * [`bispan`]: bispans, canonical forms, and the transfer / norm /
//!   restriction operations.
//! * [`mackey`]: Mackey functors presented by structure matrices on orbits.
//! * [`tambara`]: free Tambara functor windows and axiom verification.
//! * [`xi`]: the comparison maps indexed by graph subgroups of `G x S_n`.
//! * [`green`]: truncated polynomial Green functors over `C_p` and their norm
//!   structures.
//! * [`tnr`]: a small language of transfer/norm/restriction words.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod bispan;
pub mod error;
pub mod exponential;
pub mod green;
pub mod group;
pub mod gset;
pub mod mackey;
pub mod matrix;
pub mod tambara;
pub mod tnr;
pub mod xi;

pub use error::{Error, Result};

/// Resource caps shared by the enumerating operations.
///
/// Every operation that could blow up combinatorially checks the relevant cap
/// and returns [`Error::ResourceBound`] instead of truncating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of candidate sections in a dependent product.
    pub section_cap: usize,
    /// Largest `n` for which `S_n` is materialized.
    pub sym_degree_cap: usize,
    /// Maximum size of a function-set exponential `T^n`.
    pub exponential_cap: usize,
    /// Maximum number of equivariant maps or basis candidates enumerated.
    pub enumeration_cap: usize,
    /// Maximum size of a coefficient space searched by the polynomial solvers.
    pub coefficient_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            section_cap: 1_000_000,
            sym_degree_cap: 4,
            exponential_cap: 100_000,
            enumeration_cap: 1_000_000,
            coefficient_cap: 1 << 20,
        }
    }
}
