//! Combinatorial engine for d-torsion classes in the d-cluster tilting
//! subcategories of higher Auslander algebras of type A and of higher
//! Nakayama algebras of type A and finite type A-infinity-infinity.
//!
//! Indecomposables are non-decreasing integer tuples ([`OsTuple`]); a
//! subcategory is a [`ModuleSet`] of positions in a [`TupleUniverse`].

pub mod bitset;
pub mod cli;
pub mod closure;
pub mod combinatorics;
pub mod enumerate;
pub mod error;
pub mod homext;
pub mod io;
pub mod lattice;
mod parallel;

pub use bitset::BitSet;
pub use closure::{
    check_torsion_class, dq_set, dq_single, generate_minimal, generate_minimal_with,
    is_torsion_class, ClosureStrategy, ModuleSet, PairScan, Violation,
};
pub use combinatorics::{
    build_universe, leq, loewy_length, module_support, squig, tau_d, Context, KupischKind,
    KupischSeries, OsTuple, TupleUniverse,
};
pub use enumerate::{
    decompose_blocks, enumerate_ainf, enumerate_incremental, enumerate_paper, restrict,
    BlockDecomposition, ClassCollection, EnumConfig,
};
pub use error::{Error, Result};
pub use homext::{ext_dim, ext_middle_terms, hom_dim, ExtensionMiddleTerms};
pub use lattice::{build_hasse, check_hasse_regular, check_semidistributive, join, meet, TorsionLattice};
pub use parallel::Workers;
