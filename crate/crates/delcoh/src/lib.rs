//! Exact-arithmetic relative differential characters on finite simplicial
//! complexes.
//!
//! This crate computes cohomology of simplicial pairs in integer, rational
//! and R/Z coefficients, builds mapping cones of simplicial maps, represents
//! differential characters (absolute and relative, in several flavors) by
//! explicit cochain data, and machine-verifies the long exact sequences and
//! commutative diagrams that relate all of these. Every computation is exact:
//! integers and rationals are arbitrary precision, and every verification
//! either produces a constructive witness or a concrete counterexample
//! certificate.
//!
//! Module map:
//!
//! * [`core_algebra`] — integer/rational matrices, Smith normal form with
//!   transformation matrices, integer/rational/mixed linear solvers with
//!   solvability certificates, finitely generated abelian group invariants.
//! * [`simplicial`] — simplicial complexes, maps, (co)chains, boundary and
//!   pullback matrices, cohomology in Z / Q / R/Z coefficients, fundamental
//!   classes and pushforwards.
//! * [`cone`] — the mapping cone of a simplicial map, relative cohomology,
//!   connecting homomorphisms, and exactness verification for the
//!   coefficient-level long exact sequence.
//! * [`characters`] — differential characters as cochain data: construction,
//!   validity, holonomy, gauge equivalence, classification and the
//!   operations relating the different character types.
//! * [`sequences`] — seeded samplers for characters and the verifiers for
//!   the mixed long exact sequences, the flat-pair sequence and the
//!   three-row character diagram.
//! * [`report`] — the deterministic verification report structure shared by
//!   all verifiers and serialized by the command line tool.
//! * [`fixtures`] — the built-in complexes and map pairs used by tests and
//!   the command line examples.

pub mod characters;
pub mod cone;
pub mod core_algebra;
pub mod fixtures;
pub mod report;
pub mod sequences;
pub mod simplicial;
