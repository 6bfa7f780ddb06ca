//! Exact linear algebra over Z and Q.
//!
//! Everything downstream reduces to the solvers in this module: Smith normal
//! form with tracked unimodular transformations, integer and rational linear
//! systems, the mixed solver (rational unknowns coupled with integer
//! unknowns) and presentations of finitely generated abelian groups. All
//! arithmetic is arbitrary precision; nothing is ever rounded.

mod groups;
mod matrix;
mod presented;
mod smith;
mod solve;

pub use groups::{cokernel_structure, FGAbelianGroup, RZModuleInvariants};
pub use matrix::{IntMatrix, IntVec, RatMatrix, RatVector};
pub use presented::{exactness_at, ExactnessWitness, NodeExactness, PresentedGroup, PresentedHom};
pub use smith::{smith_normal_form, SmithDecomposition};
pub use solve::{
    integral_on_sublattice, kernel_lattice, left_kernel_lattice, mixed_kernel, rational_kernel,
    rational_rank, solve_integer, solve_mixed, solve_rational, MixedCertificate, MixedKernel,
    MixedSolution, NonIntegralPairing, SolveCertificate, SolveError,
};
