//! Finite simplicial complexes, simplicial maps, (co)chains and cohomology.
//!
//! Complexes are given by explicit simplex lists with strictly increasing
//! vertex tuples; orientation conventions are the alternating-sign face
//! boundary. Cohomology is available with integer, rational and R/Z
//! coefficients; the R/Z invariants are computed through the integer
//! homology of the same complex (the two are dual, see
//! [`cohomology::cohomology`]).

mod chains;
mod cohomology;
mod complex;
mod manifold;
mod map;

pub use chains::{boundary_matrix, Chain, Cochain, CoefficientRing};
pub use cohomology::{chain_presentation, cochain_presentation, cohomology, GroupInvariants};
pub use complex::{Simplex, SimplicialComplex, SimplicialError, Vertex};
pub use manifold::{
    coherent_orientation, fundamental_class, pushforward_fundamental, RelativeCycle,
};
pub use map::{chain_pushforward, induced_cochain_map, pullback_cochain, SimplicialMap};
