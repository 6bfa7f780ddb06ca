//! Finitely generated abelian groups presented inside an ambient lattice,
//! maps between them, and node-level exactness checks.
//!
//! A subquotient `L / R` of `Z^ambient` is stored as a lattice basis for `L`
//! (the "generators", e.g. a cocycle lattice) and a matrix of relations in
//! generator coordinates (e.g. coboundaries). Everything needed for long
//! exact sequence verification reduces to integer solves against these
//! presentations, and every check yields an explicit witness vector.

use super::groups::{cokernel_structure, FGAbelianGroup};
use super::matrix::{IntMatrix, IntVec};
use super::solve::{kernel_lattice, solve_integer};
use num::{BigInt, Zero};

/// A subquotient of an ambient lattice: `span(generators) / span(relations)`.
#[derive(Clone, Debug)]
pub struct PresentedGroup {
    /// Ambient dimension (rows of `generators`).
    pub ambient_dim: usize,
    /// Columns form a lattice basis of the subgroup of `Z^ambient_dim`.
    pub generators: IntMatrix,
    /// Columns are relations, expressed in generator coordinates.
    pub relations: IntMatrix,
}

impl PresentedGroup {
    /// The subquotient `ker(kill) / im(fill)` of the ambient lattice: the
    /// usual cohomology-style presentation. `fill`'s image must lie in
    /// `kill`'s kernel; this is checked and panics otherwise (callers pass
    /// differentials, for which it is the complex axiom).
    pub fn kernel_mod_image(kill: &IntMatrix, fill: &IntMatrix) -> PresentedGroup {
        assert_eq!(kill.cols(), fill.rows(), "ambient dimension mismatch");
        let generators = kernel_lattice(kill);
        let mut rel_cols: Vec<IntVec> = Vec::new();
        for j in 0..fill.cols() {
            let col = fill.column(j);
            let coords = solve_integer(&generators, &col)
                .expect("image does not lie in the kernel: not a complex");
            rel_cols.push(coords);
        }
        let k = generators.cols();
        PresentedGroup {
            ambient_dim: kill.cols(),
            relations: IntMatrix::from_columns(k, &rel_cols),
            generators,
        }
    }

    /// Number of generators in the presentation.
    pub fn n_generators(&self) -> usize {
        self.generators.cols()
    }

    /// Invariants of the group, with generator witnesses pushed to ambient
    /// coordinates.
    pub fn invariants(&self) -> FGAbelianGroup {
        let g = cokernel_structure(&self.relations);
        let witnesses = g
            .generator_witnesses
            .iter()
            .map(|w| self.generators.mul_vec(w))
            .collect();
        FGAbelianGroup {
            free_rank: g.free_rank,
            torsion: g.torsion,
            generator_witnesses: witnesses,
        }
    }

    /// Coordinates of an ambient vector with respect to the generator
    /// lattice; `None` if the vector is outside the lattice.
    pub fn coordinates_of(&self, ambient: &[BigInt]) -> Option<IntVec> {
        solve_integer(&self.generators, ambient).ok()
    }

    /// Whether a generator-coordinate vector lies in the relation lattice
    /// (i.e. represents zero in the group); returns the expressing
    /// combination as a witness.
    pub fn is_zero_class(&self, coords: &[BigInt]) -> Option<IntVec> {
        solve_integer(&self.relations, coords).ok()
    }
}

/// A homomorphism between presented groups, induced by an ambient integer
/// matrix.
#[derive(Clone, Debug)]
pub struct PresentedHom {
    /// Matrix from the source ambient lattice to the target ambient lattice.
    pub ambient: IntMatrix,
    /// The induced matrix in generator coordinates.
    pub induced: IntMatrix,
}

impl PresentedHom {
    /// Builds the induced map on presentations. Panics if the ambient matrix
    /// does not carry source generators into the target generator lattice or
    /// relations into relations — both are structural errors upstream.
    pub fn new(source: &PresentedGroup, target: &PresentedGroup, ambient: IntMatrix) -> Self {
        assert_eq!(ambient.cols(), source.ambient_dim, "ambient shape mismatch");
        assert_eq!(ambient.rows(), target.ambient_dim, "ambient shape mismatch");
        let mut cols: Vec<IntVec> = Vec::new();
        for j in 0..source.n_generators() {
            let image = ambient.mul_vec(&source.generators.column(j));
            let coords = target
                .coordinates_of(&image)
                .expect("map does not carry generators into the target lattice");
            cols.push(coords);
        }
        let induced = IntMatrix::from_columns(target.n_generators(), &cols);
        // relations must map to zero classes
        for j in 0..source.relations.cols() {
            let rel_image = induced.mul_vec(&source.relations.column(j));
            assert!(
                target.is_zero_class(&rel_image).is_some(),
                "map does not respect relations"
            );
        }
        PresentedHom { ambient, induced }
    }

    /// Generators (in source generator coordinates) of the kernel of the
    /// induced map on the quotient: vectors whose image lies in the target
    /// relation lattice, together with the source relations themselves.
    pub fn kernel_class_generators(&self, source: &PresentedGroup, target: &PresentedGroup) -> Vec<IntVec> {
        let stacked = IntMatrix::hstack(&[&self.induced, &target.relations]);
        let ker = kernel_lattice(&stacked);
        let k = source.n_generators();
        let mut gens: Vec<IntVec> = Vec::new();
        for j in 0..ker.cols() {
            let full = ker.column(j);
            gens.push(full[0..k].to_vec());
        }
        for j in 0..source.relations.cols() {
            gens.push(source.relations.column(j));
        }
        gens
    }
}

/// Witness that one specific kernel generator has a preimage.
#[derive(Clone, Debug)]
pub struct ExactnessWitness {
    /// The kernel element, in middle-node generator coordinates.
    pub kernel_element: IntVec,
    /// Its preimage under the incoming map, in incoming-node generator
    /// coordinates.
    pub preimage: IntVec,
}

/// Result of checking exactness at one node `A --in--> B --out--> C`.
#[derive(Clone, Debug)]
pub struct NodeExactness {
    /// `out ∘ in = 0` holds (checked on every generator of `A`).
    pub composite_zero: bool,
    /// Every kernel generator of `out` admits a preimage under `in`.
    pub witnesses: Option<Vec<ExactnessWitness>>,
}

impl NodeExactness {
    pub fn passed(&self) -> bool {
        self.composite_zero && self.witnesses.is_some()
    }
}

/// Checks exactness of `A --in--> B --out--> C` at `B`.
///
/// `composite_zero`: for each generator of `A`, the double image is a zero
/// class in `C`. Kernel coverage: each kernel class generator of `out` is
/// solved against `[induced(in) | relations(B)]`; the preimage part of the
/// solution is recorded as a witness.
pub fn exactness_at(
    a: &PresentedGroup,
    b: &PresentedGroup,
    c: &PresentedGroup,
    map_in: &PresentedHom,
    map_out: &PresentedHom,
) -> NodeExactness {
    // composite zero on generators
    let mut composite_zero = true;
    for j in 0..a.n_generators() {
        let mut e = vec![BigInt::zero(); a.n_generators()];
        e[j] = BigInt::from(1);
        let through = map_out.induced.mul_vec(&map_in.induced.mul_vec(&e));
        if c.is_zero_class(&through).is_none() {
            composite_zero = false;
        }
    }
    // kernel coverage
    let stacked = IntMatrix::hstack(&[&map_in.induced, &b.relations]);
    let mut witnesses = Vec::new();
    for ker_gen in map_out.kernel_class_generators(b, c) {
        match solve_integer(&stacked, &ker_gen) {
            Ok(sol) => {
                let preimage = sol[0..a.n_generators()].to_vec();
                witnesses.push(ExactnessWitness {
                    kernel_element: ker_gen,
                    preimage,
                });
            }
            Err(_) => {
                return NodeExactness {
                    composite_zero,
                    witnesses: None,
                };
            }
        }
    }
    NodeExactness {
        composite_zero,
        witnesses: Some(witnesses),
    }
}
