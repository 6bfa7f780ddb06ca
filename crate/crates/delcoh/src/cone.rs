//! The mapping cone of a pair map `f : Y -> X`: relative cochains, the
//! cone differential, relative cohomology over Z, Q and R/Z, connecting
//! maps, and exactness certification for the induced long sequences of
//! computable groups.
//!
//! Degree-`n` cone cochains are pairs `(a, b)` with `a` of degree `n` on
//! the target and `b` of degree `n-1` on the source; the differential is
//! the block matrix `[[δ_X, 0], [f^#, -δ_Y]]`. The chain-level cone, with
//! boundary `(C, C') -> (∂C + f_*C', -∂C')`, is its adjoint under the
//! evaluation pairing; R/Z results are computed on the chain side, where
//! the groups are finitely generated.

use crate::core_algebra::{
    exactness_at, rational_rank, smith_normal_form, solve_mixed, FGAbelianGroup, IntMatrix,
    IntVec, NodeExactness, PresentedGroup, PresentedHom, RZModuleInvariants, RatMatrix,
};
use crate::report::{NodeReport, VerificationReport};
use crate::simplicial::{
    chain_presentation, chain_pushforward, cochain_presentation, induced_cochain_map,
    pullback_cochain, Chain, CoefficientRing, Cochain, GroupInvariants, RelativeCycle,
    SimplicialError, SimplicialMap,
};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::ops::RangeInclusive;

// ---------------------------------------------------------------------------
// The cone complex and its differentials

/// The mapping cone of a pair map, tagged with a coefficient ring.
#[derive(Clone, Debug)]
pub struct ConeComplex {
    pub f: SimplicialMap,
    pub ring: CoefficientRing,
}

impl ConeComplex {
    pub fn new(f: SimplicialMap, ring: CoefficientRing) -> Self {
        ConeComplex { f, ring }
    }

    /// Sizes of the two blocks of degree-`n` cochains: target `n`-simplices
    /// and source `(n-1)`-simplices.
    pub fn block_sizes(&self, n: usize) -> (usize, usize) {
        cone_block_sizes(&self.f, n)
    }

    /// Total number of degree-`n` cone cochain coordinates.
    pub fn dim(&self, n: usize) -> usize {
        let (x, y) = self.block_sizes(n);
        x + y
    }

    pub fn differential(&self, n: usize) -> IntMatrix {
        cone_differential(&self.f, n)
    }
}

fn cone_block_sizes(f: &SimplicialMap, n: usize) -> (usize, usize) {
    let x = f.target.n_simplices(n);
    let y = if n == 0 { 0 } else { f.source.n_simplices(n - 1) };
    (x, y)
}

/// Total cone cochain dimension in degree `n`.
pub fn cone_dim(f: &SimplicialMap, n: usize) -> usize {
    let (x, y) = cone_block_sizes(f, n);
    x + y
}

/// The degree-`n` cone differential `[[δ_X, 0], [f^#, -δ_Y]]` as one
/// integer matrix from `C^n(X) ⊕ C^{n-1}(Y)` to `C^{n+1}(X) ⊕ C^n(Y)`.
pub fn cone_differential(f: &SimplicialMap, n: usize) -> IntMatrix {
    let dx = f.target.coboundary(n);
    let pull = induced_cochain_map(f, n);
    let dy = if n == 0 {
        IntMatrix::zero(f.source.n_simplices(0), 0)
    } else {
        f.source.coboundary(n - 1).neg()
    };
    let zero = IntMatrix::zero(dx.rows(), dy.cols());
    IntMatrix::block(&[&[&dx, &zero], &[&pull, &dy]])
}

/// The degree-`n` boundary of the chain-level cone,
/// `(C, C') -> (∂C + f_*C', -∂C')`, from `C_n(X) ⊕ C_{n-1}(Y)` to
/// `C_{n-1}(X) ⊕ C_{n-2}(Y)`.
pub fn chain_cone_boundary(f: &SimplicialMap, n: usize) -> IntMatrix {
    let bx = f.target.boundary(n);
    if n == 0 {
        return bx;
    }
    let push = chain_pushforward(f, n - 1);
    let by = f.source.boundary(n - 1).neg();
    let zero = IntMatrix::zero(by.rows(), bx.cols());
    IntMatrix::block(&[&[&bx, &push], &[&zero, &by]])
}

// ---------------------------------------------------------------------------
// Cone cochains

/// A degree-`n` relative cochain `(a, b)`: `a` on the target in degree `n`
/// and, for `n >= 1`, `b` on the source in degree `n-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeCochain {
    pub x_part: Cochain,
    pub y_part: Option<Cochain>,
}

impl ConeCochain {
    /// Validates block lengths, degrees and ring agreement against the
    /// pair map. `y_part` must be present exactly when the degree is
    /// positive.
    pub fn new(
        f: &SimplicialMap,
        x_part: Cochain,
        y_part: Option<Cochain>,
    ) -> Result<Self, SimplicialError> {
        let n = x_part.degree;
        let expected_x = f.target.n_simplices(n);
        if x_part.values.len() != expected_x {
            return Err(SimplicialError::LengthMismatch {
                expected: expected_x,
                got: x_part.values.len(),
            });
        }
        match (&y_part, n) {
            (None, 0) => {}
            (None, _) | (Some(_), 0) => {
                return Err(SimplicialError::DegreeOutOfRange {
                    degree: n,
                    dimension: f.source.dimension(),
                })
            }
            (Some(b), _) => {
                if b.degree != n - 1 {
                    return Err(SimplicialError::DegreeOutOfRange {
                        degree: b.degree,
                        dimension: f.source.dimension(),
                    });
                }
                let expected_y = f.source.n_simplices(n - 1);
                if b.values.len() != expected_y {
                    return Err(SimplicialError::LengthMismatch {
                        expected: expected_y,
                        got: b.values.len(),
                    });
                }
                if b.ring != x_part.ring {
                    return Err(SimplicialError::RingMismatch {
                        left: x_part.ring.as_str(),
                        right: b.ring.as_str(),
                    });
                }
            }
        }
        Ok(ConeCochain { x_part, y_part })
    }

    pub fn zero(f: &SimplicialMap, degree: usize, ring: CoefficientRing) -> Self {
        let y_part = if degree == 0 {
            None
        } else {
            Some(Cochain::zero(&f.source, degree - 1, ring))
        };
        ConeCochain {
            x_part: Cochain::zero(&f.target, degree, ring),
            y_part,
        }
    }

    pub fn degree(&self) -> usize {
        self.x_part.degree
    }

    pub fn ring(&self) -> CoefficientRing {
        self.x_part.ring
    }

    /// The cone coboundary `(δa, f^# a - δb)`.
    pub fn coboundary(&self, f: &SimplicialMap) -> ConeCochain {
        let dx = self.x_part.coboundary(&f.target);
        let pulled = pullback_cochain(f, &self.x_part);
        let y_new = match &self.y_part {
            Some(b) => pulled.sub(&b.coboundary(&f.source)),
            None => pulled,
        };
        ConeCochain {
            x_part: dx,
            y_part: Some(y_new),
        }
    }

    pub fn is_cocycle(&self, f: &SimplicialMap) -> bool {
        self.coboundary(f).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.x_part.is_zero() && self.y_part.as_ref().is_none_or(|b| b.is_zero())
    }

    /// Evaluation `⟨a, C⟩ + ⟨b, C'⟩` against a relative cycle of the same
    /// degree.
    pub fn pair(&self, rel: &RelativeCycle) -> BigRational {
        assert_eq!(self.degree(), rel.degree, "degree mismatch");
        let mut v = self.x_part.pair(&rel.c);
        if let Some(b) = &self.y_part {
            v += b.pair(&rel.c_prime);
        }
        v
    }

    /// Flattens to the cone coordinate vector (target block first).
    pub fn to_vector(&self) -> Vec<BigRational> {
        let mut v = self.x_part.values.clone();
        if let Some(b) = &self.y_part {
            v.extend(b.values.iter().cloned());
        }
        v
    }

    /// Rebuilds a cone cochain from a flat coordinate vector.
    pub fn from_vector(
        f: &SimplicialMap,
        degree: usize,
        ring: CoefficientRing,
        v: &[BigRational],
    ) -> Result<Self, SimplicialError> {
        let (x, y) = cone_block_sizes(f, degree);
        if v.len() != x + y {
            return Err(SimplicialError::LengthMismatch {
                expected: x + y,
                got: v.len(),
            });
        }
        let x_part = Cochain {
            degree,
            ring,
            values: v[..x].to_vec(),
        };
        let y_part = if degree == 0 {
            None
        } else {
            Some(Cochain {
                degree: degree - 1,
                ring,
                values: v[x..].to_vec(),
            })
        };
        Ok(ConeCochain { x_part, y_part })
    }

    /// Blockwise sum; rings combine like [`Cochain::add`].
    pub fn add(&self, other: &ConeCochain) -> ConeCochain {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        let y_part = match (&self.y_part, &other.y_part) {
            (Some(a), Some(b)) => Some(a.add(b)),
            (None, None) => None,
            _ => panic!("degree mismatch between source blocks"),
        };
        ConeCochain {
            x_part: self.x_part.add(&other.x_part),
            y_part,
        }
    }

    /// Blockwise difference.
    pub fn sub(&self, other: &ConeCochain) -> ConeCochain {
        self.add(&other.neg())
    }

    /// Blockwise negation.
    pub fn neg(&self) -> ConeCochain {
        ConeCochain {
            x_part: self.x_part.neg(),
            y_part: self.y_part.as_ref().map(|b| b.neg()),
        }
    }
}

/// An integral basis of the degree-`n` relative cycles `(C, C')` with
/// `∂C + f_*C' = 0` and `∂C' = 0`, computed as the kernel lattice of the
/// chain-level cone boundary.
pub fn relative_cycle_basis(f: &SimplicialMap, n: usize) -> Vec<RelativeCycle> {
    let lattice = crate::core_algebra::kernel_lattice(&chain_cone_boundary(f, n));
    let x = f.target.n_simplices(n);
    (0..lattice.cols())
        .map(|j| {
            let col = lattice.column(j);
            let c = Chain::new(&f.target, n, col[..x].to_vec())
                .expect("kernel columns match the chain block sizes");
            let c_prime = if n == 0 {
                Chain::zero(&f.source, 0)
            } else {
                Chain::new(&f.source, n - 1, col[x..].to_vec())
                    .expect("kernel columns match the chain block sizes")
            };
            RelativeCycle::new(f, c, c_prime)
                .expect("kernel columns of the cone boundary are relative cycles")
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Relative cohomology

/// Integer presentation of degree-`n` relative cohomology: cone cocycles
/// modulo cone coboundaries.
pub fn cone_presentation_z(f: &SimplicialMap, n: usize) -> PresentedGroup {
    let kill = cone_differential(f, n);
    let fill = if n == 0 {
        IntMatrix::zero(kill.cols(), 0)
    } else {
        cone_differential(f, n - 1)
    };
    PresentedGroup::kernel_mod_image(&kill, &fill)
}

/// Integer presentation of the degree-`n` homology of the chain cone.
pub fn cone_homology_presentation(f: &SimplicialMap, n: usize) -> PresentedGroup {
    PresentedGroup::kernel_mod_image(&chain_cone_boundary(f, n), &chain_cone_boundary(f, n + 1))
}

/// Relative cohomology `H^n(X, Y, f; R)` of the pair, for `R` one of Z, Q,
/// R/Z. The R/Z invariants come from the integer homology of the chain
/// cone, to which they are dual.
pub fn relative_cohomology(f: &SimplicialMap, n: usize, coeff: CoefficientRing) -> GroupInvariants {
    match coeff {
        CoefficientRing::Z => {
            GroupInvariants::FinitelyGenerated(cone_presentation_z(f, n).invariants())
        }
        CoefficientRing::Q => {
            let dim = cone_dim(f, n);
            let rank_out = smith_normal_form(&cone_differential(f, n)).rank;
            let rank_in = if n == 0 {
                0
            } else {
                smith_normal_form(&cone_differential(f, n - 1)).rank
            };
            GroupInvariants::FinitelyGenerated(FGAbelianGroup::free(dim - rank_out - rank_in))
        }
        CoefficientRing::RZ => GroupInvariants::RZ(RZModuleInvariants::dual_of(
            &cone_homology_presentation(f, n).invariants(),
        )),
    }
}

// ---------------------------------------------------------------------------
// Ambient matrices of the structure maps

/// `b -> (0, b)`: from `C^{n-1}(Y)` into degree-`n` cone cochains.
pub fn iota_ambient(f: &SimplicialMap, n: usize) -> IntMatrix {
    let (x, y) = cone_block_sizes(f, n);
    IntMatrix::vstack(&[&IntMatrix::zero(x, y), &IntMatrix::identity(y)])
}

/// `(a, b) -> a`: from degree-`n` cone cochains onto `C^n(X)`.
pub fn pi_ambient(f: &SimplicialMap, n: usize) -> IntMatrix {
    let (x, y) = cone_block_sizes(f, n);
    IntMatrix::hstack(&[&IntMatrix::identity(x), &IntMatrix::zero(x, y)])
}

/// `C -> (C, 0)`: from `C_n(X)` into degree-`n` cone chains.
pub fn chain_incl_ambient(f: &SimplicialMap, n: usize) -> IntMatrix {
    let (x, y) = cone_block_sizes(f, n);
    IntMatrix::vstack(&[&IntMatrix::identity(x), &IntMatrix::zero(y, x)])
}

/// `(C, C') -> C'`: from degree-`n` cone chains onto `C_{n-1}(Y)`.
pub fn chain_proj_ambient(f: &SimplicialMap, n: usize) -> IntMatrix {
    let (x, y) = cone_block_sizes(f, n);
    IntMatrix::hstack(&[&IntMatrix::zero(y, x), &IntMatrix::identity(y)])
}

pub(crate) fn trivial_presentation() -> PresentedGroup {
    PresentedGroup {
        ambient_dim: 0,
        generators: IntMatrix::zero(0, 0),
        relations: IntMatrix::zero(0, 0),
    }
}

// ---------------------------------------------------------------------------
// Maps on computed generators

/// A homomorphism between computed groups, written on their listed
/// generators: column `j` holds the coordinates of the image of source
/// generator `j` in the target's generator list (torsion coordinates in
/// canonical range `0 .. d`).
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: GroupInvariants,
    pub target: GroupInvariants,
    pub matrix: IntMatrix,
}

/// Coordinates of an ambient vector in the invariant-factor generator
/// list of a presentation (torsion generators first, then free ones,
/// matching the order of listed witnesses). `None` when the vector does
/// not lie in the presented sublattice.
fn invariant_coordinates(p: &PresentedGroup, ambient: &[BigInt]) -> Option<IntVec> {
    let c = p.coordinates_of(ambient)?;
    let s = smith_normal_form(&p.relations);
    let u_c = s.u.mul_vec(&c);
    let mut out = Vec::new();
    for i in 0..s.rank {
        let d = s.d.get(i, i);
        if !d.is_one() {
            let mut r = &u_c[i] % d;
            if r.is_negative() {
                r += d;
            }
            out.push(r);
        }
    }
    for coord in u_c.iter().take(p.n_generators()).skip(s.rank) {
        out.push(coord.clone());
    }
    Some(out)
}

/// The matrix of an ambient map on the invariant-factor generators of two
/// presentations.
fn induced_on_invariants(
    source: &PresentedGroup,
    target: &PresentedGroup,
    ambient: &IntMatrix,
) -> IntMatrix {
    let src_inv = source.invariants();
    let tgt_inv = target.invariants();
    let rows = tgt_inv.generator_witnesses.len();
    let cols: Vec<IntVec> = src_inv
        .generator_witnesses
        .iter()
        .map(|w| {
            let image = ambient.mul_vec(w);
            invariant_coordinates(target, &image)
                .expect("structure map must carry cocycles to cocycles")
        })
        .collect();
    IntMatrix::from_columns(rows, &cols)
}

/// The connecting map `H^{n-1}(Y; R) -> H^n(X, Y, f; R)`, induced by
/// `b -> (0, b)`, written on computed generators. For R/Z the matrix is
/// obtained on the dual side, as the transpose of the chain-level
/// projection `(C, C') -> C'` on integral homology generators.
pub fn connecting_hom(f: &SimplicialMap, n: usize, coeff: CoefficientRing) -> InducedMap {
    match coeff {
        CoefficientRing::Z => {
            let src = if n == 0 {
                trivial_presentation()
            } else {
                cochain_presentation(&f.source, n - 1)
            };
            let tgt = cone_presentation_z(f, n);
            let matrix = induced_on_invariants(&src, &tgt, &iota_ambient(f, n));
            InducedMap {
                source: GroupInvariants::FinitelyGenerated(src.invariants()),
                target: GroupInvariants::FinitelyGenerated(tgt.invariants()),
                matrix,
            }
        }
        CoefficientRing::Q => {
            // rationally only the free blocks survive; they sit at the end
            // of the generator lists
            let z = connecting_hom(f, n, CoefficientRing::Z);
            let (src, tgt) = match (&z.source, &z.target) {
                (GroupInvariants::FinitelyGenerated(s), GroupInvariants::FinitelyGenerated(t)) => {
                    (s.clone(), t.clone())
                }
                _ => unreachable!("integer route returns finitely generated groups"),
            };
            let ts = src.torsion.len();
            let tt = tgt.torsion.len();
            let matrix = IntMatrix::from_fn(tgt.free_rank, src.free_rank, |i, j| {
                z.matrix.get(tt + i, ts + j).clone()
            });
            InducedMap {
                source: GroupInvariants::FinitelyGenerated(FGAbelianGroup::free(src.free_rank)),
                target: GroupInvariants::FinitelyGenerated(FGAbelianGroup::free(tgt.free_rank)),
                matrix,
            }
        }
        CoefficientRing::RZ => {
            let hsrc = if n == 0 {
                trivial_presentation()
            } else {
                chain_presentation(&f.source, n - 1)
            };
            let htgt = cone_homology_presentation(f, n);
            let chain_level = induced_on_invariants(&htgt, &hsrc, &chain_proj_ambient(f, n));
            InducedMap {
                source: GroupInvariants::RZ(RZModuleInvariants::dual_of(&hsrc.invariants())),
                target: GroupInvariants::RZ(RZModuleInvariants::dual_of(&htgt.invariants())),
                matrix: chain_level.transpose(),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Long-sequence verification

pub(crate) fn exactness_node(label: String, group: String, ex: &NodeExactness) -> NodeReport {
    let mut node = NodeReport::new(label).with_group(group);
    node.push_check("maps compose to zero", ex.composite_zero, "");
    match &ex.witnesses {
        Some(ws) => node.push_check(
            "kernel generators lifted",
            true,
            format!("{} witnesses", ws.len()),
        ),
        None => node.push_check(
            "kernel generators lifted",
            false,
            "no preimage for some kernel generator",
        ),
    }
    node
}

/// Verifies exactness of the long sequence
/// `... -> H^{k-1}(Y) -> H^k(X,Y,f) -> H^k(X) -> H^k(Y) -> ...`
/// over the given coefficient ring, at every node whose middle degree lies
/// in `degrees`.
///
/// * Z: full exactness on integer presentations, with preimage witnesses.
/// * Q: rank bookkeeping (composite rank zero; rank of kernel equals rank
///   of image) on rational cocycle bases.
/// * R/Z: exactness of the dual integral homology sequence (the two are
///   equivalent since R/Z is divisible), plus adjointness of the two cone
///   differentials and explicit flat-cochain realizations of every
///   generator.
pub fn verify_les(
    f: &SimplicialMap,
    coeff: CoefficientRing,
    degrees: RangeInclusive<usize>,
) -> VerificationReport {
    let mut report =
        VerificationReport::new(format!("coefficient cone sequence ({})", coeff.as_str()));
    match coeff {
        CoefficientRing::Z => verify_les_z(f, degrees, &mut report),
        CoefficientRing::Q => verify_les_q(f, degrees, &mut report),
        CoefficientRing::RZ => verify_les_rz(f, degrees, &mut report),
    }
    report
}

fn verify_les_z(f: &SimplicialMap, degrees: RangeInclusive<usize>, report: &mut VerificationReport) {
    let trivial = trivial_presentation();
    for k in degrees {
        let py_prev = if k == 0 {
            trivial.clone()
        } else {
            cochain_presentation(&f.source, k - 1)
        };
        let pc = cone_presentation_z(f, k);
        let px = cochain_presentation(&f.target, k);
        let py = cochain_presentation(&f.source, k);
        let pc_next = cone_presentation_z(f, k + 1);

        let iota = PresentedHom::new(&py_prev, &pc, iota_ambient(f, k));
        let pi = PresentedHom::new(&pc, &px, pi_ambient(f, k));
        let pull = PresentedHom::new(&px, &py, induced_cochain_map(f, k));
        let iota_next = PresentedHom::new(&py, &pc_next, iota_ambient(f, k + 1));

        let ex = exactness_at(&py_prev, &pc, &px, &iota, &pi);
        report.push_node(exactness_node(
            format!("H^{k}(X,Y,f;Z)"),
            pc.invariants().to_string(),
            &ex,
        ));
        let ex = exactness_at(&pc, &px, &py, &pi, &pull);
        report.push_node(exactness_node(
            format!("H^{k}(X;Z)"),
            px.invariants().to_string(),
            &ex,
        ));
        let ex = exactness_at(&px, &py, &pc_next, &pull, &iota_next);
        report.push_node(exactness_node(
            format!("H^{k}(Y;Z)"),
            py.invariants().to_string(),
            &ex,
        ));
    }
}

/// A rational cochain space in one degree: a cocycle basis and the
/// incoming differential whose column space spans the coboundaries.
struct QSpace {
    cocycles: RatMatrix,
    coboundaries: RatMatrix,
}

impl QSpace {
    fn new(d_out: &IntMatrix, d_in: Option<&IntMatrix>) -> Self {
        use crate::core_algebra::rational_kernel;
        let cocycles = rational_kernel(&d_out.to_rat());
        let coboundaries = match d_in {
            Some(m) => m.to_rat(),
            None => RatMatrix::zero(d_out.cols(), 0),
        };
        QSpace {
            cocycles,
            coboundaries,
        }
    }

    fn rank_h(&self) -> usize {
        self.cocycles.cols() - rational_rank(&self.coboundaries)
    }
}

/// Rank of the induced map on cohomology for an ambient matrix, over Q.
fn q_induced_rank(src: &QSpace, tgt: &QSpace, ambient: &IntMatrix) -> usize {
    let mapped = ambient.to_rat().mul(&src.cocycles);
    let stacked = RatMatrix::hstack(&[&mapped, &tgt.coboundaries]);
    rational_rank(&stacked) - rational_rank(&tgt.coboundaries)
}

/// Whether the composite of two ambient maps is zero on cohomology, over Q.
fn q_composite_zero(src: &QSpace, tgt: &QSpace, first: &IntMatrix, second: &IntMatrix) -> bool {
    let mapped = second.to_rat().mul(&first.to_rat()).mul(&src.cocycles);
    let stacked = RatMatrix::hstack(&[&mapped, &tgt.coboundaries]);
    rational_rank(&stacked) == rational_rank(&tgt.coboundaries)
}

fn verify_les_q(f: &SimplicialMap, degrees: RangeInclusive<usize>, report: &mut VerificationReport) {
    let x = &f.target;
    let y = &f.source;
    let x_space = |k: usize| {
        let d_in = if k == 0 { None } else { Some(x.coboundary(k - 1)) };
        QSpace::new(&x.coboundary(k), d_in.as_ref())
    };
    let y_space = |k: usize| {
        let d_in = if k == 0 { None } else { Some(y.coboundary(k - 1)) };
        QSpace::new(&y.coboundary(k), d_in.as_ref())
    };
    let cone_space = |k: usize| {
        let d_in = if k == 0 { None } else { Some(cone_differential(f, k - 1)) };
        QSpace::new(&cone_differential(f, k), d_in.as_ref())
    };
    // the zero space stands in for the degree-(-1) end
    let zero_space = || QSpace {
        cocycles: RatMatrix::zero(0, 0),
        coboundaries: RatMatrix::zero(0, 0),
    };

    for k in degrees {
        let sy_prev = if k == 0 { zero_space() } else { y_space(k - 1) };
        let sc = cone_space(k);
        let sx = x_space(k);
        let sy = y_space(k);
        let sc_next = cone_space(k + 1);

        let iota = iota_ambient(f, k);
        let pi = pi_ambient(f, k);
        let pull = induced_cochain_map(f, k);
        let iota_next = iota_ambient(f, k + 1);

        let nodes: [(&str, &QSpace, &QSpace, &QSpace, &IntMatrix, &IntMatrix); 3] = [
            ("H^{}(X,Y,f;Q)", &sy_prev, &sc, &sx, &iota, &pi),
            ("H^{}(X;Q)", &sc, &sx, &sy, &pi, &pull),
            ("H^{}(Y;Q)", &sx, &sy, &sc_next, &pull, &iota_next),
        ];
        for (pattern, a, b, c, map_in, map_out) in nodes {
            let label = pattern.replacen("{}", &k.to_string(), 1);
            let rank_b = b.rank_h();
            let rank_in = q_induced_rank(a, b, map_in);
            let rank_out = q_induced_rank(b, c, map_out);
            let composite = q_composite_zero(a, c, map_in, map_out);
            let mut node =
                NodeReport::new(label).with_group(FGAbelianGroup::free(rank_b).to_string());
            node.push_check("composite has rank zero", composite, "");
            node.push_check(
                "rank of kernel equals rank of image",
                rank_in + rank_out == rank_b,
                format!("image {rank_in} + coimage {rank_out} vs dimension {rank_b}"),
            );
            report.push_node(node);
        }
    }
}

/// Realizes every listed generator of a dualized homology group by a flat
/// rational cochain: exact prescribed pairings on the generator witnesses
/// and integral pairings on all boundaries.
pub(crate) fn rz_generators_realized(h: &PresentedGroup, boundaries: &IntMatrix) -> (bool, String) {
    let inv = h.invariants();
    let wits = &inv.generator_witnesses;
    if wits.is_empty() {
        return (true, "no generators".to_string());
    }
    let n_t = inv.torsion.len();
    let dim = h.ambient_dim;
    let w_block = IntMatrix::from_columns(dim, wits).transpose().to_rat();
    let b_block = boundaries.transpose().to_rat();
    let aq = RatMatrix::vstack(&[&w_block, &b_block]);
    let nb = boundaries.cols();
    let az = IntMatrix::vstack(&[
        &IntMatrix::zero(wits.len(), nb),
        &IntMatrix::identity(nb).neg(),
    ]);
    for (i, _) in wits.iter().enumerate() {
        let value = if i < n_t {
            BigRational::new(BigInt::one(), inv.torsion[i].clone())
        } else {
            BigRational::new(BigInt::one(), BigInt::from(2))
        };
        let mut rhs = vec![BigRational::zero(); wits.len() + nb];
        rhs[i] = value;
        if solve_mixed(&aq, &az, &rhs).is_err() {
            return (false, format!("generator {i} admits no flat representative"));
        }
    }
    (true, format!("{} generators realized", wits.len()))
}

fn verify_les_rz(
    f: &SimplicialMap,
    degrees: RangeInclusive<usize>,
    report: &mut VerificationReport,
) {
    let trivial = trivial_presentation();
    let lo = *degrees.start();
    let hi = *degrees.end();

    // adjointness of the two cones, the bridge that makes the dual route
    // valid
    let mut adj = NodeReport::new("cochain/chain cone adjointness");
    for k in lo..=hi {
        let ok = cone_differential(f, k).transpose() == chain_cone_boundary(f, k + 1);
        adj.push_check(format!("degree {k}"), ok, "");
    }
    report.push_node(adj);

    for k in lo..=hi {
        let hy_prev = if k == 0 {
            trivial.clone()
        } else {
            chain_presentation(&f.source, k - 1)
        };
        let hy = chain_presentation(&f.source, k);
        let hx = chain_presentation(&f.target, k);
        let hcone = cone_homology_presentation(f, k);
        let hcone_next = cone_homology_presentation(f, k + 1);

        let push = PresentedHom::new(&hy, &hx, chain_pushforward(f, k));
        let incl = PresentedHom::new(&hx, &hcone, chain_incl_ambient(f, k));
        let proj = PresentedHom::new(&hcone, &hy_prev, chain_proj_ambient(f, k));
        let proj_next = PresentedHom::new(&hcone_next, &hy, chain_proj_ambient(f, k + 1));

        // exactness at a homology node certifies exactness at the dual
        // R/Z cohomology node
        let ex = exactness_at(&hx, &hcone, &hy_prev, &incl, &proj);
        let mut node = exactness_node(
            format!("H^{k}(X,Y,f;R/Z)"),
            RZModuleInvariants::dual_of(&hcone.invariants()).to_string(),
            &ex,
        );
        let (ok, detail) = rz_generators_realized(&hcone, &chain_cone_boundary(f, k + 1));
        node.push_check("generators realized by flat cochains", ok, detail);
        report.push_node(node);

        let ex = exactness_at(&hy, &hx, &hcone, &push, &incl);
        let mut node = exactness_node(
            format!("H^{k}(X;R/Z)"),
            RZModuleInvariants::dual_of(&hx.invariants()).to_string(),
            &ex,
        );
        let (ok, detail) = rz_generators_realized(&hx, &f.target.boundary(k + 1));
        node.push_check("generators realized by flat cochains", ok, detail);
        report.push_node(node);

        let ex = exactness_at(&hcone_next, &hy, &hx, &proj_next, &push);
        let mut node = exactness_node(
            format!("H^{k}(Y;R/Z)"),
            RZModuleInvariants::dual_of(&hy.invariants()).to_string(),
            &ex,
        );
        let (ok, detail) = rz_generators_realized(&hy, &f.source.boundary(k + 1));
        node.push_check("generators realized by flat cochains", ok, detail);
        report.push_node(node);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::simplicial::cohomology;
    use num::traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cone_differential_squares_to_zero() {
        for (_, f) in fixtures::standard_pairs() {
            for n in 0..=3 {
                let d_n = cone_differential(&f, n);
                let d_next = cone_differential(&f, n + 1);
                assert!(d_next.mul(&d_n).is_zero(), "failure at degree {n}");
            }
        }
    }

    #[test]
    fn chain_cone_is_adjoint_to_cochain_cone() {
        for (_, f) in fixtures::standard_pairs() {
            for n in 0..=3 {
                assert_eq!(
                    cone_differential(&f, n).transpose(),
                    chain_cone_boundary(&f, n + 1)
                );
            }
        }
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let f = fixtures::pair_identity_sphere();
        for n in 0..=3 {
            for ring in [CoefficientRing::Z, CoefficientRing::Q, CoefficientRing::RZ] {
                assert!(
                    relative_cohomology(&f, n, ring).is_trivial(),
                    "degree {n}, ring {ring}"
                );
            }
        }
    }

    #[test]
    fn cone_over_empty_source_recovers_absolute_cohomology() {
        let f = fixtures::pair_empty_into_sphere();
        for n in 0..=2 {
            let rel = relative_cohomology(&f, n, CoefficientRing::Z);
            let abs = cohomology(&f.target, n, CoefficientRing::Z);
            assert_eq!(rel.to_string(), abs.to_string(), "degree {n}");
        }
    }

    #[test]
    fn equator_pair_relative_groups() {
        let f = fixtures::pair_equator_in_sphere();
        assert_eq!(relative_cohomology(&f, 0, CoefficientRing::Z).to_string(), "0");
        assert_eq!(relative_cohomology(&f, 1, CoefficientRing::Z).to_string(), "0");
        assert_eq!(relative_cohomology(&f, 2, CoefficientRing::Z).to_string(), "Z^2");
        assert_eq!(
            relative_cohomology(&f, 2, CoefficientRing::RZ).to_string(),
            "(R/Z)^2"
        );
    }

    #[test]
    fn point_in_circle_relative_group() {
        let f = fixtures::pair_point_in_circle();
        assert_eq!(relative_cohomology(&f, 1, CoefficientRing::Z).to_string(), "Z");
    }

    #[test]
    fn doubling_pair_has_two_torsion_in_degree_two() {
        let f = fixtures::pair_doubling_circle();
        assert_eq!(relative_cohomology(&f, 2, CoefficientRing::Z).to_string(), "Z/2");
        // with divisible coefficients the torsion is invisible
        assert_eq!(relative_cohomology(&f, 2, CoefficientRing::Q).to_string(), "0");
        assert_eq!(relative_cohomology(&f, 2, CoefficientRing::RZ).to_string(), "0");
    }

    #[test]
    fn moebius_pair_relative_two_torsion() {
        let f = fixtures::pair_moebius_rim();
        assert_eq!(relative_cohomology(&f, 2, CoefficientRing::Z).to_string(), "Z/2");
    }

    #[test]
    fn connecting_map_for_point_in_circle_is_zero() {
        // the degree-zero restriction map is onto, so the connecting map
        // kills everything; the relative class comes from the target side
        let hom = connecting_hom(&fixtures::pair_point_in_circle(), 1, CoefficientRing::Z);
        assert_eq!(hom.source.to_string(), "Z");
        assert_eq!(hom.target.to_string(), "Z");
        assert_eq!(hom.matrix.rows(), 1);
        assert_eq!(hom.matrix.cols(), 1);
        assert!(hom.matrix.get(0, 0).is_zero());
    }

    #[test]
    fn connecting_map_for_moebius_rim_is_onto_torsion() {
        // the rim loop maps to twice the core loop, so the connecting map
        // H^1(rim) -> H^2(cone) = Z/2 carries the generator onto the
        // torsion class
        let hom = connecting_hom(&fixtures::pair_moebius_rim(), 2, CoefficientRing::Z);
        assert_eq!(hom.source.to_string(), "Z");
        assert_eq!(hom.target.to_string(), "Z/2");
        assert_eq!(hom.matrix.get(0, 0), &BigInt::one());
    }

    #[test]
    fn connecting_map_is_representative_independent() {
        let f = fixtures::pair_moebius_rim();
        let src = cochain_presentation(&f.source, 1);
        let tgt = cone_presentation_z(&f, 2);
        let ambient = iota_ambient(&f, 2);
        let w = src.invariants().generator_witnesses[0].clone();
        let image = ambient.mul_vec(&w);
        let base = invariant_coordinates(&tgt, &image).unwrap();
        // shift the image by an integer combination of cone coboundaries
        let cone_d1 = cone_differential(&f, 1);
        let mut shifted = image.clone();
        for j in 0..cone_d1.cols() {
            for (i, row) in shifted.iter_mut().enumerate() {
                *row += cone_d1.get(i, j) * BigInt::from((j % 5) as i64 - 2);
            }
        }
        let moved = invariant_coordinates(&tgt, &shifted).unwrap();
        assert_eq!(base, moved);
    }

    #[test]
    fn cone_cochain_coboundary_matches_the_matrix_differential() {
        let f = fixtures::pair_equator_in_sphere();
        let a = Cochain::from_pairs(
            &f.target,
            1,
            CoefficientRing::Q,
            &[(vec![0, 1], rat(1, 3)), (vec![1, 2], rat(-2, 5))],
        )
        .unwrap();
        let b = Cochain::from_pairs(
            &f.source,
            0,
            CoefficientRing::Q,
            &[(vec![0], rat(1, 7)), (vec![2], rat(3, 2))],
        )
        .unwrap();
        let c = ConeCochain::new(&f, a, Some(b)).unwrap();
        let by_struct = c.coboundary(&f).to_vector();
        let by_matrix = cone_differential(&f, 1).mul_rat_vec(&c.to_vector());
        assert_eq!(by_struct, by_matrix);
    }

    #[test]
    fn cone_cochain_rejects_mixed_rings() {
        let f = fixtures::pair_point_in_circle();
        let a = Cochain::zero(&f.target, 1, CoefficientRing::Q);
        let b = Cochain::zero(&f.source, 0, CoefficientRing::Z);
        match ConeCochain::new(&f, a, Some(b)) {
            Err(SimplicialError::RingMismatch { left, right }) => {
                assert_eq!(left, "Q");
                assert_eq!(right, "Z");
            }
            other => panic!("expected a ring mismatch, got {other:?}"),
        }
    }

    #[test]
    fn cone_cochain_pairs_with_relative_cycles() {
        // the equator bounds the upper hemisphere inside the sphere
        let f = fixtures::pair_equator_in_sphere();
        let c = crate::simplicial::Chain::from_pairs(&f.target, 2, &[(vec![0, 1, 2], 1)]).unwrap();
        let c_prime = fixtures::polygon_loop(&f.source).neg();
        let rel = RelativeCycle::new(&f, c, c_prime).unwrap();
        let a = Cochain::from_pairs(
            &f.target,
            2,
            CoefficientRing::Q,
            &[(vec![0, 1, 2], rat(1, 4))],
        )
        .unwrap();
        let b = Cochain::from_pairs(&f.source, 1, CoefficientRing::Q, &[(vec![0, 1], rat(1, 3))])
            .unwrap();
        let cc = ConeCochain::new(&f, a, Some(b)).unwrap();
        // pairing = 1/4 on the hemisphere minus 1/3 on the loop edge
        assert_eq!(cc.pair(&rel), rat(1, 4) - rat(1, 3));
    }

    #[test]
    fn sequence_verification_passes_on_all_pairs_and_rings() {
        for (name, f) in fixtures::standard_pairs() {
            for ring in [CoefficientRing::Z, CoefficientRing::Q, CoefficientRing::RZ] {
                let report = verify_les(&f, ring, 0..=3);
                assert!(report.passed, "{name} over {ring}:\n{}", report.render_text());
            }
        }
    }

    #[test]
    fn from_vector_round_trips() {
        let f = fixtures::pair_circle_in_torus();
        let dim = cone_dim(&f, 2);
        let v: Vec<BigRational> = (0..dim)
            .map(|i| BigRational::from_i64(i as i64).unwrap())
            .collect();
        let c = ConeCochain::from_vector(&f, 2, CoefficientRing::Q, &v).unwrap();
        assert_eq!(c.to_vector(), v);
    }
}
