//! Linear solvers over Z, over Q, and mixed.
//!
//! Every solver is exact and total: it either returns a solution or a
//! machine-checkable certificate of unsolvability.

use super::matrix::{dot_rat_int, IntMatrix, IntVec, RatMatrix, RatVector};
use super::smith::smith_normal_form;
use num::{BigInt, BigRational, Integer, One, Zero};
use std::fmt;

// ---------------------------------------------------------------------------
// Integer systems
// ---------------------------------------------------------------------------

/// Why an integer system `A x = b` has no solution.
///
/// With `U A V = D` and `c = U b`, a solution exists iff `d_i | c_i` for
/// every nonzero diagonal entry and `c_i = 0` beyond the rank. The
/// certificate records the first violated condition in Smith coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveCertificate {
    /// `c[index]` is not divisible by the invariant factor `modulus`.
    NonDivisibleCoordinate {
        index: usize,
        value: BigInt,
        modulus: BigInt,
    },
    /// `c[index]` is nonzero although row `index` of `D` is zero.
    NonZeroOnZeroRow { index: usize, value: BigInt },
}

impl fmt::Display for SolveCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveCertificate::NonDivisibleCoordinate {
                index,
                value,
                modulus,
            } => write!(
                f,
                "Smith coordinate {index} is {value}, not divisible by invariant factor {modulus}"
            ),
            SolveCertificate::NonZeroOnZeroRow { index, value } => write!(
                f,
                "Smith coordinate {index} is {value} on a zero row of the diagonal form"
            ),
        }
    }
}

/// Errors of the integer solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    DimensionMismatch { expected: usize, got: usize },
    NoSolution(SolveCertificate),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected} entries, got {got}")
            }
            SolveError::NoSolution(cert) => write!(f, "no integer solution: {cert}"),
        }
    }
}

impl std::error::Error for SolveError {}

/// Solves `A x = b` over the integers.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<IntVec, SolveError> {
    if b.len() != a.rows() {
        return Err(SolveError::DimensionMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    let s = smith_normal_form(a);
    let c = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        if i < s.rank {
            let d = s.d.get(i, i);
            let (q, r) = c[i].div_rem(d);
            if !r.is_zero() {
                return Err(SolveError::NoSolution(
                    SolveCertificate::NonDivisibleCoordinate {
                        index: i,
                        value: c[i].clone(),
                        modulus: d.clone(),
                    },
                ));
            }
            y[i] = q;
        } else if !c[i].is_zero() {
            return Err(SolveError::NoSolution(SolveCertificate::NonZeroOnZeroRow {
                index: i,
                value: c[i].clone(),
            }));
        }
    }
    Ok(s.v.mul_vec(&y))
}

/// A basis (as matrix columns) of the lattice `{x in Z^cols : A x = 0}`.
///
/// The kernel of an integer matrix is saturated, so this basis extends to a
/// basis of the ambient lattice; several equivalence arguments downstream
/// rely on that.
pub fn kernel_lattice(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let n = a.cols();
    let cols: Vec<IntVec> = (s.rank..n).map(|j| s.v.column(j)).collect();
    IntMatrix::from_columns(n, &cols)
}

/// A basis (as matrix columns again, one column per basis vector of the row
/// space's annihilator) of `{k in Z^rows : k^T A = 0}`.
pub fn left_kernel_lattice(a: &IntMatrix) -> IntMatrix {
    kernel_lattice(&a.transpose())
}

// ---------------------------------------------------------------------------
// Rational systems
// ---------------------------------------------------------------------------

/// Row echelon data for a rational matrix: the reduced matrix and, for each
/// pivot, its column.
struct Echelon {
    reduced: RatMatrix,
    pivots: Vec<usize>,
    /// Transform applied to the right-hand side alongside the reduction.
    transform: RatMatrix,
}

fn echelonize(a: &RatMatrix) -> Echelon {
    let mut m = a.clone();
    let rows = m.rows();
    let cols = m.cols();
    let mut transform = RatMatrix::from_fn(rows, rows, |i, j| {
        if i == j {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    });
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        // find a pivot row
        let mut pivot = None;
        for i in r..rows {
            if !m.get(i, c).is_zero() {
                pivot = Some(i);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        // swap into place
        if p != r {
            for j in 0..cols {
                let (x, y) = (m.get(r, j).clone(), m.get(p, j).clone());
                m.set(r, j, y);
                m.set(p, j, x);
            }
            for j in 0..rows {
                let (x, y) = (transform.get(r, j).clone(), transform.get(p, j).clone());
                transform.set(r, j, y);
                transform.set(p, j, x);
            }
        }
        // normalize pivot row
        let inv = m.get(r, c).recip();
        for j in 0..cols {
            let v = m.get(r, j) * &inv;
            m.set(r, j, v);
        }
        for j in 0..rows {
            let v = transform.get(r, j) * &inv;
            transform.set(r, j, v);
        }
        // eliminate the column everywhere else
        for i in 0..rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in 0..cols {
                let v = m.get(i, j) - &factor * m.get(r, j);
                m.set(i, j, v);
            }
            for j in 0..rows {
                let v = transform.get(i, j) - &factor * transform.get(r, j);
                transform.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    Echelon {
        reduced: m,
        pivots,
        transform,
    }
}

/// The rank of a rational matrix.
pub fn rational_rank(a: &RatMatrix) -> usize {
    echelonize(a).pivots.len()
}

/// Solves `A x = w` over the rationals; `None` when the system is
/// inconsistent.
pub fn solve_rational(a: &RatMatrix, w: &[BigRational]) -> Option<RatVector> {
    assert_eq!(w.len(), a.rows(), "dimension mismatch");
    let ech = echelonize(a);
    let rhs = ech.transform.mul_vec(w);
    let rank = ech.pivots.len();
    // consistency: transformed rhs must vanish past the rank
    for i in rank..a.rows() {
        if !rhs[i].is_zero() {
            return None;
        }
    }
    // the echelon form is fully reduced, so with all free variables at zero
    // each pivot variable reads off the transformed right-hand side
    let mut x = vec![BigRational::zero(); a.cols()];
    for (i, &c) in ech.pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Some(x)
}

/// A basis (matrix columns) of the rational kernel of `a`.
pub fn rational_kernel(a: &RatMatrix) -> RatMatrix {
    let ech = echelonize(a);
    let cols = a.cols();
    let pivot_set: Vec<usize> = ech.pivots.clone();
    let mut basis: Vec<RatVector> = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (i, &c) in pivot_set.iter().enumerate() {
            v[c] = -ech.reduced.get(i, free).clone();
        }
        basis.push(v);
    }
    RatMatrix::from_columns(cols, &basis)
}

// ---------------------------------------------------------------------------
// Mixed systems
// ---------------------------------------------------------------------------

/// A solution of the mixed system `A_Q x_Q + A_Z x_Z = w` with `x_Q`
/// rational and `x_Z` integral.
#[derive(Clone, Debug)]
pub struct MixedSolution {
    pub rational: RatVector,
    pub integer: IntVec,
}

/// Why a mixed system has no solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MixedCertificate {
    /// Projecting the system onto a left-kernel vector of `A_Q` yields a
    /// non-integral right-hand side, which no integral `x_Z` can match.
    NonIntegralProjection { row: usize, value: BigRational },
    /// The projected integer system is unsolvable.
    IntegerObstruction(SolveCertificate),
}

impl fmt::Display for MixedCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MixedCertificate::NonIntegralProjection { row, value } => write!(
                f,
                "left-kernel projection {row} of the right-hand side is {value}, not an integer"
            ),
            MixedCertificate::IntegerObstruction(cert) => {
                write!(f, "projected integer system unsolvable: {cert}")
            }
        }
    }
}

/// Solves `A_Q x_Q + A_Z x_Z = w` with `x_Q in Q^*`, `x_Z in Z^*`.
///
/// Method: let `K` have rows spanning the left kernel of `A_Q` (computed on
/// an integer matrix with the same left kernel). A pair `(x_Q, x_Z)` exists
/// iff `K A_Z x_Z = K w` has an integral solution — the rational part can
/// then always be completed. The projected system is handed to the integer
/// solver, so failures carry its certificate.
pub fn solve_mixed(
    aq: &RatMatrix,
    az: &IntMatrix,
    w: &[BigRational],
) -> Result<MixedSolution, MixedCertificate> {
    assert_eq!(aq.rows(), az.rows(), "row count mismatch between the blocks");
    assert_eq!(w.len(), aq.rows(), "dimension mismatch");
    let k = left_kernel_lattice(&aq.clear_denominators_columnwise()).transpose();
    // project the right-hand side
    let mut kw_int: IntVec = Vec::with_capacity(k.rows());
    for i in 0..k.rows() {
        let mut acc = BigRational::zero();
        for j in 0..k.cols() {
            acc += BigRational::from(k.get(i, j).clone()) * &w[j];
        }
        if !acc.is_integer() {
            return Err(MixedCertificate::NonIntegralProjection {
                row: i,
                value: acc,
            });
        }
        kw_int.push(acc.to_integer());
    }
    let kaz = k.mul(az);
    let x_z = solve_integer(&kaz, &kw_int).map_err(|e| match e {
        SolveError::NoSolution(cert) => MixedCertificate::IntegerObstruction(cert),
        SolveError::DimensionMismatch { .. } => unreachable!("shapes are consistent"),
    })?;
    // complete the rational part: A_Q x_Q = w - A_Z x_Z is consistent by
    // construction (its right-hand side is annihilated by the left kernel)
    let az_xz = az.mul_vec(&x_z);
    let residual: RatVector = w
        .iter()
        .zip(az_xz.iter())
        .map(|(a, b)| a - BigRational::from(b.clone()))
        .collect();
    let x_q = solve_rational(aq, &residual)
        .expect("residual lies in the rational column space by construction");
    Ok(MixedSolution {
        rational: x_q,
        integer: x_z,
    })
}

/// Basis data for the homogeneous solutions of a mixed system.
///
/// Solutions of `A_Q x_Q + A_Z x_Z = 0` are exactly: `x_Z` in the lattice
/// spanned by `integer_basis`, together with any rational `x_Q` solving the
/// residual system; adding `rational_basis` columns to `x_Q` stays inside
/// the solution set.
#[derive(Clone, Debug)]
pub struct MixedKernel {
    pub integer_basis: IntMatrix,
    pub rational_basis: RatMatrix,
}

/// Computes the homogeneous solution data of `A_Q x_Q + A_Z x_Z = 0`.
pub fn mixed_kernel(aq: &RatMatrix, az: &IntMatrix) -> MixedKernel {
    assert_eq!(aq.rows(), az.rows(), "row count mismatch between the blocks");
    let k = left_kernel_lattice(&aq.clear_denominators_columnwise()).transpose();
    let kaz = k.mul(az);
    MixedKernel {
        integer_basis: kernel_lattice(&kaz),
        rational_basis: rational_kernel(aq),
    }
}

// ---------------------------------------------------------------------------
// Lattice pairings
// ---------------------------------------------------------------------------

/// Evidence that a rational vector pairs non-integrally with a lattice
/// vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonIntegralPairing {
    /// Index of the offending basis column of the lattice.
    pub column: usize,
    /// The non-integral pairing value.
    pub value: BigRational,
}

impl fmt::Display for NonIntegralPairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pairing with lattice basis column {} is {}, not an integer",
            self.column, self.value
        )
    }
}

/// Checks that `t` pairs integrally with every column of the lattice basis
/// `l`; on failure reports the first offending column and value.
pub fn integral_on_sublattice(t: &[BigRational], l: &IntMatrix) -> Result<(), NonIntegralPairing> {
    assert_eq!(t.len(), l.rows(), "dimension mismatch");
    for j in 0..l.cols() {
        let col = l.column(j);
        let v = dot_rat_int(t, &col);
        if !v.is_integer() {
            return Err(NonIntegralPairing { column: j, value: v });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn integer_solver_finds_exact_solution() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[1, 3]]);
        let b = vec![BigInt::from(4), BigInt::from(11)];
        let x = solve_integer(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn integer_solver_certificate_for_parity_obstruction() {
        // 2x = 3 has no integer solution; the certificate must name the
        // non-divisible Smith coordinate.
        let a = IntMatrix::from_i64(&[&[2]]);
        let b = vec![BigInt::from(3)];
        match solve_integer(&a, &b) {
            Err(SolveError::NoSolution(SolveCertificate::NonDivisibleCoordinate {
                index,
                value,
                modulus,
            })) => {
                assert_eq!(index, 0);
                assert_eq!(value, BigInt::from(3));
                assert_eq!(modulus, BigInt::from(2));
            }
            other => panic!("expected a divisibility certificate, got {other:?}"),
        }
    }

    #[test]
    fn integer_solver_certificate_for_rank_obstruction() {
        // x = (1, 1) forces equal coordinates; b = (1, 2) is inconsistent.
        let a = IntMatrix::from_i64(&[&[1], &[1]]);
        let b = vec![BigInt::from(1), BigInt::from(2)];
        match solve_integer(&a, &b) {
            Err(SolveError::NoSolution(SolveCertificate::NonZeroOnZeroRow { .. })) => {}
            other => panic!("expected a zero-row certificate, got {other:?}"),
        }
    }

    #[test]
    fn integer_solver_dimension_mismatch() {
        let a = IntMatrix::from_i64(&[&[1, 2]]);
        let b = vec![BigInt::from(1), BigInt::from(2)];
        assert!(matches!(
            solve_integer(&a, &b),
            Err(SolveError::DimensionMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn kernel_lattice_spans_kernel() {
        // kernel of (1, 1, 1) in Z^3 has rank 2 and contains (1, -1, 0)
        let a = IntMatrix::from_i64(&[&[1, 1, 1]]);
        let k = kernel_lattice(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        let target = vec![BigInt::from(1), BigInt::from(-1), BigInt::from(0)];
        let coords = solve_integer(&k, &target).unwrap();
        assert_eq!(k.mul_vec(&coords), target);
    }

    #[test]
    fn rational_solver_and_kernel() {
        let a = RatMatrix::from_fn(2, 3, |i, j| rat((i * 3 + j + 1) as i64, 1));
        // a = [[1,2,3],[4,5,6]]: rank 2
        assert_eq!(rational_rank(&a), 2);
        let w = vec![rat(1, 2), rat(1, 1)];
        let x = solve_rational(&a, &w).unwrap();
        assert_eq!(a.mul_vec(&x), w);
        let k = rational_kernel(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn rational_solver_detects_inconsistency() {
        let a = RatMatrix::from_fn(2, 1, |_, _| rat(1, 1));
        let w = vec![rat(0, 1), rat(1, 1)];
        assert!(solve_rational(&a, &w).is_none());
    }

    #[test]
    fn mixed_solver_splits_integral_period_vector() {
        // Find rational s and integer u with  s * 0 + u = t  componentwise
        // impossible unless t is integral — here the A_Q block is a
        // coboundary-style column and the split succeeds.
        //
        // System: x_q * (1, -1)^T + u = (3/2, -1/2)^T. Solution: x_q = 1/2,
        // u = (1, 0).
        let aq = RatMatrix::from_columns(2, &[vec![rat(1, 1), rat(-1, 1)]]);
        let az = IntMatrix::identity(2);
        let w = vec![rat(3, 2), rat(-1, 2)];
        let sol = solve_mixed(&aq, &az, &w).unwrap();
        // verify: aq * x_q + az * x_z = w
        let aqx = aq.mul_vec(&sol.rational);
        for i in 0..2 {
            let v = &aqx[i] + BigRational::from(sol.integer[i].clone());
            assert_eq!(v, w[i]);
        }
    }

    #[test]
    fn mixed_solver_rejects_non_integral_projection() {
        // x_q couples to nothing (A_Q = 0), A_Z = 2I: 2u = 1/2 impossible;
        // the projection of the right-hand side itself is non-integral.
        let aq = RatMatrix::zero(1, 0);
        let az = IntMatrix::from_i64(&[&[2]]);
        let w = vec![rat(1, 2)];
        match solve_mixed(&aq, &az, &w) {
            Err(MixedCertificate::NonIntegralProjection { .. }) => {}
            other => panic!("expected non-integral projection, got {other:?}"),
        }
    }

    #[test]
    fn mixed_solver_reports_integer_obstruction() {
        // A_Q = 0, A_Z = [2]: 2u = 3 integral rhs but no integer solution.
        let aq = RatMatrix::zero(1, 0);
        let az = IntMatrix::from_i64(&[&[2]]);
        let w = vec![rat(3, 1)];
        match solve_mixed(&aq, &az, &w) {
            Err(MixedCertificate::IntegerObstruction(_)) => {}
            other => panic!("expected integer obstruction, got {other:?}"),
        }
    }

    #[test]
    fn mixed_kernel_solutions_verify() {
        // x_q + 2 u = 0: integer basis u = 1 with x_q = -2; rational kernel
        // of the 1x1 block is trivial.
        let aq = RatMatrix::from_columns(1, &[vec![rat(1, 1)]]);
        let az = IntMatrix::from_i64(&[&[2]]);
        let mk = mixed_kernel(&aq, &az);
        assert_eq!(mk.integer_basis.cols(), 1);
        let u = mk.integer_basis.column(0);
        let residual: Vec<BigRational> = az
            .mul_vec(&u)
            .into_iter()
            .map(|v| -BigRational::from(v))
            .collect();
        let xq = solve_rational(&aq, &residual).unwrap();
        let check = &aq.mul_vec(&xq)[0] + BigRational::from(az.mul_vec(&u)[0].clone());
        assert!(check.is_zero());
    }

    #[test]
    fn sublattice_pairing_reports_offender() {
        // t = (1/2, 1/3, 0) against the single lattice vector (1, 1, -1):
        // pairing 5/6, not integral.
        let t = vec![rat(1, 2), rat(1, 3), rat(0, 1)];
        let l = IntMatrix::from_columns(
            3,
            &[vec![BigInt::from(1), BigInt::from(1), BigInt::from(-1)]],
        );
        match integral_on_sublattice(&t, &l) {
            Err(NonIntegralPairing { column, value }) => {
                assert_eq!(column, 0);
                assert_eq!(value, rat(5, 6));
            }
            Ok(()) => panic!("expected a non-integral pairing"),
        }
        // and an integral example passes
        let t2 = vec![rat(1, 2), rat(1, 2), rat(0, 1)];
        assert!(integral_on_sublattice(&t2, &l).is_ok());
    }
}
