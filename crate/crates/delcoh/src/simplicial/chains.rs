//! Chains, cochains and the checked boundary-matrix entry point.

use super::complex::{SimplicialComplex, SimplicialError, Simplex};
use crate::core_algebra::{IntMatrix, IntVec, RatVector};
use num::{BigInt, BigRational, Zero};
use serde::Serialize;
use std::fmt;

/// Coefficient rings understood by the cohomology routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoefficientRing {
    Z,
    Q,
    RZ,
}

impl CoefficientRing {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoefficientRing::Z => "Z",
            CoefficientRing::Q => "Q",
            CoefficientRing::RZ => "R/Z",
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The boundary matrix `∂_n : C_n -> C_{n-1}` of a complex.
///
/// Columns are indexed by the sorted `n`-simplices, rows by the sorted
/// `(n-1)`-simplices; `n = 0` gives the matrix with no rows. Degrees above
/// the dimension of the complex are rejected.
pub fn boundary_matrix(k: &SimplicialComplex, n: usize) -> Result<IntMatrix, SimplicialError> {
    match k.dimension() {
        Some(d) if n <= d => Ok(k.boundary(n)),
        dimension => Err(SimplicialError::DegreeOutOfRange { degree: n, dimension }),
    }
}

/// An integer chain of fixed degree, in the sorted-simplex basis of its
/// complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub coefficients: IntVec,
}

impl Chain {
    /// A chain with explicit coefficients (validated against the complex).
    pub fn new(
        k: &SimplicialComplex,
        degree: usize,
        coefficients: IntVec,
    ) -> Result<Self, SimplicialError> {
        let expected = k.n_simplices(degree);
        if coefficients.len() != expected {
            return Err(SimplicialError::LengthMismatch {
                expected,
                got: coefficients.len(),
            });
        }
        Ok(Chain {
            degree,
            coefficients,
        })
    }

    /// The zero chain of a degree.
    pub fn zero(k: &SimplicialComplex, degree: usize) -> Self {
        Chain {
            degree,
            coefficients: vec![BigInt::zero(); k.n_simplices(degree)],
        }
    }

    /// Builds a chain from (simplex, coefficient) pairs; unlisted simplices
    /// get zero. Unknown simplices are invalid.
    pub fn from_pairs(
        k: &SimplicialComplex,
        degree: usize,
        pairs: &[(Simplex, i64)],
    ) -> Result<Self, SimplicialError> {
        let mut c = Chain::zero(k, degree);
        for (s, v) in pairs {
            if s.len() != degree + 1 {
                return Err(SimplicialError::InvalidSimplex { simplex: s.clone() });
            }
            let i = k
                .index_of(s)
                .ok_or(SimplicialError::InvalidSimplex { simplex: s.clone() })?;
            c.coefficients[i] += BigInt::from(*v);
        }
        Ok(c)
    }

    /// The boundary `∂ c`. The degree drops by one; boundaries of 0-chains
    /// are empty vectors.
    pub fn boundary(&self, k: &SimplicialComplex) -> Chain {
        let m = k.boundary(self.degree);
        Chain {
            degree: self.degree.saturating_sub(1),
            coefficients: m.mul_vec(&self.coefficients),
        }
    }

    /// Whether `∂ c = 0`.
    pub fn is_cycle(&self, k: &SimplicialComplex) -> bool {
        self.boundary(k).coefficients.iter().all(|x| x.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|x| x.is_zero())
    }

    pub fn neg(&self) -> Chain {
        Chain {
            degree: self.degree,
            coefficients: self.coefficients.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        assert_eq!(self.coefficients.len(), other.coefficients.len());
        Chain {
            degree: self.degree,
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// A cochain of fixed degree with values in Q (ring `Q` or `RZ`) or in Z
/// (ring `Z`, in which case every value is integral — enforced at
/// construction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub ring: CoefficientRing,
    pub values: RatVector,
}

impl Cochain {
    /// A rational cochain with explicit values.
    pub fn rational(
        k: &SimplicialComplex,
        degree: usize,
        values: RatVector,
    ) -> Result<Self, SimplicialError> {
        let expected = k.n_simplices(degree);
        if values.len() != expected {
            return Err(SimplicialError::LengthMismatch {
                expected,
                got: values.len(),
            });
        }
        Ok(Cochain {
            degree,
            ring: CoefficientRing::Q,
            values,
        })
    }

    /// An integer cochain with explicit values.
    pub fn integer(
        k: &SimplicialComplex,
        degree: usize,
        values: IntVec,
    ) -> Result<Self, SimplicialError> {
        let expected = k.n_simplices(degree);
        if values.len() != expected {
            return Err(SimplicialError::LengthMismatch {
                expected,
                got: values.len(),
            });
        }
        Ok(Cochain {
            degree,
            ring: CoefficientRing::Z,
            values: values.into_iter().map(BigRational::from).collect(),
        })
    }

    /// The zero cochain of a degree, in either ring.
    pub fn zero(k: &SimplicialComplex, degree: usize, ring: CoefficientRing) -> Self {
        Cochain {
            degree,
            ring,
            values: vec![BigRational::zero(); k.n_simplices(degree)],
        }
    }

    /// Builds a cochain from (simplex, value) pairs; unlisted simplices get
    /// zero.
    pub fn from_pairs(
        k: &SimplicialComplex,
        degree: usize,
        ring: CoefficientRing,
        pairs: &[(Simplex, BigRational)],
    ) -> Result<Self, SimplicialError> {
        let mut values = vec![BigRational::zero(); k.n_simplices(degree)];
        for (s, v) in pairs {
            if s.len() != degree + 1 {
                return Err(SimplicialError::InvalidSimplex { simplex: s.clone() });
            }
            let i = k
                .index_of(s)
                .ok_or(SimplicialError::InvalidSimplex { simplex: s.clone() })?;
            values[i] += v;
        }
        if ring == CoefficientRing::Z {
            if let Some(i) = values.iter().position(|v| !v.is_integer()) {
                return Err(SimplicialError::NonIntegralValue { index: i });
            }
        }
        Ok(Cochain {
            degree,
            ring,
            values,
        })
    }

    /// The coboundary `δ t` (same ring, degree plus one).
    pub fn coboundary(&self, k: &SimplicialComplex) -> Cochain {
        let m = k.coboundary(self.degree);
        Cochain {
            degree: self.degree + 1,
            ring: self.ring,
            values: m.mul_rat_vec(&self.values),
        }
    }

    /// Pairing `⟨t, z⟩` with a chain of the same degree.
    pub fn pair(&self, z: &Chain) -> BigRational {
        assert_eq!(self.degree, z.degree, "degree mismatch");
        assert_eq!(self.values.len(), z.coefficients.len(), "length mismatch");
        let mut acc = BigRational::zero();
        for (t, c) in self.values.iter().zip(&z.coefficients) {
            acc += t * BigRational::from(c.clone());
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|x| x.is_zero())
    }

    /// Whether every value is an integer (regardless of the ring tag).
    pub fn is_integer_valued(&self) -> bool {
        self.values.iter().all(|x| x.is_integer())
    }

    /// The values as integers; `None` if any value is non-integral.
    pub fn as_integer_vec(&self) -> Option<IntVec> {
        if !self.is_integer_valued() {
            return None;
        }
        Some(self.values.iter().map(|x| x.to_integer()).collect())
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            degree: self.degree,
            ring: self.ring,
            values: self.values.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        assert_eq!(self.values.len(), other.values.len(), "length mismatch");
        Cochain {
            degree: self.degree,
            ring: combined_ring(self.ring, other.ring),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.neg())
    }
}

/// Ring of a sum: integer only when both summands are integer cochains.
fn combined_ring(a: CoefficientRing, b: CoefficientRing) -> CoefficientRing {
    if a == CoefficientRing::Z && b == CoefficientRing::Z {
        CoefficientRing::Z
    } else {
        CoefficientRing::Q
    }
}
