//! Simplicial complexes and their validation errors.

use std::collections::BTreeMap;
use std::fmt;

/// Vertices are nonnegative integers.
pub type Vertex = usize;

/// A simplex is a strictly increasing vertex tuple.
pub type Simplex = Vec<Vertex>;

/// Errors raised by the simplicial layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicialError {
    /// A vertex tuple is empty or not strictly increasing.
    InvalidSimplex { simplex: Vec<Vertex> },
    /// A degree outside `0 ..= dim` was requested.
    DegreeOutOfRange {
        degree: usize,
        dimension: Option<usize>,
    },
    /// A simplicial map is missing the image of a source vertex.
    MissingVertexImage { vertex: Vertex },
    /// A simplicial map lists an image for a vertex that is not in the
    /// source complex.
    ExtraVertexImage { vertex: Vertex },
    /// The vertex images of a source simplex do not span a simplex of the
    /// target complex.
    MapNotSimplicial { simplex: Simplex },
    /// A codimension-one face meets more than two top simplices (or a
    /// simplex is not a face of any top simplex), so there is no manifold
    /// structure to orient.
    NonManifold { face: Simplex },
    /// The requested (or any) top-simplex signs fail to cancel on an
    /// interior face.
    IncoherentOrientation { face: Simplex },
    /// An orientation vector has the wrong length or an entry other than ±1.
    InvalidOrientation { reason: String },
    /// A coefficient vector has the wrong length for its degree.
    LengthMismatch { expected: usize, got: usize },
    /// An integer cochain was given a non-integral value.
    NonIntegralValue { index: usize },
    /// The boundary pieces handed to the fundamental-class pushforward do
    /// not factor through the pair map.
    FactorizationFailure { vertex: Vertex },
    /// A face of the fundamental chain's boundary is missing from the
    /// boundary complex.
    BoundaryNotCovered { face: Simplex },
    /// A claimed relative cycle fails one of its two closure conditions.
    NotARelativeCycle { condition: String },
    /// Two pieces of data carry different coefficient rings.
    RingMismatch { left: &'static str, right: &'static str },
}

impl fmt::Display for SimplicialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplicialError::InvalidSimplex { simplex } => {
                write!(f, "invalid simplex {simplex:?}: vertices must be strictly increasing")
            }
            SimplicialError::DegreeOutOfRange { degree, dimension } => match dimension {
                Some(d) => write!(f, "degree {degree} out of range for a {d}-dimensional complex"),
                None => write!(f, "degree {degree} out of range for the empty complex"),
            },
            SimplicialError::MissingVertexImage { vertex } => {
                write!(f, "no image listed for source vertex {vertex}")
            }
            SimplicialError::ExtraVertexImage { vertex } => {
                write!(f, "image listed for {vertex}, which is not a source vertex")
            }
            SimplicialError::MapNotSimplicial { simplex } => {
                write!(f, "images of {simplex:?} do not span a simplex of the target")
            }
            SimplicialError::NonManifold { face } => {
                write!(f, "face {face:?} violates the two-top-simplices-per-interior-face rule")
            }
            SimplicialError::IncoherentOrientation { face } => {
                write!(f, "orientations fail to cancel on interior face {face:?}")
            }
            SimplicialError::InvalidOrientation { reason } => {
                write!(f, "invalid orientation data: {reason}")
            }
            SimplicialError::LengthMismatch { expected, got } => {
                write!(f, "coefficient vector has length {got}, expected {expected}")
            }
            SimplicialError::NonIntegralValue { index } => {
                write!(f, "integer cochain has a non-integral value at index {index}")
            }
            SimplicialError::FactorizationFailure { vertex } => {
                write!(f, "boundary map does not factor through the pair at vertex {vertex}")
            }
            SimplicialError::BoundaryNotCovered { face } => {
                write!(f, "boundary face {face:?} is not part of the boundary complex")
            }
            SimplicialError::NotARelativeCycle { condition } => {
                write!(f, "not a relative cycle: {condition}")
            }
            SimplicialError::RingMismatch { left, right } => {
                write!(f, "coefficient ring mismatch: {left} vs {right}")
            }
        }
    }
}

impl std::error::Error for SimplicialError {}

/// A finite simplicial complex.
///
/// Stored as one lexicographically sorted simplex list per dimension,
/// closed under taking faces. The constructor closes its input, so the
/// closure invariant holds for every value of this type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Simplex>>,
    index: BTreeMap<Simplex, usize>,
}

impl SimplicialComplex {
    /// Builds a complex from generating simplices (faces are added
    /// automatically). Vertex tuples must be strictly increasing.
    pub fn new<I>(generators: I) -> Result<Self, SimplicialError>
    where
        I: IntoIterator<Item = Vec<Vertex>>,
    {
        let mut seen: BTreeMap<Simplex, ()> = BTreeMap::new();
        for s in generators {
            if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(SimplicialError::InvalidSimplex { simplex: s });
            }
            // insert every nonempty sub-tuple (faces of all codimensions)
            let n = s.len();
            for mask in 1u32..(1 << n) {
                let face: Simplex = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                seen.insert(face, ());
            }
        }
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for s in seen.keys() {
            let d = s.len() - 1;
            while by_dim.len() <= d {
                by_dim.push(Vec::new());
            }
            by_dim[d].push(s.clone());
        }
        for list in &mut by_dim {
            list.sort();
        }
        let mut index = BTreeMap::new();
        for list in &by_dim {
            for (i, s) in list.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        Ok(SimplicialComplex { by_dim, index })
    }

    /// The empty complex.
    pub fn empty() -> Self {
        SimplicialComplex {
            by_dim: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// Number of `n`-simplices (zero outside the range).
    pub fn n_simplices(&self, n: usize) -> usize {
        self.by_dim.get(n).map_or(0, |v| v.len())
    }

    /// The sorted list of `n`-simplices (empty outside the range).
    pub fn simplices(&self, n: usize) -> &[Simplex] {
        self.by_dim.get(n).map_or(&[], |v| v.as_slice())
    }

    /// Index of a simplex within its dimension's sorted list.
    pub fn index_of(&self, s: &[Vertex]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &[Vertex]) -> bool {
        self.index.contains_key(s)
    }

    /// All vertices, ascending.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.simplices(0).iter().map(|s| s[0]).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Euler characteristic (0 for the empty complex).
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi: i64 = 0;
        for (d, list) in self.by_dim.iter().enumerate() {
            let signed = list.len() as i64;
            chi += if d % 2 == 0 { signed } else { -signed };
        }
        chi
    }

    /// The boundary matrix `∂_n : C_n -> C_{n-1}` as a total function:
    /// out-of-range degrees give matrices with zero rows and/or columns.
    /// The checked public entry point is [`super::boundary_matrix`].
    pub(crate) fn boundary(&self, n: usize) -> crate::core_algebra::IntMatrix {
        use crate::core_algebra::IntMatrix;
        use num::BigInt;
        let rows = if n == 0 { 0 } else { self.n_simplices(n - 1) };
        let cols = self.n_simplices(n);
        let mut m = IntMatrix::zero(rows, cols);
        if n == 0 {
            return m;
        }
        for (j, s) in self.simplices(n).iter().enumerate() {
            for drop in 0..s.len() {
                let face: Simplex = s
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != drop)
                    .map(|(_, v)| *v)
                    .collect();
                let i = self
                    .index_of(&face)
                    .expect("closure invariant: every face is present");
                let sign = if drop % 2 == 0 { 1 } else { -1 };
                m.set(i, j, BigInt::from(sign));
            }
        }
        m
    }

    /// The coboundary matrix `δ_n : C^n -> C^{n+1}` (transpose of
    /// `∂_{n+1}`), total like [`Self::boundary`].
    pub(crate) fn coboundary(&self, n: usize) -> crate::core_algebra::IntMatrix {
        self.boundary(n + 1).transpose()
    }
}
