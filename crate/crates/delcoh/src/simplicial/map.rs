//! Simplicial maps, cochain pullback and chain pushforward.

use super::chains::Cochain;
use super::complex::{SimplicialComplex, SimplicialError, Simplex, Vertex};
use crate::core_algebra::IntMatrix;
use num::BigInt;
use std::collections::BTreeMap;

/// A simplicial map, given on vertices and validated to carry simplices to
/// simplices.
///
/// Throughout the crate the map of a pair points from the subspace-like side
/// into the ambient side: `f : Y -> X` has `source = Y`, `target = X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub vertex_map: BTreeMap<Vertex, Vertex>,
}

impl SimplicialMap {
    /// Validates that `vertex_map` is defined exactly on the source vertices
    /// and that the image of every source simplex spans a target simplex
    /// (repeated image vertices are allowed: such simplices collapse).
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: BTreeMap<Vertex, Vertex>,
    ) -> Result<Self, SimplicialError> {
        for v in source.vertices() {
            if !vertex_map.contains_key(&v) {
                return Err(SimplicialError::MissingVertexImage { vertex: v });
            }
        }
        for v in vertex_map.keys() {
            if !source.contains(&[*v]) {
                return Err(SimplicialError::ExtraVertexImage { vertex: *v });
            }
        }
        let f = SimplicialMap {
            source,
            target,
            vertex_map,
        };
        for d in 0..=f.source.dimension().map_or(0, |d| d) {
            for s in f.source.simplices(d) {
                let mut image: Vec<Vertex> = s.iter().map(|v| f.vertex_map[v]).collect();
                image.sort_unstable();
                image.dedup();
                if !f.target.contains(&image) && !image.is_empty() {
                    return Err(SimplicialError::MapNotSimplicial { simplex: s.clone() });
                }
            }
        }
        Ok(f)
    }

    /// The identity map of a complex.
    pub fn identity(k: &SimplicialComplex) -> Self {
        let vertex_map = k.vertices().into_iter().map(|v| (v, v)).collect();
        SimplicialMap {
            source: k.clone(),
            target: k.clone(),
            vertex_map,
        }
    }

    /// The unique map from the empty complex.
    pub fn from_empty(target: &SimplicialComplex) -> Self {
        SimplicialMap {
            source: SimplicialComplex::empty(),
            target: target.clone(),
            vertex_map: BTreeMap::new(),
        }
    }

    /// Image of an oriented simplex: the sorted image simplex and the sign
    /// of the sorting permutation, or `None` when vertices collide (the
    /// simplex collapses).
    pub fn image_of(&self, s: &[Vertex]) -> Option<(Simplex, i8)> {
        let image: Vec<Vertex> = s.iter().map(|v| self.vertex_map[v]).collect();
        // sort by selection, counting transpositions
        let mut sorted = image.clone();
        let mut sign = 1i8;
        for i in 0..sorted.len() {
            let mut min = i;
            for j in (i + 1)..sorted.len() {
                if sorted[j] < sorted[min] {
                    min = j;
                }
            }
            if min != i {
                sorted.swap(i, min);
                sign = -sign;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sorted, sign))
    }
}

/// The pullback matrix `f^# : C^n(target) -> C^n(source)`.
///
/// Rows are indexed by source `n`-simplices, columns by target
/// `n`-simplices. A source simplex whose image collapses contributes a zero
/// row; otherwise the row has a single ±1 at the image simplex, the sign
/// being that of the vertex-sorting permutation.
pub fn induced_cochain_map(f: &SimplicialMap, n: usize) -> IntMatrix {
    let rows = f.source.n_simplices(n);
    let cols = f.target.n_simplices(n);
    let mut m = IntMatrix::zero(rows, cols);
    for (i, s) in f.source.simplices(n).iter().enumerate() {
        if let Some((image, sign)) = f.image_of(s) {
            if image.len() == n + 1 {
                let j = f
                    .target
                    .index_of(&image)
                    .expect("validated map: image is a target simplex");
                m.set(i, j, BigInt::from(sign));
            }
        }
    }
    m
}

/// The pushforward matrix `f_* : C_n(source) -> C_n(target)`, the transpose
/// of the pullback.
pub fn chain_pushforward(f: &SimplicialMap, n: usize) -> IntMatrix {
    induced_cochain_map(f, n).transpose()
}

/// Pulls a cochain on the target back along the map, keeping degree and
/// ring.
pub fn pullback_cochain(f: &SimplicialMap, c: &Cochain) -> Cochain {
    Cochain {
        degree: c.degree,
        ring: c.ring,
        values: induced_cochain_map(f, c.degree).mul_rat_vec(&c.values),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::chains::Chain;

    fn circle3() -> SimplicialComplex {
        SimplicialComplex::new(vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn circle6() -> SimplicialComplex {
        SimplicialComplex::new(vec![
            vec![0, 1],
            vec![1, 2],
            vec![2, 3],
            vec![3, 4],
            vec![4, 5],
            vec![0, 5],
        ])
        .unwrap()
    }

    /// The double cover of the triangle circle by the hexagon circle:
    /// 0..5 -> 0, 1, 2, 0, 1, 2.
    fn doubling() -> SimplicialMap {
        let vm: BTreeMap<usize, usize> = (0..6).map(|v| (v, v % 3)).collect();
        SimplicialMap::new(circle6(), circle3(), vm).unwrap()
    }

    #[test]
    fn rejects_non_simplicial_vertex_maps() {
        // 0 -> 0, 1 -> 2 on one edge [01], target only has edge [01]
        let src = SimplicialComplex::new(vec![vec![0, 1]]).unwrap();
        let tgt = SimplicialComplex::new(vec![vec![0, 1], vec![2]]).unwrap();
        let vm: BTreeMap<usize, usize> = [(0, 0), (1, 2)].into_iter().collect();
        let e = SimplicialMap::new(src, tgt, vm).unwrap_err();
        assert_eq!(e, SimplicialError::MapNotSimplicial { simplex: vec![0, 1] });
    }

    #[test]
    fn rejects_incomplete_vertex_maps() {
        let src = SimplicialComplex::new(vec![vec![0, 1]]).unwrap();
        let tgt = SimplicialComplex::new(vec![vec![0, 1]]).unwrap();
        let vm: BTreeMap<usize, usize> = [(0, 0)].into_iter().collect();
        let e = SimplicialMap::new(src, tgt, vm).unwrap_err();
        assert_eq!(e, SimplicialError::MissingVertexImage { vertex: 1 });
    }

    #[test]
    fn orientation_sign_of_a_flipped_edge() {
        // hexagon edge [0,5] maps to vertices (0, 2): sorted already? 0 < 2,
        // no flip. Edge [3,4] maps to (0,1): no flip either. A flip occurs
        // for [2,3] -> (2,0): sorted (0,2) with one transposition.
        let f = doubling();
        let (img, sign) = f.image_of(&[2, 3]).unwrap();
        assert_eq!(img, vec![0, 2]);
        assert_eq!(sign, -1);
    }

    #[test]
    fn doubling_pushes_the_hexagon_loop_to_twice_the_triangle_loop() {
        let f = doubling();
        let z6 = Chain::from_pairs(
            &f.source,
            1,
            &[
                (vec![0, 1], 1),
                (vec![1, 2], 1),
                (vec![2, 3], 1),
                (vec![3, 4], 1),
                (vec![4, 5], 1),
                (vec![0, 5], -1),
            ],
        )
        .unwrap();
        assert!(z6.is_cycle(&f.source));
        let push = chain_pushforward(&f, 1).mul_vec(&z6.coefficients);
        let z3 = Chain::from_pairs(&f.target, 1, &[(vec![0, 1], 1), (vec![1, 2], 1), (vec![0, 2], -1)])
            .unwrap();
        let twice: Vec<BigInt> = z3.coefficients.iter().map(|x| x * BigInt::from(2)).collect();
        assert_eq!(push, twice);
    }

    #[test]
    fn collapsing_edges_pull_back_to_zero() {
        // interval [0,1] mapping both endpoints to one vertex of the circle
        let src = SimplicialComplex::new(vec![vec![0, 1]]).unwrap();
        let tgt = circle3();
        let vm: BTreeMap<usize, usize> = [(0, 0), (1, 0)].into_iter().collect();
        let f = SimplicialMap::new(src, tgt, vm).unwrap();
        let m = induced_cochain_map(&f, 1);
        assert!(m.is_zero());
    }
}
