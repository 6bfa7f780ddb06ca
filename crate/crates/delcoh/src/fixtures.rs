//! Built-in complexes, pair maps and cycles shared by the test suites and
//! the command-line examples.
//!
//! Everything here is small enough to rebuild on each call; constructors
//! return owned values.

use crate::simplicial::{Chain, SimplicialComplex, SimplicialMap};

fn build(faces: Vec<Vec<usize>>) -> SimplicialComplex {
    let sorted: Vec<Vec<usize>> = faces
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s
        })
        .collect();
    SimplicialComplex::new(sorted).expect("fixture complex is valid")
}

/// A circle modelled on `n` vertices `0 ..< n` joined in a cycle.
pub fn cyclic_polygon(n: usize) -> SimplicialComplex {
    assert!(n >= 3, "a polygon needs at least three vertices");
    let mut edges: Vec<Vec<usize>> = (0..n - 1).map(|i| vec![i, i + 1]).collect();
    edges.push(vec![0, n - 1]);
    build(edges)
}

/// The three-vertex circle.
pub fn circle_triangle() -> SimplicialComplex {
    cyclic_polygon(3)
}

/// The six-vertex circle.
pub fn circle_hexagon() -> SimplicialComplex {
    cyclic_polygon(6)
}

/// The seven-vertex circle (matching the vertex set of [`torus_seven`]).
pub fn circle_heptagon() -> SimplicialComplex {
    cyclic_polygon(7)
}

/// An interval subdivided into `n - 1` edges on vertices `0 ..< n`.
pub fn path_graph(n: usize) -> SimplicialComplex {
    assert!(n >= 2);
    build((0..n - 1).map(|i| vec![i, i + 1]).collect())
}

/// The two-sphere as the boundary of a solid tetrahedron.
pub fn sphere_tetra() -> SimplicialComplex {
    build(vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
}

/// The seven-vertex torus: faces `{i, i+1, i+3}` and `{i, i+2, i+3}`
/// modulo 7. Its edge set is the complete graph on seven vertices.
pub fn torus_seven() -> SimplicialComplex {
    let mut faces = Vec::new();
    for i in 0..7usize {
        faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        faces.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    build(faces)
}

/// A five-triangle Möbius band on vertices `0 ..< 5`.
pub fn moebius_band() -> SimplicialComplex {
    build(vec![
        vec![0, 1, 2],
        vec![1, 2, 3],
        vec![2, 3, 4],
        vec![0, 3, 4],
        vec![0, 1, 4],
    ])
}

/// The rim circle of [`moebius_band`]: the pentagon 0-2-4-1-3-0.
pub fn moebius_rim() -> SimplicialComplex {
    build(vec![vec![0, 2], vec![2, 4], vec![1, 4], vec![1, 3], vec![0, 3]])
}

/// The loop once around a cyclic polygon, oriented with ascending edges.
pub fn polygon_loop(k: &SimplicialComplex) -> Chain {
    let n = k.n_simplices(0);
    let mut pairs: Vec<(Vec<usize>, i64)> = (0..n - 1).map(|i| (vec![i, i + 1], 1)).collect();
    pairs.push((vec![0, n - 1], -1));
    Chain::from_pairs(k, 1, &pairs).expect("polygon loop is valid")
}

// --- pair maps f : Y -> X -------------------------------------------------

/// A point included at the basepoint of the three-vertex circle.
pub fn pair_point_in_circle() -> SimplicialMap {
    let y = build(vec![vec![0]]);
    SimplicialMap::new(y, circle_triangle(), [(0, 0)].into()).expect("valid pair")
}

/// The equatorial circle `{0, 1, 2}` inside the tetrahedral sphere.
pub fn pair_equator_in_sphere() -> SimplicialMap {
    SimplicialMap::new(
        circle_triangle(),
        sphere_tetra(),
        (0..3).map(|v| (v, v)).collect(),
    )
    .expect("valid pair")
}

/// The hexagon wrapped twice around the triangle, `v -> v mod 3`.
pub fn pair_doubling_circle() -> SimplicialMap {
    SimplicialMap::new(
        circle_hexagon(),
        circle_triangle(),
        (0..6).map(|v| (v, v % 3)).collect(),
    )
    .expect("valid pair")
}

/// The heptagon included along the vertex cycle of the seven-vertex torus.
pub fn pair_circle_in_torus() -> SimplicialMap {
    SimplicialMap::new(
        circle_heptagon(),
        torus_seven(),
        (0..7).map(|v| (v, v)).collect(),
    )
    .expect("valid pair")
}

/// The identity on the tetrahedral sphere.
pub fn pair_identity_sphere() -> SimplicialMap {
    SimplicialMap::identity(&sphere_tetra())
}

/// The empty complex mapped into the tetrahedral sphere.
pub fn pair_empty_into_sphere() -> SimplicialMap {
    SimplicialMap::from_empty(&sphere_tetra())
}

/// The rim circle included into the Möbius band.
pub fn pair_moebius_rim() -> SimplicialMap {
    SimplicialMap::new(
        moebius_rim(),
        moebius_band(),
        (0..5).map(|v| (v, v)).collect(),
    )
    .expect("valid pair")
}

/// All built-in pairs with short names, for bulk verification runs.
pub fn standard_pairs() -> Vec<(&'static str, SimplicialMap)> {
    vec![
        ("point-in-circle", pair_point_in_circle()),
        ("equator-in-sphere", pair_equator_in_sphere()),
        ("double-cover-circle", pair_doubling_circle()),
        ("circle-in-torus", pair_circle_in_torus()),
        ("identity-sphere", pair_identity_sphere()),
        ("empty-into-sphere", pair_empty_into_sphere()),
        ("moebius-rim", pair_moebius_rim()),
    ]
}
