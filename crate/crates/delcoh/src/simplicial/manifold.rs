//! Fundamental classes of oriented pseudomanifold models, relative cycles
//! of a pair, and pushforwards of fundamental classes into a pair.

use super::chains::Chain;
use super::complex::{Simplex, SimplicialComplex, SimplicialError};
use super::map::{chain_pushforward, SimplicialMap};
use num::{BigInt, Zero};
use std::collections::BTreeMap;

/// Per codimension-one face: the top simplices it bounds, with the sign of
/// the face inside each top simplex's boundary.
type Incidence = BTreeMap<Simplex, Vec<(usize, i8)>>;

/// Checks that every simplex is a face of a top-dimensional one and that
/// no codimension-one face has more than two top cofaces, and returns the
/// face-to-coface incidence table.
fn pseudomanifold_incidence(k: &SimplicialComplex) -> Result<Incidence, SimplicialError> {
    let d = match k.dimension() {
        Some(d) => d,
        None => return Ok(Incidence::new()),
    };
    // purity: each simplex below the top degree must have a coface one
    // degree up, so by induction everything sits under a top simplex
    for m in 0..d {
        let mut covered = vec![false; k.n_simplices(m)];
        for s in k.simplices(m + 1) {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                covered[k.index_of(&face).expect("closed complex")] = true;
            }
        }
        for (j, s) in k.simplices(m).iter().enumerate() {
            if !covered[j] {
                return Err(SimplicialError::NonManifold { face: s.clone() });
            }
        }
    }
    let mut incidence = Incidence::new();
    if d > 0 {
        for (t, s) in k.simplices(d).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                incidence.entry(face).or_insert_with(Vec::new).push((t, sign));
            }
        }
        for (face, cofaces) in &incidence {
            if cofaces.len() > 2 {
                return Err(SimplicialError::NonManifold { face: face.clone() });
            }
        }
    }
    Ok(incidence)
}

/// The top-degree chain with the given ±1 signs, after checking that it is
/// a cycle away from its boundary faces: on every face shared by two top
/// simplices the signed contributions must cancel.
pub fn fundamental_class(
    k: &SimplicialComplex,
    orientation: &[i8],
) -> Result<Chain, SimplicialError> {
    let d = k.dimension().ok_or_else(|| SimplicialError::InvalidOrientation {
        reason: "the empty complex has no top simplices".to_string(),
    })?;
    let tops = k.n_simplices(d);
    if orientation.len() != tops {
        return Err(SimplicialError::LengthMismatch {
            expected: tops,
            got: orientation.len(),
        });
    }
    if let Some(bad) = orientation.iter().find(|s| s.abs() != 1) {
        return Err(SimplicialError::InvalidOrientation {
            reason: format!("orientation entries must be ±1, found {bad}"),
        });
    }
    let incidence = pseudomanifold_incidence(k)?;
    for (face, cofaces) in &incidence {
        if let [(t1, e1), (t2, e2)] = cofaces[..] {
            if orientation[t1] as i32 * e1 as i32 + orientation[t2] as i32 * e2 as i32 != 0 {
                return Err(SimplicialError::IncoherentOrientation { face: face.clone() });
            }
        }
    }
    Ok(Chain {
        degree: d,
        coefficients: orientation.iter().map(|&s| BigInt::from(s)).collect(),
    })
}

/// Searches for top-simplex signs under which the top chain becomes a
/// cycle away from boundary faces. Signs propagate across each interior
/// face (one shared by exactly two top simplices); a contradiction on some
/// face reports that face.
pub fn coherent_orientation(k: &SimplicialComplex) -> Result<Vec<i8>, SimplicialError> {
    let d = match k.dimension() {
        Some(d) => d,
        None => return Ok(Vec::new()),
    };
    let tops = k.n_simplices(d);
    let incidence = pseudomanifold_incidence(k)?;
    // adjacency in the dual graph: neighbor and the sign relation forced
    // by cancellation on the shared face
    let mut adjacent: Vec<Vec<(usize, i8, &Simplex)>> = vec![Vec::new(); tops];
    for (face, cofaces) in &incidence {
        if let [(t1, e1), (t2, e2)] = cofaces[..] {
            let relation = -e1 * e2;
            adjacent[t1].push((t2, relation, face));
            adjacent[t2].push((t1, relation, face));
        }
    }
    let mut signs: Vec<Option<i8>> = vec![None; tops];
    for start in 0..tops {
        if signs[start].is_some() {
            continue;
        }
        signs[start] = Some(1);
        let mut queue = vec![start];
        while let Some(t) = queue.pop() {
            let st = signs[t].expect("assigned before queueing");
            for &(u, relation, face) in &adjacent[t] {
                let required = st * relation;
                match signs[u] {
                    None => {
                        signs[u] = Some(required);
                        queue.push(u);
                    }
                    Some(have) if have != required => {
                        return Err(SimplicialError::IncoherentOrientation {
                            face: face.clone(),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(signs.into_iter().map(|s| s.expect("all tops visited")).collect())
}

/// A cycle of the mapping pair of `f : Y -> X`: a chain `C` on the target
/// together with a closed chain `C'` one degree down on the source, with
/// `∂C + f_* C' = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCycle {
    pub degree: usize,
    pub c: Chain,
    pub c_prime: Chain,
}

impl RelativeCycle {
    /// Validates both closure conditions against the complexes of `f`.
    /// In degree zero `c_prime` must be the zero chain in degree zero.
    pub fn new(f: &SimplicialMap, c: Chain, c_prime: Chain) -> Result<Self, SimplicialError> {
        let degree = c.degree;
        let expected_prime_degree = degree.saturating_sub(1);
        if c_prime.degree != expected_prime_degree {
            return Err(SimplicialError::DegreeOutOfRange {
                degree: c_prime.degree,
                dimension: f.source.dimension(),
            });
        }
        check_length(&f.target, &c)?;
        check_length(&f.source, &c_prime)?;
        if degree == 0 && !c_prime.is_zero() {
            return Err(SimplicialError::NotARelativeCycle {
                condition: "a degree-zero cycle admits no source part".to_string(),
            });
        }
        if !c_prime.is_cycle(&f.source) {
            return Err(SimplicialError::NotARelativeCycle {
                condition: "∂C' = 0".to_string(),
            });
        }
        let mut total = c.boundary(&f.target).coefficients;
        if degree > 0 {
            let pushed = chain_pushforward(f, degree - 1).mul_vec(&c_prime.coefficients);
            for (a, b) in total.iter_mut().zip(pushed) {
                *a += b;
            }
        }
        if !total.iter().all(|x| x.is_zero()) {
            return Err(SimplicialError::NotARelativeCycle {
                condition: "∂C + f_*C' = 0".to_string(),
            });
        }
        Ok(RelativeCycle { degree, c, c_prime })
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.c_prime.is_zero()
    }

    /// The boundary `(∂D + f_*D', -∂D')` of a pair chain
    /// `(D, D')` with `D` of degree `n+1` on the target and `D'` of degree
    /// `n` on the source — always a valid degree-`n` relative cycle.
    pub fn boundary_of(
        f: &SimplicialMap,
        d: &Chain,
        d_prime: &Chain,
    ) -> Result<Self, SimplicialError> {
        if d.degree == 0 || d_prime.degree != d.degree - 1 {
            return Err(SimplicialError::DegreeOutOfRange {
                degree: d_prime.degree,
                dimension: f.source.dimension(),
            });
        }
        check_length(&f.target, d)?;
        check_length(&f.source, d_prime)?;
        let degree = d.degree - 1;
        let pushed = Chain::new(
            &f.target,
            degree,
            chain_pushforward(f, degree).mul_vec(&d_prime.coefficients),
        )?;
        let c = d.boundary(&f.target).add(&pushed);
        let c_prime = if degree == 0 {
            Chain::zero(&f.source, 0)
        } else {
            d_prime.boundary(&f.source).neg()
        };
        RelativeCycle::new(f, c, c_prime)
    }
}

fn check_length(k: &SimplicialComplex, c: &Chain) -> Result<(), SimplicialError> {
    let expected = k.n_simplices(c.degree);
    if c.coefficients.len() != expected {
        return Err(SimplicialError::LengthMismatch {
            expected,
            got: c.coefficients.len(),
        });
    }
    Ok(())
}

/// Pushes the fundamental class of an oriented model `M` into the pair of
/// `f : Y -> X`.
///
/// The data are `g : M -> X`, the restriction `g' : ∂M -> Y` on a complex
/// carrying the boundary of `M`, and top-simplex signs for `M`. The
/// routine checks that `g` and `f ∘ g'` agree vertexwise on `∂M` and that
/// every face where the fundamental chain has boundary lies in `∂M`, then
/// returns the relative cycle `(g_*[M], -g'_*[∂M])`.
pub fn pushforward_fundamental(
    f: &SimplicialMap,
    g: &SimplicialMap,
    g_boundary: &SimplicialMap,
    orientation: &[i8],
) -> Result<RelativeCycle, SimplicialError> {
    let m = &g.source;
    let boundary_model = &g_boundary.source;
    let z = fundamental_class(m, orientation)?;
    let b = z.boundary(m);
    // each face receiving boundary mass must be carried by the boundary model
    if z.degree > 0 {
        for (j, s) in m.simplices(z.degree - 1).iter().enumerate() {
            if !b.coefficients[j].is_zero() && !boundary_model.contains(s) {
                return Err(SimplicialError::BoundaryNotCovered { face: s.clone() });
            }
        }
    }
    // g restricted to the boundary model must factor through f vertexwise
    for v in boundary_model.vertices() {
        let into_m = g.vertex_map.get(&v).copied();
        let through_y = g_boundary
            .vertex_map
            .get(&v)
            .and_then(|y| f.vertex_map.get(y))
            .copied();
        match (into_m, through_y) {
            (Some(a), Some(b)) if a == b => {}
            _ => return Err(SimplicialError::FactorizationFailure { vertex: v }),
        }
    }
    let c = Chain {
        degree: z.degree,
        coefficients: chain_pushforward(g, z.degree).mul_vec(&z.coefficients),
    };
    let c_prime = if z.degree == 0 {
        Chain::zero(&f.source, 0)
    } else {
        let deg = z.degree - 1;
        // re-coordinatize the boundary chain on the boundary model
        let w: Vec<BigInt> = boundary_model
            .simplices(deg)
            .iter()
            .map(|s| match m.index_of(s) {
                Some(j) => b.coefficients[j].clone(),
                None => BigInt::zero(),
            })
            .collect();
        Chain {
            degree: deg,
            coefficients: chain_pushforward(g_boundary, deg).mul_vec(&w),
        }
        .neg()
    };
    RelativeCycle::new(f, c, c_prime)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_circle() -> SimplicialComplex {
        SimplicialComplex::new(vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn tetra_boundary() -> SimplicialComplex {
        SimplicialComplex::new(vec![
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ])
        .unwrap()
    }

    fn moebius() -> SimplicialComplex {
        SimplicialComplex::new(vec![
            vec![0, 1, 2],
            vec![1, 2, 3],
            vec![2, 3, 4],
            vec![0, 3, 4],
            vec![0, 1, 4],
        ])
        .unwrap()
    }

    #[test]
    fn tetra_boundary_is_orientable_with_a_closed_fundamental_class() {
        let k = tetra_boundary();
        let signs = coherent_orientation(&k).unwrap();
        let z = fundamental_class(&k, &signs).unwrap();
        assert!(z.is_cycle(&k));
        // alternating signs in lexicographic face order
        assert_eq!(signs, vec![1, -1, 1, -1]);
    }

    #[test]
    fn moebius_strip_has_no_coherent_orientation() {
        let k = moebius();
        match coherent_orientation(&k) {
            Err(SimplicialError::IncoherentOrientation { .. }) => {}
            other => panic!("expected an orientation conflict, got {other:?}"),
        }
    }

    #[test]
    fn circle_fundamental_class_is_the_standard_loop() {
        let k = triangle_circle();
        let signs = coherent_orientation(&k).unwrap();
        let z = fundamental_class(&k, &signs).unwrap();
        assert!(z.is_cycle(&k));
        // edges in order [01], [02], [12]; the loop is [01] - [02] + [12]
        // up to a global sign
        let s: Vec<i64> = vec![1, -1, 1];
        let matches_loop = z
            .coefficients
            .iter()
            .zip(&s)
            .all(|(a, b)| a == &BigInt::from(*b))
            || z.coefficients
                .iter()
                .zip(&s)
                .all(|(a, b)| a == &BigInt::from(-*b));
        assert!(matches_loop, "got {:?}", z.coefficients);
    }

    #[test]
    fn isolated_vertex_below_top_degree_is_rejected() {
        let k = SimplicialComplex::new(vec![vec![0, 1], vec![2]]).unwrap();
        match coherent_orientation(&k) {
            Err(SimplicialError::NonManifold { face }) => assert_eq!(face, vec![2]),
            other => panic!("expected purity failure, got {other:?}"),
        }
    }

    #[test]
    fn interval_onto_circle_pushes_to_a_relative_cycle() {
        // path 0-1-2-3 mapped onto the circle, wrapping the endpoints to
        // the basepoint
        let x = triangle_circle();
        let y = SimplicialComplex::new(vec![vec![0]]).unwrap();
        let f = SimplicialMap::new(y.clone(), x.clone(), [(0, 0)].into()).unwrap();
        let m = SimplicialComplex::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let boundary_model = SimplicialComplex::new(vec![vec![0], vec![3]]).unwrap();
        let g = SimplicialMap::new(
            m.clone(),
            x.clone(),
            [(0, 0), (1, 1), (2, 2), (3, 0)].into(),
        )
        .unwrap();
        let g_boundary =
            SimplicialMap::new(boundary_model, y.clone(), [(0, 0), (3, 0)].into()).unwrap();
        let rel = pushforward_fundamental(&f, &g, &g_boundary, &[1, 1, 1]).unwrap();
        // image is the full loop; both endpoints land on the basepoint and
        // their boundary contributions cancel there
        assert_eq!(
            rel.c.coefficients,
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
        assert!(rel.c_prime.is_zero());
    }

    #[test]
    fn doubling_map_with_empty_source_pair() {
        // hexagon wrapped twice around the circle, no boundary
        let x = triangle_circle();
        let f = SimplicialMap::from_empty(&x);
        let hexagon = SimplicialComplex::new(vec![
            vec![0, 1],
            vec![1, 2],
            vec![2, 3],
            vec![3, 4],
            vec![4, 5],
            vec![0, 5],
        ])
        .unwrap();
        let g = SimplicialMap::new(
            hexagon.clone(),
            x.clone(),
            (0..6).map(|v| (v, v % 3)).collect(),
        )
        .unwrap();
        let g_boundary = SimplicialMap::from_empty(&SimplicialComplex::empty());
        let signs = coherent_orientation(&hexagon).unwrap();
        let z = fundamental_class(&hexagon, &signs).unwrap();
        assert!(z.is_cycle(&hexagon));
        let rel = pushforward_fundamental(&f, &g, &g_boundary, &signs).unwrap();
        assert!(rel.c_prime.coefficients.is_empty());
        // twice the basic loop, up to global sign
        let doubled: Vec<BigInt> = [2, -2, 2].iter().map(|&v| BigInt::from(v)).collect();
        let negated: Vec<BigInt> = doubled.iter().map(|v| -v).collect();
        assert!(
            rel.c.coefficients == doubled || rel.c.coefficients == negated,
            "got {:?}",
            rel.c.coefficients
        );
    }

    #[test]
    fn uncovered_boundary_face_is_reported() {
        let x = triangle_circle();
        let y = SimplicialComplex::new(vec![vec![0]]).unwrap();
        let f = SimplicialMap::new(y.clone(), x.clone(), [(0, 0)].into()).unwrap();
        let m = SimplicialComplex::new(vec![vec![0, 1]]).unwrap();
        // boundary model only carries vertex 0, but the chain also has
        // boundary at vertex 1
        let boundary_model = SimplicialComplex::new(vec![vec![0]]).unwrap();
        let g = SimplicialMap::new(m.clone(), x.clone(), [(0, 0), (1, 1)].into()).unwrap();
        let g_boundary = SimplicialMap::new(boundary_model, y, [(0, 0)].into()).unwrap();
        match pushforward_fundamental(&f, &g, &g_boundary, &[1]) {
            Err(SimplicialError::BoundaryNotCovered { face }) => assert_eq!(face, vec![1]),
            other => panic!("expected a coverage failure, got {other:?}"),
        }
    }
}
