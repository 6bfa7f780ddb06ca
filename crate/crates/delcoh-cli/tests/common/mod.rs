//! An independent brute-force cohomology oracle.
//!
//! Everything here recomputes from first principles and deliberately avoids
//! the library's matrix, normal-form and solver code: coboundary matrices
//! are rebuilt from simplex face lists, ranks come from fraction-free
//! Gaussian elimination, and invariant factors come from greatest common
//! divisors of k-by-k minors (seeded with a known nonzero pivot minor and
//! terminated early once the divisor reaches one).

use delcoh::simplicial::{Simplex, SimplicialComplex, SimplicialMap};
use num::{BigInt, Integer, One, Signed, Zero};

/// Row-major integer matrix, the only representation the oracle uses.
pub type Mat = Vec<Vec<BigInt>>;

fn cols_of(m: &Mat) -> usize {
    m.first().map_or(0, |r| r.len())
}

/// The coboundary matrix `C^n -> C^{n+1}` rebuilt from face lists: the row
/// of an `(n+1)`-simplex holds alternating signs on its codimension-one
/// faces.
pub fn oracle_coboundary(k: &SimplicialComplex, n: usize) -> Mat {
    let rows = k.simplices(n + 1);
    let cols = k.simplices(n);
    rows.iter()
        .map(|s| {
            let mut row = vec![BigInt::zero(); cols.len()];
            for i in 0..s.len() {
                let mut face: Simplex = s.clone();
                face.remove(i);
                let j = cols
                    .iter()
                    .position(|c| *c == face)
                    .expect("faces of stored simplices are stored");
                row[j] = if i % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
            }
            row
        })
        .collect()
}

/// The pullback matrix of `f` in degree `n`, rebuilt from the vertex map:
/// the entry at (source simplex, target simplex) is the sorting-permutation
/// sign when the image hits that simplex, and zero on collapses.
pub fn oracle_pullback(f: &SimplicialMap, n: usize) -> Mat {
    let rows = f.source.simplices(n);
    let cols = f.target.simplices(n);
    rows.iter()
        .map(|s| {
            let mut row = vec![BigInt::zero(); cols.len()];
            let mut image: Vec<usize> = s.iter().map(|v| f.vertex_map[v]).collect();
            let mut sign = 1i64;
            for i in 0..image.len() {
                for j in 0..image.len() - 1 - i {
                    if image[j] > image[j + 1] {
                        image.swap(j, j + 1);
                        sign = -sign;
                    }
                }
            }
            let collapsed = image.windows(2).any(|w| w[0] == w[1]);
            if !collapsed {
                if let Some(j) = cols.iter().position(|c| *c == image) {
                    row[j] = BigInt::from(sign);
                }
            }
            row
        })
        .collect()
}

/// The degree-`n` differential of the cochain cone of `f`, assembled from
/// the oracle's own blocks; squares to zero by construction (asserted).
pub fn oracle_cone_differential(f: &SimplicialMap, n: usize) -> Mat {
    let dx = oracle_coboundary(&f.target, n);
    let dy = if n == 0 {
        Vec::new()
    } else {
        oracle_coboundary(&f.source, n - 1)
    };
    let pull = oracle_pullback(f, n);
    let nx = f.target.n_simplices(n);
    let ny = if n == 0 { 0 } else { f.source.n_simplices(n - 1) };
    let rows_x = f.target.n_simplices(n + 1);
    let rows_y = f.source.n_simplices(n);
    let mut out: Mat = Vec::with_capacity(rows_x + rows_y);
    for r in 0..rows_x {
        let mut row = dx[r].clone();
        row.extend(std::iter::repeat(BigInt::zero()).take(ny));
        out.push(row);
    }
    for r in 0..rows_y {
        let mut row = pull[r].clone();
        if n == 0 {
            debug_assert_eq!(row.len(), nx);
        } else {
            row.extend(dy[r].iter().map(|v| -v.clone()));
        }
        out.push(row);
    }
    out
}

/// Matrix product, used only for the square-to-zero sanity assertion.
pub fn oracle_mul(a: &Mat, b: &Mat) -> Mat {
    let inner = cols_of(a);
    assert_eq!(inner, b.len(), "dimension mismatch");
    let bc = cols_of(b);
    a.iter()
        .map(|row| {
            (0..bc)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for (t, v) in row.iter().enumerate() {
                        if !v.is_zero() && !b[t][j].is_zero() {
                            acc += v * &b[t][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn oracle_is_zero(m: &Mat) -> bool {
    m.iter().all(|r| r.iter().all(|v| v.is_zero()))
}

/// Fraction-free Gaussian elimination: returns the rank together with the
/// pivot row and column indices (in original coordinates).
fn bareiss(m: &Mat) -> (usize, Vec<usize>, Vec<usize>) {
    let rows = m.len();
    let cols = cols_of(m);
    let mut a = m.clone();
    let mut row_order: Vec<usize> = (0..rows).collect();
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        row_order.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let t = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = t;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        pivot_rows.push(row_order[rank]);
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    (rank, pivot_rows, pivot_cols)
}

/// The rank of an integer matrix by fraction-free elimination.
pub fn oracle_rank(m: &Mat) -> usize {
    bareiss(m).0
}

/// Determinant of a square submatrix by fraction-free elimination.
fn minor_det(m: &Mat, rsub: &[usize], csub: &[usize]) -> BigInt {
    let k = rsub.len();
    let mut a: Mat = rsub
        .iter()
        .map(|&r| csub.iter().map(|&c| m[r][c].clone()).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !a[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if p != col {
            a.swap(col, p);
            sign = -sign;
        }
        for r in col + 1..k {
            for c in col + 1..k {
                let t = (&a[col][col] * &a[r][c] - &a[r][col] * &a[col][c]) / &prev;
                a[r][c] = t;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[col][col].clone();
    }
    sign * prev
}

fn next_combination(sub: &mut [usize], n: usize) -> bool {
    let k = sub.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if sub[i] < n - (k - i) {
            sub[i] += 1;
            for j in i + 1..k {
                sub[j] = sub[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The gcd of all `k`-by-`k` minors, seeded with the elimination's pivot
/// minor (known to be nonzero) and stopped as soon as the gcd reaches one.
fn determinant_divisor(m: &Mat, k: usize, pivot_rows: &[usize], pivot_cols: &[usize]) -> BigInt {
    let mut prs: Vec<usize> = pivot_rows[..k].to_vec();
    let mut pcs: Vec<usize> = pivot_cols[..k].to_vec();
    prs.sort_unstable();
    pcs.sort_unstable();
    let mut g = minor_det(m, &prs, &pcs).abs();
    assert!(!g.is_zero(), "pivot minors are nonzero by construction");
    if g.is_one() {
        return g;
    }
    let rows = m.len();
    let cols = cols_of(m);
    let mut rsub: Vec<usize> = (0..k).collect();
    loop {
        let mut csub: Vec<usize> = (0..k).collect();
        loop {
            let d = minor_det(m, &rsub, &csub).abs();
            if !d.is_zero() {
                g = g.gcd(&d);
                if g.is_one() {
                    return g;
                }
            }
            if !next_combination(&mut csub, cols) {
                break;
            }
        }
        if !next_combination(&mut rsub, rows) {
            break;
        }
    }
    g
}

/// Invariant factors `s_1 | s_2 | ...` of an integer matrix, from the
/// quotients of successive determinant divisors.
pub fn oracle_invariant_factors(m: &Mat) -> Vec<BigInt> {
    let (rank, pivot_rows, pivot_cols) = bareiss(m);
    let mut out = Vec::with_capacity(rank);
    let mut prev = BigInt::one();
    for k in 1..=rank {
        let dk = determinant_divisor(m, k, &pivot_rows, &pivot_cols);
        out.push(&dk / &prev);
        prev = dk;
    }
    out
}

/// Free rank and torsion of a cohomology group presented by consecutive
/// differentials: ambient dimension, the outgoing differential, and the
/// incoming one (empty in bottom degree).
fn invariants_from_differentials(dim: usize, out: &Mat, into: Option<&Mat>) -> (usize, Vec<BigInt>) {
    let rank_out = oracle_rank(out);
    let (rank_in, torsion) = match into {
        None => (0, Vec::new()),
        Some(m) => (
            oracle_rank(m),
            oracle_invariant_factors(m)
                .into_iter()
                .filter(|d| !d.is_one())
                .collect(),
        ),
    };
    (dim - rank_out - rank_in, torsion)
}

/// `H^n(K; Z)` as (free rank, torsion divisors), entirely oracle-computed.
pub fn oracle_cohomology_z(k: &SimplicialComplex, n: usize) -> (usize, Vec<BigInt>) {
    let out = oracle_coboundary(k, n);
    let into = if n == 0 {
        None
    } else {
        Some(oracle_coboundary(k, n - 1))
    };
    invariants_from_differentials(k.n_simplices(n), &out, into.as_ref())
}

/// `H^n(X, Y, f; Z)` as (free rank, torsion divisors), from the oracle's
/// own cone differentials (checked to square to zero).
pub fn oracle_relative_z(f: &SimplicialMap, n: usize) -> (usize, Vec<BigInt>) {
    let out = oracle_cone_differential(f, n);
    let next = oracle_cone_differential(f, n + 1);
    // a row-major matrix with no rows loses its column count, and the
    // composition through it is vacuously zero anyway
    if !next.is_empty() {
        assert!(
            oracle_is_zero(&oracle_mul(&next, &out)),
            "oracle cone differential must square to zero"
        );
    }
    let dim = f.target.n_simplices(n) + if n == 0 { 0 } else { f.source.n_simplices(n - 1) };
    let into = if n == 0 {
        None
    } else {
        Some(oracle_cone_differential(f, n - 1))
    };
    invariants_from_differentials(dim, &out, into.as_ref())
}
