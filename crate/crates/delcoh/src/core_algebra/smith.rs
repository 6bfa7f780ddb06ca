//! Smith normal form with tracked unimodular transformations.

use super::matrix::IntMatrix;
use num::{BigInt, Integer, Signed, Zero};

/// The result of a Smith reduction `U * A * V = D`.
///
/// `U` and `V` are unimodular (determinant ±1); their inverses are tracked
/// alongside so that callers never need to invert anything. `D` is diagonal
/// with nonnegative entries `d_1 | d_2 | ... | d_r` followed by zeros.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    /// Number of nonzero diagonal entries of `D`.
    pub rank: usize,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries `d_1 | ... | d_r`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Bundles the matrix being reduced with the transformation bookkeeping.
struct Reduction {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reduction {
    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.row_swap(i, j);
        self.u.row_swap(i, j);
        self.u_inv.col_swap(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.col_swap(i, j);
        self.v.col_swap(i, j);
        self.v_inv.row_swap(i, j);
    }

    /// `row[i] += lambda * row[j]` on `A`, mirrored on `U`, inverted on
    /// `U^{-1}` (whose column `j` receives `-lambda * column[i]`).
    fn row_addmul(&mut self, i: usize, j: usize, lambda: &BigInt) {
        self.a.row_addmul(i, j, lambda);
        self.u.row_addmul(i, j, lambda);
        let neg = -lambda.clone();
        self.u_inv.col_addmul(j, i, &neg);
    }

    /// `col[i] += lambda * col[j]` on `A`, mirrored on `V`, inverted on
    /// `V^{-1}`.
    fn col_addmul(&mut self, i: usize, j: usize, lambda: &BigInt) {
        self.a.col_addmul(i, j, lambda);
        self.v.col_addmul(i, j, lambda);
        let neg = -lambda.clone();
        self.v_inv.row_addmul(j, i, &neg);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.row_negate(i);
        self.u.row_negate(i);
        self.u_inv.col_negate(i);
    }
}

/// Computes the Smith normal form of `a`.
///
/// Pivot rule (fixed for reproducibility): among the nonzero entries of the
/// working submatrix, pick one of smallest absolute value; break ties by
/// smallest row index, then smallest column index.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let rows = a.rows();
    let cols = a.cols();
    let mut red = Reduction {
        a: a.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };

    let mut t = 0;
    while t < rows && t < cols {
        match select_pivot(&red.a, t) {
            None => break,
            Some((pi, pj)) => {
                red.row_swap(t, pi);
                red.col_swap(t, pj);
            }
        }

        // Clear the rest of column t and row t. Each partial reduction can
        // leave a smaller nonzero remainder in place, in which case a fresh
        // (strictly smaller) pivot is selected; the pivot magnitude strictly
        // decreases on every retry, so this terminates.
        let mut clean = true;
        for i in (t + 1)..rows {
            if !red.a.get(i, t).is_zero() {
                let q = div_rounded(red.a.get(i, t), red.a.get(t, t));
                let neg_q = -q;
                red.row_addmul(i, t, &neg_q);
                if !red.a.get(i, t).is_zero() {
                    clean = false;
                }
            }
        }
        for j in (t + 1)..cols {
            if !red.a.get(t, j).is_zero() {
                let q = div_rounded(red.a.get(t, j), red.a.get(t, t));
                let neg_q = -q;
                red.col_addmul(j, t, &neg_q);
                if !red.a.get(t, j).is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }

        // Enforce divisibility: if some remaining entry is not divisible by
        // the pivot, fold its row into row t and restart this pivot step.
        let mut disturbed = false;
        'outer: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if !red.a.get(i, j).mod_floor(red.a.get(t, t)).is_zero() {
                    red.row_addmul(t, i, &BigInt::from(1));
                    disturbed = true;
                    break 'outer;
                }
            }
        }
        if disturbed {
            continue;
        }

        if red.a.get(t, t).is_negative() {
            red.row_negate(t);
        }
        t += 1;
    }

    let rank = t;
    SmithDecomposition {
        u: red.u,
        d: red.a,
        v: red.v,
        u_inv: red.u_inv,
        v_inv: red.v_inv,
        rank,
    }
}

/// Pivot selection: smallest nonzero absolute value in the submatrix with
/// corner `(t, t)`, ties broken by lowest row then lowest column.
fn select_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let entry = a.get(i, j);
            if entry.is_zero() {
                continue;
            }
            let mag = entry.abs();
            let better = match &best {
                None => true,
                Some((m, _, _)) => mag < *m,
            };
            if better {
                best = Some((mag, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Division rounded to the nearest integer (ties toward zero), so that the
/// remainder after one reduction step has magnitude at most half the divisor.
fn div_rounded(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > d.abs() {
        if (n.is_negative()) ^ (d.is_negative()) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_decomposition(a: &IntMatrix) {
        let s = smith_normal_form(a);
        // U * A * V = D
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "U*A*V != D");
        // tracked inverses really are inverses
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(s.u_inv.mul(&s.u), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        assert_eq!(s.v_inv.mul(&s.v), IntMatrix::identity(a.cols()));
        // D diagonal, nonnegative, divisibility chain, zeros trailing
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero(), "off-diagonal entry");
                }
            }
        }
        let factors = s.invariant_factors();
        for w in factors.windows(2) {
            assert!(
                w[1].mod_floor(&w[0]).is_zero(),
                "divisibility chain violated: {} does not divide {}",
                w[0],
                w[1]
            );
        }
        for i in s.rank..s.d.rows().min(s.d.cols()) {
            assert!(s.d.get(i, i).is_zero());
        }
    }

    #[test]
    fn smith_of_small_matrix() {
        // gcd of entries 2, and |det| = 8, so the invariant factors are 2, 4.
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        check_decomposition(&a);
        assert_eq!(s.rank, 2);
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
    }

    #[test]
    fn smith_of_zero_matrix() {
        let a = IntMatrix::zero(3, 2);
        let s = smith_normal_form(&a);
        assert_eq!(s.rank, 0);
        check_decomposition(&a);
    }

    #[test]
    fn smith_of_identity() {
        let a = IntMatrix::identity(4);
        let s = smith_normal_form(&a);
        assert_eq!(s.rank, 4);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1); 4]);
        check_decomposition(&a);
    }

    #[test]
    fn smith_with_negative_entries_and_rectangular_shape() {
        let a = IntMatrix::from_i64(&[&[0, -3, 6], &[4, 2, -2]]);
        check_decomposition(&a);
    }

    #[test]
    fn smith_needs_divisibility_fixup() {
        // diag(2, 3) must become diag(1, 6): forces the fold-in step.
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        check_decomposition(&a);
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn rounded_division_minimizes_remainder() {
        assert_eq!(div_rounded(&BigInt::from(7), &BigInt::from(3)), BigInt::from(2));
        assert_eq!(div_rounded(&BigInt::from(8), &BigInt::from(3)), BigInt::from(3));
        assert_eq!(div_rounded(&BigInt::from(-7), &BigInt::from(3)), BigInt::from(-2));
        assert_eq!(div_rounded(&BigInt::from(7), &BigInt::from(-3)), BigInt::from(-2));
        assert_eq!(div_rounded(&BigInt::from(-8), &BigInt::from(3)), BigInt::from(-3));
    }
}
