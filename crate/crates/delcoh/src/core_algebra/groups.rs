//! Invariants of finitely generated abelian groups and of their R/Z duals.

use super::matrix::{IntMatrix, IntVec};
use super::smith::smith_normal_form;
use num::{BigInt, One};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;

/// Serializes arbitrary-precision integers as decimal strings, which keeps
/// JSON reports readable and byte-stable.
fn bigints_as_strings<S: Serializer>(v: &Vec<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

/// Same, one level deeper, for lists of witness vectors.
fn bigint_vecs_as_strings<S: Serializer>(v: &Vec<IntVec>, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for inner in v {
        let strings: Vec<String> = inner.iter().map(|x| x.to_string()).collect();
        seq.serialize_element(&strings)?;
    }
    seq.end()
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`
/// presented in invariant-factor form (`d_1 | d_2 | ... | d_k`, all `> 1`).
///
/// `generator_witnesses` lists one integer vector per summand, in the
/// ambient coordinates of whatever presentation produced the group: first
/// the torsion generators (parallel to `torsion`), then `free_rank` free
/// generators. Witnesses are empty when a computation produces invariants
/// only (rational ranks).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FGAbelianGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "bigints_as_strings")]
    pub torsion: Vec<BigInt>,
    #[serde(serialize_with = "bigint_vecs_as_strings")]
    pub generator_witnesses: Vec<IntVec>,
}

impl FGAbelianGroup {
    /// The trivial group.
    pub fn trivial() -> Self {
        FGAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
            generator_witnesses: Vec::new(),
        }
    }

    /// Free abelian group of the given rank, without witnesses.
    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
            generator_witnesses: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Compares invariants only (witnesses are representatives and may
    /// differ between equal groups).
    pub fn same_invariants(&self, other: &FGAbelianGroup) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }
}

impl fmt::Display for FGAbelianGroup {
    /// Formats as `Z^r ⊕ Z/d_1 ⊕ ...`, with `Z` for rank one and `0` for the
    /// trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Invariants of a module of the form `(R/Z)^torus_rank ⊕ Z/d_1 ⊕ ...`
/// (the Pontryagin dual of a finitely generated abelian group).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RZModuleInvariants {
    pub torus_rank: usize,
    #[serde(serialize_with = "bigints_as_strings")]
    pub torsion: Vec<BigInt>,
}

impl RZModuleInvariants {
    pub fn trivial() -> Self {
        RZModuleInvariants {
            torus_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.torus_rank == 0 && self.torsion.is_empty()
    }

    /// The dual of `Z^r ⊕ T` is `(R/Z)^r ⊕ T`: rank becomes torus rank and
    /// finite torsion is self-dual.
    pub fn dual_of(group: &FGAbelianGroup) -> Self {
        RZModuleInvariants {
            torus_rank: group.free_rank,
            torsion: group.torsion.clone(),
        }
    }
}

impl fmt::Display for RZModuleInvariants {
    /// Formats as `(R/Z)^r ⊕ Z/d_1 ⊕ ...` with `R/Z` for torus rank one and
    /// `0` for the trivial module.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.torus_rank {
            0 => {}
            1 => parts.push("R/Z".to_string()),
            r => parts.push(format!("(R/Z)^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Structure of the cokernel `Z^rows / im(a)`.
///
/// Generator witnesses are expressed in the standard coordinates of
/// `Z^rows`: if `U A V = D`, the class of column `i` of `U^{-1}` generates
/// the `Z/d_i` summand (for `d_i > 1`), and the columns beyond the rank
/// generate the free part.
pub fn cokernel_structure(a: &IntMatrix) -> FGAbelianGroup {
    let s = smith_normal_form(a);
    let mut torsion = Vec::new();
    let mut witnesses = Vec::new();
    for i in 0..s.rank {
        let d = s.d.get(i, i);
        if !d.is_one() {
            torsion.push(d.clone());
            witnesses.push(s.u_inv.column(i));
        }
    }
    let free_rank = a.rows() - s.rank;
    for i in s.rank..a.rows() {
        witnesses.push(s.u_inv.column(i));
    }
    FGAbelianGroup {
        free_rank,
        torsion,
        generator_witnesses: witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_of_diagonal_map() {
        // Z^2 / im(diag(2, 4)) = Z/2 ⊕ Z/4
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 4]]);
        let g = cokernel_structure(&a);
        assert_eq!(g.free_rank, 0);
        assert_eq!(g.torsion, vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(g.to_string(), "Z/2 ⊕ Z/4");
    }

    #[test]
    fn cokernel_with_free_part() {
        // Z^3 / im of one column (1, 0, 0): free rank 2, no torsion.
        let a = IntMatrix::from_i64(&[&[1], &[0], &[0]]);
        let g = cokernel_structure(&a);
        assert_eq!(g.free_rank, 2);
        assert!(g.torsion.is_empty());
        assert_eq!(g.generator_witnesses.len(), 2);
        assert_eq!(g.to_string(), "Z^2");
    }

    #[test]
    fn cokernel_witnesses_generate() {
        // Z^2 / im([[2, 0], [0, 1]]) = Z/2; the witness must have odd first
        // Smith coordinate.
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        let g = cokernel_structure(&a);
        assert_eq!(g.torsion, vec![BigInt::from(2)]);
        assert_eq!(g.generator_witnesses.len(), 1);
        let w = &g.generator_witnesses[0];
        // the witness is a nonzero class: it does not lie in the image
        // lattice, but its double does
        use crate::core_algebra::solve::solve_integer;
        assert!(solve_integer(&a, w).is_err(), "witness lies in the image");
        let doubled: Vec<BigInt> = w.iter().map(|x| x * BigInt::from(2)).collect();
        assert!(solve_integer(&a, &doubled).is_ok(), "2 * witness must vanish");
    }

    #[test]
    fn display_forms() {
        assert_eq!(FGAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FGAbelianGroup::free(1).to_string(), "Z");
        assert_eq!(FGAbelianGroup::free(2).to_string(), "Z^2");
        let g = FGAbelianGroup {
            free_rank: 1,
            torsion: vec![BigInt::from(2), BigInt::from(6)],
            generator_witnesses: vec![],
        };
        assert_eq!(g.to_string(), "Z ⊕ Z/2 ⊕ Z/6");
        let rz = RZModuleInvariants {
            torus_rank: 2,
            torsion: vec![BigInt::from(3)],
        };
        assert_eq!(rz.to_string(), "(R/Z)^2 ⊕ Z/3");
        assert_eq!(RZModuleInvariants::trivial().to_string(), "0");
        let rz1 = RZModuleInvariants {
            torus_rank: 1,
            torsion: vec![],
        };
        assert_eq!(rz1.to_string(), "R/Z");
    }
}
