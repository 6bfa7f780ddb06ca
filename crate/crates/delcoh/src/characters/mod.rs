//! Absolute and relative differential characters on finite simplicial data.
//!
//! An absolute degree-`p` character on a complex is stored as a rational
//! `p`-cochain `T` (the holonomy lift) together with a closed integer
//! `(p+1)`-cochain `c` (the Chern cocycle). Its curvature is `ω = δT + c`
//! and its holonomy on a `p`-cycle `z` is `⟨T, z⟩ mod 1`; on a boundary
//! `∂D` the holonomy equals `⟨ω, D⟩ mod 1` identically.
//!
//! A relative character on a pair map `f : Y -> X` is the same picture one
//! level up on the mapping cone: a rational cone `p`-cochain
//! `T = (T_X, T_Y)` and a closed integral cone `(p+1)`-cochain
//! `c = (c_X, c_Y)`. The derived data are the curvature `ω = δT_X + c_X`,
//! the trivialization form `ρ = f^#T_X - δT_Y + c_Y` (together: the cone
//! coboundary of `T` plus `c`), and the holonomy
//! `⟨T_X, C⟩ + ⟨T_Y, C'⟩ mod 1` on relative cycles `(C, C')`. Tags grade
//! how strong a trivialization the data carry: `I` means `ρ = 0`,
//! `IIPrime` means `ρ` is closed with integral periods, `II` is
//! unconstrained; the orbit and coset tags mark representatives compared
//! through [`same_type_iii`] and [`same_type_iv`].
//!
//! Equality of characters is decidable: two reps represent the same class
//! exactly when their curvature data agree and the holonomy difference is
//! integral on a cycle basis, and in that case an explicit gauge move
//! between them exists ([`coboundary_witness`], [`rel_coboundary_witness`]).
//! All predicates in this module either produce such constructive
//! witnesses or fail with the first violated constraint.

use crate::cone::{
    chain_cone_boundary, cone_differential, cone_dim, iota_ambient, ConeCochain,
};
use crate::core_algebra::{
    integral_on_sublattice, kernel_lattice, solve_mixed, IntMatrix, RatMatrix,
};
use crate::simplicial::{
    pullback_cochain, Chain, CoefficientRing, Cochain, RelativeCycle, Simplex,
    SimplicialComplex, SimplicialError, SimplicialMap,
};
use num::{BigRational, Zero};
use serde::{Serialize, Serializer};
use std::fmt;

// ---------------------------------------------------------------------------
// Holonomy values
// ---------------------------------------------------------------------------

/// A rational number modulo 1, canonicalized to the representative in
/// `[0, 1)`. Displayed as a reduced fraction `numerator/denominator`
/// (`0/1` for zero), so equal values always print identically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModOne(BigRational);

impl ModOne {
    /// Canonicalizes an arbitrary rational into `[0, 1)`.
    pub fn new(q: BigRational) -> Self {
        let fl = q.floor();
        ModOne(q - fl)
    }

    pub fn zero() -> Self {
        ModOne(BigRational::zero())
    }

    /// The canonical representative in `[0, 1)`.
    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &ModOne) -> ModOne {
        ModOne::new(&self.0 + &other.0)
    }

    pub fn neg(&self) -> ModOne {
        ModOne::new(-self.0.clone())
    }

    pub fn sub(&self, other: &ModOne) -> ModOne {
        ModOne::new(&self.0 - &other.0)
    }
}

impl fmt::Display for ModOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for ModOne {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

// ---------------------------------------------------------------------------
// Tags and errors
// ---------------------------------------------------------------------------

/// The trivialization strength claimed for a relative character rep.
///
/// `I` and `IIPrime` impose checkable constraints on the derived form `ρ`
/// (zero, respectively closed with integral periods); `II` imposes none.
/// `IIIOrbit` and `IVCoset` mark reps intended as representatives of the
/// coarser equivalences decided by [`same_type_iii`] and [`same_type_iv`];
/// they validate like `II` and `IIPrime` respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TypeTag {
    I,
    II,
    IIPrime,
    IIIOrbit,
    IVCoset,
}

impl TypeTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            TypeTag::I => "I",
            TypeTag::II => "II",
            TypeTag::IIPrime => "II'",
            TypeTag::IIIOrbit => "III-orbit",
            TypeTag::IVCoset => "IV-coset",
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why character data failed to validate or two reps cannot be compared.
#[derive(Clone, Debug, PartialEq)]
pub enum CharacterError {
    /// A wrapped complex/map-level failure.
    Simplicial(SimplicialError),
    /// Relative characters need degree at least one.
    DegreeOutOfRange { degree: usize },
    /// A lift must be a rational cochain, a Chern part an integer cochain.
    RingMismatch { what: &'static str },
    /// A Chern part carries a non-integral value.
    NotIntegerValued { what: &'static str },
    /// A cochain has the wrong length for its complex and degree.
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    /// A cochain has the wrong degree.
    DegreeMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    /// A cochain required to be closed has nonzero coboundary, first seen
    /// on the reported simplex.
    NotClosed { what: &'static str, simplex: Simplex },
    /// The Chern pair violates `f^#c_X = δc_Y`, first seen on the
    /// reported source simplex.
    ConeCocycleBroken { simplex: Simplex },
    /// A rep claimed to trivialize geometrically has `ρ ≠ 0`, first seen
    /// on the reported source simplex.
    RhoNotZero { simplex: Simplex },
    /// A period that must be an integer is not.
    PeriodNotIntegral {
        what: &'static str,
        cycle: usize,
        value: BigRational,
    },
    /// The inputs live on different complexes or pair maps.
    DifferentSpaces { what: &'static str },
    /// An operation restricted to a tag received another.
    WrongTag { expected: &'static str, got: TypeTag },
    /// Holonomy was requested on a chain that is not a cycle.
    NotACycle,
    /// `δρ` and `f^#ω` disagree, first seen on the reported source
    /// simplex.
    CurvatureMismatch { simplex: Simplex },
}

impl fmt::Display for CharacterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacterError::Simplicial(e) => write!(f, "{e}"),
            CharacterError::DegreeOutOfRange { degree } => {
                write!(f, "relative characters need degree >= 1, got {degree}")
            }
            CharacterError::RingMismatch { what } => {
                write!(f, "{what} is tagged with the wrong coefficient ring")
            }
            CharacterError::NotIntegerValued { what } => {
                write!(f, "{what} must have integer values")
            }
            CharacterError::ShapeMismatch {
                what,
                expected,
                got,
            } => write!(f, "{what} has {got} entries, expected {expected}"),
            CharacterError::DegreeMismatch {
                what,
                expected,
                got,
            } => write!(f, "{what} has degree {got}, expected {expected}"),
            CharacterError::NotClosed { what, simplex } => {
                write!(f, "{what} is not closed: nonzero coboundary on {simplex:?}")
            }
            CharacterError::ConeCocycleBroken { simplex } => write!(
                f,
                "the Chern pair violates f^#c_X = δc_Y on source simplex {simplex:?}"
            ),
            CharacterError::RhoNotZero { simplex } => write!(
                f,
                "the trivialization form is nonzero on source simplex {simplex:?}"
            ),
            CharacterError::PeriodNotIntegral { what, cycle, value } => write!(
                f,
                "{what} has non-integral period {value} on cycle basis element {cycle}"
            ),
            CharacterError::DifferentSpaces { what } => write!(f, "{what}"),
            CharacterError::WrongTag { expected, got } => {
                write!(f, "expected a type-{expected} rep, got type {got}")
            }
            CharacterError::NotACycle => {
                write!(f, "holonomy is only defined on cycles")
            }
            CharacterError::CurvatureMismatch { simplex } => write!(
                f,
                "δρ and f^#ω disagree on source simplex {simplex:?}"
            ),
        }
    }
}

impl From<SimplicialError> for CharacterError {
    fn from(e: SimplicialError) -> Self {
        CharacterError::Simplicial(e)
    }
}

// ---------------------------------------------------------------------------
// Absolute characters
// ---------------------------------------------------------------------------

/// A degree-`p` differential character rep on a single complex: a rational
/// holonomy lift `T` and a closed integer Chern cocycle `c`. Built through
/// [`make_character`], which validates all invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterRep {
    complex: SimplicialComplex,
    p: usize,
    t: Cochain,
    c: Cochain,
}

/// An absolute character on the source complex of a pair map, used to act
/// on relative reps one degree up: the pair `(ξ, η)` with `ξ` its holonomy
/// and `η = δT + c` its curvature.
pub type AbsoluteYCharacter = CharacterRep;

/// Validates and assembles an absolute character rep from a rational lift
/// `t` of degree `p` and an integer Chern cocycle `c` of degree `p+1` with
/// `δc = 0`.
pub fn make_character(
    k: &SimplicialComplex,
    t: Cochain,
    c: Cochain,
) -> Result<CharacterRep, CharacterError> {
    let p = t.degree;
    if t.ring != CoefficientRing::Q {
        return Err(CharacterError::RingMismatch {
            what: "the holonomy lift",
        });
    }
    check_shape("the holonomy lift", &t, k, p)?;
    if c.degree != p + 1 {
        return Err(CharacterError::DegreeMismatch {
            what: "the Chern cocycle",
            expected: p + 1,
            got: c.degree,
        });
    }
    if c.ring != CoefficientRing::Z {
        return Err(CharacterError::RingMismatch {
            what: "the Chern cocycle",
        });
    }
    if !c.is_integer_valued() {
        return Err(CharacterError::NotIntegerValued {
            what: "the Chern cocycle",
        });
    }
    check_shape("the Chern cocycle", &c, k, p + 1)?;
    let dc = c.coboundary(k);
    if let Some(i) = first_nonzero(&dc) {
        return Err(CharacterError::NotClosed {
            what: "the Chern cocycle",
            simplex: k.simplices(p + 2)[i].clone(),
        });
    }
    Ok(CharacterRep {
        complex: k.clone(),
        p,
        t,
        c,
    })
}

impl CharacterRep {
    /// The all-zero character of a degree.
    pub fn trivial(k: &SimplicialComplex, p: usize) -> CharacterRep {
        CharacterRep {
            complex: k.clone(),
            p,
            t: Cochain::zero(k, p, CoefficientRing::Q),
            c: Cochain::zero(k, p + 1, CoefficientRing::Z),
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    /// The rational holonomy lift `T`.
    pub fn lift(&self) -> &Cochain {
        &self.t
    }

    /// The integer Chern cocycle `c`.
    pub fn chern(&self) -> &Cochain {
        &self.c
    }

    /// The curvature `ω = δT + c`, a rational closed `(p+1)`-cochain.
    pub fn curvature(&self) -> Cochain {
        self.t.coboundary(&self.complex).add(&self.c)
    }

    pub fn is_flat(&self) -> bool {
        self.curvature().is_zero()
    }

    /// Holonomy `⟨T, z⟩ mod 1` of a `p`-cycle.
    pub fn holonomy(&self, z: &Chain) -> Result<ModOne, CharacterError> {
        if z.degree != self.p {
            return Err(CharacterError::DegreeMismatch {
                what: "the cycle",
                expected: self.p,
                got: z.degree,
            });
        }
        let expected = self.complex.n_simplices(self.p);
        if z.coefficients.len() != expected {
            return Err(CharacterError::ShapeMismatch {
                what: "the cycle",
                expected,
                got: z.coefficients.len(),
            });
        }
        if !z.is_cycle(&self.complex) {
            return Err(CharacterError::NotACycle);
        }
        Ok(ModOne::new(self.t.pair(z)))
    }

    /// The inverse character (negated data).
    pub fn neg(&self) -> CharacterRep {
        CharacterRep {
            complex: self.complex.clone(),
            p: self.p,
            t: self.t.neg(),
            c: self.c.neg(),
        }
    }

    /// The sum character (componentwise data sum, revalidated).
    pub fn add(&self, other: &CharacterRep) -> Result<CharacterRep, CharacterError> {
        if self.complex != other.complex {
            return Err(CharacterError::DifferentSpaces {
                what: "cannot add characters on different complexes",
            });
        }
        if self.p != other.p {
            return Err(CharacterError::DegreeMismatch {
                what: "the summand",
                expected: self.p,
                got: other.p,
            });
        }
        make_character(&self.complex, self.t.add(&other.t), self.c.add(&other.c))
    }
}

/// A shift of character data that leaves the class unchanged: `T` moves by
/// `δs + u` and `c` by `-δu`, with `s` rational one degree down (absent in
/// degree zero) and `u` integral.
#[derive(Clone, Debug)]
pub struct GaugeMove {
    pub s: Option<Cochain>,
    pub u: Cochain,
}

impl GaugeMove {
    /// Applies the move, revalidating the result.
    pub fn apply(&self, x: &CharacterRep) -> Result<CharacterRep, CharacterError> {
        let mut t = x.t.clone();
        if let Some(s) = &self.s {
            t = t.add(&s.coboundary(&x.complex));
        }
        let t = t.add(&self.u);
        let c = x.c.sub(&self.u.coboundary(&x.complex));
        make_character(&x.complex, t, c)
    }
}

fn check_absolute_compatible(
    x: &CharacterRep,
    y: &CharacterRep,
) -> Result<(), CharacterError> {
    if x.complex != y.complex {
        return Err(CharacterError::DifferentSpaces {
            what: "cannot compare characters on different complexes",
        });
    }
    if x.p != y.p {
        return Err(CharacterError::DegreeMismatch {
            what: "the second character",
            expected: x.p,
            got: y.p,
        });
    }
    Ok(())
}

/// Whether two reps represent the same character: equal curvature and a
/// holonomy difference that is integral on an integral basis of cycles.
pub fn characters_equal(x: &CharacterRep, y: &CharacterRep) -> Result<bool, CharacterError> {
    check_absolute_compatible(x, y)?;
    if x.curvature() != y.curvature() {
        return Ok(false);
    }
    let diff = y.t.sub(&x.t);
    let cycles = kernel_lattice(&x.complex.boundary(x.p));
    Ok(integral_on_sublattice(&diff.values, &cycles).is_ok())
}

/// An explicit gauge move carrying `x` to `y`, when the two reps represent
/// the same character; `None` when they do not. Applying the returned move
/// to `x` reproduces `y`'s data exactly.
pub fn coboundary_witness(
    x: &CharacterRep,
    y: &CharacterRep,
) -> Result<Option<GaugeMove>, CharacterError> {
    check_absolute_compatible(x, y)?;
    if x.curvature() != y.curvature() {
        return Ok(None);
    }
    let p = x.p;
    let n = x.complex.n_simplices(p);
    let aq = if p == 0 {
        RatMatrix::zero(n, 0)
    } else {
        x.complex.coboundary(p - 1).to_rat()
    };
    let az = IntMatrix::identity(n);
    let diff = y.t.sub(&x.t);
    match solve_mixed(&aq, &az, &diff.values) {
        Ok(sol) => {
            let s = if p == 0 {
                None
            } else {
                Some(
                    Cochain::rational(&x.complex, p - 1, sol.rational)
                        .expect("solver output matches the cochain shape"),
                )
            };
            let u = Cochain::integer(&x.complex, p, sol.integer)
                .expect("solver output matches the cochain shape");
            Ok(Some(GaugeMove { s, u }))
        }
        Err(_) => Ok(None),
    }
}

// ---------------------------------------------------------------------------
// Relative characters
// ---------------------------------------------------------------------------

/// A degree-`p` relative character rep on a pair map `f : Y -> X`: a
/// rational cone `p`-cochain lift `(T_X, T_Y)`, a closed integral cone
/// `(p+1)`-cochain Chern pair `(c_X, c_Y)`, and a trivialization tag.
/// Built through [`make_relative`], which validates all invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct RelCharacterRep {
    map: SimplicialMap,
    p: usize,
    t: ConeCochain,
    c: ConeCochain,
    tag: TypeTag,
}

/// Validates and assembles a relative character rep of degree
/// `p = deg T_X >= 1` from its four components and a claimed tag.
///
/// Checks, in order: coefficient rings, degrees and lengths of all four
/// cochains; closedness `δc_X = 0`; the pairing condition
/// `f^#c_X = δc_Y`; and then the tag constraint — `ρ = 0` for `I`, `ρ`
/// closed with integral periods for `IIPrime`/`IVCoset`, nothing extra
/// for `II`/`IIIOrbit`. Every failure names the first offending simplex
/// or cycle.
pub fn make_relative(
    f: &SimplicialMap,
    t_x: Cochain,
    t_y: Cochain,
    c_x: Cochain,
    c_y: Cochain,
    claimed: TypeTag,
) -> Result<RelCharacterRep, CharacterError> {
    let p = t_x.degree;
    if p == 0 {
        return Err(CharacterError::DegreeOutOfRange { degree: 0 });
    }
    for (what, part, want) in [
        ("the target lift", &t_x, CoefficientRing::Q),
        ("the source lift", &t_y, CoefficientRing::Q),
        ("the target Chern cocycle", &c_x, CoefficientRing::Z),
        ("the source Chern cochain", &c_y, CoefficientRing::Z),
    ] {
        if part.ring != want {
            return Err(CharacterError::RingMismatch { what });
        }
    }
    for (what, part) in [
        ("the target Chern cocycle", &c_x),
        ("the source Chern cochain", &c_y),
    ] {
        if !part.is_integer_valued() {
            return Err(CharacterError::NotIntegerValued { what });
        }
    }
    for (what, part, want) in [
        ("the source lift", &t_y, p - 1),
        ("the target Chern cocycle", &c_x, p + 1),
        ("the source Chern cochain", &c_y, p),
    ] {
        if part.degree != want {
            return Err(CharacterError::DegreeMismatch {
                what,
                expected: want,
                got: part.degree,
            });
        }
    }
    check_shape("the target lift", &t_x, &f.target, p)?;
    check_shape("the source lift", &t_y, &f.source, p - 1)?;
    check_shape("the target Chern cocycle", &c_x, &f.target, p + 1)?;
    check_shape("the source Chern cochain", &c_y, &f.source, p)?;
    let t = ConeCochain::new(f, t_x, Some(t_y))?;
    let c = ConeCochain::new(f, c_x, Some(c_y))?;
    let dc = c.coboundary(f);
    if let Some(i) = first_nonzero(&dc.x_part) {
        return Err(CharacterError::NotClosed {
            what: "the target Chern cocycle",
            simplex: f.target.simplices(p + 2)[i].clone(),
        });
    }
    let dc_y = dc.y_part.as_ref().expect("positive degree has a source block");
    if let Some(i) = first_nonzero(dc_y) {
        return Err(CharacterError::ConeCocycleBroken {
            simplex: f.source.simplices(p + 1)[i].clone(),
        });
    }
    let rep = RelCharacterRep {
        map: f.clone(),
        p,
        t,
        c,
        tag: claimed,
    };
    match claimed {
        TypeTag::I => {
            let rho = rep.rho();
            if let Some(i) = first_nonzero(&rho) {
                return Err(CharacterError::RhoNotZero {
                    simplex: f.source.simplices(p)[i].clone(),
                });
            }
            debug_assert!(
                pullback_cochain(f, &rep.curvature()).is_zero(),
                "ρ = 0 forces the pulled-back curvature to vanish"
            );
        }
        TypeTag::IIPrime | TypeTag::IVCoset => {
            check_flat_integral(&f.source, &rep.rho(), "the trivialization form")?;
        }
        TypeTag::II | TypeTag::IIIOrbit => {}
    }
    Ok(rep)
}

impl RelCharacterRep {
    /// The all-zero relative character of a degree (valid for every tag).
    pub fn trivial(f: &SimplicialMap, p: usize, tag: TypeTag) -> RelCharacterRep {
        assert!(p >= 1, "relative characters need degree >= 1");
        RelCharacterRep {
            map: f.clone(),
            p,
            t: ConeCochain::zero(f, p, CoefficientRing::Q),
            c: ConeCochain::zero(f, p + 1, CoefficientRing::Z),
            tag,
        }
    }

    pub fn map(&self) -> &SimplicialMap {
        &self.map
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn tag(&self) -> TypeTag {
        self.tag
    }

    /// The rational lift as a cone cochain `(T_X, T_Y)`.
    pub fn lift(&self) -> &ConeCochain {
        &self.t
    }

    /// The integral Chern pair as a cone cochain `(c_X, c_Y)`.
    pub fn chern(&self) -> &ConeCochain {
        &self.c
    }

    pub fn t_x(&self) -> &Cochain {
        &self.t.x_part
    }

    pub fn t_y(&self) -> &Cochain {
        self.t.y_part.as_ref().expect("degree >= 1")
    }

    pub fn c_x(&self) -> &Cochain {
        &self.c.x_part
    }

    pub fn c_y(&self) -> &Cochain {
        self.c.y_part.as_ref().expect("degree >= 1")
    }

    /// The pair `(ω, ρ)` = cone coboundary of the lift plus the Chern
    /// pair, as a rational cone `(p+1)`-cochain.
    pub fn curvature_pair(&self) -> ConeCochain {
        self.t.coboundary(&self.map).add(&self.c)
    }

    /// The curvature `ω = δT_X + c_X` on the target.
    pub fn curvature(&self) -> Cochain {
        self.curvature_pair().x_part
    }

    /// The trivialization form `ρ = f^#T_X - δT_Y + c_Y` on the source.
    pub fn rho(&self) -> Cochain {
        self.curvature_pair()
            .y_part
            .expect("curvature pairs have positive degree")
    }

    /// Re-tags the same data (no constraint re-check; use
    /// [`make_relative`] to re-tag with validation).
    pub fn with_tag(&self, tag: TypeTag) -> RelCharacterRep {
        let mut r = self.clone();
        r.tag = tag;
        r
    }
}

/// Relative holonomy `⟨T_X, C⟩ + ⟨T_Y, C'⟩ mod 1` of a validated relative
/// `p`-cycle.
pub fn rel_holonomy(
    r: &RelCharacterRep,
    zc: &RelativeCycle,
) -> Result<ModOne, CharacterError> {
    if zc.degree != r.p {
        return Err(CharacterError::DegreeMismatch {
            what: "the relative cycle",
            expected: r.p,
            got: zc.degree,
        });
    }
    let expected_x = r.map.target.n_simplices(r.p);
    if zc.c.coefficients.len() != expected_x {
        return Err(CharacterError::ShapeMismatch {
            what: "the relative cycle's target part",
            expected: expected_x,
            got: zc.c.coefficients.len(),
        });
    }
    let expected_y = r.map.source.n_simplices(r.p - 1);
    if zc.c_prime.coefficients.len() != expected_y {
        return Err(CharacterError::ShapeMismatch {
            what: "the relative cycle's source part",
            expected: expected_y,
            got: zc.c_prime.coefficients.len(),
        });
    }
    Ok(ModOne::new(r.t.pair(zc)))
}

// ---------------------------------------------------------------------------
// Trivialization classification and the curvature-pair lattice test
// ---------------------------------------------------------------------------

/// How strongly a relative rep trivializes on the source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TrivializationKind {
    /// `ρ = 0`: the pulled-back character is trivialized together with
    /// its curvature.
    Geometric,
    /// `ρ ≠ 0`: the pulled-back character is trivialized and `ρ` records
    /// the derivative of the trivializing function; `integral` reports
    /// whether `ρ` is closed with integral periods.
    StrongTopological { integral: bool },
    /// Only the Chern-level trivialization is present. This describes
    /// descent data with no holonomy lift on the source; fully specified
    /// reps always classify as one of the other two kinds.
    TopologicalOnly,
}

/// Classifies a validated rep by its trivialization form.
pub fn trivialization_kind(r: &RelCharacterRep) -> TrivializationKind {
    let rho = r.rho();
    if rho.is_zero() {
        return TrivializationKind::Geometric;
    }
    let integral = check_flat_integral(&r.map.source, &rho, "the trivialization form").is_ok();
    TrivializationKind::StrongTopological { integral }
}

/// Whether the pair `(ω, ρ)` pairs integrally with every relative
/// `(p+1)`-cycle — the compatibility condition a curvature pair of a
/// relative character always satisfies.
///
/// Precondition: `δρ = f^#ω` (checked; violation reports the first
/// offending source simplex).
pub fn in_lambda_omega(
    f: &SimplicialMap,
    omega: &Cochain,
    rho: &Cochain,
) -> Result<bool, CharacterError> {
    if omega.degree != rho.degree + 1 {
        return Err(CharacterError::DegreeMismatch {
            what: "the curvature",
            expected: rho.degree + 1,
            got: omega.degree,
        });
    }
    check_shape("the curvature", omega, &f.target, omega.degree)?;
    check_shape("the trivialization form", rho, &f.source, rho.degree)?;
    let defect = rho.coboundary(&f.source).sub(&pullback_cochain(f, omega));
    if let Some(i) = first_nonzero(&defect) {
        return Err(CharacterError::CurvatureMismatch {
            simplex: f.source.simplices(rho.degree + 1)[i].clone(),
        });
    }
    let mut t = omega.values.clone();
    t.extend(rho.values.iter().cloned());
    let lattice = kernel_lattice(&chain_cone_boundary(f, omega.degree));
    Ok(integral_on_sublattice(&t, &lattice).is_ok())
}

// ---------------------------------------------------------------------------
// Relative gauge moves and class equality
// ---------------------------------------------------------------------------

/// A shift of relative character data that leaves the class unchanged:
/// the lift moves by (cone coboundary of `s`) plus `v`, and the Chern pair
/// by minus the cone coboundary of `v`, with `s` a rational cone
/// `(p-1)`-cochain and `v` an integral cone `p`-cochain.
///
/// In components, with `v = (u_X, -u_Y)`: `T_X += δS_X + u_X`,
/// `T_Y += f^#S_X - δS_Y - u_Y`, `c_X += -δu_X`, `c_Y += -f^#u_X - δu_Y`.
#[derive(Clone, Debug)]
pub struct RelGaugeMove {
    pub s: ConeCochain,
    pub v: ConeCochain,
}

impl RelGaugeMove {
    /// The identity move in degree `p`.
    pub fn zero(f: &SimplicialMap, p: usize) -> RelGaugeMove {
        assert!(p >= 1, "relative gauge moves need degree >= 1");
        RelGaugeMove {
            s: ConeCochain::zero(f, p - 1, CoefficientRing::Q),
            v: ConeCochain::zero(f, p, CoefficientRing::Z),
        }
    }

    /// Applies the move, revalidating the result under the same tag.
    pub fn apply(&self, r: &RelCharacterRep) -> Result<RelCharacterRep, CharacterError> {
        if self.s.degree() + 1 != r.p || self.v.degree() != r.p {
            return Err(CharacterError::DegreeMismatch {
                what: "the gauge move",
                expected: r.p,
                got: self.v.degree(),
            });
        }
        let t = r.t.add(&self.s.coboundary(&r.map)).add(&self.v);
        let c = r.c.sub(&self.v.coboundary(&r.map));
        let t_y = t.y_part.expect("degree >= 1");
        let c_y = c.y_part.expect("degree >= 1");
        make_relative(&r.map, t.x_part, t_y, c.x_part, c_y, r.tag)
    }
}

fn check_rel_compatible(
    r1: &RelCharacterRep,
    r2: &RelCharacterRep,
) -> Result<(), CharacterError> {
    if r1.map != r2.map {
        return Err(CharacterError::DifferentSpaces {
            what: "cannot compare relative characters on different pair maps",
        });
    }
    if r1.p != r2.p {
        return Err(CharacterError::DegreeMismatch {
            what: "the second relative character",
            expected: r1.p,
            got: r2.p,
        });
    }
    Ok(())
}

/// Whether two reps represent the same relative character: equal
/// curvature pairs `(ω, ρ)` and a holonomy difference that is integral on
/// an integral basis of relative cycles.
pub fn rel_characters_equal(
    r1: &RelCharacterRep,
    r2: &RelCharacterRep,
) -> Result<bool, CharacterError> {
    check_rel_compatible(r1, r2)?;
    if r1.curvature_pair() != r2.curvature_pair() {
        return Ok(false);
    }
    let diff = r1.t.sub(&r2.t).to_vector();
    let lattice = kernel_lattice(&chain_cone_boundary(&r1.map, r1.p));
    Ok(integral_on_sublattice(&diff, &lattice).is_ok())
}

/// An explicit relative gauge move carrying `r1` to `r2`, when the two
/// reps represent the same relative character; `None` when they do not.
/// Applying the returned move to `r1` reproduces `r2`'s data exactly.
pub fn rel_coboundary_witness(
    r1: &RelCharacterRep,
    r2: &RelCharacterRep,
) -> Result<Option<RelGaugeMove>, CharacterError> {
    check_rel_compatible(r1, r2)?;
    if r1.curvature_pair() != r2.curvature_pair() {
        return Ok(None);
    }
    let f = &r1.map;
    let p = r1.p;
    let np = cone_dim(f, p);
    let np1 = cone_dim(f, p + 1);
    let nq = cone_dim(f, p - 1);
    let d_prev = cone_differential(f, p - 1).to_rat();
    let d_cur = cone_differential(f, p);
    let aq = RatMatrix::vstack(&[&d_prev, &RatMatrix::zero(np1, nq)]);
    let az = IntMatrix::vstack(&[&IntMatrix::identity(np), &d_cur.neg()]);
    let mut w = r2.t.sub(&r1.t).to_vector();
    w.extend(r2.c.sub(&r1.c).to_vector());
    match solve_mixed(&aq, &az, &w) {
        Ok(sol) => {
            let s = ConeCochain::from_vector(f, p - 1, CoefficientRing::Q, &sol.rational)
                .expect("solver output matches the cone shape");
            let v_vals: Vec<BigRational> =
                sol.integer.into_iter().map(BigRational::from).collect();
            let v = ConeCochain::from_vector(f, p, CoefficientRing::Z, &v_vals)
                .expect("solver output matches the cone shape");
            Ok(Some(RelGaugeMove { s, v }))
        }
        Err(_) => Ok(None),
    }
}

// ---------------------------------------------------------------------------
// Embedding, action, orbit and coset equivalences
// ---------------------------------------------------------------------------

/// Regards a geometric (`ρ = 0`) rep as an unconstrained one: identical
/// data, tag `II`.
pub fn embed_i_to_ii(r: &RelCharacterRep) -> Result<RelCharacterRep, CharacterError> {
    if r.tag != TypeTag::I {
        return Err(CharacterError::WrongTag {
            expected: "I",
            got: r.tag,
        });
    }
    Ok(r.with_tag(TypeTag::II))
}

/// Acts by an absolute source character `(ξ, η)` of degree `p-1` on a
/// relative rep of degree `p`: the holonomy changes by `-ξ(C')`, the
/// curvature is unchanged, and the trivialization form changes by `+η`.
/// In data: `T_Y -= T_ξ` and `c_Y += c_ξ`.
pub fn act_on_ii(
    xi_eta: &AbsoluteYCharacter,
    r: &RelCharacterRep,
) -> Result<RelCharacterRep, CharacterError> {
    if *xi_eta.complex() != r.map.source {
        return Err(CharacterError::DifferentSpaces {
            what: "the acting character must live on the source complex",
        });
    }
    if xi_eta.degree() + 1 != r.p {
        return Err(CharacterError::DegreeMismatch {
            what: "the acting character",
            expected: r.p - 1,
            got: xi_eta.degree(),
        });
    }
    let t_y = r.t_y().sub(xi_eta.lift());
    let c_y = r.c_y().add(xi_eta.chern());
    make_relative(
        &r.map,
        r.t_x().clone(),
        t_y,
        r.c_x().clone(),
        c_y,
        TypeTag::II,
    )
}

/// A constructive witness that two reps lie in the same orbit of the
/// source-character action: a character `(ξ, η)` and a gauge move such
/// that acting by `(ξ, η)` on the first rep and then applying the move
/// reproduces the second rep's data exactly.
#[derive(Clone, Debug)]
pub struct OrbitWitness {
    pub xi_eta: AbsoluteYCharacter,
    pub gauge: RelGaugeMove,
}

/// Searches for an [`OrbitWitness`] carrying `r1` to `r2`. Equality of
/// the curvatures `ω` is necessary (the action preserves them), so reps
/// with different curvature short-circuit to `None`.
pub fn type_iii_witness(
    r1: &RelCharacterRep,
    r2: &RelCharacterRep,
) -> Result<Option<OrbitWitness>, CharacterError> {
    check_rel_compatible(r1, r2)?;
    if r1.curvature() != r2.curvature() {
        return Ok(None);
    }
    let f = &r1.map;
    let p = r1.p;
    let y = &f.source;
    let n_txi = y.n_simplices(p - 1);
    let n_cxi = y.n_simplices(p);
    let n_rows_c = y.n_simplices(p + 1);
    let np = cone_dim(f, p);
    let np1 = cone_dim(f, p + 1);
    let nq = cone_dim(f, p - 1);
    let iota_p = iota_ambient(f, p);
    let iota_p1 = iota_ambient(f, p + 1);
    let d_prev = cone_differential(f, p - 1);
    let d_cur = cone_differential(f, p);
    let dy = y.coboundary(p);
    // unknowns: rational (T_ξ, s) and integral (c_ξ, v); rows demand the
    // lift shift, the Chern shift, and closedness of c_ξ.
    let aq = RatMatrix::block(&[
        &[&iota_p.neg().to_rat(), &d_prev.to_rat()],
        &[&RatMatrix::zero(np1, n_txi), &RatMatrix::zero(np1, nq)],
        &[&RatMatrix::zero(n_rows_c, n_txi), &RatMatrix::zero(n_rows_c, nq)],
    ]);
    let az = IntMatrix::block(&[
        &[&IntMatrix::zero(np, n_cxi), &IntMatrix::identity(np)],
        &[&iota_p1, &d_cur.neg()],
        &[&dy, &IntMatrix::zero(n_rows_c, np)],
    ]);
    let mut w = r2.t.sub(&r1.t).to_vector();
    w.extend(r2.c.sub(&r1.c).to_vector());
    w.extend(vec![BigRational::zero(); n_rows_c]);
    match solve_mixed(&aq, &az, &w) {
        Ok(sol) => {
            let t_xi = Cochain::rational(y, p - 1, sol.rational[..n_txi].to_vec())
                .expect("solver output matches the cochain shape");
            let s = ConeCochain::from_vector(f, p - 1, CoefficientRing::Q, &sol.rational[n_txi..])
                .expect("solver output matches the cone shape");
            let c_xi = Cochain::integer(y, p, sol.integer[..n_cxi].to_vec())
                .expect("solver output matches the cochain shape");
            let v_vals: Vec<BigRational> = sol.integer[n_cxi..]
                .iter()
                .cloned()
                .map(BigRational::from)
                .collect();
            let v = ConeCochain::from_vector(f, p, CoefficientRing::Z, &v_vals)
                .expect("solver output matches the cone shape");
            let xi_eta = make_character(y, t_xi, c_xi)
                .expect("the solved data satisfies the character constraints");
            Ok(Some(OrbitWitness {
                xi_eta,
                gauge: RelGaugeMove { s, v },
            }))
        }
        Err(_) => Ok(None),
    }
}

/// Whether two reps lie in the same orbit of the source-character action.
pub fn same_type_iii(
    r1: &RelCharacterRep,
    r2: &RelCharacterRep,
) -> Result<bool, CharacterError> {
    Ok(type_iii_witness(r1, r2)?.is_some())
}

/// Builds the rep `(T_X = ρ̃, T_Y = 0, c_X = 0, c_Y = 0)` from a closed
/// rational `p`-cochain `ρ̃` on the target with integral periods. Its
/// holonomy is `⟨ρ̃, C⟩ mod 1` and its trivialization form `f^#ρ̃` is
/// closed with integral periods, so the result validates with tag
/// `IIPrime`.
pub fn phi_f(f: &SimplicialMap, rho_tilde: Cochain) -> Result<RelCharacterRep, CharacterError> {
    let p = rho_tilde.degree;
    if p == 0 {
        return Err(CharacterError::DegreeOutOfRange { degree: 0 });
    }
    if rho_tilde.ring != CoefficientRing::Q {
        return Err(CharacterError::RingMismatch { what: "the argument" });
    }
    check_shape("the argument", &rho_tilde, &f.target, p)?;
    check_flat_integral(&f.target, &rho_tilde, "the argument")?;
    make_relative(
        f,
        rho_tilde,
        Cochain::zero(&f.source, p - 1, CoefficientRing::Q),
        Cochain::zero(&f.target, p + 1, CoefficientRing::Z),
        Cochain::zero(&f.source, p, CoefficientRing::Z),
        TypeTag::IIPrime,
    )
}

/// A constructive witness that two reps differ by an element of the
/// [`phi_f`] image: a closed integral-period `p`-cochain `ρ̃` on the
/// target and a gauge move such that combining `r2` with `phi_f(ρ̃)` and
/// applying the move reproduces `r1`'s data exactly.
#[derive(Clone, Debug)]
pub struct CosetWitness {
    pub rho_tilde: Cochain,
    pub gauge: RelGaugeMove,
}

/// Searches for a [`CosetWitness`] for `r1 - r2`. Both reps must satisfy
/// the closed-integral-period constraint on their trivialization forms
/// (validated here regardless of tags).
pub fn type_iv_witness(
    r1: &RelCharacterRep,
    r2: &RelCharacterRep,
) -> Result<Option<CosetWitness>, CharacterError> {
    check_rel_compatible(r1, r2)?;
    check_flat_integral(&r1.map.source, &r1.rho(), "the first trivialization form")?;
    check_flat_integral(&r2.map.source, &r2.rho(), "the second trivialization form")?;
    let f = &r1.map;
    let p = r1.p;
    let x = &f.target;
    let n_rho = x.n_simplices(p);
    let n_rows_c = x.n_simplices(p + 1);
    let np = cone_dim(f, p);
    let np1 = cone_dim(f, p + 1);
    let nq = cone_dim(f, p - 1);
    let d_prev = cone_differential(f, p - 1);
    let d_cur = cone_differential(f, p);
    let dx = x.coboundary(p);
    let cycles = kernel_lattice(&x.boundary(p));
    let n_cyc = cycles.cols();
    let embed_x = IntMatrix::vstack(&[
        &IntMatrix::identity(n_rho),
        &IntMatrix::zero(np - n_rho, n_rho),
    ]);
    // unknowns: rational (ρ̃, s) and integral (v, k); rows demand the lift
    // shift, the Chern shift, closedness of ρ̃, and integral periods
    // ⟨ρ̃, z_i⟩ = k_i on a cycle basis.
    let aq = RatMatrix::block(&[
        &[&embed_x.to_rat(), &d_prev.to_rat()],
        &[&RatMatrix::zero(np1, n_rho), &RatMatrix::zero(np1, nq)],
        &[&dx.to_rat(), &RatMatrix::zero(n_rows_c, nq)],
        &[&cycles.transpose().to_rat(), &RatMatrix::zero(n_cyc, nq)],
    ]);
    let az = IntMatrix::block(&[
        &[&IntMatrix::identity(np), &IntMatrix::zero(np, n_cyc)],
        &[&d_cur.neg(), &IntMatrix::zero(np1, n_cyc)],
        &[&IntMatrix::zero(n_rows_c, np), &IntMatrix::zero(n_rows_c, n_cyc)],
        &[&IntMatrix::zero(n_cyc, np), &IntMatrix::identity(n_cyc).neg()],
    ]);
    let mut w = r1.t.sub(&r2.t).to_vector();
    w.extend(r1.c.sub(&r2.c).to_vector());
    w.extend(vec![BigRational::zero(); n_rows_c + n_cyc]);
    match solve_mixed(&aq, &az, &w) {
        Ok(sol) => {
            let rho_tilde = Cochain::rational(x, p, sol.rational[..n_rho].to_vec())
                .expect("solver output matches the cochain shape");
            let s = ConeCochain::from_vector(f, p - 1, CoefficientRing::Q, &sol.rational[n_rho..])
                .expect("solver output matches the cone shape");
            let v_vals: Vec<BigRational> = sol.integer[..np]
                .iter()
                .cloned()
                .map(BigRational::from)
                .collect();
            let v = ConeCochain::from_vector(f, p, CoefficientRing::Z, &v_vals)
                .expect("solver output matches the cone shape");
            Ok(Some(CosetWitness {
                rho_tilde,
                gauge: RelGaugeMove { s, v },
            }))
        }
        Err(_) => Ok(None),
    }
}

/// Whether two reps (both with closed integral-period trivialization
/// forms) lie in the same coset of the [`phi_f`] image.
pub fn same_type_iv(
    r1: &RelCharacterRep,
    r2: &RelCharacterRep,
) -> Result<bool, CharacterError> {
    Ok(type_iv_witness(r1, r2)?.is_some())
}

// ---------------------------------------------------------------------------
// Shared checks
// ---------------------------------------------------------------------------

fn check_shape(
    what: &'static str,
    part: &Cochain,
    k: &SimplicialComplex,
    degree: usize,
) -> Result<(), CharacterError> {
    let expected = k.n_simplices(degree);
    if part.values.len() != expected {
        return Err(CharacterError::ShapeMismatch {
            what,
            expected,
            got: part.values.len(),
        });
    }
    Ok(())
}

/// Checks that a rational cochain is closed and has integral periods on
/// an integral basis of cycles of its degree.
fn check_flat_integral(
    k: &SimplicialComplex,
    w: &Cochain,
    what: &'static str,
) -> Result<(), CharacterError> {
    let dw = w.coboundary(k);
    if let Some(i) = first_nonzero(&dw) {
        return Err(CharacterError::NotClosed {
            what,
            simplex: k.simplices(w.degree + 1)[i].clone(),
        });
    }
    let cycles = kernel_lattice(&k.boundary(w.degree));
    integral_on_sublattice(&w.values, &cycles).map_err(|e| CharacterError::PeriodNotIntegral {
        what,
        cycle: e.column,
        value: e.value,
    })
}

fn first_nonzero(c: &Cochain) -> Option<usize> {
    c.values.iter().position(|v| !v.is_zero())
}
