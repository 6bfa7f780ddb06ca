//! Acceptance battery: ten end-to-end criteria, one pass/fail line each.
//!
//! Each test prints exactly one summary line of the form
//! `criterion NN (<what it checks>): PASS|FAIL — <detail>, <time>s`
//! and then fails loudly with per-case messages if anything went wrong.
//! Time budgets, where present, are asserted after the correctness checks.
//! Group and torsion comparisons go through the independent oracle in
//! `common`, which shares no matrix code with the library.

mod common;

use common::{oracle_cohomology_z, oracle_relative_z};
use delcoh::characters::{
    in_lambda_omega, make_relative, rel_characters_equal, rel_coboundary_witness, rel_holonomy,
    same_type_iv, ModOne, RelCharacterRep, TypeTag,
};
use delcoh::cone::{cone_dim, cone_differential, relative_cohomology, relative_cycle_basis, ConeCochain};
use delcoh::fixtures;
use delcoh::sequences::{
    hbar_denominator_member, hbar_numerator_member, sample_absolute, sample_rel_gauge,
    sample_relative, seeded_rng, verify_les4, verify_mixed_les, verify_thm_diagram, MixedSequence,
};
use delcoh::simplicial::{
    boundary_matrix, cohomology, Chain, Cochain, CoefficientRing, RelativeCycle, SimplicialComplex,
};
use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use std::time::Instant;

// --- shared scaffolding ----------------------------------------------------

macro_rules! check {
    ($failures:expr, $cond:expr, $($msg:tt)*) => {
        if !$cond {
            $failures.push(format!($($msg)*));
        }
    };
}

/// Prints the single summary line for a criterion and panics on failure.
fn finish(
    number: &str,
    label: &str,
    detail: String,
    failures: Vec<String>,
    start: Instant,
    budget_seconds: Option<f64>,
) {
    let elapsed = start.elapsed().as_secs_f64();
    let time_ok = budget_seconds.is_none_or(|b| elapsed < b);
    let ok = failures.is_empty() && time_ok;
    let mark = if ok { "PASS" } else { "FAIL" };
    println!("criterion {number} ({label}): {mark} — {detail}, {elapsed:.2}s");
    if !failures.is_empty() {
        panic!(
            "criterion {number} recorded {} failure(s):\n{}",
            failures.len(),
            failures.join("\n")
        );
    }
    if let Some(b) = budget_seconds {
        assert!(
            time_ok,
            "criterion {number} exceeded its {b}s time budget: {elapsed:.2}s"
        );
    }
}

/// The six standalone test complexes.
fn fixture_complexes() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("circle-3", fixtures::circle_triangle()),
        ("circle-6", fixtures::circle_hexagon()),
        ("interval", fixtures::path_graph(4)),
        ("sphere", fixtures::sphere_tetra()),
        ("torus", fixtures::torus_seven()),
        ("moebius", fixtures::moebius_band()),
    ]
}

fn unit_chain(k: &SimplicialComplex, degree: usize, index: usize) -> Chain {
    let mut v = vec![BigInt::zero(); k.n_simplices(degree)];
    v[index] = BigInt::one();
    Chain::new(k, degree, v).expect("unit chain has the basis length")
}

// --- criterion 1 -----------------------------------------------------------

#[test]
fn criterion_01_differentials_square_to_zero() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checks = 0usize;
    let rings = [CoefficientRing::Z, CoefficientRing::Q, CoefficientRing::RZ];

    for (name, k) in fixture_complexes() {
        let top = k.dimension().expect("fixture complexes are nonempty");
        // matrix route: consecutive boundary matrices compose to zero
        for n in 0..top {
            let outer = boundary_matrix(&k, n).expect("degree in range");
            let inner = boundary_matrix(&k, n + 1).expect("degree in range");
            check!(
                failures,
                outer.mul(&inner).is_zero(),
                "{name}: boundary composition in degrees {n},{} is nonzero",
                n + 1
            );
            checks += 1;
        }
        // operator route: double coboundary of every basis cochain vanishes
        for n in 0..=top {
            for ring in rings {
                for i in 0..k.n_simplices(n) {
                    let mut c = Cochain::zero(&k, n, ring);
                    c.values[i] = match ring {
                        CoefficientRing::Z => BigRational::one(),
                        _ => BigRational::new(BigInt::one(), BigInt::from(3)),
                    };
                    check!(
                        failures,
                        c.coboundary(&k).coboundary(&k).is_zero(),
                        "{name}: double coboundary of basis cochain {i} in degree {n} is nonzero"
                    );
                    checks += 1;
                }
            }
        }
    }

    for (name, f) in fixtures::standard_pairs() {
        for n in 0..=3usize {
            // matrix route on the cone
            check!(
                failures,
                cone_differential(&f, n + 1).mul(&cone_differential(&f, n)).is_zero(),
                "{name}: cone differential composition in degree {n} is nonzero"
            );
            checks += 1;
            // operator route on basis cone cochains
            for i in 0..cone_dim(&f, n) {
                let mut v = vec![BigRational::zero(); cone_dim(&f, n)];
                v[i] = BigRational::new(BigInt::one(), BigInt::from(3));
                let c = ConeCochain::from_vector(&f, n, CoefficientRing::Q, &v)
                    .expect("unit vector has the cone length");
                check!(
                    failures,
                    c.coboundary(&f).coboundary(&f).is_zero(),
                    "{name}: double cone coboundary of basis cochain {i} in degree {n} is nonzero"
                );
                checks += 1;
            }
        }
    }

    finish(
        "01",
        "boundary, coboundary and cone differentials square to zero",
        format!("{checks} compositions"),
        failures,
        start,
        Some(5.0),
    );
}

// --- criterion 2 -----------------------------------------------------------

#[test]
fn criterion_02_cohomology_matches_brute_force_oracle() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut groups = 0usize;

    for (name, k) in fixture_complexes() {
        let top = k.dimension().expect("fixture complexes are nonempty");
        for n in 0..=top + 1 {
            let lib = cohomology(&k, n, CoefficientRing::Z);
            let fg = lib.as_fg().expect("integer coefficients give a presented group");
            let (free, torsion) = oracle_cohomology_z(&k, n);
            check!(
                failures,
                fg.free_rank == free && fg.torsion == torsion,
                "H^{n}({name}; Z): library says {lib}, oracle says rank {free} torsion {torsion:?}"
            );
            groups += 1;
        }
    }
    for (name, f) in fixtures::standard_pairs() {
        for n in 0..=3usize {
            let lib = relative_cohomology(&f, n, CoefficientRing::Z);
            let fg = lib.as_fg().expect("integer coefficients give a presented group");
            let (free, torsion) = oracle_relative_z(&f, n);
            check!(
                failures,
                fg.free_rank == free && fg.torsion == torsion,
                "relative H^{n} of {name}: library says {lib}, oracle says rank {free} torsion {torsion:?}"
            );
            groups += 1;
        }
    }

    // frozen expected groups for the landmark spaces
    for (what, got, want) in [
        (
            "H^1 of the triangle circle",
            cohomology(&fixtures::circle_triangle(), 1, CoefficientRing::Z).to_string(),
            "Z",
        ),
        (
            "H^2 of the tetrahedral sphere",
            cohomology(&fixtures::sphere_tetra(), 2, CoefficientRing::Z).to_string(),
            "Z",
        ),
        (
            "H^1 of the seven-vertex torus",
            cohomology(&fixtures::torus_seven(), 1, CoefficientRing::Z).to_string(),
            "Z^2",
        ),
        (
            "relative H^2 of the equator pair",
            relative_cohomology(&fixtures::pair_equator_in_sphere(), 2, CoefficientRing::Z)
                .to_string(),
            "Z^2",
        ),
    ] {
        check!(failures, got == want, "{what}: got {got}, want {want}");
        groups += 1;
    }

    finish(
        "02",
        "cohomology groups match an independent minor-gcd oracle",
        format!("{groups} groups compared"),
        failures,
        start,
        Some(10.0),
    );
}

// --- criterion 3 -----------------------------------------------------------

#[test]
fn criterion_03_long_sequences_are_exact() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut batteries = 0usize;

    for (name, f) in fixtures::standard_pairs() {
        for seq in [MixedSequence::Les1, MixedSequence::Les2, MixedSequence::Les3] {
            let report = verify_mixed_les(&f, 1, seq, 20, 2024);
            check!(
                failures,
                report.passed,
                "{} in degree 1 on {name} failed:\n{}",
                seq.as_str(),
                report.render_text()
            );
            batteries += 1;
        }
        let report = verify_les4(&f, 1, 20, 2024);
        check!(
            failures,
            report.passed,
            "reduced-quotient sequence in degree 1 on {name} failed:\n{}",
            report.render_text()
        );
        batteries += 1;
    }

    // degree-two spot checks where the target is two-dimensional
    for (name, f) in [
        ("equator-in-sphere", fixtures::pair_equator_in_sphere()),
        ("identity-sphere", fixtures::pair_identity_sphere()),
    ] {
        let report = verify_mixed_les(&f, 2, MixedSequence::Les3, 8, 2024);
        check!(
            failures,
            report.passed,
            "les3 in degree 2 on {name} failed:\n{}",
            report.render_text()
        );
        batteries += 1;
    }

    finish(
        "03",
        "long sequences verify exactly on every fixture pair",
        format!("{batteries} sequence batteries, 20 samples each at degree 1"),
        failures,
        start,
        Some(60.0),
    );
}

// --- criterion 4 -----------------------------------------------------------

#[test]
fn criterion_04_boundary_holonomy_equals_curvature_pairing() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = seeded_rng(404);
    let mut pairs_checked = 0usize;

    // absolute characters against boundaries of basis (p+1)-chains
    for (name, k) in fixture_complexes() {
        let top = k.dimension().expect("fixture complexes are nonempty");
        for p in 0..top {
            if k.n_simplices(p + 1) == 0 {
                continue;
            }
            for _ in 0..3 {
                let r = sample_absolute(&k, p, &mut rng);
                let omega = r.curvature();
                for i in 0..k.n_simplices(p + 1) {
                    let d = unit_chain(&k, p + 1, i);
                    let lhs = r.holonomy(&d.boundary(&k)).expect("boundaries are cycles");
                    let rhs = ModOne::new(omega.pair(&d));
                    check!(
                        failures,
                        lhs == rhs,
                        "{name}, degree {p}, basis chain {i}: holonomy {lhs} vs pairing {rhs}"
                    );
                    pairs_checked += 1;
                }
            }
        }
    }

    // relative characters against boundaries of basis disks on both sides
    for (name, f) in fixtures::standard_pairs() {
        let x = &f.target;
        let y = &f.source;
        for _ in 0..2 {
            let r = sample_relative(&f, 1, TypeTag::II, &mut rng);
            let omega = r.curvature();
            let rho = r.rho();
            let mut run = |d: Chain, d_prime: Chain, what: String| {
                let z = RelativeCycle::boundary_of(&f, &d, &d_prime)
                    .expect("basis disks give relative cycles");
                let lhs = rel_holonomy(&r, &z).expect("relative boundaries are relative cycles");
                let rhs = ModOne::new(omega.pair(&d) + rho.pair(&d_prime));
                check!(failures, lhs == rhs, "{what}: holonomy {lhs} vs pairing {rhs}");
                pairs_checked += 1;
            };
            for i in 0..x.n_simplices(2) {
                run(
                    unit_chain(x, 2, i),
                    Chain::zero(y, 1),
                    format!("{name}, target basis disk {i}"),
                );
            }
            for j in 0..y.n_simplices(1) {
                run(
                    Chain::zero(x, 2),
                    unit_chain(y, 1, j),
                    format!("{name}, source basis disk {j}"),
                );
            }
        }
    }

    check!(
        failures,
        pairs_checked >= 200,
        "only {pairs_checked} (character, chain) pairs were checked; need at least 200"
    );
    finish(
        "04",
        "holonomy of a boundary equals the curvature pairing mod 1",
        format!("{pairs_checked} (character, chain) pairs"),
        failures,
        start,
        None,
    );
}

// --- criterion 5 -----------------------------------------------------------

#[test]
fn criterion_05_gauge_moves_preserve_relative_holonomy() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = seeded_rng(505);
    let mut evaluations = 0usize;

    for (name, f) in fixtures::standard_pairs() {
        let x = &f.target;
        let y = &f.source;
        let basis = relative_cycle_basis(&f, 1);
        check!(
            failures,
            !basis.is_empty(),
            "{name}: expected at least one relative one-cycle"
        );

        // twenty random integer combinations of the cycle basis
        let cycles: Vec<RelativeCycle> = (0..20)
            .map(|_| {
                let mut cv = vec![BigInt::zero(); x.n_simplices(1)];
                let mut pv = vec![BigInt::zero(); y.n_simplices(0)];
                for b in &basis {
                    let a = BigInt::from(rng.gen_range(-3i64..=3));
                    for (t, v) in b.c.coefficients.iter().enumerate() {
                        let w = &cv[t] + &(&a * v);
                        cv[t] = w;
                    }
                    for (t, v) in b.c_prime.coefficients.iter().enumerate() {
                        let w = &pv[t] + &(&a * v);
                        pv[t] = w;
                    }
                }
                RelativeCycle::new(
                    &f,
                    Chain::new(x, 1, cv).expect("combination keeps the basis length"),
                    Chain::new(y, 0, pv).expect("combination keeps the basis length"),
                )
                .expect("integer combinations of cycles are cycles")
            })
            .collect();

        let mut r = sample_relative(&f, 1, TypeTag::II, &mut rng);
        let reference: Vec<ModOne> = cycles
            .iter()
            .map(|z| rel_holonomy(&r, z).expect("precomputed cycles are valid"))
            .collect();

        for step in 0..50 {
            let mv = sample_rel_gauge(&f, 1, &mut rng);
            r = match mv.apply(&r) {
                Ok(next) => next,
                Err(e) => {
                    failures.push(format!("{name}: gauge move {step} failed to apply: {e}"));
                    break;
                }
            };
            for (z, expected) in cycles.iter().zip(&reference) {
                let got = rel_holonomy(&r, z).expect("cycles stay valid");
                check!(
                    failures,
                    got == *expected,
                    "{name}: holonomy drifted from {expected} to {got} after {} gauge moves",
                    step + 1
                );
                evaluations += 1;
            }
        }
    }

    finish(
        "05",
        "fifty successive gauge moves leave relative holonomies unchanged",
        format!("{evaluations} holonomy evaluations"),
        failures,
        start,
        None,
    );
}

// --- criterion 6 -----------------------------------------------------------

#[test]
fn criterion_06_three_row_diagram_commutes() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut batteries = 0usize;

    for (name, f) in fixtures::standard_pairs() {
        let report = verify_thm_diagram(&f, 1, 20, 2024);
        check!(
            failures,
            report.passed,
            "three-row diagram in degree 1 on {name} failed:\n{}",
            report.render_text()
        );
        batteries += 1;
    }
    let report = verify_thm_diagram(&fixtures::pair_equator_in_sphere(), 2, 8, 2024);
    check!(
        failures,
        report.passed,
        "three-row diagram in degree 2 on equator-in-sphere failed:\n{}",
        report.render_text()
    );
    batteries += 1;

    finish(
        "06",
        "three-row diagram has exact rows and commuting squares",
        format!("{batteries} diagram batteries, 20 samples each at degree 1"),
        failures,
        start,
        Some(60.0),
    );
}

// --- criterion 7 -----------------------------------------------------------

#[test]
fn criterion_07_triviality_matches_cone_coboundaries() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = seeded_rng(707);
    let mut witnesses = 0usize;
    let mut certificates = 0usize;

    for (name, f) in fixtures::standard_pairs() {
        let trivial = RelCharacterRep::trivial(&f, 1, TypeTag::II);

        // direction one: gauge shifts of the trivial representative are
        // recognized, with a move that reproduces the data exactly
        for i in 0..20 {
            let mv = sample_rel_gauge(&f, 1, &mut rng);
            let shifted = mv.apply(&trivial).expect("gauge moves preserve validity");
            check!(
                failures,
                rel_characters_equal(&trivial, &shifted).expect("same pair and degree"),
                "{name}, sample {i}: gauge shift of the trivial representative was not recognized as equal"
            );
            match rel_coboundary_witness(&trivial, &shifted).expect("same pair and degree") {
                None => failures.push(format!(
                    "{name}, sample {i}: no witness found for a known gauge shift"
                )),
                Some(w) => {
                    let replayed = w.apply(&trivial).expect("witness moves preserve validity");
                    check!(
                        failures,
                        replayed.lift() == shifted.lift() && replayed.chern() == shifted.chern(),
                        "{name}, sample {i}: witness move does not reproduce the shifted data"
                    );
                    witnesses += 1;
                }
            }
        }

        // direction two: representatives with a nonintegral holonomy on an
        // explicit relative cycle are refused, with that cycle as the
        // certificate (gauge shifts can only change holonomy by integers)
        let basis = relative_cycle_basis(&f, 1);
        check!(
            failures,
            !basis.is_empty(),
            "{name}: expected at least one relative one-cycle"
        );
        for i in 0..20 {
            let z = &basis[i % basis.len()];
            let mut coords = z.c.coefficients.clone();
            coords.extend(z.c_prime.coefficients.iter().cloned());
            let (slot, a) = coords
                .iter()
                .enumerate()
                .find(|(_, v)| !v.is_zero())
                .map(|(t, v)| (t, v.clone()))
                .expect("basis cycles are nonzero");
            let k = BigInt::from(1 + (i as i64 % 2)); // 1 or 2, both coprime to 3
            let mut v = vec![BigRational::zero(); coords.len()];
            v[slot] = BigRational::new(k.clone(), BigInt::from(3) * a);
            let u = ConeCochain::from_vector(&f, 1, CoefficientRing::Q, &v)
                .expect("coordinate count matches the cone");
            let bad = make_relative(
                &f,
                u.x_part.clone(),
                u.y_part.clone().expect("degree one has a source block"),
                Cochain::zero(&f.target, 2, CoefficientRing::Z),
                Cochain::zero(&f.source, 1, CoefficientRing::Z),
                TypeTag::II,
            )
            .expect("rational lifts with zero Chern data are valid");

            let h = rel_holonomy(&bad, z).expect("basis cycles are valid");
            check!(
                failures,
                h == ModOne::new(BigRational::new(k.clone(), BigInt::from(3))),
                "{name}, sample {i}: expected holonomy {k}/3 on the certificate cycle, got {h}"
            );
            check!(
                failures,
                !rel_characters_equal(&trivial, &bad).expect("same pair and degree"),
                "{name}, sample {i}: nonintegral-holonomy representative compared equal to trivial"
            );
            check!(
                failures,
                rel_coboundary_witness(&trivial, &bad)
                    .expect("same pair and degree")
                    .is_none(),
                "{name}, sample {i}: witness produced for a representative with fractional holonomy"
            );
            certificates += 1;
        }
    }

    finish(
        "07",
        "trivial class membership coincides with shifted cone coboundaries",
        format!("{witnesses} witnesses and {certificates} refusal certificates"),
        failures,
        start,
        None,
    );
}

// --- criterion 8 -----------------------------------------------------------

#[test]
fn criterion_08_quotient_triviality_matches_membership_conjunction() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = seeded_rng(808);
    let mut trivial_count = 0usize;
    let mut nontrivial_count = 0usize;

    for (name, f) in fixtures::standard_pairs() {
        let trivial = RelCharacterRep::trivial(&f, 1, TypeTag::IIPrime);
        for i in 0..50 {
            let r = sample_relative(&f, 1, TypeTag::IIPrime, &mut rng);
            let coset = same_type_iv(&r, &trivial).expect("same pair and degree");
            let numerator = hbar_numerator_member(&r);
            let denominator = hbar_denominator_member(&r)
                .expect("integral-period representatives admit the comparison")
                .is_some();
            check!(
                failures,
                coset == (numerator && denominator),
                "{name}, sample {i}: coset equality {coset} vs membership conjunction \
                 ({numerator} && {denominator})"
            );
            if coset {
                trivial_count += 1;
            } else {
                nontrivial_count += 1;
            }
        }
    }

    check!(
        failures,
        trivial_count > 0 && nontrivial_count > 0,
        "outcome distribution is degenerate: {trivial_count} trivial, {nontrivial_count} nontrivial"
    );
    finish(
        "08",
        "coset triviality agrees with the two membership tests",
        format!("{} representatives ({trivial_count} trivial, {nontrivial_count} nontrivial)",
            trivial_count + nontrivial_count),
        failures,
        start,
        None,
    );
}

// --- criterion 9 -----------------------------------------------------------

#[test]
fn criterion_09_trivialisation_forms_lie_in_the_curvature_lattice() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = seeded_rng(909);
    let mut reps = 0usize;

    for (name, f) in fixtures::standard_pairs() {
        for tag in [TypeTag::II, TypeTag::IIPrime] {
            for i in 0..20 {
                let r = sample_relative(&f, 1, tag, &mut rng);
                let member = in_lambda_omega(&f, &r.curvature(), &r.rho())
                    .expect("curvature and trivialization form have matching degrees");
                check!(
                    failures,
                    member,
                    "{name}, tag {}, sample {i}: trivialization form escaped the curvature lattice",
                    tag.as_str()
                );
                reps += 1;
            }
        }
    }

    finish(
        "09",
        "every sampled representative keeps its form in the curvature lattice",
        format!("{reps} representatives"),
        failures,
        start,
        None,
    );
}

// --- criterion 10 ----------------------------------------------------------

#[test]
fn criterion_10_verification_reports_are_byte_identical() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let bin = env!("CARGO_BIN_EXE_delcoh");
    let ws = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/example_workspace.jsonl");

    let run = |format: &str| {
        std::process::Command::new(bin)
            .args([
                "verify",
                "--workspace",
                ws,
                "--map",
                "equator",
                "--degree",
                "1",
                "--which",
                "all",
                "--samples",
                "6",
                "--seed",
                "0",
                "--format",
                format,
            ])
            .env_remove("DELCOH_SEED")
            .output()
            .expect("verification binary runs")
    };

    for format in ["text", "json"] {
        let first = run(format);
        let second = run(format);
        check!(
            failures,
            first.status.code() == Some(0),
            "{format}: expected exit code 0, got {:?}; stderr:\n{}",
            first.status.code(),
            String::from_utf8_lossy(&first.stderr)
        );
        check!(
            failures,
            !first.stdout.is_empty(),
            "{format}: empty report on stdout"
        );
        check!(
            failures,
            first.stdout == second.stdout,
            "{format}: two identical invocations produced different bytes"
        );
        check!(
            failures,
            second.status.code() == first.status.code(),
            "{format}: exit codes differ between identical invocations"
        );
    }

    finish(
        "10",
        "fixed-seed verification reports are byte-identical across runs",
        "text and json formats, two runs each".to_string(),
        failures,
        start,
        None,
    );
}
