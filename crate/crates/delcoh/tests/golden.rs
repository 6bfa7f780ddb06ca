//! Frozen-output test: the seed-0 samplers and a seed-0 verification
//! report must render byte-for-byte the same as the checked-in snapshot.
//!
//! Regenerate the snapshot after an intentional change with
//! `UPDATE_GOLDEN=1 cargo test -p delcoh --test golden`.

use delcoh::fixtures;
use delcoh::sequences::{sample_character, verify_mixed_les, MixedSequence, SampleKind,
    SampledCharacter};
use delcoh::simplicial::Cochain;
use std::fmt::Write as _;

const GOLDEN_PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden_seed0.txt");

fn render_cochain(out: &mut String, label: &str, c: &Cochain) {
    let vals: Vec<String> = c.values.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(
        out,
        "  {label}: degree {} ring {} [{}]",
        c.degree,
        c.ring.as_str(),
        vals.join(", ")
    );
}

fn render_sample(kind: SampleKind, sampled: &SampledCharacter) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "sample {kind:?} seed 0");
    match sampled {
        SampledCharacter::Absolute(r) => {
            let _ = writeln!(out, "  absolute, degree {}", r.degree());
            render_cochain(&mut out, "lift", r.lift());
            render_cochain(&mut out, "chern", r.chern());
        }
        SampledCharacter::Relative(r) => {
            let _ = writeln!(out, "  relative, degree {}, tag {}", r.degree(), r.tag().as_str());
            render_cochain(&mut out, "lift x", &r.lift().x_part);
            if let Some(y) = &r.lift().y_part {
                render_cochain(&mut out, "lift y", y);
            }
            render_cochain(&mut out, "chern x", &r.chern().x_part);
            if let Some(y) = &r.chern().y_part {
                render_cochain(&mut out, "chern y", y);
            }
        }
    }
    out
}

fn current_rendering() -> String {
    let f = fixtures::pair_equator_in_sphere();
    let mut out = String::new();
    for kind in [
        SampleKind::AbsoluteX,
        SampleKind::AbsoluteY,
        SampleKind::TypeI,
        SampleKind::TypeII,
        SampleKind::TypeIIPrime,
    ] {
        out.push_str(&render_sample(kind, &sample_character(&f, 1, kind, 0)));
    }
    out.push('\n');
    out.push_str(&verify_mixed_les(&f, 1, MixedSequence::Les2, 4, 0).render_text());
    out
}

#[test]
fn seed_zero_outputs_match_the_snapshot() {
    let current = current_rendering();
    if std::env::var("UPDATE_GOLDEN").is_ok() {
        std::fs::write(GOLDEN_PATH, &current).expect("snapshot is writable");
        return;
    }
    let frozen = std::fs::read_to_string(GOLDEN_PATH)
        .expect("snapshot file exists; regenerate with UPDATE_GOLDEN=1");
    assert_eq!(
        current, frozen,
        "seed-0 output changed; if intentional, regenerate with UPDATE_GOLDEN=1"
    );
}

#[test]
fn rendering_is_stable_within_a_process() {
    assert_eq!(current_rendering(), current_rendering());
}
