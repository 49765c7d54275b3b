use super::*;
use crate::boolfn::{self, Verdict};

const MAT: u64 = 1 << 26;
const ENUM: u64 = 1 << 22;

fn theorem1(name: &str) -> Theorem1Params {
    match preset(name).unwrap() {
        Preset::Theorem1(p) => p,
        _ => panic!("{name} is not an AG preset"),
    }
}

#[test]
fn example1_validates_and_claims() {
    let p = theorem1("example1");
    assert!(validate_params(&p).passed());
    let c = claimed_parameters(&p).unwrap();
    assert_eq!(c, Claimed { l: Some(5), k: Some(0), t: Some(0) });
}

#[test]
fn equal_divisors_break_disjointness() {
    let mut p = theorem1("example1");
    p.u[1] = p.u[0].clone();
    p.u_prime[1] = p.u_prime[0].clone();
    let r = validate_params(&p);
    assert!(!r.get("U'-and-H-disjoint").unwrap().passed);
    assert!(matches!(claimed_parameters(&p), Err(PipelineError::Validation(_))));
}

#[test]
fn oversized_h_breaks_degree_window() {
    let mut p = theorem1("example1");
    let pts = p.curve.rational_places();
    p.places_prime = pts[..4].to_vec();
    p.places = pts[..4].to_vec();
    p.h = crate::curve::Divisor::single(pts[4].clone(), 1);
    let r = validate_params(&p);
    assert!(!r.get("deg-H-plus-max-U'-below-n'").unwrap().passed);
}

#[test]
fn example2_claims_follow_the_formulas() {
    // n = 7 on the genus-one curve: l = 2 - 2 + 1, k = 7 - 2 - 1, t = 7 - 4 - 1
    let p = example_2(7, 1, 2, 2);
    assert_eq!(
        claimed_parameters(&p).unwrap(),
        Claimed { l: Some(1), k: Some(4), t: Some(2) }
    );
    let r = validate_params(&p);
    assert!(r.get("deg-H-above-2g'-2").unwrap().passed);
}

fn example_2(n: usize, m: usize, t: i64, tp: i64) -> Theorem1Params {
    theorem1(&format!("example2({n},{m},{t},{tp})"))
}

#[test]
fn full_point_set_leaves_no_support() {
    assert!(matches!(
        preset("example2(9,1,2,2)"),
        Err(PipelineError::InsufficientPlaces { needed: 2, available: 0 })
    ));
    assert!(matches!(preset("example3"), Err(PipelineError::UnknownPreset(_))));
}

#[test]
fn tiny_instance_shape() {
    let p = theorem1("example1-tiny");
    let c = build_theorem1(&p, "example1-tiny", ENUM).unwrap();
    assert_eq!(c.function.inputs(), 12);
    assert_eq!(c.function.outputs(), 1);
    assert_eq!(c.certificate.claimed, Claimed { l: Some(2), k: Some(1), t: Some(1) });
    assert_eq!(c.q[0].rows(), 4);
    assert!(c
        .certificate
        .audits
        .iter()
        .filter(|a| a.name.starts_with("image-in-coset"))
        .all(|a| a.verdict == Verdict::Pass));
}

#[test]
fn ks_repetition() {
    let Preset::KurosawaSatoh(c1, c2) = preset("ks-repetition").unwrap() else { panic!() };
    let (f, cert) = kurosawa_satoh(&c1, &c2, "ks-repetition", ENUM).unwrap();
    assert_eq!(f.inputs(), 6);
    assert_eq!(cert.claimed, Claimed { l: Some(1), k: Some(2), t: None });
    let v = certify(&f, &cert.claimed, MAT, ENUM).unwrap();
    assert!(v.l.unwrap() >= 1 && v.k.unwrap() >= 2);
}

#[test]
fn params_file_round_trip() {
    let p = theorem1("example1");
    let file = p.to_file();
    let json = serde_json::to_string(&file).unwrap();
    let back = Theorem1Params::from_file(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back.to_file(), file);
    assert_eq!(file.u[0][0].place, "x^2+x+w");
}

#[test]
fn conventions_hash_is_stable_hex() {
    let h = conventions_hash();
    assert_eq!(h.len(), 64);
    assert_eq!(h, conventions_hash());
}

#[test]
fn carlet_implies_brute_force_on_tiny_instance() {
    let p = theorem1("example1-tiny");
    let c = build_theorem1(&p, "example1-tiny", ENUM).unwrap();
    let mm = c.function.structure().unwrap();
    let tables = c.function.materialize(MAT).unwrap();
    for l in 1..=3 {
        for k in 0..=2 {
            let (a, b) = carlet_check_vectorial(mm, l, k, ENUM).unwrap();
            if a && b {
                let f = boolfn::combination(&tables, 1);
                assert_eq!(boolfn::pc_order_check(&f, l, k, ENUM), Verdict::Pass, "l={l} k={k}");
            }
        }
    }
}

#[test]
fn tiny_instance_with_h_is_fully_verified() {
    let p = theorem1("example1-tiny-h");
    let c = build_theorem1(&p, "example1-tiny-h", ENUM).unwrap();
    assert_eq!(c.certificate.claimed, Claimed { l: Some(2), k: Some(1), t: Some(0) });
    let v = certify(&c.function, &c.certificate.claimed, MAT, ENUM).unwrap();
    let mut cert = c.certificate.clone();
    cert.verified = v;
    assert_eq!(cert.verdict(), Verdict::Pass, "{:?}", cert.verified);
    assert_eq!(cert.audits_verdict(), Verdict::Pass);
}
