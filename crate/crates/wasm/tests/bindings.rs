use planar_switch_wasm::{classify_text, random_dwell_samples, random_system_text, worst_samples};

const ROTATING: &str = r#"{"A": [[-1, 1], [0, -1]], "B": [[-1, 1], [-1, -1]]}"#;
const STATIC: &str = r#"{"A": [[-0.1, 1], [0, -0.1]], "B": [[-0.1, -1], [1, -0.1]]}"#;

fn norms(samples: &[f64]) -> Vec<f64> {
    samples.chunks(4).map(|s| s[1].hypot(s[2])).collect()
}

#[test]
fn classify_reports_verdict() {
    let report: serde_json::Value = serde_json::from_str(&classify_text(ROTATING).unwrap()).unwrap();
    assert_eq!(report["verdict"], "GUAS");
    assert_eq!(report["certificate"]["type"], "RatioRotation");
    assert!(classify_text("{").unwrap_err().contains("malformed"));
}

#[test]
fn worst_trajectory_decays_for_guas() {
    let s = worst_samples(ROTATING, 1.0, 0.0, 6).unwrap();
    assert_eq!(s.len() % 4, 0);
    let n = norms(&s);
    assert!(n.last().unwrap() < &(1e-6 * n[0]));
    assert!(s.chunks(4).any(|c| c[3] == 0.0) && s.chunks(4).any(|c| c[3] == 1.0));
}

#[test]
fn static_instability_falls_back_to_constant_control() {
    let s = worst_samples(STATIC, 1.0, 0.5, 6).unwrap();
    assert!(s.chunks(4).all(|c| (c[3] - 0.75).abs() < 1e-12));
    let n = norms(&s);
    assert!(n.last().unwrap() > &(1e4 * n[0]));
}

#[test]
fn worst_trajectory_needs_collinear_fields() {
    let definite = r#"{"A": [[-1, 1], [0, -1]], "B": [[-1, -1], [1, -1]]}"#;
    assert!(worst_samples(definite, 1.0, 0.0, 4).unwrap_err().contains("Delta < 0"));
}

#[test]
fn random_dwell_is_seeded() {
    let a = random_dwell_samples(ROTATING, 7, 1.0, 0.0, 0.5, 10.0).unwrap();
    let b = random_dwell_samples(ROTATING, 7, 1.0, 0.0, 0.5, 10.0).unwrap();
    let c = random_dwell_samples(ROTATING, 8, 1.0, 0.0, 0.5, 10.0).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(random_dwell_samples(ROTATING, 7, 1.0, 0.0, -1.0, 10.0).is_err());
}

#[test]
fn random_systems_classify() {
    for seed in 0..200 {
        let doc = random_system_text(seed);
        classify_text(&doc).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
    }
}
