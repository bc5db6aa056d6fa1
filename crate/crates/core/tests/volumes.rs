use std::f64::consts::PI;

use conic_core::exactlin::rational::rvec;
use conic_core::library::cone_library;
use conic_core::volumes::*;
use conic_core::Cone;
use proptest::prelude::*;

fn z(a: f64, b: f64, se: f64) -> f64 {
    (a - b).abs() / se
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn planar_wedges_match_the_angle(a in (-4i64..=4, -4i64..=4), b in (-4i64..=4, -4i64..=4), seed in 0u64..1000) {
        let (u, v) = ([a.0 as f64, a.1 as f64], [b.0 as f64, b.1 as f64]);
        let cross = u[0] * v[1] - u[1] * v[0];
        prop_assume!(cross.abs() > 0.0);
        let theta = cross.abs().atan2(u[0] * v[0] + u[1] * v[1]);
        let c = Cone::from_generators(&[rvec(&[a.0, a.1]), rvec(&[b.0, b.1])], &[], 2).unwrap();
        let oracle = [0.5 - theta / (2.0 * PI), 0.5, theta / (2.0 * PI)];
        let exact = exact_iv(&c).unwrap();
        for k in 0..3 {
            prop_assert!((exact.values[k] - oracle[k]).abs() < 1e-12);
        }
        let est = estimate_iv(&c, &SampleConfig::new(20_000, seed)).unwrap();
        for k in 0..3 {
            prop_assert!(z(est.values[k], oracle[k], est.std_errors[k]) < 5.0, "k={} {} vs {}", k, est.values[k], oracle[k]);
        }
    }
}

#[test]
fn estimates_are_distributions_and_polar_reverses_them() {
    for (i, (name, c)) in cone_library().unwrap().iter().enumerate() {
        let cfg = SampleConfig::new(20_000, 50 + i as u64);
        let e = estimate_iv(c, &cfg).unwrap();
        assert!((e.values.iter().sum::<f64>() - 1.0).abs() < 1e-12, "{name}");
        let p = estimate_iv(&c.polar(), &cfg.derive("polar", 0)).unwrap();
        for k in 0..=c.d() {
            let se = (e.std_errors[k].powi(2) + p.std_errors[c.d() - k].powi(2)).sqrt();
            assert!(z(e.values[k], p.values[c.d() - k], se) < 5.0, "{name} k={k}");
        }
        // E|Π_C g|^2 + E|Π_C° g|^2 = d
        let se = (e.mean_sq_norm_se.powi(2) + p.mean_sq_norm_se.powi(2)).sqrt();
        assert!(z(e.mean_sq_norm + p.mean_sq_norm, c.d() as f64, se) < 5.0, "{name}");
    }
}

#[test]
fn exact_volumes_agree_with_sampling_on_the_library() {
    let mut recognized = 0;
    for (i, (name, c)) in cone_library().unwrap().iter().enumerate() {
        let Some(exact) = exact_iv(c) else { continue };
        recognized += 1;
        let e = estimate_iv(c, &SampleConfig::new(20_000, 90 + i as u64)).unwrap();
        for k in 0..=c.d() {
            assert!(z(e.values[k], exact.values[k], e.std_errors[k]) < 5.0, "{name} k={k}");
        }
    }
    assert!(recognized >= 12, "{recognized}");
}

#[test]
fn product_volumes_convolve() {
    let wedge = Cone::from_generators(&[rvec(&[1, 0]), rvec(&[1, 1])], &[], 2).unwrap();
    let a = exact_iv(&wedge).unwrap().values;
    let b = exact_iv(&Cone::orthant(1)).unwrap().values;
    let prod = exact_iv(&wedge.product(&Cone::orthant(1))).unwrap().values;
    for k in 0..=3 {
        let conv: f64 = (0..=k).filter(|i| *i < a.len() && k - i < b.len()).map(|i| a[i] * b[k - i]).sum();
        assert!((prod[k] - conv).abs() < 1e-12);
    }
}

#[test]
fn worker_count_changes_streams_not_validity() {
    let c = Cone::orthant(3);
    let one = estimate_iv(&c, &SampleConfig { workers: 1, ..SampleConfig::new(30_000, 3) }).unwrap();
    let four = estimate_iv(&c, &SampleConfig { workers: 4, ..SampleConfig::new(30_000, 3) }).unwrap();
    let again = estimate_iv(&c, &SampleConfig { workers: 4, ..SampleConfig::new(30_000, 3) }).unwrap();
    assert_eq!(four.to_json(), again.to_json());
    for k in 0..4 {
        let se = (one.std_errors[k].powi(2) + four.std_errors[k].powi(2)).sqrt();
        assert!(z(one.values[k], four.values[k], se) < 5.0);
    }
}

#[test]
fn haar_rotations_are_orthogonal_and_spread() {
    let mut rng = stream_rng(11, 0);
    let mut first_entry = 0.0;
    for _ in 0..2000 {
        let q = haar_rotation(3, &mut rng).unwrap();
        assert!(q.orthogonality_defect() < 1e-12);
        first_entry += q.apply(&[1.0, 0.0, 0.0])[0];
    }
    // a Haar column is uniform on the sphere, so its coordinates average to 0
    assert!((first_entry / 2000.0).abs() < 4.0 * (1.0f64 / 3.0 / 2000.0).sqrt());
}
