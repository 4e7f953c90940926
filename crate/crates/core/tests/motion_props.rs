use proptest::prelude::*;
use statechange::evolution::find_orthogonal_times;
use statechange::motion::{frame_count, lambda_min, pmin_check, shift_autocorrelation, MomentumState};
use statechange::{ToleranceProfile, WeightVector};

fn tol() -> ToleranceProfile {
    ToleranceProfile::default()
}

fn random_state() -> impl Strategy<Value = MomentumState> {
    prop::collection::vec((0.0f64..10.0, 0.01f64..1.0), 1..6).prop_map(|mut pw| {
        pw.sort_by(|a, b| a.0.total_cmp(&b.0));
        pw.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-6);
        let total: f64 = pw.iter().map(|x| x.1).sum();
        let (p, u): (Vec<f64>, Vec<f64>) = pw.into_iter().map(|(p, u)| (p, u / total)).unzip();
        MomentumState::new(p, u, 1.0, &ToleranceProfile { normalization: 1e-9, ..Default::default() }).unwrap()
    })
}

/// Lattice momenta `q * n` with weights symmetric about the middle, paired
/// with the same weights on the time grid.
fn lattice_pair() -> impl Strategy<Value = (MomentumState, WeightVector, f64)> {
    (prop::collection::vec(0.05f64..1.0, 1..5), any::<bool>(), 0.2f64..3.0).prop_map(|(half, odd, q)| {
        let mut w = half.clone();
        let tail: Vec<f64> = if odd { half.iter().rev().skip(1).copied().collect() } else { half.iter().rev().copied().collect() };
        w.extend(tail);
        let wv = WeightVector::from_raw(w, 0.0).unwrap();
        let p: Vec<f64> = (0..wv.len()).map(|n| q * n as f64).collect();
        let s = MomentumState::new(p, wv.weights().to_vec(), 1.0, &ToleranceProfile { normalization: 1e-9, ..Default::default() }).unwrap();
        (s, wv, q)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn frame_identity_within_four_ulps(er in 1e-3f64..1e3, v in 0.0f64..=0.999, dt in 1e-3f64..1e3) {
        let f = frame_count(er, v, dt).unwrap();
        prop_assert!(f.identity_ulps() <= 4.0, "{}", f.identity_ulps());
        prop_assert!(f.rate_ulps() <= 4.0, "{}", f.rate_ulps());
    }

    #[test]
    fn motional_rate_never_exceeds_energy(er in 1e-3f64..1e3, v in 0.0f64..0.999_999) {
        let f = frame_count(er, v, 1.0).unwrap();
        prop_assert!(f.motional_rate <= f.energy);
        prop_assert!(f.rest_count <= f.lab_count);
    }

    #[test]
    fn random_states_satisfy_pmin(s in random_state()) {
        let r = pmin_check(&s, &tol());
        prop_assert!(r.satisfied, "{r:?}");
    }

    #[test]
    fn lattice_states_satisfy_pmin_and_match_time_problem((s, w, q) in lattice_pair(), v in 0.1f64..0.9) {
        let r = pmin_check(&s, &tol());
        prop_assert!(r.satisfied, "{r:?}");
        // H* = v p has frequencies v q n / h, so period T = h / (v q).
        let t_int = w.len() as u64;
        let period = s.h() / (v * q);
        let first = find_orthogonal_times(&w, t_int, &tol()).first().map(|t| t * period / t_int as f64);
        match (lambda_min(&s, &tol()), first) {
            (Some(l), Some(tau)) => prop_assert!((l - v * tau).abs() <= 1e-9, "{l} vs {}", v * tau),
            (None, None) => {}
            (a, b) => prop_assert!(false, "lambda {a:?} vs tau {b:?}"),
        }
    }

    #[test]
    fn doubling_momenta_halves_lambda((s, _w, _q) in lattice_pair()) {
        let doubled = MomentumState::new(
            s.momenta().iter().map(|p| 2.0 * p).collect(),
            s.weights().to_vec(),
            s.h(),
            &tol(),
        ).unwrap();
        match (lambda_min(&s, &tol()), lambda_min(&doubled, &tol())) {
            (Some(a), Some(b)) => prop_assert!((b - a / 2.0).abs() < 1e-9),
            (None, None) => {}
            other => prop_assert!(false, "{other:?}"),
        }
    }

    #[test]
    fn autocorrelation_depends_on_displacement_only(s in random_state(), x in -5.0f64..5.0, v1 in 0.05f64..1.0, v2 in 0.05f64..1.0) {
        let a = shift_autocorrelation(&s, v1, x);
        let b = shift_autocorrelation(&s, v2, x);
        prop_assert!((a - b).norm() < 1e-9);
    }
}

#[test]
fn equal_pair_saturates_for_any_spacing() {
    for q in [0.1, 1.0, 3.7] {
        for h in [1.0, 2.0] {
            let s = MomentumState::uniform(vec![0.0, q], h).unwrap();
            let r = pmin_check(&s, &tol());
            assert!((r.product.unwrap() - h / 4.0).abs() < 1e-6 * h);
            assert!(r.equality);
        }
    }
}

#[test]
fn close_zero_pairs_are_resolved() {
    // Two zeros so close that the coarse grid sees a single minimum.
    let cases = [
        [0.17922163424504114, 0.012303234700050224, 0.21822280619427736, 0.18050464972126265],
        [0.1784888760726007, 0.014297211554193256, 0.21733058944084058, 0.17976664586473093],
    ];
    for half in cases {
        let w: Vec<f64> = half.iter().chain(half[..3].iter().rev()).copied().collect();
        let wv = WeightVector::from_raw(w.clone(), 0.0).unwrap();
        let times = find_orthogonal_times(&wv, 7, &tol());
        assert!(times.len() >= 2 && times[1] - times[0] < 0.13, "{times:?}");
        let p: Vec<f64> = (0..7).map(|n| 0.2 * n as f64).collect();
        let s = MomentumState::new(p, wv.weights().to_vec(), 1.0, &ToleranceProfile { normalization: 1e-9, ..tol() }).unwrap();
        // T = h / (v q) = 50 at v = 0.1, q = 0.2
        let l = lambda_min(&s, &tol()).unwrap();
        assert!((l - 0.1 * times[0] * 50.0 / 7.0).abs() < 1e-9, "{l} vs {}", times[0]);
    }
}
