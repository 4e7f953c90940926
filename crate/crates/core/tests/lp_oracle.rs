//! Simplex results against brute-force enumeration of basic feasible
//! solutions.

use proptest::prelude::*;
use statechange::energy::{build_lp, build_lp_on_grid};
use statechange::lp::{solve_lp_with, PricingRule, SolverOptions};
use statechange::{check_certificate, minimize_energy, solve_lp, LpStatus, OrthogonalityProblem, SpectralSense, StandardFormLp, ToleranceProfile};

fn tol() -> ToleranceProfile {
    ToleranceProfile::default()
}

/// Row-reduces `[A | b]` and drops dependent rows. `None` if inconsistent.
fn independent_rows(a: &[Vec<f64>], b: &[f64]) -> Option<(Vec<Vec<f64>>, Vec<f64>)> {
    let n = a[0].len();
    let mut m: Vec<Vec<f64>> = a.iter().zip(b).map(|(r, &bi)| r.iter().copied().chain([bi]).collect()).collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m.len()).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())) else { break };
        if m[p][col].abs() < 1e-9 {
            continue;
        }
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank {
                let f = m[i][col] / m[rank][col];
                for k in 0..=n {
                    m[i][k] -= f * m[rank][k];
                }
            }
        }
        rank += 1;
    }
    if m[rank..].iter().any(|r| r[n].abs() > 1e-9) {
        return None;
    }
    m.truncate(rank);
    let rhs = m.iter().map(|r| r[n]).collect();
    Some((m.into_iter().map(|mut r| { r.pop(); r }).collect(), rhs))
}

fn solve_square(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let k = b.len();
    for c in 0..k {
        let p = (c..k).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[p][c].abs() < 1e-10 {
            return None;
        }
        m.swap(c, p);
        b.swap(c, p);
        for i in 0..k {
            if i != c {
                let f = m[i][c] / m[c][c];
                for j in c..k {
                    m[i][j] -= f * m[c][j];
                }
                b[i] -= f * b[c];
            }
        }
    }
    Some((0..k).map(|i| b[i] / m[i][i]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Minimum of `c.x` over all basic feasible solutions.
fn brute_force(lp: &StandardFormLp) -> Option<f64> {
    let a: Vec<Vec<f64>> = (0..lp.rows()).map(|r| lp.row(r).to_vec()).collect();
    let (a, b) = independent_rows(&a, lp.rhs())?;
    let k = b.len();
    let mut best: Option<f64> = None;
    for basis in combinations(lp.cols(), k) {
        let m: Vec<Vec<f64>> = a.iter().map(|r| basis.iter().map(|&j| r[j]).collect()).collect();
        if let Some(xb) = solve_square(m, b.clone()) {
            if xb.iter().all(|&x| x >= -1e-9) {
                let obj: f64 = basis.iter().zip(&xb).map(|(&j, x)| lp.cost()[j] * x).sum();
                best = Some(best.map_or(obj, |v: f64| v.min(obj)));
            }
        }
    }
    best
}

fn random_lp() -> impl Strategy<Value = StandardFormLp> {
    (1usize..4, 2usize..7).prop_flat_map(|(m, extra)| {
        let n = m + extra;
        (
            prop::collection::vec(0.0f64..5.0, n),
            prop::collection::vec(prop::collection::vec(-3.0f64..3.0, n), m),
            prop::collection::vec(0.0f64..2.0, n),
        )
            .prop_map(|(c, a, x0)| {
                let b: Vec<f64> = a.iter().map(|r| r.iter().zip(&x0).map(|(p, q)| p * q).sum()).collect();
                StandardFormLp::new(c, a, b).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn simplex_matches_vertex_enumeration(lp in random_lp()) {
        let sol = solve_lp(&lp, &tol()).unwrap();
        prop_assert_eq!(sol.status, LpStatus::Optimal);
        let oracle = brute_force(&lp).unwrap();
        prop_assert!((sol.objective - oracle).abs() <= 1e-7 * (1.0 + oracle.abs()), "{} vs {}", sol.objective, oracle);
        prop_assert!(check_certificate(&lp, &sol, &tol()).pass);
    }

    #[test]
    fn every_pricing_rule_agrees(lp in random_lp()) {
        let base = solve_lp(&lp, &tol()).unwrap().objective;
        for rule in [PricingRule::Bland, PricingRule::Dantzig, PricingRule::Devex] {
            let opts = SolverOptions { pricing: rule, ..SolverOptions::from_tolerances(&tol()) };
            let s = solve_lp_with(&lp, &opts).unwrap();
            prop_assert!((s.objective - base).abs() <= 1e-7 * (1.0 + base.abs()));
        }
    }

    #[test]
    fn energy_lp_matches_vertex_enumeration(iv in prop::collection::vec(1u64..4, 1..5)) {
        let p = OrthogonalityProblem::from_intervals(&iv).unwrap();
        prop_assume!(p.period() <= 9);
        let lp = build_lp(&p, SpectralSense::FromBelow);
        let oracle = brute_force(&lp).unwrap();
        let r = minimize_energy(&p, &tol()).unwrap();
        prop_assert!((r.e_min - 2.0 * oracle).abs() <= 1e-8, "{} vs {}", r.e_min, 2.0 * oracle);
    }
}

#[test]
fn infeasible_detected_like_oracle() {
    // x1 + x2 = 1 and x1 + x2 = 2 cannot both hold.
    let lp = StandardFormLp::new(vec![1.0, 1.0], vec![vec![1.0, 1.0], vec![1.0, 1.0]], vec![1.0, 2.0]).unwrap();
    assert_eq!(solve_lp(&lp, &tol()).unwrap().status, LpStatus::Infeasible);
    let a: Vec<Vec<f64>> = (0..2).map(|r| lp.row(r).to_vec()).collect();
    assert!(independent_rows(&a, lp.rhs()).is_none());
}

#[test]
fn unbounded_detected() {
    // minimise -x1 subject to x1 - x2 = 0
    let lp = StandardFormLp::new(vec![-1.0, 0.0], vec![vec![1.0, -1.0]], vec![0.0]).unwrap();
    assert_eq!(solve_lp(&lp, &tol()).unwrap().status, LpStatus::Unbounded);
}

#[test]
fn known_small_optima() {
    for (iv, e) in [(vec![1u64, 2], 2.0), (vec![1, 1, 2], 3.0), (vec![1, 1, 1, 2], 4.0), (vec![50, 51], 2.0)] {
        let p = OrthogonalityProblem::from_intervals(&iv).unwrap();
        let r = minimize_energy(&p, &tol()).unwrap();
        assert!((r.e_min - e).abs() < 1e-7, "{iv:?}: {}", r.e_min);
        if p.period() <= 9 {
            assert!((2.0 * brute_force(&build_lp(&p, SpectralSense::FromBelow)).unwrap() - e).abs() < 1e-8);
        }
    }
}

#[test]
fn doubling_the_grid_changes_nothing() {
    for iv in [vec![1u64, 2], vec![2, 3, 1], vec![1, 1, 3]] {
        let p = OrthogonalityProblem::from_intervals(&iv).unwrap();
        let t = p.period() as usize;
        let small = 2.0 * brute_force(&build_lp_on_grid(&p, SpectralSense::FromBelow, t)).unwrap();
        let big = solve_lp(&build_lp_on_grid(&p, SpectralSense::FromBelow, 2 * t), &tol()).unwrap();
        assert!((small - 2.0 * big.objective).abs() < 1e-8);
    }
}
