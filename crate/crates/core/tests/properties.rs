use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use squircle::exactmath::{bell_partial, factorial, falling_factorial_poly, gamma, stirling_first};
use squircle::pi::{pi_gamma, pi_monte_carlo};
use squircle::ptrig::{arccos_p, arcsin_p, civp_integrate, cos_p, cos_sin_p, sin_p};
use squircle::series::{arcsin_series, sin_series, PowerSeries};
use squircle::{PParam, QuadratureConfig};

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn pp(p: f64) -> PParam {
    PParam::new(p).unwrap()
}

/// `t` as a fraction of the period, for strategies independent of `p`.
fn scaled(p: f64, frac: f64) -> f64 {
    frac * pp(p).pi()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pythagorean_identity(p in 1.0f64..10.0, frac in -3.0f64..3.0) {
        let t = scaled(p, frac);
        let (c, s) = cos_sin_p(t, pp(p), &cfg()).unwrap();
        prop_assert!((s.abs().powf(p) + c.abs().powf(p) - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn bounded(p in 1.0f64..10.0, frac in -3.0f64..3.0) {
        let (c, s) = cos_sin_p(scaled(p, frac), pp(p), &cfg()).unwrap();
        prop_assert!(c.abs() <= 1.0 && s.abs() <= 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parity(p in 1.0f64..10.0, frac in -2.0f64..2.0) {
        let t = scaled(p, frac);
        let p = pp(p);
        let (c, s) = cos_sin_p(t, p, &cfg()).unwrap();
        let (cm, sm) = cos_sin_p(-t, p, &cfg()).unwrap();
        prop_assert!((sm + s).abs() <= 1e-10);
        prop_assert!((cm - c).abs() <= 1e-10);
    }

    #[test]
    fn periodicity(p in 1.0f64..10.0, frac in -1.0f64..1.0) {
        let t = scaled(p, frac);
        let p = pp(p);
        let a = sin_p(t, p, &cfg()).unwrap();
        let b = sin_p(t + 2.0 * p.pi(), p, &cfg()).unwrap();
        prop_assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn inverse_round_trip(p in 1.0f64..10.0, frac in 0.0f64..=0.5) {
        // past the diagonal sin_p is too flat for arcsin_p to recover t in
        // double precision, so the cosine branch is inverted there
        let t = scaled(p, frac);
        let p = pp(p);
        let (c, s) = cos_sin_p(t, p, &cfg()).unwrap();
        let back = if frac <= 0.25 {
            arcsin_p(s, p, &cfg()).unwrap()
        } else {
            arccos_p(c, p, &cfg()).unwrap()
        };
        prop_assert!((back - t).abs() <= 1e-8, "t = {t}, back = {back}");
    }

    #[test]
    fn complement(p in 1.0f64..10.0, frac in 0.0f64..=0.5) {
        let t = scaled(p, frac);
        let p = pp(p);
        let c = cos_p(t, p, &cfg()).unwrap();
        let s = sin_p(0.5 * p.pi() - t, p, &cfg()).unwrap();
        prop_assert!((c - s).abs() <= 1e-9);
    }

    #[test]
    fn gamma_recurrence(x in 0.01f64..30.0) {
        let r = gamma(x + 1.0).unwrap() / (x * gamma(x).unwrap());
        prop_assert!((r - 1.0).abs() <= 1e-11);
    }

    #[test]
    fn legendre_duplication(z in 0.1f64..10.0) {
        let lhs = gamma(2.0 * z).unwrap() * 2f64.powf(1.0 - 2.0 * z) * std::f64::consts::PI.sqrt();
        let rhs = gamma(z).unwrap() * gamma(z + 0.5).unwrap();
        prop_assert!((lhs / rhs - 1.0).abs() <= 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn pi_bounds(p in 1.0f64..1e4) {
        let v = pi_gamma(p).unwrap();
        prop_assert!((2.0..4.0).contains(&v), "pi_{p} = {v}");
    }
}

fn max_double_angle_defect(p: f64) -> f64 {
    let p = pp(p);
    let half = 0.5 * p.pi();
    (0..100)
        .map(|i| {
            let t = half * i as f64 / 99.0;
            let s2 = sin_p(2.0 * t, p, &cfg()).unwrap();
            let (c, s) = cos_sin_p(t, p, &cfg()).unwrap();
            (s2 - 2.0 * s * c).abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn arcsin_branch_saturates_near_quarter_period() {
    let p = pp(10.0);
    let t = 0.497 * p.pi();
    assert_eq!(sin_p(t, p, &cfg()).unwrap(), 1.0);
    let c = cos_p(t, p, &cfg()).unwrap();
    assert!((arccos_p(c, p, &cfg()).unwrap() - t).abs() < 1e-10);
}

#[test]
fn double_angle_holds_only_for_circle() {
    assert!(max_double_angle_defect(2.0) < 1e-9);
    for p in [1.0, 3.0, 4.0] {
        assert!(max_double_angle_defect(p) > 1e-2, "p = {p}");
    }
}

#[test]
fn quadrature_matches_ode() {
    for p in [2.0, 3.0, 4.0, 7.5] {
        let par = pp(p);
        let traj = civp_integrate(par, 0.5 * par.pi(), 1e-3).unwrap();
        for sample in traj.iter().step_by(25) {
            let (c, s) = cos_sin_p(sample.t, par, &cfg()).unwrap();
            assert!((s - sample.y).abs() < 1e-6, "p={p} t={}", sample.t);
            assert!((c - sample.x).abs() < 1e-6, "p={p} t={}", sample.t);
        }
    }
}

/// Sum over set partitions of `{1..n}` into `k` blocks of `Π x_{|block|}`.
fn bell_by_set_partitions(n: usize, k: usize, x: &[BigRational]) -> BigRational {
    // restricted growth strings enumerate each set partition once
    fn walk(i: usize, n: usize, k: usize, sizes: &mut Vec<usize>, x: &[BigRational], acc: &mut BigRational) {
        if i == n {
            if sizes.len() == k {
                let mut prod = BigRational::one();
                for &s in sizes.iter() {
                    prod *= &x[s - 1];
                }
                *acc += prod;
            }
            return;
        }
        if sizes.len() + (n - i) < k {
            return;
        }
        for b in 0..sizes.len() {
            sizes[b] += 1;
            walk(i + 1, n, k, sizes, x, acc);
            sizes[b] -= 1;
        }
        if sizes.len() < k {
            sizes.push(1);
            walk(i + 1, n, k, sizes, x, acc);
            sizes.pop();
        }
    }
    let mut acc = BigRational::zero();
    walk(0, n, k, &mut Vec::new(), x, &mut acc);
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bell_matches_set_partitions(
        n in 1usize..=9,
        kf in 0.0f64..1.0,
        nums in proptest::collection::vec(-5i64..=5, 9),
        dens in proptest::collection::vec(1i64..=4, 9),
    ) {
        let k = 1 + ((kf * n as f64) as usize).min(n - 1);
        let x: Vec<BigRational> = nums
            .iter()
            .zip(&dens)
            .take(n - k + 1)
            .map(|(&a, &b)| BigRational::new(a.into(), b.into()))
            .collect();
        prop_assert_eq!(bell_partial(n, k, &x).unwrap(), bell_by_set_partitions(n, k, &x));
    }
}

#[test]
fn stirling_rows() {
    for n in 0..=12usize {
        let poly = falling_factorial_poly(n);
        for k in 0..=n {
            assert_eq!(poly.coeff(k), stirling_first(n, k), "n={n} k={k}");
        }
        let unsigned: BigInt = (0..=n).map(|k| stirling_first(n, k).abs()).sum();
        assert_eq!(unsigned, factorial(n as u32));
    }
}

#[test]
fn compositional_inverse_to_order_21() {
    for p in 2..=5u32 {
        let f = arcsin_series(p, 21).unwrap();
        let g = sin_series(p, 21).unwrap();
        assert_eq!(f.compose(&g).unwrap(), PowerSeries::identity(21), "p={p}");
    }
}

#[test]
fn monte_carlo_spread_matches_reported_error() {
    let n = 100_000;
    let runs: Vec<_> = (0..50u64).map(|s| pi_monte_carlo(3.0, n, 1000 + s, 4).unwrap()).collect();
    let mean = runs.iter().map(|e| e.value).sum::<f64>() / runs.len() as f64;
    let var = runs.iter().map(|e| (e.value - mean).powi(2)).sum::<f64>() / (runs.len() - 1) as f64;
    let reported = runs.iter().map(|e| e.error).sum::<f64>() / runs.len() as f64;
    let ratio = var.sqrt() / reported;
    assert!((1.0 / 1.3..1.3).contains(&ratio), "ratio {ratio}");
}
