mod common;

use common::{shrink_oracle, trajectory_key};
use proptest::prelude::*;
use rmps::optimizer::{build_probes, select_move, shrink_exponent, Direction};
use rmps::{round_point, Bounds, Rmps, TuningParams, UnitFn, UnitPoint};

fn interval() -> impl Strategy<Value = (f64, f64)> {
    (-1e3..1e3f64, 1e-3..1e3f64).prop_map(|(a, w)| (a, a + w))
}

fn boxed_point() -> impl Strategy<Value = (Bounds, Vec<f64>)> {
    prop::collection::vec((interval(), 0.0..=1.0f64), 1..8).prop_map(|v| {
        let lower: Vec<f64> = v.iter().map(|((a, _), _)| *a).collect();
        let upper: Vec<f64> = v.iter().map(|((_, b), _)| *b).collect();
        let z = v
            .iter()
            .map(|((a, b), t)| (a + t * (b - a)).min(*b))
            .collect();
        (Bounds::new(lower, upper).unwrap(), z)
    })
}

fn unit_point(max_dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(
        prop_oneof![
            3 => 0.0..=1.0f64,
            1 => Just(0.0),
            1 => Just(1.0),
            1 => 0.0..1e-5f64,
            1 => (0.0..1e-5f64).prop_map(|e| 1.0 - e),
        ],
        1..max_dim,
    )
}

proptest! {
    #[test]
    fn unit_map_round_trips((bounds, z) in boxed_point()) {
        let u = bounds.to_unit(&z).unwrap();
        prop_assert!(u.coords().iter().all(|c| (0.0..=1.0).contains(c)));
        let back = bounds.from_unit(&u).unwrap();
        for ((b, z), (lo, hi)) in back.iter().zip(&z).zip(bounds.lower().iter().zip(bounds.upper())) {
            prop_assert!((b - z).abs() <= 1e-12 * (hi - lo).max(1.0));
        }
    }

    #[test]
    fn unit_points_survive_the_box((bounds, _) in boxed_point(), seed in any::<u64>()) {
        let mut g = rmps::bench::StartGenerator::new(seed);
        let u: Vec<f64> = (0..bounds.dim()).map(|_| g.next_unit()).collect();
        let u = UnitPoint::new(u).unwrap();
        let back = bounds.to_unit(&bounds.from_unit(&u).unwrap()).unwrap();
        for (a, b) in back.coords().iter().zip(u.coords()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn unit_map_is_monotone((bounds, z) in boxed_point(), t in 0.0..=1.0f64) {
        let lower = bounds.lower().to_vec();
        let w: Vec<f64> = z.iter().zip(&lower).map(|(z, a)| a + t * (z - a)).collect();
        let uz = bounds.to_unit(&z).unwrap();
        let uw = bounds.to_unit(&w).unwrap();
        for (a, b) in uw.coords().iter().zip(uz.coords()) {
            prop_assert!(a <= b);
        }
    }

    #[test]
    fn rounding_is_idempotent(x in unit_point(10), digits in 0u32..10) {
        let p = UnitPoint::new(x).unwrap();
        let once = round_point(&p, digits);
        prop_assert_eq!(round_point(&once, digits), once.clone());
        prop_assert!(once.coords().iter().all(|c| (0.0..=1.0).contains(c)));
    }

    #[test]
    fn shrink_matches_oracle(
        log_s in -6.0..0.0f64,
        log_ratio in -6.0..0.0f64,
        rho in 1.01..5.0f64,
        phi in prop_oneof![Just(1e-6), Just(1e-8), Just(1e-3)],
    ) {
        let s = 10f64.powf(log_s);
        let gap = s * 10f64.powf(log_ratio);
        let got = shrink_exponent(gap, s, rho, phi);
        prop_assert_eq!(got, shrink_oracle(gap, s, rho, phi));
        if let Some(f) = got {
            let step = s / rho.powi(f);
            prop_assert!(step < gap && step > phi);
            prop_assert!(s / rho.powi(f - 1) >= gap);
        }
    }

    #[test]
    fn probes_stay_feasible(x in unit_point(8), y in -10.0..10.0f64, log_s in -5.99..0.0f64, rho in 1.01..4.0f64) {
        let s = 10f64.powf(log_s);
        let phi = 1e-6;
        let probes = build_probes(&x, y, s, rho, phi);
        prop_assert_eq!(probes.len(), 2 * x.len());
        for (k, p) in probes.iter().enumerate() {
            let expected_dir = if k < x.len() { Direction::Plus } else { Direction::Minus };
            prop_assert_eq!(p.direction, expected_dir);
            prop_assert_eq!(p.index, k % x.len());
            prop_assert_eq!(p.value, y);
            prop_assert!(p.local_step <= s);
            if p.is_active() {
                prop_assert!(p.local_step > phi);
                prop_assert!(p.coord > 0.0 && p.coord < 1.0, "probe at {}", p.coord);
                let delta = match p.direction {
                    Direction::Plus => p.coord - x[p.index],
                    Direction::Minus => x[p.index] - p.coord,
                };
                prop_assert!((delta - p.local_step).abs() <= 1e-15);
                let pt = p.point(&UnitPoint::new(x.clone()).unwrap());
                let changed = pt.coords().iter().zip(&x).filter(|(a, b)| a != b).count();
                prop_assert!(changed <= 1);
            } else {
                prop_assert_eq!(p.coord, x[p.index]);
            }
        }
    }

    #[test]
    fn skipped_probes_never_win(x in unit_point(6), vals in prop::collection::vec(-5.0..5.0f64, 12)) {
        let y = 0.0;
        let mut probes = build_probes(&x, y, 0.5, 2.0, 1e-6);
        for (p, v) in probes.iter_mut().zip(&vals) {
            if p.is_active() {
                p.value = *v;
            }
        }
        if let Some(w) = select_move(&probes, y) {
            prop_assert!(w.is_active());
            prop_assert!(w.value < y);
            let best = probes.iter().map(|p| p.value).fold(f64::INFINITY, f64::min);
            prop_assert_eq!(w.value, best);
        } else {
            prop_assert!(probes.iter().all(|p| p.value >= y));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn worker_count_does_not_change_the_search(
        c in prop::collection::vec(0.0..=1.0f64, 2..6),
        start in 0.0..=1.0f64,
    ) {
        let n = c.len();
        let obj = UnitFn::new(n, |u: &[f64]| {
            u.iter()
                .zip(&c)
                .enumerate()
                .map(|(i, (x, c))| (i as f64 + 1.0) * (x - c).powi(2) + 0.1 * (7.0 * x).sin())
                .sum()
        });
        let x0 = UnitPoint::new(vec![start; n]).unwrap();
        let params = TuningParams { phi: 1e-5, ..TuningParams::default() };
        let reference = Rmps::new(params).unwrap().minimize(&obj, &x0).unwrap();
        for w in [2, 3] {
            let r = Rmps::new(params).unwrap().with_workers(w).unwrap().minimize(&obj, &x0).unwrap();
            prop_assert_eq!(trajectory_key(&r), trajectory_key(&reference));
            prop_assert_eq!(&r.unit_solution, &reference.unit_solution);
        }
        prop_assert!(reference
            .trajectory
            .windows(2)
            .all(|w| w[1].best_value <= w[0].best_value));
    }
}
