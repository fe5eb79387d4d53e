use rmps::bench::{self, registry, Dimension, StartGenerator, Suite};
use rmps::{optimize, optimize_convex, TuningParams};

fn dims(d: Dimension) -> Vec<usize> {
    match d {
        Dimension::Fixed(k) => vec![k],
        Dimension::Scalable => vec![1, 2, 5, 30],
    }
}

#[test]
fn registered_minimizers_attain_the_known_minimum() {
    for b in registry() {
        for d in dims(b.dimension) {
            let spec = bench::lookup(b.name, d, Suite::Standard).unwrap();
            let (Some(argmin), Some(min)) = (&spec.known_argmin, spec.known_min) else {
                continue;
            };
            assert!(spec.bounds.contains(argmin), "{} argmin outside box", b.name);
            assert!(spec.eval(argmin) <= min + 1e-6);
            // no nearby point does noticeably better
            let mut g = StartGenerator::new(d as u64);
            for _ in 0..200 {
                let z: Vec<f64> = argmin
                    .iter()
                    .map(|&v| v + 1e-3 * (2.0 * g.next_unit() - 1.0))
                    .collect();
                if spec.bounds.contains(&z) {
                    assert!(
                        spec.eval(&z) >= min - 1e-6,
                        "{} d={d} beaten at {z:?}",
                        b.name
                    );
                }
            }
        }
    }
}

#[test]
fn finite_on_random_points_of_every_domain() {
    let mut g = StartGenerator::new(11);
    for b in registry() {
        for suite in Suite::ALL {
            for d in dims(b.dimension) {
                let Ok(spec) = bench::lookup(b.name, d, suite) else {
                    continue;
                };
                for _ in 0..10_000 / dims(b.dimension).len() {
                    let z = g.point_in(&spec.bounds);
                    let v = spec.eval(&z);
                    assert!(v.is_finite(), "{} at {z:?}", b.name);
                    if matches!(b.name, "sphere" | "sum_squares" | "griewank" | "rastrigin") {
                        assert!(v >= 0.0);
                    }
                }
            }
        }
    }
}

#[test]
fn analytic_minima() {
    for d in [1, 3, 10, 100] {
        let zero = vec![0.0; d];
        assert_eq!(bench::evaluate_benchmark("sphere", &zero).unwrap(), 0.0);
        assert_eq!(bench::evaluate_benchmark("rastrigin", &zero).unwrap(), 0.0);
    }
    let v = bench::evaluate_benchmark("schwefel", &[420.9687; 10]).unwrap();
    assert!(v.abs() <= 1e-3, "{v}");
}

#[test]
fn suites_and_errors() {
    let s = bench::lookup("sphere", 1000, Suite::Boundary).unwrap();
    assert_eq!(s.bounds.lower(), &[0.0; 1000][..]);
    assert_eq!(s.bounds.upper(), &[5.12; 1000][..]);
    let a = bench::lookup("ackley", 2, Suite::Standard).unwrap();
    assert_eq!(a.bounds.upper(), &[32.768, 32.768]);
    assert!(a.known_min.unwrap().abs() < 1e-15);

    assert!(matches!(
        bench::lookup("nope", 2, Suite::Standard),
        Err(bench::BenchError::UnknownFunction(_))
    ));
    assert!(matches!(
        bench::lookup("branin", 3, Suite::Standard),
        Err(bench::BenchError::UnsupportedDimension { .. })
    ));
    assert!(matches!(
        bench::lookup("branin", 2, Suite::Highdim),
        Err(bench::BenchError::UnsupportedSuite { .. })
    ));
    assert!(bench::evaluate_benchmark("sphere", &[6.0]).is_err());
}

#[test]
fn sphere_and_sum_squares_in_both_modes() {
    let p = TuningParams::default();
    for seed in 0..10 {
        let s2 = bench::lookup("sphere", 2, Suite::Standard).unwrap();
        let r = optimize(&s2.objective(), &bench::random_unit_start(&s2.bounds, seed), &p).unwrap();
        assert!(r.value <= 1e-9, "sphere d=2 seed {seed}: {}", r.value);
    }
    let s4 = bench::lookup("sphere", 4, Suite::Standard).unwrap();
    let x0 = bench::random_unit_start(&s4.bounds, 0);
    assert!(optimize(&s4.objective(), &x0, &p).unwrap().value <= 1e-9);
    assert!(optimize_convex(&s4.objective(), &x0, &p).unwrap().value <= 1e-9);

    let q = bench::lookup("sum_squares", 20, Suite::Standard).unwrap();
    let x0 = bench::random_unit_start(&q.bounds, 0);
    assert!(optimize(&q.objective(), &x0, &p).unwrap().value <= 1e-7);
    assert!(optimize_convex(&q.objective(), &x0, &p).unwrap().value <= 1e-7);
}

#[test]
fn rastrigin_in_two_dimensions() {
    let spec = bench::lookup("rastrigin", 2, Suite::Standard).unwrap();
    let best = (0..10)
        .map(|seed| {
            optimize(
                &spec.objective(),
                &bench::random_unit_start(&spec.bounds, seed),
                &TuningParams::default(),
            )
            .unwrap()
            .value
        })
        .fold(f64::INFINITY, f64::min);
    assert!(best <= 1e-7, "{best}");
}
