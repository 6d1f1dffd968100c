use std::f64::consts::{FRAC_PI_8, PI};

use proptest::prelude::*;
use qaoa_landscape::analytic::{evaluate, expect_total};
use qaoa_landscape::ensemble::ensemble_energy_per_spin;
use qaoa_landscape::estimate::{estimate_informal, estimate_montanari, estimate_parisi};
use qaoa_landscape::instance::{generate, parse_gset, serialize, CouplingLaw, FieldLaw, GraphKind};
use qaoa_landscape::oracle::{simulate_qaoa_p1, DEFAULT_CAP};
use qaoa_landscape::{Angles, EnsembleModel, GeneratorSpec, Instance};

fn instance_strategy() -> impl Strategy<Value = Instance> {
    (2usize..9).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let m = pairs.len();
        (
            Just(n),
            Just(pairs),
            prop::collection::vec(-3i32..=3, m),
            prop::collection::vec(-3i32..=3, n),
        )
            .prop_map(|(n, pairs, weights, fields)| {
                let edges = pairs
                    .into_iter()
                    .zip(weights)
                    .map(|((u, v), w)| (u, v, w as f64));
                Instance::new(n, fields.into_iter().map(f64::from).collect(), edges).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn analytic_matches_simulation(inst in instance_strategy(), beta in -PI..PI, gamma in -PI..PI) {
        let a = Angles::new(beta, gamma);
        let exact = simulate_qaoa_p1(&inst, a, DEFAULT_CAP).unwrap();
        prop_assert!((expect_total(&inst, a).total - exact).abs() < 1e-9);
        prop_assert!((evaluate(&inst, a) - exact).abs() < 1e-9);
    }

    #[test]
    fn expectation_is_bounded_by_weights(inst in instance_strategy(), beta in -PI..PI, gamma in 0.0..PI) {
        let bound: f64 = inst.edges().iter().map(|e| e.coupling.abs()).sum::<f64>()
            + inst.fields().iter().map(|h| h.abs()).sum::<f64>();
        prop_assert!(evaluate(&inst, Angles::new(beta, gamma)).abs() <= bound + 1e-9);
    }

    #[test]
    fn serialization_round_trips(inst in instance_strategy()) {
        let text = serialize(&inst);
        prop_assert_eq!(parse_gset::<f64>(&text).unwrap(), inst);
    }

    #[test]
    fn estimators_grow_with_edges(v in 4usize..400, frac in 0.0f64..1.0) {
        // The Montanari form peaks at e = v²/4, so monotonicity is only
        // asserted below that point.
        let cap = v * v / 4;
        let e = ((cap - 1) as f64 * frac) as usize;
        prop_assert!(estimate_informal(v, (e + 1) as f64) > estimate_informal(v, e as f64));
        prop_assert!(estimate_parisi::<f64>(v, e + 1) > estimate_parisi(v, e));
        prop_assert!(estimate_montanari::<f64>(v, e + 1).unwrap() > estimate_montanari(v, e).unwrap());
    }
}

#[test]
fn generated_instances_round_trip() {
    let kinds = [
        GraphKind::Regular { degree: 3 },
        GraphKind::Complete,
        GraphKind::Random { edges: 25 },
    ];
    for seed in 0..100u64 {
        let spec = GeneratorSpec {
            kind: kinds[seed as usize % 3],
            couplings: if seed % 2 == 0 {
                CouplingLaw::Choice(vec![-1.0, 1.0])
            } else {
                CouplingLaw::Gaussian { sigma: 0.7 }
            },
            fields: match seed % 4 {
                0 => FieldLaw::None,
                1 => FieldLaw::Choice(vec![-1.0, 1.0]),
                2 => FieldLaw::Constant(0.25),
                _ => FieldLaw::Gaussian { sigma: 1.5 },
            },
            seed,
        };
        let inst = generate(&spec, 12).unwrap();
        let text = serialize(&inst);
        let back = parse_gset::<f64>(&text).unwrap();
        assert_eq!(back, inst, "seed {seed}");
        assert_eq!(serialize(&back), text);
        assert_eq!(serialize(&generate(&spec, 12).unwrap()), text);
    }
}

#[test]
fn sk_instances_approach_the_ensemble_average() {
    let n = 200;
    let a = Angles::new(-FRAC_PI_8, 0.5);
    let seeds = 8;
    let mean: f64 = (0..seeds)
        .map(|seed| {
            let spec = GeneratorSpec {
                kind: GraphKind::Complete,
                couplings: CouplingLaw::Gaussian {
                    sigma: 1.0 / ((n - 1) as f64).sqrt(),
                },
                fields: FieldLaw::None,
                seed,
            };
            evaluate(&generate(&spec, n).unwrap(), a) / n as f64
        })
        .sum::<f64>()
        / seeds as f64;
    let ensemble = ensemble_energy_per_spin(&EnsembleModel::SkGaussian { sigma: 1.0 }, a).unwrap();
    assert!(
        (mean - ensemble).abs() < 0.02,
        "mean {mean} vs ensemble {ensemble}"
    );
}

#[test]
fn field_ensemble_matches_instances() {
    let n = 200;
    let a = Angles::new(-0.5, 0.35);
    let seeds = 8;
    let mean: f64 = (0..seeds)
        .map(|seed| {
            let spec = GeneratorSpec {
                kind: GraphKind::Complete,
                couplings: CouplingLaw::Gaussian {
                    sigma: 1.0 / ((n - 1) as f64).sqrt(),
                },
                fields: FieldLaw::Constant(1.0),
                seed,
            };
            evaluate(&generate(&spec, n).unwrap(), a) / n as f64
        })
        .sum::<f64>()
        / seeds as f64;
    let model = EnsembleModel::SkConstantField { sigma: 1.0, h: 1.0 };
    let ensemble = ensemble_energy_per_spin(&model, a).unwrap();
    assert!(
        (mean - ensemble).abs() < 0.02,
        "mean {mean} vs ensemble {ensemble}"
    );
}
