//! Acceptance suite. Runs every criterion, prints one PASS/FAIL/SKIP line
//! each, and exits nonzero if any criterion fails.
//!
//! The G-set reproduction reads instance paths from `QAOA_G1` and `QAOA_G64`
//! and is skipped when they are unset or unreadable.

use std::f64::consts::{FRAC_PI_6, FRAC_PI_8, PI};
use std::process::ExitCode;
use std::time::Instant;

use qaoa_landscape::analytic::{
    evaluate, expect_edge, expect_edge_complete, expect_edge_maxcut, expect_edge_triangle_free,
    expect_field_only, expect_p5, expect_total,
};
use qaoa_landscape::ensemble::{ensemble_energy_per_spin, ensemble_optimal};
use qaoa_landscape::estimate::estimate_informal;
use qaoa_landscape::instance::{generate, parse_gset, CouplingLaw, FieldLaw, GraphKind};
use qaoa_landscape::landscape::{
    cut_from_energy, export_csv, export_pgm, optimize, scan, OptimizeOptions,
};
use qaoa_landscape::oracle::{ground_state, simulate_qaoa_p1, DEFAULT_CAP};
use qaoa_landscape::rng::SplitMix64;
use qaoa_landscape::{AngleGrid, Angles, EnsembleModel, GeneratorSpec, Instance};

type Criterion = (&'static str, fn() -> Outcome);

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}

/// Random simple graph on `n` vertices with integer couplings and fields in
/// `[-w, w]`; zero draws simply leave the edge or field out.
fn integer_instance(
    rng: &mut SplitMix64,
    n: usize,
    w: i64,
    density: f64,
    fields: bool,
) -> Instance {
    let draw = |rng: &mut SplitMix64| (rng.below(2 * w as usize + 1) as i64 - w) as f64;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < density {
                edges.push((u, v, draw(rng)));
            }
        }
    }
    let h = (0..n)
        .map(|_| if fields { draw(rng) } else { 0.0 })
        .collect();
    Instance::new(n, h, edges).expect("valid instance")
}

fn random_angles(rng: &mut SplitMix64) -> Angles {
    Angles::new(PI * (rng.next_f64() - 0.5), PI * rng.next_f64())
}

fn oracle_equivalence() -> Outcome {
    let mut rng = SplitMix64::new(1);
    let mut worst = 0.0f64;
    let mut count = 0;
    for _ in 0..100 {
        let n = 2 + rng.below(11);
        let density = rng.next_f64();
        let inst = integer_instance(&mut rng, n, 3, density, true);
        for _ in 0..20 {
            let a = random_angles(&mut rng);
            let analytic = expect_total(&inst, a).total;
            let simulated = simulate_qaoa_p1(&inst, a, DEFAULT_CAP).unwrap();
            worst = worst.max((analytic - simulated).abs());
            count += 1;
        }
    }
    check(
        worst <= 1e-9,
        format!("{count} evaluations, max |diff| = {worst:.2e}"),
    )
}

fn specializations() -> Outcome {
    let mut rng = SplitMix64::new(2);
    let mut failures = Vec::new();
    let mut record = |name: &str, a: f64, b: f64| {
        if !close(a, b, 1e-12) && !failures.contains(&name.to_string()) {
            failures.push(name.to_string());
        }
    };
    for _ in 0..50 {
        let n = 3 + rng.below(14);
        let a = random_angles(&mut rng);

        let unit = integer_instance(&mut rng, n, 1, 0.5, false);
        let maxcut = Instance::new(
            n,
            vec![0.0; n],
            unit.edges().iter().map(|e| (e.u, e.v, -1.0)),
        )
        .unwrap();
        for e in 0..maxcut.num_edges() {
            record(
                "max-cut",
                expect_edge_maxcut(&maxcut, e, a).unwrap(),
                expect_edge(&maxcut, e, a).unwrap(),
            );
        }

        let p5 = Instance::new(
            n,
            vec![1.0; n],
            unit.edges().iter().map(|e| (e.u, e.v, 1.0)),
        )
        .unwrap();
        record(
            "p5",
            expect_p5(&p5, a).unwrap().total,
            expect_total(&p5, a).total,
        );

        let h: Vec<f64> = (0..n).map(|_| 4.0 * rng.next_f64() - 2.0).collect();
        let fields = Instance::new(n, h, []).unwrap();
        record(
            "field-only",
            expect_field_only(&fields, a).unwrap().total,
            expect_total(&fields, a).total,
        );

        // Bipartite graphs have no triangles.
        let half = n / 2;
        let mut edges = Vec::new();
        for u in 0..half {
            for v in half..n {
                if rng.next_f64() < 0.5 {
                    edges.push((u, v, 2.0 * rng.next_f64() - 1.0));
                }
            }
        }
        let h: Vec<f64> = (0..n).map(|_| 2.0 * rng.next_f64() - 1.0).collect();
        let bipartite = Instance::new(n, h, edges).unwrap();
        for e in 0..bipartite.num_edges() {
            record(
                "triangle-free",
                expect_edge_triangle_free(&bipartite, e, a).unwrap(),
                expect_edge(&bipartite, e, a).unwrap(),
            );
        }

        let complete = generate(
            &GeneratorSpec {
                kind: GraphKind::Complete,
                couplings: CouplingLaw::Gaussian { sigma: 1.0 },
                fields: FieldLaw::Gaussian { sigma: 1.0 },
                seed: rng.next_u64(),
            },
            n,
        )
        .unwrap();
        for e in 0..complete.num_edges() {
            record(
                "complete",
                expect_edge_complete(&complete, e, a).unwrap(),
                expect_edge(&complete, e, a).unwrap(),
            );
        }
    }
    check(
        failures.is_empty(),
        if failures.is_empty() {
            "5 paths x 50 instances".into()
        } else {
            format!("mismatch in {failures:?}")
        },
    )
}

fn symmetries() -> Outcome {
    let mut rng = SplitMix64::new(3);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = 2 + rng.below(15);
        let inst = integer_instance(&mut rng, n, 3, 0.4, true);
        let scale = 1.0
            + inst.edges().iter().map(|e| e.coupling.abs()).sum::<f64>()
            + inst.fields().iter().map(|h| h.abs()).sum::<f64>();
        let f = |b: f64, g: f64| evaluate(&inst, Angles::new(b, g));
        for _ in 0..20 {
            let Angles { beta, gamma } = random_angles(&mut rng);
            let base = f(beta, gamma);
            for other in [
                f(0.0, gamma),
                f(beta, 0.0),
                f(-beta, -gamma) - base,
                f(beta + PI, gamma) - base,
                f(beta, gamma + PI) - base,
            ] {
                worst = worst.max(other.abs() / scale);
            }
        }
    }
    check(worst <= 1e-12, format!("max scaled deviation {worst:.2e}"))
}

fn sk_closed_forms() -> Outcome {
    let start = Instant::now();
    let opt = |m: EnsembleModel| ensemble_optimal(&m).unwrap();
    let g = opt(EnsembleModel::SkGaussian { sigma: 1.0 });
    let t = opt(EnsembleModel::SkTrimodalLimit { d: 1.0 });
    let c = opt(EnsembleModel::SkConstantField { sigma: 1.0, h: 1.0 });
    let nf = opt(EnsembleModel::SkNormalField { sigma: 1.0 });
    let ok = (g.beta + FRAC_PI_8).abs() < 1e-9
        && (g.gamma - 0.5).abs() < 1e-9
        && (g.value + 0.303265).abs() < 1e-6
        && (t.gamma - 0.452278).abs() < 1e-5
        && (t.value + 0.268281).abs() < 1e-5
        && (c.beta + 0.54854).abs() < 1e-3
        && (c.gamma - 0.3962).abs() < 1e-3
        && (c.value + 0.62791).abs() < 1e-3
        && (nf.beta + FRAC_PI_6).abs() < 1e-3
        && (nf.gamma - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-3
        && (nf.value + 0.557).abs() < 1e-3;
    let secs = start.elapsed().as_secs_f64();
    check(
        ok && secs < 5.0,
        format!(
            "trimodal ({:.6}, {:.6}), constant field ({:.5}, {:.5}, {:.5}), {secs:.2}s",
            t.gamma, t.value, c.beta, c.gamma, c.value
        ),
    )
}

fn bimodal_limit() -> Outcome {
    let mut rng = SplitMix64::new(5);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let a = Angles::new(PI * (rng.next_f64() - 0.5), 3.0 * rng.next_f64());
        let b = ensemble_energy_per_spin(
            &EnsembleModel::SkBimodal {
                sigma: 1.0,
                n: 1_000_000,
            },
            a,
        )
        .unwrap();
        let g = ensemble_energy_per_spin(&EnsembleModel::SkGaussian { sigma: 1.0 }, a).unwrap();
        worst = worst.max((b - g).abs());
    }
    check(worst <= 1e-3, format!("max |diff| = {worst:.2e}"))
}

fn estimator_table() -> Outcome {
    let start = Instant::now();
    let cases = [
        (800, 19176.0, 4621.745),
        (800, 1600.0, 1335.018),
        (2000, 19990.0, 7461.109),
        (800, 19976.0, 4717.167),
        (100_000, 250_000.0, 186574.382),
    ];
    let ok = cases
        .iter()
        .all(|&(n, ssq, want)| format!("{:.3}", estimate_informal(n, ssq)) == format!("{want:.3}"));
    check(
        ok && start.elapsed().as_secs_f64() < 1.0,
        format!("{} table entries", cases.len()),
    )
}

fn gset_reproduction() -> Outcome {
    let load = |var: &str| {
        let path = std::env::var(var).ok()?;
        let text = std::fs::read_to_string(path).ok()?;
        parse_gset::<f64>(&text).ok()
    };
    let (Some(g1), Some(g64)) = (load("QAOA_G1"), load("QAOA_G64")) else {
        return Outcome::Skip("set QAOA_G1 and QAOA_G64 to G-set files to run".into());
    };
    let mut details = Vec::new();
    let mut ok = true;
    for (name, inst, want, tol, cut) in [
        ("G1", &g1, 1482.034, 0.05, 10329.017),
        ("G64", &g64, 6235.328, 0.2, 3381.164),
    ] {
        let r = optimize(inst, &OptimizeOptions::default()).unwrap();
        let got_cut = cut_from_energy(inst.sum_of_weights(), r.f_min);
        // The cut moves by half as much as the energy.
        ok &= (r.qaoa_expectation - want).abs() <= tol && (got_cut - cut).abs() <= tol / 2.0;
        details.push(format!("{name} {:.3} cut {got_cut:.3}", r.qaoa_expectation));
    }
    check(ok, details.join(", "))
}

/// γ_min within the first window `γ ∈ [0, π/4]`. Complete and triangle-free
/// ±1 instances have a mirror optimum near `π/2 − γ_min` that can tie or,
/// with a few triangles, win by a hair; comparing across sizes needs one
/// representative.
fn first_gamma_min(inst: &Instance) -> f64 {
    let grid = AngleGrid::new((-PI / 2.0, PI / 2.0), (0.0, PI / 4.0), 101, 201).unwrap();
    let options = OptimizeOptions {
        grid: Some(grid),
        ..OptimizeOptions::default()
    };
    optimize(inst, &options).unwrap().gamma_min
}

fn unit_instance(kind: GraphKind, n: usize, seed: u64) -> Instance {
    let spec = GeneratorSpec {
        kind,
        couplings: CouplingLaw::Choice(vec![-1.0, 1.0]),
        fields: FieldLaw::None,
        seed,
    };
    generate(&spec, n).unwrap()
}

fn gamma_scaling() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for n in [11usize, 100] {
        let scaled: Vec<f64> = (0..10)
            .map(|seed| {
                (n as f64).sqrt() * first_gamma_min(&unit_instance(GraphKind::Complete, n, seed))
            })
            .collect();
        let (lo, hi) = min_max(&scaled);
        ok &= lo >= 0.45 && hi <= 0.58;
        details.push(format!("SK n={n} sqrt(n)*gamma_min in [{lo:.4}, {hi:.4}]"));
    }
    let regular =
        |n, seed| first_gamma_min(&unit_instance(GraphKind::Regular { degree: 3 }, n, seed));
    let worst = (0..10)
        .map(|seed| (regular(100, seed) - regular(14, seed)).abs())
        .fold(0.0, f64::max);
    ok &= worst <= 0.05;
    details.push(format!(
        "3-regular max |gamma_min(100) - gamma_min(14)| = {worst:.4}"
    ));
    check(ok, details.join("; "))
}

fn min_max(xs: &[f64]) -> (f64, f64) {
    xs.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

fn lower_bound() -> Outcome {
    let mut rng = SplitMix64::new(9);
    let mut violations = 0;
    for _ in 0..50 {
        let n = 2 + rng.below(11);
        let fields = rng.next_f64() < 0.5;
        let inst = integer_instance(&mut rng, n, 3, 0.5, fields);
        let r = optimize(&inst, &OptimizeOptions::default()).unwrap();
        let ground = ground_state(&inst).unwrap().energy;
        if r.f_min < ground - 1e-9 {
            violations += 1;
        }
    }
    check(
        violations == 0,
        format!("{violations} violations in 50 instances"),
    )
}

fn determinism() -> Outcome {
    let inst = generate(
        &GeneratorSpec {
            kind: GraphKind::Regular { degree: 3 },
            couplings: CouplingLaw::Choice(vec![-1.0, 1.0]),
            fields: FieldLaw::Choice(vec![-1.0, 1.0]),
            seed: 11,
        },
        60,
    )
    .unwrap();
    let grid = AngleGrid::new((-PI / 2.0, PI / 2.0), (0.0, PI), 41, 83).unwrap();
    let render = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let l = scan(&inst, &grid).unwrap();
            (export_csv(&l), export_pgm(&l).unwrap())
        })
    };
    let runs = [render(1), render(1), render(4), render(4)];
    check(
        runs.iter().all(|r| *r == runs[0]),
        "1 and 4 threads, two runs each".into(),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("specialization equality", specializations),
        ("symmetry suite", symmetries),
        ("SK closed forms", sk_closed_forms),
        ("bimodal to gaussian limit", bimodal_limit),
        ("estimator table values", estimator_table),
        ("G-set reproduction", gset_reproduction),
        ("gamma_min scaling", gamma_scaling),
        ("lower bound", lower_bound),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Outcome::Skip(d) => ("SKIP", d),
        };
        println!("{tag} {:>2} {name}: {detail} [{secs:.2}s]", i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
