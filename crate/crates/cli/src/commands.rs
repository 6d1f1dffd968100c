use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use qaoa_landscape::analytic::expect_total;
use qaoa_landscape::ensemble::{
    ci_at_heuristic_optimum, ensemble_energy_per_spin, ensemble_optimal, gamma_min_heuristic,
};
use qaoa_landscape::estimate::{
    self, estimate_informal, estimate_montanari, estimate_parisi, EstimateMethod, Ratio,
};
use qaoa_landscape::instance::{
    generate as generate_instance, parse_gset, serialize, CouplingLaw, FieldLaw, GraphKind,
};
use qaoa_landscape::landscape::{self, export_csv, export_pgm, scan, OptimizeOptions};
use qaoa_landscape::oracle::{ground_state, sample_energy_histogram, simulate_qaoa_p1, HARD_CAP};
use qaoa_landscape::refine::RefineOptions;
use qaoa_landscape::rng::SplitMix64;
use qaoa_landscape::{
    AngleGrid, Angles, EnsembleModel, GeneratorSpec, HeuristicCase, Instance, OptResult,
};

use crate::args::*;

fn load(path: &Path) -> Result<Instance> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_gset(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn write_out(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

fn grid_for(instance: &Instance, grid: &GridArgs) -> Result<AngleGrid> {
    grid.apply(AngleGrid::default_for(instance))
}

pub fn landscape(a: LandscapeArgs) -> Result<ExitCode> {
    let instance = load(&a.instance)?;
    let grid = grid_for(&instance, &a.grid)?;
    let mut l = scan(&instance, &grid)?;
    l.negate_for_display = a.negate;
    if a.normalize {
        let method = a.estimator.expect("clap enforces --estimator").into();
        l.normalizer = Some(estimate::estimate(&instance, method)?.value);
    }
    if a.csv.is_none() && a.pgm.is_none() {
        print!("{}", export_csv(&l));
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(path) = &a.csv {
        write_out(path, export_csv(&l).as_bytes())?;
    }
    if let Some(path) = &a.pgm {
        write_out(path, &export_pgm(&l)?)?;
    }
    let best = l.min_cell();
    println!(
        "min cell: beta {:.6} gamma {:.6} F {:.6}",
        best.beta, best.gamma, best.value
    );
    Ok(ExitCode::SUCCESS)
}

fn run_optimize(instance: &Instance, grid: &GridArgs, starts: usize) -> Result<OptResult> {
    let options = OptimizeOptions {
        grid: Some(grid_for(instance, grid)?),
        refine: RefineOptions {
            starts,
            ..RefineOptions::default()
        },
    };
    Ok(landscape::optimize(instance, &options)?)
}

pub fn optimize(a: OptimizeArgs) -> Result<ExitCode> {
    let instance = load(&a.instance)?;
    let r = run_optimize(&instance, &a.grid, a.starts)?;
    println!("beta_min         {:.10}", r.beta_min);
    println!("gamma_min        {:.10}", r.gamma_min);
    println!("f_min            {:.10}", r.f_min);
    println!("qaoa_expectation {:.10}", r.qaoa_expectation);
    if let Some(cut) = r.cut_value {
        println!("cut_value        {cut:.10}");
    }
    println!("iterations       {}", r.iterations);
    let mut line = format!(
        "{:.10} {:.10} {:.10} {:.10}",
        r.beta_min, r.gamma_min, r.f_min, r.qaoa_expectation
    );
    if let Some(cut) = r.cut_value {
        write!(line, " {cut:.10}").unwrap();
    }
    println!("{line}");
    Ok(ExitCode::SUCCESS)
}

pub fn oracle(a: OracleArgs) -> Result<ExitCode> {
    let instance = load(&a.instance)?;
    let angles = Angles::new(a.beta, a.gamma);
    let analytic = expect_total(&instance, angles).total;
    let simulated = simulate_qaoa_p1(&instance, angles, a.cap)?;
    println!("analytic  {analytic:.15e}");
    println!("simulated {simulated:.15e}");
    println!("abs_diff  {:.3e}", (analytic - simulated).abs());
    if let Some(bins) = a.histogram {
        let h = sample_energy_histogram(&instance, angles, bins, a.cap)?;
        println!("mean      {:.15e}", h.mean);
        for (k, mass) in h.mass.iter().enumerate() {
            println!("bin [{:.6}, {:.6}] {mass:.6e}", h.edges[k], h.edges[k + 1]);
        }
    }
    if a.ground_state {
        let g = ground_state(&instance)?;
        let spins: Vec<String> = g.spins.iter().map(|s| format!("{s:+}")).collect();
        println!("ground_energy {}", g.energy);
        println!("ground_spins  {}", spins.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

/// Random simple graph with integer couplings and fields in `[-w, w]`.
fn random_integer_instance(rng: &mut SplitMix64, n: usize, w: u32) -> Instance {
    let span = 2 * w as usize + 1;
    let density = rng.next_f64();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < density {
                edges.push((u, v, rng.below(span) as f64 - f64::from(w)));
            }
        }
    }
    let fields = (0..n)
        .map(|_| rng.below(span) as f64 - f64::from(w))
        .collect();
    Instance::new(n, fields, edges).expect("generated instance is valid")
}

pub fn verify(a: VerifyArgs) -> Result<ExitCode> {
    if a.n_max < 2 || a.n_max > HARD_CAP {
        bail!("--n-max must lie in [2, {HARD_CAP}]");
    }
    let mut rng = SplitMix64::new(a.seed);
    let mut passed = 0;
    for case in 0..a.cases {
        let n = 2 + rng.below(a.n_max - 1);
        let instance = random_integer_instance(&mut rng, n, a.max_weight);
        let mut worst = 0.0f64;
        for _ in 0..a.angles {
            let angles = Angles::new(
                std::f64::consts::PI * (rng.next_f64() - 0.5),
                std::f64::consts::PI * rng.next_f64(),
            );
            let diff = expect_total(&instance, angles).total
                - simulate_qaoa_p1(&instance, angles, HARD_CAP)?;
            worst = worst.max(diff.abs());
        }
        if worst <= a.tolerance {
            passed += 1;
        } else {
            println!(
                "case {case}: n={n} edges={} max |diff| = {worst:.3e}",
                instance.num_edges()
            );
        }
    }
    if passed == a.cases {
        println!("PASS {passed}/{}", a.cases);
        Ok(ExitCode::SUCCESS)
    } else {
        println!("FAIL {passed}/{}", a.cases);
        Ok(ExitCode::FAILURE)
    }
}

pub fn estimate(a: EstimateArgs) -> Result<ExitCode> {
    let method: EstimateMethod = a.method.into();
    let value = match &a.instance {
        Some(path) => estimate::estimate(&load(path)?, method)?.value,
        None => {
            let (v, e) = (
                a.v.expect("clap enforces --v"),
                a.e.expect("clap enforces --e"),
            );
            match method {
                EstimateMethod::Informal => {
                    let ssq = a.ssq.unwrap_or(e as f64);
                    if ssq < 0.0 {
                        bail!("--ssq must be nonnegative");
                    }
                    estimate_informal(v, ssq)
                }
                EstimateMethod::Montanari => estimate_montanari(v, e)?,
                EstimateMethod::Parisi => estimate_parisi(v, e),
            }
        }
    };
    println!("{value:.3}");
    Ok(ExitCode::SUCCESS)
}

fn model(m: &ModelArgs) -> Result<EnsembleModel> {
    let n = || m.n.context("this model needs --n");
    let d = || m.d.context("this model needs --d");
    let degree = || -> Result<usize> {
        let d = d()?;
        if d.fract() != 0.0 || d < 1.0 {
            bail!("--d must be a positive integer for regular models");
        }
        Ok(d as usize)
    };
    let sigma = m.sigma;
    Ok(match m.model {
        ModelKind::SkGaussian => EnsembleModel::SkGaussian { sigma },
        ModelKind::SkBimodal => EnsembleModel::SkBimodal { sigma, n: n()? },
        ModelKind::SkTrimodal => EnsembleModel::SkTrimodal { d: d()?, n: n()? },
        ModelKind::SkTrimodalLimit => EnsembleModel::SkTrimodalLimit { d: d()? },
        ModelKind::SkConstantField => EnsembleModel::SkConstantField {
            sigma,
            h: m.h.context("this model needs --h")?,
        },
        ModelKind::SkNormalField => EnsembleModel::SkNormalField { sigma },
        ModelKind::RegularGaussian => EnsembleModel::RegularGaussian {
            sigma,
            d: degree()?,
            n: n()?,
        },
        ModelKind::RegularGaussianField => EnsembleModel::RegularGaussianField {
            sigma,
            d: degree()?,
            n: n()?,
        },
    })
}

pub fn ensemble(a: EnsembleArgs) -> Result<ExitCode> {
    match a.action {
        EnsembleAction::Value {
            model: m,
            beta,
            gamma,
        } => {
            let v = ensemble_energy_per_spin(&model(&m)?, Angles::new(beta, gamma))?;
            println!("{v:.12}");
        }
        EnsembleAction::Optimal { model: m } => {
            let o = ensemble_optimal(&model(&m)?)?;
            println!("{:.9} {:.9} {:.9}", o.beta, o.gamma, o.value);
        }
        EnsembleAction::Heuristic { case, scale, r, d } => {
            let case = match case {
                CaseKind::EqualScale => HeuristicCase::EqualScale { h: scale, d },
                CaseKind::FieldDominant => HeuristicCase::FieldDominant {
                    r,
                    coupling: scale,
                    d,
                },
                CaseKind::CouplingDominant => HeuristicCase::CouplingDominant { r, h: scale, d },
            };
            let gammas: Vec<String> = gamma_min_heuristic(&case)?
                .iter()
                .map(|g| format!("{g:.9}"))
                .collect();
            println!("gamma_candidates {}", gammas.join(" "));
            match ci_at_heuristic_optimum(&case) {
                Ok(c) => println!("vertex_term {c:.9}"),
                Err(qaoa_landscape::Error::UnsupportedCase(_)) => println!("vertex_term NA"),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .with_context(|| format!("invalid number `{t}`"))
        })
        .collect()
}

fn parse_number(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .with_context(|| format!("invalid number `{s}`"))
}

fn coupling_law(s: &str) -> Result<CouplingLaw<f64>> {
    Ok(match s.split_once(':') {
        None if s == "pm1" => CouplingLaw::Choice(vec![-1.0, 1.0]),
        Some(("choice", list)) => CouplingLaw::Choice(parse_list(list)?),
        Some(("gaussian", sigma)) => CouplingLaw::Gaussian {
            sigma: parse_number(sigma)?,
        },
        _ => bail!("unknown coupling law `{s}`"),
    })
}

fn field_law(s: &str) -> Result<FieldLaw<f64>> {
    Ok(match s.split_once(':') {
        None if s == "none" => FieldLaw::None,
        None if s == "pm1" => FieldLaw::Choice(vec![-1.0, 1.0]),
        Some(("choice", list)) => FieldLaw::Choice(parse_list(list)?),
        Some(("constant", h)) => FieldLaw::Constant(parse_number(h)?),
        Some(("gaussian", sigma)) => FieldLaw::Gaussian {
            sigma: parse_number(sigma)?,
        },
        _ => bail!("unknown field law `{s}`"),
    })
}

pub fn gen(a: GenArgs) -> Result<ExitCode> {
    let kind = match a.kind {
        KindArg::Regular => GraphKind::Regular {
            degree: a.degree.expect("clap enforces --degree"),
        },
        KindArg::Complete => GraphKind::Complete,
        KindArg::Random => GraphKind::Random {
            edges: a.edges.expect("clap enforces --edges"),
        },
    };
    let spec = GeneratorSpec {
        kind,
        couplings: coupling_law(&a.couplings)?,
        fields: field_law(&a.fields)?,
        seed: a.seed,
    };
    let text = serialize(&generate_instance(&spec, a.n)?);
    match &a.out {
        Some(path) => write_out(path, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn lookup(named: &[(String, f64)], name: &str) -> Option<f64> {
    named.iter().rev().find(|(n, _)| n == name).map(|&(_, v)| v)
}

fn cell(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_string(), |v| format!("{v:.6}"))
}

/// `NA` when not requested, `undefined` for a zero denominator.
fn ratio_cell(r: Option<Ratio<f64>>) -> String {
    match r {
        None => "NA".to_string(),
        Some(Ratio::Undefined) => "undefined".to_string(),
        Some(Ratio::Defined(v)) => format!("{v:.6}"),
    }
}

pub fn bench(a: BenchArgs) -> Result<ExitCode> {
    let mut out = String::from(
        "name,vertices,edges,sum_of_weights,qaoa_expectation,estimate,ratio_exp,ratio_ising,cut_value,ratio_cut,wall_time_s_local\n",
    );
    for path in &a.instances {
        let name = path.file_stem().map_or_else(
            || path.display().to_string(),
            |s| s.to_string_lossy().into_owned(),
        );
        let instance = load(path)?;
        let start = Instant::now();
        let r = run_optimize(&instance, &a.grid, RefineOptions::<f64>::default().starts)?;
        let secs = start.elapsed().as_secs_f64();
        let report = estimate::ratio_report(
            &instance,
            &r,
            lookup(&a.best_known, &name),
            lookup(&a.best_known_cut, &name),
        );
        let time = if a.no_time {
            "NA".to_string()
        } else {
            format!("{secs:.3}")
        };
        writeln!(
            out,
            "{name},{},{},{},{},{},{},{},{},{},{time}",
            instance.n(),
            instance.num_edges(),
            cell(Some(instance.sum_of_weights())),
            cell(Some(r.qaoa_expectation)),
            cell(Some(report.estimate)),
            ratio_cell(Some(report.ratio_exp)),
            ratio_cell(report.ratio_ising),
            cell(r.cut_value),
            ratio_cell(report.ratio_cut),
        )
        .unwrap();
    }
    match &a.out {
        Some(path) => write_out(path, out.as_bytes())?,
        None => print!("{out}"),
    }
    Ok(ExitCode::SUCCESS)
}
