//! Angle grids, landscape scans, optimal-angle search and export.

use std::fmt::Write;

use rayon::prelude::*;

use crate::analytic::{evaluate, Angles, GammaProfile};
use crate::error::{Error, Result};
use crate::instance::IsingInstance;
use crate::refine::{multistart, Candidate, RefineOptions};
use crate::scalar::Scalar;

/// Largest grid `scan` will allocate.
pub const MAX_CELLS: usize = 100_000_000;

/// Rectangular grid with inclusive endpoints on both axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleGrid<T> {
    pub beta_min: T,
    pub beta_max: T,
    pub gamma_min: T,
    pub gamma_max: T,
    pub beta_steps: usize,
    pub gamma_steps: usize,
}

impl<T: Scalar> AngleGrid<T> {
    pub fn new(
        (beta_min, beta_max): (T, T),
        (gamma_min, gamma_max): (T, T),
        beta_steps: usize,
        gamma_steps: usize,
    ) -> Result<Self> {
        let grid = Self {
            beta_min,
            beta_max,
            gamma_min,
            gamma_max,
            beta_steps,
            gamma_steps,
        };
        grid.validate()?;
        Ok(grid)
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.beta_min, self.beta_max, self.gamma_min, self.gamma_max]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::Parameter("grid bounds must be finite".into()));
        }
        if self.beta_max <= self.beta_min || self.gamma_max <= self.gamma_min {
            return Err(Error::Parameter("grid needs max > min on both axes".into()));
        }
        if self.beta_steps < 2 || self.gamma_steps < 2 {
            return Err(Error::Parameter(
                "grid needs at least 2 steps per axis".into(),
            ));
        }
        Ok(())
    }

    /// Default window: a full β period and one integer-weight γ period, or
    /// the quarter-size window that suffices for ±1 Max-Cut instances.
    pub fn default_for(instance: &IsingInstance<T>) -> Self {
        let pi = T::PI();
        let (beta, gamma) = if instance.is_unit_maxcut() {
            (pi / T::lit(4.0), pi / T::lit(2.0))
        } else {
            (pi / T::lit(2.0), pi)
        };
        Self {
            beta_min: -beta,
            beta_max: beta,
            gamma_min: T::zero(),
            gamma_max: gamma,
            beta_steps: 101,
            gamma_steps: 201,
        }
    }

    pub fn cells(&self) -> usize {
        self.beta_steps.saturating_mul(self.gamma_steps)
    }

    pub fn beta_spacing(&self) -> T {
        (self.beta_max - self.beta_min) / T::count(self.beta_steps - 1)
    }

    pub fn gamma_spacing(&self) -> T {
        (self.gamma_max - self.gamma_min) / T::count(self.gamma_steps - 1)
    }

    pub fn beta(&self, row: usize) -> T {
        if row + 1 == self.beta_steps {
            self.beta_max
        } else {
            self.beta_min + T::count(row) * self.beta_spacing()
        }
    }

    pub fn gamma(&self, col: usize) -> T {
        if col + 1 == self.gamma_steps {
            self.gamma_max
        } else {
            self.gamma_min + T::count(col) * self.gamma_spacing()
        }
    }
}

/// `F(β_r, γ_c)` over a grid, rows indexed by β.
#[derive(Debug, Clone, PartialEq)]
pub struct Landscape<T> {
    pub grid: AngleGrid<T>,
    /// Row-major raw values `F(β_r, γ_c)`.
    pub values: Vec<T>,
    /// Export `-F` instead of `F`.
    pub negate_for_display: bool,
    /// Export `F / normalizer`.
    pub normalizer: Option<T>,
}

impl<T: Scalar> Landscape<T> {
    pub fn value(&self, row: usize, col: usize) -> T {
        self.values[row * self.grid.gamma_steps + col]
    }

    /// Value after the display flags are applied.
    pub fn display_value(&self, row: usize, col: usize) -> T {
        let v = self.value(row, col);
        let v = if self.negate_for_display { -v } else { v };
        match self.normalizer {
            Some(d) => v / d,
            None => v,
        }
    }

    /// Cell with the smallest raw value, ties to smaller `(γ, β)`.
    pub fn min_cell(&self) -> Candidate<T> {
        self.candidates()
            .min_by(|a, b| a.order(b))
            .expect("grid has at least four cells")
    }

    fn candidates(&self) -> impl Iterator<Item = Candidate<T>> + '_ {
        let g = self.grid;
        (0..g.beta_steps).flat_map(move |r| {
            (0..g.gamma_steps).map(move |c| Candidate {
                beta: g.beta(r),
                gamma: g.gamma(c),
                value: self.value(r, c),
            })
        })
    }
}

/// Evaluates every cell. One γ profile per column; columns run in parallel
/// and the result does not depend on the worker count.
pub fn scan<T: Scalar>(instance: &IsingInstance<T>, grid: &AngleGrid<T>) -> Result<Landscape<T>> {
    grid.validate()?;
    if grid.cells() > MAX_CELLS {
        return Err(Error::Resource(format!(
            "{} cells exceeds the limit of {MAX_CELLS}",
            grid.cells()
        )));
    }
    let profiles: Vec<GammaProfile<T>> = (0..grid.gamma_steps)
        .into_par_iter()
        .map(|c| GammaProfile::compute(instance, grid.gamma(c)))
        .collect();
    let mut values = Vec::with_capacity(grid.cells());
    for r in 0..grid.beta_steps {
        let beta = grid.beta(r);
        values.extend(profiles.iter().map(|p| p.at(beta)));
    }
    Ok(Landscape {
        grid: *grid,
        values,
        negate_for_display: false,
        normalizer: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeOptions<T> {
    /// Coarse grid; [`AngleGrid::default_for`] when `None`.
    pub grid: Option<AngleGrid<T>>,
    pub refine: RefineOptions<T>,
}

impl<T: Scalar> Default for OptimizeOptions<T> {
    fn default() -> Self {
        Self {
            grid: None,
            refine: RefineOptions::default(),
        }
    }
}

/// Best angles found by a coarse scan plus multi-start refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptResult<T> {
    pub beta_min: T,
    pub gamma_min: T,
    pub f_min: T,
    /// `-f_min`.
    pub qaoa_expectation: T,
    /// Expected cut `(W - f_min) / 2`, for instances without fields.
    pub cut_value: Option<T>,
    pub iterations: usize,
}

pub fn optimize<T: Scalar>(
    instance: &IsingInstance<T>,
    options: &OptimizeOptions<T>,
) -> Result<OptResult<T>> {
    let grid = options
        .grid
        .unwrap_or_else(|| AngleGrid::default_for(instance));
    let coarse = scan(instance, &grid)?;
    let cells: Vec<Candidate<T>> = coarse.candidates().collect();
    let objective = |beta: T, gamma: T| evaluate(instance, Angles::new(beta, gamma));
    let step = (grid.beta_spacing(), grid.gamma_spacing());
    let refined =
        multistart(&objective, &cells, step, &options.refine).expect("grid has at least one cell");
    let best = refined.best;
    Ok(OptResult {
        beta_min: best.beta,
        gamma_min: best.gamma,
        f_min: best.value,
        qaoa_expectation: -best.value,
        cut_value: (!instance.has_fields())
            .then(|| cut_from_energy(instance.sum_of_weights(), best.value)),
        iterations: refined.iterations,
    })
}

/// Expected cut `(W - F) / 2` for total weight `W`.
pub fn cut_from_energy<T: Scalar>(sum_of_weights: T, f_min: T) -> T {
    (sum_of_weights - f_min) / T::lit(2.0)
}

/// 17 significant digits; exact zero prints as `0`.
fn format_number<T: Scalar>(x: T) -> String {
    if x == T::zero() {
        "0".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// CSV with header `beta\gamma,γ_0,…` and one row per β.
pub fn export_csv<T: Scalar>(landscape: &Landscape<T>) -> String {
    let g = landscape.grid;
    let mut out = String::from("beta\\gamma");
    for c in 0..g.gamma_steps {
        write!(out, ",{}", format_number(g.gamma(c))).unwrap();
    }
    out.push('\n');
    for r in 0..g.beta_steps {
        out.push_str(&format_number(g.beta(r)));
        for c in 0..g.gamma_steps {
            write!(out, ",{}", format_number(landscape.display_value(r, c))).unwrap();
        }
        out.push('\n');
    }
    out
}

/// A landscape read back from CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeTable<T> {
    pub betas: Vec<T>,
    pub gammas: Vec<T>,
    /// Row-major, rows indexed by β.
    pub values: Vec<T>,
}

pub fn parse_csv<T: Scalar>(text: &str) -> Result<LandscapeTable<T>> {
    let mut lines = text.lines().enumerate();
    let parse = |tok: &str, line: usize| -> Result<T> {
        tok.trim().parse().map_err(|_| Error::Parse {
            line,
            message: format!("invalid number `{tok}`"),
        })
    };
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty landscape CSV".into(),
    })?;
    let mut cols = header.split(',');
    if cols.next() != Some("beta\\gamma") {
        return Err(Error::Parse {
            line: 1,
            message: "header must start with `beta\\gamma`".into(),
        });
    }
    let gammas = cols.map(|t| parse(t, 1)).collect::<Result<Vec<T>>>()?;
    let mut betas = Vec::new();
    let mut values = Vec::new();
    for (k, line) in lines.filter(|(_, l)| !l.trim().is_empty()) {
        let mut cells = line.split(',');
        betas.push(parse(cells.next().unwrap_or(""), k + 1)?);
        let row = cells.map(|t| parse(t, k + 1)).collect::<Result<Vec<T>>>()?;
        if row.len() != gammas.len() {
            return Err(Error::Parse {
                line: k + 1,
                message: format!("expected {} values, found {}", gammas.len(), row.len()),
            });
        }
        values.extend(row);
    }
    Ok(LandscapeTable {
        betas,
        gammas,
        values,
    })
}

/// Binary 16-bit PGM (P5, big-endian), γ across and β down.
///
/// Display values are min-max scaled to `0..=65535`; only the minimum maps to
/// 0 and a constant landscape renders as mid-gray 32768.
pub fn export_pgm<T: Scalar>(landscape: &Landscape<T>) -> Result<Vec<u8>> {
    let g = landscape.grid;
    let display: Vec<T> = (0..g.beta_steps)
        .flat_map(|r| (0..g.gamma_steps).map(move |c| (r, c)))
        .map(|(r, c)| landscape.display_value(r, c))
        .collect();
    if display.iter().any(|v| !v.is_finite()) {
        return Err(Error::Precondition("PGM export needs finite values".into()));
    }
    let lo = display.iter().copied().fold(T::infinity(), T::min);
    let hi = display.iter().copied().fold(T::neg_infinity(), T::max);
    let full = T::lit(65535.0);
    let mut out = format!("P5\n{} {}\n65535\n", g.gamma_steps, g.beta_steps).into_bytes();
    out.reserve(display.len() * 2);
    for v in display {
        let level: u16 = if hi == lo {
            32768
        } else if v == lo {
            0
        } else {
            let scaled = ((v - lo) / (hi - lo) * full).round();
            scaled.to_u16().unwrap_or(u16::MAX).max(1)
        };
        out.extend_from_slice(&level.to_be_bytes());
    }
    Ok(out)
}
