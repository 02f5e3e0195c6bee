//! One- and two-dimensional parameter sweeps over [`SpinParams`].
//!
//! One amplitude (the *dependent* one) is always solved from normalization,
//! with an explicit sign, so every grid point is a valid state.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::closed_form::{param_report, Param, SpinParams};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Default step for amplitude axes.
pub const DEFAULT_AMPLITUDE_STEP: f64 = 1e-4;
/// Default number of phase samples over `[0, 2π)` (step `π/500`).
pub const DEFAULT_PHASE_POINTS: usize = 1000;

const FEASIBILITY_TOL: f64 = 1e-12;
const MAX_GRID_POINTS: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "pos" | "positive" => Ok(Sign::Plus),
            "-" | "minus" | "neg" | "negative" => Ok(Sign::Minus),
            other => Err(Error::InvalidSweep(format!("unknown sign {other:?}"))),
        }
    }
}

/// The amplitude fixed by normalization, and which root to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub dependent: Param,
    pub sign: Sign,
}

/// Grid `start, start + step, …` up to and including `stop`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridRange {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        let r = Self { start, stop, step };
        r.validate()?;
        Ok(r)
    }

    /// `count` equally spaced points covering one period `[0, 2π)`.
    pub fn periodic(count: usize) -> Self {
        let step = TAU / count.max(1) as f64;
        Self {
            start: 0.0,
            stop: TAU - step,
            step,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.step.is_finite()) {
            return Err(Error::InvalidSweep("range bounds must be finite".into()));
        }
        if self.step <= 0.0 {
            return Err(Error::InvalidSweep(format!("step must be positive, got {}", self.step)));
        }
        if self.start > self.stop {
            return Err(Error::InvalidSweep(format!(
                "start {} exceeds stop {}",
                self.start, self.stop
            )));
        }
        if self.len() > MAX_GRID_POINTS {
            return Err(Error::InvalidSweep(format!(
                "grid of {} points is too large",
                self.len()
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.point(k)).collect()
    }
}

/// A one-dimensional slice through parameter space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSpec {
    /// Values of every parameter other than `vary` and the dependent amplitude.
    pub fixed: SpinParams,
    pub vary: Param,
    pub range: GridRange,
    pub constraint: Constraint,
}

impl SweepSpec {
    fn validate(&self) -> Result<()> {
        self.range.validate()?;
        if self.constraint.dependent.is_phase() {
            return Err(Error::InvalidSweep(format!(
                "dependent parameter {} must be an amplitude",
                self.constraint.dependent
            )));
        }
        if self.constraint.dependent == self.vary {
            return Err(Error::InvalidSweep(format!(
                "{} cannot be both varied and dependent",
                self.vary
            )));
        }
        Ok(())
    }

    /// Parameters at `value` of the varied axis, with the dependent amplitude
    /// solved from normalization.
    pub fn params_at(&self, value: f64) -> Result<SpinParams> {
        let p = self.fixed.with(self.vary, value);
        let dep = self.constraint.dependent;
        let others: f64 = [Param::Alpha, Param::Beta, Param::Gamma, Param::Delta]
            .into_iter()
            .filter(|&a| a != dep)
            .map(|a| p.get(a).powi(2))
            .sum();
        let remainder = 1.0 - others;
        if remainder < -FEASIBILITY_TOL || !remainder.is_finite() {
            return Err(Error::Infeasible {
                name: self.vary.name(),
                value,
                remainder,
            });
        }
        let amp = self.constraint.sign.apply(remainder.max(0.0).sqrt());
        p.with(dep, amp).validated()
    }

    fn check_feasible(&self) -> Result<()> {
        for x in self.range.points() {
            self.params_at(x)?;
        }
        Ok(())
    }

    /// `(χ², F_Q)` at one point of the varied axis.
    pub fn evaluate(&self, value: f64) -> Result<(SpinParams, f64, f64)> {
        let p = self.params_at(value)?;
        let r = param_report(&p)?;
        Ok((p, r.chi_squared, r.f_q))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub varied: f64,
    pub dependent: f64,
    pub chi2: f64,
    pub f_q: f64,
}

/// `(value of the varied parameter, χ²)`.
pub type GridExtremum = (f64, f64);

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub varied_name: Param,
    pub dependent_name: Param,
    /// Ascending in the varied parameter.
    pub rows: Vec<SweepRow>,
    pub argmin: GridExtremum,
    pub argmax: GridExtremum,
}

/// Indices of the first minimum and first maximum of `values`.
fn extremum_indices(values: impl Iterator<Item = f64>) -> (usize, usize) {
    let (mut imin, mut imax) = (0, 0);
    let (mut vmin, mut vmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for (i, v) in values.enumerate() {
        if v < vmin {
            vmin = v;
            imin = i;
        }
        if v > vmax {
            vmax = v;
            imax = i;
        }
    }
    (imin, imax)
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    run_sweep_with(spec, Execution::default())
}

/// Evaluates every grid point of `spec`; rows come back in grid order.
pub fn run_sweep_with(spec: &SweepSpec, exec: Execution) -> Result<SweepResult> {
    spec.validate()?;
    spec.check_feasible()?;
    let xs = spec.range.points();
    let dep = spec.constraint.dependent;
    let rows = exec
        .map(&xs, |&x| {
            spec.evaluate(x).map(|(p, chi2, f_q)| SweepRow {
                varied: x,
                dependent: p.get(dep),
                chi2,
                f_q,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let (imin, imax) = extremum_indices(rows.iter().map(|r| r.chi2));
    Ok(SweepResult {
        varied_name: spec.vary,
        dependent_name: dep,
        argmin: (rows[imin].varied, rows[imin].chi2),
        argmax: (rows[imax].varied, rows[imax].chi2),
        rows,
    })
}

impl SweepResult {
    /// CSV with the columns
    /// `varied_name,varied_value,dependent_name,dependent_value,chi2,f_q`,
    /// numbers to 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("varied_name,varied_value,dependent_name,dependent_value,chi2,f_q\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{:.11e},{},{:.11e},{:.11e},{:.11e}",
                self.varied_name, r.varied, self.dependent_name, r.dependent, r.chi2, r.f_q
            );
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "varied_name": self.varied_name.name(),
            "dependent_name": self.dependent_name.name(),
            "argmin": {"value": self.argmin.0, "chi2": self.argmin.1},
            "argmax": {"value": self.argmax.0, "chi2": self.argmax.1},
            "rows": self.rows.iter().map(|r| json!([r.varied, r.dependent, r.chi2, r.f_q])).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremumKind {
    Min,
    Max,
}

/// Result of [`locate_extremum`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub kind: ExtremumKind,
    pub value: f64,
    pub chi2: f64,
    /// The best grid point sits on the end of the range; no refinement done.
    pub boundary: bool,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Finds the best grid point of `spec`, then refines it by golden-section
/// search between its two neighbours until the bracket is narrower than
/// `refine_tol`.
pub fn locate_extremum(spec: &SweepSpec, kind: ExtremumKind, refine_tol: f64) -> Result<Extremum> {
    if refine_tol.is_nan() || refine_tol <= 0.0 {
        return Err(Error::InvalidSweep(format!(
            "refine tolerance must be positive, got {refine_tol}"
        )));
    }
    let result = run_sweep(spec)?;
    let (imin, imax) = extremum_indices(result.rows.iter().map(|r| r.chi2));
    let i = match kind {
        ExtremumKind::Min => imin,
        ExtremumKind::Max => imax,
    };
    let best = result.rows[i];
    if i == 0 || i + 1 == result.rows.len() {
        return Ok(Extremum {
            kind,
            value: best.varied,
            chi2: best.chi2,
            boundary: true,
        });
    }
    // golden section minimizes `cost`
    let cost = |x: f64| -> Result<f64> {
        let chi2 = spec.evaluate(x)?.1;
        Ok(match kind {
            ExtremumKind::Min => chi2,
            ExtremumKind::Max => -chi2,
        })
    };
    let (mut a, mut b) = (result.rows[i - 1].varied, result.rows[i + 1].varied);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (cost(c)?, cost(d)?);
    while b - a > refine_tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = cost(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = cost(d)?;
        }
    }
    let x = 0.5 * (a + b);
    let chi2 = spec.evaluate(x)?.1;
    // never report something worse than the grid point
    let better = match kind {
        ExtremumKind::Min => chi2 <= best.chi2,
        ExtremumKind::Max => chi2 >= best.chi2,
    };
    let (value, chi2) = if better { (x, chi2) } else { (best.varied, best.chi2) };
    Ok(Extremum {
        kind,
        value,
        chi2,
        boundary: false,
    })
}

/// A phase axis crossed with an amplitude sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseSweepSpec {
    pub amplitude: SweepSpec,
    pub phase: Param,
    pub phase_range: GridRange,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseRow {
    pub phase: f64,
    pub varied: f64,
    pub dependent: f64,
    pub chi2: f64,
    pub f_q: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSweepResult {
    pub phase_name: Param,
    pub varied_name: Param,
    pub dependent_name: Param,
    /// Phase-major, each block ascending in the amplitude.
    pub rows: Vec<PhaseRow>,
    pub argmin: PhaseRow,
    pub argmax: PhaseRow,
}

pub fn run_phase_sweep(spec: &PhaseSweepSpec) -> Result<PhaseSweepResult> {
    run_phase_sweep_with(spec, Execution::default())
}

pub fn run_phase_sweep_with(spec: &PhaseSweepSpec, exec: Execution) -> Result<PhaseSweepResult> {
    if !spec.phase.is_phase() {
        return Err(Error::InvalidSweep(format!("{} is not a phase", spec.phase)));
    }
    let amp = &spec.amplitude;
    amp.validate()?;
    if amp.vary.is_phase() {
        return Err(Error::InvalidSweep(
            "second axis of a phase sweep must be an amplitude".into(),
        ));
    }
    spec.phase_range.validate()?;
    amp.check_feasible()?;
    let phases = spec.phase_range.points();
    let xs = amp.range.points();
    let grid: Vec<(f64, f64)> = phases.iter().flat_map(|&ph| xs.iter().map(move |&x| (ph, x))).collect();
    let dep = amp.constraint.dependent;
    let rows = exec
        .map(&grid, |&(ph, x)| {
            let slice = SweepSpec {
                fixed: amp.fixed.with(spec.phase, ph),
                ..*amp
            };
            slice.evaluate(x).map(|(p, chi2, f_q)| PhaseRow {
                phase: ph,
                varied: x,
                dependent: p.get(dep),
                chi2,
                f_q,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let (imin, imax) = extremum_indices(rows.iter().map(|r| r.chi2));
    Ok(PhaseSweepResult {
        phase_name: spec.phase,
        varied_name: amp.vary,
        dependent_name: dep,
        argmin: rows[imin],
        argmax: rows[imax],
        rows,
    })
}

impl PhaseSweepResult {
    /// CSV with a leading `phase_name,phase_value` pair ahead of the
    /// one-dimensional sweep columns.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("phase_name,phase_value,varied_name,varied_value,dependent_name,dependent_value,chi2,f_q\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{:.11e},{},{:.11e},{},{:.11e},{:.11e},{:.11e}",
                self.phase_name, r.phase, self.varied_name, r.varied, self.dependent_name, r.dependent, r.chi2, r.f_q
            );
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let row = |r: &PhaseRow| json!({"phase": r.phase, "value": r.varied, "chi2": r.chi2});
        json!({
            "phase_name": self.phase_name.name(),
            "varied_name": self.varied_name.name(),
            "dependent_name": self.dependent_name.name(),
            "argmin": row(&self.argmin),
            "argmax": row(&self.argmax),
            "rows": self.rows.iter().map(|r| json!([r.phase, r.varied, r.dependent, r.chi2, r.f_q])).collect::<Vec<_>>(),
        })
    }
}
