//! Named preset sweeps (`table1`, `table2`, `fig5`, `fig6`, `fig7`) together
//! with the reference extrema each one is checked against.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::closed_form::{Param, SpinParams};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::sweep::{
    locate_extremum, run_phase_sweep_with, run_sweep_with, Constraint, ExtremumKind, GridRange, PhaseSweepSpec, Sign,
    SweepSpec, DEFAULT_AMPLITUDE_STEP, DEFAULT_PHASE_POINTS,
};

/// Amplitude step used on the amplitude axis of the phase grids.
pub const PHASE_GRID_AMPLITUDE_STEP: f64 = 5e-3;
/// Upper end of the amplitude axis for the table presets, just inside `√3/2`.
pub const TABLE_AMPLITUDE_STOP: f64 = 0.8660;
pub const DEFAULT_REFINE_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Table1,
    Table2,
    Fig5,
    Fig6,
    Fig7,
}

impl Target {
    pub const ALL: [Target; 5] = [Target::Table1, Target::Table2, Target::Fig5, Target::Fig6, Target::Fig7];

    pub fn name(self) -> &'static str {
        match self {
            Target::Table1 => "table1",
            Target::Table2 => "table2",
            Target::Fig5 => "fig5",
            Target::Fig6 => "fig6",
            Target::Fig7 => "fig7",
        }
    }
}

impl std::str::FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidSweep(format!("unknown reproduce target {s:?}")))
    }
}

/// Grid resolution knobs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Resolution {
    pub amplitude_step: f64,
    pub phase_grid_amplitude_step: f64,
    pub phase_points: usize,
    pub refine_tol: f64,
}

impl Default for Resolution {
    fn default() -> Self {
        Self {
            amplitude_step: DEFAULT_AMPLITUDE_STEP,
            phase_grid_amplitude_step: PHASE_GRID_AMPLITUDE_STEP,
            phase_points: DEFAULT_PHASE_POINTS,
            refine_tol: DEFAULT_REFINE_TOL,
        }
    }
}

/// One comparison of a computed number against a reference value.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub expected: f64,
    pub tol: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, observed: f64, expected: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            expected,
            tol,
        }
    }

    pub fn passed(&self) -> bool {
        (self.observed - self.expected).abs() <= self.tol
    }

    /// Passes when `observed < bound`.
    pub fn below(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            expected: bound,
            tol: f64::NAN,
        }
    }

    fn is_bound(&self) -> bool {
        self.tol.is_nan()
    }

    pub fn ok(&self) -> bool {
        if self.is_bound() {
            self.observed < self.expected
        } else {
            self.passed()
        }
    }

    pub fn line(&self) -> String {
        let verdict = if self.ok() { "PASS" } else { "FAIL" };
        if self.is_bound() {
            format!(
                "{verdict}  {:<44} {:>12.6} < {:.6}",
                self.name, self.observed, self.expected
            )
        } else {
            format!(
                "{verdict}  {:<44} {:>12.6} vs {:.6} (tol {:.0e})",
                self.name, self.observed, self.expected, self.tol
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reproduction {
    pub target: Target,
    /// `(artifact name, CSV text)`.
    pub artifacts: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl Reproduction {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }

    pub fn summary(&self) -> String {
        let mut out = format!("# {} summary\n", self.target.name());
        for c in &self.checks {
            out.push_str(&c.line());
            out.push('\n');
        }
        out
    }
}

fn edge_amplitude() -> f64 {
    8f64.sqrt().recip()
}

fn base(alpha: f64, beta: f64, mu: f64, nu: f64, eta: f64) -> SpinParams {
    SpinParams {
        alpha,
        beta,
        gamma: 0.0,
        delta: 0.0,
        mu,
        nu,
        eta,
    }
}

/// `α = −1/√8, β = 1/√8`, real, sweeping `vary` over `[start, stop]` with the
/// other middle amplitude fixed by normalization and `sign`.
pub fn table_spec(vary: Param, start: f64, stop: f64, sign: Sign, step: f64) -> Result<SweepSpec> {
    let a = edge_amplitude();
    let dependent = if vary == Param::Delta {
        Param::Gamma
    } else {
        Param::Delta
    };
    Ok(SweepSpec {
        fixed: base(-a, a, 0.0, 0.0, 0.0),
        vary,
        range: GridRange::new(start, stop, step)?,
        constraint: Constraint { dependent, sign },
    })
}

/// `table1`, first sweep: vary δ with `γ = +√(3/4 − δ²)`.
pub fn table1_delta(step: f64) -> Result<SweepSpec> {
    table_spec(Param::Delta, 0.0, TABLE_AMPLITUDE_STOP, Sign::Plus, step)
}

/// `table1`, second sweep: vary γ with `δ = +√(3/4 − γ²)`.
pub fn table1_gamma(step: f64) -> Result<SweepSpec> {
    table_spec(Param::Gamma, 0.0, TABLE_AMPLITUDE_STOP, Sign::Plus, step)
}

/// `table2`, first sweep: vary δ with `γ = −√(3/4 − δ²)`.
pub fn table2_delta(step: f64) -> Result<SweepSpec> {
    table_spec(Param::Delta, 0.0, TABLE_AMPLITUDE_STOP, Sign::Minus, step)
}

/// `table2`, second sweep: vary γ ≤ 0 with `δ = +√(3/4 − γ²)`.
pub fn table2_gamma(step: f64) -> Result<SweepSpec> {
    table_spec(Param::Gamma, -TABLE_AMPLITUDE_STOP, 0.0, Sign::Plus, step)
}

/// Reference values for the presets.
pub mod reference {
    pub const TABLE1_DELTA_MAX: (f64, f64) = (0.4960, 0.795775);
    pub const TABLE1_DELTA_MIN: (f64, f64) = (0.2260, 0.399956);
    pub const TABLE1_GAMMA_MAX: (f64, f64) = (0.7100, 0.795598);
    pub const TABLE1_GAMMA_MIN: (f64, f64) = (0.8360, 0.399955);
    pub const TABLE2_DELTA_MAX: (f64, f64) = (0.0, 0.45758);
    pub const TABLE2_DELTA_MIN: (f64, f64) = (0.61237, 0.33333);
    pub const TABLE2_GAMMA_MAX: (f64, f64) = (-0.0030, 0.45758);
    pub const TABLE2_GAMMA_MIN: (f64, f64) = (-0.61237, 0.33333);
    pub const GRAPH_CHI2: f64 = 1.0 / 3.0;
    pub const HYPERGRAPH_CHI2: f64 = 0.64;
    pub const HYPERGRAPH_FISHER: f64 = 4.6875;
    pub const HYPERGRAPH_SPEED: f64 = 2.165;
    pub const HYPERGRAPH_CONCURRENCE: f64 = 2.5981;
    pub const PHASE_GRID_MAX: f64 = 0.95;
}

/// Tolerances on the table extrema.
pub mod tolerance {
    pub const CHI2: f64 = 2e-3;
    pub const LOCATION: f64 = 5e-3;
    pub const GRAPH_MIN_CHI2: f64 = 1e-4;
    pub const GRAPH_MIN_LOCATION: f64 = 1e-3;
    pub const REFINED_GRAPH_POINT: f64 = 1e-5;
    pub const MARKED_POINT: f64 = 1e-4;
    pub const PHASE_GRID_MAX: f64 = 1e-2;
}

fn extremum_checks(
    label: &str,
    spec: &SweepSpec,
    res: &Resolution,
    max: (f64, f64),
    min: (f64, f64),
    min_tols: (f64, f64),
) -> Result<Vec<Check>> {
    let name = spec.vary.name();
    let hi = locate_extremum(spec, ExtremumKind::Max, res.refine_tol)?;
    let lo = locate_extremum(spec, ExtremumKind::Min, res.refine_tol)?;
    Ok(vec![
        Check::new(format!("{label} chi2_max"), hi.chi2, max.1, tolerance::CHI2),
        Check::new(format!("{label} argmax {name}"), hi.value, max.0, tolerance::LOCATION),
        Check::new(format!("{label} chi2_min"), lo.chi2, min.1, min_tols.0),
        Check::new(format!("{label} argmin {name}"), lo.value, min.0, min_tols.1),
    ])
}

/// The amplitude-sweep presets of one table: `(name, spec)` pairs.
fn table_presets(target: Target, step: f64) -> Result<Vec<(String, SweepSpec)>> {
    Ok(match target {
        Target::Table1 => vec![
            ("table1_delta".into(), table1_delta(step)?),
            ("table1_gamma".into(), table1_gamma(step)?),
        ],
        Target::Table2 => vec![
            ("table2_delta".into(), table2_delta(step)?),
            ("table2_gamma".into(), table2_gamma(step)?),
        ],
        Target::Fig5 => vec![
            ("fig5a_delta_gamma_negative".into(), table2_delta(step)?),
            ("fig5b_gamma_negative".into(), table2_gamma(step)?),
            ("fig5c_delta_gamma_positive".into(), table1_delta(step)?),
            ("fig5d_gamma_positive".into(), table1_gamma(step)?),
        ],
        _ => Vec::new(),
    })
}

/// The 27 fixed-phase combinations of a `fig6`/`fig7` preset: the varied phase crossed
/// with the two others drawn from `{0, π/2, π}`.
pub fn phase_presets(target: Target, res: &Resolution) -> Result<Vec<(String, PhaseSweepSpec)>> {
    let (vary, dependent) = match target {
        Target::Fig6 => (Param::Delta, Param::Gamma),
        Target::Fig7 => (Param::Gamma, Param::Delta),
        _ => return Ok(Vec::new()),
    };
    let levels = [(0.0, "0"), (FRAC_PI_2, "pi2"), (PI, "pi")];
    let phases = [Param::Mu, Param::Nu, Param::Eta];
    let mut out = Vec::new();
    for (k, &phase) in phases.iter().enumerate() {
        let fixed_axes: Vec<Param> = phases.iter().copied().filter(|&p| p != phase).collect();
        for &(v1, n1) in &levels {
            for &(v2, n2) in &levels {
                let fixed = base(0.5, 0.5, 0.0, 0.0, 0.0)
                    .with(fixed_axes[0], v1)
                    .with(fixed_axes[1], v2);
                let amplitude = SweepSpec {
                    fixed,
                    vary,
                    range: GridRange::new(0.0, 0.5f64.sqrt(), res.phase_grid_amplitude_step)?,
                    constraint: Constraint {
                        dependent,
                        sign: Sign::Plus,
                    },
                };
                let name = format!(
                    "{}_{}_vary_{}_{}{}_{}{}",
                    target.name(),
                    vary,
                    phases[k],
                    fixed_axes[0],
                    n1,
                    fixed_axes[1],
                    n2
                );
                out.push((
                    name,
                    PhaseSweepSpec {
                        amplitude,
                        phase,
                        phase_range: GridRange::periodic(res.phase_points),
                    },
                ));
            }
        }
    }
    Ok(out)
}

pub fn reproduce(target: Target, res: &Resolution, exec: Execution) -> Result<Reproduction> {
    let mut artifacts = Vec::new();
    let mut checks = Vec::new();
    match target {
        Target::Table1 | Target::Table2 | Target::Fig5 => {
            for (name, spec) in table_presets(target, res.amplitude_step)? {
                artifacts.push((name, run_sweep_with(&spec, exec)?.to_csv()));
            }
        }
        Target::Fig6 | Target::Fig7 => {
            let mut global_max = f64::NEG_INFINITY;
            let mut global_at = String::new();
            for (name, spec) in phase_presets(target, res)? {
                let r = run_phase_sweep_with(&spec, exec)?;
                if r.argmax.chi2 > global_max {
                    global_max = r.argmax.chi2;
                    global_at = name.clone();
                }
                artifacts.push((name, r.to_csv()));
            }
            checks.push(Check::below(
                format!("{} every chi2 below 1", target.name()),
                global_max,
                1.0,
            ));
            checks.push(Check::new(
                format!("{} grid max ({global_at})", target.name()),
                global_max,
                reference::PHASE_GRID_MAX,
                tolerance::PHASE_GRID_MAX,
            ));
        }
    }
    use reference as r;
    let step = res.amplitude_step;
    match target {
        Target::Table1 => {
            checks.extend(extremum_checks(
                "table1 delta",
                &table1_delta(step)?,
                res,
                r::TABLE1_DELTA_MAX,
                r::TABLE1_DELTA_MIN,
                (tolerance::CHI2, tolerance::LOCATION),
            )?);
            checks.extend(extremum_checks(
                "table1 gamma",
                &table1_gamma(step)?,
                res,
                r::TABLE1_GAMMA_MAX,
                r::TABLE1_GAMMA_MIN,
                (tolerance::CHI2, tolerance::LOCATION),
            )?);
            let s38 = (3.0f64 / 8.0).sqrt();
            let hyper = table1_delta(step)?.evaluate(s38)?.1;
            checks.push(Check::new(
                "table1 hypergraph point chi2",
                hyper,
                r::HYPERGRAPH_CHI2,
                tolerance::MARKED_POINT,
            ));
        }
        Target::Table2 => {
            let graph_tols = (tolerance::GRAPH_MIN_CHI2, tolerance::GRAPH_MIN_LOCATION);
            checks.extend(extremum_checks(
                "table2 delta",
                &table2_delta(step)?,
                res,
                r::TABLE2_DELTA_MAX,
                r::TABLE2_DELTA_MIN,
                graph_tols,
            )?);
            checks.extend(extremum_checks(
                "table2 gamma",
                &table2_gamma(step)?,
                res,
                r::TABLE2_GAMMA_MAX,
                r::TABLE2_GAMMA_MIN,
                graph_tols,
            )?);
            let refined = locate_extremum(&table2_delta(step)?, ExtremumKind::Min, res.refine_tol)?;
            checks.push(Check::new(
                "table2 refined minimizer vs sqrt(3/8)",
                refined.value,
                (3.0f64 / 8.0).sqrt(),
                tolerance::REFINED_GRAPH_POINT,
            ));
        }
        Target::Fig5 => {
            let s38 = (3.0f64 / 8.0).sqrt();
            let graph = table2_delta(step)?.evaluate(s38)?.1;
            let hyper = table1_delta(step)?.evaluate(s38)?.1;
            checks.push(Check::new(
                "fig5 graph point chi2",
                graph,
                r::GRAPH_CHI2,
                tolerance::MARKED_POINT,
            ));
            checks.push(Check::new(
                "fig5 hypergraph point chi2",
                hyper,
                r::HYPERGRAPH_CHI2,
                tolerance::MARKED_POINT,
            ));
        }
        _ => {}
    }
    Ok(Reproduction {
        target,
        artifacts,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_names_round_trip() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!("table3".parse::<Target>().is_err());
    }

    #[test]
    fn phase_presets_cover_all_combinations() {
        let res = Resolution::default();
        let presets = phase_presets(Target::Fig6, &res).unwrap();
        assert_eq!(presets.len(), 27);
        let mut names: Vec<&str> = presets.iter().map(|(n, _)| n.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 27);
        assert!(presets
            .iter()
            .all(|(_, s)| s.amplitude.fixed.alpha == 0.5 && s.amplitude.fixed.beta == 0.5));
    }

    #[test]
    fn checks_render() {
        let c = Check::new("x", 1.0, 1.05, 0.1);
        assert!(c.ok() && c.line().starts_with("PASS"));
        let c = Check::below("y", 1.0, 1.0);
        assert!(!c.ok() && c.line().starts_with("FAIL"));
    }
}
