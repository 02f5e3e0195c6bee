//! The seven-parameter family of symmetric three-qubit states
//!
//! `α e^{iμ}|3/2,3/2⟩ + γ e^{iη}|3/2,1/2⟩ + δ|3/2,−1/2⟩ + β e^{iν}|3/2,−3/2⟩`
//!
//! together with closed-form expressions for its spin moments. The operator
//! route in [`crate::spin`] is authoritative; the closed forms here are a
//! validation layer and are only defined where the mean spin and its
//! transverse part are both non-zero.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spin::{assemble_max_variance, metric_report, MetricReport};
use crate::statevec::{DickeDecomposition, QubitState, NORM_TOL};

/// `R` or `r` below this makes the closed-form quadratics singular.
pub const SINGULAR_TOL: f64 = 1e-9;

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinParams {
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default)]
    pub delta: f64,
    #[serde(default)]
    pub mu: f64,
    #[serde(default)]
    pub nu: f64,
    #[serde(default)]
    pub eta: f64,
}

/// Names of the seven parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Mu,
    Nu,
    Eta,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha => "alpha",
            Param::Beta => "beta",
            Param::Gamma => "gamma",
            Param::Delta => "delta",
            Param::Mu => "mu",
            Param::Nu => "nu",
            Param::Eta => "eta",
        }
    }

    pub fn is_phase(self) -> bool {
        matches!(self, Param::Mu | Param::Nu | Param::Eta)
    }
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "alpha" => Param::Alpha,
            "beta" => Param::Beta,
            "gamma" => Param::Gamma,
            "delta" => Param::Delta,
            "mu" => Param::Mu,
            "nu" => Param::Nu,
            "eta" => Param::Eta,
            other => return Err(Error::InvalidSweep(format!("unknown parameter {other:?}"))),
        })
    }
}

fn reduce_phase(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

impl SpinParams {
    /// Validates normalization and reduces the phases to `[0, 2π)`.
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64, mu: f64, nu: f64, eta: f64) -> Result<Self> {
        Self {
            alpha,
            beta,
            gamma,
            delta,
            mu,
            nu,
            eta,
        }
        .validated()
    }

    /// Real amplitudes with all phases zero.
    pub fn real(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        Self::new(alpha, beta, gamma, delta, 0.0, 0.0, 0.0)
    }

    pub fn validated(mut self) -> Result<Self> {
        let norm_sqr = self.norm_sqr();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        if ![self.mu, self.nu, self.eta].iter().all(|p| p.is_finite()) {
            return Err(Error::InvalidSweep("phases must be finite".into()));
        }
        self.mu = reduce_phase(self.mu);
        self.nu = reduce_phase(self.nu);
        self.eta = reduce_phase(self.eta);
        Ok(self)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.alpha * self.alpha + self.beta * self.beta + self.gamma * self.gamma + self.delta * self.delta
    }

    pub fn get(&self, p: Param) -> f64 {
        match p {
            Param::Alpha => self.alpha,
            Param::Beta => self.beta,
            Param::Gamma => self.gamma,
            Param::Delta => self.delta,
            Param::Mu => self.mu,
            Param::Nu => self.nu,
            Param::Eta => self.eta,
        }
    }

    /// Sets one parameter without revalidating.
    pub fn with(mut self, p: Param, value: f64) -> Self {
        match p {
            Param::Alpha => self.alpha = value,
            Param::Beta => self.beta = value,
            Param::Gamma => self.gamma = value,
            Param::Delta => self.delta = value,
            Param::Mu => self.mu = value,
            Param::Nu => self.nu = value,
            Param::Eta => self.eta = value,
        }
        self
    }

    /// Coefficients of `|3/2, m⟩` in ascending `m`.
    pub fn dicke_coefficients(&self) -> [Complex64; 4] {
        [
            Complex64::from_polar(1.0, self.nu) * self.beta,
            Complex64::new(self.delta, 0.0),
            Complex64::from_polar(1.0, self.eta) * self.gamma,
            Complex64::from_polar(1.0, self.mu) * self.alpha,
        ]
    }

    /// Parameters of the triangle graph state, up to a global sign.
    pub fn graph_state() -> Self {
        let a = 8f64.sqrt().recip();
        let g = (3.0f64 / 8.0).sqrt();
        Self::real(-a, a, -g, g).expect("normalized")
    }

    /// Parameters of the single-hyperedge state, up to a global spin flip.
    pub fn hypergraph_state() -> Self {
        let a = 8f64.sqrt().recip();
        let g = (3.0f64 / 8.0).sqrt();
        Self::real(-a, a, g, g).expect("normalized")
    }
}

/// The three-qubit state described by `p`.
pub fn realize(p: &SpinParams) -> Result<QubitState> {
    let d = DickeDecomposition::from_coefficients(p.dicke_coefficients().to_vec())?;
    QubitState::from_dicke(&d)
}

/// `(⟨J_x⟩, ⟨J_y⟩, ⟨J_z⟩)` from the parameters.
pub fn closed_form_moments(p: &SpinParams) -> [f64; 3] {
    let SpinParams {
        alpha: a,
        beta: b,
        gamma: g,
        delta: d,
        mu,
        nu,
        eta,
    } = *p;
    let jx = SQRT3 * a * g * (eta - mu).cos() + 2.0 * g * d * eta.cos() + SQRT3 * b * d * nu.cos();
    let jy = SQRT3 * a * g * (eta - mu).sin() - 2.0 * g * d * eta.sin() + SQRT3 * b * d * nu.sin();
    let jz = 0.5 * (3.0 * (a * a - b * b) + g * g - d * d);
    [jx, jy, jz]
}

/// `(⟨J_n1² + J_n2²⟩, ⟨J_n1² − J_n2²⟩, ⟨{J_n1, J_n2}⟩)` in the mean-spin frame
/// of [`crate::spin::spin_frame`], from the parameters.
pub fn closed_form_quadratics(p: &SpinParams) -> Result<(f64, f64, f64)> {
    let SpinParams {
        alpha: a,
        beta: b,
        gamma: g,
        delta: d,
        mu,
        nu,
        eta,
    } = *p;
    let [jx, jy, jz] = closed_form_moments(p);
    let r2 = jx * jx + jy * jy + jz * jz;
    let t2 = jx * jx + jy * jy;
    let (r_len, r_perp) = (r2.sqrt(), t2.sqrt());
    if r_len < SINGULAR_TOL || r_perp < SINGULAR_TOL {
        return Err(Error::SingularFrame { r_len, r_perp });
    }

    let edge = a * a + b * b;
    let zpart = 3.0 * (a * a - b * b) + (g * g - d * d);
    let pol = 1.0 + zpart * zpart / (4.0 * r2);
    let cc = g * b * (nu - eta).cos() + a * d * mu.cos();
    let cs = g * b * (nu - eta).sin() - a * d * mu.sin();
    let ac = a * g * (eta - mu).cos() - b * d * nu.cos();
    let as_ = a * g * (eta - mu).sin() - b * d * nu.sin();
    let k = 2.0 * SQRT3;

    let sum = (1.75 - edge) * pol + t2 / r2 * (0.25 + 2.0 * edge) + SQRT3 / r2 * (jy * jy - jx * jx) * cc
        - k / r2 * jx * jy * cs
        - k / r2 * jy * jz * as_
        - k / r2 * jz * jx * ac;

    let diff = t2 / r2 * (1.5 - 3.0 * edge) + SQRT3 * pol * (jy * jy - jx * jx) / t2 * cc - k * pol * jx * jy / t2 * cs
        + k / r2 * jy * jz * as_
        + k / r2 * jz * jx * ac;

    let anti = 2.0 * k * jx * jy * jz / (r_len * t2) * cc + k * jz * (jy * jy - jx * jx) / (r_len * t2) * cs
        - k / r_len * jy * ac
        + k / r_len * jx * as_;

    Ok((sum, diff, anti))
}

/// Maximal transverse variance assembled from [`closed_form_quadratics`].
pub fn closed_form_max_variance(p: &SpinParams) -> Result<f64> {
    let (sum, diff, anti) = closed_form_quadratics(p)?;
    Ok(assemble_max_variance(sum, diff, anti))
}

/// Full sensitivity report of the realized state.
pub fn param_report(p: &SpinParams) -> Result<MetricReport> {
    Ok(metric_report(&realize(p)?))
}

/// `χ²` of the realized state via the operator route.
pub fn chi_squared_param(p: &SpinParams) -> Result<f64> {
    Ok(param_report(p)?.chi_squared)
}

/// One reconciled discrepancy between a closed-form ingredient as it is
/// commonly quoted and the form that survives the operator check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Correction {
    pub term: &'static str,
    pub rejected: &'static str,
    pub adopted: &'static str,
    /// Unit test in this module demonstrating the rejected form fails and the
    /// adopted form passes.
    pub regression_test: &'static str,
}

pub const CORRECTIONS: &[Correction] = &[
    Correction {
        term: "polar_angle",
        rejected: "theta = arccos(<Jz> / (R sin theta))",
        adopted: "theta = arccos(<Jz> / R)",
        regression_test: "polar_angle_rejected_form_is_not_a_solution",
    },
    Correction {
        term: "n1_x_component",
        rejected: "J_n1 = sin(phi) Jx + cos(phi) Jy",
        adopted: "J_n1 = -sin(phi) Jx + cos(phi) Jy",
        regression_test: "n1_rejected_form_is_not_transverse",
    },
    Correction {
        term: "n2_y_component",
        rejected: "J_n2 = -cos(theta) cos(phi) Jx - cos(phi) sin(phi) Jy + sin(theta) Jz",
        adopted: "J_n2 = -cos(theta) cos(phi) Jx - cos(theta) sin(phi) Jy + sin(theta) Jz",
        regression_test: "n2_rejected_form_breaks_orthogonality",
    },
    Correction {
        term: "diff_ratio_terms",
        rejected: "sqrt3 [1 + zpart^2/4R^2] + ratio [..] (additive reading)",
        adopted: "sqrt3 [1 + zpart^2/4R^2] * ratio * [..] (multiplicative reading)",
        regression_test: "diff_additive_reading_fails_operator_check",
    },
];

/// Renders [`CORRECTIONS`] as CSV.
pub fn corrections_csv() -> String {
    let mut out = String::from("term,rejected_form,adopted_form,regression_test\n");
    for c in CORRECTIONS {
        out.push_str(&format!(
            "{},\"{}\",\"{}\",{}\n",
            c.term, c.rejected, c.adopted, c.regression_test
        ));
    }
    out
}
