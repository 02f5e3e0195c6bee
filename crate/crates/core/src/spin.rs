//! Collective spin moments, the mean-spin frame, and the phase-sensitivity
//! metrics derived from the maximal transverse variance.
//!
//! For a pure state the quantum Fisher information of a collective rotation is
//! four times the variance of the generator, so the best sensitivity
//! transverse to the mean spin is `F_Q = 4 max_{n ⊥ ⟨J⟩} Var(J·n)` and the
//! per-particle figure of merit is `χ² = N / F_Q`.

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeMap, Serializer};
use std::f64::consts::PI;

use crate::exec::Execution;
use crate::linalg::{self, Sym3, Vec3};
use crate::statevec::QubitState;

/// Mean-spin length below which the transverse plane is undefined.
pub const DEGENERACY_TOL: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

/// `J_axis |ψ⟩` with `J_axis = Σ_i σ_axis^{(i)} / 2`.
pub fn apply_collective_spin(state: &QubitState, axis: Axis) -> Vec<Complex64> {
    let amps = state.amplitudes();
    let n = state.n_qubits();
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    for q in 0..n {
        let mask = 1usize << q;
        match axis {
            Axis::X => {
                for (idx, o) in out.iter_mut().enumerate() {
                    *o += 0.5 * amps[idx ^ mask];
                }
            }
            Axis::Y => {
                for (idx, o) in out.iter_mut().enumerate() {
                    let sign = if idx & mask == 0 { -0.5 } else { 0.5 };
                    *o += sign * I * amps[idx ^ mask];
                }
            }
            Axis::Z => {
                for (idx, o) in out.iter_mut().enumerate() {
                    let sign = if idx & mask == 0 { 0.5 } else { -0.5 };
                    *o += sign * amps[idx];
                }
            }
        }
    }
    out
}

fn re_inner(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.re * y.re + x.im * y.im).sum()
}

/// First and second moments of `(J_x, J_y, J_z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CollectiveMoments {
    pub n_qubits: usize,
    /// `(⟨J_x⟩, ⟨J_y⟩, ⟨J_z⟩)`.
    pub mean: Vec3,
    /// Symmetrized second moments `½⟨J_a J_b + J_b J_a⟩`.
    pub second: Sym3,
    /// `Γ_ab = ½⟨J_a J_b + J_b J_a⟩ − ⟨J_a⟩⟨J_b⟩`.
    pub covariance: Sym3,
}

/// Computes the collective moments from the three vectors `J_a|ψ⟩`; no
/// `2^n × 2^n` operator is ever formed.
pub fn collective_moments(state: &QubitState) -> CollectiveMoments {
    let psi = state.amplitudes();
    let applied: Vec<Vec<Complex64>> = Axis::ALL.iter().map(|&a| apply_collective_spin(state, a)).collect();
    let mut mean = [0.0; 3];
    for (k, v) in applied.iter().enumerate() {
        mean[k] = re_inner(psi, v);
    }
    let mut second = [[0.0; 3]; 3];
    let mut covariance = [[0.0; 3]; 3];
    for a in 0..3 {
        for b in a..3 {
            // J hermitian: Re⟨Jaψ|Jbψ⟩ = ½⟨{Ja, Jb}⟩
            let s = re_inner(&applied[a], &applied[b]);
            second[a][b] = s;
            second[b][a] = s;
            let c = s - mean[a] * mean[b];
            covariance[a][b] = c;
            covariance[b][a] = c;
        }
    }
    CollectiveMoments {
        n_qubits: state.n_qubits(),
        mean,
        second,
        covariance,
    }
}

/// Orthonormal frame attached to the mean spin.
///
/// `n1 = (−sin φ, cos φ, 0)` and `n2 = (−cos θ cos φ, −cos θ sin φ, sin θ)`, so
/// `(n1, n2, ⟨J⟩/R)` is right-handed.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinFrame {
    pub theta: f64,
    pub phi: f64,
    /// Mean spin length `R`.
    pub mean_length: f64,
    /// Transverse length `r = √(⟨J_x⟩² + ⟨J_y⟩²)`.
    pub transverse_length: f64,
    pub n1: Vec3,
    pub n2: Vec3,
    pub degenerate: bool,
}

impl SpinFrame {
    pub fn mean_direction(&self) -> Vec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

pub fn spin_frame(m: &CollectiveMoments, tol: f64) -> SpinFrame {
    let [jx, jy, jz] = m.mean;
    let r_len = linalg::norm(&m.mean);
    let r_perp = jx.hypot(jy);
    let degenerate = r_len < tol;
    let theta = if r_len > 0.0 {
        (jz / r_len).clamp(-1.0, 1.0).acos()
    } else {
        0.0
    };
    let phi = if r_perp > 0.0 {
        let base = (jx / r_perp).clamp(-1.0, 1.0).acos();
        if jy >= 0.0 {
            base
        } else {
            2.0 * PI - base
        }
    } else {
        0.0
    };
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    SpinFrame {
        theta,
        phi,
        mean_length: r_len,
        transverse_length: r_perp,
        n1: [-sp, cp, 0.0],
        n2: [-ct * cp, -ct * sp, st],
        degenerate,
    }
}

/// `(⟨J_n1² + J_n2²⟩, ⟨J_n1² − J_n2²⟩, ⟨{J_n1, J_n2}⟩)` in the given frame.
pub fn transverse_quadratics(m: &CollectiveMoments, frame: &SpinFrame) -> (f64, f64, f64) {
    let a = linalg::quad_form(&m.second, &frame.n1, &frame.n1);
    let c = linalg::quad_form(&m.second, &frame.n2, &frame.n2);
    let b = linalg::quad_form(&m.second, &frame.n1, &frame.n2);
    (a + c, a - c, 2.0 * b)
}

/// Largest eigenvalue of a 2×2 block written through its invariants:
/// `½ sum + ½ √(diff² + anti²)`.
pub fn assemble_max_variance(sum: f64, diff: f64, anti: f64) -> f64 {
    0.5 * sum + 0.5 * diff.hypot(anti)
}

/// Maximal variance of `J·n` over unit `n` perpendicular to the mean spin, or
/// over the whole sphere when the frame is degenerate.
pub fn max_perp_variance(m: &CollectiveMoments, frame: &SpinFrame) -> f64 {
    if frame.degenerate {
        linalg::sym3_max_eigenvalue(&m.covariance)
    } else {
        let g = &m.covariance;
        linalg::sym2_max_eigenvalue(
            linalg::quad_form(g, &frame.n1, &frame.n1),
            linalg::quad_form(g, &frame.n1, &frame.n2),
            linalg::quad_form(g, &frame.n2, &frame.n2),
        )
    }
}

/// Sensitivity summary of a pure state.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport {
    pub n: usize,
    pub f_q: f64,
    /// `N / F_Q`; infinite when the state has no phase sensitivity.
    pub chi_squared: f64,
    /// Statistical speed `√F_Q`.
    pub v_f: f64,
    pub var_max: f64,
    pub degenerate_frame: bool,
    /// `F_Q > N`.
    pub shot_noise_beaten: bool,
    /// `F_Q = N²` within tolerance.
    pub heisenberg_attained: bool,
    /// Quantum Cramér–Rao bound `1/√F_Q`.
    pub delta_theta_qcr: f64,
}

/// `F_Q` below this counts as no sensitivity at all.
pub const MIN_FISHER: f64 = 1e-12;
const FLAG_TOL: f64 = 1e-9;

impl MetricReport {
    pub fn has_sensitivity(&self) -> bool {
        self.f_q >= MIN_FISHER
    }

    pub fn from_moments(m: &CollectiveMoments) -> Self {
        let frame = spin_frame(m, DEGENERACY_TOL);
        let var_max = max_perp_variance(m, &frame).max(0.0);
        let n = m.n_qubits;
        let nf = n as f64;
        let f_q = 4.0 * var_max;
        let (chi_squared, delta_theta_qcr) = if f_q >= MIN_FISHER {
            (nf / f_q, f_q.sqrt().recip())
        } else {
            (f64::INFINITY, f64::INFINITY)
        };
        MetricReport {
            n,
            f_q,
            chi_squared,
            v_f: f_q.sqrt(),
            var_max,
            degenerate_frame: frame.degenerate,
            shot_noise_beaten: f_q > nf + FLAG_TOL,
            heisenberg_attained: (f_q - nf * nf).abs() <= FLAG_TOL * nf * nf,
            delta_theta_qcr,
        }
    }
}

fn finite_or_null<S: SerializeMap>(map: &mut S, key: &str, v: f64) -> Result<(), S::Error> {
    if v.is_finite() {
        map.serialize_entry(key, &v)
    } else {
        map.serialize_entry(key, &Option::<f64>::None)
    }
}

impl Serialize for MetricReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(9))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("f_q", &self.f_q)?;
        finite_or_null(&mut map, "chi2", self.chi_squared)?;
        map.serialize_entry("v_f", &self.v_f)?;
        map.serialize_entry("var_max", &self.var_max)?;
        map.serialize_entry("degenerate_frame", &self.degenerate_frame)?;
        map.serialize_entry("shot_noise_beaten", &self.shot_noise_beaten)?;
        map.serialize_entry("heisenberg_attained", &self.heisenberg_attained)?;
        finite_or_null(&mut map, "delta_theta_qcr", self.delta_theta_qcr)?;
        map.end()
    }
}

pub fn metric_report(state: &QubitState) -> MetricReport {
    MetricReport::from_moments(&collective_moments(state))
}

/// `(u·σ)/2` as a 2×2 matrix.
fn half_pauli_along(u: &Vec3) -> [[Complex64; 2]; 2] {
    [
        [Complex64::new(0.5 * u[2], 0.0), Complex64::new(0.5 * u[0], -0.5 * u[1])],
        [Complex64::new(0.5 * u[0], 0.5 * u[1]), Complex64::new(-0.5 * u[2], 0.0)],
    ]
}

/// `(⟨J·u⟩, ⟨(J·u)²⟩)` by applying the single-qubit generator to each qubit.
fn directional_moments(state: &QubitState, u: &Vec3) -> (f64, f64) {
    let s = half_pauli_along(u);
    let amps = state.amplitudes();
    let n = state.n_qubits();
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    for q in 0..n {
        let mask = 1usize << q;
        for (idx, o) in out.iter_mut().enumerate() {
            let bit = usize::from(idx & mask != 0);
            let partner = idx ^ mask;
            *o += s[bit][bit] * amps[idx] + s[bit][1 - bit] * amps[partner];
        }
    }
    let first = re_inner(amps, &out);
    let second = out.iter().map(|c| c.norm_sqr()).sum();
    (first, second)
}

fn directional_variance(state: &QubitState, u: &Vec3) -> f64 {
    let (first, second) = directional_moments(state, u);
    second - first * first
}

/// Grid-search oracle for [`max_perp_variance`]: evaluates `Var(J·u)` directly
/// on `grid_points` directions, either uniformly over the half circle
/// perpendicular to the mean spin, or on a Fibonacci sphere (poles included)
/// when the mean spin vanishes.
pub fn brute_force_max_variance(state: &QubitState, grid_points: usize, exec: Execution) -> f64 {
    let grid_points = grid_points.max(64);
    let basis: [Vec3; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mean: Vec3 = [0, 1, 2].map(|k| directional_moments(state, &basis[k]).0);
    let r_len = linalg::norm(&mean);
    if r_len < DEGENERACY_TOL {
        let golden = PI * (3.0 - 5f64.sqrt());
        let last = (grid_points - 1) as f64;
        exec.max_over(grid_points, |k| {
            let z = 1.0 - 2.0 * k as f64 / last;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let (s, c) = (golden * k as f64).sin_cos();
            directional_variance(state, &[rho * c, rho * s, z])
        })
    } else {
        let m = mean.map(|x| x / r_len);
        // helper axis least aligned with the mean
        let k = (0..3).min_by(|&a, &b| m[a].abs().total_cmp(&m[b].abs())).unwrap();
        let proj = m[k];
        let mut e1 = basis[k];
        for i in 0..3 {
            e1[i] -= proj * m[i];
        }
        let l = linalg::norm(&e1);
        let e1 = e1.map(|x| x / l);
        let e2 = linalg::cross(&m, &e1);
        exec.max_over(grid_points, |j| {
            let (s, c) = (PI * j as f64 / grid_points as f64).sin_cos();
            let u = [0, 1, 2].map(|i| c * e1[i] + s * e2[i]);
            directional_variance(state, &u)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::parse_hypergraph;
    use crate::statevec::{ghz_state, plus_state, zero_state};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn assert_sym3(m: &Sym3, want: &Sym3, tol: f64) {
        for i in 0..3 {
            for j in 0..3 {
                assert!(close(m[i][j], want[i][j], tol), "{m:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn moments_of_zero_state() {
        let m = collective_moments(&zero_state(3).unwrap());
        assert_eq!(m.mean, [0.0, 0.0, 1.5]);
        assert_sym3(
            &m.covariance,
            &[[0.75, 0.0, 0.0], [0.0, 0.75, 0.0], [0.0, 0.0, 0.0]],
            1e-15,
        );
    }

    #[test]
    fn moments_of_ghz() {
        let m = collective_moments(&ghz_state(3).unwrap());
        assert!(m.mean.iter().all(|x| x.abs() < 1e-15));
        assert!(close(m.covariance[2][2], 2.25, 1e-15));
    }

    #[test]
    fn moments_of_plus_state() {
        let m = collective_moments(&plus_state(3).unwrap());
        assert!(close(m.mean[0], 1.5, 1e-15) && m.mean[1].abs() < 1e-15 && m.mean[2].abs() < 1e-15);
        assert_sym3(
            &m.covariance,
            &[[0.0, 0.0, 0.0], [0.0, 0.75, 0.0], [0.0, 0.0, 0.75]],
            1e-14,
        );
    }

    #[test]
    fn frame_examples() {
        let mk = |mean: Vec3| CollectiveMoments {
            n_qubits: 3,
            mean,
            second: [[0.0; 3]; 3],
            covariance: [[0.0; 3]; 3],
        };
        let f = spin_frame(&mk([1.5, 0.0, 0.0]), DEGENERACY_TOL);
        assert!(close(f.theta, PI / 2.0, 1e-15) && f.phi == 0.0 && f.mean_length == 1.5);
        assert!(!f.degenerate);
        let f = spin_frame(&mk([0.0, 1.5, 0.0]), DEGENERACY_TOL);
        assert!(close(f.theta, PI / 2.0, 1e-15) && close(f.phi, PI / 2.0, 1e-15));
        let f = spin_frame(&mk([0.0, -1.5, 0.0]), DEGENERACY_TOL);
        assert!(close(f.phi, 1.5 * PI, 1e-15));
        let ghz = collective_moments(&ghz_state(3).unwrap());
        assert!(spin_frame(&ghz, DEGENERACY_TOL).degenerate);
    }

    #[test]
    fn frame_is_right_handed_orthonormal() {
        for mean in [[0.3, -0.2, 0.9], [-1.0, 0.1, -0.2], [0.0, 0.0, 1.0], [0.2, 0.5, 0.0]] {
            let m = CollectiveMoments {
                n_qubits: 3,
                mean,
                second: [[0.0; 3]; 3],
                covariance: [[0.0; 3]; 3],
            };
            let f = spin_frame(&m, DEGENERACY_TOL);
            let u = mean.map(|x| x / linalg::norm(&mean));
            assert!(linalg::dot(&f.n1, &f.n2).abs() < 1e-12);
            assert!(linalg::dot(&f.n1, &u).abs() < 1e-12);
            assert!(linalg::dot(&f.n2, &u).abs() < 1e-12);
            assert!(close(linalg::norm(&f.n1), 1.0, 1e-12) && close(linalg::norm(&f.n2), 1.0, 1e-12));
            let c = linalg::cross(&f.n1, &f.n2);
            assert!((0..3).all(|i| close(c[i], u[i], 1e-12)), "{c:?} vs {u:?}");
            let d = f.mean_direction();
            assert!((0..3).all(|i| close(d[i], u[i], 1e-12)));
        }
    }

    #[test]
    fn n1_sign_does_not_change_the_maximum() {
        let s = parse_hypergraph("3; 1 2 3").unwrap().build_state().unwrap();
        let m = collective_moments(&s);
        let f = spin_frame(&m, DEGENERACY_TOL);
        let mut flipped = f.clone();
        flipped.n1 = f.n1.map(|x| -x);
        assert_eq!(max_perp_variance(&m, &f), max_perp_variance(&m, &flipped));
    }

    #[test]
    fn max_variance_examples() {
        let ghz = collective_moments(&ghz_state(3).unwrap());
        let f = spin_frame(&ghz, DEGENERACY_TOL);
        assert!(close(max_perp_variance(&ghz, &f), 2.25, 1e-12));

        let tri = collective_moments(&parse_hypergraph("3; 1 2; 2 3; 1 3").unwrap().build_state().unwrap());
        let f = spin_frame(&tri, DEGENERACY_TOL);
        assert!(f.degenerate);
        assert!(close(max_perp_variance(&tri, &f), 2.25, 1e-12));

        let plus = collective_moments(&plus_state(3).unwrap());
        let f = spin_frame(&plus, DEGENERACY_TOL);
        assert!(!f.degenerate);
        assert!(close(max_perp_variance(&plus, &f), 0.75, 1e-12));
    }

    #[test]
    fn transverse_quadratics_reassemble_the_eigenvalue() {
        let s = parse_hypergraph("3; 1 2 3").unwrap().build_state().unwrap();
        let m = collective_moments(&s);
        let f = spin_frame(&m, DEGENERACY_TOL);
        let (sum, diff, anti) = transverse_quadratics(&m, &f);
        assert!(close(
            assemble_max_variance(sum, diff, anti),
            max_perp_variance(&m, &f),
            1e-12
        ));
    }

    #[test]
    fn reports() {
        let r = metric_report(&ghz_state(3).unwrap());
        assert!(close(r.f_q, 9.0, 1e-12) && close(r.chi_squared, 1.0 / 3.0, 1e-12));
        assert!(r.heisenberg_attained && r.shot_noise_beaten && r.degenerate_frame);
        assert!(close(r.delta_theta_qcr, 1.0 / 3.0, 1e-12));

        let r = metric_report(&zero_state(3).unwrap());
        assert!(close(r.f_q, 3.0, 1e-12) && close(r.chi_squared, 1.0, 1e-12));
        assert!(!r.shot_noise_beaten && !r.heisenberg_attained);
        assert!(close(r.chi_squared * r.f_q, 3.0, 1e-12));
    }

    #[test]
    fn singlet_has_no_sensitivity() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = QubitState::from_real(&[0.0, h, -h, 0.0]).unwrap();
        let r = metric_report(&singlet);
        assert!(!r.has_sensitivity());
        assert!(r.chi_squared.is_infinite());
        let json = serde_json::to_value(&r).unwrap();
        assert!(json["chi2"].is_null());
    }

    #[test]
    fn report_json_keys() {
        let r = metric_report(&ghz_state(3).unwrap());
        let v = serde_json::to_value(&r).unwrap();
        for k in [
            "n",
            "f_q",
            "chi2",
            "v_f",
            "var_max",
            "degenerate_frame",
            "shot_noise_beaten",
            "heisenberg_attained",
        ] {
            assert!(v.get(k).is_some(), "missing {k}");
        }
        assert_eq!(v["n"], 3);
    }

    #[test]
    fn oracle_examples() {
        let exec = Execution::default();
        let tri = parse_hypergraph("3; 1 2; 2 3; 1 3").unwrap().build_state().unwrap();
        assert!(close(
            brute_force_max_variance(&ghz_state(3).unwrap(), 10_000, exec),
            2.25,
            1e-4
        ));
        assert!(close(
            brute_force_max_variance(&plus_state(3).unwrap(), 10_000, exec),
            0.75,
            1e-4
        ));
        let v = brute_force_max_variance(&tri, 10_000, exec);
        assert!(close(v, 2.25, 1e-3), "{v}");
    }

    #[test]
    fn oracle_is_execution_independent() {
        let s = parse_hypergraph("3; 1 2 3").unwrap().build_state().unwrap();
        let a = brute_force_max_variance(&s, 5_000, Execution::Sequential);
        let b = brute_force_max_variance(&s, 5_000, Execution::Parallel);
        assert_eq!(a, b);
    }
}
