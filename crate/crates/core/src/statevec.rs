//! Dense pure states of `n` qubits.
//!
//! Basis index convention: qubit 1 is the most significant bit, so the index of
//! `|q1 q2 … qn⟩` reads off directly from the ket. In the symmetric (Dicke)
//! basis a `0` bit carries spin projection `+1/2` and a `1` bit carries `-1/2`.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_QUBITS: usize = 20;
/// Environment variable overriding [`DEFAULT_MAX_QUBITS`].
pub const MAX_QUBITS_ENV: &str = "QFIM_MAX_QUBITS";
const HARD_MAX_QUBITS: usize = 30;
// Rounding-level deviations are left alone so serialized states reload bit-exactly.
const RENORMALIZE_THRESHOLD: f64 = 1e-13;

/// Normalization tolerance enforced on every constructed state.
pub const NORM_TOL: f64 = 1e-12;
/// Largest out-of-subspace norm accepted by [`QubitState::from_dicke`].
pub const SYMMETRIC_TOL: f64 = 1e-10;

/// Current qubit-count cap, honoring `QFIM_MAX_QUBITS` when it parses.
pub fn max_qubits() -> usize {
    std::env::var(MAX_QUBITS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .map(|v| v.min(HARD_MAX_QUBITS))
        .unwrap_or(DEFAULT_MAX_QUBITS)
}

fn check_size(n: usize, min: usize) -> Result<()> {
    let max = max_qubits();
    if n < min || n > max {
        return Err(Error::InvalidSize { n, min, max });
    }
    Ok(())
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Normalized amplitude vector over the `2^n` computational basis states.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl QubitState {
    /// Wraps `amplitudes`, which must have length `2^n` and unit norm within
    /// [`NORM_TOL`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::with_norm_tolerance(amplitudes, NORM_TOL)
    }

    /// Like [`QubitState::new`] but accepts a looser norm deviation and
    /// renormalizes. Used for states read from files.
    pub fn with_norm_tolerance(mut amplitudes: Vec<Complex64>, tol: f64) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::LengthMismatch {
                len,
                expected: len.next_power_of_two().max(2),
            });
        }
        let n_qubits = len.trailing_zeros() as usize;
        check_size(n_qubits, 1)?;
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm_sqr });
        }
        if (norm_sqr - 1.0).abs() > RENORMALIZE_THRESHOLD {
            let scale = norm_sqr.sqrt().recip();
            amplitudes.iter_mut().for_each(|a| *a *= scale);
        }
        Ok(Self { n_qubits, amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Bit mask of qubit `q` (1-based) inside a basis index.
    pub fn qubit_mask(&self, q: usize) -> Result<usize> {
        if q == 0 || q > self.n_qubits {
            return Err(Error::QubitOutOfRange {
                index: q,
                n_qubits: self.n_qubits,
            });
        }
        Ok(1 << (self.n_qubits - q))
    }

    /// Multi-controlled Z on `targets` (1-based, treated as a set): negates
    /// every amplitude whose index has all target bits set.
    pub fn apply_cz(mut self, targets: &[usize]) -> Result<Self> {
        let mut mask = 0usize;
        for &q in targets {
            mask |= self.qubit_mask(q)?;
        }
        let distinct = mask.count_ones() as usize;
        if distinct < 2 {
            return Err(Error::TooFewTargets(distinct));
        }
        for (idx, amp) in self.amplitudes.iter_mut().enumerate() {
            if idx & mask == mask {
                *amp = -*amp;
            }
        }
        Ok(self)
    }

    /// Applies the 2×2 unitary `u` (row-major, basis `|0⟩, |1⟩`) to qubit `q`.
    pub fn apply_local(mut self, q: usize, u: [[Complex64; 2]; 2]) -> Result<Self> {
        let mask = self.qubit_mask(q)?;
        for idx in 0..self.amplitudes.len() {
            if idx & mask != 0 {
                continue;
            }
            let a0 = self.amplitudes[idx];
            let a1 = self.amplitudes[idx | mask];
            self.amplitudes[idx] = u[0][0] * a0 + u[0][1] * a1;
            self.amplitudes[idx | mask] = u[1][0] * a0 + u[1][1] * a1;
        }
        Ok(self)
    }

    /// Applies the same single-qubit unitary to every qubit.
    pub fn apply_collective(self, u: [[Complex64; 2]; 2]) -> Self {
        let n = self.n_qubits;
        (1..=n).fold(self, |s, q| s.apply_local(q, u).expect("qubit index in range"))
    }

    /// Pauli X on every qubit.
    pub fn spin_flip(&self) -> Self {
        let mask = self.amplitudes.len() - 1;
        let amplitudes = (0..=mask).map(|idx| self.amplitudes[idx ^ mask]).collect();
        Self {
            n_qubits: self.n_qubits,
            amplitudes,
        }
    }

    /// Multiplies every amplitude by `e^{i lambda}`.
    pub fn with_global_phase(&self, lambda: f64) -> Self {
        let phase = Complex64::from_polar(1.0, lambda);
        Self {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Projects onto the symmetric subspace.
    pub fn to_dicke(&self) -> DickeDecomposition {
        let n = self.n_qubits;
        // sums[w] = sum of amplitudes with w one-bits
        let mut sums = vec![Complex64::new(0.0, 0.0); n + 1];
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            sums[idx.count_ones() as usize] += amp;
        }
        let norms: Vec<f64> = (0..=n).map(|w| binomial(n, w).sqrt()).collect();
        let mut residual_sqr = 0.0;
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            let w = idx.count_ones() as usize;
            let projected = sums[w] / (norms[w] * norms[w]);
            residual_sqr += (amp - projected).norm_sqr();
        }
        // ascending m: index i has m = -n/2 + i, i.e. n - i one-bits
        let coefficients = (0..=n)
            .map(|i| {
                let w = n - i;
                sums[w] / norms[w]
            })
            .collect();
        DickeDecomposition {
            n_qubits: n,
            coefficients,
            residual_norm: residual_sqr.sqrt(),
        }
    }

    /// Lifts a symmetric-subspace state back into the computational basis.
    pub fn from_dicke(d: &DickeDecomposition) -> Result<Self> {
        if d.residual_norm > SYMMETRIC_TOL {
            return Err(Error::NotSymmetric {
                residual: d.residual_norm,
            });
        }
        let n = d.n_qubits;
        check_size(n, 1)?;
        let scale: Vec<f64> = (0..=n).map(|w| binomial(n, w).sqrt().recip()).collect();
        let amplitudes = (0..1usize << n)
            .map(|idx| {
                let w = idx.count_ones() as usize;
                d.coefficients[n - w] * scale[w]
            })
            .collect();
        Self::new(amplitudes)
    }

    /// Serializes as `{"n_qubits": n, "amplitudes": [[re, im], …]}` with 17
    /// significant digits per component.
    pub fn to_json(&self) -> String {
        let mut out = String::with_capacity(32 + 52 * self.amplitudes.len());
        let _ = write!(out, "{{\"n_qubits\": {}, \"amplitudes\": [", self.n_qubits);
        for (i, a) in self.amplitudes.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "[{:.16e}, {:.16e}]", a.re, a.im);
        }
        out.push_str("]}");
        out
    }

    /// Parses the JSON state format. The norm may deviate from one by at most
    /// `norm_tol`; the state is renormalized.
    pub fn from_json(text: &str, norm_tol: f64) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            n_qubits: usize,
            amplitudes: Vec<[f64; 2]>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        check_size(raw.n_qubits, 1)?;
        let expected = 1usize << raw.n_qubits;
        if raw.amplitudes.len() != expected {
            return Err(Error::LengthMismatch {
                len: raw.amplitudes.len(),
                expected,
            });
        }
        let amps = raw
            .amplitudes
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        Self::with_norm_tolerance(amps, norm_tol)
    }
}

/// `|+⟩^{⊗n}`.
pub fn plus_state(n: usize) -> Result<QubitState> {
    check_size(n, 1)?;
    let amp = Complex64::new((0.5f64).powf(n as f64 / 2.0), 0.0);
    QubitState::new(vec![amp; 1 << n])
}

/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn ghz_state(n: usize) -> Result<QubitState> {
    check_size(n, 2)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    amps[0] = Complex64::new(h, 0.0);
    amps[(1 << n) - 1] = Complex64::new(h, 0.0);
    QubitState::new(amps)
}

/// `|0…0⟩`.
pub fn zero_state(n: usize) -> Result<QubitState> {
    check_size(n, 1)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0] = Complex64::new(1.0, 0.0);
    QubitState::new(amps)
}

/// True when `a` and `b` describe the same ray: `|⟨a|b⟩| ≥ 1 − tol`.
pub fn equal_up_to_phase(a: &QubitState, b: &QubitState, tol: f64) -> bool {
    a.n_qubits == b.n_qubits && a.inner(b).norm() >= 1.0 - tol
}

/// Amplitudes of a pure state in the symmetric `|j, m⟩` basis, `j = n/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct DickeDecomposition {
    n_qubits: usize,
    /// Ascending in `m`: index `i` holds `m = -j + i`.
    coefficients: Vec<Complex64>,
    residual_norm: f64,
}

impl DickeDecomposition {
    /// Builds a fully symmetric decomposition from coefficients listed in
    /// ascending `m`. Requires unit norm within [`NORM_TOL`].
    pub fn from_coefficients(coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::LengthMismatch {
                len: coefficients.len(),
                expected: 2,
            });
        }
        let norm_sqr: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self {
            n_qubits: coefficients.len() - 1,
            coefficients,
            residual_norm: 0.0,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Total spin `j = n/2`.
    pub fn j(&self) -> f64 {
        self.n_qubits as f64 / 2.0
    }

    /// Coefficients in ascending `m`.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Coefficient of `|j, m⟩` with `m = twice_m / 2`.
    pub fn coefficient(&self, twice_m: i32) -> Option<Complex64> {
        let n = self.n_qubits as i32;
        if twice_m.abs() > n || (twice_m + n) % 2 != 0 {
            return None;
        }
        Some(self.coefficients[((twice_m + n) / 2) as usize])
    }

    pub fn residual_norm(&self) -> f64 {
        self.residual_norm
    }
}
