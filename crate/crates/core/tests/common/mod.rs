#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use qfim::statevec::{DickeDecomposition, QubitState};

pub type U2 = [[Complex64; 2]; 2];

fn normalize(raw: Vec<(f64, f64)>) -> Option<Vec<Complex64>> {
    let v: Vec<Complex64> = raw.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    (norm > 1e-3).then(|| v.into_iter().map(|a| a / norm).collect())
}

/// Random pure state on `n_range` qubits.
pub fn state(n_range: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = QubitState> {
    n_range
        .prop_flat_map(|n| prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1 << n))
        .prop_filter_map("near-zero vector", |raw| {
            normalize(raw).map(|a| QubitState::new(a).unwrap())
        })
}

/// Random state in the symmetric subspace.
pub fn symmetric_state(n_range: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = QubitState> {
    n_range
        .prop_flat_map(|n| prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n + 1))
        .prop_filter_map("near-zero vector", |raw| {
            let c = normalize(raw)?;
            Some(QubitState::from_dicke(&DickeDecomposition::from_coefficients(c).unwrap()).unwrap())
        })
}

/// `exp(-i t (u·σ)/2)` for a unit axis `u`.
pub fn rotation(axis: [f64; 3], angle: f64) -> U2 {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let [x, y, z] = axis.map(|c| c / n);
    let (s, c) = (0.5 * angle).sin_cos();
    let i = Complex64::i();
    [
        [Complex64::new(c, 0.0) - i * s * z, -i * s * Complex64::new(x, -y)],
        [-i * s * Complex64::new(x, y), Complex64::new(c, 0.0) + i * s * z],
    ]
}

pub fn rotation_strategy() -> impl Strategy<Value = U2> {
    (
        prop::array::uniform3(-1.0..1.0f64),
        -std::f64::consts::PI..std::f64::consts::PI,
    )
        .prop_filter("degenerate axis", |(a, _)| a.iter().map(|c| c * c).sum::<f64>() > 1e-4)
        .prop_map(|(a, t)| rotation(a, t))
}

/// Relabels qubits: qubit `q` of the result is qubit `perm[q-1]` of `s`.
pub fn permute_qubits(s: &QubitState, perm: &[usize]) -> QubitState {
    let n = s.n_qubits();
    let amps = (0..s.dim())
        .map(|idx| {
            let mut src = 0;
            for (q, &from) in perm.iter().enumerate() {
                if idx & (1 << (n - 1 - q)) != 0 {
                    src |= 1 << (n - from);
                }
            }
            s.amplitudes()[src]
        })
        .collect();
    QubitState::new(amps).unwrap()
}

pub fn max_abs_diff(a: &QubitState, b: &QubitState) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
