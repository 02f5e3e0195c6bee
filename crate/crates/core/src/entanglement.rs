//! Bipartite concurrence of pure states, `E = √(2 [1 − tr ρ_M²])`.

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::statevec::QubitState;

/// Gathers the bits of `idx` selected by `mask` into a contiguous integer.
fn extract_bits(idx: usize, mask: usize) -> usize {
    let mut out = 0;
    let mut bit = 0;
    let mut m = mask;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if idx & low != 0 {
            out |= 1 << bit;
        }
        bit += 1;
        m &= m - 1;
    }
    out
}

fn subset_mask(state: &QubitState, subset: &[usize]) -> Result<usize> {
    let mut mask = 0;
    for &q in subset {
        mask |= state.qubit_mask(q)?;
    }
    let k = mask.count_ones() as usize;
    if k == 0 || k == state.n_qubits() {
        return Err(Error::InvalidCut(format!(
            "subsystem {subset:?} must be a non-empty proper subset of 1..={}",
            state.n_qubits()
        )));
    }
    Ok(mask)
}

/// `tr ρ_M²` for the reduced state on `subset`.
///
/// Works on the `2^|M| × 2^|M'|` reshaping of the amplitude vector and forms
/// only the Gram matrix of the smaller side.
pub fn purity(state: &QubitState, subset: &[usize]) -> Result<f64> {
    let mask = subset_mask(state, subset)?;
    let full = state.dim() - 1;
    let (keep, trace) = if mask.count_ones() <= (full & !mask).count_ones() {
        (mask, full & !mask)
    } else {
        (full & !mask, mask)
    };
    let rows = 1usize << keep.count_ones();
    let cols = 1usize << trace.count_ones();
    let mut a = vec![Complex64::new(0.0, 0.0); rows * cols];
    for (idx, amp) in state.amplitudes().iter().enumerate() {
        a[extract_bits(idx, keep) * cols + extract_bits(idx, trace)] = *amp;
    }
    let mut total = 0.0;
    for i in 0..rows {
        let ri = &a[i * cols..(i + 1) * cols];
        for j in i..rows {
            let rj = &a[j * cols..(j + 1) * cols];
            let g: Complex64 = ri.iter().zip(rj).map(|(x, y)| x * y.conj()).sum();
            total += if i == j { g.norm_sqr() } else { 2.0 * g.norm_sqr() };
        }
    }
    Ok(total)
}

/// Concurrence across the cut `subset | complement`.
pub fn concurrence_cut(state: &QubitState, subset: &[usize]) -> Result<f64> {
    let p = purity(state, subset)?;
    Ok((2.0 * (1.0 - p)).max(0.0).sqrt())
}

/// Concurrence of every single-qubit-versus-rest cut and their sum.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcurrenceReport {
    /// `("1|23", E)` pairs in qubit order.
    pub per_cut: Vec<(String, f64)>,
    pub total: f64,
}

/// Label such as `1|23` (labels are comma separated once `n ≥ 10`).
pub fn cut_label(n: usize, subset: &[usize]) -> String {
    let sep = if n >= 10 { "," } else { "" };
    let mut inside: Vec<usize> = subset.to_vec();
    inside.sort_unstable();
    inside.dedup();
    let outside: Vec<usize> = (1..=n).filter(|q| !inside.contains(q)).collect();
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(sep);
    format!("{}|{}", join(&inside), join(&outside))
}

/// Sum of the single-qubit-cut concurrences; zero cuts for a single qubit.
pub fn total_concurrence(state: &QubitState) -> Result<ConcurrenceReport> {
    let n = state.n_qubits();
    if n < 2 {
        return Ok(ConcurrenceReport {
            per_cut: Vec::new(),
            total: 0.0,
        });
    }
    let per_cut = (1..=n)
        .map(|q| Ok((cut_label(n, &[q]), concurrence_cut(state, &[q])?)))
        .collect::<Result<Vec<_>>>()?;
    let total = per_cut.iter().map(|(_, e)| e).sum();
    Ok(ConcurrenceReport { per_cut, total })
}

struct Cuts<'a>(&'a [(String, f64)]);

impl Serialize for Cuts<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (label, e) in self.0 {
            map.serialize_entry(label, e)?;
        }
        map.end()
    }
}

impl Serialize for ConcurrenceReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("cuts", &Cuts(&self.per_cut))?;
        map.serialize_entry("total", &self.total)?;
        map.end()
    }
}
