mod common;

use common::{rotation_strategy, state};
use proptest::prelude::*;
use qfim::{concurrence_cut, purity, QubitState};

fn subset(mask: u32, n: usize) -> Vec<usize> {
    (1..=n).filter(|&q| mask & (1 << (q - 1)) != 0).collect()
}

/// Proper non-empty cuts of an `n`-qubit register.
fn cuts(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << n) - 1).map(move |m| subset(m, n))
}

proptest! {
    #[test]
    fn local_unitaries_preserve_concurrence(
        s in state(2..=5),
        us in prop::collection::vec(rotation_strategy(), 5),
    ) {
        let n = s.n_qubits();
        let t: QubitState = (1..=n).fold(s.clone(), |acc, q| acc.apply_local(q, us[q - 1]).unwrap());
        for cut in cuts(n) {
            let (a, b) = (concurrence_cut(&s, &cut).unwrap(), concurrence_cut(&t, &cut).unwrap());
            prop_assert!((a - b).abs() <= 1e-9, "cut {cut:?}: {a} vs {b}");
        }
    }

    #[test]
    fn complementary_cuts_agree(s in state(2..=6)) {
        let n = s.n_qubits();
        for cut in cuts(n) {
            let rest: Vec<usize> = (1..=n).filter(|q| !cut.contains(q)).collect();
            let (a, b) = (concurrence_cut(&s, &cut).unwrap(), concurrence_cut(&s, &rest).unwrap());
            prop_assert!((a - b).abs() <= 1e-12, "cut {cut:?}: {a} vs {b}");
        }
    }

    #[test]
    fn purity_is_bounded(s in state(2..=6)) {
        for cut in cuts(s.n_qubits()) {
            let p = purity(&s, &cut).unwrap();
            let floor = (0.5f64).powi(cut.len().min(s.n_qubits() - cut.len()) as i32);
            prop_assert!(p >= floor - 1e-12 && p <= 1.0 + 1e-12, "cut {cut:?}: {p}");
        }
    }
}
