//! Physical invariances of the state-vector metrics.

mod common;

use common::{max_abs_diff, permute_qubits, rotation_strategy, state, symmetric_state};
use proptest::prelude::*;
use qfim::spin::MetricReport;
use qfim::{metric_report, total_concurrence, QubitState};

fn report_close(a: &MetricReport, b: &MetricReport, tol: f64) -> bool {
    let close = |x: f64, y: f64| (x == y) || (x - y).abs() <= tol * x.abs().max(1.0);
    close(a.f_q, b.f_q) && close(a.chi_squared, b.chi_squared) && close(a.v_f, b.v_f) && close(a.var_max, b.var_max)
}

fn swap_rows(n: usize) -> Vec<Vec<usize>> {
    let mut perms = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let mut p: Vec<usize> = (1..=n).collect();
            p.swap(a - 1, b - 1);
            perms.push(p);
        }
    }
    perms
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn global_phase_changes_nothing(s in state(1..=5), lambda in -10.0..10.0f64) {
        let t = s.with_global_phase(lambda);
        prop_assert!(report_close(&metric_report(&s), &metric_report(&t), 1e-12));
        if s.n_qubits() >= 2 {
            let (a, b) = (total_concurrence(&s).unwrap(), total_concurrence(&t).unwrap());
            prop_assert!((a.total - b.total).abs() <= 1e-12);
        }
    }

    #[test]
    fn collective_rotation_preserves_fisher(s in state(1..=5), u in rotation_strategy()) {
        let a = metric_report(&s);
        let b = metric_report(&s.clone().apply_collective(u));
        prop_assert!(report_close(&a, &b, 1e-9), "{a:?} vs {b:?}");
    }

    #[test]
    fn spin_flip_preserves_chi2(s in state(1..=5)) {
        let a = metric_report(&s);
        let b = metric_report(&s.spin_flip());
        prop_assert!(report_close(&a, &b, 1e-9), "{a:?} vs {b:?}");
    }

    #[test]
    fn fisher_is_bounded_by_heisenberg(s in state(1..=6)) {
        let r = metric_report(&s);
        let n = s.n_qubits() as f64;
        prop_assert!(r.f_q <= n * n + 1e-9);
        prop_assert!(r.f_q >= -1e-12);
    }

    #[test]
    fn gates_preserve_norm(s in state(2..=5), u in rotation_strategy(), q in 1usize..=5, mask in 3u32..64) {
        let n = s.n_qubits();
        let q = 1 + (q - 1) % n;
        let targets: Vec<usize> = (1..=n).filter(|&k| mask & (1 << (k - 1)) != 0).collect();
        let mut t = s.apply_local(q, u).unwrap();
        prop_assert!((t.norm_sqr() - 1.0).abs() <= 1e-12);
        if targets.len() >= 2 {
            t = t.apply_cz(&targets).unwrap();
            prop_assert!((t.norm_sqr() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn cz_is_an_involution(s in state(2..=6), mask in 3u32..64) {
        let n = s.n_qubits();
        let mut targets: Vec<usize> = (1..=n).filter(|&k| mask & (1 << (k - 1)) != 0).collect();
        if targets.len() < 2 {
            targets = vec![1, n];
        }
        let twice = s.clone().apply_cz(&targets).unwrap().apply_cz(&targets).unwrap();
        prop_assert_eq!(twice, s);
    }

    #[test]
    fn dicke_round_trip(s in symmetric_state(1..=7)) {
        let d = s.to_dicke();
        prop_assert!(d.residual_norm() <= 1e-12);
        let back = QubitState::from_dicke(&d).unwrap();
        prop_assert!(max_abs_diff(&back, &s) <= 1e-12);
    }

    #[test]
    fn symmetric_states_are_permutation_invariant(s in symmetric_state(2..=5)) {
        prop_assert!(s.to_dicke().residual_norm() <= 1e-12);
        for p in swap_rows(s.n_qubits()) {
            prop_assert!(max_abs_diff(&permute_qubits(&s, &p), &s) <= 1e-12);
        }
    }

    #[test]
    fn residual_detects_asymmetry(s in state(2..=5)) {
        let residual = s.to_dicke().residual_norm();
        let moved = swap_rows(s.n_qubits())
            .iter()
            .map(|p| max_abs_diff(&permute_qubits(&s, p), &s))
            .fold(0.0, f64::max);
        // residual = 0 exactly when every transposition leaves the state alone
        prop_assert_eq!(residual > 1e-9, moved > 1e-9, "residual {} moved {}", residual, moved);
    }
}
