mod common;

use proptest::prelude::*;
use qfim::statevec::plus_state;
use qfim::{Hypergraph, QubitState};

/// Edge lists on up to six vertices, each edge given as a vertex bitmask.
fn edge_masks() -> impl Strategy<Value = (usize, Vec<u32>)> {
    (2usize..=6).prop_flat_map(|n| {
        let masks = (0u32..(1 << n)).prop_filter("at least two vertices", |m| m.count_ones() >= 2);
        (
            Just(n),
            prop::collection::btree_set(masks, 0..8).prop_map(|s| s.into_iter().collect()),
        )
    })
}

fn vertices(mask: u32, n: usize) -> Vec<usize> {
    (1..=n).filter(|&v| mask & (1 << (v - 1)) != 0).collect()
}

/// Pairwise-only reference: sign is (-1)^(number of edges inside the basis state's one-set).
fn reference_graph_state(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let amp = (0.5f64).powf(n as f64 / 2.0);
    (0..1usize << n)
        .map(|idx| {
            let bit = |v: usize| idx >> (n - v) & 1 == 1;
            let k = edges.iter().filter(|&&(a, b)| bit(a) && bit(b)).count();
            if k % 2 == 0 {
                amp
            } else {
                -amp
            }
        })
        .collect()
}

proptest! {
    #[test]
    fn edge_order_does_not_matter((n, masks) in edge_masks(), seed in any::<u64>()) {
        let edges: Vec<Vec<usize>> = masks.iter().map(|&m| vertices(m, n)).collect();
        let mut shuffled = edges.clone();
        // deterministic Fisher–Yates from the seed
        let mut x = seed | 1;
        for i in (1..shuffled.len()).rev() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            shuffled.swap(i, (x % (i as u64 + 1)) as usize);
        }
        let fold = |list: &[Vec<usize>]| -> QubitState {
            list.iter().fold(plus_state(n).unwrap(), |s, e| s.apply_cz(e).unwrap())
        };
        let built = Hypergraph::from_edges(n, &shuffled).unwrap().build_state().unwrap();
        prop_assert_eq!(fold(&edges), fold(&shuffled));
        prop_assert_eq!(&built, &fold(&edges));
    }

    #[test]
    fn amplitudes_are_signed_uniform((n, masks) in edge_masks()) {
        let edges: Vec<Vec<usize>> = masks.iter().map(|&m| vertices(m, n)).collect();
        let s = Hypergraph::from_edges(n, &edges).unwrap().build_state().unwrap();
        let amp = (0.5f64).powf(n as f64 / 2.0);
        for a in s.amplitudes() {
            prop_assert_eq!(a.im, 0.0);
            prop_assert_eq!(a.re.abs(), amp);
        }
    }

    #[test]
    fn graphs_match_pairwise_reference(n in 2usize..=6, bits in any::<u32>()) {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        let h = Hypergraph::from_edges(n, pairs.iter().map(|&(a, b)| [a, b])).unwrap();
        prop_assert!(h.is_graph());
        let s = h.build_state().unwrap();
        let reference = reference_graph_state(n, &pairs);
        for (a, r) in s.amplitudes().iter().zip(&reference) {
            prop_assert_eq!(a.re, *r);
        }
    }

    #[test]
    fn canonical_text_round_trips((n, masks) in edge_masks()) {
        let h = Hypergraph::from_edges(n, masks.iter().map(|&m| vertices(m, n))).unwrap();
        let text = h.to_string();
        prop_assert_eq!(text.parse::<Hypergraph>().unwrap(), h);
    }
}
