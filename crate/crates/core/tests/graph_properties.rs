mod common;

use chebyprop::graph::{generators, load_edge_list, read_csr, LoadOptions};
use chebyprop::{Graph, NodeSet};
use common::*;
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..60, 0usize..120, any::<u64>()).prop_map(|(n, extra, seed)| generators::random_connected(n, extra, seed))
}

fn arb_graph_and_vector() -> impl Strategy<Value = (Graph, Vec<f64>)> {
    arb_graph().prop_flat_map(|g| {
        let n = g.n();
        (Just(g), prop::collection::vec(-10.0f64..10.0, n))
    })
}

proptest! {
    #[test]
    fn walk_preserves_sum((g, x) in arb_graph_and_vector()) {
        let y = g.apply_walk(&x);
        let sx: f64 = x.iter().sum();
        let sy: f64 = y.iter().sum();
        let scale = x.iter().map(|v| v.abs()).sum::<f64>().max(1.0);
        prop_assert!((sx - sy).abs() <= 1e-12 * scale);
    }

    #[test]
    fn walk_matches_dense_matrix((g, x) in arb_graph_and_vector()) {
        let dense = walk_matrix(&g) * nalgebra::DVector::from_vec(x.clone());
        prop_assert!(max_abs_diff(&g.apply_walk(&x), dense.as_slice()) <= 1e-12);
    }

    #[test]
    fn full_subset_equals_full_walk((g, x) in arb_graph_and_vector()) {
        let mut accum = vec![0.0; g.n()];
        let work = g.apply_walk_from_subset(&x, &NodeSet::all(&g), 1.0, &mut accum);
        prop_assert_eq!(work, 2 * g.m() as u64);
        prop_assert_eq!(accum, g.apply_walk(&x));
    }

    #[test]
    fn subset_walk_is_restricted_walk((g, x) in arb_graph_and_vector(), seed in any::<u64>()) {
        let mut rng = rng(seed);
        let set = random_subset(&g, 0.5, &mut rng);
        let mut accum = vec![0.0; g.n()];
        let work = g.apply_walk_from_subset(&x, &set, 2.0, &mut accum);
        let mask = set.to_mask(g.n());
        let restricted: Vec<f64> = x.iter().zip(&mask).map(|(&v, &m)| if m { 2.0 * v } else { 0.0 }).collect();
        prop_assert!(max_abs_diff(&accum, &g.apply_walk(&restricted)) <= 1e-12);
        prop_assert_eq!(work, set.vol());
        let vol: u64 = set.members().iter().map(|&u| g.degree(u) as u64).sum();
        prop_assert_eq!(set.vol(), vol);
    }

    #[test]
    fn csr_invariants(g in arb_graph()) {
        for u in 0..g.n() as u32 {
            let adj = g.neighbors(u);
            prop_assert_eq!(adj.len(), g.degree(u) as usize);
            prop_assert!(adj.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!adj.contains(&u));
            for &v in adj {
                prop_assert!(g.neighbors(v).binary_search(&u).is_ok());
            }
        }
    }

    #[test]
    fn edge_list_round_trip(edges in prop::collection::vec((0u64..40, 0u64..40), 1..80)) {
        let text: String = edges.iter().map(|(a, b)| format!("{a} {b}\n")).collect();
        let Ok(g) = load_edge_list(text.as_bytes(), &LoadOptions::default()) else {
            // only self-loops
            prop_assert!(edges.iter().all(|(a, b)| a == b));
            return Ok(());
        };
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let h = load_edge_list(buf.as_slice(), &LoadOptions::default()).unwrap();
        prop_assert_eq!(g.offsets(), h.offsets());
        prop_assert_eq!(g.neighbor_array(), h.neighbor_array());

        let mut bin = Vec::new();
        g.write_csr(&mut bin).unwrap();
        let b = read_csr(bin.as_slice()).unwrap();
        prop_assert_eq!(g.offsets(), b.offsets());
        prop_assert_eq!(g.neighbor_array(), b.neighbor_array());
    }
}

#[test]
fn star_walk_examples() {
    let g = generators::star(3);
    assert_eq!(g.apply_walk(&[0.0, 1.0, 0.0, 0.0]), vec![1.0, 0.0, 0.0, 0.0]);
    assert_eq!(g.apply_walk(&[0.0; 4]), vec![0.0; 4]);
    let mut accum = vec![0.0; 4];
    let work = g.apply_walk_from_subset(&[1.0, 0.0, 0.0, 0.0], &NodeSet::new(&g, [0]), 2.0, &mut accum);
    assert_eq!(work, 3);
    assert_eq!(accum, vec![0.0, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0]);
}

#[test]
fn snap_style_file_loads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("toy.txt");
    std::fs::write(&path, "# Undirected graph\n# FromNodeId\tToNodeId\n1\t2\n2\t3\n3\t1\n3\t4\n4\t4\n").unwrap();
    let g = chebyprop::graph::load_graph_path(&path).unwrap();
    assert_eq!((g.n(), g.m()), (4, 4));
    assert_eq!(g.original_ids(), &[1, 2, 3, 4]);

    let bin = dir.path().join("toy.cpgr");
    g.write_csr(std::fs::File::create(&bin).unwrap()).unwrap();
    let h = chebyprop::graph::load_graph_path(&bin).unwrap();
    assert_eq!(g.offsets(), h.offsets());
}
