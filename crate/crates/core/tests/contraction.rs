use proptest::prelude::*;

use twinwidth::exact::ExactSolver;
use twinwidth::sequence::batch_sequence;
use twinwidth::{
    apply_parallel, greedy_parallel_sequence, sequentialize, verify_parallel, verify_sequence,
    Color, ContractionSequence, ParallelStep, Relation, Trigraph,
};

/// Random trigraph on `n` vertices; each pair is a non-edge, black or red.
fn trigraph(max_n: usize) -> impl Strategy<Value = Trigraph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u8..5, n * (n - 1) / 2).prop_map(move |codes| {
            let mut g = Trigraph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    match codes[k] {
                        0 | 1 => {}
                        4 => g.add_edge(u, v, Color::Red).unwrap(),
                        _ => g.add_edge(u, v, Color::Black).unwrap(),
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

/// The colour rule, written out per neighbour.
fn expected_after(g: &Trigraph, u: usize, v: usize, z: usize) -> Relation {
    match (g.relation(u, z), g.relation(v, z)) {
        (Relation::None, Relation::None) => Relation::None,
        (Relation::Black, Relation::Black) => Relation::Black,
        _ => Relation::Red,
    }
}

proptest! {
    #[test]
    fn contraction_follows_the_colour_rule(g in trigraph(9), a in 0usize..9, b in 0usize..9) {
        let n = g.len();
        let (u, v) = (a % n, b % n);
        prop_assume!(u != v);
        let (h, w) = g.contract(u, v).unwrap();
        prop_assert_eq!(w, u.min(v));
        prop_assert_eq!(h.len(), n - 1);
        for z in 0..n {
            if z == u || z == v {
                continue;
            }
            prop_assert_eq!(h.relation(w, z), expected_after(&g, u, v, z));
            for y in 0..n {
                if y != u && y != v && y != z {
                    prop_assert_eq!(h.relation(y, z), g.relation(y, z));
                }
            }
        }
    }

    #[test]
    fn split_undoes_contraction(g in trigraph(9), a in 0usize..9, b in 0usize..9) {
        let n = g.len();
        let (u, v) = (a % n, b % n);
        prop_assume!(u != v);
        let rec = g.split_record(u, v).unwrap();
        let (h, w) = g.contract(u, v).unwrap();
        prop_assert_eq!(h.split(w, &rec).unwrap(), g);
    }

    #[test]
    fn local_red_degree_predicts_contraction(g in trigraph(9), a in 0usize..9, b in 0usize..9) {
        let n = g.len();
        let (u, v) = (a % n, b % n);
        prop_assume!(u != v);
        let (h, w) = g.contract(u, v).unwrap();
        let touched = h
            .neighbors(w)
            .map(|(x, _)| h.red_degree(x))
            .chain([h.red_degree(w)])
            .max()
            .unwrap();
        prop_assert_eq!(g.contraction_local_red_degree(u, v).unwrap(), touched);
    }

    #[test]
    fn parallel_step_is_any_sequential_order(g in trigraph(10), seed in any::<u64>()) {
        let n = g.len();
        let mut ids: Vec<usize> = (0..n).collect();
        // deterministic shuffle from the seed
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ids.swap(i, (s >> 33) as usize % (i + 1));
        }
        let pairs: Vec<(usize, usize)> = ids.chunks_exact(2).take(4).map(|c| (c[0], c[1])).collect();
        let par = apply_parallel(&g, &ParallelStep::new(pairs.clone()).unwrap()).unwrap();
        let mut fwd = g.clone();
        for &(u, v) in &pairs {
            fwd.contract_in_place(u, v).unwrap();
        }
        let mut back = g.clone();
        for &(u, v) in pairs.iter().rev() {
            back.contract_in_place(u, v).unwrap();
        }
        prop_assert_eq!(&fwd, &par);
        prop_assert_eq!(&back, &par);
    }

    #[test]
    fn sequentialized_width_is_bounded(g in trigraph(9), seed in any::<u64>()) {
        let mut bound = g.max_red_degree();
        let pseq = loop {
            if let Ok(p) = greedy_parallel_sequence(&g, bound, Some(seed)) {
                break p;
            }
            bound += 1;
        };
        let d = verify_parallel(&g, &pseq).width;
        let seq = sequentialize(&g, &pseq).unwrap();
        let r = verify_sequence(&g, &seq);
        prop_assert!(r.valid);
        prop_assert!(r.width <= 2 * d + 1);
    }

    #[test]
    fn exact_witness_has_the_reported_width(g in trigraph(8)) {
        let (d, seq) = ExactSolver::default().solve(&g).unwrap();
        let r = verify_sequence(&g, &seq);
        prop_assert!(r.valid);
        prop_assert_eq!(r.width, d);
        prop_assert_eq!(seq.len() + 1, g.len());
        if d > 0 {
            prop_assert!(!ExactSolver::default().decide(&g, d - 1).unwrap());
        }
        let pseq = batch_sequence(&g, &seq, d).unwrap();
        prop_assert_eq!(verify_parallel(&g, &pseq).width, d);
    }
}

#[test]
fn invalid_sequences_are_reported() {
    let g = Trigraph::from_edges(4, [(0, 1), (1, 2), (2, 3)], []).unwrap();
    let bad = ContractionSequence::from_pairs([(0, 1), (1, 2)]);
    let r = verify_sequence(&g, &bad);
    assert!(!r.valid);
    assert_eq!(r.failed_step, Some(1));
    let short = ContractionSequence::from_pairs([(0, 1)]);
    assert!(!verify_sequence(&g, &short).valid);
}

#[test]
fn contracting_removed_vertices_is_an_error() {
    let g = Trigraph::from_edges(3, [(0, 1)], []).unwrap();
    let (h, _) = g.contract(0, 1).unwrap();
    assert!(h.contract(1, 2).is_err());
    assert!(h.contract(0, 0).is_err());
    assert!(h.contract(0, 7).is_err());
}
