use std::collections::HashSet;

use num_rational::Ratio;
use proptest::prelude::*;

use twinwidth::constructions::permutation::{ceil_log, compose_all};
use twinwidth::constructions::subdivision::{merge_width, subdivision_depth};
use twinwidth::constructions::{
    complete, halfgraph_sandwich, has_biclique, is_parallel_t_merge, iterated_lift, layout_check,
    merge_decompose, path, product_bound, product_sequence, random_layout, rook, strong_product,
    subdivide, subdivision_order, two_lift, Layout, LayoutKind, Permutation, Signing,
};
use twinwidth::exact::ExactSolver;
use twinwidth::matrix::Entry;
use twinwidth::{verify_parallel, verify_sequence, Color, Trigraph};

fn interval_graph(intervals: &[(f64, f64)]) -> Trigraph {
    let mut g = Trigraph::new(intervals.len());
    for (i, a) in intervals.iter().enumerate() {
        for (j, b) in intervals.iter().enumerate().skip(i + 1) {
            if a.0.max(b.0) <= a.1.min(b.1) {
                g.add_edge(i, j, Color::Black).unwrap();
            }
        }
    }
    g
}

#[test]
fn halfgraph_matches_the_interval_model() {
    // interval model of the sandwich for σ = 41532
    let mut iv: Vec<(f64, f64)> = (0..5).map(|i| (1.2, 2.0 + 0.3 * i as f64)).collect();
    iv.extend([(2.1, 4.9), (2.4, 4.0), (2.7, 5.2), (3.0, 4.6), (3.3, 4.3)]);
    iv.extend([(5.0, 6.5), (4.1, 6.5), (5.3, 6.5), (4.7, 6.5), (4.4, 6.5)]);
    let fig = interval_graph(&iv);
    // The interval model has a_i b_j adjacent iff i > j and b_x c_y adjacent iff
    // σ(y) < σ(x). Reversing A and B and sending c_y to c_{n-1-σ(y)} turns it
    // into the generator's convention with the reverse-complement of σ.
    let sigma = Permutation::from_one_based(&[4, 1, 5, 3, 2]).unwrap();
    let flip: Vec<usize> = (0..15)
        .map(|v| match v / 5 {
            2 => 10 + 4 - sigma.image(v % 5),
            part => part * 5 + 4 - v % 5,
        })
        .collect();
    let flipped_sigma = Permutation::new((0..5).map(|i| 4 - sigma.image(4 - i)).collect()).unwrap();
    assert_eq!(flipped_sigma.one_based(), vec![4, 3, 1, 5, 2]);
    assert_eq!(
        fig.relabel(&flip).unwrap(),
        halfgraph_sandwich(&flipped_sigma, true)
    );
}

#[test]
fn halfgraph_b_c_matrix_carries_the_permutation() {
    let sigma = Permutation::from_one_based(&[4, 1, 5, 3, 2]).unwrap();
    let g = halfgraph_sandwich(&sigma, false);
    // in row b_x of the B x C matrix the last non-edge sits at column σ(x)
    for x in 0..5 {
        let last_zero = (0..5)
            .rev()
            .find(|&j| g.color(5 + x, 10 + j).is_none())
            .unwrap();
        assert_eq!(sigma.matrix().get(x, last_zero), Entry::One);
    }
    for i in 0..5 {
        for j in 0..5 {
            assert!(g.color(i, 10 + j).is_none());
            assert_eq!(g.color(i, 5 + j).is_some(), i < j);
        }
    }
}

#[test]
fn rook_symmetric_difference() {
    let i = 3;
    let g = rook(i);
    let cell = |v: usize| (v / i, v % i);
    let mut best = usize::MAX;
    for u in 0..i * i {
        for v in u + 1..i * i {
            // neighbourhoods from coordinates, independent of the generator
            let nb = |a: usize| -> HashSet<usize> {
                (0..i * i)
                    .filter(|&b| b != a && (cell(a).0 == cell(b).0 || cell(a).1 == cell(b).1))
                    .collect()
            };
            let (nu, nv) = (nb(u), nb(v));
            let diff = nu
                .symmetric_difference(&nv)
                .filter(|&&z| z != u && z != v)
                .count();
            let gen_nu: HashSet<usize> = g.neighbors(u).map(|x| x.0).collect();
            assert_eq!(gen_nu, nu);
            best = best.min(diff);
        }
    }
    assert_eq!(best, 4);
}

#[test]
fn lifts_keep_degrees_and_witness() {
    let k4 = complete(4);
    let g = two_lift(&k4, &Signing::all_crossing(&k4)).unwrap();
    assert_eq!(g.len(), 8);
    assert!(g.vertices().all(|v| g.degree(v) == 3));
    for levels in 0..=4 {
        let chain = iterated_lift(levels, 3);
        assert_eq!(chain.graphs.len(), levels + 1);
        let last = chain.last();
        assert!(last.vertices().all(|v| last.degree(v) == 3));
        assert!(verify_parallel(last, &chain.witness).valid);
    }
}

#[test]
fn merge_examples() {
    let s = Permutation::from_one_based(&[2, 3, 5, 1, 4, 6, 8, 7]).unwrap();
    assert!(is_parallel_t_merge(&s, 2));
    assert!(!is_parallel_t_merge(&s, 1));
    let f = merge_decompose(&s, 2).unwrap();
    assert_eq!(compose_all(8, &f).unwrap(), s);
}

#[test]
fn subdivision_parameters() {
    assert_eq!(merge_width(Ratio::from_integer(1)), 4);
    assert_eq!(merge_width(Ratio::new(1, 2)), 2);
    assert_eq!(subdivision_depth(12, Ratio::from_integer(1)), 4);
    assert_eq!(subdivision_depth(16, Ratio::new(2, 1)), 2);
    let g = subdivide(&complete(4), 2).unwrap();
    assert_eq!(g.len(), 4 + 6 * 2);
    assert_eq!(g.edge_count(), 6 * 3);
    let so = subdivision_order(8, Ratio::from_integer(1)).unwrap();
    assert_eq!(so.k, 3);
    assert_eq!(so.layer_sizes, vec![8, 28, 28, 28]);
    let mut seen = so.order.clone();
    seen.sort();
    assert_eq!(seen, (0..so.graph.len()).collect::<Vec<_>>());
    assert!(so.merges.iter().all(|m| is_parallel_t_merge(m, so.t_used)));
}

#[test]
fn product_of_paths() {
    let g = path(4);
    let h = path(3);
    let solver = ExactSolver::default();
    let (dg, sg) = solver.solve(&g).unwrap();
    let (dh, sh) = solver.solve(&h).unwrap();
    let p = strong_product(&g, &h).unwrap();
    assert_eq!(p.len(), 12);
    // strong product degree of an inner vertex of P4 x P3 is 8
    assert_eq!(p.degree(3 + 1), 8);
    let seq = product_sequence(&g, &sg, &h, &sh).unwrap();
    let r = verify_sequence(&p, &seq);
    assert!(r.valid);
    assert!(r.width <= product_bound(dg, dh, 2));
}

#[test]
fn biclique_detection() {
    assert!(has_biclique(&complete(6), 3).unwrap());
    assert!(!has_biclique(&path(8), 2).unwrap());
    let c4 = Trigraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)], []).unwrap();
    assert!(has_biclique(&c4, 2).unwrap());
}

#[test]
fn layouts_reject_violations() {
    let g = Trigraph::from_edges(4, [(0, 3), (1, 2)], []).unwrap();
    let nested = Layout::new(
        LayoutKind::Queue,
        vec![0, 1, 2, 3],
        1,
        vec![((0, 3), 0), ((1, 2), 0)],
    )
    .unwrap();
    assert!(!layout_check(&g, &nested).unwrap());
    let as_stack = Layout::new(
        LayoutKind::Stack,
        vec![0, 1, 2, 3],
        1,
        vec![((0, 3), 0), ((1, 2), 0)],
    )
    .unwrap();
    assert!(layout_check(&g, &as_stack).unwrap());
    let g = Trigraph::from_edges(4, [(0, 2), (1, 3)], []).unwrap();
    let crossing = Layout::new(
        LayoutKind::Stack,
        vec![0, 1, 2, 3],
        1,
        vec![((0, 2), 0), ((1, 3), 0)],
    )
    .unwrap();
    assert!(!layout_check(&g, &crossing).unwrap());
}

proptest! {
    #[test]
    fn decomposition_recomposes(images in Just((0..40usize).collect::<Vec<_>>()).prop_shuffle(), t in 2usize..6) {
        let sigma = Permutation::new(images).unwrap();
        let f = merge_decompose(&sigma, t).unwrap();
        prop_assert_eq!(compose_all(40, &f).unwrap(), sigma);
        prop_assert!(f.len() <= ceil_log(t, 40));
        prop_assert!(f.iter().all(|x| is_parallel_t_merge(x, t)));
    }

    #[test]
    fn generated_layouts_are_valid(n in 2usize..14, t in 1usize..3, stack in any::<bool>(), seed in any::<u64>()) {
        let kind = if stack { LayoutKind::Stack } else { LayoutKind::Queue };
        let (g, layout) = random_layout(n, t, kind, 0.5, seed);
        prop_assert!(layout_check(&g, &layout).unwrap());
    }
}
