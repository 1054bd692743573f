//! Clique subdivisions and the layered vertex ordering built from a
//! merge-sort decomposition of the path bijection.

use num_bigint::BigUint;
use num_rational::Ratio;

use super::basic::complete;
use super::permutation::{compose_all, merge_decompose, Permutation};
use crate::error::{Error, Result};
use crate::matrix::Division;
use crate::trigraph::{Trigraph, Vertex};

/// Replaces every edge `u < v` (in [`Trigraph::edges`] order, index `e`) by a
/// path `u, n + e k, ..., n + e k + k - 1, v`. Requires ids `0..n`.
pub fn subdivide(g: &Trigraph, k: usize) -> Result<Trigraph> {
    let n = g.capacity();
    if g.len() != n {
        return Err(Error::InvalidParameter(
            "subdivide needs vertex ids 0..n".into(),
        ));
    }
    let edges: Vec<_> = g.edges().collect();
    let mut out = Trigraph::new(n + k * edges.len());
    for (e, &(u, v, c)) in edges.iter().enumerate() {
        let mut prev = u;
        for i in 0..k {
            let x = n + e * k + i;
            out.add_edge(prev, x, c)?;
            prev = x;
        }
        out.add_edge(prev, v, c)?;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SubdivisionOrder {
    /// `K_n` subdivided `k` times.
    pub graph: Trigraph,
    pub k: usize,
    /// `⌈2^{2c}⌉`.
    pub t: usize,
    /// Merge width actually used. Equals `t` unless the decomposition into
    /// `t`-merges needs more than `k - 1` factors.
    pub t_used: usize,
    /// Vertex ids in layer order `V_0 < V_1 < ... < V_k`.
    pub order: Vec<Vertex>,
    /// Sizes of the layers, `n` then `n(n-1)/2` each.
    pub layer_sizes: Vec<usize>,
    /// The permutations between consecutive inner layers, `V_1 → V_2`
    /// first.
    pub merges: Vec<Permutation>,
}

impl SubdivisionOrder {
    /// Layer division of the adjacency matrix in `order`.
    pub fn layer_division(&self) -> Division {
        let mut cuts = Vec::new();
        let mut acc = 0;
        for &s in &self.layer_sizes[..self.layer_sizes.len() - 1] {
            acc += s;
            cuts.push(acc);
        }
        Division::symmetric_from_cuts(self.order.len(), &cuts).expect("layer cuts are increasing")
    }
}

/// Smallest `k` with `2^(k p) >= n^q`, i.e. `⌈log₂ n / c⌉` for `c = p/q`.
pub fn subdivision_depth(n: usize, c: Ratio<u64>) -> usize {
    let (p, q) = (*c.numer(), *c.denom());
    let target = BigUint::from(n).pow(q as u32);
    let mut k = 0usize;
    while (BigUint::from(1u8) << (k as u64 * p)) < target {
        k += 1;
    }
    k
}

/// Smallest `t` with `t^q >= 2^(2p)`, i.e. `⌈2^{2c}⌉` for `c = p/q`.
pub fn merge_width(c: Ratio<u64>) -> usize {
    let (p, q) = (*c.numer(), *c.denom());
    let target = BigUint::from(1u8) << (2 * p);
    let mut t = 1usize;
    while BigUint::from(t).pow(q as u32) < target {
        t += 1;
    }
    t
}

/// `K_n` subdivided `⌈log₂ n / c⌉` times with the layered ordering: `V_0`
/// are the clique vertices in natural order, `V_i` the `i`-th internal
/// vertices of the paths oriented from lower to higher endpoint. `V_1` is
/// sorted by `(tail, head)`, `V_k` by `(head, tail)`, and the inner layers
/// follow a decomposition of the bijection between them into parallel
/// merges.
pub fn subdivision_order(n: usize, c: Ratio<u64>) -> Result<SubdivisionOrder> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n}, need n >= 2")));
    }
    if *c.numer() == 0 {
        return Err(Error::InvalidParameter("c must be positive".into()));
    }
    let k = subdivision_depth(n, c);
    if k < 1 {
        return Err(Error::InvalidParameter(format!(
            "k = {k} for n = {n}, c = {c}"
        )));
    }
    let t = merge_width(c);
    let graph = subdivide(&complete(n), k)?;
    let edges: Vec<(Vertex, Vertex)> = complete(n).black_edges();
    let m = edges.len();
    // internal vertex i (1-based) of edge e
    let inner = |e: usize, i: usize| n + e * k + i - 1;

    // V_1 order: edges in (tail, head) order, which is the edge index order
    let first: Vec<usize> = (0..m).collect();
    let mut last: Vec<usize> = (0..m).collect();
    last.sort_by_key(|&e| (edges[e].1, edges[e].0));
    let mut pos_last = vec![0; m];
    for (p, &e) in last.iter().enumerate() {
        pos_last[e] = p;
    }
    // sigma: position in V_1 -> position in V_k
    let sigma = Permutation::new(first.iter().map(|&e| pos_last[e]).collect())?;

    let mut t_used = t.max(2);
    let mut merges = if k == 1 {
        Vec::new()
    } else {
        loop {
            // positions move V_1 -> V_2 -> ... -> V_k, the first move
            // applied first, so sigma = f_{k-1} ∘ ... ∘ f_1
            let mut f = merge_decompose(&sigma, t_used)?;
            if f.len() < k {
                f.reverse();
                break f;
            }
            t_used += 1;
        }
    };
    if k > 1 {
        while merges.len() < k - 1 {
            merges.push(Permutation::identity(m));
        }
        debug_assert_eq!(
            compose_all(m, &merges.iter().rev().cloned().collect::<Vec<_>>())?,
            sigma
        );
    }

    let mut order: Vec<Vertex> = (0..n).collect();
    let mut layer_sizes = vec![n];
    // `at[p]` is the edge at position p of the current layer
    let mut at = first.clone();
    for i in 1..=k {
        if i > 1 {
            let f = &merges[i - 2];
            let mut next = vec![0; m];
            for (p, &e) in at.iter().enumerate() {
                next[f.image(p)] = e;
            }
            at = next;
        }
        if k > 1 && i == k {
            debug_assert_eq!(at, last);
        }
        order.extend(at.iter().map(|&e| inner(e, i)));
        layer_sizes.push(m);
    }
    Ok(SubdivisionOrder {
        graph,
        k,
        t,
        t_used: if k == 1 { t } else { t_used },
        order,
        layer_sizes,
        merges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::adjacency_matrix;

    #[test]
    fn subdivision_sizes() {
        assert_eq!(subdivide(&complete(4), 0).unwrap(), complete(4));
        let c6 = subdivide(&complete(3), 1).unwrap();
        assert_eq!(c6.len(), 6);
        assert!(c6.vertices().all(|v| c6.degree(v) == 2));
        assert_eq!(subdivide(&complete(5), 2).unwrap().len(), 25);
    }

    #[test]
    fn depth_and_width() {
        assert_eq!(subdivision_depth(8, Ratio::from_integer(1)), 3);
        assert_eq!(subdivision_depth(9, Ratio::from_integer(1)), 4);
        assert_eq!(subdivision_depth(16, Ratio::new(1, 2)), 8);
        assert_eq!(merge_width(Ratio::from_integer(1)), 4);
        assert_eq!(merge_width(Ratio::new(1, 2)), 2);
        assert_eq!(merge_width(Ratio::new(1, 4)), 2);
    }

    #[test]
    fn layers_form_a_double_diagonal() {
        let s = subdivision_order(6, Ratio::from_integer(1)).unwrap();
        assert_eq!(s.k, 3);
        let mut sorted = s.order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..s.graph.len()).collect::<Vec<_>>());
        let m = adjacency_matrix(&s.graph, &s.order).unwrap();
        let d = s.layer_division();
        let parts = s.k + 1;
        for i in 0..parts {
            for j in 0..parts {
                let z = d.zone(i, j).unwrap();
                let nonzero = (z.rows.clone()).any(|r| {
                    z.cols
                        .clone()
                        .any(|c| m.get(r, c) != crate::matrix::Entry::Zero)
                });
                let expected = (i + 1) % parts == j || (j + 1) % parts == i;
                assert_eq!(nonzero, expected, "zone ({i}, {j})");
            }
        }
    }
}
