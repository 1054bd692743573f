use super::permutation::Permutation;
use crate::trigraph::{Color, Trigraph};

/// Three sets `A`, `B`, `C` of size `n` (ids `0..n`, `n..2n`, `2n..3n`).
/// `a_i b_j` is an edge iff `i < j`; with `b'_{σ(i)} = b_i`, `b'_i c_j` is an
/// edge iff `i < j`. No `A`–`C` edges. Each set is a clique when `cliques`
/// is set and independent otherwise.
pub fn halfgraph_sandwich(sigma: &Permutation, cliques: bool) -> Trigraph {
    let n = sigma.len();
    let mut g = Trigraph::new(3 * n);
    let mut add = |u, v| g.add_edge(u, v, Color::Black).expect("valid edge");
    if cliques {
        for part in 0..3 {
            for i in 0..n {
                for j in i + 1..n {
                    add(part * n + i, part * n + j);
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i < j {
                add(i, n + j);
            }
            if sigma.image(i) < j {
                add(n + i, 2 * n + j);
            }
        }
    }
    g
}
