use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::trigraph::{Color, Trigraph};

pub fn path(n: usize) -> Trigraph {
    Trigraph::from_edges(n, (1..n).map(|i| (i - 1, i)), []).expect("valid edges")
}

/// Cycle on `n >= 3` vertices; smaller `n` gives a path.
pub fn cycle(n: usize) -> Trigraph {
    let mut g = path(n);
    if n >= 3 {
        g.add_edge(0, n - 1, Color::Black).expect("valid edge");
    }
    g
}

pub fn complete(n: usize) -> Trigraph {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Trigraph::from_edges(n, edges, []).expect("valid edges")
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Trigraph {
    Trigraph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)), []).expect("valid edges")
}

/// Erdős–Rényi graph: every pair is an edge with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Trigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Trigraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(i, j, Color::Black).expect("valid edge");
            }
        }
    }
    g
}

/// The `i x i` rook graph: cell `(r, c)` is vertex `r * i + c`, adjacent to
/// every other cell of its row and column.
pub fn rook(i: usize) -> Trigraph {
    let mut g = Trigraph::new(i * i);
    for a in 0..i * i {
        for b in a + 1..i * i {
            if a / i == b / i || a % i == b % i {
                g.add_edge(a, b, Color::Black).expect("valid edge");
            }
        }
    }
    g
}
