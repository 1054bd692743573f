//! Queue and stack layouts, and biclique detection.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{adjacency_matrix, MinorKind, MinorSearch};
use crate::trigraph::{Color, Trigraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LayoutKind {
    /// No two independent edges of a part are nested.
    Queue,
    /// No two independent edges of a part overlap.
    Stack,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub kind: LayoutKind,
    pub order: Vec<Vertex>,
    pub parts: usize,
    /// Every edge with its part in `0..parts`.
    pub edges: Vec<((Vertex, Vertex), usize)>,
}

impl Layout {
    pub fn new(
        kind: LayoutKind,
        order: Vec<Vertex>,
        parts: usize,
        edges: Vec<((Vertex, Vertex), usize)>,
    ) -> Result<Self> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(
                "layout order repeats a vertex".into(),
            ));
        }
        if let Some(&(_, p)) = edges.iter().find(|e| e.1 >= parts) {
            return Err(Error::InvalidParameter(format!(
                "part {p} out of range 0..{parts}"
            )));
        }
        Ok(Layout {
            kind,
            order,
            parts,
            edges,
        })
    }
}

/// Whether two independent edges, given as position pairs `a < b` and
/// `c < d`, conflict in a part of the given kind.
fn conflict(kind: LayoutKind, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let ((_, b), (c, d)) = if a < c {
        ((a, b), (c, d))
    } else {
        ((c, d), (a, b))
    };
    match kind {
        LayoutKind::Queue => c < d && d < b,
        LayoutKind::Stack => c < b && b < d,
    }
}

fn positions(g: &Trigraph, layout: &Layout) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; g.capacity()];
    for (i, &v) in layout.order.iter().enumerate() {
        if !g.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        pos[v] = i;
    }
    if layout.order.len() != g.len() {
        return Err(Error::InvalidParameter(format!(
            "layout orders {} of {} vertices",
            layout.order.len(),
            g.len()
        )));
    }
    Ok(pos)
}

/// Checks that the parts partition the edges of `g` and that no part holds a
/// nested (queue) or overlapping (stack) independent pair. A malformed
/// partition is an error; a conflict gives `false`.
pub fn layout_check(g: &Trigraph, layout: &Layout) -> Result<bool> {
    let pos = positions(g, layout)?;
    let mut listed: Vec<(Vertex, Vertex)> = layout
        .edges
        .iter()
        .map(|&((u, v), _)| (u.min(v), u.max(v)))
        .collect();
    listed.sort_unstable();
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    edges.sort_unstable();
    if listed != edges {
        return Err(Error::InvalidParameter(
            "layout parts do not partition the edge set".into(),
        ));
    }
    let mut by_part: Vec<Vec<(usize, usize)>> = vec![Vec::new(); layout.parts];
    for &((u, v), p) in &layout.edges {
        let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        by_part[p].push((a, b));
    }
    Ok(by_part.iter().all(|es| {
        es.iter()
            .enumerate()
            .all(|(i, &e)| es[i + 1..].iter().all(|&f| !conflict(layout.kind, e, f)))
    }))
}

/// Whether the adjacency matrix in layout order has no `2(t + 1)`-grid,
/// `t` being the number of parts.
pub fn layout_grid_free(g: &Trigraph, layout: &Layout, search: &MinorSearch) -> Result<bool> {
    positions(g, layout)?;
    let m = adjacency_matrix(g, &layout.order)?;
    Ok(search
        .find(&m, 2 * (layout.parts + 1), MinorKind::Grid)?
        .is_none())
}

/// A random graph on `n` vertices with a valid `t`-part layout: the order is
/// shuffled, and each pair is tried with probability `p` in a random part
/// where it causes no conflict.
pub fn random_layout(
    n: usize,
    t: usize,
    kind: LayoutKind,
    p: f64,
    seed: u64,
) -> (Trigraph, Layout) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    pairs.shuffle(&mut rng);
    let mut by_part: Vec<Vec<(usize, usize)>> = vec![Vec::new(); t];
    let mut g = Trigraph::new(n);
    let mut edges = Vec::new();
    for e in pairs {
        if !rng.gen_bool(p) {
            continue;
        }
        let mut parts: Vec<usize> = (0..t).collect();
        parts.shuffle(&mut rng);
        if let Some(&q) = parts
            .iter()
            .find(|&&q| by_part[q].iter().all(|&f| !conflict(kind, e, f)))
        {
            by_part[q].push(e);
            let (u, v) = (order[e.0], order[e.1]);
            g.add_edge(u, v, Color::Black).expect("distinct vertices");
            edges.push(((u.min(v), u.max(v)), q));
        }
    }
    let layout = Layout::new(kind, order, t, edges).expect("well-formed");
    (g, layout)
}

/// Largest vertex count accepted by [`has_biclique`].
pub const BICLIQUE_MAX_N: usize = 14;

/// Whether two disjoint `s`-sets are fully adjacent (red edges count).
pub fn has_biclique(g: &Trigraph, s: usize) -> Result<bool> {
    if g.len() > BICLIQUE_MAX_N {
        return Err(Error::CapExceeded {
            size: g.len(),
            cap: BICLIQUE_MAX_N,
        });
    }
    if s == 0 {
        return Ok(true);
    }
    let ids: Vec<Vertex> = g.vertices().collect();
    let n = ids.len();
    let mut index = vec![0; g.capacity()];
    for (i, &v) in ids.iter().enumerate() {
        index[v] = i;
    }
    let nb: Vec<u32> = ids
        .iter()
        .map(|&v| g.neighbors(v).fold(0, |m, (x, _)| m | 1 << index[x]))
        .collect();
    Ok((0u32..1 << n).any(|a| {
        a.count_ones() as usize == s && {
            let common = (0..n)
                .filter(|&i| a >> i & 1 == 1)
                .fold(u32::MAX, |m, i| m & nb[i]);
            (common & !a).count_ones() as usize >= s
        }
    }))
}
