//! Strong products with contraction sequences, and replaying a sequence of a
//! host graph on a trigraph over it.

use crate::error::{Error, Result};
use crate::sequence::{verify_sequence, ContractionSequence, ContractionStep};
use crate::trigraph::{Color, Trigraph, Vertex};

/// `G ⊠ H` on ids `g * |H| + h`; both factors need ids `0..n`. Two distinct
/// vertices are adjacent when each coordinate is equal or adjacent; the edge
/// is red when either coordinate edge is red.
pub fn strong_product(g: &Trigraph, h: &Trigraph) -> Result<Trigraph> {
    if g.len() != g.capacity() || h.len() != h.capacity() {
        return Err(Error::InvalidParameter(
            "product factors need vertex ids 0..n".into(),
        ));
    }
    let nh = h.capacity();
    let mut p = Trigraph::new(g.capacity() * nh);
    let id = |a: Vertex, b: Vertex| a * nh + b;
    let gv: Vec<Vertex> = g.vertices().collect();
    let hv: Vec<Vertex> = h.vertices().collect();
    let closed = |t: &Trigraph, x: Vertex| -> Vec<(Vertex, Option<Color>)> {
        let mut out: Vec<(Vertex, Option<Color>)> = vec![(x, None)];
        out.extend(t.neighbors(x).map(|(y, c)| (y, Some(c))));
        out
    };
    for &a in &gv {
        for &b in &hv {
            for (a2, ca) in closed(g, a) {
                for (b2, cb) in closed(h, b) {
                    let (u, v) = (id(a, b), id(a2, b2));
                    if u >= v {
                        continue;
                    }
                    let red = ca == Some(Color::Red) || cb == Some(Color::Red);
                    let c = if red { Color::Red } else { Color::Black };
                    p.add_edge(u, v, c).expect("live vertices");
                }
            }
        }
    }
    Ok(p)
}

/// `max{d_G (Δ + 1) + 2Δ, d_H + Δ}`.
pub fn product_bound(d_g: usize, d_h: usize, delta: usize) -> usize {
    (d_g * (delta + 1) + 2 * delta).max(d_h + delta)
}

/// Replays `seq_h` (a sequence of `h`) on `t`, a trigraph whose total graph
/// is `h` under `map` (vertex of `h` → vertex of `t`).
pub fn host_replay(
    t: &Trigraph,
    h: &Trigraph,
    map: &[Vertex],
    seq_h: &ContractionSequence,
) -> Result<ContractionSequence> {
    check_over(t, h, map)?;
    let mut map = map.to_vec();
    let mut steps = Vec::with_capacity(seq_h.len());
    for s in &seq_h.steps {
        if s.u >= map.len() || s.v >= map.len() {
            return Err(Error::UnknownVertex(s.u.max(s.v)));
        }
        let (a, b) = (map[s.u], map[s.v]);
        steps.push(ContractionStep::new(a, b));
        map[s.merged()] = a.min(b);
    }
    Ok(ContractionSequence::new(steps))
}

fn check_over(t: &Trigraph, h: &Trigraph, map: &[Vertex]) -> Result<()> {
    let not_over = |msg: String| {
        Err(Error::InvalidParameter(format!(
            "trigraph is not over the host: {msg}"
        )))
    };
    if t.len() != h.len() {
        return not_over(format!("{} vertices against {}", t.len(), h.len()));
    }
    let mut hit = vec![false; t.capacity()];
    for x in h.vertices() {
        let y = *map.get(x).ok_or(Error::UnknownVertex(x))?;
        if !t.contains(y) || std::mem::replace(&mut hit[y], true) {
            return not_over(format!("map sends {x} to {y}"));
        }
    }
    for (x, y, _) in h.edges() {
        if t.color(map[x], map[y]).is_none() {
            return not_over(format!("edge {x}-{y} is missing"));
        }
    }
    if t.edge_count() != h.edge_count() {
        return not_over(format!(
            "{} edges against {}",
            t.edge_count(),
            h.edge_count()
        ));
    }
    Ok(())
}

/// Sequence of `G ⊠ H`: each contraction `(u, v)` of `seq_g` is replayed in
/// every copy of `G`, then `seq_h` is replayed on the copy of `H` that is
/// left. Both sequences must be complete and valid.
pub fn product_sequence(
    g: &Trigraph,
    seq_g: &ContractionSequence,
    h: &Trigraph,
    seq_h: &ContractionSequence,
) -> Result<ContractionSequence> {
    for (graph, seq) in [(g, seq_g), (h, seq_h)] {
        let r = verify_sequence(graph, seq);
        if !r.valid {
            return Err(Error::InapplicableStep {
                index: r.failed_step.unwrap_or(seq.len()),
                reason: r.reason.unwrap_or_default(),
            });
        }
        if seq.len() + 1 != graph.len() {
            return Err(Error::Incomplete {
                remaining: graph.len() - seq.len(),
            });
        }
    }
    let nh = h.capacity();
    let hv: Vec<Vertex> = h.vertices().collect();
    let mut steps = Vec::new();
    let mut gw = g.clone();
    for s in &seq_g.steps {
        steps.extend(
            hv.iter()
                .map(|&j| ContractionStep::new(s.u * nh + j, s.v * nh + j)),
        );
        gw.contract_in_place(s.u, s.v)?;
    }
    let w = gw.vertices().next().expect("one vertex left");
    let mut t = strong_product(g, h)?;
    for s in &steps {
        t.contract_in_place(s.u, s.v)?;
    }
    let map: Vec<Vertex> = (0..nh).map(|j| w * nh + j).collect();
    let tail = host_replay(&t, h, &map, seq_h)?;
    steps.extend(tail.steps);
    Ok(ContractionSequence::new(steps))
}
