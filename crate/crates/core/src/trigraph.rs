//! Trigraphs: graphs whose edges are either black (exact) or red (error).
//!
//! Vertex ids are stable non-negative integers. A contraction of `u` and `v`
//! keeps the smaller of the two ids for the merged vertex, so the id of every
//! live vertex is the minimum original vertex it stands for (its
//! representative). A trigraph built on `n` vertices therefore only ever uses
//! ids in `0..n`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Black,
    Red,
}

/// Colour of a vertex pair: non-edge, black edge or red edge.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub enum Relation {
    #[default]
    None,
    Black,
    Red,
}

impl Relation {
    /// Two-bit code used by the codec: 00 none, 01 black, 10 red.
    pub fn code(self) -> u8 {
        match self {
            Relation::None => 0,
            Relation::Black => 1,
            Relation::Red => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Relation::None),
            1 => Some(Relation::Black),
            2 => Some(Relation::Red),
            _ => None,
        }
    }

    pub fn from_color(color: Option<Color>) -> Self {
        match color {
            None => Relation::None,
            Some(Color::Black) => Relation::Black,
            Some(Color::Red) => Relation::Red,
        }
    }

    pub fn color(self) -> Option<Color> {
        match self {
            Relation::None => None,
            Relation::Black => Some(Color::Black),
            Relation::Red => Some(Color::Red),
        }
    }
}

/// What a contraction of `u` and `v` forgets, i.e. enough to undo it.
///
/// Non-red neighbours of the merged vertex are not listed: a black neighbour
/// was black to both `u` and `v`, a non-neighbour was adjacent to neither.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRecord {
    pub u: Vertex,
    pub v: Vertex,
    pub uv: Relation,
    /// `(z, relation u–z, relation v–z)` for every red neighbour `z` of the
    /// merged vertex, sorted by `z`.
    pub red: Vec<(Vertex, Relation, Relation)>,
}

impl SplitRecord {
    pub fn merged(&self) -> Vertex {
        self.u.min(self.v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trigraph {
    adj: Vec<Option<BTreeMap<Vertex, Color>>>,
    live: usize,
}

impl Trigraph {
    /// Edgeless trigraph on vertices `0..n`.
    pub fn new(n: usize) -> Self {
        Trigraph {
            adj: vec![Some(BTreeMap::new()); n],
            live: n,
        }
    }

    pub fn from_edges(
        n: usize,
        black: impl IntoIterator<Item = (Vertex, Vertex)>,
        red: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self> {
        let mut g = Trigraph::new(n);
        for (u, v) in black {
            g.add_edge(u, v, Color::Black)?;
        }
        for (u, v) in red {
            g.add_edge(u, v, Color::Red)?;
        }
        Ok(g)
    }

    /// Upper bound (exclusive) on vertex ids.
    pub fn capacity(&self) -> usize {
        self.adj.len()
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        matches!(self.adj.get(v), Some(Some(_)))
    }

    /// Representative (minimum original id) of a live vertex.
    pub fn rep(&self, v: Vertex) -> Vertex {
        v
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj
            .iter()
            .enumerate()
            .filter_map(|(v, a)| a.as_ref().map(|_| v))
    }

    fn row(&self, v: Vertex) -> Result<&BTreeMap<Vertex, Color>> {
        self.adj
            .get(v)
            .and_then(|a| a.as_ref())
            .ok_or(Error::UnknownVertex(v))
    }

    fn row_mut(&mut self, v: Vertex) -> Result<&mut BTreeMap<Vertex, Color>> {
        self.adj
            .get_mut(v)
            .and_then(|a| a.as_mut())
            .ok_or(Error::UnknownVertex(v))
    }

    /// Inserts or recolours the edge `uv`.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex, color: Color) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.row(v)?;
        self.row_mut(u)?.insert(v, color);
        self.row_mut(v)?.insert(u, color);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.row(v)?;
        self.row_mut(u)?.remove(&v);
        self.row_mut(v)?.remove(&u);
        Ok(())
    }

    pub fn set_relation(&mut self, u: Vertex, v: Vertex, rel: Relation) -> Result<()> {
        match rel.color() {
            Some(c) => self.add_edge(u, v, c),
            None => self.remove_edge(u, v),
        }
    }

    pub fn color(&self, u: Vertex, v: Vertex) -> Option<Color> {
        self.adj.get(u)?.as_ref()?.get(&v).copied()
    }

    pub fn relation(&self, u: Vertex, v: Vertex) -> Relation {
        Relation::from_color(self.color(u, v))
    }

    /// Neighbours of `v` with edge colours, in increasing id order. Empty for
    /// unknown vertices.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.adj
            .get(v)
            .and_then(|a| a.as_ref())
            .into_iter()
            .flat_map(|row| row.iter().map(|(&x, &c)| (x, c)))
    }

    pub fn red_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.neighbors(v)
            .filter(|&(_, c)| c == Color::Red)
            .map(|(x, _)| x)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.row(v).map(|r| r.len()).unwrap_or(0)
    }

    pub fn red_degree(&self, v: Vertex) -> usize {
        self.neighbors(v).filter(|&(_, c)| c == Color::Red).count()
    }

    pub fn black_degree(&self, v: Vertex) -> usize {
        self.neighbors(v)
            .filter(|&(_, c)| c == Color::Black)
            .count()
    }

    /// Maximum red degree over all vertices; 0 on the empty trigraph.
    pub fn max_red_degree(&self) -> usize {
        self.vertices()
            .map(|v| self.red_degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// All edges `(u, v, colour)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, Color)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, c)| (u, v, c))
        })
    }

    pub fn black_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.edges()
            .filter(|e| e.2 == Color::Black)
            .map(|(u, v, _)| (u, v))
            .collect()
    }

    pub fn red_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.edges()
            .filter(|e| e.2 == Color::Red)
            .map(|(u, v, _)| (u, v))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Same vertices, every edge recoloured red.
    pub fn all_red(&self) -> Trigraph {
        self.recolored(Color::Red)
    }

    /// Underlying graph: same vertices, every edge black.
    pub fn total_graph(&self) -> Trigraph {
        self.recolored(Color::Black)
    }

    fn recolored(&self, color: Color) -> Trigraph {
        let adj = self
            .adj
            .iter()
            .map(|row| {
                row.as_ref()
                    .map(|r| r.keys().map(|&x| (x, color)).collect())
            })
            .collect();
        Trigraph {
            adj,
            live: self.live,
        }
    }

    /// Induced subtrigraph on `keep`, relabelled to `0..keep.len()` in the
    /// given order.
    pub fn induced(&self, keep: &[Vertex]) -> Result<Trigraph> {
        let mut index = vec![usize::MAX; self.capacity()];
        for (i, &v) in keep.iter().enumerate() {
            self.row(v)?;
            index[v] = i;
        }
        let mut h = Trigraph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for (x, c) in self.neighbors(v) {
                let j = index[x];
                if j != usize::MAX && i < j {
                    h.add_edge(i, j, c)?;
                }
            }
        }
        Ok(h)
    }

    /// Relabels vertex `v` as `perm[v]`. Requires ids `0..n` all live and
    /// `perm` a permutation of `0..n`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Trigraph> {
        let n = self.capacity();
        if perm.len() != n || self.live != n {
            return Err(Error::InvalidPermutation(
                "relabelling needs one image per vertex".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(format!("bad image {p}")));
            }
        }
        let mut h = Trigraph::new(n);
        for (u, v, c) in self.edges() {
            h.add_edge(perm[u], perm[v], c)?;
        }
        Ok(h)
    }

    /// Contracts `u` and `v` into `min(u, v)`, returning the new trigraph and
    /// the merged vertex.
    pub fn contract(&self, u: Vertex, v: Vertex) -> Result<(Trigraph, Vertex)> {
        let mut g = self.clone();
        let w = g.contract_in_place(u, v)?;
        Ok((g, w))
    }

    pub fn contract_in_place(&mut self, u: Vertex, v: Vertex) -> Result<Vertex> {
        if u == v {
            return Err(Error::SameVertex(u));
        }
        let nu = self.row(u)?.clone();
        let nv = self.row(v)?.clone();
        let (w, gone) = if u < v { (u, v) } else { (v, u) };

        let mut merged = BTreeMap::new();
        for (&x, &cu) in &nu {
            if x == v {
                continue;
            }
            let c = match nv.get(&x) {
                Some(&Color::Black) if cu == Color::Black => Color::Black,
                _ => Color::Red,
            };
            merged.insert(x, c);
        }
        for &x in nv.keys() {
            if x != u {
                merged.entry(x).or_insert(Color::Red);
            }
        }

        for x in nu.keys().chain(nv.keys()) {
            if let Some(Some(row)) = self.adj.get_mut(*x) {
                row.remove(&u);
                row.remove(&v);
            }
        }
        for (&x, &c) in &merged {
            if let Some(Some(row)) = self.adj.get_mut(x) {
                row.insert(w, c);
            }
        }
        self.adj[gone] = None;
        self.adj[w] = Some(merged);
        self.live -= 1;
        Ok(w)
    }

    /// Red degree the merged vertex and its neighbours would reach if `u` and
    /// `v` were contracted; vertices untouched by the contraction are not
    /// considered.
    pub fn contraction_local_red_degree(&self, u: Vertex, v: Vertex) -> Result<usize> {
        if u == v {
            return Err(Error::SameVertex(u));
        }
        let nu = self.row(u)?;
        let nv = self.row(v)?;
        let mut worst = 0;
        let mut w_red = 0;
        let mut visit = |x: Vertex, red_to_w: bool| {
            if red_to_w {
                w_red += 1;
            }
            // x loses its edges to u and v and gains one to w
            let mut r = self.red_degree(x);
            if nu.get(&x).is_some() && self.color(x, u) == Some(Color::Red) {
                r -= 1;
            }
            if nv.get(&x).is_some() && self.color(x, v) == Some(Color::Red) {
                r -= 1;
            }
            if red_to_w {
                r += 1;
            }
            worst = worst.max(r);
        };
        for (&x, &cu) in nu {
            if x == v {
                continue;
            }
            let red = !matches!((cu, nv.get(&x)), (Color::Black, Some(&Color::Black)));
            visit(x, red);
        }
        for &x in nv.keys() {
            if x != u && !nu.contains_key(&x) {
                visit(x, true);
            }
        }
        Ok(worst.max(w_red))
    }

    /// The record that [`Trigraph::split`] needs to undo `contract(u, v)`.
    pub fn split_record(&self, u: Vertex, v: Vertex) -> Result<SplitRecord> {
        if u == v {
            return Err(Error::SameVertex(u));
        }
        let nu = self.row(u)?;
        let nv = self.row(v)?;
        let mut red = Vec::new();
        let mut zs: Vec<Vertex> = nu.keys().chain(nv.keys()).copied().collect();
        zs.sort_unstable();
        zs.dedup();
        for z in zs {
            if z == u || z == v {
                continue;
            }
            let ru = Relation::from_color(nu.get(&z).copied());
            let rv = Relation::from_color(nv.get(&z).copied());
            if !(ru == Relation::Black && rv == Relation::Black) {
                red.push((z, ru, rv));
            }
        }
        Ok(SplitRecord {
            u,
            v,
            uv: self.relation(u, v),
            red,
        })
    }

    /// Inverse of contraction: replaces `w` by the two vertices named in
    /// `rec`, wiring them as the record says.
    pub fn split(&self, w: Vertex, rec: &SplitRecord) -> Result<Trigraph> {
        let mut g = self.clone();
        g.split_in_place(w, rec)?;
        Ok(g)
    }

    pub fn split_in_place(&mut self, w: Vertex, rec: &SplitRecord) -> Result<()> {
        let row = self.row(w)?.clone();
        if rec.u == rec.v {
            return Err(Error::InvalidSplit(format!("u = v = {}", rec.u)));
        }
        if rec.merged() != w {
            return Err(Error::InvalidSplit(format!(
                "merged vertex {w} is not min({}, {})",
                rec.u, rec.v
            )));
        }
        let fresh = rec.u.max(rec.v);
        if fresh >= self.capacity() || self.contains(fresh) {
            return Err(Error::InvalidSplit(format!(
                "vertex {fresh} is out of range or already present"
            )));
        }
        let reds: Vec<Vertex> = row
            .iter()
            .filter(|(_, &c)| c == Color::Red)
            .map(|(&x, _)| x)
            .collect();
        let mut listed: Vec<Vertex> = rec.red.iter().map(|r| r.0).collect();
        listed.sort_unstable();
        if listed.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::InvalidSplit("red neighbour listed twice".into()));
        }
        for &(z, ru, rv) in &rec.red {
            if row.get(&z) != Some(&Color::Red) {
                return Err(Error::InvalidSplit(format!(
                    "{z} is not a red neighbour of {w}"
                )));
            }
            if ru == rv && ru != Relation::Red {
                return Err(Error::InvalidSplit(format!(
                    "relations {ru:?}/{rv:?} to {z} would not contract to a red edge"
                )));
            }
        }
        if listed != reds {
            return Err(Error::InvalidSplit(format!(
                "record lists {} red neighbours, {w} has {}",
                listed.len(),
                reds.len()
            )));
        }

        for &x in row.keys() {
            if let Some(Some(r)) = self.adj.get_mut(x) {
                r.remove(&w);
            }
        }
        self.adj[w] = Some(BTreeMap::new());
        self.adj[fresh] = Some(BTreeMap::new());
        self.live += 1;
        for (&x, &c) in &row {
            if c == Color::Black {
                self.add_edge(rec.u, x, Color::Black)?;
                self.add_edge(rec.v, x, Color::Black)?;
            }
        }
        for &(z, ru, rv) in &rec.red {
            self.set_relation(rec.u, z, ru)?;
            self.set_relation(rec.v, z, rv)?;
        }
        self.set_relation(rec.u, rec.v, rec.uv)?;
        Ok(())
    }

    /// A trigraph holding only `w` out of `0..capacity` (the codec's start).
    pub fn singleton(capacity: usize, w: Vertex) -> Result<Trigraph> {
        if w >= capacity {
            return Err(Error::UnknownVertex(w));
        }
        let mut adj = vec![None; capacity];
        adj[w] = Some(BTreeMap::new());
        Ok(Trigraph { adj, live: 1 })
    }
}
