//! Exact twin-width of small trigraphs by exhaustive search.
//!
//! The search runs on bitmask copies of the trigraph: vertex `i` of the
//! compacted instance owns bit `i`, and a contraction keeps the smaller index,
//! mirroring [`Trigraph::contract`]. States that cannot be finished within the
//! current bound are remembered, keyed by the whole quotient trigraph.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sequence::{ContractionSequence, ContractionStep};
use crate::trigraph::{Color, Trigraph, Vertex};

pub const DEFAULT_CAP: usize = 10;
/// Largest vertex count the bitmask representation supports.
pub const MAX_CAP: usize = 32;
/// Largest `n` accepted by [`census`].
pub const CENSUS_MAX_N: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    alive: u32,
    black: Vec<u32>,
    red: Vec<u32>,
}

impl State {
    fn key(&self) -> Vec<u32> {
        let mut key = vec![self.alive];
        for v in bits(self.alive) {
            key.push(self.black[v]);
            key.push(self.red[v]);
        }
        key
    }

    /// Contracts `u < v` into `u`. Returns `None` when a touched vertex ends
    /// with red degree above `d`.
    fn contract(&self, u: usize, v: usize, d: usize) -> Option<State> {
        let both = (1u32 << u) | (1u32 << v);
        let nu = (self.black[u] | self.red[u]) & !both;
        let nv = (self.black[v] | self.red[v]) & !both;
        let black = self.black[u] & self.black[v] & !both;
        let red = (nu | nv) & !black;
        if red.count_ones() as usize > d {
            return None;
        }
        let mut next = self.clone();
        for x in bits(nu | nv) {
            next.black[x] &= !both;
            next.red[x] &= !both;
            if black >> x & 1 == 1 {
                next.black[x] |= 1 << u;
            } else {
                next.red[x] |= 1 << u;
                if next.red[x].count_ones() as usize > d {
                    return None;
                }
            }
        }
        next.black[u] = black;
        next.red[u] = red;
        next.black[v] = 0;
        next.red[v] = 0;
        next.alive &= !(1 << v);
        Some(next)
    }

    fn max_red(&self) -> usize {
        bits(self.alive)
            .map(|v| self.red[v].count_ones() as usize)
            .max()
            .unwrap_or(0)
    }
}

fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Exhaustive twin-width search with a vertex-count cap.
#[derive(Clone, Debug)]
pub struct ExactSolver {
    cap: usize,
}

impl Default for ExactSolver {
    fn default() -> Self {
        ExactSolver { cap: DEFAULT_CAP }
    }
}

impl ExactSolver {
    pub fn with_cap(cap: usize) -> Result<Self> {
        if cap > MAX_CAP {
            return Err(Error::InvalidParameter(format!(
                "cap {cap} exceeds the supported maximum {MAX_CAP}"
            )));
        }
        Ok(ExactSolver { cap })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn compact(&self, g: &Trigraph) -> Result<(State, Vec<Vertex>)> {
        if g.len() > self.cap {
            return Err(Error::CapExceeded {
                size: g.len(),
                cap: self.cap,
            });
        }
        let ids: Vec<Vertex> = g.vertices().collect();
        let mut index = vec![usize::MAX; g.capacity()];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let k = ids.len();
        let mut state = State {
            alive: if k == 32 { u32::MAX } else { (1u32 << k) - 1 },
            black: vec![0; k],
            red: vec![0; k],
        };
        for (u, v, c) in g.edges() {
            let (a, b) = (index[u], index[v]);
            let rows = match c {
                Color::Black => &mut state.black,
                Color::Red => &mut state.red,
            };
            rows[a] |= 1 << b;
            rows[b] |= 1 << a;
        }
        Ok((state, ids))
    }

    /// Whether `g` admits a `d`-sequence.
    pub fn decide(&self, g: &Trigraph, d: usize) -> Result<bool> {
        Ok(self.find_sequence(g, d)?.is_some())
    }

    /// A `d`-sequence of `g` when one exists.
    pub fn find_sequence(&self, g: &Trigraph, d: usize) -> Result<Option<ContractionSequence>> {
        let (state, ids) = self.compact(g)?;
        if g.is_empty() || state.max_red() > d {
            return Ok(None);
        }
        let mut search = Search {
            d,
            failed: HashSet::new(),
            path: Vec::new(),
        };
        if !search.run(&state) {
            return Ok(None);
        }
        Ok(Some(ContractionSequence::new(
            search
                .path
                .iter()
                .map(|&(u, v)| ContractionStep::new(ids[u], ids[v]))
                .collect(),
        )))
    }

    /// Twin-width of `g` together with an optimal sequence.
    pub fn solve(&self, g: &Trigraph) -> Result<(usize, ContractionSequence)> {
        if g.is_empty() {
            return Err(Error::InvalidParameter("empty trigraph".into()));
        }
        let (state, _) = self.compact(g)?;
        let mut d = state.max_red();
        loop {
            if let Some(seq) = self.find_sequence(g, d)? {
                return Ok((d, seq));
            }
            d += 1;
        }
    }

    pub fn tww(&self, g: &Trigraph) -> Result<usize> {
        Ok(self.solve(g)?.0)
    }
}

struct Search {
    d: usize,
    failed: HashSet<Vec<u32>>,
    path: Vec<(usize, usize)>,
}

impl Search {
    fn run(&mut self, s: &State) -> bool {
        let k = s.alive.count_ones() as usize;
        if k <= self.d + 1 {
            // every trigraph on at most d + 1 vertices is a d-trigraph
            let live: Vec<usize> = bits(s.alive).collect();
            self.path.extend(live[1..].iter().map(|&v| (live[0], v)));
            return true;
        }
        let key = s.key();
        if self.failed.contains(&key) {
            return false;
        }
        let live: Vec<usize> = bits(s.alive).collect();
        for (i, &u) in live.iter().enumerate() {
            for &v in &live[i + 1..] {
                if let Some(next) = s.contract(u, v, self.d) {
                    self.path.push((u, v));
                    if self.run(&next) {
                        return true;
                    }
                    self.path.pop();
                }
            }
        }
        self.failed.insert(key);
        false
    }
}

pub fn tww_decide(g: &Trigraph, d: usize) -> Result<bool> {
    ExactSolver::default().decide(g, d)
}

pub fn tww_exact(g: &Trigraph) -> Result<usize> {
    ExactSolver::default().tww(g)
}

/// Number of vertex pairs of `[n]`, i.e. the bit length of an edge mask.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The graph on `[n]` whose edges are the set bits of `mask`, pairs `(i, j)`
/// with `i < j` numbered in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Trigraph {
    let mut g = Trigraph::new(n);
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(i, j, Color::Black).expect("ids in range");
            }
            bit += 1;
        }
    }
    g
}

/// Pair-bit images of every permutation of `[n]`: entry `p * pairs + b` is
/// the bit that pair `b` lands on under permutation `p`.
fn pair_images(n: usize) -> Vec<usize> {
    // lexicographic number of the pair {a, b}
    let index = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        a * n - a * (a + 1) / 2 + (b - a - 1)
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        for i in 0..n {
            for j in i + 1..n {
                out.push(index(perm[i], perm[j]));
            }
        }
        // next lexicographic permutation
        let Some(k) = (1..n).rev().find(|&k| perm[k - 1] < perm[k]) else {
            break;
        };
        let l = (k..n)
            .rev()
            .find(|&l| perm[l] > perm[k - 1])
            .expect("exists");
        perm.swap(k - 1, l);
        perm[k..].reverse();
    }
    out
}

/// Twin-width of every labeled graph on `[n]`, indexed by edge mask.
///
/// One representative per isomorphism class is solved; the value is copied
/// to every relabeling of it.
pub fn census_table(n: usize) -> Result<Vec<u8>> {
    if n == 0 || n > CENSUS_MAX_N {
        return Err(Error::InvalidParameter(format!(
            "census needs 1 <= n <= {CENSUS_MAX_N}, got {n}"
        )));
    }
    const UNSET: u8 = u8::MAX;
    let pairs = pair_count(n);
    let images = pair_images(n);
    let mut table = vec![UNSET; 1 << pairs];
    let mut reps = Vec::new();
    let mut orbit_of = vec![0u32; 1 << pairs];
    for mask in 0..1u64 << pairs {
        if table[mask as usize] != UNSET {
            continue;
        }
        let orbit = reps.len() as u32;
        reps.push(mask);
        table[mask as usize] = 0;
        orbit_of[mask as usize] = orbit;
        for perm in images.chunks(pairs.max(1)) {
            let mut image = 0usize;
            for (b, &to) in perm.iter().enumerate().take(pairs) {
                image |= ((mask >> b & 1) as usize) << to;
            }
            table[image] = 0;
            orbit_of[image] = orbit;
        }
    }
    let solver = ExactSolver::default();
    let values: Vec<u8> = reps
        .par_iter()
        .map(|&mask| solver.tww(&graph_from_mask(n, mask)).map(|t| t as u8))
        .collect::<Result<_>>()?;
    for (t, o) in table.iter_mut().zip(&orbit_of) {
        *t = values[*o as usize];
    }
    Ok(table)
}

/// Number of labeled graphs on `[n]` with twin-width at most `d`.
pub fn census(n: usize, d: usize) -> Result<u64> {
    Ok(census_table(n)?
        .iter()
        .filter(|&&t| t as usize <= d)
        .count() as u64)
}

/// CSV rows `n,d,count` for every `n` in `1..=max_n` and `d` in `0..=max_d`.
pub fn census_csv(max_n: usize, max_d: usize) -> Result<String> {
    let mut out = String::from("n,d,count\n");
    for n in 1..=max_n {
        let table = census_table(n)?;
        for d in 0..=max_d {
            let count = table.iter().filter(|&&t| t as usize <= d).count();
            out.push_str(&format!("{n},{d},{count}\n"));
        }
    }
    Ok(out)
}
