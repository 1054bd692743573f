//! Adjacency labels built from a parallel contraction sequence.
//!
//! Every vertex gets one fixed-width block per parallel step. Walking the
//! sequence backwards from the final single vertex, a vertex `y` of `G` is
//! `p_c(x)` for the vertex `x` of the contracted trigraph `G'` it merges into
//! (`c = 1` for the larger id of a contracted pair, `0` otherwise). Its label
//! is the label of `x` followed by a block holding `c` and `2d + 1` colours
//! packed in base 3:
//!
//! * trit 0: colour between the two predecessors of `x`;
//! * trit `1 + 2(j - 1) + c'`: colour between `y` and `p_{c'}(n_j(x))`, where
//!   `n_j(x)` is the red neighbour of `x` that the decoder numbers `j`.
//!
//! Undefined predecessors and neighbours give colour 0. The decoder replays
//! the blocks level by level and numbers the red edges of the first vertex by
//! the order in which they appear in its block.

use std::io::{Read, Write};

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{apply_parallel, verify_parallel, ParallelSequence};
use crate::trigraph::{Relation, Trigraph, Vertex};

pub type Bits = BitVec<u8, Lsb0>;

/// Largest red-degree bound whose `2d + 1` trits fit in the packed block.
pub const MAX_D: usize = 39;

const LABEL_MAGIC: &[u8; 4] = b"TWL1";

/// Number of bits needed to store `3^(2d+1)` values.
pub fn trit_bits(d: usize) -> usize {
    let states = 3u128.pow(2 * d as u32 + 1);
    (128 - (states - 1).leading_zeros()) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelScheme {
    pub n: usize,
    pub d: usize,
    pub k: usize,
}

impl LabelScheme {
    pub fn new(n: usize, d: usize, k: usize) -> Result<Self> {
        if d > MAX_D {
            return Err(Error::Label(format!(
                "d = {d} exceeds the supported {MAX_D}"
            )));
        }
        Ok(LabelScheme { n, d, k })
    }

    /// Bits per step: one for `c`, the rest for the packed trits.
    pub fn block_width(&self) -> usize {
        1 + trit_bits(self.d)
    }

    pub fn label_len(&self) -> usize {
        self.k * self.block_width()
    }

    fn slots(&self) -> usize {
        2 * self.d + 1
    }
}

/// Answer of the decoder for an ordered pair of labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Adjacency {
    Zero,
    One,
    /// Red edge; the subscript is in `1..=d` and unique among the red
    /// answers for a fixed first label.
    Red(usize),
}

impl Adjacency {
    pub fn relation(self) -> Relation {
        match self {
            Adjacency::Zero => Relation::None,
            Adjacency::One => Relation::Black,
            Adjacency::Red(_) => Relation::Red,
        }
    }
}

fn trit(rel: Relation) -> u128 {
    rel.code() as u128
}

struct Block {
    c: bool,
    trits: Vec<u8>,
}

fn read_block(scheme: &LabelScheme, bits: &BitSlice<u8, Lsb0>, level: usize) -> Block {
    let w = scheme.block_width();
    let start = level * w;
    let c = bits[start];
    let tb = w - 1;
    let mut value: u128 = if tb == 0 {
        0
    } else {
        bits[start + 1..start + w].load_le::<u128>()
    };
    let trits = (0..scheme.slots())
        .map(|_| {
            let t = (value % 3) as u8;
            value /= 3;
            t
        })
        .collect();
    Block { c, trits }
}

/// 1-based position of slot `s` among the red slots of the block.
fn red_rank(block: &Block, s: usize) -> usize {
    block.trits[..=s].iter().filter(|&&t| t == 2).count()
}

/// Colour of the pair, decoded from two labels of the same scheme.
pub fn decode_adjacency(scheme: &LabelScheme, lx: &Bits, ly: &Bits) -> Result<Adjacency> {
    let len = scheme.label_len();
    if lx.len() != len || ly.len() != len {
        return Err(Error::Label(format!(
            "labels of length {} and {} do not match the scheme ({len} bits)",
            lx.len(),
            ly.len()
        )));
    }
    decode_prefix(scheme, lx, ly, scheme.k)?.ok_or_else(|| Error::Label("identical labels".into()))
}

/// Decodes using the first `levels` blocks; `None` when both prefixes name
/// the same vertex.
fn decode_prefix(
    scheme: &LabelScheme,
    lx: &BitSlice<u8, Lsb0>,
    ly: &BitSlice<u8, Lsb0>,
    levels: usize,
) -> Result<Option<Adjacency>> {
    let mut state: Option<Adjacency> = None;
    for level in 0..levels {
        let b1 = read_block(scheme, lx, level);
        let b2 = read_block(scheme, ly, level);
        let slot = match state {
            None if b1.c == b2.c => continue,
            None => 0,
            Some(Adjacency::Zero) | Some(Adjacency::One) => continue,
            Some(Adjacency::Red(j)) => {
                if j == 0 || j > scheme.d {
                    return Err(Error::Label(format!("red subscript {j} out of range")));
                }
                1 + 2 * (j - 1) + b2.c as usize
            }
        };
        state = Some(match b1.trits[slot] {
            0 => Adjacency::Zero,
            1 => Adjacency::One,
            _ => Adjacency::Red(red_rank(&b1, slot)),
        });
    }
    Ok(state)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSet {
    pub scheme: LabelScheme,
    /// `(vertex, label)` sorted by vertex id.
    pub labels: Vec<(Vertex, Bits)>,
}

impl LabelSet {
    pub fn label(&self, v: Vertex) -> Option<&Bits> {
        self.labels
            .binary_search_by_key(&v, |e| e.0)
            .ok()
            .map(|i| &self.labels[i].1)
    }

    pub fn query(&self, u: Vertex, v: Vertex) -> Result<Adjacency> {
        let lu = self.label(u).ok_or(Error::UnknownVertex(u))?;
        let lv = self.label(v).ok_or(Error::UnknownVertex(v))?;
        decode_adjacency(&self.scheme, lu, lv)
    }

    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        w.write_all(LABEL_MAGIC)?;
        for x in [self.scheme.n, self.scheme.d, self.scheme.k] {
            w.write_all(&(x as u32).to_le_bytes())?;
        }
        for (v, bits) in &self.labels {
            w.write_all(&(*v as u32).to_le_bytes())?;
            let mut b = bits.clone();
            b.set_uninitialized(false);
            w.write_all(&b.into_vec())?;
        }
        Ok(())
    }

    pub fn read_from(mut r: impl Read) -> Result<Self> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        if bytes.len() < 16 || &bytes[..4] != LABEL_MAGIC {
            return Err(Error::Label("missing TWL1 header".into()));
        }
        let word = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap()) as usize;
        let scheme = LabelScheme::new(word(4), word(8), word(12))?;
        let len = scheme.label_len();
        let per = len.div_ceil(8);
        let body = &bytes[16..];
        if body.len() != scheme.n * (4 + per) {
            return Err(Error::Label(format!(
                "expected {} label records, file holds {} bytes",
                scheme.n,
                body.len()
            )));
        }
        let mut labels = Vec::with_capacity(scheme.n);
        for rec in body.chunks(4 + per) {
            let v = u32::from_le_bytes(rec[..4].try_into().unwrap()) as usize;
            let mut bits = Bits::from_slice(&rec[4..]);
            bits.truncate(len);
            labels.push((v, bits));
        }
        labels.sort_by_key(|e| e.0);
        Ok(LabelSet { scheme, labels })
    }
}

/// Labels of every vertex of `g` from a parallel sequence of width at most
/// `d`.
pub fn build_labels(g: &Trigraph, pseq: &ParallelSequence, d: usize) -> Result<LabelSet> {
    let report = verify_parallel(g, pseq);
    if !report.valid {
        return Err(Error::InapplicableStep {
            index: report.failed_step.unwrap_or(pseq.len()),
            reason: report.reason.unwrap_or_default(),
        });
    }
    if report.width > d {
        return Err(Error::WidthExceeded {
            width: report.width,
            bound: d,
        });
    }
    let k = pseq.len();
    let scheme = LabelScheme::new(g.len(), d, k)?;
    let mut stages = vec![g.clone()];
    for step in &pseq.steps {
        let next = apply_parallel(stages.last().unwrap(), step)?;
        stages.push(next);
    }
    let cap = g.capacity();
    let mut labels: Vec<Option<Bits>> = vec![None; cap];
    let last = stages[k]
        .vertices()
        .next()
        .expect("sequence ends at one vertex");
    labels[last] = Some(Bits::new());

    let tb = trit_bits(d);
    for level in (0..k).rev() {
        let gi = &stages[level];
        let gp = &stages[level + 1];
        // predecessors of each vertex of G'
        let mut p1: Vec<Option<Vertex>> = vec![None; cap];
        let mut parent: Vec<(Vertex, bool)> = (0..cap).map(|v| (v, false)).collect();
        for &(a, b) in pseq.steps[level].pairs() {
            p1[a] = Some(b);
            parent[b] = (a, true);
        }
        let prefix_len = (k - 1 - level) * scheme.block_width();
        let sub = LabelScheme {
            n: gp.len(),
            d,
            k: k - 1 - level,
        };
        let live: Vec<Vertex> = gp.vertices().collect();
        // numbered red neighbours in G', as read from the labels of G'
        let mut red_nb: Vec<Vec<Option<Vertex>>> = vec![Vec::new(); cap];
        for &x in &live {
            let lx = labels[x].as_ref().unwrap();
            debug_assert_eq!(lx.len(), prefix_len);
            let mut nb = vec![None; d];
            for &y in &live {
                if x == y {
                    continue;
                }
                let ly = labels[y].as_ref().unwrap();
                if let Some(Adjacency::Red(j)) = decode_prefix(&sub, lx, ly, sub.k)? {
                    nb[j - 1] = Some(y);
                }
            }
            red_nb[x] = nb;
        }
        let col = |a: Option<Vertex>, b: Option<Vertex>| match (a, b) {
            (Some(a), Some(b)) => gi.relation(a, b),
            _ => Relation::None,
        };
        let mut next: Vec<Option<Bits>> = vec![None; cap];
        for y in gi.vertices() {
            let (x, c) = parent[y];
            let mut value: u128 = 0;
            let mut pow: u128 = 1;
            let mut push = |rel: Relation| {
                value += trit(rel) * pow;
                pow = pow.wrapping_mul(3);
            };
            push(col(Some(x), p1[x]));
            for &nj in &red_nb[x] {
                for cp in 0..2 {
                    let target = nj.and_then(|z| if cp == 0 { Some(z) } else { p1[z] });
                    push(col(Some(y), target));
                }
            }
            let mut bits = labels[x].clone().unwrap();
            bits.push(c);
            for i in 0..tb {
                bits.push(value >> i & 1 == 1);
            }
            next[y] = Some(bits);
        }
        labels = next;
    }
    let labels = g
        .vertices()
        .map(|v| (v, labels[v].take().expect("every vertex labelled")))
        .collect();
    Ok(LabelSet { scheme, labels })
}

/// Mean time of a decoder query over every ordered pair, in nanoseconds,
/// together with the number of block reads per query (`k`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QueryCost {
    pub n: usize,
    pub k: usize,
    pub label_bits: usize,
    pub queries: usize,
    pub mean_ns: f64,
}

pub fn measure_query_cost(set: &LabelSet) -> Result<QueryCost> {
    let start = std::time::Instant::now();
    let mut queries = 0usize;
    for (i, (_, lx)) in set.labels.iter().enumerate() {
        for (j, (_, ly)) in set.labels.iter().enumerate() {
            if i != j {
                std::hint::black_box(decode_adjacency(&set.scheme, lx, ly)?);
                queries += 1;
            }
        }
    }
    let elapsed = start.elapsed().as_nanos() as f64;
    Ok(QueryCost {
        n: set.scheme.n,
        k: set.scheme.k,
        label_bits: set.scheme.label_len(),
        queries,
        mean_ns: if queries == 0 {
            0.0
        } else {
            elapsed / queries as f64
        },
    })
}
