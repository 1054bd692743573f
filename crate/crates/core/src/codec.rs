//! Whole-graph compression from a contraction sequence read backwards.
//!
//! The payload starts with the id of the final vertex, followed by one split
//! record per contraction, last contraction first. A record holds the ids
//! `w`, `u`, `v`, the 2-bit relation of `u` and `v`, and exactly `d` slots
//! `(z, rel(u, z), rel(v, z))` for the red neighbours of `w`. An unused slot
//! carries `u`'s id and zero relation bits. Fields are `⌈log₂ n⌉` bits wide,
//! least significant bit first.

use bitvec::prelude::*;

use crate::error::{Error, Result};
use crate::sequence::ContractionSequence;
use crate::trigraph::{Relation, SplitRecord, Trigraph, Vertex};

type Bits = BitVec<u8, Lsb0>;

const CODEC_MAGIC: &[u8; 4] = b"TWC1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodecBlob {
    pub n: usize,
    pub d: usize,
    pub payload: BitVec<u8, Lsb0>,
}

/// `⌈log₂ n⌉`, with 0 for `n ≤ 1`.
pub fn id_bits(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Bits of one split record.
pub fn record_bits(n: usize, d: usize) -> usize {
    let b = id_bits(n);
    3 * b + 2 + d * (b + 4)
}

/// Exact payload length for an `n`-vertex graph.
pub fn payload_bits(n: usize, d: usize) -> usize {
    id_bits(n) + n.saturating_sub(1) * record_bits(n, d)
}

/// The upper bound `(d + 3) n ⌈log₂ n⌉ + (4d + 2) n`.
pub fn payload_budget(n: usize, d: usize) -> usize {
    (d + 3) * n * id_bits(n) + (4 * d + 2) * n
}

fn push(bits: &mut Bits, value: usize, width: usize) {
    for i in 0..width {
        bits.push(value >> i & 1 == 1);
    }
}

struct Reader<'a> {
    bits: &'a BitSlice<u8, Lsb0>,
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, width: usize) -> Result<usize> {
        if self.pos + width > self.bits.len() {
            return Err(Error::Codec(format!(
                "stream truncated at bit {} (needs {width} more)",
                self.pos
            )));
        }
        let v = if width == 0 {
            0
        } else {
            self.bits[self.pos..self.pos + width].load_le::<usize>()
        };
        self.pos += width;
        Ok(v)
    }

    fn relation(&mut self) -> Result<Relation> {
        let at = self.pos;
        let code = self.take(2)? as u8;
        Relation::from_code(code)
            .ok_or_else(|| Error::Codec(format!("relation code 11 at bit {at}")))
    }
}

pub fn codec_encode(g: &Trigraph, seq: &ContractionSequence, d: usize) -> Result<CodecBlob> {
    let n = g.len();
    if n == 0 || g.capacity() != n {
        return Err(Error::Codec(format!(
            "vertex ids must be exactly 0..{n} (capacity {})",
            g.capacity()
        )));
    }
    if seq.len() + 1 < n {
        return Err(Error::Incomplete {
            remaining: n - seq.len(),
        });
    }
    if seq.len() >= n {
        return Err(Error::InvalidParameter(format!(
            "{} contractions for {n} vertices",
            seq.len()
        )));
    }
    if g.max_red_degree() > d {
        return Err(Error::WidthExceeded {
            width: g.max_red_degree(),
            bound: d,
        });
    }
    let mut h = g.clone();
    let mut records = Vec::with_capacity(seq.len());
    for (index, s) in seq.steps.iter().enumerate() {
        let rec = h
            .split_record(s.u, s.v)
            .map_err(|e| Error::InapplicableStep {
                index,
                reason: e.to_string(),
            })?;
        h.contract_in_place(s.u, s.v)?;
        let width = rec
            .red
            .iter()
            .map(|&(z, _, _)| h.red_degree(z))
            .chain([rec.red.len()])
            .max()
            .unwrap_or(0);
        if width > d {
            return Err(Error::WidthExceeded { width, bound: d });
        }
        records.push(rec);
    }
    let b = id_bits(n);
    let mut payload = Bits::with_capacity(payload_bits(n, d));
    push(
        &mut payload,
        h.vertices().next().expect("one vertex left"),
        b,
    );
    for rec in records.iter().rev() {
        push(&mut payload, rec.merged(), b);
        push(&mut payload, rec.u, b);
        push(&mut payload, rec.v, b);
        push(&mut payload, rec.uv.code() as usize, 2);
        for slot in 0..d {
            match rec.red.get(slot) {
                Some(&(z, ru, rv)) => {
                    push(&mut payload, z, b);
                    push(&mut payload, ru.code() as usize, 2);
                    push(&mut payload, rv.code() as usize, 2);
                }
                None => push(&mut payload, rec.u, b + 4),
            }
        }
    }
    debug_assert_eq!(payload.len(), payload_bits(n, d));
    Ok(CodecBlob { n, d, payload })
}

pub fn codec_decode(blob: &CodecBlob) -> Result<Trigraph> {
    let (n, d) = (blob.n, blob.d);
    if n == 0 {
        return Err(Error::Codec("empty graph".into()));
    }
    let b = id_bits(n);
    let mut r = Reader {
        bits: &blob.payload,
        pos: 0,
    };
    let id = |r: &mut Reader| -> Result<Vertex> {
        let at = r.pos;
        let v = r.take(b)?;
        if v >= n {
            return Err(Error::Codec(format!(
                "vertex id {v} at bit {at} is out of range"
            )));
        }
        Ok(v)
    };
    let mut g = Trigraph::singleton(n, id(&mut r)?)?;
    for _ in 1..n {
        let start = r.pos;
        let w = id(&mut r)?;
        let u = id(&mut r)?;
        let v = id(&mut r)?;
        if u == v || w != u.min(v) {
            return Err(Error::Codec(format!(
                "record at bit {start}: w = {w} is not min({u}, {v})"
            )));
        }
        let uv = r.relation()?;
        let mut red = Vec::new();
        for _ in 0..d {
            let z = id(&mut r)?;
            let ru = r.relation()?;
            let rv = r.relation()?;
            if z == u {
                if ru != Relation::None || rv != Relation::None {
                    return Err(Error::Codec(format!(
                        "record at bit {start}: empty slot with nonzero relation bits"
                    )));
                }
            } else {
                red.push((z, ru, rv));
            }
        }
        g.split_in_place(w, &SplitRecord { u, v, uv, red })
            .map_err(|e| Error::Codec(format!("record at bit {start}: {e}")))?;
    }
    if r.pos != blob.payload.len() {
        return Err(Error::Codec(format!(
            "{} trailing bits",
            blob.payload.len() - r.pos
        )));
    }
    Ok(g)
}

impl CodecBlob {
    /// `TWC1`, `n` and `d` as little-endian u32, then the payload bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = CODEC_MAGIC.to_vec();
        out.extend((self.n as u32).to_le_bytes());
        out.extend((self.d as u32).to_le_bytes());
        let mut p = self.payload.clone();
        p.set_uninitialized(false);
        out.extend(p.into_vec());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 12 || &bytes[..4] != CODEC_MAGIC {
            return Err(Error::Codec("missing TWC1 header".into()));
        }
        let n = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
        let d = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
        let len = payload_bits(n, d);
        if bytes.len() - 12 != len.div_ceil(8) {
            return Err(Error::Codec(format!(
                "payload holds {} bytes, expected {}",
                bytes.len() - 12,
                len.div_ceil(8)
            )));
        }
        let mut payload = Bits::from_slice(&bytes[12..]);
        payload.truncate(len);
        Ok(CodecBlob { n, d, payload })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Trigraph {
        Trigraph::from_edges(4, [(0, 1), (1, 2), (2, 3)], []).unwrap()
    }

    #[test]
    fn path_payload_size() {
        let seq = ContractionSequence::from_pairs([(0, 1), (0, 2), (0, 3)]);
        let blob = codec_encode(&p4(), &seq, 1).unwrap();
        assert_eq!(blob.payload.len(), 44);
        assert!(44 <= payload_budget(4, 1));
        assert_eq!(codec_decode(&blob).unwrap(), p4());
        let back = CodecBlob::from_bytes(&blob.to_bytes()).unwrap();
        assert_eq!(back, blob);
    }

    #[test]
    fn single_vertex() {
        let blob = codec_encode(&Trigraph::new(1), &ContractionSequence::default(), 0).unwrap();
        assert!(blob.payload.is_empty());
        assert_eq!(codec_decode(&blob).unwrap(), Trigraph::new(1));
    }

    #[test]
    fn bad_streams() {
        let seq = ContractionSequence::from_pairs([(0, 1), (0, 2), (0, 3)]);
        let blob = codec_encode(&p4(), &seq, 1).unwrap();
        // relation bits of the first record sit after the K1 id and three ids
        let mut bad = blob.clone();
        bad.payload.set(2 + 6, true);
        bad.payload.set(2 + 7, true);
        assert!(matches!(codec_decode(&bad), Err(Error::Codec(m)) if m.contains("11")));
        let mut short = blob.clone();
        short.payload.truncate(30);
        assert!(matches!(codec_decode(&short), Err(Error::Codec(m)) if m.contains("truncated")));
        assert!(codec_encode(&p4(), &seq, 0).is_err());
    }
}
