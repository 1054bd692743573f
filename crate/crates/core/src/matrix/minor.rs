//! Exact search for grid and mixed minors.
//!
//! Row divisions are enumerated by backtracking; for a fixed row division the
//! column cuts are completed greedily, closing a column part as soon as every
//! zone in it satisfies the zone predicate. All predicates are monotone under
//! enlarging a zone, which makes the greedy completion optimal and lets a
//! prefix of row parts that already fails be pruned.

use serde::{Deserialize, Serialize};

use super::{is_01_corner_at, is_corner_at, Division, Entry, Prefix, TriMatrix};
use crate::error::{Error, Result};

pub const DEFAULT_MINOR_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MinorKind {
    /// Every zone holds a non-zero entry (`r` counts as non-zero).
    Grid,
    /// Every zone is mixed, i.e. contains a corner.
    Mixed,
    /// Every zone contains an `r` entry or a 0,1-corner (the test used on
    /// neatly divided matrices).
    NeatMixed,
}

struct Zones {
    kind: MinorKind,
    nonzero: Prefix,
    red: Prefix,
    corner: Prefix,
}

impl Zones {
    fn new(m: &TriMatrix, kind: MinorKind) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        let w_rows = rows.saturating_sub(1);
        let w_cols = cols.saturating_sub(1);
        let corner = match kind {
            MinorKind::Grid => Prefix::new(0, 0, |_, _| false),
            MinorKind::Mixed => Prefix::new(w_rows, w_cols, |r, c| is_corner_at(m, r, c)),
            MinorKind::NeatMixed => Prefix::new(w_rows, w_cols, |r, c| is_01_corner_at(m, r, c)),
        };
        Zones {
            kind,
            nonzero: Prefix::new(rows, cols, |r, c| m.get(r, c) != Entry::Zero),
            red: Prefix::new(rows, cols, |r, c| m.get(r, c) == Entry::Red),
            corner,
        }
    }

    fn hit(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> bool {
        match self.kind {
            MinorKind::Grid => self.nonzero.sum(r0, r1, c0, c1) > 0,
            MinorKind::Mixed => self.corner.window_in(r0, r1, c0, c1),
            MinorKind::NeatMixed => {
                self.red.sum(r0, r1, c0, c1) > 0 || self.corner.window_in(r0, r1, c0, c1)
            }
        }
    }
}

/// Whether the square division `div` of `m` is a minor of the given kind.
pub fn is_minor(m: &TriMatrix, div: &Division, kind: MinorKind) -> Result<bool> {
    if !div.fits(m) {
        return Err(Error::InvalidDivision(
            "division does not fit the matrix".into(),
        ));
    }
    if div.row_parts() != div.col_parts() {
        return Err(Error::InvalidDivision(format!(
            "a ({}, {}) division is not square",
            div.row_parts(),
            div.col_parts()
        )));
    }
    let z = Zones::new(m, kind);
    Ok((0..div.row_parts()).all(|i| {
        (0..div.col_parts()).all(|j| {
            let (r, c) = (div.row_part(i), div.col_part(j));
            z.hit(r.start, r.end, c.start, c.end)
        })
    }))
}

pub fn is_t_grid(m: &TriMatrix, div: &Division) -> Result<bool> {
    is_minor(m, div, MinorKind::Grid)
}

pub fn is_t_mixed(m: &TriMatrix, div: &Division) -> Result<bool> {
    is_minor(m, div, MinorKind::Mixed)
}

pub fn is_t_mixed_neat(m: &TriMatrix, div: &Division) -> Result<bool> {
    is_minor(m, div, MinorKind::NeatMixed)
}

/// Minor search with a cap on the matrix dimension.
#[derive(Clone, Debug)]
pub struct MinorSearch {
    pub cap: usize,
}

impl Default for MinorSearch {
    fn default() -> Self {
        MinorSearch {
            cap: DEFAULT_MINOR_CAP,
        }
    }
}

impl MinorSearch {
    pub fn with_cap(cap: usize) -> Self {
        MinorSearch { cap }
    }

    /// A `(t, t)` division of `m` witnessing a minor of the given kind.
    pub fn find(&self, m: &TriMatrix, t: usize, kind: MinorKind) -> Result<Option<Division>> {
        let rows: Vec<usize> = (1..m.rows()).collect();
        let cols: Vec<usize> = (1..m.cols()).collect();
        self.search(m, t, kind, &rows, &cols)
    }

    /// Like [`MinorSearch::find`], restricted to divisions coarsening `base`.
    pub fn find_coarsening(
        &self,
        m: &TriMatrix,
        t: usize,
        kind: MinorKind,
        base: &Division,
    ) -> Result<Option<Division>> {
        if !base.fits(m) {
            return Err(Error::InvalidDivision(
                "division does not fit the matrix".into(),
            ));
        }
        let rb = base.row_bounds();
        let cb = base.col_bounds();
        self.search(m, t, kind, &rb[1..rb.len() - 1], &cb[1..cb.len() - 1])
    }

    fn search(
        &self,
        m: &TriMatrix,
        t: usize,
        kind: MinorKind,
        row_cuts: &[usize],
        col_cuts: &[usize],
    ) -> Result<Option<Division>> {
        if t == 0 {
            return Err(Error::InvalidParameter(
                "minor order must be at least 1".into(),
            ));
        }
        let dim = m.rows().max(m.cols());
        if dim > self.cap {
            return Err(Error::CapExceeded {
                size: dim,
                cap: self.cap,
            });
        }
        if m.rows() == 0 || m.cols() == 0 || row_cuts.len() + 1 < t || col_cuts.len() + 1 < t {
            return Ok(None);
        }
        let zones = Zones::new(m, kind);
        let mut s = Backtrack {
            zones: &zones,
            t,
            rows: m.rows(),
            cols: m.cols(),
            row_cuts,
            col_cuts,
            parts: Vec::with_capacity(t),
        };
        Ok(s.run(0, 0).map(|(rb, cb)| {
            Division::from_bounds(m.rows(), m.cols(), rb, cb).expect("search builds valid bounds")
        }))
    }
}

struct Backtrack<'a> {
    zones: &'a Zones,
    t: usize,
    rows: usize,
    cols: usize,
    row_cuts: &'a [usize],
    col_cuts: &'a [usize],
    parts: Vec<(usize, usize)>,
}

impl Backtrack<'_> {
    /// Greedy column completion for the current row parts. Returns column
    /// boundaries of a `t`-part division when one exists.
    fn columns(&self) -> Option<Vec<usize>> {
        let closes = |c0: usize, c1: usize| {
            self.parts
                .iter()
                .all(|&(r0, r1)| self.zones.hit(r0, r1, c0, c1))
        };
        let mut bounds = vec![0];
        let mut next = 0;
        for _ in 1..self.t {
            let c0 = *bounds.last().unwrap();
            loop {
                let &c1 = self.col_cuts.get(next)?;
                next += 1;
                if c1 > c0 && closes(c0, c1) {
                    bounds.push(c1);
                    break;
                }
            }
        }
        // the last part runs to the end of the matrix
        closes(*bounds.last().unwrap(), self.cols).then(|| {
            bounds.push(self.cols);
            bounds
        })
    }

    fn run(&mut self, start: usize, first_cut: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        if self.parts.len() + 1 == self.t {
            self.parts.push((start, self.rows));
            let found = self.columns();
            let out = found.map(|cb| {
                let mut rb: Vec<usize> = self.parts.iter().map(|p| p.0).collect();
                rb.push(self.rows);
                (rb, cb)
            });
            self.parts.pop();
            return out;
        }
        let still_needed = self.t - self.parts.len() - 1;
        for k in first_cut..self.row_cuts.len() {
            if self.row_cuts.len() - k < still_needed {
                break;
            }
            let p = self.row_cuts[k];
            if let MinorKind::Grid = self.zones.kind {
                // each remaining row part needs t non-zero entries
                let rest = self.zones.nonzero.sum(p, self.rows, 0, self.cols) as usize;
                if rest < still_needed * self.t {
                    break;
                }
            }
            self.parts.push((start, p));
            let ok = self.columns().is_some();
            let found = if ok { self.run(p, k + 1) } else { None };
            self.parts.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

pub fn find_minor(m: &TriMatrix, t: usize, kind: MinorKind) -> Result<Option<Division>> {
    MinorSearch::default().find(m, t, kind)
}
