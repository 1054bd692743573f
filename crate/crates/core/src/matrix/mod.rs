//! 0/1/r matrices, divisions into consecutive parts, zones and corners.

mod minor;

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trigraph::{Color, Trigraph, Vertex};

pub use minor::{
    find_minor, is_minor, is_t_grid, is_t_mixed, is_t_mixed_neat, MinorKind, MinorSearch,
};

#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub enum Entry {
    #[default]
    Zero,
    One,
    Red,
}

impl Entry {
    pub fn symbol(self) -> char {
        match self {
            Entry::Zero => '0',
            Entry::One => '1',
            Entry::Red => 'r',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '0' => Some(Entry::Zero),
            '1' => Some(Entry::One),
            'r' | 'R' => Some(Entry::Red),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Entry>,
}

impl fmt::Debug for TriMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TriMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = self.row(r).iter().map(|e| e.symbol()).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl TriMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        TriMatrix {
            rows,
            cols,
            entries: vec![Entry::Zero; rows * cols],
        }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Entry>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Matrix(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(TriMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of `0`, `1` and `r` symbols.
    pub fn from_strs<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let cols = rows
            .first()
            .map(|r| r.as_ref().chars().count())
            .unwrap_or(0);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.chars().count() != cols {
                return Err(Error::Matrix(format!("row {i} has the wrong length")));
            }
            for c in row.chars() {
                entries.push(
                    Entry::from_symbol(c)
                        .ok_or_else(|| Error::Matrix(format!("bad symbol {c:?} in row {i}")))?,
                );
            }
        }
        TriMatrix::from_entries(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Entry {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, e: Entry) {
        self.entries[r * self.cols + c] = e;
    }

    pub fn row(&self, r: usize) -> &[Entry] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Entry> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn count(&self, e: Entry) -> usize {
        self.entries.iter().filter(|&&x| x == e).count()
    }

    pub fn transpose(&self) -> TriMatrix {
        let mut t = TriMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Copy without row `r` and column `c`.
    pub fn without(&self, r: usize, c: usize) -> TriMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                entries.push(self.get(i, j));
            }
        }
        TriMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    pub fn columns_equal(&self, a: usize, b: usize) -> bool {
        (0..self.rows).all(|r| self.get(r, a) == self.get(r, b))
    }

    /// Rows of `0`/`1`/`r` symbols.
    pub fn to_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|e| e.symbol()).collect())
            .collect()
    }

    fn check_rect(&self, rect: &Rect) -> Result<()> {
        if rect.rows.is_empty() || rect.cols.is_empty() {
            return Err(Error::Matrix("empty rectangle".into()));
        }
        if rect.rows.end > self.rows || rect.cols.end > self.cols {
            return Err(Error::Matrix(format!(
                "rectangle {rect:?} outside a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(())
    }
}

/// Rows `rows` × columns `cols`, half-open.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub rows: Range<usize>,
    pub cols: Range<usize>,
}

impl Rect {
    pub fn new(rows: Range<usize>, cols: Range<usize>) -> Self {
        Rect { rows, cols }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZoneKind {
    Constant,
    Horizontal,
    Vertical,
    Mixed,
}

/// Horizontal when all columns of the rectangle are equal, vertical when all
/// rows are equal, constant when both, mixed otherwise.
pub fn classify_rect(m: &TriMatrix, rect: &Rect) -> Result<ZoneKind> {
    m.check_rect(rect)?;
    let c0 = rect.cols.start;
    let r0 = rect.rows.start;
    let horizontal = rect
        .rows
        .clone()
        .all(|r| rect.cols.clone().all(|c| m.get(r, c) == m.get(r, c0)));
    let vertical = rect
        .rows
        .clone()
        .all(|r| rect.cols.clone().all(|c| m.get(r, c) == m.get(r0, c)));
    Ok(match (horizontal, vertical) {
        (true, true) => ZoneKind::Constant,
        (true, false) => ZoneKind::Horizontal,
        (false, true) => ZoneKind::Vertical,
        (false, false) => ZoneKind::Mixed,
    })
}

pub fn classify_zone(m: &TriMatrix, div: &Division, i: usize, j: usize) -> Result<ZoneKind> {
    classify_rect(m, &div.zone(i, j)?)
}

/// Whether the 2×2 window with top-left corner `(r, c)` is mixed.
pub fn is_corner_at(m: &TriMatrix, r: usize, c: usize) -> bool {
    let (a, b) = (m.get(r, c), m.get(r, c + 1));
    let (x, y) = (m.get(r + 1, c), m.get(r + 1, c + 1));
    !(a == b && x == y) && !(a == x && b == y)
}

/// Whether the window at `(r, c)` is a corner with entries in {0, 1} only.
pub fn is_01_corner_at(m: &TriMatrix, r: usize, c: usize) -> bool {
    is_corner_at(m, r, c)
        && [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)]
            .iter()
            .all(|&(i, j)| m.get(i, j) != Entry::Red)
}

fn windows(m: &TriMatrix) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..m.rows.saturating_sub(1))
        .flat_map(move |r| (0..m.cols.saturating_sub(1)).map(move |c| (r, c)))
}

/// Top-left positions of all corners.
pub fn find_corners(m: &TriMatrix) -> Vec<(usize, usize)> {
    windows(m).filter(|&(r, c)| is_corner_at(m, r, c)).collect()
}

pub fn find_01_corners(m: &TriMatrix) -> Vec<(usize, usize)> {
    windows(m)
        .filter(|&(r, c)| is_01_corner_at(m, r, c))
        .collect()
}

pub fn has_corner(m: &TriMatrix) -> bool {
    windows(m).any(|(r, c)| is_corner_at(m, r, c))
}

/// 2D prefix sums of an indicator over matrix positions.
#[derive(Clone, Debug)]
pub(crate) struct Prefix {
    cols: usize,
    sums: Vec<u32>,
}

impl Prefix {
    pub(crate) fn new(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let w = cols + 1;
        let mut sums = vec![0u32; (rows + 1) * w];
        for r in 0..rows {
            for c in 0..cols {
                sums[(r + 1) * w + c + 1] =
                    sums[r * w + c + 1] + sums[(r + 1) * w + c] - sums[r * w + c] + f(r, c) as u32;
            }
        }
        Prefix { cols: w, sums }
    }

    /// Count over rows `r0..r1`, columns `c0..c1` (empty ranges give 0).
    pub(crate) fn sum(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> u32 {
        if r1 <= r0 || c1 <= c0 {
            return 0;
        }
        let w = self.cols;
        self.sums[r1 * w + c1] + self.sums[r0 * w + c0]
            - self.sums[r0 * w + c1]
            - self.sums[r1 * w + c0]
    }

    /// Whether a window with top-left corner inside the rectangle and fully
    /// contained in it has been marked (for window indicators).
    pub(crate) fn window_in(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> bool {
        r1 >= r0 + 2 && c1 >= c0 + 2 && self.sum(r0, r1 - 1, c0, c1 - 1) > 0
    }
}

/// A division into consecutive row parts and consecutive column parts, given
/// by part boundaries `0 = b_0 < b_1 < … < b_k = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Division {
    row_bounds: Vec<usize>,
    col_bounds: Vec<usize>,
}

fn check_bounds(b: &[usize], n: usize, what: &str) -> Result<()> {
    if b.len() < 2 || b[0] != 0 || *b.last().unwrap() != n {
        return Err(Error::InvalidDivision(format!(
            "{what} boundaries must run from 0 to {n}"
        )));
    }
    if b.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidDivision(format!(
            "{what} boundaries must be strictly increasing"
        )));
    }
    Ok(())
}

fn bounds_from_cuts(cuts: &[usize], n: usize) -> Vec<usize> {
    let mut b = vec![0];
    b.extend_from_slice(cuts);
    b.push(n);
    b
}

impl Division {
    pub fn from_bounds(
        rows: usize,
        cols: usize,
        row_bounds: Vec<usize>,
        col_bounds: Vec<usize>,
    ) -> Result<Self> {
        check_bounds(&row_bounds, rows, "row")?;
        check_bounds(&col_bounds, cols, "column")?;
        Ok(Division {
            row_bounds,
            col_bounds,
        })
    }

    /// Division whose parts start at `0` and at every cut position; a cut at
    /// `p` separates index `p - 1` from index `p`.
    pub fn from_cuts(
        rows: usize,
        cols: usize,
        row_cuts: &[usize],
        col_cuts: &[usize],
    ) -> Result<Self> {
        Division::from_bounds(
            rows,
            cols,
            bounds_from_cuts(row_cuts, rows),
            bounds_from_cuts(col_cuts, cols),
        )
    }

    pub fn symmetric_from_cuts(n: usize, cuts: &[usize]) -> Result<Self> {
        Division::from_cuts(n, n, cuts, cuts)
    }

    /// Every row and every column in its own part.
    pub fn finest(rows: usize, cols: usize) -> Self {
        Division {
            row_bounds: (0..=rows).collect(),
            col_bounds: (0..=cols).collect(),
        }
    }

    pub fn coarsest(rows: usize, cols: usize) -> Self {
        Division {
            row_bounds: vec![0, rows],
            col_bounds: vec![0, cols],
        }
    }

    pub fn rows(&self) -> usize {
        *self.row_bounds.last().unwrap()
    }

    pub fn cols(&self) -> usize {
        *self.col_bounds.last().unwrap()
    }

    pub fn row_bounds(&self) -> &[usize] {
        &self.row_bounds
    }

    pub fn col_bounds(&self) -> &[usize] {
        &self.col_bounds
    }

    pub fn row_parts(&self) -> usize {
        self.row_bounds.len() - 1
    }

    pub fn col_parts(&self) -> usize {
        self.col_bounds.len() - 1
    }

    pub fn row_part(&self, i: usize) -> Range<usize> {
        self.row_bounds[i]..self.row_bounds[i + 1]
    }

    pub fn col_part(&self, j: usize) -> Range<usize> {
        self.col_bounds[j]..self.col_bounds[j + 1]
    }

    /// Row part `i` × column part `j`.
    pub fn zone(&self, i: usize, j: usize) -> Result<Rect> {
        if i >= self.row_parts() || j >= self.col_parts() {
            return Err(Error::InvalidDivision(format!(
                "zone ({i}, {j}) out of range"
            )));
        }
        Ok(Rect::new(self.row_part(i), self.col_part(j)))
    }

    pub fn part_of_row(&self, r: usize) -> usize {
        self.row_bounds.partition_point(|&b| b <= r) - 1
    }

    pub fn part_of_col(&self, c: usize) -> usize {
        self.col_bounds.partition_point(|&b| b <= c) - 1
    }

    pub fn is_symmetric(&self) -> bool {
        self.row_bounds == self.col_bounds
    }

    pub fn fits(&self, m: &TriMatrix) -> bool {
        self.rows() == m.rows() && self.cols() == m.cols()
    }

    /// Whether every boundary of `self` is a boundary of `finer`.
    pub fn coarsens(&self, finer: &Division) -> bool {
        self.row_bounds
            .iter()
            .all(|b| finer.row_bounds.binary_search(b).is_ok())
            && self
                .col_bounds
                .iter()
                .all(|b| finer.col_bounds.binary_search(b).is_ok())
    }

    /// Merges column parts `j` and `j + 1`.
    pub fn fuse_cols(&self, j: usize) -> Result<Division> {
        if j + 1 >= self.col_parts() {
            return Err(Error::InvalidDivision(format!(
                "no column parts {j}, {}",
                j + 1
            )));
        }
        let mut d = self.clone();
        d.col_bounds.remove(j + 1);
        Ok(d)
    }

    pub fn fuse_rows(&self, i: usize) -> Result<Division> {
        if i + 1 >= self.row_parts() {
            return Err(Error::InvalidDivision(format!(
                "no row parts {i}, {}",
                i + 1
            )));
        }
        let mut d = self.clone();
        d.row_bounds.remove(i + 1);
        Ok(d)
    }

    /// Removes row `r` and column `c`, shrinking their parts (a part that
    /// becomes empty disappears).
    pub fn without(&self, r: usize, c: usize) -> Division {
        Division {
            row_bounds: shrink(&self.row_bounds, r),
            col_bounds: shrink(&self.col_bounds, c),
        }
    }
}

fn shrink(bounds: &[usize], x: usize) -> Vec<usize> {
    let mut out: Vec<usize> = bounds
        .iter()
        .map(|&b| if b > x { b - 1 } else { b })
        .collect();
    out.dedup();
    out
}

/// Adjacency matrix of `g` with rows and columns in `order`; red edges become
/// `r`, the diagonal is 0.
pub fn adjacency_matrix(g: &Trigraph, order: &[Vertex]) -> Result<TriMatrix> {
    let live: Vec<Vertex> = g.vertices().collect();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != live {
        return Err(Error::InvalidPermutation(
            "order must list every vertex exactly once".into(),
        ));
    }
    let n = order.len();
    let mut m = TriMatrix::zeros(n, n);
    for (i, &u) in order.iter().enumerate() {
        for (j, &v) in order.iter().enumerate() {
            let e = match g.color(u, v) {
                None => Entry::Zero,
                Some(Color::Black) => Entry::One,
                Some(Color::Red) => Entry::Red,
            };
            m.set(i, j, e);
        }
    }
    Ok(m)
}

/// Trigraph whose adjacency matrix (in natural order) is `m`. Needs a
/// symmetric matrix; the diagonal is ignored.
pub fn graph_of_matrix(m: &TriMatrix) -> Result<Trigraph> {
    if !m.is_symmetric() {
        return Err(Error::Matrix("matrix is not symmetric".into()));
    }
    let mut g = Trigraph::new(m.rows());
    for i in 0..m.rows() {
        for j in i + 1..m.cols() {
            match m.get(i, j) {
                Entry::Zero => {}
                Entry::One => g.add_edge(i, j, Color::Black)?,
                Entry::Red => g.add_edge(i, j, Color::Red)?,
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zone_kinds() {
        let m = TriMatrix::from_strs(&["00", "00"]).unwrap();
        let all = Rect::new(0..2, 0..2);
        assert_eq!(classify_rect(&m, &all).unwrap(), ZoneKind::Constant);
        let m = TriMatrix::from_strs(&["01", "01"]).unwrap();
        assert_eq!(classify_rect(&m, &all).unwrap(), ZoneKind::Vertical);
        let m = TriMatrix::from_strs(&["00", "11"]).unwrap();
        assert_eq!(classify_rect(&m, &all).unwrap(), ZoneKind::Horizontal);
        let m = TriMatrix::from_strs(&["01", "10"]).unwrap();
        assert_eq!(classify_rect(&m, &all).unwrap(), ZoneKind::Mixed);
        assert!(classify_rect(&m, &Rect::new(1..1, 0..2)).is_err());
    }

    #[test]
    fn corners_and_01_corners() {
        let m = TriMatrix::from_strs(&["0r", "10"]).unwrap();
        assert_eq!(find_corners(&m), vec![(0, 0)]);
        assert!(find_01_corners(&m).is_empty());
    }

    #[test]
    fn division_lookup() {
        let d = Division::symmetric_from_cuts(8, &[2, 3, 4, 6]).unwrap();
        assert_eq!(d.row_parts(), 5);
        assert_eq!(d.part_of_row(0), 0);
        assert_eq!(d.part_of_row(2), 1);
        assert_eq!(d.part_of_col(7), 4);
        assert!(d.is_symmetric());
        assert!(Division::from_cuts(4, 4, &[2, 2], &[]).is_err());
        let w = d.without(2, 2);
        assert_eq!(w.row_bounds(), &[0, 2, 3, 5, 7]);
    }

    #[test]
    fn adjacency_of_triangle() {
        let g = Trigraph::from_edges(3, [(0, 1), (1, 2), (0, 2)], []).unwrap();
        let m = adjacency_matrix(&g, &[2, 0, 1]).unwrap();
        assert_eq!(m.to_strings(), vec!["011", "101", "110"]);
        assert!(adjacency_matrix(&g, &[0, 1]).is_err());
        assert_eq!(graph_of_matrix(&m).unwrap().edge_count(), 3);
    }
}
