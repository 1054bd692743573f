//! Neatly divided 0/1/r matrices and the coarsening loop that turns them into
//! parallel contraction sequences.
//!
//! A division is neat when every zone is either filled with `r` or free of `r`
//! and horizontal or vertical. Fusing parts fills with `r` every merged zone
//! that contains an `r` or a 0,1-corner, which keeps the division neat.
//! Identical columns inside a part can then be deleted, which simulates
//! contracting the two corresponding vertices.

use std::collections::HashMap;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{
    classify_rect, graph_of_matrix, is_01_corner_at, Division, Entry, MinorKind, MinorSearch,
    Prefix, Rect, TriMatrix, ZoneKind,
};
use crate::sequence::{verify_parallel, ParallelSequence, ParallelStep};
use crate::trigraph::{Trigraph, Vertex};

/// `8/3 (t+1)^2 2^(4t)`, the constant bounding the density of `t`-grid free
/// 0/1 matrices.
pub fn grid_constant(t: u32) -> f64 {
    8.0 / 3.0 * f64::from(t + 1).powi(2) * 2f64.powi(4 * t as i32)
}

/// Mixed-value cap `4 c_d` that makes the coarsening provably succeed.
pub fn theoretical_mv_cap(d: u32) -> f64 {
    4.0 * grid_constant(d)
}

/// Base-2 logarithm of the part-size cap `2^(4 c_d + 2)` matching
/// [`theoretical_mv_cap`].
pub fn theoretical_part_size_log2(d: u32) -> f64 {
    4.0 * grid_constant(d) + 2.0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoarsenParams {
    /// Order of the mixed minor the matrices must avoid.
    pub d: usize,
    pub mv_cap: usize,
    pub ps_cap: usize,
    /// Parts of at least this size are large and never fused again.
    pub large_threshold: usize,
    /// Number of parts holding an identical column pair to aim for; `None`
    /// means `max(1, n / (2 ps_cap))`.
    pub quota: Option<usize>,
}

impl Default for CoarsenParams {
    fn default() -> Self {
        CoarsenParams {
            d: 4,
            mv_cap: 4,
            ps_cap: 8,
            large_threshold: 5,
            quota: None,
        }
    }
}

impl CoarsenParams {
    pub fn validate(&self) -> Result<()> {
        if self.mv_cap == 0 {
            return Err(Error::InvalidParameter("mv_cap must be at least 1".into()));
        }
        if self.large_threshold > self.ps_cap {
            return Err(Error::InvalidParameter(format!(
                "large_threshold {} exceeds ps_cap {}",
                self.large_threshold, self.ps_cap
            )));
        }
        Ok(())
    }

    /// Red number guaranteed by the caps: every row meets at most `mv_cap`
    /// `r` zones of width at most `ps_cap`.
    pub fn red_bound(&self) -> usize {
        self.mv_cap * self.ps_cap
    }

    fn quota_for(&self, n: usize) -> usize {
        self.quota.unwrap_or_else(|| (n / (2 * self.ps_cap)).max(1))
    }
}

/// Largest number of `r` entries in a single row or column.
pub fn red_number(m: &TriMatrix) -> usize {
    let rows = (0..m.rows()).map(|r| m.row(r).iter().filter(|&&e| e == Entry::Red).count());
    let cols = (0..m.cols()).map(|c| (0..m.rows()).filter(|&r| m.get(r, c) == Entry::Red).count());
    rows.chain(cols).max().unwrap_or(0)
}

/// Prefix sums answering "does this rectangle contain an `r`" and "does it
/// contain a 0,1-corner" in constant time.
struct Probe {
    red: Prefix,
    corner: Prefix,
}

impl Probe {
    fn new(m: &TriMatrix) -> Self {
        Probe {
            red: Prefix::new(m.rows(), m.cols(), |r, c| m.get(r, c) == Entry::Red),
            corner: Prefix::new(
                m.rows().saturating_sub(1),
                m.cols().saturating_sub(1),
                |r, c| is_01_corner_at(m, r, c),
            ),
        }
    }

    /// Whether the zone is (or, after a fusion, becomes) an `r` zone.
    fn filled(&self, rows: &Range<usize>, cols: &Range<usize>) -> bool {
        self.red.sum(rows.start, rows.end, cols.start, cols.end) > 0
            || self
                .corner
                .window_in(rows.start, rows.end, cols.start, cols.end)
    }

    /// 0,1-corner in the two rows around boundary `b`, within `cols`.
    fn corner_across_rows(&self, b: usize, cols: &Range<usize>) -> bool {
        cols.len() >= 2 && self.corner.sum(b - 1, b, cols.start, cols.end - 1) > 0
    }

    fn corner_across_cols(&self, b: usize, rows: &Range<usize>) -> bool {
        rows.len() >= 2 && self.corner.sum(rows.start, rows.end - 1, b - 1, b) > 0
    }

    /// Mixed value of the column part `cols` against row boundaries `rb`.
    fn col_part_value(&self, cols: &Range<usize>, rb: &[usize]) -> usize {
        let filled: Vec<bool> = rb
            .windows(2)
            .map(|w| self.filled(&(w[0]..w[1]), cols))
            .collect();
        let zones = filled.iter().filter(|&&f| f).count();
        let cuts = (1..filled.len())
            .filter(|&i| !filled[i - 1] && !filled[i] && self.corner_across_rows(rb[i], cols))
            .count();
        zones + cuts
    }

    fn row_part_value(&self, rows: &Range<usize>, cb: &[usize]) -> usize {
        let filled: Vec<bool> = cb
            .windows(2)
            .map(|w| self.filled(rows, &(w[0]..w[1])))
            .collect();
        let zones = filled.iter().filter(|&&f| f).count();
        let cuts = (1..filled.len())
            .filter(|&j| !filled[j - 1] && !filled[j] && self.corner_across_cols(cb[j], rows))
            .count();
        zones + cuts
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeatDivision {
    matrix: TriMatrix,
    division: Division,
}

impl NeatDivision {
    pub fn new(matrix: TriMatrix, division: Division) -> Result<Self> {
        if !division.fits(&matrix) {
            return Err(Error::InvalidDivision(
                "division does not fit the matrix".into(),
            ));
        }
        let nd = NeatDivision { matrix, division };
        nd.check_neat()?;
        Ok(nd)
    }

    /// The finest division, neat for every matrix.
    pub fn finest(matrix: TriMatrix) -> Self {
        let division = Division::finest(matrix.rows(), matrix.cols());
        NeatDivision { matrix, division }
    }

    pub fn matrix(&self) -> &TriMatrix {
        &self.matrix
    }

    pub fn division(&self) -> &Division {
        &self.division
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn check_neat(&self) -> Result<()> {
        let d = &self.division;
        for i in 0..d.row_parts() {
            for j in 0..d.col_parts() {
                let rect = d.zone(i, j)?;
                let area = rect.rows.len() * rect.cols.len();
                let reds = rect
                    .rows
                    .clone()
                    .flat_map(|r| rect.cols.clone().map(move |c| (r, c)))
                    .filter(|&(r, c)| self.matrix.get(r, c) == Entry::Red)
                    .count();
                if reds == area {
                    continue;
                }
                if reds > 0 {
                    return Err(Error::NotNeat(format!("zone ({i}, {j}) is partly red")));
                }
                if classify_rect(&self.matrix, &rect)? == ZoneKind::Mixed {
                    return Err(Error::NotNeat(format!(
                        "zone ({i}, {j}) is mixed without r"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_red_zone(&self, i: usize, j: usize) -> bool {
        let (r, c) = (self.division.row_part(i), self.division.col_part(j));
        self.matrix.get(r.start, c.start) == Entry::Red
    }

    pub fn row_mixed_value(&self, i: usize) -> usize {
        Probe::new(&self.matrix)
            .row_part_value(&self.division.row_part(i), self.division.col_bounds())
    }

    pub fn col_mixed_value(&self, j: usize) -> usize {
        Probe::new(&self.matrix)
            .col_part_value(&self.division.col_part(j), self.division.row_bounds())
    }

    pub fn row_mixed_values(&self) -> Vec<usize> {
        let p = Probe::new(&self.matrix);
        (0..self.division.row_parts())
            .map(|i| p.row_part_value(&self.division.row_part(i), self.division.col_bounds()))
            .collect()
    }

    pub fn col_mixed_values(&self) -> Vec<usize> {
        let p = Probe::new(&self.matrix);
        (0..self.division.col_parts())
            .map(|j| p.col_part_value(&self.division.col_part(j), self.division.row_bounds()))
            .collect()
    }

    /// Maximum mixed value over all row and column parts.
    pub fn mixed_value(&self) -> usize {
        self.row_mixed_values()
            .into_iter()
            .chain(self.col_mixed_values())
            .max()
            .unwrap_or(0)
    }

    /// Average mixed value of the column parts.
    pub fn average_col_mixed_value(&self) -> f64 {
        let v = self.col_mixed_values();
        v.iter().sum::<usize>() as f64 / v.len().max(1) as f64
    }

    pub fn part_size(&self) -> usize {
        let d = &self.division;
        (0..d.row_parts())
            .map(|i| d.row_part(i).len())
            .chain((0..d.col_parts()).map(|j| d.col_part(j).len()))
            .max()
            .unwrap_or(0)
    }

    pub fn red_number(&self) -> usize {
        red_number(&self.matrix)
    }

    fn fill(&mut self, zones: impl IntoIterator<Item = Rect>) {
        let probe = Probe::new(&self.matrix);
        let to_fill: Vec<Rect> = zones
            .into_iter()
            .filter(|z| probe.filled(&z.rows, &z.cols))
            .collect();
        for z in to_fill {
            for r in z.rows.clone() {
                for c in z.cols.clone() {
                    self.matrix.set(r, c, Entry::Red);
                }
            }
        }
    }

    /// Fuses column parts `j` and `j + 1`, filling the merged zones that hold
    /// an `r` or a 0,1-corner.
    pub fn fuse_columns(&self, j: usize) -> Result<NeatDivision> {
        let division = self.division.fuse_cols(j)?;
        let mut out = NeatDivision {
            matrix: self.matrix.clone(),
            division,
        };
        let cols = out.division.col_part(j);
        let zones: Vec<Rect> = (0..out.division.row_parts())
            .map(|i| Rect::new(out.division.row_part(i), cols.clone()))
            .collect();
        out.fill(zones);
        Ok(out)
    }

    pub fn fuse_rows(&self, i: usize) -> Result<NeatDivision> {
        let division = self.division.fuse_rows(i)?;
        let mut out = NeatDivision {
            matrix: self.matrix.clone(),
            division,
        };
        let rows = out.division.row_part(i);
        let zones: Vec<Rect> = (0..out.division.col_parts())
            .map(|j| Rect::new(rows.clone(), out.division.col_part(j)))
            .collect();
        out.fill(zones);
        Ok(out)
    }

    /// Fuses column parts `i`, `i + 1` and the corresponding row parts.
    pub fn symmetric_fusion(&self, i: usize) -> Result<NeatDivision> {
        if !self.division.is_symmetric() {
            return Err(Error::InvalidDivision("division is not symmetric".into()));
        }
        self.fuse_columns(i)?.fuse_rows(i)
    }

    /// Mixed value the merged part would have after `symmetric_fusion(i)`.
    fn fused_value(&self, probe: &Probe, i: usize) -> usize {
        let mut b = self.division.col_bounds().to_vec();
        b.remove(i + 1);
        let merged = b[i]..b[i + 1];
        let rb = {
            let mut rb = self.division.row_bounds().to_vec();
            rb.remove(i + 1);
            rb
        };
        probe
            .col_part_value(&merged, &rb)
            .max(probe.row_part_value(&(rb[i]..rb[i + 1]), &b))
    }

    /// Lexicographically first pair of identical columns in column part `j`.
    pub fn identical_pair(&self, j: usize) -> Option<(usize, usize)> {
        let mut seen: HashMap<Vec<Entry>, usize> = HashMap::new();
        let mut best: Option<(usize, usize)> = None;
        for c in self.division.col_part(j) {
            let col = self.matrix.column(c);
            match seen.get(&col) {
                Some(&a) => {
                    if best.is_none_or(|(x, _)| a < x) {
                        best = Some((a, c));
                    }
                }
                None => {
                    seen.insert(col, c);
                }
            }
        }
        best
    }

    /// Number of pairwise distinct columns in column part `j`.
    pub fn distinct_columns(&self, j: usize) -> usize {
        let mut cols: Vec<Vec<Entry>> = self
            .division
            .col_part(j)
            .map(|c| self.matrix.column(c))
            .collect();
        cols.sort();
        cols.dedup();
        cols.len()
    }

    /// Removes column `col` and row `row`. The column must equal another
    /// column of its part and the row another row of its part.
    pub fn delete_duplicate(&self, col: usize, row: usize) -> Result<NeatDivision> {
        if col >= self.matrix.cols() || row >= self.matrix.rows() {
            return Err(Error::InvalidParameter(format!(
                "index ({row}, {col}) out of range"
            )));
        }
        let j = self.division.part_of_col(col);
        let twin = self
            .division
            .col_part(j)
            .find(|&c| c != col && self.matrix.columns_equal(c, col))
            .ok_or(Error::NotIdentical(col, col))?;
        let i = self.division.part_of_row(row);
        if !self
            .division
            .row_part(i)
            .any(|r| r != row && self.matrix.row(r) == self.matrix.row(row))
        {
            return Err(Error::NotIdentical(row, twin));
        }
        Ok(NeatDivision {
            matrix: self.matrix.without(row, col),
            division: self.division.without(row, col),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub neat: bool,
    pub symmetric_matrix: bool,
    pub symmetric_division: bool,
    pub mixed_value: usize,
    pub mixed_value_ok: bool,
    pub part_size: usize,
    pub part_size_ok: bool,
    /// `None` when the matrix exceeds the minor-search cap.
    pub mixed_free: Option<bool>,
    pub red_number: usize,
    pub red_bound: usize,
    pub red_ok: bool,
}

impl MembershipReport {
    pub fn passes(&self) -> bool {
        self.neat
            && self.symmetric_matrix
            && self.symmetric_division
            && self.mixed_value_ok
            && self.part_size_ok
            && self.mixed_free != Some(false)
    }
}

pub fn check_membership(
    nd: &NeatDivision,
    p: &CoarsenParams,
    search: &MinorSearch,
) -> MembershipReport {
    let mixed_value = nd.mixed_value();
    let part_size = nd.part_size();
    let red = nd.red_number();
    let mixed_free = if p.d == 0 {
        Some(false)
    } else {
        search
            .find_coarsening(nd.matrix(), p.d, MinorKind::NeatMixed, nd.division())
            .ok()
            .map(|found| found.is_none())
    };
    MembershipReport {
        neat: nd.check_neat().is_ok(),
        symmetric_matrix: nd.matrix().is_symmetric(),
        symmetric_division: nd.division().is_symmetric(),
        mixed_value,
        mixed_value_ok: mixed_value <= p.mv_cap,
        part_size,
        part_size_ok: part_size <= p.ps_cap,
        mixed_free,
        red_number: red,
        red_bound: p.red_bound(),
        red_ok: red <= p.red_bound(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargePart {
    pub part: usize,
    pub size: usize,
    pub mixed_value: usize,
    pub distinct_columns: usize,
}

impl LargePart {
    /// At most `2^(mv+1)` distinct columns fit in a part of mixed value `mv`.
    pub fn within_bound(&self) -> bool {
        self.mixed_value >= 63 || self.distinct_columns <= 1usize << (self.mixed_value + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoarsenOutcome {
    pub nd: NeatDivision,
    /// `(kept, removed)` column indices, one pair per part holding identical
    /// columns.
    pub pairs: Vec<(usize, usize)>,
    pub fusions: usize,
    pub stalled: bool,
    pub large_parts: Vec<LargePart>,
}

/// Fuses consecutive small parts until enough parts hold a pair of identical
/// columns, then returns one such pair per part.
///
/// A fusion is admissible when neither part is large or already holds an
/// identical pair, the merged part fits `ps_cap` and its mixed value stays
/// within `mv_cap`; the leftmost admissible fusion is performed. When no
/// fusion is admissible before the quota is met the outcome is marked stalled
/// and carries the pairs found so far.
pub fn greedy_coarsen(nd: &NeatDivision, p: &CoarsenParams) -> Result<CoarsenOutcome> {
    p.validate()?;
    if !nd.division().is_symmetric() {
        return Err(Error::InvalidDivision("division is not symmetric".into()));
    }
    let quota = p.quota_for(nd.dim());
    let mut cur = nd.clone();
    let mut fusions = 0;
    let mut stalled = false;
    loop {
        let parts = cur.division().col_parts();
        let holding: Vec<bool> = (0..parts)
            .map(|j| cur.identical_pair(j).is_some())
            .collect();
        if holding.iter().filter(|&&h| h).count() >= quota || parts == 1 {
            break;
        }
        let frozen = |j: usize| holding[j] || cur.division().col_part(j).len() >= p.large_threshold;
        let probe = Probe::new(cur.matrix());
        let choice = (0..parts - 1).find(|&j| {
            !frozen(j)
                && !frozen(j + 1)
                && cur.division().col_part(j).len() + cur.division().col_part(j + 1).len()
                    <= p.ps_cap
                && cur.fused_value(&probe, j) <= p.mv_cap
        });
        match choice {
            Some(j) => {
                cur = cur.symmetric_fusion(j)?;
                fusions += 1;
            }
            None => {
                stalled = true;
                break;
            }
        }
    }
    let col_values = cur.col_mixed_values();
    let mut pairs = Vec::new();
    let mut large_parts = Vec::new();
    for (j, &mv) in col_values.iter().enumerate() {
        if let Some(pair) = cur.identical_pair(j) {
            pairs.push(pair);
        }
        let size = cur.division().col_part(j).len();
        if size >= p.large_threshold {
            large_parts.push(LargePart {
                part: j,
                size,
                mixed_value: mv,
                distinct_columns: cur.distinct_columns(j),
            });
        }
    }
    if pairs.is_empty() && !stalled {
        stalled = true;
    }
    Ok(CoarsenOutcome {
        nd: cur,
        pairs,
        fusions,
        stalled,
        large_parts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub dimension: usize,
    pub pairs: usize,
    pub fusions: usize,
    pub mixed_value: usize,
    pub red_number: usize,
    pub stalled: bool,
    /// Large parts met during the round.
    pub large_parts: Vec<LargePart>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub sequence: ParallelSequence,
    pub rounds: Vec<Round>,
    /// Single contractions appended after coarsening ran out of pairs.
    pub tail_steps: usize,
    /// Width reported by verifying the sequence on the graph of the matrix.
    pub width: usize,
    pub valid: bool,
}

impl Extraction {
    pub fn stalled(&self) -> bool {
        self.rounds.iter().any(|r| r.stalled)
    }

    /// Round-by-round CSV: dimension, pairs, fusions, mixed value, red number.
    pub fn trace_csv(&self) -> String {
        let mut out =
            String::from("round,dimension,pairs,fusions,mixed_value,red_number,stalled\n");
        for (i, r) in self.rounds.iter().enumerate() {
            out.push_str(&format!(
                "{i},{},{},{},{},{},{}\n",
                r.dimension, r.pairs, r.fusions, r.mixed_value, r.red_number, r.stalled
            ));
        }
        out
    }
}

/// Contracts, one pair at a time, the pair whose contraction yields the
/// smallest red degree among touched vertices (first such pair in
/// lexicographic order).
fn greedy_tail(g: &mut Trigraph) -> Result<Vec<ParallelStep>> {
    let mut steps = Vec::new();
    while g.len() > 1 {
        let live: Vec<Vertex> = g.vertices().collect();
        let mut best: Option<(usize, Vertex, Vertex)> = None;
        for (i, &u) in live.iter().enumerate() {
            for &v in &live[i + 1..] {
                let w = g.contraction_local_red_degree(u, v)?;
                if best.is_none_or(|b| w < b.0) {
                    best = Some((w, u, v));
                }
            }
        }
        let (_, u, v) = best.expect("at least two vertices");
        g.contract_in_place(u, v)?;
        steps.push(ParallelStep::new([(u, v)])?);
    }
    Ok(steps)
}

/// Parallel contraction sequence of the graph whose adjacency matrix is `m`
/// (vertex `i` is row and column `i`).
///
/// Each round coarsens the current neatly divided matrix, contracts all pairs
/// of identical columns found as one parallel step and deletes the removed
/// columns with their rows. When a round finds no pair the remaining vertices
/// are contracted greedily one pair at a time.
pub fn extract_parallel_sequence(m: &TriMatrix, p: &CoarsenParams) -> Result<Extraction> {
    p.validate()?;
    let g = graph_of_matrix(m)?;
    let mut work = g.clone();
    let mut ids: Vec<Vertex> = (0..m.rows()).collect();
    let mut nd = NeatDivision::finest(m.clone());
    let mut steps = Vec::new();
    let mut rounds = Vec::new();
    let mut tail_steps = 0;
    while nd.dim() > 1 {
        let out = greedy_coarsen(&nd, p)?;
        rounds.push(Round {
            dimension: nd.dim(),
            pairs: out.pairs.len(),
            fusions: out.fusions,
            mixed_value: out.nd.mixed_value(),
            red_number: out.nd.red_number(),
            stalled: out.stalled,
            large_parts: out.large_parts.clone(),
        });
        if out.pairs.is_empty() {
            let tail = greedy_tail(&mut work)?;
            tail_steps = tail.len();
            steps.extend(tail);
            break;
        }
        let step = ParallelStep::new(out.pairs.iter().map(|&(a, b)| (ids[a], ids[b])))?;
        for &(u, v) in step.pairs() {
            work.contract_in_place(u, v)?;
        }
        steps.push(step);
        let mut removed: Vec<(usize, usize)> = out.pairs.clone();
        removed.sort_by_key(|x| std::cmp::Reverse(x.1));
        nd = out.nd;
        for (a, b) in removed {
            ids[a] = ids[a].min(ids[b]);
            nd = nd.delete_duplicate(b, b)?;
            ids.remove(b);
        }
    }
    let sequence = ParallelSequence::new(steps);
    let report = verify_parallel(&g, &sequence);
    Ok(Extraction {
        sequence,
        rounds,
        tail_steps,
        width: report.width,
        valid: report.valid,
    })
}

/// Extraction for a graph given with a vertex order. Vertex ids in the
/// returned sequence are those of `g`.
pub fn extract_for_graph(g: &Trigraph, order: &[Vertex], p: &CoarsenParams) -> Result<Extraction> {
    let m = crate::matrix::adjacency_matrix(g, order)?;
    let mut ex = extract_parallel_sequence(&m, p)?;
    // matrix index i stands for order[i]; representatives must stay minimal
    // in g's ids, so replay the pairs through a map from matrix ids
    let mut rep: Vec<Vertex> = order.to_vec();
    let mut steps = Vec::new();
    for step in &ex.sequence.steps {
        let pairs: Vec<(Vertex, Vertex)> = step
            .pairs()
            .iter()
            .map(|&(a, b)| (rep[a], rep[b]))
            .collect();
        for &(a, b) in step.pairs() {
            let r = rep[a].min(rep[b]);
            rep[a] = r;
        }
        steps.push(ParallelStep::new(pairs)?);
    }
    ex.sequence = ParallelSequence::new(steps);
    let report = verify_parallel(g, &ex.sequence);
    ex.width = report.width;
    ex.valid = report.valid;
    Ok(ex)
}

/// A bounded-depth tree of contractions: each child contracts one pair of
/// identical columns found by [`greedy_coarsen`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub dimension: usize,
    pub children: Vec<((Vertex, Vertex), TreeNode)>,
}

pub const MAX_TREE_DEPTH: usize = 3;

pub fn contraction_tree(m: &TriMatrix, p: &CoarsenParams, depth: usize) -> Result<TreeNode> {
    if depth > MAX_TREE_DEPTH {
        return Err(Error::InvalidParameter(format!(
            "tree depth {depth} exceeds {MAX_TREE_DEPTH}"
        )));
    }
    fn build(
        nd: &NeatDivision,
        ids: &[Vertex],
        p: &CoarsenParams,
        depth: usize,
    ) -> Result<TreeNode> {
        let mut node = TreeNode {
            dimension: nd.dim(),
            children: Vec::new(),
        };
        if depth == 0 || nd.dim() <= 1 {
            return Ok(node);
        }
        let out = greedy_coarsen(nd, p)?;
        for &(a, b) in &out.pairs {
            let child = out.nd.delete_duplicate(b, b)?;
            let mut child_ids = ids.to_vec();
            child_ids[a] = ids[a].min(ids[b]);
            child_ids.remove(b);
            node.children
                .push(((ids[a], ids[b]), build(&child, &child_ids, p, depth - 1)?));
        }
        Ok(node)
    }
    let ids: Vec<Vertex> = (0..m.rows()).collect();
    build(&NeatDivision::finest(m.clone()), &ids, p, depth)
}
