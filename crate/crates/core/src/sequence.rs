//! Contraction sequences, parallel contraction sequences and their
//! verification.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trigraph::{Trigraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContractionStep {
    pub u: Vertex,
    pub v: Vertex,
}

impl ContractionStep {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        ContractionStep { u, v }
    }

    /// Id of the vertex produced by the step.
    pub fn merged(&self) -> Vertex {
        self.u.min(self.v)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionSequence {
    pub steps: Vec<ContractionStep>,
}

impl ContractionSequence {
    pub fn new(steps: Vec<ContractionStep>) -> Self {
        ContractionSequence { steps }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        ContractionSequence {
            steps: pairs
                .into_iter()
                .map(|(u, v)| ContractionStep::new(u, v))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// A set of disjoint pairs contracted simultaneously. Pairs are stored as
/// `(min, max)` in increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParallelStep {
    pairs: Vec<(Vertex, Vertex)>,
}

impl ParallelStep {
    pub fn new(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut pairs: Vec<(Vertex, Vertex)> = pairs
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        let mut ends: Vec<Vertex> = Vec::with_capacity(pairs.len() * 2);
        for &(u, v) in &pairs {
            if u == v {
                return Err(Error::SameVertex(u));
            }
            ends.push(u);
            ends.push(v);
        }
        ends.sort_unstable();
        if let Some(w) = ends.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::OverlappingPairs(w[0]));
        }
        Ok(ParallelStep { pairs })
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelSequence {
    pub steps: Vec<ParallelStep>,
}

impl ParallelSequence {
    pub fn new(steps: Vec<ParallelStep>) -> Self {
        ParallelSequence { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Total number of pairs over all steps.
    pub fn contractions(&self) -> usize {
        self.steps.iter().map(|s| s.len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    /// Maximum red degree over every trigraph reached, the input included.
    /// For an invalid sequence this covers the prefix that could be applied.
    pub width: usize,
    pub failed_step: Option<usize>,
    pub reason: Option<String>,
}

/// Highest red degree among `w` and its neighbours.
fn local_width(g: &Trigraph, w: Vertex) -> usize {
    g.neighbors(w)
        .map(|(x, _)| g.red_degree(x))
        .chain([g.red_degree(w)])
        .max()
        .unwrap_or(0)
}

/// Applies `seq` and returns the final trigraph and the width reached. Does
/// not require the sequence to be complete.
pub fn run_sequence(g: &Trigraph, seq: &ContractionSequence) -> Result<(Trigraph, usize)> {
    let mut h = g.clone();
    let mut width = h.max_red_degree();
    for (index, s) in seq.steps.iter().enumerate() {
        let w = h
            .contract_in_place(s.u, s.v)
            .map_err(|e| Error::InapplicableStep {
                index,
                reason: e.to_string(),
            })?;
        width = width.max(local_width(&h, w));
    }
    Ok((h, width))
}

pub fn verify_sequence(g: &Trigraph, seq: &ContractionSequence) -> VerifyReport {
    let mut h = g.clone();
    let mut width = h.max_red_degree();
    for (index, s) in seq.steps.iter().enumerate() {
        match h.contract_in_place(s.u, s.v) {
            Ok(w) => width = width.max(local_width(&h, w)),
            Err(e) => {
                return VerifyReport {
                    valid: false,
                    width,
                    failed_step: Some(index),
                    reason: Some(e.to_string()),
                }
            }
        }
    }
    let done = h.len() == 1;
    VerifyReport {
        valid: done,
        width,
        failed_step: None,
        reason: (!done).then(|| Error::Incomplete { remaining: h.len() }.to_string()),
    }
}

pub fn apply_parallel(g: &Trigraph, step: &ParallelStep) -> Result<Trigraph> {
    let mut h = g.clone();
    apply_parallel_in_place(&mut h, step)?;
    Ok(h)
}

fn apply_parallel_in_place(h: &mut Trigraph, step: &ParallelStep) -> Result<()> {
    for &(u, v) in step.pairs() {
        if !h.contains(u) {
            return Err(Error::UnknownVertex(u));
        }
        if !h.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    for &(u, v) in step.pairs() {
        h.contract_in_place(u, v)?;
    }
    Ok(())
}

/// Width of a parallel sequence is the maximum red degree over the input and
/// the trigraph after each step.
pub fn verify_parallel(g: &Trigraph, pseq: &ParallelSequence) -> VerifyReport {
    let mut h = g.clone();
    let mut width = h.max_red_degree();
    for (index, step) in pseq.steps.iter().enumerate() {
        if let Err(e) = apply_parallel_in_place(&mut h, step) {
            return VerifyReport {
                valid: false,
                width,
                failed_step: Some(index),
                reason: Some(e.to_string()),
            };
        }
        width = width.max(h.max_red_degree());
    }
    let done = h.len() == 1;
    VerifyReport {
        valid: done,
        width,
        failed_step: None,
        reason: (!done).then(|| Error::Incomplete { remaining: h.len() }.to_string()),
    }
}

/// Red degree after each parallel step, starting with the input.
pub fn parallel_trace(g: &Trigraph, pseq: &ParallelSequence) -> Result<Vec<usize>> {
    let mut h = g.clone();
    let mut trace = vec![h.max_red_degree()];
    for (index, step) in pseq.steps.iter().enumerate() {
        apply_parallel_in_place(&mut h, step).map_err(|e| Error::InapplicableStep {
            index,
            reason: e.to_string(),
        })?;
        trace.push(h.max_red_degree());
    }
    Ok(trace)
}

/// Unrolls a valid parallel sequence into single contractions, contracting
/// the pairs of each step in stored order. A parallel sequence of width `d`
/// yields a sequence of width at most `2d + 1`.
pub fn sequentialize(g: &Trigraph, pseq: &ParallelSequence) -> Result<ContractionSequence> {
    let report = verify_parallel(g, pseq);
    if !report.valid {
        return Err(Error::InapplicableStep {
            index: report.failed_step.unwrap_or(pseq.len()),
            reason: report.reason.unwrap_or_default(),
        });
    }
    Ok(ContractionSequence::from_pairs(
        pseq.steps.iter().flat_map(|s| s.pairs().iter().copied()),
    ))
}

/// Groups consecutive steps of `seq` into parallel steps. A step joins the
/// current group when it is disjoint from the group's vertices (the merged
/// ids included) and the trigraph after the group keeps red degree at most
/// `bound`.
pub fn batch_sequence(
    g: &Trigraph,
    seq: &ContractionSequence,
    bound: usize,
) -> Result<ParallelSequence> {
    let mut steps = Vec::new();
    let mut before = g.clone();
    let mut current: Vec<(Vertex, Vertex)> = Vec::new();
    let mut used: Vec<Vertex> = Vec::new();
    let mut after = g.clone();
    for (index, s) in seq.steps.iter().enumerate() {
        let disjoint = !used.contains(&s.u) && !used.contains(&s.v);
        let mut tentative = after.clone();
        tentative
            .contract_in_place(s.u, s.v)
            .map_err(|e| Error::InapplicableStep {
                index,
                reason: e.to_string(),
            })?;
        if disjoint && !current.is_empty() && tentative.max_red_degree() <= bound {
            current.push((s.u, s.v));
            used.extend([s.u, s.v]);
            after = tentative;
            continue;
        }
        if !current.is_empty() {
            let step = ParallelStep::new(current.drain(..))?;
            apply_parallel_in_place(&mut before, &step)?;
            steps.push(step);
        }
        debug_assert_eq!(before, after);
        after = before.clone();
        after.contract_in_place(s.u, s.v)?;
        current.push((s.u, s.v));
        used.clear();
        used.extend([s.u, s.v]);
    }
    if !current.is_empty() {
        steps.push(ParallelStep::new(current)?);
    }
    Ok(ParallelSequence::new(steps))
}

/// Greedy parallel sequence keeping red degree at most `bound`.
///
/// Each step scans candidate pairs (lexicographically, or shuffled when a
/// seed is given) and accepts a pair when it is disjoint from the pairs
/// already taken and contracting it keeps every touched vertex within
/// `bound`. Fails when a step cannot take a single pair.
pub fn greedy_parallel_sequence(
    g: &Trigraph,
    bound: usize,
    seed: Option<u64>,
) -> Result<ParallelSequence> {
    let start = g.max_red_degree();
    if start > bound {
        return Err(Error::WidthExceeded {
            width: start,
            bound,
        });
    }
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut h = g.clone();
    let mut steps = Vec::new();
    while h.len() > 1 {
        let live: Vec<Vertex> = h.vertices().collect();
        let mut candidates: Vec<(Vertex, Vertex)> = live
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| live[i + 1..].iter().map(move |&v| (u, v)))
            .collect();
        if let Some(rng) = rng.as_mut() {
            candidates.shuffle(rng);
        }
        let mut used = vec![false; h.capacity()];
        let mut taken = Vec::new();
        for (u, v) in candidates {
            if used[u] || used[v] {
                continue;
            }
            if h.contraction_local_red_degree(u, v)? <= bound {
                h.contract_in_place(u, v)?;
                used[u] = true;
                used[v] = true;
                taken.push((u, v));
            }
        }
        if taken.is_empty() {
            return Err(Error::NoContraction {
                stage: steps.len(),
                remaining: h.len(),
                bound,
            });
        }
        steps.push(ParallelStep::new(taken)?);
    }
    Ok(ParallelSequence::new(steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Trigraph {
        Trigraph::from_edges(n, (1..n).map(|i| (i - 1, i)), []).unwrap()
    }

    #[test]
    fn p4_endpoint_sequence_has_width_one() {
        let seq = ContractionSequence::from_pairs([(0, 1), (0, 2), (0, 3)]);
        let r = verify_sequence(&path(4), &seq);
        assert!(r.valid);
        assert_eq!(r.width, 1);
    }

    #[test]
    fn empty_sequence_on_k2_is_incomplete() {
        let k2 = Trigraph::from_edges(2, [(0, 1)], []).unwrap();
        let r = verify_sequence(&k2, &ContractionSequence::default());
        assert!(!r.valid);
        assert_eq!(r.failed_step, None);
        let r = verify_sequence(&Trigraph::new(1), &ContractionSequence::default());
        assert!(r.valid);
        assert_eq!(r.width, 0);
    }

    #[test]
    fn reports_first_bad_step() {
        let seq = ContractionSequence::from_pairs([(0, 1), (1, 2)]);
        let r = verify_sequence(&path(3), &seq);
        assert!(!r.valid);
        assert_eq!(r.failed_step, Some(1));
    }

    #[test]
    fn overlapping_pairs_are_rejected() {
        assert!(matches!(
            ParallelStep::new([(0, 1), (1, 2)]),
            Err(Error::OverlappingPairs(1))
        ));
    }

    #[test]
    fn greedy_on_path_with_slack() {
        let g = path(16);
        let p = greedy_parallel_sequence(&g, 2, None).unwrap();
        let r = verify_parallel(&g, &p);
        assert!(r.valid);
        assert!(r.width <= 2);
        let s = sequentialize(&g, &p).unwrap();
        assert!(verify_sequence(&g, &s).width <= 5);
    }

    #[test]
    fn batching_keeps_the_result() {
        let g = path(8);
        let seq = ContractionSequence::from_pairs((1..8).rev().map(|i| (i - 1, i)));
        let p = batch_sequence(&g, &seq, 1).unwrap();
        let r = verify_parallel(&g, &p);
        assert!(r.valid && r.width <= 1);
        assert_eq!(p.contractions(), 7);
    }
}
