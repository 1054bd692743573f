//! 2-lifts and iterated lifts of `K4` with their contraction witness.
//!
//! In a lift of a graph on `0..n`, vertex `v` has copies `v` and `v + n`, so
//! contracting every copy pair gives back the base graph on the same ids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::basic::complete;
use crate::error::{Error, Result};
use crate::sequence::{ParallelSequence, ParallelStep};
use crate::trigraph::Trigraph;

/// One flag per edge of the base graph, in the order of
/// [`Trigraph::edges`]: `true` for crossing, `false` for parallel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signing {
    pub crossing: Vec<bool>,
}

impl Signing {
    pub fn all_parallel(g: &Trigraph) -> Self {
        Signing {
            crossing: vec![false; g.edge_count()],
        }
    }

    pub fn all_crossing(g: &Trigraph) -> Self {
        Signing {
            crossing: vec![true; g.edge_count()],
        }
    }

    pub fn random(g: &Trigraph, rng: &mut impl Rng) -> Self {
        Signing {
            crossing: (0..g.edge_count()).map(|_| rng.gen()).collect(),
        }
    }
}

/// Lift of `g` (ids `0..n`, all live) under `s`. Edge colours are kept.
pub fn two_lift(g: &Trigraph, s: &Signing) -> Result<Trigraph> {
    let n = g.capacity();
    if g.len() != n {
        return Err(Error::InvalidParameter("lift needs vertex ids 0..n".into()));
    }
    if s.crossing.len() != g.edge_count() {
        return Err(Error::InvalidParameter(format!(
            "signing has {} flags for {} edges",
            s.crossing.len(),
            g.edge_count()
        )));
    }
    let mut lifted = Trigraph::new(2 * n);
    for ((u, v, c), &cross) in g.edges().zip(&s.crossing) {
        let (a, b) = if cross { (v + n, v) } else { (v, v + n) };
        lifted.add_edge(u, a, c)?;
        lifted.add_edge(u + n, b, c)?;
    }
    Ok(lifted)
}

#[derive(Clone, Debug)]
pub struct LiftChain {
    /// `graphs[0]` is `K4`, each next graph a lift of the previous one.
    pub graphs: Vec<Trigraph>,
    pub witness: ParallelSequence,
}

impl LiftChain {
    pub fn last(&self) -> &Trigraph {
        self.graphs.last().expect("chain starts at K4")
    }
}

/// Parallel sequence for a graph obtained by `levels` lifts of a graph on
/// `0..base`: contract copy pairs level by level, then finish the base
/// one pair at a time in lexicographic order.
pub fn lift_witness(base: usize, levels: usize) -> ParallelSequence {
    let mut steps = Vec::new();
    for level in (0..levels).rev() {
        let half = base << level;
        let pairs = (0..half).map(|v| (v, v + half));
        steps.push(ParallelStep::new(pairs).expect("disjoint pairs"));
    }
    for v in 1..base {
        steps.push(ParallelStep::new([(0, v)]).expect("one pair"));
    }
    ParallelSequence::new(steps)
}

/// `levels` random lifts of `K4`, seeded.
pub fn iterated_lift(levels: usize, seed: u64) -> LiftChain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graphs = vec![complete(4)];
    for _ in 0..levels {
        let g = graphs.last().unwrap();
        let s = Signing::random(g, &mut rng);
        let next = two_lift(g, &s).expect("signing matches");
        graphs.push(next);
    }
    LiftChain {
        graphs,
        witness: lift_witness(4, levels),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::verify_parallel;

    #[test]
    fn parallel_signing_gives_two_copies() {
        let k4 = complete(4);
        let g = two_lift(&k4, &Signing::all_parallel(&k4)).unwrap();
        assert_eq!(g.induced(&[0, 1, 2, 3]).unwrap(), k4);
        assert_eq!(g.induced(&[4, 5, 6, 7]).unwrap(), k4);
        assert_eq!(g.edge_count(), 12);
        let bip = two_lift(&k4, &Signing::all_crossing(&k4)).unwrap();
        for (u, v, _) in bip.edges() {
            assert!((u < 4) != (v < 4));
        }
    }

    #[test]
    fn lifts_stay_cubic_and_witness_is_valid() {
        let chain = iterated_lift(3, 11);
        let g = chain.last();
        assert_eq!(g.len(), 32);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        let r = verify_parallel(&g.all_red(), &chain.witness);
        assert!(r.valid, "{r:?}");
        assert!(r.width <= 6);
    }

    #[test]
    fn signing_length_is_checked() {
        let k4 = complete(4);
        assert!(two_lift(
            &k4,
            &Signing {
                crossing: vec![true]
            }
        )
        .is_err());
    }
}
