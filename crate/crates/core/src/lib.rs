//! Trigraph contraction sequences for bounded twin-width graphs, with the
//! matrix machinery, labeling scheme and compression codec built on them.

pub mod codec;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod formats;
pub mod labeling;
pub mod matrix;
pub mod neat;
pub mod sequence;
pub mod trigraph;

pub use error::{Error, Result};
pub use sequence::{
    apply_parallel, greedy_parallel_sequence, sequentialize, verify_parallel, verify_sequence,
    ContractionSequence, ContractionStep, ParallelSequence, ParallelStep, VerifyReport,
};
pub use trigraph::{Color, Relation, SplitRecord, Trigraph, Vertex};
