//! Generators for the explicit graph families and their witness sequences.

pub mod basic;
pub mod halfgraph;
pub mod layout;
pub mod lift;
pub mod permutation;
pub mod product;
pub mod subdivision;

pub use basic::{complete, cycle, gnp, path, rook, star};
pub use halfgraph::halfgraph_sandwich;
pub use layout::{has_biclique, layout_check, layout_grid_free, random_layout, Layout, LayoutKind};
pub use lift::{iterated_lift, lift_witness, two_lift, LiftChain, Signing};
pub use permutation::{is_parallel_t_merge, merge_decompose, Permutation};
pub use product::{host_replay, product_bound, product_sequence, strong_product};
pub use subdivision::{subdivide, subdivision_order, SubdivisionOrder};
