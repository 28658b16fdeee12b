//! Shifted tableaux, Schur `Q`-functions in finitely many variables, their
//! pfaffian formulas, and scanners for `Q`-positivity of differences.

mod expand;
mod jt;
mod scan;
mod shapes;
mod tableaux;

pub use expand::{expand_in_q_basis, monomial_expand, MonomialExpansion, QExpansion};
pub use jt::{padded_parts, q_jt_matrix, q_jt_matrix_with, HBlock};
pub use scan::{
    cell_transfer_difference, generalized_shapes, generator_monomial_check, scan_cell_transfer, scan_con1, scan_sort, sort_difference, summarize,
    verify_min_difference_q, write_jsonl, GeneratorRecord, MinDifference, ScanRecord, ScanSummary, Verdict,
};
pub use shapes::{
    is_strict, join_meet, max_strict_length, parse_partition, parse_shape, render_partition, skew_shapes_up_to,
    sort_split, strict_partitions, strict_partitions_up_to, SkewShiftedShape,
};
pub use tableaux::{q_pair, q_row, schur_q, SHAPE_BOUND};
