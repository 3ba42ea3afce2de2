//! Off-diagonal ranking metrics, multi-seed aggregation and
//! hyperparameter selection.

mod metrics;
mod record;
mod select;

pub use metrics::{auprc, auprc_ranked, auroc, auroc_ranked, off_diagonal_pairs};
pub use record::{
    read_aggregate_csv, read_results_csv, write_aggregate_csv, write_results_csv, AggregateRow, EvalRecord,
    AGGREGATE_HEADER, RESULTS_HEADER,
};
pub use select::{aggregate, select_hyperparams, SelectionMode};
