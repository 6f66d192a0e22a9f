//! Partition enumeration, batch verification, reports and the CLI.

pub mod batch;
pub mod cli;
pub mod partitions;
pub mod report;

pub use batch::{run_batch, run_unit, BatchConfig, BatchOutcome, BatchRow, BatchSummary};
pub use partitions::{indecomposable_blocks, valid_partitions};
pub use report::{write_report, ReportFormat};
