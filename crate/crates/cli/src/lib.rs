//! Command-line front end and benchmark harness for the `labs` solver.

pub mod bench;
pub mod cli;
pub mod fit;

pub use bench::{read_bench_csv, run_bench, write_bench_csv, BenchRow};
pub use fit::{fit_by_toggles, fit_scaling, FitError, ScalingFit};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
