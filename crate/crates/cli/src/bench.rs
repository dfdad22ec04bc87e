//! Node-count benchmarks across lengths and feature toggles.

use std::io::{Read, Write};

use labs::search::{solve, Mode, SearchConfig, Toggles};
use serde::{Deserialize, Serialize};

pub const BENCH_HEADER: [&str; 4] = ["n", "toggles", "nodes", "seconds"];
pub const CONVERGENCE_HEADER: [&str; 4] = ["nodes", "seconds", "energy", "merit_factor"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub toggles: String,
    pub nodes: u64,
    pub seconds: f64,
}

/// Runs every toggle set at every length (lengths outer), handing each row
/// to `emit` as soon as it is available.
pub fn run_bench<F>(
    lengths: impl IntoIterator<Item = usize>,
    toggle_sets: &[Toggles],
    mode: Mode,
    mut emit: F,
) -> labs::Result<Vec<BenchRow>>
where
    F: FnMut(&BenchRow),
{
    let mut rows = Vec::new();
    for n in lengths {
        for &toggles in toggle_sets {
            let cfg = SearchConfig {
                mode,
                ..SearchConfig::new(n).with_toggles(toggles)
            };
            let r = solve(&cfg)?;
            let row = BenchRow {
                n,
                toggles: toggles.to_string(),
                nodes: r.nodes,
                seconds: r.elapsed.as_secs_f64(),
            };
            emit(&row);
            rows.push(row);
        }
    }
    Ok(rows)
}

/// A CSV writer that has already written the bench header.
pub fn bench_writer<W: Write>(out: W) -> csv::Result<csv::Writer<W>> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(BENCH_HEADER)?;
    w.flush()?;
    Ok(w)
}

pub fn write_bench_csv<W: Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut w = bench_writer(out)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_bench_csv<R: Read>(input: R) -> csv::Result<Vec<BenchRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}
