use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use labs::oracle::enumerate_optimal;
use labs::search::{solve_with, Mode, SearchConfig, SearchResult, Toggles};
use labs::sequence::{correlations, decode_rle, encode_rle, energy, merit_factor_of, Sequence, Spin};
use labs::templates::Template;

use crate::bench::{bench_writer, read_bench_csv, run_bench, CONVERGENCE_HEADER};
use crate::fit::fit_by_toggles;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
/// A node or time limit ended the search before optimality was proven.
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "labs", version, about = "Exact search for low autocorrelation binary sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a minimum-energy sequence of one length
    Solve(SolveArgs),
    /// Brute-force optimal energies for small lengths
    Oracle(OracleArgs),
    /// Print correlations, energy and merit factor of a sequence
    Eval(EvalArgs),
    /// Translate between run-length and +/- notation
    Convert(ConvertArgs),
    /// Node counts over a range of lengths and feature sets, as CSV
    Bench(BenchArgs),
    /// Fit an exponential growth base to bench CSV
    Fit(FitArgs),
}

#[derive(Debug, Args)]
pub struct FeatureFlags {
    /// Try +1 first everywhere instead of following the template
    #[arg(long)]
    pub no_template: bool,
    /// Disable lex-leader symmetry breaking
    #[arg(long)]
    pub no_symmetry: bool,
    /// Ignore cancellation pairs in the bound
    #[arg(long)]
    pub no_cancel: bool,
    /// Ignore reinforcement pairs in the bound
    #[arg(long)]
    pub no_reinforce: bool,
    /// Use the arbitrary-completion bound instead of the exact worst case
    #[arg(long)]
    pub baseline_bound: bool,
}

impl FeatureFlags {
    pub fn toggles(&self) -> Toggles {
        Toggles {
            template: !self.no_template,
            symmetry: !self.no_symmetry,
            cancellations: !self.no_cancel,
            reinforcements: !self.no_reinforce,
            exact_bound: !self.baseline_bound,
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// `<rle>:<+|->`, the run-length text and the sign of its first element.
#[derive(Debug, Clone)]
pub struct TemplateSpec {
    pub rle: String,
    pub leading: Spin,
}

fn parse_template_spec(s: &str) -> Result<TemplateSpec, String> {
    let (rle, sign) = s
        .rsplit_once(':')
        .ok_or_else(|| "expected <rle>:<+|->".to_string())?;
    let leading = match sign {
        "+" => Spin::Plus,
        "-" => Spin::Minus,
        other => return Err(format!("leading sign must be + or -, got {other:?}")),
    };
    decode_rle(rle, leading).map_err(|e| e.to_string())?;
    Ok(TemplateSpec {
        rle: rle.to_string(),
        leading,
    })
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_parser = positive)]
    pub n: usize,
    /// Restrict the search to skew-symmetric sequences (odd n)
    #[arg(long)]
    pub skew: bool,
    #[command(flatten)]
    pub features: FeatureFlags,
    #[arg(long)]
    pub node_limit: Option<u64>,
    /// Wall-clock limit in seconds
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Write every incumbent improvement to this CSV file
    #[arg(long)]
    pub convergence: Option<PathBuf>,
    /// Custom template as <rle>:<+|->; longer sequences are cut to their middle
    #[arg(long, value_parser = parse_template_spec, conflicts_with = "no_template")]
    pub template: Option<TemplateSpec>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// A single length
    #[arg(long, value_parser = positive, conflicts_with_all = ["min", "max"])]
    pub n: Option<usize>,
    #[arg(long, value_parser = positive, requires = "max")]
    pub min: Option<usize>,
    #[arg(long, value_parser = positive, requires = "min")]
    pub max: Option<usize>,
    /// Skew-symmetric sequences only (odd lengths)
    #[arg(long)]
    pub skew: bool,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Run-length text (leading +1) or explicit +/- text
    pub sequence: String,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Run-length text or explicit +/- text
    pub sequence: String,
    /// Sign of the first element when expanding run-length text
    #[arg(long, default_value = "+", value_parser = ["+", "-"])]
    pub leading: String,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_parser = positive)]
    pub min: usize,
    #[arg(long, value_parser = positive)]
    pub max: usize,
    /// Feature set to run: full, baseline, or e.g. template+symmetry+exact.
    /// Repeatable; defaults to full and baseline.
    #[arg(long = "toggles")]
    pub toggles: Vec<Toggles>,
    /// Skew-symmetric mode; only odd lengths in the range are run
    #[arg(long)]
    pub skew: bool,
    /// Write CSV here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Bench CSV file; stdin when absent
    pub input: Option<PathBuf>,
}

/// Runs one command and returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Eval(a) => cmd_eval(a, out),
        Command::Convert(a) => cmd_convert(a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Fit(a) => cmd_fit(a, out),
    }
}

/// Reported by [`run`] for flag combinations clap cannot check itself.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn format_merit(m: Option<f64>) -> String {
    m.map_or_else(|| "undefined".to_string(), |m| format!("{m:.4}"))
}

fn mode_of(skew: bool) -> Mode {
    if skew {
        Mode::Skew
    } else {
        Mode::General
    }
}

fn user_template(spec: &TemplateSpec, n: usize) -> Result<Template> {
    let seq = decode_rle(&spec.rle, spec.leading)?;
    Template::from_middle(&seq, n).map_err(|_| {
        usage(format!(
            "template of length {} cannot be cut to length {n} (needs at least {n} and the same parity)",
            seq.len()
        ))
    })
}

pub fn format_result(cfg: &SearchConfig, r: &SearchResult) -> String {
    format!(
        "n={} mode={} toggles={} energy={} merit_factor={} sequence={} nodes={} proven_optimal={} elapsed={:.3}",
        cfg.n,
        match cfg.mode {
            Mode::General => "general",
            Mode::Skew => "skew",
        },
        cfg.toggles,
        r.energy,
        format_merit(r.merit_factor),
        encode_rle(&r.best),
        r.nodes,
        r.proven_optimal,
        r.elapsed.as_secs_f64(),
    )
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write) -> Result<i32> {
    if a.skew && a.n % 2 == 0 {
        return Err(usage(format!("--skew needs an odd --n, got {}", a.n)));
    }
    let mut cfg = SearchConfig {
        mode: mode_of(a.skew),
        node_limit: a.node_limit,
        ..SearchConfig::new(a.n).with_toggles(a.features.toggles())
    };
    if let Some(secs) = a.time_limit {
        let limit = Duration::try_from_secs_f64(secs)
            .map_err(|_| usage(format!("invalid --time-limit {secs}")))?;
        cfg.time_limit = Some(limit);
    }
    if let Some(spec) = &a.template {
        cfg.template = Some(user_template(spec, a.n)?);
    }

    let mut writer = match &a.convergence {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = csv::Writer::from_writer(BufWriter::new(f));
            w.write_record(CONVERGENCE_HEADER)?;
            Some(w)
        }
        None => None,
    };
    let mut write_err = None;
    let n = cfg.n;
    let result = solve_with(&cfg, |rec| {
        if let Some(w) = writer.as_mut() {
            let merit = format_merit(merit_factor_of(n, rec.energy).ok());
            let row = [
                rec.nodes_at_improvement.to_string(),
                format!("{:.6}", rec.elapsed),
                rec.energy.to_string(),
                merit,
            ];
            if let Err(e) = w.write_record(&row).and_then(|_| w.flush().map_err(Into::into)) {
                write_err.get_or_insert(e);
            }
        }
    })?;
    if let Some(e) = write_err {
        return Err(e.into());
    }
    writeln!(out, "{}", format_result(&cfg, &result))?;
    Ok(if result.proven_optimal {
        EXIT_OK
    } else {
        EXIT_LIMIT
    })
}

fn cmd_oracle(a: OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let (lo, hi) = match (a.n, a.min, a.max) {
        (Some(n), _, _) => (n, n),
        (None, Some(lo), Some(hi)) if lo <= hi => (lo, hi),
        (None, Some(lo), Some(hi)) => return Err(usage(format!("--min {lo} exceeds --max {hi}"))),
        _ => return Err(usage("give --n or both --min and --max")),
    };
    let mode = mode_of(a.skew);
    writeln!(out, "n,energy,merit_factor,sequence,count")?;
    for n in lo..=hi {
        if mode == Mode::Skew && n % 2 == 0 {
            continue;
        }
        let r = enumerate_optimal(n, mode)?;
        writeln!(
            out,
            "{},{},{},{},{}",
            n,
            r.energy,
            format_merit(merit_factor_of(n, r.energy).ok()),
            encode_rle(&r.sequence),
            r.count
        )?;
    }
    Ok(EXIT_OK)
}

/// Explicit `+`/`-` text if it only uses those characters, otherwise
/// run-length text with the given leading sign.
fn parse_any(text: &str, leading: Spin) -> labs::Result<(Sequence, bool)> {
    let explicit = !text.is_empty() && text.chars().all(|c| matches!(c, '+' | '-' | '\u{2212}'));
    if explicit {
        Ok((text.parse()?, true))
    } else {
        Ok((decode_rle(text, leading)?, false))
    }
}

fn cmd_eval(a: EvalArgs, out: &mut dyn Write) -> Result<i32> {
    let (s, _) = parse_any(a.sequence.trim(), Spin::Plus)?;
    let c = correlations(&s);
    let list: Vec<String> = c.values().iter().map(i64::to_string).collect();
    let e = energy(&s);
    writeln!(
        out,
        "n={} energy={} merit_factor={} rle={} correlations={}",
        s.len(),
        e,
        format_merit(merit_factor_of(s.len(), e).ok()),
        encode_rle(&s),
        list.join(",")
    )?;
    Ok(EXIT_OK)
}

fn cmd_convert(a: ConvertArgs, out: &mut dyn Write) -> Result<i32> {
    let leading = if a.leading == "-" { Spin::Minus } else { Spin::Plus };
    let (s, explicit) = parse_any(a.sequence.trim(), leading)?;
    if explicit {
        writeln!(out, "{}", encode_rle(&s))?;
    } else {
        writeln!(out, "{}", s.to_pm_string())?;
    }
    Ok(EXIT_OK)
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> Result<i32> {
    let toggles = if a.toggles.is_empty() {
        vec![Toggles::FULL, Toggles::BASELINE]
    } else {
        a.toggles.clone()
    };
    let mode = mode_of(a.skew);
    let lengths = (a.min..=a.max).filter(|n| mode == Mode::General || n % 2 == 1);
    let sink: Box<dyn Write + '_> = match &a.output {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(out),
    };
    let mut w = bench_writer(sink)?;
    let mut write_err = None;
    run_bench(lengths, &toggles, mode, |row| {
        if let Err(e) = w.serialize(row).and_then(|_| w.flush().map_err(Into::into)) {
            write_err.get_or_insert(e);
        }
    })?;
    if let Some(e) = write_err {
        return Err(e.into());
    }
    w.flush()?;
    Ok(EXIT_OK)
}

fn cmd_fit(a: FitArgs, out: &mut dyn Write) -> Result<i32> {
    let mut text = String::new();
    match &a.input {
        Some(p) => {
            File::open(p)
                .with_context(|| format!("opening {}", p.display()))?
                .read_to_string(&mut text)?;
        }
        None => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    let rows = read_bench_csv(text.as_bytes())?;
    writeln!(out, "toggles,base,std_error,points")?;
    let mut status = EXIT_OK;
    for (toggles, fit) in fit_by_toggles(&rows) {
        match fit {
            Ok(f) => writeln!(out, "{toggles},{:.4},{:.4},{}", f.base, f.std_error, f.points)?,
            Err(e) => {
                eprintln!("{toggles}: {e}");
                status = EXIT_FAILURE;
            }
        }
    }
    Ok(status)
}
