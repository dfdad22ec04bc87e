//! Depth-first branch and bound over outermost-first branching units.
//!
//! Variables are assigned in pairs from the outside in, `(s_1, s_N)`,
//! `(s_2, s_{N-1})`, ..., with a final single middle variable for odd `N`.
//! In skew-symmetric mode each unit is one free variable `s_i` (`i <= n`)
//! together with the mirror value it forces at the other end.
//!
//! Energies of all sequences of one length agree modulo 4 (modulo 8 for
//! skew-symmetric ones), so after finding an incumbent of energy `E` the
//! search only looks for energy `E - 4` (`E - 8`) or less.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::bounds::{BoundOptions, PartialState};
use crate::error::{Error, Result};
use crate::sequence::skew_sign;
use crate::sequence::{merit_factor_of, Sequence, Spin};
use crate::symmetry::{should_check, LexStatus, SymmetryBreaker};
use crate::templates::{build_skew_template, build_template, Template};

/// How often (in nodes) the wall clock is consulted.
const TIME_CHECK_INTERVAL: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    General,
    Skew,
}

impl Mode {
    /// Energy step between consecutive admissible energies.
    pub fn energy_step(self) -> u64 {
        match self {
            Mode::General => 4,
            Mode::Skew => 8,
        }
    }
}

/// Feature switches for ablation runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Toggles {
    pub template: bool,
    pub symmetry: bool,
    pub cancellations: bool,
    pub reinforcements: bool,
    /// Exact worst-case per-lag bound instead of the arbitrary-completion one.
    pub exact_bound: bool,
}

const TOGGLE_NAMES: [&str; 5] = ["template", "symmetry", "cancel", "reinforce", "exact"];

impl Toggles {
    pub const FULL: Toggles = Toggles {
        template: true,
        symmetry: true,
        cancellations: true,
        reinforcements: true,
        exact_bound: true,
    };

    pub const BASELINE: Toggles = Toggles {
        template: false,
        symmetry: false,
        cancellations: false,
        reinforcements: false,
        exact_bound: false,
    };

    fn flags(&self) -> [bool; 5] {
        [
            self.template,
            self.symmetry,
            self.cancellations,
            self.reinforcements,
            self.exact_bound,
        ]
    }

    fn from_flags(f: [bool; 5]) -> Self {
        Toggles {
            template: f[0],
            symmetry: f[1],
            cancellations: f[2],
            reinforcements: f[3],
            exact_bound: f[4],
        }
    }

    /// The 16 combinations of template, symmetry, cancellation and
    /// reinforcement, each with the given bound kind.
    pub fn combinations(exact_bound: bool) -> impl Iterator<Item = Toggles> {
        (0..16u8).map(move |b| Toggles {
            template: b & 1 != 0,
            symmetry: b & 2 != 0,
            cancellations: b & 4 != 0,
            reinforcements: b & 8 != 0,
            exact_bound,
        })
    }

    pub fn bound_options(&self) -> BoundOptions {
        BoundOptions {
            exact: self.exact_bound,
            cancellations: self.cancellations,
            reinforcements: self.reinforcements,
        }
    }
}

impl Default for Toggles {
    fn default() -> Self {
        Toggles::FULL
    }
}

impl fmt::Display for Toggles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Toggles::FULL {
            return f.write_str("full");
        }
        if *self == Toggles::BASELINE {
            return f.write_str("baseline");
        }
        let names: Vec<&str> = TOGGLE_NAMES
            .iter()
            .zip(self.flags())
            .filter_map(|(name, on)| on.then_some(*name))
            .collect();
        f.write_str(&names.join("+"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown toggle {0:?}; expected full, baseline, or a '+'-joined subset of template, symmetry, cancel, reinforce, exact")]
pub struct ParseTogglesError(String);

impl FromStr for Toggles {
    type Err = ParseTogglesError;

    fn from_str(s: &str) -> Result<Self, ParseTogglesError> {
        match s.trim() {
            "full" => return Ok(Toggles::FULL),
            "baseline" | "none" => return Ok(Toggles::BASELINE),
            _ => {}
        }
        let mut flags = [false; 5];
        for part in s.split('+').map(str::trim) {
            let idx = TOGGLE_NAMES
                .iter()
                .position(|n| *n == part)
                .ok_or_else(|| ParseTogglesError(part.to_string()))?;
            flags[idx] = true;
        }
        Ok(Toggles::from_flags(flags))
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: usize,
    pub mode: Mode,
    pub toggles: Toggles,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Replaces the embedded template when `toggles.template` is set.
    pub template: Option<Template>,
}

impl SearchConfig {
    pub fn new(n: usize) -> Self {
        SearchConfig {
            n,
            mode: Mode::General,
            toggles: Toggles::FULL,
            node_limit: None,
            time_limit: None,
            template: None,
        }
    }

    pub fn skew(n: usize) -> Self {
        SearchConfig {
            mode: Mode::Skew,
            ..SearchConfig::new(n)
        }
    }

    pub fn with_toggles(mut self, toggles: Toggles) -> Self {
        self.toggles = toggles;
        self
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_template(mut self, template: Template) -> Self {
        self.template = Some(template);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptySequence);
        }
        if self.mode == Mode::Skew && self.n % 2 == 0 {
            return Err(Error::SkewNeedsOddLength(self.n));
        }
        Ok(())
    }

    /// The template in effect: all `+1` when templates are off.
    pub fn effective_template(&self) -> Result<Template> {
        self.validate()?;
        if !self.toggles.template {
            return Ok(Template::plus(self.n));
        }
        let t = match (&self.template, self.mode) {
            (Some(t), _) => t.clone(),
            (None, Mode::General) => build_template(self.n)?,
            (None, Mode::Skew) => build_skew_template(self.n.div_ceil(2))?,
        };
        if t.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: t.len(),
            });
        }
        Ok(t)
    }
}

/// One improvement of the incumbent.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub nodes_at_improvement: u64,
    /// Wall-clock seconds since the search started.
    pub elapsed: f64,
    pub energy: u64,
    pub sequence: Sequence,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub best: Sequence,
    pub energy: u64,
    /// `None` only for the zero-energy length 1.
    pub merit_factor: Option<f64>,
    /// Number of value combinations entered.
    pub nodes: u64,
    pub proven_optimal: bool,
    pub elapsed: Duration,
    pub convergence: Vec<ConvergenceRecord>,
}

/// A unit of branching: the variables given values at one tree level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchUnit {
    Pair(usize, usize),
    Single(usize),
    /// A free variable and, except at the centre, the mirror position whose
    /// value is `sign * value(free)`.
    Skew {
        free: usize,
        mirror: Option<(usize, Spin)>,
    },
}

/// Zero-based branching units in search order.
pub fn branch_order(n: usize, mode: Mode) -> Vec<BranchUnit> {
    match mode {
        Mode::General => (0..n / 2)
            .map(|i| BranchUnit::Pair(i, n - 1 - i))
            .chain((n % 2 == 1).then_some(BranchUnit::Single(n / 2)))
            .collect(),
        Mode::Skew => {
            let n_free = n.div_ceil(2);
            (0..n_free)
                .map(|p| BranchUnit::Skew {
                    free: p,
                    mirror: (p + 1 < n_free).then(|| (n - 1 - p, skew_sign(n_free - 1 - p))),
                })
                .collect()
        }
    }
}

/// The assignments made by one child of a branching unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Child {
    slots: [(usize, Spin); 2],
    len: u8,
}

impl Child {
    fn one(p: usize, v: Spin) -> Self {
        Child {
            slots: [(p, v), (p, v)],
            len: 1,
        }
    }

    fn two(a: (usize, Spin), b: (usize, Spin)) -> Self {
        Child {
            slots: [a, b],
            len: 2,
        }
    }

    pub fn assignments(&self) -> &[(usize, Spin)] {
        &self.slots[..self.len as usize]
    }
}

/// Children of `unit` in the order they are tried: the template's
/// preference first, or `+1` first without a template.
pub fn child_values(unit: BranchUnit, template: &Template, use_template: bool) -> Vec<Child> {
    let pref = |p: usize| {
        if use_template {
            template.preferred(p)
        } else {
            Spin::Plus
        }
    };
    match unit {
        BranchUnit::Pair(i, j) => {
            let (ti, tj) = (pref(i), pref(j));
            [(ti, tj), (ti, -tj), (-ti, tj), (-ti, -tj)]
                .into_iter()
                .map(|(a, b)| Child::two((i, a), (j, b)))
                .collect()
        }
        BranchUnit::Single(i) => [pref(i), -pref(i)]
            .into_iter()
            .map(|v| Child::one(i, v))
            .collect(),
        BranchUnit::Skew { free, mirror } => [pref(free), -pref(free)]
            .into_iter()
            .map(|v| match mirror {
                Some((m, sign)) => Child::two((free, v), (m, sign * v)),
                None => Child::one(free, v),
            })
            .collect(),
    }
}

pub fn count_distinct_incumbent_energies(result: &SearchResult) -> usize {
    let mut energies: Vec<u64> = result.convergence.iter().map(|r| r.energy).collect();
    energies.sort_unstable();
    energies.dedup();
    energies.len()
}

pub fn solve(cfg: &SearchConfig) -> Result<SearchResult> {
    solve_with(cfg, |_| {})
}

/// Like [`solve`], reporting every incumbent improvement to `sink` as it
/// happens.
///
/// Limits are only enforced once a first incumbent exists; the first dive
/// cannot be pruned, so that takes at most `n` nodes.
pub fn solve_with<F>(cfg: &SearchConfig, sink: F) -> Result<SearchResult>
where
    F: FnMut(&ConvergenceRecord),
{
    cfg.validate()?;
    let template = cfg.effective_template()?;
    let units = branch_order(cfg.n, cfg.mode);
    let children = units
        .iter()
        .map(|&u| child_values(u, &template, cfg.toggles.template))
        .collect();
    let breaker = cfg.toggles.symmetry.then(|| match cfg.mode {
        Mode::General => SymmetryBreaker::new(template.clone()),
        Mode::Skew => SymmetryBreaker::for_skew(template.clone()),
    });
    let opts = cfg.toggles.bound_options();
    let even_lags_only = cfg.mode == Mode::Skew;
    let state = PartialState::new(cfg.n)?;
    let floor = state
        .lower_bound_within(opts, u64::MAX, even_lags_only)
        .expect("uncapped");

    let mut search = Search {
        cfg,
        children,
        breaker,
        opts,
        even_lags_only,
        step: cfg.mode.energy_step(),
        floor,
        state,
        best_energy: u64::MAX,
        best: None,
        nodes: 0,
        start: Instant::now(),
        convergence: Vec::new(),
        sink,
        finished: false,
        stopped: false,
    };
    search.explore(0);

    let elapsed = search.start.elapsed();
    let best = search.best.expect("the first dive always reaches a leaf");
    Ok(SearchResult {
        merit_factor: merit_factor_of(cfg.n, search.best_energy).ok(),
        energy: search.best_energy,
        best,
        nodes: search.nodes,
        proven_optimal: !search.stopped,
        elapsed,
        convergence: search.convergence,
    })
}

/// State of one depth-first search. Everything it mutates is owned here, so
/// disjoint subtrees could run on separate instances.
struct Search<'c, F> {
    cfg: &'c SearchConfig,
    children: Vec<Vec<Child>>,
    breaker: Option<SymmetryBreaker>,
    opts: BoundOptions,
    even_lags_only: bool,
    step: u64,
    /// Lower bound of the empty assignment; once the incumbent is within one
    /// step of it nothing better exists.
    floor: u64,
    state: PartialState,
    best_energy: u64,
    best: Option<Sequence>,
    nodes: u64,
    start: Instant,
    convergence: Vec<ConvergenceRecord>,
    sink: F,
    /// Optimality established early.
    finished: bool,
    /// A limit interrupted the search.
    stopped: bool,
}

impl<F: FnMut(&ConvergenceRecord)> Search<'_, F> {
    fn explore(&mut self, unit: usize) {
        for ci in 0..self.children[unit].len() {
            if self.limit_reached() {
                self.stopped = true;
                return;
            }
            let child = self.children[unit][ci];
            self.nodes += 1;
            for &(p, v) in child.assignments() {
                self.state.push(p, v);
            }
            self.visit(unit);
            for _ in child.assignments() {
                self.state.pop();
            }
            if self.finished || self.stopped {
                return;
            }
        }
    }

    #[inline]
    fn visit(&mut self, unit: usize) {
        // only energies <= best - step are still of interest
        let cap = if self.best_energy == u64::MAX {
            u64::MAX
        } else {
            self.best_energy - self.step
        };
        let Some(bound) = self
            .state
            .lower_bound_within(self.opts, cap, self.even_lags_only)
        else {
            return;
        };
        if self.state.is_complete() {
            self.improve(bound);
            return;
        }
        if let Some(breaker) = &self.breaker {
            if should_check(self.state.depth(), self.cfg.n)
                && breaker.evaluate(self.state.values()) == LexStatus::Violated
            {
                return;
            }
        }
        self.explore(unit + 1);
    }

    fn improve(&mut self, energy: u64) {
        let sequence = self.state.to_sequence().expect("complete");
        self.best_energy = energy;
        self.best = Some(sequence.clone());
        let record = ConvergenceRecord {
            nodes_at_improvement: self.nodes,
            elapsed: self.start.elapsed().as_secs_f64(),
            energy,
            sequence,
        };
        (self.sink)(&record);
        self.convergence.push(record);
        if energy < self.floor + self.step {
            self.finished = true;
        }
    }

    #[inline]
    fn limit_reached(&self) -> bool {
        if self.best.is_none() {
            return false;
        }
        if let Some(limit) = self.cfg.node_limit {
            if self.nodes >= limit {
                return true;
            }
        }
        if let Some(limit) = self.cfg.time_limit {
            if self.nodes % TIME_CHECK_INTERVAL == 0 && self.start.elapsed() >= limit {
                return true;
            }
        }
        false
    }
}
