//! Incremental lower bounds on the energy of every completion of a partial
//! sequence.
//!
//! Positions are always assigned from the outside in, so the assigned set is
//! a prefix `[0, left)` plus a suffix `[right, n)`. For each lag `k` the state
//! tracks
//!
//! * `t_k`, the sum of the products `s_i s_{i+k}` whose factors are both known,
//! * `u_k`, the number of products with at least one unknown factor,
//! * cancellation and reinforcement pairs: two unknown products
//!   `s_{q-k} s_q` and `s_q s_{q+k}` sharing an unassigned middle `q` whose
//!   outer factors are both known. If the outer factors differ the pair sums
//!   to zero whatever `s_q` is; if they agree it sums to `±2`.
//!
//! From these the per-lag bound is `l_k = max(b_k, |t_k| - f_k)` where
//! `f_k = u_k - 2 * cancellations` and `b_k` is the parity floor `(N - k) mod 2`,
//! raised to 2 when every unknown product sits in a pair and
//! `t_k + 2 * reinforcements ≡ 2 (mod 4)`. The energy bound is `Σ l_k²`.
//!
//! Pairs are a function of the assigned set alone (keyed by lag and middle
//! index), so a pair can never be credited twice and is dropped exactly when
//! its middle gets a value.

use crate::error::{Error, Result};
use crate::sequence::{Sequence, Spin};

/// Which refinements of the per-lag bound are active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundOptions {
    /// Use `|t_k| - f_k`; otherwise the arbitrary-completion bound
    /// `|C_k(completion with +1)| - 2 f_k`.
    pub exact: bool,
    pub cancellations: bool,
    pub reinforcements: bool,
}

impl BoundOptions {
    pub const ALL: BoundOptions = BoundOptions {
        exact: true,
        cancellations: true,
        reinforcements: true,
    };

    pub const BASELINE: BoundOptions = BoundOptions {
        exact: false,
        cancellations: false,
        reinforcements: false,
    };

    /// All eight combinations.
    pub fn combinations() -> impl Iterator<Item = BoundOptions> {
        (0..8u8).map(|b| BoundOptions {
            exact: b & 1 != 0,
            cancellations: b & 2 != 0,
            reinforcements: b & 4 != 0,
        })
    }
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions::ALL
    }
}

/// Bound on `|C_k|` for one lag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LagBound {
    /// `l_k`, a lower bound on `|C_k|` over all completions.
    pub value: u32,
    /// `b_k`: 0 or 1 from parity, 2 when a reinforcement argument applies.
    pub parity_floor: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialState {
    n: usize,
    values: Vec<Option<Spin>>,
    // the same values as 1, -1, or 0 for unassigned
    spins: Vec<i8>,
    left: usize,
    right: usize,
    history: Vec<usize>,
    // the counters as they were before each entry of `history`, `n` per entry
    saved: Vec<LagCounts>,
    // indexed by k; slot 0 is unused
    lags: Vec<LagCounts>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct LagCounts {
    partial_sum: i32,
    uncomputable: i32,
    cancel_pairs: i32,
    reinforce_pairs: i32,
    // sum of the unknown products when every unassigned value is +1
    completion_sum: i32,
}

impl LagCounts {
    /// `(l_k, b_k)` given the parity `(N - k) mod 2`.
    #[inline(always)]
    fn bound<const EXACT: bool, const CANCEL: bool, const REINFORCE: bool>(
        &self,
        parity: i32,
    ) -> (i32, i32) {
        let t = self.partial_sum;
        let free = if CANCEL {
            self.uncomputable - 2 * self.cancel_pairs
        } else {
            self.uncomputable
        };
        let mut floor = parity;
        if REINFORCE
            && t & 1 == 0
            && self.uncomputable == 2 * (self.cancel_pairs + self.reinforce_pairs)
            && (t + 2 * self.reinforce_pairs) & 3 == 2
        {
            floor = 2;
        }
        let raw = if EXACT {
            t.abs() - free
        } else {
            (t + self.completion_sum).abs() - 2 * free
        };
        (raw.max(floor), floor)
    }
}

impl PartialState {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySequence);
        }
        let mut lags: Vec<LagCounts> = (0..n)
            .map(|k| LagCounts {
                uncomputable: (n - k) as i32,
                completion_sum: (n - k) as i32,
                ..LagCounts::default()
            })
            .collect();
        lags[0] = LagCounts::default();
        let st = PartialState {
            n,
            values: vec![None; n],
            spins: vec![0; n],
            left: 0,
            right: n,
            history: Vec::with_capacity(n),
            saved: Vec::with_capacity(n * n),
            lags,
        };
        Ok(st)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of assigned positions.
    pub fn depth(&self) -> usize {
        self.history.len()
    }

    pub fn is_complete(&self) -> bool {
        self.history.len() == self.n
    }

    pub fn values(&self) -> &[Option<Spin>] {
        &self.values
    }

    pub fn get(&self, pos: usize) -> Option<Spin> {
        self.values[pos]
    }

    /// The next unassigned positions from the left and from the right
    /// (equal when one position remains), or `None` when complete.
    pub fn frontier(&self) -> Option<(usize, usize)> {
        (self.left < self.right).then(|| (self.left, self.right - 1))
    }

    /// The completed sequence, once every position is assigned.
    pub fn to_sequence(&self) -> Option<Sequence> {
        let v: Option<Vec<Spin>> = self.values.iter().copied().collect();
        v.and_then(|v| Sequence::new(v).ok())
    }

    pub fn assign(&mut self, pos: usize, v: Spin) -> Result<()> {
        if pos >= self.n {
            return Err(Error::PositionOutOfRange { pos, n: self.n });
        }
        if self.values[pos].is_some() {
            return Err(Error::AlreadyAssigned(pos));
        }
        if pos != self.left && pos + 1 != self.right {
            return Err(Error::NotOnFrontier {
                pos,
                left: self.left,
                right: self.right - 1,
            });
        }
        self.push(pos, v);
        Ok(())
    }

    pub fn unassign(&mut self, pos: usize) -> Result<()> {
        match self.history.last() {
            None => Err(Error::NothingAssigned),
            Some(&last) if last != pos => Err(Error::NotMostRecent(pos)),
            Some(_) => {
                self.pop();
                Ok(())
            }
        }
    }

    /// Unchecked assignment; `pos` must be on the frontier.
    #[inline]
    pub(crate) fn push(&mut self, pos: usize, v: Spin) {
        debug_assert!(self.values[pos].is_none());
        debug_assert!(pos == self.left || pos + 1 == self.right);
        self.saved.extend_from_slice(&self.lags);
        self.update(pos, v);
        self.values[pos] = Some(v);
        self.spins[pos] = v as i8;
        if pos == self.left {
            self.left += 1;
        } else {
            self.right -= 1;
        }
        self.history.push(pos);
    }

    /// Undoes the most recent assignment and returns its position.
    #[inline]
    pub(crate) fn pop(&mut self) -> usize {
        let pos = self.history.pop().expect("pop on empty state");
        self.values[pos] = None;
        self.spins[pos] = 0;
        if pos + 1 == self.left {
            self.left -= 1;
        } else {
            self.right += 1;
        }
        let start = self.saved.len() - self.n;
        self.lags.copy_from_slice(&self.saved[start..]);
        self.saved.truncate(start);
        pos
    }

    /// Applies the effect of giving `p` the value `v` to the counters. `p`
    /// must be an end of the unassigned window `[self.left, self.right)`,
    /// which must not yet account for `p`.
    #[inline]
    fn update(&mut self, p: usize, v: Spin) {
        let (n, lo, hi) = (self.n, self.left, self.right);
        let spins = &self.spins[..n];
        let lags = &mut self.lags[..n];
        let vi = v.value();
        let known = |lag: &mut LagCounts, o: i8| {
            let o = o as i32;
            lag.partial_sum += vi * o;
            lag.uncomputable -= 1;
            lag.completion_sum -= o;
        };
        let credit = |lag: &mut LagCounts, same_ends: bool, delta: i32| {
            if same_ends {
                lag.reinforce_pairs += delta;
            } else {
                lag.cancel_pairs += delta;
            }
        };

        // s_{p-k} is unassigned for k <= p - lo and assigned beyond
        let open_left = p - lo;
        for (lag, &o) in lags[open_left + 1..=p]
            .iter_mut()
            .zip(spins[..p - open_left].iter().rev())
        {
            known(lag, o);
        }
        // s_{p+k} is unassigned for k < hi - p and assigned beyond
        let open_right = hi - p;
        for (lag, &o) in lags[open_right..n - p].iter_mut().zip(&spins[hi..]) {
            known(lag, o);
        }

        if v == Spin::Minus {
            // products with an unknown partner turn from +1 to -1 in the
            // all-plus completion; one of the two ranges is empty
            for k in (1..=open_left).chain(1..open_right) {
                lags[k].completion_sum -= 2;
            }
        }
        // p closes a pair with middle p - k and assigned far end p - 2k
        for k in open_left / 2 + 1..=open_left.min(p / 2) {
            credit(&mut lags[k], spins[p - 2 * k] as i32 == vi, 1);
        }
        // or with middle p + k and far end p + 2k
        for k in (open_right + 1) / 2..open_right.min((n - 1 - p) / 2 + 1) {
            credit(&mut lags[k], spins[p + 2 * k] as i32 == vi, 1);
        }
        // p was the middle of a pair; its products now become ordinary
        for k in (open_left + 1).max(open_right)..=p.min(n - 1 - p) {
            credit(&mut lags[k], spins[p - k] == spins[p + k], -1);
        }
    }

    fn check_lag(&self, k: usize) -> Result<()> {
        if k == 0 || k >= self.n {
            return Err(Error::LagOutOfRange { k, max: self.n - 1 });
        }
        Ok(())
    }

    /// `t_k`.
    pub fn partial_sum(&self, k: usize) -> Result<i32> {
        self.check_lag(k)?;
        Ok(self.lags[k].partial_sum)
    }

    /// `f_k`: unknown products not accounted for by a cancellation pair.
    pub fn free_count(&self, k: usize) -> Result<i32> {
        self.check_lag(k)?;
        Ok(self.lags[k].uncomputable - 2 * self.lags[k].cancel_pairs)
    }

    /// Products at lag `k` with at least one unassigned factor.
    pub fn uncomputable(&self, k: usize) -> Result<i32> {
        self.check_lag(k)?;
        Ok(self.lags[k].uncomputable)
    }

    pub fn cancel_pairs(&self, k: usize) -> Result<i32> {
        self.check_lag(k)?;
        Ok(self.lags[k].cancel_pairs)
    }

    pub fn reinforce_pairs(&self, k: usize) -> Result<i32> {
        self.check_lag(k)?;
        Ok(self.lags[k].reinforce_pairs)
    }

    /// Whether every unknown product at lag `k` belongs to a pair.
    pub fn fully_paired(&self, k: usize) -> Result<bool> {
        self.check_lag(k)?;
        Ok(self.is_fully_paired(k))
    }

    #[inline(always)]
    fn is_fully_paired(&self, k: usize) -> bool {
        self.lags[k].uncomputable == 2 * (self.lags[k].cancel_pairs + self.lags[k].reinforce_pairs)
    }

    pub fn lag_bound(&self, k: usize, opts: BoundOptions) -> Result<LagBound> {
        self.check_lag(k)?;
        let (value, parity_floor) = self.lag_bound_raw(k, opts);
        Ok(LagBound {
            value: value as u32,
            parity_floor: parity_floor as u32,
        })
    }

    fn lag_bound_raw(&self, k: usize, opts: BoundOptions) -> (i32, i32) {
        let (lag, parity) = (&self.lags[k], ((self.n - k) & 1) as i32);
        match (opts.exact, opts.cancellations, opts.reinforcements) {
            (false, false, false) => lag.bound::<false, false, false>(parity),
            (false, false, true) => lag.bound::<false, false, true>(parity),
            (false, true, false) => lag.bound::<false, true, false>(parity),
            (false, true, true) => lag.bound::<false, true, true>(parity),
            (true, false, false) => lag.bound::<true, false, false>(parity),
            (true, false, true) => lag.bound::<true, false, true>(parity),
            (true, true, false) => lag.bound::<true, true, false>(parity),
            (true, true, true) => lag.bound::<true, true, true>(parity),
        }
    }

    /// `Σ_k l_k²`, a lower bound on the energy of every completion.
    pub fn lower_bound(&self, opts: BoundOptions) -> u64 {
        (1..self.n)
            .map(|k| {
                let l = self.lag_bound_raw(k, opts).0 as u64;
                l * l
            })
            .sum()
    }

    /// The bound if it does not exceed `cap`, stopping early otherwise.
    /// With `even_lags_only` the odd lags are skipped, which is valid when
    /// every admissible completion has `C_k = 0` at odd `k`.
    #[inline]
    pub(crate) fn lower_bound_within(
        &self,
        opts: BoundOptions,
        cap: u64,
        even_lags_only: bool,
    ) -> Option<u64> {
        match (opts.exact, opts.cancellations, opts.reinforcements) {
            (false, false, false) => self.sum_within::<false, false, false>(cap, even_lags_only),
            (false, false, true) => self.sum_within::<false, false, true>(cap, even_lags_only),
            (false, true, false) => self.sum_within::<false, true, false>(cap, even_lags_only),
            (false, true, true) => self.sum_within::<false, true, true>(cap, even_lags_only),
            (true, false, false) => self.sum_within::<true, false, false>(cap, even_lags_only),
            (true, false, true) => self.sum_within::<true, false, true>(cap, even_lags_only),
            (true, true, false) => self.sum_within::<true, true, false>(cap, even_lags_only),
            (true, true, true) => self.sum_within::<true, true, true>(cap, even_lags_only),
        }
    }

    #[inline(always)]
    fn sum_within<const EXACT: bool, const CANCEL: bool, const REINFORCE: bool>(
        &self,
        cap: u64,
        even_lags_only: bool,
    ) -> Option<u64> {
        let n = self.n;
        let lags = &self.lags[..n];
        let (top, step) = if even_lags_only {
            ((n - 1) & !1, 2)
        } else {
            (n - 1, 1)
        };
        let mut sum = 0u64;
        // long lags are settled first under outside-in assignment, so they
        // tend to push the sum over the cap soonest
        for k in (1..=top).rev().step_by(step) {
            let parity = ((n - k) & 1) as i32;
            let l = lags[k].bound::<EXACT, CANCEL, REINFORCE>(parity).0 as u64;
            sum += l * l;
            if sum > cap {
                return None;
            }
        }
        Some(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::energy;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const P: Spin = Spin::Plus;
    const M: Spin = Spin::Minus;

    /// From-scratch recomputation straight from the definitions.
    fn recompute(vals: &[Option<Spin>], k: usize) -> (i32, i32, i32, i32) {
        let n = vals.len();
        let (mut t, mut u, mut c, mut r) = (0, 0, 0, 0);
        for i in 0..n - k {
            match (vals[i], vals[i + k]) {
                (Some(a), Some(b)) => t += a.value() * b.value(),
                _ => u += 1,
            }
        }
        for q in k..n.saturating_sub(k) {
            if let (Some(a), None, Some(b)) = (vals[q - k], vals[q], vals[q + k]) {
                if a == b {
                    r += 1
                } else {
                    c += 1
                }
            }
        }
        (t, u, c, r)
    }

    fn assert_matches_scratch(st: &PartialState) {
        for k in 1..st.len() {
            let (t, u, c, r) = recompute(st.values(), k);
            assert_eq!(st.partial_sum(k).unwrap(), t, "t_{k}");
            assert_eq!(st.uncomputable(k).unwrap(), u, "u_{k}");
            assert_eq!(st.cancel_pairs(k).unwrap(), c, "cancel_{k}");
            assert_eq!(st.reinforce_pairs(k).unwrap(), r, "reinforce_{k}");
            assert_eq!(st.free_count(k).unwrap(), u - 2 * c);
        }
    }

    #[test]
    fn init_counts() {
        let st = PartialState::new(3).unwrap();
        assert_eq!(st.free_count(1).unwrap(), 2);
        assert_eq!(st.free_count(2).unwrap(), 1);
        assert_eq!(st.partial_sum(1).unwrap(), 0);
        assert!(!st.fully_paired(1).unwrap());
        let st = PartialState::new(10).unwrap();
        for k in 1..10 {
            assert_eq!(st.free_count(k).unwrap(), 10 - k as i32);
        }
        let st = PartialState::new(1).unwrap();
        assert_eq!(st.lower_bound(BoundOptions::ALL), 0);
        assert!(st.lag_bound(1, BoundOptions::ALL).is_err());
        assert_eq!(PartialState::new(0), Err(Error::EmptySequence));
    }

    #[test]
    fn init_bound_counts_odd_lags() {
        for n in 1..20 {
            let st = PartialState::new(n).unwrap();
            let odd = (1..n).filter(|k| (n - k) % 2 == 1).count() as u64;
            for opts in BoundOptions::combinations() {
                assert_eq!(st.lower_bound(opts), odd);
            }
        }
    }

    #[test]
    fn cancellation_at_length_three() {
        let mut st = PartialState::new(3).unwrap();
        st.assign(0, P).unwrap();
        st.assign(2, M).unwrap();
        assert_eq!(st.cancel_pairs(1).unwrap(), 1);
        assert_eq!(st.free_count(1).unwrap(), 0);
        assert_eq!(st.partial_sum(2).unwrap(), -1);
        // C_1 is s1 s2 + s2 s3 = 0 for either middle value
        let lb = st.lag_bound(1, BoundOptions::ALL).unwrap();
        assert_eq!(lb.value, 0);
    }

    #[test]
    fn reinforcement_at_length_five() {
        let mut st = PartialState::new(5).unwrap();
        for (p, v) in [(0, P), (4, P), (1, P), (3, M)] {
            st.assign(p, v).unwrap();
        }
        assert_matches_scratch(&st);
        // lag 2: s1 s3 + s3 s5 reinforce, s2 s4 = -1 is known
        assert_eq!(st.reinforce_pairs(2).unwrap(), 1);
        assert_eq!(st.partial_sum(2).unwrap(), -1);
        assert!(st.fully_paired(2).unwrap());
        // lag 1: s2 s3 and s3 s4 cancel (s2 != s4)
        assert_eq!(st.cancel_pairs(1).unwrap(), 1);
        // per-lag bounds never exceed |C_k| over both completions
        for k in 1..5 {
            let l = st.lag_bound(k, BoundOptions::ALL).unwrap().value as i64;
            for mid in [P, M] {
                let mut c = st.clone();
                c.assign(2, mid).unwrap();
                let s = c.to_sequence().unwrap();
                let ck = crate::sequence::correlations(&s).lag(k);
                assert!(l <= ck.abs(), "k={k} l={l} C={ck}");
            }
        }
    }

    #[test]
    fn reinforcement_raises_floor() {
        let mut st = PartialState::new(7).unwrap();
        for (p, v) in [(0, P), (6, P), (1, P), (5, M), (2, P), (4, P)] {
            st.assign(p, v).unwrap();
        }
        // only position 3 is open. Lag 3: (1,4) and (2,5) give t = 0, while
        // (0,3) and (3,6) have equal ends, so C_3 = ±2.
        assert_eq!(st.reinforce_pairs(3).unwrap(), 1);
        assert_eq!(st.partial_sum(3).unwrap(), 0);
        assert!(st.fully_paired(3).unwrap());
        let lb = st.lag_bound(3, BoundOptions::ALL).unwrap();
        assert_eq!(lb.parity_floor, 2);
        assert_eq!(lb.value, 2);
        let off = BoundOptions {
            reinforcements: false,
            ..BoundOptions::ALL
        };
        assert_eq!(st.lag_bound(3, off).unwrap().parity_floor, 0);
    }

    #[test]
    fn worked_lag_bounds() {
        // t_k = 0, f_k = 3, N - k even  => 0
        let mut st = PartialState::new(4).unwrap();
        assert_eq!(st.lag_bound(2, BoundOptions::ALL).unwrap().value, 0);
        // t_k = 5, f_k = 2, N - k odd  => 3
        // n = 8 with only position 4 open, all +1: t_1 = 5, f_1 = 2
        st = PartialState::new(8).unwrap();
        for p in [0, 7, 1, 6, 2, 5, 3] {
            st.assign(p, P).unwrap();
        }
        assert_eq!(st.partial_sum(1).unwrap(), 5);
        assert_eq!(st.free_count(1).unwrap(), 2);
        assert_eq!(st.lag_bound(1, BoundOptions::ALL).unwrap().value, 3);
    }

    #[test]
    fn full_assignment_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..30 {
            let seq: Vec<Spin> = (0..n).map(|_| if rng.gen() { P } else { M }).collect();
            let mut st = PartialState::new(n).unwrap();
            let (mut l, mut r) = (0, n);
            while l < r {
                if rng.gen() {
                    st.assign(l, seq[l]).unwrap();
                    l += 1;
                } else {
                    r -= 1;
                    st.assign(r, seq[r]).unwrap();
                }
            }
            let s = Sequence::new(seq).unwrap();
            let c = crate::sequence::correlations(&s);
            for k in 1..n {
                assert_eq!(st.partial_sum(k).unwrap() as i64, c.lag(k));
                assert_eq!(st.free_count(k).unwrap(), 0);
            }
            for opts in BoundOptions::combinations() {
                assert_eq!(st.lower_bound(opts), energy(&s));
            }
        }
    }

    #[test]
    fn assignment_errors() {
        let mut st = PartialState::new(5).unwrap();
        assert_eq!(st.unassign(0), Err(Error::NothingAssigned));
        assert_eq!(
            st.assign(5, P),
            Err(Error::PositionOutOfRange { pos: 5, n: 5 })
        );
        assert!(matches!(st.assign(2, P), Err(Error::NotOnFrontier { .. })));
        st.assign(0, P).unwrap();
        assert_eq!(st.assign(0, P), Err(Error::AlreadyAssigned(0)));
        st.assign(4, M).unwrap();
        assert_eq!(st.unassign(0), Err(Error::NotMostRecent(0)));
        st.unassign(4).unwrap();
        st.unassign(0).unwrap();
        assert_eq!(st, PartialState::new(5).unwrap());
    }

    #[test]
    fn random_stack_walks_match_scratch() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..26);
            let mut st = PartialState::new(n).unwrap();
            let mut snapshots = vec![st.clone()];
            for _ in 0..(4 * n) {
                let grow = st.frontier().is_some() && (st.depth() == 0 || rng.gen_bool(0.6));
                if grow {
                    let (l, r) = st.frontier().unwrap();
                    let p = if rng.gen() { l } else { r };
                    st.assign(p, if rng.gen() { P } else { M }).unwrap();
                    snapshots.push(st.clone());
                } else if st.depth() > 0 {
                    let last = *st.history.last().unwrap();
                    st.unassign(last).unwrap();
                    snapshots.pop();
                    assert_eq!(&st, snapshots.last().unwrap());
                }
                assert_matches_scratch(&st);
            }
        }
    }
}
