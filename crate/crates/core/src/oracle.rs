//! Brute-force optimal energies for small lengths.
//!
//! Shares nothing with the branch-and-bound code beyond [`Sequence`] and the
//! plain correlation/energy definitions. The first element is fixed to `+1`
//! (negating a sequence preserves energy); nothing else is pruned.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::search::Mode;
use crate::sequence::{energy, expand_skew, Sequence, Spin};

pub const MAX_GENERAL: usize = 28;
pub const MAX_SKEW: usize = 45;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub energy: u64,
    /// The optimum whose bit pattern is numerically least.
    pub sequence: Sequence,
    /// Number of optimal sequences of length `n` in the mode's class.
    pub count: u64,
}

fn spins_from_bits(bits: u64, len: usize) -> Vec<Spin> {
    (0..len)
        .map(|i| if bits >> i & 1 == 1 { Spin::Minus } else { Spin::Plus })
        .collect()
}

pub fn enumerate_optimal(n: usize, mode: Mode) -> Result<OracleResult> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    let free_len = match mode {
        Mode::General if n > MAX_GENERAL => {
            return Err(Error::OracleBudget { n, max: MAX_GENERAL })
        }
        Mode::Skew if n > MAX_SKEW => return Err(Error::OracleBudget { n, max: MAX_SKEW }),
        Mode::Skew if n % 2 == 0 => return Err(Error::SkewNeedsOddLength(n)),
        Mode::General => n,
        Mode::Skew => n.div_ceil(2),
    };
    let build = |bits: u64| {
        let v = spins_from_bits(bits, free_len);
        match mode {
            Mode::General => Sequence::new(v).expect("nonempty"),
            Mode::Skew => expand_skew(&v).expect("nonempty"),
        }
    };

    // bit 0 (the first element) stays clear: s_1 = +1
    let half = 1u64 << (free_len - 1);
    let (best, bits, count) = (0..half)
        .into_par_iter()
        .map(|x| (energy(&build(x << 1)), x << 1, 1u64))
        .reduce(
            || (u64::MAX, u64::MAX, 0),
            |a, b| match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Equal => (a.0, a.1.min(b.1), a.2 + b.2),
            },
        );
    Ok(OracleResult {
        energy: best,
        sequence: build(bits),
        // the negated half has the same energies
        count: 2 * count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::is_skew;

    /// Serial, unreduced enumeration for cross-checking the parallel one.
    fn serial_all(n: usize) -> (u64, u64) {
        let mut best = u64::MAX;
        let mut count = 0;
        for x in 0..(1u64 << n) {
            let e = energy(&Sequence::new(spins_from_bits(x, n)).unwrap());
            if e < best {
                best = e;
                count = 1;
            } else if e == best {
                count += 1;
            }
        }
        (best, count)
    }

    #[test]
    fn tiny_lengths() {
        let r = enumerate_optimal(2, Mode::General).unwrap();
        assert_eq!(r.energy, 1);
        assert_eq!(r.count, 4);
        let r = enumerate_optimal(3, Mode::General).unwrap();
        assert_eq!(r.energy, 1);
        assert_eq!(energy(&r.sequence), 1);
        let r = enumerate_optimal(1, Mode::General).unwrap();
        assert_eq!((r.energy, r.count), (0, 2));
    }

    #[test]
    fn agrees_with_serial_enumeration() {
        for n in 1..=14 {
            let r = enumerate_optimal(n, Mode::General).unwrap();
            assert_eq!((r.energy, r.count), serial_all(n), "n = {n}");
            assert_eq!(energy(&r.sequence), r.energy);
        }
    }

    #[test]
    fn skew_mode() {
        let r = enumerate_optimal(5, Mode::Skew).unwrap();
        let brute = (0..8u64)
            .map(|x| energy(&expand_skew(&spins_from_bits(x, 3)).unwrap()))
            .min()
            .unwrap();
        assert_eq!(r.energy, brute);
        assert!(is_skew(&r.sequence));
        for n in (1..=21).step_by(2) {
            let skew = enumerate_optimal(n, Mode::Skew).unwrap();
            let general = enumerate_optimal(n, Mode::General).unwrap();
            assert!(skew.energy >= general.energy);
        }
    }

    #[test]
    fn budget_and_parity_errors() {
        assert_eq!(
            enumerate_optimal(29, Mode::General),
            Err(Error::OracleBudget { n: 29, max: 28 })
        );
        assert_eq!(
            enumerate_optimal(47, Mode::Skew),
            Err(Error::OracleBudget { n: 47, max: 45 })
        );
        assert_eq!(
            enumerate_optimal(6, Mode::Skew),
            Err(Error::SkewNeedsOddLength(6))
        );
        assert_eq!(enumerate_optimal(0, Mode::General), Err(Error::EmptySequence));
    }
}
