//! Binary sequences, their off-peak autocorrelations, energy and merit factor.
//!
//! A sequence of length `N` has `N - 1` off-peak autocorrelations
//!
//! ```text
//! C_k = sum_{i=1}^{N-k} s_i s_{i+k}        k = 1 .. N-1
//! ```
//!
//! and its energy is `E = sum_k C_k^2`. All arithmetic is exact integer
//! arithmetic; floating point only appears in [`merit_factor`].

mod group;
mod rle;
mod skew;

use std::fmt;
use std::ops::{Index, Neg};
use std::str::FromStr;

use crate::error::{Error, Result};

pub use group::SymmetryElement;
pub use rle::{decode_rle, encode_rle};
pub use skew::{expand_skew, is_skew};
pub(crate) use skew::skew_sign;

/// A single element of a binary sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(i8)]
pub enum Spin {
    Plus = 1,
    Minus = -1,
}

impl Spin {
    #[inline(always)]
    pub fn value(self) -> i32 {
        self as i8 as i32
    }

    pub fn from_sign(v: i32) -> Spin {
        if v >= 0 {
            Spin::Plus
        } else {
            Spin::Minus
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Spin::Plus => '+',
            Spin::Minus => '-',
        }
    }
}

impl Neg for Spin {
    type Output = Spin;

    #[inline(always)]
    fn neg(self) -> Spin {
        match self {
            Spin::Plus => Spin::Minus,
            Spin::Minus => Spin::Plus,
        }
    }
}

impl std::ops::Mul for Spin {
    type Output = Spin;

    #[inline(always)]
    fn mul(self, rhs: Spin) -> Spin {
        if self == rhs {
            Spin::Plus
        } else {
            Spin::Minus
        }
    }
}

/// A complete `±1` sequence of length at least one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    elements: Vec<Spin>,
}

impl Sequence {
    pub fn new(elements: Vec<Spin>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Sequence { elements })
    }

    /// Builds a sequence from integer values, mapping non-negative to `+1`.
    pub fn from_signs(values: &[i32]) -> Result<Self> {
        Sequence::new(values.iter().map(|&v| Spin::from_sign(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_slice(&self) -> &[Spin] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = Spin> + '_ {
        self.elements.iter().copied()
    }

    pub fn into_vec(self) -> Vec<Spin> {
        self.elements
    }

    /// The explicit `+`/`-` text form, e.g. `++-+`.
    pub fn to_pm_string(&self) -> String {
        self.elements.iter().map(|s| s.to_char()).collect()
    }

    /// The middle `n` elements. `n` must not exceed the length.
    pub fn middle(&self, n: usize) -> Option<Sequence> {
        let len = self.len();
        if n == 0 || n > len {
            return None;
        }
        let start = (len - n) / 2;
        Some(Sequence {
            elements: self.elements[start..start + n].to_vec(),
        })
    }
}

impl Index<usize> for Sequence {
    type Output = Spin;

    fn index(&self, i: usize) -> &Spin {
        &self.elements[i]
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pm_string())
    }
}

impl FromStr for Sequence {
    type Err = Error;

    /// Parses the explicit `+`/`-` form. The Unicode minus sign is accepted.
    fn from_str(s: &str) -> Result<Self> {
        let elements = s
            .chars()
            .enumerate()
            .map(|(offset, ch)| match ch {
                '+' => Ok(Spin::Plus),
                '-' | '\u{2212}' => Ok(Spin::Minus),
                _ => Err(Error::InvalidSpin { ch, offset }),
            })
            .collect::<Result<Vec<_>>>()?;
        Sequence::new(elements)
    }
}

/// Off-peak autocorrelations `C_1 ..= C_{N-1}`, stored at index `k - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationVector {
    values: Vec<i64>,
}

impl CorrelationVector {
    /// `C_k` for `1 <= k <= N - 1`.
    pub fn lag(&self, k: usize) -> i64 {
        self.values[k - 1]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.values.iter().map(|&c| (c * c) as u64).sum()
    }
}

pub fn correlations(s: &Sequence) -> CorrelationVector {
    let x = s.as_slice();
    let n = x.len();
    let values = (1..n)
        .map(|k| {
            x[..n - k]
                .iter()
                .zip(&x[k..])
                .map(|(a, b)| (a.value() * b.value()) as i64)
                .sum()
        })
        .collect();
    CorrelationVector { values }
}

pub fn energy(s: &Sequence) -> u64 {
    correlations(s).sum_of_squares()
}

/// `N^2 / (2 E)`.
pub fn merit_factor(s: &Sequence) -> Result<f64> {
    merit_factor_of(s.len(), energy(s))
}

/// Merit factor from a length and an energy already in hand.
pub fn merit_factor_of(n: usize, energy: u64) -> Result<f64> {
    if energy == 0 {
        return Err(Error::UndefinedMerit);
    }
    Ok((n * n) as f64 / (2.0 * energy as f64))
}
