//! Skew-symmetric sequences: odd length `N = 2n - 1` with
//! `s_{n+i} = (-1)^i s_{n-i}` for `i = 1 .. n-1`.

use super::{Sequence, Spin};
use crate::error::{Error, Result};

#[inline]
pub(crate) fn skew_sign(i: usize) -> Spin {
    if i % 2 == 0 {
        Spin::Plus
    } else {
        Spin::Minus
    }
}

/// Extends the `n` free values to the length `2n - 1` skew-symmetric sequence.
pub fn expand_skew(free: &[Spin]) -> Result<Sequence> {
    let n = free.len();
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    let mut out = Vec::with_capacity(2 * n - 1);
    out.extend_from_slice(free);
    // one-based s_{n+i} = (-1)^i s_{n-i}; zero-based center is n - 1
    for i in 1..n {
        out.push(skew_sign(i) * free[n - 1 - i]);
    }
    Sequence::new(out)
}

pub fn is_skew(s: &Sequence) -> bool {
    let len = s.len();
    if len % 2 == 0 {
        return false;
    }
    let c = len / 2;
    (1..=c).all(|i| s[c + i] == skew_sign(i) * s[c - i])
}
