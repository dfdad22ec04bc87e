//! Run-length notation: each symbol is the length of a run of equal values,
//! `1`..`9` for short runs and `A` = 10, `B` = 11, ... for longer ones.

use super::{Sequence, Spin};
use crate::error::{Error, Result};

const MAX_RUN: usize = 35; // 'Z'

fn run_length(ch: char) -> Option<usize> {
    match ch {
        '1'..='9' => Some(ch as usize - '0' as usize),
        'A'..='Z' => Some(ch as usize - 'A' as usize + 10),
        _ => None,
    }
}

fn run_symbol(len: usize) -> char {
    debug_assert!((1..=MAX_RUN).contains(&len));
    if len < 10 {
        (b'0' + len as u8) as char
    } else {
        (b'A' + (len - 10) as u8) as char
    }
}

/// Expands run-length text into a sequence whose first element is `leading`.
pub fn decode_rle(text: &str, leading: Spin) -> Result<Sequence> {
    if text.is_empty() {
        return Err(Error::EmptyRunLength);
    }
    let mut out = Vec::new();
    let mut value = leading;
    for (offset, ch) in text.chars().enumerate() {
        let len = run_length(ch).ok_or(Error::InvalidRunLength { ch, offset })?;
        out.extend(std::iter::repeat(value).take(len));
        value = -value;
    }
    Sequence::new(out)
}

/// Run-length text of `s`. The leading sign is dropped, so
/// `decode_rle(&encode_rle(&s), s[0]) == s`.
///
/// Panics on a run longer than 35 (`Z`), which has no symbol.
pub fn encode_rle(s: &Sequence) -> String {
    let mut out = String::new();
    let mut iter = s.iter();
    let mut current = iter.next().expect("sequences are nonempty");
    let mut run = 1usize;
    for x in iter {
        if x == current {
            run += 1;
        } else {
            out.push(encoded(run));
            current = x;
            run = 1;
        }
    }
    out.push(encoded(run));
    out
}

fn encoded(run: usize) -> char {
    assert!(run <= MAX_RUN, "run of length {run} has no run-length symbol");
    run_symbol(run)
}
