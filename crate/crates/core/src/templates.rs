//! Value-ordering templates cut from known low-energy sequences.
//!
//! A template gives, for every position, the value the search tries first.
//! Templates for length `n` are the middle `n` elements of a longer source
//! sequence of the same parity, so each correlation of the template draws
//! all its terms from the corresponding correlation of the source.

use crate::error::{Error, Result};
use crate::sequence::{decode_rle, expand_skew, Sequence, Spin};

/// Length 67, energy 241.
pub const ODD_SOURCE: &str = "12112111211222B2221111111112224542";
/// Length 68, energy 250.
pub const EVEN_SOURCE: &str = "11111111141147232123251412112221212";
/// The 60 free values of a length 119 skew-symmetric sequence, energy 835.
pub const SKEW_SOURCE_FREE: &str = "11331111311332321211561311512";

pub const ODD_SOURCE_LEN: usize = 67;
pub const EVEN_SOURCE_LEN: usize = 68;
pub const SKEW_SOURCE_LEN: usize = 119;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Template {
    preferred: Vec<Spin>,
}

impl Template {
    pub fn new(preferred: Vec<Spin>) -> Self {
        Template { preferred }
    }

    /// The all-`+1` template, equivalent to plain `+1`-first ordering.
    pub fn plus(n: usize) -> Self {
        Template {
            preferred: vec![Spin::Plus; n],
        }
    }

    /// Middle `n` values of `source`, which must have the parity of `n`
    /// and be at least that long.
    pub fn from_middle(source: &Sequence, n: usize) -> Result<Self> {
        if n == 0 || n > source.len() || (source.len() - n) % 2 != 0 {
            return Err(Error::TemplateTooLong {
                n,
                max: source.len(),
            });
        }
        let mid = source.middle(n).expect("checked above");
        Ok(Template::new(mid.into_vec()))
    }

    pub fn len(&self) -> usize {
        self.preferred.len()
    }

    pub fn is_empty(&self) -> bool {
        self.preferred.is_empty()
    }

    #[inline]
    pub fn preferred(&self, pos: usize) -> Spin {
        self.preferred[pos]
    }

    pub fn as_slice(&self) -> &[Spin] {
        &self.preferred
    }

    pub fn to_sequence(&self) -> Option<Sequence> {
        Sequence::new(self.preferred.clone()).ok()
    }
}

pub fn odd_source() -> Sequence {
    decode_rle(ODD_SOURCE, Spin::Plus).expect("valid embedded source")
}

pub fn even_source() -> Sequence {
    decode_rle(EVEN_SOURCE, Spin::Plus).expect("valid embedded source")
}

/// The full length 119 skew-symmetric source.
pub fn skew_source() -> Sequence {
    let free = decode_rle(SKEW_SOURCE_FREE, Spin::Plus).expect("valid embedded source");
    expand_skew(free.as_slice()).expect("nonempty")
}

/// Template for a general search of length `n`: the middle `n` values of
/// the odd source (length 67) for odd `n`, of the even source (68) otherwise.
pub fn build_template(n: usize) -> Result<Template> {
    let (source, max) = if n % 2 == 1 {
        (odd_source(), ODD_SOURCE_LEN)
    } else {
        (even_source(), EVEN_SOURCE_LEN)
    };
    if n == 0 || n > max {
        return Err(Error::TemplateTooLong { n, max });
    }
    Template::from_middle(&source, n)
}

/// Template for a skew-symmetric search with `n_free` free values, i.e. length
/// `2 * n_free - 1`: the middle of the length 119 source. Because the cut is
/// centred on the source's centre, the result is itself skew-symmetric.
pub fn build_skew_template(n_free: usize) -> Result<Template> {
    let n = (2 * n_free).saturating_sub(1);
    if n_free == 0 || n > SKEW_SOURCE_LEN {
        return Err(Error::TemplateTooLong {
            n,
            max: SKEW_SOURCE_LEN,
        });
    }
    Template::from_middle(&skew_source(), n)
}
