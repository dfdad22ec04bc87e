use super::{Sequence, Spin};

/// One of the eight energy-preserving transformations of a sequence.
///
/// Applied in the fixed order: reverse, then negate the odd-numbered
/// positions (1, 3, 5, ... counting from one) of the reversed sequence,
/// then negate everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SymmetryElement {
    pub reverse: bool,
    pub negate_all: bool,
    pub negate_odd: bool,
}

impl SymmetryElement {
    pub const IDENTITY: SymmetryElement = SymmetryElement {
        reverse: false,
        negate_all: false,
        negate_odd: false,
    };

    pub fn new(reverse: bool, negate_all: bool, negate_odd: bool) -> Self {
        SymmetryElement {
            reverse,
            negate_all,
            negate_odd,
        }
    }

    /// All eight elements, identity first.
    pub fn all() -> impl Iterator<Item = SymmetryElement> {
        (0..8u8).map(|b| SymmetryElement::new(b & 1 != 0, b & 2 != 0, b & 4 != 0))
    }

    /// The seven non-identity elements.
    pub fn non_identity() -> impl Iterator<Item = SymmetryElement> {
        Self::all().skip(1)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Source position read by output position `i` (zero-based).
    #[inline]
    pub fn source(&self, i: usize, n: usize) -> usize {
        if self.reverse {
            n - 1 - i
        } else {
            i
        }
    }

    /// Sign applied to the value read for output position `i` (zero-based).
    #[inline]
    pub fn sign(&self, i: usize) -> Spin {
        // one-based odd positions are zero-based even ones
        let flip = self.negate_all ^ (self.negate_odd && i % 2 == 0);
        if flip {
            Spin::Minus
        } else {
            Spin::Plus
        }
    }

    /// The element equal to applying `self` and then `then`, on length `n`.
    ///
    /// Depends on the parity of `n`: for even `n`, reversing maps odd
    /// positions to even ones, which turns an odd-position negation into an
    /// extra global negation.
    pub fn then(&self, then: SymmetryElement, n: usize) -> SymmetryElement {
        SymmetryElement {
            reverse: self.reverse ^ then.reverse,
            negate_odd: self.negate_odd ^ then.negate_odd,
            negate_all: self.negate_all
                ^ then.negate_all
                ^ (then.reverse && self.negate_odd && n % 2 == 0),
        }
    }

    pub fn apply(&self, s: &Sequence) -> Sequence {
        let n = s.len();
        let out = (0..n)
            .map(|i| self.sign(i) * s[self.source(i, n)])
            .collect();
        Sequence::new(out).expect("length preserved")
    }
}
