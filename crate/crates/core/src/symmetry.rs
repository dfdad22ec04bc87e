//! Lex-leader symmetry breaking relative to a template.
//!
//! Every sequence has up to eight equivalent images under
//! [`SymmetryElement`]. The search keeps only the image that is least in the
//! lexicographic order of *primed* values, `s'_i = t_i s_i`, where `t` is the
//! template and `+1` sorts before `-1`. Under that order the template itself
//! (primed: all `+1`) is the least assignment there is, so symmetry breaking
//! never rejects the branch the value ordering explores first.
//!
//! One check exists per non-identity element `g`: `s' ⪯ (g s)'`.

use crate::error::{Error, Result};
use crate::sequence::{is_skew, Sequence, Spin, SymmetryElement};
use crate::templates::Template;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexStatus {
    Satisfied,
    Violated,
    /// The comparison reaches an unassigned position before it is decided.
    Undetermined,
}

/// Maps each assigned value to primed coordinates; an involution.
pub fn transform_by_template(
    partial: &[Option<Spin>],
    template: &Template,
) -> Result<Vec<Option<Spin>>> {
    if partial.len() != template.len() {
        return Err(Error::LengthMismatch {
            expected: template.len(),
            got: partial.len(),
        });
    }
    Ok(partial
        .iter()
        .zip(template.as_slice())
        .map(|(s, &t)| s.map(|s| s * t))
        .collect())
}

/// One lex-leader constraint `s' ⪯ (g s)'`.
#[derive(Debug, Clone, Copy)]
pub struct LexLeaderCheck<'t> {
    pub symmetry: SymmetryElement,
    pub template: &'t Template,
}

impl LexLeaderCheck<'_> {
    pub fn evaluate(&self, partial: &[Option<Spin>]) -> LexStatus {
        let n = partial.len();
        let g = self.symmetry;
        for (i, &own) in partial.iter().enumerate() {
            let (Some(own), Some(other)) = (own, partial[g.source(i, n)]) else {
                return LexStatus::Undetermined;
            };
            let image = g.sign(i) * other;
            if own != image {
                // primed values differ; +1 sorts first
                return if own * self.template.preferred(i) == Spin::Plus {
                    LexStatus::Satisfied
                } else {
                    LexStatus::Violated
                };
            }
        }
        LexStatus::Satisfied
    }
}

/// Free-function form of [`LexLeaderCheck::evaluate`].
pub fn lex_leader_satisfied(partial: &[Option<Spin>], check: &LexLeaderCheck<'_>) -> LexStatus {
    check.evaluate(partial)
}

/// Whether the lex-leader checks run at a node of the given depth, counted
/// in assigned variables: even depths up to `n / 2`.
pub fn should_check(depth: usize, n: usize) -> bool {
    depth % 2 == 0 && depth <= n / 2
}

/// The active lex-leader checks for one problem instance.
#[derive(Debug, Clone)]
pub struct SymmetryBreaker {
    template: Template,
    symmetries: Vec<SymmetryElement>,
}

impl SymmetryBreaker {
    /// All seven non-identity checks.
    pub fn new(template: Template) -> Self {
        SymmetryBreaker {
            template,
            symmetries: SymmetryElement::non_identity().collect(),
        }
    }

    /// Only the checks whose symmetry maps skew-symmetric sequences of this
    /// length to skew-symmetric sequences, found by probing.
    pub fn for_skew(template: Template) -> Self {
        let n = template.len();
        let mut probes: Vec<Sequence> = Vec::new();
        if let Some(t) = template.to_sequence().filter(is_skew) {
            probes.push(t);
        }
        let n_free = n.div_ceil(2);
        for pattern in [0b1011_0010_u64, 0b0110_1101] {
            let free: Vec<Spin> = (0..n_free)
                .map(|i| Spin::from_sign(if pattern >> (i % 8) & 1 == 1 { 1 } else { -1 }))
                .collect();
            probes.push(crate::sequence::expand_skew(&free).expect("nonempty"));
        }
        let symmetries = SymmetryElement::non_identity()
            .filter(|g| probes.iter().all(|p| is_skew(&g.apply(p))))
            .collect();
        SymmetryBreaker {
            template,
            symmetries,
        }
    }

    pub fn template(&self) -> &Template {
        &self.template
    }

    pub fn symmetries(&self) -> &[SymmetryElement] {
        &self.symmetries
    }

    pub fn checks(&self) -> impl Iterator<Item = LexLeaderCheck<'_>> {
        self.symmetries.iter().map(|&symmetry| LexLeaderCheck {
            symmetry,
            template: &self.template,
        })
    }

    /// `Violated` if any check is violated, `Satisfied` if all are.
    pub fn evaluate(&self, partial: &[Option<Spin>]) -> LexStatus {
        let mut all_satisfied = true;
        for check in self.checks() {
            match check.evaluate(partial) {
                LexStatus::Violated => return LexStatus::Violated,
                LexStatus::Undetermined => all_satisfied = false,
                LexStatus::Satisfied => {}
            }
        }
        if all_satisfied {
            LexStatus::Satisfied
        } else {
            LexStatus::Undetermined
        }
    }

    pub fn accepts(&self, s: &Sequence) -> bool {
        let partial: Vec<Option<Spin>> = s.iter().map(Some).collect();
        self.evaluate(&partial) == LexStatus::Satisfied
    }
}
