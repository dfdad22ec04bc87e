//! Exact search for low autocorrelation binary sequences.
//!
//! The crate is organised the way the search uses it:
//!
//! * [`sequence`]: `±1` sequences, correlations, energy, merit factor,
//!   run-length notation, the eight-element symmetry group and skew symmetry;
//! * [`bounds`]: incrementally maintained lower bounds on partial sequences;
//! * [`templates`]: embedded long sequences whose middles guide value order;
//! * [`symmetry`]: lex-leader checks relative to a template;
//! * [`search`]: the depth-first branch and bound;
//! * [`oracle`]: brute-force enumeration for cross-checking.
//!
//! ```
//! use labs::search::{solve, SearchConfig};
//!
//! let r = solve(&SearchConfig::new(13))?;
//! assert_eq!(r.energy, 6);
//! # Ok::<(), labs::Error>(())
//! ```

pub mod bounds;
mod error;
pub mod oracle;
pub mod search;
pub mod sequence;
pub mod symmetry;
pub mod templates;

pub use error::{Error, Result};

// The guide's code blocks run as doctests of this crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/notation.md")]
    mod notation {}
    #[doc = include_str!("../../../book/src/symmetries.md")]
    mod symmetries {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/templates.md")]
    mod templates {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
}
