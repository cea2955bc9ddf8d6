//! Faithful tropical matrix representations of finite-rank plactic monoids.
//!
//! The crate builds the map sending each word over `[n]` to a `2^n x 2^n`
//! upper triangular max-plus matrix indexed by subsets of `[n]`, decodes such
//! matrices back to tableaux, and uses the singleton block of the map to turn
//! identities that fail for upper triangular tropical matrices into explicit
//! plactic counterexamples.

pub mod cli;
pub mod error;
pub mod identity;
pub mod plactic;
pub mod representation;
pub mod subset;
pub mod tropical;

pub use error::{Error, Result};
pub use identity::Identity;
pub use plactic::{content, knuth_equivalent, TabParams, Tableau, Word};
pub use subset::{BlockOrder, Subset};
pub use tropical::{Label, Trop, TropMatrix};
