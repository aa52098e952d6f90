//! Tandem duplication and contraction over small alphabets: string
//! primitives, exact reachability search, the alternating-string decision
//! procedure, square-free generation and the block-exemplar encoding.

pub mod alt;
pub mod error;
pub mod reduction;
pub mod rewrite;
pub mod solver;
pub mod squarefree;
pub mod strings;

pub use error::{Error, Result};
pub use strings::{Symbol, TDString};
