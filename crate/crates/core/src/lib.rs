//! Schur multiple zeta values: skew tableaux, the stuffle word algebra,
//! truncated and numeric evaluation, weighted sums, 2-posets and sum formulas.

pub mod combinat;
pub mod error;
pub mod formulas;
pub mod levels;
pub mod mixed;
pub mod numerics;
pub mod posets;
pub mod reference;
pub mod schur;
pub mod shapes;
pub mod tableaux;
pub mod weighted;
pub mod words;

pub use error::{Error, Result};
