//! Ordinals below ε₀ and finite witness engines for Ramsey-type principles.

pub mod adjacent;
pub mod encoding;
pub mod error;
pub mod evalfn;
pub mod fundamental;
pub mod ordinal;
pub mod parse;
pub mod ramsey;
pub mod subsets;
pub mod universe;
pub mod verify;

pub use error::{Error, Result};
pub use evalfn::EvalFn;
pub use fundamental::FiniteSet;
pub use ordinal::{ComparisonData, MaxData, Ordinal};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ordinals.md")]
    mod ordinals {}
    #[doc = include_str!("../../../book/src/largeness.md")]
    mod largeness {}
    #[doc = include_str!("../../../book/src/encoding.md")]
    mod encoding {}
    #[doc = include_str!("../../../book/src/ramsey.md")]
    mod ramsey {}
    #[doc = include_str!("../../../book/src/tree.md")]
    mod tree {}
    #[doc = include_str!("../../../book/src/adjacent.md")]
    mod adjacent {}
    #[doc = include_str!("../../../book/src/verify.md")]
    mod verify {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
