pub mod algebra;
pub mod constructions;
pub mod degree_lab;
pub mod error;

pub use error::{Error, Result};
pub mod formulas;
pub mod proofs;
pub mod rng;
pub mod stats;
pub mod transforms;

// The guide's snippets run as doctests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/formulas.md")]
    mod formulas {}
    #[doc = include_str!("../../../book/src/proofs.md")]
    mod proofs {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/transforms.md")]
    mod transforms {}
    #[doc = include_str!("../../../book/src/degree-lab.md")]
    mod degree_lab {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
