pub mod curvature;
pub mod diagram;
pub mod error;
pub mod exact;
pub mod liealg;
pub mod metric;
pub mod obstruction;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};

// Guide chapters, compiled so their snippets run under `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/liealg.md")]
    mod liealg {}
    #[doc = include_str!("../../../book/src/diagram.md")]
    mod diagram {}
    #[doc = include_str!("../../../book/src/metric.md")]
    mod metric {}
    #[doc = include_str!("../../../book/src/curvature.md")]
    mod curvature {}
    #[doc = include_str!("../../../book/src/obstruction.md")]
    mod obstruction {}
    #[doc = include_str!("../../../book/src/class-one.md")]
    mod class_one {}
    #[doc = include_str!("../../../book/src/verify.md")]
    mod verify {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
