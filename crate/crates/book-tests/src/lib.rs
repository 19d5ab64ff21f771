//! Compiles and runs the code blocks of the guide as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/posets.md")]
pub mod posets {}
#[doc = include_str!("../../../book/src/ehrhart.md")]
pub mod ehrhart {}
#[doc = include_str!("../../../book/src/partitions.md")]
pub mod partitions {}
#[doc = include_str!("../../../book/src/toric.md")]
pub mod toric {}
#[doc = include_str!("../../../book/src/complex.md")]
pub mod complex {}
#[doc = include_str!("../../../book/src/verify.md")]
pub mod verify {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
