//! Compiles every Rust snippet of the guide in `book/` as a doctest.
//!
//! mdbook cannot resolve workspace dependencies when it tests snippets, so each chapter
//! is pulled in as the documentation of an empty module instead.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/spaces.md")]
pub mod spaces {}

#[doc = include_str!("../../../book/src/quasi-sup.md")]
pub mod quasi_sup {}

#[doc = include_str!("../../../book/src/algebra.md")]
pub mod algebra {}

#[doc = include_str!("../../../book/src/properties.md")]
pub mod properties {}

#[doc = include_str!("../../../book/src/operators.md")]
pub mod operators {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/reproducing.md")]
pub mod reproducing {}
