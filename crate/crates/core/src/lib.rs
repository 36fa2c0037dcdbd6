//! Binary matroid computation kernel.
//!
//! The crate is organised bottom-up: [`gf2`] provides bit-packed linear
//! algebra, [`matroid`] the labelled binary matroid and its minors,
//! [`connect`] the connectivity function and separations, [`iso`] canonical
//! forms and isomorphism witnesses, [`enumerate`] extension enumeration and
//! minor search, [`catalog`] the named matroids, and [`verify`] the registry
//! of reproducible checks.

pub mod catalog;
pub mod connect;
pub mod enumerate;
pub mod gf2;
pub mod iso;
pub mod matroid;
pub mod verify;

pub use gf2::BitMatrix;
pub use matroid::{BinaryMatroid, ElementSet, Label, MatroidError};
