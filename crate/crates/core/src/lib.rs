//! Computational toolkit for Legendrian knots on pages of open books in the
//! standard contact 3-sphere.
//!
//! The crate is organised bottom-up:
//!
//! - [`zlinalg`]: exact integer matrices, Smith normal form, kernel lattices.
//! - [`ribbon`]: open-book pages as disks with bands, curves, Dehn twists, stabilization.
//! - [`seifert`]: Seifert pairing of a page and the page-framing self-linking (= tb).
//! - [`stein`]: rotation numbers from the 2-handle chain complex and `c₁`.
//! - [`hfbook`]: tower / finite-summand bookkeeping for Heegaard Floer groups.
//! - [`sgengine`]: a fact/rule engine deriving support-genus intervals with traces.
//! - [`document`], [`commands`], [`verify`]: the TOML input format, the command
//!   layer used by the `sgkit` binary, and the bundled fixture checks.

pub mod commands;
pub mod document;
pub mod fixtures;
pub mod hfbook;
pub mod ribbon;
pub mod seifert;
pub mod sgengine;
pub mod stein;
pub mod verify;
pub mod zlinalg;

mod sign;

pub use sign::Sign;
pub use zlinalg::IntMatrix;
