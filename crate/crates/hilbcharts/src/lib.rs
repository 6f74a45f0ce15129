//! Explicit affine charts of the Hilbert scheme of n points of an affine
//! scheme, presented as ideals in commuting-matrix variables, together with
//! the exact symbolic machinery needed to verify their closed-form special
//! cases: the generic chart, points on a localized line, and degenerate
//! families with fixed Hilbert function.
//!
//! The crate is organized around:
//!
//! - [`ring`]: exact sparse polynomials over Q or F_p.
//! - [`matrixalg`]: matrices of polynomials, companion matrices,
//!   determinants, resultants.
//! - [`groebner`]: a Buchberger engine for normal forms, elimination and
//!   free-variable shape checks.
//! - [`charts`]: the chart ideal of a presented algebra, a point count `n`
//!   and a section.
//! - [`commutant`]: field-level cyclic-vector and commutant computations.
//! - [`line`]: the Hilbert scheme of points on a localized line.
//! - [`iarrobino`]: degree/slack arithmetic and degenerate ideal families.
//! - [`points`]: finite-field brute-force point enumeration, two ways.
//! - [`document`]: JSON documents for the CLI surface.
//! - [`verify`]: the named verification suites run by the CLI.

pub mod charts;
pub mod commutant;
pub mod document;
pub mod groebner;
pub mod iarrobino;
pub mod line;
pub mod matrixalg;
pub mod points;
pub mod ring;
pub mod verify;
