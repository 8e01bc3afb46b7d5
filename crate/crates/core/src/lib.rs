//! Encoding and decoding of one-point Hermitian codes.
//!
//! The code `C = { (f(P_1), ..., f(P_n)) | f in L(m P_inf) }` is built from the
//! Hermitian curve `y^q + y = x^(q+1)` over `GF(q^2)`; it has length `n = q^3`,
//! dimension `k = m - g + 1` and designed distance `d* = n - m`, where
//! `g = q(q-1)/2` is the genus.
//!
//! Two decoders that correct beyond `(d* - 1)/2` errors are provided:
//!
//! * [`gs`] — Guruswami–Sudan list decoding. The interpolation step is phrased
//!   as finding a minimal row in the `GF(q^2)[x]`-row space of an explicit
//!   polynomial matrix, solved by weak-Popov-form reduction; the root-finding
//!   step works on truncated power series.
//! * [`power`] — Power decoding. Gao-style key equations for the powers of the
//!   received word are solved through the same module-minimisation kernel, and
//!   the message is recovered by power-series division.
//!
//! Supporting layers: exact `GF(q^2)` arithmetic ([`field`]), dense univariate
//! polynomials ([`poly`]), the curve/ring layer ([`curve`]), weighted module
//! minimisation ([`modmin`]), power-series conversions ([`series`]) and root
//! finding ([`roots`]). [`codec`] holds the encoder and the error channel,
//! [`sim`] a Monte-Carlo simulation harness used by the CLI.

pub mod codec;
pub mod curve;
pub mod error;
pub mod field;
pub mod gs;
pub mod linalg;
pub mod modmin;
pub mod poly;
pub mod power;
pub mod report;
pub mod roots;
pub mod series;
pub mod sim;

pub use codec::CodeParams;
pub use curve::{CurveParams, Place, RingElement, ZPoly};
pub use error::{Error, Result};
pub use field::{Fel, FieldContext};
pub use poly::UniPoly;
pub use report::{DecodeReport, PhaseTimings};
