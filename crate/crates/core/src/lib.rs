//! Nonlinear (q+1)-ary evaluation codes over the alphabet F_q ∪ {∞}.
//!
//! The crate builds codes by evaluating rational functions of a curve's
//! function field at all of its rational places, adjoining the all-∞
//! word, and provides the supporting machinery: small finite fields,
//! curve models with places and divisors, zeta/L-polynomial point
//! counts, Riemann-Roch spaces, code construction with distance audits,
//! and size bounds with comparison tables.

pub mod bounds;
pub mod codes;
pub mod curve;
pub mod gf;
pub mod linalg;
pub mod poly;
pub mod rrspace;
pub mod series;
pub mod zeta;

pub use curve::{CurveModel, Divisor, FunctionElt, Place, Sym};
pub use gf::FieldSpec;
pub use poly::Poly;
