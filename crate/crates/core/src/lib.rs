//! Certification of parametrized Jordan curves (Koch curves in particular)
//! as minimum sets of strictly subharmonic functions.
//!
//! The crate has two halves that check each other:
//!
//! * an **analytic pipeline** — closed-form bi-Hölder constants for Koch
//!   curves, the Ahlfors three-point constant they imply, Hölder exponents of
//!   the boundary conformal maps, and the resulting Łojasiewicz–Siciak
//!   exponent, ending in a certified yes/no verdict ([`constants`]);
//! * **empirical estimators** — Hölder ratio and Ahlfors constant measured
//!   directly on curve samples ([`estimators`]), and a discrete Leja-point
//!   surrogate for the Green function with pole at infinity together with a
//!   local decay-exponent fit ([`potential`]).
//!
//! [`koch`] builds the curves themselves: node sets, the natural
//! parametrization, and the closed polygon variant with Koch edges.

pub mod constants;
pub mod curve;
pub mod estimators;
pub mod geometry;
pub mod koch;
pub mod potential;
pub mod roots;

pub use curve::{Sample, SampledCurve};
pub use geometry::Point;
pub use koch::Angle;
