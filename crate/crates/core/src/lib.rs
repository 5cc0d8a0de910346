//! Exact-arithmetic decision procedures for pure discrete spectrum of
//! substitution tilings.
//!
//! * [`algebra`]: big rationals, polynomials, `Q(λ)`, `Q(√d)`, Pisot tests.
//! * [`substitution`]: symbolic substitutions, languages, Arnoux–Rauzy maps.
//! * [`balanced`]: balanced pairs and the balanced pair algorithm.
//! * [`verdicts`]: the one-dimensional certification pipelines.
//! * [`apcomplex`]: the collared Anderson–Putnam graph and its homology.
//! * [`overlap`]: planar overlap-coincidence closure with exact geometry.

pub mod algebra;
pub mod apcomplex;
pub mod balanced;
pub mod overlap;
pub mod substitution;
pub mod verdicts;
