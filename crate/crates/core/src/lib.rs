//! Exact 2-adic arithmetic for the immersion problem of complex projective
//! space: valuations, truncated power series over the rationals, congruence
//! systems modulo powers of two, the Sigrist–Suter and Crabb conditions, and
//! the immersion/nonimmersion tables built on them.

pub mod atlas;
pub mod cli;
pub mod conditions;
pub mod congruence;
pub mod dyadic;
pub mod series;
pub mod verify;
