//! Exact computation of Jones polynomials of 2-bridge links.
//!
//! A 2-bridge link is given by a rational number `p/q`, or equivalently by
//! a positive or an even continued fraction of it. This crate provides
//!
//! * [`cfrac`]: exact rationals, positive and even continued fraction
//!   expansions, numerators and the sign/type sequences of even expansions;
//! * [`laurent`]: Laurent polynomials in `t^{1/2}` ([`HLPoly`]) and
//!   multilinear polynomials in tile variables ([`YPoly`]);
//! * [`snake`]: snake graphs, perfect matchings and full F-polynomials;
//! * [`jones`]: three independent Jones polynomial engines (skein
//!   recursion, specialized F-polynomial, direct continued fraction
//!   formula) and closed forms for degree, sign and boundary coefficients.

pub mod cfrac;
pub mod enumerate;
pub mod error;
pub mod jones;
pub mod laurent;
pub mod snake;

pub use cfrac::{EvenCF, PositiveCF, Rat, Sign, SignSeq, TypeSeq};
pub use error::{Error, Result};
pub use jones::{Engine, JonesResult};
pub use laurent::{HLPoly, HalfInt, YPoly};
pub use snake::{Matching, SnakeGraph, Step};
