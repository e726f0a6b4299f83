//! Exact S-lemma certificates, quartic multipliers and quadratic-module
//! stability checks over ℚ.
//!
//! Everything is computed with exact rational arithmetic. Results that rest
//! on sampling are reported as [`certify::VerdictKind::Unknown`] rather than
//! guessed.

pub mod acceptance;
pub mod certify;
pub mod counterforge;
pub mod par;
pub mod poly;
pub mod quadform;
pub mod random;
pub mod rational;
pub mod s4solve;
pub mod slemma;
pub mod stability;

pub use poly::{parse, Polynomial};
pub use rational::Rational;
