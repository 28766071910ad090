//! Exact arithmetic for polynomial digit systems over the integers.
//!
//! The crate constructs, merges, and verifies number systems modulo monic
//! integer polynomials: quotient rings `Z[x]/(f)` with digit sets and their
//! backward-division dynamics, strong Groebner bases of two-generator ideals
//! in `Z[x]`, the Chinese-Remainder merge of two digit systems into one
//! modulo the product polynomial, witness-set verification of the finite
//! expansion property, and simultaneous number systems in products of
//! quotient rings.

pub mod cns;
pub mod crt_merge;
pub mod error;
pub mod gb_ideal;
mod hnf;
pub mod intpoly;
pub mod quotient;
pub mod simultaneous;

pub use error::{Error, Result};
pub use intpoly::IntPoly;
pub use quotient::{DigitCheck, DigitSystem, DigitSystemFile, Element, Expansion, QuotientRing};
