//! Automorphism groups of surfaces `w² = F₁₀(x, y, z)` in `P(1,1,2,5)`.
//!
//! The pipeline reads an equation ([`wpoly`]), brings it to the form
//! `w² − Σ qᵢ zⁱ` ([`surface`]), turns the linear factors of the slices
//! into a labeled point configuration ([`pointcfg`]) and then either
//! solves diagonal character equations ([`charlattice`]) or searches for
//! Möbius symmetries ([`mobius`]). [`autgroup`] assembles the matrices and
//! names the group; [`analysis`] runs the whole chain.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod autgroup;
pub mod binary;
pub mod charlattice;
pub mod coeff;
pub mod error;
pub mod mat2;
pub mod mobius;
pub mod oracle;
pub mod pointcfg;
pub mod roots;
pub mod snf;
pub mod surface;
pub mod upoly;
pub mod wpoly;

pub use analysis::{analyze, analyze_form, Analysis};
pub use autgroup::{assemble, recognize_structure, AutGroup, Shape, StructureDescriptor};
pub use coeff::Coefficient;
pub use error::{Error, ErrorClass, ParseError, Result};
pub use mat2::Mat2;
pub use mobius::MobiusType;
pub use surface::{complete_square, validate, SurfaceForm, ValidityReport};
pub use wpoly::{parse_polynomial, WPolynomial};

/// Numerical tolerances shared by the floating-point stages.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Chordal distance below which two roots are the same point.
    pub cluster: f64,
    /// Relative matrix distance below which two group elements agree.
    pub matching: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            cluster: 1e-6,
            matching: 1e-7,
        }
    }
}
