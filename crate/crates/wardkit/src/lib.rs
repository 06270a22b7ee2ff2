//! wardkit: division tables of finite groups and loops.
//!
//! The crate centres on the operation `x ∘ y = x · y⁻¹` on a finite group
//! (and its loop-theoretic generalisations):
//!
//! * [`algebra`] - finite magmas, groups, subgroups, cosets, a stock catalogue;
//! * [`ward`] - the division quasigroup of a group, axiom checks, and the
//!   reconstruction of the group from the quasigroup;
//! * [`table`] - coset orderings and the block-circulant shape of the
//!   resulting tables;
//! * [`pattern`] - inverse patterns, their completion problems and the
//!   feasibility search with refutation witnesses;
//! * [`loops`] - Moufang loops, doubled groups and division tables with
//!   reversed-circulant blocks;
//! * [`spectral`] - block-Fourier reduction of group matrices over a cyclic
//!   normal subgroup, with induced representations and character extraction.

pub mod algebra;
pub mod error;
pub mod io;
pub mod loops;
pub mod pattern;
pub mod perm;
pub mod spectral;
pub mod table;
pub mod ward;

pub use error::{Error, Result};
pub use spectral::Scalar;

/// Double-precision complex scalar, the default for the spectral module.
pub type Complex64 = num_complex::Complex<f64>;
/// Fourier conjugation data at the default precision.
pub type FourierBlock64 = spectral::FourierBlock<f64>;
/// Partially diagonalized group matrix at the default precision.
pub type SpectralForm64 = spectral::SpectralForm<f64>;
/// Character table at the default precision.
pub type CharacterTable64 = spectral::CharacterTable<f64>;
