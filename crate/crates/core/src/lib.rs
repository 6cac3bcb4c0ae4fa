//! Exact lattice computations for moduli of sheaves on K3 surfaces.
//!
//! The crate covers the Mukai lattice of a K3 surface model, walls and
//! chambers of polarizations on an elliptic K3 with section, the Beauville
//! lattice of the Hilbert scheme `S^[n]`, the Mukai map θ (closed forms, the
//! rank recursion and an isometry certificate) and Donaldson polynomials via
//! the Fujiki relation.
//!
//! The arithmetic is generic over [`Scalar`]; the aliases below fix the exact
//! big-integer and big-rational instantiations used throughout.

pub mod check;
pub mod donaldson;
pub mod error;
pub mod hilbert;
pub mod json;
pub mod lattice;
pub mod mukai;
pub mod scalar;
pub mod theta;
pub mod walls;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use donaldson::SurfaceClass;
pub use error::{Error, Result};
pub use hilbert::HilbClass;
pub use lattice::QuadLattice;
pub use mukai::{ChernData, MukaiElement, SurfaceModel};
pub use scalar::{Field, Scalar};
pub use theta::{IsometryReport, ThetaTable};
pub use walls::{Polarization, WallClass};

/// Integral Mukai vector.
pub type MukaiVector = MukaiElement<BigInt>;
/// Mukai vector with rational coordinates (images of `iota`).
pub type RationalMukaiVector = MukaiElement<BigRational>;
/// Integral class in `H²(S^[n]; Z)`.
pub type HilbertClass = HilbClass<BigInt>;
/// Class in `H²(S^[n]; Q)`.
pub type RationalHilbertClass = HilbClass<BigRational>;
/// H²-class of the surface with rational coordinates.
pub type RationalSurfaceClass = SurfaceClass<BigRational>;
