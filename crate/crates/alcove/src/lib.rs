//! Discrete harmonic analysis on a Weyl alcove.
//!
//! The crate builds, for an irreducible reduced crystallographic root system
//! `R_0` and an integer scale `c > 1`:
//!
//! * exact root-system data and the (extended) affine Weyl group
//!   `W = W_0 ⋉ t(cP)` with lengths, inversion sets and Bruhat order;
//! * the expansion coefficients of products `T_w X^ν` in the double affine
//!   Hecke algebra at critical level, via recurrences or an independent
//!   normal-form engine;
//! * the difference-reflection and integral-reflection actions on lattice
//!   functions, the triangular intertwiner between them, discrete Dunkl-type
//!   operators and the integrable Laplacians on the alcove `P_c^+`;
//! * the Bethe-type spectral problem: strictly convex Morse functions, their
//!   Newton minimization with analytic Hessians, and certified spectral
//!   points;
//! * periodic Macdonald spherical functions, their orthogonality, and the
//!   Gaudin-type quadratic norm formula.
//!
//! Root-system combinatorics is exact (integer coordinates, `BigRational`
//! Cartesian data); Hecke expansion coefficients are generic over the
//! coefficient ring so that they can be run either in `Complex64` or in the
//! exact polynomial ring `Z[q_s, q_l]`; analysis is done in `f64`/`Complex64`.

pub mod affine_weyl;
pub mod bethe;
pub mod hecke;
pub mod lattice_ops;
pub mod qpoly;
mod ratlin;
pub mod root_system;
pub mod spectral;
pub mod tau;

pub use affine_weyl::{Alcove, AffineRoot, AffineWeylElement, WeylData};
pub use bethe::{MorseProblem, SpectralPoint};
pub use hecke::{CoeffCache, CoeffTable};
pub use lattice_ops::{LaplacianSymmetric, LatticeFunction, LatticeOps};
pub use root_system::{Coweight, RootSystem, TypeLabel, Weight};
pub use spectral::{InnerProductWeights, SphericalFunction, VerifyReport};
pub use tau::TauParams;

/// Exact scalar used for all root-system geometry.
pub type Rat = num_rational::BigRational;
/// Complex double used for all lattice-function analysis.
pub type C64 = num_complex::Complex64;

/// Coefficient tables evaluated numerically.
pub type CoeffTableNum = hecke::CoeffTable<C64>;
/// Coefficient tables in the exact polynomial ring `Z[q_s, q_l]`.
pub type CoeffTableExact = hecke::CoeffTable<qpoly::QPoly>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid root system type {0}_{1}")]
    InvalidType(char, usize),
    #[error("scale parameter c must be an integer > 1, got {0}")]
    InvalidScale(i64),
    #[error("point {0:?} lies outside the window of the lattice function")]
    OutOfWindow(Weight),
    #[error("window is not downward closed below {0:?}")]
    NotDownwardClosed(Weight),
    #[error("weight {0:?} is not in the generating set P_theta \\ {{0}}")]
    NotGenerator(Weight),
    #[error("weight {0:?} is not in the fundamental alcove")]
    NotInAlcove(Weight),
    #[error("weight is neither minuscule nor quasi-minuscule")]
    NotMinusculeClass,
    #[error("tau parameters out of admissible range: tau^2 = ({0}, {1})")]
    TauRange(f64, f64),
    #[error("spectral parameter too close to a non-regular point (margin {0:e})")]
    NonRegular(f64),
    #[error("product formula denominator below 1e-10 (root-of-unity tau)")]
    PoincarePole,
    #[error("coefficient table requested for length {0}, cap is {1}")]
    CoeffLengthCap(usize, usize),
    #[error("Newton iteration did not converge after {iters} steps (residual {residual:e})")]
    NoConvergence { iters: usize, residual: f64, trace: Vec<f64> },
    #[error("solution failed certification: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
