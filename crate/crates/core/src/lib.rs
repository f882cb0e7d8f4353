//! Harmonic analysis and additive combinatorics on finite Abelian groups.
//!
//! The crate is organized around four layers:
//!
//! * [`abelian`] — finite Abelian groups given by a list of cyclic factor
//!   moduli, their elements, integer dilation, subgroup generation, and
//!   homomorphisms as integer matrices.
//! * [`harmonic`] — characters, the discrete Fourier transform (tensor
//!   decomposition over factors with a radix-2 fast path), `L_p` norms,
//!   spectral projections, Dirichlet kernels, and dyadic samplings of the
//!   Walsh and trigonometric systems.
//! * [`additive`] — sumset calculus, additive energy via convolution
//!   counting, and the exact integer inequalities that drive the energy
//!   machinery.
//! * [`operators`] — character-mapping operators between `L_p` spaces,
//!   energy-based lower-bound certificates for their operator norms, a
//!   step-by-step verifier for the certificate's inequality chain, numerical
//!   norm estimation, and `L_1` algebra homomorphisms with exact norms.
//!
//! Measure convention, fixed globally: groups carry Haar *probability*
//! measure, duals carry counting measure. Under this convention Parseval
//! holds with constant 1 and the additive energy of a character set equals
//! the fourth power of the `L_4` norm of its indicator's inverse transform.

pub mod abelian;
pub mod additive;
pub mod error;
pub mod harmonic;
pub mod operators;

pub use error::{Error, Result};
