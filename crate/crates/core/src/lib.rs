//! Computational objects attached to hyperbolic surfaces and their moduli:
//! geodesic length spectra of cocompact Fuchsian groups, truncated Selberg
//! zeta values and the Polyakov density factor, Weil-Petersson Gram matrices
//! of quadratic differentials, discrete worldsheet Laplacians with
//! zeta-regularized determinants, finite cover towers with virtual
//! automorphisms, and rational determinant-line bundle weights.

pub mod hyperbolic;
pub mod spectrum;
pub mod zeta;
pub mod surd;
