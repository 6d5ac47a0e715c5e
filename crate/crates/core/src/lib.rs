//! Exact computer-algebra kernels for reconstructing the ring of modular
//! forms with characters for O(2,4;Z): sparse polynomials, elimination,
//! the K3 Weierstrass pipeline, irreducibility certificates, Hilbert series,
//! finite groups over F2 and symmetric-function identities.

pub mod arith;
pub mod elimination;
pub mod pipeline;
pub mod irreducibility;
pub mod graded;
pub mod group;
pub mod symfunc;
