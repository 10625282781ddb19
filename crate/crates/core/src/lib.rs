//! Ordered homomorphism complexes between ordered simplicial complexes, the
//! cointerval condition on targets, and the minimal linear cellular
//! resolutions of ordered homomorphism ideals they support.

pub mod cointerval;
pub mod complexes;
pub mod error;
pub mod homcomplex;
pub mod homology;
pub mod monomial;
pub mod nonnesting;
pub mod resolution;
pub mod vertex_set;

pub use complexes::{revlex_set_cmp, Complex, ComplexFile};
pub use error::{Error, Result};
pub use homcomplex::{Cell, Hom, PComplex, RestrictionSpec};
pub use monomial::Monomial;
pub use vertex_set::VertexSet;
