//! Cohomology of pure one-dimensional sheaves on a configuration.
//!
//! Two independent computations of `h0 = dim Hom(A, B)` for reduced atoms
//! (an exact linear system and a tree count), Serre duality for `h2`, the
//! Euler form for `h1`, presentation bounds for thickened atoms, and the
//! extension consistency identities.

mod closed;
mod dims;
mod frac;
mod mukai;
mod oracle;

pub use closed::closed_form_h0;
pub use dims::{hom_dims, presentations, DimRange, HomDims};
pub use mukai::{mukai_check, mukai_data, MukaiData};
pub use oracle::{oracle_h0, oracle_h0_with_scalars, GluingScalars};
