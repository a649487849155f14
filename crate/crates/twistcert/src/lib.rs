//! Numerical exceptionality and spherical-twist certificates for torsion
//! sheaves on negative curve configurations.
//!
//! The library works over configurations made of chains of (-2)-curves and a
//! single (-1)-curve `D`. It decides whether a class `D + sum r_i C_i` is
//! numerically exceptional, enumerates all such classes, computes hom-space
//! dimensions between pure sheaves supported on the configuration, rewrites
//! filtrations of rigid sheaves, and constructs and verifies certificates
//! expressing an exceptional sheaf as a chain of spherical twists applied to
//! a line bundle on `D`.
//!
//! Modules:
//! - [`config`]: configurations and components;
//! - [`lattice`]: divisor classes, intersection pairing, Euler form, twists;
//! - [`rigidity`]: the window quadratic form, case classification, and class
//!   enumeration;
//! - [`sheaf`]: atomic sheaves (line bundles on subcurves, possibly with one
//!   thickened component) with symbolic-capable degrees;
//! - [`cohom`]: hom dimensions, exact and bounded, plus extension identities;
//! - [`factorization`]: filtration slots, perfectness, rewrite rules, and
//!   the shape catalogs;
//! - [`reducer`]: peeling, reduction trees, twist certificates, and the
//!   certificate verifier.
//!
//! All arithmetic is exact; there are no floating-point values anywhere.

pub mod cohom;
pub mod config;
pub mod error;
pub mod factorization;
pub mod lattice;
pub mod reducer;
pub mod rigidity;
pub mod sheaf;

pub use config::{Component, CurveConfig, Mode};
pub use error::{Error, Result};
pub use factorization::{CatalogEntry, Factorization, FactorSlot, PerfectnessReport};
pub use lattice::DivisorClass;
pub use reducer::{
    CheckItem, CheckStatus, PeelOption, ReductionNode, Strategy, TwistCertificate, TwistStep,
    VerifyReport,
};
pub use sheaf::AtomicSheaf;
