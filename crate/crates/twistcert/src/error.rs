//! Crate-wide error type.
//!
//! Every fallible operation in the library returns [`Result`]. Variants are
//! grouped by the module that raises them; the CLI maps parse-shaped variants
//! to exit code 2 and check failures to exit code 1.

use crate::config::Component;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    // -- configuration -------------------------------------------------
    /// An attachment index lies outside its chain (valid range `1..=length`).
    #[error("attachment position {position} is out of range for a chain of length {length}")]
    AttachmentOutOfRange { position: usize, length: usize },

    /// The same chain component is listed twice as an attachment point.
    #[error("duplicate attachment to component {position} of chain {chain}")]
    DuplicateAttachment { chain: usize, position: usize },

    /// A component name does not resolve in the given configuration.
    #[error("unknown component `{0}`")]
    UnknownComponent(String),

    /// A strict-mode rule is violated; the string names the rule.
    #[error("strict configuration rule violated: {0}")]
    StrictRuleViolated(String),

    // -- lattice --------------------------------------------------------
    /// A class's chain vectors do not match the configuration's chains.
    #[error("class shape mismatch: {0}")]
    ShapeMismatch(String),

    /// Euler pairing of sheaf classes requires nonnegative coefficients.
    #[error("not a torsion sheaf class: {0}")]
    NotSheafClass(String),

    /// Exceptionality test requires coefficient 1 on the (-1)-curve.
    #[error("class has coefficient {d} on the (-1)-curve; exceptionality is defined for coefficient 1")]
    DCoefficientNotOne { d: i64 },

    /// Twist requires a numerically spherical class.
    #[error("twist class must be numerically spherical: {0}")]
    NotSpherical(String),

    // -- rigidity ---------------------------------------------------------
    /// A multiplicity vector entry must be positive.
    #[error("multiplicity vector entry r[{index}] = {value} is not positive")]
    NonPositiveEntry { index: usize, value: i64 },

    /// A marked-position index must lie inside the vector.
    #[error("marked position {k} is out of range for a vector of length {n}")]
    MarkedPositionOutOfRange { k: usize, n: usize },

    /// Case classification is defined only on vectors with f = 0.
    #[error("vector is not tight: f = {f} (case classification needs f = 0)")]
    NotTight { f: i64 },

    /// Case classification and peeling cover chains of length at most 6.
    #[error("chain window of length {n} exceeds the supported bound 6")]
    WindowTooLong { n: usize },

    /// A class's support on some chain is not a contiguous window containing
    /// the attachment.
    #[error("chain {chain}: support must be a contiguous window containing the attachment ({detail})")]
    BadSupportWindow { chain: usize, detail: String },

    // -- cohomology -------------------------------------------------------
    /// Operation defined only for reduced sheaves.
    #[error("operation requires reduced sheaves (no thickened components)")]
    ThickenedInput,

    /// Operation requires concrete integer degrees.
    #[error("operation requires concrete degrees; `{0}` is symbolic")]
    SymbolicDegree(String),

    /// The sheaf's thickening pattern has no presentation catalog entry.
    #[error("no presentation known for thickening pattern: {0}")]
    UnknownThickening(String),

    /// Hypotheses of a conditional identity are not met.
    #[error("hypotheses not satisfied: {0}")]
    HypothesesUnmet(String),

    /// A required hom dimension is not pinned to a single value.
    #[error("hom dimension not determinate: {0}")]
    Indeterminate(String),

    // -- sheaf data ---------------------------------------------------------
    /// An atom's support is empty or not connected in the configuration.
    #[error("invalid sheaf support: {0}")]
    BadSupport(String),

    /// An atom's degree map keys must equal its support.
    #[error("degree map does not match support: {0}")]
    BadDegreeMap(String),

    /// Thickening multiplicities other than 2, or on the (-1)-curve.
    #[error("invalid thickening: {0}")]
    BadThickening(String),

    // -- factorization ------------------------------------------------------
    /// Slot index outside the factorization.
    #[error("slot position {position} is out of range for a factorization with {len} slots")]
    PositionOutOfRange { position: usize, len: usize },

    /// A rewrite step's precondition fails.
    #[error("rewrite precondition failed: {0}")]
    RewriteObstructed(String),

    /// No extension-construction rule applies to the given sub/quotient pair.
    #[error("no extension rule applies: {0}")]
    NoExtensionRule(String),

    /// Pattern string not in the shape catalog.
    #[error("unknown catalog pattern `{0}` (known: 12, 123, 12321, 123321)")]
    UnknownPattern(String),

    // -- reducer -------------------------------------------------------------
    /// The reducer only operates on strict configurations.
    #[error("reduction requires a strict configuration: {0}")]
    RelaxedConfigRejected(String),

    /// Input class to the reducer must be numerically exceptional.
    #[error("class is not numerically exceptional: {0}")]
    NotExceptional(String),

    /// Peeling the bare (-1)-curve class is a no-op.
    #[error("nothing to peel: the class is already the bare (-1)-curve")]
    NothingToPeel,

    // -- documents ------------------------------------------------------------
    /// A JSON document failed to parse or violates its schema.
    #[error("invalid document: {0}")]
    InvalidDocument(String),

    /// Violation of an internal invariant that is mathematically guaranteed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Shorthand for an [`Error::UnknownComponent`] from a component value.
    pub(crate) fn unknown_component(c: Component) -> Self {
        Error::UnknownComponent(c.to_string())
    }
}
