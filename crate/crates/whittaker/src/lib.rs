//! Exact computer algebra for the Whittaker-pair calculus on split reductive
//! Lie algebras over ℚ.
//!
//! The crate is organised in layers:
//!
//! * [`ratlin`] — exact rational linear algebra: matrices, canonical subspaces
//!   (reduced row echelon bases), affine solving, quotients.
//! * [`poly`] — exact univariate polynomials over ℚ, used for minimal
//!   polynomials of gradings.
//! * [`liealg`] — split reductive Lie algebras: Chevalley bases for the types
//!   A–G, classical matrix realizations (`sl`, `gl`, `sp`, `so`), gradings by
//!   rational semisimple elements, centralizers, Weyl machinery and exact
//!   `exp(ad X)` automorphisms.
//! * [`pairs`] — Whittaker pairs `(S, φ)` and triples `(S, φ, φ′)`: the form
//!   `ω_φ`, the nilpotent datum `n_{S,φ}`, Jacobson–Morozov triples, the
//!   neutral decomposition `S = h + Z`, and the predicates (neutral, standard,
//!   Levi-distinguished, domination) together with the index `in(S, φ)`.
//! * [`deform`] — one-parameter deformations `H + tZ`: critical and
//!   quasi-critical values, snapshots `(u_t, v_t, w_t, n_t, l_t, r_t)`,
//!   verified structural lemmas, and the auxiliary direction `Z′` with its
//!   stopping time `T`.
//! * [`orbits`] — nilpotent orbit labels (Jordan partitions), the closure
//!   (dominance) order, principal-in-Levi and distinguished predicates, and
//!   the transport solver for the single-step ordering on orbits.
//! * [`expand`] — symbolic Fourier-coefficient expansions: the `CoeffExpr`
//!   tree, isotropic refinement and root exchange, deformation steps, the
//!   full reduction driver with its certificate, the integral transform
//!   between comparable pairs, and the closed-form expansions for Heisenberg
//!   parabolics, `gl_n` and `sp_4`.
//! * [`cli`] — the command line front end used by the `whittaker` binary.
//!
//! All arithmetic is exact (arbitrary-precision rationals); nothing in the
//! crate uses floating point. All public values are immutable and safe to
//! share between threads.

pub mod ratlin;
pub mod poly;
pub mod liealg;
pub mod pairs;
pub mod deform;
pub mod orbits;
pub mod expand;
pub mod cli;

use thiserror::Error;

/// Crate-wide error type.
///
/// The variants are grouped by layer; [`Error::TheoremViolation`] is special:
/// it signals that an internally asserted mathematical fact failed, which
/// means a bug (or an input outside the supported domain slipping past
/// validation), never a recoverable condition.
#[derive(Debug, Error)]
pub enum Error {
    // -- linear algebra ------------------------------------------------------
    /// Two operands live in different ambient dimensions.
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    // -- Lie algebra construction and gradings -------------------------------
    /// Unsupported Cartan type / rank / matrix size.
    #[error("unsupported algebra: {0}")]
    Unsupported(String),
    /// An element expected to be rational semisimple is not.
    #[error("element is not rational semisimple: {0}")]
    NotRationalSemisimple(String),
    /// An element expected to be ad-nilpotent is not.
    #[error("element is not nilpotent: {0}")]
    NotNilpotent(String),
    /// Two elements expected to commute do not.
    #[error("elements do not commute: {0}")]
    NonCommuting(String),
    /// A linear map expected to be a Lie algebra automorphism is not.
    #[error("map is not a Lie algebra automorphism: {0}")]
    NotAutomorphism(String),
    /// The invariant form degenerated where it must not.
    #[error("invariant form is degenerate: {0}")]
    DegenerateForm(String),

    // -- pairs / deformations -------------------------------------------------
    /// A pair/triple axiom failed on input data.
    #[error("invalid Whittaker datum: {0}")]
    InvalidPair(String),
    /// The two covectors of an operation must agree but do not.
    #[error("covector mismatch: {0}")]
    PhiMismatch(String),
    /// A bounded conjugation/decomposition search ended without an answer.
    #[error("bounded search failed: {0}")]
    SearchFailed(String),
    /// A search space was truncated (distinct from a definite negative).
    #[error("search exhausted before an answer was certain: {0}")]
    SearchExhausted(String),
    /// An open deformation interval contains a critical value.
    #[error("interval is not regular: {0}")]
    IntervalNotRegular(String),
    /// A covector lies in a forbidden eigenspace.
    #[error("eigenspace violation: {0}")]
    EigenspaceViolation(String),
    /// The domination predicate failed where required.
    #[error("pair does not dominate: {0}")]
    NotDominating(String),

    // -- expansions ------------------------------------------------------------
    /// A subspace expected to be ω_φ-isotropic is not.
    #[error("subspace is not isotropic: {0}")]
    NotIsotropic(String),
    /// A refinement subspace does not contain the nilpotent datum.
    #[error("subspace does not contain the nilpotent datum: {0}")]
    MissingN(String),
    /// Operation requires a classical matrix realization.
    #[error("no matrix realization available: {0}")]
    NoMatrixRealization(String),
    /// Operation requires a simply-laced root system.
    #[error("root system is not simply laced: {0}")]
    NotSimplyLaced(String),

    // -- interface -------------------------------------------------------------
    /// Malformed configuration / flags.
    #[error("usage error: {0}")]
    Usage(String),
    /// I/O or serialization failure at the interface layer.
    #[error("io error: {0}")]
    Io(String),

    /// An internally asserted theorem failed: hard failure.
    #[error("theorem violation (internal bug): {0}")]
    TheoremViolation(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code classification used by the CLI:
    /// `1` for domain errors (invalid mathematical input), `2` for usage
    /// errors, `3` for internal theorem violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Io(_) => 2,
            Error::TheoremViolation(_) => 3,
            _ => 1,
        }
    }
}

/// Shorthand used across the crate for internal assertions whose failure
/// would falsify a proved statement.
#[macro_export]
macro_rules! ensure_theorem {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::Error::TheoremViolation(format!($($arg)*)));
        }
    };
}
