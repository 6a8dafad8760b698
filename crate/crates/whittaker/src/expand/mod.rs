//! Symbolic coefficient expansions.
//!
//! The central type is [`CoeffExpr`], a finite tree whose leaves are
//! degenerate coefficients `F^R_{S,φ,φ'}[η]` and whose inner nodes are
//! rational sums, compact or adelic integrals, argument translations, and
//! finite combinations.  The rewrite rules of the calculus act on these
//! trees:
//!
//! * [`refine`] / [`unrefine`] exchange a coefficient with its integral
//!   over a larger isotropic group, and back (via a rational sum);
//! * [`root_exchange`] swaps one isotropic group for another of the same
//!   dimension through a single adelic integral;
//! * [`step_expand`] crosses one critical value of a deformation, in
//!   either direction;
//! * [`conjugate_leaf`] moves a coefficient along a group automorphism.
//!
//! On top of the rewrites sit the closed-form expansions: the reduction
//! of an arbitrary coefficient to Levi-distinguished ones with a
//! monotonicity certificate ([`reduce_to_levi_distinguished`]), the
//! dominance transform ([`theorem_b_transform`]), the parabolic–Heisenberg
//! expansion on simply-laced algebras ([`heisenberg_expansion`]), the
//! `GL_n` expansion with its cuspidal/minimal filters ([`gln_expansion`],
//! [`gln_filter`]), and the complete `Sp₄` expansion with its
//! specializations ([`sp4_expansion`], [`sp4_specialize`]).
//!
//! Trees serialize to LaTeX ([`emit_latex`]) and to a stable JSON schema
//! ([`emit_json`] / [`parse_json`]).

mod emit;
mod gln;
mod heisenberg;
mod reduce;
mod rewrites;
mod sp4;
mod thmb;
mod tree;

pub use emit::{emit_json, emit_latex, parse_json, SCHEMA};
pub use gln::{gln_expansion, gln_filter, GlnExpansion};
pub use heisenberg::{heisenberg_expansion, heisenberg_root, HeisenbergData};
pub use reduce::reduce_to_levi_distinguished;
pub use rewrites::{
    aut_matrix, check_automorphism, conjugate_leaf, group_adjoint, omega_perp, refine,
    root_exchange, step_expand, unrefine,
};
pub use sp4::{sp4_expansion, sp4_specialize, Sp4Expansion, Sp4Hypothesis};
pub use thmb::{theorem_b_data, theorem_b_transform, ThmBData};
pub use tree::{
    CertStep, CoeffExpr, HypTag, LeafData, ReductionCertificate, SetDescriptor, ShiftSlot,
    SpaceRef,
};
