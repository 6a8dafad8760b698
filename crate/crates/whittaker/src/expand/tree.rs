//! The symbolic expression tree for Fourier coefficients.
//!
//! A `CoeffExpr` is a finite formal expression built from *leaves* — Fourier
//! coefficients `F_{S,φ}` or `F_{S,φ,φ′}` attached to a Whittaker pair or
//! triple, optionally refined by an isotropic subspace `R` — combined by
//! rational sums over explicitly described sets, compact (period) integrals,
//! adelic integrals, argument translations, and finite formal sums.
//!
//! The automorphic function `η`, the additive character `χ` and the adeles
//! stay formal throughout: every node only records exact linear-algebra data
//! (subspaces over ℚ) plus human-readable labels, so trees are exactly
//! comparable and serializable.

use std::collections::BTreeSet;

use crate::liealg::{Covec, LieAlgebra};
use crate::pairs::{Pair, Triple};
use crate::ratlin::{rat_str, Rat, Subspace};
use crate::{Error, Result};

/// Analytic hypotheses on `η` that a rewrite may consume or a filter may
/// exploit. They are always declared by the caller, never computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum HypTag {
    /// `Gφ` lies in the Whittaker support of `η`.
    WsPhi,
    /// `η` is cuspidal.
    Cuspidal,
    /// `η` is a minimal representation.
    Minimal,
    /// `η` is next-to-minimal.
    NextToMinimal,
}

impl HypTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            HypTag::WsPhi => "ws-phi",
            HypTag::Cuspidal => "cuspidal",
            HypTag::Minimal => "minimal",
            HypTag::NextToMinimal => "next-to-minimal",
        }
    }

    pub fn parse(s: &str) -> Option<HypTag> {
        match s {
            "ws-phi" => Some(HypTag::WsPhi),
            "cuspidal" => Some(HypTag::Cuspidal),
            "minimal" => Some(HypTag::Minimal),
            "next-to-minimal" => Some(HypTag::NextToMinimal),
            _ => None,
        }
    }
}

/// Which slot of the leaf datum a character sum shifts: sums over a linear
/// family of characters range over `φ + ψ` (slot `Phi`) or `φ′ + ψ` (slot
/// `PhiPrime`), with the leaf storing the base member of the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftSlot {
    Phi,
    PhiPrime,
}

impl ShiftSlot {
    pub fn as_str(&self) -> &'static str {
        match self {
            ShiftSlot::Phi => "phi",
            ShiftSlot::PhiPrime => "phi-prime",
        }
    }

    pub fn parse(s: &str) -> Option<ShiftSlot> {
        match s {
            "phi" => Some(ShiftSlot::Phi),
            "phi-prime" => Some(ShiftSlot::PhiPrime),
            _ => None,
        }
    }
}

/// The Whittaker datum carried by a leaf.
///
/// `s` is the rational semisimple element, `phi` the covector with
/// `φ ∈ (g*)^S_{−2}`, `phi_prime` an optional third entry supported in
/// `(g*)^S_{>−2}`, and `r_space` an optional isotropic subspace `R ⊆ u`
/// containing the nilpotent datum, marking the refined coefficient `F^R`.
/// Covector-side spaces are always stored through the invariant form, i.e.
/// as subspaces of `g` (the `f`-side).
#[derive(Clone, Debug, PartialEq)]
pub struct LeafData {
    pub s: Vec<Rat>,
    pub phi: Covec,
    pub phi_prime: Option<Covec>,
    pub r_space: Option<Subspace>,
    pub tags: BTreeSet<HypTag>,
    /// Display name used instead of the generic `\mathcal{F}` in LaTeX
    /// output (e.g. `\mathcal{W}_{a,1}` for a named Whittaker coefficient).
    pub note: Option<String>,
}

impl LeafData {
    /// Validated constructor: checks the pair (and triple, when a third
    /// entry is present) axioms against `g`.
    pub fn new(g: &LieAlgebra, s: Vec<Rat>, phi: Covec) -> Result<LeafData> {
        Pair::new(g, s.clone(), phi.clone())?;
        Ok(LeafData { s, phi, phi_prime: None, r_space: None, tags: BTreeSet::new(), note: None })
    }

    pub fn with_phi_prime(mut self, g: &LieAlgebra, phi_prime: Covec) -> Result<LeafData> {
        Triple::new(g, self.s.clone(), self.phi.clone(), phi_prime.clone())?;
        self.phi_prime = if phi_prime.is_zero() { None } else { Some(phi_prime) };
        Ok(self)
    }

    pub fn with_r_space(mut self, g: &LieAlgebra, r: Subspace) -> Result<LeafData> {
        if r.ambient() != g.dim() {
            return Err(Error::DimMismatch("refinement subspace has wrong ambient dimension".into()));
        }
        self.r_space = Some(r);
        Ok(self)
    }

    pub fn with_tag(mut self, tag: HypTag) -> LeafData {
        self.tags.insert(tag);
        self
    }

    pub fn with_note(mut self, note: &str) -> LeafData {
        self.note = Some(note.to_string());
        self
    }

    /// Rebuild the validated pair for this leaf.
    pub fn pair(&self, g: &LieAlgebra) -> Result<Pair> {
        Pair::new(g, self.s.clone(), self.phi.clone())
    }

    /// Rebuild the validated triple (with zero third entry when absent).
    pub fn triple(&self, g: &LieAlgebra) -> Result<Triple> {
        let pp = self.phi_prime.clone().unwrap_or_else(|| Covec::zero(g.dim()));
        Triple::new(g, self.s.clone(), self.phi.clone(), pp)
    }
}

/// Description of the index set of a rational (formal) sum.
///
/// When the set is a linear family of characters, `space` holds the
/// corresponding `f`-side subspace and `shifts` says which leaf slot the
/// family shifts; `punctured` restricts every coordinate of the family to
/// `𝕂^×`. For non-linear sets (Weyl cosets, `Γ_x`, anisotropic forms) only
/// the label is carried.
#[derive(Clone, Debug, PartialEq)]
pub struct SetDescriptor {
    pub label: String,
    pub space: Option<Subspace>,
    pub modulo: Option<Subspace>,
    pub punctured: bool,
    pub shifts: Option<ShiftSlot>,
}

impl SetDescriptor {
    pub fn opaque(label: &str) -> SetDescriptor {
        SetDescriptor { label: label.to_string(), space: None, modulo: None, punctured: false, shifts: None }
    }

    pub fn characters(label: &str, space: Subspace, shifts: ShiftSlot) -> SetDescriptor {
        SetDescriptor { label: label.to_string(), space: Some(space), modulo: None, punctured: false, shifts: Some(shifts) }
    }

    pub fn punctured(mut self) -> SetDescriptor {
        self.punctured = true;
        self
    }

    pub fn modulo(mut self, m: Subspace) -> SetDescriptor {
        self.modulo = Some(m);
        self
    }
}

/// Description of an integration domain: the 𝕂-points (compact quotient) or
/// adelic points of `Exp(space/modulo)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceRef {
    pub label: String,
    pub space: Subspace,
    pub modulo: Option<Subspace>,
}

impl SpaceRef {
    pub fn new(label: &str, space: Subspace) -> SpaceRef {
        SpaceRef { label: label.to_string(), space, modulo: None }
    }

    pub fn modulo(mut self, m: Subspace) -> SpaceRef {
        self.modulo = Some(m);
        self
    }

    /// Dimension of the quotient `space/modulo`.
    pub fn dim(&self) -> usize {
        self.space.dim() - self.modulo.as_ref().map_or(0, |m| m.dim())
    }
}

/// A symbolic Fourier-coefficient expression.
#[derive(Clone, Debug, PartialEq)]
pub enum CoeffExpr {
    /// A single coefficient `F^R_{S,φ,φ′}[η]`.
    Leaf(LeafData),
    /// Formal sum over the 𝕂-points of the described set.
    SumRational { set: SetDescriptor, body: Box<CoeffExpr> },
    /// Integral over the compact period `[Exp(space/modulo)]`.
    IntCompact { space: SpaceRef, body: Box<CoeffExpr> },
    /// Integral over the adelic points of `Exp(space/modulo)`.
    IntAdelic { space: SpaceRef, body: Box<CoeffExpr> },
    /// Left translation of the argument by the listed (symbolic) factors;
    /// the first factor is the outermost: `word = [w, v]` means `g ↦ wvg`.
    Translate { word: Vec<String>, body: Box<CoeffExpr> },
    /// Finite formal sum. An empty combine is the zero expression.
    Combine(Vec<CoeffExpr>),
}

impl CoeffExpr {
    pub fn leaf(data: LeafData) -> CoeffExpr {
        CoeffExpr::Leaf(data)
    }

    pub fn sum(set: SetDescriptor, body: CoeffExpr) -> CoeffExpr {
        CoeffExpr::SumRational { set, body: Box::new(body) }
    }

    pub fn int_compact(space: SpaceRef, body: CoeffExpr) -> CoeffExpr {
        CoeffExpr::IntCompact { space, body: Box::new(body) }
    }

    pub fn int_adelic(space: SpaceRef, body: CoeffExpr) -> CoeffExpr {
        CoeffExpr::IntAdelic { space, body: Box::new(body) }
    }

    pub fn translate(word: Vec<&str>, body: CoeffExpr) -> CoeffExpr {
        CoeffExpr::Translate { word: word.into_iter().map(String::from).collect(), body: Box::new(body) }
    }

    pub fn zero() -> CoeffExpr {
        CoeffExpr::Combine(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CoeffExpr::Combine(parts) if parts.is_empty())
    }

    /// The leaf data, if this expression is a bare leaf.
    pub fn as_leaf(&self) -> Result<&LeafData> {
        match self {
            CoeffExpr::Leaf(d) => Ok(d),
            _ => Err(Error::Usage("this operation applies to a bare leaf".into())),
        }
    }

    /// All leaves, in left-to-right order.
    pub fn leaves(&self) -> Vec<&LeafData> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a LeafData>) {
        match self {
            CoeffExpr::Leaf(d) => out.push(d),
            CoeffExpr::SumRational { body, .. }
            | CoeffExpr::IntCompact { body, .. }
            | CoeffExpr::IntAdelic { body, .. }
            | CoeffExpr::Translate { body, .. } => body.collect_leaves(out),
            CoeffExpr::Combine(parts) => {
                for p in parts {
                    p.collect_leaves(out);
                }
            }
        }
    }

    /// Number of nodes (all kinds) in the tree.
    pub fn node_count(&self) -> usize {
        1 + match self {
            CoeffExpr::Leaf(_) => 0,
            CoeffExpr::SumRational { body, .. }
            | CoeffExpr::IntCompact { body, .. }
            | CoeffExpr::IntAdelic { body, .. }
            | CoeffExpr::Translate { body, .. } => body.node_count(),
            CoeffExpr::Combine(parts) => parts.iter().map(|p| p.node_count()).sum(),
        }
    }

    /// Apply `f` to every leaf, rebuilding the tree; the first error aborts.
    pub fn try_map_leaves<F: Fn(&LeafData) -> Result<CoeffExpr>>(&self, f: &F) -> Result<CoeffExpr> {
        Ok(match self {
            CoeffExpr::Leaf(d) => f(d)?,
            CoeffExpr::SumRational { set, body } => CoeffExpr::SumRational {
                set: set.clone(),
                body: Box::new(body.try_map_leaves(f)?),
            },
            CoeffExpr::IntCompact { space, body } => CoeffExpr::IntCompact {
                space: space.clone(),
                body: Box::new(body.try_map_leaves(f)?),
            },
            CoeffExpr::IntAdelic { space, body } => CoeffExpr::IntAdelic {
                space: space.clone(),
                body: Box::new(body.try_map_leaves(f)?),
            },
            CoeffExpr::Translate { word, body } => CoeffExpr::Translate {
                word: word.clone(),
                body: Box::new(body.try_map_leaves(f)?),
            },
            CoeffExpr::Combine(parts) => CoeffExpr::Combine(
                parts.iter().map(|p| p.try_map_leaves(f)).collect::<Result<_>>()?,
            ),
        })
    }

    /// Canonical normal form: zero subtrees are pruned, nested `Combine`
    /// nodes are flattened, duplicate summands are merged, summands are
    /// sorted by a canonical key, and a one-element `Combine` is unwrapped.
    pub fn normalized(&self) -> CoeffExpr {
        match self {
            CoeffExpr::Leaf(_) => self.clone(),
            CoeffExpr::SumRational { set, body } => {
                let b = body.normalized();
                if b.is_zero() {
                    CoeffExpr::zero()
                } else {
                    CoeffExpr::SumRational { set: set.clone(), body: Box::new(b) }
                }
            }
            CoeffExpr::IntCompact { space, body } => {
                let b = body.normalized();
                if b.is_zero() {
                    CoeffExpr::zero()
                } else {
                    CoeffExpr::IntCompact { space: space.clone(), body: Box::new(b) }
                }
            }
            CoeffExpr::IntAdelic { space, body } => {
                let b = body.normalized();
                if b.is_zero() {
                    CoeffExpr::zero()
                } else {
                    CoeffExpr::IntAdelic { space: space.clone(), body: Box::new(b) }
                }
            }
            CoeffExpr::Translate { word, body } => {
                let b = body.normalized();
                if b.is_zero() {
                    CoeffExpr::zero()
                } else {
                    CoeffExpr::Translate { word: word.clone(), body: Box::new(b) }
                }
            }
            CoeffExpr::Combine(parts) => {
                let mut flat: Vec<CoeffExpr> = Vec::new();
                for p in parts {
                    let q = p.normalized();
                    match q {
                        CoeffExpr::Combine(inner) => flat.extend(inner),
                        other if other.is_zero() => {}
                        other => flat.push(other),
                    }
                }
                let mut keyed: Vec<(String, CoeffExpr)> =
                    flat.into_iter().map(|e| (e.sort_key(), e)).collect();
                keyed.sort_by(|a, b| a.0.cmp(&b.0));
                keyed.dedup_by(|a, b| a.0 == b.0);
                let flat: Vec<CoeffExpr> = keyed.into_iter().map(|(_, e)| e).collect();
                if flat.len() == 1 {
                    flat.into_iter().next().expect("one element")
                } else {
                    CoeffExpr::Combine(flat)
                }
            }
        }
    }

    /// Deterministic ordering key (the compact canonical serialization).
    pub fn sort_key(&self) -> String {
        crate::expand::emit::emit_json_value(self).to_string()
    }
}

/// One step of a reduction certificate: the deformation time at which a
/// quasi-critical branching happened, the rule applied, and the complexity
/// data whose strict increase guarantees termination.
#[derive(Clone, Debug, PartialEq)]
pub struct CertStep {
    /// Deformation parameter at which the step fired.
    pub t: Rat,
    /// Human-readable rule name.
    pub rule: String,
    /// Orbit of `φ` before/after, measured by orbit dimension
    /// (`dim g − dim g_φ`), with the Jordan partition attached whenever a
    /// matrix realization is available.
    pub orbit_dim_before: usize,
    pub orbit_dim_after: usize,
    pub partition_before: Option<Vec<usize>>,
    pub partition_after: Option<Vec<usize>>,
    /// Pair index before/after.
    pub index_before: usize,
    pub index_after: usize,
    /// Whether this step is a branch point whose strict complexity increase
    /// the certificate must witness.
    pub branching: bool,
}

impl CertStep {
    /// The lexicographic complexity `(orbit dimension, index)` must strictly
    /// increase across a branching step.
    pub fn strict_increase(&self) -> bool {
        self.orbit_dim_after > self.orbit_dim_before
            || (self.orbit_dim_after == self.orbit_dim_before
                && self.index_after > self.index_before)
    }
}

/// Termination certificate of the reduction driver.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReductionCertificate {
    pub steps: Vec<CertStep>,
}

impl ReductionCertificate {
    /// Check that every branching step strictly increases the lexicographic
    /// complexity `(orbit dimension, pair index)`.
    pub fn verify(&self) -> Result<()> {
        for (k, step) in self.steps.iter().enumerate() {
            if step.branching && !step.strict_increase() {
                return Err(Error::TheoremViolation(format!(
                    "certificate violation at step {k} (t = {}): complexity ({}, {}) -> ({}, {}) did not strictly increase",
                    rat_str(&step.t),
                    step.orbit_dim_before,
                    step.index_before,
                    step.orbit_dim_after,
                    step.index_after,
                )));
            }
        }
        Ok(())
    }
}
