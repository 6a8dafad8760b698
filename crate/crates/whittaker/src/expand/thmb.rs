//! The integral transform between comparable Whittaker pairs: when `(H, φ)`
//! dominates `(S, φ)` and `Gφ` lies in the Whittaker support of `η`, the
//! coefficient `F_{H,φ}` is an explicit integral transform of `F_{S,φ}`.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::deform::Deformation;
use crate::expand::tree::{CoeffExpr, HypTag, LeafData, SetDescriptor, SpaceRef};
use crate::liealg::LieAlgebra;
use crate::pairs::{dominates, Pair};
use crate::ratlin::{rat_i, vec_sub, Rat, Subspace};
use crate::{Error, Result};

/// The transform together with the linear-algebra data entering it and the
/// internal deformation chain (critical values with the character space
/// collapsed at each by the Whittaker-support hypothesis).
#[derive(Clone, Debug)]
pub struct ThmBData {
    pub tree: CoeffExpr,
    /// `v = g^H_{>1} ∩ g^S_{<1}` — the adelic integration space.
    pub v: Subspace,
    /// `u = (g^S_{≥1} ∩ g^H_{>1})/(g^S_{>1} ∩ g^H_{>1})` — the compact
    /// integration quotient (numerator, denominator).
    pub u_num: Subspace,
    pub u_den: Subspace,
    /// `w = (g^H_{≥1} ∩ g^S_{<1})/v` — the rational-sum quotient.
    pub w_num: Subspace,
    pub w_den: Subspace,
    /// Whether the degenerate case `g^H_1 = g^S_1 = 0` applies (the
    /// transform is then a single adelic integral, no sum).
    pub easy_case: bool,
    /// Segment starts of the straight-line deformation `H + t(S−H)`: `0`
    /// followed by the critical values in `(0, 1)`, each with the `f`-side
    /// character space `g^{H_{t'}}_{−1} ∩ g^{e_φ} ∩ g^{S−H}_{<0}` (at the
    /// following chain point `t'`) that the Whittaker-support hypothesis
    /// collapses.
    pub chain: Vec<(Rat, Subspace)>,
}

/// Compute the transform expressing `F_{H,φ}` through `F_{S,φ}`.
///
/// Preconditions: both data share the same character (`PhiMismatch`
/// otherwise), `(H, φ)` dominates `(S, φ)` (`NotDominating` otherwise), and
/// the caller must declare the Whittaker-support hypothesis by passing a tag
/// set containing [`HypTag::WsPhi`]; it is consumed, never computed.
pub fn theorem_b_data(
    g: &LieAlgebra,
    hp: &Pair,
    sp: &Pair,
    tags: &BTreeSet<HypTag>,
) -> Result<ThmBData> {
    if !tags.contains(&HypTag::WsPhi) {
        return Err(Error::Usage(
            "the integral transform requires the caller to declare the Whittaker-support hypothesis (ws-phi)".into(),
        ));
    }
    if hp.phi() != sp.phi() {
        return Err(Error::PhiMismatch("the two pairs carry different characters".into()));
    }
    if !dominates(g, hp, sp)? {
        return Err(Error::NotDominating("the first pair does not dominate the second".into()));
    }
    let one = rat_i(1);
    let gh = hp.grading();
    let gs = sp.grading();
    let v = gh.gt(&one).intersect(&gs.lt(&one))?;
    let u_num = gs.ge(&one).intersect(&gh.gt(&one))?;
    let u_den = gs.gt(&one).intersect(&gh.gt(&one))?;
    let w_num = gh.ge(&one).intersect(&gs.lt(&one))?;
    let w_den = v.clone();
    let easy_case = gh.dim_at(&one) == 0 && gs.dim_at(&one) == 0;

    // The internal deformation chain H_t = (1−t)H + tS, recorded for
    // inspection: its critical values, and at each step the character space
    // that the Whittaker-support hypothesis collapses.
    let z = vec_sub(sp.s(), hp.s());
    let d = Deformation::new(g, hp.s().to_vec(), z, hp.phi().clone())?;
    let mut cuts: Vec<Rat> = vec![Rat::zero()];
    cuts.extend(d.critical_values().into_iter().filter(|c| *c > Rat::zero() && *c < one));
    cuts.push(one.clone());
    let e_centralizer = if hp.phi().is_zero() {
        Subspace::full(g.dim())
    } else {
        let dec = hp.decompose_hz(g)?;
        let triple = dec
            .triple
            .ok_or_else(|| Error::SearchFailed("no sl2 triple for a nonzero character".into()))?;
        g.centralizer(&triple.e)
    };
    let mut chain = Vec::new();
    for k in 0..cuts.len().saturating_sub(1) {
        let t_next = &cuts[k + 1];
        let gr_next = g.grading(&d.at(t_next))?;
        let mut c = gr_next.at(&rat_i(-1)).intersect(&e_centralizer)?;
        let mut z_neg = Subspace::zero(g.dim());
        for (a, b, sub) in d.bigraded_support() {
            let _ = a;
            if *b < Rat::zero() {
                z_neg = z_neg.sum(sub)?;
            }
        }
        c = c.intersect(&z_neg)?;
        chain.push((cuts[k].clone(), c));
    }

    let mut leaf = LeafData::new(g, sp.s().to_vec(), sp.phi().clone())?;
    leaf.tags = tags.clone();

    let tree = if v.dim() == 0 && u_num.dim() == u_den.dim() && w_num.dim() == w_den.dim() {
        // Fully degenerate transform (e.g. H = S): the identity.
        CoeffExpr::Leaf(leaf)
    } else if easy_case {
        CoeffExpr::int_adelic(
            SpaceRef::new(
                "V = \\operatorname{Exp}(\\mathfrak{g}^{H}_{>1}\\cap\\mathfrak{g}^{S}_{<1})(\\mathbb{A})",
                v.clone(),
            ),
            CoeffExpr::translate(vec!["v"], CoeffExpr::Leaf(leaf)),
        )
    } else {
        let has_w = w_num.dim() > w_den.dim();
        let has_v = v.dim() > 0;
        let has_u = u_num.dim() > u_den.dim();
        let mut word = Vec::new();
        if has_w {
            word.push("\\omega");
        }
        if has_v {
            word.push("v");
        }
        if has_u {
            word.push("u");
        }
        let mut tree = if word.is_empty() {
            CoeffExpr::Leaf(leaf)
        } else {
            CoeffExpr::translate(word, CoeffExpr::Leaf(leaf))
        };
        if has_u {
            tree = CoeffExpr::int_compact(
                SpaceRef::new(
                    "U = \\operatorname{Exp}((\\mathfrak{g}^{S}_{\\ge 1}\\cap\\mathfrak{g}^{H}_{>1})/(\\mathfrak{g}^{S}_{>1}\\cap\\mathfrak{g}^{H}_{>1}))",
                    u_num.clone(),
                )
                .modulo(u_den.clone()),
                tree,
            );
        }
        if has_v {
            tree = CoeffExpr::int_adelic(
                SpaceRef::new(
                    "V = \\operatorname{Exp}(\\mathfrak{g}^{H}_{>1}\\cap\\mathfrak{g}^{S}_{<1})(\\mathbb{A})",
                    v.clone(),
                ),
                tree,
            );
        }
        if has_w {
            tree = CoeffExpr::sum(
                SetDescriptor {
                    label: "\\omega \\in \\Omega = \\operatorname{Exp}((\\mathfrak{g}^{H}_{\\ge 1}\\cap\\mathfrak{g}^{S}_{<1})/\\mathfrak{v})(\\mathbb{K})"
                        .into(),
                    space: Some(w_num.clone()),
                    modulo: Some(w_den.clone()),
                    punctured: false,
                    shifts: None,
                },
                tree,
            );
        }
        tree
    };

    Ok(ThmBData { tree, v, u_num, u_den, w_num, w_den, easy_case, chain })
}

/// The transform tree alone.
pub fn theorem_b_transform(
    g: &LieAlgebra,
    hp: &Pair,
    sp: &Pair,
    tags: &BTreeSet<HypTag>,
) -> Result<CoeffExpr> {
    Ok(theorem_b_data(g, hp, sp, tags)?.tree)
}
