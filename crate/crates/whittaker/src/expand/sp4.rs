//! The complete expansion of an automorphic function on `Sp₄` (symplectic
//! form `[[0, I],[−I, 0]]`, elements `[[A, B],[C, −Aᵗ]]` with `B`, `C`
//! symmetric), together with its cuspidal and non-generic specializations.
//!
//! The expansion has four families:
//!
//! * Siegel coefficients `F_{u,φ}` over the anisotropic nondegenerate
//!   forms `φ ∈ X` (as pairs: `S = diag(1,1,−1,−1)`),
//! * rank-two Whittaker terms `Σ_{a} Σ_{γ ∈ L/O(1,1)} ∫_x W_{1,a}(v_x w γ g)`,
//! * rank-one terms `Σ_a Σ_{γ ∈ L/(N∩L)} W_{a,1}(γg)`,
//! * degenerate terms `Σ_a W_{a,0}(g)`,
//!
//! where `W_{a,b} = F_{S,φ_{a,b}}` with `S = diag(3,1,−3,−1)` and
//! `φ_{a,b}` dual to `a(E₂₁−E₃₄) + b·E₄₂`, `v_x = Id + x·E₂₄`, and `w` the
//! Weyl element `diag(1,1,1,−1)·σ₂₄`.

use crate::expand::tree::{CoeffExpr, CoeffExpr as E, HypTag, LeafData, SetDescriptor, ShiftSlot, SpaceRef};
use crate::liealg::matrix::MatrixKind;
use crate::liealg::LieAlgebra;
use crate::ratlin::{rat_i, QMat, Rat, Subspace};
use crate::{Error, Result};

/// Specializations of the expansion under analytic hypotheses on `η`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sp4Hypothesis {
    /// `η` cuspidal: the degenerate family drops and the rational sums over
    /// `a` are punctured to `𝕂^×`.
    Cuspidal,
    /// `η` non-generic: the Whittaker families survive only at `a = 0`.
    NonGeneric,
    /// Both hypotheses: only the Siegel family over `X` remains.
    CuspidalNonGeneric,
}

/// The expansion tree plus the matrix data entering it.
#[derive(Clone, Debug)]
pub struct Sp4Expansion {
    pub tree: CoeffExpr,
    /// Siegel nilradical `u = span{E₁₃, E₂₄, E₁₄+E₂₃}`.
    pub siegel_u: Subspace,
    /// Principal nilradical `n = span{E₁₂−E₄₃, E₁₃, E₂₄, E₁₄+E₂₃}`.
    pub n_span: Subspace,
    /// `u^w = span{E₁₂−E₄₃, E₁₃, E₄₂}` — the image of `u` under `w`.
    pub u_w: Subspace,
    /// The Weyl element `w = diag(1,1,1,−1)·σ₂₄` as a 4×4 matrix.
    pub w_matrix: QMat,
    /// `S = diag(1,1,−1,−1)` (Siegel pairs), algebra coordinates.
    pub s_siegel: Vec<Rat>,
    /// `S = diag(3,1,−3,−1)` (principal pairs), algebra coordinates.
    pub s_principal: Vec<Rat>,
}

fn e4(i: usize, j: usize) -> QMat {
    let mut m = QMat::zero(4, 4);
    m[(i - 1, j - 1)] = rat_i(1);
    m
}

fn elem(g: &LieAlgebra, m: &QMat) -> Result<Vec<Rat>> {
    g.matrix_element(m)
}

struct Sp4Data {
    s_sieg: Vec<Rat>,
    s_prin: Vec<Rat>,
    f_rank2: Vec<Rat>,
    f_rank1: Vec<Rat>,
    f_aniso: Vec<Rat>,
    x_space: Subspace,
    line_rank2: Subspace,
    line_rank1: Subspace,
    e24_line: Subspace,
}

fn sp4_data(g: &LieAlgebra) -> Result<Sp4Data> {
    let real = g
        .realization()
        .ok_or_else(|| Error::Unsupported("the sp_4 expansion needs a matrix algebra".into()))?;
    if real.kind != MatrixKind::Sp || real.size != 4 {
        return Err(Error::Unsupported(format!(
            "the sp_4 expansion needs the sp realization of size 4, found {} of size {}",
            real.kind, real.size
        )));
    }
    let diag = |d: [i64; 4]| -> QMat {
        let mut m = QMat::zero(4, 4);
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = rat_i(*v);
        }
        m
    };
    let s_sieg = elem(g, &diag([1, 1, -1, -1]))?;
    let s_prin = elem(g, &diag([3, 1, -3, -1]))?;
    let f_rank2 = elem(g, &e4(2, 1).sub(&e4(3, 4))?)?;
    let f_rank1 = elem(g, &e4(4, 2))?;
    // Representative anisotropic form: C = Id (x² + y², anisotropic over ℚ).
    let f_aniso = elem(g, &e4(3, 1).add(&e4(4, 2))?)?;
    // The space of lower symmetric forms C (all C-block covectors).
    let x_space = Subspace::from_rows(
        g.dim(),
        vec![
            elem(g, &e4(3, 1))?,
            elem(g, &e4(4, 2))?,
            elem(g, &e4(4, 1).add(&e4(3, 2))?)?,
        ],
    );
    let line_rank2 = Subspace::from_rows(g.dim(), vec![f_rank2.clone()]);
    let line_rank1 = Subspace::from_rows(g.dim(), vec![f_rank1.clone()]);
    let e24_line = Subspace::from_rows(g.dim(), vec![elem(g, &e4(2, 4))?]);
    Ok(Sp4Data {
        s_sieg,
        s_prin,
        f_rank2,
        f_rank1,
        f_aniso,
        x_space,
        line_rank2,
        line_rank1,
        e24_line,
    })
}

/// The Siegel family `Σ_{φ∈X} F_{u,φ}`.
fn family_x(g: &LieAlgebra, d: &Sp4Data, tags: &[HypTag]) -> Result<CoeffExpr> {
    let mut leaf = LeafData::new(g, d.s_sieg.clone(), g.covec_of(&d.f_aniso))?
        .with_note("\\mathcal{F}_{u,\\varphi}");
    for t in tags {
        leaf = leaf.with_tag(*t);
    }
    Ok(E::sum(
        SetDescriptor::characters(
            "\\varphi \\in X\\ (\\text{anisotropic nondegenerate forms})",
            d.x_space.clone(),
            ShiftSlot::Phi,
        ),
        E::Leaf(leaf),
    ))
}

/// The rank-two family `Σ_a Σ_{γ∈L/O(1,1)} ∫_x W_{1,a}(v_x w γ g)`.
fn family_rank2(g: &LieAlgebra, d: &Sp4Data, punctured: bool, tags: &[HypTag]) -> Result<CoeffExpr> {
    let mut leaf = LeafData::new(g, d.s_prin.clone(), g.covec_of(&d.f_rank2))?
        .with_note("\\mathcal{W}_{1,a}");
    for t in tags {
        leaf = leaf.with_tag(*t);
    }
    let body = E::sum(
        SetDescriptor::opaque("\\gamma \\in L/\\mathrm{O}(1,1)"),
        E::int_adelic(
            SpaceRef::new("x \\in \\mathbb{A}\\ (v_x = \\mathrm{Id} + x E_{24})", d.e24_line.clone()),
            E::translate(vec!["v_x", "w", "\\gamma"], E::Leaf(leaf)),
        ),
    );
    let mut set = SetDescriptor::characters(
        if punctured { "a \\in \\mathbb{K}^{\\times}" } else { "a \\in \\mathbb{K}" },
        d.line_rank1.clone(),
        ShiftSlot::Phi,
    );
    set.punctured = punctured;
    Ok(E::sum(set, body))
}

/// The rank-one family `Σ_a Σ_{γ∈L/(N∩L)} W_{a,1}(γg)`.
fn family_rank1(g: &LieAlgebra, d: &Sp4Data, punctured: bool, tags: &[HypTag]) -> Result<CoeffExpr> {
    let mut leaf = LeafData::new(g, d.s_prin.clone(), g.covec_of(&d.f_rank1))?
        .with_note("\\mathcal{W}_{a,1}");
    for t in tags {
        leaf = leaf.with_tag(*t);
    }
    let body = E::sum(
        SetDescriptor::opaque("\\gamma \\in L/(N \\cap L)"),
        E::translate(vec!["\\gamma"], E::Leaf(leaf)),
    );
    let mut set = SetDescriptor::characters(
        if punctured { "a \\in \\mathbb{K}^{\\times}" } else { "a \\in \\mathbb{K}" },
        d.line_rank2.clone(),
        ShiftSlot::Phi,
    );
    set.punctured = punctured;
    Ok(E::sum(set, body))
}

/// The degenerate family `Σ_a W_{a,0}`.
fn family_const(g: &LieAlgebra, d: &Sp4Data) -> Result<CoeffExpr> {
    let leaf = LeafData::new(g, d.s_prin.clone(), g.covec_of(&g.zero_elem()))?
        .with_note("\\mathcal{W}_{a,0}");
    Ok(E::sum(
        SetDescriptor::characters("a \\in \\mathbb{K}", d.line_rank2.clone(), ShiftSlot::Phi),
        E::Leaf(leaf),
    ))
}

/// The `a = 0` member of a Whittaker family, as a single branch.
fn single_member(
    g: &LieAlgebra,
    d: &Sp4Data,
    rank2: bool,
) -> Result<CoeffExpr> {
    if rank2 {
        let leaf = LeafData::new(g, d.s_prin.clone(), g.covec_of(&d.f_rank2))?
            .with_note("\\mathcal{W}_{1,0}");
        Ok(E::sum(
            SetDescriptor::opaque("\\gamma \\in L/\\mathrm{O}(1,1)"),
            E::int_adelic(
                SpaceRef::new(
                    "x \\in \\mathbb{A}\\ (v_x = \\mathrm{Id} + x E_{24})",
                    d.e24_line.clone(),
                ),
                E::translate(vec!["v_x", "w", "\\gamma"], E::Leaf(leaf)),
            ),
        ))
    } else {
        let leaf = LeafData::new(g, d.s_prin.clone(), g.covec_of(&d.f_rank1))?
            .with_note("\\mathcal{W}_{0,1}");
        Ok(E::sum(
            SetDescriptor::opaque("\\gamma \\in L/(N \\cap L)"),
            E::translate(vec!["\\gamma"], E::Leaf(leaf)),
        ))
    }
}

/// Build the full `Sp₄` expansion.
pub fn sp4_expansion(g: &LieAlgebra) -> Result<Sp4Expansion> {
    let d = sp4_data(g)?;
    let tree = CoeffExpr::Combine(vec![
        family_x(g, &d, &[])?,
        family_rank2(g, &d, false, &[])?,
        family_rank1(g, &d, false, &[])?,
        family_const(g, &d)?,
    ])
    .normalized();

    let siegel_u = Subspace::from_rows(
        g.dim(),
        vec![
            elem(g, &e4(1, 3))?,
            elem(g, &e4(2, 4))?,
            elem(g, &e4(1, 4).add(&e4(2, 3))?)?,
        ],
    );
    let n_span = Subspace::from_rows(
        g.dim(),
        vec![
            elem(g, &e4(1, 2).sub(&e4(4, 3))?)?,
            elem(g, &e4(1, 3))?,
            elem(g, &e4(2, 4))?,
            elem(g, &e4(1, 4).add(&e4(2, 3))?)?,
        ],
    );
    let u_w = Subspace::from_rows(
        g.dim(),
        vec![
            elem(g, &e4(1, 2).sub(&e4(4, 3))?)?,
            elem(g, &e4(1, 3))?,
            elem(g, &e4(4, 2))?,
        ],
    );
    // w = diag(1,1,1,−1)·σ₂₄: e₂ ↦ e₄, e₄ ↦ −e₂, fixing e₁, e₃.
    let mut w_matrix = QMat::zero(4, 4);
    w_matrix[(0, 0)] = rat_i(1);
    w_matrix[(2, 2)] = rat_i(1);
    w_matrix[(1, 3)] = rat_i(1);
    w_matrix[(3, 1)] = rat_i(-1);

    Ok(Sp4Expansion {
        tree,
        siegel_u,
        n_span,
        u_w,
        w_matrix,
        s_siegel: d.s_sieg,
        s_principal: d.s_prin,
    })
}

/// The expansion under an analytic hypothesis.
pub fn sp4_specialize(g: &LieAlgebra, hyp: Sp4Hypothesis) -> Result<CoeffExpr> {
    let d = sp4_data(g)?;
    let tree = match hyp {
        Sp4Hypothesis::Cuspidal => CoeffExpr::Combine(vec![
            family_x(g, &d, &[HypTag::Cuspidal])?,
            family_rank2(g, &d, true, &[HypTag::Cuspidal])?,
            family_rank1(g, &d, true, &[HypTag::Cuspidal])?,
        ]),
        Sp4Hypothesis::NonGeneric => CoeffExpr::Combine(vec![
            family_x(g, &d, &[])?,
            single_member(g, &d, true)?,
            single_member(g, &d, false)?,
            family_const(g, &d)?,
        ]),
        Sp4Hypothesis::CuspidalNonGeneric => family_x(g, &d, &[HypTag::Cuspidal])?,
    };
    Ok(tree.normalized())
}
