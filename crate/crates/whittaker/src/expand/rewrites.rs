//! Structural rewrites on single leaves: isotropic refinement in both
//! directions, the exchange of isotropic subspaces, the deformation-step
//! expansions, and conjugation by an explicit automorphism.

use num_traits::Zero;

use crate::deform::Deformation;
use crate::expand::tree::{CoeffExpr, LeafData, SetDescriptor, ShiftSlot, SpaceRef};
use crate::liealg::{Covec, LieAlgebra};
use crate::ratlin::{rat_i, QMat, Rat, Subspace};
use crate::{Error, Result};

/// The ω_φ-orthogonal complement of `r` inside `u`:
/// `r^⊥ = {x ∈ u : φ([x, r]) = 0}`.
pub fn omega_perp(g: &LieAlgebra, phi: &Covec, u: &Subspace, r: &Subspace) -> Result<Subspace> {
    if u.dim() == 0 {
        return Ok(Subspace::zero(g.dim()));
    }
    let mut rows = Vec::new();
    for rb in r.basis() {
        let mut row = Vec::with_capacity(u.dim());
        for ub in u.basis() {
            row.push(phi.apply(&g.bracket(ub, rb)));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Ok(u.clone());
    }
    let m = QMat::from_rows(rows)?;
    let null = m.nullspace();
    // Lift coordinates in the `u`-basis back to the ambient algebra.
    let lifted = null
        .basis()
        .iter()
        .map(|c| {
            let mut v = vec![Rat::zero(); g.dim()];
            for (coef, ub) in c.iter().zip(u.basis()) {
                for (vi, bi) in v.iter_mut().zip(ub.iter()) {
                    *vi += coef.clone() * bi.clone();
                }
            }
            v
        })
        .collect();
    Ok(Subspace::from_rows(g.dim(), lifted))
}

/// Common preconditions on a refinement subspace: `n ⊆ r ⊆ u` and `r`
/// isotropic for ω_φ.
fn check_refinement(
    g: &LieAlgebra,
    leaf: &LeafData,
    r: &Subspace,
) -> Result<(Subspace, Subspace)> {
    let pair = leaf.pair(g)?;
    let u = pair.u_space();
    let n = pair.nilpotent_datum(g)?;
    if !r.is_subspace_of(&u) {
        return Err(Error::NotIsotropic(
            "refinement subspace is not contained in u = g^S_{>=1}".into(),
        ));
    }
    if !n.is_subspace_of(r) {
        return Err(Error::MissingN(
            "refinement subspace does not contain the nilpotent datum n_{S,phi}".into(),
        ));
    }
    if !g.omega_on(pair.phi(), r).is_zero() {
        return Err(Error::NotIsotropic("refinement subspace is not isotropic for omega_phi".into()));
    }
    Ok((u, n))
}

/// Rewrite a refined coefficient `F^R` as a compact integral of the plain
/// coefficient: `F^R(g) = ∫_{[R/N]} F(ug) du`. With `R = N` this is the
/// identity and the superscript is simply dropped.
pub fn refine(g: &LieAlgebra, e: &CoeffExpr) -> Result<CoeffExpr> {
    let leaf = e.as_leaf()?;
    let r = leaf
        .r_space
        .clone()
        .ok_or_else(|| Error::Usage("refine applies to a leaf carrying a refinement subspace".into()))?;
    let (_, n) = check_refinement(g, leaf, &r)?;
    let mut plain = leaf.clone();
    plain.r_space = None;
    if r == n {
        return Ok(CoeffExpr::Leaf(plain));
    }
    Ok(CoeffExpr::int_compact(
        SpaceRef::new("R/N_{S,\\varphi}", r).modulo(n),
        CoeffExpr::translate(vec!["u"], CoeffExpr::Leaf(plain)),
    ))
}

/// Rewrite a plain coefficient as a rational sum of translates of the
/// refined one: `F(g) = Σ_{γ ∈ Exp(u/r^⊥)} F^R(γg)`, where `r^⊥` is the
/// ω_φ-complement of `r` in `u`. With `r = n` this is the identity and the
/// superscript is simply attached.
pub fn unrefine(g: &LieAlgebra, e: &CoeffExpr, r: &Subspace) -> Result<CoeffExpr> {
    let leaf = e.as_leaf()?;
    if leaf.r_space.is_some() {
        return Err(Error::Usage("unrefine applies to a leaf without a refinement subspace".into()));
    }
    let (u, n) = check_refinement(g, leaf, r)?;
    let mut refined = leaf.clone();
    refined.r_space = Some(r.clone());
    if *r == n {
        return Ok(CoeffExpr::Leaf(refined));
    }
    let perp = omega_perp(g, &leaf.phi, &u, r)?;
    Ok(CoeffExpr::sum(
        SetDescriptor {
            label: "\\gamma \\in \\operatorname{Exp}(\\mathfrak{u}/\\mathfrak{r}^{\\perp})".into(),
            space: Some(u),
            modulo: Some(perp),
            punctured: false,
            shifts: None,
        },
        CoeffExpr::translate(vec!["\\gamma"], CoeffExpr::Leaf(refined)),
    ))
}

/// Exchange the isotropic refinement subspace: for isotropic `R, R′ ⊆ u`
/// containing `n_{S,φ}` with `dim R = dim R′`,
/// `F^R(g) = ∫_{R/(R∩R′)} F^{R′}(ug) du` (a non-compact adelic integral).
pub fn root_exchange(g: &LieAlgebra, e: &CoeffExpr, r_prime: &Subspace) -> Result<CoeffExpr> {
    let leaf = e.as_leaf()?;
    let r = leaf.r_space.clone().ok_or_else(|| {
        Error::Usage("root exchange applies to a leaf carrying a refinement subspace".into())
    })?;
    check_refinement(g, leaf, &r)?;
    check_refinement(g, leaf, r_prime)?;
    if r.dim() != r_prime.dim() {
        return Err(Error::DimMismatch(format!(
            "exchanged subspaces have different dimensions ({} vs {})",
            r.dim(),
            r_prime.dim()
        )));
    }
    if r == *r_prime {
        return Ok(e.clone());
    }
    let mut swapped = leaf.clone();
    swapped.r_space = Some(r_prime.clone());
    let meet = r.intersect(r_prime)?;
    Ok(CoeffExpr::int_adelic(
        SpaceRef::new("R/(R \\cap R')", r).modulo(meet),
        CoeffExpr::translate(vec!["u"], CoeffExpr::Leaf(swapped)),
    ))
}

/// Bigraded piece sums of a deformation: the subspace of all pieces whose
/// `H_t`-eigenvalue and `Z`-eigenvalue satisfy the two predicates.
fn deform_pieces<F, G>(g: &LieAlgebra, d: &Deformation, t: &Rat, fh: F, fz: G) -> Subspace
where
    F: Fn(&Rat) -> bool,
    G: Fn(&Rat) -> bool,
{
    let mut acc = Subspace::zero(g.dim());
    for (a, b, sub) in d.bigraded_support() {
        let eig = a.clone() + t.clone() * b.clone();
        if fh(&eig) && fz(b) {
            acc = acc.sum(sub).expect("same ambient");
        }
    }
    acc
}

/// Split a third entry by the grading of `at`: returns the component at
/// eigenvalue exactly −2 and the strictly-larger remainder; errors if any
/// component sits below −2.
pub(crate) fn split_third_entry(
    g: &LieAlgebra,
    at: &[Rat],
    phi_prime: &Covec,
) -> Result<(Covec, Covec)> {
    let minus2 = rat_i(-2);
    if phi_prime.is_zero() {
        return Ok((Covec::zero(g.dim()), Covec::zero(g.dim())));
    }
    let gr = g.grading(at)?;
    let f = g.elem_of(phi_prime);
    let mut at_m2 = vec![Rat::zero(); g.dim()];
    let mut rest = vec![Rat::zero(); g.dim()];
    for (lambda, comp) in gr.decompose(&f)? {
        if lambda < minus2 {
            return Err(Error::EigenspaceViolation(format!(
                "third entry has a component at eigenvalue {} < -2 of the target grading",
                crate::ratlin::rat_str(&lambda)
            )));
        }
        let target = if lambda == minus2 { &mut at_m2 } else { &mut rest };
        for (ti, ci) in target.iter_mut().zip(comp.iter()) {
            *ti += ci.clone();
        }
    }
    Ok((g.covec_of(&at_m2), g.covec_of(&rest)))
}

/// One step of the deformation calculus along `d`, rewriting the leaf `e`.
///
/// Preconditions: `0 ≤ s ≤ t` with no critical value inside the open
/// interval `(s, t)`, and the leaf matching the deformation data. Four
/// cases are dispatched on the shape of the input:
///
/// 1. `s = t` and the leaf is refined by the left space `l_t`: swap to the
///    right space through the adelic integral over
///    `v = (g^{H_t}_{≥1} ∩ g^Z_{<0})/(g^{H_t}_{>1} ∩ g^Z_{<0})`.
/// 2. leaf at `H_s`, third entry staying above −2 at `H_t`: the coefficient
///    is determined by the family at `H_t` shifted by characters of
///    `(g*)^{H_t}_{−1} ∩ (g*)^{e_φ} ∩ (g*)^Z_{<0}`.
/// 3. leaf at `H_s`, third entry with a component `ψ` dropping to exactly
///    −2 at `H_t`: the pair absorbs `ψ` and the family at `H_t` is shifted
///    by all of `(g*)^{H_t}_{−1}`.
/// 4. leaf at `H_t`: the downward determination by the data at `H_s`,
///    absorbing the component of the third entry at `H_s`-eigenvalue −2
///    (family over `(g*)^{H_s}_{−1}` when a component is absorbed).
pub fn step_expand(
    g: &LieAlgebra,
    d: &Deformation,
    s: &Rat,
    t: &Rat,
    e: &CoeffExpr,
) -> Result<CoeffExpr> {
    if s > t || *s < Rat::zero() {
        return Err(Error::Usage("step expansion needs 0 <= s <= t".into()));
    }
    for c in d.critical_values() {
        if c > *s && c < *t {
            return Err(Error::IntervalNotRegular(format!(
                "critical value {} lies inside the open interval ({}, {})",
                crate::ratlin::rat_str(&c),
                crate::ratlin::rat_str(s),
                crate::ratlin::rat_str(t)
            )));
        }
    }
    let leaf = e.as_leaf()?;
    if leaf.phi != *d.phi() {
        return Err(Error::PhiMismatch("leaf character differs from the deformed pair's".into()));
    }
    let h_s = d.at(s);
    let h_t = d.at(t);
    let phi_prime = leaf.phi_prime.clone().unwrap_or_else(|| Covec::zero(g.dim()));

    if s == t {
        // Part (1): left/right swap at a single time.
        let snap = d.snapshot(g, t)?;
        let r_leaf = leaf
            .r_space
            .clone()
            .ok_or_else(|| Error::Usage("the left/right swap applies to a refined leaf".into()))?;
        if r_leaf != snap.l {
            return Err(Error::Usage(
                "the left/right swap applies to the leaf refined by l_t".into(),
            ));
        }
        let one = rat_i(1);
        let num = deform_pieces(g, d, t, |e| *e >= one, |b| *b < Rat::zero());
        let den = deform_pieces(g, d, t, |e| *e > one, |b| *b < Rat::zero());
        let mut swapped = leaf.clone();
        swapped.r_space = Some(snap.r.clone());
        return Ok(CoeffExpr::int_adelic(
            SpaceRef::new(
                "V = (\\mathfrak{g}^{H_t}_{\\ge 1}\\cap\\mathfrak{g}^{Z}_{<0})/(\\mathfrak{g}^{H_t}_{>1}\\cap\\mathfrak{g}^{Z}_{<0})",
                num,
            )
            .modulo(den),
            CoeffExpr::translate(vec!["v"], CoeffExpr::Leaf(swapped)),
        ));
    }

    if leaf.s == h_s {
        // Upward: parts (2) and (3).
        if leaf.r_space.is_some() {
            return Err(Error::Usage("deformation steps apply to unrefined leaves".into()));
        }
        let (psi, rest) = split_third_entry(g, &h_t, &phi_prime)?;
        if psi.is_zero() {
            // Part (2): character family in (g*)^{H_t}_{-1} ∩ (g*)^{e_φ} ∩ (g*)^Z_{<0}.
            let gr_t = g.grading(&h_t)?;
            let mut c = gr_t.at(&rat_i(-1));
            if !leaf.phi.is_zero() {
                let pair = leaf.pair(g)?;
                let dec = pair.decompose_hz(g)?;
                let triple = dec.triple.ok_or_else(|| {
                    Error::SearchFailed("no sl2 triple for a nonzero character".into())
                })?;
                c = c.intersect(&g.centralizer(&triple.e))?;
            }
            let z_neg = deform_pieces(g, d, t, |_| true, |b| *b < Rat::zero());
            c = c.intersect(&z_neg)?;
            let new_leaf = LeafData::new(g, h_t, leaf.phi.clone())?
                .with_phi_prime(g, phi_prime)?;
            if c.dim() == 0 {
                return Ok(CoeffExpr::Leaf(new_leaf));
            }
            return Ok(CoeffExpr::sum(
                SetDescriptor::characters(
                    "\\psi' \\in (\\mathfrak{g}^*)^{H_t}_{-1}\\cap(\\mathfrak{g}^*)^{e_\\varphi}\\cap(\\mathfrak{g}^*)^{Z}_{<0}",
                    c,
                    ShiftSlot::PhiPrime,
                ),
                CoeffExpr::Leaf(new_leaf),
            ));
        }
        // Part (3): the pair absorbs ψ; family over all of (g*)^{H_t}_{-1}.
        let gr_t = g.grading(&h_t)?;
        let c = gr_t.at(&rat_i(-1));
        let new_leaf = LeafData::new(g, h_t, leaf.phi.add(&psi))?.with_phi_prime(g, rest)?;
        if c.dim() == 0 {
            return Ok(CoeffExpr::Leaf(new_leaf));
        }
        return Ok(CoeffExpr::sum(
            SetDescriptor::characters(
                "\\psi' \\in (\\mathfrak{g}^*)^{H_t}_{-1}",
                c,
                ShiftSlot::PhiPrime,
            ),
            CoeffExpr::Leaf(new_leaf),
        ));
    }

    if leaf.s == h_t {
        // Part (4): downward determination by the data at H_s.
        if leaf.r_space.is_some() {
            return Err(Error::Usage("deformation steps apply to unrefined leaves".into()));
        }
        let (psi, rest) = split_third_entry(g, &h_s, &phi_prime)?;
        if psi.is_zero() {
            let new_leaf =
                LeafData::new(g, h_s, leaf.phi.clone())?.with_phi_prime(g, phi_prime)?;
            return Ok(CoeffExpr::Leaf(new_leaf));
        }
        let gr_s = g.grading(&h_s)?;
        let c = gr_s.at(&rat_i(-1));
        let new_leaf = LeafData::new(g, h_s, leaf.phi.add(&psi))?.with_phi_prime(g, rest)?;
        if c.dim() == 0 {
            return Ok(CoeffExpr::Leaf(new_leaf));
        }
        return Ok(CoeffExpr::sum(
            SetDescriptor::characters(
                "\\psi' \\in (\\mathfrak{g}^*)^{H_s}_{-1}",
                c,
                ShiftSlot::PhiPrime,
            ),
            CoeffExpr::Leaf(new_leaf),
        ));
    }

    Err(Error::Usage("leaf pair matches the deformation neither at s nor at t".into()))
}

/// Matrix of the automorphism described by a word of `exp(ad x)` factors
/// (last factor acts first, matching `LieAlgebra::aut_apply`).
pub fn aut_matrix(g: &LieAlgebra, word: &[Vec<Rat>]) -> Result<QMat> {
    let n = g.dim();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        cols.push(g.aut_apply(word, &g.basis_elem(i))?);
    }
    let mut rows = vec![vec![Rat::zero(); n]; n];
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            rows[i][j] = v.clone();
        }
    }
    QMat::from_rows(rows)
}

/// Adjoint action of a group element given as an invertible matrix of the
/// realization: basis element `b ↦ γ b γ⁻¹`, expressed in algebra
/// coordinates. Fails if conjugation leaves the algebra.
pub fn group_adjoint(g: &LieAlgebra, gamma: &QMat) -> Result<QMat> {
    let ginv = gamma
        .inverse()
        .ok_or_else(|| Error::NotAutomorphism("group element is not invertible".into()))?;
    let n = g.dim();
    let mut rows = vec![vec![Rat::zero(); n]; n];
    for j in 0..n {
        let m = g.element_matrix(&g.basis_elem(j))?;
        let conj = gamma.mul(&m)?.mul(&ginv)?;
        let coords = g
            .matrix_element(&conj)
            .map_err(|_| Error::NotAutomorphism("conjugation does not preserve the algebra".into()))?;
        for (i, v) in coords.iter().enumerate() {
            rows[i][j] = v.clone();
        }
    }
    QMat::from_rows(rows)
}

/// Check that a matrix acts as a Lie algebra automorphism: invertible and
/// bracket-preserving on a deterministic set of basis pairs (all pairs for
/// small algebras, a structured sample for large ones).
pub fn check_automorphism(g: &LieAlgebra, a: &QMat) -> Result<()> {
    let n = g.dim();
    if a.n_rows() != n || a.n_cols() != n {
        return Err(Error::DimMismatch("automorphism matrix has wrong size".into()));
    }
    if a.inverse().is_none() {
        return Err(Error::NotAutomorphism("matrix is singular".into()));
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if n <= 40 {
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.push((i, j));
            }
        }
    } else {
        for i in 0..n {
            for d in 1..=2usize {
                if i + d < n {
                    pairs.push((i, i + d));
                }
            }
            if i + 1 < n {
                pairs.push((i, n - 1 - i));
            }
            pairs.push((0, i));
        }
    }
    let images: Vec<Vec<Rat>> = (0..n)
        .map(|i| a.mul_vec(&crate::ratlin::unit_vec(n, i)).expect("square"))
        .collect();
    for (i, j) in pairs {
        if i == j {
            continue;
        }
        let lhs = a.mul_vec(&g.bracket(&g.basis_elem(i), &g.basis_elem(j)))?;
        let rhs = g.bracket(&images[i], &images[j]);
        if lhs != rhs {
            return Err(Error::NotAutomorphism(format!(
                "bracket of basis elements {i}, {j} is not preserved"
            )));
        }
    }
    Ok(())
}

/// Conjugation–translation identity: rewrite the leaf `F_{S,φ,φ′}[η](g)` as
/// `F_{Ad(γ)S, Ad*(γ)φ, Ad*(γ)φ′}[η](γ g)`, with `γ` supplied as an exact
/// adjoint-action matrix and a display name for the translation.
pub fn conjugate_leaf(
    g: &LieAlgebra,
    e: &CoeffExpr,
    name: &str,
    adjoint: &QMat,
) -> Result<CoeffExpr> {
    let leaf = e.as_leaf()?;
    check_automorphism(g, adjoint)?;
    let push_covec = |c: &Covec| -> Result<Covec> {
        Ok(g.covec_of(&adjoint.mul_vec(&g.elem_of(c))?))
    };
    let s_new = adjoint.mul_vec(&leaf.s)?;
    let phi_new = push_covec(&leaf.phi)?;
    let mut new_leaf = LeafData::new(g, s_new, phi_new)?;
    if let Some(pp) = &leaf.phi_prime {
        new_leaf = new_leaf.with_phi_prime(g, push_covec(pp)?)?;
    }
    if let Some(r) = &leaf.r_space {
        let rows = r.basis().iter().map(|b| adjoint.mul_vec(b)).collect::<Result<Vec<_>>>()?;
        new_leaf = new_leaf.with_r_space(g, Subspace::from_rows(g.dim(), rows))?;
    }
    new_leaf.tags = leaf.tags.clone();
    new_leaf.note = leaf.note.clone();
    Ok(CoeffExpr::translate(vec![name], CoeffExpr::Leaf(new_leaf)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::heisenberg::heisenberg_expansion;
    use crate::liealg::matrix::MatrixKind;
    use crate::liealg::roots::Series;
    use crate::liealg::LieAlgebra;
    use crate::ratlin::{rat, vec_scale};

    fn mat4(g: &LieAlgebra, entries: &[(usize, usize, i64)]) -> Vec<Rat> {
        let mut m = QMat::zero(4, 4);
        for &(i, j, v) in entries {
            m[(i - 1, j - 1)] = rat_i(v);
        }
        g.matrix_element(&m).expect("algebra element")
    }

    fn diag4(g: &LieAlgebra, d: [i64; 4]) -> Vec<Rat> {
        let mut m = QMat::zero(4, 4);
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = rat_i(*v);
        }
        g.matrix_element(&m).expect("diagonal element")
    }

    fn sl3_principal(g: &LieAlgebra) -> LeafData {
        let mut s = QMat::zero(3, 3);
        s[(0, 0)] = rat_i(2);
        s[(2, 2)] = rat_i(-2);
        let mut f = QMat::zero(3, 3);
        f[(1, 0)] = rat_i(1);
        f[(2, 1)] = rat_i(1);
        LeafData::new(
            g,
            g.matrix_element(&s).unwrap(),
            g.covec_of(&g.matrix_element(&f).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn refine_and_unrefine_at_n_are_trivial_inverses() {
        let g = LieAlgebra::matrix(MatrixKind::Sl, 3).unwrap();
        let leaf = sl3_principal(&g);
        let pair = leaf.pair(&g).unwrap();
        let n = pair.nilpotent_datum(&g).unwrap();
        // The principal grading has g_1 = 0, so n = u and both moves are
        // bare superscript bookkeeping.
        assert_eq!(n, pair.u_space());

        let refined = unrefine(&g, &CoeffExpr::Leaf(leaf.clone()), &n).unwrap();
        let rl = refined.as_leaf().expect("r = n attaches the superscript in place");
        assert_eq!(rl.r_space.as_ref(), Some(&n));

        let plain = refine(&g, &refined).unwrap();
        assert_eq!(plain.as_leaf().unwrap(), &leaf);
    }

    #[test]
    fn refinement_preconditions_are_enforced() {
        let g = LieAlgebra::matrix(MatrixKind::Sl, 3).unwrap();
        let leaf = sl3_principal(&g);
        let tree = CoeffExpr::Leaf(leaf.clone());
        // Too small: the zero subspace misses the nilpotent datum.
        assert!(matches!(
            unrefine(&g, &tree, &Subspace::zero(g.dim())),
            Err(Error::MissingN(_))
        ));
        // Too large: the full algebra is not contained in u.
        assert!(matches!(
            unrefine(&g, &tree, &Subspace::full(g.dim())),
            Err(Error::NotIsotropic(_))
        ));
        // refine needs a refined leaf, unrefine an unrefined one.
        assert!(matches!(refine(&g, &tree), Err(Error::Usage(_))));
        let pair = leaf.pair(&g).unwrap();
        let refined =
            CoeffExpr::Leaf(leaf.with_r_space(&g, pair.nilpotent_datum(&g).unwrap()).unwrap());
        assert!(matches!(unrefine(&g, &refined, &pair.u_space()), Err(Error::Usage(_))));
    }

    /// The Heisenberg pair on split D₄: `H = S_α/2` grades the algebra with
    /// `g_1` the 8-dimensional symplectic space and `g_2` the highest-root
    /// line; the two 4-element root sets span complementary Lagrangians.
    fn d4_heisenberg_leaf(
        g: &LieAlgebra,
    ) -> (LeafData, Subspace, Subspace, Subspace, Subspace) {
        let hd = heisenberg_expansion(g).unwrap();
        let h = vec_scale(&hd.s_alpha, &rat(1, 2));
        let rs = g.root_data().system.as_ref().unwrap();
        let top = rs.highest_root();
        let f_top = g
            .root_vector(&top.iter().map(|c| -c).collect::<Vec<i64>>())
            .unwrap();
        let leaf = LeafData::new(g, h, g.covec_of(&f_top)).unwrap();

        let span_pos = |lats: &[Vec<i64>]| -> Subspace {
            Subspace::from_rows(
                g.dim(),
                lats.iter().map(|l| g.root_vector(l).unwrap()).collect(),
            )
        };
        let pair = leaf.pair(g).unwrap();
        let n = pair.nilpotent_datum(g).unwrap();
        let u = pair.u_space();
        let r = n.sum(&span_pos(&hd.psi_alpha)).unwrap();
        let r_prime = n.sum(&span_pos(&hd.psi_perp)).unwrap();
        (leaf, u, n, r, r_prime)
    }

    #[test]
    fn unrefine_sums_over_the_symplectic_complement() {
        let g = LieAlgebra::split(Series::D, 4).unwrap();
        let (leaf, u, n, r, _) = d4_heisenberg_leaf(&g);
        assert_eq!(u.dim(), 9);
        assert_eq!(n.dim(), 1);
        assert_eq!(r.dim(), 5);

        // A Lagrangian (plus the center) is its own ω_φ-complement in u.
        let perp = omega_perp(&g, &leaf.phi, &u, &r).unwrap();
        assert_eq!(perp, r);

        let tree = unrefine(&g, &CoeffExpr::Leaf(leaf.clone()), &r).unwrap();
        match &tree {
            CoeffExpr::SumRational { set, body } => {
                assert_eq!(set.space.as_ref(), Some(&u));
                assert_eq!(set.modulo.as_ref(), Some(&r));
                assert!(set.shifts.is_none(), "coset sums do not shift characters");
                match body.as_ref() {
                    CoeffExpr::Translate { word, body } => {
                        assert_eq!(word, &vec!["\\gamma".to_string()]);
                        assert_eq!(body.as_leaf().unwrap().r_space.as_ref(), Some(&r));
                    }
                    other => panic!("expected a translate under the sum, got {other:?}"),
                }
            }
            other => panic!("expected a rational sum, got {other:?}"),
        }

        // And back down: the refined coefficient is a compact integral of
        // the plain one over R/N of dimension 4.
        let refined = CoeffExpr::Leaf(leaf.with_r_space(&g, r.clone()).unwrap());
        let back = refine(&g, &refined).unwrap();
        match &back {
            CoeffExpr::IntCompact { space, body } => {
                assert_eq!(space.space, r);
                assert_eq!(space.modulo.as_ref(), Some(&n));
                assert_eq!(space.dim(), 4);
                assert!(body.leaves()[0].r_space.is_none());
            }
            other => panic!("expected a compact integral, got {other:?}"),
        }
    }

    #[test]
    fn root_exchange_swaps_the_lagrangian_halves() {
        let g = LieAlgebra::split(Series::D, 4).unwrap();
        let (leaf, _, n, r, r_prime) = d4_heisenberg_leaf(&g);
        assert_eq!(r.dim(), r_prime.dim());
        assert_eq!(r.intersect(&r_prime).unwrap(), n);

        let refined = CoeffExpr::Leaf(leaf.clone().with_r_space(&g, r.clone()).unwrap());
        let swapped = root_exchange(&g, &refined, &r_prime).unwrap();
        match &swapped {
            CoeffExpr::IntAdelic { space, body } => {
                assert_eq!(space.space, r);
                assert_eq!(space.modulo.as_ref(), Some(&n));
                assert_eq!(space.dim(), 4);
                match body.as_ref() {
                    CoeffExpr::Translate { word, body } => {
                        assert_eq!(word, &vec!["u".to_string()]);
                        assert_eq!(body.as_leaf().unwrap().r_space.as_ref(), Some(&r_prime));
                    }
                    other => panic!("expected a translate under the integral, got {other:?}"),
                }
            }
            other => panic!("expected an adelic integral, got {other:?}"),
        }

        // Exchanging a space with itself is the identity.
        assert_eq!(root_exchange(&g, &refined, &r).unwrap(), refined);

        // A non-isotropic target is rejected: adjoin a root `ε` together
        // with its symplectic partner `α_max − ε`, which bracket onto the
        // highest-root line.
        let hd = heisenberg_expansion(&g).unwrap();
        let rs = g.root_data().system.as_ref().unwrap();
        let eps = hd.psi_alpha[0].clone();
        let partner: Vec<i64> =
            rs.highest_root().iter().zip(&eps).map(|(t, e)| t - e).collect();
        let mixed = n
            .sum(&Subspace::from_rows(
                g.dim(),
                vec![
                    g.root_vector(&eps).unwrap(),
                    g.root_vector(&partner).unwrap(),
                    g.root_vector(&hd.psi_alpha[1]).unwrap(),
                    g.root_vector(&hd.psi_alpha[2]).unwrap(),
                ],
            ))
            .unwrap();
        assert!(matches!(
            root_exchange(&g, &refined, &mixed),
            Err(Error::NotIsotropic(_))
        ));

        // A dimension mismatch is rejected.
        assert!(matches!(
            root_exchange(&g, &refined, &n),
            Err(Error::DimMismatch(_))
        ));
    }

    /// Deformation of `(diag(2,1,−1,−2), φ_{E₃₂})` along `Z = diag(−2,0,0,2)`
    /// on sl₄: critical values {0, 3/4, 1, 5/4, 2}; at `t = 1` four cells sit
    /// at eigenvalue 1 and pair off symplectically, so the left/right swap
    /// is nontrivial there.
    fn sl4_swap_deformation(g: &LieAlgebra) -> Deformation {
        let h = diag4(g, [2, 1, -1, -2]);
        let z = diag4(g, [-2, 0, 0, 2]);
        let phi = g.covec_of(&mat4(g, &[(3, 2, 1)]));
        Deformation::new(g, h, z, phi).unwrap()
    }

    #[test]
    fn step_part_one_swaps_left_for_right_through_an_adelic_integral() {
        let g = LieAlgebra::matrix(MatrixKind::Sl, 4).unwrap();
        let d = sl4_swap_deformation(&g);
        let crit = d.critical_values();
        let expect: Vec<Rat> = [(0, 1), (3, 4), (1, 1), (5, 4), (2, 1)]
            .iter()
            .map(|&(n, m)| rat(n, m))
            .collect();
        assert_eq!(crit, expect);

        let t = rat_i(1);
        let snap = d.snapshot(&g, &t).unwrap();
        assert_eq!(snap.n.dim(), 1);
        assert_eq!(snap.l.dim(), 3);
        assert_eq!(snap.r.dim(), 3);
        assert_eq!(snap.l.intersect(&snap.r).unwrap(), snap.n);

        let leaf = LeafData::new(&g, d.at(&t), d.phi().clone())
            .unwrap()
            .with_r_space(&g, snap.l.clone())
            .unwrap();
        let out = step_expand(&g, &d, &t, &t, &CoeffExpr::Leaf(leaf)).unwrap();
        match &out {
            CoeffExpr::IntAdelic { space, body } => {
                assert_eq!(space.dim(), 2, "two cells swap sides at t = 1");
                match body.as_ref() {
                    CoeffExpr::Translate { word, body } => {
                        assert_eq!(word, &vec!["v".to_string()]);
                        assert_eq!(body.as_leaf().unwrap().r_space.as_ref(), Some(&snap.r));
                    }
                    other => panic!("expected a translate under the integral, got {other:?}"),
                }
            }
            other => panic!("expected an adelic integral, got {other:?}"),
        }
    }

    #[test]
    fn step_part_two_collapses_when_the_character_family_is_empty() {
        let g = LieAlgebra::matrix(MatrixKind::Sl, 4).unwrap();
        let d = sl4_swap_deformation(&g);
        let s = rat(3, 4);
        let t = rat_i(1);
        let leaf = LeafData::new(&g, d.at(&s), d.phi().clone()).unwrap();
        let out = step_expand(&g, &d, &s, &t, &CoeffExpr::Leaf(leaf)).unwrap();
        // At t = 1 the degree −1 cells with negative Z-eigenvalue all move
        // under e_φ = E₂₃, so the family degenerates to the single member.
        let got = out.as_leaf().expect("empty family collapses to the bare leaf");
        assert_eq!(got.s, d.at(&t));
        assert_eq!(&got.phi, d.phi());
        assert!(got.phi_prime.is_none());
    }

    #[test]
    fn step_part_two_emits_the_cut_character_family() {
        let g = LieAlgebra::matrix(MatrixKind::Sl, 4).unwrap();
        let d = sl4_swap_deformation(&g);
        let s = rat_i(1);
        let t = rat(5, 4);
        let leaf = LeafData::new(&g, d.at(&s), d.phi().clone()).unwrap();
        let out = step_expand(&g, &d, &s, &t, &CoeffExpr::Leaf(leaf)).unwrap();
        match &out {
            CoeffExpr::SumRational { set, body } => {
                // Exactly one cell survives all three cuts: E₁₄ at
                // eigenvalue −1, commuting with e_φ, with Z-eigenvalue −4.
                let space = set.space.as_ref().unwrap();
                assert_eq!(space.dim(), 1);
                assert!(space.contains_vec(&mat4(&g, &[(1, 4, 1)])));
                assert_eq!(set.shifts, Some(crate::expand::tree::ShiftSlot::PhiPrime));
                assert!(!set.punctured);
                let inner = body.as_leaf().unwrap();
                assert_eq!(inner.s, d.at(&t));
                assert!(inner.phi_prime.is_none());
            }
            other => panic!("expected a character-family sum, got {other:?}"),
        }
    }

    /// Deformation of `(diag(1,0,0,−1), φ_{E₄₁})` along `Z = diag(0,1,−1,0)`
    /// on sl₄: criticals {0, 1/2, 2}; the cell `E₃₁` reaches degree −2 at
    /// `t = 1` (a quasi-critical time inside the critical-free interval
    /// `(1/2, 2)`).
    fn sl4_absorb_deformation(g: &LieAlgebra) -> Deformation {
        let h = diag4(g, [1, 0, 0, -1]);
        let z = diag4(g, [0, 1, -1, 0]);
        let phi = g.covec_of(&mat4(g, &[(4, 1, 1)]));
        Deformation::new(g, h, z, phi).unwrap()
    }

    #[test]
    fn step_part_three_absorbs_the_component_reaching_minus_two() {
        let g = LieAlgebra::matrix(MatrixKind::Sl, 4).unwrap();
        let d = sl4_absorb_deformation(&g);
        assert_eq!(
            d.critical_values(),
            vec![rat_i(0), rat(1, 2), rat_i(2)]
        );
        let s = rat(1, 2);
        let t = rat_i(1);
        let f31 = mat4(&g, &[(3, 1, 1)]);
        let leaf = LeafData::new(&g, d.at(&s), d.phi().clone())
            .unwrap()
            .with_phi_prime(&g, g.covec_of(&f31))
            .unwrap();
        let out = step_expand(&g, &d, &s, &t, &CoeffExpr::Leaf(leaf)).unwrap();
        // H_1 = diag(1,1,−1,−1) grades evenly, so the degree −1 family is
        // empty and the absorbed pair stands alone.
        let got = out.as_leaf().expect("even grading leaves no family");
        assert_eq!(got.s, d.at(&t));
        let f41 = mat4(&g, &[(4, 1, 1)]);
        let expected_phi = g.covec_of(&crate::ratlin::vec_add(&f41, &f31));
        assert_eq!(got.phi, expected_phi);
        assert!(got.phi_prime.is_none());
    }

    #[test]
    fn step_part_four_carries_the_third_entry_downward() {
        let g = LieAlgebra::matrix(MatrixKind::Sl, 4).unwrap();
        let d = sl4_absorb_deformation(&g);
        let s = rat(1, 2);
        let t = rat_i(1);
        let f21 = mat4(&g, &[(2, 1, 1)]);
        let leaf = LeafData::new(&g, d.at(&t), d.phi().clone())
            .unwrap()
            .with_phi_prime(&g, g.covec_of(&f21))
            .unwrap();
        let out = step_expand(&g, &d, &s, &t, &CoeffExpr::Leaf(leaf)).unwrap();
        let got = out.as_leaf().expect("no component reaches −2 at H_s");
        assert_eq!(got.s, d.at(&s));
        assert_eq!(&got.phi, d.phi());
        assert_eq!(got.phi_prime.as_ref(), Some(&g.covec_of(&f21)));
    }

    #[test]
    fn step_rejects_bad_intervals_and_mismatched_data() {
        let g = LieAlgebra::matrix(MatrixKind::Sl, 4).unwrap();
        let d = sl4_swap_deformation(&g);
        let leaf = LeafData::new(&g, d.at(&rat(3, 4)), d.phi().clone()).unwrap();
        let tree = CoeffExpr::Leaf(leaf);
        // The critical value 1 lies inside (3/4, 5/4).
        assert!(matches!(
            step_expand(&g, &d, &rat(3, 4), &rat(5, 4), &tree),
            Err(Error::IntervalNotRegular(_))
        ));
        // Reversed endpoints.
        assert!(matches!(
            step_expand(&g, &d, &rat_i(1), &rat(3, 4), &tree),
            Err(Error::Usage(_))
        ));
        // A leaf carrying a different character.
        let other = LeafData::new(
            &g,
            diag4(&g, [1, 0, 0, -1]),
            g.covec_of(&mat4(&g, &[(4, 1, 1)])),
        )
        .unwrap();
        assert!(matches!(
            step_expand(&g, &d, &rat(3, 4), &rat_i(1), &CoeffExpr::Leaf(other)),
            Err(Error::PhiMismatch(_))
        ));
        // A third entry that falls below −2 inside the step.
        let d2 = sl4_absorb_deformation(&g);
        let bad = LeafData::new(&g, d2.at(&rat(3, 4)), d2.phi().clone())
            .unwrap()
            .with_phi_prime(&g, g.covec_of(&mat4(&g, &[(3, 1, 1)])))
            .unwrap();
        assert!(matches!(
            step_expand(&g, &d2, &rat(3, 4), &rat(3, 2), &CoeffExpr::Leaf(bad)),
            Err(Error::EigenspaceViolation(_))
        ));
    }

    #[test]
    fn group_adjoint_matches_the_exponential_automorphism() {
        let g = LieAlgebra::matrix(MatrixKind::Sl, 3).unwrap();
        let mut e12 = QMat::zero(3, 3);
        e12[(0, 1)] = rat_i(1);
        let x = g.matrix_element(&e12).unwrap();
        let a_word = aut_matrix(&g, &[x]).unwrap();
        // exp(E₁₂) = I + E₁₂ since E₁₂² = 0.
        let exp = QMat::identity(3).add(&e12).unwrap();
        let a_group = group_adjoint(&g, &exp).unwrap();
        assert_eq!(a_word, a_group);
        assert!(check_automorphism(&g, &a_word).is_ok());
    }

    #[test]
    fn check_automorphism_rejects_non_homomorphisms() {
        let g = LieAlgebra::matrix(MatrixKind::Sl, 2).unwrap();
        let n = g.dim();
        assert!(matches!(
            check_automorphism(&g, &QMat::zero(n, n)),
            Err(Error::NotAutomorphism(_))
        ));
        // Doubling one basis coordinate is invertible but breaks brackets.
        let mut m = QMat::identity(n);
        m[(0, 0)] = rat_i(2);
        assert!(matches!(check_automorphism(&g, &m), Err(Error::NotAutomorphism(_))));
        assert!(matches!(
            check_automorphism(&g, &QMat::identity(n + 1)),
            Err(Error::DimMismatch(_))
        ));
    }
}
