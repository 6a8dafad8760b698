//! Expansion along a Heisenberg parabolic in a simply-laced simple algebra.
//!
//! A simple root `α` is a *Heisenberg root* when `g^{S_α}_{>0}` is a
//! Heisenberg algebra for the grading by `S_α` (the element with
//! `α(S_α) = 2` and `β(S_α) = 0` for the other simples) — equivalently when
//! `dim g^{S_α}_4 = 1`. Type `A` has none; types `D` and `E` have exactly
//! one. The expansion writes `η` through coefficients of the pair
//! `(S_α, φ)`, and the companion identity writes a neutral coefficient
//! `F_{h_α,φ}` through the same data.

use num_traits::Zero;

use crate::expand::tree::{CoeffExpr, LeafData, SetDescriptor, ShiftSlot};
use crate::liealg::roots::RootSystem;
use crate::liealg::{Covec, LieAlgebra};
use crate::ratlin::{rat, rat_i, vec_scale, Rat, Subspace};
use crate::{ensure_theorem, Error, Result};

/// Locate the Heisenberg root of a simply-laced root system: the unique
/// simple root whose coefficient in exactly one positive root equals 2.
/// Returns `None` for type `A`, where the highest-root coefficients are all
/// 1 and no simple qualifies.
pub fn heisenberg_root(rs: &RootSystem) -> Result<Option<usize>> {
    if !rs.simply_laced() {
        return Err(Error::NotSimplyLaced(format!(
            "Heisenberg-root search is defined for simply-laced systems, not {:?}",
            rs.cartan_type
        )));
    }
    for i in 0..rs.rank() {
        let mut twos = 0usize;
        let mut maxc = 0i64;
        for beta in rs.positive_roots() {
            maxc = maxc.max(beta[i]);
            if beta[i] == 2 {
                twos += 1;
            }
        }
        if twos == 1 {
            ensure_theorem!(
                maxc == 2,
                "simple root {i} has a unique coefficient-2 root but coefficients above 2"
            );
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// All data of the Heisenberg expansion at the Heisenberg root `α`.
#[derive(Clone, Debug)]
pub struct HeisenbergData {
    /// Index of `α` among the simple roots (Bourbaki order).
    pub root_index: usize,
    /// `S_α` (algebra coordinates): `α(S_α) = 2`, other simples vanish.
    pub s_alpha: Vec<Rat>,
    /// The coroot `h_α`, neutral for any `φ ∈ g^×_{−α}`.
    pub h_alpha: Vec<Rat>,
    /// `Ψ_α`: positive roots `ε` with `ε(S_α) = 2` and `⟨ε, α⟩ ≤ 0`
    /// (lattice coordinates).
    pub psi_alpha: Vec<Vec<i64>>,
    /// `Ψ_α^⊥`: positive roots `ε` with `ε(S_α) = 2` and `⟨ε, α⟩ ≥ 1`;
    /// together with `Ψ_α` a Lagrangian splitting of `g^{S_α}_2`.
    pub psi_perp: Vec<Vec<i64>>,
    /// Negative roots `β` with `⟨α, β⟩ = 1` (lattice coordinates); `Ω_α` is
    /// the exponential of their span.
    pub omega_alpha: Vec<Vec<i64>>,
    /// Word of simple reflections (applied left to right) carrying `α` to
    /// the highest root; `γ_α` is the corresponding Weyl representative.
    pub gamma_word: Vec<usize>,
    /// `f`-side span of `⊕_{ε ∈ Ψ_α} g_{−ε}` (the character shifts).
    pub psi_space: Subspace,
    /// Span of the negative root spaces listed in `omega_alpha`.
    pub omega_space: Subspace,
    /// Expansion of `η` along the Heisenberg parabolic.
    pub eta_tree: CoeffExpr,
    /// Expansion of the neutral coefficient `F_{h_α,φ}` for the
    /// representative `φ` dual to the `−α` root vector.
    pub pair_tree: CoeffExpr,
}

impl HeisenbergData {
    /// The automorphism word of `γ_α` in `aut_apply` convention (last
    /// factor acts first).
    pub fn gamma_aut_word(&self, g: &LieAlgebra) -> Vec<Vec<Rat>> {
        let mut word = Vec::new();
        for &i in self.gamma_word.iter().rev() {
            word.extend(g.simple_reflection_word(i));
        }
        word
    }
}

/// Span of the root spaces of the given lattice vectors.
fn root_span(g: &LieAlgebra, lats: &[Vec<i64>]) -> Result<Subspace> {
    let rows = lats
        .iter()
        .map(|l| {
            g.root_vector(l)
                .ok_or_else(|| Error::Unsupported("missing root vector".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace::from_rows(g.dim(), rows))
}

/// Build the full Heisenberg expansion data for a simply-laced Chevalley
/// algebra with a Heisenberg root.
pub fn heisenberg_expansion(g: &LieAlgebra) -> Result<HeisenbergData> {
    let rs = g
        .root_data()
        .system
        .as_ref()
        .ok_or_else(|| Error::Unsupported("the algebra carries no abstract root system".into()))?;
    let root_index = heisenberg_root(rs)?.ok_or_else(|| {
        Error::Unsupported(format!("{} has no Heisenberg root", g.name()))
    })?;
    let rank = rs.rank();

    // S_α: solve the Cartan-matrix system ⟨α_j, S⟩ = 2δ_{jα} for the Cartan
    // coordinates (the Cartan basis elements are the simple coroots).
    let cartan_mat = crate::ratlin::QMat::from_rows(
        (0..rank)
            .map(|j| (0..rank).map(|i| rat_i(rs.cartan[j][i])).collect())
            .collect(),
    )?;
    let mut rhs = vec![Rat::zero(); rank];
    rhs[root_index] = rat_i(2);
    let coords = cartan_mat
        .solve_affine(&rhs)?
        .ok_or_else(|| Error::SearchFailed("singular Cartan matrix".into()))?;
    let mut s_alpha = g.zero_elem();
    for (i, c) in coords.iter().enumerate() {
        let b = g.basis_elem(i);
        for (si, bi) in s_alpha.iter_mut().zip(b.iter()) {
            *si += c.clone() * bi.clone();
        }
    }
    let h_alpha = g.basis_elem(root_index);

    let mut psi_alpha = Vec::new();
    let mut psi_perp = Vec::new();
    let mut omega_alpha = Vec::new();
    for beta in rs.positive_roots() {
        if beta[root_index] == 1 {
            if rs.pairing(beta, root_index) <= 0 {
                psi_alpha.push(beta.clone());
            } else {
                psi_perp.push(beta.clone());
            }
        }
        if rs.pairing(beta, root_index) == -1 {
            omega_alpha.push(beta.iter().map(|c| -c).collect());
        }
    }
    let level_two = rs.positive_roots().iter().filter(|b| b[root_index] == 1).count();
    ensure_theorem!(
        psi_alpha.len() * 2 == level_two && psi_perp.len() * 2 == level_two,
        "the two halves of g^{{S_α}}_2 are not Lagrangian"
    );

    // γ_α: Weyl word moving α to the highest root.
    let alpha_lat: Vec<i64> = (0..rank).map(|i| i64::from(i == root_index)).collect();
    let words = rs.weyl_orbit_words(&alpha_lat);
    let gamma_word = words
        .get(&rs.highest_root())
        .cloned()
        .ok_or_else(|| Error::SearchFailed("highest root not in the Weyl orbit of α".into()))?;

    let psi_space = root_span(
        g,
        &psi_alpha.iter().map(|l| l.iter().map(|c| -c).collect()).collect::<Vec<_>>(),
    )?;
    let omega_space = root_span(g, &omega_alpha)?;

    // Verify the Weyl word: Ad(γ_α) carries the α root line to the highest
    // root line and h_α to the highest coroot (= S_α/2 on the Cartan).
    let data = HeisenbergData {
        root_index,
        s_alpha: s_alpha.clone(),
        h_alpha: h_alpha.clone(),
        psi_alpha,
        psi_perp,
        omega_alpha,
        gamma_word,
        psi_space: psi_space.clone(),
        omega_space: omega_space.clone(),
        eta_tree: CoeffExpr::zero(),
        pair_tree: CoeffExpr::zero(),
    };
    let aut = data.gamma_aut_word(g);
    let e_alpha = g
        .root_vector(&alpha_lat)
        .ok_or_else(|| Error::Unsupported("missing simple root vector".into()))?;
    let image = g.aut_apply(&aut, &e_alpha)?;
    let top_line = root_span(g, &[rs.highest_root()])?;
    ensure_theorem!(
        top_line.contains_vec(&image),
        "γ_α does not carry the α root space to the highest root space"
    );
    let h_image = g.aut_apply(&aut, &h_alpha)?;
    ensure_theorem!(
        h_image == vec_scale(&s_alpha, &rat(1, 2)),
        "γ_α does not carry h_α to S_α/2"
    );

    // Leaf characters: φ dual to the −α root vector.
    let f_alpha = g
        .root_vector(&alpha_lat.iter().map(|c| -c).collect::<Vec<i64>>())
        .ok_or_else(|| Error::Unsupported("missing lowering root vector".into()))?;
    let phi_rep = g.covec_of(&f_alpha);

    let grading = g.grading(&s_alpha)?;
    let minus_two = grading.at(&rat_i(-2));

    // Expansion of η: the degenerate family over all of (g*)^{S_α}_{−2}
    // plus the generic family over φ ∈ g^×_{−α}, Weyl-translated and
    // shifted by the Ψ_α characters.
    let degenerate = CoeffExpr::sum(
        SetDescriptor::characters(
            "\\varphi \\in (\\mathfrak{g}^*)^{S_\\alpha}_{-2}",
            minus_two,
            ShiftSlot::Phi,
        ),
        CoeffExpr::Leaf(LeafData::new(g, s_alpha.clone(), Covec::zero(g.dim()))?),
    );
    let alpha_line = root_span(g, &[alpha_lat.iter().map(|c| -c).collect::<Vec<i64>>()])?;
    let generic_leaf = LeafData::new(g, s_alpha.clone(), phi_rep.clone())?;
    let generic = CoeffExpr::sum(
        SetDescriptor::characters(
            "\\varphi \\in \\mathfrak{g}^{\\times}_{-\\alpha}",
            alpha_line.clone(),
            ShiftSlot::Phi,
        )
        .punctured(),
        CoeffExpr::sum(
            SetDescriptor {
                label: "\\omega \\in \\Omega_\\alpha".into(),
                space: Some(omega_space.clone()),
                modulo: None,
                punctured: false,
                shifts: None,
            },
            CoeffExpr::sum(
                SetDescriptor::characters(
                    "\\psi \\in \\bigoplus_{\\varepsilon\\in\\Psi_\\alpha}\\mathfrak{g}^*_{-\\varepsilon}",
                    psi_space.clone(),
                    ShiftSlot::Phi,
                ),
                CoeffExpr::translate(
                    vec!["\\omega", "\\gamma_\\alpha"],
                    CoeffExpr::Leaf(generic_leaf.clone()),
                ),
            ),
        ),
    );
    let eta_tree = CoeffExpr::Combine(vec![degenerate, generic]).normalized();

    // Expansion of the neutral coefficient F_{h_α, φ} for the representative.
    let pair_tree = CoeffExpr::sum(
        SetDescriptor {
            label: "\\omega \\in \\Omega_\\alpha".into(),
            space: Some(omega_space),
            modulo: None,
            punctured: false,
            shifts: None,
        },
        CoeffExpr::sum(
            SetDescriptor::characters(
                "\\psi \\in \\bigoplus_{\\varepsilon\\in\\Psi_\\alpha}\\mathfrak{g}^*_{-\\varepsilon}",
                psi_space,
                ShiftSlot::Phi,
            ),
            CoeffExpr::translate(vec!["\\omega"], CoeffExpr::Leaf(generic_leaf)),
        ),
    );

    Ok(HeisenbergData { eta_tree, pair_tree, ..data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::roots::Series;

    #[test]
    fn heisenberg_root_locates_the_adjoint_node() {
        for n in 2..=7 {
            let rs = RootSystem::new(Series::A, n).unwrap();
            assert_eq!(heisenberg_root(&rs).unwrap(), None, "type A has no Heisenberg root");
        }
        for n in 4..=6 {
            let rs = RootSystem::new(Series::D, n).unwrap();
            assert_eq!(heisenberg_root(&rs).unwrap(), Some(1), "D_n: the second node");
        }
        let expected = [(6, 1), (7, 0), (8, 7)];
        for (n, idx) in expected {
            let rs = RootSystem::new(Series::E, n).unwrap();
            assert_eq!(heisenberg_root(&rs).unwrap(), Some(idx));
        }
        for series in [Series::B, Series::C] {
            let rs = RootSystem::new(series, 3).unwrap();
            assert!(matches!(heisenberg_root(&rs), Err(Error::NotSimplyLaced(_))));
        }
    }

    #[test]
    fn d4_expansion_matches_the_hand_count() {
        let g = LieAlgebra::split(Series::D, 4).unwrap();
        let hd = heisenberg_expansion(&g).unwrap();

        assert_eq!(hd.root_index, 1);
        let lat = |v: [i64; 4]| v.to_vec();
        let mut psi = hd.psi_alpha.clone();
        psi.sort();
        let mut expected_psi = vec![
            lat([1, 1, 1, 0]),
            lat([1, 1, 0, 1]),
            lat([0, 1, 1, 1]),
            lat([1, 1, 1, 1]),
        ];
        expected_psi.sort();
        assert_eq!(psi, expected_psi);

        let mut perp = hd.psi_perp.clone();
        perp.sort();
        let mut expected_perp = vec![
            lat([0, 1, 0, 0]),
            lat([1, 1, 0, 0]),
            lat([0, 1, 1, 0]),
            lat([0, 1, 0, 1]),
        ];
        expected_perp.sort();
        assert_eq!(perp, expected_perp);

        let mut omega = hd.omega_alpha.clone();
        omega.sort();
        let mut expected_omega = vec![
            lat([-1, 0, 0, 0]),
            lat([0, 0, -1, 0]),
            lat([0, 0, 0, -1]),
            lat([-1, -1, -1, -1]),
        ];
        expected_omega.sort();
        assert_eq!(omega, expected_omega);

        assert_eq!(hd.psi_space.dim(), 4);
        assert_eq!(hd.omega_space.dim(), 4);

        // The S_α grading is the Heisenberg one: 8 cells at level 2 above
        // the 1-dimensional top level 4.
        let gr = g.grading(&hd.s_alpha).unwrap();
        assert_eq!(gr.at(&rat_i(2)).dim(), 8);
        assert_eq!(gr.at(&rat_i(4)).dim(), 1);
        assert_eq!(gr.at(&rat_i(1)).dim(), 0, "no odd levels");

        // h_α is the coroot: α(h_α) = 2 via the pairing with the α root line.
        let alpha = [0i64, 1, 0, 0];
        let e_alpha = g.root_vector(&alpha.to_vec()).unwrap();
        let bracket = g.bracket(&hd.h_alpha, &e_alpha);
        assert_eq!(bracket, crate::ratlin::vec_scale(&e_alpha, &rat_i(2)));

        // The η-expansion has the degenerate and the generic family; the
        // neutral-pair expansion is a single translated family.
        let eta_leaves = hd.eta_tree.leaves();
        assert_eq!(eta_leaves.len(), 2);
        assert_eq!(eta_leaves.iter().filter(|l| l.phi.is_zero()).count(), 1);
        for leaf in &eta_leaves {
            assert_eq!(leaf.s, hd.s_alpha);
        }
        let pair_leaves = hd.pair_tree.leaves();
        assert_eq!(pair_leaves.len(), 1);
        assert!(!pair_leaves[0].phi.is_zero());

        // γ_α really conjugates the neutral pair to the parabolic one.
        let aut = hd.gamma_aut_word(&g);
        let h_image = g.aut_apply(&aut, &hd.h_alpha).unwrap();
        assert_eq!(h_image, vec_scale(&hd.s_alpha, &rat(1, 2)));
    }

    #[test]
    fn algebras_without_a_heisenberg_root_are_rejected() {
        let g = LieAlgebra::split(Series::A, 3).unwrap();
        assert!(matches!(heisenberg_expansion(&g), Err(Error::Unsupported(_))));
    }
}
