//! The reduction driver: rewrite any coefficient `F_{S,φ,φ′}` as an
//! explicit expression in coefficients of Levi-distinguished pairs.
//!
//! The algorithm deforms the pair along a freshly built direction `Z′`
//! toward Levi-distinguished position. If no quasi-critical value lies in
//! `(0, T]` the whole family collapses to the single deformed coefficient
//! (third entries die on Levi-distinguished pairs). Otherwise the first
//! quasi-critical value `s` splits the third entry, the pair absorbs its
//! degree-`−2` component, and the coefficient is determined by a family of
//! shifted third entries at `H_s`; the family is stratified by support into
//! finitely many branches, each reduced recursively with a fresh `Z′`.
//!
//! Termination is certified: at every branching step the pair complexity
//! `(orbit dimension of φ, pair index)` strictly increases lexicographically
//! and both entries are bounded by the dimension data of `g`, so the
//! recursion depth is finite. A violation of the strict increase is a bug
//! and surfaces as a theorem-violation error, never as a wrong tree.

use num_traits::Zero;

use crate::deform::{build_zprime, Deformation};
use crate::expand::rewrites::split_third_entry;
use crate::expand::tree::{
    CertStep, CoeffExpr, LeafData, ReductionCertificate, SetDescriptor, ShiftSlot,
};
use crate::liealg::{Covec, LieAlgebra};
use crate::orbits::{closure_leq, jordan_partition};
use crate::pairs::{Pair, Triple};
use crate::ratlin::{rat_i, rat_str, Rat, Subspace};
use crate::{ensure_theorem, Error, Result};

/// Hard caps keeping a buggy recursion from spinning: total recursive
/// calls, and the dimension of a branching character space (the branch
/// factor is `2^dim`).
const MAX_CALLS: usize = 20_000;
const MAX_BRANCH_DIM: usize = 12;

struct Reducer<'a> {
    g: &'a LieAlgebra,
    steps: Vec<CertStep>,
    calls: usize,
}

/// Orbit measurements for the certificate: the orbit dimension
/// `dim g − dim g_φ` (always available) and the Jordan-partition label
/// (when a matrix realization exists).
fn orbit_data(g: &LieAlgebra, f: &[Rat]) -> Result<(usize, Option<crate::orbits::OrbitLabel>)> {
    let dim = g.dim() - g.centralizer(f).dim();
    let label = match jordan_partition(g, f) {
        Ok(label) => Some(label),
        Err(Error::NoMatrixRealization(_)) => None,
        Err(e) => return Err(e),
    };
    Ok((dim, label))
}

impl<'a> Reducer<'a> {
    fn reduce(
        &mut self,
        s_elem: Vec<Rat>,
        phi: Covec,
        phi_prime: Covec,
        depth: usize,
    ) -> Result<CoeffExpr> {
        self.calls += 1;
        if self.calls > MAX_CALLS {
            return Err(Error::SearchFailed(format!(
                "reduction exceeded the {MAX_CALLS}-call budget"
            )));
        }
        if depth > 3 * self.g.dim() + 8 {
            return Err(Error::SearchFailed("reduction recursion too deep".into()));
        }
        let g = self.g;
        eprintln!("REDUCE depth={} s={:?} phi={:?} phi'={:?}", depth, s_elem.iter().map(crate::ratlin::rat_str).collect::<Vec<_>>(), phi.0.iter().map(crate::ratlin::rat_str).collect::<Vec<_>>(), phi_prime.0.iter().map(crate::ratlin::rat_str).collect::<Vec<_>>());
        let pair = Pair::new(g, s_elem.clone(), phi.clone())?;
        Triple::from_pair(g, pair.clone(), phi_prime.clone())?;

        // Third entries vanish on Levi-distinguished and on neutral pairs.
        if pair.is_levi_distinguished(g)? {
            return Ok(CoeffExpr::Leaf(LeafData::new(g, s_elem, phi)?));
        }
        let phi_prime = if !phi_prime.is_zero() && pair.is_neutral(g)? {
            Covec::zero(g.dim())
        } else {
            phi_prime
        };

        let zp = build_zprime(g, &pair)?;
        let d = Deformation::new(g, s_elem.clone(), zp.zprime.clone(), phi.clone())?;
        let quasis: Vec<Rat> = d
            .quasi_critical_values()
            .into_iter()
            .filter(|t| *t > Rat::zero() && *t <= zp.t_value)
            .collect();

        if quasis.is_empty() {
            // Straight run to T: every member of the determining family
            // collapses onto the Levi-distinguished deformed pair.
            let h_t = d.at(&zp.t_value);
            let end = Pair::new(g, h_t.clone(), phi.clone())?;
            ensure_theorem!(
                end.is_levi_distinguished(g)?,
                "deformation endpoint at T = {} is not Levi-distinguished",
                rat_str(&zp.t_value)
            );
            let idx = pair.index(g)?;
            let idx_end = end.index(g)?;
            let (dim_o, label) = orbit_data(g, pair.f_phi())?;
            let part = label.map(|l| l.partition);
            self.steps.push(CertStep {
                t: zp.t_value.clone(),
                rule: "terminal deformation to Levi-distinguished position".into(),
                orbit_dim_before: dim_o,
                orbit_dim_after: dim_o,
                partition_before: part.clone(),
                partition_after: part,
                index_before: idx,
                index_after: idx_end,
                branching: false,
            });
            return Ok(CoeffExpr::Leaf(LeafData::new(g, h_t, phi)?));
        }

        // First quasi-critical value: split the third entry there.
        let s = quasis[0].clone();
        let h_s = d.at(&s);
        let (psi, rest) = match split_third_entry(g, &h_s, &phi_prime) {
            Ok(v) => v,
            // At the first quasi-critical value no component can have
            // dropped below −2; a violation indicates a driver bug.
            Err(Error::EigenspaceViolation(m)) => {
                return Err(Error::TheoremViolation(format!(
                    "third entry fell below -2 before the first quasi-critical value: {m}"
                )))
            }
            Err(e) => return Err(e),
        };
        let phi_new = phi.add(&psi);

        // Certificate: the complexity (orbit dimension, index) must grow.
        let (dim_before, label_before) = orbit_data(g, pair.f_phi())?;
        let index_before = pair.index(g)?;
        let pair_new = Pair::new(g, h_s.clone(), phi_new.clone())?;
        let (dim_after, label_after) = orbit_data(g, pair_new.f_phi())?;
        let index_after = pair_new.index(g)?;
        let step = CertStep {
            t: s.clone(),
            rule: if psi.is_zero() {
                "quasi-critical pass-through".into()
            } else {
                "quasi-critical absorption of the degree -2 component".into()
            },
            orbit_dim_before: dim_before,
            orbit_dim_after: dim_after,
            partition_before: label_before.map(|l| l.partition),
            partition_after: label_after.map(|l| l.partition),
            index_before,
            index_after,
            branching: true,
        };
        if !step.strict_increase() {
            return Err(Error::TheoremViolation(format!(
                "certificate violation at t = {}: complexity ({dim_before}, {index_before}) -> ({dim_after}, {index_after}) did not strictly increase",
                rat_str(&s)
            )));
        }
        self.steps.push(step);

        // Character space of the determining family at H_s. With no
        // component absorbed, the finer set cut by the centralizer of e_φ
        // and the negative Z′-part applies; otherwise all of degree −1.
        let gr_s = g.grading(&h_s)?;
        let mut c_space = gr_s.at(&rat_i(-1));
        let mut c_label = "\\psi'' \\in (\\mathfrak{g}^*)^{H_s}_{-1}".to_string();
        if psi.is_zero() {
            if !phi.is_zero() {
                let dec = pair.decompose_hz(g)?;
                let triple = dec.triple.ok_or_else(|| {
                    Error::SearchFailed("no sl2 triple for a nonzero character".into())
                })?;
                c_space = c_space.intersect(&g.centralizer(&triple.e))?;
            }
            let mut z_neg = Subspace::zero(g.dim());
            for (_, b, sub) in d.bigraded_support() {
                if *b < Rat::zero() {
                    z_neg = z_neg.sum(sub)?;
                }
            }
            c_space = c_space.intersect(&z_neg)?;
            c_label = "\\psi'' \\in (\\mathfrak{g}^*)^{H_s}_{-1}\\cap(\\mathfrak{g}^*)^{e_\\varphi}\\cap(\\mathfrak{g}^*)^{Z'}_{<0}"
                .to_string();
        }
        let cells: Vec<Vec<Rat>> = c_space.basis().to_vec();
        if cells.len() > MAX_BRANCH_DIM {
            return Err(Error::SearchFailed(format!(
                "branching character space has dimension {} (cap {MAX_BRANCH_DIM})",
                cells.len()
            )));
        }

        // Stratify the family by support in the echelon basis of the
        // character space: one branch per subset of cells, represented by
        // the coefficient-1 member (the other members are torus-equivalent).
        let mut branches = Vec::new();
        for mask in 0..(1usize << cells.len()) {
            let mut rep = vec![Rat::zero(); g.dim()];
            let mut ids: Vec<usize> = Vec::new();
            for (i, cell) in cells.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    ids.push(i);
                    for (ri, ci) in rep.iter_mut().zip(cell.iter()) {
                        *ri += ci.clone();
                    }
                }
            }
            let psi2 = g.covec_of(&rep);
            let body = self.reduce(h_s.clone(), phi_new.clone(), rest.add(&psi2), depth + 1)?;
            if mask == 0 {
                branches.push(body);
            } else {
                let span = Subspace::from_rows(
                    g.dim(),
                    ids.iter().map(|&i| cells[i].clone()).collect(),
                );
                let id_list =
                    ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
                branches.push(CoeffExpr::sum(
                    SetDescriptor {
                        label: format!("{c_label} [{id_list}]"),
                        space: Some(span),
                        modulo: None,
                        punctured: true,
                        shifts: Some(ShiftSlot::PhiPrime),
                    },
                    body,
                ));
            }
        }
        Ok(CoeffExpr::Combine(branches))
    }
}

/// Reduce a leaf coefficient to an expression in Levi-distinguished data,
/// returning the rewritten tree and the termination certificate.
///
/// Postconditions (verified before returning): every output leaf is a
/// Levi-distinguished pair, and its orbit is at least the input orbit in
/// the closure order.
pub fn reduce_to_levi_distinguished(
    g: &LieAlgebra,
    e: &CoeffExpr,
) -> Result<(CoeffExpr, ReductionCertificate)> {
    let leaf = e.as_leaf()?;
    if leaf.r_space.is_some() {
        return Err(Error::Usage("the reduction driver applies to unrefined leaves".into()));
    }
    let phi_prime = leaf.phi_prime.clone().unwrap_or_else(|| Covec::zero(g.dim()));

    // Inputs that are already Levi-distinguished pairs are returned as-is
    // with an empty certificate (for triples, the third entry still dies).
    let pair = leaf.pair(g)?;
    if pair.is_levi_distinguished(g)? {
        let tree = if phi_prime.is_zero() {
            e.clone()
        } else {
            CoeffExpr::Leaf(LeafData::new(g, leaf.s.clone(), leaf.phi.clone())?)
        };
        return Ok((tree, ReductionCertificate::default()));
    }

    let mut reducer = Reducer { g, steps: Vec::new(), calls: 0 };
    let tree = reducer
        .reduce(leaf.s.clone(), leaf.phi.clone(), phi_prime, 0)?
        .normalized();
    let certificate = ReductionCertificate { steps: reducer.steps };
    certificate.verify()?;

    // Leaf verification pass.
    let (in_dim, in_label) = orbit_data(g, &g.elem_of(&leaf.phi))?;
    for out in tree.leaves() {
        let p = out.pair(g)?;
        ensure_theorem!(
            p.is_levi_distinguished(g)?,
            "reduction produced a leaf that is not Levi-distinguished"
        );
        let (out_dim, out_label) = orbit_data(g, p.f_phi())?;
        ensure_theorem!(
            out_dim >= in_dim,
            "reduction produced a leaf below the input orbit ({out_dim} < {in_dim})"
        );
        if let (Some(a), Some(b)) = (&in_label, &out_label) {
            ensure_theorem!(
                closure_leq(a, b)?,
                "reduction produced a leaf orbit not above the input orbit"
            );
        }
    }
    Ok((tree, certificate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::tree::HypTag;
    use crate::liealg::matrix::MatrixKind;
    use crate::ratlin::{rat_i, QMat};

    fn sl3_principal_leaf(g: &LieAlgebra) -> LeafData {
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
    fn a_distinguished_pair_reduces_to_itself() {
        let g = LieAlgebra::matrix(MatrixKind::Sl, 3).unwrap();
        let leaf = sl3_principal_leaf(&g).with_tag(HypTag::Cuspidal);
        let input = CoeffExpr::Leaf(leaf.clone());
        let (tree, cert) = reduce_to_levi_distinguished(&g, &input).unwrap();
        assert_eq!(tree, input, "an already-distinguished pair is returned unchanged");
        assert!(cert.steps.is_empty());
    }

    #[test]
    fn a_distinguished_triple_sheds_its_third_entry() {
        let g = LieAlgebra::matrix(MatrixKind::Sl, 3).unwrap();
        let mut extra = QMat::zero(3, 3);
        extra[(0, 0)] = rat_i(1);
        extra[(1, 1)] = rat_i(-1);
        let leaf = sl3_principal_leaf(&g)
            .with_phi_prime(&g, g.covec_of(&g.matrix_element(&extra).unwrap()))
            .unwrap();
        let (tree, cert) = reduce_to_levi_distinguished(&g, &CoeffExpr::Leaf(leaf)).unwrap();
        assert!(cert.steps.is_empty());
        match tree {
            CoeffExpr::Leaf(out) => assert!(out.phi_prime.is_none(), "the third entry dies"),
            other => panic!("expected a leaf, got {other:?}"),
        }
    }

    #[test]
    fn the_zero_triple_on_gl3_reaches_distinguished_orbits() {
        let g = LieAlgebra::matrix(MatrixKind::Gl, 3).unwrap();
        let zero = LeafData::new(&g, g.zero_elem(), Covec::zero(g.dim())).unwrap();
        let (tree, cert) = reduce_to_levi_distinguished(&g, &CoeffExpr::Leaf(zero)).unwrap();

        let leaves = tree.leaves();
        assert!(!leaves.is_empty());
        assert!(!cert.steps.is_empty(), "the zero pair is not distinguished, so steps fire");
        cert.verify().unwrap();

        let mut partitions = std::collections::BTreeSet::new();
        for leaf in &leaves {
            let pair = leaf.pair(&g).unwrap();
            assert!(pair.is_levi_distinguished(&g).unwrap());
            assert!(leaf.phi_prime.is_none(), "output leaves are pairs, not triples");
            let label = jordan_partition(&g, &g.elem_of(&leaf.phi)).unwrap();
            partitions.insert(label.partition);
        }
        for p in &partitions {
            assert!(
                *p == vec![3] || *p == vec![2, 1] || *p == vec![1, 1, 1],
                "unexpected gl3 partition {p:?}"
            );
        }
        assert!(partitions.contains(&vec![3]), "the open stratum hits the principal orbit");
    }

    #[test]
    fn the_driver_rejects_non_leaf_and_refined_inputs() {
        let g = LieAlgebra::matrix(MatrixKind::Sl, 3).unwrap();
        let leaf = sl3_principal_leaf(&g);
        let combined = CoeffExpr::Combine(vec![CoeffExpr::Leaf(leaf.clone())]);
        assert!(matches!(reduce_to_levi_distinguished(&g, &combined), Err(Error::Usage(_))));
        let refined = leaf.with_r_space(&g, leaf_space(&g)).unwrap();
        assert!(matches!(
            reduce_to_levi_distinguished(&g, &CoeffExpr::Leaf(refined)),
            Err(Error::Usage(_))
        ));
    }

    fn leaf_space(g: &LieAlgebra) -> crate::ratlin::Subspace {
        let mut f = QMat::zero(3, 3);
        f[(1, 0)] = rat_i(1);
        f[(2, 1)] = rat_i(1);
        let mut e13 = QMat::zero(3, 3);
        e13[(0, 2)] = rat_i(1);
        crate::ratlin::Subspace::from_rows(
            g.dim(),
            vec![g.matrix_element(&e13).unwrap()],
        )
    }
}
