//! The full expansion of an automorphic function on `GL_n` into Whittaker
//! coefficients of the principal grading, indexed by subsets of the
//! super-diagonal, together with the hypothesis filters.

use crate::expand::tree::{CoeffExpr, HypTag, LeafData, SetDescriptor};
use crate::liealg::matrix::MatrixKind;
use crate::liealg::LieAlgebra;
use crate::ratlin::{rat_i, QMat, Rat};
use crate::{Error, Result};

/// The `GL_n` expansion: `η(g) = Σ_{x ⊆ {1,…,n−1}} Σ_{γ ∈ Γ_x}
/// F_{S,φ_x}(γg)` with `S = diag(n−1, n−3, …, 1−n)` and
/// `φ_x = Σ_{i∈x} (E_{i+1,i})^*`. The coset sets `Γ_x` are carried as
/// opaque labels.
#[derive(Clone, Debug)]
pub struct GlnExpansion {
    pub n: usize,
    /// The principal toral element, in algebra coordinates.
    pub s: Vec<Rat>,
    pub tree: CoeffExpr,
}

fn unit_matrix(n: usize, i: usize, j: usize) -> QMat {
    let mut m = QMat::zero(n, n);
    m[(i, j)] = rat_i(1);
    m
}

fn subset_name(x: &[usize]) -> String {
    if x.is_empty() {
        "\\varnothing".to_string()
    } else {
        format!(
            "\\{{{}\\}}",
            x.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

/// Build the expansion for `gl(n)` (the algebra must carry the `gl`
/// realization).
pub fn gln_expansion(g: &LieAlgebra) -> Result<GlnExpansion> {
    let real = g
        .realization()
        .ok_or_else(|| Error::Unsupported("the gl_n expansion needs a matrix algebra".into()))?;
    if real.kind != MatrixKind::Gl {
        return Err(Error::Unsupported(format!(
            "the gl_n expansion needs the gl realization, found {}",
            real.kind
        )));
    }
    let n = real.size;
    if n < 2 {
        return Err(Error::Unsupported("the expansion needs n >= 2".into()));
    }

    let mut s_mat = QMat::zero(n, n);
    for i in 0..n {
        s_mat[(i, i)] = rat_i(n as i64 - 1 - 2 * i as i64);
    }
    let s = g.matrix_element(&s_mat)?;

    // Subsets of {1,…,n−1}, ordered by (size, lexicographic), each giving
    // one leaf family.
    let mut subsets: Vec<Vec<usize>> = (0..(1usize << (n - 1)))
        .map(|mask| (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect();
    subsets.sort_by_key(|x| (x.len(), x.clone()));

    let mut parts = Vec::new();
    for x in &subsets {
        let mut f_mat = QMat::zero(n, n);
        for &i in x {
            f_mat = f_mat.add(&unit_matrix(n, i, i - 1))?;
        }
        let phi = g.covec_of(&g.matrix_element(&f_mat)?);
        let name = subset_name(x);
        let leaf = LeafData::new(g, s.clone(), phi)?
            .with_note(&format!("\\mathcal{{F}}_{{S,\\varphi_{{{name}}}}}"));
        parts.push(CoeffExpr::sum(
            SetDescriptor::opaque(&format!("\\gamma \\in \\Gamma_{{{name}}}")),
            CoeffExpr::translate(vec!["\\gamma"], CoeffExpr::Leaf(leaf)),
        ));
    }
    Ok(GlnExpansion { n, s, tree: CoeffExpr::Combine(parts).normalized() })
}

/// Prune the expansion under an analytic hypothesis on `η`: cuspidal keeps
/// only the full-rank (generic) leaf, minimal keeps characters of rank ≤ 1,
/// next-to-minimal of rank ≤ 2. Surviving leaves are tagged.
pub fn gln_filter(g: &LieAlgebra, exp: &GlnExpansion, tag: HypTag) -> Result<CoeffExpr> {
    let keep = |rank: usize| -> Result<bool> {
        match tag {
            HypTag::Cuspidal => Ok(rank == exp.n - 1),
            HypTag::Minimal => Ok(rank <= 1),
            HypTag::NextToMinimal => Ok(rank <= 2),
            HypTag::WsPhi => Err(Error::Usage(
                "the Whittaker-support tag is not a pruning hypothesis".into(),
            )),
        }
    };
    let tree = exp.tree.try_map_leaves(&|leaf| {
        let f = g.elem_of(&leaf.phi);
        let rank = g.element_matrix(&f)?.rank();
        Ok(if keep(rank)? {
            CoeffExpr::Leaf(leaf.clone().with_tag(tag))
        } else {
            CoeffExpr::zero()
        })
    })?;
    Ok(tree.normalized())
}
