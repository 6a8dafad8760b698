//! Nilpotent-orbit tooling: Jordan labels and the closure (dominance)
//! order, the PL and 𝕂-distinguished predicates, the single-step order on
//! orbits, and the graded transport solver.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::liealg::matrix::MatrixKind;
use crate::liealg::{Covec, Grading, LieAlgebra};
use crate::pairs::{bracket_image, jacobson_morozov_in, solve_map_in};
use crate::ratlin::{rat_i, rat_str, vec_add, vec_scale, vec_sub, QMat, Rat, Subspace};
use crate::{ensure_theorem, Error, Result};

/// Label of a complex nilpotent orbit: the Jordan partition tagged with the
/// algebra kind, plus optional rational-form annotations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitLabel {
    pub kind: String,
    pub partition: Vec<usize>,
    pub form_notes: Option<String>,
}

impl OrbitLabel {
    pub fn size(&self) -> usize {
        self.partition.iter().sum()
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partition.iter().map(|p| p.to_string()).collect();
        write!(f, "{}:({})", self.kind, parts.join(","))
    }
}

/// Tri-state answer of the 𝕂-distinguished test; `Yes`/`No` carry the
/// certificate, `Unknown` the reason no certificate applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KDist {
    Yes(String),
    No(String),
    Unknown(String),
}

/// Witness for the single-step orbit relation: `φ` fixed by `Z`, perturbed
/// by a positively-graded `φ′`.
#[derive(Clone, Debug)]
pub struct OrderWitness {
    pub z: Vec<Rat>,
    pub phi: Covec,
    pub phi_prime: Covec,
}

// ---------------------------------------------------------------------------
// Jordan labels and the closure order
// ---------------------------------------------------------------------------

/// Jordan partition of a nilpotent matrix, from the rank sequence of its
/// powers.
fn nilpotent_partition(m: &QMat, n: usize) -> Result<Vec<usize>> {
    let mut ranks = vec![n];
    let mut p = m.clone();
    loop {
        let r = p.rank();
        if r >= ranks[ranks.len() - 1] && r > 0 {
            return Err(Error::NotNilpotent(
                "rank sequence stabilizes above zero (nonzero semisimple part)".into(),
            ));
        }
        ranks.push(r);
        if r == 0 {
            break;
        }
        p = p.mul(m)?;
    }
    let mut partition = Vec::new();
    for k in 1..ranks.len() {
        let geq_k = ranks[k - 1] - ranks[k];
        let geq_k1 = if k + 1 < ranks.len() { ranks[k] - ranks[k + 1] } else { 0 };
        for _ in 0..geq_k.saturating_sub(geq_k1) {
            partition.push(k);
        }
    }
    partition.sort_unstable_by(|a, b| b.cmp(a));
    ensure_theorem!(
        partition.iter().sum::<usize>() == n,
        "Jordan partition does not sum to the matrix size"
    );
    Ok(partition)
}

/// Jordan type of the realization matrix of `f`, with the classical parity
/// invariants asserted. For split even orthogonal algebras the two very-even
/// classes share a partition and are merged under one label (noted in
/// `form_notes`).
pub fn jordan_partition(g: &LieAlgebra, f: &[Rat]) -> Result<OrbitLabel> {
    let real = g
        .realization()
        .ok_or_else(|| Error::NoMatrixRealization("Jordan type needs a matrix algebra".into()))?;
    let kind = real.kind;
    let n = real.size;
    let m = g.element_matrix(f)?;
    let partition = nilpotent_partition(&m, n)?;
    let mult = |p: usize| partition.iter().filter(|&&q| q == p).count();
    match kind {
        MatrixKind::Sp => {
            for &p in &partition {
                ensure_theorem!(
                    p % 2 == 0 || mult(p) % 2 == 0,
                    "symplectic partition with an odd part of odd multiplicity"
                );
            }
        }
        MatrixKind::SoSplit | MatrixKind::SoOdd => {
            for &p in &partition {
                ensure_theorem!(
                    p % 2 == 1 || mult(p) % 2 == 0,
                    "orthogonal partition with an even part of odd multiplicity"
                );
            }
        }
        _ => {}
    }
    let form_notes = if kind == MatrixKind::SoSplit && partition.iter().all(|p| p % 2 == 0) {
        Some("very even pair merged into one label".into())
    } else {
        None
    };
    Ok(OrbitLabel { kind: kind.to_string(), partition, form_notes })
}

/// Closure (dominance) order on same-kind, same-size labels.
pub fn closure_leq(a: &OrbitLabel, b: &OrbitLabel) -> Result<bool> {
    if a.kind != b.kind || a.size() != b.size() {
        return Err(Error::DimMismatch(format!("orbits {a} and {b} are not comparable")));
    }
    let (mut sa, mut sb) = (0usize, 0usize);
    for k in 0..a.partition.len().max(b.partition.len()) {
        sa += a.partition.get(k).copied().unwrap_or(0);
        sb += b.partition.get(k).copied().unwrap_or(0);
        if sa > sb {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// 𝕂-distinguished
// ---------------------------------------------------------------------------

/// Whether `r ∈ ℚ` is a square in ℚ.
fn is_rational_square(r: &Rat) -> bool {
    if r.is_negative() {
        return false;
    }
    if r.is_zero() {
        return true;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom()
}

/// Is the dual element of `φ` 𝕂-distinguished in the Levi `within`, i.e.
/// contained in no proper 𝕂-Levi subalgebra of it?
///
/// The test never guesses: `No` comes with an explicit proper Levi witness
/// (a noncentral rational semisimple element centralizing an sl₂-triple
/// through `f`, or a general-linear factor in which `f` is not regular, or a
/// split pairing of equal Jordan blocks); `Yes` comes from a certificate
/// (abelian Levi for `f = 0`, `f` principal, regular in every general-linear
/// factor, multiplicity-free totally even symplectic type, distinct-odd
/// orthogonal type, or an anisotropic binary form in `sp₄`). Inputs in the
/// rational-classification gap return `Unknown`.
pub fn is_k_distinguished(g: &LieAlgebra, phi: &Covec, within: &Subspace) -> Result<KDist> {
    let f = g.elem_of(phi);
    if !within.contains_vec(&f) {
        return Err(Error::InvalidPair("covector dual element lies outside the Levi".into()));
    }
    if f.iter().all(Zero::is_zero) {
        return Ok(if g.subspace_bracket(within, within).is_zero() {
            KDist::Yes("zero is distinguished exactly in a torus".into())
        } else {
            KDist::No(
                "zero lies in the proper Levi attached to any noncentral toral element".into(),
            )
        });
    }
    if !g.is_nilpotent(&f) {
        return Err(Error::NotNilpotent("distinguished test input".into()));
    }

    // An sl₂-triple through f inside the Levi, and its centralizer there.
    let h_space = bracket_image(g, within, &f);
    let triple = jacobson_morozov_in(g, &f, &h_space, Some(within))?.ok_or_else(|| {
        Error::TheoremViolation("no sl₂-triple through f inside the Levi".into())
    })?;
    let c = g
        .centralizer_many(&[triple.e.clone(), triple.h.clone(), triple.f.clone()])
        .intersect(within)?;
    let center = g.center_of(within);
    let toral = c.intersect(&g.cartan_subspace())?;
    if !toral.is_subspace_of(&center) {
        return Ok(KDist::No(
            "the sl₂-triple centralizer meets the Cartan outside the center".into(),
        ));
    }

    let full_cartan = g.cartan_subspace().is_subspace_of(within);
    if full_cartan {
        let cf = g.centralizer(&f).intersect(within)?;
        if cf.dim() == g.rank() {
            return Ok(KDist::Yes("principal in the Levi".into()));
        }
        if let Some(classes) = gl_blocks(g, within)? {
            // General-linear product: distinguished ⟺ regular in every factor.
            let m = g.element_matrix(&f)?;
            for cls in &classes {
                let sub = submatrix(&m, cls);
                if nilpotent_partition(&sub, cls.len())?.len() > 1 {
                    return Ok(KDist::No(format!(
                        "not regular in a general-linear factor of size {}",
                        cls.len()
                    )));
                }
            }
            return Ok(KDist::Yes("regular in every general-linear factor".into()));
        }
    }

    if within.dim() == g.dim() {
        if let Some(real) = g.realization() {
            let label = jordan_partition(g, &f)?;
            let parts = &label.partition;
            let mult = |p: usize| parts.iter().filter(|&&q| q == p).count();
            match real.kind {
                MatrixKind::Sp => {
                    if parts.iter().any(|p| p % 2 == 1) {
                        // Equal odd parts pair symplectically, and symplectic
                        // forms over ℚ are split, so a gl factor splits off.
                        return Ok(KDist::No(
                            "odd parts pair into a rational general-linear factor".into(),
                        ));
                    }
                    if parts.iter().all(|&p| mult(p) == 1) {
                        return Ok(KDist::Yes(
                            "multiplicity-free totally even symplectic type".into(),
                        ));
                    }
                    if real.size == 4 && *parts == vec![2, 2] {
                        return sp4_two_two_certificate(g, &f);
                    }
                    return Ok(KDist::Unknown(
                        "repeated even parts: rational form data beyond the certified corpus"
                            .into(),
                    ));
                }
                MatrixKind::SoSplit | MatrixKind::SoOdd => {
                    if parts.iter().all(|&p| p % 2 == 1 && mult(p) == 1) {
                        return Ok(KDist::Yes(
                            "distinct odd parts: distinguished over any extension".into(),
                        ));
                    }
                }
                _ => {}
            }
        }
    }
    Ok(KDist::Unknown("no distinguishedness certificate applies".into()))
}

/// `sp₄`, Jordan type (2,2): the orbit is classified by the symmetric binary
/// form `B(u, v) = ⟨f·u, v⟩` on a complement of `ker f`; `f` is
/// 𝕂-distinguished exactly when that form is anisotropic.
fn sp4_two_two_certificate(g: &LieAlgebra, f: &[Rat]) -> Result<KDist> {
    let m = g.element_matrix(f)?;
    let kernel = m.nullspace();
    // Greedy complement of the kernel among coordinate vectors.
    let mut complement: Vec<Vec<Rat>> = Vec::new();
    let mut span = kernel.clone();
    for i in 0..4 {
        let mut v = vec![Rat::zero(); 4];
        v[i] = rat_i(1);
        if !span.contains_vec(&v) {
            span = span.sum(&Subspace::from_rows(4, vec![v.clone()]))?;
            complement.push(v);
        }
    }
    ensure_theorem!(complement.len() == 2, "type (2,2) kernel is not two-dimensional");
    // Symplectic pairing of the realization: ⟨u, v⟩ = uᵗ J v, J = [[0,I],[−I,0]].
    let pair = |u: &[Rat], v: &[Rat]| -> Rat {
        let mut s = Rat::zero();
        for i in 0..2 {
            s += &u[i] * &v[2 + i] - &u[2 + i] * &v[i];
        }
        s
    };
    let mut gram = [[Rat::zero(), Rat::zero()], [Rat::zero(), Rat::zero()]];
    for (k, u) in complement.iter().enumerate() {
        let fu = m.mul_vec(u)?;
        for (l, v) in complement.iter().enumerate() {
            gram[k][l] = pair(&fu, v);
        }
    }
    ensure_theorem!(gram[0][1] == gram[1][0], "the type-(2,2) form is not symmetric");
    let disc = &gram[0][1] * &gram[0][1] - &gram[0][0] * &gram[1][1];
    ensure_theorem!(!disc.is_zero(), "the type-(2,2) form is degenerate");
    Ok(if is_rational_square(&disc) {
        KDist::No("split binary form: the two blocks pair into a general-linear factor".into())
    } else {
        KDist::Yes(format!(
            "anisotropic binary form (discriminant {} is not a square)",
            rat_str(&disc)
        ))
    })
}

/// If `within` is a block Levi of a general-linear algebra (contains the
/// Cartan, is spanned by full matrix blocks), return the index classes.
fn gl_blocks(g: &LieAlgebra, within: &Subspace) -> Result<Option<Vec<Vec<usize>>>> {
    let Some(real) = g.realization() else { return Ok(None) };
    if !matches!(real.kind, MatrixKind::Gl | MatrixKind::Sl) {
        return Ok(None);
    }
    let n = real.size;
    let unit = |i: usize, j: usize| -> Result<Vec<Rat>> {
        let mut m = QMat::zero(n, n);
        m[(i, j)] = rat_i(1);
        g.matrix_element(&m)
    };
    let mut joined = vec![false; n * n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && within.contains_vec(&unit(i, j)?) {
                joined[i * n + j] = true;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if joined[i * n + j] && joined[j * n + i] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match classes.iter_mut().find(|c| find(&mut parent, c[0]) == r) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    // Block-closedness and exact dimension.
    let mut dim = 0usize;
    for cls in &classes {
        dim += cls.len() * cls.len();
        for &i in cls {
            for &j in cls {
                if i != j && !joined[i * n + j] {
                    return Ok(None);
                }
            }
        }
    }
    let expected = if real.kind == MatrixKind::Sl { dim - 1 } else { dim };
    if within.dim() != expected {
        return Ok(None);
    }
    Ok(Some(classes))
}

fn submatrix(m: &QMat, idx: &[usize]) -> QMat {
    let k = idx.len();
    let mut sub = QMat::zero(k, k);
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            sub[(a, b)] = m[(i, j)].clone();
        }
    }
    sub
}

// ---------------------------------------------------------------------------
// PL predicate
// ---------------------------------------------------------------------------

/// PL test: can some Weyl-group element carry the root support of `φ` into
/// (negatives of) distinct simple roots? On success returns the indices of
/// those simple roots — the Levi in which `φ` is principal. `Ok(None)` means
/// the full support orbit was enumerated without success; exceeding the
/// search budget is reported as `SearchExhausted` instead.
pub fn is_pl(g: &LieAlgebra, phi: &Covec) -> Result<Option<Vec<usize>>> {
    let f = g.elem_of(phi);
    if f.iter().all(Zero::is_zero) {
        return Ok(Some(Vec::new()));
    }
    let rank = g.rank();
    let rd = g.root_data();
    let rs = rd
        .system
        .as_ref()
        .ok_or_else(|| Error::Unsupported("PL test needs a root system".into()))?;
    let mut support: Vec<Vec<i64>> = Vec::new();
    for (i, c) in f.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if i < rank {
            return Err(Error::Unsupported(
                "PL test requires a covector supported on root spaces".into(),
            ));
        }
        support.push(rd.lattice[i - rank].clone());
    }
    support.sort();
    let neg_simple_index = |r: &[i64]| -> Option<usize> {
        let mut idx = None;
        for (i, &c) in r.iter().enumerate() {
            match c {
                0 => {}
                -1 if idx.is_none() => idx = Some(i),
                _ => return None,
            }
        }
        idx
    };
    let as_levi = |set: &[Vec<i64>]| -> Option<Vec<usize>> {
        set.iter().map(|r| neg_simple_index(r)).collect()
    };
    let nsimple = rs.rank();
    let budget: usize = if nsimple <= 6 { 200_000 } else { 20_000 };
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(support.clone());
    queue.push_back(support);
    let mut visited = 0usize;
    while let Some(cur) = queue.pop_front() {
        visited += 1;
        if let Some(mut levi) = as_levi(&cur) {
            levi.sort_unstable();
            return Ok(Some(levi));
        }
        if visited > budget {
            return Err(Error::SearchExhausted("PL support search budget exhausted".into()));
        }
        for i in 0..nsimple {
            let mut img: Vec<Vec<i64>> = cur.iter().map(|r| rs.reflect_simple(i, r)).collect();
            img.sort();
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    Ok(None)
}

/// The standard Levi spanned by the Cartan and all root spaces supported on
/// the given simple roots.
pub fn levi_of_simples(g: &LieAlgebra, simples: &[usize]) -> Subspace {
    let rank = g.rank();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for i in 0..rank {
        rows.push(g.basis_elem(i).clone());
    }
    for (k, lat) in g.root_data().lattice.iter().enumerate() {
        let supported = lat
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || simples.contains(&i));
        if supported {
            rows.push(g.basis_elem(rank + k).clone());
        }
    }
    Subspace::from_rows(g.dim(), rows)
}

// ---------------------------------------------------------------------------
// Orbit order and transport
// ---------------------------------------------------------------------------

fn check_z_degrees(
    g: &LieAlgebra,
    gz: &Grading,
    v: &[Rat],
    what: &str,
    want_zero: bool,
) -> Result<()> {
    let _ = g;
    if v.iter().all(Zero::is_zero) {
        return Ok(());
    }
    for (lambda, comp) in gz.decompose(v)? {
        if comp.iter().all(Zero::is_zero) {
            continue;
        }
        let ok = if want_zero { lambda.is_zero() } else { lambda > Rat::zero() };
        if !ok {
            return Err(Error::EigenspaceViolation(format!(
                "{what} has a component at Z-eigenvalue {}",
                rat_str(&lambda)
            )));
        }
    }
    Ok(())
}

/// Validate the single-step orbit relation on a witness: the base covector
/// must realize the label `a`; the relation holds when the perturbed label
/// differs, and the closure inequality `a ≤ label(φ+φ′)` is asserted.
pub fn order_related(g: &LieAlgebra, a: &OrbitLabel, w: &OrderWitness) -> Result<bool> {
    let gz = g.grading(&w.z)?;
    let f = g.elem_of(&w.phi);
    let fp = g.elem_of(&w.phi_prime);
    check_z_degrees(g, &gz, &f, "base covector", true)?;
    check_z_degrees(g, &gz, &fp, "perturbation", false)?;
    let la = jordan_partition(g, &f)?;
    if la.kind != a.kind || la.partition != a.partition {
        return Err(Error::InvalidPair(format!(
            "witness covector realizes {la}, not the claimed {a}"
        )));
    }
    let lb = jordan_partition(g, &vec_add(&f, &fp))?;
    if la.partition == lb.partition {
        return Ok(false);
    }
    ensure_theorem!(
        closure_leq(&la, &lb)?,
        "perturbed orbit is not above the base orbit in the closure order"
    );
    Ok(true)
}

/// Transport solver: find `X ∈ g^Z_{>0}` with `ad*(X)φ = φ′` and a word
/// `X₁, …, X_k` of such elements whose exponentials carry `φ` exactly to
/// `φ + φ′`. With `(S, q)` supplied, all solutions are confined to `g^S_0`
/// (so the `S`-eigenspace of the pair is preserved).
///
/// Returns `None` when some stage's linear system is inconsistent — the
/// covectors then lie in different complex orbits.
pub fn solve_transport(
    g: &LieAlgebra,
    phi: &Covec,
    phi_prime: &Covec,
    z: &[Rat],
    sq: Option<(&[Rat], &Rat)>,
) -> Result<Option<(Vec<Rat>, Vec<Vec<Rat>>)>> {
    let gz = g.grading(z)?;
    let f = g.elem_of(phi);
    let fp = g.elem_of(phi_prime);
    check_z_degrees(g, &gz, &f, "base covector", true)?;
    check_z_degrees(g, &gz, &fp, "perturbation", false)?;
    let mut space = gz.gt(&Rat::zero());
    if let Some((s, q)) = sq {
        if !g.bracket(s, z).iter().all(Zero::is_zero) {
            return Err(Error::NonCommuting("[S, Z] ≠ 0 in the transport solver".into()));
        }
        let gs = g.grading(s)?;
        for (v, what) in [(&f, "base covector"), (&fp, "perturbation")] {
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            if gs.eigenvalue_of(v) != Some(q.clone()) {
                return Err(Error::EigenspaceViolation(format!(
                    "{what} is not an S-eigenvector of eigenvalue {}",
                    rat_str(q)
                )));
            }
        }
        space = space.intersect(&gs.at(&Rat::zero()))?;
    }

    let target = vec_add(&f, &fp);
    let mut tau = target.clone();
    let mut word: Vec<Vec<Rat>> = Vec::new();
    let mut first: Option<Vec<Rat>> = None;
    let mut last_min: Option<Rat> = None;
    for _ in 0..=g.dim() {
        let delta = vec_sub(&tau, &f);
        if delta.iter().all(Zero::is_zero) {
            let x = first.unwrap_or_else(|| g.zero_elem());
            let moved = g.aut_apply(&word, &f)?;
            ensure_theorem!(moved == target, "transport word does not carry φ to φ+φ′");
            return Ok(Some((x, word)));
        }
        // The minimal Z-degree of the residue strictly increases each round.
        let min_deg = gz
            .decompose(&delta)?
            .into_iter()
            .filter(|(_, c)| !c.iter().all(Zero::is_zero))
            .map(|(l, _)| l)
            .min()
            .expect("nonzero residue has a support");
        if let Some(prev) = &last_min {
            ensure_theorem!(min_deg > *prev, "transport residue degree failed to increase");
        }
        last_min = Some(min_deg);
        let Some(x) = solve_map_in(&space, &delta, |y| g.bracket(y, &f))? else {
            return Ok(None);
        };
        if first.is_none() {
            first = Some(x.clone());
        }
        tau = g.exp_ad_apply(&vec_scale(&x, &rat_i(-1)), &tau)?;
        word.push(x);
    }
    Err(Error::TheoremViolation("transport iteration failed to converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::roots::Series;

    fn gl(n: usize) -> LieAlgebra {
        LieAlgebra::matrix(MatrixKind::Gl, n).unwrap()
    }

    fn eij(g: &LieAlgebra, i: usize, j: usize) -> Vec<Rat> {
        let size = g.realization().unwrap().size;
        let mut m = QMat::zero(size, size);
        m[(i - 1, j - 1)] = rat_i(1);
        g.matrix_element(&m).unwrap()
    }

    fn diag(g: &LieAlgebra, entries: &[i64]) -> Vec<Rat> {
        let size = g.realization().unwrap().size;
        let mut m = QMat::zero(size, size);
        for (i, &c) in entries.iter().enumerate() {
            m[(i, i)] = rat_i(c);
        }
        g.matrix_element(&m).unwrap()
    }

    /// sp₄ element with lower-left symmetric block [[a,b],[b,c]].
    fn sp4_form(g: &LieAlgebra, a: i64, b: i64, c: i64) -> Vec<Rat> {
        let mut m = QMat::zero(4, 4);
        m[(2, 0)] = rat_i(a);
        m[(2, 1)] = rat_i(b);
        m[(3, 0)] = rat_i(b);
        m[(3, 1)] = rat_i(c);
        g.matrix_element(&m).unwrap()
    }

    #[test]
    fn jordan_labels() {
        let g = gl(3);
        assert_eq!(
            jordan_partition(&g, &g.zero_elem()).unwrap().partition,
            vec![1, 1, 1]
        );
        let reg = vec_add(&eij(&g, 2, 1), &eij(&g, 3, 2));
        assert_eq!(jordan_partition(&g, &reg).unwrap().partition, vec![3]);
        assert!(matches!(
            jordan_partition(&g, &diag(&g, &[1, 0, -1])),
            Err(Error::NotNilpotent(_))
        ));
        let sp = LieAlgebra::matrix(MatrixKind::Sp, 4).unwrap();
        let rank_one = sp4_form(&sp, 1, 0, 0);
        let label = jordan_partition(&sp, &rank_one).unwrap();
        assert_eq!(label.partition, vec![2, 1, 1]);
        assert_eq!(label.kind, "sp");
        let d4 = LieAlgebra::split(Series::D, 4).unwrap();
        assert!(matches!(
            jordan_partition(&d4, &d4.zero_elem()),
            Err(Error::NoMatrixRealization(_))
        ));
    }

    #[test]
    fn closure_order() {
        let lab = |p: &[usize]| OrbitLabel {
            kind: "gl".into(),
            partition: p.to_vec(),
            form_notes: None,
        };
        assert!(closure_leq(&lab(&[1, 1, 1, 1]), &lab(&[4])).unwrap());
        assert!(closure_leq(&lab(&[2, 2]), &lab(&[3, 1])).unwrap());
        assert!(!closure_leq(&lab(&[3, 1]), &lab(&[2, 2])).unwrap());
        assert!(closure_leq(&lab(&[2, 2]), &lab(&[2, 2])).unwrap());
        assert!(closure_leq(&lab(&[1, 1, 1]), &lab(&[3])).is_ok());
        assert!(closure_leq(&lab(&[1, 1]), &lab(&[3])).is_err());
        let sp = OrbitLabel { kind: "sp".into(), partition: vec![2, 1], form_notes: None };
        assert!(closure_leq(&lab(&[2, 1]), &sp).is_err());
    }

    #[test]
    fn distinguished_gl() {
        let g = gl(3);
        let reg = g.covec_of(&vec_add(&eij(&g, 2, 1), &eij(&g, 3, 2)));
        let full = Subspace::full(g.dim());
        assert!(matches!(
            is_k_distinguished(&g, &reg, &full).unwrap(),
            KDist::Yes(_)
        ));
        let min = g.covec_of(&eij(&g, 2, 1));
        assert!(matches!(
            is_k_distinguished(&g, &min, &full).unwrap(),
            KDist::No(_)
        ));
        // Within the gl₂×gl₁ block Levi, e₂₁ is principal.
        let levi = Subspace::from_rows(
            g.dim(),
            vec![
                eij(&g, 1, 1),
                eij(&g, 2, 2),
                eij(&g, 3, 3),
                eij(&g, 1, 2),
                eij(&g, 2, 1),
            ],
        );
        assert!(matches!(
            is_k_distinguished(&g, &min, &levi).unwrap(),
            KDist::Yes(_)
        ));
        // Zero covector: distinguished only in a torus.
        let zero = Covec::zero(g.dim());
        assert!(matches!(
            is_k_distinguished(&g, &zero, &g.cartan_subspace()).unwrap(),
            KDist::Yes(_)
        ));
        assert!(matches!(
            is_k_distinguished(&g, &zero, &full).unwrap(),
            KDist::No(_)
        ));
        // gl₄ type (2,2) lies in a gl₂×gl₂ Levi.
        let g4 = gl(4);
        let f22 = g4.covec_of(&vec_add(&eij(&g4, 2, 1), &eij(&g4, 4, 3)));
        assert!(matches!(
            is_k_distinguished(&g4, &f22, &Subspace::full(g4.dim())).unwrap(),
            KDist::No(_)
        ));
        // Non-regular inside a proper block Levi.
        let levi31 = {
            let mut rows = vec![];
            for i in 1..=3 {
                for j in 1..=3 {
                    rows.push(eij(&g4, i, j));
                }
            }
            rows.push(eij(&g4, 4, 4));
            Subspace::from_rows(g4.dim(), rows)
        };
        let min4 = g4.covec_of(&eij(&g4, 2, 1));
        assert!(matches!(
            is_k_distinguished(&g4, &min4, &levi31).unwrap(),
            KDist::No(_)
        ));
    }

    #[test]
    fn distinguished_sp() {
        let g = LieAlgebra::matrix(MatrixKind::Sp, 4).unwrap();
        let full = Subspace::full(g.dim());
        let cov = |f: &[Rat]| g.covec_of(f);
        // Anisotropic: x² + y² (disc −1).
        match is_k_distinguished(&g, &cov(&sp4_form(&g, 1, 0, 1)), &full).unwrap() {
            KDist::Yes(why) => assert!(why.contains("anisotropic")),
            other => panic!("expected Yes, got {other:?}"),
        }
        // Split: x² − y² (disc 1) and xy (disc 1).
        assert!(matches!(
            is_k_distinguished(&g, &cov(&sp4_form(&g, 1, 0, -1)), &full).unwrap(),
            KDist::No(_)
        ));
        assert!(matches!(
            is_k_distinguished(&g, &cov(&sp4_form(&g, 0, 1, 0)), &full).unwrap(),
            KDist::No(_)
        ));
        // Rank one: odd parts.
        assert!(matches!(
            is_k_distinguished(&g, &cov(&sp4_form(&g, 1, 0, 0)), &full).unwrap(),
            KDist::No(_)
        ));
        // Principal (4).
        let reg = {
            let mut m = QMat::zero(4, 4);
            m[(1, 0)] = rat_i(1);
            m[(2, 3)] = rat_i(-1);
            m[(3, 1)] = rat_i(1);
            g.matrix_element(&m).unwrap()
        };
        assert_eq!(jordan_partition(&g, &reg).unwrap().partition, vec![4]);
        assert!(matches!(
            is_k_distinguished(&g, &cov(&reg), &full).unwrap(),
            KDist::Yes(_)
        ));
        // sp₆ type (2,2,2): in the rational-classification gap.
        let g6 = LieAlgebra::matrix(MatrixKind::Sp, 6).unwrap();
        let mut m = QMat::zero(6, 6);
        for i in 0..3 {
            m[(3 + i, i)] = rat_i(1);
        }
        let f = g6.matrix_element(&m).unwrap();
        assert_eq!(jordan_partition(&g6, &f).unwrap().partition, vec![2, 2, 2]);
        assert!(matches!(
            is_k_distinguished(&g6, &g6.covec_of(&f), &Subspace::full(g6.dim())).unwrap(),
            KDist::Unknown(_)
        ));
    }

    #[test]
    fn pl_predicate() {
        let g = gl(3);
        // Superdiagonal characters: support already on negative simples.
        let psi12 = g.covec_of(&vec_add(&eij(&g, 2, 1), &eij(&g, 3, 2)));
        assert_eq!(is_pl(&g, &psi12).unwrap(), Some(vec![0, 1]));
        let psi1 = g.covec_of(&eij(&g, 2, 1));
        assert_eq!(is_pl(&g, &psi1).unwrap(), Some(vec![0]));
        assert_eq!(is_pl(&g, &Covec::zero(g.dim())).unwrap(), Some(vec![]));
        // Non-movable support: {−α₁, −α₁−α₂} has a positive inner pair.
        let bad = g.covec_of(&vec_add(&eij(&g, 2, 1), &eij(&g, 3, 1)));
        assert_eq!(is_pl(&g, &bad).unwrap(), None);
        // Single long root in sp₄ moves to the long simple root.
        let sp = LieAlgebra::matrix(MatrixKind::Sp, 4).unwrap();
        let min_sp = sp.covec_of(&sp4_form(&sp, 1, 0, 0));
        assert_eq!(is_pl(&sp, &min_sp).unwrap(), Some(vec![1]));
        // D₄ next-to-minimal: two orthogonal simple roots.
        let d4 = LieAlgebra::split(Series::D, 4).unwrap();
        let f = vec_add(
            &d4.root_vector(&[-1, 0, 0, 0]).unwrap(),
            &d4.root_vector(&[0, 0, -1, 0]).unwrap(),
        );
        assert_eq!(is_pl(&d4, &d4.covec_of(&f)).unwrap(), Some(vec![0, 2]));
        // Highest-root vector moves to a single simple root.
        let hi = d4.root_vector(&[-1, -2, -1, -1]).unwrap();
        let levi = is_pl(&d4, &d4.covec_of(&hi)).unwrap().unwrap();
        assert_eq!(levi.len(), 1);
        // Verified principal in the returned Levi.
        let l = levi_of_simples(&g, &[0]);
        let cf = g.centralizer(&eij(&g, 2, 1)).intersect(&l).unwrap();
        assert_eq!(cf.dim(), g.rank());
    }

    #[test]
    fn order_and_transport() {
        let g = gl(3);
        let z = diag(&g, &[1, 1, -2]);
        let phi = g.covec_of(&eij(&g, 2, 1));
        let lab21 = jordan_partition(&g, &eij(&g, 2, 1)).unwrap();

        // Perturbation by e₁₃ jumps to the regular orbit.
        let w = OrderWitness { z: z.clone(), phi: phi.clone(), phi_prime: g.covec_of(&eij(&g, 1, 3)) };
        assert!(order_related(&g, &lab21, &w).unwrap());
        // Zero perturbation: same orbit.
        let w0 = OrderWitness { z: z.clone(), phi: phi.clone(), phi_prime: Covec::zero(g.dim()) };
        assert!(!order_related(&g, &lab21, &w0).unwrap());
        // Wrong label is rejected.
        let lab3 = OrbitLabel { kind: "gl".into(), partition: vec![3], form_notes: None };
        assert!(matches!(
            order_related(&g, &lab3, &w),
            Err(Error::InvalidPair(_))
        ));

        // Transport within the orbit: φ′ ↔ e₂₃ keeps type (2,1).
        let fp = g.covec_of(&eij(&g, 2, 3));
        let (x, word) = solve_transport(&g, &phi, &fp, &z, None).unwrap().unwrap();
        // ad*(X)φ = φ′ exactly.
        assert_eq!(g.bracket(&x, &eij(&g, 2, 1)), eij(&g, 2, 3));
        assert_eq!(word.len(), 1);
        // Degree checks: X ∈ g^Z_{>0}.
        let gz = g.grading(&z).unwrap();
        assert!(gz.gt(&Rat::zero()).contains_vec(&x));

        // Constrained variant: S = diag(0,1,0), q = 1 forces X ∈ g^S_0.
        let s = diag(&g, &[0, 1, 0]);
        let q = rat_i(1);
        let (x2, _) = solve_transport(&g, &phi, &fp, &z, Some((&s, &q))).unwrap().unwrap();
        assert!(g.grading(&s).unwrap().at(&Rat::zero()).contains_vec(&x2));

        // Orbit mismatch: e₁₃ perturbation is not solvable.
        let bad = g.covec_of(&eij(&g, 1, 3));
        assert!(solve_transport(&g, &phi, &bad, &z, None).unwrap().is_none());
        let lab_target = jordan_partition(&g, &vec_add(&eij(&g, 2, 1), &eij(&g, 1, 3))).unwrap();
        assert!(closure_leq(&lab21, &lab_target).unwrap());
        assert_ne!(lab21.partition, lab_target.partition);

        // Trivial perturbation.
        let (x0, w0) = solve_transport(&g, &phi, &Covec::zero(g.dim()), &z, None)
            .unwrap()
            .unwrap();
        assert!(x0.iter().all(num_traits::Zero::is_zero));
        assert!(w0.is_empty());

        // Precondition: perturbation must be positively graded.
        assert!(matches!(
            solve_transport(&g, &phi, &phi, &z, None),
            Err(Error::EigenspaceViolation(_))
        ));
    }
}
