//! Whittaker pairs `(S, φ)` and triples `(S, φ, φ′)`.
//!
//! A *Whittaker pair* consists of a rational semisimple `S` and a covector
//! `φ` with `ad*(S)φ = −2φ`; equivalently the form-dual element `f_φ` lies in
//! the `−2`-eigenspace of `ad(S)`. A *Whittaker triple* adds a third entry
//! `φ′` whose dual element lives strictly above the `−2`-eigenspace.
//!
//! This module provides the attached nilpotent datum `n_{S,φ}`, exact
//! Jacobson–Morozov triples, the neutral decomposition `S = h + Z`, the
//! domination preorder, the index of a pair, and the standard /
//! Levi-distinguished predicates.

use num_traits::Zero;

use crate::liealg::{Covec, Grading, LieAlgebra};
use crate::orbits::{self, KDist};
use crate::ratlin::{rat_i, rat_str, vec_add, vec_scale, vec_sub, QMat, Rat, Subspace};
use crate::{ensure_theorem, Error, Result};

/// An `sl₂`-triple `(e, h, f)`: `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: Vec<Rat>,
    pub h: Vec<Rat>,
    pub f: Vec<Rat>,
}

impl Sl2Triple {
    /// Check the three defining brackets exactly.
    pub fn verify(&self, g: &LieAlgebra) -> Result<()> {
        ensure_theorem!(
            g.bracket(&self.h, &self.e) == vec_scale(&self.e, &rat_i(2)),
            "sl₂-triple: [h, e] ≠ 2e"
        );
        ensure_theorem!(
            g.bracket(&self.h, &self.f) == vec_scale(&self.f, &rat_i(-2)),
            "sl₂-triple: [h, f] ≠ −2f"
        );
        ensure_theorem!(g.bracket(&self.e, &self.f) == self.h, "sl₂-triple: [e, f] ≠ h");
        Ok(())
    }
}

/// A validated Whittaker pair. The grading by `S` is computed once at
/// construction and reused by every operation.
#[derive(Clone, Debug)]
pub struct Pair {
    s: Vec<Rat>,
    phi: Covec,
    f_phi: Vec<Rat>,
    grading: Grading,
}

impl PartialEq for Pair {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s && self.phi == other.phi
    }
}

impl Pair {
    /// Validate and build a pair: `S` must be rational semisimple and the
    /// dual element of `φ` must satisfy `[S, f_φ] = −2·f_φ`.
    pub fn new(g: &LieAlgebra, s: Vec<Rat>, phi: Covec) -> Result<Pair> {
        if s.len() != g.dim() || phi.len() != g.dim() {
            return Err(Error::DimMismatch("pair data does not match the algebra".into()));
        }
        let grading = g.grading(&s)?;
        let f_phi = g.elem_of(&phi);
        if !phi.is_zero() {
            if g.bracket(&s, &f_phi) != vec_scale(&f_phi, &rat_i(-2)) {
                return Err(Error::InvalidPair(
                    "ad*(S)φ ≠ −2φ: the dual element of φ must have S-eigenvalue −2".into(),
                ));
            }
            // An eigenvector of a semisimple ad at a nonzero eigenvalue is
            // automatically ad-nilpotent; keep the fact asserted.
            ensure_theorem!(g.is_nilpotent(&f_phi), "pair covector is not nilpotent");
        }
        Ok(Pair { s, phi, f_phi, grading })
    }

    pub fn s(&self) -> &[Rat] {
        &self.s
    }

    pub fn phi(&self) -> &Covec {
        &self.phi
    }

    /// The element `f_φ` dual to `φ` under the invariant form.
    pub fn f_phi(&self) -> &[Rat] {
        &self.f_phi
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    /// `u = g^S_{≥1}`, the domain of the coefficient integral.
    pub fn u_space(&self) -> Subspace {
        self.grading.ge(&rat_i(1))
    }

    /// The nilpotent datum `n_{S,φ} = {X ∈ u : ω_φ(X, u) = 0}`, cross-checked
    /// against the closed form `g^S_{>1} ⊕ (g^S_1 ∩ g_φ)`.
    ///
    /// The returned subspace is an ideal of `u` with commutative quotient,
    /// and `φ` restricts to a Lie-algebra character on it; all three facts
    /// are asserted.
    pub fn nilpotent_datum(&self, g: &LieAlgebra) -> Result<Subspace> {
        let one = rat_i(1);
        let u = self.grading.ge(&one);
        let rad = g.radical_of_omega(&self.phi, &u);
        let closed = self
            .grading
            .gt(&one)
            .sum(&self.grading.at(&one).intersect(&g.stab_covec(&self.phi))?)?;
        ensure_theorem!(
            rad == closed,
            "nilpotent datum: the ω_φ-radical of u differs from g^S_{{>1}} ⊕ (g^S_1 ∩ g_φ)"
        );
        ensure_theorem!(
            g.subspace_bracket(&u, &rad).is_subspace_of(&rad),
            "nilpotent datum is not an ideal of u"
        );
        ensure_theorem!(
            g.subspace_bracket(&u, &u).is_subspace_of(&rad),
            "u / n_{{S,φ}} is not commutative"
        );
        for (i, x) in rad.basis().iter().enumerate() {
            for y in rad.basis().iter().skip(i + 1) {
                ensure_theorem!(
                    self.phi.apply(&g.bracket(x, y)).is_zero(),
                    "φ is not a character on n_{{S,φ}}"
                );
            }
        }
        Ok(rad)
    }

    /// Neutrality test. A pair is neutral when it is `(0, 0)` or when `S`
    /// completes `f_φ` to an `sl₂`-triple `(e, S, f_φ)`.
    ///
    /// The equivalent criterion — `ad(f_φ): g^S_0 → g^S_{−2}` surjective and
    /// `S` the semisimple member of *some* triple — is cross-checked: a
    /// neutral pair must pass the surjectivity test, and a non-neutral pair
    /// passing it must not admit any completion of `S` through a candidate
    /// set of elements of `g^S_{−2}`.
    pub fn is_neutral(&self, g: &LieAlgebra) -> Result<bool> {
        if self.phi.is_zero() {
            return Ok(self.s.iter().all(Zero::is_zero));
        }
        let two = rat_i(2);
        let g2 = self.grading.at(&two);
        let completable =
            complete_with_e(g, &self.f_phi, self.s.clone(), Some(&g2))?.is_some();
        let g0 = self.grading.at(&Rat::zero());
        let image = bracket_image(g, &g0, &self.f_phi);
        let epi = self.grading.at(&-two.clone()).is_subspace_of(&image);
        if completable {
            ensure_theorem!(epi, "neutral pair fails the surjectivity criterion");
        } else if epi {
            // Cross-check the claimed equivalence: no candidate in g^S_{−2}
            // may complete S to a triple.
            for cand in eigenspace_candidates(&self.grading.at(&rat_i(-2))) {
                ensure_theorem!(
                    complete_with_e(g, &cand, self.s.clone(), Some(&g2))?.is_none(),
                    "non-neutral pair, yet S completes to an sl₂-triple"
                );
            }
        }
        Ok(completable)
    }

    /// Decompose `S = h + Z` with `(h, φ)` neutral, `[h, Z] = 0` and
    /// `ad*(Z)φ = 0`.
    ///
    /// The neutral part is found by a linear solve constrained to the fixed
    /// Cartan; when that fails, an unconstrained graded solve is corrected
    /// toward the Cartan by at most three exact `exp(ad x)` steps with
    /// `x ∈ g_φ ∩ g^S_0`. Pairs outside standard position (no stabilizing
    /// conjugation moves `h` into the fixed Cartan — e.g. the character
    /// covector of `E₁₃ + E₂₃` graded by `diag(1,1,3)`) keep the off-Cartan
    /// neutral part; every consumer works with any rational semisimple `h`.
    pub fn decompose_hz(&self, g: &LieAlgebra) -> Result<HzDecomposition> {
        if self.phi.is_zero() {
            return Ok(HzDecomposition { h: g.zero_elem(), z: self.s.clone(), triple: None });
        }
        let f = &self.f_phi;
        let im_adf = image_of_ad(g, f);
        let g0 = self.grading.at(&Rat::zero());
        let g2 = self.grading.at(&rat_i(2));
        let strict = g.cartan_subspace().intersect(&g0)?.intersect(&im_adf)?;
        let triple = match jacobson_morozov_in(g, f, &strict, Some(&g2))? {
            Some(t) => t,
            None => {
                let relaxed = g0.intersect(&im_adf)?;
                let t = jacobson_morozov_in(g, f, &relaxed, Some(&g2))?.ok_or_else(|| {
                    Error::TheoremViolation(
                        "graded Jacobson–Morozov failed on a valid pair".into(),
                    )
                })?;
                // Best effort: a Cartan h keeps the fast grading paths, but
                // an off-Cartan neutral part is equally valid.
                self.correct_toward_cartan(g, t)?
            }
        };
        let z = vec_sub(&self.s, &triple.h);
        ensure_theorem!(
            g.bracket(&z, f).iter().all(Zero::is_zero),
            "decomposition: Z does not stabilize φ"
        );
        ensure_theorem!(
            g.bracket(&z, &triple.h).iter().all(Zero::is_zero),
            "decomposition: [Z, h] ≠ 0"
        );
        ensure_theorem!(
            g.bracket(&z, &triple.e).iter().all(Zero::is_zero),
            "decomposition: the completing element left the centralizer of Z"
        );
        Ok(HzDecomposition { h: triple.h.clone(), z, triple: Some(triple) })
    }

    /// Up to three Newton steps `h ← exp(ad x)·h` with `x ∈ g_φ ∩ g^S_0`
    /// chosen to cancel the off-Cartan part of `h` to first order. The whole
    /// triple is conjugated, so it stays a graded triple through `f_φ`.
    fn correct_toward_cartan(&self, g: &LieAlgebra, mut t: Sl2Triple) -> Result<Sl2Triple> {
        let rank = g.rank();
        let g0 = self.grading.at(&Rat::zero());
        let movers = g.centralizer(&self.f_phi).intersect(&g0)?;
        for _ in 0..3 {
            if g.in_cartan(&t.h) {
                break;
            }
            let mut rhs = vec![Rat::zero(); g.dim() - rank];
            for k in rank..g.dim() {
                rhs[k - rank] = -&t.h[k];
            }
            let h = t.h.clone();
            let sol = solve_map_in(&movers, &rhs, |x| {
                g.bracket(x, &h)[rank..].to_vec()
            })?;
            let Some(x) = sol else { break };
            if !g.is_nilpotent(&x) {
                break;
            }
            t = Sl2Triple {
                e: g.exp_ad_apply(&x, &t.e)?,
                h: g.exp_ad_apply(&x, &t.h)?,
                f: g.exp_ad_apply(&x, &t.f)?,
            };
            debug_assert_eq!(t.f, self.f_phi, "correction step moved f_φ");
        }
        t.verify(g)?;
        Ok(t)
    }

    /// The index of the pair: with the neutral decomposition `S = h + Z`,
    /// `in(S, φ) = dim(g^h_{<1} ∩ g^S_{≥1}) + dim(g^h_{<2} ∩ g^S_{≥2})`.
    pub fn index(&self, g: &LieAlgebra) -> Result<usize> {
        let dec = self.decompose_hz(g)?;
        index_from_parts(g, &dec.h, &dec.z)
    }

    /// Standard pair: `n_{S,φ}` is the nilradical of a Borel subalgebra.
    ///
    /// The dimension must equal the number of positive roots; a root-spanned
    /// datum of that size is automatically a positive system (closed and
    /// asymmetric), hence Weyl-conjugate to the standard nilradical. A datum
    /// that is not root-spanned is chased through a bounded set of Weyl and
    /// unipotent conjugations; exhausting the budget yields
    /// [`Error::SearchExhausted`] rather than a definite answer.
    pub fn is_standard(&self, g: &LieAlgebra) -> Result<bool> {
        let n = self.nilpotent_datum(g)?;
        if n.dim() != g.root_data().n_pos {
            return Ok(false);
        }
        if is_positive_system_span(g, &n)? {
            return Ok(true);
        }
        let mut gens: Vec<Vec<Vec<Rat>>> = Vec::new();
        for i in 0..g.rank() {
            gens.push(g.simple_reflection_word(i));
        }
        for &id in &g.root_data().simple_ids {
            let x = g.basis_elem(id);
            gens.push(vec![x.clone()]);
            gens.push(vec![vec_scale(&x, &rat_i(-1))]);
        }
        let mut seen = vec![n.clone()];
        let mut queue = vec![n];
        let mut budget = 300usize;
        while let Some(cur) = queue.pop() {
            for w in &gens {
                if budget == 0 {
                    return Err(Error::SearchExhausted(
                        "standard-pair test: conjugation budget exhausted".into(),
                    ));
                }
                budget -= 1;
                let img = g.aut_apply_subspace(w, &cur)?;
                if seen.contains(&img) {
                    continue;
                }
                if is_positive_system_span(g, &img)? {
                    return Ok(true);
                }
                seen.push(img.clone());
                queue.push(img);
            }
        }
        Err(Error::SearchExhausted(
            "standard-pair test: conjugation orbit closed without a root-spanned image".into(),
        ))
    }

    /// Levi-distinguished pair: for the neutral decomposition `S = h + Z`
    /// with `l` the centralizer of `Z`, the covector must be 𝕂-distinguished
    /// in `l` and the grading must satisfy
    /// `g^S_{>1} = g^S_{≥2} = g^Z_{>0} ⊕ l^h_{≥2}` and `g^S_1 = l^h_1`.
    ///
    /// All neutral decompositions of `S` are conjugate under automorphisms
    /// fixing `S` and `φ`, so the canonical one decides the predicate.
    pub fn is_levi_distinguished(&self, g: &LieAlgebra) -> Result<bool> {
        let dec = self.decompose_hz(g)?;
        let l = g.centralizer(&dec.z);
        if let Some(t) = &dec.triple {
            // (h, φ) is neutral *for l*: the completing element lies in l.
            ensure_theorem!(
                l.contains_vec(&t.e) && l.contains_vec(&t.h) && l.contains_vec(&t.f),
                "neutral triple escaped the centralizer of Z"
            );
        }
        match orbits::is_k_distinguished(g, &self.phi, &l)? {
            KDist::No(_) => return Ok(false),
            KDist::Yes(_) => {}
            KDist::Unknown(why) => {
                return Err(Error::SearchExhausted(format!(
                    "𝕂-distinguished test inconclusive: {why}"
                )))
            }
        }
        let one = rat_i(1);
        let two = rat_i(2);
        let gr_h = g.grading(&dec.h)?;
        let gr_z = g.grading(&dec.z)?;
        let lh_ge2 = l.intersect(&gr_h.ge(&two))?;
        let lh_1 = l.intersect(&gr_h.at(&one))?;
        let rhs = gr_z.gt(&Rat::zero()).sum(&lh_ge2)?;
        let gt1 = self.grading.gt(&one);
        let ge2 = self.grading.ge(&two);
        Ok(gt1 == ge2 && ge2 == rhs && self.grading.at(&one) == lh_1)
    }
}

/// The neutral decomposition `S = h + Z`. For `φ = 0` the neutral part is
/// `0` and no triple exists.
#[derive(Clone, Debug)]
pub struct HzDecomposition {
    pub h: Vec<Rat>,
    pub z: Vec<Rat>,
    pub triple: Option<Sl2Triple>,
}

/// A validated Whittaker triple `(S, φ, φ′)`: the pair axioms plus
/// `φ′ ∈ (g*)^S_{>−2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Triple {
    pair: Pair,
    phi_prime: Covec,
}

impl Triple {
    pub fn new(g: &LieAlgebra, s: Vec<Rat>, phi: Covec, phi_prime: Covec) -> Result<Triple> {
        let pair = Pair::new(g, s, phi)?;
        Triple::from_pair(g, pair, phi_prime)
    }

    pub fn from_pair(g: &LieAlgebra, pair: Pair, phi_prime: Covec) -> Result<Triple> {
        if phi_prime.len() != g.dim() {
            return Err(Error::DimMismatch("third entry does not match the algebra".into()));
        }
        if !phi_prime.is_zero() {
            let fp = g.elem_of(&phi_prime);
            for (lambda, _) in pair.grading.decompose(&fp)? {
                if lambda <= rat_i(-2) {
                    return Err(Error::EigenspaceViolation(format!(
                        "third entry has a component at S-eigenvalue {} ≤ −2",
                        rat_str(&lambda)
                    )));
                }
            }
        }
        Ok(Triple { pair, phi_prime })
    }

    pub fn pair(&self) -> &Pair {
        &self.pair
    }

    pub fn phi_prime(&self) -> &Covec {
        &self.phi_prime
    }

    /// The total character `φ + φ′` defining the coefficient.
    pub fn character(&self) -> Covec {
        self.pair.phi.add(&self.phi_prime)
    }
}

// ---------------------------------------------------------------------------
// Jacobson–Morozov
// ---------------------------------------------------------------------------

/// An `sl₂`-triple through a nonzero nilpotent `f` (as the lowering element).
pub fn jacobson_morozov(g: &LieAlgebra, f: &[Rat]) -> Result<Sl2Triple> {
    if f.iter().all(Zero::is_zero) {
        return Err(Error::InvalidPair("no sl₂-triple through 0".into()));
    }
    if !g.is_nilpotent(f) {
        return Err(Error::NotNilpotent("jacobson_morozov input".into()));
    }
    // h = [f, w] for any w with ad(f)²(w) = 2f; such h lies in im(ad f) and
    // satisfies [h, f] = −2f, so Morozov completion applies.
    let adf = g.ad(f);
    let adf2 = adf.mul(&adf)?;
    let w = adf2
        .solve_affine(&vec_scale(f, &rat_i(2)))?
        .ok_or_else(|| Error::TheoremViolation("ad(f)²w = 2f unsolvable for nilpotent f".into()))?;
    let h = g.bracket(f, &w);
    complete_with_e(g, f, h, None)?
        .ok_or_else(|| Error::TheoremViolation("Morozov completion failed".into()))
}

/// Constrained variant: the semisimple member is sought inside `h_space`
/// (which the caller typically intersects with `im(ad f)`), the raising
/// member inside `e_space` when given. Returns `Ok(None)` when no triple
/// exists under the constraints.
pub fn jacobson_morozov_in(
    g: &LieAlgebra,
    f: &[Rat],
    h_space: &Subspace,
    e_space: Option<&Subspace>,
) -> Result<Option<Sl2Triple>> {
    let target = vec_scale(f, &rat_i(-2));
    let Some(h) = solve_map_in(h_space, &target, |x| g.bracket(x, f))? else {
        return Ok(None);
    };
    complete_with_e(g, f, h, e_space)
}

/// Solve `[e, f] = h`, `[h, e] = 2e` for `e` (optionally constrained),
/// verifying the resulting triple.
fn complete_with_e(
    g: &LieAlgebra,
    f: &[Rat],
    h: Vec<Rat>,
    e_space: Option<&Subspace>,
) -> Result<Option<Sl2Triple>> {
    let space = match e_space {
        Some(s) => s.clone(),
        None => Subspace::full(g.dim()),
    };
    let mut rhs = vec_scale(&h, &rat_i(-1));
    rhs.extend(vec![Rat::zero(); g.dim()]);
    let sol = solve_map_in(&space, &rhs, |x| {
        let mut out = g.bracket(f, x);
        out.extend(vec_sub(&g.bracket(&h, x), &vec_scale(x, &rat_i(2))));
        out
    })?;
    match sol {
        None => Ok(None),
        Some(e) => {
            let t = Sl2Triple { e, h, f: f.to_vec() };
            t.verify(g)?;
            Ok(Some(t))
        }
    }
}

// ---------------------------------------------------------------------------
// Domination and index
// ---------------------------------------------------------------------------

/// Domination: `(H, φ)` dominates `(S, φ)` when `[H, S] = 0` and
/// `g_φ ∩ g^H_{≥1} ⊆ g^{S−H}_{≥0}`. Both pairs must carry the same covector.
pub fn dominates(g: &LieAlgebra, dominating: &Pair, dominated: &Pair) -> Result<bool> {
    if dominating.phi != dominated.phi {
        return Err(Error::PhiMismatch("domination requires equal covectors".into()));
    }
    let h = &dominating.s;
    let s = &dominated.s;
    if g.bracket(h, s).iter().any(|c| !c.is_zero()) {
        return Ok(false);
    }
    let z = vec_sub(s, h);
    let lhs = g.stab_covec(&dominating.phi).intersect(&dominating.grading.ge(&rat_i(1)))?;
    let gz = g.grading(&z)?;
    Ok(lhs.is_subspace_of(&gz.ge(&Rat::zero())))
}

/// Index from an explicit commuting decomposition `H = h + z`:
/// `dim(g^h_{<1} ∩ g^H_{≥1}) + dim(g^h_{<2} ∩ g^H_{≥2})`.
pub fn index_from_parts(g: &LieAlgebra, h: &[Rat], z: &[Rat]) -> Result<usize> {
    if g.bracket(h, z).iter().any(|c| !c.is_zero()) {
        return Err(Error::NonCommuting("index requires [h, z] = 0".into()));
    }
    let gh = g.grading(h)?;
    let ghz = g.grading(&vec_add(h, z))?;
    let one = rat_i(1);
    let two = rat_i(2);
    let a = gh.lt(&one).intersect(&ghz.ge(&one))?.dim();
    let b = gh.lt(&two).intersect(&ghz.ge(&two))?.dim();
    Ok(a + b)
}

// ---------------------------------------------------------------------------
// Shared solving helpers
// ---------------------------------------------------------------------------

/// Solve `map(x) = rhs` for `x` in a subspace, where `map` is linear. The
/// solution is the canonical one of the underlying affine solve (free
/// variables zero), so the result is deterministic.
pub(crate) fn solve_map_in<F>(space: &Subspace, rhs: &[Rat], map: F) -> Result<Option<Vec<Rat>>>
where
    F: Fn(&[Rat]) -> Vec<Rat>,
{
    if space.dim() == 0 {
        return Ok(if rhs.iter().all(Zero::is_zero) {
            Some(vec![Rat::zero(); space.ambient()])
        } else {
            None
        });
    }
    let cols: Vec<Vec<Rat>> = space.basis().iter().map(|b| map(b)).collect();
    let m = QMat::from_rows(cols)?.transpose();
    let Some(coords) = m.solve_affine(rhs)? else {
        return Ok(None);
    };
    let mut x = vec![Rat::zero(); space.ambient()];
    for (c, b) in coords.iter().zip(space.basis()) {
        if !c.is_zero() {
            x = vec_add(&x, &vec_scale(b, c));
        }
    }
    Ok(Some(x))
}

/// Image of `ad(x)` as a subspace.
pub(crate) fn image_of_ad(g: &LieAlgebra, x: &[Rat]) -> Subspace {
    let m = g.ad(x).transpose();
    Subspace::from_rows(g.dim(), (0..g.dim()).map(|i| m.row(i).to_vec()).collect())
}

/// Span of `[b, f]` over a basis of `space`.
pub(crate) fn bracket_image(g: &LieAlgebra, space: &Subspace, f: &[Rat]) -> Subspace {
    Subspace::from_rows(g.dim(), space.basis().iter().map(|b| g.bracket(b, f)).collect())
}

/// Deterministic nonzero candidates in an eigenspace: the basis vectors, the
/// all-ones combination and a distinct-prime-weights combination.
fn eigenspace_candidates(space: &Subspace) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = space.basis().to_vec();
    if space.dim() > 1 {
        let mut ones = vec![Rat::zero(); space.ambient()];
        let mut primes = vec![Rat::zero(); space.ambient()];
        let ps = [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        for (k, b) in space.basis().iter().enumerate() {
            ones = vec_add(&ones, b);
            primes = vec_add(&primes, &vec_scale(b, &rat_i(ps[k % ps.len()])));
        }
        out.push(ones);
        out.push(primes);
    }
    out
}

/// True when the subspace is spanned by root vectors forming a positive
/// system. Given that the span is a nilpotent subalgebra of the full
/// positive-root size, root-spanned-ness is the only condition: the root set
/// is then closed (the span is a subalgebra) and asymmetric (no coroot can
/// lie in it), hence a positive system; both facts are asserted.
fn is_positive_system_span(g: &LieAlgebra, n: &Subspace) -> Result<bool> {
    let Some(roots) = root_span(g, n) else {
        return Ok(false);
    };
    if roots.len() != g.root_data().n_pos {
        return Ok(false);
    }
    for a in &roots {
        let neg: Vec<i64> = a.iter().map(|c| -c).collect();
        ensure_theorem!(!roots.contains(&neg), "nilpotent datum contains opposite roots");
        for b in &roots {
            let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if g.basis_index_of_root(&sum).is_some() {
                ensure_theorem!(
                    roots.contains(&sum),
                    "root-spanned nilpotent datum is not closed"
                );
            }
        }
    }
    Ok(true)
}

/// When the subspace is a sum of root spaces, return their lattice
/// coordinates (the canonical echelon basis is then made of unit vectors).
fn root_span(g: &LieAlgebra, v: &Subspace) -> Option<Vec<Vec<i64>>> {
    let rank = g.rank();
    let mut roots = Vec::new();
    for b in v.basis() {
        let nz: Vec<usize> = (0..b.len()).filter(|&i| !b[i].is_zero()).collect();
        if nz.len() != 1 || nz[0] < rank {
            return None;
        }
        roots.push(g.root_data().lattice[nz[0] - rank].clone());
    }
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::matrix::MatrixKind;
    use crate::ratlin::rat;

    fn alg(kind: MatrixKind, n: usize) -> LieAlgebra {
        LieAlgebra::matrix(kind, n).unwrap()
    }

    fn eij(g: &LieAlgebra, i: usize, j: usize) -> Vec<Rat> {
        let size = g.realization().unwrap().size;
        let mut m = QMat::zero(size, size);
        m[(i - 1, j - 1)] = rat_i(1);
        g.matrix_element(&m).unwrap()
    }

    fn diag(g: &LieAlgebra, entries: &[Rat]) -> Vec<Rat> {
        let size = g.realization().unwrap().size;
        assert_eq!(entries.len(), size);
        let mut m = QMat::zero(size, size);
        for (i, c) in entries.iter().enumerate() {
            m[(i, i)] = c.clone();
        }
        g.matrix_element(&m).unwrap()
    }

    fn covec_of_elem(g: &LieAlgebra, v: &[Rat]) -> Covec {
        g.covec_of(v)
    }

    #[test]
    fn sl4_triple_example() {
        let g = alg(MatrixKind::Sl, 4);
        let s = diag(&g, &[rat_i(1), rat(1, 3), rat(-1, 3), rat_i(-1)]);
        let phi = covec_of_elem(&g, &eij(&g, 4, 1));
        let pair = Pair::new(&g, s.clone(), phi).unwrap();

        // Eigenvalue table of the elementary matrices.
        let table = [
            [0i64, 1, 2, 3],
            [-1, 0, 1, 2],
            [-2, -1, 0, 1],
            [-3, -2, -1, 0],
        ];
        for i in 1..=4usize {
            for j in 1..=4usize {
                if i == j {
                    continue;
                }
                let want = rat(2 * table[i - 1][j - 1], 3);
                let got = pair.grading().eigenvalue_of(&eij(&g, i, j)).unwrap();
                assert_eq!(got, want, "eigenvalue of e({i},{j})");
            }
        }

        // Nilpotent datum: span{e13, e14, e24}.
        let n = pair.nilpotent_datum(&g).unwrap();
        let want = Subspace::from_rows(
            g.dim(),
            vec![eij(&g, 1, 3), eij(&g, 1, 4), eij(&g, 2, 4)],
        );
        assert_eq!(n, want);

        // Third entry m·e31 + n·e42 sits at S-eigenvalue −4/3.
        let fp = vec_add(
            &vec_scale(&eij(&g, 3, 1), &rat_i(5)),
            &vec_scale(&eij(&g, 4, 2), &rat_i(7)),
        );
        assert_eq!(pair.grading().eigenvalue_of(&fp), Some(rat(-4, 3)));
        let triple =
            Triple::from_pair(&g, pair.clone(), covec_of_elem(&g, &fp)).unwrap();
        assert_eq!(triple.character(), pair.phi().add(&covec_of_elem(&g, &fp)));

        // A −2-eigenvalue third entry is rejected.
        let bad = covec_of_elem(&g, &eij(&g, 4, 1));
        assert!(matches!(
            Triple::from_pair(&g, pair.clone(), bad),
            Err(Error::EigenspaceViolation(_))
        ));

        // Neutral decomposition: h = diag(1,0,0,−1), Z = diag(0,1/3,−1/3,0).
        let dec = pair.decompose_hz(&g).unwrap();
        assert_eq!(dec.h, diag(&g, &[rat_i(1), rat_i(0), rat_i(0), rat_i(-1)]));
        assert_eq!(dec.z, diag(&g, &[rat_i(0), rat(1, 3), rat(-1, 3), rat_i(0)]));
        dec.triple.as_ref().unwrap().verify(&g).unwrap();

        // Index and neutrality.
        assert_eq!(pair.index(&g).unwrap(), 0);
        assert!(!pair.is_neutral(&g).unwrap());
        let hp = Pair::new(&g, dec.h.clone(), pair.phi().clone()).unwrap();
        assert!(hp.is_neutral(&g).unwrap());
        assert_eq!(hp.index(&g).unwrap(), 0);

        // The neutral pair dominates the deformed one, with a smaller datum.
        assert!(dominates(&g, &hp, &pair).unwrap());
        let n_h = hp.nilpotent_datum(&g).unwrap();
        assert_eq!(n_h.dim(), 1);
        assert!(n_h.dim() <= n.dim());

        // Datum shape for the neutral pair (no degree-one stabilizer part).
        let one = rat_i(1);
        assert_eq!(n_h, hp.grading().gt(&one));
        assert!(g
            .stab_covec(hp.phi())
            .intersect(&hp.grading().at(&one))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn pair_validation() {
        let g = alg(MatrixKind::Gl, 3);
        let s = diag(&g, &[rat_i(2), rat_i(0), rat_i(-2)]);
        // e31 has eigenvalue −4, not −2.
        assert!(matches!(
            Pair::new(&g, s.clone(), covec_of_elem(&g, &eij(&g, 3, 1))),
            Err(Error::InvalidPair(_))
        ));
        // Nilpotent S is rejected.
        assert!(matches!(
            Pair::new(&g, eij(&g, 1, 2), Covec::zero(g.dim())),
            Err(Error::NotRationalSemisimple(_))
        ));
        assert!(Pair::new(&g, s, covec_of_elem(&g, &eij(&g, 2, 1))).is_ok());
    }

    #[test]
    fn neutral_equivalence_handles_central_shift() {
        let g = alg(MatrixKind::Gl, 2);
        let phi = covec_of_elem(&g, &eij(&g, 2, 1));
        let good = Pair::new(&g, diag(&g, &[rat_i(1), rat_i(-1)]), phi.clone()).unwrap();
        assert!(good.is_neutral(&g).unwrap());
        // diag(2, 0) = diag(1,−1) + I: the surjectivity test passes but no
        // sl₂-triple has a semisimple member with nonzero trace.
        let shifted = Pair::new(&g, diag(&g, &[rat_i(2), rat_i(0)]), phi).unwrap();
        assert!(!shifted.is_neutral(&g).unwrap());
        // Zero pair conventions.
        let zero = Pair::new(&g, g.zero_elem(), Covec::zero(g.dim())).unwrap();
        assert!(zero.is_neutral(&g).unwrap());
        let half = Pair::new(&g, diag(&g, &[rat_i(1), rat_i(-1)]), Covec::zero(g.dim())).unwrap();
        assert!(!half.is_neutral(&g).unwrap());
    }

    #[test]
    fn jacobson_morozov_basics() {
        let g = alg(MatrixKind::Gl, 3);
        let f = vec_add(&eij(&g, 2, 1), &eij(&g, 3, 2));
        let t = jacobson_morozov(&g, &f).unwrap();
        t.verify(&g).unwrap();
        assert!(g.is_rational_semisimple(&t.h));
        assert_eq!(
            g.grading(&t.h).unwrap().eigenvalue_of(&f),
            Some(rat_i(-2))
        );
        // The matrix of h has the standard-representation eigenvalues
        // {2, 0, −2}, each with a one-dimensional eigenspace.
        let m = g.element_matrix(&t.h).unwrap();
        for lam in [rat_i(2), rat_i(0), rat_i(-2)] {
            let shifted = m.sub(&QMat::identity(3).scale(&lam)).unwrap();
            assert_eq!(shifted.nullspace().dim(), 1, "matrix eigenvalue {lam}");
        }
        assert!(matches!(
            jacobson_morozov(&g, &g.zero_elem()),
            Err(Error::InvalidPair(_))
        ));
        assert!(matches!(
            jacobson_morozov(&g, &g.basis_elem(0)),
            Err(Error::NotNilpotent(_))
        ));
    }

    #[test]
    fn standard_and_levi_distinguished_on_gl3() {
        let g = alg(MatrixKind::Gl, 3);
        let s = diag(&g, &[rat_i(2), rat_i(0), rat_i(-2)]);

        // Principal covector: genuinely Whittaker.
        let phi_reg = covec_of_elem(&g, &vec_add(&eij(&g, 2, 1), &eij(&g, 3, 2)));
        let reg = Pair::new(&g, s.clone(), phi_reg.clone()).unwrap();
        assert!(reg.is_standard(&g).unwrap());
        assert!(reg.is_levi_distinguished(&g).unwrap());
        assert!(reg.is_neutral(&g).unwrap());

        // Minimal covector on the same S: still standard (same datum), and
        // Levi-distinguished through l = gl2 × gl1.
        let phi_min = covec_of_elem(&g, &eij(&g, 2, 1));
        let min_pair = Pair::new(&g, s.clone(), phi_min.clone()).unwrap();
        assert!(min_pair.is_standard(&g).unwrap());
        let dec = min_pair.decompose_hz(&g).unwrap();
        assert_eq!(dec.h, diag(&g, &[rat_i(1), rat_i(-1), rat_i(0)]));
        assert_eq!(dec.z, diag(&g, &[rat_i(1), rat_i(1), rat_i(-2)]));
        assert!(min_pair.is_levi_distinguished(&g).unwrap());
        assert_eq!(min_pair.index(&g).unwrap(), 3);

        // The neutral pair for the minimal covector is not standard and not
        // Levi-distinguished (the full algebra is not its distinguished Levi).
        let neutral = Pair::new(&g, dec.h.clone(), phi_min).unwrap();
        assert!(neutral.is_neutral(&g).unwrap());
        assert!(!neutral.is_standard(&g).unwrap());
        assert!(!neutral.is_levi_distinguished(&g).unwrap());

        // Constant term along the full nilradical: standard and
        // Levi-distinguished with the abelian Levi.
        let ct = Pair::new(&g, s, Covec::zero(g.dim())).unwrap();
        assert!(ct.is_standard(&g).unwrap());
        assert!(ct.is_levi_distinguished(&g).unwrap());
    }

    #[test]
    fn domination_axioms() {
        let g = alg(MatrixKind::Gl, 3);
        let s = diag(&g, &[rat_i(2), rat_i(0), rat_i(-2)]);
        let phi = covec_of_elem(&g, &eij(&g, 2, 1));
        let p = Pair::new(&g, s, phi.clone()).unwrap();
        assert!(dominates(&g, &p, &p).unwrap());
        let other = Pair::new(&g, diag(&g, &[rat_i(1), rat_i(-1), rat_i(0)]), phi).unwrap();
        assert!(dominates(&g, &other, &p).unwrap());
        // The containment fails in the reverse direction: e₂₃ centralizes φ,
        // sits in g^S_{≥1}, but has negative (h−S)-eigenvalue.
        assert!(!dominates(&g, &p, &other).unwrap());
        let zero_pair = Pair::new(&g, g.zero_elem(), Covec::zero(g.dim())).unwrap();
        assert!(matches!(
            dominates(&g, &p, &zero_pair),
            Err(Error::PhiMismatch(_))
        ));
    }

    #[test]
    fn principal_iff_neutral_standard() {
        // Small-rank check in both directions.
        let g = alg(MatrixKind::Gl, 3);
        let f_reg = vec_add(&eij(&g, 2, 1), &eij(&g, 3, 2));
        let t = jacobson_morozov(&g, &f_reg).unwrap();
        let p = Pair::new(&g, t.h.clone(), covec_of_elem(&g, &f_reg)).unwrap();
        assert!(p.is_neutral(&g).unwrap());
        assert!(p.is_standard(&g).unwrap());

        let f_min = eij(&g, 2, 1);
        let t2 = jacobson_morozov(&g, &f_min).unwrap();
        let p2 = Pair::new(&g, t2.h.clone(), covec_of_elem(&g, &f_min)).unwrap();
        assert!(p2.is_neutral(&g).unwrap());
        assert!(!p2.is_standard(&g).unwrap());
    }
}
