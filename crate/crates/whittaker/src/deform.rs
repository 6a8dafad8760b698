//! Deformation engine for pencils `H_t = H + tZ`: exact critical and
//! quasi-critical parameters, the graded space family `(u, v, w, n, l, r)_t`,
//! the structural lemmas those spaces satisfy, and the `Z′`/`T` construction
//! that pushes a pair into a Levi-distinguished position.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::liealg::{Covec, LieAlgebra};
use crate::pairs::{dominates, Pair};
use crate::ratlin::{rat_i, rat_str, vec_add, vec_scale, Rat, Subspace};
use crate::{ensure_theorem, Error, Result};

/// A deformation `H_t = H + tZ` of a Whittaker pair `(H, φ)` in a direction
/// `Z` that commutes with `H` and fixes `φ`.
#[derive(Clone, Debug)]
pub struct Deformation {
    h: Vec<Rat>,
    z: Vec<Rat>,
    phi: Covec,
    /// Joint eigenspace decomposition: `(a, b, piece)` with `a` the
    /// `H`-eigenvalue and `b` the `Z`-eigenvalue of `piece`.
    bigraded_support: Vec<(Rat, Rat, Subspace)>,
    stab: Subspace,
}

/// The six graded spaces of a deformation at one parameter value.
#[derive(Clone, Debug)]
pub struct DeformationSnapshot {
    pub t: Rat,
    pub u: Subspace,
    pub v: Subspace,
    pub w: Subspace,
    pub n: Subspace,
    pub l: Subspace,
    pub r: Subspace,
}

/// Pass/fail record of a structural-lemma verification.
#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub lemma: String,
    pub clauses: Vec<(String, bool)>,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|(_, ok)| *ok)
    }

    fn check(&mut self, label: &str, ok: bool) {
        self.clauses.push((label.to_string(), ok));
    }

    fn into_result(self) -> Result<LemmaReport> {
        if self.all_pass() {
            return Ok(self);
        }
        let failed: Vec<&str> = self
            .clauses
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(label, _)| label.as_str())
            .collect();
        Err(Error::TheoremViolation(format!(
            "lemma `{}` clause(s) failed: {}",
            self.lemma,
            failed.join("; ")
        )))
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, ok) in &self.clauses {
            writeln!(f, "{}: {}", label, if *ok { "pass" } else { "FAIL" })?;
        }
        Ok(())
    }
}

impl Deformation {
    /// Validate and build a deformation. Requires `[H, Z] = 0`, `ad*(Z)φ = 0`
    /// and that `(H, φ)` is a valid pair (hence `(H + tZ, φ)` is one for
    /// every `t`).
    pub fn new(g: &LieAlgebra, h: Vec<Rat>, z: Vec<Rat>, phi: Covec) -> Result<Deformation> {
        let f = g.elem_of(&phi);
        if !g.bracket(&z, &f).iter().all(Zero::is_zero) {
            return Err(Error::InvalidPair(
                "the deformation direction must fix the covector (ad*(Z)φ = 0)".into(),
            ));
        }
        // Validates rational semisimplicity of H, [H, Z] = 0 via the
        // bigrading, and the pair axiom for (H, φ).
        Pair::new(g, h.clone(), phi.clone())?;
        let bigraded_support: Vec<(Rat, Rat, Subspace)> = g
            .bigrading(&h, &z)?
            .into_iter()
            .map(|((a, b), piece)| (a, b, piece))
            .collect();
        let stab = g.stab_covec(&phi);
        Ok(Deformation { h, z, phi, bigraded_support, stab })
    }

    pub fn base(&self) -> &[Rat] {
        &self.h
    }

    pub fn direction(&self) -> &[Rat] {
        &self.z
    }

    pub fn phi(&self) -> &Covec {
        &self.phi
    }

    pub fn bigraded_support(&self) -> &[(Rat, Rat, Subspace)] {
        &self.bigraded_support
    }

    /// The element `H + tZ`.
    pub fn at(&self, t: &Rat) -> Vec<Rat> {
        vec_add(&self.h, &vec_scale(&self.z, t))
    }

    /// The validated pair `(H + tZ, φ)`.
    pub fn pair_at(&self, g: &LieAlgebra, t: &Rat) -> Result<Pair> {
        Pair::new(g, self.at(t), self.phi.clone())
    }

    /// The same pencil, re-based at `H + t₁Z`. Its critical values are the
    /// original ones shifted by `−t₁` (keeping only positive ones, plus 0).
    pub fn restart(&self, g: &LieAlgebra, t1: &Rat) -> Result<Deformation> {
        Deformation::new(g, self.at(t1), self.z.clone(), self.phi.clone())
    }

    /// Parameters where the 1-eigenspace of `H_t` acquires vectors outside
    /// `g^Z_0`: `{0} ∪ {(1−a)/b : (a, b) in the support, b ≠ 0, value > 0}`.
    pub fn critical_values(&self) -> Vec<Rat> {
        self.values_reaching(&[rat_i(1)])
    }

    /// Critical values together with the parameters where the 2-eigenspace
    /// acquires vectors outside `g^Z_0`.
    pub fn quasi_critical_values(&self) -> Vec<Rat> {
        self.values_reaching(&[rat_i(1), rat_i(2)])
    }

    fn values_reaching(&self, levels: &[Rat]) -> Vec<Rat> {
        let mut out: BTreeSet<Rat> = BTreeSet::new();
        out.insert(Rat::zero());
        for (a, b, _) in &self.bigraded_support {
            if b.is_zero() {
                continue;
            }
            for level in levels {
                let t = (level - a) / b;
                if t.is_positive() {
                    out.insert(t);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Cell-wise sum of the support pieces whose `(a, b)` satisfies `keep`.
    fn cells(&self, g: &LieAlgebra, keep: impl Fn(&Rat, &Rat) -> bool) -> Subspace {
        let mut acc = Subspace::zero(g.dim());
        for (a, b, piece) in &self.bigraded_support {
            if keep(a, b) {
                acc = acc.sum(piece).expect("support pieces share the ambient dimension");
            }
        }
        acc
    }

    /// The six spaces at parameter `t ≥ 0`, with the type invariants
    /// (`n = v ⊕ (w ∩ g_φ)` equal to the ω_φ-radical of `u`, `l ∩ r = n`,
    /// and the inclusion chain) asserted.
    pub fn snapshot(&self, g: &LieAlgebra, t: &Rat) -> Result<DeformationSnapshot> {
        if t.is_negative() {
            return Err(Error::Usage("snapshot parameter must be ≥ 0".into()));
        }
        let one = rat_i(1);
        let eig = |a: &Rat, b: &Rat| a + b * t;
        let u = self.cells(g, |a, b| eig(a, b) >= one);
        let v = self.cells(g, |a, b| eig(a, b) > one);
        let w = self.cells(g, |a, b| eig(a, b) == one);
        let wphi = w.intersect(&self.stab)?;
        let n = v.sum(&wphi)?;
        ensure_theorem!(
            n.dim() == v.dim() + wphi.dim(),
            "n_t = v_t + (w_t ∩ g_φ) is not a direct sum"
        );
        ensure_theorem!(
            n == g.radical_of_omega(&self.phi, &u),
            "n_t differs from the ω_φ-radical of u_t"
        );
        let l = self.cells(g, |a, b| eig(a, b) >= one && b.is_negative()).sum(&n)?;
        let r = self.cells(g, |a, b| eig(a, b) >= one && b.is_positive()).sum(&n)?;
        ensure_theorem!(l.intersect(&r)? == n, "l_t ∩ r_t ≠ n_t");
        ensure_theorem!(
            v.is_subspace_of(&n)
                && n.is_subspace_of(&l)
                && l.is_subspace_of(&u)
                && r.is_subspace_of(&u),
            "snapshot spaces violate the inclusion chain v ⊆ n ⊆ l, r ⊆ u"
        );
        Ok(DeformationSnapshot { t: t.clone(), u, v, w, n, l, r })
    }

    /// Bilinear-form lemma for deformations, five clauses:
    /// (1) `ω_φ` is `ad(Z)`-invariant; (2) `Ker ω_φ = g_φ`;
    /// (3) `Ker(ω_φ|_{w_t}) = g_φ ∩ w_t`; (4) `Ker(ω_φ|_{u_t}) = v_t ⊕
    /// Ker(ω_φ|_{w_t})`; (5) `w_s ∩ g_φ ⊆ u_t` for `s < t`.
    /// Any failed clause is a hard error.
    pub fn verify_help_lemma(&self, g: &LieAlgebra, s: &Rat, t: &Rat) -> Result<LemmaReport> {
        if s > t {
            return Err(Error::Usage("help-lemma parameters must satisfy s ≤ t".into()));
        }
        let mut report = LemmaReport { lemma: "help".into(), clauses: Vec::new() };

        let dim = g.dim();
        let mut invariant = true;
        for i in 0..dim {
            let bi = g.basis_elem(i);
            let zi = g.bracket(&self.z, &bi);
            for j in 0..dim {
                let bj = g.basis_elem(j);
                let lhs = self.phi.apply(&g.bracket(&zi, &bj))
                    + self.phi.apply(&g.bracket(&bi, &g.bracket(&self.z, &bj)));
                if !lhs.is_zero() {
                    invariant = false;
                }
            }
        }
        report.check("help(1) ω_φ is ad(Z)-invariant", invariant);

        let full = Subspace::full(dim);
        report.check(
            "help(2) Ker ω_φ = g_φ",
            g.radical_of_omega(&self.phi, &full) == self.stab,
        );

        for (label, param) in [("s", s), ("t", t)] {
            let snap = self.snapshot(g, param)?;
            let ker_w = g.radical_of_omega(&self.phi, &snap.w);
            report.check(
                &format!("help(3) Ker(ω_φ|w) = g_φ ∩ w at {label}"),
                ker_w == snap.w.intersect(&self.stab)?,
            );
            let ker_u = g.radical_of_omega(&self.phi, &snap.u);
            report.check(
                &format!("help(4) Ker(ω_φ|u) = v ⊕ Ker(ω_φ|w) at {label}"),
                ker_u == snap.v.sum(&ker_w)?,
            );
        }

        if s < t {
            let ws = self.snapshot(g, s)?.w;
            let ut = self.snapshot(g, t)?.u;
            report.check(
                "help(5) w_s ∩ g_φ ⊆ u_t",
                ws.intersect(&self.stab)?.is_subspace_of(&ut),
            );
        }
        report.into_result()
    }

    /// Structural lemma on `l_t`, `r_t`, three clauses:
    /// (1) `l_t`, `r_t` are ideals of `u_t` with `[l_t, r_t] ⊆ l_t ∩ r_t =
    /// n_t`; (2) both are isotropic and `l_t/n_t → u_t/r_t^⊥`,
    /// `r_t/n_t → u_t/l_t^⊥` are isomorphisms, with `l_t = (w_t ∩ g^Z_{<0})
    /// ⊕ n_t`; (3) on a regular interval, the exchange identities between
    /// the spaces at `s` and `t`, and `r_s` is an ideal of `l_t` with
    /// commutative quotient. Any failed clause is a hard error.
    pub fn verify_key_lemma(&self, g: &LieAlgebra, s: &Rat, t: &Rat) -> Result<LemmaReport> {
        if s.is_negative() || s > t {
            return Err(Error::Usage("key-lemma parameters must satisfy 0 ≤ s ≤ t".into()));
        }
        if let Some(c) = self
            .critical_values()
            .into_iter()
            .find(|c| c > s && c < t)
        {
            return Err(Error::IntervalNotRegular(format!(
                "critical value {} lies in the open interval ({}, {})",
                rat_str(&c),
                rat_str(s),
                rat_str(t)
            )));
        }
        let mut report = LemmaReport { lemma: "key".into(), clauses: Vec::new() };
        let snap_s = self.snapshot(g, s)?;
        let snap_t = self.snapshot(g, t)?;

        for (label, snap) in [("s", &snap_s), ("t", &snap_t)] {
            let ideal_l = g.subspace_bracket(&snap.u, &snap.l).is_subspace_of(&snap.l);
            let ideal_r = g.subspace_bracket(&snap.u, &snap.r).is_subspace_of(&snap.r);
            let lr = g.subspace_bracket(&snap.l, &snap.r).is_subspace_of(&snap.n);
            let meet = snap.l.intersect(&snap.r).map(|m| m == snap.n).unwrap_or(false);
            report.check(
                &format!("key(1) l, r ideals of u with [l, r] ⊆ l ∩ r = n at {label}"),
                ideal_l && ideal_r && lr && meet,
            );

            let iso_l = self.isotropic(g, &snap.l);
            let iso_r = self.isotropic(g, &snap.r);
            let rperp = self.omega_perp_in(g, &snap.u, &snap.r)?;
            let lperp = self.omega_perp_in(g, &snap.u, &snap.l)?;
            let proj_l = snap.l.intersect(&rperp)? == snap.n && snap.l.sum(&rperp)? == snap.u;
            let proj_r = snap.r.intersect(&lperp)? == snap.n && snap.r.sum(&lperp)? == snap.u;
            report.check(
                &format!("key(2) l, r isotropic with l/n ≅ u/r^⊥ and r/n ≅ u/l^⊥ at {label}"),
                iso_l && iso_r && proj_l && proj_r,
            );
            let w_zneg = snap
                .w
                .intersect(&self.cells(g, |_, b| b.is_negative()))?;
            report.check(
                &format!("key(2) l = (w ∩ g^Z_<0) ⊕ n at {label}"),
                w_zneg.sum(&snap.n).map(|x| x == snap.l).unwrap_or(false)
                    && w_zneg.intersect(&snap.n)?.is_zero(),
            );
        }

        let zneg = self.cells(g, |_, b| b.is_negative());
        let zpos = self.cells(g, |_, b| b.is_positive());
        let lhs = snap_t.v.sum(&snap_t.w.intersect(&zneg)?)?;
        let rhs = snap_s.v.sum(&snap_s.w.intersect(&zpos)?)?;
        report.check("key(3) v_t ⊕ (w_t ∩ g^Z_<0) = v_s ⊕ (w_s ∩ g^Z_>0)", lhs == rhs);

        let wt_phi = snap_t.w.intersect(&self.stab)?;
        let w0 = self.snapshot(g, &Rat::zero())?.w;
        let expected_meet = w0
            .intersect(&self.cells(g, |_, b| b.is_zero()))?
            .intersect(&self.stab)?;
        report.check(
            "key(3) l_t = r_s + (w_t ∩ g_φ) with r_s ∩ (w_t ∩ g_φ) = w_0 ∩ g^Z_0 ∩ g_φ",
            snap_s.r.sum(&wt_phi)? == snap_t.l
                && snap_s.r.intersect(&wt_phi)? == expected_meet,
        );
        report.check(
            "key(3) r_s is an ideal of l_t with commutative quotient",
            snap_s.r.is_subspace_of(&snap_t.l)
                && g.subspace_bracket(&snap_t.l, &snap_s.r).is_subspace_of(&snap_s.r)
                && g.subspace_bracket(&snap_t.l, &snap_t.l).is_subspace_of(&snap_s.r),
        );
        report.into_result()
    }

    /// Does `ω_φ` vanish identically on `space`?
    fn isotropic(&self, g: &LieAlgebra, space: &Subspace) -> bool {
        let basis = space.basis();
        for (i, x) in basis.iter().enumerate() {
            for y in basis.iter().skip(i) {
                if !self.phi.apply(&g.bracket(x, y)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// `{x ∈ ambient : ω_φ(x, of) = 0}`.
    fn omega_perp_in(
        &self,
        g: &LieAlgebra,
        ambient: &Subspace,
        of: &Subspace,
    ) -> Result<Subspace> {
        let amb = ambient.basis();
        let rows: Vec<Vec<Rat>> = of
            .basis()
            .iter()
            .map(|y| amb.iter().map(|x| self.phi.apply(&g.bracket(x, y))).collect())
            .collect();
        if amb.is_empty() {
            return Ok(Subspace::zero(g.dim()));
        }
        let coeffs = if rows.is_empty() {
            Subspace::full(amb.len())
        } else {
            crate::ratlin::QMat::from_rows(rows)?.nullspace()
        };
        let lifted: Vec<Vec<Rat>> = coeffs
            .basis()
            .iter()
            .map(|c| {
                let mut v = vec![Rat::zero(); g.dim()];
                for (ci, b) in c.iter().zip(amb) {
                    if !ci.is_zero() {
                        v = vec_add(&v, &vec_scale(b, ci));
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::from_rows(g.dim(), lifted))
    }
}

/// Result of the `Z′` construction: the new direction, the exact minimal
/// deformation length `T`, and the Levi subalgebra in which the covector is
/// distinguished.
#[derive(Clone, Debug)]
pub struct ZPrimeData {
    pub zprime: Vec<Rat>,
    pub t_value: Rat,
    pub levi: Subspace,
    /// Neutral part of the input pair.
    pub h: Vec<Rat>,
    /// Commuting part `Z = S − h` of the input pair.
    pub z: Vec<Rat>,
    /// Generic toral element picked inside the centralizer torus.
    pub z_generic: Vec<Rat>,
    /// Integer factor in `Z′ = N·Z + z`.
    pub n_factor: Rat,
}

/// Build `Z′ = NZ + z` and the minimal `T > 0` such that `(S + TZ′, φ)` is
/// in Levi-distinguished position, together with the Levi `m = g^{Z′}_0`.
///
/// The pair is decomposed as `S = h + Z`; `z` is a deterministic generic
/// element of the torus `a = (centralizer(h) ∩ g_φ ∩ Cartan)` (extended by
/// `Z` if needed), and `N` clears the `Z`-grading past the `z`-grading. The
/// construction asserts the splitting `g^{Z′}_{>0} = g^Z_{>0} ⊕ (g^Z_0 ∩
/// g^z_{>0})` with `g^{Z′}_0 = g^z_0 = m`, and that `(S, φ)` dominates
/// `(S + TZ′, φ)`.
pub fn build_zprime(g: &LieAlgebra, p: &Pair) -> Result<ZPrimeData> {
    let dec = p.decompose_hz(g)?;
    let h = dec.h;
    let z = dec.z;

    // The torus a ⊆ centralizer(h) ∩ g_φ containing Z.
    let c = g.centralizer(&h).intersect(&g.stab_covec(p.phi()))?;
    let mut a = c.intersect(&g.cartan_subspace())?;
    if !a.contains_vec(&z) {
        ensure_theorem!(c.contains_vec(&z), "Z must centralize h and fix φ");
        a = a
            .intersect(&g.centralizer(&z))?
            .sum(&Subspace::from_rows(g.dim(), vec![z.clone()]))?;
    }

    // Deterministic generic element: coordinates 1, N₁, N₁², … over the
    // canonical basis of a, with N₁ past every structure constant touching
    // a; genericity (centralizer(z_generic) = centralizer(a)) is verified
    // and N₁ grows until it holds.
    let m_levi = g.centralizer_of_subspace(&a);
    let z_generic = if a.is_zero() {
        g.zero_elem()
    } else {
        let mut n1 = rat_i(1) + max_ad_entry(g, &a).ceil();
        let mut found = None;
        for _ in 0..64 {
            let mut zg = vec![Rat::zero(); g.dim()];
            let mut coeff = rat_i(1);
            for row in a.basis() {
                zg = vec_add(&zg, &vec_scale(row, &coeff));
                coeff *= &n1;
            }
            if g.centralizer(&zg) == m_levi {
                found = Some(zg);
                break;
            }
            n1 *= rat_i(2);
        }
        found.ok_or_else(|| {
            Error::TheoremViolation("no generic element found in the centralizer torus".into())
        })?
    };

    // N = 1 + ⌈max |eig ad z| / min positive eig ad Z⌉ (1 when Z is trivial).
    let z_eigs = g.grading(&z)?;
    let zg_eigs = g.grading(&z_generic)?;
    let min_pos = z_eigs
        .support()
        .into_iter()
        .filter(|l| l.is_positive())
        .min();
    let n_factor = match min_pos {
        None => rat_i(1),
        Some(mp) => {
            let max_abs = zg_eigs
                .support()
                .into_iter()
                .map(|l| l.abs())
                .max()
                .unwrap_or_else(Rat::zero);
            rat_i(1) + (max_abs / mp).ceil()
        }
    };
    let zprime = vec_add(&vec_scale(&z, &n_factor), &z_generic);

    // The splitting identity for Z′.
    let zp_eigs = g.grading(&zprime)?;
    let expected_pos = z_eigs
        .gt(&Rat::zero())
        .sum(&z_eigs.at(&Rat::zero()).intersect(&zg_eigs.gt(&Rat::zero()))?)?;
    ensure_theorem!(
        zp_eigs.gt(&Rat::zero()) == expected_pos,
        "g^{{Z′}}_{{>0}} ≠ g^Z_{{>0}} ⊕ (g^Z_0 ∩ g^z_{{>0}})"
    );
    ensure_theorem!(
        zp_eigs.at(&Rat::zero()) == m_levi && m_levi == zg_eigs.at(&Rat::zero()),
        "g^{{Z′}}_0 ≠ g^z_0 = m"
    );
    ensure_theorem!(
        m_levi.is_subspace_of(&z_eigs.at(&Rat::zero())),
        "the Levi m is not contained in g^Z_0"
    );

    // Exact minimal T: every Z′-positive cell must land in degree ≥ 2,
    // every Z′-negative cell strictly below 1, and no cancellation may
    // enlarge the centralizer of Z + TZ′ beyond m.
    let mut bound_ns: Option<Rat> = None; // T ≥ bound
    let mut bound_s = Rat::zero(); // T > bound
    for ((a_eig, b), _) in g.bigrading(p.s(), &zprime)? {
        if b.is_zero() {
            continue;
        }
        if b.is_positive() {
            let cand = (rat_i(2) - &a_eig) / &b;
            if bound_ns.as_ref().map(|cur| cand > *cur).unwrap_or(true) {
                bound_ns = Some(cand);
            }
        } else {
            let cand = (rat_i(1) - &a_eig) / &b;
            if cand > bound_s {
                bound_s = cand;
            }
        }
    }
    let mut excluded: BTreeSet<Rat> = BTreeSet::new();
    for ((c_eig, b), _) in g.bigrading(&z, &zprime)? {
        if !b.is_zero() && !(c_eig.is_zero() && b.is_zero()) {
            let point = -&c_eig / &b;
            if point.is_positive() {
                excluded.insert(point);
            }
        }
    }
    let mut t_value = match bound_ns {
        Some(ns) if ns > bound_s && ns.is_positive() => ns,
        Some(_) | None if bound_s.is_zero() && excluded.is_empty() => rat_i(1),
        _ => bound_s + rat_i(1),
    };
    while excluded.contains(&t_value) {
        t_value += rat_i(1);
    }

    // Domination by the undeformed pair.
    let deformed = Pair::new(
        g,
        vec_add(p.s(), &vec_scale(&zprime, &t_value)),
        p.phi().clone(),
    )?;
    ensure_theorem!(
        dominates(g, p, &deformed)?,
        "(S, φ) fails to dominate (S + TZ′, φ)"
    );

    Ok(ZPrimeData { zprime, t_value, levi: m_levi, h, z, z_generic, n_factor })
}

/// Largest magnitude among the matrix entries of `ad(b)` over the canonical
/// basis vectors `b` of `a`.
fn max_ad_entry(g: &LieAlgebra, a: &Subspace) -> Rat {
    let mut best = Rat::zero();
    for row in a.basis() {
        for j in 0..g.dim() {
            for entry in g.bracket(row, &g.basis_elem(j)) {
                let mag = entry.abs();
                if mag > best {
                    best = mag;
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::matrix::MatrixKind;
    use crate::ratlin::QMat;

    fn alg(kind: MatrixKind, n: usize) -> LieAlgebra {
        LieAlgebra::matrix(kind, n).unwrap()
    }

    fn eij(g: &LieAlgebra, i: usize, j: usize) -> Vec<Rat> {
        let size = g.realization().unwrap().size;
        let mut m = QMat::zero(size, size);
        m[(i - 1, j - 1)] = rat_i(1);
        g.matrix_element(&m).unwrap()
    }

    fn diag_rat(g: &LieAlgebra, entries: &[Rat]) -> Vec<Rat> {
        let size = g.realization().unwrap().size;
        let mut m = QMat::zero(size, size);
        for (i, c) in entries.iter().enumerate() {
            m[(i, i)] = c.clone();
        }
        g.matrix_element(&m).unwrap()
    }

    fn diag(g: &LieAlgebra, entries: &[i64]) -> Vec<Rat> {
        let v: Vec<Rat> = entries.iter().map(|&c| rat_i(c)).collect();
        diag_rat(g, &v)
    }

    fn rats(xs: &[(i64, i64)]) -> Vec<Rat> {
        xs.iter().map(|&(n, d)| rat_i(n) / rat_i(d)).collect()
    }

    /// The deformation from the neutral pair of the rank-4 minimal-corner
    /// covector toward its principal-parabolic weight.
    fn sl4_deformation(g: &LieAlgebra) -> Deformation {
        let h = diag(g, &[1, 0, 0, -1]);
        let z = diag_rat(
            g,
            &rats(&[(0, 1), (1, 3), (-1, 3), (0, 1)]),
        );
        let phi = g.covec_of(&eij(g, 4, 1));
        Deformation::new(g, h, z, phi).unwrap()
    }

    #[test]
    fn sl4_critical_values_and_snapshots() {
        let g = alg(MatrixKind::Sl, 4);
        let d = sl4_deformation(&g);
        assert_eq!(d.critical_values(), rats(&[(0, 1), (3, 2), (6, 1)]));
        assert_eq!(
            d.quasi_critical_values(),
            rats(&[(0, 1), (3, 2), (3, 1), (6, 1), (9, 1)])
        );

        let dims = |t: (i64, i64)| -> (usize, usize, usize, usize, usize, usize) {
            let s = d.snapshot(&g, &(rat_i(t.0) / rat_i(t.1))).unwrap();
            (s.u.dim(), s.v.dim(), s.w.dim(), s.n.dim(), s.l.dim(), s.r.dim())
        };
        assert_eq!(dims((0, 1)), (5, 1, 4, 1, 3, 3));
        assert_eq!(dims((1, 2)), (3, 3, 0, 3, 3, 3));
        assert_eq!(dims((1, 1)), (3, 3, 0, 3, 3, 3));

        // The 1-deformed space is the golden span {e₁₃, e₂₄, e₁₄}.
        let expected = Subspace::from_rows(
            g.dim(),
            vec![eij(&g, 1, 3), eij(&g, 2, 4), eij(&g, 1, 4)],
        );
        assert_eq!(d.snapshot(&g, &rat_i(1)).unwrap().u, expected);

        // u_t is constant between consecutive critical values.
        let u_at = |n: i64, den: i64| d.snapshot(&g, &(rat_i(n) / rat_i(den))).unwrap().u;
        assert_eq!(u_at(1, 10), u_at(1, 2));
        assert_eq!(u_at(1, 2), u_at(7, 5));
        assert_eq!(u_at(2, 1), u_at(5, 1));
        assert_eq!(u_at(7, 1), u_at(100, 1));
        assert_ne!(u_at(1, 2), u_at(2, 1));

        // dim n_t is non-decreasing, and earlier pairs dominate later ones.
        let n_dims: Vec<usize> = [(0, 1), (1, 2), (2, 1), (7, 1), (100, 1)]
            .iter()
            .map(|&(a, b)| d.snapshot(&g, &(rat_i(a) / rat_i(b))).unwrap().n.dim())
            .collect();
        assert!(n_dims.windows(2).all(|p| p[0] <= p[1]));
        let p0 = d.pair_at(&g, &Rat::zero()).unwrap();
        let p1 = d.pair_at(&g, &rat_i(1)).unwrap();
        let p5 = d.pair_at(&g, &rat_i(5)).unwrap();
        assert!(dominates(&g, &p0, &p1).unwrap());
        assert!(dominates(&g, &p1, &p5).unwrap());
    }

    #[test]
    fn sl4_lemma_reports() {
        let g = alg(MatrixKind::Sl, 4);
        let d = sl4_deformation(&g);
        let half = rat_i(1) / rat_i(2);

        let help = d.verify_help_lemma(&g, &Rat::zero(), &rat_i(1)).unwrap();
        assert!(help.all_pass());
        assert_eq!(help.clauses.len(), 7);

        let key = d.verify_key_lemma(&g, &Rat::zero(), &half).unwrap();
        assert!(key.all_pass());
        assert!(key.to_string().contains("pass"));
        assert!(d
            .verify_key_lemma(&g, &half, &(rat_i(7) / rat_i(5)))
            .unwrap()
            .all_pass());
        // s = t degenerates cleanly.
        assert!(d.verify_key_lemma(&g, &half, &half).unwrap().all_pass());
        // An interval containing the critical value 3/2 is rejected.
        assert!(matches!(
            d.verify_key_lemma(&g, &rat_i(1), &rat_i(2)),
            Err(Error::IntervalNotRegular(_))
        ));
        assert!(matches!(
            d.verify_key_lemma(&g, &rat_i(2), &rat_i(1)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn restart_shifts_critical_values() {
        let g = alg(MatrixKind::Sl, 4);
        let d = sl4_deformation(&g);
        let d2 = d.restart(&g, &(rat_i(1) / rat_i(2))).unwrap();
        assert_eq!(d2.critical_values(), rats(&[(0, 1), (1, 1), (11, 2)]));
        let d3 = d.restart(&g, &rat_i(2)).unwrap();
        assert_eq!(d3.critical_values(), rats(&[(0, 1), (4, 1)]));
    }

    #[test]
    fn sl3_constant_term_pencil() {
        let g = alg(MatrixKind::Sl, 3);
        let d = Deformation::new(
            &g,
            g.zero_elem(),
            diag(&g, &[1, 0, -1]),
            Covec::zero(g.dim()),
        )
        .unwrap();
        assert_eq!(d.critical_values(), rats(&[(0, 1), (1, 2), (1, 1)]));
        assert_eq!(
            d.quasi_critical_values(),
            rats(&[(0, 1), (1, 2), (1, 1), (2, 1)])
        );
        // With φ = 0 the radical is everything: n = l = r = u.
        let s = d.snapshot(&g, &rat_i(1)).unwrap();
        assert_eq!(s.u.dim(), 3); // e₁₂, e₂₃ at eigenvalue 1, e₁₃ at 2
        assert_eq!(s.n, s.u);
        assert_eq!(s.l, s.u);
        assert!(d
            .verify_key_lemma(&g, &Rat::zero(), &(rat_i(1) / rat_i(2)))
            .unwrap()
            .all_pass());
        assert!(d
            .verify_help_lemma(&g, &(rat_i(1) / rat_i(4)), &(rat_i(1) / rat_i(2)))
            .unwrap()
            .all_pass());
    }

    #[test]
    fn zero_direction_and_neutral_base() {
        let g = alg(MatrixKind::Gl, 3);
        let h = diag(&g, &[1, -1, 0]);
        let phi = g.covec_of(&eij(&g, 2, 1));
        let d = Deformation::new(&g, h, g.zero_elem(), phi).unwrap();
        assert_eq!(d.critical_values(), vec![Rat::zero()]);
        assert_eq!(d.quasi_critical_values(), vec![Rat::zero()]);
        let s = d.snapshot(&g, &Rat::zero()).unwrap();
        let expected = Subspace::from_rows(g.dim(), vec![eij(&g, 1, 2)]);
        assert_eq!(s.n, expected);
        assert_eq!(s.l, expected);
        assert_eq!(s.r, expected);
    }

    #[test]
    fn direction_must_fix_covector() {
        let g = alg(MatrixKind::Gl, 3);
        let h = diag(&g, &[1, -1, 0]);
        let phi = g.covec_of(&eij(&g, 2, 1));
        // diag(1,0,0) moves e₂₁.
        assert!(matches!(
            Deformation::new(&g, h.clone(), diag(&g, &[1, 0, 0]), phi.clone()),
            Err(Error::InvalidPair(_))
        ));
        // Non-commuting direction: e₁₃ + e₃₁ commutes with neither h nor φ.
        let bad = vec_add(&eij(&g, 1, 3), &eij(&g, 3, 1));
        assert!(Deformation::new(&g, h, bad, phi).is_err());
    }

    #[test]
    fn sp4_siegel_pencil() {
        let g = alg(MatrixKind::Sp, 4);
        // Anisotropic covector: lower-left block [[1,0],[0,1]].
        let mut m = QMat::zero(4, 4);
        m[(2, 0)] = rat_i(1);
        m[(3, 1)] = rat_i(1);
        let f = g.matrix_element(&m).unwrap();
        let h = diag(&g, &[1, 1, -1, -1]);
        let d = Deformation::new(&g, h, g.zero_elem(), g.covec_of(&f)).unwrap();
        assert_eq!(d.critical_values(), vec![Rat::zero()]);
        let s = d.snapshot(&g, &rat_i(3)).unwrap();
        // The Siegel radical: e₁₃, e₂₄ and e₁₄ + e₂₃.
        let mut m13 = QMat::zero(4, 4);
        m13[(0, 2)] = rat_i(1);
        let mut m24 = QMat::zero(4, 4);
        m24[(1, 3)] = rat_i(1);
        let mut m1423 = QMat::zero(4, 4);
        m1423[(0, 3)] = rat_i(1);
        m1423[(1, 2)] = rat_i(1);
        let expected = Subspace::from_rows(
            g.dim(),
            vec![
                g.matrix_element(&m13).unwrap(),
                g.matrix_element(&m24).unwrap(),
                g.matrix_element(&m1423).unwrap(),
            ],
        );
        assert_eq!(s.u, expected);
        assert_eq!(s.n, expected);
        assert!(d
            .verify_key_lemma(&g, &rat_i(1), &rat_i(2))
            .unwrap()
            .all_pass());
    }

    #[test]
    fn zprime_gl4_minimal_corner() {
        let g = alg(MatrixKind::Gl, 4);
        let p = Pair::new(
            &g,
            diag(&g, &[1, -1, 0, 0]),
            g.covec_of(&eij(&g, 2, 1)),
        )
        .unwrap();
        let data = build_zprime(&g, &p).unwrap();
        assert_eq!(data.zprime, diag(&g, &[1, 1, 2, 4]));
        assert_eq!(data.t_value, rat_i(3));
        // The Levi is the gl₂ × gl₁ × gl₁ block algebra.
        let levi = Subspace::from_rows(
            g.dim(),
            vec![
                eij(&g, 1, 1),
                eij(&g, 2, 2),
                eij(&g, 3, 3),
                eij(&g, 4, 4),
                eij(&g, 1, 2),
                eij(&g, 2, 1),
            ],
        );
        assert_eq!(data.levi, levi);
        // The deformed pair is Levi-distinguished.
        let deformed = Pair::new(
            &g,
            vec_add(p.s(), &vec_scale(&data.zprime, &data.t_value)),
            p.phi().clone(),
        )
        .unwrap();
        assert!(deformed.is_levi_distinguished(&g).unwrap());
        assert!(!p.is_levi_distinguished(&g).unwrap());
    }

    #[test]
    fn zprime_distinguished_inputs_keep_whole_algebra() {
        // Anisotropic covector in sp₄: already distinguished, so the torus
        // is trivial and the Levi is all of g.
        let g = alg(MatrixKind::Sp, 4);
        let mut m = QMat::zero(4, 4);
        m[(2, 0)] = rat_i(1);
        m[(3, 1)] = rat_i(1);
        let f = g.matrix_element(&m).unwrap();
        let p = Pair::new(&g, diag(&g, &[1, 1, -1, -1]), g.covec_of(&f)).unwrap();
        let data = build_zprime(&g, &p).unwrap();
        assert!(data.zprime.iter().all(Zero::is_zero));
        assert_eq!(data.t_value, rat_i(1));
        assert_eq!(data.levi, Subspace::full(g.dim()));
        assert!(p.is_levi_distinguished(&g).unwrap());

        // Regular covector in sl₂.
        let g2 = alg(MatrixKind::Sl, 2);
        let p2 = Pair::new(&g2, diag(&g2, &[1, -1]), g2.covec_of(&eij(&g2, 2, 1))).unwrap();
        let data2 = build_zprime(&g2, &p2).unwrap();
        assert_eq!(data2.levi, Subspace::full(g2.dim()));
        assert!(data2.zprime.iter().all(Zero::is_zero));
    }

    #[test]
    fn zprime_on_sl4_golden_pair() {
        let g = alg(MatrixKind::Sl, 4);
        let s = diag_rat(&g, &rats(&[(1, 1), (1, 3), (-1, 3), (-1, 1)]));
        let p = Pair::new(&g, s, g.covec_of(&eij(&g, 4, 1))).unwrap();
        let data = build_zprime(&g, &p).unwrap();
        assert_eq!(data.h, diag(&g, &[1, 0, 0, -1]));
        assert_eq!(
            data.z,
            diag_rat(&g, &rats(&[(0, 1), (1, 3), (-1, 3), (0, 1)]))
        );
        // The deformed pair is Levi-distinguished and dominated by p.
        let deformed = Pair::new(
            &g,
            vec_add(p.s(), &vec_scale(&data.zprime, &data.t_value)),
            p.phi().clone(),
        )
        .unwrap();
        assert!(deformed.is_levi_distinguished(&g).unwrap());
    }
}
