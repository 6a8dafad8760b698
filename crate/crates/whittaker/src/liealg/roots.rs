//! Root systems of the finite Cartan types A–G.
//!
//! Roots are stored as integer coordinate vectors in the basis of simple
//! roots ("lattice coordinates"). The bilinear form is normalized so that
//! long roots have squared length 2; `d[i] = (αᵢ, αᵢ)/2` records the
//! normalization per simple root.
//!
//! Conventions (Bourbaki numbering throughout):
//! * `cartan[i][j] = ⟨αᵢ, αⱼ^∨⟩ = 2(αᵢ,αⱼ)/(αⱼ,αⱼ)`;
//! * for `Bₙ` the last simple root is short, for `Cₙ` it is long;
//! * for `Dₙ` the fork is at node `n−2` (0-indexed), i.e. `αₙ` is attached to
//!   `α_{n−2}`;
//! * for `E₆`–`E₈` node 2 (1-indexed) is the branch node attached to node 4;
//! * for `F₄` nodes 1,2 are long and 3,4 short; for `G₂` node 1 is short.

use std::collections::BTreeMap;

use crate::ratlin::{rat, rat_i, Rat};
use crate::{Error, Result};
use num_traits::Zero;

/// Cartan series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl std::fmt::Display for Series {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::E => "E",
            Series::F => "F",
            Series::G => "G",
        };
        write!(f, "{s}")
    }
}

/// A finite irreducible (or, for `D₂`, semisimple) Cartan type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl std::fmt::Display for CartanType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

/// A root system with its normalized bilinear form.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    /// `cartan[i][j] = ⟨αᵢ, αⱼ^∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// `d[i] = (αᵢ,αᵢ)/2`, long roots normalized to squared length 2.
    pub d: Vec<Rat>,
    /// Positive roots in lattice coordinates, sorted by (height, lex).
    positive: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
}

/// Height of a lattice vector (sum of coordinates).
pub fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

fn chain_edges(rank: usize) -> Vec<(usize, usize, i64, i64)> {
    // (i, j, cartan[i][j], cartan[j][i]) for the simply-laced chain.
    (0..rank.saturating_sub(1)).map(|i| (i, i + 1, -1, -1)).collect()
}

impl RootSystem {
    /// Build the root system of the given type.
    pub fn new(series: Series, rank: usize) -> Result<RootSystem> {
        let bad = |msg: &str| Err(Error::Unsupported(format!("{series}{rank}: {msg}")));
        // Edges as (i, j, c_ij, c_ji); d defaults to all 1 (simply laced).
        let (edges, d): (Vec<(usize, usize, i64, i64)>, Vec<Rat>) = match series {
            Series::A => {
                if rank < 1 {
                    return bad("rank must be at least 1");
                }
                (chain_edges(rank), vec![rat_i(1); rank])
            }
            Series::B => {
                if rank < 2 {
                    return bad("rank must be at least 2");
                }
                let mut e = chain_edges(rank);
                // Last edge: α_{n-1} long, α_n short.
                e[rank - 2] = (rank - 2, rank - 1, -2, -1);
                let mut d = vec![rat_i(1); rank];
                d[rank - 1] = rat(1, 2);
                (e, d)
            }
            Series::C => {
                if rank < 2 {
                    return bad("rank must be at least 2");
                }
                let mut e = chain_edges(rank);
                e[rank - 2] = (rank - 2, rank - 1, -1, -2);
                let mut d = vec![rat(1, 2); rank];
                d[rank - 1] = rat_i(1);
                (e, d)
            }
            Series::D => {
                if rank < 2 {
                    return bad("rank must be at least 2");
                }
                let mut e: Vec<_> = (0..rank.saturating_sub(2))
                    .map(|i| (i, i + 1, -1, -1))
                    .take(rank - 2)
                    .collect();
                if rank >= 3 {
                    e.push((rank - 3, rank - 1, -1, -1));
                }
                (e, vec![rat_i(1); rank])
            }
            Series::E => {
                if !(6..=8).contains(&rank) {
                    return bad("rank must be 6, 7 or 8");
                }
                let mut e = vec![(0, 2, -1, -1), (2, 3, -1, -1), (1, 3, -1, -1)];
                for i in 3..rank - 1 {
                    e.push((i, i + 1, -1, -1));
                }
                (e, vec![rat_i(1); rank])
            }
            Series::F => {
                if rank != 4 {
                    return bad("rank must be 4");
                }
                (
                    vec![(0, 1, -1, -1), (1, 2, -2, -1), (2, 3, -1, -1)],
                    vec![rat_i(1), rat_i(1), rat(1, 2), rat(1, 2)],
                )
            }
            Series::G => {
                if rank != 2 {
                    return bad("rank must be 2");
                }
                (vec![(0, 1, -1, -3)], vec![rat(1, 3), rat_i(1)])
            }
        };

        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            cartan[i][i] = 2;
        }
        for &(i, j, cij, cji) in &edges {
            cartan[i][j] = cij;
            cartan[j][i] = cji;
        }
        // Consistency of the normalization: (αᵢ,αⱼ) = cartan[i][j]·d[j] must be
        // symmetric.
        for i in 0..rank {
            for j in 0..rank {
                assert_eq!(
                    rat_i(cartan[i][j]) * &d[j],
                    rat_i(cartan[j][i]) * &d[i],
                    "asymmetric normalized form for {series}{rank}"
                );
            }
        }

        let mut rs = RootSystem {
            cartan_type: CartanType { series, rank },
            cartan,
            d,
            positive: Vec::new(),
            index: BTreeMap::new(),
        };
        rs.generate_positive();
        Ok(rs)
    }

    /// Generate all positive roots by closing the simple roots under root
    /// strings, then sort by (height, lex).
    fn generate_positive(&mut self) {
        let rank = self.cartan_type.rank;
        let mut seen: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
        let mut frontier: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                let mut v = vec![0i64; rank];
                v[i] = 1;
                v
            })
            .collect();
        for v in &frontier {
            seen.insert(v.clone(), ());
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..rank {
                    // p = max k with β − kαᵢ a (known, lower-height) root.
                    let mut p = 0i64;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if probe.iter().all(|&c| c >= 0) && seen.contains_key(&probe) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 =
                        (0..rank).map(|j| beta[j] * self.cartan[j][i]).sum();
                    let q = p - pairing;
                    if q >= 1 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !seen.contains_key(&up) {
                            seen.insert(up.clone(), ());
                            next.push(up);
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut roots: Vec<Vec<i64>> = seen.into_keys().collect();
        roots.sort_by_key(|v| (height(v), v.clone()));
        self.index = roots.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        self.positive = roots;
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    /// Positive roots, sorted by (height, lex).
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn n_positive(&self) -> usize {
        self.positive.len()
    }

    /// Index of a positive root in the sorted list.
    pub fn positive_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Is `v` a root (positive or negative)?
    pub fn is_root(&self, v: &[i64]) -> bool {
        if self.index.contains_key(v) {
            return true;
        }
        let neg: Vec<i64> = v.iter().map(|&c| -c).collect();
        self.index.contains_key(&neg)
    }

    /// `⟨β, αᵢ^∨⟩` for a lattice vector β.
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| beta[j] * self.cartan[j][i]).sum()
    }

    /// Simple reflection `sᵢ(β) = β − ⟨β, αᵢ^∨⟩ αᵢ`.
    pub fn reflect_simple(&self, i: usize, beta: &[i64]) -> Vec<i64> {
        let mut out = beta.to_vec();
        out[i] -= self.pairing(beta, i);
        out
    }

    /// Normalized inner product `(β, γ)`.
    pub fn inner(&self, beta: &[i64], gamma: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank() {
            if beta[i] == 0 {
                continue;
            }
            for j in 0..self.rank() {
                if gamma[j] != 0 {
                    acc += rat_i(beta[i] * gamma[j] * self.cartan[i][j]) * &self.d[j];
                }
            }
        }
        acc
    }

    /// `(β, β)`.
    pub fn norm2(&self, beta: &[i64]) -> Rat {
        self.inner(beta, beta)
    }

    /// `p_{α,β} = max { k ≥ 0 : β − kα ∈ Φ }` for roots α, β.
    pub fn string_down(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut p = 0;
        let mut probe = beta.to_vec();
        loop {
            for (x, a) in probe.iter_mut().zip(alpha) {
                *x -= a;
            }
            if probe.iter().all(|&c| c == 0) || !self.is_root(&probe) {
                break;
            }
            p += 1;
        }
        p
    }

    /// All roots are the same length?
    pub fn simply_laced(&self) -> bool {
        use num_traits::One;
        self.d.iter().all(|x| x.is_one())
    }

    /// The highest root (unique maximum in the dominance order for
    /// irreducible types; for reducible `D₂` this returns the lex-largest of
    /// the maximal-height roots).
    pub fn highest_root(&self) -> Vec<i64> {
        self.positive.last().expect("nonempty root system").clone()
    }

    /// Breadth-first Weyl orbit of a single root, with predecessor tracking;
    /// returns, for each orbit member, a word of simple reflections carrying
    /// `from` to it (applied left to right).
    pub fn weyl_orbit_words(&self, from: &[i64]) -> BTreeMap<Vec<i64>, Vec<usize>> {
        let mut words: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        words.insert(from.to_vec(), Vec::new());
        let mut frontier = vec![from.to_vec()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                let base = words[v].clone();
                for i in 0..self.rank() {
                    let w = self.reflect_simple(i, v);
                    if !words.contains_key(&w) {
                        let mut word = base.clone();
                        word.push(i);
                        words.insert(w.clone(), word);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        words
    }

    /// Search for a Weyl word carrying every root in `set` into the simple
    /// roots simultaneously. Breadth-first over images of the whole set;
    /// `cap` bounds the number of distinct images visited.
    ///
    /// Returns `Ok(Some(word))` on success, `Ok(None)` if the full orbit of
    /// the set was enumerated without success (a definite negative), and
    /// `Err(SearchExhausted)` if the cap was hit first.
    pub fn weyl_move_into_simples(
        &self,
        set: &[Vec<i64>],
        cap: usize,
    ) -> Result<Option<Vec<usize>>> {
        let rank = self.rank();
        let is_simple = |v: &[i64]| v.iter().sum::<i64>() == 1 && v.iter().all(|&c| c >= 0);
        let key = |set: &[Vec<i64>]| {
            let mut s: Vec<Vec<i64>> = set.to_vec();
            s.sort();
            s
        };
        let start = key(set);
        if start.iter().all(|v| is_simple(v)) {
            return Ok(Some(Vec::new()));
        }
        let mut seen: BTreeMap<Vec<Vec<i64>>, Vec<usize>> = BTreeMap::new();
        seen.insert(start.clone(), Vec::new());
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                let base = seen[s].clone();
                for i in 0..rank {
                    let im: Vec<Vec<i64>> =
                        s.iter().map(|v| self.reflect_simple(i, v)).collect();
                    let im = key(&im);
                    if seen.contains_key(&im) {
                        continue;
                    }
                    let mut word = base.clone();
                    word.push(i);
                    if im.iter().all(|v| is_simple(v)) {
                        return Ok(Some(word));
                    }
                    seen.insert(im.clone(), word);
                    if seen.len() > cap {
                        return Err(Error::SearchExhausted(format!(
                            "Weyl set-orbit search capped at {cap} images"
                        )));
                    }
                    next.push(im);
                }
            }
            frontier = next;
        }
        Ok(None)
    }
}
