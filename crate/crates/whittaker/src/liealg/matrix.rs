//! Classical matrix realizations: `gl(n)`, `sl(n)`, `sp(2m)`, `so(m,m)`,
//! `so(m+1,m)`.
//!
//! Conventions:
//! * `sp(2m)` preserves the symplectic form `[[0, I],[−I, 0]]`; its elements
//!   are the block matrices `[[A, B],[C, −Aᵗ]]` with `B`, `C` symmetric.
//! * `so(m,m)` (split even) preserves `[[0, I],[I, 0]]`; block shape as above
//!   with `B`, `C` antisymmetric.
//! * `so(m+1,m)` (split odd) preserves `[[0, I, 0],[I, 0, 0],[0, 0, 1]]`.
//!
//! Every basis element is either diagonal (Cartan) or a root vector for the
//! diagonal torus; bases are chosen so that each basis matrix has a
//! "distinguished" entry not shared by any other basis matrix, which makes
//! expanding an arbitrary member of the algebra in the basis a coordinate
//! read-off.

use crate::ratlin::{rat_i, QMat, Rat};
use crate::{Error, Result};
use num_traits::Zero;

/// Kind of classical matrix algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    Gl,
    Sl,
    Sp,
    SoSplit,
    SoOdd,
}

impl std::fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MatrixKind::Gl => "gl",
            MatrixKind::Sl => "sl",
            MatrixKind::Sp => "sp",
            MatrixKind::SoSplit => "so_split",
            MatrixKind::SoOdd => "so_odd",
        };
        write!(f, "{s}")
    }
}

/// Raw output of a matrix construction, consumed by the algebra assembler.
pub struct MatrixBuild {
    pub kind: MatrixKind,
    pub size: usize,
    /// Diagonal (Cartan) basis matrices.
    pub cartan: Vec<QMat>,
    /// Root vectors with positivity flags.
    pub root_vectors: Vec<(QMat, bool)>,
    /// Indices (into `root_vectors`) of the simple positive root vectors, in
    /// Bourbaki order.
    pub simples: Vec<usize>,
}

fn e(n: usize, i: usize, j: usize) -> QMat {
    let mut m = QMat::zero(n, n);
    m[(i, j)] = rat_i(1);
    m
}

/// Maximum supported matrix size.
pub const MAX_MATRIX_SIZE: usize = 12;

/// Build the basis of a classical matrix algebra. `n` is the matrix size.
pub fn build_matrix_basis(kind: MatrixKind, n: usize) -> Result<MatrixBuild> {
    if n > MAX_MATRIX_SIZE {
        return Err(Error::Unsupported(format!(
            "matrix size {n} exceeds the supported bound {MAX_MATRIX_SIZE}"
        )));
    }
    match kind {
        MatrixKind::Gl => {
            if n < 1 {
                return Err(Error::Unsupported("gl requires n ≥ 1".into()));
            }
            let cartan = (0..n).map(|i| e(n, i, i)).collect();
            let mut root_vectors = Vec::new();
            let mut simples = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        if j == i + 1 {
                            simples.push(root_vectors.len());
                        }
                        root_vectors.push((e(n, i, j), i < j));
                    }
                }
            }
            Ok(MatrixBuild { kind, size: n, cartan, root_vectors, simples })
        }
        MatrixKind::Sl => {
            if n < 2 {
                return Err(Error::Unsupported("sl requires n ≥ 2".into()));
            }
            let cartan = (0..n - 1)
                .map(|i| e(n, i, i).sub(&e(n, i + 1, i + 1)).unwrap())
                .collect();
            let mut root_vectors = Vec::new();
            let mut simples = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        if j == i + 1 {
                            simples.push(root_vectors.len());
                        }
                        root_vectors.push((e(n, i, j), i < j));
                    }
                }
            }
            Ok(MatrixBuild { kind, size: n, cartan, root_vectors, simples })
        }
        MatrixKind::Sp => {
            if n < 2 || n % 2 != 0 {
                return Err(Error::Unsupported("sp requires even n ≥ 2".into()));
            }
            let m = n / 2;
            // Cartan: Eᵢᵢ − E_{m+i,m+i}.
            let cartan = (0..m).map(|i| e(n, i, i).sub(&e(n, m + i, m + i)).unwrap()).collect();
            let mut root_vectors: Vec<(QMat, bool)> = Vec::new();
            let mut simples = vec![usize::MAX; m];
            // A-part (εᵢ − εⱼ): E_ij − E_{m+j,m+i}.
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        if j == i + 1 {
                            simples[i] = root_vectors.len();
                        }
                        let mat = e(n, i, j).sub(&e(n, m + j, m + i)).unwrap();
                        root_vectors.push((mat, i < j));
                    }
                }
            }
            // B-part (εᵢ + εⱼ, positive): E_{i,m+j} + E_{j,m+i}; diagonal i=j
            // contributes E_{i,m+i} (the long roots 2εᵢ).
            for i in 0..m {
                for j in i..m {
                    let mat = if i == j {
                        e(n, i, m + i)
                    } else {
                        e(n, i, m + j).add(&e(n, j, m + i)).unwrap()
                    };
                    if i == j && i == m - 1 {
                        simples[m - 1] = root_vectors.len();
                    }
                    root_vectors.push((mat, true));
                }
            }
            // C-part (−εᵢ − εⱼ): E_{m+i,j} + E_{m+j,i}; diagonal E_{m+i,i}.
            for i in 0..m {
                for j in i..m {
                    let mat = if i == j {
                        e(n, m + i, i)
                    } else {
                        e(n, m + i, j).add(&e(n, m + j, i)).unwrap()
                    };
                    root_vectors.push((mat, false));
                }
            }
            Ok(MatrixBuild { kind, size: n, cartan, root_vectors, simples })
        }
        MatrixKind::SoSplit => {
            if n < 4 || n % 2 != 0 {
                return Err(Error::Unsupported("so_split requires even n ≥ 4".into()));
            }
            let m = n / 2;
            let cartan = (0..m).map(|i| e(n, i, i).sub(&e(n, m + i, m + i)).unwrap()).collect();
            let mut root_vectors: Vec<(QMat, bool)> = Vec::new();
            let mut simples = vec![usize::MAX; m];
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        if j == i + 1 {
                            simples[i] = root_vectors.len();
                        }
                        let mat = e(n, i, j).sub(&e(n, m + j, m + i)).unwrap();
                        root_vectors.push((mat, i < j));
                    }
                }
            }
            // B-part (εᵢ + εⱼ, i<j): E_{i,m+j} − E_{j,m+i}.
            for i in 0..m {
                for j in i + 1..m {
                    if i == m - 2 && j == m - 1 {
                        simples[m - 1] = root_vectors.len();
                    }
                    let mat = e(n, i, m + j).sub(&e(n, j, m + i)).unwrap();
                    root_vectors.push((mat, true));
                }
            }
            // C-part (−εᵢ − εⱼ): E_{m+i,j} − E_{m+j,i}.
            for i in 0..m {
                for j in i + 1..m {
                    let mat = e(n, m + i, j).sub(&e(n, m + j, i)).unwrap();
                    root_vectors.push((mat, false));
                }
            }
            if m == 1 {
                simples.clear();
            }
            Ok(MatrixBuild { kind, size: n, cartan, root_vectors, simples })
        }
        MatrixKind::SoOdd => {
            if n < 3 || n % 2 != 1 {
                return Err(Error::Unsupported("so_odd requires odd n ≥ 3".into()));
            }
            let m = n / 2;
            let last = 2 * m; // index of the odd coordinate
            let cartan = (0..m).map(|i| e(n, i, i).sub(&e(n, m + i, m + i)).unwrap()).collect();
            let mut root_vectors: Vec<(QMat, bool)> = Vec::new();
            let mut simples = vec![usize::MAX; m];
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        if j == i + 1 {
                            simples[i] = root_vectors.len();
                        }
                        let mat = e(n, i, j).sub(&e(n, m + j, m + i)).unwrap();
                        root_vectors.push((mat, i < j));
                    }
                }
            }
            for i in 0..m {
                for j in i + 1..m {
                    let mat = e(n, i, m + j).sub(&e(n, j, m + i)).unwrap();
                    root_vectors.push((mat, true));
                }
            }
            for i in 0..m {
                for j in i + 1..m {
                    let mat = e(n, m + i, j).sub(&e(n, m + j, i)).unwrap();
                    root_vectors.push((mat, false));
                }
            }
            // Short roots ±εᵢ from the odd coordinate.
            for i in 0..m {
                if i == m - 1 {
                    simples[m - 1] = root_vectors.len();
                }
                let mat = e(n, i, last).sub(&e(n, last, m + i)).unwrap();
                root_vectors.push((mat, true));
            }
            for i in 0..m {
                let mat = e(n, m + i, last).sub(&e(n, last, i)).unwrap();
                root_vectors.push((mat, false));
            }
            Ok(MatrixBuild { kind, size: n, cartan, root_vectors, simples })
        }
    }
}

/// Commutator `[X, Y] = XY − YX`.
pub fn commutator(x: &QMat, y: &QMat) -> QMat {
    x.mul(y).unwrap().sub(&y.mul(x).unwrap()).unwrap()
}

/// Fast exact expansion of algebra members in the fixed basis.
///
/// The basis is split into the Cartan block (diagonal matrices) and root
/// vectors (strictly off-diagonal). Cartan coordinates come from a
/// precomputed left inverse applied to the diagonal; each root vector owns a
/// "distinguished" off-diagonal entry no other root vector touches, so its
/// coordinate is a single division. Every expansion is verified by
/// reconstruction, which also rejects matrices outside the algebra.
pub struct BasisExpander {
    n_cartan: usize,
    mats: Vec<QMat>,
    /// r × n left inverse of the (n × r) matrix of Cartan diagonals.
    cartan_left_inv: QMat,
    /// Distinguished entry of each root matrix (offset by `n_cartan`).
    dist: Vec<(usize, usize)>,
}

impl BasisExpander {
    /// Build an expander; panics if the basis violates the structural
    /// assumptions (they are construction invariants, not input conditions).
    pub fn new(n_cartan: usize, mats: Vec<QMat>) -> BasisExpander {
        let n = mats[0].n_rows();
        // Cartan matrices must be diagonal and independent.
        let mut d = QMat::zero(n, n_cartan);
        for (c, m) in mats[..n_cartan].iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    assert!(i == j || m[(i, j)].is_zero(), "non-diagonal Cartan matrix");
                }
                d[(i, c)] = m[(i, i)].clone();
            }
        }
        let dt = d.transpose();
        let gram_inv = dt
            .mul(&d)
            .unwrap()
            .inverse()
            .expect("linearly dependent Cartan diagonals");
        let cartan_left_inv = gram_inv.mul(&dt).unwrap();
        // Root matrices must be off-diagonal, each owning one entry.
        let roots = &mats[n_cartan..];
        let first = |m: &QMat| -> (usize, usize) {
            for i in 0..n {
                for j in 0..n {
                    if !m[(i, j)].is_zero() {
                        assert!(i != j, "root vector with a diagonal entry");
                        return (i, j);
                    }
                }
            }
            panic!("zero basis matrix")
        };
        let dist: Vec<(usize, usize)> = roots.iter().map(first).collect();
        for (k, &(i, j)) in dist.iter().enumerate() {
            for (l, b) in roots.iter().enumerate() {
                assert!(
                    l == k || b[(i, j)].is_zero(),
                    "root matrices share the distinguished entry ({i},{j})"
                );
            }
        }
        BasisExpander { n_cartan, mats, cartan_left_inv, dist }
    }

    pub fn mats(&self) -> &[QMat] {
        &self.mats
    }

    /// Exact coordinates of `mat` in the basis; errors if `mat` is not in
    /// the span.
    pub fn expand(&self, mat: &QMat) -> Result<Vec<Rat>> {
        let n = mat.n_rows();
        let diag: Vec<Rat> = (0..n).map(|i| mat[(i, i)].clone()).collect();
        let mut coords = self.cartan_left_inv.mul_vec(&diag)?;
        for (k, &(i, j)) in self.dist.iter().enumerate() {
            let b = &self.mats[self.n_cartan + k];
            coords.push(&mat[(i, j)] / &b[(i, j)]);
        }
        // Verify: Σ c_k B_k == mat.
        let mut recon = QMat::zero(mat.n_rows(), mat.n_cols());
        for (c, b) in coords.iter().zip(&self.mats) {
            if !c.is_zero() {
                recon = recon.add(&b.scale(c))?;
            }
        }
        if recon != *mat {
            return Err(Error::InvalidPair(
                "matrix does not lie in the algebra spanned by the basis".into(),
            ));
        }
        Ok(coords)
    }
}
