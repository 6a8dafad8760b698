//! Exact rational linear algebra.
//!
//! Everything downstream reduces to the primitives in this module: dense
//! matrices over ℚ ([`QMat`]), canonical subspaces of ℚⁿ ([`Subspace`]) and
//! quotient spaces with an echelon section ([`Quotient`]).
//!
//! Subspaces are stored as reduced row echelon bases whose rows are scaled to
//! primitive integer vectors (positive leading entry, gcd 1). Two subspaces
//! are equal as sets of vectors if and only if their stored representations
//! are equal componentwise, so `==` decides subspace equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Rational from numerator/denominator.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn rat_i(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse `"p"` or `"p/q"` into a rational.
pub fn rat_parse(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Usage(format!("bad rational literal: {s:?}")))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Usage(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(p)?, den))
        }
    }
}

/// Render a rational as `"p"` or `"p/q"` (canonical, reduced form).
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense matrix over ℚ, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    /// Zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Build from explicit rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimMismatch("ragged rows in matrix literal".into()));
        }
        Ok(QMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    /// Borrow row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Matrix product.
    pub fn mul(&self, other: &QMat) -> Result<QMat> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!(
                "matrix product {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if self.cols != v.len() {
            return Err(Error::DimMismatch(format!(
                "matrix {}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Rat::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = Rat::zero();
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() && !self[(i, j)].is_zero() {
                    acc += &self[(i, j)] * vj;
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> QMat {
        let mut out = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn add(&self, other: &QMat) -> Result<QMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch("matrix addition".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QMat) -> Result<QMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch("matrix subtraction".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> QMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Rank via row reduction.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Rat>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        rref_in_place(&mut rows).len()
    }

    /// Kernel `{x : M x = 0}` as a canonical subspace of ℚ^cols.
    pub fn nullspace(&self) -> Subspace {
        // Row-reduce M, read pivot/free structure, then back-substitute one
        // basis vector per free column. Edge cases: the zero matrix yields the
        // full space; a full-column-rank matrix yields the zero space.
        let mut rows: Vec<Vec<Rat>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref_in_place(&mut rows);
        let pivot_cols: Vec<usize> = pivots.clone();
        let is_pivot = |c: usize| pivot_cols.contains(&c);
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot(free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                // rows[r] has leading 1 at pc; solve row · v = 0 for v[pc].
                v[pc] = -rows[r][free].clone();
            }
            basis.push(v);
        }
        Subspace::from_rows(self.cols, basis)
    }

    /// One solution of `M x = rhs` if the system is consistent.
    ///
    /// The returned solution is the canonical one with all free variables set
    /// to zero, so the function is deterministic. Verified by substitution.
    pub fn solve_affine(&self, rhs: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if rhs.len() != self.rows {
            return Err(Error::DimMismatch(format!(
                "solve: matrix {}x{} with rhs of length {}",
                self.rows,
                self.cols,
                rhs.len()
            )));
        }
        let mut aug: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(rhs[i].clone());
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug);
        // Inconsistent iff some pivot lands in the augmented column.
        if pivots.iter().any(|&c| c == self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[r][self.cols].clone();
        }
        debug_assert_eq!(self.mul_vec(&x).unwrap(), rhs.to_vec());
        Ok(Some(x))
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<QMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(unit_vec(n, i));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug);
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| k != c) {
            return None;
        }
        let mut out = QMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[i][n + j].clone();
            }
        }
        Some(out)
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// In-place reduced row echelon form. Returns the pivot columns in order.
/// Zero rows are removed.
fn rref_in_place(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let n_cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        // Find a row at or below r with nonzero entry in column c.
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for e in rows[r].iter_mut() {
            *e *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..n_cols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Scale a rational row to a primitive integer vector with positive leading
/// coefficient.
fn primitive_row(row: &mut [Rat]) {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for e in row.iter() {
        if !e.is_zero() {
            lcm = lcm.lcm(e.denom());
        }
    }
    let mut gcd = BigInt::zero();
    let scaled: Vec<BigInt> = row
        .iter()
        .map(|e| {
            let v = e.numer() * (&lcm / e.denom());
            gcd = gcd.gcd(&v);
            v
        })
        .collect();
    if gcd.is_zero() {
        return;
    }
    let lead_neg = scaled.iter().find(|v| !v.is_zero()).map(|v| v.is_negative()).unwrap_or(false);
    let div = if lead_neg { -gcd } else { gcd };
    for (e, v) in row.iter_mut().zip(scaled) {
        *e = BigRational::from_integer(v / &div);
    }
}

/// A linear subspace of ℚⁿ in canonical form.
///
/// The basis is the reduced row echelon basis of the row space, with each row
/// scaled to a primitive integer vector (positive leading entry). This makes
/// the representation unique per subspace, so derived `PartialEq` is
/// set-theoretic equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
}

impl Subspace {
    /// Canonicalize a spanning set into a subspace.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<Rat>>) -> Subspace {
        assert!(
            rows.iter().all(|r| r.len() == ambient),
            "spanning rows must have ambient length"
        );
        let mut rows = rows;
        rref_in_place(&mut rows);
        for r in rows.iter_mut() {
            primitive_row(r);
        }
        Subspace { ambient, basis: rows }
    }

    /// The zero subspace of ℚⁿ.
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Vec::new() }
    }

    /// The full space ℚⁿ.
    pub fn full(ambient: usize) -> Subspace {
        Subspace::from_rows(ambient, (0..ambient).map(|i| unit_vec(ambient, i)).collect())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// Membership test.
    pub fn contains_vec(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient, "membership in wrong ambient space");
        // Reduce v against the echelon basis; v ∈ span iff the residue is 0.
        let mut v = v.to_vec();
        for row in &self.basis {
            let lead = row.iter().position(|e| !e.is_zero()).expect("no zero basis rows");
            if !v[lead].is_zero() {
                let f = &v[lead] / &row[lead];
                for j in 0..self.ambient {
                    let t = &row[j] * &f;
                    v[j] -= t;
                }
            }
        }
        v.iter().all(|e| e.is_zero())
    }

    /// Is `self ⊆ other`?
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "containment in wrong ambient space");
        self.basis.iter().all(|r| other.contains_vec(r))
    }

    /// Sum of subspaces.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimMismatch(format!(
                "subspace sum: ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Subspace::from_rows(self.ambient, rows))
    }

    /// Intersection of subspaces, via annihilators:
    /// `A ∩ B = (A° + B°)°`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimMismatch(format!(
                "subspace intersection: ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        let sum = self.annihilator().sum(&other.annihilator())?;
        Ok(sum.annihilator())
    }

    /// Annihilator `{x : ⟨b, x⟩ = 0 for all b in self}` w.r.t. the standard
    /// dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        QMat::from_rows(self.basis.clone()).expect("canonical basis is rectangular").nullspace()
    }

    /// Basis of a complement of `self` inside `within` (requires
    /// `self ⊆ within`): the echelon section of the quotient `within/self`.
    ///
    /// Deterministic: rows of `within`'s canonical basis are retained greedily
    /// when they enlarge `self`.
    pub fn complement_in(&self, within: &Subspace) -> Result<Vec<Vec<Rat>>> {
        if !self.is_subspace_of(within) {
            return Err(Error::DimMismatch(
                "complement_in: first space is not contained in the second".into(),
            ));
        }
        let mut acc = self.clone();
        let mut section = Vec::new();
        for row in &within.basis {
            if !acc.contains_vec(row) {
                section.push(row.clone());
                acc = acc.sum(&Subspace::from_rows(self.ambient, vec![row.clone()]))?;
            }
        }
        debug_assert_eq!(acc, *within);
        Ok(section)
    }
}

/// Quotient space `space / kernel` with a distinguished echelon section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    space: Subspace,
    kernel: Subspace,
    section: Vec<Vec<Rat>>,
}

impl Quotient {
    /// Build `space / kernel`; requires `kernel ⊆ space`.
    pub fn new(space: Subspace, kernel: Subspace) -> Result<Quotient> {
        let section = kernel.complement_in(&space)?;
        Ok(Quotient { space, kernel, section })
    }

    pub fn dim(&self) -> usize {
        self.space.dim() - self.kernel.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    /// Representative vectors of a basis of the quotient.
    pub fn section(&self) -> &[Vec<Rat>] {
        &self.section
    }
}

/// Standard basis vector eᵢ of ℚⁿ.
pub fn unit_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// Sum of two coordinate vectors.
pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Difference of two coordinate vectors.
pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Scalar multiple of a coordinate vector.
pub fn vec_scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * c).collect()
}

/// Standard dot product.
pub fn vec_dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vr(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_i(x)).collect()
    }

    #[test]
    fn rat_parsing_round_trips() {
        for s in ["0", "5", "-3", "2/3", "-7/4"] {
            let r = rat_parse(s).unwrap();
            assert_eq!(rat_str(&r), s);
        }
        assert_eq!(rat_parse(" 4/6 ").unwrap(), rat(2, 3));
        assert!(rat_parse("1/0").is_err());
        assert!(rat_parse("x").is_err());
    }

    #[test]
    fn rref_canonical_and_primitive() {
        // Same row space, different spanning sets -> identical representation.
        let a = Subspace::from_rows(3, vec![vr(&[2, 4, 6]), vr(&[1, 1, 1])]);
        let b = Subspace::from_rows(3, vec![vr(&[1, 3, 5]), vr(&[0, 2, 4]), vr(&[3, 5, 7])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        // Rows are primitive integer vectors with positive leading entries.
        for row in a.basis() {
            assert!(row.iter().all(|e| e.denom().is_one()));
            let lead = row.iter().find(|e| !e.is_zero()).unwrap();
            assert!(lead.numer() > &BigInt::zero());
        }
    }

    #[test]
    fn nullspace_remultiplies_to_zero() {
        let m = QMat::from_rows(vec![vr(&[1, 2, 3, 4]), vr(&[2, 4, 6, 8]), vr(&[0, 1, 1, 0])])
            .unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 2);
        for row in ns.basis() {
            assert!(m.mul_vec(row).unwrap().iter().all(|e| e.is_zero()));
        }
        // rank + nullity = #cols
        assert_eq!(m.rank() + ns.dim(), 4);
        // Zero matrix -> full space; identity -> zero space.
        assert_eq!(QMat::zero(2, 3).nullspace(), Subspace::full(3));
        assert!(QMat::identity(3).nullspace().is_zero());
    }

    #[test]
    fn solve_affine_substitutes() {
        let m = QMat::from_rows(vec![vr(&[1, 2]), vr(&[3, 4])]).unwrap();
        let x = m.solve_affine(&vr(&[5, 6])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vr(&[5, 6]));
        // Inconsistent system.
        let s = QMat::from_rows(vec![vr(&[1, 1]), vr(&[2, 2])]).unwrap();
        assert!(s.solve_affine(&vr(&[1, 3])).unwrap().is_none());
        // Underdetermined: canonical (free vars zero) solution.
        let u = QMat::from_rows(vec![vr(&[1, 1, 1])]).unwrap();
        let x = u.solve_affine(&vr(&[3])).unwrap().unwrap();
        assert_eq!(x, vr(&[3, 0, 0]));
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::from_rows(3, vec![vr(&[1, 0, 0]), vr(&[0, 1, 0])]);
        let b = Subspace::from_rows(3, vec![vr(&[0, 1, 0]), vr(&[0, 0, 1])]);
        let cap = a.intersect(&b).unwrap();
        assert_eq!(cap, Subspace::from_rows(3, vec![vr(&[0, 1, 0])]));
        let sum = a.sum(&b).unwrap();
        assert_eq!(sum, Subspace::full(3));
        // Grassmann identity on this instance.
        assert_eq!(a.dim() + b.dim(), sum.dim() + cap.dim());
        // Mismatched ambient dims must error.
        assert!(a.intersect(&Subspace::full(4)).is_err());
    }

    #[test]
    fn complement_section() {
        let small = Subspace::from_rows(3, vec![vr(&[1, 1, 0])]);
        let big = Subspace::full(3);
        let sec = small.complement_in(&big).unwrap();
        assert_eq!(sec.len(), 2);
        let q = Quotient::new(big.clone(), small.clone()).unwrap();
        assert_eq!(q.dim(), 2);
        // Section plus kernel spans the space.
        let mut rows = small.basis().to_vec();
        rows.extend(q.section().iter().cloned());
        assert_eq!(Subspace::from_rows(3, rows), big);
        // complement_in demands containment.
        assert!(big.complement_in(&small).is_err());
    }

    /// Strategy: small random subspace of ℚ⁵ from integer spanning rows.
    fn subspace_strategy() -> impl Strategy<Value = Subspace> {
        proptest::collection::vec(proptest::collection::vec(-4i64..=4, 5), 0..4)
            .prop_map(|rows| Subspace::from_rows(5, rows.iter().map(|r| vr(r)).collect()))
    }

    proptest! {
        /// Canonical form is invariant under change of spanning set: mixing
        /// rows by row operations yields the identical representation.
        #[test]
        fn canonical_form_stable(sub in subspace_strategy(), k in 0usize..4) {
            let mut rows = sub.basis().to_vec();
            if rows.len() >= 2 {
                let j = k % rows.len();
                let i = (k + 1) % rows.len();
                let combo = vec_add(&rows[i], &vec_scale(&rows[j], &rat(3, 2)));
                rows.push(combo);
            }
            rows.push(vec![Rat::zero(); 5]);
            prop_assert_eq!(Subspace::from_rows(5, rows), sub);
        }

        /// Grassmann dimension identity for random pairs.
        #[test]
        fn grassmann_identity(a in subspace_strategy(), b in subspace_strategy()) {
            let sum = a.sum(&b).unwrap();
            let cap = a.intersect(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), sum.dim() + cap.dim());
            prop_assert!(cap.is_subspace_of(&a));
            prop_assert!(cap.is_subspace_of(&b));
            prop_assert!(a.is_subspace_of(&sum));
        }
    }
}
