//! Exact dense linear algebra over a small finite field: products,
//! Gauss–Jordan inverses, reduced row echelon forms, kernels, and a
//! canonical subspace type built on them.
//!
//! Matrices do not carry their field; every operation takes `&Field`.
//! Row-echelon canonicalisation makes subspace equality and hashing exact,
//! which the flag-variety enumeration relies on.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

/// A dense `rows x cols` matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from explicit rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u16::from(i == j)))
    }

    /// Raw entries, row-major (for serialisation).
    pub fn entries(&self) -> &[Fe] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat, f: &Field) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Mat, f: &Field) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, rhs: &Mat, f: &Field) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Mat::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = f.add(out.get(r, c), f.mul(a, rhs.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Matrix–column-vector product.
    pub fn mul_vec(&self, v: &[Fe], f: &Field) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                v.iter()
                    .enumerate()
                    .fold(0, |acc, (c, &vc)| f.add(acc, f.mul(self.get(r, c), vc)))
            })
            .collect()
    }

    /// Apply the `p^k`-power Frobenius entrywise.
    pub fn frob_map(&self, k: i64, f: &Field) -> Mat {
        let data = self.data.iter().map(|&x| f.frob_pow(x, k)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    /// `self^e` for a square matrix and `e >= 0`.
    pub fn pow(&self, e: u64, f: &Field) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form, returned with the pivot columns.
    pub fn rre(&self, f: &Field) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..m.cols {
            if lead >= m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            // Swap into place and normalise the pivot to 1.
            for c in 0..m.cols {
                let (a, b) = (m.get(lead, c), m.get(pr, c));
                m.set(lead, c, b);
                m.set(pr, c, a);
            }
            let inv = f.inv(m.get(lead, col));
            for c in 0..m.cols {
                m.set(lead, c, f.mul(m.get(lead, c), inv));
            }
            for r in 0..m.rows {
                if r != lead && m.get(r, col) != 0 {
                    let factor = m.get(r, col);
                    for c in 0..m.cols {
                        let v = f.sub(m.get(r, c), f.mul(factor, m.get(lead, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rre(f).1.len()
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self, f: &Field) -> Result<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // Augment with the identity and reduce.
        let mut aug = Mat::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let (red, pivots) = aug.rre(f);
        if pivots.len() < n || pivots.iter().copied().take(n).ne(0..n) {
            return Err(Error::SingularMatrix("inverse"));
        }
        let mut out = Mat::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, red.get(r, n + c));
            }
        }
        Ok(out)
    }

    /// Basis (as rows) of the right kernel `{x : self x = 0}`.
    pub fn kernel(&self, f: &Field) -> Mat {
        let (red, pivots) = self.rre(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::new();
        for &fc in &free {
            let mut v = vec![0; self.cols];
            v[fc] = 1;
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = f.neg(red.get(prow, fc));
            }
            rows.push(v);
        }
        if rows.is_empty() {
            Mat::zero(0, self.cols)
        } else {
            Mat::from_rows(rows)
        }
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// A subspace of `F^n`, stored as a reduced row-echelon basis so that
/// equality and hashing are canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Mat, // RRE, no zero rows
}

impl Subspace {
    /// The zero subspace of `F^n`.
    pub fn zero_space(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Mat::zero(0, n),
        }
    }

    /// The whole of `F^n`.
    pub fn full(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Mat::identity(n),
        }
    }

    /// Span of the rows of `mat`.
    pub fn from_spanning_rows(mat: &Mat, f: &Field) -> Self {
        let (red, pivots) = mat.rre(f);
        let rows = (0..pivots.len()).map(|r| red.row(r).to_vec()).collect();
        Subspace {
            ambient: mat.cols(),
            basis: if pivots.is_empty() {
                Mat::zero(0, mat.cols())
            } else {
                Mat::from_rows(rows)
            },
        }
    }

    /// Span of a set of vectors.
    pub fn from_vectors(vecs: &[Vec<Fe>], n: usize, f: &Field) -> Self {
        if vecs.is_empty() {
            return Subspace::zero_space(n);
        }
        Subspace::from_spanning_rows(&Mat::from_rows(vecs.to_vec()), f)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn contains(&self, v: &[Fe], f: &Field) -> bool {
        // Reduce v against the echelon basis.
        let mut v = v.to_vec();
        for r in 0..self.basis.rows() {
            let pivot_col = (0..self.ambient)
                .find(|&c| self.basis.get(r, c) != 0)
                .expect("no zero rows in basis");
            if v[pivot_col] != 0 {
                let factor = v[pivot_col];
                for (c, vc) in v.iter_mut().enumerate() {
                    *vc = f.sub(*vc, f.mul(factor, self.basis.get(r, c)));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace, f: &Field) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r), f))
    }

    pub fn sum(&self, other: &Subspace, f: &Field) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows: Vec<Vec<Fe>> = Vec::new();
        for r in 0..self.dim() {
            rows.push(self.basis.row(r).to_vec());
        }
        for r in 0..other.dim() {
            rows.push(other.basis.row(r).to_vec());
        }
        Subspace::from_vectors(&rows, self.ambient, f)
    }

    pub fn dim_sum(&self, other: &Subspace, f: &Field) -> usize {
        self.sum(other, f).dim()
    }

    pub fn dim_intersection(&self, other: &Subspace, f: &Field) -> usize {
        self.dim() + other.dim() - self.dim_sum(other, f)
    }

    pub fn intersection(&self, other: &Subspace, f: &Field) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // x = a . A = b . B; solve [A^T | -B^T] (a; b)^T = 0.
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Subspace::zero_space(self.ambient);
        }
        let mut m = Mat::zero(self.ambient, da + db);
        for c in 0..da {
            for r in 0..self.ambient {
                m.set(r, c, self.basis.get(c, r));
            }
        }
        let f_neg = |x: Fe, fld: &Field| fld.neg(x);
        for c in 0..db {
            for r in 0..self.ambient {
                m.set(r, da + c, f_neg(other.basis.get(c, r), f));
            }
        }
        let ker = m.kernel(f);
        let mut vecs = Vec::new();
        for kr in 0..ker.rows() {
            let coeffs = ker.row(kr);
            let mut v = vec![0; self.ambient];
            for (i, &a) in coeffs.iter().take(da).enumerate() {
                for (c, vc) in v.iter_mut().enumerate() {
                    *vc = f.add(*vc, f.mul(a, self.basis.get(i, c)));
                }
            }
            vecs.push(v);
        }
        Subspace::from_vectors(&vecs, self.ambient, f)
    }

    /// The annihilator under the standard dot pairing: vectors pairing to
    /// zero with everything here.  (Used both for subspaces of `V` and of
    /// its dual; the pairing is symmetric in coordinates.)
    pub fn perp(&self, f: &Field) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient);
        }
        let ker = self.basis.kernel(f);
        Subspace::from_spanning_rows(&ker, f)
    }

    /// Image under an invertible matrix: span of `{ A v : v in basis }`
    /// (vectors treated as columns).
    pub fn apply_matrix(&self, a: &Mat, f: &Field) -> Subspace {
        let vecs: Vec<Vec<Fe>> = (0..self.dim())
            .map(|r| a.mul_vec(self.basis.row(r), f))
            .collect();
        Subspace::from_vectors(&vecs, self.ambient, f)
    }

    /// Image under an entrywise Frobenius power.
    pub fn frob_map(&self, k: i64, f: &Field) -> Subspace {
        Subspace::from_spanning_rows(&self.basis.frob_map(k, f), f)
    }

    /// All one-dimensional subspaces of `F^n`, each represented by its
    /// unique vector with leading coefficient 1.
    pub fn projective_points(n: usize, f: &Field) -> Vec<Vec<Fe>> {
        let mut out = Vec::new();
        let size = f.size() as u64;
        // Leading-1 normal form: first nonzero coordinate is 1.
        for lead in 0..n {
            let tail = n - lead - 1;
            let count = size.pow(tail as u32);
            for code in 0..count {
                let mut v = vec![0; n];
                v[lead] = 1;
                let mut c = code;
                for t in 0..tail {
                    v[lead + 1 + t] = (c % size) as Fe;
                    c /= size;
                }
                out.push(v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_invertible(n: usize, f: &Field, rng: &mut ChaCha8Rng) -> Mat {
        loop {
            let mut m = Mat::zero(n, n);
            for r in 0..n {
                for c in 0..n {
                    m.set(r, c, rng.gen_range(0..f.size()) as Fe);
                }
            }
            if m.rank(f) == n {
                return m;
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, m) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let f = Field::new(p, m).unwrap();
            for n in 1..=4 {
                for _ in 0..10 {
                    let a = random_invertible(n, &f, &mut rng);
                    let inv = a.inverse(&f).unwrap();
                    assert!(a.mul(&inv, &f).is_identity());
                    assert!(inv.mul(&a, &f).is_identity());
                }
            }
        }
    }

    #[test]
    fn singular_matrices_are_rejected() {
        let f = Field::new(2, 1).unwrap();
        let m = Mat::from_rows(vec![vec![1, 1], vec![1, 1]]);
        assert!(m.inverse(&f).is_err());
        assert_eq!(m.rank(&f), 1);
    }

    #[test]
    fn kernel_matches_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = Field::new(3, 1).unwrap();
        for _ in 0..50 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let mut m = Mat::zero(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    m.set(r, c, rng.gen_range(0..3) as Fe);
                }
            }
            let ker = m.kernel(&f);
            assert_eq!(ker.rows(), cols - m.rank(&f));
            for kr in 0..ker.rows() {
                assert!(m.mul_vec(ker.row(kr), &f).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn transpose_of_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = Field::new(2, 2).unwrap();
        for _ in 0..20 {
            let a = random_invertible(3, &f, &mut rng);
            let b = random_invertible(3, &f, &mut rng);
            assert_eq!(
                a.mul(&b, &f).transpose(),
                b.transpose().mul(&a.transpose(), &f)
            );
        }
    }

    #[test]
    fn subspace_canonical_equality() {
        let f = Field::new(2, 1).unwrap();
        let a = Subspace::from_vectors(&[vec![1, 1, 0], vec![0, 0, 1]], 3, &f);
        let b = Subspace::from_vectors(&[vec![1, 1, 1], vec![1, 1, 0]], 3, &f);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[1, 1, 1], &f));
        assert!(!a.contains(&[1, 0, 0], &f));
    }

    #[test]
    fn sum_intersection_dimension_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let f = Field::new(2, 1).unwrap();
        let n = 4;
        for _ in 0..100 {
            let mk = |rng: &mut ChaCha8Rng, f: &Field| {
                let k = rng.gen_range(0..=3usize);
                let vecs: Vec<Vec<Fe>> = (0..k)
                    .map(|_| (0..n).map(|_| rng.gen_range(0..2) as Fe).collect())
                    .collect();
                Subspace::from_vectors(&vecs, n, f)
            };
            let u = mk(&mut rng, &f);
            let w = mk(&mut rng, &f);
            let inter = u.intersection(&w, &f);
            assert_eq!(
                inter.dim(),
                u.dim() + w.dim() - u.dim_sum(&w, &f),
                "dim formula"
            );
            assert!(u.contains_subspace(&inter, &f));
            assert!(w.contains_subspace(&inter, &f));
            assert_eq!(inter.dim(), u.dim_intersection(&w, &f));
        }
    }

    #[test]
    fn perp_dimensions_and_double_perp() {
        let f = Field::new(3, 1).unwrap();
        let u = Subspace::from_vectors(&[vec![1, 2, 0], vec![0, 1, 1]], 3, &f);
        let up = u.perp(&f);
        assert_eq!(up.dim(), 1);
        assert_eq!(up.perp(&f), u);
        assert_eq!(Subspace::zero_space(3).perp(&f), Subspace::full(3));
    }

    #[test]
    fn projective_point_count() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(Subspace::projective_points(3, &f2).len(), 7);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(Subspace::projective_points(2, &f4).len(), 5);
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(Subspace::projective_points(2, &f3).len(), 4);
    }
}
