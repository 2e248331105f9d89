//! Graded semilinear maps between a vector space and its dual, with the
//! star product, adjoints, and the invariants of an almost-unipotent
//! element: Jordan type of the cosquare and, in characteristic two, the
//! quadratic decoration on odd block sizes.
//!
//! An element of degree `j` sends `x` to `A s^j(x)` where `A` is an
//! invertible matrix and `s` is the `q`-power Frobenius applied entrywise
//! (`q = p^q_exp`; `q_exp = 0` means `s` is the identity).  Both the space
//! and its dual are coordinatised by `F^n`, the pairing between them being
//! the standard dot product, so degree-odd elements are matrices too.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::Mat;
use crate::partitions::{DecoratedPartition, Partition};

/// A degree-graded semilinear isomorphism in matrix form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilinearElement {
    field: Arc<Field>,
    /// Semilinearity exponent: the element is `lambda^(q^degree)`-linear
    /// with `q = p^q_exp`.
    q_exp: u32,
    degree: i64,
    matrix: Mat,
}

impl SemilinearElement {
    pub fn new(field: Arc<Field>, q_exp: u32, degree: i64, matrix: Mat) -> Result<Self> {
        assert_eq!(matrix.rows(), matrix.cols(), "square matrix required");
        if matrix.rank(&field) < matrix.rows() {
            return Err(Error::SingularMatrix("semilinear element"));
        }
        Ok(SemilinearElement { field, q_exp, degree, matrix })
    }

    pub fn identity(field: Arc<Field>, q_exp: u32, n: usize) -> Self {
        SemilinearElement {
            field,
            q_exp,
            degree: 0,
            matrix: Mat::identity(n),
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn q_exp(&self) -> u32 {
        self.q_exp
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Entrywise twist `s^k` where `s` is the `q`-power Frobenius.
    fn twist(&self, m: &Mat, k: i64) -> Mat {
        m.frob_map(k * i64::from(self.q_exp), &self.field)
    }

    fn twist_vec(&self, v: &[Fe], k: i64) -> Vec<Fe> {
        v.iter()
            .map(|&x| self.field.frob_pow(x, k * i64::from(self.q_exp)))
            .collect()
    }

    fn inv_transpose(&self) -> Mat {
        self.matrix
            .inverse(&self.field)
            .expect("invertible by construction")
            .transpose()
    }

    /// The adjoint: same degree, matrix the inverse transpose.  It is the
    /// unique element pairing against `self` by
    /// `(adj(xi), g(x)) = (x, xi)^(q^degree)` (degree odd) or
    /// `(g(x), adj(xi)) = (x, xi)^(q^degree)` (degree even).
    pub fn adjoint(&self) -> SemilinearElement {
        SemilinearElement {
            field: Arc::clone(&self.field),
            q_exp: self.q_exp,
            degree: self.degree,
            matrix: self.inv_transpose(),
        }
    }

    /// The star product: composition, with the adjoint of the left factor
    /// substituted when the right factor has odd degree.
    pub fn star_mul(&self, rhs: &SemilinearElement) -> SemilinearElement {
        assert_eq!(self.field, rhs.field);
        assert_eq!(self.q_exp, rhs.q_exp);
        let left = if rhs.degree.rem_euclid(2) == 1 {
            self.inv_transpose()
        } else {
            self.matrix.clone()
        };
        SemilinearElement {
            field: Arc::clone(&self.field),
            q_exp: self.q_exp,
            degree: self.degree + rhs.degree,
            matrix: left.mul(&self.twist(&rhs.matrix, self.degree), &self.field),
        }
    }

    /// The star inverse: a two-sided inverse of degree `-degree`.
    pub fn star_inv(&self) -> SemilinearElement {
        let matrix = if self.degree.rem_euclid(2) == 1 {
            self.twist(&self.matrix.transpose(), -self.degree)
        } else {
            self.twist(
                &self.matrix.inverse(&self.field).expect("invertible"),
                -self.degree,
            )
        };
        SemilinearElement {
            field: Arc::clone(&self.field),
            q_exp: self.q_exp,
            degree: -self.degree,
            matrix,
        }
    }

    /// Iterated star power (negative exponents via the star inverse).
    pub fn star_pow(&self, k: i64) -> SemilinearElement {
        if k < 0 {
            return self.star_inv().star_pow(-k);
        }
        let mut acc = SemilinearElement::identity(Arc::clone(&self.field), self.q_exp, self.dim());
        for _ in 0..k {
            acc = acc.star_mul(self);
        }
        acc
    }

    /// Apply to a coordinate vector: `A s^degree(v)`.
    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        self.matrix.mul_vec(&self.twist_vec(v, self.degree), &self.field)
    }

    /// The pairing `(x, self(y)) = x^T A s^degree(y)`.
    pub fn pair(&self, x: &[Fe], y: &[Fe]) -> Fe {
        let gy = self.apply(y);
        let f = &self.field;
        x.iter()
            .zip(&gy)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// The cosquare: the star square of a degree-one element, an ordinary
    /// (degree-even) automorphism of the space.
    pub fn cosquare(&self) -> SemilinearElement {
        assert_eq!(self.degree, 1, "cosquare is defined for degree-one elements");
        self.star_pow(2)
    }

    /// Conjugation by an ordinary invertible matrix `X` (degree zero):
    /// the element `X * self * X^{*-1}`.  On degree-one elements this is
    /// `A -> X^{-T} A s(X^{-1})`, the (twisted) congruence action.
    pub fn conjugate_by(&self, x: &Mat) -> Result<SemilinearElement> {
        let xe = SemilinearElement::new(Arc::clone(&self.field), self.q_exp, 0, x.clone())?;
        Ok(xe.star_mul(self).star_mul(&xe.star_inv()))
    }
}

/// Jordan block sizes of a unipotent matrix, largest first.
pub fn jordan_type(u: &Mat, f: &Field) -> Result<Partition> {
    assert_eq!(u.rows(), u.cols());
    let n = u.rows();
    let nilp = u.sub(&Mat::identity(n), f);
    if !nilp.pow(n as u64, f).is_zero() {
        return Err(Error::NotUnipotent(format!(
            "matrix of size {n} has non-unipotent part"
        )));
    }
    // Kernel dimensions of successive powers give the dual partition.
    let mut dims = Vec::new();
    let mut power = Mat::identity(n);
    let mut prev = 0;
    while prev < n {
        power = power.mul(&nilp, f);
        let d = n - power.rank(f);
        dims.push((d - prev) as u32);
        prev = d;
    }
    Ok(Partition::from_unsorted(dims)?.dual())
}

/// Characteristic-two decoration at an odd block size `i`: 1 when the
/// quadratic form `x -> (N^((i-1)/2) x, g N^((i-1)/2) x)` is nonzero
/// somewhere on `ker N^i` over any extension field, 0 when it vanishes
/// identically there (`N` is the cosquare minus one).
pub fn epsilon_invariant(g: &SemilinearElement, i: u32) -> Result<u8> {
    assert_eq!(g.degree(), 1);
    assert_eq!(i % 2, 1, "decoration is defined at odd block sizes");
    let f = g.field();
    if f.p() != 2 {
        return Err(Error::UnsupportedField(
            "the decoration is a characteristic-two invariant".into(),
        ));
    }
    let n = g.dim();
    let phi = g.cosquare().matrix().clone();
    let nilp = phi.sub(&Mat::identity(n), f);
    let half = nilp.pow(u64::from((i - 1) / 2), f);
    let kernel = nilp.pow(u64::from(i), f).kernel(f);
    let a = g.matrix();
    // Basis of ker N^i mapped through N^((i-1)/2).
    let mapped: Vec<Vec<Fe>> = (0..kernel.rows())
        .map(|r| half.mul_vec(kernel.row(r), f))
        .collect();
    let form = |x: &[Fe], y: &[Fe]| -> Fe {
        let ay = a.mul_vec(y, f);
        x.iter()
            .zip(&ay)
            .fold(0, |acc, (&u, &v)| f.add(acc, f.mul(u, v)))
    };
    // Geometric vanishing of the quadratic form on the span: zero on each
    // basis vector and zero polarisation on each pair.
    for (s, xs) in mapped.iter().enumerate() {
        if form(xs, xs) != 0 {
            return Ok(1);
        }
        for xt in mapped.iter().skip(s + 1) {
            if f.add(form(xs, xt), form(xt, xs)) != 0 {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

/// Full class invariant of a degree-one element with unipotent cosquare,
/// in characteristic two: Jordan type plus decoration on the odd sizes.
pub fn class_invariant(g: &SemilinearElement) -> Result<DecoratedPartition> {
    let f = g.field();
    let jt = jordan_type(g.cosquare().matrix(), f)?;
    let mut eps = std::collections::BTreeMap::new();
    for &v in jt.parts() {
        if v % 2 == 1 && !eps.contains_key(&v) {
            eps.insert(v, epsilon_invariant(g, v)?);
        }
    }
    DecoratedPartition::new(jt, eps)
}

/// Exact binomial coefficient reduced into the prime subfield.
pub fn binom_in_field(top: i64, bot: i64, f: &Field) -> Fe {
    if bot < 0 || bot > top || top < 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    for k in 0..bot as u128 {
        acc = acc * (top as u128 - k) / (k + 1);
    }
    f.from_prime_residue((acc % u128::from(f.p())) as u32)
}

/// Offsets of the blocks in the standard basis: block `t` (0-based) of a
/// shape with parts `p` occupies indices `offset[t] .. offset[t] + 2p_t - 1`.
pub fn block_offsets(p: &Partition) -> Vec<usize> {
    let mut offs = Vec::with_capacity(p.len());
    let mut acc = 0usize;
    for &pt in p.parts() {
        offs.push(acc);
        acc += 2 * pt as usize - 1;
    }
    offs
}

/// Dimension of the standard model for shape `p`: the sum of `2p_t - 1`.
pub fn standard_dim(p: &Partition) -> usize {
    p.parts().iter().map(|&pt| 2 * pt as usize - 1).sum()
}

/// The block-diagonal pairing matrix of the standard model.  Within the
/// block of a part `p_t`, the `(i, j)` entry is zero on the band
/// `-p_t + 1 <= j - i <= p_t - 2` and a binomial coefficient outside it.
pub fn standard_pairing_matrix(p: &Partition, f: &Field) -> Mat {
    let n = standard_dim(p);
    let offs = block_offsets(p);
    let mut m = Mat::zero(n, n);
    for (t, &pt) in p.parts().iter().enumerate() {
        let pt = i64::from(pt);
        let size = (2 * pt - 1) as usize;
        for i in 0..size as i64 {
            for j in 0..size as i64 {
                let d = j - i;
                let entry = if d >= pt - 1 {
                    binom_in_field(d + pt - 1, d - pt + 1, f)
                } else if d <= -pt {
                    binom_in_field(-d + pt - 2, -d - pt, f)
                } else {
                    0
                };
                m.set(offs[t] + i as usize, offs[t] + j as usize, entry);
            }
        }
    }
    m
}

/// The standard degree-one element for shape `p`: matrix the standard
/// pairing matrix, no Frobenius twist.
pub fn standard_g(p: &Partition, f: &Arc<Field>) -> SemilinearElement {
    SemilinearElement::new(Arc::clone(f), 0, 1, standard_pairing_matrix(p, f))
        .expect("standard pairing matrix is invertible")
}

/// Block companion matrix: the expected cosquare of the standard element.
/// Each block shifts basis vectors up by one and sends the top vector to
/// the alternating-binomial combination forced by `(C - 1)^(2p_t-1) = 0`.
pub fn companion_matrix(p: &Partition, f: &Field) -> Mat {
    let n = standard_dim(p);
    let offs = block_offsets(p);
    let mut c = Mat::zero(n, n);
    for (t, &pt) in p.parts().iter().enumerate() {
        let size = 2 * pt as usize - 1;
        for i in 0..size - 1 {
            c.set(offs[t] + i + 1, offs[t] + i, 1);
        }
        for k in 0..size {
            let mut v = binom_in_field(2 * i64::from(pt) - 1, k as i64, f);
            if k % 2 == 1 {
                v = f.neg(v);
            }
            c.set(offs[t] + k, offs[t] + size - 1, v);
        }
    }
    c
}

/// The canonical line-generating vectors of the standard element: the
/// cosquare applied to the middle basis vector of each block.
pub fn standard_line_vectors(p: &Partition, f: &Arc<Field>) -> Vec<Vec<Fe>> {
    let g = standard_g(p, f);
    let phi = g.cosquare();
    let offs = block_offsets(p);
    let n = standard_dim(p);
    p.parts()
        .iter()
        .enumerate()
        .map(|(t, &pt)| {
            let mut e = vec![0; n];
            e[offs[t] + pt as usize - 1] = 1;
            phi.apply(&e)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_invertible(n: usize, f: &Arc<Field>, rng: &mut ChaCha8Rng) -> Mat {
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

    fn random_element(
        n: usize,
        f: &Arc<Field>,
        q_exp: u32,
        degree: i64,
        rng: &mut ChaCha8Rng,
    ) -> SemilinearElement {
        SemilinearElement::new(Arc::clone(f), q_exp, degree, random_invertible(n, f, rng)).unwrap()
    }

    #[test]
    fn star_inverse_is_two_sided() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, m, q_exp) in [(2, 1, 0), (2, 2, 1), (3, 1, 0), (3, 2, 1)] {
            let f = Field::new(p, m).unwrap();
            for degree in -2..=2 {
                let g = random_element(3, &f, q_exp, degree, &mut rng);
                let id = SemilinearElement::identity(Arc::clone(&f), q_exp, 3);
                assert_eq!(g.star_mul(&g.star_inv()), id);
                assert_eq!(g.star_inv().star_mul(&g), id);
            }
        }
    }

    #[test]
    fn star_product_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (p, m, q_exp) in [(2, 1, 0), (2, 2, 1), (3, 1, 0)] {
            let f = Field::new(p, m).unwrap();
            for _ in 0..20 {
                let da = rng.gen_range(-2..=2);
                let db = rng.gen_range(-2..=2);
                let dc = rng.gen_range(-2..=2);
                let a = random_element(3, &f, q_exp, da, &mut rng);
                let b = random_element(3, &f, q_exp, db, &mut rng);
                let c = random_element(3, &f, q_exp, dc, &mut rng);
                assert_eq!(a.star_mul(&b).star_mul(&c), a.star_mul(&b.star_mul(&c)));
            }
        }
    }

    #[test]
    fn powers_add() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Field::new(2, 2).unwrap();
        let g = random_element(3, &f, 1, 1, &mut rng);
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                assert_eq!(g.star_pow(a).star_mul(&g.star_pow(b)), g.star_pow(a + b));
            }
        }
    }

    #[test]
    fn adjoint_pairing_law() {
        // (x, g y) equals (y, g^{*-1} x)^q for degree-one g.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (p, m, q_exp) in [(2, 1, 0u32), (3, 1, 0), (2, 2, 1), (3, 2, 1)] {
            let f = Field::new(p, m).unwrap();
            let q = u64::from(f.p()).pow(q_exp) as i64;
            let g = random_element(3, &f, q_exp, 1, &mut rng);
            let ginv = g.star_inv();
            for _ in 0..25 {
                let x: Vec<Fe> = (0..3).map(|_| rng.gen_range(0..f.size()) as Fe).collect();
                let y: Vec<Fe> = (0..3).map(|_| rng.gen_range(0..f.size()) as Fe).collect();
                let lhs = g.pair(&x, &y);
                let rhs = f.pow(ginv.pair(&y, &x), q.max(1));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn exhaustive_small_group_laws() {
        // Every invertible 2x2 matrix over F_2 as a degree-one element.
        let f = Field::new(2, 1).unwrap();
        let id = SemilinearElement::identity(Arc::clone(&f), 0, 2);
        let mut count = 0;
        for bits in 0..16u32 {
            let m = Mat::from_rows(vec![
                vec![(bits & 1) as Fe, ((bits >> 1) & 1) as Fe],
                vec![((bits >> 2) & 1) as Fe, ((bits >> 3) & 1) as Fe],
            ]);
            if m.rank(&f) < 2 {
                continue;
            }
            count += 1;
            let g = SemilinearElement::new(Arc::clone(&f), 0, 1, m).unwrap();
            assert_eq!(g.star_mul(&g.star_inv()), id);
            assert_eq!(g.adjoint().adjoint(), g);
            assert_eq!(g.star_inv().adjoint(), g.adjoint().star_inv());
        }
        assert_eq!(count, 6); // |GL_2(F_2)|
    }

    #[test]
    fn conjugation_is_congruence_at_trivial_twist() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = Field::new(3, 1).unwrap();
        let g = random_element(3, &f, 0, 1, &mut rng);
        let x = random_invertible(3, &f, &mut rng);
        let conj = g.conjugate_by(&x).unwrap();
        let xi = x.inverse(&f).unwrap();
        let expect = xi.transpose().mul(g.matrix(), &f).mul(&xi, &f);
        assert_eq!(conj.matrix(), &expect);
        assert_eq!(conj.degree(), 1);
    }

    #[test]
    fn jordan_type_small_examples() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(
            jordan_type(&Mat::identity(3), &f).unwrap(),
            Partition::new(vec![1, 1, 1]).unwrap()
        );
        let j2 = Mat::from_rows(vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(jordan_type(&j2, &f).unwrap(), Partition::new(vec![2]).unwrap());
        let mixed = Mat::from_rows(vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(
            jordan_type(&mixed, &f).unwrap(),
            Partition::new(vec![2, 1]).unwrap()
        );
        // In characteristic 2 the swap matrix is unipotent: (J - I)^2 = 0.
        let swap = Mat::from_rows(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(jordan_type(&swap, &f).unwrap(), Partition::new(vec![2]).unwrap());
        // A matrix with irreducible characteristic polynomial is not.
        let nonunip = Mat::from_rows(vec![vec![0, 1], vec![1, 1]]);
        assert!(jordan_type(&nonunip, &f).is_err());
    }

    #[test]
    fn alternating_binomial_convolution_vanishes() {
        // sum_{k+k'=j} (-1)^k C(2p-2+k', k') C(2p-1, k) = 0 for j >= 1:
        // the power-series identity behind the companion form of the
        // cosquare.
        let binom = |top: i128, bot: i128| -> i128 {
            if bot < 0 || bot > top {
                return 0;
            }
            let mut acc = 1i128;
            for k in 0..bot {
                acc = acc * (top - k) / (k + 1);
            }
            acc
        };
        for p in 1..=8i128 {
            for j in 1..=20i128 {
                let mut total = 0i128;
                for k in 0..=j {
                    let kp = j - k;
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    total += sign * binom(2 * p - 2 + kp, kp) * binom(2 * p - 1, k);
                }
                assert_eq!(total, 0, "p={p} j={j}");
            }
        }
    }

    #[test]
    fn standard_model_cosquare_is_companion() {
        for (p, m) in [(2u32, 1u32), (3, 1), (2, 2), (3, 2)] {
            let f = Field::new(p, m).unwrap();
            for parts in [vec![2], vec![1, 1, 1], vec![2, 1], vec![3], vec![2, 2], vec![3, 2, 1]] {
                let shape = Partition::new(parts).unwrap();
                let g = standard_g(&shape, &f);
                assert_eq!(
                    g.cosquare().matrix(),
                    &companion_matrix(&shape, &f),
                    "shape {shape} over {}",
                    f.header()
                );
            }
        }
    }

    #[test]
    fn standard_model_jordan_type() {
        let f = Field::new(2, 1).unwrap();
        for parts in [vec![2], vec![2, 1], vec![3], vec![2, 2], vec![4, 2, 1]] {
            let shape = Partition::new(parts).unwrap();
            let g = standard_g(&shape, &f);
            let expect: Vec<u32> = shape.parts().iter().map(|&x| 2 * x - 1).collect();
            assert_eq!(
                jordan_type(g.cosquare().matrix(), &f).unwrap(),
                Partition::new(expect).unwrap()
            );
        }
    }

    #[test]
    fn standard_model_two_by_two_block_hand_check() {
        // Single part p_1 = 2: ambient dimension 3, zeros on the band
        // -1 <= j - i <= 0, C(2,0) = 1 at j - i = 1 and j - i = -2,
        // C(3,1) = 3 at j - i = 2.
        let f = Field::new(5, 1).unwrap();
        let shape = Partition::new(vec![2]).unwrap();
        let m = standard_pairing_matrix(&shape, &f);
        let expect = Mat::from_rows(vec![vec![0, 1, 3], vec![0, 0, 1], vec![1, 0, 0]]);
        assert_eq!(m, expect);
    }

    #[test]
    fn standard_decoration_is_all_ones_in_char_two() {
        for m in [1u32, 2] {
            let f = Field::new(2, m).unwrap();
            for parts in [vec![2], vec![2, 1], vec![3, 1], vec![2, 2]] {
                let shape = Partition::new(parts).unwrap();
                let g = standard_g(&shape, &f);
                let inv = class_invariant(&g).unwrap();
                for &part in inv.jordan_type().parts() {
                    if part % 2 == 1 {
                        assert_eq!(inv.eps(part), Some(1), "shape {shape} part {part}");
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_basis_recovers_standard_basis() {
        // Starting from the canonical line vectors, star powers of the
        // standard element must reproduce the standard basis vectors.
        let f = Field::new(2, 1).unwrap();
        for parts in [vec![2], vec![2, 1], vec![3, 2]] {
            let shape = Partition::new(parts).unwrap();
            let g = standard_g(&shape, &f);
            let vs = standard_line_vectors(&shape, &f);
            let offs = block_offsets(&shape);
            let n = standard_dim(&shape);
            for (t, &pt) in shape.parts().iter().enumerate() {
                for i in 0..(2 * pt as usize - 1) {
                    let z = g
                        .star_pow(2 * i as i64 - 2 * i64::from(pt))
                        .apply(&vs[t]);
                    let mut e = vec![0; n];
                    e[offs[t] + i] = 1;
                    assert_eq!(z, e, "shape {shape} block {t} index {i}");
                }
            }
        }
    }

    #[test]
    fn epsilon_distinguishes_forms_on_two_blocks_of_one() {
        // n = 2, cosquare identity: the class is (1,1) with decoration 0
        // for the split form and 1 otherwise.  Over F_2 the alternating
        // form [[0,1],[1,0]] is the unique decoration-0 point.
        let f = Field::new(2, 1).unwrap();
        let alt = SemilinearElement::new(
            Arc::clone(&f),
            0,
            1,
            Mat::from_rows(vec![vec![0, 1], vec![1, 0]]),
        )
        .unwrap();
        assert_eq!(epsilon_invariant(&alt, 1).unwrap(), 0);
        let idm = SemilinearElement::new(Arc::clone(&f), 0, 1, Mat::identity(2)).unwrap();
        assert_eq!(epsilon_invariant(&idm, 1).unwrap(), 1);
    }
}
