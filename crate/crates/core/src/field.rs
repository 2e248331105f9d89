//! Table-driven arithmetic in small finite fields `F_{p^m}`.
//!
//! Elements are indices `0 .. p^m`; the base-`p` digits of an index are the
//! coefficients of a polynomial in `F_p[x]` reduced modulo a fixed monic
//! irreducible of degree `m` (the lexicographically first one, so fields
//! are reproducible).  All products and inverses are precomputed, which
//! caps the supported size but makes every downstream loop a table lookup.
//! Everything here is exact; there is no floating point.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field size `p^m`.
pub const MAX_FIELD_SIZE: u64 = 1024;

/// A small finite field `F_{p^m}` with precomputed operation tables.
#[derive(Debug)]
pub struct Field {
    p: u32,
    m: u32,
    size: u32,
    /// Coefficients (little-endian, length `m + 1`) of the reducing
    /// polynomial.
    irreducible: Vec<u32>,
    add_t: Vec<u16>,
    mul_t: Vec<u16>,
    neg_t: Vec<u16>,
    inv_t: Vec<u16>,
    /// `x -> x^p`.
    frob_t: Vec<u16>,
}

/// A field element: an index into the tables of its field.  The newtype is
/// deliberately thin; ops go through [`Field`].
pub type Fe = u16;

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial helpers over `F_p`, little-endian coefficient vectors with no
/// trailing zeros.
mod poly {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (k, &mk) in m.iter().enumerate() {
                let idx = k + shift;
                r[idx] = (r[idx] + p - (lead * mk) % p) % p;
            }
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }
}

fn index_to_poly(mut idx: u32, p: u32) -> Vec<u32> {
    let mut coeffs = Vec::new();
    while idx > 0 {
        coeffs.push(idx % p);
        idx /= p;
    }
    coeffs
}

fn poly_to_index(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Lexicographically first monic irreducible of degree `m` over `F_p`
/// (coefficient vectors compared low degree first).
fn find_irreducible(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1]; // x itself; reduction mod x is evaluation at 0
    }
    let pm = (p as u64).pow(m);
    for low in 0..pm {
        let mut cand = index_to_poly(low as u32, p);
        cand.resize(m as usize, 0);
        cand.push(1); // monic of degree m
        let mut reducible = false;
        'divisors: for d in 1..=(m / 2) {
            let pd = (p as u64).pow(d);
            for dl in 0..pd {
                let mut div = index_to_poly(dl as u32, p);
                div.resize(d as usize, 0);
                div.push(1);
                if poly::rem(&cand, &div, p).is_empty() {
                    reducible = true;
                    break 'divisors;
                }
            }
        }
        if !reducible {
            return cand;
        }
    }
    unreachable!("an irreducible of every degree exists");
}

impl Field {
    /// Build `F_{p^m}`.  Errors when `p` is not prime, `m = 0`, or the
    /// field would exceed [`MAX_FIELD_SIZE`].
    pub fn new(p: u32, m: u32) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::UnsupportedField(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::UnsupportedField("extension degree 0".into()));
        }
        let size = (p as u64).checked_pow(m).filter(|&s| s <= MAX_FIELD_SIZE);
        let Some(size) = size else {
            return Err(Error::UnsupportedField(format!(
                "{p}^{m} exceeds the table bound {MAX_FIELD_SIZE}"
            )));
        };
        let size = size as u32;
        let irreducible = find_irreducible(p, m);

        let n = size as usize;
        let mut add_t = vec![0u16; n * n];
        let mut mul_t = vec![0u16; n * n];
        let mut neg_t = vec![0u16; n];
        for a in 0..size {
            let pa = index_to_poly(a, p);
            let neg: Vec<u32> = pa.iter().map(|&c| (p - c) % p).collect();
            neg_t[a as usize] = poly_to_index(&neg, p) as u16;
            for b in a..size {
                let pb = index_to_poly(b, p);
                // Addition is digit-wise.
                let mut sum = vec![0u32; pa.len().max(pb.len())];
                for (i, s) in sum.iter_mut().enumerate() {
                    let ca = pa.get(i).copied().unwrap_or(0);
                    let cb = pb.get(i).copied().unwrap_or(0);
                    *s = (ca + cb) % p;
                }
                let s = poly_to_index(&sum, p) as u16;
                add_t[(a * size + b) as usize] = s;
                add_t[(b * size + a) as usize] = s;
                let prod = poly::rem(&poly::mul(&pa, &pb, p), &irreducible, p);
                let pr = poly_to_index(&prod, p) as u16;
                mul_t[(a * size + b) as usize] = pr;
                mul_t[(b * size + a) as usize] = pr;
            }
        }
        let mut inv_t = vec![0u16; n];
        for a in 1..size {
            let mut found = None;
            for b in 1..size {
                if mul_t[(a * size + b) as usize] == 1 {
                    found = Some(b as u16);
                    break;
                }
            }
            inv_t[a as usize] =
                found.expect("nonzero elements of a field are invertible");
        }
        let mut frob_t = vec![0u16; n];
        for a in 0..size {
            let mut acc: u16 = 1;
            for _ in 0..p {
                acc = mul_t[(acc as u32 * size + a) as usize];
            }
            frob_t[a as usize] = acc;
        }
        Ok(Arc::new(Field {
            p,
            m,
            size,
            irreducible,
            add_t,
            mul_t,
            neg_t,
            inv_t,
            frob_t,
        }))
    }

    /// Characteristic.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of elements.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// The reducing polynomial (little-endian coefficients).
    pub fn irreducible(&self) -> &[u32] {
        &self.irreducible
    }

    /// `F{p}^{m}` header used in serialisations.
    pub fn header(&self) -> String {
        format!("F{}^{}", self.p, self.m)
    }

    pub fn zero(&self) -> Fe {
        0
    }

    pub fn one(&self) -> Fe {
        1
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add_t[a as usize * self.size as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul_t[a as usize * self.size as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg_t[a as usize]
    }

    /// Multiplicative inverse; panics on zero (callers check).
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a != 0, "division by zero");
        self.inv_t[a as usize]
    }

    /// `a^e` for a signed exponent (negative exponents invert first).
    pub fn pow(&self, a: Fe, e: i64) -> Fe {
        let (mut base, mut e) = if e < 0 {
            (self.inv(a), e.unsigned_abs())
        } else {
            (a, e as u64)
        };
        let mut acc: Fe = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(p^k)` for any signed `k`; the Frobenius has order `m`.
    pub fn frob_pow(&self, a: Fe, k: i64) -> Fe {
        let k = k.rem_euclid(self.m as i64) as u32;
        let mut acc = a;
        for _ in 0..k {
            acc = self.frob_t[acc as usize];
        }
        acc
    }

    /// Iterate over all elements.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.size as Fe
    }

    /// Some generator of the multiplicative group.
    pub fn multiplicative_generator(&self) -> Fe {
        let order = (self.size - 1) as i64;
        (1..self.size as Fe)
            .find(|&g| {
                (1..order).all(|k| self.pow(g, k) != 1)
            })
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// All solutions of `x^d = 1`.
    pub fn roots_of_unity(&self, d: u64) -> Vec<Fe> {
        (1..self.size as Fe)
            .filter(|&x| self.pow(x, d as i64) == 1)
            .collect()
    }

    /// Some solution of `y^e = x`, if one exists in this field.
    pub fn nth_root(&self, x: Fe, e: u64) -> Option<Fe> {
        if x == 0 {
            return Some(0);
        }
        (1..self.size as Fe).find(|&y| self.pow(y, e as i64) == x)
    }

    /// Embed a residue `0 <= k < p` of the prime field.
    pub fn from_prime_residue(&self, k: u32) -> Fe {
        (k % self.p) as Fe
    }

    /// Reduce a signed integer into the prime subfield.
    pub fn from_int(&self, k: i64) -> Fe {
        k.rem_euclid(self.p as i64) as Fe
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for Field {}
