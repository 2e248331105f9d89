//! Brute-force finite-field oracles: enumerate congruence classes of
//! bilinear forms with unipotent cosquare, compute which classes admit a
//! flag in a given relative position with its twisted image, and verify
//! that the predicted class is the unique minimum over each elliptic
//! shape.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::bounds::Bounds;
use crate::classmaps::phi_char2_elliptic;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::partitions::{
    decorated_closure_le, dominance_le, partitions_of, DecoratedPartition, Partition,
};
use crate::semilinear::{class_invariant, jordan_type, SemilinearElement};
use crate::varieties::{
    all_matrices, enumerate_flags, g_dot_flag, gl_generators, relative_position, Flag,
};
use crate::weyl::{z_perm, z_perm_degree, Perm};

/// Invariant attached to a congruence class: in characteristic two the
/// Jordan type of the cosquare with its quadratic markings, otherwise the
/// Jordan type alone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ClassKey {
    Decorated(DecoratedPartition),
    Jordan(Partition),
}

impl ClassKey {
    pub fn jordan(&self) -> &Partition {
        match self {
            ClassKey::Decorated(d) => d.jordan_type(),
            ClassKey::Jordan(p) => p,
        }
    }

    /// Whether `self` is below `other` in the relevant closure order:
    /// the decorated order for marked keys, dominance otherwise.
    pub fn closure_le(&self, other: &ClassKey) -> Result<bool> {
        match (self, other) {
            (ClassKey::Decorated(a), ClassKey::Decorated(b)) => decorated_closure_le(a, b),
            (ClassKey::Jordan(a), ClassKey::Jordan(b)) => dominance_le(a, b),
            _ => Err(Error::Incompatible(
                "cannot compare a decorated key with a plain one".into(),
            )),
        }
    }
}

impl std::fmt::Display for ClassKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassKey::Decorated(d) => write!(f, "{d}"),
            ClassKey::Jordan(p) => write!(f, "{p}"),
        }
    }
}

/// One rational congruence orbit of invertible matrices under
/// `A -> X^T A X`.
#[derive(Debug, Clone)]
pub struct ClassOrbit {
    pub key: ClassKey,
    pub rep: Mat,
    pub size: u64,
}

/// A class in the geometric sense: all rational orbits sharing one
/// invariant.  Over a finite field a geometric class may split into
/// several rational orbits (for example, an Artin-Schreier obstruction on
/// the quadratic form `x -> x^T A x` survives every finite extension in
/// characteristic 2), so `orbit_count` can exceed 1.
#[derive(Debug, Clone)]
pub struct ClassSummary {
    pub key: ClassKey,
    pub rep: Mat,
    pub total_size: u64,
    pub orbit_count: usize,
}

/// All congruence orbits with unipotent cosquare over one field.
#[derive(Debug, Clone)]
pub struct ClassInventory {
    field: Arc<Field>,
    orbits: Vec<ClassOrbit>,
}

impl ClassInventory {
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn orbits(&self) -> &[ClassOrbit] {
        &self.orbits
    }

    pub fn keys(&self) -> BTreeSet<ClassKey> {
        self.orbits.iter().map(|o| o.key.clone()).collect()
    }

    /// Rational orbits grouped by invariant; the keys of the grouped view
    /// are pairwise distinct by construction.
    pub fn classes(&self) -> Vec<ClassSummary> {
        let mut grouped: Vec<ClassSummary> = Vec::new();
        for key in self.keys() {
            let members: Vec<&ClassOrbit> =
                self.orbits.iter().filter(|o| o.key == key).collect();
            grouped.push(ClassSummary {
                key,
                rep: members[0].rep.clone(),
                total_size: members.iter().map(|o| o.size).sum(),
                orbit_count: members.len(),
            });
        }
        grouped
    }

    pub fn total_points(&self) -> u64 {
        self.orbits.iter().map(|o| o.size).sum()
    }
}

fn key_of(g: &SemilinearElement) -> Result<ClassKey> {
    if g.field().p() == 2 {
        Ok(ClassKey::Decorated(class_invariant(g)?))
    } else {
        Ok(ClassKey::Jordan(jordan_type(g.cosquare().matrix(), g.field())?))
    }
}

/// Enumerate every invertible matrix with unipotent cosquare over `f` and
/// partition them into rational congruence orbits.  The class invariant is
/// checked to be constant on each orbit.  Several orbits may share one
/// invariant: the invariant labels classes over the algebraic closure, and
/// a class may split rationally (see [`ClassSummary`]); use
/// [`ClassInventory::classes`] for the grouped view.
pub fn enumerate_classes(n: usize, f: &Arc<Field>, bounds: &Bounds) -> Result<ClassInventory> {
    let scan = (u64::from(f.size())).checked_pow((n * n) as u32);
    bounds.check("matrix scan", scan.unwrap_or(u64::MAX), bounds.max_group)?;

    let mut members: Vec<Mat> = Vec::new();
    let mut index: HashMap<Mat, usize> = HashMap::new();
    let mut keys: Vec<ClassKey> = Vec::new();
    for a in all_matrices(n, f) {
        if a.rank(f) < n {
            continue;
        }
        let g = SemilinearElement::new(Arc::clone(f), 0, 1, a.clone())?;
        if jordan_type(g.cosquare().matrix(), f).is_err() {
            continue;
        }
        index.insert(a.clone(), members.len());
        members.push(a);
        keys.push(key_of(&g)?);
    }

    let gens = gl_generators(n, f);
    let mut seen = vec![false; members.len()];
    let mut orbits = Vec::new();
    for start in 0..members.len() {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut size = 0u64;
        while let Some(s) = stack.pop() {
            size += 1;
            if keys[s] != keys[start] {
                return Err(Error::TheoremFalsified(format!(
                    "class invariant is not constant on a congruence orbit over {}: {} vs {}",
                    f.header(),
                    keys[s],
                    keys[start]
                )));
            }
            let g = SemilinearElement::new(Arc::clone(f), 0, 1, members[s].clone())?;
            for x in &gens {
                let a2 = g.conjugate_by(x)?.matrix().clone();
                let idx = *index.get(&a2).expect("congruence preserves the set");
                if !seen[idx] {
                    seen[idx] = true;
                    stack.push(idx);
                }
            }
        }
        orbits.push(ClassOrbit { key: keys[start].clone(), rep: members[start].clone(), size });
    }

    for orbit in &orbits {
        let c = orbit.key.jordan();
        let bad = c
            .parts()
            .iter()
            .any(|&v| v % 2 == 0 && c.multiplicity(v) % 2 != 0);
        if bad {
            return Err(Error::TheoremFalsified(format!(
                "class invariant {} over {} has an even part with odd multiplicity",
                orbit.key,
                f.header()
            )));
        }
    }

    Ok(ClassInventory { field: Arc::clone(f), orbits })
}

/// Number of invertible `x` with `x * g * x^{*-1} = g`, by direct scan.
pub fn centralizer_order(g: &SemilinearElement, bounds: &Bounds) -> Result<u64> {
    let f = g.field();
    let n = g.matrix().rows();
    let scan = (u64::from(f.size())).checked_pow((n * n) as u32);
    bounds.check("centralizer scan", scan.unwrap_or(u64::MAX), bounds.max_group)?;
    let mut count = 0u64;
    for x in all_matrices(n, f) {
        if x.rank(f) < n {
            continue;
        }
        if g.conjugate_by(&x)?.matrix() == g.matrix() {
            count += 1;
        }
    }
    Ok(count)
}

/// Order of `GL_n` over `f`.
pub fn gl_order(n: usize, f: &Field) -> u64 {
    let q = u64::from(f.size());
    (0..n as u32).map(|i| q.pow(n as u32) - q.pow(i)).product()
}

fn sigma_with_flags(
    w: &Perm,
    inv: &ClassInventory,
    flags: &[Flag],
) -> Result<BTreeSet<ClassKey>> {
    let f = inv.field();
    let mut out = BTreeSet::new();
    for orbit in inv.orbits() {
        if out.contains(&orbit.key) {
            continue;
        }
        let g = SemilinearElement::new(Arc::clone(f), 0, 1, orbit.rep.clone())?;
        if flags
            .iter()
            .any(|v| relative_position(v, &g_dot_flag(&g, v), f) == *w)
        {
            out.insert(orbit.key.clone());
        }
    }
    Ok(out)
}

/// The classes admitting a flag in relative position `w` with its twisted
/// image, over the inventory's field.
pub fn sigma_for_w(
    w: &Perm,
    inv: &ClassInventory,
    bounds: &Bounds,
) -> Result<BTreeSet<ClassKey>> {
    let flags = enumerate_flags(w.n(), inv.field(), bounds)?;
    sigma_with_flags(w, inv, &flags)
}

/// All shapes `p` (partitions with parts listed weakly decreasing) whose
/// associated permutation lives in rank `n`, i.e. with
/// `sum(2 p_i - 1) = n`.  These index the elliptic twisted classes.
pub fn elliptic_shapes(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for total in 1..=n as u32 {
        for p in partitions_of(total) {
            if z_perm_degree(&p) == n {
                out.push(p);
            }
        }
    }
    out
}

/// Per-shape verdict of the minimum-class verification.
#[derive(Debug, Clone, Serialize)]
pub struct ShapeCheck {
    pub shape: Partition,
    pub expected: ClassKey,
    pub sigma: Vec<ClassKey>,
    /// The expected class is attained over the tested fields.
    pub expected_present: bool,
    /// The expected class is below every attained class in the closure
    /// order, hence the unique minimum.
    pub expected_is_minimum: bool,
    /// Every attained class satisfies the nilpotent-image dimension lower
    /// bounds for this shape.
    pub dim_bounds_hold: bool,
}

/// Result of verifying the minimum-class statement for all elliptic
/// shapes in one rank and characteristic, over a range of field degrees.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub char_p: u32,
    pub n: usize,
    pub degrees: Vec<u32>,
    pub shapes: Vec<ShapeCheck>,
    /// The attained-class sets agree across all tested degrees.
    pub sigma_stabilized: bool,
    /// Distinct shapes predict distinct minima.
    pub distinct_minima: bool,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.sigma_stabilized
            && self.distinct_minima
            && self.shapes.iter().all(|s| {
                s.expected_present && s.expected_is_minimum && s.dim_bounds_hold
            })
    }
}

/// Dimension of the image of the `k`-th power of a nilpotent with Jordan
/// type `c`.
fn power_image_dim(c: &Partition, k: u32) -> u64 {
    c.parts().iter().map(|&cj| u64::from(cj.saturating_sub(k))).sum()
}

/// Lower bound for that dimension forced by shape `p`.
fn lambda_prime(p: &Partition, k: u32) -> u64 {
    p.parts()
        .iter()
        .map(|&pr| u64::from((2 * pr - 1).saturating_sub(k)))
        .sum()
}

/// Verify, for every elliptic shape of rank `n` in characteristic
/// `char_p`, that the predicted class is attained and is the unique
/// closure-order minimum among all classes attained over the fields of
/// the given degrees, and that all attained classes obey the dimension
/// bounds.
pub fn verify_theorem(
    n: usize,
    char_p: u32,
    degrees: &[u32],
    bounds: &Bounds,
) -> Result<TheoremReport> {
    let shapes = elliptic_shapes(n);
    let mut per_degree: Vec<Vec<BTreeSet<ClassKey>>> = Vec::new();
    for &m in degrees {
        let f = Field::new(char_p, m)?;
        let inv = enumerate_classes(n, &f, bounds)?;
        let flags = enumerate_flags(n, &f, bounds)?;
        let mut sigmas = Vec::new();
        for p in &shapes {
            sigmas.push(sigma_with_flags(&z_perm(p), &inv, &flags)?);
        }
        per_degree.push(sigmas);
    }

    let mut sigma_stabilized = true;
    let mut checks = Vec::new();
    for (si, p) in shapes.iter().enumerate() {
        let mut union: BTreeSet<ClassKey> = BTreeSet::new();
        for sigmas in &per_degree {
            union.extend(sigmas[si].iter().cloned());
        }
        for sigmas in &per_degree {
            if sigmas[si] != union {
                sigma_stabilized = false;
            }
        }
        let expected = if char_p == 2 {
            ClassKey::Decorated(phi_char2_elliptic(p)?)
        } else {
            ClassKey::Jordan(Partition::new(
                p.parts().iter().map(|&x| 2 * x - 1).collect(),
            )?)
        };
        let expected_present = union.contains(&expected);
        let mut expected_is_minimum = expected_present;
        for other in &union {
            if !expected.closure_le(other)? {
                expected_is_minimum = false;
            }
        }
        let max_part = n as u32;
        let dim_bounds_hold = union.iter().all(|key| {
            (1..=max_part)
                .all(|k| power_image_dim(key.jordan(), k) >= lambda_prime(p, k))
        });
        checks.push(ShapeCheck {
            shape: p.clone(),
            expected,
            sigma: union.into_iter().collect(),
            expected_present,
            expected_is_minimum,
            dim_bounds_hold,
        });
    }

    let minima: BTreeSet<&ClassKey> = checks.iter().map(|c| &c.expected).collect();
    let distinct_minima = minima.len() == checks.len();

    Ok(TheoremReport {
        char_p,
        n,
        degrees: degrees.to_vec(),
        shapes: checks,
        sigma_stabilized,
        distinct_minima,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fe;
    use crate::partitions::decorated_partitions_of;
    use std::collections::BTreeMap;

    fn decorated(parts: Vec<u32>, eps: Vec<(u32, u8)>) -> ClassKey {
        ClassKey::Decorated(
            DecoratedPartition::new(
                Partition::new(parts).unwrap(),
                eps.into_iter().collect::<BTreeMap<_, _>>(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn rank_two_inventory_over_f2() {
        let f = Field::new(2, 1).unwrap();
        let inv = enumerate_classes(2, &f, &Bounds::default()).unwrap();
        let mut summary: Vec<(ClassKey, u64)> =
            inv.orbits().iter().map(|o| (o.key.clone(), o.size)).collect();
        summary.sort();
        assert_eq!(
            summary,
            vec![
                (decorated(vec![1, 1], vec![(1, 0)]), 1),
                (decorated(vec![1, 1], vec![(1, 1)]), 3),
            ]
        );
    }

    #[test]
    fn rank_two_inventory_over_f4() {
        let f = Field::new(2, 2).unwrap();
        let inv = enumerate_classes(2, &f, &Bounds::default()).unwrap();
        let mut summary: Vec<(ClassKey, u64)> =
            inv.orbits().iter().map(|o| (o.key.clone(), o.size)).collect();
        summary.sort();
        assert_eq!(
            summary,
            vec![
                (decorated(vec![1, 1], vec![(1, 0)]), 3),
                (decorated(vec![1, 1], vec![(1, 1)]), 45),
            ]
        );
    }

    #[test]
    fn rank_three_inventory_over_f2_matches_the_marked_classification() {
        let f = Field::new(2, 1).unwrap();
        let inv = enumerate_classes(3, &f, &Bounds::default()).unwrap();
        let keys: Vec<ClassKey> = inv.keys().into_iter().collect();
        let mut expected: Vec<ClassKey> = decorated_partitions_of(3)
            .into_iter()
            .map(ClassKey::Decorated)
            .collect();
        expected.sort();
        assert_eq!(keys, expected);
        // The class with a single Jordan block splits into two rational
        // orbits of equal size: their quadratic forms `x -> x^T A x` have
        // different zero counts (6 vs 2), an invariant of rational
        // congruence that disappears over the algebraic closure.
        let mut summary: Vec<(ClassKey, u64)> =
            inv.orbits().iter().map(|o| (o.key.clone(), o.size)).collect();
        summary.sort();
        let single = decorated(vec![3], vec![(3, 1)]);
        assert_eq!(
            summary,
            vec![
                (decorated(vec![1, 1, 1], vec![(1, 1)]), 28),
                (single.clone(), 42),
                (single.clone(), 42),
            ]
        );
        let mut zero_counts: Vec<usize> = inv
            .orbits()
            .iter()
            .filter(|o| o.key == single)
            .map(|orbit| {
                (0..8u16)
                    .filter(|&code| {
                        let x: Vec<Fe> = (0..3).map(|i| (code >> i) & 1).collect();
                        let ax = orbit.rep.mul_vec(&x, &f);
                        let q: Fe =
                            (0..3).fold(0, |acc, i| f.add(acc, f.mul(x[i], ax[i])));
                        q == 0
                    })
                    .count()
            })
            .collect();
        zero_counts.sort_unstable();
        assert_eq!(zero_counts, vec![2, 6]);
        let grouped = inv.classes();
        assert_eq!(grouped.len(), 2);
        let split = grouped.iter().find(|c| c.key == single).unwrap();
        assert_eq!((split.orbit_count, split.total_size), (2, 84));
        assert_eq!(inv.total_points(), 112);
    }

    #[test]
    fn orbit_stabilizer_consistency_in_rank_two() {
        let b = Bounds::default();
        for (p, m) in [(2u32, 1u32), (3, 1)] {
            let f = Field::new(p, m).unwrap();
            let inv = enumerate_classes(2, &f, &b).unwrap();
            let order = gl_order(2, &f);
            for orbit in inv.orbits() {
                let g =
                    SemilinearElement::new(Arc::clone(&f), 0, 1, orbit.rep.clone()).unwrap();
                let stab = centralizer_order(&g, &b).unwrap();
                assert_eq!(stab * orbit.size, order, "key {}", orbit.key);
            }
        }
    }

    #[test]
    fn centralizer_of_the_rank_two_standard_model_is_q_to_the_length() {
        // The standard element for shape (1,1) over F_2 has stabilizer
        // {I, swap} of order 2 = q^1, matching the length of its
        // distinguished twisted involution (one inversion).
        let f = Field::new(2, 1).unwrap();
        let p = Partition::new(vec![1, 1]).unwrap();
        let g = crate::semilinear::standard_g(&p, &f);
        let stab = centralizer_order(&g, &Bounds::default()).unwrap();
        assert_eq!(stab, 2);
        assert_eq!(z_perm(&p).length(), 1);
    }

    #[test]
    fn sigma_agrees_across_minimal_length_members_of_each_class() {
        // The attained-class set is an invariant of the twisted class:
        // any two minimal-length members give the same set.
        let b = Bounds::default();
        for n in 1..=3usize {
            let f = Field::new(2, 1).unwrap();
            let inv = enumerate_classes(n, &f, &b).unwrap();
            for (label, _) in crate::weyl::all_twisted_classes(n, &b).unwrap() {
                let (_, witnesses) =
                    crate::weyl::min_length_in_class(&label, n, &b).unwrap();
                let sigmas: BTreeSet<BTreeSet<ClassKey>> = witnesses
                    .iter()
                    .map(|w| sigma_for_w(w, &inv, &b).unwrap())
                    .collect();
                assert_eq!(sigmas.len(), 1, "label {label} in S_{n}");
            }
        }
    }

    #[test]
    fn odd_characteristic_keys_may_repeat_across_orbits() {
        // Over F_3 the two symmetric discriminant classes share the
        // Jordan key (1,1); the inventory keeps them separate.
        let f = Field::new(3, 1).unwrap();
        let inv = enumerate_classes(2, &f, &Bounds::default()).unwrap();
        let jordan_11 = ClassKey::Jordan(Partition::new(vec![1, 1]).unwrap());
        let count = inv.orbits().iter().filter(|o| o.key == jordan_11).count();
        assert_eq!(count, 2);
        assert_eq!(inv.keys().len(), 1);
    }

    #[test]
    fn sigma_in_rank_two_over_f2() {
        let f = Field::new(2, 1).unwrap();
        let inv = enumerate_classes(2, &f, &Bounds::default()).unwrap();
        let b = Bounds::default();
        let id = Perm::identity(2);
        let s = Perm::from_one_based(&[2, 1]).unwrap();
        let sigma_id = sigma_for_w(&id, &inv, &b).unwrap();
        let sigma_s = sigma_for_w(&s, &inv, &b).unwrap();
        assert_eq!(sigma_id.len(), 2, "every class meets the identity position");
        let only: Vec<ClassKey> = sigma_s.into_iter().collect();
        assert_eq!(only, vec![decorated(vec![1, 1], vec![(1, 1)])]);
    }

    #[test]
    fn elliptic_shape_index_matches_rank() {
        assert_eq!(elliptic_shapes(1), vec![Partition::new(vec![1]).unwrap()]);
        assert_eq!(elliptic_shapes(2), vec![Partition::new(vec![1, 1]).unwrap()]);
        let three: BTreeSet<Partition> = elliptic_shapes(3).into_iter().collect();
        assert_eq!(
            three,
            [
                Partition::new(vec![2]).unwrap(),
                Partition::new(vec![1, 1, 1]).unwrap()
            ]
            .into_iter()
            .collect()
        );
    }

    #[test]
    fn theorem_holds_in_rank_two_char_two_across_degrees() {
        let report = verify_theorem(2, 2, &[1, 2], &Bounds::default()).unwrap();
        assert!(report.holds(), "{report:?}");
    }

    #[test]
    fn theorem_holds_in_rank_two_char_three() {
        let report = verify_theorem(2, 3, &[1], &Bounds::default()).unwrap();
        assert!(report.holds(), "{report:?}");
    }
}
