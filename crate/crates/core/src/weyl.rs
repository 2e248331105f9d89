//! The symmetric group `S_n` with its order-reversing twist.
//!
//! The twist is conjugation by the longest element `wbar : j -> n+1-j`; on
//! simple reflections it acts by `s_i -> s_{n-i}`.  Twisted conjugacy means
//! the orbit of `w -> x^{-1} w twist(x)`.  Orbits are classified by the
//! cycle type of `w ∘ wbar`, a partition of `n` called the *label* here; a
//! class is *elliptic* exactly when all label parts are odd.
//!
//! For each partition `p = (p_1 >= ... >= p_s)` with `n = sum(2p_i - 1)`
//! there is a distinguished element `z_p` of minimal length in the elliptic
//! class with label `(2p_1-1, ..., 2p_s-1)`; it is written down part by
//! part in [`z_perm`].

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// A permutation of `{1, ..., n}`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// The identity of `S_n`.
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Build from 1-based images, checking bijectivity.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero = Vec::with_capacity(n);
        for &im in images {
            if im == 0 || im > n {
                return Err(Error::Parse(format!(
                    "image {im} out of range 1..={n}"
                )));
            }
            if seen[im - 1] {
                return Err(Error::Parse(format!("repeated image {im}")));
            }
            seen[im - 1] = true;
            zero.push(im - 1);
        }
        Ok(Perm { images: zero })
    }

    /// Build from 0-based images without validation (internal use).
    fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s: Vec<_> = images.clone();
            s.sort_unstable();
            s == (0..images.len()).collect::<Vec<_>>()
        });
        Perm { images }
    }

    /// Degree `n`.
    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Apply to a 0-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// One-based images, for display and serialization.
    pub fn one_based_images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    /// Composition `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n(), "degree mismatch");
        Perm::from_zero_based(
            (0..self.n())
                .map(|i| self.images[other.images[i]])
                .collect(),
        )
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im] = i;
        }
        Perm::from_zero_based(inv)
    }

    /// Coxeter length = number of inversions.
    pub fn length(&self) -> u64 {
        let n = self.n();
        let mut count = 0u64;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// The simple transposition `s_k` swapping 0-based positions `k, k+1`.
    pub fn simple(n: usize, k: usize) -> Perm {
        assert!(k + 1 < n);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(k, k + 1);
        Perm::from_zero_based(images)
    }

    /// Cycle decomposition (1-based entries, each cycle starting at its
    /// smallest element, cycles sorted by their smallest element).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle type as a partition of `n`.
    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(|c| c.len() as u32).collect())
            .expect("cycle lengths are positive")
    }
}

impl fmt::Display for Perm {
    /// One-line notation: comma-separated 1-based images.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &im in &self.images {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", im + 1)?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// Parse one-line notation `"3,2,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let images: Vec<usize> = s
            .trim()
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad image {tok:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        Perm::from_one_based(&images)
    }
}

/// The longest element `wbar : j -> n+1-j`.
pub fn longest(n: usize) -> Perm {
    Perm::from_zero_based((0..n).map(|i| n - 1 - i).collect())
}

/// The twist `w -> wbar ∘ w ∘ wbar`.  It is an involutive automorphism
/// sending `s_i` to `s_{n-i}`.
pub fn twist(w: &Perm) -> Perm {
    let wb = longest(w.n());
    wb.compose(w).compose(&wb)
}

/// Label of the twisted conjugacy class of `w`: the cycle type of
/// `w ∘ wbar`.  Complete invariant of the class (checked exhaustively in
/// the tests for `n <= 6`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TwistedClassLabel(pub Partition);

impl fmt::Display for TwistedClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Compute the class label of `w`.
pub fn twisted_class_label(w: &Perm) -> TwistedClassLabel {
    TwistedClassLabel(w.compose(&longest(w.n())).cycle_type())
}

/// A class is elliptic iff all label parts are odd.
pub fn is_elliptic(label: &TwistedClassLabel) -> bool {
    label.0.all_parts_odd()
}

/// Degree of the symmetric group a `z_p` input lives in:
/// `n = sum(2 p_i - 1)`, equivalently `2 * sum(p) = n + #parts`.
pub fn z_perm_degree(p: &Partition) -> usize {
    p.parts().iter().map(|&pi| 2 * pi as usize - 1).sum()
}

/// The distinguished minimal-length element `z_p` of the elliptic class
/// with label `(2p_1 - 1, ..., 2p_s - 1)`.
///
/// With `P_r = p_1 + ... + p_r` and `Q_r = (p_1 - 1) + ... + (p_r - 1)`,
/// `z_p` sends (1-based, for each `r`):
///
/// * `Q_{r-1} + i  ->  P_{r-1} + i + 1`    for `i` in `1 ..= p_r - 1`;
/// * `n - (P_r - 1)  ->  P_{r-1} + 1`;
/// * `n - (P_{r-1} + i)  ->  n - (Q_{r-1} + i)`  for `i` in `0 ..= p_r - 2`.
pub fn z_perm(p: &Partition) -> Perm {
    let n = z_perm_degree(p);
    let s = p.len();
    let mut images: Vec<Option<usize>> = vec![None; n];
    // 1-based assignment helper.
    let mut assign = |from: usize, to: usize| {
        debug_assert!(
            images[from - 1].is_none(),
            "source {from} assigned twice in z_perm"
        );
        images[from - 1] = Some(to - 1);
    };
    let mut p_prefix = 0usize; // P_{r-1}
    let mut q_prefix = 0usize; // Q_{r-1}
    for r in 0..s {
        let pr = p.parts()[r] as usize;
        for i in 1..=pr.saturating_sub(1) {
            assign(q_prefix + i, p_prefix + i + 1);
        }
        assign(n - (p_prefix + pr - 1), p_prefix + 1);
        for i in 0..pr.saturating_sub(1) {
            assign(n - (p_prefix + i), n - (q_prefix + i));
        }
        p_prefix += pr;
        q_prefix += pr - 1;
    }
    let images: Vec<usize> = images
        .into_iter()
        .map(|im| im.expect("z_perm rules cover every point"))
        .collect();
    Perm::from_zero_based(images)
}

/// The cycle chains of `wbar ∘ z_p`, one chain per part, written exactly as
/// the product of disjoint cycles
/// `Q_{r-1}+1 -> n-(P_{r-1}+1) -> Q_{r-1}+2 -> ... -> n-(P_r-1) -> n-P_{r-1}`
/// (1-based; the last entry maps back to the first).  Chain `r` has length
/// `2 p_r - 1`.
pub fn z_perm_twist_cycles(p: &Partition) -> Vec<Vec<usize>> {
    let n = z_perm_degree(p);
    let mut out = Vec::new();
    let mut p_prefix = 0usize;
    let mut q_prefix = 0usize;
    for &pr in p.parts() {
        let pr = pr as usize;
        let mut chain = Vec::with_capacity(2 * pr - 1);
        for i in 1..=pr - 1 {
            chain.push(q_prefix + i);
            chain.push(n - (p_prefix + i));
        }
        chain.push(n - p_prefix);
        out.push(chain);
        p_prefix += pr;
        q_prefix += pr - 1;
    }
    out
}

/// All elements of `S_n` (n! of them), in lexicographic order of images.
pub fn all_perms(n: usize) -> Vec<Perm> {
    (0..n)
        .permutations(n)
        .map(Perm::from_zero_based)
        .collect()
}

fn check_weyl_bound(n: usize, bounds: &Bounds) -> Result<()> {
    bounds.check("symmetric group degree", n as u64, bounds.max_weyl_n as u64)
}

/// The twisted conjugacy class of `w` as a sorted vector, computed by
/// breadth-first closure under `w -> s w twist(s)` over the simple
/// reflections.
pub fn twisted_class_of(w: &Perm, bounds: &Bounds) -> Result<Vec<Perm>> {
    check_weyl_bound(w.n(), bounds)?;
    let n = w.n();
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    while let Some(v) = queue.pop_front() {
        for k in 0..n.saturating_sub(1) {
            let s = Perm::simple(n, k);
            let ts = Perm::simple(n, n - 2 - k); // twist(s_k)
            let next = s.compose(&v).compose(&ts);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Partition all of `S_n` into twisted conjugacy classes.
pub fn all_twisted_classes(n: usize, bounds: &Bounds) -> Result<Vec<(TwistedClassLabel, Vec<Perm>)>> {
    check_weyl_bound(n, bounds)?;
    let mut assigned: HashSet<Perm> = HashSet::new();
    let mut out = Vec::new();
    for w in all_perms(n) {
        if assigned.contains(&w) {
            continue;
        }
        let class = twisted_class_of(&w, bounds)?;
        for v in &class {
            assigned.insert(v.clone());
        }
        out.push((twisted_class_label(&w), class));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Find some element with the given label, or error if the label is not a
/// partition of `n`.
pub fn representative_of_label(label: &TwistedClassLabel, n: usize, bounds: &Bounds) -> Result<Perm> {
    check_weyl_bound(n, bounds)?;
    if label.0.total() != n as u64 {
        return Err(Error::MismatchedTotals(
            label.to_string(),
            label.0.total(),
            format!("S_{n}"),
            n as u64,
        ));
    }
    all_perms(n)
        .into_iter()
        .find(|w| &twisted_class_label(w) == label)
        .ok_or_else(|| Error::TheoremFalsified(format!("no element of S_{n} has label {label}")))
}

/// Minimal length in the class with the given label, together with all
/// minimal-length elements.
pub fn min_length_in_class(
    label: &TwistedClassLabel,
    n: usize,
    bounds: &Bounds,
) -> Result<(u64, Vec<Perm>)> {
    let rep = representative_of_label(label, n, bounds)?;
    let class = twisted_class_of(&rep, bounds)?;
    let min = class.iter().map(Perm::length).min().expect("class nonempty");
    let witnesses = class.into_iter().filter(|w| w.length() == min).collect();
    Ok((min, witnesses))
}

/// The twist-orbits on the set of simple reflections `{s_1, ..., s_{n-1}}`
/// (0-based generator indices: `k <-> n-2-k`); each orbit is a sorted pair
/// or a singleton.
fn generator_twist_orbits(n: usize) -> Vec<Vec<usize>> {
    let m = n.saturating_sub(1);
    let mut out = Vec::new();
    for k in 0..m {
        let tk = n - 2 - k;
        if k < tk {
            out.push(vec![k, tk]);
        } else if k == tk {
            out.push(vec![k]);
        }
    }
    out
}

/// All twist-stable subsets of the simple reflections (as sorted index
/// vectors), i.e. unions of generator twist-orbits.
fn stable_generator_subsets(n: usize) -> Vec<Vec<usize>> {
    let orbits = generator_twist_orbits(n);
    let mut out = Vec::new();
    for mask in 0u32..(1 << orbits.len()) {
        let mut subset = Vec::new();
        for (bit, orbit) in orbits.iter().enumerate() {
            if (mask >> bit) & 1 == 1 {
                subset.extend_from_slice(orbit);
            }
        }
        subset.sort_unstable();
        out.push(subset);
    }
    out
}

/// Block index of each point for the standard parabolic subgroup generated
/// by the given generator indices: generator `k` glues points `k` and
/// `k+1`.
fn parabolic_blocks(n: usize, generators: &[usize]) -> Vec<usize> {
    let gen_set: HashSet<usize> = generators.iter().copied().collect();
    let mut block = vec![0usize; n];
    let mut current = 0usize;
    for (i, b) in block.iter_mut().enumerate().skip(1) {
        if !gen_set.contains(&(i - 1)) {
            current += 1;
        }
        *b = current;
    }
    block
}

/// Membership in the standard parabolic: `w` preserves every block.
fn in_parabolic(w: &Perm, blocks: &[usize]) -> bool {
    (0..w.n()).all(|i| blocks[w.apply(i)] == blocks[i])
}

/// `mu` of a twisted class: the minimal number of twist-orbits on the
/// complement `S - J`, over twist-stable subsets `J` of the simple
/// reflections such that the intersection of the class with the standard
/// parabolic `W_J` is a single `W_J`-twisted class that is elliptic in
/// `W_J`.  Equals 0 iff the class is elliptic.
pub fn mu_of_class(label: &TwistedClassLabel, n: usize, bounds: &Bounds) -> Result<u64> {
    let rep = representative_of_label(label, n, bounds)?;
    let class: HashSet<Perm> = twisted_class_of(&rep, bounds)?.into_iter().collect();
    let orbits = generator_twist_orbits(n);
    let mut best: Option<u64> = None;
    for j_subset in stable_generator_subsets(n) {
        let gen_set: HashSet<usize> = j_subset.iter().copied().collect();
        let blocks = parabolic_blocks(n, &j_subset);
        let meet: HashSet<Perm> = class
            .iter()
            .filter(|w| in_parabolic(w, &blocks))
            .cloned()
            .collect();
        let Some(w0) = meet.iter().min() else {
            continue;
        };
        // Closure of w0 under twisted conjugation by W_J.
        let mut sub_orbit: HashSet<Perm> = HashSet::new();
        let mut queue = VecDeque::new();
        sub_orbit.insert(w0.clone());
        queue.push_back(w0.clone());
        while let Some(v) = queue.pop_front() {
            for &k in &j_subset {
                let s = Perm::simple(n, k);
                let ts = Perm::simple(n, n - 2 - k);
                let next = s.compose(&v).compose(&ts);
                if sub_orbit.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        // The intersection must be exactly one W_J-twisted class ...
        if sub_orbit != meet {
            continue;
        }
        // ... and that class must be elliptic in W_J: it avoids every
        // proper twist-stable sub-parabolic of J.
        let j_orbits: Vec<&Vec<usize>> = orbits
            .iter()
            .filter(|o| o.iter().all(|k| gen_set.contains(k)))
            .collect();
        let mut elliptic = true;
        'masks: for mask in 0u32..(1 << j_orbits.len()) {
            if mask == (1 << j_orbits.len()) - 1 {
                continue; // J itself, not a proper subset
            }
            let mut sub: Vec<usize> = Vec::new();
            for (bit, orbit) in j_orbits.iter().enumerate() {
                if (mask >> bit) & 1 == 1 {
                    sub.extend_from_slice(orbit);
                }
            }
            let sub_blocks = parabolic_blocks(n, &sub);
            if sub_orbit.iter().any(|w| in_parabolic(w, &sub_blocks)) {
                elliptic = false;
                break 'masks;
            }
        }
        if !elliptic {
            continue;
        }
        let complement_orbits = orbits
            .iter()
            .filter(|o| !o.iter().all(|k| gen_set.contains(k)))
            .count() as u64;
        best = Some(match best {
            Some(b) => b.min(complement_orbits),
            None => complement_orbits,
        });
    }
    best.ok_or_else(|| {
        Error::TheoremFalsified(format!(
            "no twist-stable parabolic support found for class {label} in S_{n}"
        ))
    })
}

/// `mu` for every class of `S_n`, keyed by label.
pub fn mu_table(n: usize, bounds: &Bounds) -> Result<HashMap<TwistedClassLabel, u64>> {
    let mut out = HashMap::new();
    for (label, _) in all_twisted_classes(n, bounds)? {
        let mu = mu_of_class(&label, n, bounds)?;
        out.insert(label, mu);
    }
    Ok(out)
}
