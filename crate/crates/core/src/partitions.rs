//! Partitions, dual partitions, dominance order, and decorated partitions.
//!
//! A *decorated partition* is a Jordan type `c` in which every even part has
//! even multiplicity, together with a marking `eps(i) ∈ {0,1}` for every odd
//! part value `i` that actually occurs.  Decorated partitions index the
//! unipotent classes of the full orthogonal/symplectic-like form monoid in
//! characteristic 2; the closure order on them refines dominance by two
//! extra conditions on dual prefix sums.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Build a partition, checking that parts are positive and weakly
    /// decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts must be weakly decreasing, got {:?}",
                    parts
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "parts must be positive, got {:?}",
                parts
            )));
        }
        Ok(Partition { parts })
    }

    /// Build a partition from parts in any order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The parts, largest first.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn total(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Whether there are no parts.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of the part value `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// Whether all parts are odd.
    pub fn all_parts_odd(&self) -> bool {
        self.parts.iter().all(|&p| p % 2 == 1)
    }

    /// The dual (conjugate) partition: `dual_i = #{j : parts_j >= i}`.
    pub fn dual(&self) -> Partition {
        let max = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=max)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32)
            .collect();
        Partition { parts }
    }

    /// `i`-th part with `i` counted from 1; zero beyond the last part.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    /// Prefix sum of the first `i` parts (parts beyond the end count 0).
    pub fn prefix(&self, i: usize) -> u64 {
        self.parts
            .iter()
            .take(i)
            .map(|&p| p as u64)
            .sum()
    }
}

/// Dominance order: `a <= b` iff all prefix sums of `a` are at most those of
/// `b`.  Errors when the two sides do not partition the same integer.
pub fn dominance_le(a: &Partition, b: &Partition) -> Result<bool> {
    if a.total() != b.total() {
        return Err(Error::MismatchedTotals(
            a.to_string(),
            a.total(),
            b.to_string(),
            b.total(),
        ));
    }
    let k = a.len().max(b.len());
    Ok((1..=k).all(|i| a.prefix(i) <= b.prefix(i)))
}

/// All partitions of `n`, in lexicographically decreasing order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        let hi = remaining.min(max_part);
        for next in (1..=hi).rev() {
            current.push(next);
            go(remaining - next, next, current, out);
            current.pop();
        }
    }
    go(n, n, &mut current, &mut out);
    out
}

/// All partitions of `n` into odd parts.
pub fn odd_partitions_of(n: u32) -> Vec<Partition> {
    partitions_of(n)
        .into_iter()
        .filter(|p| p.all_parts_odd())
        .collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parse `"5,4,3,3,2,2,1,1"`.  The empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Vec<u32> = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad part {tok:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        Partition::new(parts)
    }
}

/// A Jordan type with ε-markings: every even part has even multiplicity, and
/// every odd part value `i` that occurs carries `eps(i) ∈ {0,1}`, with
/// `eps(i) = 1` forced when the multiplicity of `i` in the dual-difference
/// sense (`mu_i = dual_i - dual_{i+1}`) is odd.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DecoratedPartition {
    c: Partition,
    /// `eps` on the odd part values present in `c` (keys sorted ascending).
    eps: BTreeMap<u32, u8>,
}

impl DecoratedPartition {
    /// Validate and build.  The decoration must be defined on exactly the
    /// odd part values of `c`, must take values in `{0,1}`, and must be 1
    /// wherever the multiplicity of the part value is odd.  Even parts must
    /// come in pairs.
    pub fn new(c: Partition, eps: BTreeMap<u32, u8>) -> Result<Self> {
        for &v in c.parts() {
            if v % 2 == 0 && !c.multiplicity(v).is_multiple_of(2) {
                return Err(Error::InvalidDecoration(format!(
                    "even part {v} of {c} has odd multiplicity"
                )));
            }
        }
        for (&v, &e) in &eps {
            if e > 1 {
                return Err(Error::InvalidDecoration(format!(
                    "eps({v}) = {e} is not in {{0,1}}"
                )));
            }
            if v % 2 == 0 {
                return Err(Error::InvalidDecoration(format!(
                    "eps defined on even part value {v}"
                )));
            }
            if c.multiplicity(v) == 0 {
                return Err(Error::InvalidDecoration(format!(
                    "eps defined on absent part value {v}"
                )));
            }
        }
        for &v in c.parts() {
            if v % 2 == 1 && !eps.contains_key(&v) {
                return Err(Error::InvalidDecoration(format!(
                    "eps missing for odd part value {v}"
                )));
            }
            if v % 2 == 1 && c.multiplicity(v) % 2 == 1 && eps[&v] != 1 {
                return Err(Error::InvalidDecoration(format!(
                    "eps({v}) must be 1: part value {v} has odd multiplicity"
                )));
            }
        }
        Ok(DecoratedPartition { c, eps })
    }

    /// The underlying Jordan type.
    pub fn jordan_type(&self) -> &Partition {
        &self.c
    }

    /// The ε-markings on odd part values.
    pub fn eps_map(&self) -> &BTreeMap<u32, u8> {
        &self.eps
    }

    /// The ε-marking at a single value, if that value is an odd part.
    pub fn eps(&self, i: u32) -> Option<u8> {
        self.eps.get(&i).copied()
    }

    /// The integer being partitioned.
    pub fn total(&self) -> u64 {
        self.c.total()
    }

    /// Extended marking used by the closure order:
    /// `-1` when `i` is even or absent (`mu_i = 0`), otherwise `eps(i)`.
    pub fn extended_eps(&self, i: u32) -> i8 {
        if i == 0 || i.is_multiple_of(2) || self.c.multiplicity(i) == 0 {
            -1
        } else {
            self.eps[&i] as i8
        }
    }
}

impl fmt::Display for DecoratedPartition {
    /// `3:1,3:1,1:0` — every part listed, odd parts suffixed with their ε.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &p in self.c.parts() {
            if !first {
                write!(f, ",")?;
            }
            if p % 2 == 1 {
                write!(f, "{p}:{}", self.eps[&p])?;
            } else {
                write!(f, "{p}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for DecoratedPartition {
    type Err = Error;

    /// Parse `"3:1,3:1,1:0"`-style lists; ε is omitted for even parts and
    /// must be repeated consistently for repeated odd parts.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut parts = Vec::new();
        let mut eps: BTreeMap<u32, u8> = BTreeMap::new();
        if !s.is_empty() {
            for tok in s.split(',') {
                let tok = tok.trim();
                let (part_str, eps_str) = match tok.split_once(':') {
                    Some((p, e)) => (p, Some(e)),
                    None => (tok, None),
                };
                let p: u32 = part_str
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad part {part_str:?}: {e}")))?;
                parts.push(p);
                match eps_str {
                    Some(e) => {
                        let e: u8 = e
                            .parse()
                            .map_err(|err| Error::Parse(format!("bad eps {e:?}: {err}")))?;
                        if let Some(&prev) = eps.get(&p) {
                            if prev != e {
                                return Err(Error::Parse(format!(
                                    "inconsistent eps for part {p}: {prev} vs {e}"
                                )));
                            }
                        }
                        eps.insert(p, e);
                    }
                    None => {
                        if p % 2 == 1 {
                            return Err(Error::Parse(format!(
                                "odd part {p} requires an eps marking (write {p}:0 or {p}:1)"
                            )));
                        }
                    }
                }
            }
        }
        DecoratedPartition::new(Partition::from_unsorted(parts)?, eps)
    }
}

/// Closure order on decorated partitions of the same integer.
///
/// `a <= b` ("`a` lies in the closure of `b`") iff, writing `c, eps` for `a`
/// and `c', eps'` for `b`:
///
/// 1. `c <= c'` in dominance;
/// 2. for every `i >= 1`, with duals `c*`, `c'*`:
///    `sum_{j<=i} c*_j - max(eps(i),0) >= sum_{j<=i} c'*_j - max(eps'(i),0)`
///    (dual prefix sums reverse the inequality, corrected by the markings);
/// 3. whenever the dual prefix sums agree at `i` and `c*_{i+1} - c'*_{i+1}`
///    is odd, `eps'(i) != 0`.
///
/// The markings enter through [`DecoratedPartition::extended_eps`], which is
/// `-1` on even or absent values.  All conditions stabilise beyond the
/// largest part plus one, so the scan is finite.
pub fn decorated_closure_le(a: &DecoratedPartition, b: &DecoratedPartition) -> Result<bool> {
    if a.total() != b.total() {
        return Err(Error::MismatchedTotals(
            a.to_string(),
            a.total(),
            b.to_string(),
            b.total(),
        ));
    }
    if !dominance_le(a.jordan_type(), b.jordan_type())? {
        return Ok(false);
    }
    let da = a.jordan_type().dual();
    let db = b.jordan_type().dual();
    let hi = a
        .jordan_type()
        .part(1)
        .max(b.jordan_type().part(1)) as usize
        + 1;
    for i in 1..=hi {
        let ea = a.extended_eps(i as u32).max(0) as i64;
        let eb = b.extended_eps(i as u32).max(0) as i64;
        if (da.prefix(i) as i64) - ea < (db.prefix(i) as i64) - eb {
            return Ok(false);
        }
        if da.prefix(i) == db.prefix(i) {
            let diff = da.part(i + 1) as i64 - db.part(i + 1) as i64;
            if diff.rem_euclid(2) == 1 && b.extended_eps(i as u32) == 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All valid decorated partitions of `n`: Jordan types with paired even
/// parts, all admissible ε-markings.
pub fn decorated_partitions_of(n: u32) -> Vec<DecoratedPartition> {
    let mut out = Vec::new();
    'outer: for c in partitions_of(n) {
        for &v in c.parts() {
            if v % 2 == 0 && c.multiplicity(v) % 2 != 0 {
                continue 'outer;
            }
        }
        let mut odd_values: Vec<u32> = c.parts().iter().copied().filter(|v| v % 2 == 1).collect();
        odd_values.dedup();
        // For each odd value: ε free in {0,1} when the multiplicity is even,
        // forced to 1 when odd.
        let free: Vec<u32> = odd_values
            .iter()
            .copied()
            .filter(|&v| c.multiplicity(v) % 2 == 0)
            .collect();
        for mask in 0u32..(1 << free.len()) {
            let mut eps = BTreeMap::new();
            for &v in &odd_values {
                if c.multiplicity(v) % 2 == 1 {
                    eps.insert(v, 1u8);
                }
            }
            for (bit, &v) in free.iter().enumerate() {
                eps.insert(v, ((mask >> bit) & 1) as u8);
            }
            out.push(DecoratedPartition::new(c.clone(), eps).expect("constructed valid"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(p(&[3, 1]).dual(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 2]).dual(), p(&[2, 2]));
        assert_eq!(Partition::empty().dual(), Partition::empty());
        assert_eq!(p(&[5]).dual(), p(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn dual_is_an_involution_up_to_n_20() {
        for n in 0..=20u32 {
            for q in partitions_of(n) {
                assert_eq!(q.dual().dual(), q, "dual^2 != id at {q}");
                assert_eq!(q.dual().total(), q.total());
            }
        }
    }

    #[test]
    fn multiplicity_matches_dual_differences() {
        for n in 0..=12u32 {
            for q in partitions_of(n) {
                let d = q.dual();
                let hi = q.part(1) as usize + 1;
                for i in 1..=hi {
                    let mu = d.part(i) as i64 - d.part(i + 1) as i64;
                    assert_eq!(mu, q.multiplicity(i as u32) as i64, "at {q}, i={i}");
                }
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_le(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(!dominance_le(&p(&[3, 1]), &p(&[2, 2])).unwrap());
        assert!(dominance_le(&p(&[1, 1, 1, 1]), &p(&[4])).unwrap());
        assert!(dominance_le(&p(&[3, 1]), &p(&[3, 1])).unwrap());
        assert!(dominance_le(&p(&[2, 2, 1]), &p(&[3, 1, 1])).unwrap());
        assert!(dominance_le(&p(&[3, 1, 1]), &p(&[3, 2])).unwrap());
        // Incomparable pair.
        assert!(!dominance_le(&p(&[4, 1, 1]), &p(&[3, 3])).unwrap());
        assert!(!dominance_le(&p(&[3, 3]), &p(&[4, 1, 1])).unwrap());
    }

    #[test]
    fn dominance_rejects_mismatched_totals() {
        assert!(dominance_le(&p(&[2]), &p(&[3])).is_err());
    }

    #[test]
    fn dominance_is_a_partial_order_up_to_n_10() {
        for n in 0..=10u32 {
            let ps = partitions_of(n);
            for a in &ps {
                assert!(dominance_le(a, a).unwrap(), "reflexivity at {a}");
            }
            for a in &ps {
                for b in &ps {
                    let ab = dominance_le(a, b).unwrap();
                    let ba = dominance_le(b, a).unwrap();
                    if ab && ba {
                        assert_eq!(a, b, "antisymmetry: {a} vs {b}");
                    }
                }
            }
            for a in &ps {
                for b in &ps {
                    if !dominance_le(a, b).unwrap() {
                        continue;
                    }
                    for c in &ps {
                        if dominance_le(b, c).unwrap() {
                            assert!(
                                dominance_le(a, c).unwrap(),
                                "transitivity: {a} <= {b} <= {c}"
                            );
                        }
                    }
                }
            }
        }
    }

    /// Dominance is dual-reversing: `a <= b` iff `b.dual() <= a.dual()`.
    #[test]
    fn dominance_reverses_under_dual_up_to_n_9() {
        for n in 0..=9u32 {
            let ps = partitions_of(n);
            for a in &ps {
                for b in &ps {
                    assert_eq!(
                        dominance_le(a, b).unwrap(),
                        dominance_le(&b.dual(), &a.dual()).unwrap(),
                        "dual reversal at {a}, {b}"
                    );
                }
            }
        }
    }

    /// If `a <= b` and their dual prefix sums agree through `i`, then
    /// `a.dual_i <= b.dual_i` is forced to equality-compatible behaviour:
    /// `dual_i(a) <= dual_i(b)` and positivity of `mu_i(a)` forces
    /// positivity of `mu_i(b)`.
    #[test]
    fn equal_dual_prefixes_transfer_multiplicity_up_to_n_9() {
        for n in 1..=9u32 {
            let ps = partitions_of(n);
            for a in &ps {
                for b in &ps {
                    if !dominance_le(a, b).unwrap() {
                        continue;
                    }
                    let da = a.dual();
                    let db = b.dual();
                    let hi = n as usize;
                    for i in 1..=hi {
                        if da.prefix(i) != db.prefix(i) {
                            continue;
                        }
                        assert!(
                            da.part(i) <= db.part(i),
                            "dual part comparison at {a} <= {b}, i={i}"
                        );
                        let mu_a = da.part(i) as i64 - da.part(i + 1) as i64;
                        let mu_b = db.part(i) as i64 - db.part(i + 1) as i64;
                        if mu_a > 0 {
                            assert!(mu_b > 0, "mu transfer at {a} <= {b}, i={i}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn partition_count_matches_known_values() {
        // p(n) for n = 0..10.
        let expected = [1usize, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(partitions_of(n as u32).len(), e, "p({n})");
        }
        assert_eq!(partitions_of(20).len(), 627);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["5,4,3,3,2,2,1,1", "3", "", "2,2,1"] {
            let q: Partition = s.parse().unwrap();
            assert_eq!(q.to_string(), s);
        }
        assert!("3,4".parse::<Partition>().is_err());
        assert!("0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    fn dp(s: &str) -> DecoratedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn decorated_validation() {
        // Even part with odd multiplicity.
        assert!("2,1:1".parse::<DecoratedPartition>().is_err());
        // eps on even value.
        assert!("2:1,2:1".parse::<DecoratedPartition>().is_err());
        // Forced eps = 1 when multiplicity is odd.
        assert!("3:0".parse::<DecoratedPartition>().is_err());
        assert!("3:1".parse::<DecoratedPartition>().is_ok());
        // Both markings fine when multiplicity is even.
        assert!("3:0,3:0".parse::<DecoratedPartition>().is_ok());
        assert!("3:1,3:1".parse::<DecoratedPartition>().is_ok());
        // Missing marking on an odd part.
        assert!("3,3".parse::<DecoratedPartition>().is_err());
        // Inconsistent repeats.
        assert!("3:0,3:1".parse::<DecoratedPartition>().is_err());
        // Even parts never need marks.
        assert!("2,2".parse::<DecoratedPartition>().is_ok());
    }

    #[test]
    fn decorated_display_round_trip() {
        for s in ["3:1,3:1,1:1", "1:0,1:0", "2,2", "5:1,1:1", ""] {
            let d: DecoratedPartition = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
    }

    #[test]
    fn extended_eps_values() {
        let d = dp("3:0,3:0,2,2,1:1");
        assert_eq!(d.extended_eps(3), 0);
        assert_eq!(d.extended_eps(1), 1);
        assert_eq!(d.extended_eps(2), -1); // even
        assert_eq!(d.extended_eps(5), -1); // absent
    }

    #[test]
    fn closure_orders_equal_types_by_marking() {
        let lo = dp("3:0,3:0");
        let hi = dp("3:1,3:1");
        assert!(decorated_closure_le(&lo, &hi).unwrap());
        assert!(!decorated_closure_le(&hi, &lo).unwrap());
        assert!(decorated_closure_le(&lo, &lo).unwrap());
        assert!(decorated_closure_le(&hi, &hi).unwrap());
    }

    #[test]
    fn closure_is_a_partial_order_up_to_n_8() {
        for n in 0..=8u32 {
            let ds = decorated_partitions_of(n);
            for a in &ds {
                assert!(decorated_closure_le(a, a).unwrap(), "reflexivity at {a}");
            }
            for a in &ds {
                for b in &ds {
                    let ab = decorated_closure_le(a, b).unwrap();
                    let ba = decorated_closure_le(b, a).unwrap();
                    if ab && ba {
                        assert_eq!(a, b, "antisymmetry: {a} vs {b}");
                    }
                }
            }
            for a in &ds {
                for b in &ds {
                    if !decorated_closure_le(a, b).unwrap() {
                        continue;
                    }
                    for c in &ds {
                        if decorated_closure_le(b, c).unwrap() {
                            assert!(
                                decorated_closure_le(a, c).unwrap(),
                                "transitivity: {a} <= {b} <= {c}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closure_refines_dominance_up_to_n_8() {
        for n in 0..=8u32 {
            let ds = decorated_partitions_of(n);
            for a in &ds {
                for b in &ds {
                    if decorated_closure_le(a, b).unwrap() {
                        assert!(
                            dominance_le(a.jordan_type(), b.jordan_type()).unwrap(),
                            "{a} <= {b} but Jordan types violate dominance"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn decorated_enumeration_counts() {
        // n = 3: (3) forced eps 1; (1,1,1) forced eps 1; (2,1) excluded.
        assert_eq!(decorated_partitions_of(3).len(), 2);
        // n = 2: (1,1) free eps -> 2; (2) excluded.
        assert_eq!(decorated_partitions_of(2).len(), 2);
        // n = 4: (3,1), (1^4) free, (2,2), (4) excluded? 4 has odd
        // multiplicity -> excluded; (2,1,1): odd multiplicity of 2 ->
        // excluded. (3,1): both forced -> 1; (2,2) no odd values -> 1;
        // (1,1,1,1): eps free -> 2. Total 4.
        assert_eq!(decorated_partitions_of(4).len(), 4);
    }
}
