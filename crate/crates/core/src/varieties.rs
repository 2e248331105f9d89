//! Complete flags over a finite field and the varieties cut out by a
//! degree-one semilinear element: flags in a fixed relative position with
//! their image, the equivalent model by tuples of lines, the explicit maps
//! between the two models, a rigidity transport between elements sharing a
//! flag pair, a brute-force transitivity check, and point counts for the
//! unitary Deligne–Lusztig-style varieties.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::{Mat, Subspace};
use crate::partitions::Partition;
use crate::semilinear::SemilinearElement;
use crate::weyl::{z_perm, z_perm_degree, Perm};

/// A complete flag `0 = V_0 < V_1 < ... < V_n = F^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    steps: Vec<Subspace>,
}

impl Flag {
    pub fn new(steps: Vec<Subspace>) -> Result<Self> {
        let n = steps.len().checked_sub(1).ok_or_else(|| {
            Error::Incompatible("a flag needs at least the zero and full steps".into())
        })?;
        for (i, s) in steps.iter().enumerate() {
            if s.ambient() != n || s.dim() != i {
                return Err(Error::Incompatible(format!(
                    "step {i} has dimension {} in ambient {}, expected {i} in {n}",
                    s.dim(),
                    s.ambient()
                )));
            }
        }
        Ok(Flag { steps })
    }

    pub fn n(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn step(&self, i: usize) -> &Subspace {
        &self.steps[i]
    }

    pub fn steps(&self) -> &[Subspace] {
        &self.steps
    }
}

/// Number of complete flags in `F^n`.
pub fn flag_count(n: usize, f: &Field) -> u64 {
    let q = u64::from(f.size());
    (1..=n as u32)
        .map(|k| (q.pow(k) - 1) / (q - 1))
        .product()
}

fn extensions(u: &Subspace, points: &[Vec<Fe>], f: &Field) -> Vec<Subspace> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for pt in points {
        if u.contains(pt, f) {
            continue;
        }
        let w = u.sum(&Subspace::from_vectors(std::slice::from_ref(pt), u.ambient(), f), f);
        if seen.insert(w.clone()) {
            out.push(w);
        }
    }
    out
}

/// All complete flags in `F^n`, in a deterministic order.
pub fn enumerate_flags(n: usize, f: &Field, bounds: &Bounds) -> Result<Vec<Flag>> {
    bounds.check("complete flags", flag_count(n, f), bounds.max_flags)?;
    let points = Subspace::projective_points(n, f);
    let mut out = Vec::new();
    let mut chain = vec![Subspace::zero_space(n)];
    fn rec(
        chain: &mut Vec<Subspace>,
        n: usize,
        points: &[Vec<Fe>],
        f: &Field,
        out: &mut Vec<Flag>,
    ) {
        if chain.len() == n + 1 {
            out.push(Flag { steps: chain.clone() });
            return;
        }
        for w in extensions(chain.last().unwrap(), points, f) {
            chain.push(w);
            rec(chain, n, points, f, out);
            chain.pop();
        }
    }
    rec(&mut chain, n, &points, f, &mut out);
    Ok(out)
}

/// The permutation `w` with `(v, vp)` in the orbit of relative position
/// `w`: for every `j`, `dim(V'_j ∩ V_{w(j)})` jumps by one at `w(j)` and
/// the jump is new compared to `V'_{j-1}`.
pub fn relative_position(v: &Flag, vp: &Flag, f: &Field) -> Perm {
    let n = v.n();
    assert_eq!(n, vp.n());
    let mut d = vec![vec![0usize; n + 1]; n + 1];
    for (j, row) in d.iter_mut().enumerate() {
        for (i, cell) in row.iter_mut().enumerate() {
            *cell = vp.step(j).dim_intersection(v.step(i), f);
        }
    }
    let mut images = Vec::with_capacity(n);
    for j in 1..=n {
        let i = (1..=n)
            .find(|&i| d[j][i] == d[j][i - 1] + 1 && d[j - 1][i] == d[j - 1][i - 1])
            .expect("flag pair has a well-defined relative position");
        images.push(i);
    }
    Perm::from_one_based(&images).expect("jump columns are distinct")
}

/// The twisted action of a graded element on flags: apply the element for
/// even degree, apply-and-annihilate for odd degree.
pub fn g_dot_flag(g: &SemilinearElement, flag: &Flag) -> Flag {
    let f = g.field();
    let n = flag.n();
    assert_eq!(g.dim(), n);
    let twist = g.degree() * i64::from(g.q_exp());
    let image =
        |u: &Subspace| -> Subspace { u.frob_map(twist, f).apply_matrix(g.matrix(), f) };
    let steps = (0..=n)
        .map(|i| {
            if g.degree().rem_euclid(2) == 0 {
                image(flag.step(i))
            } else {
                image(flag.step(n - i)).perp(f)
            }
        })
        .collect();
    Flag { steps }
}

/// Flags `V` with `(V, g·V)` in relative position `z` for the shape `p`.
pub fn enumerate_x_g(
    g: &SemilinearElement,
    p: &Partition,
    bounds: &Bounds,
) -> Result<Vec<Flag>> {
    let n = z_perm_degree(p);
    assert_eq!(g.dim(), n, "element dimension must match the shape");
    let w = z_perm(p);
    let f = g.field();
    let flags = enumerate_flags(n, f, bounds)?;
    Ok(flags
        .into_iter()
        .filter(|v| relative_position(v, &g_dot_flag(g, v), f) == w)
        .collect())
}

/// Star powers of `g` for every exponent in `[-hi, hi]`.
pub fn star_power_table(g: &SemilinearElement, hi: i64) -> HashMap<i64, SemilinearElement> {
    let mut table = HashMap::new();
    let mut fwd = g.star_pow(0);
    table.insert(0, fwd.clone());
    for j in 1..=hi {
        fwd = fwd.star_mul(g);
        table.insert(j, fwd.clone());
    }
    let ginv = g.star_inv();
    let mut bwd = g.star_pow(0);
    for j in 1..=hi {
        bwd = bwd.star_mul(&ginv);
        table.insert(-j, bwd.clone());
    }
    table
}

/// The pairing `(x, g^{*j} y)`.
pub fn pair_power(
    table: &HashMap<i64, SemilinearElement>,
    j: i64,
    x: &[Fe],
    y: &[Fe],
    f: &Field,
) -> Fe {
    let gy = table[&j].apply(y);
    x.iter()
        .zip(&gy)
        .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// A sequence of lines, one per part, each given by a spanning vector.
pub type LineSequence = Vec<Vec<Fe>>;

/// Conditions a prefix `lines[..=r]` must satisfy to extend to a member of
/// the line variety: orthogonality to earlier lines over a window of odd
/// star powers, self-orthogonality over a smaller window, and a nonzero
/// self-pairing at the top power.
fn prefix_conditions_hold(
    g: &SemilinearElement,
    table: &HashMap<i64, SemilinearElement>,
    p: &Partition,
    lines: &[Vec<Fe>],
) -> bool {
    let f = g.field();
    let r = lines.len() - 1;
    let vr = &lines[r];
    let pr = i64::from(p.part(r + 1));
    for (t, vt) in lines.iter().enumerate().take(r) {
        let pt = i64::from(p.part(t + 1));
        for j in (-2 * pt + 1..=2 * pt - 2).filter(|j| j.rem_euclid(2) == 1) {
            if pair_power(table, j, vr, vt, f) != 0 {
                return false;
            }
        }
    }
    for j in (-2 * pr + 2..=2 * pr - 2).filter(|j| j.rem_euclid(2) == 1) {
        if pair_power(table, j, vr, vr, f) != 0 {
            return false;
        }
    }
    pair_power(table, 2 * pr - 1, vr, vr, f) != 0
}

/// Whether a full line sequence lies in the line variety for shape `p`.
pub fn line_sequence_is_valid(
    g: &SemilinearElement,
    p: &Partition,
    lines: &LineSequence,
) -> bool {
    assert_eq!(lines.len(), p.len());
    let table = star_power_table(g, 2 * i64::from(p.part(1)));
    (1..=p.len()).all(|r| prefix_conditions_hold(g, &table, p, &lines[..r]))
}

/// All members of the line variety, lines represented by their leading-one
/// spanning vectors.
pub fn enumerate_s_g(
    g: &SemilinearElement,
    p: &Partition,
    bounds: &Bounds,
) -> Result<Vec<LineSequence>> {
    let n = z_perm_degree(p);
    assert_eq!(g.dim(), n);
    let f = g.field();
    let points = Subspace::projective_points(n, f);
    let states = (points.len() as u64).checked_pow(p.len() as u32);
    bounds.check("line tuples", states.unwrap_or(u64::MAX), bounds.max_flags)?;
    let table = star_power_table(g, 2 * i64::from(p.part(1)));
    let mut out = Vec::new();
    let mut prefix: LineSequence = Vec::new();
    fn rec(
        g: &SemilinearElement,
        table: &HashMap<i64, SemilinearElement>,
        p: &Partition,
        points: &[Vec<Fe>],
        prefix: &mut LineSequence,
        out: &mut Vec<LineSequence>,
    ) {
        if prefix.len() == p.len() {
            out.push(prefix.clone());
            return;
        }
        for pt in points {
            prefix.push(pt.clone());
            if prefix_conditions_hold(g, table, p, prefix) {
                rec(g, table, p, points, prefix, out);
            }
            prefix.pop();
        }
    }
    rec(g, &table, p, &points, &mut prefix, &mut out);
    Ok(out)
}

fn assign_step(
    slots: &mut [Option<Subspace>],
    idx: usize,
    value: Subspace,
    what: &str,
) -> Result<()> {
    if value.dim() != idx {
        return Err(Error::Incompatible(format!(
            "{what}: slot {idx} received a subspace of dimension {}",
            value.dim()
        )));
    }
    match &slots[idx] {
        Some(existing) if *existing != value => Err(Error::Incompatible(format!(
            "{what}: slot {idx} is defined twice with different values"
        ))),
        Some(_) => Ok(()),
        None => {
            slots[idx] = Some(value);
            Ok(())
        }
    }
}

/// Build the flag pair determined by a member of the line variety.  Both
/// flags are assembled from spans of star powers of the lines (with
/// annihilators for the upper halves); indices defined twice must agree.
pub fn lines_to_flags(
    g: &SemilinearElement,
    p: &Partition,
    lines: &LineSequence,
) -> Result<(Flag, Flag)> {
    let n = z_perm_degree(p);
    assert_eq!(g.dim(), n);
    assert_eq!(lines.len(), p.len());
    let f = g.field();
    let table = star_power_table(g, 2 * i64::from(p.part(1)));
    let sigma = p.len();
    let pr = |r: usize| i64::from(p.part(r));
    // Prefix sums P_r and Q_r = P_r - r.
    let pcap = |r: usize| p.prefix(r) as usize;
    let qcap = |r: usize| p.prefix(r) as usize - r;

    let span = |picks: &[(usize, i64)]| -> Subspace {
        let vecs: Vec<Vec<Fe>> = picks
            .iter()
            .map(|&(k, j)| table[&j].apply(&lines[k - 1]))
            .collect();
        Subspace::from_vectors(&vecs, n, f)
    };
    // Star powers of the first r-1 blocks over a parity class of windows,
    // plus a truncated window for block r itself.
    let picks_for = |r: usize, full_lo: i64, cap_hi: i64, parity: i64| -> Vec<(usize, i64)> {
        let mut picks = Vec::new();
        for k in 1..r {
            for j in full_lo..=2 * pr(k) - 2 + full_lo {
                if j.rem_euclid(2) == parity {
                    picks.push((k, j));
                }
            }
        }
        for j in full_lo..=cap_hi {
            if j.rem_euclid(2) == parity {
                picks.push((r, j));
            }
        }
        picks
    };

    let mut v_slots: Vec<Option<Subspace>> = vec![None; n + 1];
    let mut vp_slots: Vec<Option<Subspace>> = vec![None; n + 1];
    assign_step(&mut v_slots, 0, Subspace::zero_space(n), "lower flag")?;
    assign_step(&mut v_slots, n, Subspace::full(n), "lower flag")?;
    assign_step(&mut vp_slots, 0, Subspace::zero_space(n), "upper flag")?;
    assign_step(&mut vp_slots, n, Subspace::full(n), "upper flag")?;

    for r in 1..=sigma {
        // V at P_{r-1}+i: even powers in [0, 2p_k-2], capped at 2i-2.
        for i in 1..=pr(r) {
            let picks = picks_for(r, 0, 2 * i - 1, 0);
            assign_step(&mut v_slots, pcap(r - 1) + i as usize, span(&picks), "lower flag")?;
        }
        // V at n-(Q_{r-1}+i): annihilator of odd powers in [0, 2p_k-2],
        // capped at 2i-1.
        for i in 1..pr(r) {
            let picks = picks_for(r, 0, 2 * i - 1, 1);
            assign_step(
                &mut v_slots,
                n - (qcap(r - 1) + i as usize),
                span(&picks).perp(f),
                "lower flag",
            )?;
        }
        // V' at Q_{r-1}+i: even powers in [1, 2p_k-1], capped at 2i.
        for i in 1..pr(r) {
            let picks = picks_for(r, 1, 2 * i, 0);
            assign_step(&mut vp_slots, qcap(r - 1) + i as usize, span(&picks), "upper flag")?;
        }
        // V' at n-(P_{r-1}+i): annihilator of odd powers in [1, 2p_k-1],
        // capped at 2i.
        for i in 1..=pr(r) {
            let picks = picks_for(r, 1, 2 * i, 1);
            assign_step(
                &mut vp_slots,
                n - (pcap(r - 1) + i as usize),
                span(&picks).perp(f),
                "upper flag",
            )?;
        }
    }

    let unwrap_all = |slots: Vec<Option<Subspace>>, what: &str| -> Result<Vec<Subspace>> {
        slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| Error::Incompatible(format!("{what}: slot {i} never defined")))
            })
            .collect()
    };
    let v = Flag::new(unwrap_all(v_slots, "lower flag")?)?;
    let vp = Flag::new(unwrap_all(vp_slots, "upper flag")?)?;
    Ok((v, vp))
}

/// Recover the line sequence from a flag in the flag model: the `u`-th
/// line is the intersection of the step above the first `u-1` blocks with
/// the annihilator of the negative odd star powers of the earlier lines.
/// Each vector is rescaled so that its top self-pairing is 1 when a
/// suitable root exists in the field; the second return value records
/// which lines were normalised.
pub fn flag_to_lines(
    g: &SemilinearElement,
    p: &Partition,
    flag: &Flag,
) -> Result<(LineSequence, Vec<bool>)> {
    let n = z_perm_degree(p);
    assert_eq!(g.dim(), n);
    assert_eq!(flag.n(), n);
    let f = g.field();
    let table = star_power_table(g, 2 * i64::from(p.part(1)));
    let mut lines: LineSequence = Vec::new();
    let mut normalised = Vec::new();
    for u in 1..=p.len() {
        let mut dual_vecs: Vec<Vec<Fe>> = Vec::new();
        for (k, vk) in lines.iter().enumerate() {
            let pk = i64::from(p.part(k + 1));
            for j in (-2 * pk + 1..=-1).filter(|j| j.rem_euclid(2) == 1) {
                dual_vecs.push(table[&j].apply(vk));
            }
        }
        let eperp = Subspace::from_vectors(&dual_vecs, n, f).perp(f);
        let step = flag.step(p.prefix(u - 1) as usize + 1);
        let cand = step.intersection(&eperp, f);
        if cand.dim() != 1 {
            return Err(Error::Incompatible(format!(
                "line {u} is not determined: intersection has dimension {}",
                cand.dim()
            )));
        }
        let mut v = cand.basis().row(0).to_vec();
        let pu = i64::from(p.part(u));
        let c = pair_power(&table, 2 * pu - 1, &v, &v, f);
        if c == 0 {
            return Err(Error::Incompatible(format!(
                "line {u} has zero top self-pairing"
            )));
        }
        // Rescaling by lambda multiplies the top self-pairing by
        // lambda^(1 + q^(2p_u - 1)); reduce the exponent modulo the order
        // of the multiplicative group before searching for a root.
        let group = u64::from(f.size()) - 1;
        let q = u64::from(f.p()).pow(g.q_exp());
        let mut qpow = 1u64 % group;
        for _ in 0..(2 * pu - 1) {
            qpow = qpow * (q % group) % group;
        }
        let exp = (1 + qpow) % group;
        match f.nth_root(f.inv(c), exp) {
            Some(lambda) => {
                v = v.iter().map(|&x| f.mul(lambda, x)).collect();
                normalised.push(true);
            }
            None => normalised.push(false),
        }
        lines.push(v);
    }
    Ok((lines, normalised))
}

/// Matrix whose columns are the canonical basis vectors generated by a
/// normalised line sequence: block `t` holds the star powers
/// `g^{*(2i - 2p_t)} v_t` for `i` from `0` to `2p_t - 2`.
pub fn canonical_basis(
    g: &SemilinearElement,
    p: &Partition,
    lines: &LineSequence,
) -> Result<Mat> {
    let n = z_perm_degree(p);
    let f = g.field();
    let table = star_power_table(g, 2 * i64::from(p.part(1)));
    for (t, v) in lines.iter().enumerate() {
        let pt = i64::from(p.part(t + 1));
        if pair_power(&table, 2 * pt - 1, v, v, f) != f.one() {
            return Err(Error::NoNormalizationRoot(format!(
                "line {} is not normalised to top self-pairing 1",
                t + 1
            )));
        }
    }
    let mut z = Mat::zero(n, n);
    let mut col = 0;
    for (t, v) in lines.iter().enumerate() {
        let pt = i64::from(p.part(t + 1));
        for i in 0..=2 * pt - 2 {
            let zi = table[&(2 * i - 2 * pt)].apply(v);
            for (row, &entry) in zi.iter().enumerate() {
                z.set(row, col, entry);
            }
            col += 1;
        }
    }
    if z.rank(f) < n {
        return Err(Error::Incompatible(
            "canonical basis vectors are not independent".into(),
        ));
    }
    Ok(z)
}

/// Given two elements sharing the same flag pair and Jordan data, the
/// transport matrix `T` with `T z = z~` columnwise.  It conjugates one
/// element to the other and fixes both flags; both facts are rechecked.
pub fn rigidity_transport(
    g: &SemilinearElement,
    g_tilde: &SemilinearElement,
    p: &Partition,
    flag: &Flag,
) -> Result<Mat> {
    let f = g.field();
    let (lines, _) = flag_to_lines(g, p, flag)?;
    let (lines_t, _) = flag_to_lines(g_tilde, p, flag)?;
    let z = canonical_basis(g, p, &lines)?;
    let zt = canonical_basis(g_tilde, p, &lines_t)?;
    let t = zt.mul(&z.inverse(f)?, f);
    // Transport identity: conjugating g~ by T^{-1} must give g.
    let conj = g_tilde.conjugate_by(&t.inverse(f)?)?;
    if conj != *g {
        return Err(Error::Incompatible(
            "transport matrix does not conjugate the elements".into(),
        ));
    }
    for i in 0..=flag.n() {
        if flag.step(i).apply_matrix(&t, f) != *flag.step(i) {
            return Err(Error::Incompatible(format!(
                "transport matrix moves flag step {i}"
            )));
        }
    }
    Ok(t)
}

/// Brute-force transitivity check: the number of orbits (and the number of
/// states) of the simultaneous congruence-and-flag action on pairs
/// `(A, V)` where the cosquare of `A` has Jordan type `2p_i - 1` and
/// `(V, A·V)` is in relative position `z`.
pub fn transitivity_orbits(
    p: &Partition,
    f: &std::sync::Arc<Field>,
    bounds: &Bounds,
) -> Result<(usize, usize)> {
    let n = z_perm_degree(p);
    let scan = (u64::from(f.size())).checked_pow((n * n) as u32);
    bounds.check("matrix scan", scan.unwrap_or(u64::MAX), bounds.max_group)?;
    let target: Partition =
        Partition::new(p.parts().iter().map(|&x| 2 * x - 1).collect()).unwrap();
    let w = z_perm(p);
    let flags = enumerate_flags(n, f, bounds)?;
    let flag_index: HashMap<Flag, usize> =
        flags.iter().cloned().enumerate().map(|(i, fl)| (fl, i)).collect();

    // Collect all states (A, flag) with the right cosquare type and
    // relative position.
    let mut states: Vec<(Mat, usize)> = Vec::new();
    let mut state_index: HashMap<(Mat, usize), usize> = HashMap::new();
    for a in all_matrices(n, f) {
        if a.rank(f) < n {
            continue;
        }
        let g = SemilinearElement::new(std::sync::Arc::clone(f), 0, 1, a.clone())?;
        let phi = g.cosquare();
        match crate::semilinear::jordan_type(phi.matrix(), f) {
            Ok(t) if t == target => {}
            _ => continue,
        }
        for (vi, v) in flags.iter().enumerate() {
            if relative_position(v, &g_dot_flag(&g, v), f) == w {
                state_index.insert((a.clone(), vi), states.len());
                states.push((a.clone(), vi));
            }
        }
    }

    let gens = gl_generators(n, f);
    let mut seen = vec![false; states.len()];
    let mut orbits = 0;
    for start in 0..states.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(s) = stack.pop() {
            let (a, vi) = states[s].clone();
            let g = SemilinearElement::new(std::sync::Arc::clone(f), 0, 1, a)?;
            for x in &gens {
                let a2 = g.conjugate_by(x)?.matrix().clone();
                let v2 = Flag::new(
                    flags[vi]
                        .steps()
                        .iter()
                        .map(|st| st.apply_matrix(x, f))
                        .collect(),
                )?;
                let key = (a2, flag_index[&v2]);
                let idx = *state_index
                    .get(&key)
                    .expect("the action preserves the state set");
                if !seen[idx] {
                    seen[idx] = true;
                    stack.push(idx);
                }
            }
        }
    }
    Ok((orbits, states.len()))
}

/// Iterator over every `n x n` matrix over `f`.
pub fn all_matrices(n: usize, f: &Field) -> impl Iterator<Item = Mat> + '_ {
    let size = u64::from(f.size());
    let cells = n * n;
    let total = size.pow(cells as u32);
    (0..total).map(move |code| {
        let mut m = Mat::zero(n, n);
        let mut c = code;
        for r in 0..n {
            for col in 0..n {
                m.set(r, col, (c % size) as Fe);
                c /= size;
            }
        }
        m
    })
}

/// Generators of `GL_n(F)`: transvections over a prime-field basis and one
/// diagonal scalar on the first coordinate.
pub fn gl_generators(n: usize, f: &Field) -> Vec<Mat> {
    let mut gens = Vec::new();
    let alpha = f.multiplicative_generator();
    // Powers of the generator forming a prime-field basis.
    let basis: Vec<Fe> = (0..f.m())
        .scan(f.one(), |acc, _| {
            let out = *acc;
            *acc = f.mul(*acc, alpha);
            Some(out)
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &b in &basis {
                let mut e = Mat::identity(n);
                e.set(i, j, b);
                gens.push(e);
            }
        }
    }
    let mut d = Mat::identity(n);
    d.set(0, 0, alpha);
    gens.push(d);
    gens
}

/// Point counts of the unitary Deligne–Lusztig-style variety for shape
/// `p` over the field with `char^(2 * q_exp * m)` elements, in all three
/// models, together with the scalar-group order and fiber diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DlReport {
    pub flag_points: u64,
    pub line_points: u64,
    pub vector_points: u64,
    pub lambda_order: u64,
    /// Distinct line sequences under the image of the vector model.
    pub image_points: u64,
    /// Whether every orbit of the scalar group on vector tuples has full
    /// size (freeness over this field).
    pub free: bool,
    /// Whether the vector model covers the whole line model over this
    /// field.
    pub surjective: bool,
}

/// The hermitian model element: identity matrix, Frobenius twist `q_exp`,
/// over the field with `char^(2 * q_exp * m)` elements.
pub fn hermitian_g(
    char_p: u32,
    q_exp: u32,
    m: u32,
    n: usize,
) -> Result<SemilinearElement> {
    assert!(q_exp >= 1, "the hermitian model needs a genuine Frobenius");
    let f = Field::new(char_p, 2 * q_exp * m)?;
    SemilinearElement::new(f, q_exp, 1, Mat::identity(n))
}

fn all_vectors(n: usize, f: &Field) -> Vec<Vec<Fe>> {
    let size = u64::from(f.size());
    let total = size.pow(n as u32);
    (0..total)
        .map(|code| {
            let mut v = vec![0; n];
            let mut c = code;
            for slot in v.iter_mut() {
                *slot = (c % size) as Fe;
                c /= size;
            }
            v
        })
        .collect()
}

/// Count the unitary variety for shape `p` in the flag, line, and vector
/// models over the field with `char^(2 * q_exp * m)` elements.
pub fn count_dl(
    p: &Partition,
    char_p: u32,
    q_exp: u32,
    m: u32,
    bounds: &Bounds,
) -> Result<DlReport> {
    let n = z_perm_degree(p);
    let g = hermitian_g(char_p, q_exp, m, n)?;
    let f = std::sync::Arc::clone(g.field());
    let flag_points = enumerate_x_g(&g, p, bounds)?.len() as u64;
    let lines = enumerate_s_g(&g, p, bounds)?;
    let line_points = lines.len() as u64;

    // Vector model: one vector per part; the pairing with the 2h+1-st star
    // power realises the hermitian pairing against the h-th Frobenius
    // twist.
    let vectors = all_vectors(n, &f);
    let states = (vectors.len() as u64).checked_pow(p.len() as u32);
    bounds.check("vector tuples", states.unwrap_or(u64::MAX), bounds.max_flags)?;
    let table = star_power_table(&g, 2 * i64::from(p.part(1)));
    let mut tuples: Vec<LineSequence> = Vec::new();
    let mut prefix: LineSequence = Vec::new();
    fn rec(
        p: &Partition,
        table: &HashMap<i64, SemilinearElement>,
        f: &Field,
        vectors: &[Vec<Fe>],
        prefix: &mut LineSequence,
        out: &mut Vec<LineSequence>,
    ) {
        let r = prefix.len();
        if r == p.len() {
            out.push(prefix.clone());
            return;
        }
        'next: for v in vectors {
            let pr = i64::from(p.part(r + 1));
            for (t, vt) in prefix.iter().enumerate() {
                let pt = i64::from(p.part(t + 1));
                for h in -pt..=pt - 2 {
                    if pair_power(table, 2 * h + 1, v, vt, f) != 0 {
                        continue 'next;
                    }
                }
            }
            for h in -pr + 1..=pr - 2 {
                if pair_power(table, 2 * h + 1, v, v, f) != 0 {
                    continue 'next;
                }
            }
            if pair_power(table, 2 * pr - 1, v, v, f) != f.one() {
                continue;
            }
            prefix.push(v.clone());
            rec(p, table, f, vectors, prefix, out);
            prefix.pop();
        }
    }
    rec(p, &table, &f, &vectors, &mut prefix, &mut tuples);
    let vector_points = tuples.len() as u64;

    // Scalar group: per part, roots of unity of order dividing
    // q^(2p_r - 1) + 1 present in the field.
    let group = u64::from(f.size()) - 1;
    let q = u64::from(f.p()).pow(q_exp);
    let mut lambda_order = 1u64;
    for &part in p.parts() {
        let d = q.pow(2 * part - 1) + 1;
        lambda_order *= gcd(d, group);
    }

    // Project tuples to leading-one line representatives; freeness of the
    // scalar action is checked orbit by orbit: every fiber of the
    // projection must have exactly `lambda_order` tuples.
    let mut fibers: HashMap<LineSequence, u64> = HashMap::new();
    for tup in &tuples {
        let proj: LineSequence = tup
            .iter()
            .map(|v| {
                let lead = v.iter().position(|&x| x != 0).expect("nonzero vector");
                let inv = f.inv(v[lead]);
                v.iter().map(|&x| f.mul(inv, x)).collect()
            })
            .collect();
        *fibers.entry(proj).or_default() += 1;
    }
    let image_points = fibers.len() as u64;
    let free = fibers.values().all(|&count| count == lambda_order);
    let surjective = image_points == line_points;

    Ok(DlReport {
        flag_points,
        line_points,
        vector_points,
        lambda_order,
        image_points,
        free,
        surjective,
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}
