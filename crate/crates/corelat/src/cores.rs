//! Partitions, hooks and residues, the abacus/charge correspondence for `d`-cores,
//! self-conjugate cores, bar cores and the `D4 flat` model.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::atomic;
use crate::dynkin::{self, AffineTypeId, Family};
use crate::error::{Error, Result};
use crate::linalg::{self, qf, Q};

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("not a partition: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Drops zero parts and sorts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        Partition((1..=w).map(|c| self.0.iter().take_while(|&&p| p >= c).count()).collect())
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Number of boxes `(i, i)` on the main diagonal.
    pub fn diagonal_boxes(&self) -> usize {
        self.0.iter().enumerate().take_while(|(i, &p)| p > *i).count()
    }

    /// Boxes `(row, col)`, 0-based.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(r, &p)| (0..p).map(move |c| (r, c)))
    }

    /// Hook lengths of all boxes, row by row.
    pub fn hooks(&self) -> Vec<(usize, usize, usize)> {
        let conj = self.conjugate();
        self.boxes()
            .map(|(r, c)| (r, c, self.part(r) - c + conj.part(c) - r - 1))
            .collect()
    }

    /// Frobenius coordinates `(a | b)`.
    pub fn frobenius(&self) -> (Vec<usize>, Vec<usize>) {
        let conj = self.conjugate();
        let d = self.diagonal_boxes();
        ((0..d).map(|k| self.part(k) - k - 1).collect(), (0..d).map(|k| conj.part(k) - k - 1).collect())
    }

    /// Partition with Frobenius coordinates `(a | b)`; both strictly decreasing.
    pub fn from_frobenius(a: &[usize], b: &[usize]) -> Result<Partition> {
        let strict = |v: &[usize]| v.windows(2).all(|w| w[0] > w[1]);
        if a.len() != b.len() || !strict(a) || !strict(b) {
            return Err(Error::Parse("invalid Frobenius coordinates".into()));
        }
        let d = a.len();
        let mut parts: Vec<usize> = (0..d).map(|k| a[k] + k + 1).collect();
        let mut row = d;
        loop {
            let len = (0..d).filter(|&k| b[k] + k >= row).count();
            if len == 0 {
                break;
            }
            parts.push(len);
            row += 1;
        }
        Ok(Partition(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Residue `c - r mod d` of box `(r, c)`.
pub fn residue(r: usize, c: usize, d: usize) -> usize {
    (c + d * (r / d + 1) - r) % d
}

pub fn residue_count(lambda: &Partition, d: usize, i: usize) -> usize {
    lambda.boxes().filter(|&(r, c)| residue(r, c, d) == i).count()
}

/// No hook of length exactly `d`.
pub fn is_d_core(lambda: &Partition, d: usize) -> bool {
    lambda.hooks().iter().all(|&(_, _, h)| h != d)
}

/// No hook length divisible by `d`; equivalent to [`is_d_core`].
pub fn has_no_hook_divisible_by(lambda: &Partition, d: usize) -> bool {
    lambda.hooks().iter().all(|&(_, _, h)| h % d != 0)
}

/// `d`-charge of a `d`-core: entry `j` is one plus the level of the last bead on
/// runner `j - 1`, with beads at the beta-numbers `lambda_k - k`.
pub fn charge_of_core(d: usize, lambda: &Partition) -> Result<Vec<i64>> {
    if !is_d_core(lambda, d) {
        return Err(Error::NotACore(d));
    }
    let m = lambda.len() + d;
    let di = d as i64;
    let mut top = vec![i64::MIN; d];
    for k in 1..=m {
        let b = lambda.part(k - 1) as i64 - k as i64;
        let runner = b.rem_euclid(di) as usize;
        top[runner] = top[runner].max(b.div_euclid(di));
    }
    Ok(top.into_iter().map(|l| l + 1).collect())
}

/// Inverse of [`charge_of_core`].
pub fn core_from_charge(d: usize, c: &[i64]) -> Result<Partition> {
    if c.len() != d || c.iter().sum::<i64>() != 0 {
        return Err(Error::BadCharge);
    }
    let di = d as i64;
    // every position below -floor is beaded on all runners
    let floor = di * (c.iter().map(|x| x.abs()).max().unwrap_or(0) + 2);
    let mut beads: Vec<i64> = Vec::new();
    for (j, &cj) in c.iter().enumerate() {
        let mut level = cj - 1;
        loop {
            let p = j as i64 + di * level;
            if p < -floor {
                break;
            }
            beads.push(p);
            level -= 1;
        }
    }
    beads.sort_unstable_by(|a, b| b.cmp(a));
    let parts = beads.iter().enumerate().map(|(k, &b)| (b + k as i64 + 1) as usize).collect();
    Ok(Partition::from_unsorted(parts))
}

/// `(d/2) sum c_i^2 + sum (i-1) c_i`, the size of the core with charge `c`.
pub fn core_size_from_charge(c: &[i64]) -> i64 {
    let d = c.len() as i64;
    let sq: i64 = c.iter().map(|x| x * x).sum();
    let lin: i64 = c.iter().enumerate().map(|(i, x)| i as i64 * x).sum();
    d * sq / 2 + lin
}

/// Size of the `(n+1)`-core with charge `beta`, in the classical form where the
/// quadratic part only involves the first `n` entries.
pub fn charge_vector_size(beta: &[i64]) -> i64 {
    let n = beta.len() as i64 - 1;
    let b = &beta[..beta.len() - 1];
    let mut quad: i64 = b.iter().map(|x| x * x).sum();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            quad += b[i] * b[j];
        }
    }
    let lin: i64 = beta.iter().enumerate().map(|(i, x)| i as i64 * x).sum();
    (n + 1) * quad + lin
}

/// All partitions of `n`, lexicographically sorted.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in 1..=max.min(rem) {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Self-conjugate partitions of `n`, built from distinct odd diagonal hooks.
pub fn self_conjugate_partitions(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max_hook: usize, hooks: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            let arms: Vec<usize> = hooks.iter().map(|h| (h - 1) / 2).collect();
            out.push(Partition::from_frobenius(&arms, &arms).expect("distinct hooks"));
            return;
        }
        let mut h = max_hook.min(rem);
        if h.is_multiple_of(2) {
            h = h.saturating_sub(1);
        }
        while h >= 1 {
            hooks.push(h);
            rec(rem - h, h.saturating_sub(2), hooks, out);
            hooks.pop();
            if h < 2 {
                break;
            }
            h -= 2;
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Partitions of `n` into distinct parts, lexicographically sorted.
pub fn strict_partitions(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `d`-cores of size exactly `n` via the lattice of `A_{d-1}^(1)`.
pub fn cores_of_size(d: usize, n: usize) -> Result<Vec<Partition>> {
    let t = dynkin::lookup_type(AffineTypeId::new(Family::A, d as u32 - 1, 1))?;
    let mut out = atomic::affine_grassmannian(&t, n as u64)?
        .iter()
        .map(|v| core_from_charge(d, &linalg::to_i64_vec(v)?))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Self-conjugate `d`-cores of size at most `max`, keyed by size. Their charges are
/// exactly the vectors with `c = -reverse(c)`, which are scanned in a box that
/// provably contains every such charge of size at most `max`.
pub fn self_conjugate_cores_up_to(d: usize, max: usize) -> BTreeMap<usize, Vec<Partition>> {
    let m = d / 2;
    // size = d sum c_i^2 + sum c_i (2i - 1 - d) over the first m entries
    let di = d as i64;
    let slack = max as i64 + (m as i64) * (di - 1) * (di - 1) / (4 * di) + 1;
    let mut r = 0i64;
    while di * (r + 1) * (r + 1) - (di - 1) * (r + 1) <= slack {
        r += 1;
    }
    let mut out: BTreeMap<usize, Vec<Partition>> = BTreeMap::new();
    let mut half = vec![-r; m];
    loop {
        let mut c = vec![0i64; d];
        for i in 0..m {
            c[i] = half[i];
            c[d - 1 - i] = -half[i];
        }
        let size = core_size_from_charge(&c);
        if size <= max as i64 {
            let lam = core_from_charge(d, &c).expect("balanced charge");
            out.entry(size as usize).or_default().push(lam);
        }
        let mut k = 0;
        while k < m && half[k] == r {
            half[k] = -r;
            k += 1;
        }
        if k == m {
            break;
        }
        half[k] += 1;
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionFilter {
    All,
    Core(usize),
    SelfConjugateCore(usize),
    /// Self-conjugate core with an even number of diagonal boxes.
    DiagEvenSelfConjugateCore(usize),
}

pub fn enumerate_partitions(n: usize, filter: PartitionFilter) -> Result<Vec<Partition>> {
    Ok(match filter {
        PartitionFilter::All => partitions_of(n),
        PartitionFilter::Core(d) => cores_of_size(d, n)?,
        PartitionFilter::SelfConjugateCore(d) => {
            self_conjugate_cores_up_to(d, n).remove(&n).unwrap_or_default()
        }
        PartitionFilter::DiagEvenSelfConjugateCore(d) => self_conjugate_cores_up_to(d, n)
            .remove(&n)
            .unwrap_or_default()
            .into_iter()
            .filter(|l| l.diagonal_boxes() % 2 == 0)
            .collect(),
    })
}

/// Residue-weighted size rules of the self-conjugate core models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SizeRule {
    C,
    Dt,
    Aeven,
    B,
    Aodd,
    D,
    G2,
    D43,
}

/// Weighted size of `lambda` with residues taken mod `2n` (`n = 3` for `G2`, `D43`).
pub fn weighted_size(rule: SizeRule, lambda: &Partition, n: usize) -> Q {
    let d = 2 * n;
    let all = lambda.size() as i64;
    let r = |i: usize| residue_count(lambda, d, i) as i64;
    match rule {
        SizeRule::C => qf(all, 1),
        SizeRule::Dt | SizeRule::B | SizeRule::G2 => qf(all - r(0) + r(n), 2),
        SizeRule::Aeven => qf(all + r(0), 1),
        SizeRule::Aodd => qf(all - r(0), 2),
        SizeRule::D | SizeRule::D43 => qf(all - r(0) - r(n), 2),
    }
}

/// Doubled distinct partition of a bar partition: Frobenius coordinates
/// `(lambda | lambda - 1)`.
pub fn doubled_distinct(bar: &Partition) -> Result<Partition> {
    let a = bar.parts().to_vec();
    if a.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Parse(format!("{bar} has repeated parts")));
    }
    let b: Vec<usize> = a.iter().map(|x| x - 1).collect();
    Partition::from_frobenius(&a, &b)
}

/// Inverse of [`doubled_distinct`], or `None` if the shape is not doubled distinct.
pub fn bar_from_doubled(lambda: &Partition) -> Option<Partition> {
    let (a, b) = lambda.frobenius();
    a.iter().zip(&b).all(|(x, y)| *x == y + 1).then_some(Partition(a))
}

/// Bar `(2n+2)`-core attached to `q` in the lattice `M` of `D_{n+1}^(2)`.
pub fn bar_core_from_lattice(n: usize, q: &[i64]) -> Result<Partition> {
    let mut charge = vec![0i64; 2 * n + 2];
    for i in 0..n {
        charge[i + 1] = q[i];
        charge[2 * n + 1 - i] = -q[i];
    }
    let doubled = core_from_charge(2 * n + 2, &charge)?;
    bar_from_doubled(&doubled)
        .ok_or_else(|| Error::InternalInconsistency(format!("{doubled} is not doubled distinct")))
}

/// Bar `d`-cores: bar partitions whose doubled distinct partition is a `d`-core.
pub fn is_bar_core(bar: &Partition, d: usize) -> bool {
    doubled_distinct(bar).is_ok_and(|l| is_d_core(&l, d))
}

/// `D4 flat` partition attached to `(q_1, q_2)` in the lattice `M` of `D_4^(3)`.
pub fn d4flat_from_lattice(q1: i64, q2: i64) -> Partition {
    let m2 = q1.unsigned_abs() as usize;
    let (m1, m_1) = if q2 <= 0 { (q2.unsigned_abs() as usize, 0) } else { (0, q2 as usize) };
    let s = q1 + q2;
    let m0 = if s >= 0 { s as usize } else { (-s - 1) as usize };
    let mut parts = Vec::new();
    for (first, count) in [(4, m0), (1, m1), (3, m_1), (2, m2)] {
        parts.extend((0..count).map(|k| first + 4 * k));
    }
    Partition::from_unsorted(parts)
}

/// Lattice points of `M` with `Lambda_0` length at most `max`, keyed by length.
fn lattice_points_up_to(id: AffineTypeId, max: usize) -> Result<BTreeMap<usize, Vec<Vec<i64>>>> {
    let t = dynkin::lookup_type(id)?;
    let w = atomic::DominantWeight::fundamental(&t, 0)?;
    let mut out = BTreeMap::new();
    for (len, vs) in atomic::enumerate_atomic_up_to(&t, &w, &qf(max as i64, 1), dynkin::Lattice::M)? {
        let len = linalg::to_i64(&len)? as usize;
        out.insert(len, vs.iter().map(|v| linalg::to_i64_vec(v)).collect::<Result<Vec<_>>>()?);
    }
    Ok(out)
}

/// `D_{2n+2}(N)` for `N <= max`: bar `(2n+2)`-cores with no part `n+1`, produced
/// from the lattice of `D_{n+1}^(2)` and keyed by size.
pub fn bar_cores_up_to(n: usize, max: usize) -> Result<BTreeMap<usize, Vec<Partition>>> {
    let mut out = BTreeMap::new();
    for (len, qs) in lattice_points_up_to(AffineTypeId::new(Family::D, n as u32 + 1, 2), max)? {
        let mut v = qs.iter().map(|q| bar_core_from_lattice(n, q)).collect::<Result<Vec<_>>>()?;
        v.sort();
        out.insert(len, v);
    }
    Ok(out)
}

/// `D4 flat(N)` for `N <= max`, produced from the lattice of `D_4^(3)`.
pub fn d4flat_up_to(max: usize) -> Result<BTreeMap<usize, Vec<Partition>>> {
    let mut out = BTreeMap::new();
    for (len, qs) in lattice_points_up_to(AffineTypeId::new(Family::D, 4, 3), max)? {
        let mut v: Vec<Partition> = qs.iter().map(|q| d4flat_from_lattice(q[0], q[1])).collect();
        v.sort();
        out.insert(len, v);
    }
    Ok(out)
}

/// Necessary condition for the `D4 flat` model: no hook of length 4 strictly below
/// the diagonal of the doubled distinct partition.
pub fn no_four_hook_below_diagonal(bar: &Partition) -> bool {
    doubled_distinct(bar).is_ok_and(|l| l.hooks().iter().all(|&(r, c, h)| c >= r || h != 4))
}
