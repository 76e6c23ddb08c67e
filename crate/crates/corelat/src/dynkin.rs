//! Registry of affine Dynkin types: marks, comarks, Coxeter number and an explicit
//! realisation of the simple roots and of the lattices `M` and `L`.
//!
//! Realisations that involve `sqrt(2)` are stored as rational coordinates `c` with the
//! true vector equal to `sigma * c`, `sigma^2 = scale_sq`. Every inner product is
//! multiplied by `scale_sq`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, q, qf, Matrix, Vector, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineTypeId {
    pub family: Family,
    pub rank_label: u32,
    pub twist: u8,
}

impl AffineTypeId {
    pub const fn new(family: Family, rank_label: u32, twist: u8) -> Self {
        AffineTypeId { family, rank_label, twist }
    }

    /// Number of finite simple roots, or `None` if the triple is not a registry row.
    pub fn finite_rank(&self) -> Option<usize> {
        row_rank(*self, false)
    }
}

impl fmt::Display for AffineTypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}_{}", self.family.letter(), self.rank_label, self.twist)
    }
}

impl AffineTypeId {
    /// Parses like [`FromStr`] but also accepts the low ranks `B2_1` and `A3_2`.
    pub fn parse_low_rank(s: &str) -> Result<Self> {
        let id = parse_id(s)?;
        row_rank(id, true).ok_or_else(|| Error::UnknownType(s.to_string()))?;
        Ok(id)
    }
}

impl FromStr for AffineTypeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let id = parse_id(s)?;
        id.finite_rank().ok_or_else(|| Error::UnknownType(s.to_string()))?;
        Ok(id)
    }
}

fn parse_id(s: &str) -> Result<AffineTypeId> {
    {
        let bad = || Error::UnknownType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(bad)? {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let (rank, twist) = chars.as_str().split_once('_').ok_or_else(bad)?;
        let rank_label: u32 = rank.parse().map_err(|_| bad())?;
        let twist: u8 = twist.parse().map_err(|_| bad())?;
        Ok(AffineTypeId { family, rank_label, twist })
    }
}

impl Serialize for AffineTypeId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AffineTypeId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Finite rank of a registry row. With `low_rank` the classical families also accept
/// the degenerate ranks just below the table minimum (`B_2`, `A_3^(2)`), which only
/// the hyperoctahedral families use.
fn row_rank(id: AffineTypeId, low_rank: bool) -> Option<usize> {
    let l = id.rank_label as usize;
    let n = match (id.family, id.twist) {
        (Family::A, 1) if l >= 1 => l,
        (Family::B, 1) if l >= 3 || (low_rank && l == 2) => l,
        (Family::C, 1) if l >= 2 => l,
        (Family::D, 1) if l >= 4 => l,
        (Family::E, 1) if (6..=8).contains(&l) => l,
        (Family::F, 1) if l == 4 => 4,
        (Family::G, 1) if l == 2 => 2,
        (Family::A, 2) if l == 2 => 1,
        (Family::A, 2) if l >= 4 && l.is_multiple_of(2) => l / 2,
        (Family::A, 2) if l % 2 == 1 && (l >= 5 || (low_rank && l == 3)) => l.div_ceil(2),
        (Family::D, 2) if l >= 3 => l - 1,
        (Family::E, 2) if l == 6 => 4,
        (Family::D, 3) if l == 4 => 2,
        _ => return None,
    };
    Some(n)
}

/// All registry rows whose finite rank is at most `max_rank`.
pub fn all_types(max_rank: usize) -> Vec<AffineTypeId> {
    let mut out = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
        for twist in 1..=3u8 {
            for label in 1..=(2 * max_rank as u32 + 2) {
                let id = AffineTypeId::new(family, label, twist);
                if id.finite_rank().is_some_and(|n| n <= max_rank) {
                    out.push(id);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Lattice {
    M,
    L,
}

impl FromStr for Lattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" => Ok(Lattice::M),
            "L" => Ok(Lattice::L),
            _ => Err(Error::Parse(format!("unknown lattice {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TypeData {
    pub id: AffineTypeId,
    pub n: usize,
    /// `a_0, ..., a_n`
    pub marks: Vec<u32>,
    /// `a_0^v, ..., a_n^v`
    pub comarks: Vec<u32>,
    pub h: u32,
    pub ambient_dim: usize,
    pub scale_sq: u32,
    pub simple_roots: Vec<Vector>,
    pub m_basis: Vec<Vector>,
    /// Basis of `L`; `None` where the registry does not describe `L`.
    pub l_generators: Option<Vec<Vector>>,
    /// Indices `j >= 1` with `a_j = 1`.
    pub j: Vec<usize>,
    fundamental_weights: Vec<Vector>,
    root_gram_inv: Matrix,
}

pub fn lookup_type(id: AffineTypeId) -> Result<TypeData> {
    build(id, false)
}

pub fn lookup(s: &str) -> Result<TypeData> {
    lookup_type(s.parse()?)
}

/// Like [`lookup_type`] but also accepts `B2_1` and `A3_2`, built from the same
/// pattern as the higher ranks of their families.
pub fn lookup_low_rank(id: AffineTypeId) -> Result<TypeData> {
    build(id, true)
}

fn unit(dim: usize, i: usize) -> Vector {
    let mut v = linalg::zeros(dim);
    v[i] = q(1);
    v
}

fn diff(dim: usize, i: usize, j: usize) -> Vector {
    let mut v = linalg::zeros(dim);
    v[i] = q(1);
    v[j] = q(-1);
    v
}

fn classical_chain(n: usize) -> Vec<Vector> {
    (0..n - 1).map(|i| diff(n, i, i + 1)).collect()
}

fn build(id: AffineTypeId, low_rank: bool) -> Result<TypeData> {
    let n = row_rank(id, low_rank).ok_or_else(|| Error::UnknownType(id.to_string()))?;
    let twos = |k: usize| vec![2u32; k];
    let cat = |parts: &[&[u32]]| parts.concat();

    let (marks, comarks, dim, scale_sq, roots, m_basis): (Vec<u32>, Vec<u32>, usize, u32, Vec<Vector>, Vec<Vector>) =
        match (id.family, id.twist, id.rank_label) {
            (Family::A, 1, _) => {
                let roots: Vec<Vector> = (0..n).map(|i| diff(n + 1, i, i + 1)).collect();
                (vec![1; n + 1], vec![1; n + 1], n + 1, 1, roots.clone(), roots)
            }
            (Family::B, 1, _) => {
                let mut roots = classical_chain(n);
                roots.push(unit(n, n - 1));
                let mut m = classical_chain(n);
                m.push(linalg::scale(&q(2), &unit(n, n - 1)));
                let marks = cat(&[&[1, 1], &twos(n - 1)]);
                let comarks = cat(&[&[1, 1], &twos(n - 2), &[1]]);
                (marks, comarks, n, 1, roots, m)
            }
            (Family::C, 1, _) => {
                let mut roots: Vec<Vector> =
                    classical_chain(n).into_iter().map(|v| linalg::scale(&qf(1, 2), &v)).collect();
                roots.push(unit(n, n - 1));
                let m = (0..n).map(|i| unit(n, i)).collect();
                let marks = cat(&[&[1], &twos(n - 1), &[1]]);
                (marks, vec![1; n + 1], n, 2, roots, m)
            }
            (Family::D, 1, _) => {
                let mut roots = classical_chain(n);
                let mut last = linalg::zeros(n);
                last[n - 2] = q(1);
                last[n - 1] = q(1);
                roots.push(last);
                let marks = cat(&[&[1, 1], &twos(n - 3), &[1, 1]]);
                (marks.clone(), marks, n, 1, roots.clone(), roots)
            }
            (Family::E, 1, _) => {
                let mut roots: Vec<Vector> = (0..n - 2).map(|i| diff(8, i, i + 1)).collect();
                let mut fork = linalg::zeros(8);
                fork[n - 3] = q(1);
                fork[n - 2] = q(1);
                roots.push(fork);
                roots.push(vec![qf(-1, 2); 8]);
                let marks: Vec<u32> = match n {
                    6 => vec![1, 1, 2, 3, 2, 2, 1],
                    7 => vec![1, 1, 2, 3, 4, 2, 3, 2],
                    _ => vec![1, 2, 3, 4, 5, 6, 3, 4, 2],
                };
                (marks.clone(), marks, 8, 1, roots.clone(), roots)
            }
            (Family::F, 1, _) => {
                let roots = vec![
                    diff(4, 0, 1),
                    diff(4, 1, 2),
                    unit(4, 2),
                    vec![qf(-1, 2), qf(-1, 2), qf(-1, 2), qf(1, 2)],
                ];
                let m = vec![
                    roots[0].clone(),
                    roots[1].clone(),
                    linalg::scale(&q(2), &roots[2]),
                    linalg::scale(&q(2), &roots[3]),
                ];
                (vec![1, 2, 3, 4, 2], vec![1, 2, 3, 2, 1], 4, 1, roots, m)
            }
            (Family::G, 1, _) => {
                let roots = vec![diff(3, 0, 1), vec![qf(-2, 3), qf(1, 3), qf(1, 3)]];
                let m = vec![roots[0].clone(), linalg::qvec(&[-2, 1, 1])];
                (vec![1, 2, 3], vec![1, 2, 1], 3, 1, roots, m)
            }
            (Family::A, 2, 2) => {
                let roots = vec![linalg::qvec(&[1, -1])];
                let m = vec![vec![qf(1, 2), qf(-1, 2)]];
                (vec![2, 1], vec![1, 2], 2, 2, roots, m)
            }
            (Family::A, 2, l) if l % 2 == 0 => {
                let mut roots = classical_chain(n);
                roots.push(linalg::scale(&q(2), &unit(n, n - 1)));
                let mut m = classical_chain(n);
                m.push(unit(n, n - 1));
                let marks = cat(&[&twos(n), &[1]]);
                let comarks = cat(&[&[1], &twos(n)]);
                (marks, comarks, n, 1, roots, m)
            }
            (Family::A, 2, _) => {
                let mut roots = classical_chain(n);
                roots.push(linalg::scale(&q(2), &unit(n, n - 1)));
                let marks = cat(&[&[1, 1], &twos(n - 2), &[1]]);
                let comarks = cat(&[&[1, 1], &twos(n - 1)]);
                (marks, comarks, n, 1, roots.clone(), roots)
            }
            (Family::D, 2, _) => {
                let mut roots = classical_chain(n);
                roots.push(unit(n, n - 1));
                let m = (0..n).map(|i| unit(n, i)).collect();
                let comarks = cat(&[&[1], &twos(n - 1), &[1]]);
                (vec![1; n + 1], comarks, n, 2, roots, m)
            }
            (Family::E, 2, _) => {
                let roots = vec![
                    diff(4, 0, 1),
                    diff(4, 1, 2),
                    linalg::scale(&q(2), &unit(4, 2)),
                    linalg::qvec(&[-1, -1, -1, 1]),
                ];
                (vec![1, 2, 3, 2, 1], vec![1, 2, 3, 4, 2], 4, 1, roots.clone(), roots)
            }
            (Family::D, 3, _) => {
                let roots = vec![diff(3, 0, 1), linalg::qvec(&[-2, 1, 1])];
                (vec![1, 2, 1], vec![1, 2, 3], 3, 1, roots.clone(), roots)
            }
            _ => return Err(Error::UnknownType(id.to_string())),
        };

    let h = marks.iter().sum();
    let j = (1..=n).filter(|&i| marks[i] == 1).collect();
    let mut t = TypeData {
        id,
        n,
        marks,
        comarks,
        h,
        ambient_dim: dim,
        scale_sq,
        simple_roots: roots,
        m_basis,
        l_generators: None,
        j,
        fundamental_weights: Vec::new(),
        root_gram_inv: Vec::new(),
    };
    let g = t.root_gram();
    t.root_gram_inv = linalg::inverse(&g)
        .ok_or_else(|| Error::InternalInconsistency(format!("singular Gram matrix for {id}")))?;
    t.fundamental_weights = (0..n)
        .map(|i| {
            // 2 (w_i | a_j) / |a_j|^2 = delta_ij, i.e. (w_i | a_j) = delta_ij |a_i|^2 / 2
            let rhs: Vector =
                (0..n).map(|j| if i == j { &g[i][i] / q(2) } else { Q::zero() }).collect();
            let c = linalg::mat_vec(&t.root_gram_inv, &rhs);
            linalg::combine(&c, &t.simple_roots)
        })
        .collect();
    if id.twist == 1 {
        // dual lattice of the root lattice, spanned by the coweights 2 w_i / |a_i|^2
        let cow = (0..n)
            .map(|i| linalg::scale(&(q(2) / &g[i][i]), &t.fundamental_weights[i]))
            .collect();
        t.l_generators = Some(cow);
    }
    Ok(t)
}

impl TypeData {
    pub fn inner(&self, x: &[Q], y: &[Q]) -> Q {
        linalg::dot(x, y) * q(self.scale_sq as i64)
    }

    pub fn norm_sq(&self, x: &[Q]) -> Q {
        self.inner(x, x)
    }

    /// Gram matrix of the simple roots, including the scale factor.
    pub fn root_gram(&self) -> Matrix {
        self.simple_roots
            .iter()
            .map(|a| self.simple_roots.iter().map(|b| self.inner(a, b)).collect())
            .collect()
    }

    /// Coefficients `c` with `v = sum c_i alpha_i`.
    pub fn simple_root_coefficients(&self, v: &[Q]) -> Result<Vector> {
        if v.len() != self.ambient_dim {
            return Err(Error::NotInRootSpan);
        }
        let rhs: Vector = self.simple_roots.iter().map(|a| self.inner(a, v)).collect();
        let c = linalg::mat_vec(&self.root_gram_inv, &rhs);
        if linalg::combine(&c, &self.simple_roots) != v {
            return Err(Error::NotInRootSpan);
        }
        Ok(c)
    }

    pub fn fundamental_weights(&self) -> &[Vector] {
        &self.fundamental_weights
    }

    /// `w_i` for `1 <= i <= n`, and the zero vector for `i = 0`.
    pub fn omega(&self, i: usize) -> Result<Vector> {
        match i {
            0 => Ok(linalg::zeros(self.ambient_dim)),
            i if i <= self.n => Ok(self.fundamental_weights[i - 1].clone()),
            i => Err(Error::BadIndex(i)),
        }
    }

    pub fn lattice_basis(&self, lattice: Lattice) -> Result<&[Vector]> {
        match lattice {
            Lattice::M => Ok(&self.m_basis),
            Lattice::L => self
                .l_generators
                .as_deref()
                .ok_or_else(|| Error::UnsupportedLattice(self.id.to_string())),
        }
    }

    /// Coefficients of `v` in the basis of `lattice`, if `v` is in its rational span.
    pub fn lattice_coefficients(&self, lattice: Lattice, v: &[Q]) -> Result<Option<Vector>> {
        Ok(linalg::coordinates(self.lattice_basis(lattice)?, v))
    }

    pub fn contains(&self, lattice: Lattice, v: &[Q]) -> Result<bool> {
        Ok(self
            .lattice_coefficients(lattice, v)?
            .is_some_and(|c| c.iter().all(linalg::is_integral)))
    }

    /// Index `[L : M]`, computed from covolumes.
    pub fn fundamental_group_order(&self) -> Result<u64> {
        let m = linalg::det(&linalg::gram(&self.m_basis));
        let l = linalg::det(&linalg::gram(self.lattice_basis(Lattice::L)?));
        let ratio = m / l;
        let r = linalg::to_i64(&ratio)?;
        let s = linalg::isqrt_u64(r as u64);
        if s * s != r as u64 {
            return Err(Error::InternalInconsistency("covolume ratio is not a square".into()));
        }
        Ok(s)
    }

    /// Highest root `theta = sum_{i>=1} a_i alpha_i`.
    pub fn theta(&self) -> Vector {
        let c: Vector = self.marks[1..].iter().map(|&a| q(a as i64)).collect();
        linalg::combine(&c, &self.simple_roots)
    }

    pub fn is_untwisted(&self) -> bool {
        self.id.twist == 1
    }
}

/// `2 a_i^v / a_i`, the squared norm every simple root must have.
pub fn expected_root_norm(t: &TypeData, i: usize) -> Q {
    qf(2 * t.comarks[i] as i64, t.marks[i] as i64)
}

pub fn is_positive_definite(m: &[Vector]) -> bool {
    linalg::ldl(m).is_some_and(|(d, _)| d.iter().all(|x| x.is_positive()))
}

/// Level `a_i^v / a_0^v` of the fundamental weight `Lambda_i`.
pub fn level(t: &TypeData, i: usize) -> Q {
    qf(t.comarks[i] as i64, t.comarks[0] as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> AffineTypeId {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_prints_identifiers() {
        for s in ["A2_1", "C2_1", "D3_2", "A4_2", "G2_1", "D4_3", "A2_2", "A5_2", "E6_2", "E8_1"] {
            assert_eq!(id(s).to_string(), s);
        }
        for s in ["A0_1", "B2_1", "C1_1", "D3_1", "A3_2", "E5_1", "G3_1", "D4_2x", "X2_1", "A2"] {
            assert!(s.parse::<AffineTypeId>().is_err(), "{s}");
        }
    }

    #[test]
    fn a2_row() {
        let t = lookup("A2_1").unwrap();
        assert_eq!(t.h, 3);
        assert_eq!(t.marks, vec![1, 1, 1]);
        assert_eq!(t.comarks, vec![1, 1, 1]);
        assert_eq!(t.scale_sq, 1);
        assert_eq!(t.simple_roots[0], linalg::qvec(&[1, -1, 0]));
        assert_eq!(t.simple_roots[1], linalg::qvec(&[0, 1, -1]));
    }

    #[test]
    fn c2_row() {
        let t = lookup("C2_1").unwrap();
        assert_eq!(t.h, 4);
        assert_eq!(t.marks, vec![1, 2, 1]);
        assert_eq!(t.comarks, vec![1, 1, 1]);
        assert_eq!(t.scale_sq, 2);
        assert_eq!(t.simple_roots[0], vec![qf(1, 2), qf(-1, 2)]);
        assert_eq!(t.simple_roots[1], linalg::qvec(&[0, 1]));
        assert_eq!(t.j, vec![2]);
    }

    #[test]
    fn d43_row() {
        let t = lookup("D4_3").unwrap();
        assert_eq!(t.h, 4);
        assert_eq!(t.marks, vec![1, 2, 1]);
        assert_eq!(t.comarks, vec![1, 2, 3]);
        assert_eq!(t.simple_roots[1], linalg::qvec(&[-2, 1, 1]));
    }

    #[test]
    fn root_coefficients() {
        let a2 = lookup("A2_1").unwrap();
        assert_eq!(a2.simple_root_coefficients(&linalg::qvec(&[1, 0, -1])).unwrap(), linalg::qvec(&[1, 1]));
        let c2 = lookup("C2_1").unwrap();
        assert_eq!(c2.simple_root_coefficients(&linalg::qvec(&[1, 0])).unwrap(), linalg::qvec(&[2, 1]));
        let a42 = lookup("A4_2").unwrap();
        assert_eq!(a42.simple_root_coefficients(&linalg::qvec(&[1, 0])).unwrap(), vec![q(1), qf(1, 2)]);
        assert_eq!(a2.simple_root_coefficients(&linalg::qvec(&[1, 0, 0])), Err(Error::NotInRootSpan));
    }

    #[test]
    fn fundamental_weight_examples() {
        let a2 = lookup("A2_1").unwrap();
        let w1 = a2.omega(1).unwrap();
        assert_eq!(a2.simple_root_coefficients(&w1).unwrap(), vec![qf(2, 3), qf(1, 3)]);
        let a3 = lookup("A3_1").unwrap();
        let w2 = a3.omega(2).unwrap();
        assert_eq!(a3.simple_root_coefficients(&w2).unwrap(), vec![qf(1, 2), q(1), qf(1, 2)]);
        for n in 2..=5 {
            let c = lookup_type(AffineTypeId::new(Family::C, n, 1)).unwrap();
            for i in 1..=n as usize {
                let expect: Vector =
                    (0..n as usize).map(|k| if k < i { qf(1, 2) } else { q(0) }).collect();
                assert_eq!(c.omega(i).unwrap(), expect);
            }
        }
    }

    #[test]
    fn every_row_is_consistent() {
        for tid in all_types(8) {
            let t = lookup_type(tid).unwrap();
            assert_eq!(t.marks.len(), t.n + 1, "{tid}");
            assert_eq!(t.h, t.marks.iter().sum::<u32>(), "{tid}");
            for i in 1..=t.n {
                assert_eq!(t.norm_sq(&t.simple_roots[i - 1]), expected_root_norm(&t, i), "{tid} root {i}");
            }
            let ht: Q = t.simple_root_coefficients(&t.theta()).unwrap().iter().sum();
            assert_eq!(ht, q((t.h - t.marks[0]) as i64), "{tid}");
            assert_eq!(t.m_basis.len(), t.n, "{tid}");
            for b in &t.m_basis {
                t.simple_root_coefficients(b).unwrap();
            }
            assert!(is_positive_definite(&t.root_gram()), "{tid}");
            // dual basis property of the fundamental weights
            for i in 1..=t.n {
                let w = t.omega(i).unwrap();
                for j in 1..=t.n {
                    let a = &t.simple_roots[j - 1];
                    let v = q(2) * t.inner(&w, a) / t.norm_sq(a);
                    assert_eq!(v, if i == j { q(1) } else { q(0) }, "{tid} w{i} a{j}");
                }
            }
        }
    }

    #[test]
    fn fundamental_group_orders() {
        for n in 1..=6u32 {
            let a = lookup_type(AffineTypeId::new(Family::A, n, 1)).unwrap();
            assert_eq!(a.fundamental_group_order().unwrap(), n as u64 + 1);
        }
        for n in 2..=6u32 {
            let c = lookup_type(AffineTypeId::new(Family::C, n, 1)).unwrap();
            assert_eq!(c.fundamental_group_order().unwrap(), 2);
        }
        let expected = [("B3_1", 2), ("D4_1", 4), ("D5_1", 4), ("E6_1", 3), ("E7_1", 2), ("E8_1", 1), ("F4_1", 1), ("G2_1", 1)];
        for (s, k) in expected {
            assert_eq!(lookup(s).unwrap().fundamental_group_order().unwrap(), k, "{s}");
        }
        assert!(matches!(lookup("D3_2").unwrap().fundamental_group_order(), Err(Error::UnsupportedLattice(_))));
    }

    #[test]
    fn j_sets() {
        for n in 1..=5u32 {
            let a = lookup_type(AffineTypeId::new(Family::A, n, 1)).unwrap();
            assert_eq!(a.j, (1..=n as usize).collect::<Vec<_>>());
            if n >= 2 {
                let c = lookup_type(AffineTypeId::new(Family::C, n, 1)).unwrap();
                assert_eq!(c.j, vec![n as usize]);
            }
        }
    }

    #[test]
    fn low_rank_rows_follow_the_pattern() {
        let b2 = lookup_low_rank(id_unchecked(Family::B, 2, 1)).unwrap();
        assert_eq!((b2.h, b2.marks.clone(), b2.comarks.clone()), (4, vec![1, 1, 2], vec![1, 1, 1]));
        let a3 = lookup_low_rank(id_unchecked(Family::A, 3, 2)).unwrap();
        assert_eq!((a3.h, a3.marks.clone(), a3.comarks.clone()), (3, vec![1, 1, 1], vec![1, 1, 2]));
        for t in [b2, a3] {
            for i in 1..=t.n {
                assert_eq!(t.norm_sq(&t.simple_roots[i - 1]), expected_root_norm(&t, i));
            }
        }
    }

    fn id_unchecked(f: Family, l: u32, tw: u8) -> AffineTypeId {
        AffineTypeId::new(f, l, tw)
    }
}
