//! Integer points of diagonal quadratic forms, finite group actions on them, and the
//! reduction of `x^2 + y^2 = k` to an odd square-free-like part through Gaussian
//! integers.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::isqrt_u64;

pub type Point = Vec<i64>;

/// `sum d_i x_i^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagonalForm(pub Vec<u64>);

impl DiagonalForm {
    pub fn new(coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.contains(&0) {
            return Err(Error::Parse("form coefficients must be positive".into()));
        }
        Ok(DiagonalForm(coeffs))
    }

    pub fn eval(&self, p: &[i64]) -> i64 {
        self.0.iter().zip(p).map(|(&d, &x)| d as i64 * x * x).sum()
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for DiagonalForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad coefficient {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        DiagonalForm::new(coeffs)
    }
}

/// All integer points of `form = k`, lexicographically sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub form: DiagonalForm,
    pub k: u64,
    pub points: Vec<Point>,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn nested(coeffs: &[u64], rem: u64, cur: &mut Point, out: &mut Vec<Point>) {
    let d = coeffs[cur.len()];
    let r = isqrt_u64(rem / d) as i64;
    if cur.len() + 1 == coeffs.len() {
        if rem.is_multiple_of(d) && (r * r) as u64 == rem / d {
            for x in if r == 0 { vec![0] } else { vec![-r, r] } {
                cur.push(x);
                out.push(cur.clone());
                cur.pop();
            }
        }
        return;
    }
    for x in -r..=r {
        cur.push(x);
        nested(coeffs, rem - d * (x * x) as u64, cur, out);
        cur.pop();
    }
}

/// Nested-loop search with `|x_i| <= sqrt(k / d_i)`, split over the first coordinate.
pub fn solve_diagonal(form: &DiagonalForm, k: u64) -> SolutionSet {
    let coeffs = &form.0;
    let r = isqrt_u64(k / coeffs[0]) as i64;
    let points = if coeffs.len() == 1 {
        let mut out = Vec::new();
        nested(coeffs, k, &mut Vec::new(), &mut out);
        out
    } else {
        (-r..=r)
            .into_par_iter()
            .flat_map_iter(|x| {
                let mut out = Vec::new();
                let used = coeffs[0] * (x * x) as u64;
                nested(coeffs, k - used, &mut vec![x], &mut out);
                out
            })
            .collect()
    };
    SolutionSet { form: form.clone(), k, points }
}

/// Independent solver: meets the partial sums of the two halves of the coordinates.
pub fn solve_diagonal_meet(form: &DiagonalForm, k: u64) -> Vec<Point> {
    fn partial(coeffs: &[u64], k: u64) -> Vec<(u64, Point)> {
        let mut acc: Vec<(u64, Point)> = vec![(0, vec![])];
        for &d in coeffs {
            let r = isqrt_u64(k / d) as i64;
            let mut next = Vec::new();
            for (s, p) in &acc {
                for x in -r..=r {
                    let v = s + d * (x * x) as u64;
                    if v <= k {
                        let mut q = p.clone();
                        q.push(x);
                        next.push((v, q));
                    }
                }
            }
            acc = next;
        }
        acc
    }
    let (a, b) = form.0.split_at(form.0.len() / 2);
    let left = partial(a, k);
    let mut right = partial(b, k);
    right.sort();
    let mut out = Vec::new();
    for (s, p) in left {
        let need = k - s;
        let start = right.partition_point(|(v, _)| *v < need);
        for (v, q) in &right[start..] {
            if *v != need {
                break;
            }
            out.push([p.clone(), q.clone()].concat());
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupActionId {
    D8,
    C4,
    V4,
    C6,
    GA3,
    /// Signed permutations of `n` coordinates.
    H(usize),
}

impl GroupActionId {
    pub fn dimension(self) -> usize {
        match self {
            GroupActionId::GA3 => 3,
            GroupActionId::H(n) => n,
            _ => 2,
        }
    }
}

/// Integer matrix divided by a positive denominator, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupMatrix {
    pub m: Vec<Vec<i64>>,
    pub den: i64,
}

impl GroupMatrix {
    fn new(m: Vec<Vec<i64>>, den: i64) -> Self {
        let g = m.iter().flatten().fold(den, |g, &x| g.gcd(&x));
        GroupMatrix { m: m.into_iter().map(|r| r.into_iter().map(|x| x / g).collect()).collect(), den: den / g }
    }

    pub fn identity(n: usize) -> Self {
        GroupMatrix::new((0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect(), 1)
    }

    pub fn compose(&self, other: &GroupMatrix) -> GroupMatrix {
        let n = self.m.len();
        let m = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.m[i][k] * other.m[k][j]).sum()).collect())
            .collect();
        GroupMatrix::new(m, self.den * other.den)
    }

    pub fn apply(&self, p: &[i64]) -> Result<Point> {
        self.m
            .iter()
            .map(|row| {
                let s: i64 = row.iter().zip(p).map(|(a, b)| a * b).sum();
                if s % self.den != 0 {
                    return Err(Error::NonIntegralImage(format!("{p:?}")));
                }
                Ok(s / self.den)
            })
            .collect()
    }
}

/// Generators of each group as matrices.
pub fn generators(id: GroupActionId) -> Vec<GroupMatrix> {
    let g = GroupMatrix::new;
    match id {
        GroupActionId::D8 => vec![g(vec![vec![0, -1], vec![1, 0]], 1), g(vec![vec![0, 1], vec![1, 0]], 1)],
        GroupActionId::C4 => vec![g(vec![vec![0, -1], vec![1, 0]], 1)],
        GroupActionId::V4 => vec![g(vec![vec![-1, 0], vec![0, 1]], 1), g(vec![vec![1, 0], vec![0, -1]], 1)],
        GroupActionId::C6 => vec![g(vec![vec![1, -3], vec![1, 1]], 2)],
        GroupActionId::GA3 => vec![
            g(vec![vec![1, 0, -3], vec![0, 2, 0], vec![1, 0, 1]], 2),
            g(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]], 1),
        ],
        GroupActionId::H(n) => {
            let mut gens = vec![];
            let mut neg = GroupMatrix::identity(n);
            neg.m[0][0] = -1;
            gens.push(neg);
            for i in 0..n.saturating_sub(1) {
                let mut sw = GroupMatrix::identity(n);
                sw.m[i][i] = 0;
                sw.m[i + 1][i + 1] = 0;
                sw.m[i][i + 1] = 1;
                sw.m[i + 1][i] = 1;
                gens.push(sw);
            }
            gens
        }
    }
}

/// All elements of the group, generated by closure and sorted.
pub fn group_elements(id: GroupActionId) -> Vec<GroupMatrix> {
    let gens = generators(id);
    let mut seen: BTreeSet<GroupMatrix> = BTreeSet::new();
    let e = GroupMatrix::identity(id.dimension());
    seen.insert(e.clone());
    let mut frontier = vec![e];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// A group member named in the most natural way for its group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupElement {
    /// Word in `r` and `s` (D8, C4) or in `x`, `y` (the sign changes of V4), applied
    /// right to left.
    Word(String),
    /// `R^k` (C6).
    Power(u32),
    /// `R3^k s^e` (GA3).
    PowerReflect(u32, bool),
    /// Signed permutation: coordinate `i` of the image is `sign(p_i) x_{|p_i|}` (1-based).
    SignedPermutation(Vec<i64>),
}

pub fn element_matrix(id: GroupActionId, e: &GroupElement) -> Result<GroupMatrix> {
    let gens = generators(id);
    let dim = id.dimension();
    let pow = |g: &GroupMatrix, k: u32| (0..k).fold(GroupMatrix::identity(dim), |acc, _| acc.compose(g));
    let bad = || Error::Parse(format!("{e:?} does not name an element of {id:?}"));
    match (id, e) {
        (GroupActionId::D8 | GroupActionId::C4 | GroupActionId::V4, GroupElement::Word(w)) => {
            let mut m = GroupMatrix::identity(dim);
            for ch in w.chars() {
                let g = match (id, ch) {
                    (GroupActionId::D8 | GroupActionId::C4, 'r') => &gens[0],
                    (GroupActionId::D8, 's') => &gens[1],
                    (GroupActionId::V4, 'x') => &gens[0],
                    (GroupActionId::V4, 'y') => &gens[1],
                    _ => return Err(bad()),
                };
                m = m.compose(g);
            }
            Ok(m)
        }
        (GroupActionId::C6, GroupElement::Power(k)) => Ok(pow(&gens[0], *k)),
        (GroupActionId::GA3, GroupElement::PowerReflect(k, refl)) => {
            let r = pow(&gens[0], *k);
            Ok(if *refl { r.compose(&gens[1]) } else { r })
        }
        (GroupActionId::H(n), GroupElement::SignedPermutation(p)) => {
            let mut idx: Vec<u64> = p.iter().map(|x| x.unsigned_abs()).collect();
            idx.sort_unstable();
            if p.len() != n || idx != (1..=n as u64).collect::<Vec<_>>() {
                return Err(bad());
            }
            let m = p
                .iter()
                .map(|&x| (0..n).map(|j| if x.unsigned_abs() as usize == j + 1 { x.signum() } else { 0 }).collect())
                .collect();
            Ok(GroupMatrix::new(m, 1))
        }
        _ => Err(bad()),
    }
}

pub fn act(id: GroupActionId, e: &GroupElement, p: &[i64]) -> Result<Point> {
    element_matrix(id, e)?.apply(p)
}

/// Orbit of `p`, sorted.
pub fn orbit(group: &[GroupMatrix], p: &[i64]) -> Result<Vec<Point>> {
    let set: BTreeSet<Point> = group.iter().map(|g| g.apply(p)).collect::<Result<_>>()?;
    Ok(set.into_iter().collect())
}

/// Orbits of a closed set, sorted by their lexicographically least element (which
/// is the first element of each orbit).
pub fn orbit_partition(id: GroupActionId, solutions: &[Point]) -> Result<Vec<Vec<Point>>> {
    let group = group_elements(id);
    let all: HashSet<&Point> = solutions.iter().collect();
    let mut done: HashSet<Point> = HashSet::new();
    let mut sorted: Vec<&Point> = solutions.iter().collect();
    sorted.sort();
    let mut out = Vec::new();
    for p in sorted {
        if done.contains(p) {
            continue;
        }
        let o = orbit(&group, p)?;
        for x in &o {
            if !all.contains(x) {
                return Err(Error::NotClosed(format!("{p:?} maps to {x:?}")));
            }
            done.insert(x.clone());
        }
        out.push(o);
    }
    Ok(out)
}

/// Whether every orbit has full size, with the first point of a smaller orbit.
pub fn is_action_free(id: GroupActionId, solutions: &[Point]) -> Result<(bool, Option<Point>)> {
    let order = group_elements(id).len();
    for o in orbit_partition(id, solutions)? {
        if o.len() != order {
            return Ok((false, Some(o[0].clone())));
        }
    }
    Ok((true, None))
}

/// Trial-division factorisation.
pub fn factorize(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            let mut e = 0;
            while k.is_multiple_of(p) {
                k /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

/// `k` is a sum of two squares iff primes `3 mod 4` occur to even powers.
pub fn two_squares_solvable(k: u64) -> bool {
    factorize(k).iter().all(|&(p, e)| p % 4 != 3 || e % 2 == 0)
}

/// `k = 2^alpha c^2 m` with `m` odd and free of primes `3 mod 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianLift {
    pub alpha: u32,
    pub c: u64,
    pub m: u64,
}

impl GaussianLift {
    /// `z -> (1+i)^alpha c z`, a bijection from `U(m)` onto `U(k)`.
    pub fn apply(&self, p: &[i64]) -> Point {
        let (mut x, mut y) = (p[0], p[1]);
        for _ in 0..self.alpha {
            (x, y) = (x - y, x + y);
        }
        vec![x * self.c as i64, y * self.c as i64]
    }
}

pub fn gaussian_lift(k: u64) -> Result<GaussianLift> {
    if k == 0 || !two_squares_solvable(k) {
        return Err(Error::Unsolvable(k));
    }
    let mut lift = GaussianLift { alpha: 0, c: 1, m: 1 };
    for (p, e) in factorize(k) {
        if p == 2 {
            lift.alpha = e;
        } else if p % 4 == 3 {
            lift.c *= p.pow(e / 2);
        } else {
            lift.m *= p.pow(e);
        }
    }
    Ok(lift)
}

/// `b mod a` is neither a square nor twice a square mod `a`, so the D8 action on
/// `U(aN + b)` is free for every `N`.
pub fn residue_free_criterion(a: u64, b: u64) -> bool {
    let target = b % a;
    (0..a).all(|x| (x * x) % a != target && (2 * x * x) % a != target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(c: &[u64]) -> DiagonalForm {
        DiagonalForm::new(c.to_vec()).unwrap()
    }

    #[test]
    fn solver_examples() {
        assert_eq!(
            solve_diagonal(&f(&[1, 3]), 4).points,
            vec![vec![-2, 0], vec![-1, -1], vec![-1, 1], vec![1, -1], vec![1, 1], vec![2, 0]]
        );
        assert_eq!(
            solve_diagonal(&f(&[1, 3]), 16).points,
            vec![vec![-4, 0], vec![-2, -2], vec![-2, 2], vec![2, -2], vec![2, 2], vec![4, 0]]
        );
        assert_eq!(solve_diagonal(&f(&[1, 1]), 2).len(), 4);
        assert_eq!(solve_diagonal(&f(&[1, 1]), 325).len(), 24);
        assert_eq!(solve_diagonal(&f(&[1, 1]), 0).points, vec![vec![0, 0]]);
    }

    #[test]
    fn solvers_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = rng.gen_range(1..=4);
            let coeffs: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=5)).collect();
            let k = rng.gen_range(0..=400);
            let form = f(&coeffs);
            assert_eq!(solve_diagonal(&form, k).points, solve_diagonal_meet(&form, k), "{form} {k}");
        }
    }

    #[test]
    fn group_orders_and_relations() {
        let orders = [
            (GroupActionId::D8, 8),
            (GroupActionId::C4, 4),
            (GroupActionId::V4, 4),
            (GroupActionId::C6, 6),
            (GroupActionId::GA3, 12),
            (GroupActionId::H(2), 8),
            (GroupActionId::H(3), 48),
            (GroupActionId::H(4), 384),
        ];
        for (id, n) in orders {
            assert_eq!(group_elements(id).len(), n, "{id:?}");
        }
        let e2 = GroupMatrix::identity(2);
        let d8 = |w: &str| element_matrix(GroupActionId::D8, &GroupElement::Word(w.into())).unwrap();
        assert_eq!(d8("rrrr"), e2);
        assert_eq!(d8("ss"), e2);
        assert_eq!(d8("rsrs"), e2);
        assert_eq!(element_matrix(GroupActionId::C6, &GroupElement::Power(6)).unwrap(), e2);
        assert_eq!(
            element_matrix(GroupActionId::GA3, &GroupElement::PowerReflect(6, false)).unwrap(),
            GroupMatrix::identity(3)
        );
    }

    #[test]
    fn actions() {
        assert_eq!(act(GroupActionId::D8, &GroupElement::Word("r".into()), &[3, 1]).unwrap(), vec![-1, 3]);
        assert_eq!(act(GroupActionId::C6, &GroupElement::Power(1), &[-1, -1]).unwrap(), vec![1, -1]);
        assert_eq!(act(GroupActionId::GA3, &GroupElement::PowerReflect(0, true), &[1, 2, 3]).unwrap(), vec![1, 2, -3]);
        assert_eq!(
            act(GroupActionId::H(3), &GroupElement::SignedPermutation(vec![-3, 1, 2]), &[1, 2, 3]).unwrap(),
            vec![-3, 1, 2]
        );
        assert!(matches!(act(GroupActionId::C6, &GroupElement::Power(1), &[1, 0]), Err(Error::NonIntegralImage(_))));
        assert!(act(GroupActionId::C4, &GroupElement::Word("s".into()), &[1, 0]).is_err());
    }

    #[test]
    fn orbit_examples() {
        let u5 = solve_diagonal(&f(&[1, 1]), 5).points;
        let o = orbit_partition(GroupActionId::D8, &u5).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].len(), 8);
        let u4 = solve_diagonal(&f(&[1, 3]), 4).points;
        let o = orbit_partition(GroupActionId::C6, &u4).unwrap();
        assert_eq!((o.len(), o[0].len()), (1, 6));
        let u1 = solve_diagonal(&f(&[1, 1]), 1).points;
        assert_eq!(orbit_partition(GroupActionId::C4, &u1).unwrap().len(), 1);
        assert!(matches!(orbit_partition(GroupActionId::D8, &[vec![1, 0]]), Err(Error::NotClosed(_))));
    }

    #[test]
    fn freeness() {
        let u50 = solve_diagonal(&f(&[1, 1]), 50).points;
        assert_eq!(is_action_free(GroupActionId::D8, &u50).unwrap(), (false, Some(vec![-5, -5])));
        let o = orbit_partition(GroupActionId::D8, &u50).unwrap();
        assert!(o.iter().any(|o| o.contains(&vec![5, 5]) && o.len() == 4));
        let u13 = solve_diagonal(&f(&[1, 1]), 13).points;
        assert!(is_action_free(GroupActionId::D8, &u13).unwrap().0);
    }

    #[test]
    fn two_squares() {
        assert!(two_squares_solvable(5));
        assert!(!two_squares_solvable(21));
        assert!(two_squares_solvable(9));
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn lifts() {
        assert_eq!(gaussian_lift(2).unwrap(), GaussianLift { alpha: 1, c: 1, m: 1 });
        let l = gaussian_lift(18).unwrap();
        assert_eq!(l, GaussianLift { alpha: 1, c: 3, m: 1 });
        assert_eq!(l.apply(&[1, 0]), vec![3, 3]);
        assert_eq!(gaussian_lift(325).unwrap(), GaussianLift { alpha: 0, c: 1, m: 325 });
        assert_eq!(gaussian_lift(21), Err(Error::Unsolvable(21)));
    }

    #[test]
    fn lift_is_a_bijection() {
        let form = f(&[1, 1]);
        for k in 1..=300u64 {
            let Ok(l) = gaussian_lift(k) else { continue };
            let um = solve_diagonal(&form, l.m).points;
            let mut image: Vec<Point> = um.iter().map(|p| l.apply(p)).collect();
            image.sort();
            assert_eq!(image, solve_diagonal(&form, k).points, "k={k}");
        }
    }

    #[test]
    fn residue_criterion() {
        assert!(residue_free_criterion(8, 5));
        assert!(residue_free_criterion(12, 5));
        assert!(!residue_free_criterion(8, 1));
    }

    proptest! {
        #[test]
        fn orbit_sizes_divide_group_order(k in 0u64..600) {
            let u = solve_diagonal(&f(&[1, 1]), k).points;
            for o in orbit_partition(GroupActionId::D8, &u).unwrap() {
                prop_assert_eq!(8 % o.len(), 0);
            }
        }

        #[test]
        fn solutions_satisfy_the_form(c in proptest::collection::vec(1u64..5, 1..4), k in 0u64..300) {
            let form = f(&c);
            for p in solve_diagonal(&form, k).points {
                prop_assert_eq!(form.eval(&p), k as i64);
            }
        }
    }
}
