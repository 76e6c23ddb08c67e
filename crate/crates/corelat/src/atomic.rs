//! Atomic length of translations and exhaustive enumeration of lattice points of a
//! given atomic length.
//!
//! For `Lambda = lambda + l Lambda_0` and a translation by `x` the atomic length is
//! `h (lambda|x) + l ((h/2)|x|^2 - ht(x))`.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::dynkin::{self, Lattice, TypeData};
use crate::error::{Error, Result};
use crate::linalg::{self, q, Matrix, Vector, Q};

/// `Lambda = lambda + level Lambda_0 + delta_coeff delta`.
#[derive(Clone, Debug, PartialEq)]
pub struct DominantWeight {
    pub lambda: Vector,
    pub level: Q,
    pub delta_coeff: Q,
}

impl DominantWeight {
    /// `Lambda_i`; `i = 0` gives `Lambda_0`.
    pub fn fundamental(t: &TypeData, i: usize) -> Result<Self> {
        Ok(DominantWeight {
            lambda: t.omega(i)?,
            level: dynkin::level(t, i),
            delta_coeff: Q::zero(),
        })
    }
}

pub fn height(t: &TypeData, v: &[Q]) -> Result<Q> {
    Ok(t.simple_root_coefficients(v)?.into_iter().sum())
}

pub fn norm_sq(t: &TypeData, v: &[Q]) -> Q {
    t.norm_sq(v)
}

pub fn atomic_length0(t: &TypeData, v: &[Q]) -> Result<Q> {
    Ok(q(t.h as i64) / q(2) * t.norm_sq(v) - height(t, v)?)
}

pub fn atomic_length_i(t: &TypeData, i: usize, v: &[Q]) -> Result<Q> {
    if i > t.n {
        return Err(Error::BadIndex(i));
    }
    extended_atomic_length(t, &DominantWeight::fundamental(t, i)?, v)
}

pub fn extended_atomic_length(t: &TypeData, w: &DominantWeight, x: &[Q]) -> Result<Q> {
    let h = q(t.h as i64);
    let lin = &h * t.inner(&w.lambda, x);
    Ok(lin + &w.level * (&h / q(2) * t.norm_sq(x) - height(t, x)?))
}

/// Defect `D(1, x, y) = h l (x|y)`, so that `L(x+y) = L(x) + L(y) + D`.
pub fn defect_d(t: &TypeData, w: &DominantWeight, x: &[Q], y: &[Q]) -> Q {
    q(t.h as i64) * &w.level * t.inner(x, y)
}

/// Coefficients of the quadratic polynomial `c -> L(sum c_k b_k)` over a basis:
/// returns `(S, g)` with `L = c^T S c + g.c`.
fn length_polynomial(t: &TypeData, w: &DominantWeight, basis: &[Vector]) -> Result<(Matrix, Vector)> {
    let h = q(t.h as i64);
    let half = &h / q(2) * &w.level;
    let s = basis
        .iter()
        .map(|a| basis.iter().map(|b| &half * t.inner(a, b)).collect())
        .collect();
    let g = basis
        .iter()
        .map(|b| Ok(&h * t.inner(&w.lambda, b) - &w.level * height(t, b)?))
        .collect::<Result<Vector>>()?;
    Ok((s, g))
}

/// All integer vectors `c` with `c^T S c + g.c <= max`, together with their value.
/// `S` must be positive definite. Uses a Fincke–Pohst descent on the LDL form
/// centred at the real minimum, so no point is missed.
pub fn quadratic_points_below(s: &[Vector], g: &[Q], max: &Q) -> Result<Vec<(Vec<i64>, Q)>> {
    let n = s.len();
    if n == 0 {
        return Ok(if max.is_negative() { vec![] } else { vec![(vec![], Q::zero())] });
    }
    let sinv = linalg::inverse(s).ok_or_else(|| Error::InternalInconsistency("singular form".into()))?;
    let (d, u) = linalg::ldl(s).ok_or_else(|| Error::InternalInconsistency("form is not positive definite".into()))?;
    // centre z = -S^{-1} g / 2, minimum value -g.z... = g.z / 2
    let z: Vector = linalg::mat_vec(&sinv, g).into_iter().map(|x| -x / q(2)).collect();
    let min = linalg::dot(g, &z) / q(2);
    let budget = max - &min;
    if budget.is_negative() {
        return Ok(vec![]);
    }

    // Split the outermost coordinate across workers.
    let top = n - 1;
    let (lo, hi) = search_range(&z[top], &d[top], &budget)?;
    let mut out: Vec<(Vec<i64>, Q)> = (lo..=hi)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut c = vec![0i64; n];
            let mut acc = Vec::new();
            let y = q(x) - &z[top];
            let used = &d[top] * &y * &y;
            if used <= budget {
                c[top] = x;
                descend(top, &d, &u, &z, &mut c, &(&budget - used), max, &mut acc);
            }
            acc
        })
        .collect();
    out.sort();
    Ok(out)
}

fn search_range(ctr: &Q, d: &Q, rem: &Q) -> Result<(i64, i64)> {
    let r: num_bigint::BigInt = linalg::isqrt(&linalg::floor_q(&(rem / d))) + 1;
    let lo = linalg::floor_q(ctr) - &r;
    let hi = linalg::ceil_q(ctr) + &r;
    Ok((lo.to_i64().ok_or(Error::Overflow)?, hi.to_i64().ok_or(Error::Overflow)?))
}

#[allow(clippy::too_many_arguments)]
fn descend(level: usize, d: &[Q], u: &[Vector], z: &[Q], c: &mut Vec<i64>, rem: &Q, max: &Q, acc: &mut Vec<(Vec<i64>, Q)>) {
    if level == 0 {
        acc.push((c.clone(), max - rem));
        return;
    }
    let i = level - 1;
    let mut ctr = z[i].clone();
    for j in i + 1..c.len() {
        if !u[i][j].is_zero() {
            ctr -= &u[i][j] * (q(c[j]) - &z[j]);
        }
    }
    let Ok((lo, hi)) = search_range(&ctr, &d[i], rem) else { return };
    for x in lo..=hi {
        let y = q(x) - &ctr;
        let used = &d[i] * &y * &y;
        if &used <= rem {
            c[i] = x;
            descend(i, d, u, z, c, &(rem - used), max, acc);
        }
    }
    c[i] = 0;
}

/// Lattice points of `lattice` with atomic length at most `max`, grouped by length.
pub fn enumerate_atomic_up_to(
    t: &TypeData,
    w: &DominantWeight,
    max: &Q,
    lattice: Lattice,
) -> Result<BTreeMap<Q, Vec<Vector>>> {
    let basis = t.lattice_basis(lattice)?;
    if !w.level.is_positive() {
        return Err(Error::InternalInconsistency("enumeration needs a weight of positive level".into()));
    }
    let (s, g) = length_polynomial(t, w, basis)?;
    let mut out: BTreeMap<Q, Vec<Vector>> = BTreeMap::new();
    for (c, value) in quadratic_points_below(&s, &g, max)? {
        out.entry(value).or_default().push(linalg::combine_int(&c, basis));
    }
    for v in out.values_mut() {
        v.sort();
    }
    Ok(out)
}

/// Lattice points with atomic length exactly `n`, in lexicographic coordinate order.
pub fn enumerate_atomic(t: &TypeData, w: &DominantWeight, n: &Q, lattice: Lattice) -> Result<Vec<Vector>> {
    Ok(enumerate_atomic_up_to(t, w, n, lattice)?.remove(n).unwrap_or_default())
}

/// `B(N)` for `Lambda_0` on `M`.
pub fn affine_grassmannian(t: &TypeData, n: u64) -> Result<Vec<Vector>> {
    enumerate_atomic(t, &DominantWeight::fundamental(t, 0)?, &q(n as i64), Lattice::M)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::lookup;
    use crate::linalg::{qf, qvec};
    use proptest::prelude::*;

    fn l0(t: &TypeData) -> DominantWeight {
        DominantWeight::fundamental(t, 0).unwrap()
    }

    #[test]
    fn heights() {
        let a2 = lookup("A2_1").unwrap();
        assert_eq!(height(&a2, &qvec(&[1, 0, -1])).unwrap(), q(2));
        let c2 = lookup("C2_1").unwrap();
        assert_eq!(height(&c2, &qvec(&[1, 0])).unwrap(), q(3));
        let g2 = lookup("G2_1").unwrap();
        assert_eq!(height(&g2, &qvec(&[1, -1, 0])).unwrap(), q(1));
    }

    #[test]
    fn norms() {
        assert_eq!(norm_sq(&lookup("A2_1").unwrap(), &qvec(&[1, 0, -1])), q(2));
        assert_eq!(norm_sq(&lookup("C2_1").unwrap(), &qvec(&[1, -3])), q(20));
        assert_eq!(norm_sq(&lookup("D4_3").unwrap(), &qvec(&[-3, 1, 2])), q(14));
    }

    #[test]
    fn level_zero_lengths() {
        let a2 = lookup("A2_1").unwrap();
        assert_eq!(atomic_length0(&a2, &qvec(&[0, 0, 0])).unwrap(), q(0));
        assert_eq!(atomic_length0(&a2, &qvec(&[0, -1, 1])).unwrap(), q(4));
        let c2 = lookup("C2_1").unwrap();
        assert_eq!(atomic_length0(&c2, &qvec(&[1, -3])).unwrap(), q(40));
    }

    #[test]
    fn fundamental_weight_lengths() {
        let a2 = lookup("A2_1").unwrap();
        let w1 = a2.omega(1).unwrap();
        assert_eq!(atomic_length_i(&a2, 1, &w1).unwrap(), q(2));
        assert_eq!(atomic_length_i(&a2, 2, &w1).unwrap(), q(1));
        assert_eq!(atomic_length0(&a2, &w1).unwrap(), q(0));
        for n in 2..=5 {
            let c = lookup(&format!("C{n}_1")).unwrap();
            let wn = c.omega(n).unwrap();
            assert_eq!(atomic_length_i(&c, n, &wn).unwrap(), q((n * n) as i64));
        }
        assert_eq!(atomic_length_i(&a2, 3, &w1), Err(Error::BadIndex(3)));
    }

    #[test]
    fn c2_lambda1_closed_form() {
        let c2 = lookup("C2_1").unwrap();
        for a in -4..=4i64 {
            for b in -4..=4i64 {
                let v = qvec(&[a, b]);
                let expect = q(4 * a * a + 4 * b * b + a - b);
                assert_eq!(atomic_length_i(&c2, 1, &v).unwrap(), expect);
            }
        }
    }

    #[test]
    fn level_zero_weight_vanishes() {
        let a3 = lookup("A3_1").unwrap();
        let w = DominantWeight { lambda: linalg::zeros(4), level: q(0), delta_coeff: q(5) };
        assert_eq!(extended_atomic_length(&a3, &w, &qvec(&[2, -1, 0, -1])).unwrap(), q(0));
    }

    #[test]
    fn defect_examples() {
        let a2 = lookup("A2_1").unwrap();
        let a1 = qvec(&[1, -1, 0]);
        assert_eq!(defect_d(&a2, &l0(&a2), &a1, &a1), q(6));
        assert_eq!(defect_d(&a2, &l0(&a2), &qvec(&[1, -1, 0]), &qvec(&[1, 1, -2])), q(0));
    }

    #[test]
    fn enumeration_examples() {
        let a2 = lookup("A2_1").unwrap();
        assert_eq!(affine_grassmannian(&a2, 0).unwrap(), vec![linalg::zeros(3)]);
        assert_eq!(affine_grassmannian(&a2, 6).unwrap(), vec![qvec(&[1, 1, -2]), qvec(&[2, -1, -1])]);
        assert!(affine_grassmannian(&lookup("D4_3").unwrap(), 4).unwrap().is_empty());
        let c2 = lookup("C2_1").unwrap();
        assert_eq!(
            affine_grassmannian(&c2, 40).unwrap(),
            vec![qvec(&[-2, -2]), qvec(&[-1, 3]), qvec(&[1, -3])]
        );
    }

    #[test]
    fn lambda1_lengths_on_l_are_integral() {
        // with L = M + Z w_2 the term q_1 - q_2 is always an integer
        let c2 = lookup("C2_1").unwrap();
        let w1 = DominantWeight::fundamental(&c2, 1).unwrap();
        let all = enumerate_atomic_up_to(&c2, &w1, &q(10), Lattice::L).unwrap();
        assert!(all.keys().all(|k| k.is_integer()));
        assert_eq!(all[&q(2)], vec![vec![qf(-1, 2), qf(-1, 2)], vec![qf(1, 2), qf(1, 2)]]);
    }

    #[test]
    fn twisted_types_have_no_l() {
        let d = lookup("D3_2").unwrap();
        assert!(matches!(
            enumerate_atomic(&d, &l0(&d), &q(1), Lattice::L),
            Err(Error::UnsupportedLattice(_))
        ));
    }

    /// Box enumeration oracle over the M basis.
    fn brute(t: &TypeData, max: i64, r: i64) -> BTreeMap<Q, Vec<Vector>> {
        let n = t.n;
        let mut out: BTreeMap<Q, Vec<Vector>> = BTreeMap::new();
        let mut c = vec![-r; n];
        loop {
            let v = linalg::combine_int(&c, &t.m_basis);
            let l = atomic_length0(t, &v).unwrap();
            if l <= q(max) {
                out.entry(l).or_default().push(v);
            }
            let mut k = 0;
            while k < n && c[k] == r {
                c[k] = -r;
                k += 1;
            }
            if k == n {
                break;
            }
            c[k] += 1;
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    #[test]
    fn enumeration_matches_box_search() {
        for s in ["A2_1", "C2_1", "D3_2", "A4_2", "G2_1", "D4_3", "A3_1", "B3_1", "C3_1"] {
            let t = lookup(s).unwrap();
            let fast = enumerate_atomic_up_to(&t, &l0(&t), &q(15), Lattice::M).unwrap();
            assert_eq!(fast, brute(&t, 15, 6), "{s}");
        }
    }

    #[test]
    fn output_is_sorted_and_exact() {
        let t = lookup("A3_1").unwrap();
        let all = enumerate_atomic_up_to(&t, &l0(&t), &q(20), Lattice::M).unwrap();
        for (k, vs) in &all {
            assert!(vs.windows(2).all(|w| w[0] < w[1]));
            for v in vs {
                assert_eq!(&atomic_length0(&t, v).unwrap(), k);
                assert!(t.contains(Lattice::M, v).unwrap());
            }
        }
    }

    #[test]
    fn half_scale_example() {
        let a42 = lookup("A4_2").unwrap();
        assert_eq!(height(&a42, &qvec(&[1, 0])).unwrap(), qf(3, 2));
    }

    proptest! {
        #[test]
        fn additivity(a in proptest::collection::vec(-6i64..=6, 3), b in proptest::collection::vec(-6i64..=6, 3), i in 0usize..=3) {
            let t = lookup("A3_1").unwrap();
            let x = linalg::combine_int(&a, &t.m_basis);
            let y = linalg::combine_int(&b, t.lattice_basis(Lattice::L).unwrap());
            let w = DominantWeight::fundamental(&t, i).unwrap();
            let lhs = extended_atomic_length(&t, &w, &linalg::add(&x, &y)).unwrap();
            let rhs = extended_atomic_length(&t, &w, &x).unwrap()
                + extended_atomic_length(&t, &w, &y).unwrap()
                + defect_d(&t, &w, &x, &y);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn lambda0_is_integral_on_m(c in proptest::collection::vec(-8i64..=8, 2), s in prop::sample::select(vec!["A2_1", "C2_1", "D3_2", "A4_2", "G2_1", "D4_3", "A2_2"])) {
            let t = lookup(s).unwrap();
            let c = &c[..t.n];
            let v = linalg::combine_int(c, &t.m_basis);
            let l = atomic_length0(&t, &v).unwrap();
            prop_assert!(l.is_integer() && !l.is_negative());
        }
    }
}
