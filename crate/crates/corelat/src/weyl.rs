//! Extended affine Weyl group in types `A_n^(1)` and `C_n^(1)`: the length-zero
//! elements `sigma_j`, their matrices `M_j`, the images `w_j + M_j(q)` and the
//! action of the affine generators on cores.

use std::collections::BTreeMap;

use crate::atomic::{self, DominantWeight};
use crate::cores::{residue, Partition};
use crate::dynkin::{Family, Lattice, TypeData};
use crate::error::{Error, Result};
use crate::linalg::{self, q, Matrix, Vector, Q};

/// `sigma_j t_q`, with `j = 0` the identity coset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtGrassElement {
    pub j: usize,
    pub q: Vector,
}

fn check_supported(t: &TypeData) -> Result<()> {
    match (t.id.family, t.id.twist) {
        (Family::A, 1) | (Family::C, 1) => Ok(()),
        _ => Err(Error::UnsupportedType(t.id.to_string())),
    }
}

/// `{0} union J`, the indices of the length-zero elements.
pub fn sigma_indices(t: &TypeData) -> Result<Vec<usize>> {
    check_supported(t)?;
    Ok(std::iter::once(0).chain(t.j.iter().copied()).collect())
}

/// Matrix of the finite part of `sigma_j` acting on the ambient space.
pub fn matrix_mj(t: &TypeData, j: usize) -> Result<Matrix> {
    check_supported(t)?;
    if j != 0 && !t.j.contains(&j) {
        return Err(Error::BadIndex(j));
    }
    let dim = t.ambient_dim;
    if j == 0 {
        return Ok(linalg::identity(dim));
    }
    Ok(match t.id.family {
        // cyclic shift (q_1, ..., q_{n+1}) -> (q_{n+1}, q_1, ..., q_n), raised to the j
        Family::A => {
            let mut m = vec![linalg::zeros(dim); dim];
            for (i, row) in m.iter_mut().enumerate() {
                row[(i + dim - j % dim) % dim] = q(1);
            }
            m
        }
        _ => {
            let mut m = vec![linalg::zeros(dim); dim];
            for (i, row) in m.iter_mut().enumerate() {
                row[dim - 1 - i] = q(-1);
            }
            m
        }
    })
}

pub fn extended_image(t: &TypeData, e: &ExtGrassElement) -> Result<Vector> {
    let m = matrix_mj(t, e.j)?;
    Ok(linalg::add(&t.omega(e.j)?, &linalg::mat_vec(&m, &e.q)))
}

/// Inverse of [`extended_image`]: the unique `(j, q)` with `x = w_j + M_j(q)`.
pub fn decompose_extended(t: &TypeData, x: &[Q]) -> Result<ExtGrassElement> {
    let mut found = None;
    for j in sigma_indices(t)? {
        let y = linalg::sub(x, &t.omega(j)?);
        if t.contains(Lattice::M, &y)? {
            if found.is_some() {
                return Err(Error::InternalInconsistency("two cosets contain the same point".into()));
            }
            let inv = linalg::inverse(&matrix_mj(t, j)?)
                .ok_or_else(|| Error::InternalInconsistency("singular M_j".into()))?;
            found = Some(ExtGrassElement { j, q: linalg::mat_vec(&inv, &y) });
        }
    }
    found.ok_or_else(|| Error::InternalInconsistency(format!("{} is not in L", linalg::fmt_vec(x))))
}

/// Extended Grassmannian elements of atomic length at most `max`, keyed by length.
/// They are found from the points of `L` directly, not from `B(N)`.
pub fn enumerate_extended_up_to(t: &TypeData, max: u64) -> Result<BTreeMap<u64, Vec<ExtGrassElement>>> {
    check_supported(t)?;
    let w = DominantWeight::fundamental(t, 0)?;
    let mut out = BTreeMap::new();
    for (len, xs) in atomic::enumerate_atomic_up_to(t, &w, &q(max as i64), Lattice::L)? {
        let len = linalg::to_i64(&len)? as u64;
        let mut es = xs.iter().map(|x| decompose_extended(t, x)).collect::<Result<Vec<_>>>()?;
        es.sort();
        out.insert(len, es);
    }
    Ok(out)
}

/// `B-hat(N)`, sorted by `(j, q)`.
pub fn enumerate_extended(t: &TypeData, n: u64) -> Result<Vec<ExtGrassElement>> {
    Ok(enumerate_extended_up_to(t, n)?.remove(&n).unwrap_or_default())
}

/// `s_{i_1} ... s_{i_k}` applied to the empty partition, rightmost letter first. Each
/// `s_i` adds every addable box of residue `i`, or if there is none removes every
/// removable one; residues are taken mod `n + 1`.
pub fn core_from_word(n: usize, word: &[usize]) -> Partition {
    let d = n + 1;
    let mut rows: Vec<usize> = Vec::new();
    for &i in word.iter().rev() {
        let i = i % d;
        let addable: Vec<usize> = (0..=rows.len())
            .filter(|&r| {
                let c = rows.get(r).copied().unwrap_or(0);
                (r == 0 || rows[r - 1] > c) && residue(r, c, d) == i
            })
            .collect();
        if !addable.is_empty() {
            for r in addable {
                if r == rows.len() {
                    rows.push(1);
                } else {
                    rows[r] += 1;
                }
            }
        } else {
            let removable: Vec<usize> = (0..rows.len())
                .filter(|&r| {
                    let c = rows[r] - 1;
                    rows.get(r + 1).copied().unwrap_or(0) < rows[r] && residue(r, c, d) == i
                })
                .collect();
            for r in removable {
                rows[r] -= 1;
            }
            rows.retain(|&x| x > 0);
        }
    }
    Partition::from_unsorted(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cores::{charge_of_core, core_from_charge, is_d_core};
    use crate::dynkin::lookup;
    use crate::linalg::{qf, qvec};
    use proptest::prelude::*;

    #[test]
    fn matrices() {
        let a2 = lookup("A2_1").unwrap();
        let m1 = matrix_mj(&a2, 1).unwrap();
        assert_eq!(linalg::mat_vec(&m1, &qvec(&[1, 2, 3])), qvec(&[3, 1, 2]));
        assert_eq!(matrix_mj(&a2, 0).unwrap(), linalg::identity(3));
        let c3 = lookup("C3_1").unwrap();
        let m3 = matrix_mj(&c3, 3).unwrap();
        assert_eq!(linalg::mat_vec(&m3, &qvec(&[1, 2, 3])), qvec(&[-3, -2, -1]));
        assert_eq!(matrix_mj(&c3, 1), Err(Error::BadIndex(1)));
        assert!(matches!(matrix_mj(&lookup("G2_1").unwrap(), 0), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn images() {
        let a2 = lookup("A2_1").unwrap();
        let e = ExtGrassElement { j: 1, q: qvec(&[0, 0, 0]) };
        assert_eq!(extended_image(&a2, &e).unwrap(), vec![qf(2, 3), qf(-1, 3), qf(-1, 3)]);
        let e = ExtGrassElement { j: 1, q: qvec(&[1, 0, -1]) };
        assert_eq!(extended_image(&a2, &e).unwrap(), vec![qf(-1, 3), qf(2, 3), qf(-1, 3)]);
        let c2 = lookup("C2_1").unwrap();
        let e = ExtGrassElement { j: 2, q: qvec(&[0, 0]) };
        assert_eq!(extended_image(&c2, &e).unwrap(), vec![qf(1, 2), qf(1, 2)]);
    }

    #[test]
    fn extended_enumeration() {
        let a2 = lookup("A2_1").unwrap();
        let b0 = enumerate_extended(&a2, 0).unwrap();
        let js: Vec<usize> = b0.iter().map(|e| e.j).collect();
        assert_eq!(js, vec![0, 1, 2]);
        assert!(b0.iter().all(|e| e.q == linalg::zeros(3)));
        assert_eq!(enumerate_extended(&a2, 1).unwrap().len(), 3);
        assert_eq!(enumerate_extended(&lookup("C2_1").unwrap(), 40).unwrap().len(), 6);
    }

    #[test]
    fn reflection_word_examples() {
        assert_eq!(core_from_word(2, &[0]), Partition::new(vec![1]).unwrap());
        assert_eq!(core_from_word(2, &[2, 1, 0]), Partition::new(vec![3, 1]).unwrap());
        assert_eq!(core_from_word(2, &[]), Partition::empty());
        // s_0 is an involution
        assert_eq!(core_from_word(3, &[0, 0]), Partition::empty());
    }

    #[test]
    fn sigma_invariance_small() {
        for s in ["A1_1", "A2_1", "A3_1", "C2_1", "C3_1"] {
            let t = lookup(s).unwrap();
            for (n, qs) in atomic::enumerate_atomic_up_to(&t, &DominantWeight::fundamental(&t, 0).unwrap(), &q(12), Lattice::M).unwrap() {
                for qv in qs {
                    for j in sigma_indices(&t).unwrap() {
                        let x = extended_image(&t, &ExtGrassElement { j, q: qv.clone() }).unwrap();
                        assert_eq!(atomic::atomic_length0(&t, &x).unwrap(), n, "{s} j={j}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reflection_words_give_cores_of_the_right_size(word in proptest::collection::vec(0usize..4, 0..14)) {
            let lam = core_from_word(3, &word);
            prop_assert!(is_d_core(&lam, 4));
            let c = charge_of_core(4, &lam).unwrap();
            prop_assert_eq!(core_from_charge(4, &c).unwrap(), lam.clone());
            let t = lookup("A3_1").unwrap();
            let v: Vector = c.iter().map(|&x| q(x)).collect();
            prop_assert_eq!(atomic::atomic_length0(&t, &v).unwrap(), q(lam.size() as i64));
        }

        #[test]
        fn decomposition_inverts_image(c in proptest::collection::vec(-5i64..=5, 3), j in 0usize..=3) {
            let t = lookup("A3_1").unwrap();
            let qv = linalg::combine_int(&c, &t.m_basis);
            let e = ExtGrassElement { j, q: qv };
            let x = extended_image(&t, &e).unwrap();
            prop_assert_eq!(decompose_extended(&t, &x).unwrap(), e);
        }
    }
}
