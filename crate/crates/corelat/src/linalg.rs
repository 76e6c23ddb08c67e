//! Small dense linear algebra over exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type Vector = Vec<Q>;
pub type Matrix = Vec<Vec<Q>>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn zeros(n: usize) -> Vector {
    vec![Q::zero(); n]
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Q, a: &[Q]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// Linear combination `sum c_k b_k` of the rows of `basis`.
pub fn combine(coeffs: &[Q], basis: &[Vector]) -> Vector {
    let dim = basis.first().map_or(0, |b| b.len());
    let mut out = zeros(dim);
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

pub fn combine_int(coeffs: &[i64], basis: &[Vector]) -> Vector {
    let qs: Vector = coeffs.iter().map(|&c| q(c)).collect();
    combine(&qs, basis)
}

pub fn mat_vec(m: &[Vector], v: &[Q]) -> Vector {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &[Vector], b: &[Vector]) -> Matrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(Q::zero(), |acc, (x, br)| acc + x * &br[j]))
                .collect()
        })
        .collect()
}

/// Gram matrix `(b_i . b_j)` with the plain Euclidean product.
pub fn gram(vs: &[Vector]) -> Matrix {
    vs.iter().map(|a| vs.iter().map(|b| dot(a, b)).collect()).collect()
}

/// Inverse of a square matrix by Gauss-Jordan elimination; `None` if singular.
pub fn inverse(m: &[Vector]) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for x in inv[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
                let d = &f * &inv[col][c];
                inv[r][c] -= d;
            }
        }
    }
    Some(inv)
}

pub fn det(m: &[Vector]) -> Q {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut d = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            d = -d;
        }
        let p = a[col][col].clone();
        d *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            let pivot = a[col].clone();
            for (x, y) in a[r].iter_mut().zip(&pivot).skip(col) {
                *x -= &f * y;
            }
        }
    }
    d
}

/// Coordinates of `v` in the (linearly independent) family `basis`, if `v` lies in its span.
pub fn coordinates(basis: &[Vector], v: &[Q]) -> Option<Vector> {
    let g = gram(basis);
    let rhs: Vector = basis.iter().map(|b| dot(b, v)).collect();
    let c = mat_vec(&inverse(&g)?, &rhs);
    (combine(&c, basis) == v).then_some(c)
}

/// Decomposition `y^T S y = sum_i d_i (y_i + sum_{j>i} u_ij y_j)^2` of a positive definite `S`.
pub fn ldl(s: &[Vector]) -> Option<(Vector, Matrix)> {
    let n = s.len();
    let mut d = zeros(n);
    let mut u = vec![zeros(n); n];
    for i in 0..n {
        let mut di = s[i][i].clone();
        for k in 0..i {
            di -= &d[k] * &u[k][i] * &u[k][i];
        }
        if !di.is_positive() {
            return None;
        }
        u[i][i] = Q::one();
        for j in i + 1..n {
            let mut x = s[i][j].clone();
            for k in 0..i {
                x -= &d[k] * &u[k][i] * &u[k][j];
            }
            u[i][j] = x / &di;
        }
        d[i] = di;
    }
    Some((d, u))
}

pub fn is_integral(x: &Q) -> bool {
    x.is_integer()
}

pub fn to_i64(x: &Q) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::NonIntegralImage(fmt_q(x)));
    }
    x.to_integer().to_i64().ok_or(Error::Overflow)
}

pub fn to_i64_vec(v: &[Q]) -> Result<Vec<i64>> {
    v.iter().map(to_i64).collect()
}

/// Largest integer `r` with `r*r <= n`.
pub fn isqrt(n: &BigInt) -> BigInt {
    if !n.is_positive() {
        return BigInt::zero();
    }
    n.sqrt()
}

pub fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = isqrt_u64(n as u64);
        r * r == n as u64
    }
}

pub fn floor_q(x: &Q) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil_q(x: &Q) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("({})", parts.join(","))
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_vec(s: &str) -> Result<Vector> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_q).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let m = vec![qvec(&[2, -1, 0]), qvec(&[-1, 2, -1]), qvec(&[0, -1, 2])];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(3));
        assert_eq!(det(&m), q(4));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = vec![qvec(&[1, 2]), qvec(&[2, 4])];
        assert!(inverse(&m).is_none());
        assert_eq!(det(&m), q(0));
    }

    #[test]
    fn ldl_reconstructs_form() {
        let s = vec![vec![q(3), qf(3, 2)], vec![qf(3, 2), q(3)]];
        let (d, u) = ldl(&s).unwrap();
        let y = qvec(&[2, -5]);
        let mut total = q(0);
        for i in 0..2 {
            let mut t = y[i].clone();
            for j in i + 1..2 {
                t += &u[i][j] * &y[j];
            }
            total += &d[i] * &t * &t;
        }
        assert_eq!(total, dot(&y, &mat_vec(&s, &y)));
    }

    #[test]
    fn coordinates_detect_span() {
        let basis = vec![qvec(&[1, -1, 0]), qvec(&[0, 1, -1])];
        assert_eq!(coordinates(&basis, &qvec(&[1, 0, -1])), Some(qvec(&[1, 1])));
        assert_eq!(coordinates(&basis, &qvec(&[1, 0, 0])), None);
    }

    #[test]
    fn floors_and_ceils() {
        assert_eq!(floor_q(&qf(-7, 2)), BigInt::from(-4));
        assert_eq!(ceil_q(&qf(-7, 2)), BigInt::from(-3));
        assert_eq!(isqrt(&BigInt::from(99)), BigInt::from(9));
        assert!(is_square(49) && !is_square(50) && !is_square(-4));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_vec("(1/2,-3,0)").unwrap(), vec![qf(1, 2), q(-3), q(0)]);
        assert_eq!(fmt_vec(&[qf(-1, 3), q(2)]), "(-1/3,2)");
        assert!(parse_q("1/0").is_err());
    }
}
