//! The four tables comparing lattice points, their images and the full solution
//! sets, emitted as CSV with canonically sorted cells.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::cores;
use crate::diophantine::{self, Point};
use crate::error::{Error, Result};
use crate::linalg::{self, Q};
use crate::param::{self, fmt_point, CaseId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// `x^2 + y^2 = 8N + 1` against the `Lambda_1` elements of `C_2^(1)`.
    F8N1,
    /// `x^2 + y^2 = 40N + 10` against `A_4^(2)`.
    F40N10,
    /// `x^2 + 3y^2 = 6N + 7` against `G_2^(1)`.
    F6N7,
    /// `x^2 + 3y^2 = 12N + 7` against `D_4^(3)` and the `D4 flat` partitions.
    F12N7,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::F8N1, Figure::F40N10, Figure::F6N7, Figure::F12N7];

    pub fn header(self) -> &'static [&'static str] {
        match self {
            Figure::F8N1 => {
                &["N", "M_prime", "phi_M_prime", "L_prime_minus_M_prime", "phi_L_prime_minus_M_prime", "solutions"]
            }
            Figure::F12N7 => &["N", "D4_flat", "B", "phi_B", "solutions"],
            _ => &["N", "B", "phi_B", "solutions"],
        }
    }

    fn case(self) -> CaseId {
        match self {
            Figure::F8N1 => CaseId::C2L1,
            Figure::F40N10 => CaseId::A42,
            Figure::F6N7 => CaseId::G21,
            Figure::F12N7 => CaseId::D43,
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Figure::F8N1 => "8N+1",
            Figure::F40N10 => "40N+10",
            Figure::F6N7 => "6N+7",
            Figure::F12N7 => "12N+7",
        })
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown figure {s}")))
    }
}

fn cell<T: Ord, F: Fn(&T) -> String>(mut items: Vec<T>, f: F) -> String {
    items.sort();
    items.iter().map(f).collect::<Vec<_>>().join(";")
}

fn points_cell(ps: Vec<Point>) -> String {
    cell(ps, |p| fmt_point(p))
}

/// Rows of the table for `N = 0..=max`, header excluded.
pub fn rows(fig: Figure, max: u64) -> Result<Vec<Vec<String>>> {
    let c = param::case(fig.case())?;
    let dom = param::domain_up_to(&c, max)?;
    let mut out = Vec::new();
    for n in 0..=max {
        let xs = dom.get(&n).cloned().unwrap_or_default();
        let sols = diophantine::solve_diagonal(&c.form, param::level_value(&c, n)).points;
        let imgs = |xs: &[Vec<Q>]| xs.iter().map(|x| param::phi(&c, x)).collect::<Result<Vec<_>>>();
        let ints = |xs: &[Vec<Q>], k: usize| {
            xs.iter().map(|x| linalg::to_i64_vec(&x[..k])).collect::<Result<Vec<_>>>()
        };
        let mut row = vec![n.to_string()];
        match fig {
            Figure::F8N1 => {
                // rotated coordinates (x1 + x2, x1 - x2); even sums form M'
                let rot: Vec<Point> = xs
                    .iter()
                    .map(|x| linalg::to_i64_vec(&[&x[0] + &x[1], &x[0] - &x[1]]))
                    .collect::<Result<_>>()?;
                let (even, odd): (Vec<usize>, Vec<usize>) = (0..xs.len()).partition(|&i| (rot[i][0] + rot[i][1]) % 2 == 0);
                for part in [even, odd] {
                    let sel: Vec<Vec<Q>> = part.iter().map(|&i| xs[i].clone()).collect();
                    row.push(points_cell(part.iter().map(|&i| rot[i].clone()).collect()));
                    row.push(points_cell(imgs(&sel)?));
                }
            }
            Figure::F12N7 => {
                let bs = ints(&xs, 2)?;
                row.push(cell(bs.iter().map(|b| cores::d4flat_from_lattice(b[0], b[1])).collect(), |p| format!("[{p}]")));
                row.push(points_cell(bs));
                row.push(points_cell(imgs(&xs)?));
            }
            _ => {
                row.push(points_cell(ints(&xs, 2)?));
                row.push(points_cell(imgs(&xs)?));
            }
        }
        row.push(points_cell(sols));
        out.push(row);
    }
    Ok(out)
}

pub fn write_csv<W: Write>(fig: Figure, max: u64, w: W) -> Result<()> {
    let mut wr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    let io = |e: csv::Error| Error::Parse(e.to_string());
    wr.write_record(fig.header()).map_err(io)?;
    for r in rows(fig, max)? {
        wr.write_record(&r).map_err(io)?;
    }
    wr.flush().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(())
}

pub fn to_csv_string(fig: Figure, max: u64) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(fig, max, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Parse(e.to_string()))
}
