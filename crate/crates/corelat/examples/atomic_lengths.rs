//! Atomic lengths of a few lattice points across affine types, and the defect
//! term that measures how far the length is from additive.

use corelat::atomic::{self, DominantWeight};
use corelat::dynkin::{self, Lattice};
use corelat::linalg::{self, fmt_vec};

fn main() -> corelat::error::Result<()> {
    for name in ["A2_1", "C2_1", "G2_1", "D4_3", "B3_1"] {
        let t = dynkin::lookup(name)?;
        let basis = t.lattice_basis(Lattice::M)?;
        let x = linalg::combine_int(&vec![1; basis.len()], basis);
        let y = linalg::combine_int(&(0..basis.len() as i64).map(|i| i - 1).collect::<Vec<_>>(), basis);
        let w = DominantWeight::fundamental(&t, 0)?;
        let len = |v: &[_]| atomic::extended_atomic_length(&t, &w, v);
        println!(
            "{name}: L({}) = {}, L({}) = {}, L(x+y) = {}, defect = {}",
            fmt_vec(&x),
            len(&x)?,
            fmt_vec(&y),
            len(&y)?,
            len(&linalg::add(&x, &y))?,
            atomic::defect_d(&t, &w, &x, &y)
        );
    }
    Ok(())
}
