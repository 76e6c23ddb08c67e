//! Lifting solutions of x^2 + y^2 = m to x^2 + y^2 = k through Gaussian integers.

use corelat::diophantine::{self, DiagonalForm};

fn main() -> corelat::error::Result<()> {
    let f = DiagonalForm::new(vec![1, 1])?;
    for k in [10, 50, 90, 325, 1800] {
        let lift = diophantine::gaussian_lift(k)?;
        let um = diophantine::solve_diagonal(&f, lift.m).points;
        let img: Vec<_> = um.iter().map(|p| lift.apply(p)).collect();
        println!("k={k}: alpha={} c={} m={}, {} solutions lift to {:?}", lift.alpha, lift.c, lift.m, um.len(), img);
    }
    Ok(())
}
