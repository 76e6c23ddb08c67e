//! Solutions of x^2 + y^2 = k and their orbits under the dihedral group of order 8.

use corelat::diophantine::{self, DiagonalForm, GroupActionId};

fn main() -> corelat::error::Result<()> {
    let f = DiagonalForm::new(vec![1, 1])?;
    for k in [25, 50, 65, 325] {
        let u = diophantine::solve_diagonal(&f, k);
        let orbits = diophantine::orbit_partition(GroupActionId::D8, &u.points)?;
        let (free, _) = diophantine::is_action_free(GroupActionId::D8, &u.points)?;
        println!("k={k}: {} solutions, {} orbits, free: {free}", u.len(), orbits.len());
    }
    Ok(())
}
