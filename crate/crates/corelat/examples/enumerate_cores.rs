//! Lattice points of bounded atomic length and the cores they encode.

use corelat::atomic::{self, DominantWeight};
use corelat::cores;
use corelat::dynkin::{self, Lattice};
use corelat::linalg::q;

fn main() -> corelat::error::Result<()> {
    let t = dynkin::lookup("A3_1")?;
    let w = DominantWeight::fundamental(&t, 0)?;
    for (n, xs) in atomic::enumerate_atomic_up_to(&t, &w, &q(6), Lattice::M)? {
        let cs = cores::cores_of_size(4, n.to_integer().try_into().unwrap())?;
        println!("N={n}: {} lattice points, {} 4-cores", xs.len(), cs.len());
        for c in cs {
            println!("    [{c}] charge {:?}", cores::charge_of_core(4, &c)?);
        }
    }
    println!("6-bar cores of size 35: {:?}", cores::bar_cores_up_to(2, 35)?.get(&35));
    Ok(())
}
