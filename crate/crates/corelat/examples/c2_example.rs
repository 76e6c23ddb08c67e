//! The C2 parametrisation at N = 40: three lattice points mapped to orbit
//! representatives of x^2 + y^2 = 325.

use corelat::param::{self, CaseId};

fn main() -> corelat::error::Result<()> {
    let c = param::case(CaseId::C2)?;
    let r = param::verify(&c, 40)?;
    println!("{}", serde_json::to_string_pretty(&r).unwrap());
    Ok(())
}
