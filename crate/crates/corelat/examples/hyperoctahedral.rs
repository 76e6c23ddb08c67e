//! Orbit-size checks for the hyperoctahedral parametrisations of low rank.

use corelat::param::{self, CaseId};

fn main() -> corelat::error::Result<()> {
    for id in CaseId::hyperoctahedral() {
        let c = param::case(id)?;
        let reports = param::verify_range(&c, 10)?;
        let ok = reports.iter().all(|r| r.passed());
        println!("{id}: a={} b={} form {:?}, N <= 10 pass: {ok}", c.a, c.b, c.form.0);
    }
    Ok(())
}
