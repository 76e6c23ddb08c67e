//! Rank 3 strata and the coverage conjecture for x^2 + 2y^2 + 3z^2 = 48N + 30.

use corelat::param;

fn main() -> corelat::error::Result<()> {
    let s = param::a3_strata(121)?;
    println!("Gamma_121 = {:?}", s.gamma);
    for c in param::a3_claims_range(12)? {
        let status = match c.first_failure() {
            None => "all claims hold".to_string(),
            Some(w) => format!("fails: {w}"),
        };
        println!("N={:>2}: {} solutions, {} orbits, {status}", c.n, c.solutions, c.orbits);
    }
    Ok(())
}
