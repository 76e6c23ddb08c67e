//! Checks every named parametrisation over a range of N.

use corelat::param::{self, CaseId};

fn main() -> corelat::error::Result<()> {
    for id in CaseId::NAMED.into_iter().filter(|&id| id != CaseId::A3) {
        let c = param::case(id)?;
        let reports = param::verify_range(&c, 100)?;
        let failed = reports.iter().filter(|r| !r.passed()).count();
        let images: usize = reports.iter().map(|r| r.counts.phi_images).sum();
        println!("{id}: {images} images for N <= 100, {failed} failures");
    }
    Ok(())
}
