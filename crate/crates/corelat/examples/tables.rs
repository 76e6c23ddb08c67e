//! The four comparison tables as CSV.

use corelat::tables::{self, Figure};

fn main() -> corelat::error::Result<()> {
    for (fig, max) in [(Figure::F8N1, 6), (Figure::F40N10, 3), (Figure::F6N7, 3), (Figure::F12N7, 8)] {
        println!("== {fig}");
        print!("{}", tables::to_csv_string(fig, max)?);
    }
    Ok(())
}
