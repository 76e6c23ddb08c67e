use corelat::tables::{to_csv_string, Figure};

fn golden(fig: Figure) -> String {
    let path = format!("{}/tests/golden/{fig}.csv", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn tables_match_golden_files() {
    for (fig, max) in [(Figure::F8N1, 14), (Figure::F40N10, 6), (Figure::F6N7, 5), (Figure::F12N7, 19)] {
        assert_eq!(to_csv_string(fig, max).unwrap(), golden(fig), "{fig}");
    }
}
