//! Cores reached from the empty partition by words in the affine simple reflections.

use corelat::cores;
use corelat::weyl;

fn main() {
    let n = 2;
    let words: [&[usize]; 5] = [&[0], &[1, 0], &[2, 1, 0], &[0, 2, 1, 0], &[1, 0, 2, 1, 0]];
    for w in words {
        let p = weyl::core_from_word(n, w);
        println!("{w:?} -> [{p}], 3-core: {}", cores::is_d_core(&p, n + 1));
    }
}
