//! Where the m-canonical criterion starts to hold, for m = 1, 2, 3.

use adecover::chisini::chisini_criterion;

fn main() {
    for m in 1..=3u64 {
        let first = (1..=100u64)
            .find(|&k| chisini_criterion(m, k, None).expect("valid m, k").holds)
            .expect("criterion eventually holds");
        println!("m = {m}: holds from K^2 = {first}");
    }
    let v = chisini_criterion(3, 1, None).expect("valid m, k");
    println!(
        "m = 3, K^2 = 1: {} > {} (margin {})",
        v.lhs, v.rhs, v.margin
    );
    let sharp = chisini_criterion(2, 2, Some(46)).expect("valid m, k, e");
    println!(
        "m = 2, K^2 = 2, e = 46: margin {}, sharp margin {}",
        sharp.margin,
        sharp.sharp_margin.expect("e was given")
    );
}
