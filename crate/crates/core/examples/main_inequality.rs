//! Uniqueness of a covering with a given branch curve: the fiber product
//! criterion for a pair of coverings of the same degree-6 curve.

use num_bigint::BigInt;

use adecover::chisini::{analyze_pair, main_bound, PairClassification, PairCounts};

fn main() {
    // Two cubic-surface projections sharing the six-cusp sextic, every cusp
    // over both ramification curves.
    let pair = PairClassification {
        counts: PairCounts {
            nodes: [0; 4],
            cusps: [0, 0, 0, 6],
        },
        delta0: 0,
        nu_prime: 0,
        d_bar: 3,
        n1: 3,
        n2: 3,
        g1: BigInt::from(4),
        g2: None,
        shared_invariants: true,
    };
    let report = analyze_pair(&pair).expect("consistent pair");
    let f = &report.forward;
    println!("iota = {}, T = {}", f.iota, f.t);
    println!(
        "(R+Z_R)^2 = {}, (C+Z_C)^2 = {}, R.C = {}",
        f.fiber.r_sq, f.fiber.c_sq, f.fiber.rc
    );
    println!("Hodge determinant = {}", f.hodge_determinant);
    println!(
        "N2 = {} against bound {}: {}",
        f.n2, f.bound, report.verdict
    );

    println!(
        "without shared points the bound is {}",
        main_bound(3, &BigInt::from(4), 0).expect("bound")
    );
}
