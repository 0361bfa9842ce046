//! A generic projection of a smooth cubic surface: degree 3, branch sextic
//! with six cusps, all over the ramification curve.

use adecover::invariants::{compute, CoveringProfile, SingularityProfile};

fn main() {
    let profile = CoveringProfile::new(3, 6, (0, 0), (0, 6), SingularityProfile::new())
        .expect("valid profile");
    let r = compute(&profile).expect("invariants");
    println!("genus of the branch curve g = {}", r.g);
    println!(
        "K^2 = {}, e = {}, chi = {}",
        r.chern.k2, r.chern.euler, r.chern.chi
    );
    println!("dual degree of B = {}", r.dual_degree);
    println!(
        "degree bounds: N <= {} (simple), N <= {} (Hodge, equality: {})",
        r.bounds.simple, r.bounds.hodge, r.bounds.hodge_equality
    );
}
