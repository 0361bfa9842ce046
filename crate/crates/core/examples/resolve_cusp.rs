//! Embedded resolution of the cusp `y^2 = x^3`, step by step.

use adecover::resolution::{resolve, CurveGerm};

fn main() {
    let germ = CurveGerm::parse("y^2 - x^3").expect("valid germ");
    let record = resolve(&germ).expect("cusp resolves");
    println!("germ: {}", record.germ());
    for (i, step) in record.steps().iter().enumerate() {
        println!(
            "blow-up {}: centre {}, {}, multiplicity {}, creates L{}",
            i + 1,
            step.center,
            step.reason.name(),
            step.multiplicity,
            step.new_curve + 1
        );
    }
    for c in record.curves() {
        println!(
            "L{}: alpha {}, self-intersection {}",
            c.id, c.alpha, c.self_int
        );
    }
    let (resolving, extra) = record.stage_split();
    println!("{resolving} blow-up(s) to resolve, {extra} more to make the branch data transverse");
}
