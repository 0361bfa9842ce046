//! Polynomial identities behind the local models, checked exactly.

use adecover::local_models::{pleat_normal_form_check, verify_f3_identity, verify_f6_identity};

fn main() {
    let mut records = vec![
        verify_f3_identity().expect("f3"),
        verify_f6_identity().expect("f6"),
    ];
    records.extend((1..=3).map(|k| pleat_normal_form_check(k).expect("pleat")));
    for r in records {
        println!(
            "{}:\n    lhs {}\n    rhs {}\n    remainder after reduction {}",
            r.name, r.lhs, r.rhs, r.remainder
        );
        for (k, v) in &r.facts {
            println!("    {k}: {v}");
        }
    }
}
