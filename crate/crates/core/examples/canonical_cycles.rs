//! Canonical cycles and defects of the double covers over every A-D-E type
//! up to A10, D10, E8.

use adecover::cover::analyze;
use adecover::resolution::AdeType;

fn main() {
    for t in AdeType::catalogue(10, 10) {
        let a = analyze(t).expect("every A-D-E germ has a double cover");
        let z: Vec<String> = a
            .minimal
            .grouped_cycle()
            .into_iter()
            .map(|(name, c)| format!("{c}{name}"))
            .collect();
        println!(
            "{t:>4}: defect {}, Z = {}, formula = solver: {}",
            a.defect,
            z.join(" + "),
            a.formula_matches_solver()
        );
    }
}
