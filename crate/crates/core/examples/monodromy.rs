//! Local monodromy of a covering over a cusp of the branch curve: pairs of
//! involutions with `aba = bab`, transitive, up to relabeling.

use adecover::monodromy::{enumerate_cusp_monodromies, DEFAULT_CAP};

fn main() {
    for degree in 2..=DEFAULT_CAP {
        let classes = enumerate_cusp_monodromies(degree, DEFAULT_CAP).expect("degree within cap");
        if classes.is_empty() {
            println!("N = {degree}: none");
        }
        for c in classes {
            println!(
                "N = {degree}: {} with a = {}, b = {}, meridian type {:?}, class size {}",
                c.tag, c.representative.a, c.representative.b, c.meridian_type, c.orbit_size
            );
        }
    }
}
