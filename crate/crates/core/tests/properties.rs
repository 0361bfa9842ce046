use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use adecover::chisini::{fiber_intersections, iota, main_bound, t_value, PairClass, PairCounts};
use adecover::cover::{canonical_cycle_solve, CanonicalCycle, CoverGraph};
use adecover::exact::Poly;
use adecover::invariants::{chern_and_euler, Bound};
use adecover::monodromy::{BraidPair, Permutation};
use adecover::report::{num, ratio, text, Report};

const VARS: [&str; 3] = ["x", "y", "z"];

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(Poly::zero(&VARS), |acc, (c, a, b, d)| {
                &acc + &Poly::monomial(&VARS, BigRational::from_integer(c.into()), &[a, b, d])
            })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn poly_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn poly_evaluation_is_a_homomorphism(a in poly(), b in poly(), p in prop::array::uniform3(-4i64..=4)) {
        let pt: Vec<BigRational> = p.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        prop_assert_eq!((&a * &b).evaluate(&pt), a.evaluate(&pt) * b.evaluate(&pt));
        prop_assert_eq!((&a + &b).evaluate(&pt), a.evaluate(&pt) + b.evaluate(&pt));
    }

    /// A chain of (-2)-curves is negative definite; choosing `Z` and setting
    /// `R = -M Z` must give back `Z`.
    #[test]
    fn cycle_solver_inverts_the_form(z in prop::collection::vec(0i64..50, 1..10)) {
        let n = z.len();
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        let probe = CoverGraph::from_dynkin_edges(n, &edges, vec![0; n]).unwrap();
        let r: Vec<i64> = (0..n).map(|i| -(0..n).map(|j| probe.intersection(i, j) * z[j]).sum::<i64>()).collect();
        let g = CoverGraph::from_dynkin_edges(n, &edges, r).unwrap();
        let solved = canonical_cycle_solve(&g).unwrap();
        prop_assert_eq!(&solved, &CanonicalCycle(z));
        prop_assert!(g.satisfies_cycle_equation(&solved));
    }

    #[test]
    fn noether_holds(
        n in 1u64..20,
        d_bar in 1u64..30,
        delta_x in 0i64..40,
        np4 in 0u64..10,
        cp3 in 0u64..10,
        shift in 1i64..5,
    ) {
        let (n_p, c_p) = (4 * np4, 3 * cp3);
        let d = 2 * d_bar as i64;
        let pa = BigInt::from((d - 1) * (d - 2) / 2 - n_p as i64 - c_p as i64);
        let delta_x = BigInt::from(delta_x);
        let g = &pa - &delta_x;
        prop_assume!(g >= BigInt::from(0));
        let c = chern_and_euler(n, d_bar, &pa, &g, &delta_x, n_p, c_p).unwrap();
        prop_assert_eq!(&c.k2 + &c.euler, BigInt::from(12) * &c.chi);
        let off = &pa + BigInt::from(shift);
        let g_off = &off - &delta_x;
        prop_assert!(chern_and_euler(n, d_bar, &off, &g_off, &delta_x, n_p, c_p).is_err());
    }

    #[test]
    fn iota_matches_pointwise_sum(nodes in prop::array::uniform4(0u64..50), cusps in prop::array::uniform4(0u64..50)) {
        let c = PairCounts { nodes, cusps };
        let expected = 2 * c.node(PairClass::SP) + 2 * c.cusp(PairClass::SP) + c.cusp(PairClass::PP);
        prop_assert_eq!(iota(&c), expected);
        let s = c.swapped();
        prop_assert_eq!(s.swapped(), c);
        prop_assert_eq!(s.node(PairClass::PS), c.node(PairClass::SP));
    }

    #[test]
    fn hodge_determinant_identity(d_bar in 1u64..500, g1 in 0i64..500, iota1 in 0u64..3000, n2 in 2u64..40) {
        let g1 = BigInt::from(g1);
        let f = fiber_intersections(d_bar, &g1, iota1, n2);
        let t = t_value(d_bar, &g1);
        let i = BigInt::from(iota1);
        let n2b = BigInt::from(n2);
        prop_assert_eq!(&f.r_sq * &f.c_sq - &f.rc * &f.rc, f.determinant());
        prop_assert_eq!(f.determinant(), &t * (&n2b * (BigInt::from(2) * &t - &i) - BigInt::from(4) * &t));
        if let Ok(Bound::Finite(b)) = main_bound(d_bar, &g1, iota1) {
            prop_assert_eq!(BigRational::from_integer(n2b) <= b, f.determinant() <= BigInt::from(0));
        }
    }

    #[test]
    fn canonical_form_is_conjugation_invariant(
        (a, b, g) in (2usize..7).prop_flat_map(|n| (permutation(n), permutation(n), permutation(n)))
    ) {
        let pair = BraidPair { a, b };
        prop_assume!(pair.is_transitive());
        let moved = pair.conjugate_by(&g);
        prop_assert_eq!(moved.canonical(), pair.canonical());
        prop_assert_eq!(moved.satisfies_braid_relation(), pair.satisfies_braid_relation());
        prop_assert!(moved.is_transitive());
    }

    #[test]
    fn report_round_trip(
        key in "[a-z_]{1,8}",
        value in any::<i64>(),
        huge in prop::collection::vec(any::<u32>(), 1..6),
        p in -1000i64..1000,
        q in 1i64..1000,
        note in "[ -~]{0,20}",
    ) {
        let big = huge.iter().fold(BigInt::from(1), |acc, &w| acc * BigInt::from(w) + 1u32);
        let mut r = Report::new("prop");
        r.input(&key, num(value));
        r.set("big", num(big)).set("ratio", ratio(&BigRational::new(p.into(), q.into()))).set("note", text(note.clone()));
        r.warn(note);
        let s = r.to_machine();
        let back = Report::from_machine(&s).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(back.to_machine(), s);
    }
}

#[test]
#[should_panic(expected = "transitive pairs only")]
fn canonical_form_rejects_intransitive_pairs() {
    let t = Permutation::from_cycles(4, &[&[1, 2]]).unwrap();
    BraidPair { a: t.clone(), b: t }.canonical();
}
