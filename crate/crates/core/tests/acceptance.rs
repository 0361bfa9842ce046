//! Acceptance gate: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use adecover::chisini::{
    chisini_criterion, fiber_intersections, main_bound, mcanonical_invariants, t_value,
};
use adecover::cover::{analyze, canonical_cycle_formula, canonical_cycle_solve, CoverGraph};
use adecover::exact::Poly;
use adecover::invariants::{
    arithmetic_genus_r, chern_and_euler, compute, defect_of_surface, genus_of_b,
    plucker_dual_degree, Bound, CoveringProfile, InvariantError, SingularityProfile,
};
use adecover::local_models::{pleat_normal_form_check, verify_f3_identity, verify_f6_identity};
use adecover::monodromy::{
    enumerate_cusp_monodromies, involutions, BraidPair, ClassTag, Permutation,
};
use adecover::resolution::{resolve, AdeFamily, AdeType, CurveGerm};

const SEED: u64 = 0x5eed_2024;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn z(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Canonical cycle tables as published, one coefficient per plane curve.
fn published_cycle(t: AdeType) -> Vec<i64> {
    let n = t.index as i64;
    match (t.family, n % 2) {
        (AdeFamily::A, _) => (1..=(n + 1) / 2).collect(),
        (AdeFamily::D, 0) => {
            let k = n / 2 - 1;
            let mut v: Vec<i64> = (1..=k).map(|i| 2 * i + 1).collect();
            v.extend((1..=k).map(|i| 2 * i));
            v.extend([k + 1, k + 1]);
            v
        }
        (AdeFamily::D, _) => {
            let k = (n - 3) / 2;
            let mut v: Vec<i64> = (1..=k).map(|i| 2 * i + 1).collect();
            v.extend((1..=k).map(|i| 2 * i));
            v.extend([2 * k + 2, k + 1]);
            v
        }
        (AdeFamily::E, _) => match n {
            6 => vec![3, 2, 4, 6],
            7 => vec![3, 5, 9, 6, 5, 8, 3],
            _ => vec![3, 5, 9, 15, 10, 8, 12, 6],
        },
    }
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v
}

/// E7 Cartan form with -2 on the diagonal: chain 0-1-2-3-4-5, vertex 6 on 2.
fn e7_form() -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; 7]; 7];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)] {
        m[a][b] = 1;
        m[b][a] = 1;
    }
    m
}

/// Every arrangement of `coeffs` on the vertices of `form`; true if one has
/// `-(M z) >= 0` componentwise, i.e. a valid nonnegative R-incidence.
fn some_arrangement_valid(form: &[Vec<i64>], coeffs: &[i64]) -> bool {
    fn heap(k: usize, v: &mut Vec<i64>, form: &[Vec<i64>]) -> bool {
        if k == 1 {
            return (0..v.len()).all(|i| (0..v.len()).map(|j| form[i][j] * v[j]).sum::<i64>() <= 0);
        }
        for i in 0..k {
            if heap(k - 1, v, form) {
                return true;
            }
            if k.is_multiple_of(2) {
                v.swap(i, k - 1);
            } else {
                v.swap(0, k - 1);
            }
        }
        false
    }
    let mut v = coeffs.to_vec();
    heap(v.len(), &mut v, form)
}

/// Contract (-1)-curves one at a time; at every stage the pushed-forward
/// formula cycle must equal both the formula and the solver on the new graph.
fn check_all_stages(cover: &CoverGraph) -> Result<(), String> {
    let mut g = cover.clone();
    let mut zc = canonical_cycle_formula(&g);
    loop {
        let solved = canonical_cycle_solve(&g).map_err(|e| e.to_string())?;
        if solved != zc || canonical_cycle_formula(&g) != zc {
            return Err(format!("formula {:?} vs solver {:?}", zc.0, solved.0));
        }
        let Some(e) = (0..g.len()).find(|&i| g.intersection(i, i) == -1) else {
            return Ok(());
        };
        g = g.contract(e).map_err(|e| e.to_string())?;
        zc = zc.without(e);
    }
}

fn criterion_1() -> Result<String, String> {
    let mut notes = Vec::new();
    for t in AdeType::catalogue(10, 10) {
        let a = analyze(t).map_err(|e| format!("{t}: {e}"))?;
        check_all_stages(&a.cover).map_err(|e| format!("{t}: {e}"))?;
        if !a.formula_matches_solver() {
            return Err(format!("{t}: formula and solver disagree"));
        }
        let ours = a.minimal.grouped_sorted();
        let printed = sorted(published_cycle(t));
        if ours == printed {
            continue;
        }
        if t != AdeType::e(7) {
            return Err(format!("{t}: ours {ours:?}, published {printed:?}"));
        }
        // The published E7 list cannot be a canonical cycle on E7 at all.
        if some_arrangement_valid(&e7_form(), &printed) {
            return Err(format!(
                "E7: published {printed:?} is realizable but differs from ours {ours:?}"
            ));
        }
        if !some_arrangement_valid(&e7_form(), &ours) {
            return Err(format!("E7: ours {ours:?} is not realizable"));
        }
        let diff: Vec<(i64, i64)> = ours
            .iter()
            .zip(&printed)
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (*b, *a))
            .collect();
        if diff != [(8, 7)] {
            return Err(format!("E7: unexpected difference {diff:?}"));
        }
        notes.push(format!(
            "E7 deviation: published {{3,5,9,6,5,8,3}} is not realizable on E7 (exhaustive), pipeline gives {ours:?}, one entry 8 -> 7"
        ));
    }
    Ok(format!(
        "21 types, every stage formula = solver{}",
        if notes.is_empty() {
            String::new()
        } else {
            format!("; {}", notes.join("; "))
        }
    ))
}

fn criterion_2() -> Result<String, String> {
    for t in AdeType::catalogue(10, 10) {
        let n = t.index as u64;
        let expected = match t.family {
            AdeFamily::A | AdeFamily::E => n.div_ceil(2),
            AdeFamily::D => n / 2 + 1,
        };
        let a = analyze(t).map_err(|e| e.to_string())?;
        if a.defect != expected {
            return Err(format!("{t}: defect {} expected {expected}", a.defect));
        }
    }
    Ok("21 types".into())
}

fn criterion_3() -> Result<String, String> {
    let r = resolve(&CurveGerm::parse("y^2 - x^3").unwrap()).map_err(|e| e.to_string())?;
    if r.alphas() != [2, 3, 6] || r.self_intersections() != [-3, -2, -1] {
        return Err(format!(
            "alpha {:?}, self {:?}",
            r.alphas(),
            r.self_intersections()
        ));
    }
    Ok("alpha (2,3,6), self (-3,-2,-1)".into())
}

fn criterion_4() -> Result<String, String> {
    // P^2 blown up in six points: K^2 = 9 - 6, e = 3 + 6, chi = 1. The
    // branch sextic of a generic projection has six cusps, genus 10 - 6.
    let (k2, e, chi, g) = (z(9 - 6), z(3 + 6), z(1), z(10 - 6));
    let p = CoveringProfile::new(3, 6, (0, 0), (0, 6), SingularityProfile::new())
        .map_err(|e| e.to_string())?;
    let r = compute(&p).map_err(|e| e.to_string())?;
    if r.delta_x != z(0) || r.chern.k2 != k2 || r.chern.euler != e || r.chern.chi != chi || r.g != g
    {
        return Err(format!("{:?}", r));
    }
    if r.bounds.hodge != Bound::Finite(q(3, 1)) || !r.bounds.hodge_equality {
        return Err(format!("bound {:?}", r.bounds));
    }
    Ok("K^2 3, e 9, chi 1, g 4, bound 3 (equality)".into())
}

fn random_profile(rng: &mut ChaCha8Rng) -> Option<(CoveringProfile, u64, u64)> {
    let d_bar = rng.gen_range(1..=25u64);
    let d = 2 * d_bar;
    let n = rng.gen_range(2..=d_bar + 1);
    let n_p = 4 * rng.gen_range(0..=4u64);
    let c_p = 3 * rng.gen_range(0..=6u64);
    let n_s = rng.gen_range(0..=5u64);
    let c_s = rng.gen_range(0..=5u64);
    let mut higher = SingularityProfile::new();
    for _ in 0..rng.gen_range(0..=3) {
        let t = match rng.gen_range(0..3) {
            0 => AdeType::a(rng.gen_range(3..=9)),
            1 => AdeType::d(rng.gen_range(4..=9)),
            _ => AdeType::e(rng.gen_range(6..=8)),
        };
        higher.add(t, 1);
    }
    // Too many singular points for the degree gives a negative genus; the
    // caller resamples.
    let p = CoveringProfile::new(n, d, (n_s, n_p), (c_s, c_p), higher).ok()?;
    let g = genus_of_b(d, &p.delta_b()).ok()?;
    (g >= BigInt::from(0)).then_some((p, n_p, c_p))
}

fn criterion_5() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut valid = 0;
    let mut rejected = 0;
    while valid < 1000 {
        let Some((p, n_p, c_p)) = random_profile(&mut rng) else {
            continue;
        };
        let delta_x = defect_of_surface(&p).map_err(|e| e.to_string())?;
        let g = genus_of_b(p.d(), &p.delta_b()).map_err(|e| e.to_string())?;
        let pa = arithmetic_genus_r(p.d(), n_p, c_p);
        let c = chern_and_euler(p.degree(), p.d_bar(), &pa, &g, &delta_x, n_p, c_p)
            .map_err(|e| e.to_string())?;
        if &c.k2 + &c.euler != z(12) * &c.chi {
            return Err(format!("Noether fails for {p:?}"));
        }
        // K^2 from the degree form, computed here directly.
        let d = z(p.d() as i64);
        let k2_alt = z(9) * z(p.degree() as i64) + (&d * (&d - z(12))) / z(2)
            - z(n_p as i64)
            - z(c_p as i64);
        if c.k2 != k2_alt {
            return Err(format!("K^2 forms disagree for {p:?}"));
        }
        valid += 1;

        let bump_n = rng.gen_range(1..=3u64);
        let bump_c = rng.gen_range(1..=2u64);
        let (ns, np) = p.node_split();
        let (cs, cp) = p.cusp_split();
        for (np2, cp2) in [(np + bump_n, cp), (np, cp + bump_c)] {
            let built =
                CoveringProfile::new(p.degree(), p.d(), (ns, np2), (cs, cp2), p.higher().clone());
            let direct = chern_and_euler(p.degree(), p.d_bar(), &pa, &g, &delta_x, np2, cp2);
            match (built, direct) {
                (
                    Err(InvariantError::NonIntegralChi { .. }),
                    Err(InvariantError::NonIntegralChi { .. }),
                ) => rejected += 1,
                other => {
                    return Err(format!(
                        "perturbation ({np2}, {cp2}) not rejected: {other:?}"
                    ))
                }
            }
        }
    }
    Ok(format!(
        "{valid} profiles, {rejected} perturbations rejected"
    ))
}

fn criterion_6() -> Result<String, String> {
    // Classical class formula d(d-1) - 2 nodes - 3 cusps for a cubic.
    let oracle = |nodes: i64, cusps: i64| z(3 * 2 - 2 * nodes - 3 * cusps);
    let nodal = SingularityProfile::new().with(AdeType::a(1), 1);
    let cuspidal = SingularityProfile::new().with(AdeType::a(2), 1);
    let g = z(0);
    let dn = plucker_dual_degree(3, &g, &nodal.nu().0).map_err(|e| e.to_string())?;
    let dc = plucker_dual_degree(3, &g, &cuspidal.nu().0).map_err(|e| e.to_string())?;
    if dn != oracle(1, 0) || dc != oracle(0, 1) || dn != z(4) || dc != z(3) {
        return Err(format!("nodal {dn}, cuspidal {dc}"));
    }
    Ok("nodal cubic 4, cuspidal cubic 3".into())
}

fn criterion_7() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    for _ in 0..100 {
        let d_bar = rng.gen_range(1..=1000u64);
        let g1 = z(rng.gen_range(0..=1000));
        let b = main_bound(d_bar, &g1, 0).map_err(|e| e.to_string())?;
        if b != Bound::Finite(q(2, 1)) {
            return Err(format!("bound {b:?} at ({d_bar}, {g1})"));
        }
    }

    // det [[2T - i, i], [i, (n - 2)T - i]] = T (n (2T - i) - 4T) as polynomials.
    let vars = ["t", "i", "n"];
    let p = |s: &str| Poly::parse(&vars, s).unwrap();
    let det = p("(2*t - i)*((n - 2)*t - i) - i^2");
    let factored = p("t*(n*(2*t - i) - 4*t)");
    if det != factored {
        return Err(format!("{det} != {factored}"));
    }

    let mut checked = 0;
    for _ in 0..2000 {
        let d_bar = rng.gen_range(1..=40u64);
        let g1 = z(rng.gen_range(0..=60));
        let iota = rng.gen_range(0..=200u64);
        let n2 = rng.gen_range(2..=12u64);
        let t = t_value(d_bar, &g1);
        let f = fiber_intersections(d_bar, &g1, iota, n2);
        let point = [
            BigRational::from_integer(t.clone()),
            q(iota as i64, 1),
            q(n2 as i64, 1),
        ];
        if BigRational::from_integer(f.determinant()) != det.evaluate(&point) {
            return Err("fiber matrix determinant disagrees with the symbolic form".into());
        }
        if let Bound::Finite(bound) = main_bound(d_bar, &g1, iota).map_err(|e| e.to_string())? {
            let within = q(n2 as i64, 1) <= bound;
            if within != (f.determinant() <= z(0)) {
                return Err(format!(
                    "det <= 0 and N2 <= bound disagree at ({d_bar}, {g1}, {iota}, {n2})"
                ));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "100 bounds equal 2; determinant identity symbolic; {checked} random points agree"
    ))
}

fn rhs_oracle(m: i64, k: i64) -> BigRational {
    let s = q(3, 1) + q(1, m);
    q(11, 9) + (q(12, 1) + q(4, 1) * &s * &s) / q(k, 1)
}

fn criterion_8() -> Result<String, String> {
    let holds = |m: u64, k: u64| {
        chisini_criterion(m, k, None)
            .map(|v| v.holds)
            .map_err(|e| e.to_string())
    };
    for m in 3..=50u64 {
        for k in 1..=1000u64 {
            if !holds(m, k)? {
                return Err(format!("fails at ({m}, {k})"));
            }
        }
    }
    // Beyond the grid: the left side grows with m and the right side is
    // nonincreasing in m and k, so (3, 1) is the worst case for m >= 3.
    for m in 1..=30i64 {
        for k in 1..=60i64 {
            let here = rhs_oracle(m, k);
            if rhs_oracle(m + 1, k) > here || rhs_oracle(m, k + 1) > here {
                return Err(format!("right side not monotone at ({m}, {k})"));
            }
            let v = chisini_criterion(m as u64, k as u64, None).map_err(|e| e.to_string())?;
            if v.rhs != here || v.lhs != z(3 * m * (2 * m + 1)) {
                return Err(format!(
                    "criterion sides differ from the oracle at ({m}, {k})"
                ));
            }
        }
    }
    for k in 1..=1000u64 {
        if holds(2, k)? != (k >= 3) {
            return Err(format!("m = 2, k = {k}"));
        }
        if holds(1, k)? != (k >= 10) {
            return Err(format!("m = 1, k = {k}"));
        }
    }
    let v = chisini_criterion(3, 1, None).map_err(|e| e.to_string())?;
    if v.rhs != q(173, 3) {
        return Err(format!("rhs at (3,1) is {}", v.rhs));
    }
    Ok("m >= 3 holds (grid m <= 50, k <= 1000, monotone); m = 2 from k = 3; m = 1 from k = 10; rhs(3,1) = 173/3".into())
}

/// Independent count: conjugacy orbits of transitive braid pairs of
/// involutions, by closing each pair under conjugation by all of S_n.
fn orbit_count(n: usize) -> (usize, Vec<Vec<usize>>) {
    let all: Vec<Permutation> = {
        let mut out = Vec::new();
        let mut v: Vec<usize> = (0..n).collect();
        fn rec(v: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
            if k == v.len() {
                out.push(Permutation::new(v.clone()).unwrap());
            }
            for i in k..v.len() {
                v.swap(k, i);
                rec(v, k + 1, out);
                v.swap(k, i);
            }
        }
        rec(&mut v, 0, &mut out);
        out
    };
    let invs = involutions(n);
    let mut seen = std::collections::HashSet::new();
    let mut orbits = 0;
    let mut types = Vec::new();
    for a in &invs {
        for b in &invs {
            let pair = BraidPair {
                a: a.clone(),
                b: b.clone(),
            };
            if seen.contains(&pair) || !pair.satisfies_braid_relation() || !pair.is_transitive() {
                continue;
            }
            orbits += 1;
            types.push(a.cycle_type());
            for g in &all {
                seen.insert(pair.conjugate_by(g));
            }
        }
    }
    (orbits, types)
}

fn criterion_9() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut found = Vec::new();
    for n in 2..=8usize {
        let classes = enumerate_cusp_monodromies(n, 8).map_err(|e| e.to_string())?;
        let expected = match n {
            2 => Some((ClassTag::F2, vec![2])),
            3 => Some((ClassTag::F3, vec![2, 1])),
            6 => Some((ClassTag::F6, vec![2, 2, 2])),
            _ => None,
        };
        match (&expected, classes.as_slice()) {
            (None, []) => {}
            (Some((tag, ty)), [c])
                if c.tag == *tag
                    && c.meridian_type == *ty
                    && c.representative.b.cycle_type() == *ty =>
            {
                found.push(format!("N={n} {tag}"));
            }
            _ => return Err(format!("N = {n}: {classes:?}")),
        }
        if n <= 6 {
            let (orbits, types) = orbit_count(n);
            let lib_types: Vec<Vec<usize>> =
                classes.iter().map(|c| c.meridian_type.clone()).collect();
            if orbits != classes.len() || types != lib_types {
                return Err(format!("N = {n}: independent count {orbits} {types:?}"));
            }
        }
        // Relabeling invariance: a random conjugate canonicalizes to the same class.
        for c in &classes {
            let mut images: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                images.swap(i, rng.gen_range(0..=i));
            }
            let g = Permutation::new(images).unwrap();
            if c.representative.conjugate_by(&g).canonical() != c.representative {
                return Err(format!("N = {n}: class not stable under relabeling"));
            }
        }
    }
    Ok(format!("classes only at {}", found.join(", ")))
}

fn criterion_10() -> Result<String, String> {
    let mut records = vec![
        verify_f3_identity().map_err(|e| e.to_string())?,
        verify_f6_identity().map_err(|e| e.to_string())?,
    ];
    for k in 1..=3 {
        records.push(pleat_normal_form_check(k).map_err(|e| e.to_string())?);
    }
    for r in &records {
        if !r.remainder.is_zero() {
            return Err(format!("{}: remainder {}", r.name, r.remainder));
        }
    }
    Ok("f3, f6, pleat k = 1, 2, 3: zero remainder".into())
}

fn criterion_11() -> Result<String, String> {
    let g1 = z(137);
    let f = fiber_intersections(40, &g1, 9, 25);
    let t = t_value(40, &g1);
    let m = mcanonical_invariants(5, 1).map_err(|e| e.to_string())?;
    let square = z((3 * 5 + 1) * (3 * 5 + 1));
    if (f.r_sq.clone(), f.c_sq.clone(), f.rc.clone()) != (z(503), z(5879), z(9))
        || t != z(256)
        || t != square
        || m.t != t
    {
        return Err(format!("({}, {}, {}), T = {t}", f.r_sq, f.c_sq, f.rc));
    }
    Ok("(503, 5879, 9), T = 256 = 16^2".into())
}

fn main() {
    type Criterion = fn() -> Result<String, String>;
    let criteria: [(&str, Criterion); 11] = [
        ("canonical cycles", criterion_1),
        ("defects", criterion_2),
        ("cusp resolution", criterion_3),
        ("cubic surface", criterion_4),
        ("Noether identity", criterion_5),
        ("Plucker", criterion_6),
        ("main inequality", criterion_7),
        ("m-canonical boundary", criterion_8),
        ("monodromy classes", criterion_9),
        ("local identities", criterion_10),
        ("fiber product", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
