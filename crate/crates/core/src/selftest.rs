//! Fixture suite run by `adecover selftest`: published tables and classical
//! values checked against the library.

use num_bigint::BigInt;

use crate::chisini::{chisini_criterion, fiber_intersections, main_bound, t_value};
use crate::cover::{analyze, defect_closed_form, CanonicalCycle, CoverGraph};
use crate::exact::rat;
use crate::invariants::{compute, plucker_dual_degree, Bound, CoveringProfile, SingularityProfile};
use crate::local_models::{pleat_normal_form_check, verify_f3_identity, verify_f6_identity};
use crate::monodromy::{enumerate_cusp_monodromies, ClassTag, DEFAULT_CAP};
use crate::resolution::{resolve, AdeFamily, AdeType, CurveGerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// Disagrees with a printed value that is shown to be impossible.
    Deviation,
    Fail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Deviation => "deviation",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfCheck {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> SelfCheck {
    SelfCheck {
        name: name.into(),
        status: if ok { Status::Pass } else { Status::Fail },
        detail: detail.into(),
    }
}

/// Canonical cycle coefficients as printed, one per curve of the plane
/// resolution (the two lifts of a split curve counted once).
pub fn printed_grouped_cycle(t: AdeType) -> Vec<i64> {
    let n = t.index as i64;
    match t.family {
        AdeFamily::A => (1..=(n + 1) / 2).collect(),
        AdeFamily::D if n % 2 == 0 => {
            let k = (n - 2) / 2;
            let mut z: Vec<i64> = (1..=k).map(|i| 2 * i + 1).collect();
            z.extend((1..=k).map(|i| 2 * i));
            z.extend([k + 1, k + 1]);
            z
        }
        AdeFamily::D => {
            let k = (n - 3) / 2;
            let mut z: Vec<i64> = (1..=k).map(|i| 2 * i + 1).collect();
            z.extend((1..=k).map(|i| 2 * i));
            z.extend([2 * k + 2, k + 1]);
            z
        }
        AdeFamily::E => match n {
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

/// Whether some placement of `coeffs` on the vertices of `g` solves the
/// cycle equation with a nonnegative incidence `R.L = -(M z)`. Exhaustive
/// over distinct arrangements.
pub fn cycle_realizable(g: &CoverGraph, coeffs: &[i64]) -> bool {
    fn rec(g: &CoverGraph, pool: &mut Vec<i64>, placed: &mut Vec<i64>) -> bool {
        if pool.is_empty() {
            let z = CanonicalCycle(placed.clone());
            return (0..g.len()).all(|i| {
                let mz: i64 = (0..g.len()).map(|j| g.intersection(i, j) * z.0[j]).sum();
                mz <= 0
            });
        }
        let mut tried = Vec::new();
        for i in 0..pool.len() {
            if tried.contains(&pool[i]) {
                continue;
            }
            tried.push(pool[i]);
            let v = pool.remove(i);
            placed.push(v);
            let found = rec(g, pool, placed);
            placed.pop();
            pool.insert(i, v);
            if found {
                return true;
            }
        }
        false
    }
    coeffs.len() == g.len() && rec(g, &mut coeffs.to_vec(), &mut Vec::new())
}

fn cycle_checks(out: &mut Vec<SelfCheck>) {
    for t in AdeType::catalogue(10, 10) {
        let a = match analyze(t) {
            Ok(a) => a,
            Err(e) => {
                out.push(check(format!("cycle {t}"), false, e.to_string()));
                continue;
            }
        };
        let ours = a.minimal.grouped_sorted();
        let printed = sorted(printed_grouped_cycle(t));
        let name = format!("cycle {t}");
        if ours == printed {
            out.push(check(name, a.formula_matches_solver(), format!("{ours:?}")));
        } else {
            let differing = ours.iter().zip(&printed).filter(|(a, b)| a != b).count();
            let impossible = a.minimal.graph.len() == printed.len()
                && !cycle_realizable(&a.minimal.graph, &printed);
            let ok = impossible
                && differing <= 1
                && a.minimal.graph.satisfies_cycle_equation(&a.minimal.cycle);
            out.push(SelfCheck {
                name,
                status: if ok { Status::Deviation } else { Status::Fail },
                detail: format!(
                    "ours {ours:?}, printed {printed:?}, printed realizable: {}",
                    !impossible
                ),
            });
        }
        out.push(check(
            format!("defect {t}"),
            a.defect == defect_closed_form(t),
            format!("{} (closed form {})", a.defect, defect_closed_form(t)),
        ));
    }
}

/// Runs every fixture and returns one entry per check.
pub fn run_selftest() -> Vec<SelfCheck> {
    let mut out = Vec::new();
    cycle_checks(&mut out);

    match resolve(&CurveGerm::parse("y^2 - x^3").expect("literal")) {
        Ok(r) => out.push(check(
            "cusp resolution",
            r.alphas() == [2, 3, 6] && r.self_intersections() == [-3, -2, -1],
            format!("alpha {:?}, self {:?}", r.alphas(), r.self_intersections()),
        )),
        Err(e) => out.push(check("cusp resolution", false, e.to_string())),
    }

    let cubic = CoveringProfile::new(3, 6, (0, 0), (0, 6), SingularityProfile::new())
        .and_then(|p| compute(&p));
    match cubic {
        Ok(r) => out.push(check(
            "cubic surface",
            r.chern.k2 == 3.into()
                && r.chern.euler == 9.into()
                && r.chern.chi == 1.into()
                && r.g == 4.into()
                && r.bounds.hodge == Bound::Finite(rat(3, 1))
                && r.bounds.hodge_equality,
            format!(
                "K^2 {}, e {}, chi {}, g {}, bound {}",
                r.chern.k2, r.chern.euler, r.chern.chi, r.g, r.bounds.hodge
            ),
        )),
        Err(e) => out.push(check("cubic surface", false, e.to_string())),
    }

    let zero = BigInt::from(0);
    let nodal = plucker_dual_degree(3, &zero, &zero).ok();
    let cuspidal = plucker_dual_degree(3, &zero, &BigInt::from(1)).ok();
    out.push(check(
        "plucker",
        nodal == Some(4.into()) && cuspidal == Some(3.into()),
        format!("nodal {nodal:?}, cuspidal {cuspidal:?}"),
    ));

    let twos =
        (1..=5u64).all(|d| main_bound(d, &BigInt::from(d), 0) == Ok(Bound::Finite(rat(2, 1))));
    out.push(check("main bound at iota = 0", twos, "d_bar = g1 = 1..5"));

    let expectations = [
        (3, 1, true),
        (2, 2, false),
        (2, 3, true),
        (1, 9, false),
        (1, 10, true),
    ];
    let mc_ok = expectations.iter().all(|&(m, k, holds)| {
        chisini_criterion(m, k, None)
            .map(|v| v.holds == holds)
            .unwrap_or(false)
    });
    let rhs = chisini_criterion(3, 1, None).map(|v| v.rhs).ok();
    out.push(check(
        "m-canonical criterion",
        mc_ok && rhs == Some(rat(173, 3)),
        "(3,1) (2,2) (2,3) (1,9) (1,10)",
    ));

    for n in 2..=DEFAULT_CAP {
        let res = enumerate_cusp_monodromies(n, DEFAULT_CAP);
        let ok = match (&res, n) {
            (Ok(c), 2) => c.len() == 1 && c[0].tag == ClassTag::F2,
            (Ok(c), 3) => c.len() == 1 && c[0].tag == ClassTag::F3,
            (Ok(c), 6) => c.len() == 1 && c[0].tag == ClassTag::F6,
            (Ok(c), _) => c.is_empty(),
            _ => false,
        };
        let count = res.as_ref().map(Vec::len).unwrap_or(0);
        out.push(check(
            format!("monodromy N={n}"),
            ok,
            format!("{count} classes"),
        ));
    }

    out.push(check("f3 identity", verify_f3_identity().is_ok(), ""));
    out.push(check("f6 identity", verify_f6_identity().is_ok(), ""));
    for k in 1..=3 {
        out.push(check(
            format!("pleat k={k}"),
            pleat_normal_form_check(k).is_ok(),
            "",
        ));
    }

    let g1 = BigInt::from(137);
    let f = fiber_intersections(40, &g1, 9, 25);
    out.push(check(
        "fiber product (m,k) = (5,1)",
        f.r_sq == 503.into()
            && f.c_sq == 5879.into()
            && f.rc == 9.into()
            && t_value(40, &g1) == 256.into(),
        format!("({}, {}, {})", f.r_sq, f.c_sq, f.rc),
    ));
    out
}
