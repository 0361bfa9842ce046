//! Numerical invariants of a generic covering `f: X -> P^2` of degree `N`
//! with discriminant curve `B` of degree `d = 2 d_bar`, where `X` has A-D-E
//! singularities and `S -> X` is the minimal resolution.
//!
//! Nodes and cusps of `B` are split into s-points (images of singular
//! points of `X`) and p-points (coming from the projection). All higher
//! singularities of `B` are s-points.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::cover::defect_closed_form;
use crate::resolution::{AdeFamily, AdeType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("degree of the discriminant curve must be even, got {0}")]
    OddDegree(u64),
    #[error("degree {0} is too small")]
    DegreeTooSmall(u64),
    #[error("covering degree must be at least 1")]
    ZeroCoveringDegree,
    #[error("n_p = {n_p} must be divisible by 4 and c_p = {c_p} by 3")]
    NonIntegralChi { n_p: u64, c_p: u64 },
    #[error("negative geometric genus {0}")]
    NegativeGenus(BigInt),
    #[error("{0} belongs in the node/cusp counts, not among higher singularities")]
    MisplacedSingularity(AdeType),
    #[error("covering degree {n} exceeds the bound {bound}")]
    BoundViolated { n: u64, bound: String },
    #[error("dual degree {0} is not positive")]
    InvalidDual(BigInt),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

fn b(x: u64) -> BigInt {
    BigInt::from(x)
}

fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Either an exact rational bound or no bound at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Finite(BigRational),
    Unbounded,
}

impl Bound {
    /// `value <= bound`.
    pub fn admits(&self, value: &BigRational) -> bool {
        match self {
            Bound::Finite(b) => value <= b,
            Bound::Unbounded => true,
        }
    }

    pub fn attained_by(&self, value: &BigRational) -> bool {
        matches!(self, Bound::Finite(b) if b == value)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(r) => write!(f, "{r}"),
            Bound::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// Counts of singular points of `B` by type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SingularityProfile {
    counts: BTreeMap<AdeType, u64>,
}

impl SingularityProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, t: AdeType, count: u64) -> Self {
        self.add(t, count);
        self
    }

    pub fn add(&mut self, t: AdeType, count: u64) {
        if count > 0 {
            *self.counts.entry(t).or_default() += count;
        }
    }

    pub fn count(&self, t: AdeType) -> u64 {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (AdeType, u64)> + '_ {
        self.counts.iter().map(|(t, c)| (*t, *c))
    }

    pub fn nodes(&self) -> u64 {
        self.count(AdeType::a(1))
    }

    pub fn cusps(&self) -> u64 {
        self.count(AdeType::a(2))
    }

    /// Total defect of everything except nodes and cusps.
    pub fn delta0(&self) -> BigInt {
        self.iter()
            .filter(|(t, _)| !is_node_or_cusp(*t))
            .map(|(t, c)| b(c) * b(defect_closed_form(t)))
            .sum()
    }

    /// `(nu, nu')` where `nu = c + nu'`.
    pub fn nu(&self) -> (BigInt, BigInt) {
        let nu_prime: BigInt = self
            .iter()
            .filter(|(t, _)| !is_node_or_cusp(*t))
            .map(|(t, c)| b(c) * b(nu_invariant(t)))
            .sum();
        (b(self.cusps()) + &nu_prime, nu_prime)
    }
}

fn is_node_or_cusp(t: AdeType) -> bool {
    t.family == AdeFamily::A && t.index <= 2
}

/// Sum over the branches of `B` at the point of (multiplicity - 1).
pub fn nu_invariant(t: AdeType) -> u64 {
    match (t.family, t.index) {
        (AdeFamily::A, n) => (n % 2 == 0) as u64,
        (AdeFamily::D, n) => (n % 2 == 1) as u64,
        (AdeFamily::E, 7) => 1,
        (AdeFamily::E, _) => 2,
    }
}

/// Validated input for the invariant formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringProfile {
    degree: u64,
    d: u64,
    n_s: u64,
    n_p: u64,
    c_s: u64,
    c_p: u64,
    higher: SingularityProfile,
}

impl CoveringProfile {
    pub fn new(
        degree: u64,
        d: u64,
        (n_s, n_p): (u64, u64),
        (c_s, c_p): (u64, u64),
        higher: SingularityProfile,
    ) -> Result<Self, InvariantError> {
        if degree == 0 {
            return Err(InvariantError::ZeroCoveringDegree);
        }
        if d % 2 == 1 {
            return Err(InvariantError::OddDegree(d));
        }
        if d == 0 {
            return Err(InvariantError::DegreeTooSmall(d));
        }
        if let Some((t, _)) = higher.iter().find(|(t, _)| is_node_or_cusp(*t)) {
            return Err(InvariantError::MisplacedSingularity(t));
        }
        if n_p % 4 != 0 || c_p % 3 != 0 {
            return Err(InvariantError::NonIntegralChi { n_p, c_p });
        }
        Ok(CoveringProfile {
            degree,
            d,
            n_s,
            n_p,
            c_s,
            c_p,
            higher,
        })
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn d_bar(&self) -> u64 {
        self.d / 2
    }

    pub fn node_split(&self) -> (u64, u64) {
        (self.n_s, self.n_p)
    }

    pub fn cusp_split(&self) -> (u64, u64) {
        (self.c_s, self.c_p)
    }

    pub fn higher(&self) -> &SingularityProfile {
        &self.higher
    }

    /// All singularities of `B`, nodes and cusps included.
    pub fn singularities(&self) -> SingularityProfile {
        let mut p = self.higher.clone();
        p.add(AdeType::a(1), self.n_s + self.n_p);
        p.add(AdeType::a(2), self.c_s + self.c_p);
        p
    }

    pub fn delta0(&self) -> BigInt {
        self.higher.delta0()
    }

    /// Defect of the curve: `n + c + delta0`.
    pub fn delta_b(&self) -> BigInt {
        b(self.n_s + self.n_p + self.c_s + self.c_p) + self.delta0()
    }
}

/// Defect of `X`: per-type defects of s-points only. Checked against
/// `delta_B - n_p - c_p`.
pub fn defect_of_surface(p: &CoveringProfile) -> Result<BigInt, InvariantError> {
    let mut direct = b(p.n_s) * b(defect_closed_form(AdeType::a(1)))
        + b(p.c_s) * b(defect_closed_form(AdeType::a(2)));
    for (t, c) in p.higher.iter() {
        direct += b(c) * b(defect_closed_form(t));
    }
    let other = p.delta_b() - b(p.n_p) - b(p.c_p);
    if direct != other {
        return Err(InvariantError::Inconsistent(format!(
            "delta_X {direct} vs {other}"
        )));
    }
    Ok(direct)
}

/// Geometric genus `(d-1)(d-2)/2 - delta`.
pub fn genus_of_b(d: u64, delta: &BigInt) -> Result<BigInt, InvariantError> {
    if d == 0 {
        return Err(InvariantError::DegreeTooSmall(d));
    }
    let g = b((d - 1) * (d.saturating_sub(2)) / 2) - delta;
    if g.is_negative() {
        return Err(InvariantError::NegativeGenus(g));
    }
    Ok(g)
}

/// Arithmetic genus of the ramification curve: `(d-1)(d-2)/2 - n_p - c_p`.
pub fn arithmetic_genus_r(d: u64, n_p: u64, c_p: u64) -> BigInt {
    b((d - 1) * d.saturating_sub(2) / 2) - b(n_p) - b(c_p)
}

/// `(R^2, (R + Z)^2)` on the resolution.
pub fn self_intersections(d_bar: u64, g: &BigInt, delta_x: &BigInt) -> (BigInt, BigInt) {
    let base = bi(3 * d_bar as i64) + g - 1u32;
    (&base - delta_x, base + delta_x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernNumbers {
    pub k2: BigInt,
    pub euler: BigInt,
    pub chi: BigInt,
}

/// `K^2`, `e` and `chi(O_S)`, with Noether's formula checked exactly.
pub fn chern_and_euler(
    n: u64,
    d_bar: u64,
    p_a_r: &BigInt,
    g: &BigInt,
    delta_x: &BigInt,
    n_p: u64,
    c_p: u64,
) -> Result<ChernNumbers, InvariantError> {
    if !n_p.is_multiple_of(4) || !c_p.is_multiple_of(3) {
        return Err(InvariantError::NonIntegralChi { n_p, c_p });
    }
    let (n, db) = (b(n), b(d_bar));
    let k2 = bi(9) * &n - bi(9) * &db + p_a_r - 1;
    let d = bi(2) * &db;
    let k2_alt = bi(9) * &n + (&d * (&d - 12)) / 2 - b(n_p) - b(c_p);
    if k2 != k2_alt {
        return Err(InvariantError::Inconsistent(format!(
            "K^2 = {k2} but {k2_alt} from the degree form"
        )));
    }
    let euler = bi(3) * &n + bi(2) * g - 2u32 + bi(2) * delta_x - b(c_p);
    let chi = &n + (&db * (&db - 3)) / 2 - b(n_p / 4) - b(c_p / 3);
    if &k2 + &euler != bi(12) * &chi {
        return Err(InvariantError::Inconsistent(format!(
            "Noether: K^2 + e = {} but 12 chi = {}",
            &k2 + &euler,
            bi(12) * &chi
        )));
    }
    Ok(ChernNumbers { k2, euler, chi })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBounds {
    /// `d_bar + 1`.
    pub simple: BigInt,
    /// `4 d_bar^2 / (3 d_bar + g - 1 + delta_X)`.
    pub hodge: Bound,
    pub simple_equality: bool,
    pub hodge_equality: bool,
}

pub fn degree_bounds(
    n: u64,
    d_bar: u64,
    g: &BigInt,
    delta_x: &BigInt,
) -> Result<DegreeBounds, InvariantError> {
    let simple = b(d_bar) + 1u32;
    let t = bi(3 * d_bar as i64) + g - 1u32 + delta_x;
    let hodge = if t.is_positive() {
        Bound::Finite(BigRational::new(bi(4) * b(d_bar) * b(d_bar), t))
    } else {
        Bound::Unbounded
    };
    let nr = BigRational::from_integer(b(n));
    if b(n) > simple {
        return Err(InvariantError::BoundViolated {
            n,
            bound: simple.to_string(),
        });
    }
    if !hodge.admits(&nr) {
        return Err(InvariantError::BoundViolated {
            n,
            bound: hodge.to_string(),
        });
    }
    Ok(DegreeBounds {
        simple_equality: b(n) == simple,
        hodge_equality: hodge.attained_by(&nr),
        simple,
        hodge,
    })
}

/// Dual degree `2d + 2g - 2 - nu`.
pub fn plucker_dual_degree(d: u64, g: &BigInt, nu: &BigInt) -> Result<BigInt, InvariantError> {
    let dual = b(2 * d) + bi(2) * g - 2u32 - nu;
    if !dual.is_positive() {
        return Err(InvariantError::InvalidDual(dual));
    }
    Ok(dual)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub d_bar: u64,
    pub delta_b: BigInt,
    pub delta0: BigInt,
    pub delta_x: BigInt,
    pub g: BigInt,
    pub p_a_r: BigInt,
    pub r_bar_sq: BigInt,
    pub r_plus_z_sq: BigInt,
    pub chern: ChernNumbers,
    pub nu: BigInt,
    pub nu_prime: BigInt,
    pub dual_degree: BigInt,
    pub bounds: DegreeBounds,
}

/// Every invariant of the covering, with all cross-checks applied.
pub fn compute(p: &CoveringProfile) -> Result<InvariantReport, InvariantError> {
    let delta_b = p.delta_b();
    let delta0 = p.delta0();
    let delta_x = defect_of_surface(p)?;
    let g = genus_of_b(p.d, &delta_b)?;
    let p_a_r = arithmetic_genus_r(p.d, p.n_p, p.c_p);
    if p_a_r != &g + &delta_x {
        return Err(InvariantError::Inconsistent(format!(
            "p_a(R) = {p_a_r} but g + delta_X = {}",
            &g + &delta_x
        )));
    }
    let (r_bar_sq, r_plus_z_sq) = self_intersections(p.d_bar(), &g, &delta_x);
    if r_plus_z_sq != bi(3 * p.d_bar() as i64) + &p_a_r - 1 {
        return Err(InvariantError::Inconsistent("(R+Z)^2 two ways".into()));
    }
    let chern = chern_and_euler(p.degree, p.d_bar(), &p_a_r, &g, &delta_x, p.n_p, p.c_p)?;
    let (nu, nu_prime) = p.singularities().nu();
    let dual_degree = plucker_dual_degree(p.d, &g, &nu)?;
    let bounds = degree_bounds(p.degree, p.d_bar(), &g, &delta_x)?;
    Ok(InvariantReport {
        d_bar: p.d_bar(),
        delta_b,
        delta0,
        delta_x,
        g,
        p_a_r,
        r_bar_sq,
        r_plus_z_sq,
        chern,
        nu,
        nu_prime,
        dual_degree,
        bounds,
    })
}

/// `chi` as an exact rational, for checking divisibility failures.
pub fn chi_rational(n: u64, d_bar: u64, n_p: u64, c_p: u64) -> BigRational {
    let db = b(d_bar);
    BigRational::from_integer(b(n) + (&db * (&db - 3)) / 2)
        - BigRational::new(b(n_p), bi(4))
        - BigRational::new(b(c_p), bi(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn cubic_surface() -> CoveringProfile {
        CoveringProfile::new(3, 6, (0, 0), (0, 6), SingularityProfile::new()).unwrap()
    }

    #[test]
    fn cubic_surface_invariants() {
        let r = compute(&cubic_surface()).unwrap();
        assert_eq!(r.g, bi(4));
        assert_eq!(r.p_a_r, bi(4));
        assert_eq!(r.delta_x, bi(0));
        assert_eq!(
            (r.r_bar_sq.clone(), r.r_plus_z_sq.clone()),
            (bi(12), bi(12))
        );
        assert_eq!(
            r.chern,
            ChernNumbers {
                k2: bi(3),
                euler: bi(9),
                chi: bi(1)
            }
        );
        assert_eq!(r.bounds.hodge, Bound::Finite(rat(3, 1)));
        assert!(r.bounds.hodge_equality);
    }

    #[test]
    fn conic_double_plane() {
        let p = CoveringProfile::new(2, 2, (0, 0), (0, 0), SingularityProfile::new()).unwrap();
        let r = compute(&p).unwrap();
        assert_eq!(
            r.chern,
            ChernNumbers {
                k2: bi(8),
                euler: bi(4),
                chi: bi(1)
            }
        );
        assert_eq!((r.r_bar_sq.clone(), r.r_plus_z_sq.clone()), (bi(2), bi(2)));
        assert_eq!(r.bounds.hodge, Bound::Finite(rat(2, 1)));
        assert!(r.bounds.hodge_equality);
    }

    #[test]
    fn surface_defect_examples() {
        let one_node =
            CoveringProfile::new(2, 4, (1, 0), (0, 0), SingularityProfile::new()).unwrap();
        assert_eq!(defect_of_surface(&one_node).unwrap(), bi(1));
        let higher = SingularityProfile::new().with(AdeType::e(6), 1);
        let double_plane = CoveringProfile::new(2, 8, (2, 0), (3, 0), higher).unwrap();
        assert_eq!(
            defect_of_surface(&double_plane).unwrap(),
            double_plane.delta_b()
        );
        let all_p = CoveringProfile::new(4, 10, (0, 8), (0, 9), SingularityProfile::new()).unwrap();
        assert_eq!(defect_of_surface(&all_p).unwrap(), bi(0));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_of_b(6, &bi(0)).unwrap(), bi(10));
        assert_eq!(genus_of_b(6, &bi(6)).unwrap(), bi(4));
        assert_eq!(genus_of_b(3, &bi(1)).unwrap(), bi(0));
        assert!(matches!(
            genus_of_b(4, &bi(4)),
            Err(InvariantError::NegativeGenus(_))
        ));
    }

    #[test]
    fn arithmetic_genus_examples() {
        assert_eq!(arithmetic_genus_r(6, 0, 6), bi(4));
        assert_eq!(arithmetic_genus_r(2, 0, 0), bi(0));
    }

    #[test]
    fn self_intersection_example() {
        assert_eq!(self_intersections(3, &bi(4), &bi(2)), (bi(10), bi(14)));
    }

    #[test]
    fn divisibility_rejected() {
        let err = chern_and_euler(3, 3, &bi(4), &bi(4), &bi(0), 2, 0).unwrap_err();
        assert_eq!(err, InvariantError::NonIntegralChi { n_p: 2, c_p: 0 });
        assert!(CoveringProfile::new(3, 6, (0, 2), (0, 6), SingularityProfile::new()).is_err());
        assert!(CoveringProfile::new(3, 6, (0, 0), (0, 5), SingularityProfile::new()).is_err());
        assert!(!chi_rational(3, 3, 2, 6).is_integer());
        assert!(chi_rational(3, 3, 4, 6).is_integer());
    }

    #[test]
    fn odd_degree_rejected() {
        assert_eq!(
            CoveringProfile::new(2, 5, (0, 0), (0, 0), SingularityProfile::new()),
            Err(InvariantError::OddDegree(5))
        );
    }

    #[test]
    fn bound_violation() {
        let err = degree_bounds(5, 3, &bi(4), &bi(0)).unwrap_err();
        assert!(matches!(err, InvariantError::BoundViolated { n: 5, .. }));
    }

    #[test]
    fn nu_table() {
        assert_eq!(nu_invariant(AdeType::a(3)), 0);
        assert_eq!(nu_invariant(AdeType::a(4)), 1);
        assert_eq!(nu_invariant(AdeType::d(4)), 0);
        assert_eq!(nu_invariant(AdeType::d(5)), 1);
        assert_eq!(nu_invariant(AdeType::e(6)), 2);
        assert_eq!(nu_invariant(AdeType::e(7)), 1);
        assert_eq!(nu_invariant(AdeType::e(8)), 2);
        let cusps = SingularityProfile::new().with(AdeType::a(2), 6);
        assert_eq!(cusps.nu(), (bi(6), bi(0)));
    }

    #[test]
    fn plucker_examples() {
        assert_eq!(plucker_dual_degree(3, &bi(0), &bi(0)).unwrap(), bi(4));
        assert_eq!(plucker_dual_degree(3, &bi(0), &bi(1)).unwrap(), bi(3));
        assert_eq!(plucker_dual_degree(2, &bi(0), &bi(0)).unwrap(), bi(2));
        assert!(plucker_dual_degree(1, &bi(0), &bi(0)).is_err());
    }
}
