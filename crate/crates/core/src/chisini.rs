//! Intersection numbers on the normalized fiber product of two generic
//! coverings with the same discriminant curve, and the numerical uniqueness
//! criteria derived from the Hodge index theorem.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::invariants::Bound;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChisiniError {
    #[error("3 d_bar + g1 - 1 = {0} must be positive")]
    InvalidContext(BigInt),
    #[error("negative defect: {0}")]
    NegativeDelta(String),
    #[error("second covering degree must be at least 2, got {0}")]
    DegreeTooSmall(u64),
    #[error("invalid invariants: {0}")]
    InvalidInvariants(String),
    #[error("m and k must be positive")]
    NonPositive,
    #[error("asymmetric classification: {0}")]
    Asymmetric(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

fn b(x: u64) -> BigInt {
    BigInt::from(x)
}

fn r(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointKind {
    Node,
    Cusp,
}

/// Whether a point of `B` is an s- or p-point for the first and the
/// second covering, in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairClass {
    SS,
    SP,
    PS,
    PP,
}

impl PairClass {
    pub const ALL: [PairClass; 4] = [PairClass::SS, PairClass::SP, PairClass::PS, PairClass::PP];

    pub fn swapped(self) -> PairClass {
        match self {
            PairClass::SP => PairClass::PS,
            PairClass::PS => PairClass::SP,
            other => other,
        }
    }
}

/// Local intersection of the ramification curve of the first covering with
/// the residual curve of the second, over one point of `B`.
pub fn local_rc_contribution(kind: PointKind, cls: PairClass) -> u64 {
    match (kind, cls) {
        (_, PairClass::SS) => 0,
        (_, PairClass::SP) => 2,
        (_, PairClass::PS) => 0,
        (PointKind::Node, PairClass::PP) => 0,
        (PointKind::Cusp, PairClass::PP) => 1,
    }
}

/// Four-way split of the nodes and cusps of `B` with respect to an ordered
/// pair of coverings. Indexed by `PairClass` in `ALL` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairCounts {
    pub nodes: [u64; 4],
    pub cusps: [u64; 4],
}

impl PairCounts {
    pub fn node(&self, cls: PairClass) -> u64 {
        self.nodes[cls as usize]
    }

    pub fn cusp(&self, cls: PairClass) -> u64 {
        self.cusps[cls as usize]
    }

    pub fn total_nodes(&self) -> u64 {
        self.nodes.iter().sum()
    }

    pub fn total_cusps(&self) -> u64 {
        self.cusps.iter().sum()
    }

    /// The same points seen with the coverings in the other order.
    pub fn swapped(&self) -> PairCounts {
        let mut out = PairCounts::default();
        for cls in PairClass::ALL {
            out.nodes[cls.swapped() as usize] = self.node(cls);
            out.cusps[cls.swapped() as usize] = self.cusp(cls);
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.node(PairClass::SP) == self.node(PairClass::PS)
            && self.cusp(PairClass::SP) == self.cusp(PairClass::PS)
    }
}

/// `2 n_sp + 2 c_sp + c_pp`, checked against the pointwise sum.
pub fn iota(c: &PairCounts) -> u64 {
    let closed = 2 * c.node(PairClass::SP) + 2 * c.cusp(PairClass::SP) + c.cusp(PairClass::PP);
    let summed: u64 = PairClass::ALL
        .iter()
        .map(|&cls| {
            c.node(cls) * local_rc_contribution(PointKind::Node, cls)
                + c.cusp(cls) * local_rc_contribution(PointKind::Cusp, cls)
        })
        .sum();
    assert_eq!(closed, summed, "iota closed form disagrees with local sum");
    closed
}

/// `3 d_bar + g1 - 1`.
pub fn t_value(d_bar: u64, g1: &BigInt) -> BigInt {
    b(3 * d_bar) + g1 - 1u32
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberIntersections {
    /// `(R + Z_R)^2`.
    pub r_sq: BigInt,
    /// `(C + Z_C)^2`.
    pub c_sq: BigInt,
    /// `(R + Z_R).(C + Z_C)`.
    pub rc: BigInt,
}

impl FiberIntersections {
    /// Determinant of the 2x2 intersection matrix.
    pub fn determinant(&self) -> BigInt {
        &self.r_sq * &self.c_sq - &self.rc * &self.rc
    }
}

pub fn fiber_intersections(d_bar: u64, g1: &BigInt, iota1: u64, n2: u64) -> FiberIntersections {
    let t = t_value(d_bar, g1);
    let i = b(iota1);
    FiberIntersections {
        r_sq: BigInt::from(2) * &t - &i,
        c_sq: (b(n2) - 2u32) * &t - &i,
        rc: i,
    }
}

/// `(delta_R, delta_C)`. Both closed forms are evaluated and compared.
pub fn delta_r_delta_c(
    c: &PairCounts,
    delta0: u64,
    delta1: u64,
    n2: u64,
) -> Result<(BigInt, BigInt), ChisiniError> {
    let (n_ss, n_sp) = (c.node(PairClass::SS), c.node(PairClass::SP));
    let (c_ss, c_sp) = (c.cusp(PairClass::SS), c.cusp(PairClass::SP));
    let expected = delta0 + n_ss + n_sp + c_ss + c_sp;
    if delta1 != expected {
        return Err(ChisiniError::NegativeDelta(format!(
            "delta1 = {delta1} but delta0 + n_ss + n_sp + c_ss + c_sp = {expected}"
        )));
    }
    let d1 = b(delta1);
    let dr = BigInt::from(2) * (&d1 - b(n_sp) - b(c_sp));
    let dc = (b(n2) - 2u32) * &d1 - b(2 * n_sp) - b(c_sp);
    let base = b(delta0 + n_ss + c_ss);
    let dr_alt = BigInt::from(2) * &base;
    let dc_alt = (b(n2) - 2u32) * &base + (b(n2) - 4) * b(n_sp) + (b(n2) - 3) * b(c_sp);
    if dr != dr_alt || dc != dc_alt {
        return Err(ChisiniError::Inconsistent(
            "delta_R/delta_C closed forms disagree".into(),
        ));
    }
    if dr.is_negative() || dc.is_negative() {
        return Err(ChisiniError::NegativeDelta(format!(
            "delta_R = {dr}, delta_C = {dc}"
        )));
    }
    Ok((dr, dc))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Positivity {
    pub value: BigInt,
    pub positive: bool,
}

/// `d + d_hat + 2 delta0 + nu' + (c - c_pp)`.
pub fn positivity_check(
    d: u64,
    d_hat: &BigInt,
    delta0: &BigInt,
    nu_prime: &BigInt,
    c: u64,
    c_pp: u64,
) -> Positivity {
    let value = b(d) + d_hat + BigInt::from(2) * delta0 + nu_prime + b(c) - b(c_pp);
    Positivity {
        positive: value.is_positive(),
        value,
    }
}

/// `4T / (2T - iota)` with `T = 3 d_bar + g1 - 1`.
pub fn main_bound(d_bar: u64, g1: &BigInt, iota1: u64) -> Result<Bound, ChisiniError> {
    let t = t_value(d_bar, g1);
    if !t.is_positive() {
        return Err(ChisiniError::InvalidContext(t));
    }
    let denom = BigInt::from(2) * &t - b(iota1);
    if !denom.is_positive() {
        return Ok(Bound::Unbounded);
    }
    Ok(Bound::Finite(BigRational::new(BigInt::from(4) * t, denom)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Unique,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Unique => "unique",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Two nonequivalent coverings force `N2 <= bound`, so a larger `N2`
/// proves uniqueness. Equality proves nothing.
pub fn uniqueness_verdict(n2: u64, bound: &Bound) -> Verdict {
    if n2 <= 2 {
        return Verdict::Inconclusive;
    }
    match bound {
        Bound::Finite(q) if r(b(n2)) > *q => Verdict::Unique,
        _ => Verdict::Inconclusive,
    }
}

/// Full input for one ordered pair of coverings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClassification {
    pub counts: PairCounts,
    pub delta0: u64,
    pub nu_prime: u64,
    pub d_bar: u64,
    pub n1: u64,
    pub n2: u64,
    pub g1: BigInt,
    /// `p_a` of the second ramification curve; defaults to the value
    /// implied by the counts.
    pub g2: Option<BigInt>,
    pub shared_invariants: bool,
}

impl PairClassification {
    pub fn validate(&self) -> Result<(), ChisiniError> {
        if self.n2 < 2 {
            return Err(ChisiniError::DegreeTooSmall(self.n2));
        }
        if self.n1 < 2 {
            return Err(ChisiniError::DegreeTooSmall(self.n1));
        }
        if self.shared_invariants && !self.counts.is_symmetric() {
            return Err(ChisiniError::Asymmetric(
                "coverings sharing (K^2, chi) need n_ps = n_sp and c_ps = c_sp".into(),
            ));
        }
        Ok(())
    }

    /// `delta_1 = delta0 + n_ss + n_sp + c_ss + c_sp`.
    pub fn delta1(&self) -> u64 {
        let c = &self.counts;
        self.delta0
            + c.node(PairClass::SS)
            + c.node(PairClass::SP)
            + c.cusp(PairClass::SS)
            + c.cusp(PairClass::SP)
    }

    pub fn delta2(&self) -> u64 {
        let c = &self.counts;
        self.delta0
            + c.node(PairClass::SS)
            + c.node(PairClass::PS)
            + c.cusp(PairClass::SS)
            + c.cusp(PairClass::PS)
    }

    /// Geometric genus of `B`: `g1 - delta_1`.
    pub fn genus(&self) -> BigInt {
        &self.g1 - b(self.delta1())
    }

    pub fn g2(&self) -> BigInt {
        self.g2
            .clone()
            .unwrap_or_else(|| self.genus() + b(self.delta2()))
    }

    pub fn swapped(&self) -> PairClassification {
        PairClassification {
            counts: self.counts.swapped(),
            n1: self.n2,
            n2: self.n1,
            g1: self.g2(),
            g2: Some(self.g1.clone()),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedReport {
    pub iota: u64,
    pub t: BigInt,
    pub fiber: FiberIntersections,
    pub delta_r: BigInt,
    pub delta_c: BigInt,
    pub hodge_determinant: BigInt,
    pub bound: Bound,
    pub n2: u64,
    pub verdict: Verdict,
}

fn ordered(p: &PairClassification) -> Result<OrderedReport, ChisiniError> {
    let iota1 = iota(&p.counts);
    let t = t_value(p.d_bar, &p.g1);
    let bound = main_bound(p.d_bar, &p.g1, iota1)?;
    let fiber = fiber_intersections(p.d_bar, &p.g1, iota1, p.n2);
    let det = fiber.determinant();
    let factored = &t * (b(p.n2) * (BigInt::from(2) * &t - b(iota1)) - BigInt::from(4) * &t);
    if det != factored {
        return Err(ChisiniError::Inconsistent(format!(
            "Hodge determinant {det} vs {factored}"
        )));
    }
    let (delta_r, delta_c) = delta_r_delta_c(&p.counts, p.delta0, p.delta1(), p.n2)?;
    Ok(OrderedReport {
        iota: iota1,
        verdict: uniqueness_verdict(p.n2, &bound),
        t,
        fiber,
        delta_r,
        delta_c,
        hodge_determinant: det,
        bound,
        n2: p.n2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberProductReport {
    pub genus: BigInt,
    pub dual_degree: BigInt,
    pub positivity: Positivity,
    pub forward: OrderedReport,
    pub backward: OrderedReport,
    pub verdict: Verdict,
}

/// Evaluates both orderings of the pair; the verdict is `Unique` if either
/// ordering proves it.
pub fn analyze_pair(p: &PairClassification) -> Result<FiberProductReport, ChisiniError> {
    p.validate()?;
    let genus = p.genus();
    if genus.is_negative() {
        return Err(ChisiniError::InvalidInvariants(format!(
            "g1 - delta_1 = {genus} is negative"
        )));
    }
    let d = 2 * p.d_bar;
    let c = &p.counts;
    let nu = b(c.total_cusps() + p.nu_prime);
    let dual_degree = b(2 * d) + BigInt::from(2) * &genus - 2 - &nu;
    let positivity = positivity_check(
        d,
        &dual_degree,
        &b(p.delta0),
        &b(p.nu_prime),
        c.total_cusps(),
        c.cusp(PairClass::PP),
    );
    let forward = ordered(p)?;
    let backward = ordered(&p.swapped())?;
    // The positivity value drops the ss terms of delta_1.
    let slack = b(2 * (c.node(PairClass::SS) + c.cusp(PairClass::SS)));
    if forward.fiber.r_sq != &positivity.value + &slack {
        return Err(ChisiniError::Inconsistent(format!(
            "(R+Z_R)^2 = {} but positivity value + 2(n_ss + c_ss) = {}",
            forward.fiber.r_sq,
            &positivity.value + &slack
        )));
    }
    let verdict = if forward.verdict == Verdict::Unique || backward.verdict == Verdict::Unique {
        Verdict::Unique
    } else {
        Verdict::Inconclusive
    };
    Ok(FiberProductReport {
        genus,
        dual_degree,
        positivity,
        forward,
        backward,
        verdict,
    })
}

/// Numerical data of a generic projection of the m-canonical image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCanonicalInvariants {
    pub m: u64,
    pub k: u64,
    pub n: BigInt,
    pub d: BigInt,
    pub d_bar: BigInt,
    pub pa_minus_1: BigInt,
    pub t: BigInt,
    /// `N < 2`: no genuine covering.
    pub degenerate: bool,
}

pub fn mcanonical_invariants(m: u64, k: u64) -> Result<MCanonicalInvariants, ChisiniError> {
    if m == 0 || k == 0 {
        return Err(ChisiniError::NonPositive);
    }
    let (mb, kb) = (b(m), b(k));
    let n = &mb * &mb * &kb;
    let d = &mb * (BigInt::from(3) * &mb + 1u32) * &kb;
    let d_bar = &d / 2;
    let pa_minus_1 = (BigInt::from(3) * &mb + 1u32) * (BigInt::from(3) * &mb + 2u32) * &kb / 2;
    let t = BigInt::from(3) * &d_bar + &pa_minus_1;
    let square = (BigInt::from(3) * &mb + 1u32).pow(2) * &kb;
    if t != square {
        return Err(ChisiniError::Inconsistent(format!(
            "T = {t} but (3m+1)^2 k = {square}"
        )));
    }
    Ok(MCanonicalInvariants {
        m,
        k,
        degenerate: n < BigInt::from(2),
        n,
        d,
        d_bar,
        pa_minus_1,
        t,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IotaEstimate {
    pub value: BigRational,
    /// `e` was absent and `e <= 5k + 36` was used in its place.
    pub used_noether: bool,
}

/// Upper bound for `iota` on an m-canonical pair.
pub fn iota_estimate(m: u64, k: u64, e: Option<i64>) -> Result<IotaEstimate, ChisiniError> {
    let inv = mcanonical_invariants(m, k)?;
    let base = r(BigInt::from(3) * &inv.n + BigInt::from(2) * &inv.pa_minus_1);
    let kq = r(b(k));
    match e {
        None => Ok(IotaEstimate {
            value: BigRational::new(BigInt::from(11), BigInt::from(9)) * &kq
                + r(BigInt::from(12))
                + base,
            used_noether: true,
        }),
        Some(e) => {
            let eb = BigInt::from(e);
            if b(k) > BigInt::from(3) * &eb {
                return Err(ChisiniError::InvalidInvariants(format!(
                    "k = {k} exceeds 3e = {}",
                    3 * e
                )));
            }
            if eb > b(5 * k + 36) {
                return Err(ChisiniError::InvalidInvariants(format!(
                    "e = {e} exceeds 5k + 36 = {}",
                    5 * k + 36
                )));
            }
            let eq = r(eb);
            let value = BigRational::new(BigInt::from(4), BigInt::from(9))
                * (r(BigInt::from(3)) * &eq - &kq)
                + base
                - eq;
            Ok(IotaEstimate {
                value,
                used_noether: false,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCanonicalVerdict {
    pub invariants: MCanonicalInvariants,
    /// `3m(2m+1)`.
    pub lhs: BigInt,
    /// `11/9 + (12 + 4(3 + 1/m)^2) / k`.
    pub rhs: BigRational,
    pub margin: BigRational,
    pub holds: bool,
    /// Left side of the unnormalized inequality; equals `m^2 k^2 margin`.
    pub scaled_value: BigRational,
    /// Margin `(N-2)(3d + 2p_a - 2) - N iota` using the e-based estimate.
    pub sharp_margin: Option<BigRational>,
}

impl MCanonicalVerdict {
    pub fn sharp_holds(&self) -> Option<bool> {
        self.sharp_margin.as_ref().map(|m| m.is_positive())
    }
}

pub fn chisini_criterion(
    m: u64,
    k: u64,
    e: Option<i64>,
) -> Result<MCanonicalVerdict, ChisiniError> {
    let inv = mcanonical_invariants(m, k)?;
    let (mq, kq) = (r(b(m)), r(b(k)));
    let lhs = b(3 * m * (2 * m + 1));
    let three_plus = r(BigInt::from(3)) + BigRational::one() / &mq;
    let rhs = BigRational::new(BigInt::from(11), BigInt::from(9))
        + (r(BigInt::from(12)) + r(BigInt::from(4)) * &three_plus * &three_plus) / &kq;
    let margin = r(lhs.clone()) - &rhs;

    let (n, d) = (r(inv.n.clone()), r(inv.d.clone()));
    let pa1 = r(inv.pa_minus_1.clone());
    let scaled_value = r(BigInt::from(3)) * &n * (&d - &n)
        - r(BigInt::from(6)) * &d
        - r(BigInt::from(4)) * &pa1
        - (BigRational::new(BigInt::from(11), BigInt::from(9)) * &kq + r(BigInt::from(12))) * &n;
    if scaled_value != &mq * &mq * &kq * &kq * &margin {
        return Err(ChisiniError::Inconsistent(
            "scaled inequality is not m^2 k^2 times the margin".into(),
        ));
    }
    // With the Noether estimate the general inequality reduces to the scaled one.
    let general = |iota: &BigRational| {
        (&n - r(BigInt::from(2))) * (r(BigInt::from(3)) * &d + r(BigInt::from(2)) * &pa1)
            - &n * iota
    };
    let noether = iota_estimate(m, k, None)?;
    if general(&noether.value) != scaled_value {
        return Err(ChisiniError::Inconsistent(
            "general inequality with Noether estimate".into(),
        ));
    }
    let sharp_margin = match e {
        Some(e) => Some(general(&iota_estimate(m, k, Some(e))?.value)),
        None => None,
    };
    Ok(MCanonicalVerdict {
        invariants: inv,
        holds: margin.is_positive(),
        lhs,
        rhs,
        margin,
        scaled_value,
        sharp_margin,
    })
}
