//! Embedded resolution of A-D-E plane curve germs by point blow-ups.
//!
//! A germ `B: f(x, y) = 0` at the origin is blown up repeatedly until its
//! total transform is a normal-crossing divisor. Every tracked point keeps
//! its own local chart: the proper transform `P` in coordinates `(x, y)`
//! centred at the point, plus the exceptional curves that appear there as
//! the coordinate axes `{x = 0}` and `{y = 0}`.
//!
//! Blowing up a point with proper transform of multiplicity `m`:
//!
//! * chart A is `y -> x*y`, so `P_A = P(x, x*y) / x^m`; the new curve is
//!   `{x = 0}` and an old curve on `{y = 0}` stays on `{y = 0}`;
//! * chart B is `x -> x*y`, so `P_B = P(x*y, y) / y^m`; the new curve is
//!   `{y = 0}` and an old curve on `{x = 0}` stays on `{x = 0}`.
//!
//! Points on the new curve are the rational roots of `P_A(0, y)`, the
//! chart-A origin if an old curve passes there, and the chart-B origin.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::exact::{rational_roots, ExactError, Poly};

const VARS: [&str; 2] = ["x", "y"];
const X: usize = 0;
const Y: usize = 1;

/// Safety net against runaway loops on unsupported input.
pub const MAX_BLOWUPS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("invalid singularity type {0}")]
    InvalidType(String),
    #[error("germ must be a polynomial in x, y")]
    WrongVariables,
    #[error("germ does not vanish at the origin")]
    NotAtOrigin,
    #[error("germ is not reduced (has a repeated factor)")]
    NonReduced,
    #[error("blow-up centre at {0} is not rational")]
    IrrationalCenter(String),
    #[error("point {0} already satisfies the resolution target")]
    NotSingular(String),
    #[error("no tracked point with index {0}")]
    UnknownPoint(usize),
    #[error("resolution did not finish within {0} blow-ups")]
    TooManyBlowups(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdeFamily {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdeType {
    pub family: AdeFamily,
    pub index: u32,
}

impl AdeType {
    pub fn new(family: AdeFamily, index: u32) -> Result<Self, ResolutionError> {
        let ok = match family {
            AdeFamily::A => index >= 1,
            AdeFamily::D => index >= 4,
            AdeFamily::E => (6..=8).contains(&index),
        };
        if ok {
            Ok(AdeType { family, index })
        } else {
            Err(ResolutionError::InvalidType(format!("{family:?}{index}")))
        }
    }

    pub fn a(n: u32) -> Self {
        Self::new(AdeFamily::A, n).expect("A_n needs n >= 1")
    }

    pub fn d(n: u32) -> Self {
        Self::new(AdeFamily::D, n).expect("D_n needs n >= 4")
    }

    pub fn e(n: u32) -> Self {
        Self::new(AdeFamily::E, n).expect("E_n needs n in 6..=8")
    }

    /// A_1..=A_max_a, D_4..=D_max_d, E_6, E_7, E_8.
    pub fn catalogue(max_a: u32, max_d: u32) -> Vec<AdeType> {
        let mut v: Vec<AdeType> = (1..=max_a).map(Self::a).collect();
        v.extend((4..=max_d).map(Self::d));
        v.extend((6..=8).map(Self::e));
        v
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.index)
    }
}

/// Accepts `A3`, `A 3`, `A_3` and lower-case family letters.
impl FromStr for AdeType {
    type Err = ResolutionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ResolutionError::InvalidType(s.to_string());
        let t = s.trim();
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => AdeFamily::A,
            Some('D') => AdeFamily::D,
            Some('E') => AdeFamily::E,
            _ => return Err(bad()),
        };
        let rest = chars
            .as_str()
            .trim_start_matches(|c: char| c == '_' || c.is_whitespace());
        let index: u32 = rest.parse().map_err(|_| bad())?;
        AdeType::new(family, index).map_err(|_| bad())
    }
}

/// Reduced plane curve germ `f(x, y) = 0` through the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveGerm {
    poly: Poly,
}

impl CurveGerm {
    pub fn new(poly: Poly) -> Result<Self, ResolutionError> {
        let poly = poly
            .with_vars(&VARS)
            .map_err(|_| ResolutionError::WrongVariables)?;
        if poly.is_zero() {
            return Err(ResolutionError::NonReduced);
        }
        if !poly.coeff(&[0, 0]).is_zero() {
            return Err(ResolutionError::NotAtOrigin);
        }
        if !is_square_free(&poly)? {
            return Err(ResolutionError::NonReduced);
        }
        Ok(CurveGerm { poly })
    }

    pub fn parse(src: &str) -> Result<Self, ResolutionError> {
        let poly = Poly::parse(&VARS, src).map_err(|_| ResolutionError::WrongVariables)?;
        Self::new(poly)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }
}

impl fmt::Display for CurveGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

// A repeated factor g^2 | f has degree at least 2 in some variable v of g,
// and then f and df/dv share g, so Res_v(f, df/dv) vanishes identically.
fn is_square_free(f: &Poly) -> Result<bool, ExactError> {
    for var in [X, Y] {
        if f.degree_in(var).unwrap_or(0) < 2 {
            continue;
        }
        if f.resultant(&f.derivative(var), var)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Normal forms: `A_n: y^2 - x^(n+1)`, `D_n: x(y^2 + x^(n-2))`,
/// `E_6: x^3 + y^4`, `E_7: x(x^2 + y^3)`, `E_8: x^3 + y^5`.
pub fn standard_germ(t: AdeType) -> CurveGerm {
    let n = t.index;
    let src = match (t.family, n) {
        (AdeFamily::A, _) => format!("y^2 - x^{}", n + 1),
        (AdeFamily::D, _) => format!("x*(y^2 + x^{})", n - 2),
        (AdeFamily::E, 6) => "x^3 + y^4".to_string(),
        (AdeFamily::E, 7) => "x*(x^2 + y^3)".to_string(),
        _ => "x^3 + y^5".to_string(),
    };
    CurveGerm::parse(&src).expect("normal forms are reduced")
}

/// Analytically equivalent germ whose blow-up centres are all rational.
///
/// Only `D_n` with `n` even differs from [`standard_germ`]: there
/// `y^2 + x^(n-2)` splits over `Q(i)` only, so the form `x(y^2 - x^(n-2))`
/// is used instead. Over the complex numbers the two are equivalent by
/// `y -> i*y`.
pub fn rational_germ(t: AdeType) -> CurveGerm {
    if t.family == AdeFamily::D && t.index.is_multiple_of(2) {
        CurveGerm::parse(&format!("x*(y^2 - x^{})", t.index - 2)).expect("reduced")
    } else {
        standard_germ(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResolveTarget {
    /// Stop once the proper transform is smooth.
    SmoothProperTransform,
    /// Stop once the total transform has normal crossings.
    NormalCrossings,
    /// Normal crossings and, in addition, the branch divisor of the double
    /// cover (proper transform plus odd-multiplicity curves) is smooth.
    #[default]
    DoubleCoverReady,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ResolveOptions {
    pub target: ResolveTarget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlowUpReason {
    /// Proper transform has multiplicity at least 2.
    Singular,
    /// Smooth proper transform tangent to an exceptional curve.
    Tangency,
    /// Smooth proper transform through a crossing of two exceptional curves.
    ThreeBranches,
    /// Branch divisor meets itself: proper transform through an odd curve,
    /// or two odd curves crossing.
    BranchParity,
}

impl BlowUpReason {
    pub fn name(self) -> &'static str {
        match self {
            BlowUpReason::Singular => "singular",
            BlowUpReason::Tangency => "tangency",
            BlowUpReason::ThreeBranches => "three-branches",
            BlowUpReason::BranchParity => "branch-parity",
        }
    }

    fn required_by(self, target: ResolveTarget) -> bool {
        match target {
            ResolveTarget::SmoothProperTransform => self == BlowUpReason::Singular,
            ResolveTarget::NormalCrossings => self != BlowUpReason::BranchParity,
            ResolveTarget::DoubleCoverReady => true,
        }
    }
}

/// One step in the chart path from the original origin to a point: either
/// chart A translated by `y -> y + c`, or the chart-B origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ChartStep {
    A(BigRational),
    B,
}

impl PartialOrd for ChartStep {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ChartStep {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ChartStep::A(a), ChartStep::A(b)) => a.cmp(b),
            (ChartStep::A(_), ChartStep::B) => Ordering::Less,
            (ChartStep::B, ChartStep::A(_)) => Ordering::Greater,
            (ChartStep::B, ChartStep::B) => Ordering::Equal,
        }
    }
}

fn path_label(path: &[ChartStep]) -> String {
    if path.is_empty() {
        return "origin".to_string();
    }
    path.iter()
        .map(|s| match s {
            ChartStep::A(c) if c.is_integer() => format!("A{}", c.numer()),
            ChartStep::A(c) => format!("A{}/{}", c.numer(), c.denom()),
            ChartStep::B => "B".to_string(),
        })
        .collect::<Vec<_>>()
        .join(".")
}

/// A tracked point of the total transform in its local chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalPoint {
    pub path: Vec<ChartStep>,
    /// Proper transform of the germ in local coordinates.
    pub poly: Poly,
    /// Index of the exceptional curve `{x = 0}`, if any.
    pub on_x_axis_curve: Option<usize>,
    /// Index of the exceptional curve `{y = 0}`, if any.
    pub on_y_axis_curve: Option<usize>,
}

impl LocalPoint {
    pub fn label(&self) -> String {
        path_label(&self.path)
    }

    pub fn multiplicity(&self) -> u32 {
        self.poly.order().unwrap_or(0)
    }

    fn curves(&self) -> impl Iterator<Item = usize> {
        self.on_x_axis_curve.into_iter().chain(self.on_y_axis_curve)
    }

    /// Intersection multiplicity of the proper transform with `{x = 0}`
    /// (for `var = X`) or `{y = 0}` (for `var = Y`) at this point.
    fn axis_contact(&self, var: usize) -> Option<u32> {
        let zero = Poly::zero(&VARS);
        self.poly.substitute(var, &zero).order()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalCurve {
    /// 1-based, in order of creation.
    pub id: usize,
    /// Multiplicity in the total transform of the germ.
    pub alpha: u32,
    pub self_int: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUpStep {
    pub center: String,
    pub reason: BlowUpReason,
    pub multiplicity: u32,
    pub new_curve: usize,
}

/// Either an exceptional curve (by index) or the proper transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Curve(usize),
    BBar,
}

/// State of an embedded resolution. Tracked points are kept in chart-path
/// order; after [`resolve`] they certify normal crossings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionRecord {
    germ: CurveGerm,
    curves: Vec<ExceptionalCurve>,
    points: Vec<LocalPoint>,
    steps: Vec<BlowUpStep>,
}

impl ResolutionRecord {
    pub fn new(germ: CurveGerm) -> Self {
        let origin = LocalPoint {
            path: Vec::new(),
            poly: germ.poly.clone(),
            on_x_axis_curve: None,
            on_y_axis_curve: None,
        };
        ResolutionRecord {
            germ,
            curves: Vec::new(),
            points: vec![origin],
            steps: Vec::new(),
        }
    }

    pub fn germ(&self) -> &CurveGerm {
        &self.germ
    }

    pub fn curves(&self) -> &[ExceptionalCurve] {
        &self.curves
    }

    pub fn points(&self) -> &[LocalPoint] {
        &self.points
    }

    pub fn steps(&self) -> &[BlowUpStep] {
        &self.steps
    }

    pub fn blowup_count(&self) -> usize {
        self.steps.len()
    }

    pub fn alphas(&self) -> Vec<u32> {
        self.curves.iter().map(|c| c.alpha).collect()
    }

    pub fn self_intersections(&self) -> Vec<i64> {
        self.curves.iter().map(|c| c.self_int).collect()
    }

    /// Why `point` would need a blow-up under `target`, if it does.
    pub fn blowup_reason(&self, point: &LocalPoint, target: ResolveTarget) -> Option<BlowUpReason> {
        let reason = self.raw_reason(point)?;
        reason.required_by(target).then_some(reason)
    }

    fn raw_reason(&self, p: &LocalPoint) -> Option<BlowUpReason> {
        let m = p.multiplicity();
        let curves: Vec<usize> = p.curves().collect();
        let odd = |i: &usize| self.curves[*i].alpha % 2 == 1;
        match m {
            0 => {
                if curves.len() == 2 && curves.iter().all(odd) {
                    Some(BlowUpReason::BranchParity)
                } else {
                    None
                }
            }
            1 => {
                if curves.len() >= 2 {
                    return Some(BlowUpReason::ThreeBranches);
                }
                let tangent = (p.on_x_axis_curve.is_some() && p.axis_contact(X) != Some(1))
                    || (p.on_y_axis_curve.is_some() && p.axis_contact(Y) != Some(1));
                if tangent {
                    Some(BlowUpReason::Tangency)
                } else if curves.iter().any(odd) {
                    Some(BlowUpReason::BranchParity)
                } else {
                    None
                }
            }
            _ => Some(BlowUpReason::Singular),
        }
    }

    /// True when no tracked point needs a blow-up for `target`.
    pub fn satisfies(&self, target: ResolveTarget) -> bool {
        self.points
            .iter()
            .all(|p| self.blowup_reason(p, target).is_none())
    }

    /// Every pairwise meeting of the components of the total transform, one
    /// entry per intersection point, with its local intersection multiplicity.
    pub fn crossings(&self) -> Vec<(Node, Node, u32)> {
        let mut out = Vec::new();
        for p in &self.points {
            if let (Some(a), Some(b)) = (p.on_x_axis_curve, p.on_y_axis_curve) {
                out.push((Node::Curve(a.min(b)), Node::Curve(a.max(b)), 1));
            }
            if p.multiplicity() == 0 {
                continue;
            }
            if let Some(a) = p.on_x_axis_curve {
                out.push((Node::Curve(a), Node::BBar, p.axis_contact(X).unwrap_or(0)));
            }
            if let Some(b) = p.on_y_axis_curve {
                out.push((Node::Curve(b), Node::BBar, p.axis_contact(Y).unwrap_or(0)));
            }
        }
        out
    }

    /// Intersection numbers `E_i . E_j` (i < j) between exceptional curves.
    pub fn curve_edges(&self) -> Vec<(usize, usize, u32)> {
        let mut acc: std::collections::BTreeMap<(usize, usize), u32> = Default::default();
        for (a, b, m) in self.crossings() {
            if let (Node::Curve(i), Node::Curve(j)) = (a, b) {
                *acc.entry((i, j)).or_default() += m;
            }
        }
        acc.into_iter().map(|((i, j), m)| (i, j, m)).collect()
    }

    /// `(curve index, local multiplicity)` for each point where the proper
    /// transform meets an exceptional curve.
    pub fn b_bar_incidence(&self) -> Vec<(usize, u32)> {
        self.crossings()
            .into_iter()
            .filter_map(|(a, b, m)| match (a, b) {
                (Node::Curve(i), Node::BBar) => Some((i, m)),
                _ => None,
            })
            .collect()
    }

    /// Number of distinct points where the proper transform meets `curve`.
    pub fn b_bar_points_on(&self, curve: usize) -> usize {
        self.b_bar_incidence()
            .iter()
            .filter(|(i, _)| *i == curve)
            .count()
    }

    /// Blow-ups needed until the proper transform is smooth, and the rest.
    pub fn stage_split(&self) -> (usize, usize) {
        let first = self
            .steps
            .iter()
            .filter(|s| s.reason == BlowUpReason::Singular)
            .count();
        (first, self.steps.len() - first)
    }

    /// Blows up tracked point `index`. Fails with `NotSingular` if the point
    /// already satisfies `target`.
    pub fn blow_up(
        &self,
        index: usize,
        target: ResolveTarget,
    ) -> Result<ResolutionRecord, ResolutionError> {
        let point = self
            .points
            .get(index)
            .ok_or(ResolutionError::UnknownPoint(index))?;
        let reason = self
            .blowup_reason(point, target)
            .ok_or_else(|| ResolutionError::NotSingular(point.label()))?;
        let m = point.multiplicity();

        let through: Vec<usize> = point.curves().collect();
        let alpha_sum: u32 = through.iter().map(|&i| self.curves[i].alpha).sum();
        let alpha_new = m + alpha_sum;
        let total_order = total_transform_order(point, &self.curves);
        if total_order != alpha_new {
            return Err(ResolutionError::Inconsistent(format!(
                "multiplicity of total transform {total_order} differs from {alpha_new}"
            )));
        }

        let mut next = self.clone();
        let ledger_before: i64 = next.curves.iter().map(|c| c.self_int + 1).sum();
        for &i in &through {
            next.curves[i].self_int -= 1;
        }
        let new_idx = next.curves.len();
        next.curves.push(ExceptionalCurve {
            id: new_idx + 1,
            alpha: alpha_new,
            self_int: -1,
        });
        let ledger_after: i64 = next.curves.iter().map(|c| c.self_int + 1).sum();
        if ledger_before - ledger_after != through.len() as i64 {
            return Err(ResolutionError::Inconsistent(
                "self-intersection ledger".into(),
            ));
        }

        let children = blow_up_point(point, m, new_idx)?;
        next.points.splice(index..=index, children);
        next.steps.push(BlowUpStep {
            center: point.label(),
            reason,
            multiplicity: m,
            new_curve: new_idx,
        });
        Ok(next)
    }
}

fn total_transform_order(p: &LocalPoint, curves: &[ExceptionalCurve]) -> u32 {
    let mut total = p.poly.clone();
    if let Some(i) = p.on_x_axis_curve {
        total = &total * &Poly::var(&VARS, "x").pow(curves[i].alpha);
    }
    if let Some(i) = p.on_y_axis_curve {
        total = &total * &Poly::var(&VARS, "y").pow(curves[i].alpha);
    }
    total.order().unwrap_or(0)
}

fn blow_up_point(
    p: &LocalPoint,
    m: u32,
    new_curve: usize,
) -> Result<Vec<LocalPoint>, ResolutionError> {
    let x = Poly::var(&VARS, "x");
    let y = Poly::var(&VARS, "y");
    let xy = &x * &y;
    let mut children = Vec::new();

    // chart A: y -> x*y
    let pa = p.poly.substitute(Y, &xy).div_var_power(X, m)?;
    let on_new = pa.substitute(X, &Poly::zero(&VARS));
    let coeffs = on_new
        .univariate_coeffs(Y)
        .ok_or_else(|| ResolutionError::Inconsistent("restriction is not univariate".into()))?;
    let split = rational_roots(&coeffs);
    if !split.splits_completely() {
        let mut path = p.path.clone();
        path.push(ChartStep::A(BigRational::zero()));
        return Err(ResolutionError::IrrationalCenter(format!(
            "{} (degree {} factor)",
            path_label(&p.path),
            split.residual_degree
        )));
    }
    let mut centres: Vec<BigRational> = split.roots.into_iter().map(|(r, _)| r).collect();
    if p.on_y_axis_curve.is_some() && !centres.iter().any(Zero::is_zero) {
        centres.push(BigRational::zero());
    }
    centres.sort();
    for c in centres {
        let shift = &y + &Poly::constant(&VARS, c.clone());
        let poly = pa.substitute(Y, &shift);
        let mut path = p.path.clone();
        path.push(ChartStep::A(c.clone()));
        children.push(LocalPoint {
            path,
            poly,
            on_x_axis_curve: Some(new_curve),
            on_y_axis_curve: if c.is_zero() { p.on_y_axis_curve } else { None },
        });
    }

    // chart B: x -> x*y, only its origin is new
    let pb = p.poly.substitute(X, &xy).div_var_power(Y, m)?;
    let through_origin = pb.coeff(&[0, 0]).is_zero();
    if through_origin || p.on_x_axis_curve.is_some() {
        let mut path = p.path.clone();
        path.push(ChartStep::B);
        children.push(LocalPoint {
            path,
            poly: pb,
            on_x_axis_curve: p.on_x_axis_curve,
            on_y_axis_curve: Some(new_curve),
        });
    }
    Ok(children)
}

/// Resolves to the default target ([`ResolveTarget::DoubleCoverReady`]).
pub fn resolve(germ: &CurveGerm) -> Result<ResolutionRecord, ResolutionError> {
    resolve_with(germ, ResolveOptions::default())
}

/// Blows up the first tracked point (in chart-path order) that violates the
/// target, until none does.
pub fn resolve_with(
    germ: &CurveGerm,
    options: ResolveOptions,
) -> Result<ResolutionRecord, ResolutionError> {
    let mut rec = ResolutionRecord::new(germ.clone());
    loop {
        let next = rec
            .points
            .iter()
            .position(|p| rec.blowup_reason(p, options.target).is_some());
        let Some(i) = next else { return Ok(rec) };
        if rec.steps.len() >= MAX_BLOWUPS {
            return Err(ResolutionError::TooManyBlowups(MAX_BLOWUPS));
        }
        rec = rec.blow_up(i, options.target)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(s: &str) -> CurveGerm {
        CurveGerm::parse(s).unwrap()
    }

    #[test]
    fn cusp_resolution() {
        let rec = resolve(&germ("y^2 - x^3")).unwrap();
        assert_eq!(rec.alphas(), vec![2, 3, 6]);
        assert_eq!(rec.self_intersections(), vec![-3, -2, -1]);
        assert_eq!(rec.curve_edges(), vec![(0, 2, 1), (1, 2, 1)]);
        assert_eq!(rec.b_bar_incidence(), vec![(2, 1)]);
        assert_eq!(rec.stage_split(), (1, 2));
    }

    #[test]
    fn cusp_targets() {
        let g = germ("y^2 - x^3");
        let smooth = resolve_with(
            &g,
            ResolveOptions {
                target: ResolveTarget::SmoothProperTransform,
            },
        )
        .unwrap();
        assert_eq!(smooth.alphas(), vec![2]);
        let nc = resolve_with(
            &g,
            ResolveOptions {
                target: ResolveTarget::NormalCrossings,
            },
        )
        .unwrap();
        assert_eq!(nc.alphas(), vec![2, 3, 6]);
    }

    #[test]
    fn node_resolution() {
        let rec = resolve(&germ("x*y")).unwrap();
        assert_eq!(rec.alphas(), vec![2]);
        assert_eq!(rec.self_intersections(), vec![-1]);
        assert_eq!(rec.b_bar_points_on(0), 2);
    }

    #[test]
    fn tacnode_two_steps() {
        let g = germ("y^2 - x^4");
        let rec = ResolutionRecord::new(g.clone());
        let rec = rec.blow_up(0, ResolveTarget::DoubleCoverReady).unwrap();
        assert_eq!(rec.alphas(), vec![2]);
        let i = rec
            .points()
            .iter()
            .position(|p| p.multiplicity() >= 2)
            .expect("node on the first curve");
        let rec = rec.blow_up(i, ResolveTarget::DoubleCoverReady).unwrap();
        assert_eq!(rec.alphas(), vec![2, 4]);
        assert_eq!(rec.self_intersections(), vec![-2, -1]);
        assert!(rec.satisfies(ResolveTarget::DoubleCoverReady));
        assert_eq!(rec, resolve(&g).unwrap());
    }

    #[test]
    fn not_singular_rejected() {
        let rec = resolve(&germ("x*y")).unwrap();
        assert!(matches!(
            rec.blow_up(0, ResolveTarget::DoubleCoverReady),
            Err(ResolutionError::NotSingular(_))
        ));
        let smooth = ResolutionRecord::new(germ("y - x^2"));
        assert!(matches!(
            smooth.blow_up(0, ResolveTarget::NormalCrossings),
            Err(ResolutionError::NotSingular(_))
        ));
    }

    #[test]
    fn d_even_normal_form_needs_irrational_centres() {
        let err = resolve(&standard_germ(AdeType::d(4))).unwrap_err();
        assert!(matches!(err, ResolutionError::IrrationalCenter(_)));
        assert!(resolve(&rational_germ(AdeType::d(4))).is_ok());
    }

    #[test]
    fn germ_validation() {
        assert_eq!(
            CurveGerm::parse("y^2 - x^3 + 1"),
            Err(ResolutionError::NotAtOrigin)
        );
        assert_eq!(CurveGerm::parse("y^2"), Err(ResolutionError::NonReduced));
        assert_eq!(
            CurveGerm::parse("x^2*y + x^3"),
            Err(ResolutionError::NonReduced)
        );
        assert_eq!(
            CurveGerm::parse("(y - x)^2*(y + x)"),
            Err(ResolutionError::NonReduced)
        );
        assert!(CurveGerm::parse("x*y").is_ok());
    }

    #[test]
    fn normal_forms() {
        assert_eq!(standard_germ(AdeType::a(2)).to_string(), "-x^3 + y^2");
        assert_eq!(
            standard_germ(AdeType::d(4)).poly(),
            &Poly::parse(&VARS, "x*y^2 + x^3").unwrap()
        );
        assert_eq!(
            standard_germ(AdeType::e(8)).poly(),
            &Poly::parse(&VARS, "x^3 + y^5").unwrap()
        );
    }

    #[test]
    fn type_parsing() {
        assert_eq!("A 2".parse::<AdeType>().unwrap(), AdeType::a(2));
        assert_eq!("e_8".parse::<AdeType>().unwrap(), AdeType::e(8));
        assert!("D3".parse::<AdeType>().is_err());
        assert!("E9".parse::<AdeType>().is_err());
        assert!("A0".parse::<AdeType>().is_err());
    }

    #[test]
    fn all_supported_types_resolve_quickly() {
        for t in AdeType::catalogue(10, 10) {
            let rec = resolve(&rational_germ(t)).unwrap();
            assert!(rec.blowup_count() < 30, "{t}: {}", rec.blowup_count());
            assert!(rec.satisfies(ResolveTarget::DoubleCoverReady));
            assert_eq!(rec, resolve(&rational_germ(t)).unwrap());
            for (_, _, m) in rec.crossings() {
                assert_eq!(m, 1, "{t}: non-transversal crossing");
            }
        }
    }
}
