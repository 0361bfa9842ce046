//! Double cover `z^2 = h(x, y)` over an embedded resolution, its canonical
//! cycle, contraction to the minimal resolution, and the defect.
//!
//! Over a resolved germ the cover is branched along the proper transform
//! and the odd-multiplicity exceptional curves. A curve `l` with
//! self-intersection `s` lifts as follows:
//!
//! | downstairs          | upstairs                         |
//! |---------------------|----------------------------------|
//! | `alpha` odd         | one branch curve, `L^2 = s/2`    |
//! | even, branch points | one curve, `L^2 = 2s`            |
//! | even, none          | two disjoint curves, `L^2 = s`   |

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exact::{solve_linear_exact, ExactError, IntMatrix};
use crate::resolution::{
    rational_germ, resolve, AdeFamily, AdeType, Node, ResolutionError, ResolutionRecord,
};

/// Sheet assignments are enumerated exhaustively up to this many ambiguous
/// edges.
const MAX_AMBIGUOUS_EDGES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("crossing of multiplicity {0} between {1} and {2}: resolve to normal crossings first")]
    NotNormalCrossings(u32, String, String),
    #[error("branch divisor is not smooth at a crossing of {0} and {1}")]
    BranchNotDisjoint(String, String),
    #[error("odd curve E{0} has odd self-intersection {1}")]
    OddSelfIntersection(usize, i64),
    #[error("even curve E{0} carries an odd number ({1}) of branch points")]
    OddBranchCount(usize, usize),
    #[error("pullback check failed for E{0}, E{1}")]
    PullbackMismatch(usize, usize),
    #[error("intersection form is not negative definite")]
    NotNegativeDefinite,
    #[error("intersection matrix is singular")]
    SingularMatrix,
    #[error("canonical cycle is not integral")]
    NonIntegralSolution,
    #[error("defect is not an integer")]
    NonIntegralDefect,
    #[error("formula and solver disagree: {0}")]
    CycleMismatch(String),
    #[error("terminal graph is not an A-D-E Dynkin diagram: {0}")]
    NotDynkin(String),
    #[error("{0} ambiguous sheet assignments exceed the search limit")]
    TooManyAmbiguities(usize),
    #[error("sheet assignments lead to different minimal graphs")]
    AmbiguousSheets,
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

impl From<ExactError> for CoverError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::SingularMatrix => CoverError::SingularMatrix,
            other => CoverError::Invariant(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sheet {
    Whole,
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverComponent {
    /// Index of the exceptional curve below.
    pub over: usize,
    pub sheet: Sheet,
    pub alpha: u32,
    pub self_int: i64,
    pub is_branch: bool,
}

impl CoverComponent {
    pub fn label(&self) -> String {
        let base = format!("L{}", self.over + 1);
        match self.sheet {
            Sheet::Whole => base,
            Sheet::First => format!("{base}'"),
            Sheet::Second => format!("{base}''"),
        }
    }

    pub fn split(&self) -> bool {
        self.sheet != Sheet::Whole
    }
}

/// Exceptional configuration on a (partial) resolution of the double point,
/// with the intersection numbers of the ramification curve `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverGraph {
    components: Vec<CoverComponent>,
    form: Vec<Vec<i64>>,
    r_incidence: Vec<i64>,
}

impl CoverGraph {
    pub fn from_parts(
        components: Vec<CoverComponent>,
        form: Vec<Vec<i64>>,
        r_incidence: Vec<i64>,
    ) -> Result<Self, CoverError> {
        let n = components.len();
        let square = form.len() == n && form.iter().all(|r| r.len() == n);
        if !square || r_incidence.len() != n {
            return Err(CoverError::Invariant("graph dimensions".into()));
        }
        for i in 0..n {
            if form[i][i] != components[i].self_int {
                return Err(CoverError::Invariant(
                    "diagonal differs from self-intersections".into(),
                ));
            }
            if (0..n).any(|j| form[i][j] != form[j][i]) {
                return Err(CoverError::Invariant(
                    "intersection form not symmetric".into(),
                ));
            }
        }
        Ok(CoverGraph {
            components,
            form,
            r_incidence,
        })
    }

    /// Graph of `n` vertices, all `(-2)`-curves, with the given edges.
    pub fn from_dynkin_edges(
        n: usize,
        edges: &[(usize, usize)],
        r_incidence: Vec<i64>,
    ) -> Result<Self, CoverError> {
        let components = (0..n)
            .map(|i| CoverComponent {
                over: i,
                sheet: Sheet::Whole,
                alpha: 0,
                self_int: -2,
                is_branch: false,
            })
            .collect();
        let mut form = vec![vec![0; n]; n];
        for (i, row) in form.iter_mut().enumerate() {
            row[i] = -2;
        }
        for &(a, b) in edges {
            form[a][b] += 1;
            form[b][a] += 1;
        }
        Self::from_parts(components, form, r_incidence)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[CoverComponent] {
        &self.components
    }

    pub fn intersection(&self, a: usize, b: usize) -> i64 {
        self.form[a][b]
    }

    pub fn r_incidence(&self) -> &[i64] {
        &self.r_incidence
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.form).expect("square")
    }

    /// Off-diagonal nonzero intersections `(a, b, L_a . L_b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.form[a][b] != 0 {
                    out.push((a, b, self.form[a][b]));
                }
            }
        }
        out
    }

    pub fn is_negative_definite(&self) -> bool {
        self.is_empty() || self.matrix().is_negative_definite()
    }

    /// `(Z + R) . L_i` for every component.
    pub fn adjunction_residuals(&self, z: &CanonicalCycle) -> Vec<i64> {
        (0..self.len())
            .map(|i| {
                let zl: i64 = (0..self.len()).map(|j| self.form[i][j] * z.0[j]).sum();
                zl + self.r_incidence[i]
            })
            .collect()
    }

    pub fn satisfies_cycle_equation(&self, z: &CanonicalCycle) -> bool {
        self.adjunction_residuals(z).iter().all(|&v| v == 0)
    }

    pub fn r_dot(&self, z: &CanonicalCycle) -> i64 {
        z.0.iter().zip(&self.r_incidence).map(|(a, b)| a * b).sum()
    }

    pub fn self_intersection_of(&self, z: &CanonicalCycle) -> i64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| z.0[i] * self.form[i][j] * z.0[j])
                    .sum::<i64>()
            })
            .sum()
    }

    /// Blows down component `e`, which must be a `(-1)`-curve.
    pub fn contract(&self, e: usize) -> Result<CoverGraph, CoverError> {
        if self.form[e][e] != -1 {
            return Err(CoverError::Invariant(format!(
                "{} is not a (-1)-curve",
                self.components[e].label()
            )));
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != e).collect();
        let mut form = vec![vec![0; keep.len()]; keep.len()];
        for (ni, &a) in keep.iter().enumerate() {
            for (nj, &b) in keep.iter().enumerate() {
                form[ni][nj] = self.form[a][b] + self.form[a][e] * self.form[b][e];
            }
        }
        let r_incidence = keep
            .iter()
            .map(|&a| self.r_incidence[a] + self.form[a][e] * self.r_incidence[e])
            .collect();
        let components = keep
            .iter()
            .enumerate()
            .map(|(ni, &a)| CoverComponent {
                self_int: form[ni][ni],
                ..self.components[a].clone()
            })
            .collect();
        Ok(CoverGraph {
            components,
            form,
            r_incidence,
        })
    }
}

/// Integer coefficients of `Z`, indexed like the graph's components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalCycle(pub Vec<i64>);

impl CanonicalCycle {
    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn without(&self, e: usize) -> CanonicalCycle {
        CanonicalCycle(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != e)
                .map(|(_, &v)| v)
                .collect(),
        )
    }

    pub fn sorted(&self) -> Vec<i64> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }
}

fn label_of(rec: &ResolutionRecord, n: Node) -> String {
    match n {
        Node::Curve(i) => format!("E{}", rec.curves()[i].id),
        Node::BBar => "B".to_string(),
    }
}

/// Edges between two split curves whose lifts are not determined locally,
/// as pairs of downstairs indices.
pub fn ambiguous_edges(res: &ResolutionRecord) -> Vec<(usize, usize)> {
    let splits = split_curves(res);
    res.curve_edges()
        .into_iter()
        .filter(|(a, b, _)| splits[*a] && splits[*b])
        .map(|(a, b, _)| (a, b))
        .collect()
}

fn branch_points(res: &ResolutionRecord) -> Vec<usize> {
    let curves = res.curves();
    let mut count = vec![0usize; curves.len()];
    for (a, b, _) in res.crossings() {
        match (a, b) {
            (Node::Curve(i), Node::BBar) => count[i] += 1,
            (Node::Curve(i), Node::Curve(j)) => {
                if curves[j].alpha % 2 == 1 {
                    count[i] += 1;
                }
                if curves[i].alpha % 2 == 1 {
                    count[j] += 1;
                }
            }
            _ => {}
        }
    }
    count
}

fn split_curves(res: &ResolutionRecord) -> Vec<bool> {
    let bp = branch_points(res);
    res.curves()
        .iter()
        .zip(bp)
        .map(|(c, n)| c.alpha % 2 == 0 && n == 0)
        .collect()
}

/// Builds the cover graph with every ambiguous edge joining equal sheets.
pub fn build_double_cover(res: &ResolutionRecord) -> Result<CoverGraph, CoverError> {
    let k = ambiguous_edges(res).len();
    build_double_cover_with(res, &vec![false; k])
}

/// Builds the cover graph; `crossed[i]` decides whether the `i`-th
/// ambiguous edge (see [`ambiguous_edges`]) joins opposite sheets.
pub fn build_double_cover_with(
    res: &ResolutionRecord,
    crossed: &[bool],
) -> Result<CoverGraph, CoverError> {
    let curves = res.curves();
    let odd = |i: usize| curves[i].alpha % 2 == 1;

    for (a, b, m) in res.crossings() {
        if m != 1 {
            return Err(CoverError::NotNormalCrossings(
                m,
                label_of(res, a),
                label_of(res, b),
            ));
        }
        let branch = |n: Node| match n {
            Node::Curve(i) => odd(i),
            Node::BBar => true,
        };
        if branch(a) && branch(b) {
            return Err(CoverError::BranchNotDisjoint(
                label_of(res, a),
                label_of(res, b),
            ));
        }
    }

    let bp = branch_points(res);
    let mut components = Vec::new();
    let mut lifts: Vec<Vec<usize>> = Vec::with_capacity(curves.len());
    for (i, c) in curves.iter().enumerate() {
        let first = components.len();
        if odd(i) {
            if c.self_int % 2 != 0 {
                return Err(CoverError::OddSelfIntersection(c.id, c.self_int));
            }
            components.push(CoverComponent {
                over: i,
                sheet: Sheet::Whole,
                alpha: c.alpha,
                self_int: c.self_int / 2,
                is_branch: true,
            });
        } else if bp[i] % 2 == 1 {
            return Err(CoverError::OddBranchCount(c.id, bp[i]));
        } else if bp[i] > 0 {
            components.push(CoverComponent {
                over: i,
                sheet: Sheet::Whole,
                alpha: c.alpha,
                self_int: 2 * c.self_int,
                is_branch: false,
            });
        } else {
            for sheet in [Sheet::First, Sheet::Second] {
                components.push(CoverComponent {
                    over: i,
                    sheet,
                    alpha: c.alpha,
                    self_int: c.self_int,
                    is_branch: false,
                });
            }
        }
        lifts.push((first..components.len()).collect());
    }

    let n = components.len();
    let mut form = vec![vec![0i64; n]; n];
    for (i, c) in components.iter().enumerate() {
        form[i][i] = c.self_int;
    }
    let ambiguous = ambiguous_edges(res);
    if crossed.len() != ambiguous.len() {
        return Err(CoverError::Invariant(
            "wrong number of sheet choices".into(),
        ));
    }
    let mut add = |a: usize, b: usize, v: i64| {
        form[a][b] += v;
        form[b][a] += v;
    };
    for (a, b, _) in res.curve_edges() {
        let (la, lb) = (&lifts[a], &lifts[b]);
        match (la.len(), lb.len()) {
            (1, 1) => {
                // odd-even meets once at the single preimage point; two
                // unramified curves meet at both preimages
                let v = if odd(a) || odd(b) { 1 } else { 2 };
                add(la[0], lb[0], v);
            }
            (2, 1) => {
                add(la[0], lb[0], 1);
                add(la[1], lb[0], 1);
            }
            (1, 2) => {
                add(la[0], lb[0], 1);
                add(la[0], lb[1], 1);
            }
            _ => {
                let pos = ambiguous.iter().position(|e| *e == (a, b)).expect("listed");
                if crossed[pos] {
                    add(la[0], lb[1], 1);
                    add(la[1], lb[0], 1);
                } else {
                    add(la[0], lb[0], 1);
                    add(la[1], lb[1], 1);
                }
            }
        }
    }

    let mut r_incidence = vec![0i64; n];
    for (i, _) in res.b_bar_incidence() {
        // the proper transform never meets a split curve
        r_incidence[lifts[i][0]] += 1;
    }

    let graph = CoverGraph {
        components,
        form,
        r_incidence,
    };
    check_pullback(res, &graph, &lifts)?;
    if !graph.is_negative_definite() {
        return Err(CoverError::NotNegativeDefinite);
    }
    Ok(graph)
}

// f^* l_i = 2 L_i on branch curves and the sum of the lifts otherwise;
// (f^* l_i . f^* l_j) must equal 2 (l_i . l_j).
fn check_pullback(
    res: &ResolutionRecord,
    g: &CoverGraph,
    lifts: &[Vec<usize>],
) -> Result<(), CoverError> {
    let curves = res.curves();
    let mut down = vec![vec![0i64; curves.len()]; curves.len()];
    for (i, c) in curves.iter().enumerate() {
        down[i][i] = c.self_int;
    }
    for (a, b, m) in res.curve_edges() {
        down[a][b] += m as i64;
        down[b][a] += m as i64;
    }
    let weight = |c: usize| if g.components[c].is_branch { 2 } else { 1 };
    for i in 0..curves.len() {
        for j in 0..curves.len() {
            let up: i64 = lifts[i]
                .iter()
                .flat_map(|&a| lifts[j].iter().map(move |&b| (a, b)))
                .map(|(a, b)| weight(a) * weight(b) * g.form[a][b])
                .sum();
            if up != 2 * down[i][j] {
                return Err(CoverError::PullbackMismatch(curves[i].id, curves[j].id));
            }
        }
    }
    Ok(())
}

/// `alpha` on branch curves, `alpha / 2` on the others.
pub fn canonical_cycle_formula(g: &CoverGraph) -> CanonicalCycle {
    CanonicalCycle(
        g.components
            .iter()
            .map(|c| {
                if c.is_branch {
                    c.alpha as i64
                } else {
                    c.alpha as i64 / 2
                }
            })
            .collect(),
    )
}

/// Solves `(Z + R) . L_i = 0` for `Z` exactly.
pub fn canonical_cycle_solve(g: &CoverGraph) -> Result<CanonicalCycle, CoverError> {
    if g.is_empty() {
        return Ok(CanonicalCycle(Vec::new()));
    }
    let rhs: Vec<BigInt> = g.r_incidence.iter().map(|&r| BigInt::from(-r)).collect();
    let x = solve_linear_exact(&g.matrix(), &rhs)?;
    let mut out = Vec::with_capacity(x.len());
    for v in x {
        if !v.is_integer() {
            return Err(CoverError::NonIntegralSolution);
        }
        out.push(
            v.to_integer()
                .to_i64()
                .ok_or(CoverError::NonIntegralSolution)?,
        );
    }
    Ok(CanonicalCycle(out))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionStep {
    pub label: String,
    /// `R . E` of the contracted curve.
    pub r_dot_e: i64,
    pub r_dot_z_before: i64,
    pub r_dot_z_after: i64,
}

/// Minimal resolution: all components are `(-2)`-curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalGraph {
    pub graph: CoverGraph,
    pub cycle: CanonicalCycle,
    pub ade: AdeType,
    pub contractions: Vec<ContractionStep>,
}

impl MinimalGraph {
    /// Coefficients grouped by the curve below: the two lifts of a split
    /// curve share one coefficient and are reported once.
    pub fn grouped_cycle(&self) -> Vec<(String, i64)> {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.graph.components.iter().enumerate() {
            groups.entry(c.over).or_default().push(i);
        }
        groups
            .into_iter()
            .map(|(over, members)| {
                let z = self.cycle.0[members[0]];
                (format!("L{}", over + 1), z)
            })
            .collect()
    }

    pub fn grouped_sorted(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.grouped_cycle().into_iter().map(|(_, z)| z).collect();
        v.sort_unstable();
        v
    }
}

/// Contracts `(-1)`-curves (lowest index first) until none is left, checking
/// at every stage that the solver reproduces the pushed-forward cycle and
/// that `R . Z` drops by exactly `(R . E)^2`.
pub fn contract_to_minimal(g: &CoverGraph) -> Result<MinimalGraph, CoverError> {
    let mut graph = g.clone();
    let mut z = canonical_cycle_formula(g);
    ensure_agreement(&graph, &z)?;
    let mut contractions = Vec::new();
    while let Some(e) = (0..graph.len()).find(|&i| graph.form[i][i] == -1) {
        let before = graph.r_dot(&z);
        let r_e = graph.r_incidence[e];
        let label = graph.components[e].label();
        graph = graph.contract(e)?;
        z = z.without(e);
        ensure_agreement(&graph, &z)?;
        let after = graph.r_dot(&z);
        if after != before - r_e * r_e {
            return Err(CoverError::Invariant(format!(
                "R.Z went from {before} to {after} contracting {label} with R.E = {r_e}"
            )));
        }
        contractions.push(ContractionStep {
            label,
            r_dot_e: r_e,
            r_dot_z_before: before,
            r_dot_z_after: after,
        });
    }
    let ade = classify_dynkin(&graph)?;
    if z.0.iter().any(|&v| v <= 0) {
        return Err(CoverError::Invariant(
            "canonical cycle not positive on minimal graph".into(),
        ));
    }
    Ok(MinimalGraph {
        graph,
        cycle: z,
        ade,
        contractions,
    })
}

fn ensure_agreement(g: &CoverGraph, z: &CanonicalCycle) -> Result<(), CoverError> {
    if !g.satisfies_cycle_equation(z) {
        return Err(CoverError::CycleMismatch(format!(
            "residuals {:?} for Z = {:?}",
            g.adjunction_residuals(z),
            z.0
        )));
    }
    let solved = canonical_cycle_solve(g)?;
    if solved != *z {
        return Err(CoverError::CycleMismatch(format!(
            "formula {:?}, solver {:?}",
            z.0, solved.0
        )));
    }
    Ok(())
}

/// Identifies a graph of `(-2)`-curves as a simply laced Dynkin diagram.
pub fn classify_dynkin(g: &CoverGraph) -> Result<AdeType, CoverError> {
    let n = g.len();
    let not = |why: &str| CoverError::NotDynkin(why.to_string());
    if n == 0 {
        return Err(not("empty graph"));
    }
    if g.components.iter().any(|c| c.self_int != -2) {
        return Err(not("a component is not a (-2)-curve"));
    }
    let edges = g.edges();
    if edges.iter().any(|&(_, _, m)| m != 1) {
        return Err(not("not simply laced"));
    }
    if edges.len() != n - 1 {
        return Err(not("not a tree"));
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b, _) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(not("not connected"));
    }
    if !g.is_negative_definite() {
        return Err(not("not negative definite"));
    }
    let n32 = n as u32;
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let ty = match branch.as_slice() {
        [] => AdeType::a(n32),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| arm_length(&adj, *c, start))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => AdeType::d(n32),
                [1, 2, 2] => AdeType::e(6),
                [1, 2, 3] => AdeType::e(7),
                [1, 2, 4] => AdeType::e(8),
                _ => return Err(not("arm lengths outside the A-D-E list")),
            }
        }
        _ => return Err(not("more than one branch vertex")),
    };
    Ok(ty)
}

fn arm_length(adj: &[Vec<usize>], centre: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (centre, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// `(1/2) R . Z`; also checks `-Z^2 = 2 delta`.
pub fn defect(g: &CoverGraph, z: &CanonicalCycle) -> Result<u64, CoverError> {
    let rz = g.r_dot(z);
    if rz % 2 != 0 || rz < 0 {
        return Err(CoverError::NonIntegralDefect);
    }
    let z2 = g.self_intersection_of(z);
    if -z2 != rz {
        return Err(CoverError::Invariant(format!("Z^2 = {z2} but R.Z = {rz}")));
    }
    Ok((rz / 2) as u64)
}

pub fn defect_closed_form(t: AdeType) -> u64 {
    let n = t.index as u64;
    match t.family {
        AdeFamily::A | AdeFamily::E => n.div_ceil(2),
        AdeFamily::D => n / 2 + 1,
    }
}

/// Everything computed for one germ, from blow-ups to the defect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleAnalysis {
    pub record: ResolutionRecord,
    pub cover: CoverGraph,
    pub formula_cycle: CanonicalCycle,
    pub solved_cycle: CanonicalCycle,
    pub minimal: MinimalGraph,
    pub defect: u64,
    /// Sheet assignments tried and how many gave a Dynkin diagram.
    pub assignments_tried: usize,
    pub assignments_valid: usize,
}

impl CycleAnalysis {
    pub fn formula_matches_solver(&self) -> bool {
        self.formula_cycle == self.solved_cycle
    }
}

/// Resolves the germ, builds the cover for each sheet assignment of the
/// ambiguous edges, and keeps the assignments whose contraction is a Dynkin
/// diagram. All of them must agree on type, cycle and defect.
pub fn analyze_record(record: ResolutionRecord) -> Result<CycleAnalysis, CoverError> {
    let k = ambiguous_edges(&record).len();
    if k > MAX_AMBIGUOUS_EDGES {
        return Err(CoverError::TooManyAmbiguities(k));
    }
    let mut chosen: Option<(CoverGraph, MinimalGraph)> = None;
    let mut valid = 0;
    let mut last_err = None;
    for mask in 0u32..(1 << k) {
        let crossed: Vec<bool> = (0..k).map(|i| mask & (1 << i) != 0).collect();
        let attempt = build_double_cover_with(&record, &crossed).and_then(|g| {
            let m = contract_to_minimal(&g)?;
            Ok((g, m))
        });
        match attempt {
            Ok((g, m)) => {
                valid += 1;
                if let Some((_, first)) = &chosen {
                    let same = first.ade == m.ade
                        && first.cycle.sorted() == m.cycle.sorted()
                        && defect(&first.graph, &first.cycle)? == defect(&m.graph, &m.cycle)?;
                    if !same {
                        return Err(CoverError::AmbiguousSheets);
                    }
                } else {
                    chosen = Some((g, m));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    let Some((cover, minimal)) = chosen else {
        return Err(last_err.unwrap_or(CoverError::AmbiguousSheets));
    };
    let formula_cycle = canonical_cycle_formula(&cover);
    let solved_cycle = canonical_cycle_solve(&cover)?;
    let defect = defect(&minimal.graph, &minimal.cycle)?;
    Ok(CycleAnalysis {
        record,
        cover,
        formula_cycle,
        solved_cycle,
        minimal,
        defect,
        assignments_tried: 1 << k,
        assignments_valid: valid,
    })
}

/// Full pipeline for the rational normal form of `t`.
pub fn analyze(t: AdeType) -> Result<CycleAnalysis, CoverError> {
    let record = resolve(&rational_germ(t))?;
    analyze_record(record)
}

impl fmt::Display for CanonicalCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
