//! Command-line front end. Input comes from an optional TOML file (see
//! [`crate::input`]) with flags taking precedence over file values.
//!
//! Exit codes: 0 success, 1 computation fine but the verdict is negative,
//! 2 invalid input, 3 internal error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::chisini::{analyze_pair, chisini_criterion, ChisiniError, OrderedReport, Verdict};
use crate::cover::{analyze_record, defect_closed_form, CoverError};
use crate::input::{
    parse_ade, resolve_covering, resolve_germ, resolve_pair, CoveringInput, FourWay, GermInput,
    InputDocument, InputError, MCanonicalInput, MonodromyInput, PairInput,
};
use crate::invariants::{compute, Bound, InvariantError};
use crate::local_models::{
    pleat_normal_form_check, verify_f3_identity, verify_f6_identity, ProofRecord,
};
use crate::monodromy::{enumerate_cusp_monodromies, ClassTag, MonodromyError, DEFAULT_CAP};
use crate::report::{big, list, num, obj, ratio, text, Report};
use crate::resolution::{resolve, BlowUpReason, Node, ResolutionError};
use crate::selftest::{run_selftest, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "adecover",
    version,
    about = "Double covers of A-D-E curve germs and numerical invariants of generic plane coverings"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Embedded resolution of a curve germ.
    Resolve(ResolveArgs),
    /// Canonical cycle and defect of the double cover over a germ.
    Cycle(GermArgs),
    /// Invariants of a generic covering from its branch-curve profile.
    Invariants(InvariantsArgs),
    /// Fiber-product intersection numbers and the uniqueness bound.
    Chisini(ChisiniArgs),
    /// Uniqueness criterion for m-canonical projections.
    Mcanonical(MCanonicalArgs),
    /// Local monodromy classes over a cusp.
    Monodromy(MonodromyArgs),
    /// Run the built-in fixture suite.
    Selftest,
}

#[derive(Debug, Args)]
pub struct GermArgs {
    /// A-D-E type, e.g. `A2`, `"A 2"` or `E 8`.
    pub ade_type: Vec<String>,
    /// Germ polynomial in x, y instead of a type.
    #[arg(long)]
    pub poly: Option<String>,
    /// TOML input file with a [germ] section.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ResolveArgs {
    #[command(flatten)]
    pub germ: GermArgs,
    /// Mark which blow-ups resolve the singular point and which are the
    /// extra ones needed for normal crossings and a smooth branch locus.
    #[arg(long)]
    pub with_extra_blowups: bool,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Covering degree N.
    #[arg(long)]
    pub degree: Option<u64>,
    /// Degree of the branch curve.
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub n_s: Option<u64>,
    #[arg(long)]
    pub n_p: Option<u64>,
    #[arg(long)]
    pub c_s: Option<u64>,
    #[arg(long)]
    pub c_p: Option<u64>,
    /// Higher singularities, e.g. `A3=1,E6=2`; replaces the file's table.
    #[arg(long)]
    pub higher: Option<String>,
}

#[derive(Debug, Args)]
pub struct ChisiniArgs {
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub d_bar: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub g1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub g2: Option<i64>,
    #[arg(long)]
    pub n1: Option<u64>,
    #[arg(long)]
    pub n2: Option<u64>,
    #[arg(long)]
    pub delta0: Option<u64>,
    #[arg(long)]
    pub nu_prime: Option<u64>,
    /// Node counts `ss,sp,ps,pp`.
    #[arg(long)]
    pub nodes: Option<String>,
    /// Cusp counts `ss,sp,ps,pp`.
    #[arg(long)]
    pub cusps: Option<String>,
    #[arg(long)]
    pub shared_invariants: Option<bool>,
}

#[derive(Debug, Args)]
pub struct MCanonicalArgs {
    pub m: Option<u64>,
    pub k: Option<u64>,
    /// Topological Euler number, if known.
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<i64>,
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MonodromyArgs {
    /// Covering degree; omit with --all.
    pub degree: Option<usize>,
    /// Largest degree the enumeration accepts.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Enumerate every degree from 2 to the cap.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub file: Option<PathBuf>,
}

/// A finished command: what to print and how to exit.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Option<Box<Report>>,
    pub error: Option<String>,
}

impl Outcome {
    fn done(report: Report, negative: bool) -> Self {
        Outcome {
            code: if negative { EXIT_NEGATIVE } else { EXIT_OK },
            report: Some(Box::new(report)),
            error: None,
        }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Outcome {
            code,
            report: None,
            error: Some(msg.into()),
        }
    }

    fn input(e: impl std::fmt::Display) -> Self {
        Self::fail(EXIT_INPUT, format!("input error: {e}"))
    }

    fn internal(e: impl std::fmt::Display) -> Self {
        Self::fail(EXIT_INTERNAL, format!("internal error: {e}"))
    }
}

fn load(path: &Option<PathBuf>) -> Result<InputDocument, Outcome> {
    let Some(path) = path else {
        return Ok(InputDocument::default());
    };
    let src = std::fs::read_to_string(path)
        .map_err(|e| Outcome::input(format!("{}: {e}", path.display())))?;
    InputDocument::parse(&src).map_err(Outcome::input)
}

fn resolution_outcome(e: ResolutionError) -> Outcome {
    match e {
        ResolutionError::TooManyBlowups(_)
        | ResolutionError::Inconsistent(_)
        | ResolutionError::Exact(_) => Outcome::internal(e),
        other => Outcome::input(other),
    }
}

fn cover_outcome(e: CoverError) -> Outcome {
    match e {
        CoverError::Resolution(r) => resolution_outcome(r),
        other => Outcome::internal(other),
    }
}

fn germ_input(args: &GermArgs) -> Result<GermInput, Outcome> {
    let mut germ = load(&args.file)?.germ.unwrap_or_default();
    if !args.ade_type.is_empty() {
        germ = GermInput {
            ade_type: Some(args.ade_type.join("")),
            polynomial: None,
        };
    }
    if let Some(p) = &args.poly {
        germ = GermInput {
            ade_type: None,
            polynomial: Some(p.clone()),
        };
    }
    Ok(germ)
}

fn germ_echo(report: &mut Report, g: &GermInput) {
    if let Some(t) = &g.ade_type {
        report.input("type", text(t.clone()));
    }
    if let Some(p) = &g.polynomial {
        report.input("polynomial", text(p.clone()));
    }
}

fn node_label(n: Node) -> String {
    match n {
        Node::Curve(i) => format!("L{}", i + 1),
        Node::BBar => "B".into(),
    }
}

pub fn cmd_resolve(args: &ResolveArgs) -> Outcome {
    let g = match germ_input(&args.germ) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let (germ, ade) = match resolve_germ(&g) {
        Ok(x) => x,
        Err(e) => return Outcome::input(e),
    };
    let record = match resolve(&germ) {
        Ok(r) => r,
        Err(e) => return resolution_outcome(e),
    };
    let mut report = Report::new("resolve");
    germ_echo(&mut report, &g);
    report.input("with_extra_blowups", Value::Bool(args.with_extra_blowups));
    report.set("germ", text(germ.poly().to_string()));
    report.set("blowups", num(record.blowup_count() as u64));

    let crossings = record.crossings();
    let curves: Vec<Value> = record
        .curves()
        .iter()
        .map(|c| {
            let meets: Vec<String> = crossings
                .iter()
                .filter_map(|&(a, b, _)| match (a, b) {
                    (Node::Curve(i), other) if i + 1 == c.id => Some(node_label(other)),
                    (other, Node::Curve(j)) if j + 1 == c.id => Some(node_label(other)),
                    _ => None,
                })
                .collect();
            obj(vec![
                ("curve", text(format!("L{}", c.id))),
                ("alpha", num(c.alpha)),
                ("self_int", num(c.self_int)),
                ("meets", text(meets.join(" "))),
            ])
        })
        .collect();
    report.set("curves", Value::Array(curves));

    let steps: Vec<Value> = record
        .steps()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut row = vec![
                ("step", num(i as u64 + 1)),
                ("center", text(s.center.clone())),
                ("reason", text(s.reason.name())),
                ("multiplicity", num(s.multiplicity)),
                ("new_curve", text(format!("L{}", s.new_curve + 1))),
            ];
            if args.with_extra_blowups {
                let stage = if s.reason == BlowUpReason::Singular {
                    "resolving"
                } else {
                    "extra"
                };
                row.push(("stage", text(stage)));
            }
            obj(row)
        })
        .collect();
    report.set("steps", Value::Array(steps));
    if args.with_extra_blowups {
        let (resolving, extra) = record.stage_split();
        report.set(
            "stage_split",
            obj(vec![
                ("resolving", num(resolving as u64)),
                ("extra", num(extra as u64)),
            ]),
        );
    }

    match analyze_record(record) {
        Ok(a) => {
            report.set("dynkin_type", text(a.minimal.ade.to_string()));
            report.set("defect", num(a.defect));
            if let Some(t) = ade {
                if a.minimal.ade != t || a.defect != defect_closed_form(t) {
                    return Outcome::internal(format!(
                        "{t}: pipeline gives {} with defect {}",
                        a.minimal.ade, a.defect
                    ));
                }
            }
        }
        Err(e) => {
            report.warn(format!("no A-D-E double cover over this germ: {e}"));
        }
    }
    Outcome::done(report, false)
}

pub fn cmd_cycle(args: &GermArgs) -> Outcome {
    let g = match germ_input(args) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let (germ, ade) = match resolve_germ(&g) {
        Ok(x) => x,
        Err(e) => return Outcome::input(e),
    };
    let analysis = match resolve(&germ)
        .map_err(CoverError::from)
        .and_then(analyze_record)
    {
        Ok(a) => a,
        Err(e) => return cover_outcome(e),
    };
    let mut report = Report::new("cycle");
    germ_echo(&mut report, &g);
    let m = &analysis.minimal;
    report.set("dynkin_type", text(m.ade.to_string()));
    let cover_rows: Vec<Value> = analysis
        .cover
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            obj(vec![
                ("component", text(c.label())),
                ("alpha", num(c.alpha)),
                ("self_int", num(c.self_int)),
                ("branch", Value::Bool(c.is_branch)),
                ("r", num(analysis.cover.r_incidence()[i])),
                ("z", num(analysis.formula_cycle.0[i])),
            ])
        })
        .collect();
    report.set("cover", Value::Array(cover_rows));
    let contractions: Vec<Value> = m
        .contractions
        .iter()
        .map(|s| {
            obj(vec![
                ("curve", text(s.label.clone())),
                ("r_dot_e", num(s.r_dot_e)),
                ("r_dot_z_before", num(s.r_dot_z_before)),
                ("r_dot_z_after", num(s.r_dot_z_after)),
            ])
        })
        .collect();
    report.set("contractions", Value::Array(contractions));
    let minimal_rows: Vec<Value> = m
        .graph
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            obj(vec![
                ("component", text(c.label())),
                ("self_int", num(c.self_int)),
                ("r", num(m.graph.r_incidence()[i])),
                ("z", num(m.cycle.0[i])),
            ])
        })
        .collect();
    report.set("minimal", Value::Array(minimal_rows));
    report.set(
        "minimal_edges",
        list(&m.graph.edges(), |&(a, b, w)| {
            let comps = m.graph.components();
            text(format!(
                "{}-{}{}",
                comps[a].label(),
                comps[b].label(),
                if w == 1 {
                    String::new()
                } else {
                    format!(" x{w}")
                }
            ))
        }),
    );
    let grouped = m.grouped_cycle();
    report.set(
        "grouped_z",
        text(
            grouped
                .iter()
                .map(|(l, z)| format!("{z}{l}"))
                .collect::<Vec<_>>()
                .join(" + "),
        ),
    );
    report.set("grouped_z_sorted", list(&m.grouped_sorted(), |&z| num(z)));
    report.set(
        "formula_matches_solver",
        Value::Bool(analysis.formula_matches_solver()),
    );
    report.set("defect", num(analysis.defect));
    report.set(
        "sheet_assignments",
        obj(vec![
            ("tried", num(analysis.assignments_tried as u64)),
            ("valid", num(analysis.assignments_valid as u64)),
        ]),
    );
    if !analysis.formula_matches_solver() {
        return Outcome::internal("formula cycle differs from the solved cycle");
    }
    if let Some(t) = ade {
        report.set("defect_closed_form", num(defect_closed_form(t)));
        if analysis.defect != defect_closed_form(t) || m.ade != t {
            return Outcome::internal(format!(
                "{t}: defect {} vs closed form {}",
                analysis.defect,
                defect_closed_form(t)
            ));
        }
    }
    Outcome::done(report, false)
}

fn parse_higher(src: &str) -> Result<std::collections::BTreeMap<String, u64>, InputError> {
    let mut out = std::collections::BTreeMap::new();
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, count) = part.split_once('=').ok_or_else(|| InputError::Invalid {
            field: "higher".into(),
            msg: format!("expected TYPE=COUNT, got {part:?}"),
        })?;
        parse_ade(name.trim())?;
        let count = count
            .trim()
            .parse::<u64>()
            .map_err(|e| InputError::Invalid {
                field: "higher".into(),
                msg: e.to_string(),
            })?;
        out.insert(name.trim().to_string(), count);
    }
    Ok(out)
}

fn bound_value(b: &Bound) -> Value {
    match b {
        Bound::Finite(q) => ratio(q),
        Bound::Unbounded => text("unbounded"),
    }
}

pub fn cmd_invariants(args: &InvariantsArgs) -> Outcome {
    let mut c: CoveringInput = match load(&args.file) {
        Ok(doc) => doc.covering.unwrap_or_default(),
        Err(o) => return o,
    };
    c.degree = args.degree.or(c.degree);
    c.d = args.d.or(c.d);
    let mut nodes = c.nodes.clone().unwrap_or_default();
    let mut cusps = c.cusps.clone().unwrap_or_default();
    nodes.s = args.n_s.unwrap_or(nodes.s);
    nodes.p = args.n_p.unwrap_or(nodes.p);
    cusps.s = args.c_s.unwrap_or(cusps.s);
    cusps.p = args.c_p.unwrap_or(cusps.p);
    c.nodes = Some(nodes);
    c.cusps = Some(cusps);
    if let Some(h) = &args.higher {
        match parse_higher(h) {
            Ok(map) => c.higher = Some(map),
            Err(e) => return Outcome::input(e),
        }
    }
    let profile = match resolve_covering(&c) {
        Ok(Ok(p)) => p,
        Ok(Err(e)) => return Outcome::input(e),
        Err(e) => return Outcome::input(e),
    };
    let mut report = Report::new("invariants");
    report.input("degree", num(profile.degree()));
    report.input("d", num(profile.d()));
    let (n_s, n_p) = profile.node_split();
    let (c_s, c_p) = profile.cusp_split();
    report.input("nodes", obj(vec![("s", num(n_s)), ("p", num(n_p))]));
    report.input("cusps", obj(vec![("s", num(c_s)), ("p", num(c_p))]));
    report.input(
        "higher",
        Value::Object(
            profile
                .higher()
                .iter()
                .map(|(t, n)| (t.to_string(), num(n)))
                .collect(),
        ),
    );
    match compute(&profile) {
        Ok(r) => {
            report
                .set("d_bar", num(r.d_bar))
                .set("delta_b", big(&r.delta_b))
                .set("delta0", big(&r.delta0))
                .set("delta_x", big(&r.delta_x))
                .set("g", big(&r.g))
                .set("p_a_r", big(&r.p_a_r))
                .set("r_bar_sq", big(&r.r_bar_sq))
                .set("r_plus_z_sq", big(&r.r_plus_z_sq))
                .set("k2", big(&r.chern.k2))
                .set("euler", big(&r.chern.euler))
                .set("chi", big(&r.chern.chi))
                .set("nu", big(&r.nu))
                .set("nu_prime", big(&r.nu_prime))
                .set("dual_degree", big(&r.dual_degree))
                .set(
                    "bounds",
                    obj(vec![
                        ("simple", big(&r.bounds.simple)),
                        ("simple_equality", Value::Bool(r.bounds.simple_equality)),
                        ("hodge", bound_value(&r.bounds.hodge)),
                        ("hodge_equality", Value::Bool(r.bounds.hodge_equality)),
                    ]),
                );
            report.verdict = Some("within bounds".into());
            if r.bounds.hodge_equality {
                report.warn("equality in the Hodge bound: expected only when the pulled-back line class is numerically a multiple of K_S (not checked)");
            }
            Outcome::done(report, false)
        }
        Err(InvariantError::BoundViolated { n, bound }) => {
            report.verdict = Some(format!("bound violated: N = {n} exceeds {bound}"));
            Outcome::done(report, true)
        }
        Err(e @ InvariantError::Inconsistent(_)) => Outcome::internal(e),
        Err(e) => Outcome::input(e),
    }
}

fn ordered_value(o: &OrderedReport) -> Value {
    obj(vec![
        ("iota", num(o.iota)),
        ("t", big(&o.t)),
        ("r_plus_zr_sq", big(&o.fiber.r_sq)),
        ("c_plus_zc_sq", big(&o.fiber.c_sq)),
        ("rc", big(&o.fiber.rc)),
        ("delta_r", big(&o.delta_r)),
        ("delta_c", big(&o.delta_c)),
        ("hodge_determinant", big(&o.hodge_determinant)),
        ("bound", bound_value(&o.bound)),
        ("other_degree", num(o.n2)),
        ("verdict", text(o.verdict.to_string())),
    ])
}

fn chisini_outcome(e: ChisiniError) -> Outcome {
    match e {
        ChisiniError::Inconsistent(_) => Outcome::internal(e),
        other => Outcome::input(other),
    }
}

pub fn cmd_chisini(args: &ChisiniArgs) -> Outcome {
    let mut p: PairInput = match load(&args.file) {
        Ok(doc) => doc.pair.unwrap_or_default(),
        Err(o) => return o,
    };
    p.d_bar = args.d_bar.or(p.d_bar);
    p.g1 = args.g1.or(p.g1);
    p.g2 = args.g2.or(p.g2);
    p.n1 = args.n1.or(p.n1);
    p.n2 = args.n2.or(p.n2);
    p.delta0 = args.delta0.or(p.delta0);
    p.nu_prime = args.nu_prime.or(p.nu_prime);
    p.shared_invariants = args.shared_invariants.or(p.shared_invariants);
    for (flag, slot) in [(&args.nodes, &mut p.nodes), (&args.cusps, &mut p.cusps)] {
        if let Some(src) = flag {
            match FourWay::parse(src) {
                Ok(v) => *slot = Some(v),
                Err(e) => return Outcome::input(e),
            }
        }
    }
    let pair = match resolve_pair(&p) {
        Ok(x) => x,
        Err(e) => return Outcome::input(e),
    };
    let rep = match analyze_pair(&pair) {
        Ok(r) => r,
        Err(e) => return chisini_outcome(e),
    };
    let mut report = Report::new("chisini");
    let four = |a: [u64; 4]| {
        obj(vec![
            ("ss", num(a[0])),
            ("sp", num(a[1])),
            ("ps", num(a[2])),
            ("pp", num(a[3])),
        ])
    };
    report
        .input("d_bar", num(pair.d_bar))
        .input("g1", big(&pair.g1))
        .input("g2", big(&pair.g2()))
        .input("n1", num(pair.n1))
        .input("n2", num(pair.n2))
        .input("delta0", num(pair.delta0))
        .input("nu_prime", num(pair.nu_prime))
        .input("shared_invariants", Value::Bool(pair.shared_invariants))
        .input("nodes", four(pair.counts.nodes))
        .input("cusps", four(pair.counts.cusps));
    report
        .set("genus", big(&rep.genus))
        .set("dual_degree", big(&rep.dual_degree))
        .set(
            "positivity",
            obj(vec![
                ("value", big(&rep.positivity.value)),
                ("positive", Value::Bool(rep.positivity.positive)),
            ]),
        )
        .set("first_ordering", ordered_value(&rep.forward))
        .set("second_ordering", ordered_value(&rep.backward));
    if !rep.positivity.positive {
        report.warn("positivity value is not positive: the input cannot come from a pair of generic coverings");
    }
    report.warn("both orderings of the pair are evaluated; the verdict is the stronger of the two");
    report.verdict = Some(rep.verdict.to_string());
    Outcome::done(report, rep.verdict != Verdict::Unique)
}

pub fn cmd_mcanonical(args: &MCanonicalArgs) -> Outcome {
    let mut q: MCanonicalInput = match load(&args.file) {
        Ok(doc) => doc.mcanonical.unwrap_or_default(),
        Err(o) => return o,
    };
    q.m = args.m.or(q.m);
    q.k = args.k.or(q.k);
    q.e = args.e.or(q.e);
    let (Some(m), Some(k)) = (q.m, q.k) else {
        return Outcome::input(InputError::MissingField {
            section: "mcanonical",
            field: if q.m.is_none() { "m" } else { "k" },
        });
    };
    let v = match chisini_criterion(m, k, q.e) {
        Ok(v) => v,
        Err(e) => return chisini_outcome(e),
    };
    let mut report = Report::new("mcanonical");
    report.input("m", num(m)).input("k", num(k));
    if let Some(e) = q.e {
        report.input("e", num(e));
    }
    let inv = &v.invariants;
    report
        .set("n", big(&inv.n))
        .set("d", big(&inv.d))
        .set("d_bar", big(&inv.d_bar))
        .set("p_a_minus_1", big(&inv.pa_minus_1))
        .set("t", big(&inv.t))
        .set("lhs", big(&v.lhs))
        .set("rhs", ratio(&v.rhs))
        .set("margin", ratio(&v.margin))
        .set("holds", Value::Bool(v.holds))
        .set("scaled_value", ratio(&v.scaled_value));
    if let Some(sm) = &v.sharp_margin {
        report
            .set("sharp_margin", ratio(sm))
            .set("sharp_holds", Value::Bool(v.sharp_holds() == Some(true)));
    } else {
        report.warn("e not given: the Noether inequality e <= 5k + 36 is used in its place");
    }
    if inv.degenerate {
        report.warn("N < 2: the projection is not a genuine covering");
    }
    let holds = v.holds || v.sharp_holds() == Some(true);
    report.verdict = Some(if holds { "holds" } else { "fails" }.into());
    Outcome::done(report, !holds)
}

pub fn cmd_monodromy(args: &MonodromyArgs) -> Outcome {
    let mut q: MonodromyInput = match load(&args.file) {
        Ok(doc) => doc.monodromy.unwrap_or_default(),
        Err(o) => return o,
    };
    q.degree = args.degree.or(q.degree);
    q.cap = args.cap.or(q.cap);
    let cap = q.cap.unwrap_or(DEFAULT_CAP);
    let degrees: Vec<usize> = match (args.all, q.degree) {
        (true, _) => (2..=cap).collect(),
        (false, Some(n)) => vec![n],
        (false, None) => {
            return Outcome::input(InputError::MissingField {
                section: "monodromy",
                field: "degree",
            })
        }
    };
    let mut report = Report::new("monodromy");
    report
        .input("degrees", list(&degrees, |&n| num(n as u64)))
        .input("cap", num(cap as u64));
    let mut rows = Vec::new();
    let mut unexpected = false;
    for &n in &degrees {
        let classes = match enumerate_cusp_monodromies(n, cap) {
            Ok(c) => c,
            Err(e @ MonodromyError::DegreeTooLarge { .. })
            | Err(e @ MonodromyError::DegreeTooSmall(_)) => return Outcome::input(e),
            Err(e) => return Outcome::internal(e),
        };
        for c in classes {
            unexpected |= c.tag == ClassTag::Unexpected;
            rows.push(obj(vec![
                ("degree", num(n as u64)),
                ("tag", text(c.tag.to_string())),
                ("sigma_a", text(c.representative.a.to_string())),
                ("sigma_b", text(c.representative.b.to_string())),
                ("meridian_type", list(&c.meridian_type, |&x| num(x as u64))),
                ("orbit_size", num(c.orbit_size as u64)),
            ]));
        }
    }
    report.set("class_count", num(rows.len() as u64));
    report.set("classes", Value::Array(rows));
    report.verdict = Some(
        if unexpected {
            "unexpected classes found"
        } else {
            "only F2, F3, F6"
        }
        .into(),
    );
    Outcome::done(report, unexpected)
}

fn proof_value(p: &ProofRecord) -> Value {
    let mut pairs = vec![
        ("name", text(p.name.clone())),
        ("remainder", text(p.remainder.to_string())),
    ];
    for (k, v) in &p.facts {
        if k == "(C.R)" {
            pairs.push(("contact", text(v.clone())));
        }
    }
    obj(pairs)
}

pub fn cmd_selftest() -> Outcome {
    let checks = run_selftest();
    let mut report = Report::new("selftest");
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            obj(vec![
                ("check", text(c.name.clone())),
                ("status", text(c.status.name())),
                ("detail", text(c.detail.clone())),
            ])
        })
        .collect();
    let failures = checks.iter().filter(|c| c.status == Status::Fail).count();
    let deviations = checks
        .iter()
        .filter(|c| c.status == Status::Deviation)
        .count();
    report.set("checks", Value::Array(rows));
    let proofs: Vec<Value> = [verify_f3_identity(), verify_f6_identity()]
        .into_iter()
        .chain((1..=3).map(pleat_normal_form_check))
        .filter_map(Result::ok)
        .map(|p| proof_value(&p))
        .collect();
    report.set("identities", Value::Array(proofs));
    report
        .set("failures", num(failures as u64))
        .set("deviations", num(deviations as u64));
    if deviations > 0 {
        report.warn("deviations are printed values shown to be unrealizable; the computed value is reported instead");
    }
    report.verdict = Some(
        if failures == 0 {
            "all fixtures pass"
        } else {
            "fixture mismatch"
        }
        .into(),
    );
    Outcome::done(report, failures > 0)
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Resolve(a) => cmd_resolve(a),
        Command::Cycle(a) => cmd_cycle(a),
        Command::Invariants(a) => cmd_invariants(a),
        Command::Chisini(a) => cmd_chisini(a),
        Command::Mcanonical(a) => cmd_mcanonical(a),
        Command::Monodromy(a) => cmd_monodromy(a),
        Command::Selftest => cmd_selftest(),
    }
}

/// Parses arguments, runs the command and prints the result. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let outcome = execute(&cli);
    if let Some(r) = &outcome.report {
        match cli.format {
            Format::Human => print!("{}", r.to_human()),
            Format::Machine => print!("{}", r.to_machine()),
        }
    }
    if let Some(e) = &outcome.error {
        eprintln!("{e}");
    }
    outcome.code
}
