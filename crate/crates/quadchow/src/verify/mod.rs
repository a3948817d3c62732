//! Identity suites: each suite enumerates instantiated cases for one quadric
//! dimension, and every case evaluates two independently computed sides and
//! compares them exactly.
//!
//! Cases are plain data so that a runner can evaluate them in any order or in
//! parallel against one shared [`Workspace`].

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use once_cell::race::OnceBox;

use crate::context::QuadricContext;
use crate::error::{Error, Result};
use crate::quadpow::{basis, QuadBasis, QuadCycle};
use crate::schubert::SchubertModels;

mod checks;
#[cfg(test)]
mod tests;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// The symmetric cycles `Δ_i` on powers of the quadric and the diagonal.
    Diagonal,
    /// Relations between pull-push classes on `F(i-1,i)`; they fix every sign
    /// convention of the Schubert model.
    PullPushRelations,
    /// The summation formula for `π_*π^*(W^i_{k-i} · Z^i_{n-i-m})`.
    Summation,
    /// Chern classes of tautological bundles modulo 2 and the steps leading
    /// to them.
    TautologicalChern,
    /// Two evaluations of `θ_i` applied to `Z^i_{n-i}`, and the reduction from
    /// `G_i` to `G_{i-1}`.
    ThetaRoutes,
    /// The action of `α_i` modulo 2 on powers of `h`.
    AlphaAction,
    /// `α_i − Δ_i` modulo 2 is a sum of external products of powers of `h`.
    Nonessential,
    /// Degree congruences for products of `Z` classes on `G_i`.
    DegreeCriterion,
    /// Composition of `ρ_i` with primordial-shaped correspondences.
    Primordial,
    /// The correspondence `θ'_i` from `X²` to `F(0,i)`.
    ThetaPrime,
    /// Degrees of products of elementary classes on `G_d`.
    DegreesGd,
    /// `CH(X)` against `CH(G_0)` in the Schubert model.
    CrossModel,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Diagonal,
        Suite::PullPushRelations,
        Suite::Summation,
        Suite::TautologicalChern,
        Suite::ThetaRoutes,
        Suite::AlphaAction,
        Suite::Nonessential,
        Suite::DegreeCriterion,
        Suite::Primordial,
        Suite::ThetaPrime,
        Suite::DegreesGd,
        Suite::CrossModel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Diagonal => "diagonal",
            Suite::PullPushRelations => "pull-push",
            Suite::Summation => "summation",
            Suite::TautologicalChern => "tautological-chern",
            Suite::ThetaRoutes => "theta-routes",
            Suite::AlphaAction => "alpha-action",
            Suite::Nonessential => "nonessential",
            Suite::DegreeCriterion => "degree-criterion",
            Suite::Primordial => "primordial",
            Suite::ThetaPrime => "theta-prime",
            Suite::DegreesGd => "degrees-gd",
            Suite::CrossModel => "cross-model",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Dimensions the suite accepts.
    pub fn supported(self) -> RangeInclusive<u32> {
        match self {
            Suite::Diagonal => 2..=QuadricContext::MAX_N,
            _ => 3..=QuadricContext::MAX_N,
        }
    }

    /// Dimensions run when none is given; `deep` adds the slow ones.
    pub fn default_range(self, deep: bool) -> RangeInclusive<u32> {
        let low = *self.supported().start();
        match (self, deep) {
            (Suite::Diagonal | Suite::CrossModel, _) => self.supported(),
            (Suite::DegreeCriterion, false) => 5..=6,
            (Suite::DegreeCriterion, true) => 5..=QuadricContext::MAX_N,
            (_, false) => low..=6,
            (_, true) => self.supported(),
        }
    }

    fn needs_models(self) -> bool {
        !matches!(self, Suite::Diagonal | Suite::Primordial)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Param {
    Int(i64),
    List(Vec<u32>),
    Text(String),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::Text(s) => f.write_str(s),
            Param::List(v) => {
                f.write_str("[")?;
                for (j, x) in v.iter().enumerate() {
                    if j > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The evaluation itself failed (range, integrality, ...).
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// One instantiated identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case {
    pub suite: Suite,
    pub n: u32,
    pub id: String,
    pub params: Vec<(&'static str, Param)>,
    task: Task,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub suite: Suite,
    pub n: u32,
    pub id: String,
    pub params: Vec<(&'static str, Param)>,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// What a case evaluates. `c` indexes [`SchubertModels::all`].
#[derive(Debug, Clone, PartialEq, Eq)]
enum Task {
    CyclicSum { i: u32 },
    Difference { i: u32 },
    Halving { i: u32 },
    HalvingByH { i: u32 },
    DoubleL { i: u32 },
    DiagonalClass,

    PushPullH { c: usize, i: u32 },
    ZRelation { c: usize, i: u32, j: u32 },
    WRelation { c: usize, i: u32, j: u32 },
    TopWRelation { c: usize, i: u32 },

    Summation { c: usize, i: u32, k: u32, m: u32 },

    ChernSigma { i: u32, j: u32 },
    QuotientDivisible { c: usize, i: u32, l: u32 },
    QuotientVsW { c: usize, i: u32, t: u32 },
    WhitneyStep { i: u32, j: u32 },
    SummationTop { c: usize, i: u32, j: u32 },
    Shift { c: usize, i: u32, j: u32 },

    Route { i: u32, x: QuadBasis },
    LowVanish { i: u32, k: u32 },
    IncidenceRelation { c: usize, i: u32 },
    Reduction { c: usize, i: u32 },
    Expansion { i: u32, k: u32 },
    ExtraTerm { i: u32 },
    ImageIsSym { i: u32, k: u32 },
    CoordinateLow { i: u32, k: u32 },
    CoordinateLowExpanded { i: u32, k: u32 },
    WhitneyCollapse { i: u32, k: u32 },
    LowerImage { i: u32, k: u32 },
    CoordinateHigh { i: u32, k: u32 },

    AlphaOnH { i: u32, k: u32 },
    AlphaSymmetric { i: u32 },
    Nonessential { i: u32 },

    ShiftedDegree { i: u32, k: u32, m: u32 },
    TopRightDegree { i: u32, k: u32 },

    Primordial { i: u32, i1: u32, coefficients: Vec<bool> },

    ThetaPrimeTable { c: usize, i: u32 },
    ThetaPrimeOnRho { c: usize, i: u32 },
    ThetaPrimePush { c: usize, i: u32 },
    ThetaPrimeStep { c: usize, i: u32, k: u32 },

    GdDegree { a: Vec<u32> },

    CrossProduct { c: usize, a: QuadBasis, b: QuadBasis },
    CrossDegree { c: usize, a: QuadBasis },
}

/// Shared, immutable data for evaluating the cases of one dimension.
pub struct Workspace {
    ctx: QuadricContext,
    models: Option<SchubertModels>,
    theta_actions: Vec<OnceBox<Result<QuadCycle>>>,
}

impl Workspace {
    /// Builds the quadric context and, unless `quadric_only`, the Schubert
    /// models (both components of `G_d` in even dimension).
    pub fn new(n: u32, quadric_only: bool) -> Result<Self> {
        let ctx = QuadricContext::new(n)?;
        let models = if quadric_only { None } else { Some(SchubertModels::new(n)?) };
        let theta_actions = (0..=ctx.d()).map(|_| OnceBox::new()).collect();
        Ok(Workspace { ctx, models, theta_actions })
    }

    /// A workspace able to run every case of `suite` at dimension `n`.
    pub fn for_suite(suite: Suite, n: u32) -> Result<Self> {
        Workspace::new(n, !suite.needs_models())
    }

    pub fn context(&self) -> &QuadricContext {
        &self.ctx
    }

    fn models(&self) -> Result<&SchubertModels> {
        self.models.as_ref().ok_or_else(|| Error::OutOfRange("workspace built without Schubert models".to_string()))
    }

    /// `(θ_i)_*(Z^i_{n-i})`, computed once.
    fn theta_action(&self, i: u32) -> Result<QuadCycle> {
        let slot = self.theta_actions.get(i as usize).ok_or_else(|| Error::OutOfRange(alloc::format!("θ_{i}")))?;
        slot.get_or_init(|| Box::new(self.models().and_then(|m| crate::bridge::theta_action(m, i)))).clone()
    }
}

fn component_name(models_len: usize, c: usize) -> Option<Param> {
    (models_len > 1).then(|| Param::Text(if c == 0 { "plus" } else { "minus" }.to_string()))
}

struct Builder {
    suite: Suite,
    n: u32,
    components: usize,
    out: Vec<Case>,
}

impl Builder {
    fn push(&mut self, id: &str, params: &[(&'static str, i64)], c: Option<usize>, task: Task) {
        let mut all: Vec<(&'static str, Param)> = Vec::new();
        let mut label = String::from(id);
        if let Some(p) = c.and_then(|c| component_name(self.components, c)) {
            label.push_str(&alloc::format!("[{p}]"));
            all.push(("component", p));
        }
        for &(name, v) in params {
            label.push_str(&alloc::format!(" {name}={v}"));
            all.push((name, Param::Int(v)));
        }
        self.out.push(Case { suite: self.suite, n: self.n, id: label, params: all, task });
    }

    fn push_with(&mut self, id: String, params: Vec<(&'static str, Param)>, task: Task) {
        self.out.push(Case { suite: self.suite, n: self.n, id, params, task });
    }
}

/// Every case of `suite` at dimension `n`.
pub fn cases(suite: Suite, n: u32) -> Result<Vec<Case>> {
    let range = suite.supported();
    if !range.contains(&n) {
        return Err(Error::DimensionOutOfRange { n, min: *range.start(), max: *range.end() });
    }
    let ctx = QuadricContext::new(n)?;
    let d = ctx.d();
    let components = if ctx.is_even() { 2 } else { 1 };
    let mut b = Builder { suite, n, components, out: Vec::new() };
    // models covering G_i
    let over = |i: u32| if i == d { 0..components } else { 0..1 };
    let all = 0..components;
    match suite {
        Suite::Diagonal => {
            b.push("diagonal-class", &[], None, Task::DiagonalClass);
            for i in 1..=d {
                b.push("difference", &[("i", i as i64)], None, Task::Difference { i });
            }
            for i in 2..=d {
                let p = [("i", i as i64)];
                b.push("cyclic-sum", &p, None, Task::CyclicSum { i });
                b.push("halving", &p, None, Task::Halving { i });
                b.push("halving-by-h", &p, None, Task::HalvingByH { i });
                b.push("double-l", &p, None, Task::DoubleL { i });
            }
        }
        Suite::PullPushRelations => {
            for c in all.clone() {
                for i in 0..=d {
                    b.push("push-pull-h", &[("i", i as i64)], Some(c), Task::PushPullH { c, i });
                }
                for i in 1..=d {
                    for j in (n + 1 - i - d)..=(n + 1 - i) {
                        b.push("z-relation", &[("i", i as i64), ("j", j as i64)], Some(c), Task::ZRelation { c, i, j });
                    }
                    for j in 0..(d + 1 - i) {
                        b.push("w-relation", &[("i", i as i64), ("j", j as i64)], Some(c), Task::WRelation { c, i, j });
                    }
                    b.push("top-w-relation", &[("i", i as i64)], Some(c), Task::TopWRelation { c, i });
                }
            }
        }
        Suite::Summation => {
            for i in 1..=d {
                for c in over(i) {
                    for k in i..=d {
                        for m in 0..=k {
                            let p = [("i", i as i64), ("k", k as i64), ("m", m as i64)];
                            b.push("summation", &p, Some(c), Task::Summation { c, i, k, m });
                        }
                    }
                }
            }
        }
        Suite::TautologicalChern => {
            for i in 1..=d {
                for j in 0..=i {
                    b.push("chern-sigma", &[("i", i as i64), ("j", j as i64)], None, Task::ChernSigma { i, j });
                }
                for j in 1..=i {
                    b.push("whitney-step", &[("i", i as i64), ("j", j as i64)], None, Task::WhitneyStep { i, j });
                }
                for c in over(i) {
                    for l in (d - i + 2)..=(n + 2 - i) {
                        let p = [("i", i as i64), ("l", l as i64)];
                        b.push("quotient-divisible", &p, Some(c), Task::QuotientDivisible { c, i, l });
                    }
                    for t in 0..=(d + 1 - i) {
                        b.push(
                            "quotient-vs-w",
                            &[("i", i as i64), ("t", t as i64)],
                            Some(c),
                            Task::QuotientVsW { c, i, t },
                        );
                    }
                    for j in 1..=i {
                        let p = [("i", i as i64), ("j", j as i64)];
                        b.push("summation-top", &p, Some(c), Task::SummationTop { c, i, j });
                    }
                    if i < d {
                        for j in 1..=d {
                            b.push("shift", &[("i", i as i64), ("j", j as i64)], Some(c), Task::Shift { c, i, j });
                        }
                    }
                }
            }
        }
        Suite::ThetaRoutes => {
            for i in 1..=d {
                for x in basis(&ctx) {
                    let id = alloc::format!("route i={i} x={x}");
                    let params = alloc::vec![("i", Param::Int(i as i64)), ("x", Param::Text(x.to_string()))];
                    b.push_with(id, params, Task::Route { i, x });
                }
                for k in 1..i {
                    b.push("low-vanish", &[("i", i as i64), ("k", k as i64)], None, Task::LowVanish { i, k });
                }
                for c in over(i) {
                    b.push("incidence-relation", &[("i", i as i64)], Some(c), Task::IncidenceRelation { c, i });
                }
            }
            for i in 2..=d {
                for c in over(i) {
                    b.push("reduction", &[("i", i as i64)], Some(c), Task::Reduction { c, i });
                }
                b.push("extra-term", &[("i", i as i64)], None, Task::ExtraTerm { i });
                for k in i..=d {
                    let p = [("i", i as i64), ("k", k as i64)];
                    b.push("expansion", &p, None, Task::Expansion { i, k });
                    b.push("image-is-sym", &p, None, Task::ImageIsSym { i, k });
                    b.push("coordinate-low", &p, None, Task::CoordinateLow { i, k });
                    b.push("coordinate-low-expanded", &p, None, Task::CoordinateLowExpanded { i, k });
                    b.push("whitney-collapse", &p, None, Task::WhitneyCollapse { i, k });
                    b.push("lower-image", &p, None, Task::LowerImage { i, k });
                    b.push("coordinate-high", &p, None, Task::CoordinateHigh { i, k });
                }
            }
        }
        Suite::AlphaAction => {
            for i in 1..=d {
                for k in 0..=d {
                    b.push("alpha-on-h", &[("i", i as i64), ("k", k as i64)], None, Task::AlphaOnH { i, k });
                }
            }
        }
        Suite::Nonessential => {
            for i in 1..=d {
                b.push("alpha-minus-delta", &[("i", i as i64)], None, Task::Nonessential { i });
                b.push("alpha-symmetric", &[("i", i as i64)], None, Task::AlphaSymmetric { i });
            }
        }
        Suite::DegreeCriterion => {
            for i in 1..d {
                for k in (i + 1)..=d {
                    for m in 1..=i {
                        let p = [("i", i as i64), ("k", k as i64), ("m", m as i64)];
                        b.push("shifted-degree", &p, None, Task::ShiftedDegree { i, k, m });
                    }
                }
            }
            for i in 1..=d {
                for k in i..=d {
                    b.push(
                        "top-right-degree",
                        &[("i", i as i64), ("k", k as i64)],
                        None,
                        Task::TopRightDegree { i, k },
                    );
                }
            }
        }
        Suite::Primordial => {
            for i1 in 2..=d {
                let len = (d + 2).saturating_sub(2 * i1) as usize;
                for mask in 0u32..(1 << len) {
                    let coefficients: Vec<bool> = (0..len).map(|t| mask & (1 << t) != 0).collect();
                    let bits: Vec<u32> = coefficients.iter().map(|&x| x as u32).collect();
                    for i in 1..i1 {
                        let id = alloc::format!("compose i={i} i1={i1} a={}", Param::List(bits.clone()));
                        let params = alloc::vec![
                            ("i", Param::Int(i as i64)),
                            ("i1", Param::Int(i1 as i64)),
                            ("a", Param::List(bits.clone())),
                        ];
                        b.push_with(id, params, Task::Primordial { i, i1, coefficients: coefficients.clone() });
                    }
                }
            }
        }
        Suite::ThetaPrime => {
            for i in 1..=d {
                for c in over(i) {
                    let p = [("i", i as i64)];
                    b.push("table", &p, Some(c), Task::ThetaPrimeTable { c, i });
                    b.push("on-rho", &p, Some(c), Task::ThetaPrimeOnRho { c, i });
                    b.push("push", &p, Some(c), Task::ThetaPrimePush { c, i });
                    for k in 2..i {
                        b.push("step", &[("i", i as i64), ("k", k as i64)], Some(c), Task::ThetaPrimeStep { c, i, k });
                    }
                }
            }
        }
        Suite::DegreesGd => {
            for e in 0..=d {
                for a in multisets(e as usize + 1, d) {
                    let id = alloc::format!("degree a={}", Param::List(a.clone()));
                    b.push_with(id, alloc::vec![("a", Param::List(a.clone()))], Task::GdDegree { a });
                }
            }
        }
        Suite::CrossModel => {
            for c in all {
                for x in basis(&ctx) {
                    let mut params = Vec::new();
                    let mut tag = String::new();
                    if let Some(p) = component_name(components, c) {
                        tag = alloc::format!("[{p}]");
                        params.push(("component", p));
                    }
                    let mut with_x = params.clone();
                    with_x.push(("a", Param::Text(x.to_string())));
                    b.push_with(alloc::format!("degree{tag} a={x}"), with_x.clone(), Task::CrossDegree { c, a: x });
                    for y in basis(&ctx) {
                        let mut p = with_x.clone();
                        p.push(("b", Param::Text(y.to_string())));
                        b.push_with(
                            alloc::format!("product{tag} a={x} b={y}"),
                            p,
                            Task::CrossProduct { c, a: x, b: y },
                        );
                    }
                }
            }
        }
    }
    Ok(b.out)
}

/// Sorted tuples of length `len` with entries in `0..=max`.
pub fn multisets(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn go(len: usize, low: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for v in low..=max {
            current.push(v);
            go(len, v, max, current, out);
            current.pop();
        }
    }
    go(len, 0, max, &mut current, &mut out);
    out
}

/// Evaluates one case. Evaluation errors become [`Status::Error`] with the
/// message in `lhs`.
pub fn run_case(ws: &Workspace, case: &Case) -> CaseResult {
    let (status, lhs, rhs) = match checks::evaluate(ws, &case.task) {
        Ok(outcome) => {
            let status = if outcome.holds { Status::Pass } else { Status::Fail };
            (status, outcome.lhs, outcome.rhs)
        }
        Err(e) => (Status::Error, e.to_string(), String::new()),
    };
    CaseResult { suite: case.suite, n: case.n, id: case.id.clone(), params: case.params.clone(), status, lhs, rhs }
}

/// Runs every case of `suite` at dimension `n`, in order.
pub fn run_suite(suite: Suite, n: u32) -> Result<Vec<CaseResult>> {
    let list = cases(suite, n)?;
    let ws = Workspace::for_suite(suite, n)?;
    Ok(list.iter().map(|c| run_case(&ws, c)).collect())
}
