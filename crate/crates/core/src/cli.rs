//! Batch jobs: JSON job files in, canonical JSON reports out.
//!
//! A job names a ring, a polynomial, a task and task parameters. The report
//! echoes the job, carries the task results and engine metadata, and a status
//! that maps onto the process exit code.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cohomology::{self, CohomologyError, DiskComplexSpec, RankVector};
use crate::engine::{Engine, LocalOrder};
use crate::gb::{Budget, GbError};
use crate::parse::parse_poly;
use crate::polar::{self, GermInput, PolarError};
use crate::ring::{Polynomial, Ring, RingError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Milnor,
    Polar,
    Ipa,
    Additivity,
    Family,
    Link,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskParams {
    pub generic_stalk: RankVector,
    #[serde(default)]
    pub special_points: Vec<RankVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub concentration_degree: Option<i32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special_mu_sum: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyper: Option<RankVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disk: Option<DiskParams>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_pairs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical_bound: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    pub task: Task,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

/// Command-line settings that take precedence over the job file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub order: Option<String>,
    pub max_pairs: Option<usize>,
    pub max_degree: Option<u32>,
    pub radical_bound: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Invalid,
    BudgetExceeded,
    HypothesisFailure,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Invalid => 2,
            Status::BudgetExceeded => 3,
            Status::HypothesisFailure => 4,
            Status::Mismatch => 5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub status: Status,
    pub value: Value,
}

impl Report {
    /// Pretty-printed JSON with sorted keys and a trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.value).expect("JSON values always serialize");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

#[derive(Debug, Clone)]
struct Failure {
    status: Status,
    check: String,
    message: String,
    offset: Option<usize>,
}

impl Failure {
    fn invalid(check: &str, message: impl Into<String>) -> Self {
        Failure { status: Status::Invalid, check: check.into(), message: message.into(), offset: None }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({ "check": self.check, "message": self.message });
        if let Some(o) = self.offset {
            v["offset"] = json!(o);
        }
        v
    }
}

impl From<GbError> for Failure {
    fn from(e: GbError) -> Self {
        match &e {
            GbError::Budget(b) => {
                Failure { status: Status::BudgetExceeded, check: b.name().into(), message: e.to_string(), offset: None }
            }
            GbError::Order(_) => Failure::invalid("order", e.to_string()),
            GbError::Ring(_) => Failure::invalid("ring", e.to_string()),
            GbError::Invalid(_) => Failure::invalid("arguments", e.to_string()),
        }
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        Failure::invalid("ring", e.to_string())
    }
}

impl From<PolarError> for Failure {
    fn from(e: PolarError) -> Self {
        match e {
            PolarError::Gb(g) => g.into(),
            PolarError::Ring(r) => r.into(),
            PolarError::Parse(p) => Failure {
                status: Status::Invalid,
                check: "parse".into(),
                message: p.to_string(),
                offset: Some(p.offset),
            },
            PolarError::Hypothesis { check, detail } => {
                let message = format!("hypothesis `{check}` violated: {detail}");
                Failure { status: Status::HypothesisFailure, check: check.into(), message, offset: None }
            }
        }
    }
}

impl From<CohomologyError> for Failure {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::Polar(p) => p.into(),
            CohomologyError::InconsistentConcentration { .. } => Failure {
                status: Status::HypothesisFailure,
                check: "concentration_degree".into(),
                message: e.to_string(),
                offset: None,
            },
            CohomologyError::Invalid(msg) => Failure::invalid("params", msg),
        }
    }
}

#[derive(Default)]
struct Outcome {
    results: BTreeMap<String, Value>,
    basis_sizes: BTreeMap<String, usize>,
    saturation_steps: Option<usize>,
    mismatch: Option<Failure>,
}

fn engine_for(job: &JobSpec, ov: &Overrides) -> Result<Engine, Failure> {
    let defaults = Engine::default();
    let order_name = ov.order.as_deref().or(job.order.as_deref());
    let local_order = match order_name {
        Some(name) => LocalOrder::from_name(name).map_err(|e| Failure::invalid("order", e.to_string()))?,
        None => LocalOrder::default(),
    };
    let max_pairs = ov.max_pairs.or(job.budgets.max_pairs).unwrap_or(defaults.budget.max_pairs);
    let max_degree = ov.max_degree.or(job.budgets.max_degree).unwrap_or(defaults.budget.max_degree);
    let radical_bound = ov.radical_bound.or(job.budgets.radical_bound).unwrap_or(defaults.radical_bound);
    for (name, v) in [
        ("max_pairs", max_pairs as u64),
        ("max_degree", u64::from(max_degree)),
        ("radical_bound", u64::from(radical_bound)),
    ] {
        if v == 0 {
            return Err(Failure::invalid(name, format!("{name} must be positive")));
        }
    }
    Ok(Engine { budget: Budget { max_pairs, max_degree }, local_order, radical_bound })
}

fn ring_of(job: &JobSpec, need_parameter: bool) -> Result<Arc<Ring>, Failure> {
    let spec = job.ring.as_ref().ok_or_else(|| Failure::invalid("ring", "job has no ring"))?;
    if need_parameter && spec.parameter.is_none() {
        return Err(Failure::invalid("ring", "task needs a deformation parameter in the ring"));
    }
    Ok(Ring::new(&spec.variables, spec.parameter.as_deref())?)
}

fn poly_of(job: &JobSpec, ring: &Arc<Ring>) -> Result<Polynomial, Failure> {
    let src = job.f.as_deref().ok_or_else(|| Failure::invalid("f", "job has no polynomial"))?;
    parse_poly(src, ring).map_err(|e| PolarError::from(e).into())
}

fn germ_of(job: &JobSpec) -> Result<GermInput, Failure> {
    let ring = ring_of(job, true)?;
    Ok(GermInput::new(poly_of(job, &ring)?)?)
}

fn required<T: Copy>(v: Option<T>, name: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::invalid(name, format!("task needs params.{name}")))
}

fn strings(polys: &[Polynomial]) -> Value {
    json!(polys.iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report fields serialize")
}

fn run_milnor(job: &JobSpec, engine: &Engine) -> Result<Outcome, Failure> {
    let ring = ring_of(job, false)?;
    let f = poly_of(job, &ring)?;
    let vars: Vec<String> = job.params.vars.clone().unwrap_or_else(|| ring.variables().to_vec());
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let jac = cohomology::jacobian_ideal(&f, &names)?;
    let mu = engine.length(&jac)?;
    let basis = engine.basis(&jac)?;
    let mut out = Outcome::default();
    out.results.insert("mu".into(), to_value(&mu));
    out.results.insert("vars".into(), json!(vars));
    out.results.insert("jacobian_basis".into(), strings(basis.generators()));
    out.basis_sizes.insert("jacobian".into(), basis.len());
    Ok(out)
}

fn run_polar(job: &JobSpec, engine: &Engine) -> Result<Outcome, Failure> {
    let germ = germ_of(job)?;
    let r = polar::polar_report(&germ, engine)?;
    let polar_basis = engine.basis(&r.polar_ideal)?;
    let mut out = Outcome::default();
    out.results.insert("n".into(), json!(germ.n()));
    out.results.insert("j_rel".into(), strings(r.j_rel.generators()));
    out.results.insert("polar_ideal".into(), strings(polar_basis.generators()));
    out.results.insert("gamma".into(), to_value(&r.gamma));
    out.results.insert("tau".into(), to_value(&r.tau));
    out.results.insert("ipa".into(), to_value(&r.ipa));
    out.results.insert("null_ipa".into(), json!(r.null_ipa));
    out.results.insert("diagnostics".into(), to_value(&r.diagnostics));
    out.basis_sizes.insert("j_rel".into(), engine.basis(&r.j_rel)?.len());
    out.basis_sizes.insert("j_full".into(), engine.basis(&r.j_full)?.len());
    out.basis_sizes.insert("polar".into(), polar_basis.len());
    out.saturation_steps = Some(r.saturation_steps);
    Ok(out)
}

fn run_ipa(job: &JobSpec, engine: &Engine) -> Result<Outcome, Failure> {
    let germ = germ_of(job)?;
    let a = polar::is_ipa(&germ, engine)?;
    let mut out = Outcome::default();
    out.results.insert("verdict".into(), to_value(&a.verdict));
    let null = if a.verdict.is_ipa() { json!(polar::is_null_ipa(&germ, engine)?) } else { Value::Null };
    out.results.insert("null_ipa".into(), null);
    out.results.insert("diagnostics".into(), to_value(&a.diagnostics));
    Ok(out)
}

fn run_additivity(job: &JobSpec, engine: &Engine) -> Result<Outcome, Failure> {
    let germ = germ_of(job)?;
    let sum = required(job.params.special_mu_sum, "special_mu_sum")?;
    let r = cohomology::mu_additivity_check(&germ, sum, engine)?;
    let mut out = Outcome::default();
    if !r.pass {
        out.mismatch = Some(Failure {
            status: Status::Mismatch,
            check: "mu_additivity".into(),
            message: format!("mu(f_0) = {} but gamma + special_mu_sum = {}", r.mu_f0, r.gamma + r.special_mu_sum),
            offset: None,
        });
    }
    out.results = serde_json::from_value(to_value(&r)).expect("struct serializes to an object");
    Ok(out)
}

fn run_family(job: &JobSpec, engine: &Engine) -> Result<Outcome, Failure> {
    let (a, b, m) = (required(job.params.a, "a")?, required(job.params.b, "b")?, required(job.params.m, "m")?);
    let r = cohomology::family_report(a, b, m, engine)?;
    let mut out = Outcome::default();
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    if !failed.is_empty() {
        out.mismatch = Some(Failure {
            status: Status::Mismatch,
            check: failed.join(","),
            message: "computed values disagree with the closed forms".into(),
            offset: None,
        });
    }
    out.basis_sizes.insert("polar".into(), r.polar_ideal.len());
    out.saturation_steps = Some(r.saturation_steps);
    out.results = serde_json::from_value(to_value(&r)).expect("struct serializes to an object");
    out.results.insert("betti_top".into(), json!(r.betti_top()));
    Ok(out)
}

fn run_link(job: &JobSpec, engine: &Engine) -> Result<Outcome, Failure> {
    let germ = germ_of(job)?;
    let mut out = Outcome::default();
    out.results.insert("n".into(), json!(germ.n()));
    out.results.insert("le_attach".into(), to_value(&cohomology::le_attach_rank(&germ, engine)?));
    out.results.insert("complex_link".into(), to_value(&cohomology::complex_link_rank(&germ, engine)?));
    let hyper = match (&job.params.hyper, &job.params.disk) {
        (Some(_), Some(_)) => {
            return Err(Failure::invalid("params", "give either params.hyper or params.disk, not both"))
        }
        (Some(h), None) => Some(h.clone()),
        (None, Some(d)) => {
            let spec = DiskComplexSpec {
                generic_stalk: d.generic_stalk.clone(),
                special_points: d.special_points.clone(),
                concentration_degree: d.concentration_degree,
            };
            out.results.insert("disk_euler".into(), json!(cohomology::disk_complex_euler(&spec)));
            Some(cohomology::disk_complex_rank(&spec)?)
        }
        (None, None) => None,
    };
    if let Some(h) = hyper {
        out.results.insert("betti".into(), to_value(&cohomology::ipa_betti_assembly(&germ, &h, engine)?));
        out.results.insert("hyper".into(), to_value(&h));
    }
    Ok(out)
}

fn dispatch(job: &JobSpec, engine: &Engine) -> Result<Outcome, Failure> {
    match job.task {
        Task::Milnor => run_milnor(job, engine),
        Task::Polar => run_polar(job, engine),
        Task::Ipa => run_ipa(job, engine),
        Task::Additivity => run_additivity(job, engine),
        Task::Family => run_family(job, engine),
        Task::Link => run_link(job, engine),
    }
}

fn engine_json(engine: Option<&Engine>, out: &Outcome) -> Value {
    let mut v = json!({
        "name": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "basis_sizes": out.basis_sizes,
        "saturation_steps": out.saturation_steps,
    });
    if let Some(e) = engine {
        v["order"] = json!(e.local_order.name());
        v["budgets"] = json!({
            "max_pairs": e.budget.max_pairs,
            "max_degree": e.budget.max_degree,
            "radical_bound": e.radical_bound,
        });
    }
    v
}

fn assemble(job: Value, engine: Option<&Engine>, result: Result<Outcome, Failure>) -> Report {
    let (out, failure) = match result {
        Ok(mut o) => {
            let f = o.mismatch.take();
            (o, f)
        }
        Err(f) => (Outcome::default(), Some(f)),
    };
    let status = failure.as_ref().map_or(Status::Ok, |f| f.status);
    let value = json!({
        "job": job,
        "status": status,
        "results": out.results,
        "engine": engine_json(engine, &out),
        "error": failure.as_ref().map(Failure::to_json),
    });
    Report { status, value }
}

pub fn run_job(job: &JobSpec, overrides: &Overrides) -> Report {
    let echo = to_value(job);
    match engine_for(job, overrides) {
        Ok(engine) => {
            let result = dispatch(job, &engine);
            assemble(echo, Some(&engine), result)
        }
        Err(f) => assemble(echo, None, Err(f)),
    }
}

/// Parses a job document and runs it; malformed documents yield an
/// `invalid` report rather than an error.
pub fn run_job_str(src: &str, overrides: &Overrides) -> Report {
    match serde_json::from_str::<JobSpec>(src) {
        Ok(job) => run_job(&job, overrides),
        Err(e) => {
            let f = Failure::invalid("job", e.to_string());
            assemble(Value::Null, None, Err(f))
        }
    }
}
