//! Cohomology ranks derived from the polar invariants.
//!
//! Degrees follow reduced cohomology of the Milnor fiber of `f_0` on `C^n`,
//! so the top degree is `n` and the polar contribution sits in degree `n-1`.
//! Vanishing-cycle hypercohomology on the disk is not computed from first
//! principles: callers supply stalk ranks and an asserted concentration
//! degree, and [`disk_complex_euler`] applies Euler-characteristic additivity.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::Engine;
use crate::gb::{GbError, IdealPresentation, Length};
use crate::parse::parse_poly;
use crate::polar::{self, GermInput, IpaVerdict, PolarError};
use crate::ring::{rat, Polynomial, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Polar(#[from] PolarError),
    #[error("Euler characteristic {euler} is incompatible with concentration in degree {degree}")]
    InconsistentConcentration { euler: i64, degree: i32 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl From<GbError> for CohomologyError {
    fn from(e: GbError) -> Self {
        CohomologyError::Polar(e.into())
    }
}

impl From<RingError> for CohomologyError {
    fn from(e: RingError) -> Self {
        CohomologyError::Polar(e.into())
    }
}

/// Free ranks indexed by cohomological degree; zero entries are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RankVector(BTreeMap<i32, u64>);

impl RankVector {
    pub fn zero() -> Self {
        RankVector::default()
    }

    pub fn concentrated(degree: i32, rank: u64) -> Self {
        let mut v = RankVector::zero();
        v.set(degree, rank);
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (i32, u64)>>(pairs: I) -> Self {
        let mut v = RankVector::zero();
        for (d, r) in pairs {
            v.set(d, v.get(d) + r);
        }
        v
    }

    pub fn get(&self, degree: i32) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn set(&mut self, degree: i32, rank: u64) {
        if rank == 0 {
            self.0.remove(&degree);
        } else {
            self.0.insert(degree, rank);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.0.iter().map(|(d, r)| (*d, *r))
    }

    /// Alternating sum of ranks.
    pub fn euler(&self) -> i64 {
        self.iter().map(|(d, r)| if d.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) }).sum()
    }
}

impl<'de> Deserialize<'de> for RankVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(RankVector::from_pairs(BTreeMap::<i32, u64>::deserialize(d)?))
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(d, r)| format!("H^{d}: {r}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

/// Milnor number of `g` in the variables `vars`, i.e. the length of the
/// local algebra of the partials. `g` must only involve `vars`.
pub fn milnor_number(g: &Polynomial, vars: &[&str], engine: &Engine) -> Result<Length, CohomologyError> {
    Ok(engine.length(&jacobian_ideal(g, vars)?)?)
}

/// Ideal of the partials of `g` with respect to `vars`, in the ring on `vars`.
pub fn jacobian_ideal(g: &Polynomial, vars: &[&str]) -> Result<IdealPresentation, CohomologyError> {
    if vars.is_empty() {
        return Err(CohomologyError::Invalid("no variables given".into()));
    }
    let ring = Ring::new(vars, None)?;
    let local = g.remap(&ring)?;
    if !local.vanishes_at_origin() {
        return Err(PolarError::hypothesis("vanishes_at_origin", format!("{g} does not vanish at the origin")).into());
    }
    let partials: Vec<Polynomial> = (0..ring.nvars()).map(|i| local.derivative_at(i)).collect();
    Ok(IdealPresentation::new(&ring, partials)?)
}

fn require_ipa(germ: &GermInput, engine: &Engine) -> Result<IpaVerdict, CohomologyError> {
    let verdict = polar::is_ipa(germ, engine)?.verdict;
    if !verdict.is_ipa() {
        return Err(PolarError::hypothesis("is_ipa", "polar set meets V(t) in positive dimension").into());
    }
    Ok(verdict)
}

fn finite(value: Length, what: &'static str) -> Result<u64, CohomologyError> {
    value.finite().ok_or_else(|| PolarError::hypothesis(what, format!("{what} is infinite")).into())
}

/// Ranks of `H^k(F_{f,0}, F_{f_0,0})`: `τ` in degree `n`.
pub fn le_attach_rank(germ: &GermInput, engine: &Engine) -> Result<RankVector, CohomologyError> {
    require_ipa(germ, engine)?;
    let tau = finite(polar::tau_number(germ, engine)?, "tau")?;
    Ok(RankVector::concentrated(germ.n() as i32, tau))
}

/// Reduced cohomology ranks of the complex link of `V(f)`: `γ` in degree `n-1`.
pub fn complex_link_rank(germ: &GermInput, engine: &Engine) -> Result<RankVector, CohomologyError> {
    require_ipa(germ, engine)?;
    let gamma = finite(polar::gamma_number(germ, engine)?, "gamma")?;
    Ok(RankVector::concentrated(germ.n() as i32 - 1, gamma))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditivityOutcome {
    pub pass: bool,
    pub mu_f0: u64,
    pub gamma: u64,
    pub special_mu_sum: u64,
}

/// Checks `μ_0(f_0) = γ + Σ μ_p` over the special points of the disk.
pub fn mu_additivity_check(
    germ: &GermInput,
    special_mu_sum: u64,
    engine: &Engine,
) -> Result<AdditivityOutcome, CohomologyError> {
    let f0 = germ.restriction()?;
    let mu = milnor_number(&f0, &germ.slice_variables(), engine)?;
    let mu_f0 =
        mu.finite().ok_or_else(|| PolarError::hypothesis("isolated_f0", "f_0 has a non-isolated critical point"))?;
    let gamma = finite(polar::gamma_number(germ, engine)?, "gamma")?;
    Ok(AdditivityOutcome { pass: mu_f0 == gamma + special_mu_sum, mu_f0, gamma, special_mu_sum })
}

/// Stalk-rank data for a constructible complex on an open disk: one rank
/// vector on the generic stratum and one per special point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskComplexSpec {
    pub generic_stalk: RankVector,
    pub special_points: Vec<RankVector>,
    pub concentration_degree: Option<i32>,
}

/// Hypercohomology Euler characteristic by additivity over
/// `{disk minus points, points}`: the punctured disk has compactly supported
/// Euler characteristic `1 - m`.
pub fn disk_complex_euler(spec: &DiskComplexSpec) -> i64 {
    let m = spec.special_points.len() as i64;
    (1 - m) * spec.generic_stalk.euler() + spec.special_points.iter().map(RankVector::euler).sum::<i64>()
}

/// Hypercohomology ranks, assuming concentration in the asserted degree.
pub fn disk_complex_rank(spec: &DiskComplexSpec) -> Result<RankVector, CohomologyError> {
    let degree = spec
        .concentration_degree
        .ok_or_else(|| CohomologyError::Invalid("concentration degree not asserted".into()))?;
    let euler = disk_complex_euler(spec);
    let signed = if degree.rem_euclid(2) == 0 { euler } else { -euler };
    if signed < 0 {
        return Err(CohomologyError::InconsistentConcentration { euler, degree });
    }
    Ok(RankVector::concentrated(degree, signed as u64))
}

/// Reduced cohomology ranks of the Milnor fiber of `f_0`: the supplied
/// hypercohomology ranks with `γ` added in degree `n-1`.
pub fn ipa_betti_assembly(
    germ: &GermInput,
    hyper: &RankVector,
    engine: &Engine,
) -> Result<RankVector, CohomologyError> {
    require_ipa(germ, engine)?;
    let gamma = finite(polar::gamma_number(germ, engine)?, "gamma")?;
    let top = germ.n() as i32 - 1;
    let mut out = hyper.clone();
    out.set(top, hyper.get(top) + gamma);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl FamilyCheck {
    fn new(name: &str, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        FamilyCheck { name: name.into(), pass: expected == actual, expected, actual }
    }
}

/// End-to-end computation for `y^2 - x^b - s^m x^a + t x^a` in variables
/// `(t, x, y, s)`.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub a: u32,
    pub b: u32,
    pub m: u32,
    pub n: usize,
    pub f: String,
    pub polar_ideal: Vec<String>,
    pub saturation_steps: usize,
    pub gamma: Length,
    pub tau: Length,
    pub ipa: IpaVerdict,
    pub null_ipa: bool,
    /// Milnor number of the transversal slice off `s^m = t`.
    pub generic_mu: Length,
    /// Milnor number of the transversal slice on `s^m = t`.
    pub special_mu: Length,
    pub hyper: RankVector,
    pub betti: RankVector,
    pub checks: Vec<FamilyCheck>,
}

impl FamilyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn betti_top(&self) -> u64 {
        self.betti.get(2)
    }
}

pub fn family_polynomial(a: u32, b: u32, m: u32) -> String {
    format!("y^2 - x^{b} - s^{m}*x^{a} + t*x^{a}")
}

pub fn family_germ(a: u32, b: u32, m: u32) -> Result<GermInput, CohomologyError> {
    if !(b > a && a >= 2 && m >= 1) {
        return Err(CohomologyError::Invalid(format!("need b > a >= 2 and m >= 1, got a={a}, b={b}, m={m}")));
    }
    Ok(GermInput::parse(&["t", "x", "y", "s"], "t", &family_polynomial(a, b, m))?)
}

pub fn family_report(a: u32, b: u32, m: u32, engine: &Engine) -> Result<FamilyReport, CohomologyError> {
    let germ = family_germ(a, b, m)?;
    let ring = germ.ring().clone();
    let report = polar::polar_report(&germ, engine)?;
    let (a64, b64, m64) = (u64::from(a), u64::from(b), u64::from(m));
    let mut checks = Vec::new();

    let expected_polar = IdealPresentation::new(
        &ring,
        [format!("{b}*x^{} + {a}*(s^{m} - t)", b - a), "y".into(), format!("s^{}", m - 1)]
            .iter()
            .map(|s| parse_poly(s, &ring))
            .collect::<Result<_, _>>()
            .map_err(PolarError::from)?,
    )?;
    let polar_matches = engine.same_ideal(&report.polar_ideal, &expected_polar)?;
    checks.push(FamilyCheck::new("polar_ideal", true, polar_matches));
    checks.push(FamilyCheck::new("gamma", (m64 - 1) * (b64 - a64), report.gamma));
    checks.push(FamilyCheck::new("tau", (m64 - 1) * b64, report.tau));
    checks.push(FamilyCheck::new("is_ipa", true, report.ipa.is_ipa()));
    checks.push(FamilyCheck::new("null_ipa", m == 1, report.null_ipa));

    let slice = |s: i64, t: i64| -> Result<Length, CohomologyError> {
        let g = germ.f().evaluate_var("s", &rat(s))?.evaluate_var("t", &rat(t))?;
        milnor_number(&g, &["x", "y"], engine)
    };
    let generic_mu = slice(0, 1)?;
    let special_mu = slice(1, 1)?;
    checks.push(FamilyCheck::new("generic_mu", a64 - 1, generic_mu));
    checks.push(FamilyCheck::new("special_mu", b64 - 1, special_mu));

    let generic_rank = generic_mu
        .finite()
        .ok_or_else(|| CohomologyError::Invalid("generic transversal Milnor number is infinite".into()))?;
    let disk = DiskComplexSpec {
        generic_stalk: RankVector::concentrated(1, generic_rank),
        special_points: vec![RankVector::concentrated(2, 1); m as usize],
        concentration_degree: Some(2),
    };
    let hyper = disk_complex_rank(&disk)?;
    checks.push(FamilyCheck::new("hyper", RankVector::concentrated(2, (m64 - 1) * a64 + 1), &hyper));

    let betti = if report.ipa.is_ipa() { ipa_betti_assembly(&germ, &hyper, engine)? } else { RankVector::zero() };
    checks.push(FamilyCheck::new("betti", RankVector::concentrated(2, (m64 - 1) * b64 + 1), &betti));

    Ok(FamilyReport {
        a,
        b,
        m,
        n: germ.n(),
        f: germ.f().to_string(),
        polar_ideal: engine.basis(&report.polar_ideal)?.generators().iter().map(|g| g.to_string()).collect(),
        saturation_steps: report.saturation_steps,
        gamma: report.gamma,
        tau: report.tau,
        ipa: report.ipa,
        null_ipa: report.null_ipa,
        generic_mu,
        special_mu,
        hyper,
        betti,
        checks,
    })
}
