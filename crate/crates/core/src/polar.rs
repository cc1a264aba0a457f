//! Relative polar curves of a germ `f` with respect to a coordinate `t`.
//!
//! The polar ideal is the saturation of the relative Jacobian ideal
//! `(∂f/∂z_1, …, ∂f/∂z_n)` by `∂f/∂t`. Saturation strips every associated
//! prime on which `∂f/∂t` vanishes, i.e. every component of `Σ(f,t)` lying in
//! `Σf` (including embedded components at the origin), which leaves the part
//! of the polar curve visible to the Jacobian, with its scheme structure.
//! Intersection numbers with `V(t)` and `V(f)` are then lengths.
//!
//! Polar components hidden inside `Σf` are not computed. The three-valued
//! [`IpaVerdict`] says exactly what is certified.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::engine::Engine;
use crate::gb::{GbError, IdealPresentation, Length, LocalDim};
use crate::ideal::{self, RadicalProbe, SaturationResult};
use crate::parse::{parse_poly, ParseError};
use crate::ring::{Polynomial, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolarError {
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("hypothesis `{check}` violated: {detail}")]
    Hypothesis { check: &'static str, detail: String },
}

impl PolarError {
    pub(crate) fn hypothesis(check: &'static str, detail: impl Into<String>) -> Self {
        PolarError::Hypothesis { check, detail: detail.into() }
    }
}

/// A function germ `f` on `(C^{n+1}, 0)` with a distinguished coordinate `t`.
#[derive(Debug, Clone)]
pub struct GermInput {
    f: Polynomial,
    t: usize,
}

impl GermInput {
    pub fn new(f: Polynomial) -> Result<Self, PolarError> {
        let t = f
            .ring()
            .parameter()
            .ok_or_else(|| PolarError::hypothesis("parameter_declared", "ring declares no deformation parameter"))?;
        if f.is_zero() {
            return Err(PolarError::hypothesis("f_nonzero", "f is identically zero"));
        }
        if !f.vanishes_at_origin() {
            return Err(PolarError::hypothesis("f_vanishes_at_origin", format!("f(0) = {} ≠ 0", f.constant_term())));
        }
        Ok(GermInput { f, t })
    }

    pub fn parse<S: AsRef<str>>(vars: &[S], parameter: &str, src: &str) -> Result<Self, PolarError> {
        let ring = Ring::new(vars, Some(parameter))?;
        Self::new(parse_poly(src, &ring)?)
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.f.ring()
    }

    pub fn parameter_index(&self) -> usize {
        self.t
    }

    pub fn parameter(&self) -> Polynomial {
        Polynomial::var(self.ring(), &self.ring().variables()[self.t]).expect("declared")
    }

    /// Dimension of the slice `V(t)`; the ambient space is `C^{n+1}`.
    pub fn n(&self) -> usize {
        self.ring().nvars() - 1
    }

    pub fn slice_variables(&self) -> Vec<&str> {
        let t = self.t;
        self.ring().variables().iter().enumerate().filter(|(i, _)| *i != t).map(|(_, v)| v.as_str()).collect()
    }

    /// `∂f/∂t`.
    pub fn dt(&self) -> Polynomial {
        self.f.derivative_at(self.t)
    }

    /// `f_0 = f|_{V(t)}`, as a polynomial in the slice variables.
    pub fn restriction(&self) -> Result<Polynomial, PolarError> {
        let slice = Ring::new(&self.slice_variables(), None)?;
        let zero = crate::ring::rat(0);
        Ok(self.f.evaluate_var(&self.ring().variables()[self.t], &zero)?.remap(&slice)?)
    }

    /// Same germ with `f` multiplied by a nonzero constant.
    pub fn scaled(&self, c: &crate::ring::Rational) -> Result<Self, PolarError> {
        Self::new(self.f.scale(c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IpaVerdict {
    Yes,
    YesWithCaveat,
    No,
}

impl IpaVerdict {
    pub fn is_ipa(self) -> bool {
        !matches!(self, IpaVerdict::No)
    }
}

impl fmt::Display for IpaVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IpaVerdict::Yes => "yes",
            IpaVerdict::YesWithCaveat => "yes-with-caveat",
            IpaVerdict::No => "no",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Diagnostic {
    fn new(name: &str, outcome: Outcome, detail: impl Into<String>) -> Self {
        Diagnostic { name: name.to_string(), outcome, detail: detail.into() }
    }

    fn check(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(name, if ok { Outcome::Pass } else { Outcome::Fail }, detail)
    }
}

pub fn jacobian_relative(germ: &GermInput) -> IdealPresentation {
    let gens = (0..germ.ring().nvars()).filter(|&i| i != germ.t).map(|i| germ.f.derivative_at(i)).collect();
    IdealPresentation::new(germ.ring(), gens).expect("same ring")
}

/// All partials of `f`; its zero set is the critical locus `Σf`.
pub fn jacobian_full(germ: &GermInput) -> IdealPresentation {
    let gens = (0..germ.ring().nvars()).map(|i| germ.f.derivative_at(i)).collect();
    IdealPresentation::new(germ.ring(), gens).expect("same ring")
}

/// Saturation of the relative Jacobian by `∂f/∂t`, or the unit ideal when
/// `f` does not depend on `t`.
pub fn relative_polar(germ: &GermInput, engine: &Engine) -> Result<SaturationResult, PolarError> {
    let dt = germ.dt();
    if dt.is_zero() {
        return Ok(SaturationResult { ideal: IdealPresentation::unit(germ.ring()), steps: 0 });
    }
    Ok(ideal::saturate(&jacobian_relative(germ), &dt, engine)?)
}

pub fn relative_polar_ideal(germ: &GermInput, engine: &Engine) -> Result<IdealPresentation, PolarError> {
    Ok(relative_polar(germ, engine)?.ideal)
}

/// Intermediate ideals shared by the germ-level operations.
struct Analysis<'a> {
    germ: &'a GermInput,
    engine: &'a Engine,
    j_rel: IdealPresentation,
    j_full: IdealPresentation,
    polar: SaturationResult,
}

impl<'a> Analysis<'a> {
    fn new(germ: &'a GermInput, engine: &'a Engine) -> Result<Self, PolarError> {
        Ok(Analysis {
            germ,
            engine,
            j_rel: jacobian_relative(germ),
            j_full: jacobian_full(germ),
            polar: relative_polar(germ, engine)?,
        })
    }

    fn polar_plus(&self, extra: &Polynomial) -> Result<IdealPresentation, PolarError> {
        Ok(self.polar.ideal.with(std::slice::from_ref(extra))?)
    }

    fn gamma(&self) -> Result<Length, PolarError> {
        Ok(self.engine.length(&self.polar_plus(&self.germ.parameter())?)?)
    }

    fn tau(&self) -> Result<Length, PolarError> {
        Ok(self.engine.length(&self.polar_plus(&self.germ.f)?)?)
    }

    fn polar_is_unit(&self) -> Result<bool, PolarError> {
        Ok(self.engine.is_unit(&self.polar.ideal)?)
    }

    fn ipa(&self) -> Result<(IpaVerdict, Vec<Diagnostic>), PolarError> {
        let mut diags = Vec::new();
        if self.germ.dt().is_zero() {
            diags.push(Diagnostic::new(
                "polar_set_empty",
                Outcome::Pass,
                "f does not depend on t, so the polar set is empty",
            ));
            return Ok((IpaVerdict::Yes, diags));
        }
        let slice = self.polar_plus(&self.germ.parameter())?;
        let slice_dim = self.engine.dim(&slice)?;
        if !slice_dim.at_most_zero() {
            let gens: Vec<String> = self.engine.basis(&slice)?.generators().iter().map(|g| g.to_string()).collect();
            diags.push(Diagnostic::new(
                "polar_slice_isolated",
                Outcome::Fail,
                format!("polar set meets V(t) in a {slice_dim}-dimensional locus V({})", gens.join(", ")),
            ));
            return Ok((IpaVerdict::No, diags));
        }
        diags.push(Diagnostic::new(
            "polar_slice_isolated",
            Outcome::Pass,
            format!("dim_0 of polar set ∩ V(t) is {slice_dim}"),
        ));

        let sigma = self.engine.dim(&self.j_full)?;
        if let LocalDim::Dim(d) = sigma {
            if d >= 1 {
                let cut = self.engine.dim(&self.j_full.with(&[self.germ.parameter()])?)?;
                let ok = cut == LocalDim::Dim(d - 1);
                diags.push(Diagnostic::check(
                    "critical_locus_transverse",
                    ok,
                    format!("dim_0 Σf = {d}, dim_0 Σf ∩ V(t) = {cut}"),
                ));
                if !ok {
                    return Ok((IpaVerdict::No, diags));
                }
            }
        }
        if sigma.at_most_zero() {
            diags.push(Diagnostic::new(
                "hidden_polar_components",
                Outcome::Pass,
                format!("dim_0 Σf is {sigma}; nothing hidden"),
            ));
            Ok((IpaVerdict::Yes, diags))
        } else {
            diags.push(Diagnostic::new(
                "hidden_polar_components",
                Outcome::Inconclusive,
                format!("dim_0 Σf = {sigma}; polar components inside Σf are not computed"),
            ));
            Ok((IpaVerdict::YesWithCaveat, diags))
        }
    }

    fn consistency(&self) -> Result<Vec<Diagnostic>, PolarError> {
        let mut diags = Vec::new();
        let (g, t) = (self.gamma()?, self.tau()?);
        diags.push(Diagnostic::check(
            "finiteness_equivalence",
            g.is_finite() == t.is_finite(),
            format!("length(polar + (t)) = {g}, length(polar + (f)) = {t}"),
        ));

        let pdim = self.engine.dim(&self.polar.ideal)?;
        let isolated = pdim == LocalDim::Dim(0);
        diags.push(Diagnostic::check("no_isolated_polar_points", !isolated, format!("dim_0 of polar set is {pdim}")));

        diags.push(self.union_identity()?);
        Ok(diags)
    }

    /// `V(J_rel) = V(J_full) ∪ V(polar)`, probed through bounded powers.
    fn union_identity(&self) -> Result<Diagnostic, PolarError> {
        let name = "critical_set_union";
        let product = if self.polar_is_unit()? {
            self.j_full.clone()
        } else {
            let mut gens = Vec::new();
            for a in self.j_full.generators() {
                for b in self.polar.ideal.generators() {
                    gens.push(a * b);
                }
            }
            IdealPresentation::new(self.germ.ring(), gens)?
        };
        let bound = self.engine.radical_bound;
        let mut max_power = 0;
        let probes = self
            .j_rel
            .generators()
            .iter()
            .map(|g| (g, &product))
            .chain(product.generators().iter().map(|g| (g, &self.j_rel)));
        for (g, target) in probes {
            if g.is_zero() {
                continue;
            }
            match ideal::bounded_radical_member(g, target, bound, self.engine) {
                Ok(RadicalProbe::Yes(k)) => max_power = max_power.max(k),
                Ok(RadicalProbe::NoUpToBound) => {
                    return Ok(Diagnostic::new(
                        name,
                        Outcome::Inconclusive,
                        format!("{g} has no power up to {bound} in the other side"),
                    ))
                }
                Err(GbError::Budget(b)) => {
                    return Ok(Diagnostic::new(name, Outcome::Inconclusive, format!("probe of {g} stopped: {b}")))
                }
                Err(e) => return Err(e.into()),
            }
        }
        Ok(Diagnostic::new(name, Outcome::Pass, format!("radicals agree (largest power needed: {max_power})")))
    }

    fn critical_in_zero_fiber(&self) -> Result<Diagnostic, PolarError> {
        let name = "critical_locus_in_zero_fiber";
        let dim = self.engine.dim(&self.j_full)?;
        match dim {
            LocalDim::Empty => Ok(Diagnostic::new(name, Outcome::Pass, "Σf is empty at the origin")),
            LocalDim::Dim(0) => {
                let probe =
                    ideal::bounded_radical_member(&self.germ.f, &self.j_full, self.engine.radical_bound, self.engine)?;
                Ok(match probe {
                    RadicalProbe::Yes(k) => Diagnostic::new(name, Outcome::Pass, format!("f^{k} ∈ Jacobian ideal")),
                    RadicalProbe::NoUpToBound => {
                        Diagnostic::new(name, Outcome::Inconclusive, "no power of f found in the Jacobian ideal")
                    }
                })
            }
            LocalDim::Dim(d) => Ok(Diagnostic::new(
                name,
                Outcome::Info,
                format!("Σf has dimension {d}; containment in V(f) is assumed, not checked"),
            )),
        }
    }

    fn slice(&self) -> Result<SliceReport, PolarError> {
        let t = self.germ.parameter();
        let sigma_f = self.engine.dim(&self.j_full)?;
        let sliced = self.j_rel.with(std::slice::from_ref(&t))?;
        let sigma_f0 = self.engine.dim(&sliced)?;
        let sigma_f0_length = self.engine.length(&sliced)?;
        let mut diagnostics = Vec::new();
        match sigma_f {
            LocalDim::Dim(d) if d >= 1 => diagnostics.push(Diagnostic::check(
                "slice_drops_dimension",
                sigma_f0 == LocalDim::Dim(d - 1),
                format!("dim_0 Σf = {d}, dim_0 Σ(f_0) = {sigma_f0}"),
            )),
            _ => {
                let polar_slice = self.gamma()?;
                diagnostics.push(Diagnostic::check(
                    "slice_equals_polar_slice",
                    sigma_f0_length == polar_slice,
                    format!("length Σ(f_0) = {sigma_f0_length}, length polar ∩ V(t) = {polar_slice}"),
                ))
            }
        }
        Ok(SliceReport { sigma_f_dim: sigma_f, sigma_f0_dim: sigma_f0, sigma_f0_length, diagnostics })
    }
}

/// Everything computed for a germ `(f, t)`.
#[derive(Debug, Clone)]
pub struct PolarReport {
    pub j_rel: IdealPresentation,
    pub j_full: IdealPresentation,
    pub polar_ideal: IdealPresentation,
    pub saturation_steps: usize,
    /// `(Γ·V(t))_0`; reported infinite whenever the verdict is `No`.
    pub gamma: Length,
    /// `(Γ·V(f))_0`; reported infinite whenever the verdict is `No`.
    pub tau: Length,
    pub ipa: IpaVerdict,
    pub null_ipa: bool,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn polar_report(germ: &GermInput, engine: &Engine) -> Result<PolarReport, PolarError> {
    let a = Analysis::new(germ, engine)?;
    let (ipa, mut diagnostics) = a.ipa()?;
    let (mut gamma, mut tau) = (a.gamma()?, a.tau()?);
    if ipa == IpaVerdict::No && (gamma.is_finite() || tau.is_finite()) {
        diagnostics.push(Diagnostic::new(
            "visible_intersection_numbers",
            Outcome::Info,
            format!("Jacobian-visible gamma = {gamma}, tau = {tau}; a polar component through the origin lies in V(t)"),
        ));
        gamma = Length::Infinite;
        tau = Length::Infinite;
    }
    let null_ipa = ipa.is_ipa() && a.polar_is_unit()?;
    diagnostics.extend(a.consistency()?);
    diagnostics.push(a.critical_in_zero_fiber()?);
    if ipa.is_ipa() {
        diagnostics.extend(a.slice()?.diagnostics);
    }
    Ok(PolarReport {
        saturation_steps: a.polar.steps,
        polar_ideal: a.polar.ideal.clone(),
        j_rel: a.j_rel,
        j_full: a.j_full,
        gamma,
        tau,
        ipa,
        null_ipa,
        diagnostics,
    })
}

/// `(Γ¹_{f,t} · V(t))_0` as the length of `polar + (t)`.
pub fn gamma_number(germ: &GermInput, engine: &Engine) -> Result<Length, PolarError> {
    Analysis::new(germ, engine)?.gamma()
}

/// `(Γ¹_{f,t} · V(f))_0` as the length of `polar + (f)`.
pub fn tau_number(germ: &GermInput, engine: &Engine) -> Result<Length, PolarError> {
    Analysis::new(germ, engine)?.tau()
}

#[derive(Debug, Clone)]
pub struct IpaAssessment {
    pub verdict: IpaVerdict,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn is_ipa(germ: &GermInput, engine: &Engine) -> Result<IpaAssessment, PolarError> {
    let (verdict, diagnostics) = Analysis::new(germ, engine)?.ipa()?;
    Ok(IpaAssessment { verdict, diagnostics })
}

/// True iff the polar set misses the origin. Requires an IPA germ.
pub fn is_null_ipa(germ: &GermInput, engine: &Engine) -> Result<bool, PolarError> {
    let a = Analysis::new(germ, engine)?;
    let (verdict, _) = a.ipa()?;
    if !verdict.is_ipa() {
        return Err(PolarError::hypothesis("is_ipa", "germ is not an IPA-deformation"));
    }
    a.polar_is_unit()
}

pub fn polar_consistency_check(germ: &GermInput, engine: &Engine) -> Result<Vec<Diagnostic>, PolarError> {
    Analysis::new(germ, engine)?.consistency()
}

#[derive(Debug, Clone)]
pub struct SliceReport {
    pub sigma_f_dim: LocalDim,
    pub sigma_f0_dim: LocalDim,
    pub sigma_f0_length: Length,
    pub diagnostics: Vec<Diagnostic>,
}

/// Compares the critical locus of `f` with that of `f_0`. Requires an IPA germ.
pub fn critical_slice_report(germ: &GermInput, engine: &Engine) -> Result<SliceReport, PolarError> {
    let a = Analysis::new(germ, engine)?;
    if !a.ipa()?.0.is_ipa() {
        return Err(PolarError::hypothesis("is_ipa", "germ is not an IPA-deformation"));
    }
    a.slice()
}
