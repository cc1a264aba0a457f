//! Ideal quotients, saturation, zero-dimensionality and bounded radical probes,
//! all taken in the local ring at the origin.

use serde::Serialize;

use crate::engine::Engine;
use crate::gb::{self, GbError, IdealPresentation};
use crate::ring::{rat, Polynomial};

/// Outcome of a saturation: `ideal = I : g^∞`.
#[derive(Debug, Clone)]
pub struct SaturationResult {
    pub ideal: IdealPresentation,
    /// Number of colon steps that strictly enlarged the ideal.
    pub steps: usize,
}

/// `I ∩ (g)` via elimination of an auxiliary `u` from `u*I + (1-u)*g`.
pub fn intersect_principal(
    ideal: &IdealPresentation,
    g: &Polynomial,
    engine: &Engine,
) -> Result<IdealPresentation, GbError> {
    let ring = ideal.ring();
    let (aux, u) = ring.with_auxiliary("u");
    let uvar = Polynomial::monomial(&aux, crate::ring::Monomial::var(aux.nvars(), u), rat(1));
    let one_minus_u = &Polynomial::one(&aux) - &uvar;
    let mut gens = Vec::with_capacity(ideal.generators().len() + 1);
    for f in ideal.generators() {
        gens.push(&uvar * &f.remap(&aux)?);
    }
    gens.push(&one_minus_u * &g.remap(&aux)?);
    let lifted = IdealPresentation::new(&aux, gens)?;
    let eliminated = gb::eliminate_indices(&lifted, &[u], &engine.budget)?;
    let back: Vec<Polynomial> = eliminated.generators().iter().map(|h| h.remap(ring)).collect::<Result<_, _>>()?;
    Ok(IdealPresentation::new(ring, back)?)
}

/// `I : (g) = { h | h*g ∈ I }` in the local ring at the origin.
pub fn ideal_quotient(
    ideal: &IdealPresentation,
    g: &Polynomial,
    engine: &Engine,
) -> Result<IdealPresentation, GbError> {
    if g.is_zero() {
        return Err(GbError::Invalid("quotient by the zero polynomial".into()));
    }
    if g.ring() != ideal.ring() {
        return Err(crate::ring::RingError::RingMismatch.into());
    }
    if !g.vanishes_at_origin() {
        return Ok(ideal.clone());
    }
    let ring = ideal.ring();
    let order = engine.order(ring);
    let meet = intersect_principal(ideal, g, engine)?;
    let mut quotients = Vec::with_capacity(meet.generators().len());
    for h in meet.generators() {
        // unit*h = q*g exactly, since h lies in the principal ideal (g) locally
        let d = gb::weak_division(h, std::slice::from_ref(g), &order, &engine.budget)?;
        if !d.remainder.is_zero() {
            return Err(GbError::Invalid(format!("intersection element {h} not divisible by {g}")));
        }
        quotients.push(d.quotients.into_iter().next().expect("one divisor"));
    }
    Ok(IdealPresentation::new(ring, quotients)?)
}

/// `I : g^∞`, by iterating single-element quotients until the leading ideal
/// stops growing.
pub fn saturate(ideal: &IdealPresentation, g: &Polynomial, engine: &Engine) -> Result<SaturationResult, GbError> {
    let mut current = ideal.clone();
    let mut steps = 0;
    loop {
        let next = ideal_quotient(&current, g, engine)?;
        // current ⊆ next always; equal leading ideals then force equality
        if engine.basis(&next)?.same_leading_ideal(&*engine.basis(&current)?) {
            return Ok(SaturationResult { ideal: current, steps });
        }
        current = next;
        steps += 1;
    }
}

/// True iff the germ of `V(I)` at the origin is empty or the origin alone.
pub fn is_zero_dim_at_origin(ideal: &IdealPresentation, engine: &Engine) -> Result<bool, GbError> {
    Ok(engine.length(ideal)?.is_finite())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalProbe {
    /// Least `k` with `g^k ∈ I`.
    Yes(u32),
    /// No power up to the bound lies in `I`. Not a proof of non-membership.
    NoUpToBound,
}

impl RadicalProbe {
    pub fn is_yes(self) -> bool {
        matches!(self, RadicalProbe::Yes(_))
    }
}

/// Searches for the least `k <= bound` with `g^k ∈ I`.
pub fn bounded_radical_member(
    g: &Polynomial,
    ideal: &IdealPresentation,
    bound: u32,
    engine: &Engine,
) -> Result<RadicalProbe, GbError> {
    if bound == 0 {
        return Err(GbError::Invalid("radical probe bound must be at least 1".into()));
    }
    let sb = engine.basis(ideal)?;
    if sb.is_unit_ideal() {
        return Ok(RadicalProbe::Yes(1));
    }
    // r_k is a weak normal form of u*g^k for some unit u, so g^(k+1) ∈ I iff g*r_k ∈ I
    let mut r = sb.normal_form(g, &engine.budget)?;
    for k in 1..=bound {
        if r.is_zero() {
            return Ok(RadicalProbe::Yes(k));
        }
        if k < bound {
            r = sb.normal_form(&(&r * g), &engine.budget)?;
        }
    }
    Ok(RadicalProbe::NoUpToBound)
}
