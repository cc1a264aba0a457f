//! Standard bases in local and mixed monomial orders.
//!
//! Reduction uses Mora's weak normal form: reducers are chosen by minimal
//! écart, and intermediate remainders with small écart are themselves added
//! to the reducer set. This terminates for every monomial order, including
//! orders that are not well-orderings, at the cost of only determining the
//! remainder up to a unit of the localization (a polynomial whose leading
//! monomial is `1`).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::order::{MonomialOrder, OrderError, OrderKind};
use crate::ring::{Monomial, Polynomial, Rational, Ring, RingError};

/// Resource caps for standard-basis computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 50_000, max_degree: 80 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BudgetExceeded {
    #[error("processed more than {limit} critical pairs")]
    Pairs { limit: usize },
    #[error("intermediate total degree {reached} exceeds the cap of {limit}")]
    Degree { limit: u32, reached: u32 },
}

impl BudgetExceeded {
    pub fn name(&self) -> &'static str {
        match self {
            BudgetExceeded::Pairs { .. } => "max_pairs",
            BudgetExceeded::Degree { .. } => "max_degree",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("budget exceeded: {0}")]
    Budget(#[from] BudgetExceeded),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

/// Polynomial as a list of terms sorted by a fixed order, leading term first.
#[derive(Clone, Debug)]
pub(crate) struct OrderedPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl OrderedPoly {
    pub(crate) fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        OrderedPoly { terms }
    }

    pub(crate) fn to_poly(&self, ring: &Arc<Ring>) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    fn zero() -> Self {
        OrderedPoly { terms: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lead_coeff(&self) -> &Rational {
        &self.terms[0].1
    }

    fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn ecart(&self) -> u32 {
        self.max_degree() - self.lead().degree()
    }

    fn make_monic(&mut self) {
        if self.is_zero() {
            return;
        }
        let inv = self.lead_coeff().recip();
        for (_, c) in &mut self.terms {
            *c *= &inv;
        }
    }

    /// `self - c * m * g`. When `cancel_lead` is set the caller guarantees that
    /// the leading terms cancel exactly, so both are skipped.
    fn sub_mul(&self, c: &Rational, m: &Monomial, g: &OrderedPoly, order: &MonomialOrder, cancel_lead: bool) -> Self {
        let skip = usize::from(cancel_lead);
        let a = self.terms.get(skip..).unwrap_or(&[]);
        let b = g.terms.get(skip..).unwrap_or(&[]);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let bm = b[j].0.mul(m);
            if i == a.len() {
                out.push((bm, -(c * &b[j].1)));
                j += 1;
                continue;
            }
            match order.cmp(&a[i].0, &bm) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((bm, -(c * &b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = &a[i].1 - c * &b[j].1;
                    if !v.is_zero() {
                        out.push((bm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        OrderedPoly { terms: out }
    }

    /// Appends a homogenizing variable so every term has the top degree.
    fn homogenize(&self, hom_order: &MonomialOrder) -> Self {
        let top = self.max_degree();
        let mut terms: Vec<(Monomial, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.push(top - m.degree());
                (Monomial::new(e), c.clone())
            })
            .collect();
        terms.sort_by(|a, b| hom_order.cmp(&b.0, &a.0));
        OrderedPoly { terms }
    }

    /// Sets the trailing homogenizing variable to 1. Terms of a homogeneous
    /// polynomial have distinct images, so nothing combines.
    fn dehomogenize(&self, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m.exponents();
                (Monomial::new(e[..e.len() - 1].to_vec()), c.clone())
            })
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        OrderedPoly { terms }
    }

    /// Drops every term of degree `>= d`. Under a local degree order these
    /// form a suffix.
    fn truncate_at(&mut self, d: u32) {
        if let Some(k) = self.terms.iter().position(|(m, _)| m.degree() >= d) {
            self.terms.truncate(k);
        }
    }

    fn mul_term(&self, c: &Rational, m: &Monomial) -> Self {
        OrderedPoly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }
}

struct Reducer {
    poly: OrderedPoly,
    ecart: u32,
}

impl Reducer {
    fn new(poly: OrderedPoly) -> Self {
        let ecart = poly.ecart();
        Reducer { poly, ecart }
    }
}

fn check_degree(p: &OrderedPoly, budget: &Budget) -> Result<(), BudgetExceeded> {
    let d = p.max_degree();
    if d > budget.max_degree {
        return Err(BudgetExceeded::Degree { limit: budget.max_degree, reached: d });
    }
    Ok(())
}

/// Picks the reducer of least écart whose leading monomial divides `lead`.
fn pick<'a>(lead: &Monomial, fixed: &'a [Reducer], extra: &'a [Reducer]) -> Option<&'a Reducer> {
    fixed.iter().chain(extra.iter()).filter(|r| r.poly.lead().divides(lead)).min_by_key(|r| r.ecart)
}

fn mora_nf(
    f: OrderedPoly,
    basis: &[Reducer],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<OrderedPoly, BudgetExceeded> {
    mora_nf_truncated(f, basis, order, budget, None)
}

/// Mora's weak normal form. With `cutoff`, terms of that degree and above are
/// discarded after every step; the caller guarantees they lie in the ideal
/// and that the order is a local degree order.
fn mora_nf_truncated(
    f: OrderedPoly,
    basis: &[Reducer],
    order: &MonomialOrder,
    budget: &Budget,
    cutoff: Option<u32>,
) -> Result<OrderedPoly, BudgetExceeded> {
    let mut extra: Vec<Reducer> = Vec::new();
    let mut h = f;
    while !h.is_zero() {
        let h_ecart = h.ecart();
        let Some(g) = pick(h.lead(), basis, &extra) else { break };
        let c = h.lead_coeff() / g.poly.lead_coeff();
        let m = g.poly.lead().quotient_of(h.lead());
        let push = g.ecart > h_ecart;
        let next = h.sub_mul(&c, &m, &g.poly, order, true);
        if push {
            extra.push(Reducer { poly: h, ecart: h_ecart });
        }
        h = next;
        if let Some(d) = cutoff {
            h.truncate_at(d);
        }
        check_degree(&h, budget)?;
    }
    Ok(h)
}

/// Weak normal form of `f` with respect to `basis`: a polynomial `r` with
/// `u*f - r` in the ideal for some unit `u` of the localization, and whose
/// leading monomial (if nonzero) is not divisible by any leading monomial of
/// `basis`. When `basis` is a standard basis, `r == 0` iff `f` is in the ideal.
pub fn normal_form(
    f: &Polynomial,
    basis: &[Polynomial],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<Polynomial, GbError> {
    order.check_ring(f.ring())?;
    if basis.iter().any(|b| b.ring() != f.ring()) {
        return Err(RingError::RingMismatch.into());
    }
    let reducers: Vec<Reducer> =
        basis.iter().filter(|b| !b.is_zero()).map(|b| Reducer::new(OrderedPoly::from_poly(b, order))).collect();
    let r = mora_nf(OrderedPoly::from_poly(f, order), &reducers, order, budget)?;
    Ok(r.to_poly(f.ring()))
}

/// Result of a tracked weak division: `unit * f == sum(quotients[i] * divisors[i]) + remainder`.
#[derive(Debug, Clone)]
pub struct WeakDivision {
    pub unit: Polynomial,
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

struct TrackedReducer {
    poly: OrderedPoly,
    ecart: u32,
    // poly == unit*f - sum(quot[i]*divisor[i])
    unit: OrderedPoly,
    quot: Vec<OrderedPoly>,
}

/// Mora division that also records the unit multiplier and the quotients.
pub fn weak_division(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<WeakDivision, GbError> {
    order.check_ring(f.ring())?;
    if divisors.iter().any(|b| b.ring() != f.ring()) {
        return Err(RingError::RingMismatch.into());
    }
    let k = divisors.len();
    let n = f.ring().nvars();
    let one = OrderedPoly { terms: vec![(Monomial::one(n), Rational::one())] };
    let mut pool: Vec<TrackedReducer> = Vec::new();
    for (i, d) in divisors.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let poly = OrderedPoly::from_poly(d, order);
        let mut quot = vec![OrderedPoly::zero(); k];
        quot[i] = OrderedPoly { terms: vec![(Monomial::one(n), -Rational::one())] };
        pool.push(TrackedReducer { ecart: poly.ecart(), poly, unit: OrderedPoly::zero(), quot });
    }
    let mut h = OrderedPoly::from_poly(f, order);
    let mut unit = one;
    let mut quot = vec![OrderedPoly::zero(); k];
    while !h.is_zero() {
        let h_ecart = h.ecart();
        let found = pool
            .iter()
            .enumerate()
            .filter(|(_, r)| r.poly.lead().divides(h.lead()))
            .min_by_key(|(_, r)| r.ecart)
            .map(|(i, _)| i);
        let Some(idx) = found else { break };
        let g = &pool[idx];
        let c = h.lead_coeff() / g.poly.lead_coeff();
        let m = g.poly.lead().quotient_of(h.lead());
        let next = h.sub_mul(&c, &m, &g.poly, order, true);
        let next_unit = unit.sub_mul(&c, &m, &g.unit, order, false);
        let next_quot: Vec<OrderedPoly> =
            quot.iter().zip(&g.quot).map(|(q, gq)| q.sub_mul(&c, &m, gq, order, false)).collect();
        if g.ecart > h_ecart {
            pool.push(TrackedReducer { poly: h, ecart: h_ecart, unit: unit.clone(), quot: quot.clone() });
        }
        h = next;
        unit = next_unit;
        quot = next_quot;
        check_degree(&h, budget)?;
    }
    let ring = f.ring();
    Ok(WeakDivision {
        unit: unit.to_poly(ring),
        quotients: quot.iter().map(|q| q.to_poly(ring)).collect(),
        remainder: h.to_poly(ring),
    })
}

/// A standard basis together with the order it was computed for.
#[derive(Debug, Clone)]
pub struct StandardBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    leading: Vec<Monomial>,
    /// Fully tail-reduced. Only global orders are tail-reduced; local bases
    /// are minimal and monic.
    reduced: bool,
    /// For zero-dimensional ideals under a local degree order: `m^corner` lies
    /// in the ideal, so terms of that degree and above can be dropped.
    corner: Option<u32>,
}

impl StandardBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Minimal generators of the leading ideal, one per basis element.
    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The basis contains an element with leading monomial `1`, i.e. a unit
    /// of the localization: the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }

    pub fn normal_form(&self, f: &Polynomial, budget: &Budget) -> Result<Polynomial, GbError> {
        let Some(d) = self.corner else {
            return normal_form(f, &self.generators, &self.order, budget);
        };
        if f.ring() != &self.ring {
            return Err(RingError::RingMismatch.into());
        }
        let reducers: Vec<Reducer> =
            self.generators.iter().map(|b| Reducer::new(OrderedPoly::from_poly(b, &self.order))).collect();
        let mut h = OrderedPoly::from_poly(f, &self.order);
        h.truncate_at(d);
        Ok(mora_nf_truncated(h, &reducers, &self.order, budget, Some(d))?.to_poly(f.ring()))
    }

    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool, GbError> {
        if self.is_unit_ideal() {
            return Ok(true);
        }
        Ok(self.normal_form(f, budget)?.is_zero())
    }

    /// Same leading ideal as `other` (canonical comparison of minimal leading
    /// monomial sets).
    pub fn same_leading_ideal(&self, other: &StandardBasis) -> bool {
        let a: BTreeSet<&Monomial> = self.leading.iter().collect();
        let b: BTreeSet<&Monomial> = other.leading.iter().collect();
        a == b
    }
}

fn spoly(a: &OrderedPoly, b: &OrderedPoly, order: &MonomialOrder) -> OrderedPoly {
    let l = a.lead().lcm(b.lead());
    let ma = a.lead().quotient_of(&l);
    let mb = b.lead().quotient_of(&l);
    let left = a.mul_term(&a.lead_coeff().recip(), &ma);
    left.sub_mul(&b.lead_coeff().recip(), &mb, b, order, true)
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    degree: u32,
    lcm: Vec<u32>,
    i: usize,
    j: usize,
}

/// Computes a standard basis of the ideal generated by `gens` under `order`.
///
/// Global orders run Buchberger's algorithm directly. Other orders go through
/// homogenization: a Gröbner basis of the homogenized generators under
/// [`MonomialOrder::homogenized`] dehomogenizes to a standard basis, and
/// homogeneous reduction never leaves its degree.
///
/// The result is minimal (no leading monomial divides another) and monic.
/// Under a global order it is additionally tail-reduced. The computation is
/// deterministic in `(gens, order)`.
pub fn standard_basis(
    gens: &[Polynomial],
    ring: &Arc<Ring>,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<StandardBasis, GbError> {
    order.check_ring(ring)?;
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(RingError::RingMismatch.into());
    }
    let mut input = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let p = OrderedPoly::from_poly(g, order);
        check_degree(&p, budget)?;
        input.push(p);
    }
    let basis = if order.is_global() {
        buchberger(input, order, budget, |m| m.is_one())?
    } else {
        let n = ring.nvars();
        let hom_order = order.homogenized();
        let hom: Vec<OrderedPoly> = input.iter().map(|p| p.homogenize(&hom_order)).collect();
        let out = buchberger(hom, &hom_order, budget, |m| m.exponents()[..n].iter().all(|&e| e == 0))?;
        out.iter().map(|p| p.dehomogenize(order)).collect()
    };
    finish(basis, ring, order, budget)
}

/// Buchberger's algorithm for a global order, with the product criterion.
/// Stops early once an element with a unit leading monomial appears.
fn buchberger(
    input: Vec<OrderedPoly>,
    order: &MonomialOrder,
    budget: &Budget,
    is_unit_lead: impl Fn(&Monomial) -> bool,
) -> Result<Vec<OrderedPoly>, GbError> {
    let mut basis: Vec<Reducer> = input
        .into_iter()
        .map(|mut p| {
            p.make_monic();
            Reducer::new(p)
        })
        .collect();
    let mut pairs: BTreeSet<PairKey> = BTreeSet::new();
    let push_pair = |pairs: &mut BTreeSet<PairKey>, basis: &[Reducer], i: usize, j: usize| {
        let (a, b) = (basis[i].poly.lead(), basis[j].poly.lead());
        if a.is_coprime(b) {
            return;
        }
        let l = a.lcm(b);
        pairs.insert(PairKey { degree: l.degree(), lcm: l.exponents().to_vec(), i, j });
    };
    for j in 0..basis.len() {
        for i in 0..j {
            push_pair(&mut pairs, &basis, i, j);
        }
    }
    let mut processed = 0usize;
    while let Some(key) = pairs.pop_first() {
        if basis.iter().any(|r| is_unit_lead(r.poly.lead())) {
            break;
        }
        // Chain criterion: skip (i, j) if some k has lead dividing lcm(i, j)
        // and both (i, k) and (j, k) are still pending or already done.
        let lcm = Monomial::new(key.lcm.clone());
        let redundant = (0..basis.len()).any(|k| {
            k != key.i
                && k != key.j
                && basis[k].poly.lead().divides(&lcm)
                && !pending(&pairs, &basis, key.i, k)
                && !pending(&pairs, &basis, key.j, k)
        });
        if redundant {
            continue;
        }
        processed += 1;
        if processed > budget.max_pairs {
            return Err(BudgetExceeded::Pairs { limit: budget.max_pairs }.into());
        }
        let s = spoly(&basis[key.i].poly, &basis[key.j].poly, order);
        check_degree(&s, budget)?;
        let mut h = mora_nf(s, &basis, order, budget)?;
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        basis.push(Reducer::new(h));
        let j = basis.len() - 1;
        for i in 0..j {
            push_pair(&mut pairs, &basis, i, j);
        }
    }
    Ok(basis.into_iter().map(|r| r.poly).collect())
}

fn pending(pairs: &BTreeSet<PairKey>, basis: &[Reducer], a: usize, b: usize) -> bool {
    let (i, j) = (a.min(b), a.max(b));
    let l = basis[i].poly.lead().lcm(basis[j].poly.lead());
    pairs.contains(&PairKey { degree: l.degree(), lcm: l.exponents().to_vec(), i, j })
}

fn finish(
    basis: Vec<OrderedPoly>,
    ring: &Arc<Ring>,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<StandardBasis, GbError> {
    let n = ring.nvars();
    let unit = basis.iter().any(|p| p.lead().is_one());
    let mut kept: Vec<OrderedPoly> = if unit {
        vec![OrderedPoly { terms: vec![(Monomial::one(n), Rational::one())] }]
    } else {
        let mut kept: Vec<OrderedPoly> = Vec::new();
        for (i, p) in basis.iter().enumerate() {
            let lm = p.lead();
            let dominated =
                basis.iter().enumerate().any(|(j, o)| j != i && o.lead().divides(lm) && (o.lead() != lm || j < i));
            if !dominated {
                let mut p = p.clone();
                p.make_monic();
                kept.push(p);
            }
        }
        kept
    };
    kept.sort_by(|a, b| order.cmp(b.lead(), a.lead()));
    let reduced = order.is_global();
    if reduced && !unit {
        kept = tail_reduce(kept, order, budget)?;
    }
    let leading: Vec<Monomial> = kept.iter().map(|p| p.lead().clone()).collect();
    let corner = if order.kind() == OrderKind::LocalNegDegrevlex && !unit { corner_degree(&leading, n) } else { None };
    Ok(StandardBasis {
        ring: ring.clone(),
        order: order.clone(),
        generators: kept.iter().map(|p| p.to_poly(ring)).collect(),
        leading,
        reduced,
        corner,
    })
}

/// Least `d` such that every monomial of degree `d` lies in the monomial
/// ideal, when the staircase is finite.
fn corner_degree(leading: &[Monomial], nvars: usize) -> Option<u32> {
    let mut bounds = vec![u32::MAX; nvars];
    for m in leading {
        let support: Vec<usize> = (0..nvars).filter(|&i| m.exponents()[i] > 0).collect();
        if let [i] = support[..] {
            bounds[i] = bounds[i].min(m.exponents()[i]);
        }
    }
    if bounds.contains(&u32::MAX) {
        return None;
    }
    let stairs = staircase_monomials(leading, nvars, &bounds, None);
    Some(stairs.iter().map(Monomial::degree).max().map_or(0, |d| d + 1))
}

/// Full tail reduction for well-orders, where ordinary division terminates.
fn tail_reduce(basis: Vec<OrderedPoly>, order: &MonomialOrder, budget: &Budget) -> Result<Vec<OrderedPoly>, GbError> {
    let mut out = Vec::with_capacity(basis.len());
    for (i, g) in basis.iter().enumerate() {
        let others: Vec<&OrderedPoly> = basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).collect();
        let mut head = vec![g.terms[0].clone()];
        let mut rest = OrderedPoly { terms: g.terms[1..].to_vec() };
        while !rest.is_zero() {
            match others.iter().find(|o| o.lead().divides(rest.lead())) {
                Some(o) => {
                    let c = rest.lead_coeff() / o.lead_coeff();
                    let m = o.lead().quotient_of(rest.lead());
                    rest = rest.sub_mul(&c, &m, o, order, true);
                    check_degree(&rest, budget)?;
                }
                None => {
                    head.push(rest.terms.remove(0));
                }
            }
        }
        out.push(OrderedPoly { terms: head });
    }
    Ok(out)
}

/// Krull dimension of the local quotient at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalDim {
    /// The ideal contains a local unit: the germ is empty.
    Empty,
    Dim(usize),
}

impl fmt::Display for LocalDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalDim::Empty => write!(f, "empty"),
            LocalDim::Dim(d) => write!(f, "{d}"),
        }
    }
}

impl LocalDim {
    /// `dim <= 0`, counting the empty germ.
    pub fn at_most_zero(self) -> bool {
        matches!(self, LocalDim::Empty | LocalDim::Dim(0))
    }
}

/// Length of an Artinian local quotient, or `Infinite` when the quotient is
/// not Artinian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Length::Finite(n) => s.serialize_u64(*n),
            Length::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Dimension of `k[x]/(monomials)`: the largest set of variables whose
/// coordinate subspace lies in the zero set.
pub fn monomial_ideal_dimension(leading: &[Monomial], nvars: usize) -> usize {
    assert!(nvars < 31, "too many variables for subset enumeration");
    let supports: Vec<u32> = leading
        .iter()
        .map(|m| m.exponents().iter().enumerate().filter(|(_, &e)| e > 0).fold(0u32, |acc, (i, _)| acc | (1 << i)))
        .collect();
    let mut best = 0;
    for subset in 0u32..(1 << nvars) {
        let size = subset.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|s| s & !subset != 0) {
            best = size;
        }
    }
    best
}

/// Number of monomials outside the monomial ideal, if finite.
pub fn staircase_size(leading: &[Monomial], nvars: usize) -> Length {
    if leading.iter().any(Monomial::is_one) {
        return Length::Finite(0);
    }
    let mut bounds = vec![u32::MAX; nvars];
    for m in leading {
        let support: Vec<usize> = (0..nvars).filter(|&i| m.exponents()[i] > 0).collect();
        if let [i] = support[..] {
            bounds[i] = bounds[i].min(m.exponents()[i]);
        }
    }
    if bounds.contains(&u32::MAX) {
        return Length::Infinite;
    }
    Length::Finite(staircase_monomials(leading, nvars, &bounds, None).len() as u64)
}

/// Enumerates the standard monomials inside the box `bounds`, optionally
/// stopping after `limit` of them.
pub fn staircase_monomials(leading: &[Monomial], nvars: usize, bounds: &[u32], limit: Option<usize>) -> Vec<Monomial> {
    fn rec(
        leading: &[Monomial],
        bounds: &[u32],
        cur: &mut Vec<u32>,
        var: usize,
        out: &mut Vec<Monomial>,
        limit: Option<usize>,
    ) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        if var == cur.len() {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in 0..bounds[var] {
            cur[var] = e;
            let probe = Monomial::new(cur.iter().enumerate().map(|(i, &x)| if i <= var { x } else { 0 }).collect());
            if leading.iter().any(|l| l.divides(&probe)) {
                break;
            }
            rec(leading, bounds, cur, var + 1, out, limit);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; nvars];
    rec(leading, bounds, &mut cur, 0, &mut out, limit);
    out
}

/// Generators of an ideal plus a transparent cache of standard bases.
pub struct IdealPresentation {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    cache: Mutex<HashMap<MonomialOrder, Arc<StandardBasis>>>,
}

impl Clone for IdealPresentation {
    fn clone(&self) -> Self {
        IdealPresentation {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache poisoned").clone()),
        }
    }
}

impl fmt::Debug for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "Ideal({})", gens.join(", "))
    }
}

impl IdealPresentation {
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self, RingError> {
        if generators.iter().any(|g| g.ring() != ring) {
            return Err(RingError::RingMismatch);
        }
        Ok(IdealPresentation { ring: ring.clone(), generators, cache: Mutex::new(HashMap::new()) })
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// `self + (extra)`.
    pub fn with(&self, extra: &[Polynomial]) -> Result<Self, RingError> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Self::new(&self.ring, gens)
    }

    pub fn standard_basis(&self, order: &MonomialOrder, budget: &Budget) -> Result<Arc<StandardBasis>, GbError> {
        if let Some(sb) = self.cache.lock().expect("cache poisoned").get(order) {
            return Ok(sb.clone());
        }
        let sb = Arc::new(standard_basis(&self.generators, &self.ring, order, budget)?);
        self.cache.lock().expect("cache poisoned").insert(order.clone(), sb.clone());
        Ok(sb)
    }

    /// Ideal membership in the localization determined by `order`.
    pub fn contains(&self, f: &Polynomial, order: &MonomialOrder, budget: &Budget) -> Result<bool, GbError> {
        self.standard_basis(order, budget)?.contains(f, budget)
    }

    /// `other ⊆ self`, checked generator by generator.
    pub fn contains_ideal(
        &self,
        other: &IdealPresentation,
        order: &MonomialOrder,
        budget: &Budget,
    ) -> Result<bool, GbError> {
        let sb = self.standard_basis(order, budget)?;
        for g in other.generators() {
            if !sb.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_ideal(
        &self,
        other: &IdealPresentation,
        order: &MonomialOrder,
        budget: &Budget,
    ) -> Result<bool, GbError> {
        Ok(self.contains_ideal(other, order, budget)? && other.contains_ideal(self, order, budget)?)
    }
}

/// Krull dimension at the origin of the quotient by `ideal`.
pub fn local_dim(ideal: &IdealPresentation, order: &MonomialOrder, budget: &Budget) -> Result<LocalDim, GbError> {
    if !order.is_local() {
        return Err(OrderError::NotLocal.into());
    }
    let sb = ideal.standard_basis(order, budget)?;
    if sb.is_unit_ideal() {
        return Ok(LocalDim::Empty);
    }
    Ok(LocalDim::Dim(monomial_ideal_dimension(sb.leading_monomials(), ideal.ring().nvars())))
}

/// Length of the local quotient at the origin, counted as the number of
/// standard monomials.
pub fn local_length(ideal: &IdealPresentation, order: &MonomialOrder, budget: &Budget) -> Result<Length, GbError> {
    if !order.is_local() {
        return Err(OrderError::NotLocal.into());
    }
    let sb = ideal.standard_basis(order, budget)?;
    Ok(staircase_size(sb.leading_monomials(), ideal.ring().nvars()))
}

/// Generators of `I ∩ k[remaining variables]` in the local ring of the
/// remaining variables at the origin. The eliminated variables are ordered
/// globally and ranked above the rest.
pub fn eliminate(ideal: &IdealPresentation, vars: &[&str], budget: &Budget) -> Result<IdealPresentation, GbError> {
    let ring = ideal.ring();
    let idx: Vec<usize> = vars.iter().map(|v| ring.index_of(v)).collect::<Result<_, _>>()?;
    eliminate_indices(ideal, &idx, budget)
}

pub(crate) fn eliminate_indices(
    ideal: &IdealPresentation,
    idx: &[usize],
    budget: &Budget,
) -> Result<IdealPresentation, GbError> {
    let ring = ideal.ring();
    if idx.is_empty() {
        return Ok(IdealPresentation::new(ring, ideal.generators().to_vec())?);
    }
    let order = MonomialOrder::elimination(ring.nvars(), idx)?;
    let sb = ideal.standard_basis(&order, budget)?;
    let kept: Vec<Polynomial> = sb
        .generators()
        .iter()
        .zip(sb.leading_monomials())
        .filter(|(_, lm)| idx.iter().all(|&v| lm.exponents()[v] == 0))
        .map(|(g, _)| g.clone())
        .collect();
    debug_assert!(kept.iter().all(|g| idx.iter().all(|&v| !g.involves(v))));
    Ok(IdealPresentation::new(ring, kept)?)
}
