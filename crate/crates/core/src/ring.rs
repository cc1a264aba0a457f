//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] is a finite map from exponent vectors to nonzero
//! [`Rational`] coefficients over a shared [`Ring`], which fixes the ordered
//! list of variable names and optionally designates one of them as the
//! deformation parameter.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("duplicate variable `{0}` in ring declaration")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("ring declares no variables")]
    EmptyRing,
    #[error("expected {expected} substitution images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
}

/// Exponent vector, one slot per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Graded reverse lexicographic comparison, used for display order.
    pub fn cmp_degrevlex(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

/// Ordered list of distinct variable names with an optional deformation parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    variables: Vec<String>,
    parameter: Option<usize>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(variables: &[S], parameter: Option<&str>) -> Result<Arc<Ring>, RingError> {
        let variables: Vec<String> = variables.iter().map(|v| v.as_ref().to_string()).collect();
        if variables.is_empty() {
            return Err(RingError::EmptyRing);
        }
        for (i, v) in variables.iter().enumerate() {
            if !valid_name(v) {
                return Err(RingError::InvalidVariableName(v.clone()));
            }
            if variables[..i].contains(v) {
                return Err(RingError::DuplicateVariable(v.clone()));
            }
        }
        let parameter = match parameter {
            Some(p) => Some(
                variables.iter().position(|v| v == p).ok_or_else(|| RingError::UndeclaredVariable(p.to_string()))?,
            ),
            None => None,
        };
        Ok(Arc::new(Ring { variables, parameter }))
    }

    /// Ring with one extra trailing variable whose name avoids every existing one.
    /// Used internally for elimination tricks, so the name is not checked
    /// against the user grammar.
    pub(crate) fn with_auxiliary(&self, stem: &str) -> (Arc<Ring>, usize) {
        let mut name = stem.to_string();
        let mut k = 0;
        while self.variables.contains(&name) {
            k += 1;
            name = format!("{stem}{k}");
        }
        let mut variables = self.variables.clone();
        variables.push(name);
        let index = variables.len() - 1;
        (Arc::new(Ring { variables, parameter: self.parameter }), index)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, RingError> {
        self.variables.iter().position(|v| v == name).ok_or_else(|| RingError::UndeclaredVariable(name.to_string()))
    }

    pub fn parameter(&self) -> Option<usize> {
        self.parameter
    }

    pub fn parameter_name(&self) -> Option<&str> {
        self.parameter.map(|i| self.variables[i].as_str())
    }
}

fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Arithmetic operator selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Pow(u32),
}

/// Checked binary arithmetic. For `Pow(k)` the right-hand side is ignored
/// apart from the ring check.
pub fn arith(lhs: &Polynomial, rhs: &Polynomial, op: ArithOp) -> Result<Polynomial, RingError> {
    if !same_ring(&lhs.ring, &rhs.ring) {
        return Err(RingError::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => lhs.add_unchecked(rhs),
        ArithOp::Sub => lhs.add_unchecked(&rhs.neg_ref()),
        ArithOp::Mul => lhs.mul_unchecked(rhs),
        ArithOp::Pow(k) => lhs.pow(k),
    })
}

#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ring.hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), ring.nvars(), "monomial arity does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self, RingError> {
        let i = ring.index_of(name)?;
        Ok(Self::monomial(ring, Monomial::var(ring.nvars(), i), Rational::one()))
    }

    /// Builds a polynomial from possibly repeated or zero terms.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.len(), ring.nvars(), "monomial arity does not match ring");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree among the terms (the order of vanishing at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.ring.nvars())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// True if the polynomial involves the variable at `index`.
    pub fn involves(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.exponents()[index] > 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    fn neg_ref(&self) -> Self {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), -a)).collect() }
    }

    fn add_unchecked(&self, other: &Polynomial) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Self {
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Self, RingError> {
        arith(self, other, ArithOp::Add)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Self, RingError> {
        arith(self, other, ArithOp::Sub)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Self, RingError> {
        arith(self, other, ArithOp::Mul)
    }

    pub fn derivative_at(&self, index: usize) -> Self {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= 1;
            out.add_term(Monomial(exps), c * rat(i64::from(e)));
        }
        out
    }

    /// Formal partial derivative with respect to the named variable.
    pub fn partial_derivative(&self, var: &str) -> Result<Self, RingError> {
        Ok(self.derivative_at(self.ring.index_of(var)?))
    }

    /// Replaces every variable by the corresponding image polynomial.
    /// Images may live in a different ring; the result lives in theirs.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self, RingError> {
        if images.len() != self.ring.nvars() {
            return Err(RingError::ArityMismatch { expected: self.ring.nvars(), got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Err(RingError::EmptyRing),
        };
        if images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(RingError::RingMismatch);
        }
        let mut cache: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap().mul_unchecked(&images[i]);
                    cache[i].push(next);
                }
                if e > 0 {
                    term = term.mul_unchecked(&cache[i][e]);
                }
            }
            out = out.add_unchecked(&term);
        }
        Ok(out)
    }

    /// Sets the named variable to a rational value, keeping the ring.
    pub fn evaluate_var(&self, var: &str, value: &Rational) -> Result<Self, RingError> {
        let i = self.ring.index_of(var)?;
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut exps = m.exponents().to_vec();
            let e = std::mem::replace(&mut exps[i], 0);
            out.add_term(Monomial(exps), c * num_traits::pow(value.clone(), e as usize));
        }
        Ok(out)
    }

    /// Moves the polynomial into another ring, matching variables by name.
    /// Every variable actually used must exist in the target.
    pub fn remap(&self, target: &Arc<Ring>) -> Result<Self, RingError> {
        let slots: Vec<Option<usize>> = self.ring.variables.iter().map(|v| target.index_of(v).ok()).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.nvars()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match slots[i] {
                    Some(j) => exps[j] = e,
                    None => return Err(RingError::UndeclaredVariable(self.ring.variables[i].clone())),
                }
            }
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Terms sorted by descending graded reverse lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp_degrevlex(a.0));
        v
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; use [`arith`] for the checked form.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        arith(self, rhs, ArithOp::Add).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        arith(self, rhs, ArithOp::Sub).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        arith(self, rhs, ArithOp::Mul).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.variables[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.variables[i], e)),
                }
            }
            if factors.is_empty() {
                write_rational(f, &abs)?;
            } else {
                if !abs.is_one() {
                    write_rational(f, &abs)?;
                    write!(f, "*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
