//! Engine settings shared by the ideal-level and germ-level operations.

use std::sync::Arc;

use crate::gb::{self, Budget, GbError, IdealPresentation, Length, LocalDim, StandardBasis};
use crate::order::{MonomialOrder, OrderError};
use crate::ring::Ring;

/// Which local order lengths and dimensions are computed in. Results do not
/// depend on the choice; it exists for cross-checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LocalOrder {
    #[default]
    NegDegrevlex,
    NegDegrevlexReversed,
}

impl LocalOrder {
    pub fn name(self) -> &'static str {
        match self {
            LocalOrder::NegDegrevlex => "negdegrevlex",
            LocalOrder::NegDegrevlexReversed => "negdegrevlex-rev",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, OrderError> {
        match name {
            "negdegrevlex" => Ok(LocalOrder::NegDegrevlex),
            "negdegrevlex-rev" => Ok(LocalOrder::NegDegrevlexReversed),
            other => Err(OrderError::UnknownName(other.to_string())),
        }
    }

    pub fn for_ring(self, ring: &Ring) -> MonomialOrder {
        MonomialOrder::local_by_name(self.name(), ring).expect("known order name")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Engine {
    pub budget: Budget,
    pub local_order: LocalOrder,
    /// Largest power tried by bounded radical-membership probes.
    pub radical_bound: u32,
}

impl Default for Engine {
    fn default() -> Self {
        Engine { budget: Budget::default(), local_order: LocalOrder::default(), radical_bound: 20 }
    }
}

impl Engine {
    pub fn with_order(local_order: LocalOrder) -> Self {
        Engine { local_order, ..Engine::default() }
    }

    pub fn order(&self, ring: &Ring) -> MonomialOrder {
        self.local_order.for_ring(ring)
    }

    pub fn basis(&self, ideal: &IdealPresentation) -> Result<Arc<StandardBasis>, GbError> {
        ideal.standard_basis(&self.order(ideal.ring()), &self.budget)
    }

    pub fn length(&self, ideal: &IdealPresentation) -> Result<Length, GbError> {
        gb::local_length(ideal, &self.order(ideal.ring()), &self.budget)
    }

    pub fn dim(&self, ideal: &IdealPresentation) -> Result<LocalDim, GbError> {
        gb::local_dim(ideal, &self.order(ideal.ring()), &self.budget)
    }

    pub fn is_unit(&self, ideal: &IdealPresentation) -> Result<bool, GbError> {
        Ok(self.basis(ideal)?.is_unit_ideal())
    }

    pub fn contains_ideal(&self, big: &IdealPresentation, small: &IdealPresentation) -> Result<bool, GbError> {
        big.contains_ideal(small, &self.order(big.ring()), &self.budget)
    }

    pub fn same_ideal(&self, a: &IdealPresentation, b: &IdealPresentation) -> Result<bool, GbError> {
        a.same_ideal(b, &self.order(a.ring()), &self.budget)
    }
}
