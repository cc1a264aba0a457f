//! Monomial orders: global, local and block (mixed) orders.
//!
//! Every order is represented as a sequence of blocks. Each block owns a
//! subset of the ring variables, listed in priority order, and compares the
//! restricted exponent vectors either by degree reverse lexicographic order
//! (global: `x > 1`) or by its negative-degree variant (local: `1 > x`).
//! Blocks are compared left to right; the first block that distinguishes two
//! monomials decides. An optional positive weight vector is compared before
//! any block, which makes the order global.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::ring::{Monomial, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Degrevlex,
    NegDegrevlex,
}

impl BlockKind {
    pub fn is_local(self) -> bool {
        matches!(self, BlockKind::NegDegrevlex)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub vars: Vec<usize>,
    pub kind: BlockKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("order blocks do not partition the {0} ring variables")]
    NotAPartition(usize),
    #[error("order is defined for {order} variables but the ring has {ring}")]
    WrongArity { order: usize, ring: usize },
    #[error("operation needs an order that is local in every variable")]
    NotLocal,
    #[error("unknown order name `{0}`")]
    UnknownName(String),
}

/// Coarse classification of an order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    GlobalDegrevlex,
    LocalNegDegrevlex,
    Block,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    nvars: usize,
    weight: Option<Vec<u32>>,
    blocks: Vec<Block>,
}

impl MonomialOrder {
    pub fn from_blocks(nvars: usize, blocks: Vec<Block>) -> Result<Self, OrderError> {
        let mut seen = vec![false; nvars];
        for b in &blocks {
            for &v in &b.vars {
                if v >= nvars || seen[v] {
                    return Err(OrderError::NotAPartition(nvars));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(OrderError::NotAPartition(nvars));
        }
        Ok(MonomialOrder { nvars, weight: None, blocks: blocks.into_iter().filter(|b| !b.vars.is_empty()).collect() })
    }

    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder {
            nvars,
            weight: None,
            blocks: vec![Block { vars: (0..nvars).collect(), kind: BlockKind::Degrevlex }],
        }
    }

    pub fn neg_degrevlex(nvars: usize) -> Self {
        MonomialOrder {
            nvars,
            weight: None,
            blocks: vec![Block { vars: (0..nvars).collect(), kind: BlockKind::NegDegrevlex }],
        }
    }

    /// Local negative-degree reverse lexicographic order with the variables
    /// taken in the given priority order.
    pub fn neg_degrevlex_permuted(perm: Vec<usize>) -> Result<Self, OrderError> {
        let n = perm.len();
        Self::from_blocks(n, vec![Block { vars: perm, kind: BlockKind::NegDegrevlex }])
    }

    /// Elimination order: `eliminate` forms a global block ranked above a
    /// local block holding every other variable.
    pub fn elimination(nvars: usize, eliminate: &[usize]) -> Result<Self, OrderError> {
        let rest: Vec<usize> = (0..nvars).filter(|v| !eliminate.contains(v)).collect();
        Self::from_blocks(
            nvars,
            vec![
                Block { vars: eliminate.to_vec(), kind: BlockKind::Degrevlex },
                Block { vars: rest, kind: BlockKind::NegDegrevlex },
            ],
        )
    }

    /// Order on one extra trailing variable `h`: total degree first, then
    /// `self` on the original variables. Dehomogenizing a Gröbner basis of a
    /// homogenized ideal under this order yields a standard basis for `self`.
    pub fn homogenized(&self) -> Self {
        let n = self.nvars;
        let mut blocks = self.blocks.clone();
        blocks.push(Block { vars: vec![n], kind: BlockKind::Degrevlex });
        MonomialOrder { nvars: n + 1, weight: Some(vec![1; n + 1]), blocks }
    }

    /// Looks up a named local order for `ring`. Recognised names are
    /// `negdegrevlex` (ring variable order) and `negdegrevlex-rev`
    /// (reversed variable order).
    pub fn local_by_name(name: &str, ring: &Ring) -> Result<Self, OrderError> {
        let n = ring.nvars();
        match name {
            "negdegrevlex" => Ok(Self::neg_degrevlex(n)),
            "negdegrevlex-rev" => Self::neg_degrevlex_permuted((0..n).rev().collect()),
            other => Err(OrderError::UnknownName(other.to_string())),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn kind(&self) -> OrderKind {
        if self.weight.is_some() {
            return OrderKind::Block;
        }
        match self.blocks.as_slice() {
            [b] if b.kind == BlockKind::Degrevlex => OrderKind::GlobalDegrevlex,
            [b] if b.kind == BlockKind::NegDegrevlex => OrderKind::LocalNegDegrevlex,
            _ => OrderKind::Block,
        }
    }

    /// True if `1 > x` for every variable.
    pub fn is_local(&self) -> bool {
        self.weight.is_none() && self.blocks.iter().all(|b| b.kind.is_local())
    }

    /// True if `x > 1` for every variable.
    pub fn is_global(&self) -> bool {
        self.weight.is_some() || self.blocks.iter().all(|b| !b.kind.is_local())
    }

    pub fn check_ring(&self, ring: &Ring) -> Result<(), OrderError> {
        if ring.nvars() != self.nvars {
            return Err(OrderError::WrongArity { order: self.nvars, ring: ring.nvars() });
        }
        Ok(())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exps(a.exponents(), b.exponents())
    }

    pub fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        if let Some(w) = &self.weight {
            let wa: u64 = a.iter().zip(w).map(|(&e, &c)| u64::from(e) * u64::from(c)).sum();
            let wb: u64 = b.iter().zip(w).map(|(&e, &c)| u64::from(e) * u64::from(c)).sum();
            if wa != wb {
                return wa.cmp(&wb);
            }
        }
        for block in &self.blocks {
            let da: u32 = block.vars.iter().map(|&v| a[v]).sum();
            let db: u32 = block.vars.iter().map(|&v| b[v]).sum();
            if da != db {
                return match block.kind {
                    BlockKind::Degrevlex => da.cmp(&db),
                    BlockKind::NegDegrevlex => db.cmp(&da),
                };
            }
            for &v in block.vars.iter().rev() {
                if a[v] != b[v] {
                    return b[v].cmp(&a[v]);
                }
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let name = match b.kind {
                    BlockKind::Degrevlex => "degrevlex",
                    BlockKind::NegDegrevlex => "negdegrevlex",
                };
                let vars: Vec<String> = b.vars.iter().map(|v| v.to_string()).collect();
                format!("{name}({})", vars.join(","))
            })
            .collect();
        if let Some(w) = &self.weight {
            let w: Vec<String> = w.iter().map(|c| c.to_string()).collect();
            write!(f, "weight({}) > ", w.join(","))?;
        }
        write!(f, "{}", parts.join(" > "))
    }
}
