use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::products::{broken_diamond_gf, expand_spec, ProductSpec};
use crate::series::{CoefficientRing, TruncatedSeries};

/// A generating function the engine knows how to expand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratingFunction {
    /// `B_k(q) = sum Delta_k(n) q^n`.
    BrokenDiamond(u32),
    Product(ProductSpec),
}

impl GeneratingFunction {
    pub fn expand(&self, order: usize, ring: CoefficientRing) -> Result<TruncatedSeries> {
        match self {
            Self::BrokenDiamond(k) => broken_diamond_gf(*k, order, ring),
            Self::Product(spec) => expand_spec(spec, order, ring),
        }
    }
}

impl fmt::Display for GeneratingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BrokenDiamond(k) => write!(f, "delta_{k}"),
            Self::Product(spec) => write!(f, "{spec}"),
        }
    }
}

impl Serialize for GeneratingFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Expansions keyed by generating function and coefficient ring. A request
/// is served by any cached expansion of at least the requested order.
#[derive(Default)]
pub struct ExpansionCache {
    entries: Mutex<HashMap<(GeneratingFunction, CoefficientRing), Arc<TruncatedSeries>>>,
}

impl ExpansionCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// An expansion valid to at least `order`. It may be longer.
    pub fn get(&self, gf: &GeneratingFunction, ring: CoefficientRing, order: usize) -> Result<Arc<TruncatedSeries>> {
        let key = (gf.clone(), ring);
        if let Some(hit) = self.lookup(&key, order) {
            return Ok(hit);
        }
        // Expansions can take seconds; don't hold the lock while computing.
        let series = Arc::new(gf.expand(order, ring)?);
        let mut entries = self.entries.lock().expect("cache lock");
        let slot = entries.entry(key).or_insert_with(|| series.clone());
        if slot.order() < order {
            *slot = series;
        }
        Ok(slot.clone())
    }

    fn lookup(&self, key: &(GeneratingFunction, CoefficientRing), order: usize) -> Option<Arc<TruncatedSeries>> {
        let entries = self.entries.lock().expect("cache lock");
        entries.get(key).filter(|s| s.order() >= order).cloned()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
