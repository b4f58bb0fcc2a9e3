//! Search for progressions on which every available coefficient vanishes.

use serde::Serialize;

use super::cache::{ExpansionCache, GeneratingFunction};
use super::families::ProgressionCongruence;
use super::verify_progression;
use crate::error::{Error, Result};
use crate::series::CoefficientRing;

#[derive(Debug, Clone)]
pub struct ScanRequest {
    pub gf: GeneratingFunction,
    pub modulus: u32,
    pub a_max: u64,
    pub order: u64,
    pub min_samples: u64,
    /// First progression index considered.
    pub n_min: u64,
}

impl ScanRequest {
    pub fn new(gf: GeneratingFunction, modulus: u32, a_max: u64, order: u64) -> Self {
        Self { gf, modulus, a_max, order, min_samples: 50, n_min: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ScanHit {
    #[serde(rename = "A")]
    pub step: u64,
    #[serde(rename = "B")]
    pub offset: u64,
    pub samples: u64,
    /// Implied by a reported progression with a smaller step dividing `A`.
    pub subsumed: bool,
}

/// Every `(A, B)` with `A <= a_max`, `B < A`, at least `min_samples`
/// coefficients available, and all of them zero mod `M`. Each candidate is
/// rechecked on twice the budget before it is reported.
pub fn scan_congruences(req: &ScanRequest, cache: &ExpansionCache) -> Result<Vec<ScanHit>> {
    if req.min_samples == 0 {
        return Err(Error::InvalidParameter("min_samples must be at least 1".into()));
    }
    let ring = CoefficientRing::modular(u64::from(req.modulus))?;
    let confirm_order = req.order.checked_mul(2).ok_or_else(|| Error::InvalidParameter("order too large".into()))?;
    let series = cache.get(&req.gf, ring, confirm_order as usize)?;
    let residues = series.residues().expect("modular expansion");

    let mut hits = Vec::new();
    for step in 1..=req.a_max {
        for offset in 0..step {
            let first = step * req.n_min + offset;
            if first > req.order {
                continue;
            }
            let samples = (req.order - offset) / step - req.n_min + 1;
            if samples < req.min_samples {
                continue;
            }
            let vanishes = (req.n_min..req.n_min + samples).all(|n| residues[(step * n + offset) as usize] == 0);
            if !vanishes {
                continue;
            }
            let candidate = ProgressionCongruence::new(req.gf.clone(), step, offset, req.modulus, req.n_min)?;
            if verify_progression(&candidate, confirm_order, cache)?.passed() {
                hits.push(ScanHit { step, offset, samples, subsumed: false });
            }
        }
    }
    hits.sort();
    let reported: Vec<(u64, u64)> = hits.iter().map(|h| (h.step, h.offset)).collect();
    for hit in &mut hits {
        hit.subsumed = reported
            .iter()
            .any(|&(a, b)| a < hit.step && hit.step % a == 0 && hit.offset % a == b);
    }
    Ok(hits)
}
