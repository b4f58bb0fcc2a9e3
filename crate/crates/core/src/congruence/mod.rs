//! Verification of congruences along arithmetic progressions.

mod cache;
mod families;
mod identities;
mod scan;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

pub use cache::{ExpansionCache, GeneratingFunction};
pub use families::{gen_family, Family, ProgressionCongruence};
pub use identities::{named_identity, verify_identity, IdentityCheck, IdentityReport, Recipe};
pub use scan::{scan_congruences, ScanHit, ScanRequest};

use crate::error::{Error, Result};
use crate::series::{CoefficientRing, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A coefficient value at progression index `n`, i.e. at exponent `A n + B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub n: u64,
    pub exponent: u64,
    /// Residue mod `M`.
    pub value: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub congruence: ProgressionCongruence,
    /// Coefficient budget the generating function was expanded to.
    pub order: u64,
    /// `[n_min, n_max]`.
    pub checked_range: (u64, u64),
    pub samples: u64,
    pub status: Status,
    pub counterexample: Option<Sample>,
    /// Values for `0 <= n < n_min`, outside the claim; reported, never judged.
    pub below_n_min: Vec<Sample>,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn residue_at(series: &TruncatedSeries, exponent: u64) -> u32 {
    let residues = series.residues().expect("modular expansion");
    residues[exponent as usize]
}

/// Checks `c(A n + B) = 0 mod M` for every `n >= n_min` with `A n + B <= order`.
pub fn verify_progression(c: &ProgressionCongruence, order: u64, cache: &ExpansionCache) -> Result<CongruenceReport> {
    let first = c
        .step
        .checked_mul(c.n_min)
        .and_then(|x| x.checked_add(c.offset))
        .ok_or_else(|| Error::InvalidParameter("progression overflows".into()))?;
    if order < first {
        return Err(Error::InsufficientOrder { needed: first as usize, available: order as usize });
    }
    let ring = CoefficientRing::modular(u64::from(c.modulus))?;
    let series = cache.get(&c.gf, ring, order as usize)?;
    let n_max = (order - c.offset) / c.step;

    let sample = |n: u64| {
        let exponent = c.step * n + c.offset;
        Sample { n, exponent, value: residue_at(&series, exponent) }
    };
    let below_n_min = (0..c.n_min).map(sample).collect();
    let counterexample = (c.n_min..=n_max).map(sample).find(|s| s.value != 0);
    Ok(CongruenceReport {
        congruence: c.clone(),
        order,
        checked_range: (c.n_min, n_max),
        samples: n_max - c.n_min + 1,
        status: if counterexample.is_some() { Status::Fail } else { Status::Pass },
        counterexample,
        below_n_min,
    })
}

/// Verifies many progressions. Every needed expansion is computed before the
/// checks fan out; results come back in input order.
pub fn verify_all(
    congruences: &[ProgressionCongruence],
    order: u64,
    cache: &ExpansionCache,
) -> Result<Vec<CongruenceReport>> {
    for c in congruences {
        let ring = CoefficientRing::modular(u64::from(c.modulus))?;
        cache.get(&c.gf, ring, order as usize)?;
    }
    congruences.par_iter().map(|c| verify_progression(c, order, cache)).collect()
}

/// Exact coefficient of a generating function, for diagnostics.
pub fn exact_coefficient(gf: &GeneratingFunction, exponent: usize) -> Result<BigInt> {
    let s = gf.expand(exponent, CoefficientRing::EXACT)?;
    Ok(s.coeff(exponent).expect("within order"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_theorem_instance_passes() {
        let cache = ExpansionCache::new();
        let fam = gen_family(Family::MainTheorem { l: 1 }).unwrap();
        let report = verify_progression(&fam[0], 20_000, &cache).unwrap();
        assert!(report.passed());
        assert_eq!(report.samples, (20_000 - 16) / 27 + 1);
        assert_eq!(report.checked_range, (0, (20_000 - 16) / 27));
    }

    #[test]
    fn perturbed_progression_fails_with_counterexample() {
        let cache = ExpansionCache::new();
        let c = ProgressionCongruence::new(GeneratingFunction::BrokenDiamond(2), 27, 17, 3, 0).unwrap();
        let report = verify_progression(&c, 1000, &cache).unwrap();
        assert_eq!(report.status, Status::Fail);
        let ce = report.counterexample.clone().unwrap();
        // Independent check of the counterexample in exact arithmetic.
        let exact = exact_coefficient(&c.gf, ce.exponent as usize).unwrap();
        assert_ne!(exact % 3, BigInt::from(0));
        assert_eq!(ce.exponent, 27 * ce.n + 17);
        // Every earlier sample really was divisible by 3.
        let b2 = GeneratingFunction::BrokenDiamond(2).expand(ce.exponent as usize, CoefficientRing::EXACT).unwrap();
        for n in 0..ce.n {
            assert_eq!(b2.coeff((27 * n + 17) as usize).unwrap() % 3, BigInt::from(0));
        }
    }

    #[test]
    fn budget_must_cover_first_sample() {
        let cache = ExpansionCache::new();
        let c = ProgressionCongruence::new(GeneratingFunction::BrokenDiamond(1), 2, 1, 3, 3).unwrap();
        assert!(matches!(verify_progression(&c, 6, &cache), Err(Error::InsufficientOrder { needed: 7, .. })));
        let ok = verify_progression(&c, 7, &cache).unwrap();
        assert_eq!(ok.samples, 1);
        assert_eq!(ok.below_n_min.len(), 3);
    }

    #[test]
    fn verify_all_preserves_order() {
        let cache = ExpansionCache::new();
        let fam = gen_family(Family::Fifteen).unwrap();
        let reports = verify_all(&fam, 3000, &cache).unwrap();
        let got: Vec<_> = reports.iter().map(|r| r.congruence.pair()).collect();
        assert_eq!(got, vec![(15, 1), (15, 7), (15, 10), (15, 13)]);
        assert!(reports.iter().all(CongruenceReport::passed));
    }
}
