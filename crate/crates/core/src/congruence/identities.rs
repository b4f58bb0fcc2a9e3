//! Series identities checked coefficientwise at finite order.

use serde::Serialize;

use super::cache::{ExpansionCache, GeneratingFunction};
use crate::error::{Error, Result};
use crate::operators::{apply_u, apply_v};
use crate::products::{expand_spec, psi_series, ProductSpec};
use crate::series::{CoefficientRing, TruncatedSeries};

/// How to build one side of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    Gf(GeneratingFunction),
    /// `sum c(step n + offset) q^n` for the coefficients `c` of `gf`.
    Progression { gf: GeneratingFunction, step: usize, offset: usize },
    Product(ProductSpec),
    /// `psi(q^d)` from its theta sum.
    Psi(usize),
    Mul(Box<Recipe>, Box<Recipe>),
    Shift(Box<Recipe>, usize),
    Scale(Box<Recipe>, i64),
    Pow(Box<Recipe>, i64),
    U(Box<Recipe>, usize),
    V(Box<Recipe>, usize),
}

impl Recipe {
    pub fn times(self, other: Recipe) -> Self {
        Self::Mul(Box::new(self), Box::new(other))
    }

    pub fn shift(self, s: usize) -> Self {
        Self::Shift(Box::new(self), s)
    }

    pub fn scale(self, c: i64) -> Self {
        Self::Scale(Box::new(self), c)
    }

    pub fn pow(self, e: i64) -> Self {
        Self::Pow(Box::new(self), e)
    }

    pub fn u(self, d: usize) -> Self {
        Self::U(Box::new(self), d)
    }

    pub fn v(self, d: usize) -> Self {
        Self::V(Box::new(self), d)
    }

    /// Evaluates to exactly `order`, asking each input for the order it
    /// needs to make that possible.
    pub fn evaluate(&self, order: usize, ring: CoefficientRing, cache: &ExpansionCache) -> Result<TruncatedSeries> {
        let series = match self {
            Self::Gf(gf) => cache.get(gf, ring, order)?.truncate(order)?,
            Self::Progression { gf, step, offset } => {
                let needed = step * order + offset;
                cache.get(gf, ring, needed)?.truncate(needed)?.dissect(*step, *offset)?
            }
            Self::Product(spec) => expand_spec(spec, order, ring)?,
            Self::Psi(d) => psi_series(*d, order, ring),
            Self::Mul(a, b) => a.evaluate(order, ring, cache)?.mul(&b.evaluate(order, ring, cache)?)?,
            Self::Shift(a, s) => match order.checked_sub(*s) {
                Some(inner) => a.evaluate(inner, ring, cache)?.shift(*s),
                None => TruncatedSeries::zero(order, ring),
            },
            Self::Scale(a, c) => a.evaluate(order, ring, cache)?.scale(*c),
            Self::Pow(a, e) => a.evaluate(order, ring, cache)?.pow(*e)?,
            Self::U(a, d) => apply_u(&a.evaluate(d * order, ring, cache)?, *d)?,
            Self::V(a, d) => apply_v(&a.evaluate(order / d.max(&1), ring, cache)?, *d)?,
        };
        series.truncate(order)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub description: String,
    pub lhs: Recipe,
    pub rhs: Recipe,
    pub modulus: u32,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub description: String,
    pub modulus: u32,
    pub order: usize,
    pub equal: bool,
    pub first_mismatch: Option<usize>,
}

fn delta2() -> GeneratingFunction {
    GeneratingFunction::BrokenDiamond(2)
}

/// `2 q^3 psi(q^15)^2`.
fn two_q3_psi15_squared() -> Recipe {
    Recipe::Psi(15).pow(2).shift(3).scale(2)
}

/// Offset `3/4 (9^l - 1) + 1` of the `9^l`-dissection.
fn final_offset(l: u32) -> Result<(usize, usize)> {
    let step = 9usize.checked_pow(l).ok_or_else(|| Error::InvalidParameter(format!("l={l} too large")))?;
    Ok((step, 3 * (step - 1) / 4 + 1))
}

/// The identities behind the mod 3 families, by name: `radu-base`,
/// `lemma31`, `nine-generate`, `eightyone-generate`, `final:<l>`, `cube`.
pub fn named_identity(name: &str, order: usize) -> Result<IdentityCheck> {
    let p = |s: &str| s.parse::<ProductSpec>().expect("built-in spec");
    let (description, lhs, rhs) = match name {
        "radu-base" => (
            "sum D2(3n+1) q^n = 2q (q^10;q^10)^4 / (q^5;q^5)^2 mod 3".to_string(),
            Recipe::Progression { gf: delta2(), step: 3, offset: 1 },
            Recipe::Product(p("2 * q^1 * P(10)^4 * P(5)^-2")),
        ),
        "lemma31" => (
            "psi(q^15)^2 sum D2(3n+1) q^(n+4) = 2 q^5 psi(q^5)^8 mod 3".to_string(),
            Recipe::Psi(15).pow(2).times(Recipe::Progression { gf: delta2(), step: 3, offset: 1 }.shift(4)),
            Recipe::Psi(5).pow(8).shift(5).scale(2),
        ),
        "nine-generate" => (
            "sum D2(9n+7) q^n = 2 q^3 psi(q^15)^2 mod 3".to_string(),
            Recipe::Progression { gf: delta2(), step: 9, offset: 7 },
            two_q3_psi15_squared(),
        ),
        "eightyone-generate" => (
            "sum D2(81n+61) q^n = 2 q^3 psi(q^15)^2 mod 3".to_string(),
            Recipe::Progression { gf: delta2(), step: 81, offset: 61 },
            two_q3_psi15_squared(),
        ),
        "cube" => (
            "(q;q)^3 / (q^3;q^3) = 1 mod 3".to_string(),
            Recipe::Product(p("P(1)^3 * P(3)^-1")),
            Recipe::Product(ProductSpec::monomial(1, 0)),
        ),
        other => {
            let l = other
                .strip_prefix("final:")
                .ok_or_else(|| Error::InvalidParameter(format!("unknown identity {other:?}")))?
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("bad l in {other:?}: {e}")))?;
            if l == 0 {
                return Err(Error::InvalidParameter("final:<l> needs l >= 1".into()));
            }
            let (step, offset) = final_offset(l)?;
            (
                format!("sum D2({step}n+{offset}) q^n = 2 q^3 psi(q^15)^2 mod 3"),
                Recipe::Progression { gf: delta2(), step, offset },
                two_q3_psi15_squared(),
            )
        }
    };
    Ok(IdentityCheck { name: name.to_string(), description, lhs, rhs, modulus: 3, order })
}

/// Evaluates both sides mod `M` to the check's order and compares them.
pub fn verify_identity(check: &IdentityCheck, cache: &ExpansionCache) -> Result<IdentityReport> {
    let ring = CoefficientRing::modular(u64::from(check.modulus))?;
    let lhs = check.lhs.evaluate(check.order, ring, cache)?;
    let rhs = check.rhs.evaluate(check.order, ring, cache)?;
    let cmp = lhs.eq_up_to(&rhs, check.order)?;
    Ok(IdentityReport {
        name: check.name.clone(),
        description: check.description.clone(),
        modulus: check.modulus,
        order: check.order,
        equal: cmp.equal,
        first_mismatch: cmp.first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_identity_passes() {
        let cache = ExpansionCache::new();
        let r = Recipe::Psi(5).pow(8).shift(5).scale(2);
        let check = IdentityCheck {
            name: "self".into(),
            description: String::new(),
            lhs: r.clone(),
            rhs: r,
            modulus: 3,
            order: 300,
        };
        assert!(verify_identity(&check, &cache).unwrap().equal);
    }

    #[test]
    fn small_order_identities() {
        let cache = ExpansionCache::new();
        for name in ["radu-base", "lemma31", "nine-generate", "eightyone-generate", "final:1", "final:2", "cube"] {
            let report = verify_identity(&named_identity(name, 200).unwrap(), &cache).unwrap();
            assert!(report.equal, "{name}: mismatch at {:?}", report.first_mismatch);
        }
    }

    #[test]
    fn wrong_identity_is_caught() {
        let cache = ExpansionCache::new();
        let check = IdentityCheck {
            name: "bad".into(),
            description: String::new(),
            lhs: Recipe::Progression { gf: delta2(), step: 9, offset: 8 },
            rhs: two_q3_psi15_squared(),
            modulus: 3,
            order: 200,
        };
        let report = verify_identity(&check, &cache).unwrap();
        assert!(!report.equal);
        assert!(report.first_mismatch.is_some());
    }

    #[test]
    fn recipe_orders() {
        let cache = ExpansionCache::new();
        let ring = CoefficientRing::modular(3).unwrap();
        let psi = Recipe::Psi(1);
        assert_eq!(psi.clone().v(5).evaluate(50, ring, &cache).unwrap(), psi_series(5, 50, ring));
        assert_eq!(psi.clone().v(5).u(5).evaluate(40, ring, &cache).unwrap(), psi_series(1, 40, ring));
        assert!(Recipe::Psi(1).shift(10).evaluate(5, ring, &cache).unwrap().is_zero());
        assert_eq!(final_offset(1).unwrap(), (9, 7));
        assert_eq!(final_offset(2).unwrap(), (81, 61));
        assert!(named_identity("final:0", 10).is_err());
        assert!(named_identity("lemma99", 10).is_err());
    }
}
