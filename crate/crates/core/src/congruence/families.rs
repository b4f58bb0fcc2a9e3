//! Known congruence families, instantiated as concrete progressions.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::cache::GeneratingFunction;
use crate::error::{Error, Result};
use crate::operators::is_prime;

/// The claim `c(step * n + offset) = 0 (mod modulus)` for all `n >= n_min`,
/// where `c` are the coefficients of `gf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProgressionCongruence {
    pub gf: GeneratingFunction,
    #[serde(rename = "A")]
    pub step: u64,
    #[serde(rename = "B")]
    pub offset: u64,
    #[serde(rename = "M")]
    pub modulus: u32,
    pub n_min: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ProgressionCongruence {
    pub fn new(gf: GeneratingFunction, step: u64, offset: u64, modulus: u32, n_min: u64) -> Result<Self> {
        if step == 0 {
            return Err(Error::InvalidParameter("progression step A must be positive".into()));
        }
        if offset >= step {
            return Err(Error::InvalidParameter(format!("offset B={offset} must be below step A={step}")));
        }
        if modulus < 2 {
            return Err(Error::InvalidParameter(format!("modulus M={modulus} must be at least 2")));
        }
        Ok(Self { gf, step, offset, modulus, n_min, note: None })
    }

    fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }

    /// `(A, B)`.
    pub fn pair(&self) -> (u64, u64) {
        (self.step, self.offset)
    }
}

impl fmt::Display for ProgressionCongruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}n+{}) = 0 mod {}", self.gf, self.step, self.offset, self.modulus)?;
        if self.n_min > 0 {
            write!(f, " (n >= {})", self.n_min)?;
        }
        Ok(())
    }
}

/// A named family together with its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `Delta_2(3^{2l+1} n + 3/4 (3^{2l} - 1) + c 3^{2l} + 1) = 0 mod 3`, c = 1, 2.
    MainTheorem { l: u32 },
    /// `Delta_2(5^{l+1} n + 3/4 (5^l - 1) + c 5^l + 1) = 0 mod 5`, c = 2, 4.
    Chan { l: u32 },
    /// `Delta_2(3 p^2 n + 3/4 (p (4k+3) - 1) + 1) = 0 mod 3` for p = 3 mod 4.
    RaduSellers { p: u64 },
    /// `Delta_2(5 p^2 n + 4p - (p-1)/4) = 0 mod 5` for p = 13, 17 mod 20.
    PauleRadu { p: u64 },
    /// `Delta_2(15n + r) = 0 mod 3`, r in {1, 7, 10, 13}.
    Fifteen,
    /// `Delta_1(4n + 2), Delta_1(4n + 3), Delta_2(10n + 2), Delta_2(10n + 6) = 0 mod 2`, n >= 1.
    HsMod2,
    /// `Delta_1(2n + 1) = 0 mod 3`, n >= 3.
    ApDelta1,
}

impl Family {
    /// Builds a family from a name and a `key=value` parameter string such
    /// as `"l=2"` or `"p=13"`.
    pub fn parse(name: &str, params: &str) -> Result<Self> {
        let name = name.trim().replace('-', "_").to_ascii_lowercase();
        let param = |key: &str| -> Result<u64> {
            for part in params.split([',', ' ']).filter(|s| !s.is_empty()) {
                if let Some((k, v)) = part.split_once('=') {
                    if k.trim() == key {
                        return v.trim().parse().map_err(|e| Error::Parse(format!("bad value for {key}: {e}")));
                    }
                }
            }
            Err(Error::InvalidParameter(format!("family {name} needs parameter {key}=<value>")))
        };
        let small = |v: u64| u32::try_from(v).map_err(|_| Error::InvalidParameter(format!("l={v} is too large")));
        Ok(match name.as_str() {
            "main_theorem" => Self::MainTheorem { l: small(param("l")?)? },
            "chan" => Self::Chan { l: small(param("l")?)? },
            "radu_sellers" => Self::RaduSellers { p: param("p")? },
            "paule_radu" => Self::PauleRadu { p: param("p")? },
            "fifteen" => Self::Fifteen,
            "hs_mod2" => Self::HsMod2,
            "ap_delta1" => Self::ApDelta1,
            other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `name` or `name:key=value`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        Self::parse(name, params)
    }
}

fn overflow() -> Error {
    Error::InvalidParameter("family parameters overflow 64-bit progressions".into())
}

fn pow(base: u64, e: u32) -> Result<u64> {
    base.checked_pow(e).ok_or_else(overflow)
}

/// `3x/4`, which must be an integer.
fn three_quarters(x: u64) -> Result<u64> {
    if !x.is_multiple_of(4) {
        return Err(Error::InvalidParameter(format!("3/4 * {x} is not an integer")));
    }
    (x / 4).checked_mul(3).ok_or_else(overflow)
}

fn sum(terms: &[u64]) -> Result<u64> {
    terms.iter().try_fold(0u64, |acc, &t| acc.checked_add(t)).ok_or_else(overflow)
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or_else(overflow)
}

fn delta(k: u32) -> GeneratingFunction {
    GeneratingFunction::BrokenDiamond(k)
}

/// Expands a family into its concrete progressions.
pub fn gen_family(family: Family) -> Result<Vec<ProgressionCongruence>> {
    match family {
        Family::MainTheorem { l } => {
            if l == 0 {
                return Err(Error::InvalidParameter("main_theorem needs l >= 1".into()));
            }
            let even = pow(3, 2 * l)?;
            let step = mul(3, even)?;
            let base = three_quarters(even - 1)?;
            [1, 2]
                .iter()
                .map(|&c| ProgressionCongruence::new(delta(2), step, sum(&[base, mul(c, even)?, 1])?, 3, 0))
                .collect()
        }
        Family::Chan { l } => {
            if l == 0 {
                return Err(Error::InvalidParameter("chan needs l >= 1".into()));
            }
            let pl = pow(5, l)?;
            let step = mul(5, pl)?;
            let base = three_quarters(pl - 1)?;
            [2, 4]
                .iter()
                .map(|&c| {
                    ProgressionCongruence::new(delta(2), step, sum(&[base, mul(c, pl)?, 1])?, 5, 0)
                        .map(|pc| pc.with_note("step read as 5^(l+1)*n; the n is missing from the printed statement"))
                })
                .collect()
        }
        Family::RaduSellers { p } => {
            if !is_prime(p) {
                return Err(Error::InvalidParameter(format!("radu_sellers needs a prime, {p} is not prime")));
            }
            if p % 4 != 3 {
                return Err(Error::InvalidParameter(format!("radu_sellers needs p = 3 mod 4, got p = {p}")));
            }
            let step = mul(3, mul(p, p)?)?;
            let skip = (p - 3) / 4;
            (0..p)
                .filter(|&k| k != skip)
                .map(|k| {
                    let inner = mul(p, sum(&[mul(4, k)?, 3])?)? - 1;
                    ProgressionCongruence::new(delta(2), step, sum(&[three_quarters(inner)?, 1])?, 3, 0)
                })
                .collect()
        }
        Family::PauleRadu { p } => {
            if !is_prime(p) {
                return Err(Error::InvalidParameter(format!("paule_radu needs a prime, {p} is not prime")));
            }
            if p % 20 != 13 && p % 20 != 17 {
                return Err(Error::InvalidParameter(format!("paule_radu needs p = 13 or 17 mod 20, got p = {p}")));
            }
            let step = mul(5, mul(p, p)?)?;
            let offset = mul(4, p)? - (p - 1) / 4;
            Ok(vec![ProgressionCongruence::new(delta(2), step, offset, 5, 0)?])
        }
        Family::Fifteen => [1, 7, 10, 13]
            .iter()
            .map(|&b| ProgressionCongruence::new(delta(2), 15, b, 3, 0))
            .collect(),
        Family::HsMod2 => Ok(vec![
            ProgressionCongruence::new(delta(1), 4, 2, 2, 1)?,
            ProgressionCongruence::new(delta(1), 4, 3, 2, 1)?,
            ProgressionCongruence::new(delta(2), 10, 2, 2, 1)?,
            ProgressionCongruence::new(delta(2), 10, 6, 2, 1)?,
        ]),
        Family::ApDelta1 => Ok(vec![ProgressionCongruence::new(delta(1), 2, 1, 3, 3)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(f: Family) -> Vec<(u64, u64)> {
        gen_family(f).unwrap().iter().map(|c| c.pair()).collect()
    }

    #[test]
    fn main_theorem_instances() {
        assert_eq!(pairs(Family::MainTheorem { l: 1 }), vec![(27, 16), (27, 25)]);
        assert_eq!(pairs(Family::MainTheorem { l: 2 }), vec![(243, 142), (243, 223)]);
        assert_eq!(pairs(Family::MainTheorem { l: 3 }), vec![(2187, 1276), (2187, 2005)]);
        assert!(gen_family(Family::MainTheorem { l: 0 }).is_err());
        assert!(gen_family(Family::MainTheorem { l: 30 }).is_err());
    }

    #[test]
    fn chan_instances() {
        let fam = gen_family(Family::Chan { l: 1 }).unwrap();
        assert_eq!(fam.iter().map(|c| c.pair()).collect::<Vec<_>>(), vec![(25, 14), (25, 24)]);
        assert!(fam.iter().all(|c| c.modulus == 5 && c.note.is_some()));
        // 3/4 (25 - 1) + 2*25 + 1 = 69, + 4*25 = 119.
        assert_eq!(pairs(Family::Chan { l: 2 }), vec![(125, 69), (125, 119)]);
    }

    #[test]
    fn radu_sellers_instances() {
        assert_eq!(pairs(Family::RaduSellers { p: 3 }), pairs(Family::MainTheorem { l: 1 }));
        let seven = pairs(Family::RaduSellers { p: 7 });
        assert_eq!(seven.len(), 6);
        // k = 0: 3/4 (7*3 - 1) + 1 = 16; k = 1 is skipped.
        assert_eq!(seven[0], (147, 16));
        assert!(seven.iter().all(|&(a, b)| a == 147 && b < a));
        assert!(matches!(gen_family(Family::RaduSellers { p: 5 }), Err(Error::InvalidParameter(m)) if m.contains("3 mod 4")));
        assert!(matches!(gen_family(Family::RaduSellers { p: 15 }), Err(Error::InvalidParameter(m)) if m.contains("prime")));
    }

    #[test]
    fn paule_radu_instances() {
        assert_eq!(pairs(Family::PauleRadu { p: 13 }), vec![(845, 49)]);
        assert_eq!(pairs(Family::PauleRadu { p: 17 }), vec![(1445, 64)]);
        assert!(gen_family(Family::PauleRadu { p: 11 }).is_err());
        assert!(gen_family(Family::PauleRadu { p: 33 }).is_err());
    }

    #[test]
    fn fixed_families() {
        assert_eq!(pairs(Family::Fifteen), vec![(15, 1), (15, 7), (15, 10), (15, 13)]);
        let hs = gen_family(Family::HsMod2).unwrap();
        assert!(hs.iter().all(|c| c.n_min == 1 && c.modulus == 2));
        let ap = gen_family(Family::ApDelta1).unwrap();
        assert_eq!((ap[0].step, ap[0].offset, ap[0].modulus, ap[0].n_min), (2, 1, 3, 3));
        assert_eq!(ap[0].gf, GeneratingFunction::BrokenDiamond(1));
    }

    #[test]
    fn parsing() {
        assert_eq!(Family::parse("main_theorem", "l=2").unwrap(), Family::MainTheorem { l: 2 });
        assert_eq!(Family::parse("paule-radu", "p=13").unwrap(), Family::PauleRadu { p: 13 });
        assert_eq!("radu_sellers:p=7".parse::<Family>().unwrap(), Family::RaduSellers { p: 7 });
        assert_eq!("fifteen".parse::<Family>().unwrap(), Family::Fifteen);
        assert!(Family::parse("chan", "").is_err());
        assert!(Family::parse("chan", "l=x").is_err());
        assert!(Family::parse("nope", "").is_err());
    }

    #[test]
    fn progression_validation() {
        assert!(ProgressionCongruence::new(delta(2), 1, 0, 1, 0).is_err());
        assert!(ProgressionCongruence::new(delta(2), 5, 5, 3, 0).is_err());
        assert!(ProgressionCongruence::new(delta(2), 0, 0, 3, 0).is_err());
        assert_eq!(three_quarters(80).unwrap(), 60);
        assert!(three_quarters(6).is_err());
    }
}
