//! Infinite q-products and their truncated expansions.
//!
//! A [`ProductSpec`] describes `scalar * q^s * prod (±q^d; q^d)_inf^e`. Every
//! `(-q^d; q^d)_inf` is rewritten as `(q^{2d}; q^{2d})_inf / (q^d; q^d)_inf`
//! before expansion, so only sparse Euler products are ever multiplied or
//! divided.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::{CoefficientRing, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorSign {
    /// `(q^d; q^d)_inf`
    Plain,
    /// `(-q^d; q^d)_inf`
    Negated,
}

/// One factor `(±q^d; q^d)_inf^e` with `d >= 1`, `e != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductFactor {
    sign: FactorSign,
    step: u32,
    exponent: i32,
}

impl ProductFactor {
    pub fn new(sign: FactorSign, step: u32, exponent: i32) -> Result<Self> {
        if step == 0 {
            return Err(Error::InvalidParameter("product step must be at least 1".into()));
        }
        if exponent == 0 {
            return Err(Error::InvalidParameter("product exponent must be nonzero".into()));
        }
        Ok(Self { sign, step, exponent })
    }

    pub fn plain(step: u32, exponent: i32) -> Result<Self> {
        Self::new(FactorSign::Plain, step, exponent)
    }

    pub fn negated(step: u32, exponent: i32) -> Result<Self> {
        Self::new(FactorSign::Negated, step, exponent)
    }

    pub fn sign(&self) -> FactorSign {
        self.sign
    }

    pub fn step(&self) -> u32 {
        self.step
    }

    pub fn exponent(&self) -> i32 {
        self.exponent
    }
}

impl fmt::Display for ProductFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.sign {
            FactorSign::Plain => 'P',
            FactorSign::Negated => 'M',
        };
        write!(f, "{name}({})^{}", self.step, self.exponent)
    }
}

/// `scalar * q^qpower * prod factors`. Text form:
/// `scalar * q^s * P(d)^e * M(d)^e * ...`, where `P(d)` is `(q^d;q^d)_inf`
/// and `M(d)` is `(-q^d;q^d)_inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductSpec {
    pub scalar: i64,
    pub qpower: usize,
    pub factors: Vec<ProductFactor>,
}

impl ProductSpec {
    pub fn monomial(scalar: i64, qpower: usize) -> Self {
        Self { scalar, qpower, factors: Vec::new() }
    }

    pub fn with_factor(mut self, factor: ProductFactor) -> Self {
        self.factors.push(factor);
        self
    }

    /// `(-q;q)_inf / ((q;q)_inf^2 (-q^{2k+1};q^{2k+1})_inf)`, as written.
    pub fn broken_diamond(k: u32) -> Result<Self> {
        check_k(k)?;
        Ok(Self::monomial(1, 0)
            .with_factor(ProductFactor::negated(1, 1)?)
            .with_factor(ProductFactor::plain(1, -2)?)
            .with_factor(ProductFactor::negated(2 * k + 1, -1)?))
    }

    /// Product form of `psi(q^d)`: `(q^{2d};q^{2d})_inf^2 / (q^d;q^d)_inf`.
    pub fn psi(d: u32) -> Result<Self> {
        Ok(Self::monomial(1, 0)
            .with_factor(ProductFactor::plain(2 * d, 2)?)
            .with_factor(ProductFactor::plain(d, -1)?))
    }

    /// Net exponent of each `(q^d;q^d)_inf` after rewriting the negated
    /// factors. Steps whose exponents cancel are dropped.
    pub fn euler_exponents(&self) -> BTreeMap<u32, i64> {
        let mut net: BTreeMap<u32, i64> = BTreeMap::new();
        for f in &self.factors {
            let e = i64::from(f.exponent);
            match f.sign {
                FactorSign::Plain => *net.entry(f.step).or_default() += e,
                FactorSign::Negated => {
                    *net.entry(2 * f.step).or_default() += e;
                    *net.entry(f.step).or_default() -= e;
                }
            }
        }
        net.retain(|_, e| *e != 0);
        net
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * q^{}", self.scalar, self.qpower)?;
        for factor in &self.factors {
            write!(f, " * {factor}")?;
        }
        Ok(())
    }
}

impl FromStr for ProductSpec {
    type Err = Error;

    /// Parses `*`-separated terms: an integer scalar, `q` or `q^s`,
    /// `P(d)^e`, `M(d)^e`, and the shorthand `psi(d)^e` for the product
    /// form of `psi(q^d)`. `(d)` and `^e` default to 1 when omitted.
    /// Scalars and q-powers multiply when repeated.
    fn from_str(text: &str) -> Result<Self> {
        let mut spec = ProductSpec::monomial(1, 0);
        let mut saw_term = false;
        for raw in text.split('*') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {text:?}")));
            }
            saw_term = true;
            if let Ok(c) = term.parse::<i64>() {
                spec.scalar = spec
                    .scalar
                    .checked_mul(c)
                    .ok_or_else(|| Error::Parse("scalar overflows i64".into()))?;
                continue;
            }
            let (base, exponent) = match term.split_once('^') {
                Some((b, e)) => (b.trim(), parse_int::<i64>(e.trim(), term)?),
                None => (term, 1),
            };
            if base == "q" {
                let s = usize::try_from(exponent)
                    .map_err(|_| Error::Parse(format!("negative q-power in {term:?}")))?;
                spec.qpower += s;
                continue;
            }
            let (name, step) = match base.split_once('(') {
                Some((name, rest)) => {
                    let inner = rest
                        .strip_suffix(')')
                        .ok_or_else(|| Error::Parse(format!("unclosed parenthesis in {term:?}")))?;
                    (name.trim(), parse_int::<u32>(inner.trim(), term)?)
                }
                None => (base, 1),
            };
            let exponent = i32::try_from(exponent).map_err(|_| Error::Parse(format!("exponent too large in {term:?}")))?;
            match name {
                "P" => spec.factors.push(ProductFactor::plain(step, exponent)?),
                "M" => spec.factors.push(ProductFactor::negated(step, exponent)?),
                "psi" => {
                    let psi = ProductSpec::psi(step)?;
                    for f in psi.factors {
                        spec.factors.push(ProductFactor::plain(f.step, f.exponent * exponent)?);
                    }
                }
                _ => return Err(Error::Parse(format!("unknown term {term:?}"))),
            }
        }
        if !saw_term {
            return Err(Error::Parse("empty product".into()));
        }
        Ok(spec)
    }
}

fn parse_int<T: FromStr>(s: &str, term: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    s.parse::<T>().map_err(|e| Error::Parse(format!("bad integer {s:?} in {term:?}: {e}")))
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    Ok(())
}

/// `(q^d; q^d)_inf` up to `q^order` via the pentagonal number theorem.
pub fn pochhammer(d: usize, order: usize, ring: CoefficientRing) -> TruncatedSeries {
    assert!(d >= 1, "pochhammer step must be positive");
    let mut terms = vec![(0usize, 1i64)];
    for k in 1usize.. {
        let lower = d * (k * (3 * k - 1) / 2);
        if lower > order {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        terms.push((lower, sign));
        let upper = d * (k * (3 * k + 1) / 2);
        if upper <= order {
            terms.push((upper, sign));
        }
    }
    TruncatedSeries::from_terms(terms, order, ring)
}

/// `psi(q^d) = sum_{n >= 0} q^{d n (n+1) / 2}` up to `q^order`.
pub fn psi_series(d: usize, order: usize, ring: CoefficientRing) -> TruncatedSeries {
    assert!(d >= 1, "psi step must be positive");
    let terms = (0usize..)
        .map(|n| d * (n * (n + 1) / 2))
        .take_while(|&e| e <= order)
        .map(|e| (e, 1));
    TruncatedSeries::from_terms(terms, order, ring)
}

/// Expands a product specification to `q^order`.
pub fn expand_spec(spec: &ProductSpec, order: usize, ring: CoefficientRing) -> Result<TruncatedSeries> {
    let Some(core_order) = order.checked_sub(spec.qpower) else {
        return Ok(TruncatedSeries::zero(order, ring));
    };
    let exponents = spec.euler_exponents();
    let mut acc = TruncatedSeries::one(core_order, ring);
    for (&d, &e) in exponents.iter().filter(|(_, e)| **e > 0) {
        let p = pochhammer(d as usize, core_order, ring);
        for _ in 0..e {
            acc = acc.mul(&p)?;
        }
    }
    for (&d, &e) in exponents.iter().filter(|(_, e)| **e < 0) {
        let p = pochhammer(d as usize, core_order, ring);
        let times = e.unsigned_abs();
        if times == 1 {
            acc = acc.div(&p)?;
            continue;
        }
        // Powers like (q;q)^3 can be much sparser than the factor repeated;
        // divide once by the power whenever that costs less.
        let mut power = p.clone();
        for _ in 1..times {
            power = power.mul(&p)?;
        }
        if (power.nonzero_count() as u64) < times * p.nonzero_count() as u64 {
            acc = acc.div(&power)?;
        } else {
            for _ in 0..times {
                acc = acc.div(&p)?;
            }
        }
    }
    Ok(acc.scale(spec.scalar).shift(spec.qpower))
}

/// `sum Delta_k(n) q^n` up to `q^order`, expanded from the simplified form
/// `(q^2;q^2)(q^{2k+1};q^{2k+1}) / ((q;q)^3 (q^{4k+2};q^{4k+2}))`.
pub fn broken_diamond_gf(k: u32, order: usize, ring: CoefficientRing) -> Result<TruncatedSeries> {
    check_k(k)?;
    let spec = ProductSpec::monomial(1, 0)
        .with_factor(ProductFactor::plain(2, 1)?)
        .with_factor(ProductFactor::plain(2 * k + 1, 1)?)
        .with_factor(ProductFactor::plain(1, -3)?)
        .with_factor(ProductFactor::plain(4 * k + 2, -1)?);
    expand_spec(&spec, order, ring)
}

/// The series `A(q)` with `psi(q) = A(q^3) + q psi(q^9)`, i.e. the
/// `0 mod 3` part of `psi(q)` reindexed.
pub fn dissection_a(order: usize, ring: CoefficientRing) -> TruncatedSeries {
    psi_series(1, 3 * order, ring).dissect(3, 0).expect("valid dissection")
}
