//! Truncated formal power series in `q`.
//!
//! A [`TruncatedSeries`] stores the coefficients of `q^0 ..= q^N` densely and
//! remembers `N`, its validity order. Operations never read beyond that
//! order; anything that would need to is an [`Error::InsufficientOrder`].
//! Coefficients live either in `Z` (arbitrary precision) or in `Z/m` for
//! `2 <= m < 2^31`.

mod csv_io;
pub(crate) mod kernel;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use csv_io::{read_csv, write_csv};

const MAX_MODULUS: u64 = 1 << 31;

/// The ring the coefficients of a series live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoefficientRing {
    modulus: u32,
}

impl CoefficientRing {
    /// Exact arbitrary-precision integers.
    pub const EXACT: CoefficientRing = CoefficientRing { modulus: 0 };

    /// `0` selects exact integers, anything in `[2, 2^31)` integers mod `m`.
    pub fn new(modulus: u64) -> Result<Self> {
        match modulus {
            0 => Ok(Self::EXACT),
            m if (2..MAX_MODULUS).contains(&m) => Ok(Self { modulus: m as u32 }),
            m => Err(Error::InvalidModulus(m)),
        }
    }

    pub fn modular(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidModulus(0));
        }
        Self::new(m)
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_exact(self) -> bool {
        self.modulus == 0
    }

    /// Canonical residue of `value` in `[0, m)`.
    pub(crate) fn residue(self, value: &BigInt) -> u32 {
        debug_assert!(!self.is_exact());
        value
            .mod_floor(&BigInt::from(self.modulus))
            .to_u32()
            .expect("residue fits in u32")
    }

    pub(crate) fn residue_i64(self, value: i64) -> u32 {
        debug_assert!(!self.is_exact());
        value.rem_euclid(i64::from(self.modulus)) as u32
    }

    /// Whether `value` is a unit of the ring.
    pub fn is_unit(self, value: &BigInt) -> bool {
        if self.is_exact() {
            value.abs().is_one()
        } else {
            BigInt::from(self.residue(value)).gcd(&BigInt::from(self.modulus)).is_one()
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "Z")
        } else {
            write!(f, "Z/{}", self.modulus)
        }
    }
}

/// Inverse of `a` mod `m`, if it exists.
pub(crate) fn inverse_mod(a: u32, m: u32) -> Option<u32> {
    let g = i64::from(a).extended_gcd(&i64::from(m));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(i64::from(m)) as u32)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Coeffs {
    Exact(Vec<BigInt>),
    Residues(Vec<u32>),
}

/// A formal power series known up to and including `q^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    ring: CoefficientRing,
    coeffs: Coeffs,
}

/// Outcome of [`TruncatedSeries::eq_up_to`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Comparison {
    pub equal: bool,
    pub first_mismatch: Option<usize>,
}

impl TruncatedSeries {
    pub fn zero(order: usize, ring: CoefficientRing) -> Self {
        let coeffs = if ring.is_exact() {
            Coeffs::Exact(vec![BigInt::zero(); order + 1])
        } else {
            Coeffs::Residues(vec![0; order + 1])
        };
        Self { ring, coeffs }
    }

    pub fn one(order: usize, ring: CoefficientRing) -> Self {
        Self::monomial(0, 1, order, ring)
    }

    /// `c * q^exponent`, truncated at `order`.
    pub fn monomial(exponent: usize, c: i64, order: usize, ring: CoefficientRing) -> Self {
        Self::from_terms([(exponent, c)], order, ring)
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Terms beyond
    /// `order` are dropped; repeated exponents are summed.
    pub fn from_terms<I, T>(terms: I, order: usize, ring: CoefficientRing) -> Self
    where
        I: IntoIterator<Item = (usize, T)>,
        T: Into<BigInt>,
    {
        let mut out = Self::zero(order, ring);
        for (e, c) in terms {
            if e > order {
                continue;
            }
            let c: BigInt = c.into();
            match &mut out.coeffs {
                Coeffs::Exact(v) => v[e] += c,
                Coeffs::Residues(v) => {
                    let m = u64::from(ring.modulus);
                    v[e] = ((u64::from(v[e]) + u64::from(ring.residue(&c))) % m) as u32;
                }
            }
        }
        out
    }

    /// Series with the given integer coefficients, reduced into `ring`.
    pub fn from_coefficients(coeffs: Vec<BigInt>, ring: CoefficientRing) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("a series needs at least one coefficient".into()));
        }
        Ok(if ring.is_exact() {
            Self { ring, coeffs: Coeffs::Exact(coeffs) }
        } else {
            let v = coeffs.iter().map(|c| ring.residue(c)).collect();
            Self { ring, coeffs: Coeffs::Residues(v) }
        })
    }

    pub(crate) fn from_residues(coeffs: Vec<u32>, ring: CoefficientRing) -> Self {
        debug_assert!(!ring.is_exact());
        debug_assert!(coeffs.iter().all(|&c| c < ring.modulus));
        Self { ring, coeffs: Coeffs::Residues(coeffs) }
    }

    pub(crate) fn from_exact(coeffs: Vec<BigInt>) -> Self {
        Self { ring: CoefficientRing::EXACT, coeffs: Coeffs::Exact(coeffs) }
    }

    /// Builds a series from a function of the exponent.
    pub fn from_fn<F>(order: usize, ring: CoefficientRing, mut f: F) -> Self
    where
        F: FnMut(usize) -> BigInt,
    {
        let v = (0..=order).map(&mut f).collect();
        Self::from_coefficients(v, ring).expect("non-empty")
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    /// Largest exponent whose coefficient is valid.
    pub fn order(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(v) => v.len() - 1,
            Coeffs::Residues(v) => v.len() - 1,
        }
    }

    /// Coefficient of `q^n`, or `None` past the validity order. Residues are
    /// returned in `[0, m)`.
    pub fn coeff(&self, n: usize) -> Option<BigInt> {
        match &self.coeffs {
            Coeffs::Exact(v) => v.get(n).cloned(),
            Coeffs::Residues(v) => v.get(n).map(|&c| BigInt::from(c)),
        }
    }

    /// All coefficients as integers (residues in `[0, m)` in modular mode).
    pub fn coefficients(&self) -> Vec<BigInt> {
        match &self.coeffs {
            Coeffs::Exact(v) => v.clone(),
            Coeffs::Residues(v) => v.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// Borrowed residues when the series is modular.
    pub fn residues(&self) -> Option<&[u32]> {
        match &self.coeffs {
            Coeffs::Residues(v) => Some(v),
            Coeffs::Exact(_) => None,
        }
    }

    /// Borrowed integers when the series is exact.
    pub fn exact_coefficients(&self) -> Option<&[BigInt]> {
        match &self.coeffs {
            Coeffs::Exact(v) => Some(v),
            Coeffs::Residues(_) => None,
        }
    }

    pub fn is_zero_at(&self, n: usize) -> Option<bool> {
        match &self.coeffs {
            Coeffs::Exact(v) => v.get(n).map(Zero::is_zero),
            Coeffs::Residues(v) => v.get(n).map(|&c| c == 0),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_count() == 0
    }

    pub fn nonzero_count(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(v) => v.iter().filter(|c| !c.is_zero()).count(),
            Coeffs::Residues(v) => v.iter().filter(|&&c| c != 0).count(),
        }
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        (0..=self.order()).find(|&n| self.is_zero_at(n) == Some(false))
    }

    /// Forgets every coefficient past `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientOrder { needed: order, available: self.order() });
        }
        let coeffs = match &self.coeffs {
            Coeffs::Exact(v) => Coeffs::Exact(v[..=order].to_vec()),
            Coeffs::Residues(v) => Coeffs::Residues(v[..=order].to_vec()),
        };
        Ok(Self { ring: self.ring, coeffs })
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.modulus,
                right: other.ring.modulus,
            });
        }
        Ok(())
    }

    /// `sum scalar_i * s_i`; the result is valid up to the smallest input order.
    pub fn linear_combine(pairs: &[(i64, &TruncatedSeries)]) -> Result<Self> {
        let (_, first) = pairs
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty linear combination".into()))?;
        let ring = first.ring;
        for (_, s) in pairs {
            first.check_ring(s)?;
        }
        let order = pairs.iter().map(|(_, s)| s.order()).min().unwrap_or(0);
        Ok(match ring.is_exact() {
            true => {
                let mut acc = vec![BigInt::zero(); order + 1];
                for (c, s) in pairs {
                    let c = BigInt::from(*c);
                    let v = s.exact_coefficients().expect("exact");
                    for (out, x) in acc.iter_mut().zip(v) {
                        *out += &c * x;
                    }
                }
                Self::from_exact(acc)
            }
            false => {
                let m = u64::from(ring.modulus);
                let mut acc = vec![0u64; order + 1];
                for (c, s) in pairs {
                    let c = u64::from(ring.residue_i64(*c));
                    let v = s.residues().expect("modular");
                    for (out, &x) in acc.iter_mut().zip(v) {
                        *out = (*out + c * u64::from(x)) % m;
                    }
                }
                Self::from_residues(acc.into_iter().map(|x| x as u32).collect(), ring)
            }
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::linear_combine(&[(1, self), (1, other)])
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::linear_combine(&[(1, self), (-1, other)])
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::linear_combine(&[(c, self)]).expect("single operand")
    }

    /// Multiplies by an arbitrary-precision scalar.
    pub fn scale_big(&self, c: &BigInt) -> Self {
        match &self.coeffs {
            Coeffs::Exact(v) => Self::from_exact(v.iter().map(|x| x * c).collect()),
            Coeffs::Residues(v) => {
                let m = u64::from(self.ring.modulus);
                let c = u64::from(self.ring.residue(c));
                Self::from_residues(v.iter().map(|&x| (u64::from(x) * c % m) as u32).collect(), self.ring)
            }
        }
    }

    /// Truncated Cauchy product. The operand with fewer nonzero coefficients
    /// drives the loop, so sparse factors cost `O(N * nnz)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let order = self.order().min(other.order());
        let (dense, sparse) = if self.nonzero_count() <= other.nonzero_count() {
            (other, self)
        } else {
            (self, other)
        };
        Ok(match (&dense.coeffs, &sparse.coeffs) {
            (Coeffs::Residues(d), Coeffs::Residues(s)) => {
                let s = kernel::sparse_residues(s);
                Self::from_residues(kernel::mul_mod(d, &s, order, self.ring.modulus), self.ring)
            }
            (Coeffs::Exact(d), Coeffs::Exact(s)) => {
                let s = kernel::sparse_integers(s);
                Self::from_exact(kernel::mul_exact(d, &s, order))
            }
            _ => unreachable!("rings checked"),
        })
    }

    /// `self / den` up to `min(self.order, den.order)`, by forward
    /// substitution over the nonzero terms of `den`.
    pub fn div(&self, den: &Self) -> Result<Self> {
        self.check_ring(den)?;
        let order = self.order().min(den.order());
        match (&self.coeffs, &den.coeffs) {
            (Coeffs::Residues(num), Coeffs::Residues(d)) => {
                let m = self.ring.modulus;
                let inv = inverse_mod(d[0], m).ok_or_else(|| Error::NotInvertible {
                    constant: d[0].to_string(),
                    modulus: m,
                })?;
                let tail: Vec<_> = kernel::sparse_residues(d).into_iter().filter(|&(j, _)| j > 0).collect();
                Ok(Self::from_residues(kernel::div_mod(num, &tail, inv, order, m), self.ring))
            }
            (Coeffs::Exact(num), Coeffs::Exact(d)) => {
                if !d[0].abs().is_one() {
                    return Err(Error::NotInvertible { constant: d[0].to_string(), modulus: 0 });
                }
                let tail: Vec<_> = kernel::sparse_integers(d).into_iter().filter(|(j, _)| *j > 0).collect();
                Ok(Self::from_exact(kernel::div_exact(num, &tail, &d[0], order)))
            }
            _ => unreachable!("rings checked"),
        }
    }

    /// Multiplicative inverse up to the same order.
    pub fn inverse(&self) -> Result<Self> {
        Self::one(self.order(), self.ring).div(self)
    }

    /// `self^e`; negative powers go through [`inverse`](Self::inverse).
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut result = Self::one(self.order(), self.ring);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// The subseries `sum a(d*n + r) q^n`, valid up to `floor((order - r) / d)`.
    pub fn dissect(&self, d: usize, r: usize) -> Result<Self> {
        if d == 0 || r >= d {
            return Err(Error::InvalidParameter(format!("dissection needs 0 <= r < d, got d={d}, r={r}")));
        }
        if r > self.order() {
            return Err(Error::InsufficientOrder { needed: r, available: self.order() });
        }
        Ok(Self { ring: self.ring, coeffs: self.map_storage(|v| v.iter().skip(r).step_by(d).cloned().collect(), |v| v.iter().skip(r).step_by(d).copied().collect()) })
    }

    /// Multiplies by `q^s`.
    pub fn shift(&self, s: usize) -> Self {
        let coeffs = self.map_storage(
            |v| std::iter::repeat_n(BigInt::zero(), s).chain(v.iter().cloned()).collect(),
            |v| std::iter::repeat_n(0, s).chain(v.iter().copied()).collect(),
        );
        Self { ring: self.ring, coeffs }
    }

    /// Reduces coefficients mod `m`. Needs exact coefficients or a modulus
    /// that `m` divides.
    pub fn reduce_mod(&self, m: u64) -> Result<Self> {
        let target = CoefficientRing::modular(m)?;
        match &self.coeffs {
            Coeffs::Exact(v) => Ok(Self::from_residues(v.iter().map(|c| target.residue(c)).collect(), target)),
            Coeffs::Residues(v) => {
                let from = self.ring.modulus;
                if !from.is_multiple_of(target.modulus) {
                    return Err(Error::IncompatibleModulus { from, to: target.modulus });
                }
                Ok(Self::from_residues(v.iter().map(|&c| c % target.modulus).collect(), target))
            }
        }
    }

    /// Compares coefficients `0..=n`. Asking beyond either validity order is
    /// an error rather than a comparison against unknown coefficients.
    pub fn eq_up_to(&self, other: &Self, n: usize) -> Result<Comparison> {
        self.check_ring(other)?;
        let available = self.order().min(other.order());
        if n > available {
            return Err(Error::InsufficientOrder { needed: n, available });
        }
        let first_mismatch = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => (0..=n).find(|&i| a[i] != b[i]),
            (Coeffs::Residues(a), Coeffs::Residues(b)) => (0..=n).find(|&i| a[i] != b[i]),
            _ => unreachable!("rings checked"),
        };
        Ok(Comparison { equal: first_mismatch.is_none(), first_mismatch })
    }

    fn map_storage<F, G>(&self, exact: F, residues: G) -> Coeffs
    where
        F: FnOnce(&[BigInt]) -> Vec<BigInt>,
        G: FnOnce(&[u32]) -> Vec<u32>,
    {
        match &self.coeffs {
            Coeffs::Exact(v) => Coeffs::Exact(exact(v)),
            Coeffs::Residues(v) => Coeffs::Residues(residues(v)),
        }
    }

    /// Applies `f` to every `(exponent, coefficient)` and collects a new series
    /// of the given order in the same ring. Exponents past `self.order()` read 0.
    pub(crate) fn reindex<F>(&self, order: usize, source: F) -> Self
    where
        F: Fn(usize) -> Option<usize>,
    {
        let coeffs = self.map_storage(
            |v| (0..=order).map(|n| source(n).map_or_else(BigInt::zero, |i| v[i].clone())).collect(),
            |v| (0..=order).map(|n| source(n).map_or(0, |i| v[i])).collect(),
        );
        Self { ring: self.ring, coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    /// Nonzero terms followed by `O(q^{order+1})`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_coefficients(v.iter().map(|&c| BigInt::from(c)).collect(), CoefficientRing::EXACT).unwrap()
    }

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coefficients().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    fn mod3() -> CoefficientRing {
        CoefficientRing::modular(3).unwrap()
    }

    /// Triangular-number indicator, written out independently of the products module.
    fn triangular_indicator(order: usize) -> TruncatedSeries {
        let terms = (0..).map(|n: usize| n * (n + 1) / 2).take_while(|&t| t <= order).map(|t| (t, 1));
        TruncatedSeries::from_terms(terms, order, CoefficientRing::EXACT)
    }

    #[test]
    fn ring_validation() {
        assert!(CoefficientRing::new(0).unwrap().is_exact());
        assert!(matches!(CoefficientRing::new(1), Err(Error::InvalidModulus(1))));
        assert!(CoefficientRing::new(1 << 31).is_err());
        assert_eq!(CoefficientRing::new(25).unwrap().modulus(), 25);
    }

    #[test]
    fn from_terms_examples() {
        let one = TruncatedSeries::from_terms([(0, 1)], 5, CoefficientRing::EXACT);
        assert_eq!(ints(&one), vec![1, 0, 0, 0, 0, 0]);
        let s = TruncatedSeries::from_terms([(1, 2)], 3, mod3());
        assert_eq!(s.residues().unwrap(), &[0, 2, 0, 0]);
        let t = TruncatedSeries::from_terms([(0, 1), (7, -1)], 4, CoefficientRing::EXACT);
        assert_eq!(ints(&t), vec![1, 0, 0, 0, 0]);
        let neg = TruncatedSeries::from_terms([(0, -1)], 0, mod3());
        assert_eq!(neg.residues().unwrap(), &[2]);
    }

    #[test]
    fn linear_combine_examples() {
        let f = exact(&[1, 4, -2, 7]);
        assert!(TruncatedSeries::linear_combine(&[(1, &f), (-1, &f)]).unwrap().is_zero());

        let g = TruncatedSeries::from_terms([(0, 1), (1, 1)], 1, mod3());
        let two_g = TruncatedSeries::linear_combine(&[(2, &g)]).unwrap();
        assert_eq!(two_g.residues().unwrap(), &[2, 2]);

        let long = exact(&[1, 1, 1, 1, 1, 1]);
        let short = exact(&[1, 1, 1, 1]);
        assert_eq!(TruncatedSeries::linear_combine(&[(1, &long), (1, &short)]).unwrap().order(), 3);

        let m = TruncatedSeries::one(3, mod3());
        assert!(matches!(
            TruncatedSeries::linear_combine(&[(1, &short), (1, &m)]),
            Err(Error::RingMismatch { .. })
        ));
    }

    #[test]
    fn mul_examples() {
        let a = exact(&[1, 1, 0, 0]);
        let b = exact(&[1, -1, 0, 0]);
        assert_eq!(ints(&a.mul(&b).unwrap()), vec![1, 0, -1, 0]);

        let psi = triangular_indicator(4);
        assert_eq!(ints(&psi.mul(&psi).unwrap()), vec![1, 2, 1, 2, 2]);

        let short = exact(&[1, 2]);
        assert_eq!(a.mul(&short).unwrap().order(), 1);
    }

    #[test]
    fn inverse_examples() {
        let one_minus_q = exact(&[1, -1, 0, 0, 0, 0]);
        assert_eq!(ints(&one_minus_q.inverse().unwrap()), vec![1; 6]);

        let bad = exact(&[0, 1, 1]);
        assert!(matches!(bad.inverse(), Err(Error::NotInvertible { .. })));

        let two = exact(&[2, 1]);
        assert!(two.inverse().is_err());
        let two_mod3 = two.reduce_mod(3).unwrap();
        let inv = two_mod3.inverse().unwrap();
        assert_eq!(two_mod3.mul(&inv).unwrap(), TruncatedSeries::one(1, mod3()));

        let zero_mod3 = exact(&[3, 1]).reduce_mod(3).unwrap();
        assert!(zero_mod3.inverse().is_err());
    }

    #[test]
    fn naive_euler_product_inverse_counts_partitions() {
        // prod_{n<=8} (1 - q^n), built by repeated multiplication.
        let order = 8;
        let mut p = TruncatedSeries::one(order, CoefficientRing::EXACT);
        for n in 1..=order {
            p = p.mul(&TruncatedSeries::from_terms([(0, 1), (n, -1)], order, CoefficientRing::EXACT)).unwrap();
        }
        let inv = p.inverse().unwrap();
        // p(0..8): 1 1 2 3 5 7 11 15 22
        assert_eq!(ints(&inv), vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(p.mul(&inv).unwrap(), TruncatedSeries::one(order, CoefficientRing::EXACT));
    }

    #[test]
    fn pow_examples() {
        let f = exact(&[3, 1, 4, 1, 5]);
        assert_eq!(f.pow(0).unwrap(), TruncatedSeries::one(4, CoefficientRing::EXACT));
        assert_eq!(ints(&exact(&[1, 1, 0, 0]).pow(2).unwrap()), vec![1, 2, 1, 0]);

        let psi = triangular_indicator(4);
        assert_eq!(psi.pow(8).unwrap().coeff(2).unwrap(), BigInt::from(28));

        let g = exact(&[1, -1, 0, 0]);
        assert_eq!(ints(&g.pow(-2).unwrap()), vec![1, 2, 3, 4]);
        assert!(exact(&[2, 1]).pow(-1).is_err());
    }

    #[test]
    fn dissect_examples() {
        let order = 600;
        let psi = triangular_indicator(order);
        let two_mod_three = psi.dissect(3, 2).unwrap();
        assert_eq!(two_mod_three.order(), (order - 2) / 3);
        assert!(two_mod_three.is_zero());
        // Brute force: n(n+1)/2 is never 2 mod 3.
        assert!((0u64..=200).all(|n| (n * (n + 1) / 2) % 3 != 2));

        let ones = exact(&[1; 50]);
        let d = ones.dissect(7, 3).unwrap();
        assert_eq!(d.order(), (49 - 3) / 7);
        assert!(ints(&d).iter().all(|&c| c == 1));

        assert!(ones.dissect(3, 3).is_err());
        assert!(exact(&[1, 1]).dissect(5, 4).is_err());
    }

    #[test]
    fn shift_examples() {
        let one = TruncatedSeries::one(0, CoefficientRing::EXACT);
        let q5 = one.shift(5);
        assert_eq!(q5.order(), 5);
        assert_eq!(ints(&q5), vec![0, 0, 0, 0, 0, 1]);
        assert!(TruncatedSeries::zero(4, mod3()).shift(3).is_zero());
    }

    #[test]
    fn reduce_mod_examples() {
        let f = exact(&[3, 6, -9]);
        assert!(f.reduce_mod(3).unwrap().is_zero());

        let m15 = TruncatedSeries::from_terms([(0, 7), (1, 14)], 1, CoefficientRing::modular(15).unwrap());
        assert_eq!(m15.reduce_mod(5).unwrap().residues().unwrap(), &[2, 4]);
        let m4 = TruncatedSeries::one(2, CoefficientRing::modular(4).unwrap());
        assert!(matches!(m4.reduce_mod(3), Err(Error::IncompatibleModulus { from: 4, to: 3 })));
        assert!(f.reduce_mod(1).is_err());
    }

    #[test]
    fn eq_up_to_examples() {
        let f = exact(&[1, 2, 3]);
        assert!(f.eq_up_to(&f, f.order()).unwrap().equal);

        let n = 6;
        let one = TruncatedSeries::one(n, CoefficientRing::EXACT);
        let other = TruncatedSeries::from_terms([(0, 1), (n + 1, 1)], n, CoefficientRing::EXACT);
        assert!(one.eq_up_to(&other, n).unwrap().equal);

        let g = exact(&[1, 2, 4]);
        let cmp = f.eq_up_to(&g, 2).unwrap();
        assert_eq!(cmp, Comparison { equal: false, first_mismatch: Some(2) });

        assert!(matches!(f.eq_up_to(&g, 3), Err(Error::InsufficientOrder { needed: 3, available: 2 })));
    }

    #[test]
    fn display_lists_terms() {
        let f = exact(&[1, 0, -2]);
        assert_eq!(f.to_string(), "1 + -2*q^2 + O(q^3)");
        assert_eq!(TruncatedSeries::zero(1, mod3()).to_string(), "0 + O(q^2)");
    }
}
