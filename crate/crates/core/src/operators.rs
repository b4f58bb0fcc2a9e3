//! `U(d)`, `V(d)` and Hecke `T(m)` acting on q-expansions, and a
//! coefficient-level eigenform check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{inverse_mod, TruncatedSeries};

/// A Dirichlet character given by its values on `0..conductor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: Vec<i64>,
}

impl Character {
    /// `chi(d) = 1` for every `d`.
    pub fn trivial() -> Self {
        Self { values: vec![1] }
    }

    /// The principal character mod `n`: 1 on units, 0 elsewhere.
    pub fn principal(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCharacter("conductor must be positive".into()));
        }
        Self::from_table((0..n).map(|d| i64::from(d.gcd(&n) == 1)).collect())
    }

    /// Validates `chi(1) = 1` and complete multiplicativity on residues.
    pub fn from_table(values: Vec<i64>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidCharacter("empty table".into()));
        }
        if values[1 % n] != 1 {
            return Err(Error::InvalidCharacter("chi(1) must be 1".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if values[a * b % n] != values[a] * values[b] {
                    return Err(Error::InvalidCharacter(format!(
                        "chi({a}) chi({b}) = {} but chi({}) = {}",
                        values[a] * values[b],
                        a * b % n,
                        values[a * b % n]
                    )));
                }
            }
        }
        Ok(Self { values })
    }

    pub fn conductor(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, d: u64) -> i64 {
        self.values[(d % self.values.len() as u64) as usize]
    }
}

impl Default for Character {
    fn default() -> Self {
        Self::trivial()
    }
}

/// Weight and character for applying `T(m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeContext {
    pub weight: u32,
    pub character: Character,
}

impl HeckeContext {
    pub fn new(weight: u32, character: Character) -> Result<Self> {
        if weight == 0 {
            return Err(Error::InvalidParameter("weight must be positive".into()));
        }
        Ok(Self { weight, character })
    }

    /// Weight `k` with the trivial character.
    pub fn trivial(weight: u32) -> Result<Self> {
        Self::new(weight, Character::trivial())
    }

    /// `chi(d) d^{k-1}`.
    fn multiplier(&self, d: u64) -> BigInt {
        BigInt::from(self.character.value(d)) * BigInt::from(d).pow(self.weight - 1)
    }
}

fn check_positive(d: usize, what: &str) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter(format!("{what} index must be positive")));
    }
    Ok(())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    (2u64..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `f | U(d) = sum a(d n) q^n`, valid to `floor(order / d)`.
pub fn apply_u(f: &TruncatedSeries, d: usize) -> Result<TruncatedSeries> {
    check_positive(d, "U")?;
    f.dissect(d, 0)
}

/// `f | V(d) = sum a(n) q^{d n}`, valid to `d * order + d - 1`.
pub fn apply_v(f: &TruncatedSeries, d: usize) -> Result<TruncatedSeries> {
    check_positive(d, "V")?;
    let order = d * f.order() + d - 1;
    Ok(f.reindex(order, |n| (n % d == 0).then_some(n / d)))
}

/// Hecke operator at a prime: `b(n) = a(p n) + chi(p) p^{k-1} a(n / p)`.
pub fn apply_t(f: &TruncatedSeries, p: u64, ctx: &HeckeContext) -> Result<TruncatedSeries> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    apply_t_general(f, p, ctx)
}

/// Hecke operator for any index `m >= 1`:
/// `b(n) = sum_{d | gcd(m, n)} chi(d) d^{k-1} a(m n / d^2)`.
pub fn apply_t_general(f: &TruncatedSeries, m: u64, ctx: &HeckeContext) -> Result<TruncatedSeries> {
    check_positive(m as usize, "T")?;
    let mu = m as usize;
    let order = f.order() / mu;
    let divisors: Vec<(usize, BigInt)> = (1..=m)
        .filter(|d| m.is_multiple_of(*d))
        .map(|d| (d as usize, ctx.multiplier(d)))
        .filter(|(_, w)| !w.is_zero())
        .collect();
    let coeffs: Vec<BigInt> = (0..=order)
        .map(|n| {
            divisors
                .iter()
                .filter(|(d, _)| n % d == 0)
                .map(|(d, w)| w * f.coeff(mu * n / (d * d)).expect("within order"))
                .sum()
        })
        .collect();
    TruncatedSeries::from_coefficients(coeffs, f.ring())
}

/// Outcome of [`eigen_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EigenOutcome {
    /// `f | T(p) = lambda f` on every checked coefficient. Modular results
    /// are residues in `[0, m)`.
    Eigenvalue(BigInt),
    /// First index where proportionality breaks, or where the leading
    /// ratio is not an integer.
    Failure { index: usize },
}

/// Checks `f | T(p) = lambda f` for coefficients `0..=n_check`, with `lambda`
/// read off the first nonzero coefficient of `f`.
pub fn eigen_check(f: &TruncatedSeries, p: u64, ctx: &HeckeContext, n_check: usize) -> Result<EigenOutcome> {
    let available = f.order() / p.max(1) as usize;
    if n_check > available {
        return Err(Error::InsufficientOrder { needed: n_check * p as usize, available: f.order() });
    }
    let image = apply_t(f, p, ctx)?;
    let lead = (0..=n_check).find(|&n| f.is_zero_at(n) == Some(false)).ok_or(Error::ZeroSeries)?;
    let a0 = f.coeff(lead).expect("in range");
    let b0 = image.coeff(lead).expect("in range");
    let ring = f.ring();
    let lambda = if ring.is_exact() {
        let (q, r) = b0.div_rem(&a0);
        if !r.is_zero() {
            return Ok(EigenOutcome::Failure { index: lead });
        }
        q
    } else {
        let m = ring.modulus();
        let a0 = ring.residue(&a0);
        let inv = inverse_mod(a0, m).ok_or_else(|| {
            Error::RequiresExactMode(format!(
                "leading coefficient {a0} is not a unit mod {m}; rerun in exact mode"
            ))
        })?;
        BigInt::from(u64::from(ring.residue(&b0)) * u64::from(inv) % u64::from(m))
    };
    let scaled = f.scale_big(&lambda);
    let cmp = image.eq_up_to(&scaled.truncate(image.order())?, n_check)?;
    Ok(match cmp.first_mismatch {
        None => EigenOutcome::Eigenvalue(lambda),
        Some(index) => EigenOutcome::Failure { index },
    })
}
