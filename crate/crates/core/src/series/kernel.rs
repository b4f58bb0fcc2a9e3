//! Inner loops for truncated multiplication and division.
//!
//! Every routine takes the operand with few nonzero coefficients as a list of
//! `(exponent, coefficient)` pairs so that the cost is `O(N * nnz)` rather
//! than `O(N^2)`. Residues are `u32` values in `[0, m)` with `m < 2^31`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Number of `(m-1)^2`-sized terms a `u64` accumulator can absorb on top of a
/// reduced residue before it risks overflow.
fn accumulation_budget(m: u32) -> u64 {
    let top = u64::from(m - 1);
    let sq = (top * top).max(1);
    (u64::MAX - u64::from(m)) / sq
}

pub(crate) fn sparse_residues(coeffs: &[u32]) -> Vec<(usize, u64)> {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, u64::from(c)))
        .collect()
}

pub(crate) fn sparse_integers(coeffs: &[BigInt]) -> Vec<(usize, BigInt)> {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// `dense * sparse` truncated at `order`, over `Z/m`.
pub(crate) fn mul_mod(dense: &[u32], sparse: &[(usize, u64)], order: usize, m: u32) -> Vec<u32> {
    let len = order + 1;
    let mut acc = vec![0u64; len];
    let budget = accumulation_budget(m);
    let modulus = u64::from(m);
    let mut pending = 0u64;
    for &(shift, c) in sparse {
        if shift >= len {
            break;
        }
        if pending == budget {
            acc.iter_mut().for_each(|x| *x %= modulus);
            pending = 0;
        }
        let span = (len - shift).min(dense.len());
        for (out, &x) in acc[shift..shift + span].iter_mut().zip(&dense[..span]) {
            *out += c * u64::from(x);
        }
        pending += 1;
    }
    acc.into_iter().map(|x| (x % modulus) as u32).collect()
}

/// `dense * sparse` truncated at `order`, over `Z`.
pub(crate) fn mul_exact(dense: &[BigInt], sparse: &[(usize, BigInt)], order: usize) -> Vec<BigInt> {
    let len = order + 1;
    let mut acc = vec![BigInt::zero(); len];
    for (shift, c) in sparse {
        if *shift >= len {
            break;
        }
        let span = (len - shift).min(dense.len());
        for (out, x) in acc[*shift..*shift + span].iter_mut().zip(&dense[..span]) {
            if !x.is_zero() {
                *out += c * x;
            }
        }
    }
    acc
}

/// Solves `den * out = num` up to `order` by forward substitution over `Z/m`.
/// `den_tail` holds the nonzero terms of `den` with positive exponent and
/// `inv_lead` is the inverse of its constant term.
pub(crate) fn div_mod(
    num: &[u32],
    den_tail: &[(usize, u64)],
    inv_lead: u32,
    order: usize,
    m: u32,
) -> Vec<u32> {
    let modulus = u64::from(m);
    // Negate once so the inner loop only adds.
    let neg: Vec<(usize, u64)> = den_tail
        .iter()
        .map(|&(j, c)| (j, (modulus - c) % modulus))
        .filter(|&(_, c)| c != 0)
        .collect();
    let lazy = accumulation_budget(m) > neg.len() as u64;
    let inv = u64::from(inv_lead);
    let mut out = vec![0u32; order + 1];
    for n in 0..=order {
        let mut sum = num.get(n).copied().map_or(0, u64::from);
        if lazy {
            for &(j, c) in &neg {
                if j > n {
                    break;
                }
                sum += c * u64::from(out[n - j]);
            }
        } else {
            for &(j, c) in &neg {
                if j > n {
                    break;
                }
                sum = (sum + c * u64::from(out[n - j])) % modulus;
            }
        }
        out[n] = ((sum % modulus) * inv % modulus) as u32;
    }
    out
}

/// Solves `den * out = num` up to `order` over `Z`, where the constant term
/// of `den` is `lead = +-1`.
pub(crate) fn div_exact(
    num: &[BigInt],
    den_tail: &[(usize, BigInt)],
    lead: &BigInt,
    order: usize,
) -> Vec<BigInt> {
    debug_assert!(lead.abs() == BigInt::from(1));
    let negate = lead.is_negative();
    let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut sum = num.get(n).cloned().unwrap_or_default();
        for (j, c) in den_tail {
            if *j > n {
                break;
            }
            let prev = &out[n - j];
            if !prev.is_zero() {
                sum -= c * prev;
            }
        }
        out.push(if negate { -sum } else { sum });
    }
    out
}
