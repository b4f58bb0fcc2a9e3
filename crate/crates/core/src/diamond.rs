//! Brute-force counting of broken k-diamond partitions.
//!
//! A k-elongated diamond is a head node, `k` pairs, and a tail node. The head
//! dominates both members of the first pair, every member of a pair dominates
//! both members of the next, and both members of the last pair dominate the
//! tail. The tail of one diamond is the head of the next. A broken k-diamond
//! partition is an infinite chain `a_1, a_2, ...` of such diamonds headed by
//! `a_1`, together with a second chain `b_2, b_3, ...` whose first diamond has
//! no head. Entries are nonnegative integers and only finitely many are
//! nonzero.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A concrete filling. `a_values` starts at `a_1`, `b_values` at `b_2`;
/// omitted trailing entries are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DiamondConfig {
    pub k: u32,
    pub a_values: Vec<u64>,
    pub b_values: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Validation {
    pub valid: bool,
    pub weight: u64,
}

/// Checks every order relation of the configuration and returns its weight.
pub fn validate_config(config: &DiamondConfig) -> Validation {
    let weight = config.a_values.iter().chain(&config.b_values).sum();
    let k = config.k as usize;
    let valid = k >= 1
        && match config.a_values.split_first() {
            Some((&head, rest)) => chain_ok(k, Some(head), rest),
            None => true,
        }
        && chain_ok(k, None, &config.b_values);
    Validation { valid, weight }
}

/// `values` starts at the first pair of the diamond headed by `head`
/// (`None` for the headless broken block).
fn chain_ok(k: usize, mut head: Option<u64>, values: &[u64]) -> bool {
    let at = |i: usize| values.get(i).copied().unwrap_or(0);
    let mut offset = 0;
    while offset < values.len() {
        let mut upper = head;
        for j in 0..k {
            let (x, y) = (at(offset + 2 * j), at(offset + 2 * j + 1));
            if let Some(u) = upper {
                if x > u || y > u {
                    return false;
                }
            }
            upper = Some(x.min(y));
        }
        let tail = at(offset + 2 * k);
        if upper.is_some_and(|u| tail > u) {
            return false;
        }
        head = Some(tail);
        offset += 2 * k + 1;
    }
    true
}

/// Memoized counts for one value of `k`.
///
/// `chain(h, s)` counts fillings of everything after a head of value `h`
/// with total weight `s`; a zero head forces an all-zero tail, which is what
/// makes the infinite chain finite to count.
pub struct DiamondCounter {
    k: usize,
    chain_memo: HashMap<(u64, u64), BigUint>,
    pair_memo: HashMap<(usize, u64, u64), BigUint>,
}

impl DiamondCounter {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        Ok(Self { k: k as usize, chain_memo: HashMap::new(), pair_memo: HashMap::new() })
    }

    fn chain(&mut self, head: u64, weight: u64) -> BigUint {
        if head == 0 {
            return if weight == 0 { BigUint::one() } else { BigUint::zero() };
        }
        if let Some(v) = self.chain_memo.get(&(head, weight)) {
            return v.clone();
        }
        let v = self.pairs(0, head, weight);
        self.chain_memo.insert((head, weight), v.clone());
        v
    }

    /// Pairs `j..k` bounded above by `bound`, then the tail and the rest of
    /// the chain, with total weight `weight`.
    fn pairs(&mut self, j: usize, bound: u64, weight: u64) -> BigUint {
        if let Some(v) = self.pair_memo.get(&(j, bound, weight)) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for x in 0..=bound.min(weight) {
            for y in 0..=bound.min(weight - x) {
                let next_bound = x.min(y);
                let rest = weight - x - y;
                if j + 1 < self.k {
                    total += self.pairs(j + 1, next_bound, rest);
                } else {
                    for tail in 0..=next_bound.min(rest) {
                        total += self.chain(tail, rest - tail);
                    }
                }
            }
        }
        self.pair_memo.insert((j, bound, weight), total.clone());
        total
    }

    /// Fillings of the `a` chain of total weight `s`.
    pub fn a_side(&mut self, s: u64) -> BigUint {
        (0..=s).map(|head| self.chain(head, s - head)).sum()
    }

    /// Fillings of the headless `b` chain of total weight `s`.
    pub fn b_side(&mut self, s: u64) -> BigUint {
        self.pairs(0, s, s)
    }

    /// `Delta_k(n)`.
    pub fn count(&mut self, n: u64) -> BigUint {
        (0..=n).map(|s| self.a_side(s) * self.b_side(n - s)).sum()
    }
}

/// Number of broken k-diamond partitions of `n`.
pub fn count_broken_diamonds(k: u32, n: u64) -> Result<BigUint> {
    Ok(DiamondCounter::new(k)?.count(n))
}

/// `Delta_k(0..=max_n)`, sharing one memo table.
pub fn count_range(k: u32, max_n: u64) -> Result<Vec<BigUint>> {
    let mut counter = DiamondCounter::new(k)?;
    Ok((0..=max_n).map(|n| counter.count(n)).collect())
}

/// Every broken k-diamond partition of `n`, trailing zeros trimmed. Only
/// feasible for small `n`.
pub fn enumerate_configs(k: u32, n: u64) -> Result<Vec<DiamondConfig>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let k_us = k as usize;
    let mut out = Vec::new();
    for s in 0..=n {
        let mut a_fillings = Vec::new();
        for head in 0..=s {
            for rest in enum_chain(k_us, head, s - head) {
                let mut v = vec![head];
                v.extend(rest);
                a_fillings.push(v);
            }
        }
        let b_fillings = enum_pairs(k_us, 0, n - s, n - s);
        for a in &a_fillings {
            for b in &b_fillings {
                out.push(DiamondConfig { k, a_values: trim(a.clone()), b_values: trim(b.clone()) });
            }
        }
    }
    Ok(out)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn enum_chain(k: usize, head: u64, weight: u64) -> Vec<Vec<u64>> {
    if head == 0 {
        return if weight == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    enum_pairs(k, 0, head, weight)
}

fn enum_pairs(k: usize, j: usize, bound: u64, weight: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for x in 0..=bound.min(weight) {
        for y in 0..=bound.min(weight - x) {
            let next_bound = x.min(y);
            let rest = weight - x - y;
            let suffixes: Vec<Vec<u64>> = if j + 1 < k {
                enum_pairs(k, j + 1, next_bound, rest)
            } else {
                (0..=next_bound.min(rest))
                    .flat_map(|tail| {
                        enum_chain(k, tail, rest - tail).into_iter().map(move |mut s| {
                            s.insert(0, tail);
                            s
                        })
                    })
                    .collect()
            };
            for mut s in suffixes {
                s.splice(0..0, [x, y]);
                out.push(s);
            }
        }
    }
    out
}
