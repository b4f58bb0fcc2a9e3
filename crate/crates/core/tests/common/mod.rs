//! Randomized property suites shared by the `properties` test target and the
//! acceptance harness. Each suite runs a proptest `TestRunner` for a given
//! number of cases and reports the minimal failing input as a string.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use qdiamond::operators::{apply_t, apply_t_general, apply_u, apply_v, HeckeContext};
use qdiamond::{expand_spec, pochhammer, psi_series, CoefficientRing, ProductSpec, TruncatedSeries};

pub type Suite = fn(u32) -> Result<(), String>;

pub const SUITES: &[(&str, Suite)] = &[
    ("series ring axioms", ring_axioms),
    ("inverse correctness", inverse_correctness),
    ("dissection reconstruction", dissection_reconstruction),
    ("U/V/T algebra", operator_algebra),
    ("pentagonal vs naive product (N <= 2000)", pentagonal_vs_naive),
    ("psi theta vs product (N = 10^4)", psi_dual_forms),
    ("modular/exact commutation", modular_exact_commutation),
];

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn ok<T>(r: qdiamond::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

pub fn ring() -> impl Strategy<Value = CoefficientRing> {
    prop_oneof![
        2 => Just(CoefficientRing::EXACT),
        2 => (2u64..60).prop_map(|m| CoefficientRing::modular(m).unwrap()),
        1 => (2u64..(1 << 31)).prop_map(|m| CoefficientRing::modular(m).unwrap()),
    ]
}

pub fn series_in(order: usize, ring: CoefficientRing) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(any::<i64>(), order + 1)
        .prop_map(move |v| TruncatedSeries::from_coefficients(v.into_iter().map(BigInt::from).collect(), ring).unwrap())
}

/// Exact series with small coefficients.
pub fn small_exact(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-50i64..50, order + 1).prop_map(|v| {
        TruncatedSeries::from_coefficients(v.into_iter().map(BigInt::from).collect(), CoefficientRing::EXACT).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries, TruncatedSeries, i64, i64)> {
    (0usize..40, ring()).prop_flat_map(|(n, r)| (series_in(n, r), series_in(n, r), series_in(n, r), any::<i64>(), any::<i64>()))
}

pub fn ring_axioms(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&triple(), |(a, b, c, x, y)| {
        let n = a.order();
        let left = ok(a.mul(&ok(b.mul(&c))?))?;
        let right = ok(ok(a.mul(&b))?.mul(&c))?;
        check(left == right, || "mul is not associative".into())?;
        check(ok(a.mul(&b))? == ok(b.mul(&a))?, || "mul is not commutative".into())?;
        let combo = ok(TruncatedSeries::linear_combine(&[(x, &b), (y, &c)]))?;
        let distributed = ok(TruncatedSeries::linear_combine(&[(x, &ok(a.mul(&b))?), (y, &ok(a.mul(&c))?)]))?;
        check(ok(a.mul(&combo))? == distributed, || "mul does not distribute over linear_combine".into())?;
        let one = TruncatedSeries::one(n, a.ring());
        check(ok(a.mul(&one))? == a, || "1 is not a unit".into())?;
        check(ok(a.sub(&a))?.is_zero(), || "a - a != 0".into())?;
        Ok(())
    }))
}

/// A series whose constant term is a unit of its ring.
fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    (0usize..60, ring(), any::<bool>()).prop_flat_map(|(n, r, neg)| {
        series_in(n, r).prop_map(move |s| {
            let mut c = s.coefficients();
            c[0] = if r.is_exact() {
                BigInt::from(if neg { -1 } else { 1 })
            } else {
                // Smallest unit at or above the drawn residue.
                let m = BigInt::from(r.modulus());
                let mut u = c[0].clone();
                while !r.is_unit(&u) {
                    u += 1;
                }
                ((u % &m) + &m) % m
            };
            TruncatedSeries::from_coefficients(c, r).unwrap()
        })
    })
}

pub fn inverse_correctness(cases: u32) -> Result<(), String> {
    let strategy = unit_series().prop_flat_map(|a| {
        let (n, r) = (a.order(), a.ring());
        (Just(a), series_in(n, r))
    });
    finish(runner(cases).run(&strategy, |(a, b)| {
        let n = a.order();
        let inv = ok(a.inverse())?;
        let one = TruncatedSeries::one(n, a.ring());
        check(ok(ok(a.mul(&inv))?.eq_up_to(&one, n))?.equal, || "a * a^-1 != 1".into())?;
        let q = ok(b.div(&a))?;
        check(ok(q.mul(&a))? == b, || "(b / a) * a != b".into())?;
        check(ok(a.pow(-3))? == ok(ok(inv.pow(3))?.truncate(n))?, || "a^-3 != (a^-1)^3".into())?;
        Ok(())
    }))
}

pub fn dissection_reconstruction(cases: u32) -> Result<(), String> {
    let strategy = (0usize..120, ring(), 1usize..12).prop_flat_map(|(n, r, d)| (series_in(n, r), Just(d)));
    finish(runner(cases).run(&strategy, |(a, d)| {
        let n = a.order();
        let mut parts = Vec::new();
        for r in 0..d.min(n + 1) {
            let part = ok(a.dissect(d, r))?;
            check(part.order() == (n - r) / d, || format!("dissect({d},{r}) has order {}", part.order()))?;
            parts.push(ok(ok(apply_v(&part, d))?.shift(r).truncate(n))?);
        }
        let refs: Vec<(i64, &TruncatedSeries)> = parts.iter().map(|p| (1, p)).collect();
        let rebuilt = ok(TruncatedSeries::linear_combine(&refs))?;
        check(rebuilt == a, || format!("interleaving {d} parts does not rebuild the series"))?;
        Ok(())
    }))
}

pub fn operator_algebra(cases: u32) -> Result<(), String> {
    let strategy = (
        (0usize..150).prop_flat_map(|n| (small_exact(n), small_exact(n))),
        prop::sample::select(vec![2usize, 3, 5, 9]),
        prop::sample::select(vec![2usize, 3, 4, 5]),
        prop::sample::select(vec![2u64, 3, 5, 7]),
        2u32..7,
        1u64..13,
        -20i64..20,
        -20i64..20,
    );
    finish(runner(cases).run(&strategy, |((f, g), d, e, p, k, m, x, y)| {
        check(ok(apply_u(&ok(apply_v(&f, d))?, d))? == f, || format!("U({d}) V({d}) != id"))?;

        let uu = ok(apply_u(&ok(apply_u(&f, d))?, e))?;
        check(uu == ok(apply_u(&f, d * e))?, || format!("U({e}) U({d}) != U({})", d * e))?;

        let ctx = ok(HeckeContext::trivial(k))?;
        let combo = ok(TruncatedSeries::linear_combine(&[(x, &f), (y, &g)]))?;
        let lin = |h: &dyn Fn(&TruncatedSeries) -> qdiamond::Result<TruncatedSeries>| -> Result<bool, TestCaseError> {
            let lhs = ok(h(&combo))?;
            let rhs = ok(TruncatedSeries::linear_combine(&[(x, &ok(h(&f))?), (y, &ok(h(&g))?)]))?;
            Ok(lhs == rhs)
        };
        check(lin(&|s| apply_u(s, d))?, || "U is not linear".into())?;
        check(lin(&|s| apply_v(s, d))?, || "V is not linear".into())?;
        check(lin(&|s| apply_t(s, p, &ctx))?, || "T is not linear".into())?;

        let t = ok(ok(apply_t(&f, p, &ctx))?.reduce_mod(p))?;
        let u = ok(ok(apply_u(&f, p as usize))?.reduce_mod(p))?;
        check(t == u, || format!("U({p}) != T({p}) mod {p} in weight {k}"))?;

        // Composite index against the defining double sum.
        let tm = ok(apply_t_general(&f, m, &ctx))?;
        let mu = m as usize;
        for n in 0..=f.order() / mu {
            let mut want = BigInt::from(0);
            for dd in 1..=mu {
                if mu.is_multiple_of(dd) && n % dd == 0 {
                    want += BigInt::from(dd).pow(k - 1) * f.coeff(mu * n / (dd * dd)).unwrap();
                }
            }
            check(tm.coeff(n) == Some(want), || format!("T({m}) differs from the double sum at q^{n}"))?;
        }
        Ok(())
    }))
}

/// `prod_{n >= 1, d n <= order} (1 - q^{d n})` by repeated multiplication,
/// in wrapping 64-bit arithmetic (exact after reduction mod 2^64) or mod `m`.
fn naive_pochhammer(d: usize, order: usize, modulus: u32) -> Vec<u64> {
    let mut c = vec![0u64; order + 1];
    c[0] = 1;
    let m = u64::from(modulus);
    let mut step = d;
    while step <= order {
        for i in (step..=order).rev() {
            c[i] = if m == 0 {
                c[i].wrapping_sub(c[i - step])
            } else {
                (c[i] + m - c[i - step]) % m
            };
        }
        step += d;
    }
    c
}

fn as_u64_wrapping(s: &TruncatedSeries) -> Vec<u64> {
    let two64 = BigInt::from(1u8) << 64;
    s.coefficients()
        .iter()
        .map(|c| {
            let r: BigInt = ((c % &two64) + &two64) % &two64;
            u64::try_from(r).unwrap()
        })
        .collect()
}

pub fn pentagonal_vs_naive(cases: u32) -> Result<(), String> {
    let strategy = (1usize..8, 0usize..=2000, ring());
    finish(runner(cases).run(&strategy, |(d, n, r)| {
        let fast = pochhammer(d, n, r);
        let naive = naive_pochhammer(d, n, r.modulus());
        let fast: Vec<u64> = match fast.residues() {
            Some(res) => res.iter().map(|&x| u64::from(x)).collect(),
            None => as_u64_wrapping(&fast),
        };
        check(fast == naive, || format!("(q^{d};q^{d}) differs from the naive product to order {n}"))?;
        Ok(())
    }))
}

pub fn psi_dual_forms(cases: u32) -> Result<(), String> {
    const N: usize = 10_000;
    let strategy = (1u32..12, ring());
    finish(runner(cases).run(&strategy, |(d, r)| {
        let theta = psi_series(d as usize, N, r);
        let product = ok(expand_spec(&ok(ProductSpec::psi(d))?, N, r))?;
        let cmp = ok(theta.eq_up_to(&product, N))?;
        check(cmp.equal, || format!("psi(q^{d}) forms differ at q^{:?}", cmp.first_mismatch))?;
        Ok(())
    }))
}

pub fn modular_exact_commutation(cases: u32) -> Result<(), String> {
    let strategy = (0usize..50, 2u64..(1 << 31), 2u64..200).prop_flat_map(|(n, m, small)| {
        (
            series_in(n, CoefficientRing::EXACT),
            series_in(n, CoefficientRing::EXACT),
            Just(m),
            Just(small),
            1u64..20,
        )
    });
    finish(runner(cases).run(&strategy, |(a, b, m, small, factor)| {
        let ab = ok(a.mul(&b))?;
        let lhs = ok(ab.reduce_mod(m))?;
        let rhs = ok(ok(a.reduce_mod(m))?.mul(&ok(b.reduce_mod(m))?))?;
        check(lhs == rhs, || format!("reduce_mod({m}) does not commute with mul"))?;
        let sum = ok(ok(a.add(&b))?.reduce_mod(m))?;
        check(sum == ok(ok(a.reduce_mod(m))?.add(&ok(b.reduce_mod(m))?))?, || "reduce_mod does not commute with add".into())?;

        // Reduction through an intermediate multiple of the target modulus.
        if let Some(big) = small.checked_mul(factor).filter(|&x| x < (1 << 31)) {
            let via = ok(ok(ab.reduce_mod(big))?.reduce_mod(small))?;
            check(via == ok(ab.reduce_mod(small))?, || format!("mod {big} then {small} differs from mod {small}"))?;
        }
        Ok(())
    }))
}
