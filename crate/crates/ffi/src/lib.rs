//! C ABI for qdiamond.
//!
//! Series are passed around as opaque `QdSeries` handles that the caller
//! releases with [`qd_series_free`]. Every fallible call returns a
//! [`QdStatus`]; on failure, [`qd_last_error_message`] describes the most
//! recent error on the calling thread. Strings written into caller buffers
//! are NUL-terminated; when a buffer is too small the call returns
//! `QD_STATUS_BUFFER_TOO_SMALL` and reports the required size.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qdiamond::congruence::{gen_family, named_identity, verify_all, verify_identity, ExpansionCache, Family};
use qdiamond::diamond::count_broken_diamonds;
use qdiamond::operators::{eigen_check, Character, EigenOutcome, HeckeContext};
use qdiamond::{broken_diamond_gf, expand_spec, psi_series, CoefficientRing, Error, ProductSpec, TruncatedSeries};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    RingMismatch = 5,
    NotInvertible = 6,
    InsufficientOrder = 7,
    BufferTooSmall = 8,
    Io = 9,
    Panic = 10,
}

/// Opaque truncated power series.
pub struct QdSeries {
    inner: TruncatedSeries,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> QdStatus {
    match err {
        Error::InvalidModulus(_)
        | Error::InvalidParameter(_)
        | Error::InvalidCharacter(_)
        | Error::ZeroSeries
        | Error::RequiresExactMode(_)
        | Error::IncompatibleModulus { .. } => QdStatus::InvalidArgument,
        Error::RingMismatch { .. } => QdStatus::RingMismatch,
        Error::NotInvertible { .. } => QdStatus::NotInvertible,
        Error::InsufficientOrder { .. } => QdStatus::InsufficientOrder,
        Error::Parse(_) => QdStatus::Parse,
        Error::Io(_) | Error::Csv(_) => QdStatus::Io,
    }
}

struct Failure(QdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard<F>(f: F) -> QdStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QdStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QdStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(QdStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(QdStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn series_ref<'a>(s: *const QdSeries, what: &str) -> Result<&'a TruncatedSeries, Failure> {
    s.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure(QdStatus::NullPointer, format!("{what} is null")))
}

unsafe fn store_series(out: *mut *mut QdSeries, series: TruncatedSeries) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(QdStatus::NullPointer, "output handle pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(QdSeries { inner: series }));
    Ok(())
}

unsafe fn check_out<T>(p: *mut T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        return Err(Failure(QdStatus::NullPointer, format!("{what} is null")));
    }
    Ok(())
}

/// Copies `text` plus a NUL into `buf`. `needed` (optional) receives the
/// required size in bytes including the NUL.
unsafe fn write_text(text: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> Result<(), Failure> {
    let size = text.len() + 1;
    if !needed.is_null() {
        *needed = size;
    }
    if buf.is_null() || len < size {
        return Err(Failure(QdStatus::BufferTooSmall, format!("buffer needs {size} bytes")));
    }
    ptr::copy_nonoverlapping(text.as_ptr(), buf as *mut u8, text.len());
    *buf.add(text.len()) = 0;
    Ok(())
}

fn ring(modulus: u64) -> Result<CoefficientRing, Failure> {
    Ok(CoefficientRing::new(modulus)?)
}

/// Size in bytes (including the NUL) of the last error message on this
/// thread, or 0 if there is none.
#[no_mangle]
pub extern "C" fn qd_last_error_length() -> usize {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(0, |m| m.as_bytes_with_nul().len()))
}

/// Copies the last error message into `buf`.
///
/// # Safety
/// `buf` must be valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn qd_last_error_message(buf: *mut c_char, len: usize) -> QdStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().as_ref().map(|m| m.to_string_lossy().into_owned()));
    let msg = msg.unwrap_or_default();
    let size = msg.len() + 1;
    if buf.is_null() || len < size {
        return QdStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, msg.len());
    *buf.add(msg.len()) = 0;
    QdStatus::Ok
}

/// Expands a product written as `scalar * q^s * P(d)^e * M(d)^e ...`.
/// `modulus` 0 selects exact integers.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_expand(
    spec: *const c_char,
    order: usize,
    modulus: u64,
    out: *mut *mut QdSeries,
) -> QdStatus {
    guard(|| {
        let spec: ProductSpec = read_str(spec, "spec")?.parse()?;
        let series = expand_spec(&spec, order, ring(modulus)?)?;
        store_series(out, series)
    })
}

/// `sum Delta_k(n) q^n` up to `q^order`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_broken_diamond(k: u32, order: usize, modulus: u64, out: *mut *mut QdSeries) -> QdStatus {
    guard(|| store_series(out, broken_diamond_gf(k, order, ring(modulus)?)?))
}

/// `psi(q^d)` up to `q^order`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_psi(d: usize, order: usize, modulus: u64, out: *mut *mut QdSeries) -> QdStatus {
    guard(|| {
        if d == 0 {
            return Err(Failure(QdStatus::InvalidArgument, "d must be positive".into()));
        }
        store_series(out, psi_series(d, order, ring(modulus)?))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `series` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qd_series_free(series: *mut QdSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// # Safety
/// `series` must be a live handle; `out_order` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_order(series: *const QdSeries, out_order: *mut usize) -> QdStatus {
    guard(|| {
        let s = series_ref(series, "series")?;
        check_out(out_order, "out_order")?;
        *out_order = s.order();
        Ok(())
    })
}

/// Coefficient modulus of the series, 0 for exact.
///
/// # Safety
/// `series` must be a live handle; `out_modulus` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_modulus(series: *const QdSeries, out_modulus: *mut u32) -> QdStatus {
    guard(|| {
        let s = series_ref(series, "series")?;
        check_out(out_modulus, "out_modulus")?;
        *out_modulus = s.ring().modulus();
        Ok(())
    })
}

/// Residue in `[0, m)` of the coefficient of `q^n` of a modular series.
///
/// # Safety
/// `series` must be a live handle; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_coeff_residue(series: *const QdSeries, n: usize, out_value: *mut u32) -> QdStatus {
    guard(|| {
        let s = series_ref(series, "series")?;
        check_out(out_value, "out_value")?;
        let residues = s
            .residues()
            .ok_or_else(|| Failure(QdStatus::InvalidArgument, "series has exact coefficients".into()))?;
        let v = residues
            .get(n)
            .ok_or_else(|| Failure::from(Error::InsufficientOrder { needed: n, available: s.order() }))?;
        *out_value = *v;
        Ok(())
    })
}

/// Decimal text of the coefficient of `q^n`.
///
/// # Safety
/// `series` must be a live handle; `buf` valid for `len` bytes; `needed`
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_coeff_string(
    series: *const QdSeries,
    n: usize,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> QdStatus {
    guard(|| {
        let s = series_ref(series, "series")?;
        let c = s
            .coeff(n)
            .ok_or_else(|| Failure::from(Error::InsufficientOrder { needed: n, available: s.order() }))?;
        write_text(&c.to_string(), buf, len, needed)
    })
}

/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_mul(a: *const QdSeries, b: *const QdSeries, out: *mut *mut QdSeries) -> QdStatus {
    guard(|| {
        let product = series_ref(a, "a")?.mul(series_ref(b, "b")?)?;
        store_series(out, product)
    })
}

/// # Safety
/// Handle must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_inverse(a: *const QdSeries, out: *mut *mut QdSeries) -> QdStatus {
    guard(|| store_series(out, series_ref(a, "a")?.inverse()?))
}

/// `sum a(d n + r) q^n`.
///
/// # Safety
/// Handle must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_dissect(a: *const QdSeries, d: usize, r: usize, out: *mut *mut QdSeries) -> QdStatus {
    guard(|| store_series(out, series_ref(a, "a")?.dissect(d, r)?))
}

/// # Safety
/// Handle must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_reduce_mod(a: *const QdSeries, m: u64, out: *mut *mut QdSeries) -> QdStatus {
    guard(|| store_series(out, series_ref(a, "a")?.reduce_mod(m)?))
}

/// Compares coefficients `0..=n`. `out_first_mismatch` receives -1 when
/// equal.
///
/// # Safety
/// Handles must be live; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_eq_up_to(
    a: *const QdSeries,
    b: *const QdSeries,
    n: usize,
    out_equal: *mut bool,
    out_first_mismatch: *mut i64,
) -> QdStatus {
    guard(|| {
        let cmp = series_ref(a, "a")?.eq_up_to(series_ref(b, "b")?, n)?;
        check_out(out_equal, "out_equal")?;
        check_out(out_first_mismatch, "out_first_mismatch")?;
        *out_equal = cmp.equal;
        *out_first_mismatch = cmp.first_mismatch.map_or(-1, |i| i as i64);
        Ok(())
    })
}

/// Hecke eigenvalue of `series` under `T(p)` in weight `weight`, checked on
/// coefficients `0..=order/p`. `level` 0 uses the trivial character,
/// otherwise the principal character mod `level`. On success `out_is_eigen`
/// is set and, when true, the eigenvalue is written to `buf` in decimal;
/// when false, `out_failure_index` receives the first failing index.
///
/// # Safety
/// Handle must be live; `buf` valid for `len` bytes; pointers writable or
/// (for `needed`) null.
#[no_mangle]
pub unsafe extern "C" fn qd_eigen_check(
    series: *const QdSeries,
    p: u64,
    weight: u32,
    level: u64,
    out_is_eigen: *mut bool,
    out_failure_index: *mut usize,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> QdStatus {
    guard(|| {
        let f = series_ref(series, "series")?;
        check_out(out_is_eigen, "out_is_eigen")?;
        check_out(out_failure_index, "out_failure_index")?;
        if p == 0 {
            return Err(Failure(QdStatus::InvalidArgument, "p must be prime".into()));
        }
        let character = if level == 0 { Character::trivial() } else { Character::principal(level)? };
        let ctx = HeckeContext::new(weight, character)?;
        match eigen_check(f, p, &ctx, f.order() / p as usize)? {
            EigenOutcome::Eigenvalue(lambda) => {
                *out_is_eigen = true;
                write_text(&lambda.to_string(), buf, len, needed)
            }
            EigenOutcome::Failure { index } => {
                *out_is_eigen = false;
                *out_failure_index = index;
                Ok(())
            }
        }
    })
}

/// `Delta_k(n)` by brute-force counting, as decimal text.
///
/// # Safety
/// `buf` valid for `len` bytes; `needed` null or writable.
#[no_mangle]
pub unsafe extern "C" fn qd_count_broken_diamonds(k: u32, n: u64, buf: *mut c_char, len: usize, needed: *mut usize) -> QdStatus {
    guard(|| {
        let count = count_broken_diamonds(k, n)?;
        write_text(&count.to_string(), buf, len, needed)
    })
}

/// Verifies a congruence family (`name`, `params` such as `"l=2"`) with
/// coefficient budget `order`. `out_json` receives one JSON report per line;
/// release it with [`qd_string_free`].
///
/// # Safety
/// Strings NUL-terminated; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn qd_verify_family(
    name: *const c_char,
    params: *const c_char,
    order: u64,
    out_all_pass: *mut bool,
    out_json: *mut *mut c_char,
) -> QdStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let params = if params.is_null() { "" } else { read_str(params, "params")? };
        check_out(out_all_pass, "out_all_pass")?;
        check_out(out_json, "out_json")?;
        let congruences = gen_family(Family::parse(name, params)?)?;
        let reports = verify_all(&congruences, order, &ExpansionCache::new())?;
        let mut text = String::new();
        for r in &reports {
            let line = serde_json::to_string(r).map_err(|e| Failure(QdStatus::Io, e.to_string()))?;
            text.push_str(&line);
            text.push('\n');
        }
        *out_all_pass = reports.iter().all(|r| r.passed());
        *out_json = CString::new(text).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// Checks a built-in identity (`lemma31`, `radu-base`, `nine-generate`,
/// `eightyone-generate`, `final:<l>`, `cube`) to `order`.
/// `out_first_mismatch` receives -1 when the sides agree.
///
/// # Safety
/// `name` NUL-terminated; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn qd_verify_identity(
    name: *const c_char,
    order: usize,
    out_equal: *mut bool,
    out_first_mismatch: *mut i64,
) -> QdStatus {
    guard(|| {
        let check = named_identity(read_str(name, "name")?, order)?;
        check_out(out_equal, "out_equal")?;
        check_out(out_first_mismatch, "out_first_mismatch")?;
        let report = verify_identity(&check, &ExpansionCache::new())?;
        *out_equal = report.equal;
        *out_first_mismatch = report.first_mismatch.map_or(-1, |i| i as i64);
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
