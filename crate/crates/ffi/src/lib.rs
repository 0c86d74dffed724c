//! C ABI over `truss-core`.
//!
//! Every fallible call returns a [`TrussStatus`] and writes its result through
//! an out-pointer. On failure the message is kept per thread and can be read
//! with [`truss_last_error`]. Handles and strings returned by this library are
//! released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use truss_core::cli::doc::{self, DocError, Document};
use truss_core::truss::TrussError;
use truss_core::ztruss::{are_isomorphic, canonicalize, classify_special, ZTrussParams};
use truss_core::{FiniteHeap, FiniteTruss, HeapError, HeapSource, Limits, SubHeap};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrussStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ValidationFailed = 3,
    CarrierTooLarge = 4,
    Panic = 5,
}

/// Opaque finite heap.
pub struct TrussHeap(FiniteHeap);

/// Opaque finite truss.
pub struct TrussTruss(FiniteTruss);

/// Opaque parameters of a truss on the integers.
pub struct TrussZParams(ZTrussParams);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: TrussStatus, msg: impl Into<String>) -> TrussStatus {
    set_error(msg);
    status
}

fn heap_status(e: &HeapError) -> TrussStatus {
    match e {
        HeapError::CarrierTooLarge { .. } => TrussStatus::CarrierTooLarge,
        HeapError::IndexOutOfRange { .. }
        | HeapError::LengthMismatch { .. }
        | HeapError::MalformedTable(_)
        | HeapError::EmptyCarrier => {
            TrussStatus::InvalidArgument
        }
        _ => TrussStatus::ValidationFailed,
    }
}

fn truss_status(e: &TrussError) -> TrussStatus {
    match e {
        TrussError::Heap(h) => heap_status(h),
        TrussError::CarrierTooLarge { .. } => TrussStatus::CarrierTooLarge,
        TrussError::MalformedTable(_) => TrussStatus::InvalidArgument,
        _ => TrussStatus::ValidationFailed,
    }
}

fn guard(f: impl FnOnce() -> TrussStatus) -> TrussStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(TrussStatus::Panic, "internal panic"),
    }
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if p.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn write<T>(out: *mut T, v: T) -> TrussStatus {
    if out.is_null() {
        return fail(TrussStatus::NullPointer, "null output pointer");
    }
    out.write(v);
    TrussStatus::Ok
}

fn string_out(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Copy of the last error message on this thread, or null. Free with
/// [`truss_string_free`].
#[no_mangle]
pub extern "C" fn truss_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn truss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `ℤ_{n1} × … × ℤ_{nk}`.
///
/// # Safety
/// `orders` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_heap_cyclic(orders: *const usize, len: usize, out: *mut *mut TrussHeap) -> TrussStatus {
    guard(|| {
        let Some(orders) = slice(orders, len) else {
            return fail(TrussStatus::NullPointer, "null orders");
        };
        match FiniteHeap::build(&HeapSource::Cyclic(orders.to_vec()), &Limits::default()) {
            Ok(h) => write(out, Box::into_raw(Box::new(TrussHeap(h)))),
            Err(e) => fail(heap_status(&e), e.to_string()),
        }
    })
}

/// Heap from a row-major `n × n` Abelian group table.
///
/// # Safety
/// `table` must point to `n * n` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_heap_from_group_table(table: *const usize, n: usize, out: *mut *mut TrussHeap) -> TrussStatus {
    guard(|| {
        let Some(flat) = n.checked_mul(n).and_then(|nn| slice(table, nn)) else {
            return fail(TrussStatus::NullPointer, "null table");
        };
        let rows: Vec<Vec<usize>> = flat.chunks(n.max(1)).map(<[_]>::to_vec).collect();
        match FiniteHeap::build(&HeapSource::GroupTable(rows), &Limits::default()) {
            Ok(h) => write(out, Box::into_raw(Box::new(TrussHeap(h)))),
            Err(e) => fail(heap_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `h` must be null or a heap handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn truss_heap_free(h: *mut TrussHeap) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Carrier size, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live heap handle.
#[no_mangle]
pub unsafe extern "C" fn truss_heap_size(h: *const TrussHeap) -> usize {
    h.as_ref().map_or(0, |h| h.0.size())
}

/// `[x, y, z]`.
///
/// # Safety
/// `h` must be a live heap handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_heap_bracket(h: *const TrussHeap, x: usize, y: usize, z: usize, out: *mut usize) -> TrussStatus {
    guard(|| {
        let Some(h) = h.as_ref() else {
            return fail(TrussStatus::NullPointer, "null heap");
        };
        match h.0.bracket(x, y, z) {
            Ok(v) => write(out, v),
            Err(e) => fail(heap_status(&e), e.to_string()),
        }
    })
}

/// Validates a row-major multiplication table on a copy of `heap`.
///
/// # Safety
/// `heap` must be a live heap handle, `mul` must point to `n * n` values
/// with `n` the heap size, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_truss_new(heap: *const TrussHeap, mul: *const usize, out: *mut *mut TrussTruss) -> TrussStatus {
    guard(|| {
        let Some(h) = heap.as_ref() else {
            return fail(TrussStatus::NullPointer, "null heap");
        };
        let n = h.0.size();
        let Some(flat) = slice(mul, n * n) else {
            return fail(TrussStatus::NullPointer, "null table");
        };
        let rows: Vec<Vec<usize>> = flat.chunks(n).map(<[_]>::to_vec).collect();
        match FiniteTruss::build(h.0.clone(), &rows) {
            Ok(t) => write(out, Box::into_raw(Box::new(TrussTruss(t)))),
            Err(e) => fail(truss_status(&e), e.to_string()),
        }
    })
}

fn doc_status(e: &DocError) -> TrussStatus {
    match e {
        DocError::Io(_) | DocError::Parse(_) => TrussStatus::InvalidArgument,
        DocError::Validation(f) if f.axiom == "CarrierTooLarge" => TrussStatus::CarrierTooLarge,
        DocError::Validation(_) => TrussStatus::ValidationFailed,
    }
}

unsafe fn parse_json(json: *const c_char) -> Result<Document, TrussStatus> {
    if json.is_null() {
        return Err(fail(TrussStatus::NullPointer, "null document"));
    }
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        return Err(fail(TrussStatus::InvalidArgument, "document is not UTF-8"));
    };
    doc::parse(text, Path::new("."), &Limits::default()).map_err(|e| fail(doc_status(&e), e.to_string()))
}

/// Truss from a JSON truss document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_truss_from_json(json: *const c_char, out: *mut *mut TrussTruss) -> TrussStatus {
    guard(|| match parse_json(json) {
        Ok(Document::Truss(t)) => write(out, Box::into_raw(Box::new(TrussTruss(t)))),
        Ok(d) => fail(TrussStatus::InvalidArgument, format!("expected a truss document, found {}", d.kind())),
        Err(s) => s,
    })
}

/// Canonical JSON document, or null for a null handle. Free with
/// [`truss_string_free`].
///
/// # Safety
/// `t` must be null or a live truss handle.
#[no_mangle]
pub unsafe extern "C" fn truss_truss_to_json(t: *const TrussTruss) -> *mut c_char {
    match t.as_ref() {
        Some(t) => string_out(doc::save(&Document::Truss(t.0.clone()))),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `t` must be null or a truss handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn truss_truss_free(t: *mut TrussTruss) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be null or a live truss handle.
#[no_mangle]
pub unsafe extern "C" fn truss_truss_size(t: *const TrussTruss) -> usize {
    t.as_ref().map_or(0, |t| t.0.size())
}

/// `x · y`.
///
/// # Safety
/// `t` must be a live truss handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_truss_mul(t: *const TrussTruss, x: usize, y: usize, out: *mut usize) -> TrussStatus {
    guard(|| {
        let Some(t) = t.as_ref() else {
            return fail(TrussStatus::NullPointer, "null truss");
        };
        if x >= t.0.size() || y >= t.0.size() {
            return fail(TrussStatus::InvalidArgument, "element out of range");
        }
        write(out, t.0.mul(x, y))
    })
}

/// Writes the identity (`found` = true) or reports that none exists.
///
/// # Safety
/// `t` must be a live truss handle; `found` and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_truss_identity(t: *const TrussTruss, found: *mut bool, out: *mut usize) -> TrussStatus {
    special(t, found, out, |s| s.identity)
}

/// Writes the two-sided absorber (`found` = true) or reports that none exists.
///
/// # Safety
/// `t` must be a live truss handle; `found` and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_truss_absorber(t: *const TrussTruss, found: *mut bool, out: *mut usize) -> TrussStatus {
    special(t, found, out, |s| s.absorber)
}

unsafe fn special(
    t: *const TrussTruss,
    found: *mut bool,
    out: *mut usize,
    pick: impl FnOnce(truss_core::SpecialElements) -> Option<usize>,
) -> TrussStatus {
    guard(|| {
        let Some(t) = t.as_ref() else {
            return fail(TrussStatus::NullPointer, "null truss");
        };
        if found.is_null() || out.is_null() {
            return fail(TrussStatus::NullPointer, "null output pointer");
        }
        let v = pick(t.0.special_elements());
        found.write(v.is_some());
        out.write(v.unwrap_or(0));
        TrussStatus::Ok
    })
}

unsafe fn subheap_of(t: &FiniteTruss, members: *const usize, len: usize) -> Result<SubHeap, TrussStatus> {
    let Some(m) = slice(members, len) else {
        return Err(fail(TrussStatus::NullPointer, "null members"));
    };
    SubHeap::new(t.heap(), m.iter().copied()).map_err(|e| fail(heap_status(&e), e.to_string()))
}

/// Whether the members form a two-sided paragon.
///
/// # Safety
/// `t` must be a live truss handle, `members` must point to `len` values and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_truss_is_paragon(t: *const TrussTruss, members: *const usize, len: usize, out: *mut bool) -> TrussStatus {
    guard(|| {
        let Some(t) = t.as_ref() else {
            return fail(TrussStatus::NullPointer, "null truss");
        };
        match subheap_of(&t.0, members, len) {
            Ok(s) => write(out, t.0.is_paragon(&s)),
            Err(st) => st,
        }
    })
}

/// Quotient by a paragon; fails with `ValidationFailed` otherwise.
///
/// # Safety
/// `t` must be a live truss handle, `members` must point to `len` values and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_truss_quotient(
    t: *const TrussTruss,
    members: *const usize,
    len: usize,
    out: *mut *mut TrussTruss,
) -> TrussStatus {
    guard(|| {
        let Some(t) = t.as_ref() else {
            return fail(TrussStatus::NullPointer, "null truss");
        };
        let s = match subheap_of(&t.0, members, len) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match t.0.quotient_truss(&s) {
            Ok((q, _)) => write(out, Box::into_raw(Box::new(TrussTruss(q)))),
            Err(e) => fail(truss_status(&e), e.to_string()),
        }
    })
}

/// `a·mn + b(m+n) + c` with `ac = b(b−1)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_zparams_new(a: i64, b: i64, c: i64, out: *mut *mut TrussZParams) -> TrussStatus {
    guard(|| match ZTrussParams::commutative(a, b, c) {
        Ok(p) => write(out, Box::into_raw(Box::new(TrussZParams(p)))),
        Err(e) => fail(TrussStatus::ValidationFailed, e.to_string()),
    })
}

/// `m·n = m` (`right` = false) or `m·n = n` (`right` = true).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_zparams_projection(right: bool, out: *mut *mut TrussZParams) -> TrussStatus {
    guard(|| {
        let p = if right { ZTrussParams::RightProjection } else { ZTrussParams::LeftProjection };
        write(out, Box::into_raw(Box::new(TrussZParams(p))))
    })
}

/// Parameters from a JSON zparams document; integers may be arbitrarily large.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_zparams_from_json(json: *const c_char, out: *mut *mut TrussZParams) -> TrussStatus {
    guard(|| match parse_json(json) {
        Ok(Document::ZParams(p)) => write(out, Box::into_raw(Box::new(TrussZParams(p)))),
        Ok(d) => fail(TrussStatus::InvalidArgument, format!("expected a zparams document, found {}", d.kind())),
        Err(s) => s,
    })
}

/// # Safety
/// `p` must be null or a zparams handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn truss_zparams_free(p: *mut TrussZParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// `(a,b,c)`, `left projection` or `right projection`. Free with
/// [`truss_string_free`].
///
/// # Safety
/// `p` must be null or a live zparams handle.
#[no_mangle]
pub unsafe extern "C" fn truss_zparams_to_string(p: *const TrussZParams) -> *mut c_char {
    match p.as_ref() {
        Some(p) => string_out(p.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// Orbit representative under the automorphisms `n ↦ k ± n`.
///
/// # Safety
/// `p` must be a live zparams handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_zparams_canonical(p: *const TrussZParams, out: *mut *mut TrussZParams) -> TrussStatus {
    guard(|| {
        let Some(p) = p.as_ref() else {
            return fail(TrussStatus::NullPointer, "null params");
        };
        match canonicalize(&p.0) {
            Ok((c, _)) => write(out, Box::into_raw(Box::new(TrussZParams(c)))),
            Err(e) => fail(TrussStatus::ValidationFailed, e.to_string()),
        }
    })
}

/// # Safety
/// `p` and `q` must be live zparams handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_zparams_isomorphic(p: *const TrussZParams, q: *const TrussZParams, out: *mut bool) -> TrussStatus {
    guard(|| {
        let (Some(p), Some(q)) = (p.as_ref(), q.as_ref()) else {
            return fail(TrussStatus::NullPointer, "null params");
        };
        match are_isomorphic(&p.0, &q.0) {
            Ok(w) => write(out, w.is_some()),
            Err(e) => fail(TrussStatus::ValidationFailed, e.to_string()),
        }
    })
}

/// Whether the structure has an identity and whether it has an absorber.
///
/// # Safety
/// `p` must be a live zparams handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_zparams_special(p: *const TrussZParams, unital: *mut bool, ring_type: *mut bool) -> TrussStatus {
    guard(|| {
        let Some(p) = p.as_ref() else {
            return fail(TrussStatus::NullPointer, "null params");
        };
        if unital.is_null() || ring_type.is_null() {
            return fail(TrussStatus::NullPointer, "null output pointer");
        }
        match classify_special(&p.0) {
            Ok(s) => {
                unital.write(s.unital());
                ring_type.write(s.ring_type());
                TrussStatus::Ok
            }
            Err(e) => fail(TrussStatus::ValidationFailed, e.to_string()),
        }
    })
}

/// Type-3 pairs `(b, c)` for `a`, written as `2·len` values into `out`.
/// `count` receives the number of pairs even when `cap` is too small.
///
/// # Safety
/// `out` must point to `2 * cap` writable values (or be null with `cap = 0`);
/// `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn truss_type3(a: u64, out: *mut u64, cap: usize, count: *mut usize) -> TrussStatus {
    guard(|| {
        let found = truss_core::ztruss::type3_structures(a);
        if count.is_null() {
            return fail(TrussStatus::NullPointer, "null count");
        }
        count.write(found.len());
        if found.len() > cap {
            return fail(TrussStatus::InvalidArgument, format!("buffer holds {cap} pairs, need {}", found.len()));
        }
        if !found.is_empty() && out.is_null() {
            return fail(TrussStatus::NullPointer, "null buffer");
        }
        for (i, (b, c)) in found.iter().enumerate() {
            out.add(2 * i).write(*b);
            out.add(2 * i + 1).write(*c);
        }
        TrussStatus::Ok
    })
}
