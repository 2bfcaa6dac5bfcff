//! C ABI over the engine: opaque group handles, status codes, and the two
//! multiplier computations. Every function is safe to call from C; all
//! failures come back as a status code with a retrievable message.

use std::cell::RefCell;
use std::ffi::CStr;
use std::os::raw::{c_char, c_int};
use std::sync::Arc;

use mlab::bogomolov::sha2;
use mlab::catalog::parse_group_file;
use mlab::cohomology::schur_h2;
use mlab::group::GroupTable;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlabStatus {
    Ok = 0,
    NullArgument = 1,
    ParseError = 2,
    InvalidGroup = 3,
    CapExceeded = 4,
    ComputeError = 5,
    BufferTooSmall = 6,
    UnknownGroup = 7,
}

/// Opaque handle to a validated finite group.
pub struct MlabGroup {
    inner: Arc<GroupTable>,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn classify(err: &mlab::Error) -> MlabStatus {
    use mlab::Error::*;
    match err {
        ClosureExceedsCap { .. } | CapExceeded { .. } => MlabStatus::CapExceeded,
        Syntax { .. } | DuplicateName(_) | InvalidPermutation(_) => MlabStatus::ParseError,
        BadTable(_) | BadIndex(_, _) => MlabStatus::InvalidGroup,
        UnknownGroup(_) => MlabStatus::UnknownGroup,
        _ => MlabStatus::ComputeError,
    }
}

const FFI_ORDER_CAP: usize = 256;
const FFI_COHOMOLOGY_CAP: usize = 64;

/// Copy the last error message for this thread into `buf` (NUL terminated,
/// truncated to `len`). Returns the full message length in bytes.
///
/// # Safety
/// `buf` must point to `len` writable bytes, or be null (query mode).
#[no_mangle]
pub unsafe extern "C" fn mlab_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Build a group from a row-major multiplication table of `order` x `order`
/// entries in `0..order`. On success writes a handle to `out`.
///
/// # Safety
/// `table` must point to `order * order` readable u32 values; `out` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mlab_group_from_table(
    table: *const u32,
    order: usize,
    out: *mut *mut MlabGroup,
) -> MlabStatus {
    if table.is_null() || out.is_null() || order == 0 {
        set_error("null argument or zero order");
        return MlabStatus::NullArgument;
    }
    let rows: Vec<Vec<usize>> = (0..order)
        .map(|i| {
            (0..order)
                .map(|j| *table.add(i * order + j) as usize)
                .collect()
        })
        .collect();
    match GroupTable::from_mul_table("ffi_group", rows) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(MlabGroup { inner: g }));
            MlabStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            classify(&e)
        }
    }
}

/// Parse group-definition text and build the group named `name`, or the
/// first group in the file when `name` is null.
///
/// # Safety
/// `text` (and `name`, if non-null) must be NUL-terminated strings; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mlab_group_parse(
    text: *const c_char,
    name: *const c_char,
    out: *mut *mut MlabGroup,
) -> MlabStatus {
    if text.is_null() || out.is_null() {
        set_error("null argument");
        return MlabStatus::NullArgument;
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("text is not valid UTF-8");
            return MlabStatus::ParseError;
        }
    };
    let defs = match parse_group_file(text) {
        Ok(d) => d,
        Err(e) => {
            set_error(e.to_string());
            return classify(&e);
        }
    };
    let def = if name.is_null() {
        defs.first()
    } else {
        let wanted = match CStr::from_ptr(name).to_str() {
            Ok(s) => s,
            Err(_) => {
                set_error("name is not valid UTF-8");
                return MlabStatus::ParseError;
            }
        };
        defs.iter().find(|d| d.name == wanted)
    };
    let def = match def {
        Some(d) => d,
        None => {
            set_error("no matching group definition");
            return MlabStatus::UnknownGroup;
        }
    };
    match def.build(FFI_ORDER_CAP) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(MlabGroup { inner: g }));
            MlabStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            classify(&e)
        }
    }
}

/// Release a handle. Null is a no-op.
///
/// # Safety
/// `g` must be a pointer previously returned by a constructor, used once.
#[no_mangle]
pub unsafe extern "C" fn mlab_group_free(g: *mut MlabGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Order of the group; 0 for a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mlab_group_order(g: *const MlabGroup) -> usize {
    if g.is_null() {
        return 0;
    }
    (&(*g).inner).order
}

unsafe fn invariants_into(
    factors: &[u64],
    buf: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> MlabStatus {
    if written.is_null() {
        set_error("null written pointer");
        return MlabStatus::NullArgument;
    }
    *written = factors.len();
    if factors.is_empty() {
        return MlabStatus::Ok;
    }
    if buf.is_null() || capacity < factors.len() {
        set_error("result buffer too small");
        return MlabStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(factors.as_ptr(), buf, factors.len());
    MlabStatus::Ok
}

/// Invariant factors of the Schur multiplier, written into `buf`. The
/// number of factors lands in `written`; call with a null `buf` to query
/// the required size.
///
/// # Safety
/// `g` must be a live handle; `buf` must hold `capacity` u64 slots if
/// non-null; `written` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mlab_schur_multiplier(
    g: *const MlabGroup,
    buf: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> MlabStatus {
    if g.is_null() {
        set_error("null group handle");
        return MlabStatus::NullArgument;
    }
    match schur_h2(&(*g).inner, FFI_COHOMOLOGY_CAP) {
        Ok(inv) => invariants_into(&inv.factors, buf, capacity, written),
        Err(e) => {
            set_error(e.to_string());
            classify(&e)
        }
    }
}

/// Invariant factors of the Bogomolov multiplier; same contract as
/// `mlab_schur_multiplier`.
///
/// # Safety
/// Same as `mlab_schur_multiplier`.
#[no_mangle]
pub unsafe extern "C" fn mlab_bogomolov_multiplier(
    g: *const MlabGroup,
    buf: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> MlabStatus {
    if g.is_null() {
        set_error("null group handle");
        return MlabStatus::NullArgument;
    }
    match sha2(&(*g).inner, FFI_COHOMOLOGY_CAP) {
        Ok(inv) => invariants_into(&inv.factors, buf, capacity, written),
        Err(e) => {
            set_error(e.to_string());
            classify(&e)
        }
    }
}

/// Library version as a status-free query; returns the engine version
/// number used in cache keys.
#[no_mangle]
pub extern "C" fn mlab_engine_version() -> c_int {
    mlab::catalog::ENGINE_VERSION.parse().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn table_group_and_multiplier() {
        // C2 x C2 as a table
        let table: Vec<u32> = vec![0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0];
        let mut g: *mut MlabGroup = std::ptr::null_mut();
        unsafe {
            assert_eq!(
                mlab_group_from_table(table.as_ptr(), 4, &mut g),
                MlabStatus::Ok
            );
            assert_eq!(mlab_group_order(g), 4);
            let mut buf = [0u64; 8];
            let mut written = 0usize;
            assert_eq!(
                mlab_schur_multiplier(g, buf.as_mut_ptr(), buf.len(), &mut written),
                MlabStatus::Ok
            );
            assert_eq!(&buf[..written], &[2]);
            assert_eq!(
                mlab_bogomolov_multiplier(g, buf.as_mut_ptr(), buf.len(), &mut written),
                MlabStatus::Ok
            );
            assert_eq!(written, 0);
            mlab_group_free(g);
        }
    }

    #[test]
    fn parse_and_query_size() {
        let text = CString::new("group D4\nperm (1 2 3 4)\nperm (1 3)\nend\n").unwrap();
        let name = CString::new("D4").unwrap();
        let mut g: *mut MlabGroup = std::ptr::null_mut();
        unsafe {
            assert_eq!(
                mlab_group_parse(text.as_ptr(), name.as_ptr(), &mut g),
                MlabStatus::Ok
            );
            let mut written = 0usize;
            assert_eq!(
                mlab_schur_multiplier(g, std::ptr::null_mut(), 0, &mut written),
                MlabStatus::BufferTooSmall
            );
            assert_eq!(written, 1);
            mlab_group_free(g);
        }
    }

    #[test]
    fn errors_carry_messages() {
        let text = CString::new("group X\nperm (1 1 2)\nend\n").unwrap();
        let mut g: *mut MlabGroup = std::ptr::null_mut();
        unsafe {
            assert_eq!(
                mlab_group_parse(text.as_ptr(), std::ptr::null(), &mut g),
                MlabStatus::ParseError
            );
            let mut buf = [0i8; 256];
            let n = mlab_last_error_message(buf.as_mut_ptr() as *mut c_char, buf.len());
            assert!(n > 0);
            let msg = CStr::from_ptr(buf.as_ptr() as *const c_char)
                .to_string_lossy()
                .to_string();
            assert!(msg.contains("repeated point"), "{msg}");
        }
    }

    #[test]
    fn bad_table_rejected() {
        let table: Vec<u32> = vec![0, 1, 1, 1];
        let mut g: *mut MlabGroup = std::ptr::null_mut();
        unsafe {
            assert_eq!(
                mlab_group_from_table(table.as_ptr(), 2, &mut g),
                MlabStatus::InvalidGroup
            );
        }
    }
}
