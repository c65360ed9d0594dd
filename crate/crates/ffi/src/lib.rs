//! C ABI over [`graphsim::GraphRegister`].
//!
//! Registers are opaque heap handles. Functions that can fail return `-1`
//! (or a null pointer) and leave a message for [`graphsim_last_error`] on the
//! calling thread. A handle must not be used from two threads at once.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graphsim::{tableau_from_graphreg, Error, GraphRegister};

/// Opaque register handle.
pub struct GraphsimRegister(GraphRegister);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, turning errors and panics into the thread's last error.
fn guard<T>(fallback: T, f: impl FnOnce() -> Result<T, Error>) -> T {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => v,
        Ok(Err(e)) => {
            set_error(e.to_string());
            fallback
        }
        Err(_) => {
            set_error("internal error: panic inside graphsim".into());
            fallback
        }
    }
}

unsafe fn register<'a>(handle: *mut GraphsimRegister) -> Result<&'a mut GraphRegister, Error> {
    // SAFETY: the caller passes a live handle from `graphsim_register_new`
    // or null, which is rejected here.
    unsafe { handle.as_mut() }
        .map(|h| &mut h.0)
        .ok_or_else(|| Error::ContractViolation("null register handle".into()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn graphsim_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version string contains NUL"),
        };
    VERSION.as_ptr()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next graphsim call on the same thread.
#[no_mangle]
pub extern "C" fn graphsim_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// New register of `n` qubits in |0…0⟩, or null when `n == 0`.
#[no_mangle]
pub extern "C" fn graphsim_register_new(n: usize, seed: u64) -> *mut GraphsimRegister {
    guard(ptr::null_mut(), || {
        GraphRegister::new(n, seed).map(|r| Box::into_raw(Box::new(GraphsimRegister(r))))
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `handle` must be null or come from `graphsim_register_new` and not have
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn graphsim_register_free(handle: *mut GraphsimRegister) {
    if !handle.is_null() {
        // SAFETY: guaranteed by the caller.
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// # Safety
/// `handle` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn graphsim_num_qubits(handle: *mut GraphsimRegister) -> isize {
    guard(-1, || {
        unsafe { register(handle) }.map(|r| r.num_qubits() as isize)
    })
}

macro_rules! single_qubit_gate {
    ($(#[$doc:meta])* $name:ident, $method:ident) => {
        $(#[$doc])*
        ///
        /// # Safety
        /// `handle` must be a live handle.
        #[no_mangle]
        pub unsafe extern "C" fn $name(handle: *mut GraphsimRegister, q: usize) -> c_int {
            guard(-1, || unsafe { register(handle) }?.$method(q).map(|_| 0))
        }
    };
}

single_qubit_gate!(
    /// Hadamard gate.
    graphsim_hadamard,
    hadamard
);
single_qubit_gate!(
    /// Phase gate S = diag(1, i).
    graphsim_s,
    s_gate
);
single_qubit_gate!(
    /// S†.
    graphsim_sdg,
    s_dagger
);
single_qubit_gate!(graphsim_x, x);
single_qubit_gate!(graphsim_y, y);
single_qubit_gate!(graphsim_z, z);

/// Controlled-phase gate.
///
/// # Safety
/// `handle` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn graphsim_cphase(
    handle: *mut GraphsimRegister,
    a: usize,
    b: usize,
) -> c_int {
    guard(-1, || unsafe { register(handle) }?.cphase(a, b).map(|_| 0))
}

/// # Safety
/// `handle` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn graphsim_cnot(
    handle: *mut GraphsimRegister,
    control: usize,
    target: usize,
) -> c_int {
    guard(-1, || {
        unsafe { register(handle) }?
            .cnot(control, target)
            .map(|_| 0)
    })
}

/// Measures `q` in the computational basis and returns the outcome bit.
///
/// `forced` is 0 or 1 to force a random outcome, or any negative value to
/// draw it from the register's generator. When `deterministic` is not null
/// it receives 1 for a determined outcome and 0 for a random one.
///
/// # Safety
/// `handle` must be a live handle; `deterministic` must be null or valid
/// for a write.
#[no_mangle]
pub unsafe extern "C" fn graphsim_measure(
    handle: *mut GraphsimRegister,
    q: usize,
    forced: c_int,
    deterministic: *mut c_int,
) -> c_int {
    guard(-1, || {
        let forced = match forced {
            f if f < 0 => None,
            0 => Some(0),
            1 => Some(1),
            f => {
                return Err(Error::ContractViolation(format!(
                    "forced outcome {f} is not a bit"
                )))
            }
        };
        let record = unsafe { register(handle) }?.measure(q, forced)?;
        if !deterministic.is_null() {
            // SAFETY: guaranteed by the caller.
            unsafe { *deterministic = c_int::from(record.deterministic) };
        }
        Ok(c_int::from(record.outcome))
    })
}

/// Canonical stabilizer tableau, one `+ZZXI`-style line per generator.
/// Release the result with [`graphsim_string_free`].
///
/// # Safety
/// `handle` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn graphsim_stabilizer_text(handle: *mut GraphsimRegister) -> *mut c_char {
    guard(ptr::null_mut(), || {
        let reg = unsafe { register(handle) }?;
        let text = tableau_from_graphreg(reg).canonicalize()?.to_string();
        Ok(CString::new(text)
            .expect("tableau text has no NUL")
            .into_raw())
    })
}

/// Adjacency form, one `vertex vop neighbors...` line per vertex. Release
/// the result with [`graphsim_string_free`].
///
/// # Safety
/// `handle` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn graphsim_adjacency_text(handle: *mut GraphsimRegister) -> *mut c_char {
    guard(ptr::null_mut(), || {
        let text = unsafe { register(handle) }?.to_adjacency_text();
        Ok(CString::new(text)
            .expect("adjacency text has no NUL")
            .into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn graphsim_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: guaranteed by the caller.
        drop(unsafe { CString::from_raw(s) });
    }
}
