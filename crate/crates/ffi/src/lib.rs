//! C interface to the `qspheres` library.
//!
//! A caller creates a [`QsSession`] for one algebra, adjusts its parameters
//! with the setters, and runs computations against it. Every function returns
//! a [`QsStatus`]; on failure the session keeps a message that
//! [`qs_session_last_error`] returns. Results are written through out
//! pointers, which are left untouched on failure.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qspheres::error::Error;
use qspheres::oddspheres;
use qspheres::opalg::AlgebraWord;
use qspheres::podles::{self, PodlesParams};
use qspheres::qcore::{DeformationParam, HalfInt};
use qspheres::s4q;
use qspheres::verify::{verify, Algebra, VerifyParams};

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidQ = 3,
    InvalidParam = 4,
    Domain = 5,
    DimensionMismatch = 6,
    WrongAlgebra = 7,
    UnboundGenerator = 8,
    MarginTooSmall = 9,
    Parse = 10,
    Unsupported = 11,
    Panic = 12,
}

impl From<&Error> for QsStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidQ(..) => QsStatus::InvalidQ,
            Error::InvalidParam(_) => QsStatus::InvalidParam,
            Error::Domain(_) => QsStatus::Domain,
            Error::DimensionMismatch(..) => QsStatus::DimensionMismatch,
            Error::WrongAlgebra { .. } => QsStatus::WrongAlgebra,
            Error::UnboundGenerator(..) => QsStatus::UnboundGenerator,
            Error::MarginTooSmall { .. } => QsStatus::MarginTooSmall,
            Error::Parse(_) => QsStatus::Parse,
        }
    }
}

/// Worst interior residuals of a verification run.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QsVerifyReport {
    pub relation: f64,
    pub adjoint: f64,
    pub labels: usize,
}

/// Opaque session: an algebra, its parameters and the last error message.
pub struct QsSession {
    algebra: Algebra,
    params: VerifyParams,
    cutoff_set: bool,
    last_error: CString,
}

impl QsSession {
    fn cutoff(&self, default: HalfInt) -> HalfInt {
        if self.cutoff_set {
            self.params.cutoff
        } else {
            default
        }
    }

    fn fail(&mut self, status: QsStatus, msg: impl Into<String>) -> QsStatus {
        let msg = msg.into().replace('\0', " ");
        self.last_error = CString::new(msg).unwrap_or_default();
        status
    }

    fn run(&mut self, f: impl FnOnce(&mut Self) -> Result<(), Failure>) -> QsStatus {
        self.last_error = CString::default();
        match catch_unwind(AssertUnwindSafe(|| f(self))) {
            Ok(Ok(())) => QsStatus::Ok,
            Ok(Err(Failure(status, msg))) => self.fail(status, msg),
            Err(_) => self.fail(QsStatus::Panic, "internal panic"),
        }
    }
}

struct Failure(QsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(QsStatus::from(&e), e.to_string())
    }
}

fn unsupported(what: &str, alg: Algebra) -> Failure {
    Failure(
        QsStatus::Unsupported,
        format!("{what} is not available for {alg}"),
    )
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(QsStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(QsStatus::InvalidUtf8, "string is not UTF-8".into()))
}

fn podles_params(s: &QsSession) -> Result<PodlesParams, Failure> {
    Ok(PodlesParams::new(s.params.q, s.params.s, s.params.n)?)
}

/// Create a session for `algebra` (for example `"podles"`, `"s4q-chiral"`,
/// `"odd"`) at deformation parameter `q`. Other parameters start at
/// `s = 0`, `N = 1/2`, `ℓ = 2`, no perturbation and the algebra's default
/// cutoff. Free the result with [`qs_session_free`].
///
/// # Safety
/// `algebra` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_session_new(
    algebra: *const c_char,
    q: f64,
    out: *mut *mut QsSession,
) -> QsStatus {
    if out.is_null() {
        return QsStatus::NullPointer;
    }
    let made = catch_unwind(|| -> Result<QsSession, QsStatus> {
        let name = read_str(algebra).map_err(|f| f.0)?;
        let alg: Algebra = name.parse().map_err(|e: Error| QsStatus::from(&e))?;
        DeformationParam::new(q).map_err(|e| QsStatus::from(&e))?;
        Ok(QsSession {
            algebra: alg,
            params: VerifyParams {
                q,
                s: 0.0,
                n: HalfInt::from_twice(1),
                ell: 2,
                cutoff: alg.default_cutoff(),
                perturb: 0.0,
            },
            cutoff_set: false,
            last_error: CString::default(),
        })
    });
    match made {
        Ok(Ok(s)) => {
            *out = Box::into_raw(Box::new(s));
            QsStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => QsStatus::Panic,
    }
}

/// Release a session. Passing null is a no-op.
///
/// # Safety
/// `session` must come from [`qs_session_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qs_session_free(session: *mut QsSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Message of the last failure on this session, or an empty string. The
/// pointer stays valid until the next call on the session.
///
/// # Safety
/// `session` must be null or a live session.
#[no_mangle]
pub unsafe extern "C" fn qs_session_last_error(session: *const QsSession) -> *const c_char {
    match session.as_ref() {
        Some(s) => s.last_error.as_ptr(),
        None => ptr::null(),
    }
}

macro_rules! with_session {
    ($session:expr, |$s:ident| $body:expr) => {{
        let Some($s) = $session.as_mut() else {
            return QsStatus::NullPointer;
        };
        $s.run(|$s| $body)
    }};
}

/// Set the Podleś parameter `s`.
///
/// # Safety
/// `session` must be a live session.
#[no_mangle]
pub unsafe extern "C" fn qs_session_set_s(session: *mut QsSession, s: f64) -> QsStatus {
    with_session!(session, |h| {
        h.params.s = s;
        Ok(())
    })
}

/// Set the monopole charge `N`, given as `2N`.
///
/// # Safety
/// `session` must be a live session.
#[no_mangle]
pub unsafe extern "C" fn qs_session_set_charge_twice(
    session: *mut QsSession,
    twice: i32,
) -> QsStatus {
    with_session!(session, |h| {
        h.params.n = HalfInt::from_twice(twice);
        Ok(())
    })
}

/// Set the rank `ℓ` of the odd sphere `S^{2ℓ+1}_q`.
///
/// # Safety
/// `session` must be a live session.
#[no_mangle]
pub unsafe extern "C" fn qs_session_set_ell(session: *mut QsSession, ell: usize) -> QsStatus {
    with_session!(session, |h| {
        if !(2..=8).contains(&ell) {
            return Err(Failure(
                QsStatus::InvalidParam,
                format!("ℓ = {ell} is outside 2..=8"),
            ));
        }
        h.params.ell = ell;
        Ok(())
    })
}

/// Set the truncation cutoff `Λ`, given as `2Λ`.
///
/// # Safety
/// `session` must be a live session.
#[no_mangle]
pub unsafe extern "C" fn qs_session_set_cutoff_twice(
    session: *mut QsSession,
    twice: i32,
) -> QsStatus {
    with_session!(session, |h| {
        if twice < 0 {
            return Err(Failure(
                QsStatus::InvalidParam,
                "cutoff must be non-negative".into(),
            ));
        }
        h.params.cutoff = HalfInt::from_twice(twice);
        h.cutoff_set = true;
        Ok(())
    })
}

/// Set the relative perturbation applied by [`qs_verify`].
///
/// # Safety
/// `session` must be a live session.
#[no_mangle]
pub unsafe extern "C" fn qs_session_set_perturb(session: *mut QsSession, perturb: f64) -> QsStatus {
    with_session!(session, |h| {
        h.params.perturb = perturb;
        Ok(())
    })
}

/// Check relations and adjoint consistency on the truncated basis.
///
/// # Safety
/// `session` must be a live session and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_verify(session: *mut QsSession, out: *mut QsVerifyReport) -> QsStatus {
    if out.is_null() {
        return QsStatus::NullPointer;
    }
    with_session!(session, |h| {
        let r = verify(h.algebra, &h.params)?;
        *out = QsVerifyReport {
            relation: r.relation,
            adjoint: r.adjoint,
            labels: r.labels,
        };
        Ok(())
    })
}

/// Truncated Fredholm index: the Podleś pairing with the projection of
/// charge `N`, the chiral index on `S^4_q`, or the Fock-space index.
///
/// # Safety
/// `session` must be a live session and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_index(session: *mut QsSession, out: *mut f64) -> QsStatus {
    if out.is_null() {
        return QsStatus::NullPointer;
    }
    with_session!(session, |h| {
        let q = DeformationParam::new(h.params.q)?;
        *out = match h.algebra {
            Algebra::Podles => {
                podles::fredholm_index(&podles_params(h)?, h.cutoff(HalfInt::from_int(40)))?
            }
            Algebra::S4Scalar | Algebra::S4Chiral | Algebra::S4ChiralPlus => {
                s4q::chiral_index(q, h.cutoff(HalfInt::from_int(25)))?
            }
            Algebra::S4Fock => {
                let k = h.cutoff(HalfInt::from_int(30)).twice / 2;
                s4q::fock_index(q, k as u32)?
            }
            other => return Err(unsupported("index", other)),
        };
        Ok(())
    })
}

/// Truncated twisted index: `sign(N)[2|N|]` on the Podleś sphere, the
/// twisted pairing on `S^4_q`.
///
/// # Safety
/// `session` must be a live session and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_qindex(session: *mut QsSession, out: *mut f64) -> QsStatus {
    if out.is_null() {
        return QsStatus::NullPointer;
    }
    with_session!(session, |h| {
        let q = DeformationParam::new(h.params.q)?;
        *out = match h.algebra {
            Algebra::Podles => {
                podles::twisted_q_index(&podles_params(h)?, h.cutoff(HalfInt::from_int(40)))?
            }
            Algebra::S4Scalar | Algebra::S4Chiral | Algebra::S4ChiralPlus => {
                s4q::twisted_pairing4(q, h.cutoff(HalfInt::from_int(15)))?
            }
            other => return Err(unsupported("qindex", other)),
        };
        Ok(())
    })
}

/// Haar state of a word in the `S^4_q` generators, computed in the GNS
/// representation.
///
/// # Safety
/// `session` must be a live session, `word` a valid NUL-terminated string
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_haar(
    session: *mut QsSession,
    word: *const c_char,
    out: *mut f64,
) -> QsStatus {
    if out.is_null() {
        return QsStatus::NullPointer;
    }
    with_session!(session, |h| {
        let w = AlgebraWord::parse(read_str(word)?)?;
        *out = s4q::haar_gns(&w, DeformationParam::new(h.params.q)?)?;
        Ok(())
    })
}

/// Noncommutative integral of a word in `z_1, …, z_{ℓ+1}` on the odd sphere
/// of the session's rank.
///
/// # Safety
/// `session` must be a live session, `word` a valid NUL-terminated string
/// and `re`, `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qs_nc_integral(
    session: *mut QsSession,
    word: *const c_char,
    re: *mut f64,
    im: *mut f64,
) -> QsStatus {
    if re.is_null() || im.is_null() {
        return QsStatus::NullPointer;
    }
    with_session!(session, |h| {
        if h.algebra != Algebra::Odd {
            return Err(unsupported("ncintegral", h.algebra));
        }
        let w = AlgebraWord::parse(read_str(word)?)?;
        let v = oddspheres::nc_integral(&w, h.params.ell, DeformationParam::new(h.params.q)?)?;
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}

/// Multiplicity `μ_k` of the eigenvalue `k` of `|D|` on `S^{2ℓ+1}_q`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_odd_multiplicity(ell: usize, k: u64, out: *mut u64) -> QsStatus {
    if out.is_null() {
        return QsStatus::NullPointer;
    }
    match catch_unwind(|| oddspheres::multiplicity(ell, k)) {
        Ok(Ok(m)) => match u64::try_from(m) {
            Ok(m) => {
                *out = m;
                QsStatus::Ok
            }
            Err(_) => QsStatus::Domain,
        },
        Ok(Err(e)) => QsStatus::from(&e),
        Err(_) => QsStatus::Panic,
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn qs_status_message(status: QsStatus) -> *const c_char {
    let s: &'static CStr = match status {
        QsStatus::Ok => c"ok",
        QsStatus::NullPointer => c"null pointer",
        QsStatus::InvalidUtf8 => c"string is not UTF-8",
        QsStatus::InvalidQ => c"q must lie in (0, 1)",
        QsStatus::InvalidParam => c"invalid parameter",
        QsStatus::Domain => c"argument outside the domain",
        QsStatus::DimensionMismatch => c"dimension mismatch",
        QsStatus::WrongAlgebra => c"operator applied to a vector of another algebra",
        QsStatus::UnboundGenerator => c"word uses an unbound generator",
        QsStatus::MarginTooSmall => c"truncation margin too small",
        QsStatus::Parse => c"parse error",
        QsStatus::Unsupported => c"computation not available for this algebra",
        QsStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}
