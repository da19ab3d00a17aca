//! C ABI for the `mccc` library.
//!
//! Every function returns a [`McccStatus`]; results are written through out
//! pointers. Filters are opaque heap handles created by `*_new` and released
//! by the matching `*_free`. Sample arrays are passed as separate real and
//! imaginary `double` arrays of equal length.
//!
//! The generated header lives at `include/mccc.h`.

#![allow(clippy::missing_safety_doc)]

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use mccc::{
    batch_fixed_point, complex_correntropy, correntropy_integral_oracle, gaussian_kernel, least_squares_weight,
    mccc_cost, recursive_init, wsnr_db, ComplexSampleSet, ComplexScalar, Error, FilterWeight, FixedPointConfig,
    KernelBandwidth, PairedDataset, QuadratureSpec, RecursiveInitConfig, RecursiveState, RlsState,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McccStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LengthMismatch = 3,
    Unidentifiable = 4,
    KernelCollapse = 5,
    QuadratureFailure = 6,
    Panic = 99,
}

impl From<Error> for McccStatus {
    fn from(e: Error) -> Self {
        match e {
            Error::LengthMismatch { .. } | Error::DimensionMismatch { .. } => McccStatus::LengthMismatch,
            Error::Unidentifiable => McccStatus::Unidentifiable,
            Error::KernelCollapse { .. } => McccStatus::KernelCollapse,
            Error::QuadratureRange { .. } | Error::QuadratureNotConverged { .. } => McccStatus::QuadratureFailure,
            Error::InvalidBandwidth(_)
            | Error::EmptySampleSet
            | Error::NonFinite { .. }
            | Error::InvalidParameter { .. } => McccStatus::InvalidArgument,
        }
    }
}

/// Recursive MCCC filter handle.
pub struct McccRecursiveFilter {
    state: RecursiveState,
    bandwidth: KernelBandwidth,
}

/// Complex RLS filter handle.
pub struct McccRlsFilter {
    state: RlsState,
}

fn guard(f: impl FnOnce() -> Result<(), McccStatus>) -> McccStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => McccStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => McccStatus::Panic,
    }
}

fn bandwidth(sigma: f64) -> Result<KernelBandwidth, McccStatus> {
    KernelBandwidth::new(sigma).map_err(McccStatus::from)
}

fn out<'a, T>(p: *mut T) -> Result<&'a mut T, McccStatus> {
    // SAFETY: callers pass either null or a valid, writable pointer.
    unsafe { p.as_mut() }.ok_or(McccStatus::NullPointer)
}

unsafe fn doubles<'a>(p: *const f64, len: usize) -> Result<&'a [f64], McccStatus> {
    if p.is_null() {
        return Err(McccStatus::NullPointer);
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn complex_set(re: *const f64, im: *const f64, len: usize) -> Result<ComplexSampleSet, McccStatus> {
    Ok(ComplexSampleSet::from_parts(doubles(re, len)?, doubles(im, len)?)?)
}

unsafe fn paired(
    x_re: *const f64,
    x_im: *const f64,
    d_re: *const f64,
    d_im: *const f64,
    len: usize,
) -> Result<PairedDataset, McccStatus> {
    Ok(PairedDataset::new(complex_set(x_re, x_im, len)?, complex_set(d_re, d_im, len)?)?)
}

fn weight(re: f64, im: f64) -> Result<FilterWeight, McccStatus> {
    Ok(FilterWeight::new(re, im)?)
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn mccc_status_message(status: McccStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        McccStatus::Ok => b"ok\0",
        McccStatus::NullPointer => b"null pointer argument\0",
        McccStatus::InvalidArgument => b"invalid argument\0",
        McccStatus::LengthMismatch => b"length mismatch\0",
        McccStatus::Unidentifiable => b"weight is unidentifiable: all inputs are zero\0",
        McccStatus::KernelCollapse => b"kernel collapse: increase the kernel bandwidth\0",
        McccStatus::QuadratureFailure => b"quadrature range or convergence failure\0",
        McccStatus::Panic => b"internal panic\0",
    };
    text.as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn mccc_gaussian_kernel(u: f64, sigma: f64, out_value: *mut f64) -> McccStatus {
    guard(|| {
        let bw = bandwidth(sigma)?;
        *out(out_value)? = gaussian_kernel(u, bw);
        Ok(())
    })
}

/// Complex correntropy between two sample sets of `len` samples.
#[no_mangle]
pub unsafe extern "C" fn mccc_complex_correntropy(
    re1: *const f64,
    im1: *const f64,
    re2: *const f64,
    im2: *const f64,
    len: usize,
    sigma: f64,
    out_value: *mut f64,
) -> McccStatus {
    guard(|| {
        let (a, b) = (complex_set(re1, im1, len)?, complex_set(re2, im2, len)?);
        *out(out_value)? = complex_correntropy(&a, &b, bandwidth(sigma)?)?;
        Ok(())
    })
}

/// Complex correntropy from its integral form, on the default grid.
#[no_mangle]
pub unsafe extern "C" fn mccc_correntropy_integral(
    re1: *const f64,
    im1: *const f64,
    re2: *const f64,
    im2: *const f64,
    len: usize,
    sigma: f64,
    out_value: *mut f64,
) -> McccStatus {
    guard(|| {
        let (a, b) = (complex_set(re1, im1, len)?, complex_set(re2, im2, len)?);
        let bw = bandwidth(sigma)?;
        *out(out_value)? = correntropy_integral_oracle(&a, &b, bw, QuadratureSpec::covering(&a, &b, bw))?;
        Ok(())
    })
}

/// MCCC cost of weight `w_re + j w_im` on the dataset `(x, d)`.
#[no_mangle]
pub unsafe extern "C" fn mccc_cost_function(
    x_re: *const f64,
    x_im: *const f64,
    d_re: *const f64,
    d_im: *const f64,
    len: usize,
    w_re: f64,
    w_im: f64,
    sigma: f64,
    out_value: *mut f64,
) -> McccStatus {
    guard(|| {
        let data = paired(x_re, x_im, d_re, d_im, len)?;
        *out(out_value)? = mccc_cost(weight(w_re, w_im)?, &data, bandwidth(sigma)?);
        Ok(())
    })
}

/// Batch fixed-point MCCC weight. `out_converged` is set to false when
/// `max_iterations` is exhausted; that is not an error.
#[no_mangle]
pub unsafe extern "C" fn mccc_batch_fixed_point(
    x_re: *const f64,
    x_im: *const f64,
    d_re: *const f64,
    d_im: *const f64,
    len: usize,
    sigma: f64,
    max_iterations: usize,
    tolerance: f64,
    initial_re: f64,
    initial_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
    out_iterations: *mut usize,
    out_converged: *mut bool,
) -> McccStatus {
    guard(|| {
        let data = paired(x_re, x_im, d_re, d_im, len)?;
        let cfg = FixedPointConfig {
            max_iterations,
            tolerance,
            initial_weight: weight(initial_re, initial_im)?,
        };
        let (re, im, iterations, converged) = (out(out_re)?, out(out_im)?, out(out_iterations)?, out(out_converged)?);
        let result = batch_fixed_point(&data, bandwidth(sigma)?, &cfg)?;
        *re = result.weight.re();
        *im = result.weight.im();
        *iterations = result.iterations;
        *converged = result.converged;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mccc_least_squares_weight(
    x_re: *const f64,
    x_im: *const f64,
    d_re: *const f64,
    d_im: *const f64,
    len: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> McccStatus {
    guard(|| {
        let data = paired(x_re, x_im, d_re, d_im, len)?;
        let (re, im) = (out(out_re)?, out(out_im)?);
        let w = least_squares_weight(&data)?;
        *re = w.re();
        *im = w.im();
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn mccc_wsnr_db(
    true_re: f64,
    true_im: f64,
    estimate_re: f64,
    estimate_im: f64,
    cap_db: f64,
    out_value: *mut f64,
) -> McccStatus {
    guard(|| {
        *out(out_value)? = wsnr_db(weight(true_re, true_im)?, weight(estimate_re, estimate_im)?, cap_db)?;
        Ok(())
    })
}

/// Creates a recursive MCCC filter. Release it with [`mccc_recursive_free`].
#[no_mangle]
pub extern "C" fn mccc_recursive_new(
    sigma: f64,
    initial_re: f64,
    initial_im: f64,
    epsilon: f64,
    out_filter: *mut *mut McccRecursiveFilter,
) -> McccStatus {
    guard(|| {
        let slot = out(out_filter)?;
        *slot = ptr::null_mut();
        let state = recursive_init(&RecursiveInitConfig {
            initial_weight: weight(initial_re, initial_im)?,
            epsilon,
        })?;
        *slot = Box::into_raw(Box::new(McccRecursiveFilter {
            state,
            bandwidth: bandwidth(sigma)?,
        }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mccc_recursive_update(
    filter: *mut McccRecursiveFilter,
    x_re: f64,
    x_im: f64,
    d_re: f64,
    d_im: f64,
) -> McccStatus {
    guard(|| {
        let f = out(filter)?;
        let (x, d) = (ComplexScalar::new(x_re, x_im), ComplexScalar::new(d_re, d_im));
        if !x.is_finite() || !d.is_finite() {
            return Err(McccStatus::InvalidArgument);
        }
        f.state.update(x, d, f.bandwidth);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mccc_recursive_weight(
    filter: *const McccRecursiveFilter,
    out_re: *mut f64,
    out_im: *mut f64,
) -> McccStatus {
    guard(|| {
        let f = filter.as_ref().ok_or(McccStatus::NullPointer)?;
        let (re, im) = (out(out_re)?, out(out_im)?);
        *re = f.state.weight().re();
        *im = f.state.weight().im();
        Ok(())
    })
}

/// Number of samples folded in so far.
#[no_mangle]
pub unsafe extern "C" fn mccc_recursive_samples_seen(
    filter: *const McccRecursiveFilter,
    out_count: *mut u64,
) -> McccStatus {
    guard(|| {
        let f = filter.as_ref().ok_or(McccStatus::NullPointer)?;
        *out(out_count)? = f.state.samples_seen();
        Ok(())
    })
}

/// Releases a filter from [`mccc_recursive_new`]. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mccc_recursive_free(filter: *mut McccRecursiveFilter) {
    if !filter.is_null() {
        drop(Box::from_raw(filter));
    }
}

/// Creates a complex RLS filter. Release it with [`mccc_rls_free`].
#[no_mangle]
pub extern "C" fn mccc_rls_new(
    initial_re: f64,
    initial_im: f64,
    p0: f64,
    lambda: f64,
    out_filter: *mut *mut McccRlsFilter,
) -> McccStatus {
    guard(|| {
        let slot = out(out_filter)?;
        *slot = ptr::null_mut();
        let state = RlsState::new(weight(initial_re, initial_im)?, p0, lambda)?;
        *slot = Box::into_raw(Box::new(McccRlsFilter { state }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mccc_rls_update(filter: *mut McccRlsFilter, x_re: f64, x_im: f64, d_re: f64, d_im: f64) -> McccStatus {
    guard(|| {
        let f = out(filter)?;
        let (x, d) = (ComplexScalar::new(x_re, x_im), ComplexScalar::new(d_re, d_im));
        if !x.is_finite() || !d.is_finite() {
            return Err(McccStatus::InvalidArgument);
        }
        f.state.update(x, d);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mccc_rls_weight(filter: *const McccRlsFilter, out_re: *mut f64, out_im: *mut f64) -> McccStatus {
    guard(|| {
        let f = filter.as_ref().ok_or(McccStatus::NullPointer)?;
        let (re, im) = (out(out_re)?, out(out_im)?);
        *re = f.state.weight().re();
        *im = f.state.weight().im();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mccc_rls_free(filter: *mut McccRlsFilter) {
    if !filter.is_null() {
        drop(Box::from_raw(filter));
    }
}
