//! Bracketed bisection. All special constants in this crate that need a
//! root-find use it: the brackets are fixed per call site and the functions
//! involved are monotone there, so bisection converges unconditionally.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RootError {
    #[error("bisect: need a bracket with opposite signs, f({lo}) and f({hi}) agree")]
    NoBracket { lo: f64, hi: f64 },
}

/// Bisection root finder on `[lo, hi]`, requiring `f(lo)` and `f(hi)` to have
/// opposite signs. Stops when the bracket width drops below `tol` or after
/// `max_iter` halvings, whichever comes first.
pub fn bisect<F>(
    mut lo: f64,
    mut hi: f64,
    f: F,
    tol: f64,
    max_iter: usize,
) -> Result<f64, RootError>
where
    F: Fn(f64) -> f64,
{
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(RootError::NoBracket { lo, hi });
    }

    let mut flo = flo;
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() < tol {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
