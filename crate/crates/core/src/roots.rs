//! Bracketing root finders for scalar functions.

use crate::{Error, Result};

/// Termination settings for [`bisect`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    /// Absolute width of the bracket at which iteration stops.
    pub x_abs: f64,
    pub max_iter: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { x_abs: 1e-12, max_iter: 200 }
    }
}

/// Outcome of a bracketing search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

/// Finds a sign change of `f` in `[lo, hi]` by bisection.
///
/// `f(lo)` and `f(hi)` must have opposite signs (or one of them is zero).
/// The returned point is whichever bracket end has the smaller `|f|` once
/// the bracket is narrower than `tol.x_abs`.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: Tolerance) -> Result<Root>
where
    F: FnMut(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::Contract("bisection bracket must satisfy lo < hi"));
    }
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(Root { x: lo, fx: f_lo, iterations: 0 });
    }
    if f_hi == 0.0 {
        return Ok(Root { x: hi, fx: f_hi, iterations: 0 });
    }
    if f_lo.is_nan() || f_hi.is_nan() || (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::Contract("bisection bracket has no sign change"));
    }
    let mut f_hi = f_hi;
    for it in 1..=tol.max_iter {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            // Adjacent floats: the bracket cannot shrink any further.
            return Ok(pick(lo, f_lo, hi, f_hi, it));
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(Root { x: mid, fx: 0.0, iterations: it });
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
        if hi - lo <= tol.x_abs {
            return Ok(pick(lo, f_lo, hi, f_hi, it));
        }
    }
    Err(Error::NoConvergence("bisection"))
}

fn pick(lo: f64, f_lo: f64, hi: f64, f_hi: f64, iterations: usize) -> Root {
    if f_lo.abs() <= f_hi.abs() {
        Root { x: lo, fx: f_lo, iterations }
    } else {
        Root { x: hi, fx: f_hi, iterations }
    }
}
