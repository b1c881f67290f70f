//! Gamma-family special functions.
//!
//! `P(a, z) = γ(a, z) / Γ(a)` is evaluated with the power series when
//! `z < a + 1` and with the Lentz continued fraction for `Q = 1 - P`
//! otherwise. The inverse in `z` starts from a Wilson–Hilferty guess and
//! polishes it with Newton steps that fall back to bisection whenever a step
//! leaves the current bracket.

use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 10_000;

/// Residual reached by [`inv_reg_lower_gamma`].
pub const INVERSE_TOLERANCE: f64 = 1e-10;

/// Positive shape parameter of a gamma law.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GammaShape(f64);

impl GammaShape {
    pub fn new(a: f64) -> Result<Self> {
        if a > 0.0 && a.is_finite() {
            Ok(GammaShape(a))
        } else {
            Err(Error::domain("gamma shape", a))
        }
    }

    /// Shape equal to an antenna count. Counts are validated upstream to be
    /// at least one.
    pub(crate) fn from_count(n: u32) -> Self {
        debug_assert!(n >= 1);
        GammaShape(n as f64)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for GammaShape {
    type Error = Error;

    fn try_from(a: f64) -> Result<Self> {
        GammaShape::new(a)
    }
}

/// `ln Γ(a)` for `a > 0`.
pub fn log_gamma(a: f64) -> Result<f64> {
    if !(a > 0.0) || a.is_infinite() {
        return Err(Error::domain("log_gamma argument", a));
    }
    Ok(libm::lgamma(a))
}

/// Regularized lower incomplete gamma function `P(a, z)`.
pub fn reg_lower_gamma(a: GammaShape, z: f64) -> Result<f64> {
    gamma_pair(a.0, z).map(|(p, _)| p)
}

/// Complement `Q(a, z) = 1 - P(a, z)`, evaluated without cancellation in the
/// upper tail.
pub(crate) fn reg_upper_gamma(a: GammaShape, z: f64) -> Result<f64> {
    gamma_pair(a.0, z).map(|(_, q)| q)
}

/// Density of the unit-scale gamma law, `z^(a-1) e^(-z) / Γ(a)`.
pub(crate) fn gamma_density(a: f64, z: f64) -> f64 {
    if z < 0.0 {
        return 0.0;
    }
    if z == 0.0 {
        return if a == 1.0 {
            1.0
        } else if a < 1.0 {
            f64::INFINITY
        } else {
            0.0
        };
    }
    libm::exp((a - 1.0) * libm::log(z) - z - libm::lgamma(a))
}

fn gamma_pair(a: f64, z: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || a.is_infinite() {
        return Err(Error::domain("gamma shape", a));
    }
    if !(z >= 0.0) {
        return Err(Error::domain("incomplete gamma argument", z));
    }
    if z == 0.0 {
        return Ok((0.0, 1.0));
    }
    if z.is_infinite() {
        return Ok((1.0, 0.0));
    }
    let log_prefactor = a * libm::log(z) - z - libm::lgamma(a);
    if z < a + 1.0 {
        let p = lower_series(a, z, log_prefactor)?;
        Ok((p, 1.0 - p))
    } else {
        let q = upper_continued_fraction(a, z, log_prefactor)?;
        Ok((1.0 - q, q))
    }
}

fn lower_series(a: f64, z: f64, log_prefactor: f64) -> Result<f64> {
    let mut denom = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        denom += 1.0;
        term *= z / denom;
        sum += term;
        if term.abs() < sum.abs() * EPS {
            return Ok((sum * libm::exp(log_prefactor)).min(1.0));
        }
    }
    Err(Error::NoConvergence("incomplete gamma series"))
}

fn upper_continued_fraction(a: f64, z: f64, log_prefactor: f64) -> Result<f64> {
    let mut b = z + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            return Ok((libm::exp(log_prefactor) * h).clamp(0.0, 1.0));
        }
    }
    Err(Error::NoConvergence("incomplete gamma continued fraction"))
}

/// Inverse of `z ↦ P(a, z)`: the `z ≥ 0` with `P(a, z) = p`.
///
/// `p = 0` maps to `0`. `p ≥ 1` is rejected since the threshold diverges.
pub fn inv_reg_lower_gamma(a: GammaShape, p: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::domain("inverse incomplete gamma probability", p));
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    let a = a.0;
    let lgamma_a = libm::lgamma(a);
    let residual = |z: f64| gamma_pair(a, z).map(|(pz, _)| pz - p);

    let mut z = wilson_hilferty(a, p);
    if !(z > 0.0 && z.is_finite()) {
        z = a.max(1.0);
    }

    // Bracket [lo, hi] with P(lo) <= p < P(hi).
    let mut lo = 0.0;
    let mut hi = z.max(1.0);
    let mut f_hi = residual(hi)?;
    while f_hi <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi.is_infinite() {
            return Err(Error::NoConvergence("inverse incomplete gamma bracket"));
        }
        f_hi = residual(hi)?;
    }
    if !(z > lo && z < hi) {
        z = lo + 0.5 * (hi - lo);
    }

    let mut best = (z, f64::INFINITY);
    for _ in 0..MAX_ITER {
        let f = residual(z)?;
        if f.abs() < best.1.abs() {
            best = (z, f);
        }
        if f.abs() <= 4.0 * EPS * p {
            return Ok(z);
        }
        if f < 0.0 {
            lo = z;
        } else {
            hi = z;
        }
        if hi - lo <= 4.0 * EPS * hi {
            break;
        }
        let slope = libm::exp((a - 1.0) * libm::log(z) - z - lgamma_a);
        let newton = z - f / slope;
        z = if slope > 0.0 && newton > lo && newton < hi { newton } else { lo + 0.5 * (hi - lo) };
    }
    if best.1.abs() <= INVERSE_TOLERANCE {
        Ok(best.0)
    } else {
        Err(Error::NoConvergence("inverse incomplete gamma"))
    }
}

/// Initial guess for the gamma quantile from the cube-root normal
/// approximation.
fn wilson_hilferty(a: f64, p: f64) -> f64 {
    let x = normal_quantile(p);
    let c = 1.0 / (9.0 * a);
    let t = 1.0 - c + x * libm::sqrt(c);
    if t > 0.0 {
        a * t * t * t
    } else {
        // Lower tail where the approximation goes negative: use the
        // small-z expansion P(a, z) ≈ z^a / Γ(a + 1).
        libm::exp((libm::log(p) + libm::lgamma(a + 1.0)) / a)
    }
}

/// Standard normal quantile (Acklam's rational approximation, relative error
/// around 1e-9, plenty for a starting point).
#[allow(clippy::excessive_precision)]
fn normal_quantile(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00, 3.754408661907416e+00];
    const P_LOW: f64 = 0.02425;

    let tail = |q: f64| {
        let r = libm::sqrt(-2.0 * libm::log(q));
        (((((C[0] * r + C[1]) * r + C[2]) * r + C[3]) * r + C[4]) * r + C[5])
            / ((((D[0] * r + D[1]) * r + D[2]) * r + D[3]) * r + 1.0)
    };
    if p < P_LOW {
        tail(p)
    } else if p > 1.0 - P_LOW {
        -tail(1.0 - p)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

/// `Γ(1 + a)^(1/a)`, the scale constant in the bound
/// `(1 - exp(-x / α))^a ≤ P(a, x)`.
pub fn gamma_bound_alpha(a: GammaShape) -> f64 {
    libm::exp(libm::lgamma(1.0 + a.0) / a.0)
}
