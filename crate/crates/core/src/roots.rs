//! Scalar root finders shared by the gap solvers.

use libm::{acos, cbrt, cos, fabs, sqrt};

use crate::{Error, Result};

/// Largest real root of `x^3 + a x - c = 0` for `c > 0`.
///
/// `a < 0` with three real roots uses the trigonometric form; otherwise the
/// Cardano form is evaluated without cancellation. Two Newton steps polish
/// the result to rounding.
pub fn cubic_largest_root(a: f64, c: f64) -> f64 {
    if c == 0.0 {
        return if a < 0.0 { sqrt(-a) } else { 0.0 };
    }
    let p = -a / 3.0;
    let q = 0.5 * c;
    let x = if p > 0.0 {
        let p3 = p * p * p;
        if p3 > q * q {
            let theta = acos((q / (p * sqrt(p))).min(1.0));
            2.0 * sqrt(p) * cos(theta / 3.0)
        } else {
            let d = sqrt(q * q - p3);
            let u = cbrt(q + d);
            u + p / u
        }
    } else {
        // x = u - v with uv = -p, u^3 - v^3 = 2q
        let m = -p;
        let d = sqrt(q * q + m * m * m);
        let u = cbrt(q + d);
        let v = m / u;
        2.0 * q / (u * u + m + v * v)
    };
    let mut x = x;
    for _ in 0..2 {
        let f = x * x * x + a * x - c;
        let df = 3.0 * x * x + a;
        if df <= 0.0 {
            break;
        }
        let step = f / df;
        x -= step;
        if fabs(step) <= 1e-16 * fabs(x) {
            break;
        }
    }
    x
}

/// Newton's method kept inside a sign-changing bracket `[lo, hi]`; falls
/// back to bisection whenever a Newton step leaves the bracket or fails to
/// halve it.
pub fn newton_bracketed<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> (f64, f64),
{
    let (flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        return Err(Error::NoPositiveSolution);
    }
    let rising = fhi > 0.0;
    let mut x = 0.5 * (lo + hi);
    let mut width = hi - lo;
    for _ in 0..max_iter {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx > 0.0) == rising {
            hi = x;
        } else {
            lo = x;
        }
        let newton = if dfx != 0.0 { x - fx / dfx } else { f64::NAN };
        let next = if newton > lo && newton < hi && fabs(newton - x) < 0.5 * width {
            newton
        } else {
            0.5 * (lo + hi)
        };
        width = fabs(next - x);
        x = next;
        if width <= xtol * fabs(x).max(1e-300) || hi - lo <= xtol * fabs(x).max(1e-300) {
            return Ok(x);
        }
    }
    Err(Error::NotConverged { what: "bracketed Newton", iterations: max_iter })
}

/// Plain bisection on a sign-changing bracket, to relative width `xtol`.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let flo = f(lo);
    let fhi = f(hi);
    if (flo > 0.0) == (fhi > 0.0) && flo != 0.0 && fhi != 0.0 {
        return Err(Error::NoPositiveSolution);
    }
    let rising = fhi > flo;
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= xtol * fabs(mid) || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == rising {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
