//! Bracketed scalar root finding (Illinois regula falsi with a bisection
//! safeguard).

use crate::error::{Error, Result};

const MAX_ITER: usize = 200;

/// Root of `f` on `[lo, hi]` where `f(lo)` and `f(hi)` differ in sign.
/// Stops when the bracket is narrower than `xtol` or cannot shrink further.
pub(crate) fn bracketed_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoBracket { lo, hi });
    }
    // Which end was retained last; used for the Illinois halving.
    let mut side = 0i8;
    for _ in 0..MAX_ITER {
        if (b - a).abs() <= xtol {
            break;
        }
        let mut x = (a * fb - b * fa) / (fb - fa);
        // Fall back to bisection if the secant step leaves the open bracket.
        if !(x > a.min(b) && x < a.max(b)) {
            x = 0.5 * (a + b);
        }
        if x == a || x == b {
            break;
        }
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fb.signum() {
            b = x;
            fb = fx;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = x;
            fa = fx;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    Ok(if fa.abs() < fb.abs() { a } else { b })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = bracketed_root(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn no_sign_change() {
        assert!(bracketed_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn flat_tail_converges() {
        // Plain regula falsi stalls on this one.
        let r = bracketed_root(|x: f64| x.powi(9) - 1e-9, 0.0, 1.0, 1e-12).unwrap();
        assert!((r - 0.1).abs() < 1e-9);
    }
}
