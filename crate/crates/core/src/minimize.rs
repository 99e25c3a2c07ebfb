//! One-dimensional global minimization on `(0, ∞)`: a log-uniform scan picks
//! the best bracket and golden-section search refines it.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Scan settings for [`minimize_log_scan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScan {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    /// Golden-section stops once the bracket is narrower than `rel_width * x`.
    pub rel_width: f64,
}

impl LogScan {
    /// 2000 points on `[1e-4 x0, 1e4 x0]`, refined to relative width 1e-12.
    pub fn around(x0: f64) -> Self {
        Self {
            lo: 1e-4 * x0,
            hi: 1e4 * x0,
            points: 2000,
            rel_width: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

/// Global minimum of `f` over the scan range.
///
/// Among equal scan values the smallest abscissa wins. Non-finite values are
/// treated as excluded points. Fails if the best scan point sits on either
/// end of the range, since the true minimum may then lie outside it.
pub fn minimize_log_scan<F>(f: F, scan: &LogScan) -> Result<Minimum>
where
    F: Fn(f64) -> f64,
{
    if !(scan.lo > 0.0 && scan.hi > scan.lo && scan.points >= 3) {
        return Err(Error::Numerical(format!(
            "invalid scan range [{}, {}] with {} points",
            scan.lo, scan.hi, scan.points
        )));
    }
    let ratio = (scan.hi / scan.lo).ln() / (scan.points - 1) as f64;
    let xs: Vec<f64> = (0..scan.points)
        .map(|i| scan.lo * (ratio * i as f64).exp())
        .collect();

    let mut best: Option<(usize, f64)> = None;
    for (i, &x) in xs.iter().enumerate() {
        let v = f(x);
        if !v.is_finite() {
            continue;
        }
        match best {
            Some((_, bv)) if v >= bv => {}
            _ => best = Some((i, v)),
        }
    }
    let (k, fk) = best.ok_or_else(|| {
        Error::Numerical("objective is non-finite over the whole scan range".into())
    })?;
    if k == 0 || k == scan.points - 1 {
        return Err(Error::Numerical(format!(
            "minimum not bracketed: best scan point is at the edge r = {:.6e} of [{:.3e}, {:.3e}]",
            xs[k], scan.lo, scan.hi
        )));
    }

    let refined = golden_section(&f, xs[k - 1], xs[k + 1], scan.rel_width);
    if refined.value <= fk {
        Ok(refined)
    } else {
        Ok(Minimum {
            x: xs[k],
            value: fk,
        })
    }
}

/// Global maximum of `f`; same conventions as [`minimize_log_scan`].
pub fn maximize_log_scan<F>(f: F, scan: &LogScan) -> Result<Minimum>
where
    F: Fn(f64) -> f64,
{
    let m = minimize_log_scan(|x| -f(x), scan)?;
    Ok(Minimum {
        x: m.x,
        value: -m.value,
    })
}

/// Golden-section search for a minimum of a unimodal `f` on `[a, b]`.
pub fn golden_section<F>(f: &F, mut a: f64, mut b: f64, rel_width: f64) -> Minimum
where
    F: Fn(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // the bracket shrinks by 0.618 per step, so 200 steps is far past f64 resolution
    for _ in 0..200 {
        if (b - a) <= rel_width * 0.5 * (a.abs() + b.abs()) {
            break;
        }
        // non-finite values count as +inf so invalid regions are pushed out
        let lc = if fc.is_finite() { fc } else { f64::INFINITY };
        let ld = if fd.is_finite() { fd } else { f64::INFINITY };
        if lc <= ld {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd || !fd.is_finite() {
        Minimum { x: c, value: fc }
    } else {
        Minimum { x: d, value: fd }
    }
}
