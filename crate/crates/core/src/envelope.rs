//! Envelope-method bounds with the Coulomb basis `h(r) = -1/r`.
//!
//! The Coulomb spectrum is reproduced exactly by
//! `E_{nℓ}(v) = min_{s>0} { s + v h̄(s) }` with kinetic potential
//! `h̄(s) = -√s / (n+ℓ)`. Replacing `v h̄` by `g(h̄)` and changing variables
//! through `s = (n+ℓ)²/r²` gives the bound
//!
//! ```text
//! E_{nℓ} ≈ min_{r>0} { ω (n+ℓ)²/r² + V(r) }
//! ```
//!
//! which is a lower bound when `g` is convex (`B > 0`), an upper bound when
//! it is concave (`B < 0`) and exact for `B = 0`. Each tangent of `g` is a
//! shifted Coulomb potential `a + b h(r)` with exact levels
//! `a - b²/(4 ω N²)`; the best tangent reproduces the same number.

use serde::{Deserialize, Serialize};

use crate::error::{require_positive_radius, Error, Result};
use crate::minimize::{maximize_log_scan, minimize_log_scan, LogScan};
use crate::model::{
    convexity_class, derivative_unchecked, hydrogenic_energy, potential_unchecked, transform_g,
    BoundDirection, Convexity, HellmannParams, QuantumNumbers,
};

/// An energy together with the side of the true eigenvalue it is proven to lie on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub energy: f64,
    pub direction: BoundDirection,
    pub minimizer_r: f64,
    pub quantum: QuantumNumbers,
}

/// Affine-in-`h` potential touching `V` at `r = t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentCoefficients {
    pub contact_t: f64,
    /// Constant shift.
    pub a: f64,
    /// Coulomb coupling: the tangent is `a - b/r`.
    pub b: f64,
}

impl TangentCoefficients {
    /// Value of the tangential potential at `r`.
    pub fn value_at(&self, r: f64) -> f64 {
        self.a - self.b / r
    }
}

/// `(s, ω s + g(h̄(s)), ω N²/r² + V(r))` for one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubstitutionCheck {
    pub s: f64,
    pub objective_in_s: f64,
    pub objective_in_r: f64,
}

/// Best tangent found by optimizing over the contact point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentOptimum {
    pub coefficients: TangentCoefficients,
    pub energy: f64,
}

/// `h̄_{nℓ}(s) = -√s / (n+ℓ)`.
pub fn kinetic_potential_basis(q: &QuantumNumbers, s: f64) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!(
            "kinetic potential requires s > 0, got s = {s}"
        )));
    }
    Ok(-s.sqrt() / f64::from(q.principal()))
}

/// `f̄_{nℓ}(s) ≈ g(h̄_{nℓ}(s))`.
pub fn approx_kinetic_potential(p: &HellmannParams, q: &QuantumNumbers, s: f64) -> Result<f64> {
    transform_g(p, kinetic_potential_basis(q, s)?)
}

/// Radius at which `ω N²/r² - A/r` is minimal; the natural length of the problem.
pub fn coulomb_minimizer(p: &HellmannParams, q: &QuantumNumbers) -> f64 {
    let big_n = f64::from(q.principal());
    2.0 * p.omega() * big_n * big_n / p.a()
}

#[inline]
fn objective(p: &HellmannParams, kinetic: f64, r: f64) -> f64 {
    kinetic / (r * r) + potential_unchecked(p, r)
}

/// `min_{r>0} { ω (n+ℓ)²/r² + V(r) }` with its global minimizer.
pub fn envelope_energy(p: &HellmannParams, q: &QuantumNumbers) -> Result<BoundResult> {
    let direction = convexity_class(p).direction();
    let big_n = f64::from(q.principal());
    let r0 = coulomb_minimizer(p, q);
    if direction == BoundDirection::Exact {
        return Ok(BoundResult {
            energy: hydrogenic_energy(p.a(), p.omega(), big_n),
            direction,
            minimizer_r: r0,
            quantum: *q,
        });
    }
    let kinetic = p.omega() * big_n * big_n;
    let m = minimize_log_scan(|r| objective(p, kinetic, r), &LogScan::around(r0))?;
    Ok(BoundResult {
        energy: m.value,
        direction,
        minimizer_r: m.x,
        quantum: *q,
    })
}

/// Same bound computed as `min_{s>0} { ω s + g(h̄(s)) }`, before the change of
/// variable to `r`.
pub fn envelope_energy_in_s(p: &HellmannParams, q: &QuantumNumbers) -> Result<f64> {
    let big_n = f64::from(q.principal());
    let s0 = big_n * big_n / coulomb_minimizer(p, q).powi(2);
    let w = p.omega();
    let m = minimize_log_scan(
        |s| match approx_kinetic_potential(p, q, s) {
            Ok(f) => w * s + f,
            Err(_) => f64::NAN,
        },
        &LogScan::around(s0),
    )?;
    Ok(m.value)
}

/// `b = t² V'(t)`, `a = V(t) + t V'(t)`.
pub fn tangent_potential(p: &HellmannParams, t: f64) -> Result<TangentCoefficients> {
    require_positive_radius(t, "tangent_potential")?;
    Ok(tangent_unchecked(p, t))
}

#[inline]
fn tangent_unchecked(p: &HellmannParams, t: f64) -> TangentCoefficients {
    let v = potential_unchecked(p, t);
    let dv = derivative_unchecked(p, t);
    TangentCoefficients {
        contact_t: t,
        a: v + t * dv,
        b: t * t * dv,
    }
}

/// Exact level `a(t) - b(t)²/(4 ω N²)` of the tangential potential at contact `t`.
pub fn tangent_bound_energy(p: &HellmannParams, q: &QuantumNumbers, t: f64) -> Result<f64> {
    let tc = tangent_potential(p, t)?;
    tangent_level(p, q, &tc).ok_or_else(|| {
        Error::Domain(format!(
            "tangential Coulomb coupling b(t) = {:.6e} ≤ 0 at t = {t}: no bound states",
            tc.b
        ))
    })
}

fn tangent_level(p: &HellmannParams, q: &QuantumNumbers, tc: &TangentCoefficients) -> Option<f64> {
    if tc.b > 0.0 {
        let big_n = f64::from(q.principal());
        Some(tc.a + hydrogenic_energy(tc.b, p.omega(), big_n))
    } else {
        None
    }
}

/// Optimizes the tangent bound over the contact point: the supremum for a
/// convex `g` (lower bounds), the infimum for a concave one (upper bounds).
/// Contact points with `b(t) ≤ 0` are excluded.
pub fn optimal_tangent(p: &HellmannParams, q: &QuantumNumbers) -> Result<TangentOptimum> {
    let r0 = coulomb_minimizer(p, q);
    let level = |t: f64| tangent_level(p, q, &tangent_unchecked(p, t)).unwrap_or(f64::NAN);
    let scan = LogScan::around(r0);
    let m = match convexity_class(p) {
        Convexity::Convex => maximize_log_scan(level, &scan)?,
        Convexity::Concave => minimize_log_scan(level, &scan)?,
        Convexity::Affine => {
            let tc = tangent_unchecked(p, r0);
            return Ok(TangentOptimum {
                coefficients: tc,
                energy: level(r0),
            });
        }
    };
    Ok(TangentOptimum {
        coefficients: tangent_unchecked(p, m.x),
        energy: m.value,
    })
}

/// Both sides of the `s ↔ r` change of variables at radius `r`.
pub fn substitution_check(
    p: &HellmannParams,
    q: &QuantumNumbers,
    r: f64,
) -> Result<SubstitutionCheck> {
    require_positive_radius(r, "substitution_check")?;
    let big_n = f64::from(q.principal());
    let s = big_n * big_n / (r * r);
    let objective_in_s = p.omega() * s + approx_kinetic_potential(p, q, s)?;
    Ok(SubstitutionCheck {
        s,
        objective_in_s,
        objective_in_r: objective(p, p.omega() * big_n * big_n, r),
    })
}
