//! The Hellmann potential family `V(r) = -A/r + B e^(-Cr)/r`.
//!
//! Units follow `H = -ω Δ + V` with ħ = 2m = 1, so the Coulomb problem
//! `-ω Δ - v/r` has levels `-v² / (4 ω N²)` with `N = n + ℓ`.
//!
//! Relative to the envelope basis `h(r) = -1/r` the potential is a smooth
//! transformation `V = g(h)` with `g(h) = A h - B h e^(C/h)`, whose curvature
//! has the sign of `B`.

use serde::{Deserialize, Serialize};

use crate::error::{require_positive_radius, Error, Result};

/// Coefficients `(A, B, C)` of the potential plus the kinetic weight `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HellmannParams {
    a: f64,
    b: f64,
    c: f64,
    omega: f64,
}

impl HellmannParams {
    /// Potential with unit kinetic weight.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::with_omega(a, b, c, 1.0)
    }

    pub fn with_omega(a: f64, b: f64, c: f64, omega: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidParameter(format!("A must be > 0, got {a}")));
        }
        if !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "B must be finite, got {b}"
            )));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!("C must be > 0, got {c}")));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "omega must be > 0, got {omega}"
            )));
        }
        Ok(Self { a, b, c, omega })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Same potential multiplied by a positive coupling `v` (`v V(r)`).
    pub fn with_coupling(&self, v: f64) -> Result<Self> {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "coupling must be > 0, got {v}"
            )));
        }
        Self::with_omega(v * self.a, v * self.b, self.c, self.omega)
    }

    /// Same `(A, C, ω)` with a different screened strength.
    pub fn with_b(&self, b: f64) -> Result<Self> {
        Self::with_omega(self.a, b, self.c, self.omega)
    }
}

/// Radial index `n ≥ 1` and orbital angular momentum `ℓ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    n: u32,
    ell: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, ell: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "radial index n starts at 1 (ground state)".into(),
            ));
        }
        Ok(Self { n, ell })
    }

    pub fn ground() -> Self {
        Self { n: 1, ell: 0 }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// `N = n + ℓ`, the hydrogenic principal number.
    pub fn principal(&self) -> u32 {
        self.n + self.ell
    }

    /// `ℓ(ℓ + 1)`.
    pub fn centrifugal(&self) -> f64 {
        let l = f64::from(self.ell);
        l * (l + 1.0)
    }
}

/// Reduced two-parameter form `-Δ - α/r + β e^(-r)/r` and the energy factor
/// `C² ω` that maps its eigenvalues back to the full problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledParams {
    pub alpha: f64,
    pub beta: f64,
    pub multiplier: f64,
}

impl ScaledParams {
    /// The reduced Hamiltonian as a parameter set (`C = 1`, `ω = 1`).
    pub fn reduced(&self) -> Result<HellmannParams> {
        HellmannParams::new(self.alpha, self.beta, 1.0)
    }

    /// Inverse of [`reduce_scale`] given the original `C` and `ω`.
    pub fn reconstruct(&self, c: f64, omega: f64) -> Result<HellmannParams> {
        HellmannParams::with_omega(self.alpha * omega * c, self.beta * omega * c, c, omega)
    }
}

/// Shape class of `g`, which fixes the direction of the envelope bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convexity {
    Convex,
    Concave,
    Affine,
}

/// Proven direction of a bound relative to the true eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundDirection {
    Lower,
    Upper,
    Exact,
}

impl BoundDirection {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundDirection::Lower => "lower",
            BoundDirection::Upper => "upper",
            BoundDirection::Exact => "exact",
        }
    }

    /// Whether `bound` sits on the proven side of `reference`, allowing `tol`.
    pub fn holds(&self, bound: f64, reference: f64, tol: f64) -> bool {
        match self {
            BoundDirection::Lower => bound <= reference + tol,
            BoundDirection::Upper => bound >= reference - tol,
            BoundDirection::Exact => (bound - reference).abs() <= tol,
        }
    }
}

impl std::fmt::Display for BoundDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Convexity {
    pub fn direction(&self) -> BoundDirection {
        match self {
            Convexity::Convex => BoundDirection::Lower,
            Convexity::Concave => BoundDirection::Upper,
            Convexity::Affine => BoundDirection::Exact,
        }
    }
}

/// `V(r) = -A/r + B e^(-Cr)/r`.
pub fn evaluate_potential(p: &HellmannParams, r: f64) -> Result<f64> {
    require_positive_radius(r, "evaluate_potential")?;
    Ok(potential_unchecked(p, r))
}

#[inline]
pub(crate) fn potential_unchecked(p: &HellmannParams, r: f64) -> f64 {
    (-p.a + p.b * (-p.c * r).exp()) / r
}

/// `V'(r) = A/r² - B e^(-Cr) (1 + Cr)/r²`.
pub fn potential_derivative(p: &HellmannParams, r: f64) -> Result<f64> {
    require_positive_radius(r, "potential_derivative")?;
    Ok(derivative_unchecked(p, r))
}

#[inline]
pub(crate) fn derivative_unchecked(p: &HellmannParams, r: f64) -> f64 {
    let cr = p.c * r;
    (p.a - p.b * (-cr).exp() * (1.0 + cr)) / (r * r)
}

/// `g(h) = A h - B h e^(C/h)`, defined for `h < 0`.
pub fn transform_g(p: &HellmannParams, h: f64) -> Result<f64> {
    if !(h < 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!(
            "transform_g requires h < 0 (basis -1/r is negative), got h = {h}"
        )));
    }
    Ok(p.a * h - p.b * h * (p.c / h).exp())
}

/// `g''(h)` at `h = -1/r`, i.e. `B C² r³ e^(-Cr)`.
pub fn g_second_derivative(p: &HellmannParams, r: f64) -> Result<f64> {
    require_positive_radius(r, "g_second_derivative")?;
    Ok(p.b * p.c * p.c * r * r * r * (-p.c * r).exp())
}

pub fn convexity_class(p: &HellmannParams) -> Convexity {
    if p.b > 0.0 {
        Convexity::Convex
    } else if p.b < 0.0 {
        Convexity::Concave
    } else {
        Convexity::Affine
    }
}

/// Scale reduction with length unit `1/C`:
/// `E(ω, A, B, C) = C² ω E(1, A/(ωC), B/(ωC), 1)`.
pub fn reduce_scale(p: &HellmannParams) -> ScaledParams {
    let wc = p.omega * p.c;
    ScaledParams {
        alpha: p.a / wc,
        beta: p.b / wc,
        multiplier: p.c * p.c * p.omega,
    }
}

/// `V(r) + ℓ(ℓ+1)/r²`. The centrifugal term carries the kinetic weight, so
/// for `ω ≠ 1` it is `ω ℓ(ℓ+1)/r²`.
pub fn effective_potential(p: &HellmannParams, q: &QuantumNumbers, r: f64) -> Result<f64> {
    require_positive_radius(r, "effective_potential")?;
    Ok(potential_unchecked(p, r) + p.omega * q.centrifugal() / (r * r))
}

/// Exact level of `-ω Δ - v/r` with principal number `principal`.
pub fn hydrogenic_energy(coupling: f64, omega: f64, principal: f64) -> f64 {
    -coupling * coupling / (4.0 * omega * principal * principal)
}

/// Eigenvalue bracket from pointwise-comparable Coulomb problems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HydrogenicSandwich {
    pub lower: f64,
    pub upper: f64,
}

impl HydrogenicSandwich {
    pub fn strictly_contains(&self, e: f64) -> bool {
        self.lower < e && e < self.upper
    }
}

/// Brackets `E_{nℓ}` between two exactly solvable problems.
///
/// For `B ≤ 0`: `-(A+|B|)/r ≤ V ≤ -A/r`. For `B > 0`: `-A/r ≤ V ≤ -A/r + q/r²`
/// with `q = B/(eC)`, since `r e^(-Cr) ≤ 1/(eC)`; the upper problem is a
/// Coulomb problem with effective angular momentum `L(L+1) = ℓ(ℓ+1) + q/ω`.
pub fn hydrogenic_sandwich(p: &HellmannParams, q: &QuantumNumbers) -> HydrogenicSandwich {
    let big_n = f64::from(q.principal());
    if p.b <= 0.0 {
        HydrogenicSandwich {
            lower: hydrogenic_energy(p.a + p.b.abs(), p.omega, big_n),
            upper: hydrogenic_energy(p.a, p.omega, big_n),
        }
    } else {
        let extra = p.b / (std::f64::consts::E * p.c * p.omega);
        let eff_l = 0.5 * (-1.0 + (1.0 + 4.0 * q.centrifugal() + 4.0 * extra).sqrt());
        HydrogenicSandwich {
            lower: hydrogenic_energy(p.a, p.omega, big_n),
            upper: hydrogenic_energy(p.a, p.omega, f64::from(q.n()) + eff_l),
        }
    }
}
