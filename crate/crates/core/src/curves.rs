//! Figure data: bounds along a sweep in `B`, and the coupling curve of
//! `H = -ω Δ + v V(r)` generated parametrically in the contact radius `r`:
//!
//! ```text
//! v(r) = 2 ω N² / (r³ V'(r)),    E(v) = ω N²/r² + v V(r)
//! ```
//!
//! Each point is a stationary point of `ω N²/r² + v V(r)` by construction.

use serde::{Deserialize, Serialize};

use crate::envelope::envelope_energy;
use crate::error::{Error, Result};
use crate::model::{
    derivative_unchecked, potential_unchecked, BoundDirection, HellmannParams, QuantumNumbers,
};
use crate::oracle::{solve, EigenSolution, DEFAULT_TOL};
use crate::par::{map_indexed, Execution};

/// One point of the parametric energy curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyCurvePoint {
    pub contact_r: f64,
    pub v: f64,
    pub energy: f64,
    /// `energy / v²`.
    pub scaled: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Ok,
    /// The oracle landed on the wrong side of the bound.
    Violation,
    Failed(String),
}

impl RowStatus {
    pub fn label(&self) -> String {
        match self {
            RowStatus::Ok => "ok".into(),
            RowStatus::Violation => "violation".into(),
            RowStatus::Failed(msg) => format!("failed: {msg}"),
        }
    }
}

/// One value of `B` in a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub b: f64,
    pub bound: Option<f64>,
    pub direction: Option<BoundDirection>,
    pub minimizer_r: Option<f64>,
    pub oracle: Option<f64>,
    pub gap: Option<f64>,
    pub status: RowStatus,
}

/// Inputs of a sweep over `B` at fixed `(A, C, ω, n, ℓ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub a: f64,
    pub c: f64,
    pub omega: f64,
    pub quantum: QuantumNumbers,
    pub b_min: f64,
    pub b_max: f64,
    pub steps: usize,
    /// Solve each row with the eigensolver at this tolerance.
    pub oracle_tol: Option<f64>,
}

impl SweepConfig {
    /// `B` values, uniformly spaced and including both endpoints. A
    /// zero-width range yields a single row.
    pub fn b_values(&self) -> Result<Vec<f64>> {
        if self.steps < 2 {
            return Err(Error::InvalidParameter(format!(
                "sweep needs at least 2 steps, got {}",
                self.steps
            )));
        }
        if !(self.b_min.is_finite() && self.b_max.is_finite()) || self.b_min > self.b_max {
            return Err(Error::InvalidParameter(format!(
                "sweep needs b_min <= b_max, got [{}, {}]",
                self.b_min, self.b_max
            )));
        }
        if self.b_min == self.b_max {
            return Ok(vec![self.b_min]);
        }
        let span = self.b_max - self.b_min;
        let last = (self.steps - 1) as f64;
        Ok((0..self.steps)
            .map(|i| {
                if i == self.steps - 1 {
                    self.b_max
                } else {
                    self.b_min + span * i as f64 / last
                }
            })
            .collect())
    }
}

/// Sweep at unit kinetic weight, evaluated in parallel when available.
pub fn sweep_b(
    a: f64,
    c: f64,
    q: QuantumNumbers,
    b_min: f64,
    b_max: f64,
    steps: usize,
    with_oracle: bool,
) -> Result<Vec<SweepRow>> {
    let cfg = SweepConfig {
        a,
        c,
        omega: 1.0,
        quantum: q,
        b_min,
        b_max,
        steps,
        oracle_tol: with_oracle.then_some(DEFAULT_TOL),
    };
    sweep_b_with(&cfg, Execution::default())
}

/// Per-row failures are recorded in [`SweepRow::status`]; only invalid
/// sweep settings abort.
pub fn sweep_b_with(cfg: &SweepConfig, exec: Execution) -> Result<Vec<SweepRow>> {
    let bs = cfg.b_values()?;
    HellmannParams::with_omega(cfg.a, 0.0, cfg.c, cfg.omega)?;
    Ok(map_indexed(bs.len(), exec, |i| sweep_row(cfg, bs[i])))
}

fn sweep_row(cfg: &SweepConfig, b: f64) -> SweepRow {
    let mut row = SweepRow {
        b,
        bound: None,
        direction: None,
        minimizer_r: None,
        oracle: None,
        gap: None,
        status: RowStatus::Ok,
    };
    let p = match HellmannParams::with_omega(cfg.a, b, cfg.c, cfg.omega) {
        Ok(p) => p,
        Err(e) => {
            row.status = RowStatus::Failed(e.to_string());
            return row;
        }
    };
    let bound = match envelope_energy(&p, &cfg.quantum) {
        Ok(bound) => bound,
        Err(e) => {
            row.status = RowStatus::Failed(e.to_string());
            return row;
        }
    };
    row.bound = Some(bound.energy);
    row.direction = Some(bound.direction);
    row.minimizer_r = Some(bound.minimizer_r);
    if let Some(tol) = cfg.oracle_tol {
        match solve(&p, &cfg.quantum, tol) {
            Ok(sol) => {
                row.oracle = Some(sol.energy);
                row.gap = Some((bound.energy - sol.energy).abs());
                if !bound.direction.holds(bound.energy, sol.energy, tol) {
                    row.status = RowStatus::Violation;
                }
            }
            Err(e) => row.status = RowStatus::Failed(e.to_string()),
        }
    }
    row
}

/// `v = 2 ω N² / (r³ V'(r))` and `E = ω N²/r² + v V(r)` at a single radius.
pub fn curve_point(p: &HellmannParams, q: &QuantumNumbers, r: f64) -> Result<EnergyCurvePoint> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("curve radius must be > 0, got {r}")));
    }
    let dv = derivative_unchecked(p, r);
    if dv <= 0.0 {
        return Err(Error::Domain(format!(
            "V'(r) = {dv:.6e} <= 0 at r = {r}: coupling would not be positive"
        )));
    }
    let big_n = f64::from(q.principal());
    let kinetic = p.omega() * big_n * big_n;
    let v = 2.0 * kinetic / (r * r * r * dv);
    let energy = kinetic / (r * r) + v * potential_unchecked(p, r);
    Ok(EnergyCurvePoint {
        contact_r: r,
        v,
        energy,
        scaled: energy / (v * v),
    })
}

/// Points of the coupling curve for `steps` log-uniform radii in
/// `[r_min, r_max]`, ordered by `r`. Refuses the whole range if `V'` is not
/// positive throughout it.
pub fn energy_curve(
    p: &HellmannParams,
    q: &QuantumNumbers,
    r_min: f64,
    r_max: f64,
    steps: usize,
) -> Result<Vec<EnergyCurvePoint>> {
    energy_curve_with(p, q, r_min, r_max, steps, Execution::default())
}

pub fn energy_curve_with(
    p: &HellmannParams,
    q: &QuantumNumbers,
    r_min: f64,
    r_max: f64,
    steps: usize,
    exec: Execution,
) -> Result<Vec<EnergyCurvePoint>> {
    if steps < 2 {
        return Err(Error::InvalidParameter(format!(
            "curve needs at least 2 steps, got {steps}"
        )));
    }
    if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "curve needs 0 < r_min < r_max, got [{r_min}, {r_max}]"
        )));
    }
    let radii = log_space(r_min, r_max, steps);
    // the samples alone could step over a short interval where V' dips
    for r in log_space(r_min, r_max, steps.max(4096))
        .into_iter()
        .chain(radii.iter().copied())
    {
        let dv = derivative_unchecked(p, r);
        if dv <= 0.0 {
            return Err(Error::Domain(format!(
                "V'(r) = {dv:.6e} <= 0 at r = {r:.6e} inside [{r_min}, {r_max}]"
            )));
        }
    }
    map_indexed(radii.len(), exec, |i| curve_point(p, q, radii[i]))
        .into_iter()
        .collect()
}

fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi / lo).ln() / (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo * (step * i as f64).exp()
            }
        })
        .collect()
}

/// Envelope bound of `-ω Δ + v V` computed directly by minimization, minus
/// the curve's `E(v)`. Nonzero beyond rounding means the curve point is a
/// stationary point but not the global minimum.
pub fn curve_discrepancy(
    p: &HellmannParams,
    q: &QuantumNumbers,
    point: &EnergyCurvePoint,
) -> Result<f64> {
    let coupled = p.with_coupling(point.v)?;
    Ok(envelope_energy(&coupled, q)?.energy - point.energy)
}

/// Whether `v` is strictly monotone along the curve, so each `v` has one point.
pub fn coupling_is_monotone(points: &[EnergyCurvePoint]) -> bool {
    let inc = points.windows(2).all(|w| w[1].v > w[0].v);
    let dec = points.windows(2).all(|w| w[1].v < w[0].v);
    inc || dec
}

/// Eigensolver value for `-ω Δ + v V` at the curve's coupling.
pub fn oracle_at_coupling(
    p: &HellmannParams,
    q: &QuantumNumbers,
    v: f64,
    tol: f64,
) -> Result<EigenSolution> {
    solve(&p.with_coupling(v)?, q, tol)
}
