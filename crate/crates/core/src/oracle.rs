//! Radial eigensolver for `-ω u'' + [ω ℓ(ℓ+1)/r² + V(r)] u = E u`.
//!
//! Numerov shooting on a uniform grid that starts just off the origin. The
//! n-th eigenvalue is first bracketed by Sturm node counting of the outward
//! solution (the count of sign changes equals the number of eigenvalues below
//! the trial energy), then pinned by bisection on the mismatch between the
//! outward solution and an inward solution started from a decaying
//! exponential, matched at the outermost classical turning point.
//!
//! Nothing here depends on the envelope machinery.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::envelope::{envelope_energy, BoundResult};
use crate::error::{Error, Result};
use crate::model::{hydrogenic_sandwich, potential_unchecked, HellmannParams, QuantumNumbers};

pub const DEFAULT_NUM_POINTS: usize = 20_001;
pub const DEFAULT_TOL: f64 = 1e-8;
/// `r_max` starts at this multiple of the Coulomb length `ω N²/A`.
pub const R_MAX_FACTOR: f64 = 40.0;
/// Required decay `|u(r_max)| / max|u|` of an accepted solution.
pub const TAIL_RATIO: f64 = 1e-10;
/// Values below this fraction of `max|u|` are ignored when counting nodes.
pub const NODE_THRESHOLD: f64 = 1e-12;

const MAX_WIDENINGS: usize = 8;
const MAX_REFINEMENTS: usize = 3;
const RESCALE_ABOVE: f64 = 1e150;

/// Uniform grid `r_i = r_min + i h` on `[r_min, r_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    r_min: f64,
    r_max: f64,
    num_points: usize,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, num_points: usize) -> Result<Self> {
        if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "radial grid needs 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if num_points < 1000 {
            return Err(Error::InvalidParameter(format!(
                "radial grid needs at least 1000 points, got {num_points}"
            )));
        }
        Ok(Self {
            r_min,
            r_max,
            num_points,
        })
    }

    /// Default grid: `r_min = 1e-6 / max(A/ω, C)`, `r_max = 40 ω N²/A`.
    pub fn for_problem(p: &HellmannParams, q: &QuantumNumbers, num_points: usize) -> Result<Self> {
        let big_n = f64::from(q.principal());
        let inv_len = (p.a() / p.omega()).max(p.c());
        let r_min = 1e-6 / inv_len;
        let r_max = R_MAX_FACTOR * p.omega() * big_n * big_n / p.a();
        Self::new(r_min, r_max, num_points)
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn step(&self) -> f64 {
        (self.r_max - self.r_min) / (self.num_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.step()
    }

    /// Half the step over twice the span.
    pub fn refined(&self) -> Self {
        Self {
            r_min: self.r_min,
            r_max: self.r_min + 2.0 * (self.r_max - self.r_min),
            num_points: 4 * (self.num_points - 1) + 1,
        }
    }

    /// Twice the span at the same step.
    pub fn widened(&self) -> Self {
        Self {
            r_min: self.r_min,
            r_max: self.r_min + 2.0 * (self.r_max - self.r_min),
            num_points: 2 * (self.num_points - 1) + 1,
        }
    }
}

/// A converged bound state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSolution {
    pub energy: f64,
    pub nodes: usize,
    pub quantum: QuantumNumbers,
    /// `(r, u(r))` on the final grid, normalized so `u(r_min) ≈ r_min^(ℓ+1)`.
    pub samples: Vec<(f64, f64)>,
    pub tolerance: f64,
    pub grid: RadialGrid,
}

impl EigenSolution {
    /// `|u(r_max)| / max|u|`.
    pub fn tail_ratio(&self) -> f64 {
        tail_ratio(&self.samples)
    }

    /// Writes the sampled wavefunction as CSV with columns `r,u`.
    pub fn write_samples_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Numerical(format!("csv write failed: {e}"));
        w.write_record(["r", "u"]).map_err(io)?;
        for &(r, u) in &self.samples {
            w.write_record([format!("{r:e}"), format!("{u:e}")])
                .map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::Numerical(format!("csv flush failed: {e}")))?;
        Ok(())
    }
}

fn tail_ratio(samples: &[(f64, f64)]) -> f64 {
    let max = samples.iter().fold(0.0f64, |m, &(_, u)| m.max(u.abs()));
    match samples.last() {
        Some(&(_, u)) if max > 0.0 => u.abs() / max,
        _ => f64::INFINITY,
    }
}

/// Interior sign changes of `u`, skipping values below `1e-12 max|u|`.
pub fn count_nodes(sol: &EigenSolution) -> usize {
    count_sign_changes(sol.samples.iter().map(|&(_, u)| u))
}

fn count_sign_changes<I>(values: I) -> usize
where
    I: Iterator<Item = f64> + Clone,
{
    let max = values.clone().fold(0.0f64, |m, u| m.max(u.abs()));
    let floor = NODE_THRESHOLD * max;
    let mut last_sign = 0i8;
    let mut changes = 0;
    for u in values {
        if u.abs() <= floor {
            continue;
        }
        let s = if u > 0.0 { 1 } else { -1 };
        if last_sign != 0 && s != last_sign {
            changes += 1;
        }
        last_sign = s;
    }
    changes
}

/// Potential data on one grid, shared by every trial energy.
struct Discretization {
    grid: RadialGrid,
    h2_12: f64,
    inv_omega: f64,
    /// `ℓ(ℓ+1)/r² + V(r)/ω` at each grid point.
    base: Vec<f64>,
    /// Regular-solution series data: `u ≈ r^(ℓ+1) (1 + c1 r + c2 r² + c3 r³)`.
    ell: u32,
    coulomb_at_origin: f64,
    screened_slope: f64,
    screened_offset: f64,
}

impl Discretization {
    fn new(p: &HellmannParams, q: &QuantumNumbers, grid: RadialGrid) -> Self {
        let inv_omega = 1.0 / p.omega();
        let cent = q.centrifugal();
        let base = (0..grid.num_points)
            .map(|i| {
                let r = grid.point(i);
                cent / (r * r) + potential_unchecked(p, r) * inv_omega
            })
            .collect();
        let h = grid.step();
        Self {
            grid,
            h2_12: h * h / 12.0,
            inv_omega,
            base,
            ell: q.ell(),
            // V = -(A - B)/r - B C + B C² r / 2 + O(r²)
            coulomb_at_origin: (p.a() - p.b()) * inv_omega,
            screened_offset: -p.b() * p.c() * inv_omega,
            screened_slope: 0.5 * p.b() * p.c() * p.c() * inv_omega,
        }
    }

    fn len(&self) -> usize {
        self.base.len()
    }

    #[inline]
    fn numerov_weight(&self, i: usize, energy: f64) -> f64 {
        1.0 - self.h2_12 * (self.base[i] - energy * self.inv_omega)
    }

    /// Frobenius series of the regular solution near the origin.
    fn regular_start(&self, r: f64, energy: f64) -> f64 {
        let l = f64::from(self.ell);
        let z = self.coulomb_at_origin;
        let k0 = self.screened_offset - energy * self.inv_omega;
        let k1 = self.screened_slope;
        let c1 = -z / (2.0 * (l + 1.0));
        let c2 = (-z * c1 + k0) / (2.0 * (2.0 * l + 3.0));
        let c3 = (-z * c2 + k0 * c1 + k1) / (3.0 * (2.0 * l + 4.0));
        r.powi(self.ell as i32 + 1) * (1.0 + r * (c1 + r * (c2 + r * c3)))
    }

    fn outward_start(&self, energy: f64) -> (f64, f64) {
        (
            self.regular_start(self.grid.point(0), energy),
            self.regular_start(self.grid.point(1), energy),
        )
    }

    /// Sign changes of the outward solution over the full grid.
    fn sturm_count(&self, energy: f64) -> usize {
        let (mut u_prev, mut u_cur) = self.outward_start(energy);
        let mut w_prev = self.numerov_weight(0, energy);
        let mut w_cur = self.numerov_weight(1, energy);
        let mut count = 0usize;
        let mut sign = if u_cur > 0.0 { 1i8 } else { -1 };
        for i in 1..self.len() - 1 {
            let w_next = self.numerov_weight(i + 1, energy);
            let mut u_next = ((12.0 - 10.0 * w_cur) * u_cur - w_prev * u_prev) / w_next;
            if u_next.abs() > RESCALE_ABOVE {
                u_next /= RESCALE_ABOVE;
                u_cur /= RESCALE_ABOVE;
            }
            if u_next != 0.0 {
                let s = if u_next > 0.0 { 1 } else { -1 };
                if s != sign {
                    count += 1;
                    sign = s;
                }
            }
            u_prev = u_cur;
            u_cur = u_next;
            w_prev = w_cur;
            w_cur = w_next;
        }
        count
    }

    /// Outward solution on `0..=end`, unscaled.
    fn outward(&self, energy: f64, end: usize) -> Vec<f64> {
        let mut u = Vec::with_capacity(end + 1);
        let (u0, u1) = self.outward_start(energy);
        u.push(u0);
        u.push(u1);
        for i in 1..end {
            let next = ((12.0 - 10.0 * self.numerov_weight(i, energy)) * u[i]
                - self.numerov_weight(i - 1, energy) * u[i - 1])
                / self.numerov_weight(i + 1, energy);
            u.push(next);
        }
        u
    }

    /// Inward solution on `start..len`, started from `e^(-κ r)` at the far end.
    /// Entry `k` of the result is grid index `start + k`.
    fn inward(&self, energy: f64, start: usize) -> Vec<f64> {
        let n = self.len();
        let kappa = (-energy * self.inv_omega).max(0.0).sqrt();
        let h = self.grid.step();
        let mut u = vec![0.0; n - start];
        let last = n - 1 - start;
        u[last] = 1.0;
        u[last - 1] = (kappa * h).exp();
        for k in (1..last).rev() {
            let i = start + k;
            let mut next = ((12.0 - 10.0 * self.numerov_weight(i, energy)) * u[k]
                - self.numerov_weight(i + 1, energy) * u[k + 1])
                / self.numerov_weight(i - 1, energy);
            if next.abs() > RESCALE_ABOVE {
                for v in &mut u[k..] {
                    *v /= RESCALE_ABOVE;
                }
                next /= RESCALE_ABOVE;
            }
            u[k - 1] = next;
        }
        u
    }

    /// Largest index where the trial energy is classically allowed, kept
    /// away from both ends of the grid.
    fn turning_point(&self, energy: f64) -> usize {
        let e = energy * self.inv_omega;
        let n = self.len();
        let idx = (0..n).rev().find(|&i| self.base[i] < e).unwrap_or(n / 2);
        idx.clamp(16, n - 17)
    }

    /// Vanishes when the outward and inward solutions are proportional.
    fn mismatch(&self, energy: f64, m: usize) -> f64 {
        let out = self.outward(energy, m + 1);
        let inw = self.inward(energy, m);
        let (o0, o1) = (out[m], out[m + 1]);
        let (i0, i1) = (inw[0], inw[1]);
        let scale = o0.abs().max(o1.abs()) * i0.abs().max(i1.abs());
        (o1 * i0 - o0 * i1) / scale
    }

    fn matched_solution(&self, energy: f64, m: usize) -> Vec<f64> {
        let mut u = self.outward(energy, m + 1);
        let inw = self.inward(energy, m);
        let num = u[m] * inw[0] + u[m + 1] * inw[1];
        let den = inw[0] * inw[0] + inw[1] * inw[1];
        let factor = num / den;
        u.truncate(m);
        u.extend(inw.iter().map(|v| v * factor));
        u
    }
}

/// Eigenvalue on a single grid, with no convergence or tail check.
fn solve_on_grid(
    p: &HellmannParams,
    q: &QuantumNumbers,
    grid: RadialGrid,
    tol: f64,
) -> Result<EigenSolution> {
    let disc = Discretization::new(p, q, grid);
    let target = q.n() as usize;

    let sandwich = hydrogenic_sandwich(p, q);
    let mut lo = 1.05 * sandwich.lower;
    let mut tries = 0;
    while disc.sturm_count(lo) >= target {
        tries += 1;
        if tries > 8 {
            return Err(Error::Numerical(format!(
                "could not place an energy below state n = {} (last trial {lo:.6e})",
                q.n()
            )));
        }
        lo *= 2.0;
    }
    let mut hi = -tol;
    if disc.sturm_count(hi) < target {
        return Err(Error::Spectrum(format!(
            "no state n = {}, l = {} found below E = {hi:e} on r <= {:.4e}",
            q.n(),
            q.ell(),
            grid.r_max
        )));
    }

    // shrink until exactly one eigenvalue is enclosed
    for _ in 0..200 {
        let c_lo = disc.sturm_count(lo);
        let c_hi = disc.sturm_count(hi);
        if c_lo == target - 1 && c_hi == target {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if disc.sturm_count(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let m = disc.turning_point(0.5 * (lo + hi));
    let mut f_lo = disc.mismatch(lo, m);
    let f_hi = disc.mismatch(hi, m);
    let energy = if f_lo.signum() != f_hi.signum() {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let f_mid = disc.mismatch(mid, m);
            if f_mid == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if f_mid.signum() == f_lo.signum() {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    } else {
        // the matching function did not change sign: finish on node counts,
        // which converge to the same eigenvalue with a hard wall at r_max
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if disc.sturm_count(mid) >= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    };
    if energy >= -tol {
        return Err(Error::Spectrum(format!(
            "state n = {}, l = {} collapsed onto the continuum edge (E = {energy:e})",
            q.n(),
            q.ell()
        )));
    }
    let u = disc.matched_solution(energy, m);
    if u.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical(format!(
            "wavefunction overflowed at E = {energy:e}"
        )));
    }
    let samples: Vec<(f64, f64)> = u
        .into_iter()
        .enumerate()
        .map(|(i, v)| (grid.point(i), v))
        .collect();
    let nodes = count_sign_changes(samples.iter().map(|&(_, v)| v));
    Ok(EigenSolution {
        energy,
        nodes,
        quantum: *q,
        samples,
        tolerance: tol,
        grid,
    })
}

/// Solves on `grid`, widening it until the tail has decayed.
fn solve_with_tail(
    p: &HellmannParams,
    q: &QuantumNumbers,
    mut grid: RadialGrid,
    tol: f64,
) -> Result<EigenSolution> {
    let mut last_err = None;
    for _ in 0..=MAX_WIDENINGS {
        match solve_on_grid(p, q, grid, tol) {
            Ok(sol) if sol.tail_ratio() < TAIL_RATIO => return Ok(sol),
            Ok(_) => {}
            // shallow states may only appear once the box is wide enough
            Err(e @ Error::Spectrum(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
        grid = grid.widened();
    }
    Err(last_err.unwrap_or_else(|| {
        Error::Numerical(format!(
            "wavefunction tail did not decay below {TAIL_RATIO:e} by r_max = {:.4e}",
            grid.r_max
        ))
    }))
}

/// n-th radial eigenvalue at angular momentum `ℓ`, converged so that halving
/// the step and doubling `r_max` moves the energy by less than `tol`.
pub fn solve_eigenvalue(
    p: &HellmannParams,
    q: &QuantumNumbers,
    grid: RadialGrid,
    tol: f64,
) -> Result<EigenSolution> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "tol must be > 0, got {tol}"
        )));
    }
    let mut coarse = solve_with_tail(p, q, grid, tol)?;
    for _ in 0..MAX_REFINEMENTS {
        let fine = solve_with_tail(p, q, coarse.grid.refined(), tol)?;
        if (fine.energy - coarse.energy).abs() < tol {
            return check_nodes(fine);
        }
        coarse = fine;
    }
    Err(Error::Numerical(format!(
        "eigenvalue for n = {}, l = {} not converged to {tol:e} after {MAX_REFINEMENTS} refinements",
        q.n(),
        q.ell()
    )))
}

fn check_nodes(sol: EigenSolution) -> Result<EigenSolution> {
    let expected = sol.quantum.n() as usize - 1;
    if sol.nodes != expected {
        return Err(Error::Numerical(format!(
            "converged state has {} nodes, expected {expected}",
            sol.nodes
        )));
    }
    Ok(sol)
}

/// [`solve_eigenvalue`] on the default grid for the problem.
pub fn solve(p: &HellmannParams, q: &QuantumNumbers, tol: f64) -> Result<EigenSolution> {
    let grid = RadialGrid::for_problem(p, q, DEFAULT_NUM_POINTS)?;
    solve_eigenvalue(p, q, grid, tol)
}

/// Envelope bound checked against the eigensolver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub bound: BoundResult,
    pub oracle: f64,
    pub gap: f64,
    pub tol: f64,
    pub passed: bool,
}

pub fn verify_bound(p: &HellmannParams, q: &QuantumNumbers, tol: f64) -> Result<BoundCheck> {
    let bound = envelope_energy(p, q)?;
    let sol = solve(p, q, tol)?;
    Ok(BoundCheck {
        bound,
        oracle: sol.energy,
        gap: (bound.energy - sol.energy).abs(),
        tol,
        passed: bound.direction.holds(bound.energy, sol.energy, tol),
    })
}
