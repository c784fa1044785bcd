use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::family::{eval_at, LogPoint, PatchworkFamily, ZERO_TOLERANCE};
use super::roots::{fiber_roots, FiberPolynomial};
use crate::error::{Error, Result};
use crate::geom::Window;
use crate::lattice::vector::rat_to_f64;

/// Continuation steps in `s`.
pub const CONTINUATION_STEPS: usize = 16;
/// Newton tolerance on the relative residual during continuation.
pub const NEWTON_TOLERANCE: f64 = 1e-10;

/// Fibers to solve. `window` is in rescaled coordinates `u / log t`; the
/// fixed coordinate runs over `moduli` evenly spaced values of the window
/// and `args` arguments in `[0, 2 pi)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleGrid {
    pub window: Window,
    pub moduli: usize,
    pub args: usize,
    /// Also fix `z_2` and solve for `z_1`, so that tentacles parallel to
    /// either axis are sampled.
    pub both_directions: bool,
}

impl SampleGrid {
    pub fn new(window: Window, moduli: usize, args: usize) -> Self {
        Self {
            window,
            moduli,
            args,
            both_directions: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmoebaPoint {
    pub u: Vec<f64>,
    pub theta: Vec<f64>,
    pub residual: f64,
    /// The coordinate that was solved for.
    pub axis: usize,
}

impl AmoebaPoint {
    pub fn log_point(&self) -> LogPoint {
        LogPoint::new(self.u.clone(), self.theta.clone())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AmoebaSample {
    pub points: Vec<AmoebaPoint>,
    pub fibers: usize,
    /// Fibers whose polynomial vanished identically.
    pub degenerate_fibers: usize,
    /// Roots lost in polishing plus continuation paths that failed.
    pub failed_paths: usize,
}

impl AmoebaSample {
    /// Points divided by `log t`.
    pub fn rescaled(&self, log_t: f64) -> Vec<Vec<f64>> {
        self.points
            .iter()
            .map(|p| p.u.iter().map(|x| x / log_t).collect())
            .collect()
    }
}

/// Fiber of the `s = 0` member over fixed values of the other coordinate.
pub fn fiber_polynomial(f: &PatchworkFamily, axis: usize, fixed: &LogPoint) -> FiberPolynomial {
    let mut p = fixed.clone();
    p.u[axis] = 0.0;
    p.theta[axis] = 0.0;
    let terms: Vec<(i64, Complex64)> = (0..f.len())
        .map(|i| (f.exponent(i)[axis].round() as i64, f.log_term(i, &p)))
        .collect();
    FiberPolynomial::from_terms(&terms)
}

/// Real Newton on `(u_axis, theta_axis)` for the member `s`.
fn newton(f: &PatchworkFamily, axis: usize, p: &mut LogPoint, s: f64) -> bool {
    for _ in 0..50 {
        let e = eval_at(f, p, s);
        if e.relative_residual() < NEWTON_TOLERANCE {
            return true;
        }
        let du = e.del[axis] + e.delbar[axis];
        let dt = Complex64::i() * (e.del[axis] - e.delbar[axis]);
        let det = du.re * dt.im - dt.re * du.im;
        if det == 0.0 || !det.is_finite() {
            return false;
        }
        let (a, b) = (-e.value.re, -e.value.im);
        let mut x = (a * dt.im - dt.re * b) / det;
        let mut y = (du.re * b - a * du.im) / det;
        let len = x.hypot(y);
        if len > 0.5 {
            x *= 0.5 / len;
            y *= 0.5 / len;
        }
        p.u[axis] += x;
        p.theta[axis] += y;
        if !p.u[axis].is_finite() || !p.theta[axis].is_finite() {
            return false;
        }
    }
    eval_at(f, p, s).relative_residual() < NEWTON_TOLERANCE
}

/// Follows a root of the `s = 0` member to the member `f.s()`.
pub fn continue_root(f: &PatchworkFamily, axis: usize, start: &LogPoint) -> Option<LogPoint> {
    let mut p = start.clone();
    if f.s() == 0.0 {
        return Some(p);
    }
    for step in 1..=CONTINUATION_STEPS {
        let s = f.s() * step as f64 / CONTINUATION_STEPS as f64;
        if !newton(f, axis, &mut p, s) {
            return None;
        }
    }
    p.theta[axis] = p.theta[axis].rem_euclid(std::f64::consts::TAU);
    Some(p)
}

struct FiberOutcome {
    points: Vec<AmoebaPoint>,
    degenerate: bool,
    failed: usize,
}

fn solve_fiber(f: &PatchworkFamily, axis: usize, fixed: &LogPoint, window: &Window) -> FiberOutcome {
    let poly = fiber_polynomial(f, axis, fixed);
    if poly.is_zero() {
        return FiberOutcome {
            points: Vec::new(),
            degenerate: true,
            failed: 0,
        };
    }
    let (roots, mut failed) = fiber_roots(&poly, NEWTON_TOLERANCE);
    let mut points = Vec::new();
    for v in roots {
        let mut p = fixed.clone();
        p.u[axis] = v.re;
        p.theta[axis] = v.im;
        let Some(q) = continue_root(f, axis, &p) else {
            failed += 1;
            continue;
        };
        let residual = eval_at(f, &q, f.s()).relative_residual();
        if !(residual < ZERO_TOLERANCE) {
            failed += 1;
            continue;
        }
        let rescaled: Vec<f64> = q.u.iter().map(|x| x / f.log_t()).collect();
        if window.contains(&rescaled) {
            points.push(AmoebaPoint {
                u: q.u,
                theta: q.theta,
                residual,
                axis,
            });
        }
    }
    FiberOutcome {
        points,
        degenerate: false,
        failed,
    }
}

/// Samples the amoeba of a plane curve fiber by fiber. Output order follows
/// the grid, so the cloud is reproducible regardless of thread count.
pub fn amoeba_sample_curve(f: &PatchworkFamily, grid: &SampleGrid) -> Result<AmoebaSample> {
    if f.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "amoeba sampling needs a plane curve, got dimension {}",
            f.dim()
        )));
    }
    if grid.window.dim() != 2 || grid.moduli == 0 || grid.args == 0 {
        return Err(Error::Unsupported("sample grid must be two-dimensional and non-empty".into()));
    }
    let axes: &[usize] = if grid.both_directions { &[1, 0] } else { &[1] };
    let mut jobs = Vec::new();
    for &axis in axes {
        let other = 1 - axis;
        for i in 0..grid.moduli {
            let x = if grid.moduli == 1 {
                0.5 * (grid.window.lo[other] + grid.window.hi[other])
            } else {
                grid.window.lo[other]
                    + (grid.window.hi[other] - grid.window.lo[other]) * i as f64 / (grid.moduli - 1) as f64
            };
            for k in 0..grid.args {
                let theta = std::f64::consts::TAU * k as f64 / grid.args as f64;
                let mut p = LogPoint::real(vec![0.0; 2]);
                p.u[other] = x * f.log_t();
                p.theta[other] = theta;
                jobs.push((axis, p));
            }
        }
    }
    let outcomes: Vec<FiberOutcome> = jobs
        .par_iter()
        .map(|(axis, p)| solve_fiber(f, *axis, p, &grid.window))
        .collect();
    let mut sample = AmoebaSample {
        fibers: jobs.len(),
        ..Default::default()
    };
    for o in outcomes {
        sample.degenerate_fibers += usize::from(o.degenerate);
        sample.failed_paths += o.failed;
        sample.points.extend(o.points);
    }
    Ok(sample)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySample {
    /// Ray angles, one per entry of `points`.
    pub angles: Vec<f64>,
    /// Zeros `u` of the real restriction, unscaled.
    pub points: Vec<Vec<f64>>,
    /// Indices of rays with no sign change inside the search radius.
    pub no_crossing: Vec<usize>,
}

impl BoundarySample {
    /// Total turning of the ordered samples around the origin, in turns.
    pub fn winding_number(&self) -> f64 {
        winding_number(&self.points)
    }
}

/// Winding number of a closed polygon about the origin.
pub fn winding_number(points: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    for i in 0..points.len() {
        let a = &points[i];
        let b = &points[(i + 1) % points.len()];
        let d = b[1].atan2(b[0]) - a[1].atan2(a[0]);
        let d = (d + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
        total += d;
    }
    total / std::f64::consts::TAU
}

/// First zero of `f_{t,s}(e^u)` along each ray `u = r (cos a, sin a)` with
/// `z` real positive, found by scanning then bisecting the real restriction.
pub fn boundary_sphere_sample(f: &PatchworkFamily, samples: usize) -> Result<BoundarySample> {
    if f.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "boundary sampling needs dimension 2, got {}",
            f.dim()
        )));
    }
    let reach = f
        .complex()
        .q()
        .map(|q| {
            q.vertices()
                .iter()
                .map(|v| v.coords().iter().map(|c| rat_to_f64(c).powi(2)).sum::<f64>().sqrt())
                .fold(0.0, f64::max)
        })
        .unwrap_or(1.5);
    let r_max = 2.0 * reach * f.log_t();
    let value = |u: Vec<f64>| eval_at(f, &LogPoint::real(u), f.s()).value.re;
    let results: Vec<Option<Vec<f64>>> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / samples as f64;
            let dir = [a.cos(), a.sin()];
            let at = |r: f64| value(vec![r * dir[0], r * dir[1]]);
            let sign0 = at(0.0).signum();
            let steps = 400;
            let mut lo = 0.0;
            for i in 1..=steps {
                let r = r_max * i as f64 / steps as f64;
                if at(r).signum() != sign0 {
                    let mut hi = r;
                    for _ in 0..200 {
                        let mid = 0.5 * (lo + hi);
                        if at(mid).signum() == sign0 {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                        if hi - lo <= 1e-13 * hi {
                            break;
                        }
                    }
                    let r = 0.5 * (lo + hi);
                    return Some(vec![r * dir[0], r * dir[1]]);
                }
                lo = r;
            }
            None
        })
        .collect();
    let mut out = BoundarySample {
        angles: Vec::new(),
        points: Vec::new(),
        no_crossing: Vec::new(),
    };
    for (k, r) in results.into_iter().enumerate() {
        match r {
            Some(p) => {
                out.angles.push(std::f64::consts::TAU * k as f64 / samples as f64);
                out.points.push(p);
            }
            None => out.no_crossing.push(k),
        }
    }
    Ok(out)
}
