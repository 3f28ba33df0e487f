//! One-variable boundary machinery: quadrature traces on the unit circle,
//! Cauchy integrals, Smirnov-class moment residuals, the radial maximal
//! function, and the regularized one-dimensional recovery operator.
//!
//! The recovery operator reconstructs a bounded holomorphic function from
//! its boundary values on an arc set `A` alone,
//!
//! ```text
//! f(z) = lim_{N→∞} (1/2πi) ∫_A e^{−N(g₁(ζ) − g₁(z))} f(ζ) dζ/(ζ − z),
//! ```
//!
//! where `g₁ = ω + i ω̃` is the analytic completion of the harmonic measure
//! vanishing on `A`.  On `A` the weight has unit modulus while `|e^{N g₁(z)}|
//! = e^{N ω(z)}`, so the discarded complementary integral is damped like
//! `e^{−N(1−ω(z))}` at the price of amplifying quadrature noise by
//! `e^{N ω(z)}` — the characteristic U-shaped error curve in `N` that
//! [`carleman1d_sweep`] measures.
//!
//! Quadrature: full-circle traces use the trapezoid rule (spectrally
//! accurate for periodic integrands); arc traces use composite 16-point
//! Gauss–Legendre panels, geometrically graded into the arc endpoints where
//! the weight's derivative blows up.

use crate::error::{Error, Result};
use crate::geometry::BoundaryArcSet;
use crate::harmonic::AnalyticCompletion;
use crate::{c64, C64};
use std::f64::consts::TAU;
use std::sync::OnceLock;

/// Default pole-guard factor: evaluation refuses points closer to a node
/// than this multiple of the local node spacing.
pub const DEFAULT_POLE_GUARD: f64 = 10.0;

/// Target width of the innermost graded panel at an arc endpoint.
const GRADE_TARGET: f64 = 1e-9;

/// 16-point Gauss–Legendre nodes and weights on `[−1, 1]`, computed once by
/// Newton iteration on the degree-16 Legendre polynomial.
pub fn gauss_legendre_16() -> (&'static [f64; 16], &'static [f64; 16]) {
    static CACHE: OnceLock<([f64; 16], [f64; 16])> = OnceLock::new();
    let (x, w) = CACHE.get_or_init(|| {
        let mut nodes = [0.0; 16];
        let mut weights = [0.0; 16];
        // P₁₆ and its derivative by the three-term recurrence.
        let p16 = |x: f64| -> (f64, f64) {
            let mut p_prev = 1.0;
            let mut p = x;
            for k in 2..=16u32 {
                let kf = f64::from(k);
                let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
                p_prev = p;
                p = p_next;
            }
            let dp = 16.0 * (x * p - p_prev) / (x * x - 1.0);
            (p, dp)
        };
        for i in 1..=8usize {
            // Tricomi initial guess for the i-th root in descending order.
            let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / 16.5).cos();
            for _ in 0..60 {
                let (p, dp) = p16(x);
                let step = p / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = p16(x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[16 - i] = x;
            nodes[i - 1] = -x;
            weights[16 - i] = w;
            weights[i - 1] = w;
        }
        (nodes, weights)
    });
    (x, w)
}

/// Panel boundaries for composite quadrature on `[lo, hi]`: a geometrically
/// graded stack into each endpoint (innermost panel ~[`GRADE_TARGET`] wide)
/// around a uniform middle.  Returns `n_panels + 1` strictly increasing
/// boundaries from `lo` to `hi`.
///
/// # Errors
///
/// [`Error::EmptyArc`] when `hi ≤ lo`; [`Error::config`] when `n_panels < 8`
/// (fewer panels cannot carry the two graded stacks plus a middle).
pub fn panels_for_arc(lo: f64, hi: f64, n_panels: usize) -> Result<Vec<f64>> {
    if hi <= lo {
        return Err(Error::EmptyArc { lo, hi });
    }
    if n_panels < 8 {
        return Err(Error::config("/panels", "need at least 8 panels per arc"));
    }
    let len = hi - lo;
    let q = len / 4.0;
    let graded = (n_panels / 2 - 2).min(30);
    let n_mid = n_panels - 2 * (graded + 1);
    let ratio = (q / GRADE_TARGET).powf(1.0 / graded as f64).max(2.0);
    let mut bounds = Vec::with_capacity(n_panels + 1);
    bounds.push(lo);
    for i in (1..=graded).rev() {
        bounds.push(lo + q * ratio.powi(-(i as i32)));
    }
    for j in 0..=n_mid {
        bounds.push(lo + q + (len - 2.0 * q) * j as f64 / n_mid as f64);
    }
    for i in 1..=graded {
        bounds.push(hi - q * ratio.powi(-(i as i32)));
    }
    bounds.push(hi);
    Ok(bounds)
}

/// Sampled boundary data: node angles, complex values, positive quadrature
/// weights (in `dθ`), per-node local spacing (for the pole guard), and
/// whether the nodes cover all of `∂E` or only an arc set.
#[derive(Debug, Clone)]
pub struct BoundaryTrace {
    thetas: Vec<f64>,
    values: Vec<C64>,
    weights: Vec<f64>,
    spacings: Vec<f64>,
    covers_full_circle: bool,
}

impl BoundaryTrace {
    /// Uniform trapezoid trace over the whole circle: `θ_k = 2πk/n`,
    /// `w_k = 2π/n` — spectrally accurate for smooth periodic data.
    pub fn trapezoid(n: usize, f: impl Fn(f64) -> C64) -> Self {
        let spacing = TAU / n as f64;
        let thetas: Vec<f64> = (0..n).map(|k| k as f64 * spacing).collect();
        let values = thetas.iter().map(|&t| f(t)).collect();
        BoundaryTrace {
            values,
            weights: vec![spacing; n],
            spacings: vec![spacing; n],
            thetas,
            covers_full_circle: true,
        }
    }

    /// Composite graded Gauss–Legendre trace over the arcs of `A`
    /// (`n_panels` panels of 16 nodes per arc).  A full-circle set falls
    /// back to the trapezoid rule with the same node budget.
    ///
    /// # Errors
    ///
    /// As [`panels_for_arc`].
    pub fn graded_panels(
        a: &BoundaryArcSet,
        n_panels: usize,
        f: impl Fn(f64) -> C64,
    ) -> Result<Self> {
        if a.is_full_circle() {
            return Ok(Self::trapezoid(16 * n_panels, f));
        }
        let (gx, gw) = gauss_legendre_16();
        let mut thetas = Vec::new();
        let mut values = Vec::new();
        let mut weights = Vec::new();
        let mut spacings = Vec::new();
        for arc in a.arcs() {
            let bounds = panels_for_arc(arc.lo(), arc.hi(), n_panels)?;
            for p in bounds.windows(2) {
                let (plo, phi) = (p[0], p[1]);
                let half = (phi - plo) / 2.0;
                let mid = (phi + plo) / 2.0;
                for k in 0..16 {
                    let t = mid + half * gx[k];
                    thetas.push(t);
                    values.push(f(t));
                    weights.push(half * gw[k]);
                    spacings.push((phi - plo) / 16.0);
                }
            }
        }
        Ok(BoundaryTrace {
            thetas,
            values,
            weights,
            spacings,
            covers_full_circle: false,
        })
    }

    /// Same nodes and weights, values resampled from a new function.
    pub fn with_values(&self, f: impl Fn(f64) -> C64) -> Self {
        BoundaryTrace {
            thetas: self.thetas.clone(),
            values: self.thetas.iter().map(|&t| f(t)).collect(),
            weights: self.weights.clone(),
            spacings: self.spacings.clone(),
            covers_full_circle: self.covers_full_circle,
        }
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn spacings(&self) -> &[f64] {
        &self.spacings
    }

    pub fn covers_full_circle(&self) -> bool {
        self.covers_full_circle
    }

    /// Total parametrized length `Σ w_k`.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Pole guard: distance from `z` to the nearest node against
    /// `guard_factor ×` its local spacing.
    fn check_pole_guard(&self, z: C64, guard_factor: f64) -> Result<()> {
        for (k, &t) in self.thetas.iter().enumerate() {
            let distance = (C64::from_polar(1.0, t) - z).norm();
            let guard = guard_factor * self.spacings[k];
            if distance < guard {
                return Err(Error::TooCloseToContour { distance, guard });
            }
        }
        Ok(())
    }
}

/// Cauchy integral of a full-circle trace:
/// `(1/2πi) Σ f_k w_k (dζ/dθ)_k/(ζ_k − z) = (1/2π) Σ f_k w_k ζ_k/(ζ_k − z)`.
///
/// Reproduces `f` for data in the Smirnov class (kernel sign `1/(ζ − z)`).
///
/// # Errors
///
/// [`Error::NotInterior`] for `|z| ≥ 1`; [`Error::TooCloseToContour`] when
/// `z` violates the default pole guard.
pub fn cauchy_eval(trace: &BoundaryTrace, z: C64) -> Result<C64> {
    cauchy_eval_guarded(trace, z, DEFAULT_POLE_GUARD)
}

/// [`cauchy_eval`] with an explicit pole-guard factor.
pub fn cauchy_eval_guarded(trace: &BoundaryTrace, z: C64, guard_factor: f64) -> Result<C64> {
    let modulus = z.norm();
    if modulus >= 1.0 {
        return Err(Error::NotInterior { modulus });
    }
    trace.check_pole_guard(z, guard_factor)?;
    Ok(cauchy_sum(trace, z))
}

/// The bare quadrature sum, no guards.
fn cauchy_sum(trace: &BoundaryTrace, z: C64) -> C64 {
    let mut acc = c64(0.0, 0.0);
    for k in 0..trace.len() {
        let zeta = C64::from_polar(1.0, trace.thetas[k]);
        acc += trace.values[k] * trace.weights[k] * zeta / (zeta - z);
    }
    acc / TAU
}

/// Smirnov-class moment residuals `(1/2π)|∫ ζⁿ f*(ζ) dζ|` for
/// `n = 0..=n_max`; all vanish iff the trace is (numerically) the boundary
/// data of a holomorphic function with a Cauchy representation.
pub fn moment_residuals(trace: &BoundaryTrace, n_max: usize) -> Vec<f64> {
    (0..=n_max)
        .map(|n| {
            let mut acc = c64(0.0, 0.0);
            for k in 0..trace.len() {
                // ζⁿ·f·dζ = ζⁿ·f·iζ dθ; the modulus drops the i.
                let zeta_pow = C64::from_polar(1.0, trace.thetas[k] * (n as f64 + 1.0));
                acc += zeta_pow * trace.values[k] * trace.weights[k];
            }
            acc.norm() / TAU
        })
        .collect()
}

/// Discrete radial maximal function: `max over r_grid of |evaluator(r·ζ)|`.
/// `ζ` should be unimodular and the radii in `[0, 1)`; an empty grid gives
/// `0`.
pub fn radial_maximal(evaluator: impl Fn(C64) -> C64, zeta: C64, r_grid: &[f64]) -> f64 {
    r_grid
        .iter()
        .map(|&r| evaluator(zeta * r).norm())
        .fold(0.0, f64::max)
}

/// The one-dimensional recovery operator with its per-trace precomputation:
/// boundary values `g₁(ζ_k)` (purely imaginary on `A`) are evaluated once,
/// then every `(z, N)` evaluation is a single weighted Cauchy sum.
#[derive(Debug, Clone)]
pub struct CarlemanEvaluator {
    trace: BoundaryTrace,
    completion: AnalyticCompletion,
    g_boundary: Vec<C64>,
}

impl CarlemanEvaluator {
    /// # Errors
    ///
    /// Propagates boundary-set errors from the analytic completion.
    pub fn new(trace: &BoundaryTrace, a: &BoundaryArcSet) -> Result<Self> {
        let completion = AnalyticCompletion::new(a, c64(0.0, 0.0))?;
        let g_boundary = trace
            .thetas
            .iter()
            .map(|&t| completion.boundary_value_on_a(t))
            .collect();
        Ok(CarlemanEvaluator {
            trace: trace.clone(),
            completion,
            g_boundary,
        })
    }

    pub fn trace(&self) -> &BoundaryTrace {
        &self.trace
    }

    /// `K_N f(z)`; for a full-circle `A` this is exactly [`cauchy_eval`]
    /// (the completion vanishes identically and the weight is the exact
    /// complex unit).
    ///
    /// # Errors
    ///
    /// As [`cauchy_eval`].
    pub fn eval(&self, z: C64, n_param: f64) -> Result<C64> {
        let modulus = z.norm();
        if modulus >= 1.0 {
            return Err(Error::NotInterior { modulus });
        }
        self.trace.check_pole_guard(z, DEFAULT_POLE_GUARD)?;
        Ok(self.sum(z, n_param))
    }

    fn sum(&self, z: C64, n_param: f64) -> C64 {
        let g_z = self
            .completion
            .eval(z)
            .expect("interior point checked by caller");
        let mut acc = c64(0.0, 0.0);
        for k in 0..self.trace.len() {
            let zeta = C64::from_polar(1.0, self.trace.thetas[k]);
            let weight = (-n_param * (self.g_boundary[k] - g_z)).exp();
            acc += weight * self.trace.values[k] * self.trace.weights[k] * zeta / (zeta - z);
        }
        acc / TAU
    }

    /// Sweep `N = 0, 1, …, ⌊n_max⌋` at fixed `z` and diagnose convergence.
    ///
    /// # Errors
    ///
    /// As [`eval`](Self::eval) (the guard is checked once; non-convergence
    /// is reported in the trace, never raised).
    pub fn sweep(
        &self,
        z: C64,
        n_max: f64,
        tol: f64,
        reference: Option<C64>,
    ) -> Result<ConvergenceTrace> {
        let modulus = z.norm();
        if modulus >= 1.0 {
            return Err(Error::NotInterior { modulus });
        }
        self.trace.check_pole_guard(z, DEFAULT_POLE_GUARD)?;
        let n_values: Vec<f64> = (0..=(n_max.max(0.0).floor() as u64)).map(|n| n as f64).collect();
        let values: Vec<C64> = n_values.iter().map(|&n| self.sum(z, n)).collect();
        let n_star = self.suggest_n_star(z);
        Ok(ConvergenceTrace::from_values(n_values, values, reference, tol, n_star))
    }

    /// Heuristic optimum `N* = ln(1/η)` with `η` = machine epsilon × the
    /// relative condition number of the plain Cauchy sum at `z`.  A
    /// suggestion only — never applied silently.
    fn suggest_n_star(&self, z: C64) -> f64 {
        let mut abs_sum = 0.0;
        for k in 0..self.trace.len() {
            let zeta = C64::from_polar(1.0, self.trace.thetas[k]);
            abs_sum += self.trace.values[k].norm() * self.trace.weights[k]
                / (zeta - z).norm();
        }
        abs_sum /= TAU;
        let value = cauchy_sum(&self.trace, z).norm().max(1e-300);
        let eta = f64::EPSILON * (abs_sum / value).max(1.0);
        (1.0 / eta).ln()
    }
}

/// One-shot form of [`CarlemanEvaluator::eval`].
///
/// # Errors
///
/// As [`CarlemanEvaluator::eval`].
pub fn carleman1d(f_on_a: &BoundaryTrace, a: &BoundaryArcSet, z: C64, n_param: f64) -> Result<C64> {
    CarlemanEvaluator::new(f_on_a, a)?.eval(z, n_param)
}

/// One-shot form of [`CarlemanEvaluator::sweep`].
///
/// # Errors
///
/// As [`CarlemanEvaluator::sweep`].
pub fn carleman1d_sweep(
    f_on_a: &BoundaryTrace,
    a: &BoundaryArcSet,
    z: C64,
    n_max: f64,
    tol: f64,
    reference: Option<C64>,
) -> Result<ConvergenceTrace> {
    CarlemanEvaluator::new(f_on_a, a)?.sweep(z, n_max, tol, reference)
}

/// The record of a convergence sweep: per-`N` values, successive
/// differences, plateau diagnosis, and a fitted exponential rate.
#[derive(Debug, Clone)]
pub struct ConvergenceTrace {
    /// The `N` grid.
    pub n_values: Vec<f64>,
    /// `v_N` per grid point.
    pub values: Vec<C64>,
    /// Optional exact value for error reporting.
    pub reference: Option<C64>,
    /// `|v_N − reference|` per grid point, when a reference is given.
    pub abs_errors: Option<Vec<f64>>,
    /// `diffs[j] = |v_{j+1} − v_j|` (one shorter than `values`).
    pub diffs: Vec<f64>,
    /// First index `p` whose three backward-looking diffs
    /// `diffs[p−1], diffs[p], diffs[p+1]` all fell below the tolerance;
    /// `None` when the sweep never settles.
    pub plateau: Option<usize>,
    /// Whether a plateau was found.
    pub converged: bool,
    /// Value at the plateau, or at the smallest diff when not converged.
    pub converged_value: C64,
    /// Least-squares slope of `ln(error)` against `N` over the pre-plateau
    /// range (error = `|v_N − reference|` when available, successive diffs
    /// otherwise); `None` when fewer than two usable points exist.
    pub slope: Option<f64>,
    /// Heuristic optimal `N` (see [`CarlemanEvaluator`]); a suggestion only.
    pub n_star: f64,
}

impl ConvergenceTrace {
    /// Assemble the diagnosis from raw sweep values.
    pub fn from_values(
        n_values: Vec<f64>,
        values: Vec<C64>,
        reference: Option<C64>,
        tol: f64,
        n_star: f64,
    ) -> Self {
        let diffs: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
        let plateau = diffs
            .windows(3)
            .position(|w| w.iter().all(|&d| d < tol))
            .map(|j| j + 1);
        let converged = plateau.is_some();
        let converged_value = match plateau {
            Some(p) => values[p + 2],
            None => {
                // Best effort: the value right after the smallest diff.
                let best = diffs
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.total_cmp(b.1))
                    .map(|(j, _)| j + 1)
                    .unwrap_or(values.len().saturating_sub(1));
                values[best]
            }
        };
        let abs_errors =
            reference.map(|r| values.iter().map(|v| (v - r).norm()).collect::<Vec<f64>>());
        let slope = Self::fit_slope(&n_values, abs_errors.as_deref(), &diffs, plateau);
        ConvergenceTrace {
            n_values,
            values,
            reference,
            abs_errors,
            diffs,
            plateau,
            converged,
            converged_value,
            slope,
            n_star,
        }
    }

    /// Pre-plateau log-error regression.  With a reference the fit runs over
    /// `N`-indices up to the error minimum; without one it uses the diffs up
    /// to the plateau (or the smallest diff).
    fn fit_slope(
        n_values: &[f64],
        abs_errors: Option<&[f64]>,
        diffs: &[f64],
        plateau: Option<usize>,
    ) -> Option<f64> {
        let points: Vec<(f64, f64)> = match abs_errors {
            Some(errs) => {
                let cut = errs
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.total_cmp(b.1))
                    .map(|(i, _)| i)?;
                (0..=cut)
                    .filter(|&i| errs[i] > 1e-300)
                    .map(|i| (n_values[i], errs[i].ln()))
                    .collect()
            }
            None => {
                let cut = plateau.unwrap_or_else(|| {
                    diffs
                        .iter()
                        .enumerate()
                        .min_by(|a, b| a.1.total_cmp(b.1))
                        .map(|(j, _)| j + 1)
                        .unwrap_or(0)
                });
                (0..cut.min(diffs.len()))
                    .filter(|&j| diffs[j] > 1e-300)
                    .map(|j| (n_values[j + 1], diffs[j].ln()))
                    .collect()
            }
        };
        if points.len() < 2 {
            return None;
        }
        let n = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
        let my = points.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        (sxx > 0.0).then(|| sxy / sxx)
    }
}
