//! The 2-fold cross: data model, wedge, the double-contour recovery
//! operator, boundary-behavior probes, and the quantitative two-constant /
//! power-identity checks.
//!
//! A cross over two disc factors is `W = ((E∪A)×B) ∪ (A×(E∪B))` for boundary
//! arc sets `A`, `B`: two "arms" of the bidisc glued over `A×B`.  Separately
//! holomorphic data on `W` extends to the wedge
//! `Ŵ° = {(z,w) : ω(z) + ω(w) < 1}` (per-factor harmonic measures vanishing
//! on `A` resp. `B`), and the extension is recovered constructively by the
//! tensor-product regularized operator
//!
//! ```text
//! K_N(z,w) = (1/2πi)² ∫_{A×B} e^{−N(g(a,b) − g(z,w))} f(a,b) da db / ((a−z)(b−w)),
//! ```
//!
//! with `g(z,w) = g₁(z) + g₂(w)` the sum of the per-factor analytic
//! completions.  On `A×B` the weight is unimodular; at `(z,w)` its modulus is
//! `e^{N·ω_sum}`, so convergence is exponential at rate `1 − ω_sum` and the
//! operator degenerates as `ω_sum → 1` — hence the strict wedge margin
//! enforced below.
//!
//! The quadrature is the tensor product of the per-factor graded-panel rules;
//! the kernel values `f(a_j, b_k)` are cached as a dense matrix when the node
//! budget allows and streamed row-by-row otherwise, so an `N`-sweep pays for
//! the data function once.

use crate::carleman::{BoundaryTrace, ConvergenceTrace};
use crate::error::{Error, Result};
use crate::geometry::BoundaryArcSet;
use crate::harmonic::{poisson_omega, AnalyticCompletion};
use crate::{c64, C64};
use rayon::prelude::*;
use std::f64::consts::TAU;
use std::sync::Arc;

/// Shared handle for cross data / ground-truth functions.
pub type CrossFn = Arc<dyn Fn(C64, C64) -> C64 + Send + Sync>;

/// Strict wedge margin: points with `ω_sum ≥ 1 − WEDGE_MARGIN` are rejected
/// by the operator (its error bound degenerates as `ω_sum → 1`).
pub const WEDGE_MARGIN: f64 = 1e-9;

/// Largest cached kernel matrix (entries); larger tensor rules stream the
/// data function row-by-row instead.
pub const FMAT_ENTRY_LIMIT: usize = 2048 * 2048;

/// Slack factor on the two-constant right side, absorbing sup-estimation
/// error from finite sampling.
pub const BOUND_SLACK: f64 = 1e-6;

/// A 2-fold cross: per-factor boundary sets and the data function on the
/// cross.  One closed-form handle serves all three restriction roles
/// (`A×B`, `A×E`, `E×B`), which is exactly what the closed fixture catalog
/// provides; a separate optional handle is the ground truth on the bidisc
/// for verification.
#[derive(Clone)]
pub struct CrossSpec {
    a: BoundaryArcSet,
    b: BoundaryArcSet,
    data: CrossFn,
    truth: Option<CrossFn>,
}

impl CrossSpec {
    pub fn new(a: BoundaryArcSet, b: BoundaryArcSet, data: CrossFn) -> Self {
        CrossSpec { a, b, data, truth: None }
    }

    /// A spec whose data function is globally defined and doubles as the
    /// ground truth.
    pub fn from_closed_form(a: BoundaryArcSet, b: BoundaryArcSet, f: CrossFn) -> Self {
        CrossSpec { a, b, data: f.clone(), truth: Some(f) }
    }

    pub fn with_truth(mut self, truth: CrossFn) -> Self {
        self.truth = Some(truth);
        self
    }

    pub fn a(&self) -> &BoundaryArcSet {
        &self.a
    }

    pub fn b(&self) -> &BoundaryArcSet {
        &self.b
    }

    /// Sample the data function.
    pub fn data(&self, z: C64, w: C64) -> C64 {
        (self.data)(z, w)
    }

    pub fn data_fn(&self) -> CrossFn {
        self.data.clone()
    }

    /// Ground truth at `(z, w)`, when available.
    pub fn truth(&self, z: C64, w: C64) -> Option<C64> {
        self.truth.as_ref().map(|f| f(z, w))
    }

    pub fn has_truth(&self) -> bool {
        self.truth.is_some()
    }
}

/// One wedge evaluation: the pair, its per-factor harmonic measures, and
/// the membership flag (`ω_sum < 1`, strict).
#[derive(Debug, Clone, Copy)]
pub struct WedgeSample {
    pub z: C64,
    pub w: C64,
    pub omega_z: f64,
    pub omega_w: f64,
    pub omega_sum: f64,
    pub in_wedge: bool,
}

/// Evaluate the wedge function `ω(z,w) = ω(z,A*,E) + ω(w,B*,E)` at a pair.
///
/// # Errors
///
/// [`Error::NotInterior`] for boundary/exterior inputs.
pub fn wedge_omega(spec: &CrossSpec, z: C64, w: C64) -> Result<WedgeSample> {
    let omega_z = poisson_omega(z, &spec.a)?;
    let omega_w = poisson_omega(w, &spec.b)?;
    let omega_sum = omega_z + omega_w;
    Ok(WedgeSample { z, w, omega_z, omega_w, omega_sum, in_wedge: omega_sum < 1.0 })
}

/// Deterministic wedge sampling: a tensor `(radius × angle)` grid per factor
/// (radii `0.95·(j+1)/(n+1)`, midpoint angles), filtered to
/// `ω_sum ≤ ω_cap` and sorted by `(ω_sum, re z, im z, re w, im w)`.
///
/// # Errors
///
/// [`Error::config`] for a cap outside `(0, 1)`;
/// [`Error::WedgeCapTooTight`] when the filter empties the grid.
pub fn wedge_grid(spec: &CrossSpec, n_per_axis: usize, omega_cap: f64) -> Result<Vec<WedgeSample>> {
    if !(0.0 < omega_cap && omega_cap < 1.0) {
        return Err(Error::config("/omega_cap", "cap must lie strictly between 0 and 1"));
    }
    let factor_points = |arc_set: &BoundaryArcSet| -> Result<Vec<(C64, f64)>> {
        let mut pts = Vec::with_capacity(n_per_axis * n_per_axis);
        for j in 0..n_per_axis {
            let r = 0.95 * (j + 1) as f64 / (n_per_axis + 1) as f64;
            for k in 0..n_per_axis {
                let t = -std::f64::consts::PI + TAU * (k as f64 + 0.5) / n_per_axis as f64;
                let p = C64::from_polar(r, t);
                pts.push((p, poisson_omega(p, arc_set)?));
            }
        }
        Ok(pts)
    };
    let zs = factor_points(&spec.a)?;
    let ws = factor_points(&spec.b)?;
    let mut samples = Vec::new();
    for &(z, omega_z) in &zs {
        for &(w, omega_w) in &ws {
            let omega_sum = omega_z + omega_w;
            if omega_sum <= omega_cap {
                samples.push(WedgeSample {
                    z,
                    w,
                    omega_z,
                    omega_w,
                    omega_sum,
                    in_wedge: omega_sum < 1.0,
                });
            }
        }
    }
    if samples.is_empty() {
        return Err(Error::WedgeCapTooTight { cap: omega_cap });
    }
    samples.sort_unstable_by(|p, q| {
        p.omega_sum
            .total_cmp(&q.omega_sum)
            .then(p.z.re.total_cmp(&q.z.re))
            .then(p.z.im.total_cmp(&q.z.im))
            .then(p.w.re.total_cmp(&q.w.re))
            .then(p.w.im.total_cmp(&q.w.im))
    });
    Ok(samples)
}

/// Per-factor quadrature data for the double-contour operator.
struct GcFactor {
    arcs: BoundaryArcSet,
    completion: AnalyticCompletion,
    thetas: Vec<f64>,
    zetas: Vec<C64>,
    weights: Vec<f64>,
    spacings: Vec<f64>,
    /// `g` boundary values at the nodes (purely imaginary on the arcs, so
    /// the regularizer stays unimodular there).
    gb: Vec<C64>,
}

impl GcFactor {
    fn new(arcs: &BoundaryArcSet, n_panels: usize) -> Result<Self> {
        let trace = BoundaryTrace::graded_panels(arcs, n_panels, |_| c64(0.0, 0.0))?;
        let completion = AnalyticCompletion::new(arcs, c64(0.0, 0.0))?;
        let thetas = trace.thetas().to_vec();
        let zetas: Vec<C64> = thetas.iter().map(|&t| C64::from_polar(1.0, t)).collect();
        let gb = thetas.iter().map(|&t| completion.boundary_value_on_a(t)).collect();
        Ok(GcFactor {
            arcs: arcs.clone(),
            completion,
            zetas,
            weights: trace.weights().to_vec(),
            spacings: trace.spacings().to_vec(),
            thetas,
            gb,
        })
    }

    fn len(&self) -> usize {
        self.thetas.len()
    }

    fn check_pole_guard(&self, p: C64) -> Result<()> {
        for (k, &zeta) in self.zetas.iter().enumerate() {
            let distance = (zeta - p).norm();
            let guard = crate::carleman::DEFAULT_POLE_GUARD * self.spacings[k];
            if distance < guard {
                return Err(Error::TooCloseToContour { distance, guard });
            }
        }
        Ok(())
    }

    /// The per-node kernel vector `e^{−N·gb_k}·ζ_k·w_k/(ζ_k − p)`.
    fn kernel(&self, p: C64, n_param: f64) -> Vec<C64> {
        (0..self.len())
            .map(|k| {
                (-n_param * self.gb[k]).exp() * self.zetas[k] * self.weights[k]
                    / (self.zetas[k] - p)
            })
            .collect()
    }
}

/// The double-contour recovery operator at fixed quadrature, with the data
/// function evaluated once: either cached as a dense node matrix or
/// streamed per row on every pass.
pub struct GcOperator {
    spec: CrossSpec,
    fz: GcFactor,
    fw: GcFactor,
    /// Row-major `[j·nb + k] = f(ζ_j, ξ_k)` when within [`FMAT_ENTRY_LIMIT`].
    fmat: Option<Vec<C64>>,
}

impl GcOperator {
    /// Build factor rules with `n_panels` graded panels per arc (16 nodes
    /// per panel; full-circle sets use the trapezoid rule with the same
    /// budget) and cache the data matrix when it fits.
    ///
    /// # Errors
    ///
    /// Panel-count and boundary-set errors from the factor construction.
    pub fn new(spec: &CrossSpec, n_panels: usize) -> Result<Self> {
        let fz = GcFactor::new(&spec.a, n_panels)?;
        let fw = GcFactor::new(&spec.b, n_panels)?;
        let fmat = (fz.len() * fw.len() <= FMAT_ENTRY_LIMIT)
            .then(|| Self::build_fmat(spec, &fz, &fw));
        Ok(GcOperator { spec: spec.clone(), fz, fw, fmat })
    }

    fn build_fmat(spec: &CrossSpec, fz: &GcFactor, fw: &GcFactor) -> Vec<C64> {
        let nb = fw.len();
        let mut fmat = vec![c64(0.0, 0.0); fz.len() * nb];
        fmat.par_chunks_mut(nb).enumerate().for_each(|(j, row)| {
            let a = fz.zetas[j];
            for (k, slot) in row.iter_mut().enumerate() {
                *slot = spec.data(a, fw.zetas[k]);
            }
        });
        fmat
    }

    /// Same nodes and completions, different data function (the power
    /// identity compares `K[f²]` against `K[f]²` on identical quadrature).
    pub fn with_function(&self, f: CrossFn) -> Self {
        let spec = self.spec.clone().with_truth(f.clone());
        let spec = CrossSpec { data: f, ..spec };
        let fmat = self.fmat.as_ref().map(|_| Self::build_fmat(&spec, &self.fz, &self.fw));
        GcOperator {
            spec,
            fz: GcFactor {
                arcs: self.fz.arcs.clone(),
                completion: self.fz.completion.clone(),
                thetas: self.fz.thetas.clone(),
                zetas: self.fz.zetas.clone(),
                weights: self.fz.weights.clone(),
                spacings: self.fz.spacings.clone(),
                gb: self.fz.gb.clone(),
            },
            fw: GcFactor {
                arcs: self.fw.arcs.clone(),
                completion: self.fw.completion.clone(),
                thetas: self.fw.thetas.clone(),
                zetas: self.fw.zetas.clone(),
                weights: self.fw.weights.clone(),
                spacings: self.fw.spacings.clone(),
                gb: self.fw.gb.clone(),
            },
            fmat,
        }
    }

    pub fn spec(&self) -> &CrossSpec {
        &self.spec
    }

    /// Node counts per factor.
    pub fn node_counts(&self) -> (usize, usize) {
        (self.fz.len(), self.fw.len())
    }

    /// Admission checks shared by all evaluations; returns the wedge sample.
    fn admit(&self, z: C64, w: C64) -> Result<WedgeSample> {
        let sample = wedge_omega(&self.spec, z, w)?;
        if sample.omega_sum >= 1.0 - WEDGE_MARGIN {
            return Err(Error::OutsideWedge { omega_sum: sample.omega_sum });
        }
        self.fz.check_pole_guard(z)?;
        self.fw.check_pole_guard(w)?;
        Ok(sample)
    }

    /// `K_N(z, w)`.
    ///
    /// # Errors
    ///
    /// [`Error::OutsideWedge`] beyond the strict wedge margin,
    /// [`Error::NotInterior`] / [`Error::TooCloseToContour`] per factor.
    pub fn apply(&self, z: C64, w: C64, n_param: f64) -> Result<C64> {
        Ok(self.sweep(z, w, &[n_param], f64::INFINITY, None)?.values[0])
    }

    /// Evaluate `K_N(z,w)` over an `N` schedule, paying for the data
    /// function once, and diagnose convergence (three consecutive diffs
    /// below `tol`).
    ///
    /// # Errors
    ///
    /// As [`apply`](Self::apply); non-convergence is reported, not raised.
    pub fn sweep(
        &self,
        z: C64,
        w: C64,
        schedule: &[f64],
        tol: f64,
        reference: Option<C64>,
    ) -> Result<ConvergenceTrace> {
        self.admit(z, w)?;
        let g_z = self.fz.completion.eval(z).expect("admitted interior point");
        let g_w = self.fw.completion.eval(w).expect("admitted interior point");
        let nb = self.fw.len();
        // Per-N kernel vectors for both factors and the outer prefactor
        // e^{N(g₁(z)+g₂(w))}/(2πi)² — with (1/i)² folded into −1/(2π)².
        let ez: Vec<Vec<C64>> = schedule.iter().map(|&n| self.fz.kernel(z, n)).collect();
        let ew: Vec<Vec<C64>> = schedule.iter().map(|&n| self.fw.kernel(w, n)).collect();
        let prefactors: Vec<C64> = schedule
            .iter()
            .map(|&n| -(n * (g_z + g_w)).exp() / (TAU * TAU))
            .collect();
        // One pass over kernel rows: row_dots[(n, j)] = Σ_k f(ζ_j, ξ_k)·ew[n][k].
        let values: Vec<C64> = match &self.fmat {
            Some(fmat) => fmat
                .par_chunks(nb)
                .enumerate()
                .map(|(j, row)| {
                    (0..schedule.len())
                        .map(|ni| {
                            let dot: C64 =
                                row.iter().zip(&ew[ni]).map(|(&fv, &e)| fv * e).sum();
                            ez[ni][j] * dot
                        })
                        .collect::<Vec<C64>>()
                })
                .reduce(
                    || vec![c64(0.0, 0.0); schedule.len()],
                    |mut acc, v| {
                        for (a, b) in acc.iter_mut().zip(v) {
                            *a += b;
                        }
                        acc
                    },
                ),
            None => (0..self.fz.len())
                .into_par_iter()
                .map(|j| {
                    let a = self.fz.zetas[j];
                    let row: Vec<C64> =
                        self.fw.zetas.iter().map(|&b| self.spec.data(a, b)).collect();
                    (0..schedule.len())
                        .map(|ni| {
                            let dot: C64 = row.iter().zip(&ew[ni]).map(|(&fv, &e)| fv * e).sum();
                            ez[ni][j] * dot
                        })
                        .collect::<Vec<C64>>()
                })
                .reduce(
                    || vec![c64(0.0, 0.0); schedule.len()],
                    |mut acc, v| {
                        for (a, b) in acc.iter_mut().zip(v) {
                            *a += b;
                        }
                        acc
                    },
                ),
        }
        .into_iter()
        .zip(&prefactors)
        .map(|(s, &p)| p * s)
        .collect();
        // Machine-precision heuristic for N*; the 1-D sweep refines this by
        // a condition estimate, the tensor rule keeps the plain cap.
        let n_star = (1.0 / f64::EPSILON).ln();
        Ok(ConvergenceTrace::from_values(schedule.to_vec(), values, reference, tol, n_star))
    }
}

/// One-shot operator application at explicit quadrature size.
///
/// # Errors
///
/// As [`GcOperator::apply`] plus construction errors.
pub fn gc_apply(spec: &CrossSpec, z: C64, w: C64, n_param: f64, n_panels: usize) -> Result<C64> {
    GcOperator::new(spec, n_panels)?.apply(z, w, n_param)
}

/// Sup-norm estimates for the two-constant bound, from fixed deterministic
/// sampling.  `w_sup = None` with the flag set means the sampler met an
/// overflow/NaN — the data is unbounded on `W` and the bound is vacuous.
#[derive(Debug, Clone, Copy)]
pub struct SupEstimates {
    /// `sup |f|` over sampled `A×B`.
    pub cross: f64,
    /// `sup |f|` over the sampled cross arms (including `A×B`), when finite.
    pub w_sup: Option<f64>,
    pub w_unbounded: bool,
}

/// Midpoint angle samples over the arcs of a boundary set (`n` per arc).
/// Midpoints keep arc endpoints and distinguished boundary points (like
/// `θ = 0`) out of the sample, matching the a.e. character of the data.
fn arc_samples(set: &BoundaryArcSet, n: usize) -> Vec<C64> {
    let mut pts = Vec::new();
    for arc in set.arcs() {
        for i in 0..n {
            let t = arc.lo() + arc.len() * (i as f64 + 0.5) / n as f64;
            pts.push(C64::from_polar(1.0, t));
        }
    }
    pts
}

/// Interior sample points of a disc factor: a coarse radial ladder plus a
/// near-boundary sequence `1 − 10^{−j/2}` down to `1 − 10⁻¹⁴`, at 48 equal
/// angles *including* the positive real axis (boundary blow-ups of the
/// fixture catalog live on rays, so the axes must be sampled).
fn interior_samples() -> Vec<C64> {
    let mut radii: Vec<f64> = (1..=9).map(|i| 0.1 * i as f64).collect();
    radii.extend((1..=28).map(|j| 1.0 - 10f64.powf(-(j as f64) / 2.0)));
    let mut pts = Vec::with_capacity(radii.len() * 48);
    for &r in &radii {
        for k in 0..48 {
            pts.push(C64::from_polar(r, TAU * k as f64 / 48.0));
        }
    }
    pts
}

/// Estimate `sup|f|_{A×B}` and `sup|f|_W` by deterministic sampling
/// (`~10⁴` points each).
pub fn estimate_sups(spec: &CrossSpec) -> SupEstimates {
    let a_pts = arc_samples(&spec.a, 100);
    let b_pts = arc_samples(&spec.b, 100);
    let mut cross: f64 = 0.0;
    for &a in &a_pts {
        for &b in &b_pts {
            cross = cross.max(spec.data(a, b).norm());
        }
    }
    let mut w_sup = cross;
    let mut unbounded = !cross.is_finite();
    let inner = interior_samples();
    let a_sub = arc_samples(&spec.a, 25);
    let b_sub = arc_samples(&spec.b, 25);
    // Arm (E∪A)×B, then arm A×(E∪B).
    'arm1: for &z in &inner {
        for &b in &b_sub {
            let v = spec.data(z, b).norm();
            if !v.is_finite() {
                unbounded = true;
                break 'arm1;
            }
            w_sup = w_sup.max(v);
        }
    }
    'arm2: for &a in &a_sub {
        for &w in &inner {
            let v = spec.data(a, w).norm();
            if !v.is_finite() {
                unbounded = true;
                break 'arm2;
            }
            w_sup = w_sup.max(v);
        }
    }
    SupEstimates {
        cross,
        w_sup: (!unbounded).then_some(w_sup),
        w_unbounded: unbounded,
    }
}

/// Per-point record of an extension run.
#[derive(Debug, Clone)]
pub struct PointReport {
    pub sample: WedgeSample,
    /// The extension value: plateau value, or best-`N` value when not
    /// converged.
    pub k_value: C64,
    pub converged: bool,
    /// Plateau index into the `N` schedule, when declared.
    pub plateau: Option<usize>,
    /// Final successive difference of the sweep.
    pub last_diff: f64,
    /// `|K − f(z,w)|` when ground truth is available.
    pub abs_err: Option<f64>,
    /// Two-constant right side `m^{1−ω}·M^{ω}·(1 + slack)`; `None` when the
    /// data is unbounded on `W`.
    pub bound: Option<f64>,
    /// `bound − |K|`.
    pub margin: Option<f64>,
}

/// The full extension report: per-point records plus global sup estimates
/// and violation summaries.
#[derive(Debug, Clone)]
pub struct ExtensionReport {
    pub points: Vec<PointReport>,
    pub sups: SupEstimates,
    /// Reason the two-constant check was skipped, if it was.
    pub bound_skipped: Option<String>,
    pub max_abs_err: Option<f64>,
    /// Smallest margin over the grid (when bounds were computed).
    pub min_margin: Option<f64>,
    /// `max(0, |K| − bound)` over the grid; `0` when bounds were skipped.
    pub max_violation: f64,
    pub all_converged: bool,
}

/// Run the extension over a point list: per-point `N`-sweep to plateau,
/// ground-truth errors when available, and the Theorem-A two-constant bound
/// with sampled sup norms.
///
/// # Errors
///
/// Construction and admission errors ([`Error::OutsideWedge`] for any point
/// beyond the strict wedge margin); non-convergence is flagged per point,
/// never raised.
pub fn gc_extend(
    spec: &CrossSpec,
    points: &[(C64, C64)],
    n_panels: usize,
    schedule: &[f64],
    tol: f64,
) -> Result<ExtensionReport> {
    let op = GcOperator::new(spec, n_panels)?;
    gc_extend_with(&op, points, schedule, tol)
}

/// [`gc_extend`] against a prebuilt operator (shared across checks).
///
/// # Errors
///
/// As [`gc_extend`].
pub fn gc_extend_with(
    op: &GcOperator,
    points: &[(C64, C64)],
    schedule: &[f64],
    tol: f64,
) -> Result<ExtensionReport> {
    let spec = op.spec();
    let sups = estimate_sups(spec);
    let bound_skipped = sups.w_unbounded.then(|| "unbounded on W".to_string());
    let mut reports = Vec::with_capacity(points.len());
    for &(z, w) in points {
        let trace = op.sweep(z, w, schedule, tol, spec.truth(z, w))?;
        let sample = wedge_omega(spec, z, w)?;
        let k_value = trace.converged_value;
        let abs_err = spec.truth(z, w).map(|t| (k_value - t).norm());
        let bound = sups.w_sup.map(|m_big| {
            sups.cross.powf(1.0 - sample.omega_sum) * m_big.powf(sample.omega_sum)
                * (1.0 + BOUND_SLACK)
        });
        let margin = bound.map(|b| b - k_value.norm());
        reports.push(PointReport {
            sample,
            k_value,
            converged: trace.converged,
            plateau: trace.plateau,
            last_diff: trace.diffs.last().copied().unwrap_or(0.0),
            abs_err,
            bound,
            margin,
        });
    }
    let max_abs_err = reports
        .iter()
        .filter_map(|p| p.abs_err)
        .max_by(f64::total_cmp);
    let min_margin = reports
        .iter()
        .filter_map(|p| p.margin)
        .min_by(f64::total_cmp);
    let max_violation = min_margin.map_or(0.0, |m| (-m).max(0.0));
    let all_converged = reports.iter().all(|p| p.converged);
    Ok(ExtensionReport {
        points: reports,
        sups,
        bound_skipped,
        max_abs_err,
        min_margin,
        max_violation,
        all_converged,
    })
}

/// Max over the points of `|K[f^n] − (K[f])^n|`, both sides on identical
/// quadrature, each side run to plateau over the schedule.
///
/// # Errors
///
/// As [`gc_extend`].
pub fn power_identity_check(
    spec: &CrossSpec,
    points: &[(C64, C64)],
    n_power: u32,
    n_panels: usize,
    schedule: &[f64],
    tol: f64,
) -> Result<f64> {
    let op = GcOperator::new(spec, n_panels)?;
    let data = spec.data_fn();
    let powered: CrossFn = Arc::new(move |z, w| data(z, w).powu(n_power));
    let op_pow = op.with_function(powered);
    let mut max_dev: f64 = 0.0;
    for &(z, w) in points {
        let base = op.sweep(z, w, schedule, tol, None)?.converged_value;
        let pow = op_pow.sweep(z, w, schedule, tol, None)?.converged_value;
        max_dev = max_dev.max((pow - base.powu(n_power)).norm());
    }
    Ok(max_dev)
}

/// Record of an angular (Stolz) approach probe toward a boundary point of
/// `A` at fixed `w₀`: a radial sequence and one off-axis sequence at cone
/// angle `α`.  Truncated (with the flag set) at the first depth the
/// evaluator refuses — expected once the pole guard engages.
#[derive(Debug, Clone)]
pub struct ProbeTrace {
    /// The depths actually evaluated (a prefix of the requested ones).
    pub depths: Vec<f64>,
    pub radial_values: Vec<C64>,
    pub off_axis_values: Vec<C64>,
    /// `|value − f(a, w₀)|` per depth, when ground truth is available.
    pub radial_errors: Vec<f64>,
    pub off_axis_errors: Vec<f64>,
    pub target: Option<C64>,
    pub truncated: bool,
}

/// Probe an extension evaluator along Stolz sequences toward the boundary
/// point `a` (which must be an interior point of an arc of `A`): radial
/// `z_k = a(1 − d_k)` and off-axis `z_k = a(1 − d_k e^{iα})`.
///
/// # Errors
///
/// [`Error::config`] when `a` is not unimodular-interior to `A`; evaluator
/// errors at a depth truncate the trace instead of propagating.
pub fn angular_probe(
    spec: &CrossSpec,
    evaluator: impl Fn(C64, C64) -> Result<C64>,
    a: C64,
    w0: C64,
    alpha: f64,
    depths: &[f64],
) -> Result<ProbeTrace> {
    if (a.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::config("/probe/a", "probe point must lie on the unit circle"));
    }
    if !spec.a.is_interior_angle(a.arg()) {
        return Err(Error::config(
            "/probe/a",
            "probe point must be an interior point of an arc of A",
        ));
    }
    if !(alpha.abs() < std::f64::consts::FRAC_PI_2) {
        return Err(Error::config("/probe/alpha", "cone angle must satisfy |alpha| < pi/2"));
    }
    let target = spec.truth(a, w0);
    let mut out = ProbeTrace {
        depths: Vec::new(),
        radial_values: Vec::new(),
        off_axis_values: Vec::new(),
        radial_errors: Vec::new(),
        off_axis_errors: Vec::new(),
        target,
        truncated: false,
    };
    let rot = C64::from_polar(1.0, alpha);
    for &d in depths {
        let z_radial = a * (1.0 - d);
        let z_off = a * (c64(1.0, 0.0) - rot * d);
        match (evaluator(z_radial, w0), evaluator(z_off, w0)) {
            (Ok(vr), Ok(vo)) => {
                out.depths.push(d);
                out.radial_values.push(vr);
                out.off_axis_values.push(vo);
                if let Some(t) = target {
                    out.radial_errors.push((vr - t).norm());
                    out.off_axis_errors.push((vo - t).norm());
                }
            }
            _ => {
                out.truncated = true;
                break;
            }
        }
    }
    Ok(out)
}

/// Record of a joint approach toward a corner `(a, b)` of the torus along
/// two different sequences.  A finite joint angular limit would force the
/// spread to vanish; a persistent spread certifies there is none.
#[derive(Debug, Clone)]
pub struct JointProbeTrace {
    pub deltas: Vec<f64>,
    /// Values along `(a(1−δ), b(1−δ))`.
    pub diagonal_values: Vec<C64>,
    /// Values along `(a(1−e^{−2/δ}), b(1−δ))` — the `z` factor races ahead.
    pub lopsided_values: Vec<C64>,
    /// `|last diagonal − last lopsided|`.
    pub spread: f64,
    pub truncated: bool,
}

/// Probe an extension evaluator jointly at `(a, b)` along the diagonal and
/// a lopsided sequence.
pub fn joint_angular_probe(
    evaluator: impl Fn(C64, C64) -> Result<C64>,
    a: C64,
    b: C64,
    deltas: &[f64],
) -> JointProbeTrace {
    let mut out = JointProbeTrace {
        deltas: Vec::new(),
        diagonal_values: Vec::new(),
        lopsided_values: Vec::new(),
        spread: 0.0,
        truncated: false,
    };
    for &d in deltas {
        let diag = evaluator(a * (1.0 - d), b * (1.0 - d));
        let lop = evaluator(a * (1.0 - (-2.0 / d).exp()), b * (1.0 - d));
        match (diag, lop) {
            (Ok(vd), Ok(vl)) => {
                out.deltas.push(d);
                out.diagonal_values.push(vd);
                out.lopsided_values.push(vl);
            }
            _ => {
                out.truncated = true;
                break;
            }
        }
    }
    if let (Some(&vd), Some(&vl)) = (out.diagonal_values.last(), out.lopsided_values.last()) {
        out.spread = (vd - vl).norm();
    }
    out
}
