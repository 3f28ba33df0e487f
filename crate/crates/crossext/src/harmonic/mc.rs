//! Monte Carlo estimation of harmonic measure by absorbed random walks.
//!
//! The estimator is walk-on-spheres with a fine-step near-boundary phase:
//! while the distance `d` to the absorbing boundary is large, the walk jumps
//! isotropically by `d − 2h` (unbiased by the mean-value property); once
//! within `8h` it advances in isotropic steps of length `h`; at `d ≤ h` it is
//! absorbed and the exit label decides the count.  The estimate is the
//! fraction of walks absorbed on `∂D ∖ A`, matching the `ω` convention of the
//! parent module, together with the binomial standard error
//! `√(p(1−p)/n)`.
//!
//! Every step length is at most `d − h`, so a walk can never cross a slit or
//! leave the domain between steps; in particular, on slit domains the side of
//! absorption is determined exactly by which side the walk has always been
//! on.
//!
//! Walks are independent and reproducible: walk `i` uses a dedicated stream
//! `i` of a counter-based generator seeded with the caller's seed, so results
//! are identical regardless of thread count.

use crate::error::{Error, Result};
use crate::geometry::BoundaryArcSet;
use crate::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::TAU;

/// Default absorption band and fine-step length.
pub const DEFAULT_STEP: f64 = 1e-3;

/// A wall (branch-cut segment) inside a polygonal domain.  Walks absorb on
/// both sides; each side is independently labeled as belonging to `A` or
/// not.  The positive side is the one with
/// `cross(p1 − p0, z − p0) > 0` (left of the directed segment).
#[derive(Debug, Clone, Copy)]
pub struct Slit {
    pub p0: C64,
    pub p1: C64,
    pub positive_side_in_a: bool,
    pub negative_side_in_a: bool,
}

/// A domain the walker knows how to absorb on.
#[derive(Debug, Clone)]
pub enum WalkDomain {
    /// The unit disc; absorption on the circle, labeled by membership of the
    /// exit angle in `A`.
    Disc { a: BoundaryArcSet },
    /// A simple polygon (counterclockwise vertex list, edge `i` from vertex
    /// `i` to vertex `i+1`) with zero or more interior slits.  `edge_in_a[i]`
    /// labels polygon edge `i`; slit sides carry their own labels.
    PolygonWithSlits {
        vertices: Vec<C64>,
        edge_in_a: Vec<bool>,
        slits: Vec<Slit>,
    },
    /// The sub-level domain `D_ε = {ω(·, A, E) < 1 − ε}` inside the unit
    /// disc.  Absorption happens either on the level curve `{ω = 1 − ε}`
    /// (detected by evaluating the exact `ω`; labeled not-in-`A`) or in the
    /// `h`-band at the circle (labeled by arc membership as for `Disc`).
    DiscLevelSet { a: BoundaryArcSet, eps: f64 },
}

/// Tunable walk parameters; [`Default`] gives the standard
/// `h = ε_abs = 1e−3`.
#[derive(Debug, Clone, Copy)]
pub struct WalkParams {
    /// Fine-step length, also the absorption band width.
    pub h_step: f64,
}

impl Default for WalkParams {
    fn default() -> Self {
        WalkParams { h_step: DEFAULT_STEP }
    }
}

/// Distance from `z` to the segment `[p0, p1]`.
fn segment_distance(z: C64, p0: C64, p1: C64) -> f64 {
    let d = p1 - p0;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - p0).norm();
    }
    let t = (((z - p0) * d.conj()).re / len2).clamp(0.0, 1.0);
    (z - (p0 + d * t)).norm()
}

/// Even–odd point-in-polygon test.
fn inside_polygon(z: C64, vertices: &[C64]) -> bool {
    let mut inside = false;
    let n = vertices.len();
    for i in 0..n {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        if (p.im > z.im) != (q.im > z.im) {
            let x = p.re + (z.im - p.im) / (q.im - p.im) * (q.re - p.re);
            if z.re < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Nearest absorbing feature of a polygon-with-slits domain: the distance
/// and, as `(is_slit, index)`, which feature realizes it.
fn nearest_feature(z: C64, vertices: &[C64], slits: &[Slit]) -> (f64, bool, usize) {
    let mut best = (f64::INFINITY, false, 0usize);
    let n = vertices.len();
    for i in 0..n {
        let d = segment_distance(z, vertices[i], vertices[(i + 1) % n]);
        if d < best.0 {
            best = (d, false, i);
        }
    }
    for (i, s) in slits.iter().enumerate() {
        let d = segment_distance(z, s.p0, s.p1);
        if d < best.0 {
            best = (d, true, i);
        }
    }
    best
}

/// Run one walk; `true` means absorbed on `∂D ∖ A` (the event `ω`
/// measures).
fn run_walk(dom: &WalkDomain, start: C64, h: f64, rng: &mut ChaCha8Rng) -> bool {
    let mut z = start;
    match dom {
        WalkDomain::Disc { a } => loop {
            let d = 1.0 - z.norm();
            if d <= h {
                return !a.contains_angle(z.arg());
            }
            let r = if d > 8.0 * h { d - 2.0 * h } else { h };
            z += C64::from_polar(r, TAU * rng.random::<f64>());
        },
        WalkDomain::PolygonWithSlits {
            vertices,
            edge_in_a,
            slits,
        } => loop {
            let (d, is_slit, idx) = nearest_feature(z, vertices, slits);
            if d <= h {
                return if is_slit {
                    let s = &slits[idx];
                    let cross = (s.p1 - s.p0).re * (z - s.p0).im - (s.p1 - s.p0).im * (z - s.p0).re;
                    if cross >= 0.0 {
                        !s.positive_side_in_a
                    } else {
                        !s.negative_side_in_a
                    }
                } else {
                    !edge_in_a[idx]
                };
            }
            let r = if d > 8.0 * h { d - 2.0 * h } else { h };
            z += C64::from_polar(r, TAU * rng.random::<f64>());
        },
        WalkDomain::DiscLevelSet { a, eps } => loop {
            let omega = super::poisson_omega(z, a).expect("walk stays interior");
            if omega >= 1.0 - eps {
                return true; // level curve belongs to ∂D_ε ∖ A
            }
            let d = 1.0 - z.norm();
            if d <= h {
                return !a.contains_angle(z.arg());
            }
            // Certified level-safe radius: within the half-ball the gradient
            // bound |∇ω| ≤ 4(1−ω)/d keeps ω below 1−ε for jumps up to
            // (d/4)·ln(1 + margin/ε); 0.9·min(d/2, margin·d/8) is strictly
            // smaller. The floor at h trades a micro-bias O(h) for
            // termination, consistent with the h-band at the circle.
            let margin = 1.0 - eps - omega;
            let r = (0.9 * (d / 2.0).min(margin * d / 8.0)).max(h);
            z += C64::from_polar(r, TAU * rng.random::<f64>());
        },
    }
}

/// Validate the start point and return the distance to the absorbing
/// boundary (for the level-set domain, the circle distance; the ω-margin is
/// checked separately).
fn validate_start(dom: &WalkDomain, z: C64, h: f64) -> Result<()> {
    let distance = match dom {
        WalkDomain::Disc { .. } => {
            let modulus = z.norm();
            if modulus >= 1.0 {
                return Err(Error::NotInterior { modulus });
            }
            1.0 - modulus
        }
        WalkDomain::PolygonWithSlits { vertices, slits, .. } => {
            if !inside_polygon(z, vertices) {
                return Err(Error::NotInterior { modulus: z.norm() });
            }
            nearest_feature(z, vertices, slits).0
        }
        WalkDomain::DiscLevelSet { a, eps } => {
            if !(0.0..1.0).contains(eps) {
                return Err(Error::LevelEpsOutOfRange { eps: *eps });
            }
            let modulus = z.norm();
            if modulus >= 1.0 {
                return Err(Error::NotInterior { modulus });
            }
            let omega = super::poisson_omega(z, a)?;
            if omega >= 1.0 - eps {
                // Outside D_ε entirely: distance to its boundary is ≤ 0.
                return Err(Error::StartTooCloseToBoundary { distance: 0.0, band: h });
            }
            1.0 - modulus
        }
    };
    if distance <= h {
        return Err(Error::StartTooCloseToBoundary { distance, band: h });
    }
    Ok(())
}

/// Estimate `ω(z, A, D)` with `n_walks` absorbed walks.  Returns
/// `(estimate, standard_error)`.
///
/// # Errors
///
/// [`Error::NotInterior`] / [`Error::StartTooCloseToBoundary`] for invalid
/// starts, [`Error::LevelEpsOutOfRange`] for a bad level parameter.
pub fn mc_omega(dom: &WalkDomain, z: C64, n_walks: u64, seed: u64) -> Result<(f64, f64)> {
    mc_omega_with(dom, z, n_walks, seed, WalkParams::default())
}

/// [`mc_omega`] with explicit walk parameters.
pub fn mc_omega_with(
    dom: &WalkDomain,
    z: C64,
    n_walks: u64,
    seed: u64,
    params: WalkParams,
) -> Result<(f64, f64)> {
    let h = params.h_step;
    if !(h > 0.0) || h >= 0.1 {
        return Err(Error::config("/h_step", "step must lie in (0, 0.1)"));
    }
    validate_start(dom, z, h)?;
    let hits: u64 = (0..n_walks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            u64::from(run_walk(dom, z, h, &mut rng))
        })
        .sum();
    let n = n_walks as f64;
    let p = hits as f64 / n;
    let stderr = (p * (1.0 - p) / n).sqrt();
    Ok((p, stderr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::geometry::{right_half_circle, BoundaryArcSet};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::TAU;

    fn square_with_slit() -> WalkDomain {
        WalkDomain::PolygonWithSlits {
            vertices: vec![c64(1.0, -1.0), c64(1.0, 1.0), c64(-1.0, 1.0), c64(-1.0, -1.0)],
            edge_in_a: vec![true; 4],
            slits: vec![Slit {
                p0: c64(-0.5, 0.0),
                p1: c64(0.5, 0.0),
                positive_side_in_a: false,
                negative_side_in_a: false,
            }],
        }
    }

    #[test]
    fn disc_center_half_within_error() {
        let dom = WalkDomain::Disc { a: right_half_circle() };
        let (est, se) = mc_omega(&dom, c64(0.0, 0.0), 20_000, 42).unwrap();
        assert!((est - 0.5).abs() < 4.0 * se + 0.01, "est {est} se {se}");
    }

    #[test]
    fn disc_full_circle_absorbs_in_a_always() {
        let a = BoundaryArcSet::normalize(&[[0.0, TAU]]).unwrap();
        let dom = WalkDomain::Disc { a };
        let (est, se) = mc_omega(&dom, c64(0.2, 0.1), 500, 1).unwrap();
        assert_eq!(est, 0.0);
        assert_eq!(se, 0.0);
    }

    #[test]
    fn deterministic_across_calls_and_seed_sensitive() {
        let dom = WalkDomain::Disc { a: right_half_circle() };
        let a1 = mc_omega(&dom, c64(0.3, 0.0), 4000, 7).unwrap();
        let a2 = mc_omega(&dom, c64(0.3, 0.0), 4000, 7).unwrap();
        assert_eq!(a1, a2);
        let b = mc_omega(&dom, c64(0.3, 0.0), 4000, 8).unwrap();
        assert_ne!(a1.0, b.0);
    }

    #[test]
    fn start_validation() {
        let dom = WalkDomain::Disc { a: right_half_circle() };
        assert!(matches!(
            mc_omega(&dom, c64(0.9999, 0.0), 10, 0),
            Err(Error::StartTooCloseToBoundary { .. })
        ));
        assert!(matches!(
            mc_omega(&dom, c64(1.5, 0.0), 10, 0),
            Err(Error::NotInterior { .. })
        ));
        let poly = square_with_slit();
        assert!(matches!(
            mc_omega(&poly, c64(2.0, 2.0), 10, 0),
            Err(Error::NotInterior { .. })
        ));
        assert!(matches!(
            mc_omega(&poly, c64(0.0, 0.0005), 10, 0),
            Err(Error::StartTooCloseToBoundary { .. })
        ));
    }

    #[test]
    fn slit_square_sees_the_slit() {
        // From just above the slit, nearly all walks absorb on it (not in A);
        // the remainder reach the outer square (in A).
        let dom = square_with_slit();
        let (est, _) = mc_omega(&dom, c64(0.0, 0.05), 2000, 3).unwrap();
        assert!(est > 0.8, "est {est}");
        // From a corner region, the outer square takes most walks.
        let (est2, _) = mc_omega(&dom, c64(0.85, 0.85), 2000, 3).unwrap();
        assert!(est2 < 0.3, "est2 {est2}");
    }

    #[test]
    fn slit_side_labels_are_honored() {
        // Label the upper slit side as part of A: walks from above that hit
        // the slit no longer count, so the estimate drops to the harmonic
        // measure of the lower side ∪ nothing — near zero from high above.
        let mut dom = square_with_slit();
        if let WalkDomain::PolygonWithSlits { slits, edge_in_a, .. } = &mut dom {
            slits[0].positive_side_in_a = true;
            slits[0].negative_side_in_a = true;
            edge_in_a.fill(true);
        }
        let (est, se) = mc_omega(&dom, c64(0.0, 0.5), 2000, 9).unwrap();
        assert_eq!((est, se), (0.0, 0.0));
    }

    #[test]
    fn level_set_matches_rescaled_measure() {
        // ε = 0.1, A = right half-circle, start at the origin: the exact
        // absorbed-on-level-or-gap probability is ω/(1−ε) = 5/9.
        let dom = WalkDomain::DiscLevelSet { a: right_half_circle(), eps: 0.1 };
        let (est, se) = mc_omega(&dom, c64(0.0, 0.0), 4000, 21).unwrap();
        let exact = 0.5 / 0.9;
        assert!((est - exact).abs() < 4.0 * se + 0.01, "est {est} exact {exact} se {se}");
    }

    #[test]
    fn level_set_rejects_outside_starts() {
        let dom = WalkDomain::DiscLevelSet { a: right_half_circle(), eps: 0.6 };
        // ω(−0.9) ≈ 0.97 > 1 − 0.6.
        assert!(matches!(
            mc_omega(&dom, c64(-0.9, 0.0), 10, 0),
            Err(Error::StartTooCloseToBoundary { .. })
        ));
        let bad = WalkDomain::DiscLevelSet { a: right_half_circle(), eps: 1.0 };
        assert!(matches!(
            mc_omega(&bad, c64(0.0, 0.0), 10, 0),
            Err(Error::LevelEpsOutOfRange { .. })
        ));
    }

    #[test]
    fn stderr_formula() {
        let dom = WalkDomain::Disc { a: right_half_circle() };
        let (est, se) = mc_omega(&dom, c64(0.0, 0.0), 1000, 5).unwrap();
        assert_abs_diff_eq!(se, (est * (1.0 - est) / 1000.0).sqrt(), epsilon = 1e-15);
    }
}
