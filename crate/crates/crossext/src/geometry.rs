//! Planar primitives on the unit disc.
//!
//! Three constructions live here:
//!
//! * [`BoundaryArcSet`] — a finite union of closed arcs on the unit circle,
//!   the only boundary-set representation the library uses.  Arc sets are
//!   normalized on construction (merged, sorted, disjoint) so that lengths,
//!   complements, and regular interiors are exact.
//! * [`StolzRegion`] — the angular (non-tangential) approach region at a
//!   boundary point.
//! * [`AngularJordanDomain`] — the domain `Ω(F, h)`: the union of truncated
//!   `π/4`-cones of depth `h` erected over a closed base set `F`, together
//!   with its boundary decomposition and the shrunken contours `Γ_ε`.
//!
//! Angles are stored in `(−π, π]`.  Wraparound arcs are permitted: a stored
//! arc `[θ_lo, θ_lo + len]` may extend past `π`.  All predicates treat the
//! circle correctly (no seam artifacts at `±π`).

use crate::error::{Error, Result};
use crate::C64;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::f64::consts::{FRAC_PI_4, PI, SQRT_2, TAU};

/// Map an angle to its representative in `(−π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let w = (theta + PI).rem_euclid(TAU) - PI; // [−π, π)
    if w == -PI {
        PI
    } else {
        w
    }
}

/// Map an angle to its representative in `[−π, π)` (used only for sorting
/// during normalization, where a half-open frame is convenient).
fn wrap_angle_half_open(theta: f64) -> f64 {
    (theta + PI).rem_euclid(TAU) - PI
}

/// Circular distance between two angles, in `[0, π]`.
pub fn circ_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// One closed arc `[lo, lo + len]` on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedArc {
    lo: f64,
    len: f64,
}

impl ClosedArc {
    /// Left endpoint, in `(−π, π]`.
    pub fn lo(&self) -> f64 {
        self.lo
    }

    /// Right endpoint `lo + len`; may exceed `π` for wraparound arcs.
    pub fn hi(&self) -> f64 {
        self.lo + self.len
    }

    /// Angular length, in `(0, 2π]`.
    pub fn len(&self) -> f64 {
        self.len
    }
}

/// A finite union of closed arcs on the unit circle, normalized so the arcs
/// are pairwise disjoint and sorted by left endpoint.
///
/// The `open` flag marks a set produced by [`BoundaryArcSet::regular_interior`]:
/// the arcs are the same but membership excludes the endpoints.  Lengths,
/// complements, and all measure-theoretic quantities are unaffected (the
/// endpoints form a null set).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryArcSet {
    arcs: Vec<ClosedArc>,
    open: bool,
}

impl BoundaryArcSet {
    /// Normalize a list of angular intervals `[lo, hi]` (radians, `hi > lo`,
    /// any branch) into a disjoint sorted union of closed arcs.  Overlapping
    /// and touching intervals merge; an interval of length `≥ 2π` (or a
    /// union covering everything) collapses to the full circle.
    ///
    /// # Errors
    ///
    /// * [`Error::EmptyBoundarySet`] when `intervals` is empty.
    /// * [`Error::EmptyArc`] when some interval has `hi ≤ lo`.
    pub fn normalize(intervals: &[[f64; 2]]) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::EmptyBoundarySet);
        }
        let mut items: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for &[lo, hi] in intervals {
            let len = hi - lo;
            if !(len > 0.0) {
                return Err(Error::EmptyArc { lo, hi });
            }
            if len >= TAU {
                return Ok(Self::full_circle_at(wrap_angle(lo)));
            }
            let s = wrap_angle_half_open(lo);
            items.push((s, s + len));
        }
        items.sort_by(|a, b| a.0.total_cmp(&b.0));

        // Linear merge in the [−π, π) frame; ends may exceed π.
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(items.len());
        for (s, e) in items {
            match merged.last_mut() {
                Some(last) if s <= last.1 => last.1 = last.1.max(e),
                _ => merged.push((s, e)),
            }
        }
        // Wraparound: the last arc may reach past the seam and swallow arcs
        // at the start of the list.
        while merged.len() > 1 {
            let last_end = merged.last().unwrap().1;
            if merged[0].0 + TAU <= last_end {
                let (_, e0) = merged.remove(0);
                let last = merged.last_mut().unwrap();
                last.1 = last.1.max(e0 + TAU);
            } else {
                break;
            }
        }
        if merged.len() == 1 && merged[0].1 - merged[0].0 >= TAU {
            return Ok(Self::full_circle_at(wrap_angle(merged[0].0)));
        }

        let mut arcs: Vec<ClosedArc> = merged
            .into_iter()
            .map(|(s, e)| ClosedArc {
                lo: wrap_angle(s),
                len: e - s,
            })
            .collect();
        arcs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        Ok(BoundaryArcSet { arcs, open: false })
    }

    fn full_circle_at(lo: f64) -> Self {
        BoundaryArcSet {
            arcs: vec![ClosedArc { lo, len: TAU }],
            open: false,
        }
    }

    /// The normalized arcs, disjoint and sorted by left endpoint.
    pub fn arcs(&self) -> &[ClosedArc] {
        &self.arcs
    }

    /// Whether this set is the relative interior produced by
    /// [`BoundaryArcSet::regular_interior`].
    pub fn is_open(&self) -> bool {
        self.open
    }

    /// Total angular length, in `(0, 2π]`.
    pub fn total_length(&self) -> f64 {
        self.arcs.iter().map(|a| a.len).sum()
    }

    /// Total length normalized by `2π`, in `(0, 1]`.
    pub fn normalized_length(&self) -> f64 {
        self.total_length() / TAU
    }

    /// True when the set covers the whole circle.
    pub fn is_full_circle(&self) -> bool {
        self.arcs.len() == 1 && self.arcs[0].len >= TAU
    }

    /// Membership of the angle `θ`.  Closed sets include arc endpoints; sets
    /// returned by [`BoundaryArcSet::regular_interior`] exclude them.
    pub fn contains_angle(&self, theta: f64) -> bool {
        if self.is_full_circle() {
            return true;
        }
        self.arcs.iter().any(|a| {
            let d = (theta - a.lo).rem_euclid(TAU);
            if self.open {
                d > 0.0 && d < a.len
            } else {
                d <= a.len
            }
        })
    }

    /// True when `θ` lies in the open interior of some arc (endpoints
    /// excluded), regardless of the `open` flag.
    pub fn is_interior_angle(&self, theta: f64) -> bool {
        if self.is_full_circle() {
            return true;
        }
        self.arcs.iter().any(|a| {
            let d = (theta - a.lo).rem_euclid(TAU);
            d > 0.0 && d < a.len
        })
    }

    /// Circular distance from the angle `θ` to the set (0 when contained in
    /// the closed set).
    pub fn angular_distance(&self, theta: f64) -> f64 {
        if self.is_full_circle() {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for a in &self.arcs {
            let d = (theta - a.lo).rem_euclid(TAU);
            if d <= a.len {
                return 0.0;
            }
            best = best.min((d - a.len).min(TAU - d));
        }
        best
    }

    /// The complementary gaps as intervals `[start, start + len]` with
    /// `start ∈ (−π, π]`, sorted to follow the arcs.  Empty for the full
    /// circle.
    pub fn gap_intervals(&self) -> Vec<[f64; 2]> {
        if self.is_full_circle() {
            return Vec::new();
        }
        let n = self.arcs.len();
        let mut gaps = Vec::with_capacity(n);
        for i in 0..n {
            let hi = self.arcs[i].hi();
            let next_lo = self.arcs[(i + 1) % n].lo;
            let len = (next_lo - hi).rem_euclid(TAU);
            // Disjointness after normalization guarantees len > 0.
            gaps.push([wrap_angle(hi), wrap_angle(hi) + len]);
        }
        gaps
    }

    /// The relative interior: same arcs with endpoints removed.  Lengths are
    /// unchanged; the full circle (which has no endpoints) is returned as is.
    pub fn regular_interior(&self) -> BoundaryArcSet {
        BoundaryArcSet {
            arcs: self.arcs.clone(),
            open: !self.is_full_circle(),
        }
    }

    /// The set rotated by the angle `φ`.
    pub fn rotated(&self, phi: f64) -> BoundaryArcSet {
        let mut arcs: Vec<ClosedArc> = self
            .arcs
            .iter()
            .map(|a| ClosedArc {
                lo: if a.len >= TAU {
                    wrap_angle(a.lo + phi)
                } else {
                    wrap_angle(a.lo + phi)
                },
                len: a.len,
            })
            .collect();
        arcs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        BoundaryArcSet {
            arcs,
            open: self.open,
        }
    }

    /// `sup |x − y|` over points `x, y` of the set (chord metric on the
    /// circle).  Equals `2 sin(s/2)` where `s ≤ π` is the largest circular
    /// angle separating two points of the set.
    pub fn chord_diameter(&self) -> f64 {
        if self.is_full_circle() {
            return 2.0;
        }
        let mut max_sep: f64 = 0.0;
        let n = self.arcs.len();
        for i in 0..n {
            for j in i..n {
                max_sep = max_sep.max(self.pair_separation(i, j));
                if max_sep >= PI {
                    return 2.0;
                }
            }
        }
        2.0 * (max_sep / 2.0).sin()
    }

    /// Largest circular distance between a point of arc `i` and a point of
    /// arc `j`.  The distance function is maximized either at an antipodal
    /// pair (giving `π`) or at arc endpoints.
    fn pair_separation(&self, i: usize, j: usize) -> f64 {
        let a = &self.arcs[i];
        let b = &self.arcs[j];
        if i == j {
            return a.len.min(PI);
        }
        // Antipodal overlap: does arc j meet the antipode of arc i?
        let shifted_lo = a.lo + PI;
        let fwd = (b.lo - shifted_lo).rem_euclid(TAU);
        let bwd = (shifted_lo - b.lo).rem_euclid(TAU);
        if fwd <= a.len || bwd <= b.len {
            return PI;
        }
        let ea = [a.lo, a.hi()];
        let eb = [b.lo, b.hi()];
        let mut best: f64 = 0.0;
        for &x in &ea {
            for &y in &eb {
                best = best.max(circ_dist(x, y));
            }
        }
        best
    }
}

impl Serialize for BoundaryArcSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.arcs.len()))?;
        for a in &self.arcs {
            seq.serialize_element(&[a.lo, a.hi()])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for BoundaryArcSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<[f64; 2]> = Vec::deserialize(deserializer)?;
        BoundaryArcSet::normalize(&raw).map_err(serde::de::Error::custom)
    }
}

/// The Stolz (angular approach) region `𝒜_α(ζ) = {z ∈ E : |arg((ζ−z)/ζ)| < α}`:
/// the part of the disc within the open cone of half-angle `α` whose vertex
/// is the boundary point `ζ` and whose axis points along the inward radius.
#[derive(Debug, Clone, Copy)]
pub struct StolzRegion {
    vertex: C64,
    half_angle: f64,
}

impl StolzRegion {
    /// # Errors
    ///
    /// * [`Error::BadStolzVertex`] unless `|ζ| = 1` within `1e−12`.
    /// * [`Error::BadStolzAngle`] unless `0 < α < π/2`.
    pub fn new(vertex: C64, half_angle: f64) -> Result<Self> {
        let modulus = vertex.norm();
        if (modulus - 1.0).abs() > 1e-12 {
            return Err(Error::BadStolzVertex { modulus });
        }
        if !(half_angle > 0.0 && half_angle < PI / 2.0) {
            return Err(Error::BadStolzAngle { alpha: half_angle });
        }
        Ok(StolzRegion { vertex, half_angle })
    }

    /// Vertex `ζ` on the unit circle.
    pub fn vertex(&self) -> C64 {
        self.vertex
    }

    /// Half-opening `α`.
    pub fn half_angle(&self) -> f64 {
        self.half_angle
    }

    /// Membership test: `|arg((ζ−z)/ζ)| < α`.
    ///
    /// # Errors
    ///
    /// [`Error::NotInterior`] when `|z| ≥ 1`.
    pub fn contains(&self, z: C64) -> Result<bool> {
        let modulus = z.norm();
        if modulus >= 1.0 {
            return Err(Error::NotInterior { modulus });
        }
        let u = (self.vertex - z) * self.vertex.conj();
        Ok(u.arg().abs() < self.half_angle)
    }
}

/// Half-width of the `π/4`-cone at a unit-circle point, measured at radius
/// `ρ`: a point `ρ·e^{iφ}` lies in the (near component of the) cone with
/// vertex `e^{iθ}` exactly when `|φ − θ| < s₁(ρ)` with
/// `s₁(ρ) = asin(1/(ρ√2)) − π/4`.  Defined for `ρ ∈ [√2/2, 1]`; zero at
/// `ρ = 1` and increasing as `ρ` decreases.
pub fn cone_half_width(rho: f64) -> f64 {
    (1.0 / (rho * SQRT_2)).asin() - FRAC_PI_4
}

/// Length of the `π/4`-cone side ray from a unit-circle vertex down to the
/// circle of radius `ρ_in`: the positive root `t` of `t² − √2·t + 1 − ρ_in² = 0`.
fn side_ray_reach(rho_in: f64) -> f64 {
    (SQRT_2 - (4.0 * rho_in * rho_in - 2.0).sqrt()) / 2.0
}

/// The angular Jordan domain `Ω(F, h)`: the union over boundary points
/// `ζ ∈ F` of the near components of the truncated open cones
/// `{z : 1−h < |z| < 1, |arg(z/ζ)| < s₁(|z|)}`.
///
/// For an admissible pair (`sup_{x,y∈F}|x−y| < h < 1 − √2/2`) the union is
/// an open connected Jordan domain whose closure meets the unit circle
/// exactly on `F`.  Its boundary decomposes into:
///
/// * `F₀` — the arcs of `F` on the unit circle, bridged over each gap by an
///   isosceles triangle notch (two cone side rays meeting at the notch apex);
/// * `F₁`, `F₂` — the two outermost side rays at the extreme endpoints;
/// * `F₃` — the arc of the inner circle `|z| = 1−h` closing the domain.
#[derive(Debug, Clone)]
pub struct AngularJordanDomain {
    base: BoundaryArcSet,
    h: f64,
    /// Base arcs unwrapped to a common branch: ascending `[lo, hi]` with
    /// `hi − lo` the true arc length; the window spans less than `2 asin(h/2)`.
    arcs_unwrapped: Vec<[f64; 2]>,
    theta_min: f64,
    theta_max: f64,
}

impl AngularJordanDomain {
    /// Build `Ω(F, h)`.
    ///
    /// # Errors
    ///
    /// [`Error::HeightConstraint`] unless `sup_{x,y∈F}|x−y| < h < 1 − √2/2`.
    pub fn new(base: &BoundaryArcSet, h: f64) -> Result<Self> {
        let diameter = base.chord_diameter();
        if !(diameter < h && h < 1.0 - SQRT_2 / 2.0) {
            return Err(Error::HeightConstraint { diameter, h });
        }
        // Unwrap all arcs to the branch of the first arc's left endpoint so
        // the window is a plain interval even when F straddles θ = π.
        let reference = base.arcs()[0].lo();
        let mut arcs_unwrapped: Vec<[f64; 2]> = base
            .arcs()
            .iter()
            .map(|a| {
                let d = (a.lo() - reference + PI).rem_euclid(TAU) - PI;
                let lo = reference + d;
                [lo, lo + a.len()]
            })
            .collect();
        arcs_unwrapped.sort_by(|a, b| a[0].total_cmp(&b[0]));
        let theta_min = arcs_unwrapped[0][0];
        let theta_max = arcs_unwrapped.iter().fold(f64::MIN, |m, a| m.max(a[1]));
        Ok(AngularJordanDomain {
            base: base.clone(),
            h,
            arcs_unwrapped,
            theta_min,
            theta_max,
        })
    }

    /// The base set `F`.
    pub fn base(&self) -> &BoundaryArcSet {
        &self.base
    }

    /// The height `h`.
    pub fn height(&self) -> f64 {
        self.h
    }

    /// Open-set membership: `1−h < |z| < 1` and the angular distance from
    /// `arg z` to `F` is strictly less than the cone half-width `s₁(|z|)`.
    /// Boundary points are classified as outside (`Ω` is open).
    pub fn contains(&self, z: C64) -> bool {
        let rho = z.norm();
        if !(rho > 1.0 - self.h && rho < 1.0) {
            return false;
        }
        self.base.angular_distance(z.arg()) < cone_half_width(rho)
    }

    /// Membership in the shrunken domain
    /// `Ω_ε = (1−ε)·Ω ∖ closure(B(0, (1+ε)(1−h)))`.
    pub fn contains_eps(&self, z: C64, eps: f64) -> bool {
        z.norm() > (1.0 + eps) * (1.0 - self.h) && self.contains(z / (1.0 - eps))
    }

    /// The boundary `∂Ω` as a closed polyline (the `ε = 0` contour).
    pub fn boundary(&self) -> ContourPolyline {
        self.contour_at(1.0 - self.h, 0.0)
    }

    /// The shrunken contour `Γ_ε = ∂Ω_ε`, the scaled copy `(1−ε)·∂Ω`
    /// truncated by the inner circle `|z| = (1+ε)(1−h)`.
    ///
    /// # Errors
    ///
    /// * [`Error::EpsOutOfRange`] unless `0 < ε < h/4`.
    /// * [`Error::ContourPinched`] when a base gap is so wide that its notch
    ///   apex falls below the truncation radius, which would disconnect the
    ///   shrunken domain.
    pub fn contour(&self, eps: f64) -> Result<ContourPolyline> {
        let limit = self.h / 4.0;
        if !(eps > 0.0 && eps < limit) {
            return Err(Error::EpsOutOfRange { eps, limit });
        }
        // Truncation radius in pre-scaling coordinates.
        let q = (1.0 + eps) * (1.0 - self.h) / (1.0 - eps);
        let reach = cone_half_width(q);
        for w in self.arcs_unwrapped.windows(2) {
            let gap = (w[1][0] - w[0][1]) / 2.0;
            if gap >= reach {
                return Err(Error::ContourPinched { gap, reach });
            }
        }
        Ok(self.contour_at(q, eps))
    }

    /// Build the contour truncated at pre-scaling radius `rho_in`, then
    /// scale every piece by `1 − eps`.
    fn contour_at(&self, rho_in: f64, eps: f64) -> ContourPolyline {
        let scale = 1.0 - eps;
        let s1 = cone_half_width(rho_in);
        let t = side_ray_reach(rho_in);
        let mut pieces: Vec<ContourPiece> = Vec::new();

        // F0: base arcs on the unit circle with triangle notches over gaps.
        let n = self.arcs_unwrapped.len();
        for (i, arc) in self.arcs_unwrapped.iter().enumerate() {
            pieces.push(ContourPiece::CircularArc {
                radius: scale,
                theta_start: arc[0],
                theta_end: arc[1],
            });
            if i + 1 < n {
                let next_lo = self.arcs_unwrapped[i + 1][0];
                let gamma = (next_lo - arc[1]) / 2.0;
                let mid = (arc[1] + next_lo) / 2.0;
                // Apex radius: where the cone half-width equals the gap
                // half-angle, s₁(ρ) = γ.
                let rho_apex = 1.0 / (SQRT_2 * (gamma + FRAC_PI_4).sin());
                let apex = C64::from_polar(scale * rho_apex, mid);
                let right_end = C64::from_polar(scale, arc[1]);
                let left_end = C64::from_polar(scale, next_lo);
                pieces.push(ContourPiece::Segment {
                    start: right_end,
                    end: apex,
                });
                pieces.push(ContourPiece::Segment {
                    start: apex,
                    end: left_end,
                });
            }
        }

        // F1: side ray descending from the rightmost endpoint.
        let vmax = C64::from_polar(1.0, self.theta_max);
        let ray1_end = vmax * (1.0 - t * C64::from_polar(1.0, -FRAC_PI_4));
        pieces.push(ContourPiece::Segment {
            start: vmax * scale,
            end: ray1_end * scale,
        });

        // F3: inner closing arc, traversed with decreasing angle so the
        // domain stays on the left.
        pieces.push(ContourPiece::CircularArc {
            radius: scale * rho_in,
            theta_start: self.theta_max + s1,
            theta_end: self.theta_min - s1,
        });

        // F2: side ray ascending back to the leftmost endpoint.
        let vmin = C64::from_polar(1.0, self.theta_min);
        let ray2_end = vmin * (1.0 - t * C64::from_polar(1.0, FRAC_PI_4));
        pieces.push(ContourPiece::Segment {
            start: ray2_end * scale,
            end: vmin * scale,
        });

        ContourPolyline { pieces }
    }
}

/// One parametrized piece of a contour: a straight segment, or an arc of an
/// origin-centered circle traversed from `theta_start` to `theta_end`
/// (decreasing angles mean clockwise traversal).
#[derive(Debug, Clone, Copy)]
pub enum ContourPiece {
    Segment { start: C64, end: C64 },
    CircularArc {
        radius: f64,
        theta_start: f64,
        theta_end: f64,
    },
}

impl ContourPiece {
    /// Arc length of the piece.
    pub fn length(&self) -> f64 {
        match *self {
            ContourPiece::Segment { start, end } => (end - start).norm(),
            ContourPiece::CircularArc {
                radius,
                theta_start,
                theta_end,
            } => radius * (theta_end - theta_start).abs(),
        }
    }

    /// Point at parameter `t ∈ [0, 1]` (uniform in arc length per piece).
    pub fn point(&self, t: f64) -> C64 {
        match *self {
            ContourPiece::Segment { start, end } => start + (end - start) * t,
            ContourPiece::CircularArc {
                radius,
                theta_start,
                theta_end,
            } => C64::from_polar(radius, theta_start + t * (theta_end - theta_start)),
        }
    }

    /// Start point.
    pub fn start(&self) -> C64 {
        self.point(0.0)
    }

    /// End point.
    pub fn end(&self) -> C64 {
        self.point(1.0)
    }

    /// Length of the radial projection `τ(z) = z/|z|` of the sub-piece
    /// `t ∈ [t0, t1]`: the angular span swept on the unit circle.  The
    /// argument is monotone along every piece this module constructs, so the
    /// span is the absolute argument increment.
    pub fn projected_length(&self, t0: f64, t1: f64) -> f64 {
        match *self {
            ContourPiece::Segment { .. } => {
                let a0 = self.point(t0).arg();
                let a1 = self.point(t1).arg();
                let d = (a1 - a0).rem_euclid(TAU);
                d.min(TAU - d)
            }
            ContourPiece::CircularArc {
                theta_start,
                theta_end,
                ..
            } => (t1 - t0).abs() * (theta_end - theta_start).abs(),
        }
    }

    /// Arc length of the sub-piece `t ∈ [t0, t1]`.
    pub fn sub_length(&self, t0: f64, t1: f64) -> f64 {
        (t1 - t0).abs() * self.length()
    }
}

/// A closed piecewise-smooth contour made of segments and origin-centered
/// circular arcs.
#[derive(Debug, Clone)]
pub struct ContourPolyline {
    pieces: Vec<ContourPiece>,
}

impl ContourPolyline {
    /// The ordered pieces.
    pub fn pieces(&self) -> &[ContourPiece] {
        &self.pieces
    }

    /// Total arc length.
    pub fn total_length(&self) -> f64 {
        self.pieces.iter().map(|p| p.length()).sum()
    }

    /// All piece endpoints (polyline vertices), start of each piece plus the
    /// final end point.
    pub fn vertices(&self) -> Vec<C64> {
        let mut v: Vec<C64> = self.pieces.iter().map(|p| p.start()).collect();
        if let Some(last) = self.pieces.last() {
            v.push(last.end());
        }
        v
    }

    /// Whether the contour closes up: each piece ends where the next starts
    /// and the last ends at the first start, within `tol`.
    pub fn is_closed(&self, tol: f64) -> bool {
        let n = self.pieces.len();
        if n == 0 {
            return false;
        }
        (0..n).all(|i| {
            let gap = (self.pieces[(i + 1) % n].start() - self.pieces[i].end()).norm();
            gap <= tol
        })
    }
}

pub use arc_ops::arc_set_normalize;

mod arc_ops {
    use super::*;

    /// Free-function form of [`BoundaryArcSet::normalize`].
    pub fn arc_set_normalize(intervals: &[[f64; 2]]) -> Result<BoundaryArcSet> {
        BoundaryArcSet::normalize(intervals)
    }
}

/// Free-function form of [`StolzRegion::contains`].
///
/// # Errors
///
/// Propagates the constructor and membership errors of [`StolzRegion`].
pub fn stolz_contains(vertex: C64, half_angle: f64, z: C64) -> Result<bool> {
    StolzRegion::new(vertex, half_angle)?.contains(z)
}

/// Free-function form of [`AngularJordanDomain::new`].
pub fn angular_jordan_domain(base: &BoundaryArcSet, h: f64) -> Result<AngularJordanDomain> {
    AngularJordanDomain::new(base, h)
}

/// Free-function form of [`AngularJordanDomain::contour`].
pub fn ajd_contour(domain: &AngularJordanDomain, eps: f64) -> Result<ContourPolyline> {
    domain.contour(eps)
}

/// A convenience constructor for the closed right half-circle
/// `{e^{iθ} : θ ∈ [−π/2, π/2]}`.
pub fn right_half_circle() -> BoundaryArcSet {
    BoundaryArcSet::normalize(&[[-PI / 2.0, PI / 2.0]]).expect("fixed arc is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn normalize_single_arc_is_half_circle() {
        let s = BoundaryArcSet::normalize(&[[-PI / 2.0, PI / 2.0]]).unwrap();
        assert_eq!(s.arcs().len(), 1);
        assert_relative_eq!(s.normalized_length(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(s.arcs()[0].lo(), -PI / 2.0);
        assert_relative_eq!(s.arcs()[0].hi(), PI / 2.0);
    }

    #[test]
    fn normalize_merges_overlap() {
        let s = BoundaryArcSet::normalize(&[[0.0, 1.0], [0.5, 2.0]]).unwrap();
        assert_eq!(s.arcs().len(), 1);
        assert_relative_eq!(s.arcs()[0].lo(), 0.0);
        assert_relative_eq!(s.arcs()[0].len(), 2.0);
        assert_relative_eq!(s.normalized_length(), 2.0 / TAU, max_relative = 1e-15);
    }

    #[test]
    fn normalize_merges_wraparound_through_pi() {
        // [3, π] ∪ [−π, −3] is a single arc through θ = π of length 2(π−3).
        let s = BoundaryArcSet::normalize(&[[3.0, PI], [-PI, -3.0]]).unwrap();
        assert_eq!(s.arcs().len(), 1);
        assert_relative_eq!(s.total_length(), 2.0 * (PI - 3.0), max_relative = 1e-12);

        // Independent oracle: indicator-function integration on a dense
        // angle grid.
        let n = 1_000_000usize;
        let mut hits = 0usize;
        for k in 0..n {
            let theta = -PI + TAU * (k as f64 + 0.5) / n as f64;
            if s.contains_angle(theta) {
                hits += 1;
            }
        }
        let grid_length = TAU * hits as f64 / n as f64;
        assert!((grid_length - s.total_length()).abs() < 2.0 * TAU / n as f64 * 4.0);
    }

    #[test]
    fn normalize_rejects_empty_and_degenerate() {
        assert!(matches!(
            BoundaryArcSet::normalize(&[]),
            Err(Error::EmptyBoundarySet)
        ));
        assert!(matches!(
            BoundaryArcSet::normalize(&[[1.0, 1.0]]),
            Err(Error::EmptyArc { .. })
        ));
    }

    #[test]
    fn normalize_detects_full_circle_from_pieces() {
        let s = BoundaryArcSet::normalize(&[[0.0, 4.0], [3.5, 7.0]]).unwrap();
        assert!(s.is_full_circle());
        assert_relative_eq!(s.total_length(), TAU);
        assert!(s.contains_angle(1.0));
        assert!(s.contains_angle(-3.0));
    }

    #[test]
    fn regular_interior_drops_endpoints_keeps_length() {
        let s = BoundaryArcSet::normalize(&[[-PI / 2.0, PI / 2.0]]).unwrap();
        let open = s.regular_interior();
        assert!(open.is_open());
        assert_relative_eq!(open.total_length(), s.total_length());
        assert!(s.contains_angle(PI / 2.0));
        assert!(!open.contains_angle(PI / 2.0));
        assert!(open.contains_angle(0.0));

        let full = BoundaryArcSet::normalize(&[[0.0, TAU]]).unwrap();
        let full_open = full.regular_interior();
        assert!(full_open.is_full_circle());
        assert!(full_open.contains_angle(PI));
    }

    #[test]
    fn gap_intervals_complement_the_arcs() {
        let s = BoundaryArcSet::normalize(&[[-0.05, -0.02], [0.02, 0.05]]).unwrap();
        let gaps = s.gap_intervals();
        assert_eq!(gaps.len(), 2);
        let gap_total: f64 = gaps.iter().map(|g| g[1] - g[0]).sum();
        assert_relative_eq!(gap_total + s.total_length(), TAU, max_relative = 1e-12);
    }

    #[test]
    fn stolz_examples() {
        let one = c64(1.0, 0.0);
        assert!(stolz_contains(one, FRAC_PI_4, c64(0.9, 0.0)).unwrap());
        // arg((1 − (0.9+0.2i))) = arg(0.1 − 0.2i) ≈ −1.107, outside π/4.
        assert!(!stolz_contains(one, FRAC_PI_4, c64(0.9, 0.2)).unwrap());
        assert!(stolz_contains(c64(0.0, 1.0), PI / 3.0, c64(0.0, 0.8)).unwrap());
        assert!(matches!(
            stolz_contains(one, FRAC_PI_4, c64(1.0, 0.5)),
            Err(Error::NotInterior { .. })
        ));
        assert!(matches!(
            StolzRegion::new(c64(0.5, 0.0), FRAC_PI_4),
            Err(Error::BadStolzVertex { .. })
        ));
    }

    #[test]
    fn cone_half_width_matches_side_ray() {
        // The side ray z(t) = 1 − t·e^{−iπ/4} must satisfy
        // arg z = s₁(|z|) along its whole length: the ray is exactly the
        // upper cone boundary.
        for &t in &[0.05, 0.1, 0.2, 0.28] {
            let z = c64(1.0, 0.0) - C64::from_polar(t, -FRAC_PI_4);
            assert_relative_eq!(z.arg(), cone_half_width(z.norm()), max_relative = 1e-12);
        }
    }

    #[test]
    fn ajd_membership_examples() {
        let f = BoundaryArcSet::normalize(&[[-0.05, 0.05]]).unwrap();
        let omega = AngularJordanDomain::new(&f, 0.2).unwrap();
        assert!(omega.contains(C64::from_polar(0.95, 0.01)));
        assert!(!omega.contains(c64(0.5, 0.0)));
        // Boundary caps: unit circle and inner circle are excluded.
        assert!(!omega.contains(C64::from_polar(1.0, 0.0)));
        assert!(!omega.contains(C64::from_polar(0.8, 0.0)));
    }

    #[test]
    fn ajd_rejects_bad_height() {
        let wide = BoundaryArcSet::normalize(&[[-1.0, 1.0]]).unwrap();
        assert!(matches!(
            AngularJordanDomain::new(&wide, 0.2),
            Err(Error::HeightConstraint { .. })
        ));
        let f = BoundaryArcSet::normalize(&[[-0.05, 0.05]]).unwrap();
        assert!(matches!(
            AngularJordanDomain::new(&f, 0.5),
            Err(Error::HeightConstraint { .. })
        ));
    }

    #[test]
    fn ajd_two_arcs_gap_covered_and_connected() {
        // Gap (−0.02, 0.02) bridged by the triangle notch; Ω connected.
        // Oracle: flood fill on a 400×400 grid restricted to Ω.
        let f = BoundaryArcSet::normalize(&[[-0.05, -0.02], [0.02, 0.05]]).unwrap();
        let omega = AngularJordanDomain::new(&f, 0.25).unwrap();

        // Over the gap center the notch apex sits at s₁(ρ*) = 0.02, i.e.
        // ρ* ≈ 0.9812: just below the circle lies in the notch (outside),
        // deeper lies in the bridged interior.
        assert!(!omega.contains(C64::from_polar(0.995, 0.0)));
        assert!(omega.contains(C64::from_polar(0.95, 0.0)));

        let n = 400usize;
        let mut cells = vec![false; n * n];
        let to_z = |i: usize, j: usize| {
            c64(
                -1.0 + 2.0 * (i as f64 + 0.5) / n as f64,
                -1.0 + 2.0 * (j as f64 + 0.5) / n as f64,
            )
        };
        for i in 0..n {
            for j in 0..n {
                cells[i * n + j] = omega.contains(to_z(i, j));
            }
        }
        let total_in: usize = cells.iter().filter(|&&b| b).count();
        assert!(total_in > 0);
        // BFS from any in-cell.
        let start = cells.iter().position(|&b| b).unwrap();
        let mut seen = vec![false; n * n];
        let mut queue = std::collections::VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        let mut reached = 0usize;
        while let Some(idx) = queue.pop_front() {
            reached += 1;
            let (i, j) = (idx / n, idx % n);
            let mut push = |ni: usize, nj: usize| {
                let nidx = ni * n + nj;
                if cells[nidx] && !seen[nidx] {
                    seen[nidx] = true;
                    queue.push_back(nidx);
                }
            };
            if i > 0 {
                push(i - 1, j);
            }
            if i + 1 < n {
                push(i + 1, j);
            }
            if j > 0 {
                push(i, j - 1);
            }
            if j + 1 < n {
                push(i, j + 1);
            }
        }
        assert_eq!(
            reached, total_in,
            "grid restriction of the domain must be a single connected component"
        );
    }

    #[test]
    fn contour_vertices_within_annulus_bounds() {
        let f = BoundaryArcSet::normalize(&[[-0.05, 0.05]]).unwrap();
        let omega = AngularJordanDomain::new(&f, 0.2).unwrap();
        let eps = 0.01;
        let contour = omega.contour(eps).unwrap();
        assert!(contour.is_closed(1e-9));
        let lo = (1.0 + eps) * (1.0 - 0.2) - 1e-12;
        let hi = 1.0 - eps + 1e-12;
        for v in contour.vertices() {
            let r = v.norm();
            assert!(
                (lo..=hi).contains(&r),
                "vertex radius {r} outside [{lo}, {hi}]"
            );
        }
    }

    #[test]
    fn contour_converges_to_boundary_as_eps_vanishes() {
        let f = BoundaryArcSet::normalize(&[[-0.05, -0.02], [0.02, 0.05]]).unwrap();
        let omega = AngularJordanDomain::new(&f, 0.25).unwrap();
        let boundary = omega.boundary();
        assert!(boundary.is_closed(1e-9));

        let mut prev = f64::INFINITY;
        for &eps in &[0.02, 0.01, 0.005, 0.0025] {
            let contour = omega.contour(eps).unwrap();
            // One-sided Hausdorff proxy: every contour vertex close to the
            // boundary polyline (sampled densely).
            let mut boundary_samples = Vec::new();
            for p in boundary.pieces() {
                for k in 0..200 {
                    boundary_samples.push(p.point(k as f64 / 199.0));
                }
            }
            let worst = contour
                .vertices()
                .iter()
                .map(|v| {
                    boundary_samples
                        .iter()
                        .map(|b| (v - b).norm())
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0f64, f64::max);
            assert!(worst < 4.0 * eps, "eps {eps}: vertex deviation {worst}");
            assert!(worst < prev + 1e-12);
            prev = worst;
        }
    }

    #[test]
    fn contour_rejects_eps_out_of_range() {
        let f = BoundaryArcSet::normalize(&[[-0.05, 0.05]]).unwrap();
        let omega = AngularJordanDomain::new(&f, 0.2).unwrap();
        assert!(matches!(
            omega.contour(0.06),
            Err(Error::EpsOutOfRange { .. })
        ));
        assert!(matches!(
            omega.contour(0.0),
            Err(Error::EpsOutOfRange { .. })
        ));
    }

    #[test]
    fn projection_inequality_on_random_subarcs() {
        let f = BoundaryArcSet::normalize(&[[-0.05, -0.02], [0.02, 0.05]]).unwrap();
        let omega = AngularJordanDomain::new(&f, 0.25).unwrap();
        let contour = omega.contour(0.01).unwrap();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let pieces = contour.pieces();
        for _ in 0..1000 {
            let i = rng.random_range(0..pieces.len());
            let (mut t0, mut t1) = (rng.random::<f64>(), rng.random::<f64>());
            if t0 > t1 {
                std::mem::swap(&mut t0, &mut t1);
            }
            if t1 - t0 < 1e-6 {
                continue;
            }
            let len = pieces[i].sub_length(t0, t1);
            let proj = pieces[i].projected_length(t0, t1);
            assert!(
                len <= 10.0 * proj + 1e-15,
                "piece {i}: length {len} vs projected {proj}"
            );
        }
    }

    #[test]
    fn nested_contour_regions() {
        // ε > ε′ ⇒ Ω_ε ⊂ Ω_{ε′}: sample points of Ω_ε, check membership in
        // Ω_{ε′}.
        let f = BoundaryArcSet::normalize(&[[-0.05, 0.05]]).unwrap();
        let omega = AngularJordanDomain::new(&f, 0.2).unwrap();
        let (eps_big, eps_small) = (0.04, 0.015);
        let mut inside = 0usize;
        for i in 0..200 {
            for j in 0..200 {
                let z = c64(
                    0.78 + 0.22 * (i as f64 + 0.5) / 200.0,
                    -0.12 + 0.24 * (j as f64 + 0.5) / 200.0,
                );
                if omega.contains_eps(z, eps_big) {
                    inside += 1;
                    assert!(omega.contains_eps(z, eps_small));
                    assert!(omega.contains(z));
                }
            }
        }
        assert!(inside > 100, "sampling must actually hit the shrunken domain");
    }

    #[test]
    fn stolz_cones_eventually_inside_at_interior_base_points() {
        // At an interior point of an arc of F, every Stolz cone with
        // half-angle < π/2 is eventually inside Ω; at depth 1e−3 a π/3-cone
        // already is.
        let f = BoundaryArcSet::normalize(&[[-0.05, 0.05]]).unwrap();
        let omega = AngularJordanDomain::new(&f, 0.2).unwrap();
        let vertex = C64::from_polar(1.0, 0.0);
        for k in 0..=20 {
            let beta = -PI / 3.0 + 2.0 * PI / 3.0 * k as f64 / 20.0;
            let z = vertex * (1.0 - C64::from_polar(1e-3, beta));
            assert!(omega.contains(z), "depth 1e-3, ray angle {beta}");
        }
    }

    #[test]
    fn serde_round_trip() {
        let s = BoundaryArcSet::normalize(&[[3.0, PI], [-PI, -3.0]]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: BoundaryArcSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back.arcs().len(), s.arcs().len());
        assert_relative_eq!(back.total_length(), s.total_length(), max_relative = 1e-12);
    }

    /// Random disjoint arc-set generator: up to 4 arcs in non-overlapping
    /// slots around the circle.
    fn arb_arc_set() -> impl Strategy<Value = BoundaryArcSet> {
        (1usize..=4, proptest::collection::vec(0.05f64..0.95, 8))
            .prop_map(|(k, u)| {
                // Partition the circle into k slots, put one arc inside each.
                let mut intervals = Vec::new();
                for i in 0..k {
                    let slot_lo = -PI + TAU * i as f64 / k as f64;
                    let slot_len = TAU / k as f64;
                    let a = slot_lo + slot_len * 0.05 + slot_len * 0.4 * u[2 * i];
                    let b = a + slot_len * 0.04 + slot_len * 0.45 * u[2 * i + 1] * 0.9;
                    intervals.push([a, b]);
                }
                BoundaryArcSet::normalize(&intervals).unwrap()
            })
    }

    proptest! {
        #[test]
        fn prop_normalize_is_idempotent(s in arb_arc_set()) {
            let intervals: Vec<[f64;2]> = s.arcs().iter().map(|a| [a.lo(), a.hi()]).collect();
            let again = BoundaryArcSet::normalize(&intervals).unwrap();
            prop_assert_eq!(again.arcs().len(), s.arcs().len());
            for (x, y) in again.arcs().iter().zip(s.arcs()) {
                prop_assert!((x.lo() - y.lo()).abs() < 1e-14);
                prop_assert!((x.len() - y.len()).abs() < 1e-14);
            }
        }

        #[test]
        fn prop_length_additive_and_bounded(s in arb_arc_set()) {
            let total = s.total_length();
            prop_assert!(total > 0.0 && total <= TAU + 1e-12);
            let gaps: f64 = s.gap_intervals().iter().map(|g| g[1] - g[0]).sum();
            prop_assert!((total + gaps - TAU).abs() < 1e-10);
        }

        #[test]
        fn prop_rotation_preserves_length(s in arb_arc_set(), phi in -10.0f64..10.0) {
            let r = s.rotated(phi);
            prop_assert!((r.total_length() - s.total_length()).abs() < 1e-12);
        }

        #[test]
        fn prop_stolz_reflection_symmetry(
            theta in -3.0f64..3.0,
            alpha in 0.1f64..1.4,
            r in 0.0f64..0.95,
            beta in -3.0f64..3.0,
        ) {
            // Reflection across the radius through ζ maps the region to itself.
            let vertex = C64::from_polar(1.0, theta);
            let z = vertex * (1.0 - C64::from_polar(r, beta));
            let z_reflected = vertex * (1.0 - C64::from_polar(r, -beta));
            if z.norm() < 1.0 && z_reflected.norm() < 1.0 {
                let region = StolzRegion::new(vertex, alpha).unwrap();
                prop_assert_eq!(region.contains(z).unwrap(), region.contains(z_reflected).unwrap());
            }
        }

        #[test]
        fn prop_ajd_monotone_in_base(
            half_width in 0.005f64..0.02,
            extra in 0.001f64..0.01,
            rho in 0.86f64..0.999,
            phi in -0.06f64..0.06,
        ) {
            let small = BoundaryArcSet::normalize(&[[-half_width, half_width]]).unwrap();
            let big = BoundaryArcSet::normalize(&[[-half_width - extra, half_width + extra]]).unwrap();
            let h = 0.15;
            let om_small = AngularJordanDomain::new(&small, h).unwrap();
            let om_big = AngularJordanDomain::new(&big, h).unwrap();
            let z = C64::from_polar(rho, phi);
            if om_small.contains(z) {
                prop_assert!(om_big.contains(z));
            }
        }
    }
}
