//! Error-corrected ellipse and elliptic-arc plotting.
//!
//! An ellipse is described by its center and the end points P, Q of a
//! pair of conjugate diameters — the midpoints of two adjacent sides
//! of the enclosing parallelogram. The plotted points satisfy
//!
//! ```text
//! x(θ) = x_P·cos θ + x_Q·sin θ
//! y(θ) = y_P·cos θ + y_Q·sin θ
//! ```
//!
//! at regular parameter increments, yet the inner loop performs only
//! four additions and four shifts per point (plus two additions to
//! translate by the center): two corrected shift-add circle
//! generators run in tandem, one for x and one for y, seeded with
//! [`initial_value`]-corrected states so the skew of the raw generator
//! cancels exactly.
//!
//! Plotting always starts at P and proceeds toward Q; arcs measure
//! their start and sweep angles on the unit-circle parameter, so the
//! same angles describe the "same" arc under any affine placement.

use crate::fixed::{Fixed, PointFx, MAX_COORD_PX};
use crate::minsky::{circle_step_forward, initial_value, Epsilon, GenState};
use std::f64::consts::TAU;
use std::fmt;

/// An ellipse given by its center and conjugate diameter end points.
/// `p` and `q` are center-relative offsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjugateEllipse {
    pub center: PointFx,
    pub p: PointFx,
    pub q: PointFx,
}

impl ConjugateEllipse {
    /// From center-relative conjugate diameter end points.
    pub const fn new(center: PointFx, p: PointFx, q: PointFx) -> ConjugateEllipse {
        ConjugateEllipse { center, p, q }
    }

    /// From absolute (window-relative) end points, converting to
    /// center-relative offsets.
    pub fn from_absolute(center: PointFx, p: PointFx, q: PointFx) -> ConjugateEllipse {
        ConjugateEllipse {
            center,
            p: p - center,
            q: q - center,
        }
    }

    /// x_P·y_Q − x_Q·y_P on raw values; zero iff degenerate.
    pub fn cross(&self) -> i64 {
        self.p.cross(self.q)
    }

    pub fn is_degenerate(&self) -> bool {
        self.cross() == 0
    }
}

/// Arc selection on the unit-circle parameter: starting angle measured
/// from P (positive toward Q) and a signed sweep, both in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcSpec {
    pub start: f64,
    pub sweep: f64,
}

impl ArcSpec {
    pub const fn new(start: f64, sweep: f64) -> ArcSpec {
        ArcSpec { start, sweep }
    }
}

/// An ordered run of plotted points. A closed polyline's last edge
/// joins back to the first point; the first point is not duplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polyline {
    pub points: Vec<PointFx>,
    pub closed: bool,
}

/// Consumer of plotted points. The default sink is a plain `Vec`.
pub trait PointSink {
    fn plot(&mut self, point: PointFx);
}

impl PointSink for Vec<PointFx> {
    #[inline]
    fn plot(&mut self, point: PointFx) {
        self.push(point);
    }
}

/// Counts points without storing them.
#[derive(Debug, Default)]
pub struct CountingSink(pub usize);

impl PointSink for CountingSink {
    #[inline]
    fn plot(&mut self, _: PointFx) {
        self.0 += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlotError {
    /// P and Q are collinear with the center: cross(P, Q) = 0.
    DegenerateConjugates,
    /// `ellipse_core` requires a nonnegative sweep; direction reversal
    /// is the caller's job (negate Q).
    NegativeSweep,
    /// |sweep| exceeds one full revolution (2π for ellipses).
    SweepOutOfRange(f64),
}

impl fmt::Display for PlotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlotError::DegenerateConjugates => {
                write!(f, "conjugate diameter end points are collinear with the center")
            }
            PlotError::NegativeSweep => write!(f, "sweep angle must be nonnegative"),
            PlotError::SweepOutOfRange(s) => {
                write!(f, "sweep angle {s} exceeds one full revolution")
            }
        }
    }
}

impl std::error::Error for PlotError {}

/// Rotates conjugate diameter end points by `phi` on the unit-circle
/// parameter, producing a new conjugate pair (P′, Q′) of the same
/// ellipse with P′ at parameter angle `phi`:
///
/// ```text
/// P′ = P·cos φ + Q·sin φ
/// Q′ = Q·cos φ − P·sin φ
/// ```
///
/// Computed in floating point on raw values and truncated toward zero.
pub fn conjugate_rotate(p: PointFx, q: PointFx, phi: f64) -> (PointFx, PointFx) {
    let (s, c) = phi.sin_cos();
    let trunc = |v: f64| Fixed::from_raw(v as i32);
    let p2 = PointFx::new(
        trunc(p.x.raw() as f64 * c + q.x.raw() as f64 * s),
        trunc(p.y.raw() as f64 * c + q.y.raw() as f64 * s),
    );
    let q2 = PointFx::new(
        trunc(q.x.raw() as f64 * c - p.x.raw() as f64 * s),
        trunc(q.y.raw() as f64 * c - p.y.raw() as f64 * s),
    );
    (p2, q2)
}

/// Exact arc end point P·cos(sweep) + Q·sin(sweep), center-relative,
/// truncated toward zero like [`conjugate_rotate`].
pub fn arc_endpoint(p: PointFx, q: PointFx, sweep: f64) -> PointFx {
    let (s, c) = sweep.sin_cos();
    PointFx::new(
        Fixed::from_raw((p.x.raw() as f64 * c + q.x.raw() as f64 * s) as i32),
        Fixed::from_raw((p.y.raw() as f64 * c + q.y.raw() as f64 * s) as i32),
    )
}

/// The core plotter. Emits the start point P + center, then exactly
/// `sweep >> (16 − k)` corrected steps, each advancing the twin
/// generators and emitting the translated point.
///
/// `p` and `q` are center-relative. The sweep is a nonnegative 16.16
/// angle in radians. Runs on any inputs, including degenerate ones
/// (which sweep out a line segment); public entry points reject
/// degenerate descriptions before calling this.
///
/// Returns the number of points emitted (steps + 1).
pub fn ellipse_core<S: PointSink>(
    center: PointFx,
    p: PointFx,
    q: PointFx,
    sweep: Fixed,
    eps: Epsilon,
    sink: &mut S,
) -> Result<usize, PlotError> {
    if sweep < Fixed::ZERO {
        return Err(PlotError::NegativeSweep);
    }
    let k = eps.k();
    let count = (sweep >> (16 - k)).raw();

    sink.plot(p + center);
    // Twin generators: u carries the Q coordinate, v the P coordinate;
    // the corrected v traces x_P·cos(nα) + x_Q·sin(nα), which is what
    // gets plotted.
    let mut gen_x = GenState::new(initial_value(q.x, p.x, eps), p.x);
    let mut gen_y = GenState::new(initial_value(q.y, p.y, eps), p.y);
    for _ in 0..count {
        gen_x = circle_step_forward(gen_x, eps);
        gen_y = circle_step_forward(gen_y, eps);
        sink.plot(PointFx::new(gen_x.v + center.x, gen_y.v + center.y));
    }
    Ok(count as usize + 1)
}

/// Plots a full ellipse as a closed polyline, starting at P and
/// sweeping toward Q.
///
/// The final corrected point stops short of P by the sub-increment
/// remainder of 2π; no extra closing point is plotted (the closed
/// polyline's implicit last edge spans the gap, which is shorter than
/// one chord). Use [`plot_elliptic_arc`] with a 2π sweep to get an
/// explicitly plotted end point instead.
pub fn plot_ellipse(e: &ConjugateEllipse, eps: Epsilon) -> Result<Polyline, PlotError> {
    if e.is_degenerate() {
        return Err(PlotError::DegenerateConjugates);
    }
    debug_assert!(coords_in_range(e), "coordinates beyond ±{MAX_COORD_PX} px");
    let mut points = Vec::new();
    ellipse_core(e.center, e.p, e.q, Fixed::TWO_PI, eps, &mut points)?;
    Ok(Polyline {
        points,
        closed: true,
    })
}

/// Plots an elliptic arc as an open polyline.
///
/// A nonzero start angle replaces (P, Q) by the rotated conjugate pair
/// (P′, Q′) so the arc starts at P′. A negative sweep extends toward
/// the opposite end point Q̃ = −Q and is plotted as a positive sweep
/// toward Q̃. The core's final point generally falls short of the arc
/// end by a fraction of an increment, so the exact end point (computed
/// with floating-point cos/sin) is appended.
pub fn plot_elliptic_arc(
    e: &ConjugateEllipse,
    arc: ArcSpec,
    eps: Epsilon,
) -> Result<Polyline, PlotError> {
    if e.is_degenerate() {
        return Err(PlotError::DegenerateConjugates);
    }
    if !arc.sweep.is_finite() || !arc.start.is_finite() || arc.sweep.abs() > TAU {
        return Err(PlotError::SweepOutOfRange(arc.sweep));
    }
    debug_assert!(coords_in_range(e), "coordinates beyond ±{MAX_COORD_PX} px");

    let (mut p, mut q) = (e.p, e.q);
    if arc.start != 0.0 {
        let (p2, q2) = conjugate_rotate(p, q, arc.start);
        p = p2;
        q = q2;
    }
    let mut sweep = arc.sweep;
    if sweep < 0.0 {
        q = -q;
        sweep = -sweep;
    }
    // sweep ∈ [0, 2π] is always representable
    let swangle = Fixed::from_float(sweep).map_err(|_| PlotError::SweepOutOfRange(arc.sweep))?;

    let mut points = Vec::new();
    ellipse_core(e.center, p, q, swangle, eps, &mut points)?;
    points.push(arc_endpoint(p, q, sweep) + e.center);
    Ok(Polyline {
        points,
        closed: false,
    })
}

fn coords_in_range(e: &ConjugateEllipse) -> bool {
    [e.center, e.p, e.q].iter().all(|pt| {
        pt.x.to_float().abs() < MAX_COORD_PX && pt.y.to_float().abs() < MAX_COORD_PX
    })
}
