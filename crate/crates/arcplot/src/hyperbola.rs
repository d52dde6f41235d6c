//! Error-corrected hyperbolic arc plotting.
//!
//! Mirrors the ellipse plotter with hyperbolic machinery: points
//! satisfy
//!
//! ```text
//! x(t) = x_P·cosh t + x_Q·sinh t
//! y(t) = y_P·cosh t + y_Q·sinh t
//! ```
//!
//! where P, Q are conjugate diameter end points of the hyperbola and
//! its conjugate hyperbola, t is the hyperbolic angle, and the inner
//! loop is the hyperbolic shift-add generator seeded with
//! [`hyper_initial_value`]. Start rotation and the appended end point
//! use cosh/sinh where the ellipse uses cos/sin; a negative sweep
//! extends toward Q̃ = −Q exactly as in the elliptic case.
//!
//! Point spacing is the caller's problem: k is always supplied
//! explicitly, since the auxiliary-circle flatness argument has no
//! hyperbolic counterpart. Accuracy degrades with sweep length —
//! truncation noise is amplified by the growing e^t mode — so the
//! drift stays within the elliptic n·2⁻¹⁵ budget only for sweeps up
//! to about 1; see the module tests for the measured law.

use crate::ellipse::{ArcSpec, PointSink, Polyline};
use crate::fixed::{Fixed, PointFx};
use crate::minsky::{hyper_initial_value, hyper_step_forward, Epsilon, GenState};
use std::fmt;

/// Largest accepted |sweep| in hyperbolic angle units.
pub const MAX_SWEEP: f64 = 8.0;

/// A hyperbola (and its conjugate) given by center and conjugate
/// diameter end points, center-relative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjugateHyperbola {
    pub center: PointFx,
    pub p: PointFx,
    pub q: PointFx,
}

impl ConjugateHyperbola {
    pub const fn new(center: PointFx, p: PointFx, q: PointFx) -> ConjugateHyperbola {
        ConjugateHyperbola { center, p, q }
    }

    pub fn from_absolute(center: PointFx, p: PointFx, q: PointFx) -> ConjugateHyperbola {
        ConjugateHyperbola {
            center,
            p: p - center,
            q: q - center,
        }
    }

    pub fn cross(&self) -> i64 {
        self.p.cross(self.q)
    }

    pub fn is_degenerate(&self) -> bool {
        self.cross() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HyperbolaError {
    Degenerate,
    /// |sweep| beyond [`MAX_SWEEP`] or non-finite angles.
    SweepOutOfRange(f64),
    /// cosh growth over the requested range would leave the 16.16
    /// coordinate range; reports the estimated worst coordinate.
    CoordinateOverflow { reach_px: f64 },
}

impl fmt::Display for HyperbolaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperbolaError::Degenerate => {
                write!(f, "conjugate diameter end points are collinear with the center")
            }
            HyperbolaError::SweepOutOfRange(s) => {
                write!(f, "hyperbolic sweep {s} outside ±{MAX_SWEEP}")
            }
            HyperbolaError::CoordinateOverflow { reach_px } => {
                write!(f, "arc would reach ~{reach_px:.0} px, beyond the 16.16 range")
            }
        }
    }
}

impl std::error::Error for HyperbolaError {}

/// Plots a hyperbolic arc from parameter `start` over `sweep`
/// (hyperbolic angle units), as an open polyline.
///
/// A zero sweep yields the single start point. Otherwise the corrected
/// core emits `sweep >> (16 − k)` fixed-point steps and the exact
/// cosh/sinh end point is appended, mirroring the elliptic arc
/// plotter.
pub fn plot_hyperbolic_arc(
    h: &ConjugateHyperbola,
    arc: ArcSpec,
    eps: Epsilon,
) -> Result<Polyline, HyperbolaError> {
    if h.is_degenerate() {
        return Err(HyperbolaError::Degenerate);
    }
    if !arc.sweep.is_finite() || !arc.start.is_finite() || arc.sweep.abs() > MAX_SWEEP {
        return Err(HyperbolaError::SweepOutOfRange(arc.sweep));
    }
    check_reach(h, &arc)?;

    let (mut p, mut q) = (h.p, h.q);
    if arc.start != 0.0 {
        let (s, c) = (arc.start.sinh(), arc.start.cosh());
        let trunc = |v: f64| Fixed::from_raw(v as i32);
        let p2 = PointFx::new(
            trunc(p.x.raw() as f64 * c + q.x.raw() as f64 * s),
            trunc(p.y.raw() as f64 * c + q.y.raw() as f64 * s),
        );
        let q2 = PointFx::new(
            trunc(q.x.raw() as f64 * c + p.x.raw() as f64 * s),
            trunc(q.y.raw() as f64 * c + p.y.raw() as f64 * s),
        );
        p = p2;
        q = q2;
    }
    let mut sweep = arc.sweep;
    if sweep < 0.0 {
        // x(−t) = P·cosh t − Q·sinh t: same arc toward Q̃ = −Q
        q = -q;
        sweep = -sweep;
    }
    if sweep == 0.0 {
        return Ok(Polyline {
            points: vec![p + h.center],
            closed: false,
        });
    }

    let swangle = Fixed::from_raw((65536.0 * sweep) as i32);
    let mut points = Vec::new();
    hyper_core(h.center, p, q, swangle, eps, &mut points);

    let (sh, ch) = (sweep.sinh(), sweep.cosh());
    let end = PointFx::new(
        Fixed::from_raw((p.x.raw() as f64 * ch + q.x.raw() as f64 * sh) as i32),
        Fixed::from_raw((p.y.raw() as f64 * ch + q.y.raw() as f64 * sh) as i32),
    );
    points.push(end + h.center);
    Ok(Polyline {
        points,
        closed: false,
    })
}

/// The hyperbolic core: start point, then `sweep >> (16 − k)` corrected
/// steps of the twin hyperbola generators. Center-relative P, Q;
/// nonnegative sweep.
pub fn hyper_core<S: PointSink>(
    center: PointFx,
    p: PointFx,
    q: PointFx,
    sweep: Fixed,
    eps: Epsilon,
    sink: &mut S,
) -> usize {
    debug_assert!(sweep >= Fixed::ZERO);
    let k = eps.k();
    let count = (sweep >> (16 - k)).raw();

    sink.plot(p + center);
    let mut gen_x = GenState::new(hyper_initial_value(q.x, p.x, eps), p.x);
    let mut gen_y = GenState::new(hyper_initial_value(q.y, p.y, eps), p.y);
    for _ in 0..count {
        gen_x = hyper_step_forward(gen_x, eps);
        gen_y = hyper_step_forward(gen_y, eps);
        sink.plot(PointFx::new(gen_x.v + center.x, gen_y.v + center.y));
    }
    count as usize + 1
}

/// Conservative bound on the farthest coordinate the arc can reach:
/// components grow at most like e^(|start|+|sweep|), and the corrected
/// initial value inflates u by ≤ 1 + ε²/8 + ε⁶/1024 < 1.13.
fn check_reach(h: &ConjugateHyperbola, arc: &ArcSpec) -> Result<(), HyperbolaError> {
    let growth = (arc.start.abs() + arc.sweep.abs()).exp();
    let spread = |a: Fixed, b: Fixed| a.to_float().abs() + b.to_float().abs();
    let reach = spread(h.p.x, h.q.x).max(spread(h.p.y, h.q.y)) * growth * 1.13
        + h.center.x.to_float().abs().max(h.center.y.to_float().abs());
    if reach >= 32768.0 {
        return Err(HyperbolaError::CoordinateOverflow { reach_px: reach });
    }
    Ok(())
}
