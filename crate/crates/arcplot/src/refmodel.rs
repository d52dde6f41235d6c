//! Floating-point reference model used by tests and verification.
//!
//! Evaluates the parametric curve equations directly with f64 trig and
//! measures how far a plotted polyline strays from the true curve. The
//! shift-add plotters never call into this module.

use crate::ellipse::{ArcSpec, Polyline};
use crate::fixed::PointFx;
use std::fmt;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RealPoint {
    pub x: f64,
    pub y: f64,
}

impl RealPoint {
    pub const fn new(x: f64, y: f64) -> RealPoint {
        RealPoint { x, y }
    }

    pub fn hypot(self) -> f64 {
        self.x.hypot(self.y)
    }
}

impl From<PointFx> for RealPoint {
    fn from(p: PointFx) -> RealPoint {
        RealPoint::new(p.x.to_float(), p.y.to_float())
    }
}

/// x(θ) = x_P·cos θ + x_Q·sin θ, y(θ) = y_P·cos θ + y_Q·sin θ.
pub fn ellipse_point(p: RealPoint, q: RealPoint, theta: f64) -> RealPoint {
    let (s, c) = theta.sin_cos();
    RealPoint::new(p.x * c + q.x * s, p.y * c + q.y * s)
}

/// x(t) = x_P·cosh t + x_Q·sinh t, y(t) = y_P·cosh t + y_Q·sinh t.
pub fn hyperbola_point(p: RealPoint, q: RealPoint, t: f64) -> RealPoint {
    let (ch, sh) = (t.cosh(), t.sinh());
    RealPoint::new(p.x * ch + q.x * sh, p.y * ch + q.y * sh)
}

/// Exact chord-to-arc error (sagitta) on a circle of radius `r` for a
/// chord of length ε·r: δ = r·(1 − √(1 − ε²/4)).
pub fn chord_to_arc_exact(r: f64, eps: f64) -> f64 {
    r * (1.0 - (1.0 - 0.25 * eps * eps).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub enum RefModelError {
    /// Fewer than two points; no chord to measure.
    TooFewPoints,
    /// The polyline does not lie on the curve described by the inputs.
    MismatchedInputs,
}

impl fmt::Display for RefModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefModelError::TooFewPoints => write!(f, "polyline has fewer than two points"),
            RefModelError::MismatchedInputs => {
                write!(f, "polyline points do not lie on the described curve")
            }
        }
    }
}

impl std::error::Error for RefModelError {}

/// Worst distance from any chord of the polyline to the true curve
/// segment it stands in for.
///
/// Each plotted point is mapped back to its parameter angle by
/// inverting x = P·cos θ + Q·sin θ through the conjugate basis, the
/// angles are unwrapped along the sweep direction, and the curve is
/// densely sampled (64 interior samples per chord) between adjacent
/// parameters; the maximum point-to-chord distance is returned. For a
/// closed polyline the wrap-around edge is included.
///
/// `p` and `q` are center-relative; the polyline is absolute.
pub fn max_chord_deviation(
    poly: &Polyline,
    center: RealPoint,
    p: RealPoint,
    q: RealPoint,
    arc: &ArcSpec,
) -> Result<f64, RefModelError> {
    if poly.points.len() < 2 {
        return Err(RefModelError::TooFewPoints);
    }

    let det = p.x * q.y - q.x * p.y;
    if det == 0.0 {
        // Degenerate description: the "curve" is the straight segment
        // the chords themselves lie on, so the gap is zero as long as
        // the points are collinear with it.
        let (dx, dy) = if p.hypot() >= q.hypot() { (p.x, p.y) } else { (q.x, q.y) };
        let len = dx.hypot(dy).max(1e-12);
        for pt in &poly.points {
            let (rx, ry) = (pt.x.to_float() - center.x, pt.y.to_float() - center.y);
            if (rx * dy - ry * dx).abs() / len > 1e-3 {
                return Err(RefModelError::MismatchedInputs);
            }
        }
        return Ok(0.0);
    }

    // θ for each plotted point via (cos θ, sin θ) = M⁻¹·(X − C)
    let mut thetas = Vec::with_capacity(poly.points.len());
    for pt in &poly.points {
        let (rx, ry) = (pt.x.to_float() - center.x, pt.y.to_float() - center.y);
        let cos_t = (rx * q.y - ry * q.x) / det;
        let sin_t = (ry * p.x - rx * p.y) / det;
        let norm = cos_t * cos_t + sin_t * sin_t;
        if (norm - 1.0).abs() > 0.05 {
            return Err(RefModelError::MismatchedInputs);
        }
        thetas.push(sin_t.atan2(cos_t));
    }

    // Unwrap along the sweep direction; adjacent plotted points are
    // always less than π apart in parameter.
    let dir = if arc.sweep < 0.0 { -1.0 } else { 1.0 };
    let mut unwrapped = Vec::with_capacity(thetas.len() + 1);
    unwrapped.push(thetas[0]);
    for &t in &thetas[1..] {
        let prev = *unwrapped.last().unwrap();
        let mut dt = t - prev;
        while dt * dir < -1e-9 {
            dt += dir * std::f64::consts::TAU;
        }
        while dt.abs() > std::f64::consts::PI {
            dt -= dir * std::f64::consts::TAU;
        }
        unwrapped.push(prev + dt);
    }
    if poly.closed {
        unwrapped.push(unwrapped[0] + dir * std::f64::consts::TAU);
    }

    let segment_distance = |a: RealPoint, b: RealPoint, x: RealPoint| -> f64 {
        let (ex, ey) = (b.x - a.x, b.y - a.y);
        let len2 = ex * ex + ey * ey;
        if len2 == 0.0 {
            return (x.x - a.x).hypot(x.y - a.y);
        }
        let t = (((x.x - a.x) * ex + (x.y - a.y) * ey) / len2).clamp(0.0, 1.0);
        (x.x - (a.x + t * ex)).hypot(x.y - (a.y + t * ey))
    };

    const SAMPLES: usize = 64;
    let mut worst = 0.0f64;
    let n_edges = unwrapped.len() - 1;
    for i in 0..n_edges {
        let a: RealPoint = poly.points[i].into();
        let b: RealPoint = poly.points[(i + 1) % poly.points.len()].into();
        let (t0, t1) = (unwrapped[i], unwrapped[i + 1]);
        for j in 1..=SAMPLES {
            let t = t0 + (t1 - t0) * j as f64 / (SAMPLES + 1) as f64;
            let on_curve = ellipse_point(p, q, t);
            let abs = RealPoint::new(on_curve.x + center.x, on_curve.y + center.y);
            worst = worst.max(segment_distance(a, b, abs));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::implicit_from_conjugate;
    use crate::ellipse::{plot_ellipse, ConjugateEllipse};
    use crate::fixed::PointFx;
    use crate::flatness::{angular_inc, FlatnessConfig};
    use crate::minsky::Epsilon;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn parametric_evaluation_hits_the_anchors() {
        let p = RealPoint::new(3.0, -1.0);
        let q = RealPoint::new(0.5, 2.0);
        assert_eq!(ellipse_point(p, q, 0.0), p);
        let at_q = ellipse_point(p, q, FRAC_PI_2);
        assert!((at_q.x - q.x).abs() < 1e-15 && (at_q.y - q.y).abs() < 1e-15);

        let mid = ellipse_point(RealPoint::new(1.0, 0.0), RealPoint::new(0.0, 1.0), FRAC_PI_2 / 2.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((mid.x - r).abs() < 1e-15 && (mid.y - r).abs() < 1e-15);
    }

    #[test]
    fn sagitta_values() {
        assert!(chord_to_arc_exact(1.0, 1e-8) < 1e-15);
        let d = chord_to_arc_exact(1.0, 1.0);
        assert!((d - (1.0 - 3.0f64.sqrt() / 2.0)).abs() < 1e-15);
        assert!((d - 0.13397).abs() < 1e-5);
    }

    #[test]
    fn truncated_series_underestimates_by_less_than_sixth_order() {
        // err2 + err4 = r(ε²/8 + ε⁴/128) vs the exact sagitta; the gap
        // is below ε⁶/512·r for ε ≤ 1/2
        for k in 1..=8u32 {
            let e = 1.0 / (1u64 << k) as f64;
            let series = e * e / 8.0 + e.powi(4) / 128.0;
            let exact = chord_to_arc_exact(1.0, e);
            assert!(exact >= series);
            assert!(exact - series < e.powi(6) / 512.0, "k={k}");
        }
    }

    #[test]
    fn conjugate_pairs_at_any_phase_describe_the_same_ellipse() {
        let p = RealPoint::new(400.0, 100.0);
        let q = RealPoint::new(-80.0, 300.0);
        let base = implicit_from_conjugate(p, q).unwrap();
        for i in 0..32 {
            let th = i as f64 * 0.2;
            let p2 = ellipse_point(p, q, th);
            let q2 = ellipse_point(p, q, th + FRAC_PI_2);
            let other = implicit_from_conjugate(p2, q2).unwrap();
            let scale = base.a.abs().max(base.c.abs()).max(base.f.abs());
            for (x, y) in [
                (base.a, other.a),
                (base.b, other.b),
                (base.c, other.c),
                (base.f, other.f),
            ] {
                assert!((x - y).abs() / scale < 1e-9);
            }
        }
    }

    #[test]
    fn straight_line_degenerate_polyline_has_zero_deviation() {
        let poly = Polyline {
            points: vec![
                PointFx::from_px(0.0, 0.0).unwrap(),
                PointFx::from_px(10.0, 5.0).unwrap(),
            ],
            closed: false,
        };
        let d = max_chord_deviation(
            &poly,
            RealPoint::new(0.0, 0.0),
            RealPoint::new(10.0, 5.0),
            RealPoint::new(20.0, 10.0),
            &ArcSpec::new(0.0, 1.0),
        )
        .unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn too_few_points_is_an_error() {
        let poly = Polyline {
            points: vec![PointFx::ORIGIN],
            closed: false,
        };
        let r = max_chord_deviation(
            &poly,
            RealPoint::new(0.0, 0.0),
            RealPoint::new(1.0, 0.0),
            RealPoint::new(0.0, 1.0),
            &ArcSpec::new(0.0, 1.0),
        );
        assert_eq!(r, Err(RefModelError::TooFewPoints));
    }

    #[test]
    fn mismatched_curve_is_detected() {
        let e = ConjugateEllipse::new(
            PointFx::ORIGIN,
            PointFx::from_px(100.0, 0.0).unwrap(),
            PointFx::from_px(0.0, 60.0).unwrap(),
        );
        let poly = plot_ellipse(&e, Epsilon::new(4).unwrap()).unwrap();
        let r = max_chord_deviation(
            &poly,
            RealPoint::new(0.0, 0.0),
            RealPoint::new(500.0, 0.0),
            RealPoint::new(0.0, 10.0),
            &ArcSpec::new(0.0, std::f64::consts::TAU),
        );
        assert_eq!(r, Err(RefModelError::MismatchedInputs));
    }

    #[test]
    fn flatness_request_is_met_on_a_circle() {
        let r = 1000.0;
        let p = PointFx::from_px(r, 0.0).unwrap();
        let q = PointFx::from_px(0.0, r).unwrap();
        let cfg = FlatnessConfig::new(crate::fixed::Fixed::from_float(0.25).unwrap());
        let k = angular_inc(p, q, &cfg);
        let poly = plot_ellipse(&ConjugateEllipse::new(PointFx::ORIGIN, p, q), k).unwrap();
        let dev = max_chord_deviation(
            &poly,
            RealPoint::new(0.0, 0.0),
            RealPoint::new(r, 0.0),
            RealPoint::new(0.0, r),
            &ArcSpec::new(0.0, std::f64::consts::TAU),
        )
        .unwrap();
        assert!(dev <= 0.275, "deviation {dev} px at k={}", k.k());
    }

    #[test]
    fn deviation_shrinks_as_k_grows() {
        let e = ConjugateEllipse::new(
            PointFx::ORIGIN,
            PointFx::from_px(900.0, 200.0).unwrap(),
            PointFx::from_px(-100.0, 500.0).unwrap(),
        );
        let mut prev = f64::INFINITY;
        for k in 1..=6 {
            let poly = plot_ellipse(&e, Epsilon::new(k).unwrap()).unwrap();
            let dev = max_chord_deviation(
                &poly,
                RealPoint::new(0.0, 0.0),
                e.p.into(),
                e.q.into(),
                &ArcSpec::new(0.0, std::f64::consts::TAU),
            )
            .unwrap();
            assert!(dev < prev, "k={k}: {dev} not below {prev}");
            prev = dev;
        }
    }
}
