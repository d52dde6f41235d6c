//! Conversions between conjugate-diameter and implicit descriptions.
//!
//! The implicit form is Ax² + Bxy + Cy² + Dx + Ey + F = 0; it
//! represents an ellipse when B² − 4AC < 0. This module computes in
//! floating point — it feeds curve setup, not the shift-add inner
//! loops.
//!
//! Scaling all six coefficients leaves the curve unchanged but breaks
//! invariant formulas such as the auxiliary-radius expression, so a
//! *calibration number* δ = −4F/(4AC − B²) pins a canonical scale: an
//! equation is calibrated when δ = 1, and multiplying every
//! coefficient by δ calibrates it. The coefficients produced by
//! [`implicit_from_conjugate`] come out calibrated.

use crate::refmodel::RealPoint;
use serde::{Deserialize, Serialize};
use std::fmt;

const REL_TOL: f64 = 1e-9;

/// Coefficients of Ax² + Bxy + Cy² + Dx + Ey + F = 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ImplicitConic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl ImplicitConic {
    pub const fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> ImplicitConic {
        ImplicitConic { a, b, c, d, e, f }
    }

    /// Ellipse test: B² − 4AC < 0.
    pub fn is_ellipse(&self) -> bool {
        self.b * self.b - 4.0 * self.a * self.c < 0.0
    }

    /// True when the linear terms vanish (relative to the coefficient
    /// scale), i.e. the curve is centered at the origin.
    pub fn is_centered(&self) -> bool {
        let scale = self.quadratic_scale().max(self.f.abs());
        self.d.abs() <= REL_TOL * scale && self.e.abs() <= REL_TOL * scale
    }

    /// Evaluates f(x, y).
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.a * x * x + self.b * x * y + self.c * y * y + self.d * x + self.e * y + self.f
    }

    /// All six coefficients multiplied by `scale`.
    pub fn scaled(&self, scale: f64) -> ImplicitConic {
        ImplicitConic::new(
            self.a * scale,
            self.b * scale,
            self.c * scale,
            self.d * scale,
            self.e * scale,
            self.f * scale,
        )
    }

    fn quadratic_scale(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs())
    }

    fn discriminant(&self) -> f64 {
        4.0 * self.a * self.c - self.b * self.b
    }
}

/// Whether δ ≠ 1 inputs are rescaled on the fly or rejected.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CalibrationMode {
    #[default]
    Auto,
    Strict,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConicError {
    /// 4AC − B² vanishes (or is lost to cancellation): parallel-line
    /// pair or worse; no center, no calibration.
    Degenerate,
    /// B² − 4AC ≥ 0: hyperbola or parabola, not an ellipse.
    NotAnEllipse,
    /// Linear terms present where an origin-centered equation is
    /// required; translate first.
    NotCentered,
    /// Strict mode rejected an uncalibrated equation (δ ≠ 1).
    NotCalibrated { delta: f64 },
    /// A ≤ 0 after calibration: the equation has no real solutions.
    NotReal,
}

impl fmt::Display for ConicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConicError::Degenerate => write!(f, "degenerate conic (4AC - B² vanishes)"),
            ConicError::NotAnEllipse => write!(f, "coefficients do not describe an ellipse"),
            ConicError::NotCentered => write!(f, "equation is not origin-centered"),
            ConicError::NotCalibrated { delta } => {
                write!(f, "equation is not calibrated (delta = {delta})")
            }
            ConicError::NotReal => write!(f, "equation has no real solutions"),
        }
    }
}

impl std::error::Error for ConicError {}

/// Implicit coefficients of the origin-centered ellipse with conjugate
/// diameter end points P and Q:
///
/// A = y_P² + y_Q², B = −2(x_P·y_P + x_Q·y_Q), C = x_P² + x_Q²,
/// D = E = 0, F = −(x_P·y_Q − x_Q·y_P)².
///
/// The result is already calibrated (δ = 1).
pub fn implicit_from_conjugate(p: RealPoint, q: RealPoint) -> Result<ImplicitConic, ConicError> {
    let cross = p.x * q.y - q.x * p.y;
    if cross == 0.0 {
        return Err(ConicError::Degenerate);
    }
    Ok(ImplicitConic::new(
        p.y * p.y + q.y * q.y,
        -2.0 * (p.x * p.y + q.x * q.y),
        p.x * p.x + q.x * q.x,
        0.0,
        0.0,
        -(cross * cross),
    ))
}

/// Moves an ellipse's center to the origin.
///
/// Returns the centered coefficients (D′ = E′ = 0) and the recovered
/// center x0 = (BE − 2CD)/(4AC − B²), y0 = (BD − 2AE)/(4AC − B²).
pub fn translate_to_origin(c: &ImplicitConic) -> Result<(ImplicitConic, RealPoint), ConicError> {
    if !c.is_ellipse() {
        return Err(ConicError::NotAnEllipse);
    }
    let disc = c.discriminant();
    if disc.abs() <= 1e-12 * c.quadratic_scale().powi(2) {
        return Err(ConicError::Degenerate);
    }
    let x0 = (c.b * c.e - 2.0 * c.c * c.d) / disc;
    let y0 = (c.b * c.d - 2.0 * c.a * c.e) / disc;
    let f2 = c.eval(x0, y0);
    Ok((
        ImplicitConic::new(c.a, c.b, c.c, 0.0, 0.0, f2),
        RealPoint::new(x0, y0),
    ))
}

/// Inverse of [`translate_to_origin`]: places an origin-centered
/// equation at `center`.
pub fn translate_from_origin(c: &ImplicitConic, center: RealPoint) -> ImplicitConic {
    let (x0, y0) = (center.x, center.y);
    ImplicitConic::new(
        c.a,
        c.b,
        c.c,
        -(2.0 * c.a * x0 + c.b * y0),
        -(2.0 * c.c * y0 + c.b * x0),
        c.a * x0 * x0 + c.b * x0 * y0 + c.c * y0 * y0 + c.f,
    )
}

/// Calibration number δ = −4F / (4AC − B²) of an origin-centered
/// equation.
pub fn calibration_number(c: &ImplicitConic) -> Result<f64, ConicError> {
    if !c.is_centered() {
        return Err(ConicError::NotCentered);
    }
    let disc = c.discriminant();
    if disc.abs() <= 1e-12 * c.quadratic_scale().powi(2) {
        return Err(ConicError::Degenerate);
    }
    Ok(-4.0 * c.f / disc)
}

/// Scales all six coefficients by the calibration number, making δ = 1.
pub fn calibrate(c: &ImplicitConic) -> Result<ImplicitConic, ConicError> {
    Ok(c.scaled(calibration_number(c)?))
}

/// A conjugate pair recovered from an implicit equation, along with
/// the calibration number that was applied to get it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConjugateRecovery {
    pub p: RealPoint,
    pub q: RealPoint,
    /// δ of the input; 1.0 means the input was already calibrated.
    pub delta: f64,
}

/// Recovers a conjugate diameter pair from an origin-centered,
/// calibrated ellipse equation.
///
/// Infinitely many conjugate pairs describe the same ellipse; this
/// picks the one with P on the +x axis: y_P = 0, x_P = +√(−F/A),
/// y_Q = +√A, x_Q = −B/(2·y_Q). In [`CalibrationMode::Auto`] an
/// uncalibrated input is rescaled first (δ is reported either way);
/// strict mode rejects it.
pub fn conjugate_from_implicit(
    c: &ImplicitConic,
    mode: CalibrationMode,
) -> Result<ConjugateRecovery, ConicError> {
    if !c.is_ellipse() {
        return Err(ConicError::NotAnEllipse);
    }
    let delta = calibration_number(c)?;
    let cal = if (delta - 1.0).abs() <= REL_TOL {
        *c
    } else if mode == CalibrationMode::Strict {
        return Err(ConicError::NotCalibrated { delta });
    } else {
        c.scaled(delta)
    };
    if cal.a <= 0.0 || cal.f >= 0.0 {
        return Err(ConicError::NotReal);
    }
    let x_p = (-cal.f / cal.a).sqrt();
    let y_q = cal.a.sqrt();
    let x_q = -cal.b / (2.0 * y_q);
    Ok(ConjugateRecovery {
        p: RealPoint::new(x_p, 0.0),
        q: RealPoint::new(x_q, y_q),
        delta,
    })
}
