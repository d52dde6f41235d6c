//! Bit-exact fixed-point plotting of ellipses, elliptic arcs, and
//! hyperbolic arcs.
//!
//! The generators here descend from Minsky's circle algorithm: a
//! rotation step of two adds and two arithmetic shifts, with the skew
//! of the raw iteration cancelled by a corrected initial value, so
//! plotted points land precisely on the target curve (to fixed-point
//! precision) without evaluating sine or cosine in the loop.
//!
//! - [`fixed`] — the 16.16 scalar and point types.
//! - [`minsky`] — the four shift-add step variants (forward/reverse ×
//!   circle/hyperbola), initial-value corrections, and closed-form
//!   oracles.
//! - [`ellipse`] — ellipse and elliptic-arc plotting from a center and
//!   conjugate diameter end points.
//! - [`hyperbola`] — the hyperbolic-arc counterpart.
//! - [`flatness`] — automatic angular-increment selection from a
//!   flatness budget (shift-add vector-length and auxiliary-radius
//!   estimates, plus exact alternatives).
//! - [`conic`] — implicit ⇄ conjugate-diameter conversions with
//!   calibration.
//! - [`refmodel`] — floating-point reference model used by tests.
//! - [`render`] — deterministic SVG/CSV/JSON documents.
//! - [`verify`] — seeded measurement suites behind `arcplot verify`.
//!
//! ```
//! use arcplot::{plot_ellipse, ConjugateEllipse, Epsilon, PointFx};
//!
//! // a 100 px circle about (200, 200), ε = 1/16
//! let e = ConjugateEllipse::from_absolute(
//!     PointFx::from_px(200.0, 200.0)?,
//!     PointFx::from_px(300.0, 200.0)?,
//!     PointFx::from_px(200.0, 300.0)?,
//! );
//! let poly = plot_ellipse(&e, Epsilon::new(4).unwrap())?;
//! assert_eq!(poly.points.len(), 101); // ⌊2π·16⌋ steps + start
//! assert!(poly.closed);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod conic;
pub mod ellipse;
pub mod fixed;
pub mod flatness;
pub mod hyperbola;
pub mod minsky;
pub mod refmodel;
pub mod render;
pub mod verify;

pub use conic::{
    calibrate, calibration_number, conjugate_from_implicit, implicit_from_conjugate,
    translate_from_origin, translate_to_origin, CalibrationMode, ConicError, ConjugateRecovery,
    ImplicitConic,
};
pub use ellipse::{
    arc_endpoint, conjugate_rotate, ellipse_core, plot_ellipse, plot_elliptic_arc, ArcSpec,
    ConjugateEllipse, PlotError, PointSink, Polyline,
};
pub use fixed::{Fixed, OutOfRange, PointFx};
pub use flatness::{
    angular_inc, aux_radius, aux_radius_exact, kmax_for, vlen, FlatnessConfig, FlatnessError,
};
pub use hyperbola::{plot_hyperbolic_arc, ConjugateHyperbola, HyperbolaError};
pub use minsky::{
    circle_step_forward, circle_step_reverse, closed_form_circle, closed_form_circle_corrected,
    closed_form_hyper, closed_form_hyper_corrected, hyper_initial_value, hyper_step_forward,
    hyper_step_reverse, initial_value, mat2_pow, Epsilon, GenState,
};
pub use refmodel::{chord_to_arc_exact, ellipse_point, hyperbola_point, max_chord_deviation, RealPoint};
pub use render::{render, OutputFormat, RenderError, RenderRequest, ShapeRequest, Spacing};
