//! Turns plot requests into SVG, CSV, or JSON documents.
//!
//! Output is fully deterministic: identical requests produce
//! byte-identical documents (no timestamps, fixed field order).
//! Coordinates are printed at 4 decimals from the exact raw/65536
//! value; JSON additionally carries the raw fixed-point words for
//! bit-exact downstream checks.
//!
//! SVG follows screen convention: y grows downward.

use crate::ellipse::{plot_ellipse, plot_elliptic_arc, ArcSpec, ConjugateEllipse, PlotError, Polyline};
use crate::fixed::{Fixed, PointFx, MAX_COORD_PX};
use crate::flatness::{angular_inc, aux_radius, aux_radius_exact, FlatnessConfig, DEFAULT_KMAX};
use crate::hyperbola::{plot_hyperbolic_arc, ConjugateHyperbola, HyperbolaError};
use crate::minsky::Epsilon;
use serde::Serialize;
use std::fmt;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Svg,
    Csv,
    Json,
}

/// Point spacing: either an automatic flatness budget (pixels) or an
/// explicit increment exponent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Spacing {
    Flatness(f64),
    ExplicitK(u32),
}

/// Geometry in absolute (window-relative) pixel coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ShapeRequest {
    Ellipse {
        center: (f64, f64),
        p: (f64, f64),
        q: (f64, f64),
    },
    Arc {
        center: (f64, f64),
        p: (f64, f64),
        q: (f64, f64),
        start: f64,
        sweep: f64,
    },
    Hyperbola {
        center: (f64, f64),
        p: (f64, f64),
        q: (f64, f64),
        start: f64,
        sweep: f64,
    },
}

#[derive(Clone, Debug)]
pub struct RenderRequest {
    pub shape: ShapeRequest,
    pub spacing: Spacing,
    pub format: OutputFormat,
    pub strict_flatness: bool,
    pub kmax: u32,
}

impl RenderRequest {
    pub fn new(shape: ShapeRequest, spacing: Spacing, format: OutputFormat) -> RenderRequest {
        RenderRequest {
            shape,
            spacing,
            format,
            strict_flatness: false,
            kmax: DEFAULT_KMAX,
        }
    }
}

#[derive(Debug)]
pub struct RenderOutput {
    pub document: String,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RenderError {
    /// Coordinate outside ±16384 px or non-finite.
    CoordinateOutOfRange(f64),
    /// Zero-sweep arcs degenerate to a point and are rejected.
    EmptyArc,
    SweepOutOfRange(f64),
    /// k (or kmax) beyond the representable 0..=15.
    KOutOfRange(u32),
    /// Flatness request is not a positive finite pixel count.
    BadFlatness(f64),
    /// Hyperbolas have no flatness theory; pass an explicit k.
    HyperbolaNeedsExplicitK,
    /// cross(P, Q) = 0.
    DegenerateGeometry,
    /// Hyperbolic growth would leave the coordinate range.
    CoordinateOverflow(f64),
}

impl RenderError {
    /// Stable machine-readable code for the diagnostic stream.
    pub fn code(&self) -> &'static str {
        match self {
            RenderError::CoordinateOutOfRange(_) => "coordinate-out-of-range",
            RenderError::EmptyArc => "empty-arc",
            RenderError::SweepOutOfRange(_) => "sweep-out-of-range",
            RenderError::KOutOfRange(_) => "k-out-of-range",
            RenderError::BadFlatness(_) => "bad-flatness",
            RenderError::HyperbolaNeedsExplicitK => "hyperbola-needs-k",
            RenderError::DegenerateGeometry => "degenerate-geometry",
            RenderError::CoordinateOverflow(_) => "coordinate-overflow",
        }
    }

    /// Degenerate geometry maps to its own exit code at the CLI.
    pub fn is_degenerate(&self) -> bool {
        matches!(self, RenderError::DegenerateGeometry)
    }
}

impl fmt::Display for RenderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenderError::CoordinateOutOfRange(v) => {
                write!(f, "coordinate {v} outside ±{MAX_COORD_PX} px")
            }
            RenderError::EmptyArc => write!(f, "zero-sweep arc produces no curve"),
            RenderError::SweepOutOfRange(s) => write!(f, "sweep angle {s} out of range"),
            RenderError::KOutOfRange(k) => write!(f, "k = {k} outside 0..=15"),
            RenderError::BadFlatness(v) => write!(f, "flatness {v} is not a positive pixel count"),
            RenderError::HyperbolaNeedsExplicitK => {
                write!(f, "hyperbolic arcs require an explicit k (no flatness theory)")
            }
            RenderError::DegenerateGeometry => {
                write!(f, "conjugate diameter end points are collinear with the center")
            }
            RenderError::CoordinateOverflow(r) => {
                write!(f, "arc would reach ~{r:.0} px, beyond the coordinate range")
            }
        }
    }
}

impl std::error::Error for RenderError {}

impl From<PlotError> for RenderError {
    fn from(e: PlotError) -> RenderError {
        match e {
            PlotError::DegenerateConjugates => RenderError::DegenerateGeometry,
            PlotError::SweepOutOfRange(s) => RenderError::SweepOutOfRange(s),
            PlotError::NegativeSweep => RenderError::SweepOutOfRange(-1.0),
        }
    }
}

impl From<HyperbolaError> for RenderError {
    fn from(e: HyperbolaError) -> RenderError {
        match e {
            HyperbolaError::Degenerate => RenderError::DegenerateGeometry,
            HyperbolaError::SweepOutOfRange(s) => RenderError::SweepOutOfRange(s),
            HyperbolaError::CoordinateOverflow { reach_px } => {
                RenderError::CoordinateOverflow(reach_px)
            }
        }
    }
}

#[derive(Serialize)]
struct JsonPoint {
    x: f64,
    y: f64,
    raw: [i32; 2],
}

#[derive(Serialize)]
struct JsonDocument {
    shape: &'static str,
    k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    aux_radius_px: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aux_radius_exact_px: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flatness_px: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    start: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<f64>,
    closed: bool,
    point_count: usize,
    points: Vec<JsonPoint>,
}

struct Meta {
    shape: &'static str,
    k: u32,
    aux_radius_px: Option<f64>,
    aux_radius_exact_px: Option<f64>,
    flatness_px: Option<f64>,
    start: Option<f64>,
    sweep: Option<f64>,
}

pub fn render(req: &RenderRequest) -> Result<RenderOutput, RenderError> {
    let mut warnings = Vec::new();
    let (poly, meta) = build_polyline(req, &mut warnings)?;
    let document = match req.format {
        OutputFormat::Svg => svg_for_polyline(&poly),
        OutputFormat::Csv => csv_document(&poly),
        OutputFormat::Json => json_document(&poly, &meta),
    };
    Ok(RenderOutput { document, warnings })
}

fn build_polyline(
    req: &RenderRequest,
    warnings: &mut Vec<String>,
) -> Result<(Polyline, Meta), RenderError> {
    match req.shape {
        ShapeRequest::Ellipse { center, p, q } => {
            let e = ellipse_from(center, p, q)?;
            let (eps, mut meta) = elliptic_spacing(&e, req, warnings)?;
            meta.shape = "ellipse";
            meta.k = eps.k();
            let poly = plot_ellipse(&e, eps)?;
            Ok((poly, meta))
        }
        ShapeRequest::Arc {
            center,
            p,
            q,
            start,
            sweep,
        } => {
            if sweep == 0.0 {
                return Err(RenderError::EmptyArc);
            }
            let e = ellipse_from(center, p, q)?;
            let (eps, mut meta) = elliptic_spacing(&e, req, warnings)?;
            meta.shape = "arc";
            meta.k = eps.k();
            meta.start = Some(start);
            meta.sweep = Some(sweep);
            let poly = plot_elliptic_arc(&e, ArcSpec::new(start, sweep), eps)?;
            Ok((poly, meta))
        }
        ShapeRequest::Hyperbola {
            center,
            p,
            q,
            start,
            sweep,
        } => {
            if sweep == 0.0 {
                return Err(RenderError::EmptyArc);
            }
            let Spacing::ExplicitK(k) = req.spacing else {
                return Err(RenderError::HyperbolaNeedsExplicitK);
            };
            let eps = Epsilon::new(k).ok_or(RenderError::KOutOfRange(k))?;
            let h = ConjugateHyperbola::from_absolute(
                point_from(center)?,
                point_from(p)?,
                point_from(q)?,
            );
            if h.is_degenerate() {
                return Err(RenderError::DegenerateGeometry);
            }
            let poly = plot_hyperbolic_arc(&h, ArcSpec::new(start, sweep), eps)?;
            let meta = Meta {
                shape: "hyperbola",
                k,
                aux_radius_px: None,
                aux_radius_exact_px: None,
                flatness_px: None,
                start: Some(start),
                sweep: Some(sweep),
            };
            Ok((poly, meta))
        }
    }
}

fn point_from(v: (f64, f64)) -> Result<PointFx, RenderError> {
    for c in [v.0, v.1] {
        if !c.is_finite() || c.abs() >= MAX_COORD_PX {
            return Err(RenderError::CoordinateOutOfRange(c));
        }
    }
    PointFx::from_px(v.0, v.1).map_err(|e| RenderError::CoordinateOutOfRange(e.0))
}

fn ellipse_from(center: (f64, f64), p: (f64, f64), q: (f64, f64)) -> Result<ConjugateEllipse, RenderError> {
    let e = ConjugateEllipse::from_absolute(point_from(center)?, point_from(p)?, point_from(q)?);
    if e.is_degenerate() {
        return Err(RenderError::DegenerateGeometry);
    }
    Ok(e)
}

fn elliptic_spacing(
    e: &ConjugateEllipse,
    req: &RenderRequest,
    warnings: &mut Vec<String>,
) -> Result<(Epsilon, Meta), RenderError> {
    let estimate = aux_radius(e.p, e.q).to_float();
    let exact = req
        .strict_flatness
        .then(|| aux_radius_exact(e.p.into(), e.q.into()).ok())
        .flatten();
    let mut meta = Meta {
        shape: "",
        k: 0,
        aux_radius_px: Some(estimate),
        aux_radius_exact_px: exact,
        flatness_px: None,
        start: None,
        sweep: None,
    };
    let eps = match req.spacing {
        Spacing::ExplicitK(k) => Epsilon::new(k).ok_or(RenderError::KOutOfRange(k))?,
        Spacing::Flatness(f) => {
            if !f.is_finite() || f <= 0.0 {
                return Err(RenderError::BadFlatness(f));
            }
            let requested = Fixed::from_float(f).map_err(|_| RenderError::BadFlatness(f))?;
            let (clamped, was_clamped) = FlatnessConfig::clamp_flatness(requested);
            if was_clamped {
                warnings.push(format!(
                    "flatness {f} px clamped to {} px (honored range 0.0625..=64)",
                    clamped.to_float()
                ));
            }
            if req.kmax > Epsilon::MAX_K {
                return Err(RenderError::KOutOfRange(req.kmax));
            }
            let cfg = FlatnessConfig {
                flatness: clamped,
                kmax: req.kmax,
                strict: req.strict_flatness,
            };
            meta.flatness_px = Some(clamped.to_float());
            angular_inc(e.p, e.q, &cfg)
        }
    };
    Ok((eps, meta))
}

fn fmt_px(v: f64) -> String {
    format!("{v:.4}")
}

fn round4(v: f64) -> f64 {
    (v * 10_000.0).round() / 10_000.0
}

fn csv_document(poly: &Polyline) -> String {
    let mut out = String::from("x,y\n");
    for p in &poly.points {
        let _ = writeln!(out, "{},{}", fmt_px(p.x.to_float()), fmt_px(p.y.to_float()));
    }
    out
}

fn json_document(poly: &Polyline, meta: &Meta) -> String {
    let doc = JsonDocument {
        shape: meta.shape,
        k: meta.k,
        aux_radius_px: meta.aux_radius_px.map(round4),
        aux_radius_exact_px: meta.aux_radius_exact_px.map(round4),
        flatness_px: meta.flatness_px.map(round4),
        start: meta.start,
        sweep: meta.sweep,
        closed: poly.closed,
        point_count: poly.points.len(),
        points: poly
            .points
            .iter()
            .map(|p| JsonPoint {
                x: round4(p.x.to_float()),
                y: round4(p.y.to_float()),
                raw: [p.x.raw(), p.y.raw()],
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

/// One SVG path per curve; `fill` of `None` renders stroke-only.
struct SvgPath {
    data: String,
    fill: Option<&'static str>,
    stroke: &'static str,
}

fn path_data(points: &[PointFx], closed: bool) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(
            d,
            "{}{} {},{}",
            if i == 0 { "" } else { " " },
            cmd,
            fmt_px(p.x.to_float()),
            fmt_px(p.y.to_float())
        );
    }
    if closed {
        d.push_str(" Z");
    }
    d
}

fn svg_document(paths: &[SvgPath], points: impl Iterator<Item = PointFx>) -> String {
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        min_x = min_x.min(p.x.to_float());
        min_y = min_y.min(p.y.to_float());
        max_x = max_x.max(p.x.to_float());
        max_y = max_y.max(p.y.to_float());
    }
    let margin = 2.0;
    let (x, y) = (min_x - margin, min_y - margin);
    let (w, h) = (max_x - min_x + 2.0 * margin, max_y - min_y + 2.0 * margin);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">",
        fmt_px(x),
        fmt_px(y),
        fmt_px(w),
        fmt_px(h),
        fmt_px(w),
        fmt_px(h)
    );
    for p in paths {
        let _ = writeln!(
            out,
            "  <path d=\"{}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"1\"/>",
            p.data,
            p.fill.unwrap_or("none"),
            p.stroke
        );
    }
    out.push_str("</svg>\n");
    out
}

fn svg_for_polyline(poly: &Polyline) -> String {
    let paths = [SvgPath {
        data: path_data(&poly.points, poly.closed),
        fill: None,
        stroke: "black",
    }];
    svg_document(&paths, poly.points.iter().copied())
}

const WEDGE_FILLS: [&str; 4] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759"];
const SLICE_BREAKS: [f64; 4] = [0.0, 2.4, 4.3, 5.5];

/// The pie-chart demo: six pies drawn with identical arc start and
/// sweep angles. Only the affine placement — center and conjugate
/// diameter end points — changes from pie to pie, so the five
/// non-circular charts read as tilted views of the circular master at
/// top center. Each pie's enclosing parallelogram is outlined.
pub fn pie_chart_demo() -> String {
    type Placement = ((f64, f64), (f64, f64), (f64, f64));
    // (center, p, q), p and q center-relative
    let placements: [Placement; 6] = [
        ((110.0, 110.0), (100.0, 0.0), (0.0, 55.0)),
        ((330.0, 110.0), (90.0, 0.0), (0.0, 90.0)), // the circular master
        ((550.0, 110.0), (95.0, 25.0), (-20.0, 70.0)),
        ((110.0, 300.0), (60.0, 0.0), (0.0, 95.0)),
        ((330.0, 300.0), (85.0, -30.0), (35.0, 75.0)),
        ((550.0, 300.0), (70.0, 40.0), (-45.0, 80.0)),
    ];

    let cfg = FlatnessConfig::default();
    let mut paths = Vec::new();
    let mut extent = Vec::new();
    for (c, p, q) in placements {
        let center = PointFx::from_px(c.0, c.1).expect("demo coordinates in range");
        let e = ConjugateEllipse::new(
            center,
            PointFx::from_px(p.0, p.1).expect("demo coordinates in range"),
            PointFx::from_px(q.0, q.1).expect("demo coordinates in range"),
        );
        let eps = angular_inc(e.p, e.q, &cfg);

        // enclosing parallelogram: corners at ±(P+Q), ±(P−Q)
        let j = e.p + e.q;
        let k = e.p - e.q;
        let corners = [center + j, center + k, center + (-j), center + (-k)];
        extent.extend_from_slice(&corners);
        paths.push(SvgPath {
            data: path_data(&corners, true),
            fill: None,
            stroke: "#999999",
        });

        for (i, fill) in WEDGE_FILLS.iter().enumerate() {
            let start = SLICE_BREAKS[i];
            let sweep = if i + 1 < SLICE_BREAKS.len() {
                SLICE_BREAKS[i + 1] - start
            } else {
                std::f64::consts::TAU - start
            };
            let arc = plot_elliptic_arc(&e, ArcSpec::new(start, sweep), eps)
                .expect("demo geometry is valid");
            // wedge: center, around the rim, back to center
            let mut pts = Vec::with_capacity(arc.points.len() + 1);
            pts.push(center);
            pts.extend_from_slice(&arc.points);
            paths.push(SvgPath {
                data: path_data(&pts, true),
                fill: Some(fill),
                stroke: "black",
            });
        }
    }
    svg_document(&paths, extent.into_iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_request(format: OutputFormat) -> RenderRequest {
        RenderRequest::new(
            ShapeRequest::Ellipse {
                center: (200.0, 200.0),
                p: (300.0, 200.0),
                q: (200.0, 300.0),
            },
            Spacing::Flatness(0.25),
            format,
        )
    }

    #[test]
    fn quarter_pixel_circle_picks_k3() {
        let out = render(&circle_request(OutputFormat::Json)).unwrap();
        assert!(out.warnings.is_empty());
        let doc: serde_json::Value = serde_json::from_str(&out.document).unwrap();
        assert_eq!(doc["shape"], "ellipse");
        assert_eq!(doc["k"], 3);
        assert_eq!(doc["aux_radius_px"], 106.25);
        // 50 steps at k=3, plus the start point
        assert_eq!(doc["point_count"], 51);
        assert_eq!(doc["closed"], true);
        assert_eq!(doc["points"][0]["x"], 300.0);
        assert_eq!(doc["points"][0]["raw"][0], 300 * 65536);
    }

    #[test]
    fn rendering_is_deterministic() {
        for format in [OutputFormat::Svg, OutputFormat::Csv, OutputFormat::Json] {
            let a = render(&circle_request(format)).unwrap();
            let b = render(&circle_request(format)).unwrap();
            assert_eq!(a.document, b.document);
        }
        assert_eq!(pie_chart_demo(), pie_chart_demo());
    }

    #[test]
    fn svg_and_csv_shapes() {
        let svg = render(&circle_request(OutputFormat::Svg)).unwrap().document;
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains(" Z\""), "closed polyline emits a close-path");

        let csv = render(&circle_request(OutputFormat::Csv)).unwrap().document;
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,y"));
        assert_eq!(lines.next(), Some("300.0000,200.0000"));
        assert_eq!(csv.lines().count(), 52);
    }

    #[test]
    fn zero_sweep_arc_is_a_distinct_error() {
        let req = RenderRequest::new(
            ShapeRequest::Arc {
                center: (0.0, 0.0),
                p: (100.0, 0.0),
                q: (0.0, 100.0),
                start: 0.0,
                sweep: 0.0,
            },
            Spacing::ExplicitK(3),
            OutputFormat::Svg,
        );
        let err = render(&req).unwrap_err();
        assert_eq!(err, RenderError::EmptyArc);
        assert_eq!(err.code(), "empty-arc");
        assert!(!err.is_degenerate());
    }

    #[test]
    fn degenerate_geometry_is_flagged_for_exit_code_3() {
        let req = RenderRequest::new(
            ShapeRequest::Ellipse {
                center: (0.0, 0.0),
                p: (100.0, 100.0),
                q: (200.0, 200.0),
            },
            Spacing::ExplicitK(3),
            OutputFormat::Svg,
        );
        let err = render(&req).unwrap_err();
        assert!(err.is_degenerate());
        assert_eq!(err.code(), "degenerate-geometry");
    }

    #[test]
    fn hyperbola_requires_explicit_k() {
        let shape = ShapeRequest::Hyperbola {
            center: (100.0, 100.0),
            p: (150.0, 100.0),
            q: (100.0, 150.0),
            start: 0.0,
            sweep: 1.0,
        };
        let req = RenderRequest::new(shape, Spacing::Flatness(0.25), OutputFormat::Json);
        assert_eq!(render(&req).unwrap_err(), RenderError::HyperbolaNeedsExplicitK);

        let req = RenderRequest::new(shape, Spacing::ExplicitK(4), OutputFormat::Json);
        let doc: serde_json::Value = serde_json::from_str(&render(&req).unwrap().document).unwrap();
        assert_eq!(doc["shape"], "hyperbola");
        assert_eq!(doc["k"], 4);
        assert!(doc.get("aux_radius_px").is_none());
    }

    #[test]
    fn out_of_range_inputs_are_validation_errors() {
        let req = RenderRequest::new(
            ShapeRequest::Ellipse {
                center: (20000.0, 0.0),
                p: (100.0, 0.0),
                q: (0.0, 100.0),
            },
            Spacing::ExplicitK(3),
            OutputFormat::Svg,
        );
        assert!(matches!(render(&req).unwrap_err(), RenderError::CoordinateOutOfRange(_)));

        let mut req = circle_request(OutputFormat::Svg);
        req.spacing = Spacing::ExplicitK(16);
        assert_eq!(render(&req).unwrap_err(), RenderError::KOutOfRange(16));

        let mut req = circle_request(OutputFormat::Svg);
        req.spacing = Spacing::Flatness(-0.5);
        assert_eq!(render(&req).unwrap_err(), RenderError::BadFlatness(-0.5));
    }

    #[test]
    fn sub_clamp_flatness_warns_and_proceeds() {
        let mut req = circle_request(OutputFormat::Json);
        req.spacing = Spacing::Flatness(0.001);
        let out = render(&req).unwrap();
        assert_eq!(out.warnings.len(), 1);
        let doc: serde_json::Value = serde_json::from_str(&out.document).unwrap();
        assert_eq!(doc["flatness_px"], 0.0625);
    }

    #[test]
    fn pie_demo_draws_six_pies_with_shared_slices() {
        let svg = pie_chart_demo();
        // 6 parallelogram outlines + 6 × 4 wedges
        assert_eq!(svg.matches("<path").count(), 30);
        for fill in WEDGE_FILLS {
            assert_eq!(svg.matches(fill).count(), 6);
        }
    }
}
