//! Convert between conjugate-diameter and implicit descriptions.
//!
//! An implicit equation keeps describing the same ellipse when all six
//! coefficients are scaled, so invariant formulas need a canonical
//! scale: the calibration number δ = −4F/(4AC − B²) restores it.
//! This example builds an equation from conjugate diameters, scales it
//! out of calibration, recovers a conjugate pair anyway, and shows the
//! round trip lands on the same ellipse.

use arcplot::conic::{
    calibration_number, conjugate_from_implicit, implicit_from_conjugate, translate_from_origin,
    translate_to_origin, CalibrationMode,
};
use arcplot::refmodel::RealPoint;

fn main() {
    let p = RealPoint::new(240.0, 60.0);
    let q = RealPoint::new(-90.0, 180.0);
    let centered = implicit_from_conjugate(p, q).unwrap();
    println!(
        "implicit from P=({}, {}), Q=({}, {}):",
        p.x, p.y, q.x, q.y
    );
    println!(
        "  A={:.1} B={:.1} C={:.1} F={:.1}   delta={}",
        centered.a,
        centered.b,
        centered.c,
        centered.f,
        calibration_number(&centered).unwrap()
    );

    // scale the equation: same ellipse, delta moves off 1
    let scaled = centered.scaled(2.5);
    println!(
        "after scaling by 2.5: delta = {}",
        calibration_number(&scaled).unwrap()
    );

    // recovery auto-calibrates and picks the pair with P on the +x axis
    let rec = conjugate_from_implicit(&scaled, CalibrationMode::Auto).unwrap();
    println!(
        "recovered pair (delta {} applied): P'=({:.4}, {:.4}), Q'=({:.4}, {:.4})",
        rec.delta, rec.p.x, rec.p.y, rec.q.x, rec.q.y
    );

    let back = implicit_from_conjugate(rec.p, rec.q).unwrap();
    let worst = [
        back.a - centered.a,
        back.b - centered.b,
        back.c - centered.c,
        back.f - centered.f,
    ]
    .iter()
    .fold(0.0f64, |m, d| m.max(d.abs()))
        / centered.f.abs();
    println!("round-trip coefficient agreement: {worst:.2e} relative");

    // centers translate both ways
    let moved = translate_from_origin(&centered, RealPoint::new(300.0, -120.0));
    let (_, center) = translate_to_origin(&moved).unwrap();
    println!("translated center recovered: ({:.6}, {:.6})", center.x, center.y);
}
