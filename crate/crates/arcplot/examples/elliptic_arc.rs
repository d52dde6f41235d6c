//! Elliptic arcs with arbitrary start and sweep angles, including a
//! negative sweep (drawn away from Q, toward −Q).
//!
//! Angles are measured on the unit-circle parameter: start is relative
//! to P, positive toward Q, and the sweep is signed the same way. The
//! interior points come from the fixed-point generator; the exact arc
//! end point is appended in floating point.

use arcplot::ellipse::{plot_elliptic_arc, ArcSpec, ConjugateEllipse};
use arcplot::fixed::PointFx;
use arcplot::minsky::Epsilon;
use std::f64::consts::FRAC_PI_2;

fn main() {
    let e = ConjugateEllipse::from_absolute(
        PointFx::from_px(300.0, 300.0).unwrap(),
        PointFx::from_px(520.0, 300.0).unwrap(),
        PointFx::from_px(300.0, 430.0).unwrap(),
    );
    let eps = Epsilon::new(4).unwrap();

    // a quarter turn starting half way between P and Q
    let forward = plot_elliptic_arc(&e, ArcSpec::new(FRAC_PI_2 / 2.0, FRAC_PI_2), eps).unwrap();
    // the same start, sweeping the other way
    let backward = plot_elliptic_arc(&e, ArcSpec::new(FRAC_PI_2 / 2.0, -1.2), eps).unwrap();

    eprintln!(
        "forward arc: {} points, backward arc: {} points",
        forward.points.len(),
        backward.points.len()
    );

    println!("arc,x,y");
    for (name, poly) in [("forward", &forward), ("backward", &backward)] {
        for p in &poly.points {
            println!("{},{:.4},{:.4}", name, p.x.to_float(), p.y.to_float());
        }
    }
}
