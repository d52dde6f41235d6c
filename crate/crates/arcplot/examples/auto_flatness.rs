//! How the flatness budget drives point spacing.
//!
//! For a fixed ellipse, sweep the flatness budget and show the
//! selected increment exponent k, the resulting point count, and the
//! chord gap actually measured against the true curve — in both the
//! default shift-add mode and strict (exact radius + exact sagitta)
//! mode.

use arcplot::ellipse::{plot_ellipse, ArcSpec, ConjugateEllipse};
use arcplot::fixed::{Fixed, PointFx};
use arcplot::flatness::{angular_inc, kmax_for, FlatnessConfig};
use arcplot::refmodel::{max_chord_deviation, RealPoint};
use std::f64::consts::TAU;

fn main() {
    let p = PointFx::from_px(900.0, 250.0).unwrap();
    let q = PointFx::from_px(-150.0, 600.0).unwrap();
    let e = ConjugateEllipse::new(PointFx::ORIGIN, p, q);
    let kmax = kmax_for(4000.0, 0.1);

    println!("{:>10} {:>6} {:>8} {:>14} {:>12}", "flatness", "mode", "k", "points", "measured");
    for budget in [4.0, 1.0, 0.25, 0.1] {
        for strict in [false, true] {
            let cfg = FlatnessConfig {
                flatness: Fixed::from_float(budget).unwrap(),
                kmax,
                strict,
            };
            let eps = angular_inc(p, q, &cfg);
            let poly = plot_ellipse(&e, eps).unwrap();
            let dev = max_chord_deviation(
                &poly,
                RealPoint::new(0.0, 0.0),
                p.into(),
                q.into(),
                &ArcSpec::new(0.0, TAU),
            )
            .unwrap();
            println!(
                "{:>10} {:>6} {:>8} {:>14} {:>9.4} px",
                format!("{budget} px"),
                if strict { "exact" } else { "shift" },
                eps.k(),
                poly.points.len(),
                dev
            );
        }
    }
}
