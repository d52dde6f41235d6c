//! Plot a hyperbolic arc with the shift-add generator and check the
//! plotted points against the hyperbola's implicit equation.
//!
//! With P = (a, 0) and Q = (0, a) the plotted branch satisfies
//! x² − y² = a²; the residual below stays at fixed-point noise level.

use arcplot::ellipse::ArcSpec;
use arcplot::fixed::PointFx;
use arcplot::hyperbola::{plot_hyperbolic_arc, ConjugateHyperbola};
use arcplot::minsky::Epsilon;

fn main() {
    let a = 600.0;
    let h = ConjugateHyperbola::new(
        PointFx::from_px(0.0, 0.0).unwrap(),
        PointFx::from_px(a, 0.0).unwrap(),
        PointFx::from_px(0.0, a).unwrap(),
    );
    let eps = Epsilon::new(5).unwrap();

    // sweep both directions from the vertex
    let up = plot_hyperbolic_arc(&h, ArcSpec::new(0.0, 1.5), eps).unwrap();
    let down = plot_hyperbolic_arc(&h, ArcSpec::new(0.0, -1.5), eps).unwrap();

    let mut worst = 0.0f64;
    println!("x,y,residual");
    for poly in [&down, &up] {
        for p in &poly.points {
            let (x, y) = (p.x.to_float(), p.y.to_float());
            let residual = (x * x - y * y - a * a) / (a * a);
            worst = worst.max(residual.abs());
            println!("{x:.4},{y:.4},{residual:.2e}");
        }
    }
    eprintln!(
        "{} points on x^2 - y^2 = {a}^2, worst relative residual {worst:.2e}",
        up.points.len() + down.points.len()
    );
}
