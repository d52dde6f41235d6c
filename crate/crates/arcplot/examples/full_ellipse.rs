//! Plot a rotated ellipse inscribed in a parallelogram and write it to
//! stdout as SVG.
//!
//! The ellipse is specified by three points: the parallelogram center
//! and the midpoints P, Q of two adjacent sides. Run with:
//!
//! ```text
//! cargo run --example full_ellipse > ellipse.svg
//! ```

use arcplot::render::{render, OutputFormat, RenderRequest, ShapeRequest, Spacing};

fn main() {
    // a parallelogram tilted off-axis: center (260, 200), side
    // midpoints at (420, 260) and (200, 330)
    let request = RenderRequest::new(
        ShapeRequest::Ellipse {
            center: (260.0, 200.0),
            p: (420.0, 260.0),
            q: (200.0, 330.0),
        },
        Spacing::Flatness(0.25),
        OutputFormat::Svg,
    );

    let out = render(&request).expect("valid geometry");
    eprintln!("plotted the inscribed ellipse at flatness 0.25 px");
    print!("{}", out.document);
}
