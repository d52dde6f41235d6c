//! Six pie charts drawn with identical arc start and sweep angles.
//!
//! Only the affine placement — center and conjugate diameter end
//! points — differs between the pies, so the five non-circular charts
//! read as tilted 3-D views of the circular master. Arc angles live on
//! the unit-circle parameter, which is what makes this work.
//!
//! ```text
//! cargo run --example pie_charts > pies.svg
//! ```

use arcplot::render::pie_chart_demo;

fn main() {
    print!("{}", pie_chart_demo());
}
