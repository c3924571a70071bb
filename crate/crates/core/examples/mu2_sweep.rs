//! Deviation of the regenerated table from the bundled printed theoretical
//! column as μ² varies.

use bispec::report::{default_sweep_grid, mu2_sweep, render_sweep, Format};

fn main() {
    let points = mu2_sweep(&default_sweep_grid(), 10);
    print!("{}", render_sweep(&points, Format::Markdown));
    if let Some(best) = points.iter().min_by(|a, b| a.mean_abs_dev_gev.total_cmp(&b.mean_abs_dev_gev)) {
        println!("best mean deviation {:.4} GeV at μ² = {}", best.mean_abs_dev_gev, best.mu2);
    }
}
