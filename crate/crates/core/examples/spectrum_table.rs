//! The family table compared against the bundled experimental masses.
//!
//! Usage: `cargo run --example spectrum_table -- [csv|json|markdown]`

use bispec::report::{attach, bundled_experimental, compare_with_tolerance, generate_table, render, Format};
use bispec::spectrum::Family;

fn main() {
    let format = match std::env::args().nth(1).as_deref() {
        Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        _ => Format::Markdown,
    };
    let mu2 = 0.065;
    let reference = bundled_experimental();
    let rows = attach(&generate_table(mu2, 10, &Family::all()), &reference);
    let stats = compare_with_tolerance(&rows, &reference, 0.02);
    print!("{}", render(&rows, Some(&stats), mu2, format));
}
