//! Exact operator-algebra checks: eigenvalues, the closed-form mass operator,
//! completeness relations and the sp(n) basis.

use std::time::Instant;

use bispec::physops::verify_algebra;

fn main() {
    let start = Instant::now();
    let reports = verify_algebra();
    for r in &reports {
        println!("{:<44} {:<6} {:>9.2} ms", r.check_id, if r.passed { "ok" } else { "FAILED" }, r.timing_ms);
        for t in r.residual_terms.iter().take(3) {
            println!("    {t}");
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} checks, {failed} failed, {:.0} ms", reports.len(), start.elapsed().as_secs_f64() * 1e3);
}
