//! Creation probabilities of the octet charge states at the calibrated point.

use bispec::amplitudes::{creation_probabilities, octet, verify_identities, NFactorForm};
use bispec::calibrate::ModelParams;

fn main() -> bispec::Result<()> {
    let params = ModelParams::calibrated(136, 0.0)?;
    for form in [NFactorForm::General, NFactorForm::Printed] {
        let table = creation_probabilities(&octet(), &params, form)?;
        println!("{form:?}: Σ W = {:.6e}", table.raw_sum);
        for e in &table.entries {
            println!(
                "  {:<7} Q = {:+}  N = {:.4e}  |O| = {:.4e}  W = {:.4e}  W/ΣW = {:.4}",
                e.family.label(),
                e.charge_state,
                e.n_factor,
                e.iso_modulus,
                e.probability,
                e.normalized
            );
        }
    }
    for r in verify_identities() {
        println!("{:<36} {}", r.check_id, if r.passed { "ok" } else { "FAILED" });
    }
    Ok(())
}
