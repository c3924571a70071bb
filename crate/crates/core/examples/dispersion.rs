//! Roots of the statistical dispersion law with and without the occupation term.

use bispec::spectrum::{
    dispersion_index, exact_dispersion_roots, DispersionLaw, Model, NfMode, QuantumNumbers, Rearrangement,
};

fn main() -> bispec::Result<()> {
    let qn = QuantumNumbers::new(1, 2, 0, 2);
    println!("{:>7} {:>14} {:>14} {:>10}", "μ²", "closed form", "full n_f", "rel gap");
    for mu2 in [0.2, 0.1, 0.05, 0.025, 0.0125] {
        let closed = DispersionLaw::new(qn, mu2, Model::H8, NfMode::Zero)?.closed_form()?.m2_baryon;
        let exact = exact_dispersion_roots(&qn, mu2, Model::H8)?;
        println!(
            "{mu2:>7} {closed:>14.8} {:>14.8} {:>10.2e}",
            exact.physical,
            (exact.physical - closed).abs() / closed
        );
    }

    let law = DispersionLaw::new(qn, 0.065, Model::H8, NfMode::Full)?;
    let roots = law.roots()?;
    for (name, x) in [("lower", roots.lower), ("upper", roots.upper)] {
        let a = dispersion_index(&law, x, Rearrangement::QuadraticForm)?;
        let b = dispersion_index(&law, x, Rearrangement::CurveVsLine)?;
        println!("{name} root {x:.6}: index {a:+} / {b:+}");
    }
    Ok(())
}
