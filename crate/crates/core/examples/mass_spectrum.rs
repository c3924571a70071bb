//! Bare masses from the closed-form mass operator.

use bispec::calibrate::mu2_minimum;
use bispec::spectrum::{mass_squared, virton_mass_squared, Model, QuantumNumbers};

fn main() -> bispec::Result<()> {
    let mu2 = mu2_minimum();
    println!("μ² = {mu2:.7}");
    let states = [
        ("nucleon", QuantumNumbers::new(1, 1, 1, 1)),
        ("Λ", QuantumNumbers::new(1, 1, -1, 0)),
        ("Σ", QuantumNumbers::new(1, 3, -1, 2)),
        ("Δ", QuantumNumbers::new(1, 3, 1, 3)),
        ("ρ", QuantumNumbers::new(0, 2, 0, 2)),
        ("ω", QuantumNumbers::new(0, 2, 0, 0)),
    ];
    for (label, qn) in states {
        for model in [Model::H16, Model::H8] {
            match mass_squared(model, &qn, mu2, 1.0) {
                Ok(s) => match s.physical_mass(qn.f) {
                    Ok(m) => println!("{label:<8} {model:?}: M² = {:>9.6}, M = {m:.4} GeV", s.physical_m2(qn.f)),
                    Err(e) => println!("{label:<8} {model:?}: {e}"),
                },
                Err(e) => println!("{label:<8} {model:?}: {e}"),
            }
        }
    }
    let nucleon = QuantumNumbers::new(1, 1, 1, 1);
    println!("nucleon virton M² = {:.3e}", virton_mass_squared(&nucleon, 136)?);
    Ok(())
}
