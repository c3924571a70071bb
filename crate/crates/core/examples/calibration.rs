//! Calibration of μ², z̄z and the isospin rotation V(Λ², χ).

use bispec::calibrate::{
    build_v, eta_parameter, isovector_a, isovector_exact, l_column, mu2_minimum, nucleon_mass, proton_neutron_ratio,
    ModelParams,
};

fn main() -> bispec::Result<()> {
    let mu2 = mu2_minimum();
    println!("μ² = {mu2:.7}, M_N = {:.4} GeV", nucleon_mass(mu2)?);

    let params = ModelParams::calibrated(136, 0.0)?;
    println!("{}", serde_json::to_string_pretty(&params).expect("serializable"));
    println!("η = {:.4e}", eta_parameter(&params));
    println!("W_p/W_n = {}", proton_neutron_ratio(136)?);

    for chi in [0.0, 0.7, 2.1] {
        let rot = build_v(136, chi)?;
        let a = isovector_a(&rot)?;
        let l = l_column(&rot)?;
        println!(
            "χ = {chi}: det V residual {:.1e}, V² + I residual {:.1e}, A = ({:.3}, {:.3}, {:.3}, {:.3}), L00 = {:.6}",
            rot.det_residual(),
            rot.square_residual(),
            a.a0,
            a.a1,
            a.a2,
            a.a3,
            l.l00
        );
    }
    let exact = isovector_exact(136)?;
    println!("exact A₀² - A⃗² = {}", exact.minkowski_norm());
    Ok(())
}
