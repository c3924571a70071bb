//! Normal ordering in the Weyl algebra and Gaussian moments of polynomials.

use num_traits::Zero;

use bispec::symcore::{cq_int, gaussian_moment, normal_order, symplectic_e, Kind, SymExpr, VarId};

fn main() -> bispec::Result<()> {
    let n = 2;
    println!("E for n = {n}:");
    for row in symplectic_e(n) {
        println!("  {row:?}");
    }

    // γ_3 γ_1 γ_0 reordered into ascending words plus contractions.
    let ordered = normal_order(n, vec![(cq_int(1, 1), vec![3, 1, 0])])?;
    println!("normal order of [3, 1, 0]:");
    for ((word, lpow), c) in ordered.terms() {
        let coeff = if c.im.is_zero() { c.re.to_string() } else { format!("({} + {}i)", c.re, c.im) };
        let gens: Vec<String> = word.iter().map(|g| format!("γ{g}")).collect();
        println!("  {coeff} Λ^{lpow} {}", if gens.is_empty() { "1".into() } else { gens.join(" ") });
    }

    let z = SymExpr::var(VarId::additional(Kind::Plain, 1));
    let zbar = SymExpr::var(VarId::additional(Kind::Conj, 1));
    let p = z.mul(&zbar)?.mul(&z.mul(&zbar)?)?;
    let m = gaussian_moment(&p)?;
    println!("<|φ|⁴> = {}", m.re);
    Ok(())
}
