//! Λ² from the dimension of the sp(n) algebra, exactly and in floating point.

use bispec::physops::{alpha_from_lambda2, lambda_from_dimension, lambda_from_dimension_numeric};

fn main() -> bispec::Result<()> {
    for n in 1..=4 {
        let d = lambda_from_dimension(n)?;
        println!("n = {n}: Λ² = {:>3}  (sp sum {}, full sum {})", d.lambda2, d.sp_scalar, d.full_scalar);
    }
    let d = lambda_from_dimension(8)?;
    let num = lambda_from_dimension_numeric(8)?;
    println!("n = 8: Λ² = {} exact, {:.12} numeric (residual {:.1e})", d.lambda2, num.lambda2, num.max_residual);
    println!("α = {:.6e}", alpha_from_lambda2(d.lambda2));
    Ok(())
}
