//! Bessel functions, terminating Jacobi polynomials and ₂F₁.

use bispec::specfun::{bessel_j, hyp2f1_terminating_exact, jacobi_p_exact, rat, verify_specfun, EvalPolicy};

fn main() -> bispec::Result<()> {
    let policy = EvalPolicy::default();
    println!("{:>6} {:>22} {:>22}", "x", "J_0(x)", "J_3(x)");
    for x in [0.5, 2.404825557695773, 10.0, 30.0, 50.0] {
        println!("{x:>6.3} {:>22.15e} {:>22.15e}", bessel_j(0, x, &policy)?, bessel_j(3, x, &policy)?);
    }

    let x = rat(1, 3);
    println!("P_4^(1,2)(1/3) = {}", jacobi_p_exact(4, 1, 2, &x)?);
    println!("2F1(-3, 2; 1; 1/3) = {}", hyp2f1_terminating_exact(-3, 2, 1, &x)?);

    for r in verify_specfun() {
        println!("{:<40} {}", r.check_id, if r.passed { "ok" } else { "FAILED" });
    }
    Ok(())
}
