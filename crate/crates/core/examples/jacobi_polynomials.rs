//! Jacobi polynomials with the negative, non-integer indices the rational
//! extensions need, evaluated on the real line and the imaginary axis.
//!
//! cargo run --release --example jacobi_polynomials

use num_complex::Complex64;
use potalg::specialfun::{
    jacobi_coefficients, jacobi_poly, jacobi_poly_derivative, jacobi_poly_reversed, JacobiParams,
};

fn main() -> potalg::Result<()> {
    // GPT, B = 5, k = 3.5, m = 2: the denominator polynomial of the extension.
    let p = JacobiParams::new(2, -5.0 + 3.0 - 0.5, -5.0 - 3.0 - 1.5)?;
    println!(
        "P_{}^({}, {}) monomial coefficients: {:?}",
        p.n,
        p.alpha,
        p.beta,
        jacobi_coefficients(p)?
    );

    for x in [0.5_f64, 1.0, 2.0, 4.0] {
        let gpt = Complex64::new(x.cosh(), 0.0);
        let scarf = Complex64::new(0.0, x.sinh());
        println!(
            "x = {x:3.1}  P(cosh x) = {:+.6e}  P'(cosh x) = {:+.6e}  P(i sinh x) = {:+.6e}",
            jacobi_poly(p, gpt)?,
            jacobi_poly_derivative(p, gpt)?,
            jacobi_poly(p, scarf)?
        );
    }

    // Far out the reversed form w^n P(1/w) stays bounded while z^n grows.
    let z = Complex64::new(1e6, 0.0);
    let direct = jacobi_poly(p, z)?;
    let reversed = jacobi_poly_reversed(p, z.inv())? * z.powu(p.n);
    println!("z = 1e6: direct {direct:.12e}, reversed {reversed:.12e}");

    // With n + α + β + 1 = 0 the degree collapses to a constant.
    let drop = JacobiParams::new(3, -1.5, -2.5)?;
    println!(
        "degree drop P_3^(-1.5, -2.5) coefficients: {:?}",
        jacobi_coefficients(drop)?
    );
    Ok(())
}
