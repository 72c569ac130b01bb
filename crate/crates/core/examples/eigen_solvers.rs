//! The complex-symmetric QL solver against the dense Hessenberg QR fallback
//! on a discretized PT-symmetric Hamiltonian.
//!
//! cargo run --release --example eigen_solvers

use std::time::Instant;

use potalg::spectral::{
    discretize, eigen_complex_hessenberg, eigen_complex_tridiagonal, eigen_real_tridiagonal, GridSpec,
};
use potalg::{Family, PotentialParams};

fn main() -> potalg::Result<()> {
    let p = PotentialParams::new(Family::ScarfII, 2.0, 2.5, 1)?;
    let op = discretize(&p, &GridSpec::new(-12.0, 12.0, 400)?)?;

    let t = Instant::now();
    let ql = eigen_complex_tridiagonal(&op)?;
    let t_ql = t.elapsed();
    let t = Instant::now();
    let qr = eigen_complex_hessenberg(&op)?;
    let t_qr = t.elapsed();

    let worst = ql
        .iter()
        .map(|a| qr.iter().map(|b| (a - b).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    println!(
        "N = {}: QL {t_ql:.1?}, Hessenberg QR {t_qr:.1?}, max eigenvalue mismatch {worst:.1e}",
        op.dim()
    );
    for e in ql.iter().take(5) {
        println!("  {:+.8} {:+.2e}i", e.re, e.im);
    }

    // A real potential keeps to the symmetric real path.
    let gpt = discretize(
        &PotentialParams::new(Family::Gpt, 5.0, 3.5, 1)?,
        &GridSpec::new(0.01, 25.0, 400)?,
    )?;
    let real = eigen_real_tridiagonal(&gpt)?;
    println!("GPT real path, lowest: {:?}", &real[..3]);
    Ok(())
}
