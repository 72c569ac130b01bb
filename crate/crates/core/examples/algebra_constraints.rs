//! The two algebra constraints hold to rounding for every extension, and a
//! deliberately corrupted realization is caught at once.
//!
//! cargo run --release --example algebra_constraints

use potalg::algebra::{default_samples, make_algebra_functions, rest1_residuals, rest2_residual, Fault, FaultInjected};
use potalg::{Family, PotentialParams};

fn main() -> potalg::Result<()> {
    for (family, b, k) in [(Family::Gpt, 7.0, 3.5), (Family::ScarfII, 2.0, 2.5)] {
        let xs = default_samples(family, 200);
        for m in 0..=3 {
            let p = PotentialParams::new(family, b, k, m)?;
            let af = make_algebra_functions(&p)?;
            let (f, g) = rest1_residuals(&af, &xs)?;
            let r2 = rest2_residual(&af, k, &xs)?;
            println!(
                "{:<6} m = {m}  F' + F² - 1: {:.1e}  G' + FG: {:.1e}  second constraint: {:.1e} (worst at x = {:.3})",
                family.name(),
                f.max,
                g.max,
                r2.max,
                r2.at
            );
        }
    }

    let p = PotentialParams::new(Family::Gpt, 5.0, 3.5, 1)?;
    let broken = FaultInjected {
        inner: make_algebra_functions(&p)?,
        fault: Fault::TanhTwoX,
    };
    let (f, _) = rest1_residuals(&broken, &default_samples(Family::Gpt, 200))?;
    println!("with F = tanh 2x: F' + F² - 1 reaches {:.3} at x = {:.3}", f.max, f.at);
    Ok(())
}
