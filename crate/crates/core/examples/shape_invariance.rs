//! Partner potentials differ by a constant: the remainder telescopes into
//! the bound-state ladder.
//!
//! cargo run --release --example shape_invariance

use potalg::algebra::{default_samples, energy_closed_form};
use potalg::susy::{energy_from_remainders, remainder, shape_invariance_residual, superpotential};
use potalg::{Family, PotentialParams};

fn main() -> potalg::Result<()> {
    for (family, b, k, m) in [
        (Family::Gpt, 6.0, 3.5, 1),
        (Family::Gpt, 7.0, 3.5, 2),
        (Family::ScarfII, 2.0, 2.5, 1),
    ] {
        let p = PotentialParams::new(family, b, k, m)?;
        let xs = default_samples(family, 200);
        let r = shape_invariance_residual(&p, p.a(), &xs)?;
        println!(
            "{:<6} B = {b} k = {k} m = {m}  pairing {}  R = {:.12} (expected {})  spread {:.1e}",
            family.name(),
            r.sign_convention.name(),
            r.r_mean,
            r.r_expected,
            r.relative_stddev()
        );
    }

    let p = PotentialParams::new(Family::Gpt, 6.0, 3.5, 1)?;
    let w = superpotential(&p, p.a(), 1.0)?;
    println!("W(1) = {:.8}, W'(1) = {:.8}", w.w.re, w.w_prime.re);

    let k = 3.5;
    for n in 0..3 {
        let sum = (1..=n).fold(0.0, |acc, s| acc + remainder(k - 0.5 - s as f64));
        println!(
            "n = {n}: sum of remainders {sum}  telescoped {}  closed form {}",
            energy_from_remainders(k, n)?,
            energy_closed_form(k, n)?
        );
    }
    Ok(())
}
