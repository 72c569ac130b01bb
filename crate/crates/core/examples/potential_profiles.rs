//! Conventional, rational and total potentials, and the agreement between
//! the closed forms and the algebra assembly.
//!
//! cargo run --release --example potential_profiles

use potalg::algebra::lin_spaced;
use potalg::potentials::{evaluate, validate_params};
use potalg::{Family, PotentialParams};

fn main() -> potalg::Result<()> {
    let gpt = PotentialParams::new(Family::Gpt, 5.0, 3.5, 1)?;
    println!("GPT B = 5, k = 3.5, m = 1");
    for x in lin_spaced(0.25, 4.0, 8) {
        let e = evaluate(&gpt, x)?;
        println!(
            "  x = {x:5.3}  conventional {:+10.5}  rational {:+10.5}  total {:+10.5}  gap {:.1e}",
            e.v_conventional.re,
            e.v_rational.re,
            e.v_total.re,
            e.gap()
        );
    }

    let scarf = PotentialParams::new(Family::ScarfII, 2.0, 2.5, 2)?;
    println!("Scarf-II B = 2, k = 2.5, m = 2 (V(-x) = conj V(x))");
    for x in lin_spaced(-3.0, 3.0, 7) {
        let e = evaluate(&scarf, x)?;
        println!("  x = {x:+5.2}  total {:+10.5} {:+10.5}i", e.v_total.re, e.v_total.im);
    }

    // Parameters that put a zero of the extension denominator on the domain.
    let report = validate_params(&PotentialParams::unchecked(Family::Gpt, 5.0, 3.5, 3));
    println!("GPT B = 5, k = 3.5, m = 3: {:?}", report.violations);
    Ok(())
}
