//! Every extension index m shares the conventional potential's ladder.
//!
//! cargo run --release --example isospectral_family

use potalg::algebra::bound_state_labels;
use potalg::spectral::{compare_with_ladder, converge_spectrum, ladder_deviation, GridSpec};
use potalg::{Family, PotentialParams};

fn main() -> potalg::Result<()> {
    let grid = GridSpec::default_for(Family::Gpt, 1000);
    let base = PotentialParams::new(Family::Gpt, 7.0, 3.5, 0)?;
    let reference = compare_with_ladder(&converge_spectrum(&base, &grid, 3)?, &bound_state_labels(&base));
    for m in 0..=3 {
        let p = base.with_m(m);
        let cmp = compare_with_ladder(&converge_spectrum(&p, &grid, 3)?, &bound_state_labels(&p));
        let energies: Vec<String> = cmp
            .rows
            .iter()
            .map(|r| r.numerical.map_or("-".into(), |l| format!("{:.7}", l.energy.re)))
            .collect();
        println!(
            "m = {m}  E = [{}]  max deviation from m = 0: {:.1e}",
            energies.join(", "),
            ladder_deviation(&cmp, &reference).unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
