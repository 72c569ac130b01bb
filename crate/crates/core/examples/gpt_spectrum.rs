//! Finite-difference spectrum of the extended GPT potential with grid
//! refinement and Richardson extrapolation.
//!
//! cargo run --release --example gpt_spectrum

use potalg::algebra::bound_state_labels;
use potalg::spectral::{compare_with_ladder, converge_spectrum, GridSpec};
use potalg::{Family, PotentialParams};

fn main() -> potalg::Result<()> {
    let p = PotentialParams::new(Family::Gpt, 5.0, 3.5, 1)?;
    let grid = GridSpec::default_for(Family::Gpt, 1000);
    let s = converge_spectrum(&p, &grid, 3)?;
    println!(
        "grid [{}, {}], points per level {:?}",
        grid.x_min, grid.x_max, s.level_points
    );

    let cmp = compare_with_ladder(&s, &bound_state_labels(&p));
    for row in &cmp.rows {
        let Some(l) = row.numerical else {
            println!("  n = {}  E = {}  missing", row.label.n, row.label.energy);
            continue;
        };
        println!(
            "  n = {}  E = {:4}  finest {:.8}  extrapolated {:.10}  |dE| = {:.1e}  order {:.2}",
            row.label.n,
            row.label.energy,
            l.finest.re,
            l.energy.re,
            row.delta().unwrap_or(f64::NAN),
            l.observed_order.unwrap_or(f64::NAN)
        );
    }
    println!(
        "levels above threshold {} or unmatched: {}",
        s.threshold,
        cmp.extra.len()
    );
    Ok(())
}
