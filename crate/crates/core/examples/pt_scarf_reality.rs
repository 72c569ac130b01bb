//! PT-symmetric Scarf-II: the discretized Hamiltonian is complex-symmetric,
//! yet its bound spectrum comes out real for every extension index.
//!
//! cargo run --release --example pt_scarf_reality

use potalg::algebra::bound_state_labels;
use potalg::spectral::{compare_with_ladder, converge_spectrum, widen_for_tail, GridSpec};
use potalg::{Family, PotentialParams};

fn main() -> potalg::Result<()> {
    for m in 0..=3 {
        let p = PotentialParams::new(Family::ScarfII, 2.0, 2.5, m)?;
        let (grid, _) = widen_for_tail(&p, &GridSpec::default_for(Family::ScarfII, 1000), 8)?;
        let t = std::time::Instant::now();
        let s = converge_spectrum(&p, &grid, 3)?;
        let cmp = compare_with_ladder(&s, &bound_state_labels(&p));
        println!(
            "m = {m}  domain [{:.2}, {:.2}]  N = {:?}  ({:.1?})",
            grid.x_min,
            grid.x_max,
            s.level_points,
            t.elapsed()
        );
        for row in &cmp.rows {
            let l = row.numerical.expect("ladder level present");
            println!(
                "  ladder n = {}  E = {:>5}  numerical {:+.8} {:+.1e}i  |dE| = {:.1e}",
                row.label.n,
                row.label.energy,
                l.energy.re,
                l.energy.im,
                row.delta().unwrap_or(f64::NAN)
            );
        }
        for l in &cmp.extra {
            println!("  second series   E = {:+.8} {:+.1e}i", l.energy.re, l.energy.im);
        }
        println!("  max |Im E| over bound levels: {:.2e}", s.max_imag());
    }
    Ok(())
}
