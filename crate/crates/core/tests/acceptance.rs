//! Acceptance suite. Prints one PASS/FAIL line per criterion (with indented
//! detail lines) and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use potalg::algebra::{
    bound_state_labels, casimir_potential, default_samples, energy_closed_form, make_algebra_functions,
    rest1_residuals, rest2_residual,
};
use potalg::potentials::{potential_conventional, potential_rational, potential_total, validate_params};
use potalg::spectral::{compare_with_ladder, converge_spectrum, GridSpec, LadderComparison, Spectrum};
use potalg::susy::{energy_from_remainders, shape_invariance_residual};
use potalg::{Family, PotentialParams};

const SAMPLES: usize = 200;
const BASE_N: usize = 1000;
const LEVELS: usize = 3;

const TOL_LADDER: f64 = 1e-4;
const RUNTIME_BUDGET_S: f64 = 30.0;
const TOL_IMAG: f64 = 1e-6;
const TOL_REST1: f64 = 1e-10;
const TOL_REST2: f64 = 1e-9;
const TOL_GAP: f64 = 1e-9;
const TOL_ISO: f64 = 5e-5;
const TOL_SI: f64 = 1e-8;
const ORDER_RANGE: (f64, f64) = (1.7, 2.3);

/// Regular extension parameters for every m in 0..=3.
const GPT_B: f64 = 7.0;
const GPT_K: f64 = 3.5;
const SCARF_B: f64 = 2.0;
const SCARF_K: f64 = 2.5;

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            pass: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.pass &= ok;
        self.details
            .push(format!("{} {detail}", if ok { "ok  " } else { "FAIL" }));
    }

    fn info(&mut self, detail: String) {
        self.details.push(format!("info {detail}"));
    }
}

fn params(family: Family, b: f64, k: f64, m: u32) -> PotentialParams {
    PotentialParams::new(family, b, k, m).expect("valid acceptance parameters")
}

fn extended_sets() -> Vec<PotentialParams> {
    let mut v = Vec::new();
    for m in 0..=3 {
        v.push(params(Family::Gpt, GPT_B, GPT_K, m));
        v.push(params(Family::ScarfII, SCARF_B, SCARF_K, m));
    }
    v
}

fn spectrum(p: &PotentialParams, grid: GridSpec) -> Spectrum {
    converge_spectrum(p, &grid, LEVELS).expect("converged spectrum")
}

fn ladder(s: &Spectrum) -> LadderComparison {
    compare_with_ladder(s, &bound_state_labels(&s.params))
}

fn gpt_ladder_spectrum() -> Outcome {
    let mut out = Outcome::new();
    let p = params(Family::Gpt, 5.0, 3.5, 1);
    let t = Instant::now();
    let s = spectrum(&p, GridSpec::new(0.01, 25.0, BASE_N).unwrap());
    let elapsed = t.elapsed().as_secs_f64();
    let e = s.bound_energies();
    let want = [0.0, 5.0, 8.0];
    out.check(
        e.len() == want.len(),
        format!("bound level count {} (expected 3)", e.len()),
    );
    for (got, w) in e.iter().zip(want) {
        out.check(
            (got - w).abs() <= TOL_LADDER,
            format!("E = {got:.9} vs {w} (|dE| = {:.2e})", (got - w).abs()),
        );
    }
    out.check(
        elapsed <= RUNTIME_BUDGET_S,
        format!("runtime {elapsed:.2} s (budget {RUNTIME_BUDGET_S} s)"),
    );
    out
}

fn scarf_reality() -> Outcome {
    let mut out = Outcome::new();
    let p = params(Family::ScarfII, 2.0, 2.5, 1);
    let s = spectrum(&p, GridSpec::new(-15.0, 15.0, BASE_N).unwrap());
    let all: Vec<Complex64> = s.bound.iter().map(|l| l.energy).collect();
    let max_imag = all.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    out.check(
        max_imag <= TOL_IMAG,
        format!("max |Im E| over {} bound levels = {max_imag:.2e}", all.len()),
    );
    let re: Vec<String> = all.iter().map(|z| format!("{:.6}", z.re)).collect();
    let want = [0.0, 3.0];
    let exact_set = all.len() == want.len() && all.iter().zip(want).all(|(z, w)| (z.re - w).abs() <= TOL_LADDER);
    out.check(exact_set, format!("bound set Re E = [{}] vs {{0, 3}}", re.join(", ")));
    let cmp = ladder(&s);
    let ladder_ok = cmp.max_delta().is_some_and(|d| d <= TOL_LADDER);
    out.info(format!(
        "ladder levels {{0, 3}} present: {ladder_ok} (max |dE| = {:.2e}); {} further real level(s) from the second quasi-parity series",
        cmp.max_delta().unwrap_or(f64::NAN),
        cmp.extra.len()
    ));
    out
}

fn algebra_constraints() -> Outcome {
    let mut out = Outcome::new();
    for p in extended_sets() {
        let xs = default_samples(p.family, SAMPLES);
        let af = make_algebra_functions(&p).unwrap();
        let (rf, rg) = rest1_residuals(&af, &xs).unwrap();
        let r2 = rest2_residual(&af, p.k, &xs).unwrap();
        let ok = rf.max <= TOL_REST1 && rg.max <= TOL_REST1 && r2.max <= TOL_REST2;
        out.check(
            ok,
            format!(
                "{} B={} k={} m={}: rest1 F {:.1e}, rest1 G {:.1e}, rest2 {:.1e} (max at x = {:.3})",
                p.family, p.b, p.k, p.m, rf.max, rg.max, r2.max, r2.at
            ),
        );
    }
    out
}

fn casimir_assembly() -> Outcome {
    let mut out = Outcome::new();
    for family in [Family::Gpt, Family::ScarfII] {
        let (b, k) = match family {
            Family::Gpt => (5.0, 3.5),
            Family::ScarfII => (2.0, 2.5),
        };
        for m in 0..=1 {
            let p = params(family, b, k, m);
            let mut abs_gap = 0.0_f64;
            let mut rel_gap = 0.0_f64;
            for x in default_samples(family, SAMPLES) {
                let closed = potential_conventional(&p, x).unwrap() + potential_rational(&p, x).unwrap();
                let assembled = casimir_potential(&p, x).unwrap();
                let d = (closed - assembled).norm();
                abs_gap = abs_gap.max(d);
                rel_gap = rel_gap.max(d / assembled.norm().max(1.0));
            }
            out.check(
                rel_gap <= TOL_GAP,
                format!("{family} m={m}: max gap {rel_gap:.2e} relative to max(1, |V|) (absolute {abs_gap:.2e})"),
            );
        }
    }
    out
}

fn isospectrality() -> Outcome {
    let mut out = Outcome::new();
    for (family, b, k, grid) in [
        (Family::Gpt, GPT_B, GPT_K, GridSpec::new(0.01, 25.0, BASE_N).unwrap()),
        (
            Family::ScarfII,
            SCARF_B,
            SCARF_K,
            GridSpec::new(-15.0, 15.0, BASE_N).unwrap(),
        ),
    ] {
        let reference = ladder(&spectrum(&params(family, b, k, 0), grid));
        for m in 1..=3 {
            let cmp = ladder(&spectrum(&params(family, b, k, m), grid));
            let mut worst: Option<f64> = Some(0.0);
            for (r0, rm) in reference.rows.iter().zip(&cmp.rows) {
                worst = match (worst, r0.numerical, rm.numerical) {
                    (Some(w), Some(a), Some(c)) => Some(w.max((a.energy - c.energy).norm())),
                    _ => None,
                };
            }
            let ok = worst.is_some_and(|w| w <= TOL_ISO);
            out.check(
                ok,
                format!(
                    "{family} B={b} k={k} m={m}: max_n |E_n(m) - E_n(0)| = {:.2e} over {} ladder levels",
                    worst.unwrap_or(f64::NAN),
                    cmp.rows.len()
                ),
            );
            if !cmp.extra.is_empty() || !reference.extra.is_empty() {
                let fmt = |c: &LadderComparison| {
                    c.extra
                        .iter()
                        .map(|l| format!("{:.4}", l.energy.re))
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                out.info(format!(
                    "{family} m={m}: second-series levels [{}] vs [{}] at m=0 are not isospectral",
                    fmt(&cmp),
                    fmt(&reference)
                ));
            }
        }
    }
    out
}

fn shape_invariance() -> Outcome {
    let mut out = Outcome::new();
    let mut sets = vec![params(Family::Gpt, 6.0, 3.5, 0), params(Family::Gpt, 6.0, 3.5, 1)];
    sets.extend(extended_sets());
    for p in sets {
        if !validate_params(&p).warnings.iter().all(|w| !w.contains("k+1/2")) {
            out.info(format!(
                "{} B={} m={}: skipped, U(x, k+1/2) singular",
                p.family, p.b, p.m
            ));
            continue;
        }
        let r = shape_invariance_residual(&p, p.a(), &default_samples(p.family, SAMPLES)).unwrap();
        let ok = r.relative_stddev() <= TOL_SI && r.remainder_error() <= TOL_SI;
        out.check(
            ok,
            format!(
                "{} B={} k={} m={}: R = {:.12} (expected {}), |Im R| = {:.1e}, stddev/|mean| = {:.1e}, pairing {}",
                p.family,
                p.b,
                p.k,
                p.m,
                r.r_mean,
                r.r_expected,
                r.r_mean_imag.abs(),
                r.relative_stddev(),
                r.sign_convention.name()
            ),
        );
    }
    let mut exact = true;
    for k in [1.7, 2.5, 3.5, 4.25, 7.5, 12.5] {
        for label in bound_state_labels(&params(Family::ScarfII, 1.0, k, 0)) {
            exact &= energy_from_remainders(k, label.n).unwrap() == energy_closed_form(k, label.n).unwrap();
        }
    }
    out.check(
        exact,
        "telescoped remainders equal the ladder energies exactly for k in {1.7, 2.5, 3.5, 4.25, 7.5, 12.5}".into(),
    );
    out
}

fn m0_reduction() -> Outcome {
    let mut out = Outcome::new();
    for (family, b, k, grid) in [
        (Family::Gpt, 5.0, 3.5, GridSpec::new(0.01, 25.0, BASE_N).unwrap()),
        (Family::ScarfII, 2.0, 2.5, GridSpec::new(-15.0, 15.0, BASE_N).unwrap()),
    ] {
        let p = params(family, b, k, 0);
        let xs = default_samples(family, SAMPLES);
        let zero = xs
            .iter()
            .all(|&x| potential_rational(&p, x).unwrap() == Complex64::new(0.0, 0.0));
        let same = xs
            .iter()
            .all(|&x| potential_total(&p, x).unwrap() == potential_conventional(&p, x).unwrap());
        out.check(
            zero && same,
            format!("{family}: rational part identically zero on {SAMPLES} points"),
        );
        let s = spectrum(&p, grid);
        let cmp = ladder(&s);
        let d = cmp.max_delta();
        out.check(
            d.is_some_and(|d| d <= TOL_LADDER) && s.max_imag() <= TOL_IMAG,
            format!(
                "{family}: conventional ladder {:?} reproduced, max |dE| = {:.2e}, max |Im E| = {:.1e}",
                bound_state_labels(&p).iter().map(|l| l.energy).collect::<Vec<_>>(),
                d.unwrap_or(f64::NAN),
                s.max_imag()
            ),
        );
    }
    out
}

fn solver_order() -> Outcome {
    let mut out = Outcome::new();
    for m in [0, 1] {
        let p = params(Family::Gpt, 5.0, 3.5, m);
        let s = spectrum(&p, GridSpec::new(0.01, 25.0, BASE_N).unwrap());
        let order = s.bound[0].observed_order.unwrap_or(f64::NAN);
        out.check(
            (ORDER_RANGE.0..=ORDER_RANGE.1).contains(&order),
            format!(
                "GPT B=5 k=3.5 m={m}: ground-state order {order:.4} over N = {:?}",
                s.level_points
            ),
        );
    }
    out
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 GPT closed-form spectrum {0, 5, 8}", gpt_ladder_spectrum),
        ("2 Scarf-II PT reality and bound set {0, 3}", scarf_reality),
        ("3 algebra constraint residuals, m = 0..3", algebra_constraints),
        ("4 Casimir assembly vs closed forms, m = 0, 1", casimir_assembly),
        ("5 isospectrality across m = 1..3", isospectrality),
        ("6 shape-invariance closure", shape_invariance),
        ("7 m = 0 reduction", m0_reduction),
        ("8 solver order of accuracy", solver_order),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let o = run();
        println!(
            "criterion {name}: {} ({:.1} s)",
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
        for d in &o.details {
            println!("    {d}");
        }
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
