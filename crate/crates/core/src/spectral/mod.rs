//! Finite-difference verification of the bound spectrum.
//!
//! `-ψ'' + V(x)ψ = Eψ` is discretized with the three-point stencil on the
//! grid `x_i = x_min + i·h`, `i = 0..N`, with `ψ = 0` one step beyond each end.
//! GPT produces a real symmetric matrix; Scarf-II a complex-symmetric one.

pub mod hessenberg;
pub mod tridiag;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{BoundState, Family, PotentialParams, GPT_X_FLOOR};
use crate::error::{Error, Result};
use crate::potentials::potential_total;
use hessenberg::Hessenberg;
use tridiag::QlFailure;

/// Default bound on `|Im E|` for a level to count as real.
pub const REALITY_TOL: f64 = 1e-6;
/// Bound states must sit below threshold by this many refinement errors.
pub const EDGE_MARGIN_FACTOR: f64 = 10.0;
/// Required `|V(edge) - threshold|` at free truncation edges.
pub const TAIL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        let g = Self { x_min, x_max, n_points };
        g.check()?;
        Ok(g)
    }

    /// `[0.01, 25]` for GPT, `[-15, 15]` for Scarf-II.
    pub fn default_for(family: Family, n_points: usize) -> Self {
        let (x_min, x_max) = match family {
            Family::Gpt => (0.01, 25.0),
            Family::ScarfII => (-15.0, 15.0),
        };
        Self { x_min, x_max, n_points }
    }

    pub fn check(&self) -> Result<()> {
        if !self.x_min.is_finite() || !self.x_max.is_finite() {
            return Err(Error::InvalidGrid("non-finite bounds".into()));
        }
        if self.x_min >= self.x_max {
            return Err(Error::InvalidGrid(format!(
                "x_min ({}) must be below x_max ({})",
                self.x_min, self.x_max
            )));
        }
        if self.n_points < 16 {
            return Err(Error::InvalidGrid(format!(
                "at least 16 points required (got {})",
                self.n_points
            )));
        }
        Ok(())
    }

    pub fn check_for(&self, family: Family) -> Result<()> {
        self.check()?;
        if family == Family::Gpt && self.x_min < GPT_X_FLOOR {
            return Err(Error::Domain {
                family,
                x: self.x_min,
                reason: "the grid touches the x = 0 singularity",
            });
        }
        Ok(())
    }

    pub fn h(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.h();
        (0..self.n_points).map(move |i| self.x_min + i as f64 * h)
    }

    pub fn refined(&self, factor: usize) -> Self {
        Self {
            n_points: self.n_points * factor,
            ..*self
        }
    }
}

/// `-d²/dx² + V` on a grid: `diagonal[i] = 2/h² + V(x_i)`, constant
/// off-diagonal `-1/h²` in both directions.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub diagonal: Vec<Complex64>,
    pub off_diagonal: f64,
    pub h: f64,
}

impl TridiagonalOperator {
    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// Operator with an arbitrary potential callback.
    pub fn from_potential<F>(grid: &GridSpec, mut v: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<Complex64>,
    {
        grid.check()?;
        let h = grid.h();
        let kinetic = 2.0 / (h * h);
        let diagonal = grid
            .points()
            .map(|x| v(x).map(|vx| vx + kinetic))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            diagonal,
            off_diagonal: -1.0 / (h * h),
            h,
        })
    }

    /// Raw matrix with given diagonal and coupling, e.g. for testing engines.
    pub fn from_parts(diagonal: Vec<Complex64>, off_diagonal: f64) -> Self {
        Self {
            diagonal,
            off_diagonal,
            h: (-1.0 / off_diagonal).sqrt(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.first_complex().is_none()
    }

    fn first_complex(&self) -> Option<usize> {
        self.diagonal
            .iter()
            .position(|d| d.im.abs() > 1e-12 * (1.0 + d.re.abs()))
    }
}

pub fn discretize(p: &PotentialParams, g: &GridSpec) -> Result<TridiagonalOperator> {
    g.check_for(p.family)?;
    TridiagonalOperator::from_potential(g, |x| potential_total(p, x))
}

/// All eigenvalues of a real operator, ascending.
pub fn eigen_real_tridiagonal(op: &TridiagonalOperator) -> Result<Vec<f64>> {
    if let Some(index) = op.first_complex() {
        return Err(Error::ComplexDiagonal { index });
    }
    let mut d: Vec<f64> = op.diagonal.iter().map(|z| z.re).collect();
    let mut e = vec![op.off_diagonal; d.len()];
    tridiag::ql_real(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// All eigenvalues of a (possibly non-Hermitian) operator, sorted by real part.
///
/// Complex-symmetric QL first; if a rotation breaks down the dense unitary
/// Hessenberg QR takes over.
pub fn eigen_complex_tridiagonal(op: &TridiagonalOperator) -> Result<Vec<Complex64>> {
    let mut d = op.diagonal.clone();
    let mut e = vec![Complex64::new(op.off_diagonal, 0.0); d.len()];
    let mut out = match tridiag::ql_complex_symmetric(&mut d, &mut e) {
        Ok(()) => d,
        Err(QlFailure::NoConvergence { block }) => return Err(Error::NoConvergence { block }),
        Err(QlFailure::Breakdown(_)) => return eigen_complex_hessenberg(op),
    };
    sort_by_real(&mut out);
    Ok(out)
}

/// Same spectrum through unitary shifted QR on the dense Hessenberg form.
pub fn eigen_complex_hessenberg(op: &TridiagonalOperator) -> Result<Vec<Complex64>> {
    let n = op.dim();
    let off = vec![Complex64::new(op.off_diagonal, 0.0); n.saturating_sub(1)];
    let mut out = Hessenberg::from_tridiagonal(&op.diagonal, &off, &off).eigenvalues()?;
    sort_by_real(&mut out);
    Ok(out)
}

fn sort_by_real(v: &mut [Complex64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Eigenvalues of `p`'s discretization through the family's engine.
pub fn solve(p: &PotentialParams, g: &GridSpec) -> Result<Vec<Complex64>> {
    let op = discretize(p, g)?;
    solve_operator(p.family, &op)
}

fn solve_operator(family: Family, op: &TridiagonalOperator) -> Result<Vec<Complex64>> {
    match family {
        Family::Gpt => Ok(eigen_real_tridiagonal(op)?
            .into_iter()
            .map(|e| Complex64::new(e, 0.0))
            .collect()),
        Family::ScarfII => eigen_complex_tridiagonal(op),
    }
}

/// Eigenvalues strictly below the continuum threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSelection {
    pub energies: Vec<Complex64>,
    /// Retained levels with `|Im E| >= reality_tol`.
    pub reality_violations: Vec<Complex64>,
    pub threshold: f64,
}

pub fn bound_states_from_spectrum(eigs: &[Complex64], p: &PotentialParams, reality_tol: f64) -> BoundSelection {
    select_below(eigs, p.threshold(), reality_tol)
}

fn select_below(eigs: &[Complex64], threshold: f64, reality_tol: f64) -> BoundSelection {
    let mut energies: Vec<Complex64> = eigs.iter().copied().filter(|e| e.re < threshold).collect();
    sort_by_real(&mut energies);
    let reality_violations = energies.iter().copied().filter(|e| e.im.abs() >= reality_tol).collect();
    BoundSelection {
        energies,
        reality_violations,
        threshold,
    }
}

/// One bound level followed across refinement levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelEstimate {
    /// Richardson-extrapolated value from the two finest grids.
    pub energy: Complex64,
    pub finest: Complex64,
    /// `|E(finest) - E(previous)|`.
    pub refinement_error: f64,
    /// Empirical order from the three finest grids, when available.
    pub observed_order: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    pub params: PotentialParams,
    pub grid: GridSpec,
    pub level_points: Vec<usize>,
    /// Full finest-grid spectrum, sorted by real part.
    pub energies: Vec<Complex64>,
    pub bound: Vec<LevelEstimate>,
    pub threshold: f64,
    /// Levels too close to threshold to classify (within the edge margin).
    pub edge_ties: Vec<LevelEstimate>,
    pub reality_violations: Vec<Complex64>,
}

impl Spectrum {
    pub fn bound_energies(&self) -> Vec<f64> {
        self.bound.iter().map(|l| l.energy.re).collect()
    }

    pub fn refinement_error(&self) -> Vec<f64> {
        self.bound.iter().map(|l| l.refinement_error).collect()
    }

    pub fn max_imag(&self) -> f64 {
        self.bound
            .iter()
            .map(|l| l.energy.im.abs().max(l.finest.im.abs()))
            .fold(0.0, f64::max)
    }
}

/// Solves at `N, 2N, 4N, …` points and Richardson-extrapolates each bound
/// level assuming an `O(h²)` stencil error.
pub fn converge_spectrum(p: &PotentialParams, base: &GridSpec, levels: usize) -> Result<Spectrum> {
    base.check_for(p.family)?;
    let c = converge_levels(p.family, p.threshold(), base, levels, |x| potential_total(p, x))?;
    Ok(Spectrum {
        params: *p,
        grid: *base,
        level_points: c.level_points,
        energies: c.energies,
        bound: c.bound,
        threshold: p.threshold(),
        edge_ties: c.edge_ties,
        reality_violations: c.reality_violations,
    })
}

/// Refinement study of an arbitrary potential.
#[derive(Debug, Clone)]
pub struct Converged {
    pub level_points: Vec<usize>,
    pub energies: Vec<Complex64>,
    pub bound: Vec<LevelEstimate>,
    pub edge_ties: Vec<LevelEstimate>,
    pub reality_violations: Vec<Complex64>,
}

impl Converged {
    pub fn bound_energies(&self) -> Vec<f64> {
        self.bound.iter().map(|l| l.energy.re).collect()
    }
}

/// [`converge_spectrum`] for any potential `v` with continuum `threshold`.
/// `family` selects the eigen engine.
pub fn converge_levels<V>(family: Family, threshold: f64, base: &GridSpec, levels: usize, v: V) -> Result<Converged>
where
    V: Fn(f64) -> Result<Complex64> + Sync,
{
    if levels < 2 {
        return Err(Error::Usage(format!(
            "at least 2 refinement levels required (got {levels})"
        )));
    }
    base.check()?;
    let grids: Vec<GridSpec> = (0..levels).map(|i| base.refined(1 << i)).collect();
    let solved: Vec<Vec<Complex64>> = grids
        .par_iter()
        .map(|g| {
            let op = TridiagonalOperator::from_potential(g, &v)?;
            solve_operator(family, &op)
        })
        .collect::<Result<Vec<_>>>()?;

    let selections: Vec<BoundSelection> = solved.iter().map(|e| select_below(e, threshold, REALITY_TOL)).collect();
    let counts: Vec<usize> = selections.iter().map(|s| s.energies.len()).collect();
    if counts.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::CountMismatch { counts });
    }

    let last = levels - 1;
    let (h1, h2) = (grids[last - 1].h(), grids[last].h());
    let mut bound = Vec::new();
    let mut edge_ties = Vec::new();
    for j in 0..counts[0] {
        let series: Vec<Complex64> = selections.iter().map(|s| s.energies[j]).collect();
        let (e1, e2) = (series[last - 1], series[last]);
        let energy = (e2 * (h1 * h1) - e1 * (h2 * h2)) / (h1 * h1 - h2 * h2);
        let refinement_error = (e2 - e1).norm();
        let observed_order = (levels >= 3).then(|| {
            let e0 = series[last - 2];
            ((e0 - e1).norm() / (e1 - e2).norm()).ln() / (h1 / h2).ln()
        });
        let est = LevelEstimate {
            energy,
            finest: e2,
            refinement_error,
            observed_order,
        };
        if energy.re < threshold - EDGE_MARGIN_FACTOR * refinement_error {
            bound.push(est);
        } else {
            edge_ties.push(est);
        }
    }
    let reality_violations = bound
        .iter()
        .map(|l| l.energy)
        .filter(|e| e.im.abs() >= REALITY_TOL)
        .collect();
    Ok(Converged {
        level_points: grids.iter().map(|g| g.n_points).collect(),
        energies: solved.into_iter().last().expect("levels >= 2"),
        bound,
        edge_ties,
        reality_violations,
    })
}

/// A closed-form ladder rung paired with its nearest numerical level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderRow {
    pub label: BoundState,
    pub numerical: Option<LevelEstimate>,
}

impl LadderRow {
    pub fn delta(&self) -> Option<f64> {
        self.numerical.map(|l| (l.energy.re - self.label.energy).abs())
    }
}

#[derive(Debug, Clone)]
pub struct LadderComparison {
    pub rows: Vec<LadderRow>,
    /// Numerical bound levels not claimed by any rung.
    pub extra: Vec<LevelEstimate>,
}

impl LadderComparison {
    pub fn max_delta(&self) -> Option<f64> {
        self.rows
            .iter()
            .map(|r| r.delta())
            .try_fold(0.0_f64, |acc, d| d.map(|d| acc.max(d)))
    }
}

/// Greedy nearest-energy assignment of numerical levels to ladder rungs.
pub fn compare_with_ladder(spec: &Spectrum, labels: &[BoundState]) -> LadderComparison {
    let mut free: Vec<Option<LevelEstimate>> = spec.bound.iter().copied().map(Some).collect();
    let rows = labels
        .iter()
        .map(|label| {
            let best = free
                .iter()
                .enumerate()
                .filter_map(|(i, l)| l.map(|l| (i, (l.energy.re - label.energy).abs())))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            let numerical = best.and_then(|(i, _)| free[i].take());
            LadderRow {
                label: *label,
                numerical,
            }
        })
        .collect();
    LadderComparison {
        rows,
        extra: free.into_iter().flatten().collect(),
    }
}

/// `max_n |E_n(a) - E_n(b)|` over rungs present in both comparisons.
pub fn ladder_deviation(a: &LadderComparison, b: &LadderComparison) -> Option<f64> {
    let mut worst: Option<f64> = None;
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        let (Some(la), Some(lb)) = (ra.numerical, rb.numerical) else {
            return None;
        };
        let d = (la.energy - lb.energy).norm();
        worst = Some(worst.map_or(d, |w: f64| w.max(d)));
    }
    worst
}

/// Largest `|V(edge) - threshold|` over the free truncation edges (the right
/// edge for GPT, both edges for Scarf-II).
pub fn tail_gap(p: &PotentialParams, g: &GridSpec) -> Result<f64> {
    let thr = Complex64::new(p.threshold(), 0.0);
    let right = (potential_total(p, g.x_max)? - thr).norm();
    Ok(match p.family {
        Family::Gpt => right,
        Family::ScarfII => right.max((potential_total(p, g.x_min)? - thr).norm()),
    })
}

/// Extends the free edges by 25% steps, keeping `h`, until the tail
/// criterion holds or `max_steps` is reached.
pub fn widen_for_tail(p: &PotentialParams, g: &GridSpec, max_steps: usize) -> Result<(GridSpec, bool)> {
    let h = g.h();
    let mut cur = *g;
    for _ in 0..=max_steps {
        if tail_gap(p, &cur)? < TAIL_TOL {
            return Ok((cur, true));
        }
        let width = cur.x_max - cur.x_min;
        let grow = 0.25 * width;
        let (x_min, x_max) = match p.family {
            Family::Gpt => (cur.x_min, cur.x_max + grow),
            Family::ScarfII => (cur.x_min - 0.5 * grow, cur.x_max + 0.5 * grow),
        };
        let n_points = ((x_max - x_min) / h).round() as usize + 1;
        cur = GridSpec { x_min, x_max, n_points };
    }
    Ok((cur, tail_gap(p, &cur)? < TAIL_TOL))
}
