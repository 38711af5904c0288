//! Grid discretization and spectra of the partner Hamiltonians
//! `h_minus/h_plus = (1/2)p^2 + (1/2)V(x)^2 -/+ (1/2)V'(x)`.
//!
//! The two operators are the blocks of the quantized fermion algebra
//! `{psic, psi} = 1` on its two-dimensional representation, where
//! `[psic, psi]` takes the values `-1` (minus sector) and `+1` (plus
//! sector). The minus sector carries the candidate zero mode
//! `exp(-int_0^x V)`.
//!
//! Discretization is second-order central differences with Dirichlet
//! boundaries just outside the grid, so the matrix is symmetric tridiagonal
//! by construction. Eigenvalues come from Sturm-sequence bisection (one
//! independent bisection per eigenvalue index, deterministic and
//! parallelizable), eigenvectors from inverse iteration with a pivoted
//! tridiagonal solve.
//!
//! [`pairing_report`] reports eigenvalues extrapolated from the grid and its
//! 2x refinement (the leading O(h^2) truncation error cancels); the raw
//! single-grid eigenvalues stay in the report, and the pairing residuals are
//! computed from them so their O(h^2) shrinkage under refinement remains
//! observable.

use crate::par;
use crate::poly::RationalPoly;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("matrix is not symmetric at ({0},{1})")]
    NonSymmetric(usize, usize),
    #[error("requested {k} eigenvalues from a size-{n} operator")]
    TooManyEigenvalues { k: usize, n: usize },
    #[error("closed-form ground state is non-normalizable: {0}")]
    NonNormalizable(String),
}

/// Uniform grid on `[x_min, x_max]` with `n_points` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Grid, SpectraError> {
        if !(x_min.is_finite() && x_max.is_finite()) {
            return Err(SpectraError::InvalidGrid("bounds must be finite".into()));
        }
        if x_min >= x_max {
            return Err(SpectraError::InvalidGrid(format!(
                "x_min {x_min} must be below x_max {x_max}"
            )));
        }
        if n_points < 3 {
            return Err(SpectraError::InvalidGrid(format!(
                "need at least 3 points, got {n_points}"
            )));
        }
        Ok(Grid {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn h(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + self.h() * i as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.point(i)).collect()
    }

    /// Same interval with doubled resolution (every cell split once).
    pub fn refined(&self) -> Grid {
        Grid {
            x_min: self.x_min,
            x_max: self.x_max,
            n_points: 2 * self.n_points - 1,
        }
    }
}

/// Symmetric tridiagonal operator; `off.len() == diag.len() - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Gershgorin bounds enclosing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.n();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0usize;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.n() {
            if q == 0.0 {
                q = 1e-300;
            }
            q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k` smallest eigenvalues, ascending, each bisected independently.
    pub fn smallest_eigenvalues(&self, k: usize) -> Result<Vec<f64>, SpectraError> {
        let n = self.n();
        if k > n {
            return Err(SpectraError::TooManyEigenvalues { k, n });
        }
        let (glo, ghi) = self.gershgorin();
        let vals = par::map_indices(k, |j| {
            let mut lo = glo;
            let mut hi = ghi;
            for _ in 0..128 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if self.count_below(mid) >= j + 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        });
        Ok(vals)
    }

    /// Inverse-iteration eigenvector for an eigenvalue estimate, normalized
    /// to unit Euclidean length with a deterministic sign convention.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.n();
        let mut v = vec![1.0 / (n as f64).sqrt(); n];
        for _ in 0..4 {
            v = self.solve_shifted(lambda, &v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !norm.is_finite() || norm == 0.0 {
                break;
            }
            for x in v.iter_mut() {
                *x /= norm;
            }
        }
        let mut pivot = 0usize;
        for (i, x) in v.iter().enumerate() {
            if x.abs() > v[pivot].abs() {
                pivot = i;
            }
        }
        if v[pivot] < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
        v
    }

    /// Solve `(T - lambda I) y = rhs` by LU with partial pivoting on the
    /// three bands (row swaps introduce one fill-in band).
    fn solve_shifted(&self, lambda: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.n();
        // Nudge an exactly singular shift off by an ulp-scale amount.
        let scale = self.diag.iter().map(|d| d.abs()).fold(1.0f64, f64::max);
        let shift = lambda + scale * 1e-15;
        // Row r holds (d[r], upper[r], fill[r]) at columns r, r+1, r+2 once
        // column r-1 is eliminated; low[i] is row i+1's entry at column i.
        let mut d: Vec<f64> = self.diag.iter().map(|x| x - shift).collect();
        let mut upper: Vec<f64> = self.off.clone();
        let mut fill = vec![0.0; n.saturating_sub(2)];
        let mut low = self.off.clone();
        let mut y: Vec<f64> = rhs.to_vec();
        for i in 0..n - 1 {
            if low[i].abs() > d[i].abs() {
                // Swap rows i and i+1 column by column.
                let (old_d, old_upper) = (d[i], upper[i]);
                d[i] = low[i];
                upper[i] = d[i + 1];
                low[i] = old_d;
                d[i + 1] = old_upper;
                if i + 2 < n {
                    let old_fill = fill[i];
                    fill[i] = upper[i + 1];
                    upper[i + 1] = old_fill;
                }
                y.swap(i, i + 1);
            }
            let pivot = if d[i] != 0.0 { d[i] } else { 1e-300 };
            let m = low[i] / pivot;
            d[i + 1] -= m * upper[i];
            if i + 2 < n {
                upper[i + 1] -= m * fill[i];
            }
            y[i + 1] -= m * y[i];
        }
        // Back substitution over (d, upper, fill).
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut acc = y[i];
            if i + 1 < n {
                acc -= upper[i] * x[i + 1];
            }
            if i + 2 < n {
                acc -= fill[i] * x[i + 2];
            }
            let pivot = if d[i] != 0.0 { d[i] } else { 1e-300 };
            x[i] = acc / pivot;
        }
        x
    }
}

/// The two fermion-sector operators on a grid.
#[derive(Clone, Debug)]
pub struct PartnerHamiltonians {
    pub grid: Grid,
    pub h_minus: SymTridiag,
    pub h_plus: SymTridiag,
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Assemble both sector Hamiltonians. `V'` comes from formal differentiation
/// of the polynomial, never from finite differences.
pub fn discretize(v: &RationalPoly, grid: &Grid) -> PartnerHamiltonians {
    let h = grid.h();
    let inv_h2 = 1.0 / (h * h);
    let vc = v.to_f64_coeffs();
    let vpc = v.derivative().to_f64_coeffs();
    let n = grid.n_points;
    let mut diag_minus = Vec::with_capacity(n);
    let mut diag_plus = Vec::with_capacity(n);
    for i in 0..n {
        let x = grid.point(i);
        let vx = horner(&vc, x);
        let vpx = horner(&vpc, x);
        let base = inv_h2 + 0.5 * vx * vx;
        diag_minus.push(base - 0.5 * vpx);
        diag_plus.push(base + 0.5 * vpx);
    }
    let off = vec![-0.5 * inv_h2; n - 1];
    PartnerHamiltonians {
        grid: *grid,
        h_minus: SymTridiag {
            diag: diag_minus,
            off: off.clone(),
        },
        h_plus: SymTridiag {
            diag: diag_plus,
            off,
        },
    }
}

/// `k` smallest eigenvalues of a dense symmetric matrix, ascending.
/// Symmetry must hold bitwise; the reduction is Householder tridiagonal
/// followed by the same deterministic bisection as the grid path.
pub fn eigen_spectrum(matrix: &[Vec<f64>], k: usize) -> Result<Vec<f64>, SpectraError> {
    let n = matrix.len();
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(SpectraError::NonSymmetric(i, row.len().min(n)));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if matrix[i][j] != matrix[j][i] {
                return Err(SpectraError::NonSymmetric(i, j));
            }
        }
    }
    if n == 0 || k > n {
        return Err(SpectraError::TooManyEigenvalues { k, n });
    }
    householder_tridiagonalize(matrix).smallest_eigenvalues(k)
}

fn householder_tridiagonalize(matrix: &[Vec<f64>]) -> SymTridiag {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    for col in 0..n.saturating_sub(2) {
        let norm: f64 = (col + 1..n)
            .map(|i| a[i][col] * a[i][col])
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[col + 1][col] >= 0.0 { -norm } else { norm };
        let mut v = vec![0.0; n];
        v[col + 1] = a[col + 1][col] - alpha;
        for i in col + 2..n {
            v[i] = a[i][col];
        }
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // A <- (I - 2vv^T/|v|^2) A (I - 2vv^T/|v|^2)
        let w: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| a[i][j] * v[j]).sum::<f64>() * (2.0 / vnorm2))
            .collect();
        let vw: f64 = v.iter().zip(&w).map(|(x, y)| x * y).sum();
        for i in 0..n {
            for j in 0..n {
                a[i][j] += -v[i] * w[j] - w[i] * v[j] + (2.0 * vw / vnorm2) * v[i] * v[j];
            }
        }
    }
    SymTridiag {
        diag: (0..n).map(|i| a[i][i]).collect(),
        off: (0..n - 1).map(|i| a[i + 1][i]).collect(),
    }
}

/// How the two sector spectra were matched against each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingAssignment {
    /// Zero mode in the minus sector: `E+_n` pairs with `E-_{n+1}`.
    MinusShifted,
    /// Zero mode in the plus sector: `E-_n` pairs with `E+_{n+1}`.
    PlusShifted,
    /// No zero mode: spectra pair index to index.
    Aligned,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub grid: Grid,
    pub spacing: f64,
    /// Extrapolated eigenvalues (grid paired with its refinement).
    pub eigenvalues_minus: Vec<f64>,
    pub eigenvalues_plus: Vec<f64>,
    /// Bare single-grid eigenvalues carrying the O(h^2) truncation error.
    pub eigenvalues_minus_raw: Vec<f64>,
    pub eigenvalues_plus_raw: Vec<f64>,
    /// Partner residuals of the raw spectra under `pairing`.
    pub pair_residuals: Vec<f64>,
    pub pairing: PairingAssignment,
    pub witten_index: i64,
    pub zero_modes_minus: usize,
    pub zero_modes_plus: usize,
    pub tol_zero: f64,
    pub ground_state_energy: f64,
    pub ground_state_sector: String,
    pub ground_state_profile: Vec<f64>,
}

impl SpectrumReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,E_minus,E_plus,pair_residual\n");
        let k = self
            .eigenvalues_minus
            .len()
            .min(self.eigenvalues_plus.len());
        for n in 0..k {
            let residual = self
                .pair_residuals
                .get(n)
                .map_or(String::new(), |r| format!("{r:.12e}"));
            out.push_str(&format!(
                "{n},{:.12e},{:.12e},{residual}\n",
                self.eigenvalues_minus[n], self.eigenvalues_plus[n]
            ));
        }
        out
    }
}

fn richardson(raw: &[f64], fine: &[f64]) -> Vec<f64> {
    raw.iter()
        .zip(fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect()
}

/// Spectral pairing verification for one potential on one grid.
pub fn pairing_report(
    v: &RationalPoly,
    grid: &Grid,
    k: usize,
    tol_zero_override: Option<f64>,
) -> Result<SpectrumReport, SpectraError> {
    let pair = discretize(v, grid);
    let fine = discretize(v, &grid.refined());
    // One extra eigenvalue feeds the shifted pairing.
    let k_ext = k + 1;
    let minus_raw = pair.h_minus.smallest_eigenvalues(k_ext)?;
    let plus_raw = pair.h_plus.smallest_eigenvalues(k_ext)?;
    let minus_fine = fine.h_minus.smallest_eigenvalues(k_ext)?;
    let plus_fine = fine.h_plus.smallest_eigenvalues(k_ext)?;
    let minus = richardson(&minus_raw, &minus_fine);
    let plus = richardson(&plus_raw, &plus_fine);

    let h = grid.h();
    let gap = (minus_raw[1] - minus_raw[0]).max(plus_raw[1] - plus_raw[0]);
    let tol_zero = tol_zero_override.unwrap_or(10.0 * gap.max(1e-12) * h * h);
    let zero_modes_minus = minus_raw.iter().take(k).filter(|e| e.abs() < tol_zero).count();
    let zero_modes_plus = plus_raw.iter().take(k).filter(|e| e.abs() < tol_zero).count();
    let witten_index = zero_modes_minus as i64 - zero_modes_plus as i64;

    let pairing = if zero_modes_minus > 0 && zero_modes_plus == 0 {
        PairingAssignment::MinusShifted
    } else if zero_modes_plus > 0 && zero_modes_minus == 0 {
        PairingAssignment::PlusShifted
    } else {
        PairingAssignment::Aligned
    };
    let pair_residuals: Vec<f64> = (0..k)
        .map(|n| match pairing {
            PairingAssignment::MinusShifted => (plus_raw[n] - minus_raw[n + 1]).abs(),
            PairingAssignment::PlusShifted => (minus_raw[n] - plus_raw[n + 1]).abs(),
            PairingAssignment::Aligned => (minus_raw[n] - plus_raw[n]).abs(),
        })
        .collect();

    let (sector, sector_name) = if minus_raw[0] <= plus_raw[0] {
        (&pair.h_minus, "minus")
    } else {
        (&pair.h_plus, "plus")
    };
    let ground_raw = minus_raw[0].min(plus_raw[0]);
    let ground_state_profile = sector.eigenvector(ground_raw);
    let ground_state_energy = minus[0].min(plus[0]);

    Ok(SpectrumReport {
        grid: *grid,
        spacing: h,
        eigenvalues_minus: minus[..k].to_vec(),
        eigenvalues_plus: plus[..k].to_vec(),
        eigenvalues_minus_raw: minus_raw[..k].to_vec(),
        eigenvalues_plus_raw: plus_raw[..k].to_vec(),
        pair_residuals,
        pairing,
        witten_index,
        zero_modes_minus,
        zero_modes_plus,
        tol_zero,
        ground_state_energy,
        ground_state_sector: sector_name.to_string(),
        ground_state_profile,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GroundStateReport {
    pub energy: f64,
    pub max_deviation: f64,
}

/// Compare the numerical minus-sector ground state against the closed form
/// `exp(-int_0^x V)`, both grid-normalized.
pub fn ground_state_check(
    v: &RationalPoly,
    grid: &Grid,
) -> Result<GroundStateReport, SpectraError> {
    let normalizable = v.degree().is_some_and(|d| d % 2 == 1)
        && v.leading_coeff().is_some_and(|c| c > &num::BigRational::from_integer(0.into()));
    if !normalizable {
        return Err(SpectraError::NonNormalizable(format!(
            "int_0^x V with V = {v} does not grow at both ends"
        )));
    }
    let w = v.antiderivative();
    let wc = w.to_f64_coeffs();
    let points = grid.points();
    let w_vals: Vec<f64> = points.iter().map(|&x| horner(&wc, x)).collect();
    let w_min = w_vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut closed: Vec<f64> = w_vals.iter().map(|wv| (-(wv - w_min)).exp()).collect();
    let h = grid.h();
    let norm = (closed.iter().map(|c| c * c).sum::<f64>() * h).sqrt();
    for c in closed.iter_mut() {
        *c /= norm;
    }

    let pair = discretize(v, grid);
    let e0 = pair.h_minus.smallest_eigenvalues(1)?[0];
    let mut numeric = pair.h_minus.eigenvector(e0);
    let scale = 1.0 / h.sqrt();
    for x in numeric.iter_mut() {
        *x *= scale;
    }
    let dot: f64 = numeric.iter().zip(&closed).map(|(a, b)| a * b).sum();
    if dot < 0.0 {
        for x in numeric.iter_mut() {
            *x = -*x;
        }
    }
    let max_deviation = numeric
        .iter()
        .zip(&closed)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(GroundStateReport {
        energy: e0,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> RationalPoly {
        RationalPoly::from_integers(coeffs)
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(-1.0, 1.0, 3).is_ok());
        assert!(matches!(
            Grid::new(1.0, -1.0, 9),
            Err(SpectraError::InvalidGrid(_))
        ));
        assert!(matches!(
            Grid::new(-1.0, 1.0, 2),
            Err(SpectraError::InvalidGrid(_))
        ));
        let g = Grid::new(0.0, 1.0, 11).unwrap();
        assert!((g.h() - 0.1).abs() < 1e-15);
        assert_eq!(g.refined().n_points, 21);
        assert_eq!(g.refined().h(), g.h() / 2.0);
    }

    #[test]
    fn partner_diagonals_differ_by_v_prime() {
        let grid = Grid::new(-5.0, 5.0, 101).unwrap();
        let pair = discretize(&poly(&[0, 1]), &grid);
        assert_eq!(pair.h_minus.off, pair.h_plus.off);
        for i in 0..grid.n_points {
            let diff = pair.h_plus.diag[i] - pair.h_minus.diag[i];
            assert!((diff - 1.0).abs() < 1e-12, "V' = 1 everywhere");
        }
    }

    #[test]
    fn free_particle_matches_closed_form_eigenvalues() {
        // Dirichlet Laplacian eigenvalues: (1 - cos(j pi/(n+1)))/h^2.
        let grid = Grid::new(0.0, 1.0, 41).unwrap();
        let pair = discretize(&RationalPoly::zero(), &grid);
        let n = grid.n_points as f64;
        let h = grid.h();
        let got = pair.h_minus.smallest_eigenvalues(5).unwrap();
        for (j, e) in got.iter().enumerate() {
            let exact = (1.0 - ((j + 1) as f64 * std::f64::consts::PI / (n + 1.0)).cos())
                / (h * h);
            assert!(
                (e - exact).abs() < 1e-9 * exact.max(1.0),
                "mode {j}: {e} vs {exact}"
            );
        }
    }

    #[test]
    fn dense_path_and_errors() {
        let spectrum = eigen_spectrum(&[vec![2.0, 0.0], vec![0.0, 5.0]], 2).unwrap();
        assert!((spectrum[0] - 2.0).abs() < 1e-12);
        assert!((spectrum[1] - 5.0).abs() < 1e-12);
        assert!(matches!(
            eigen_spectrum(&[vec![0.0, 1.0], vec![0.5, 0.0]], 1),
            Err(SpectraError::NonSymmetric(0, 1))
        ));
        assert!(matches!(
            eigen_spectrum(&[vec![1.0]], 2),
            Err(SpectraError::TooManyEigenvalues { k: 2, n: 1 })
        ));
    }

    #[test]
    fn householder_reproduces_tridiagonal_spectrum() {
        // tridiag(2,1) of size 3 has eigenvalues 2 + sqrt2, 2, 2 - sqrt2;
        // feed it as dense plus a similarity-breaking full version.
        let dense = vec![
            vec![2.0, 1.0, 0.0],
            vec![1.0, 2.0, 1.0],
            vec![0.0, 1.0, 2.0],
        ];
        let got = eigen_spectrum(&dense, 3).unwrap();
        let s = 2.0f64.sqrt();
        for (g, e) in got.iter().zip([2.0 - s, 2.0, 2.0 + s]) {
            assert!((g - e).abs() < 1e-10);
        }
        // A genuinely dense symmetric matrix: eigenvalues of all-ones 3x3
        // are {0, 0, 3}.
        let ones = vec![vec![1.0; 3]; 3];
        let got = eigen_spectrum(&ones, 3).unwrap();
        assert!(got[0].abs() < 1e-10);
        assert!(got[1].abs() < 1e-10);
        assert!((got[2] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn harmonic_partner_spectra_and_pairing() {
        let grid = Grid::new(-10.0, 10.0, 801).unwrap();
        let report = pairing_report(&poly(&[0, 1]), &grid, 4, None).unwrap();
        for (n, e) in report.eigenvalues_minus.iter().enumerate() {
            assert!(
                (e - n as f64).abs() < 1e-6,
                "minus level {n}: {e}"
            );
        }
        for (n, e) in report.eigenvalues_plus.iter().enumerate() {
            assert!(
                (e - (n + 1) as f64).abs() < 1e-6,
                "plus level {n}: {e}"
            );
        }
        assert_eq!(report.pairing, PairingAssignment::MinusShifted);
        assert_eq!(report.witten_index, 1);
        assert_eq!(report.zero_modes_minus, 1);
        for r in &report.pair_residuals {
            assert!(*r < 1e-3, "raw residual {r}");
        }
        assert_eq!(report.ground_state_sector, "minus");
        assert!(report.ground_state_energy.abs() < 1e-6);
    }

    #[test]
    fn raw_residuals_shrink_four_fold_under_refinement() {
        let v = poly(&[0, 1]);
        let coarse = Grid::new(-10.0, 10.0, 501).unwrap();
        let fine = coarse.refined();
        let rc = pairing_report(&v, &coarse, 3, None).unwrap();
        let rf = pairing_report(&v, &fine, 3, None).unwrap();
        for (a, b) in rc.pair_residuals.iter().zip(&rf.pair_residuals) {
            let ratio = a / b;
            assert!(
                (3.0..5.0).contains(&ratio),
                "expected ~4x shrink, got {ratio} ({a} -> {b})"
            );
        }
    }

    #[test]
    fn broken_susy_pairs_aligned_with_zero_index() {
        let grid = Grid::new(-8.0, 8.0, 801).unwrap();
        let report = pairing_report(&poly(&[0, 0, 1]), &grid, 4, None).unwrap();
        assert_eq!(report.witten_index, 0);
        assert_eq!(report.pairing, PairingAssignment::Aligned);
        for r in &report.pair_residuals {
            assert!(*r < 1e-5, "aligned residual {r}");
        }
        assert!(report.eigenvalues_minus[0] > report.tol_zero);
    }

    #[test]
    fn constant_potential_sectors_identical() {
        let grid = Grid::new(-5.0, 5.0, 301).unwrap();
        let report = pairing_report(&poly(&[2]), &grid, 3, None).unwrap();
        assert_eq!(report.witten_index, 0);
        for (a, b) in report
            .eigenvalues_minus_raw
            .iter()
            .zip(&report.eigenvalues_plus_raw)
        {
            assert_eq!(a, b, "V' = 0 makes the sectors the same matrix");
        }
    }

    #[test]
    fn gaussian_ground_state_profile() {
        let grid = Grid::new(-10.0, 10.0, 801).unwrap();
        let report = ground_state_check(&poly(&[0, 1]), &grid).unwrap();
        assert!(report.energy.abs() < 1e-4);
        assert!(report.max_deviation < 1e-4, "{}", report.max_deviation);
    }

    #[test]
    fn quartic_ground_state_profile() {
        let grid = Grid::new(-6.0, 6.0, 1201).unwrap();
        let report = ground_state_check(&poly(&[0, 0, 0, 1]), &grid).unwrap();
        assert!(report.max_deviation < 1e-3, "{}", report.max_deviation);
    }

    #[test]
    fn even_degree_potential_is_non_normalizable() {
        let grid = Grid::new(-5.0, 5.0, 101).unwrap();
        assert!(matches!(
            ground_state_check(&poly(&[0, 0, 1]), &grid),
            Err(SpectraError::NonNormalizable(_))
        ));
        assert!(matches!(
            ground_state_check(&poly(&[0, -1]), &grid),
            Err(SpectraError::NonNormalizable(_))
        ));
    }

    #[test]
    fn reports_are_bitwise_deterministic() {
        let grid = Grid::new(-7.0, 7.0, 401).unwrap();
        let v = poly(&[1, 0, 1]);
        let a = pairing_report(&v, &grid, 4, None).unwrap();
        let b = pairing_report(&v, &grid, 4, None).unwrap();
        assert_eq!(a.eigenvalues_minus, b.eigenvalues_minus);
        assert_eq!(a.eigenvalues_plus_raw, b.eigenvalues_plus_raw);
        assert_eq!(a.ground_state_profile, b.ground_state_profile);
        assert_eq!(a.pair_residuals, b.pair_residuals);
    }

    #[test]
    fn csv_layout() {
        let grid = Grid::new(-6.0, 6.0, 201).unwrap();
        let report = pairing_report(&poly(&[0, 1]), &grid, 3, None).unwrap();
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,E_minus,E_plus,pair_residual"));
        assert_eq!(lines.count(), 3);
    }

    #[test]
    fn zero_tolerance_override_respected() {
        let grid = Grid::new(-10.0, 10.0, 401).unwrap();
        let report = pairing_report(&poly(&[0, 1]), &grid, 3, Some(1e-1)).unwrap();
        assert_eq!(report.tol_zero, 1e-1);
        assert_eq!(report.witten_index, 1);
    }
}
