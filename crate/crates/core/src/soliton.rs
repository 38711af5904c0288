//! Sine-Gordon kink, fermion zero mode, and the energy bag check.
//!
//! The scalar sector uses `U(phi) = (alpha0/beta^2)(1 - cos(beta phi))`, the
//! unique potential for which `phi_cl = (4/beta) arctan(exp(sqrt(alpha0) x))`
//! is the static kink; equivalently `U = V^2/2` with
//! `V(phi) = (2 sqrt(alpha0)/beta) sin(beta phi/2)`. The fermion sector lives
//! on 2x2 Clifford representations of `{g^mu, g^nu} = 2 eta^{mu nu}`,
//! `eta = diag(-1, 1)`.
//!
//! The "bag" statement under test: the zero-mode spinor contributes nothing
//! to the classical energy because both bilinears `psi-bar psi` and
//! `psi-bar g^1 d/dx psi` vanish identically. Which (representation, phase)
//! conventions actually make both vanish is settled by exhaustive search;
//! the combination printed alongside the claim is not among them, and
//! [`bilinear_maxima`] documents its nonzero value.
//!
//! Energy accounting: with a search-passing convention the fermion energy
//! density is pointwise zero. For any constant phase pair the *signed*
//! density integral over a symmetric grid vanishes by parity even when the
//! density does not, so [`total_energy`] reports the L1 mass
//! `int |density| dx` as `fermi_energy` (the honest "plays no role" metric)
//! alongside the signed integral.

use crate::galg::coeff::{imag, real};
use crate::galg::{Factor, GradedExpr};
use crate::par;
use crate::spectra::Grid;
use num::complex::Complex64;
use num::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolitonError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid too narrow: kink tail sech^2 at the edge is {edge_value:.3e}, need < 1e-14")]
    GridTooNarrow { edge_value: f64 },
    #[error("second-order nilpotent term survived the expansion: {0}")]
    SecondOrderSurvives(String),
    #[error("amplitudes are both zero")]
    ZeroAmplitudes,
}

pub type Mat2 = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli(k: usize) -> Mat2 {
    match k {
        1 => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
        2 => [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
        3 => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
        _ => panic!("Pauli index must be 1, 2, or 3"),
    }
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_add(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][j] + b[i][j];
        }
    }
    out
}

pub fn mat_scale(a: &Mat2, s: Complex64) -> Mat2 {
    let mut out = *a;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x *= s;
        }
    }
    out
}

pub fn mat_vec(a: &Mat2, v: &[Complex64; 2]) -> [Complex64; 2] {
    [
        a[0][0] * v[0] + a[0][1] * v[1],
        a[1][0] * v[0] + a[1][1] * v[1],
    ]
}

fn mat_max_norm(a: &Mat2) -> f64 {
    a.iter()
        .flatten()
        .map(|x| x.norm())
        .fold(0.0, f64::max)
}

fn anticommutator(a: &Mat2, b: &Mat2) -> Mat2 {
    mat_add(&mat_mul(a, b), &mat_mul(b, a))
}

fn identity() -> Mat2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

/// A candidate 2x2 Dirac matrix pair for the metric `diag(-1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaRep {
    pub gamma0: Mat2,
    pub gamma1: Mat2,
}

impl GammaRep {
    pub fn new(gamma0: Mat2, gamma1: Mat2) -> GammaRep {
        GammaRep { gamma0, gamma1 }
    }

    pub fn gamma5(&self) -> Mat2 {
        mat_mul(&self.gamma0, &self.gamma1)
    }
}

/// Max-norm residuals of the Clifford relations and the chirality closure.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CliffordReport {
    /// `{g0,g0} + 2I` (metric entry -1).
    pub residual_00: f64,
    /// `{g1,g1} - 2I`.
    pub residual_11: f64,
    /// `{g0,g1}`.
    pub residual_01: f64,
    /// `{g5,g0}` and `{g5,g1}`.
    pub residual_g5_0: f64,
    pub residual_g5_1: f64,
    pub pass: bool,
}

pub fn clifford_verify(rep: &GammaRep) -> CliffordReport {
    let two_i = mat_scale(&identity(), c(2.0, 0.0));
    let minus_two_i = mat_scale(&identity(), c(-2.0, 0.0));
    let sub = |a: &Mat2, b: &Mat2| mat_add(a, &mat_scale(b, c(-1.0, 0.0)));
    let g5 = rep.gamma5();
    let residual_00 = mat_max_norm(&sub(&anticommutator(&rep.gamma0, &rep.gamma0), &minus_two_i));
    let residual_11 = mat_max_norm(&sub(&anticommutator(&rep.gamma1, &rep.gamma1), &two_i));
    let residual_01 = mat_max_norm(&anticommutator(&rep.gamma0, &rep.gamma1));
    let residual_g5_0 = mat_max_norm(&anticommutator(&g5, &rep.gamma0));
    let residual_g5_1 = mat_max_norm(&anticommutator(&g5, &rep.gamma1));
    let pass = [residual_00, residual_11, residual_01]
        .iter()
        .all(|r| *r < 1e-12);
    CliffordReport {
        residual_00,
        residual_11,
        residual_01,
        residual_g5_0,
        residual_g5_1,
        pass,
    }
}

/// Kink parameters; `c_norm` is the zero-mode amplitude fixed by unit L2
/// norm for a unit-modulus phase pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KinkParams {
    pub alpha0: f64,
    pub beta: f64,
    pub c_norm: f64,
}

impl KinkParams {
    pub fn new(alpha0: f64, beta: f64) -> Result<KinkParams, SolitonError> {
        if !(alpha0 > 0.0 && alpha0.is_finite()) {
            return Err(SolitonError::InvalidParams(format!(
                "alpha0 must be positive, got {alpha0}"
            )));
        }
        if beta == 0.0 || !beta.is_finite() {
            return Err(SolitonError::InvalidParams(format!(
                "beta must be nonzero, got {beta}"
            )));
        }
        Ok(KinkParams {
            alpha0,
            beta,
            c_norm: alpha0.powf(0.25) / 2.0,
        })
    }

    pub fn sqrt_alpha0(&self) -> f64 {
        self.alpha0.sqrt()
    }

    /// Coefficient pair of the superspace sine-Gordon equation,
    /// `(2i sqrt(alpha0), beta/2)`.
    pub fn equation_constants(&self) -> (Complex64, f64) {
        (c(0.0, 2.0 * self.sqrt_alpha0()), self.beta / 2.0)
    }
}

pub fn kink_profile(p: &KinkParams, x: f64) -> f64 {
    (4.0 / p.beta) * (p.sqrt_alpha0() * x).exp().atan()
}

/// Analytic spatial derivative `(2 sqrt(alpha0)/beta) sech(sqrt(alpha0) x)`.
pub fn kink_profile_prime(p: &KinkParams, x: f64) -> f64 {
    let u = p.sqrt_alpha0() * x;
    2.0 * p.sqrt_alpha0() / p.beta / u.cosh()
}

pub fn scalar_potential_u(p: &KinkParams, phi: f64) -> f64 {
    p.alpha0 / (p.beta * p.beta) * (1.0 - (p.beta * phi).cos())
}

/// `V(phi) = (2 sqrt(alpha0)/beta) sin(beta phi / 2)`, with `V^2/2 = U`.
pub fn scalar_potential_v(p: &KinkParams, phi: f64) -> f64 {
    2.0 * p.sqrt_alpha0() / p.beta * (0.5 * p.beta * phi).sin()
}

pub fn scalar_potential_v_prime(p: &KinkParams, phi: f64) -> f64 {
    p.sqrt_alpha0() * (0.5 * p.beta * phi).cos()
}

fn simpson(values: &[f64], h: f64) -> Result<f64, SolitonError> {
    let n = values.len();
    if n < 3 || n % 2 == 0 {
        return Err(SolitonError::InvalidGrid(format!(
            "composite quadrature needs an odd point count of at least 3, got {n}"
        )));
    }
    let mut acc = values[0] + values[n - 1];
    for (i, v) in values.iter().enumerate().take(n - 1).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    Ok(acc * h / 3.0)
}

fn check_tails(p: &KinkParams, grid: &Grid) -> Result<(), SolitonError> {
    let edge = grid.x_min.abs().min(grid.x_max.abs());
    let sech = 1.0 / (p.sqrt_alpha0() * edge).cosh();
    let edge_value = sech * sech;
    if edge_value >= 1e-14 {
        return Err(SolitonError::GridTooNarrow { edge_value });
    }
    Ok(())
}

/// Classical kink energy `int [phi'^2/2 + U(phi)] dx` by composite Simpson.
pub fn kink_energy(p: &KinkParams, grid: &Grid) -> Result<f64, SolitonError> {
    check_tails(p, grid)?;
    let values = par::map_indices(grid.n_points, |i| {
        let x = grid.point(i);
        let dphi = kink_profile_prime(p, x);
        0.5 * dphi * dphi + scalar_potential_u(p, kink_profile(p, x))
    });
    simpson(&values, grid.h())
}

/// The normalizable spinor localized on the kink,
/// `amplitude * sech(sqrt(alpha0) x) * phase`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorField {
    pub amplitude: f64,
    pub sqrt_alpha0: f64,
    pub phase: [Complex64; 2],
}

impl SpinorField {
    pub fn eval(&self, x: f64) -> [Complex64; 2] {
        let g = self.amplitude / (self.sqrt_alpha0 * x).cosh();
        [self.phase[0] * g, self.phase[1] * g]
    }

    /// Analytic derivative; `d/dx sech = -sqrt(alpha0) tanh * sech`.
    pub fn eval_prime(&self, x: f64) -> [Complex64; 2] {
        let u = self.sqrt_alpha0 * x;
        let factor = -self.sqrt_alpha0 * u.tanh();
        let v = self.eval(x);
        [v[0] * factor, v[1] * factor]
    }

    pub fn scaled(&self, factor: f64) -> SpinorField {
        SpinorField {
            amplitude: self.amplitude * factor,
            ..*self
        }
    }
}

/// The zero mode with the phase pair as printed next to the bag claim.
pub fn zero_mode(p: &KinkParams) -> SpinorField {
    zero_mode_with_phase(p, [c(1.0, 0.0), c(0.0, -1.0)])
}

pub fn zero_mode_with_phase(p: &KinkParams, phase: [Complex64; 2]) -> SpinorField {
    SpinorField {
        amplitude: p.c_norm,
        sqrt_alpha0: p.sqrt_alpha0(),
        phase,
    }
}

/// Pointwise bilinears `(psi-dag g0 psi, psi-dag g0 g1 psi')`.
pub fn bilinears_at(rep: &GammaRep, spinor: &SpinorField, x: f64) -> (Complex64, Complex64) {
    let v = spinor.eval(x);
    let dv = spinor.eval_prime(x);
    let g0v = mat_vec(&rep.gamma0, &v);
    let g0g1 = mat_mul(&rep.gamma0, &rep.gamma1);
    let kv = mat_vec(&g0g1, &dv);
    let scalar = v[0].conj() * g0v[0] + v[1].conj() * g0v[1];
    let kinetic = v[0].conj() * kv[0] + v[1].conj() * kv[1];
    (scalar, kinetic)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BilinearMaxima {
    pub scalar_max: f64,
    pub kinetic_max: f64,
}

/// Max moduli of the two bilinears over sample points.
pub fn bilinear_maxima(rep: &GammaRep, spinor: &SpinorField, xs: &[f64]) -> BilinearMaxima {
    let mut scalar_max = 0.0f64;
    let mut kinetic_max = 0.0f64;
    for &x in xs {
        let (s, k) = bilinears_at(rep, spinor, x);
        scalar_max = scalar_max.max(s.norm());
        kinetic_max = kinetic_max.max(k.norm());
    }
    BilinearMaxima {
        scalar_max,
        kinetic_max,
    }
}

/// One surviving convention from the exhaustive search.
#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    pub gamma0_label: String,
    pub gamma1_label: String,
    pub phase_label: String,
    #[serde(skip)]
    pub rep: GammaRep,
    #[serde(skip)]
    pub phase: [Complex64; 2],
}

fn candidate_matrices() -> Vec<(String, Mat2)> {
    let mut out = Vec::new();
    for (sign_label, sign) in [("+", 1.0), ("-", -1.0)] {
        for k in 1..=3 {
            out.push((format!("{sign_label}s{k}"), mat_scale(&pauli(k), c(sign, 0.0))));
        }
        for k in 1..=3 {
            out.push((
                format!("{sign_label}i*s{k}"),
                mat_scale(&pauli(k), c(0.0, sign)),
            ));
        }
    }
    out
}

fn candidate_phases() -> Vec<(String, [Complex64; 2])> {
    vec![
        ("1".to_string(), [c(1.0, 0.0), c(1.0, 0.0)]),
        ("-1".to_string(), [c(1.0, 0.0), c(-1.0, 0.0)]),
        ("i".to_string(), [c(1.0, 0.0), c(0.0, 1.0)]),
        ("-i".to_string(), [c(1.0, 0.0), c(0.0, -1.0)]),
    ]
}

/// Exhaust all 144 matrix pairs x 4 phase pairs; keep those that satisfy the
/// Clifford relations and make both bilinear constants vanish (the sech
/// profile factors out, so constant-level vanishing is pointwise vanishing).
pub fn representation_search() -> Vec<SearchHit> {
    let mats = candidate_matrices();
    let phases = candidate_phases();
    let mut combos = Vec::new();
    for (l0, g0) in &mats {
        for (l1, g1) in &mats {
            for (lp, phase) in &phases {
                combos.push((l0.clone(), *g0, l1.clone(), *g1, lp.clone(), *phase));
            }
        }
    }
    let flags = par::map_slice(&combos, |(_, g0, _, g1, _, phase)| {
        let rep = GammaRep::new(*g0, *g1);
        if !clifford_verify(&rep).pass {
            return false;
        }
        // Unit-profile spinor: bilinears reduce to the constants
        // s-dag g0 s and s-dag g0 g1 s (the kinetic one also carries the
        // scalar profile factor, which never vanishes).
        let s = phase;
        let g0s = mat_vec(&rep.gamma0, s);
        let k_scalar = s[0].conj() * g0s[0] + s[1].conj() * g0s[1];
        let g0g1 = mat_mul(&rep.gamma0, &rep.gamma1);
        let ks = mat_vec(&g0g1, s);
        let k_kinetic = s[0].conj() * ks[0] + s[1].conj() * ks[1];
        k_scalar.norm() < 1e-12 && k_kinetic.norm() < 1e-12
    });
    combos
        .into_iter()
        .zip(flags)
        .filter(|(_, keep)| *keep)
        .map(|((l0, g0, l1, g1, lp, phase), _)| SearchHit {
            gamma0_label: l0,
            gamma1_label: l1,
            phase_label: lp,
            rep: GammaRep::new(g0, g1),
            phase,
        })
        .collect()
}

/// First surviving convention carrying the printed phase pair `(1, -i)`.
pub fn selected_convention() -> SearchHit {
    representation_search()
        .into_iter()
        .find(|hit| hit.phase_label == "-i")
        .expect("the search always yields (1,-i) survivors")
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct EnergyDecomposition {
    pub bose_energy: f64,
    /// L1 mass of the fermion energy density (see module docs).
    pub fermi_energy: f64,
    /// Plain signed integral of the density, for reference.
    pub fermi_signed_re: f64,
    pub fermi_signed_im: f64,
    pub total: f64,
    pub bag_tolerance: f64,
    /// True when `fermi_energy < bag_tolerance * bose_energy`.
    pub bag_holds: bool,
}

fn fermi_density(
    p: &KinkParams,
    rep: &GammaRep,
    spinor: &SpinorField,
    x: f64,
) -> Complex64 {
    let (scalar, kinetic) = bilinears_at(rep, spinor, x);
    let mass = scalar_potential_v_prime(p, kink_profile(p, x));
    c(0.0, 1.0) * kinetic + mass * scalar
}

/// Energy decomposition of the kink plus spinor configuration; the fermion
/// density is `psi-bar i g^1 psi' + V'(phi_cl) psi-bar psi`.
pub fn total_energy(
    p: &KinkParams,
    rep: &GammaRep,
    spinor: &SpinorField,
    grid: &Grid,
    bag_tolerance: f64,
) -> Result<EnergyDecomposition, SolitonError> {
    let bose_energy = kink_energy(p, grid)?;
    let densities = par::map_indices(grid.n_points, |i| {
        let d = fermi_density(p, rep, spinor, grid.point(i));
        (d.norm(), d.re, d.im)
    });
    let h = grid.h();
    let abs_vals: Vec<f64> = densities.iter().map(|d| d.0).collect();
    let re_vals: Vec<f64> = densities.iter().map(|d| d.1).collect();
    let im_vals: Vec<f64> = densities.iter().map(|d| d.2).collect();
    let fermi_energy = simpson(&abs_vals, h)?;
    let fermi_signed_re = simpson(&re_vals, h)?;
    let fermi_signed_im = simpson(&im_vals, h)?;
    let bag_holds = fermi_energy < bag_tolerance * bose_energy;
    Ok(EnergyDecomposition {
        bose_energy,
        fermi_energy,
        fermi_signed_re,
        fermi_signed_im,
        total: bose_energy + fermi_energy,
        bag_tolerance,
        bag_holds,
    })
}

/// CSV profile: position, kink value, spinor density, bilinear moduli.
pub fn profile_csv(
    p: &KinkParams,
    rep: &GammaRep,
    spinor: &SpinorField,
    grid: &Grid,
) -> String {
    let mut out = String::from("x,phi_cl,psi_abs2,bilinear_scalar_abs,bilinear_kinetic_abs\n");
    for i in 0..grid.n_points {
        let x = grid.point(i);
        let v = spinor.eval(x);
        let psi_abs2 = v[0].norm_sqr() + v[1].norm_sqr();
        let (s, k) = bilinears_at(rep, spinor, x);
        out.push_str(&format!(
            "{x:.8e},{:.8e},{psi_abs2:.8e},{:.8e},{:.8e}\n",
            kink_profile(p, x),
            s.norm(),
            k.norm()
        ));
    }
    out
}

/// Deviation of the exact half-angle identity
/// `sigma/(1+sigma^2) = (1/2) sin(beta phi_cl / 2)` over sample points.
pub fn sech_identity_max_deviation(p: &KinkParams, n_samples: usize) -> f64 {
    let mut max_dev = 0.0f64;
    for i in 0..n_samples {
        let x = -5.0 + 10.0 * i as f64 / (n_samples - 1) as f64;
        let sigma = (p.sqrt_alpha0() * x).exp();
        let lhs = sigma / (1.0 + sigma * sigma);
        let rhs = 0.5 * (0.5 * p.beta * kink_profile(p, x)).sin();
        max_dev = max_dev.max((lhs - rhs).abs());
    }
    max_dev
}

/// Symbolic atoms of the nilpotent expansion. All even atoms are constants
/// standing for closed-form profiles of x: `sig = exp(sqrt(alpha0) x)`,
/// `atg = arctan(sig)`, `sphi = sin(beta phi_cl / 2)`, `ra = sqrt(alpha0)`.
pub mod expansion_atoms {
    use crate::galg::Atom;

    pub fn sig() -> Atom {
        Atom::even_constant("sig")
    }

    pub fn atg() -> Atom {
        Atom::even_constant("atg")
    }

    pub fn sphi() -> Atom {
        Atom::even_constant("sphi")
    }

    pub fn beta() -> Atom {
        Atom::even_constant("beta")
    }

    pub fn ra() -> Atom {
        Atom::even_constant("ra")
    }

    pub fn theta_bar() -> Atom {
        Atom::odd_coordinate("thb")
    }

    pub fn theta() -> Atom {
        Atom::odd_coordinate("th")
    }

    pub fn psi_cl() -> Atom {
        Atom::odd_coordinate("psicl")
    }
}

/// The expansion of the arctangent superfield into components.
#[derive(Clone, Debug)]
pub struct SupersolitonComponents {
    /// `(4/beta) atg`, the kink itself.
    pub scalar: GradedExpr,
    /// `i thb psicl`.
    pub fermion_term: GradedExpr,
    /// `(ra/2) thb th F`.
    pub top_term: GradedExpr,
    /// `F = (2i ra / beta) sphi`.
    pub f_expr: GradedExpr,
    pub full: GradedExpr,
}

fn factors(fs: &[Factor]) -> GradedExpr {
    GradedExpr::normalize(&[fs.to_vec()])
}

fn exponent_correction(top_coeff_im_numer: i64, use_alpha_squared: bool) -> GradedExpr {
    use expansion_atoms::*;
    // i (beta / (2 sphi)) thb psicl + c2 thb th
    let fermion = factors(&[
        Factor::Scalar(imag(1, 2)),
        Factor::Pow(beta(), 1),
        Factor::Pow(sphi(), -1),
        Factor::Atom(theta_bar()),
        Factor::Atom(psi_cl()),
    ]);
    let top = if use_alpha_squared {
        factors(&[
            Factor::Scalar(imag(top_coeff_im_numer, 2)),
            Factor::Pow(ra(), 2),
            Factor::Atom(theta_bar()),
            Factor::Atom(theta()),
        ])
    } else {
        factors(&[
            Factor::Scalar(real(top_coeff_im_numer, 2)),
            Factor::Pow(ra(), 1),
            Factor::Atom(theta_bar()),
            Factor::Atom(theta()),
        ])
    };
    fermion + top
}

fn expand_arctangent(correction: &GradedExpr) -> Result<GradedExpr, SolitonError> {
    use expansion_atoms::*;
    let sigma = GradedExpr::from_atom(sig());
    let z_minus_sigma = sigma.mul_ref(correction);
    let second_order = z_minus_sigma.pow(2);
    if !second_order.is_zero() {
        return Err(SolitonError::SecondOrderSurvives(second_order.to_string()));
    }
    // arctan'(sig) = 1/(1+sig^2) = (1/2) sphi / sig by the half-angle
    // identity, which the engine can hold as a Laurent monomial.
    let arctan_prime = factors(&[
        Factor::Scalar(real(1, 2)),
        Factor::Pow(sphi(), 1),
        Factor::Pow(sig(), -1),
    ]);
    let four_over_beta = factors(&[Factor::Scalar(real(4, 1)), Factor::Pow(beta(), -1)]);
    let series = GradedExpr::from_atom(atg()) + arctan_prime.mul_ref(&z_minus_sigma);
    Ok(four_over_beta.mul_ref(&series))
}

/// Expand the supersoliton exponent with the self-consistent top
/// coefficient `i alpha0 / 2` and split into the component form.
pub fn supersoliton_components() -> Result<SupersolitonComponents, SolitonError> {
    use expansion_atoms::*;
    let full = expand_arctangent(&exponent_correction(1, true))?;
    let scalar = factors(&[
        Factor::Scalar(real(4, 1)),
        Factor::Pow(beta(), -1),
        Factor::Pow(atg(), 1),
    ]);
    let fermion_term = factors(&[
        Factor::Scalar(imag(1, 1)),
        Factor::Atom(theta_bar()),
        Factor::Atom(psi_cl()),
    ]);
    let f_expr = factors(&[
        Factor::Scalar(imag(2, 1)),
        Factor::Pow(ra(), 1),
        Factor::Pow(beta(), -1),
        Factor::Pow(sphi(), 1),
    ]);
    let half_ra_top = factors(&[
        Factor::Scalar(real(1, 2)),
        Factor::Pow(ra(), 1),
        Factor::Atom(theta_bar()),
        Factor::Atom(theta()),
    ]);
    let top_term = half_ra_top.mul_ref(&f_expr);
    let residual = full.clone() - scalar.clone() - fermion_term.clone() - top_term.clone();
    if !residual.is_zero() {
        return Err(SolitonError::SecondOrderSurvives(residual.to_string()));
    }
    Ok(SupersolitonComponents {
        scalar,
        fermion_term,
        top_term,
        f_expr,
        full,
    })
}

/// The same expansion with the top exponent coefficient as printed
/// (`-ra/2`, real); returns its nonzero mismatch against the component
/// form, documenting that the printed exponent and the printed component
/// result are mutually inconsistent.
pub fn printed_exponent_mismatch() -> Result<GradedExpr, SolitonError> {
    let printed = expand_arctangent(&exponent_correction(-1, false))?;
    let consistent = supersoliton_components()?;
    Ok(printed - consistent.full)
}

/// Normalized two-level state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitState {
    pub amp0: Complex64,
    pub amp1: Complex64,
}

impl QubitState {
    pub fn prob0(&self) -> f64 {
        self.amp0.norm_sqr()
    }

    pub fn prob1(&self) -> f64 {
        self.amp1.norm_sqr()
    }

    pub fn is_normalized(&self) -> bool {
        (self.prob0() + self.prob1() - 1.0).abs() < 1e-12
    }
}

pub fn qubit_from_amplitudes(a0: Complex64, a1: Complex64) -> Result<QubitState, SolitonError> {
    let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
    if norm == 0.0 {
        return Err(SolitonError::ZeroAmplitudes);
    }
    Ok(QubitState {
        amp0: a0 / norm,
        amp1: a1 / norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_params() -> KinkParams {
        KinkParams::new(1.0, 1.0).unwrap()
    }

    fn wide_grid() -> Grid {
        Grid::new(-20.0, 20.0, 4001).unwrap()
    }

    fn sample_xs() -> Vec<f64> {
        (0..201).map(|i| -5.0 + 0.05 * i as f64).collect()
    }

    #[test]
    fn declared_representation_passes_clifford() {
        let rep = GammaRep::new(mat_scale(&pauli(2), c(0.0, 1.0)), pauli(3));
        let report = clifford_verify(&rep);
        assert!(report.pass);
        assert_eq!(report.residual_00, 0.0);
        assert_eq!(report.residual_11, 0.0);
        assert_eq!(report.residual_01, 0.0);
        assert!(report.residual_g5_0 < 1e-12);
        assert!(report.residual_g5_1 < 1e-12);
    }

    #[test]
    fn hermitian_gamma0_fails_metric() {
        let rep = GammaRep::new(pauli(1), pauli(3));
        let report = clifford_verify(&rep);
        assert!(!report.pass);
        // (s1)^2 = +I, so {g0,g0} + 2I = 4I.
        assert_eq!(report.residual_00, 4.0);
    }

    #[test]
    fn alternative_representation_passes() {
        let rep = GammaRep::new(mat_scale(&pauli(2), c(0.0, 1.0)), pauli(1));
        assert!(clifford_verify(&rep).pass);
    }

    #[test]
    fn kink_boundary_values() {
        let p = unit_params();
        assert!((kink_profile(&p, 0.0) - PI).abs() < 1e-14);
        assert!((kink_profile(&p, 25.0) - 2.0 * PI).abs() < 1e-8);
        assert!(kink_profile(&p, -25.0).abs() < 1e-8);
        let p2 = KinkParams::new(1.0, 2.0).unwrap();
        assert!((kink_profile(&p2, 25.0) - PI).abs() < 1e-8);
    }

    #[test]
    fn kink_energy_saturates_topological_bound() {
        let p = unit_params();
        let e = kink_energy(&p, &wide_grid()).unwrap();
        assert!((e - 8.0).abs() < 1e-8 * 8.0, "energy {e}");
        let p2 = KinkParams::new(4.0, 2.0).unwrap();
        let e2 = kink_energy(&p2, &Grid::new(-12.0, 12.0, 4001).unwrap()).unwrap();
        let oracle = 8.0 * p2.alpha0.sqrt() / (p2.beta * p2.beta);
        assert!((e2 - oracle).abs() < 1e-8 * oracle, "energy {e2} vs {oracle}");
    }

    #[test]
    fn narrow_or_even_grids_are_rejected() {
        let p = unit_params();
        assert!(matches!(
            kink_energy(&p, &Grid::new(-5.0, 5.0, 1001).unwrap()),
            Err(SolitonError::GridTooNarrow { .. })
        ));
        assert!(matches!(
            kink_energy(&p, &Grid::new(-20.0, 20.0, 4000).unwrap()),
            Err(SolitonError::InvalidGrid(_))
        ));
    }

    #[test]
    fn bps_equation_holds_pointwise() {
        let p = KinkParams::new(2.0, 3.0).unwrap();
        for x in sample_xs() {
            let lhs = 0.5 * kink_profile_prime(&p, x).powi(2);
            let rhs = scalar_potential_u(&p, kink_profile(&p, x));
            assert!((lhs - rhs).abs() < 1e-10, "BPS at {x}: {lhs} vs {rhs}");
            let v = scalar_potential_v(&p, kink_profile(&p, x));
            assert!((0.5 * v * v - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn analytic_gradient_matches_central_differences() {
        let p = KinkParams::new(1.5, 0.7).unwrap();
        let x = 0.37;
        let err = |h: f64| {
            let central = (kink_profile(&p, x + h) - kink_profile(&p, x - h)) / (2.0 * h);
            (central - kink_profile_prime(&p, x)).abs()
        };
        let ratio = err(1e-3) / err(5e-4);
        assert!((3.5..4.5).contains(&ratio), "O(h^2) ratio {ratio}");
    }

    #[test]
    fn zero_mode_profile_and_norm() {
        let p = KinkParams::new(2.25, 1.0).unwrap();
        let spinor = zero_mode(&p);
        assert_eq!(spinor.phase, [c(1.0, 0.0), c(0.0, -1.0)]);
        // Decay shape: |psi| / sech is constant.
        let ratios: Vec<f64> = sample_xs()
            .iter()
            .map(|&x| {
                let v = spinor.eval(x);
                let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
                norm * (p.sqrt_alpha0() * x).cosh()
            })
            .collect();
        for r in &ratios {
            assert!((r - ratios[0]).abs() < 1e-12);
        }
        // Unit L2 norm by quadrature.
        let grid = Grid::new(-15.0, 15.0, 3001).unwrap();
        let vals: Vec<f64> = grid
            .points()
            .iter()
            .map(|&x| {
                let v = spinor.eval(x);
                v[0].norm_sqr() + v[1].norm_sqr()
            })
            .collect();
        let norm = simpson(&vals, grid.h()).unwrap();
        assert!((norm - 1.0).abs() < 1e-8, "norm {norm}");
    }

    #[test]
    fn search_finds_exactly_the_vanishing_conventions() {
        let hits = representation_search();
        assert_eq!(hits.len(), 32);
        let xs = sample_xs();
        let p = unit_params();
        for hit in &hits {
            assert!(clifford_verify(&hit.rep).pass);
            let spinor = zero_mode_with_phase(&p, hit.phase);
            let maxima = bilinear_maxima(&hit.rep, &spinor, &xs);
            assert!(maxima.scalar_max < 1e-12);
            assert!(maxima.kinetic_max < 1e-12);
        }
        // The declared matrices never survive with any phase.
        assert!(!hits
            .iter()
            .any(|h| h.gamma0_label == "+i*s2" && h.gamma1_label == "+s3"));
        // The printed phase pair survives with compatible matrices.
        assert!(hits
            .iter()
            .any(|h| h.gamma0_label == "+i*s1"
                && h.gamma1_label == "+s2"
                && h.phase_label == "-i"));
        let selected = selected_convention();
        assert_eq!(selected.phase_label, "-i");
    }

    #[test]
    fn printed_convention_has_nonzero_scalar_bilinear() {
        let p = unit_params();
        let rep = GammaRep::new(mat_scale(&pauli(2), c(0.0, 1.0)), pauli(3));
        let spinor = zero_mode(&p);
        let (scalar, _) = bilinears_at(&rep, &spinor, 0.0);
        // s-dag g0 s = -2i for s = (1, -i), times C^2 sech^2(0).
        let expected = 2.0 * p.c_norm * p.c_norm;
        assert!((scalar.norm() - expected).abs() < 1e-14);
        assert!(scalar.norm() > 0.4);
    }

    #[test]
    fn bag_energy_vanishes_for_search_conventions() {
        let p = unit_params();
        let grid = wide_grid();
        let hit = selected_convention();
        let spinor = zero_mode_with_phase(&p, hit.phase);
        let e = total_energy(&p, &hit.rep, &spinor, &grid, 1e-10).unwrap();
        assert!((e.bose_energy - 8.0).abs() < 1e-8 * 8.0);
        assert_eq!(e.fermi_energy, 0.0);
        assert!(e.bag_holds);
        // Scaling the spinor cannot break an identically-zero density.
        let e10 = total_energy(&p, &hit.rep, &spinor.scaled(10.0), &grid, 1e-10).unwrap();
        assert_eq!(e10.fermi_energy, 0.0);
    }

    #[test]
    fn non_search_phase_costs_energy() {
        let p = unit_params();
        let hit = selected_convention();
        let spinor = zero_mode_with_phase(&p, [c(1.0, 0.0), c(1.0, 0.0)]);
        let e = total_energy(&p, &hit.rep, &spinor, &wide_grid(), 1e-10).unwrap();
        assert!(e.fermi_energy > 1e-3, "L1 density {}", e.fermi_energy);
        assert!(!e.bag_holds);
        // The signed integral alone hides the cost by parity.
        assert!(e.fermi_signed_re.abs() < 1e-10);
        assert!(e.fermi_signed_im.abs() < 1e-10);
    }

    #[test]
    fn supersoliton_component_split() {
        let parts = supersoliton_components().unwrap();
        let rebuilt = parts.scalar.clone() + parts.fermion_term.clone() + parts.top_term.clone();
        assert_eq!(parts.full, rebuilt);
        // F = i V(phi_cl) with V = (2 ra / beta) sphi.
        let v_expr = factors(&[
            Factor::Scalar(real(2, 1)),
            Factor::Pow(expansion_atoms::ra(), 1),
            Factor::Pow(expansion_atoms::beta(), -1),
            Factor::Pow(expansion_atoms::sphi(), 1),
        ]);
        assert_eq!(parts.f_expr, v_expr.scale(&imag(1, 1)));
    }

    #[test]
    fn zero_fermion_expansion_keeps_scalar_and_top() {
        let parts = supersoliton_components().unwrap();
        let without_fermion = parts
            .full
            .substitute(&expansion_atoms::psi_cl(), &GradedExpr::zero())
            .unwrap();
        assert_eq!(without_fermion, parts.scalar.clone() + parts.top_term.clone());
    }

    #[test]
    fn printed_exponent_disagrees_with_component_form() {
        let mismatch = printed_exponent_mismatch().unwrap();
        assert!(!mismatch.is_zero());
        // The discrepancy is confined to the top component.
        assert!(mismatch.contains_atom(&expansion_atoms::theta()));
        assert!(!mismatch.contains_atom(&expansion_atoms::psi_cl()));
    }

    #[test]
    fn half_angle_identity_numeric() {
        for (alpha0, beta) in [(1.0, 1.0), (2.0, 3.0), (0.5, 0.25)] {
            let p = KinkParams::new(alpha0, beta).unwrap();
            assert!(sech_identity_max_deviation(&p, 100) < 1e-12);
        }
    }

    #[test]
    fn qubit_states() {
        let basis0 = qubit_from_amplitudes(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(basis0.amp0, c(1.0, 0.0));
        assert!(basis0.is_normalized());
        let q = qubit_from_amplitudes(c(3.0, 0.0), c(0.0, 4.0)).unwrap();
        assert!((q.amp0 - c(0.6, 0.0)).norm() < 1e-15);
        assert!((q.amp1 - c(0.0, 0.8)).norm() < 1e-15);
        assert!(q.is_normalized());
        assert_eq!(
            qubit_from_amplitudes(c(0.0, 0.0), c(0.0, 0.0)),
            Err(SolitonError::ZeroAmplitudes)
        );
    }
}
