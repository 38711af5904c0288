//! Acceptance gate: one check per promised property, one printed line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use susyqm::galg::coeff::{self, imag, real};
use susyqm::galg::{atoms, Atom, Factor, GradedExpr, Parity};
use susyqm::poly::RationalPoly;
use susyqm::reduction::{
    action_integrand, eliminate_auxiliary, hamiltonian, invariance_residual,
    reduce_to_lagrangian, ComponentLagrangian, SuperpotentialSeries,
};
use susyqm::soliton::{
    bilinear_maxima, clifford_verify, kink_energy, kink_profile, kink_profile_prime, mat_scale,
    pauli, representation_search, scalar_potential_u, sech_identity_max_deviation,
    supersoliton_components, total_energy, zero_mode_with_phase, GammaRep, KinkParams,
};
use susyqm::spectra::{ground_state_check, pairing_report, Grid, PairingAssignment};
use susyqm::superspace::{algebra_report, Superfield, SusyParams};

fn e(a: Atom) -> GradedExpr {
    GradedExpr::from_atom(a)
}

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

struct Runner {
    failures: Vec<String>,
}

/// Write straight to the process stdout. The harness captures the `print!`
/// macros of passing tests; the per-criterion lines must stay visible in a
/// plain `cargo test` run.
fn announce(line: std::fmt::Arguments<'_>) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{line}");
}

impl Runner {
    fn run(
        &mut self,
        index: usize,
        label: &str,
        budget: Duration,
        check: impl FnOnce() -> Result<String, String>,
    ) {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) if elapsed <= budget => {
                announce(format_args!(
                    "criterion {index}: PASS ({elapsed:.2?}) {label}: {detail}"
                ));
            }
            Ok(detail) => {
                announce(format_args!(
                    "criterion {index}: FAIL ({elapsed:.2?} > budget {budget:.0?}) {label}: {detail}"
                ));
                self.failures
                    .push(format!("criterion {index} exceeded {budget:?}"));
            }
            Err(msg) => {
                announce(format_args!(
                    "criterion {index}: FAIL ({elapsed:.2?}) {label}: {msg}"
                ));
                self.failures.push(format!("criterion {index}: {msg}"));
            }
        }
    }
}

fn random_superpotentials(count: usize) -> Vec<RationalPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    (0..count)
        .map(|_| {
            let degree = rng.gen_range(0..=6usize);
            let coeffs: Vec<_> = (0..=degree)
                .map(|k| {
                    let num = if k == degree {
                        // Keep the sampled degree honest.
                        let mut n = 0;
                        while n == 0 {
                            n = rng.gen_range(-9..=9i64);
                        }
                        n
                    } else {
                        rng.gen_range(-9..=9i64)
                    };
                    coeff::rat(num, rng.gen_range(1..=4i64))
                })
                .collect();
            RationalPoly::new(coeffs)
        })
        .collect()
}

/// The component form the reduction must reproduce, built directly from the
/// closed formula rather than through the Berezin pipeline.
fn expected_parts(f: &RationalPoly) -> (GradedExpr, GradedExpr, GradedExpr, GradedExpr) {
    let x = atoms::x();
    let x_dot = x.dotted();
    let psi = atoms::psi();
    let psi_c = atoms::psi_c();
    let d = atoms::d_aux();

    let bose = GradedExpr::normalize(&[vec![
        Factor::Scalar(real(1, 2)),
        Factor::Pow(x_dot, 2),
    ]]);
    let fermi = GradedExpr::normalize(&[
        vec![
            Factor::Scalar(imag(1, 2)),
            Factor::Atom(psi_c.clone()),
            Factor::Atom(psi.dotted()),
        ],
        vec![
            Factor::Scalar(imag(-1, 2)),
            Factor::Atom(psi_c.dotted()),
            Factor::Atom(psi.clone()),
        ],
    ]);
    let half_d_sq = GradedExpr::normalize(&[vec![
        Factor::Scalar(real(1, 2)),
        Factor::Pow(d.clone(), 2),
    ]]);
    let auxiliary = half_d_sq + f.derivative().to_graded(&x).mul_ref(&e(d));
    let commutator = e(psi_c).mul_ref(&e(psi.clone())) - e(psi).mul_ref(&e(atoms::psi_c()));
    let yukawa = commutator
        .mul_ref(&f.derivative().derivative().to_graded(&x))
        .scale(&real(1, 2));
    (bose, fermi, auxiliary, yukawa)
}

/// `H = p^2/2 + V^2/2 + (1/2)(psic psi - psi psic) V'` with `V = -f'`.
fn expected_hamiltonian(f: &RationalPoly) -> GradedExpr {
    let x = atoms::x();
    let v = f.derivative().scale(&coeff::rat(-1, 1));
    let v_graded = v.to_graded(&x);
    let vp_graded = v.derivative().to_graded(&x);
    let p_sq = GradedExpr::normalize(&[vec![
        Factor::Scalar(real(1, 2)),
        Factor::Pow(atoms::p(), 2),
    ]]);
    let commutator =
        e(atoms::psi_c()).mul_ref(&e(atoms::psi())) - e(atoms::psi()).mul_ref(&e(atoms::psi_c()));
    p_sq + v_graded.mul_ref(&v_graded).scale(&real(1, 2))
        + commutator.mul_ref(&vp_graded).scale(&real(1, 2))
}

fn criterion_superalgebra() -> Result<String, String> {
    let report = algebra_report();
    if report.entries.len() != 6 {
        return Err(format!("expected 6 relations, got {}", report.entries.len()));
    }
    for entry in &report.entries {
        for r in &entry.residuals {
            if !r.is_zero() {
                return Err(format!("relation {} leaves residual {r}", entry.name));
            }
        }
    }
    Ok(format!(
        "6 relations x {} probes, all residuals identically zero",
        report.entries[0].residuals.len()
    ))
}

fn criterion_reduction(
    polys: &[RationalPoly],
    cache: &mut Vec<ComponentLagrangian>,
) -> Result<String, String> {
    let phi = Superfield::standard();
    for f in polys {
        let fs = SuperpotentialSeries::from_real(f);
        let integrand = action_integrand(&phi, &fs);
        let parts = reduce_to_lagrangian(&integrand).map_err(|e| e.to_string())?;
        let (bose, fermi, aux, yukawa) = expected_parts(f);
        if parts.kinetic_bose != bose {
            return Err(format!("bose kinetic term mismatch for f = {f}"));
        }
        if parts.kinetic_fermi != fermi {
            return Err(format!("fermi kinetic term mismatch for f = {f}"));
        }
        if parts.auxiliary != aux {
            return Err(format!("auxiliary term mismatch for f = {f}"));
        }
        if parts.yukawa != yukawa {
            return Err(format!("pairing term mismatch for f = {f}"));
        }
        let eliminated = eliminate_auxiliary(&parts, &fs).map_err(|e| e.to_string())?;
        let h = hamiltonian(&eliminated).map_err(|e| e.to_string())?;
        if h.form != expected_hamiltonian(f) {
            return Err(format!("operator template mismatch for f = {f}"));
        }
        cache.push(parts);
    }
    Ok(format!(
        "{} random superpotentials (degree <= 6) reduced term-for-term, template sign pinned",
        polys.len()
    ))
}

fn criterion_invariance(cache: &[ComponentLagrangian]) -> Result<String, String> {
    let params = SusyParams::standard();
    for (i, parts) in cache.iter().enumerate() {
        let residual = invariance_residual(parts, &params).map_err(|e| e.to_string())?;
        if !residual.is_zero() {
            return Err(format!("potential #{i} leaves residual {residual}"));
        }
    }
    Ok(format!(
        "variation of all {} Lagrangians is a pure time derivative",
        cache.len()
    ))
}

fn criterion_spectral_pairing() -> Result<String, String> {
    let v_linear = RationalPoly::from_integers(&[0, 1]);
    let grid = Grid::new(-10.0, 10.0, 2001).map_err(|e| e.to_string())?;
    let report = pairing_report(&v_linear, &grid, 6, None).map_err(|e| e.to_string())?;
    for (n, ev) in report.eigenvalues_minus.iter().enumerate() {
        if (ev - n as f64).abs() >= 1e-6 {
            return Err(format!("lower sector level {n} = {ev}, want {n} within 1e-6"));
        }
    }
    for (n, ev) in report.eigenvalues_plus.iter().enumerate() {
        if (ev - (n + 1) as f64).abs() >= 1e-6 {
            return Err(format!(
                "upper sector level {n} = {ev}, want {} within 1e-6",
                n + 1
            ));
        }
    }
    if report.witten_index.abs() != 1 {
        return Err(format!("index {} should have magnitude 1", report.witten_index));
    }
    let fine = pairing_report(&v_linear, &grid.refined(), 6, None).map_err(|e| e.to_string())?;
    for n in 0..6 {
        let ratio = report.pair_residuals[n] / fine.pair_residuals[n];
        if !(3.0..5.0).contains(&ratio) {
            return Err(format!(
                "residual {n} shrank by {ratio:.2}x under 2x refinement, want ~4x"
            ));
        }
    }
    let v_sq = RationalPoly::from_integers(&[0, 0, 1]);
    let broken = pairing_report(&v_sq, &grid, 6, None).map_err(|e| e.to_string())?;
    if broken.witten_index != 0 {
        return Err(format!("index {} for the even potential, want 0", broken.witten_index));
    }
    if broken.pairing != PairingAssignment::Aligned {
        return Err("even potential should pair index-to-index".into());
    }
    if let Some((n, r)) = broken
        .pair_residuals
        .iter()
        .enumerate()
        .find(|(_, r)| **r >= 1e-5)
    {
        return Err(format!("aligned residual {n} = {r:.3e}, want < 1e-5"));
    }
    let worst = report
        .pair_residuals
        .iter()
        .chain(&broken.pair_residuals)
        .fold(0.0f64, |a, b| a.max(*b));
    Ok(format!(
        "levels match oracles to 1e-6, residuals shrink ~4x, indices 1 and 0 (worst raw residual {worst:.2e})"
    ))
}

fn criterion_ground_state() -> Result<String, String> {
    let v = RationalPoly::from_integers(&[0, 1]);
    let grid = Grid::new(-10.0, 10.0, 2001).map_err(|e| e.to_string())?;
    let report = ground_state_check(&v, &grid).map_err(|e| e.to_string())?;
    if report.max_deviation >= 1e-4 {
        return Err(format!(
            "profile deviates from the Gaussian by {:.3e}",
            report.max_deviation
        ));
    }
    Ok(format!(
        "numeric ground state matches exp(-x^2/2) within {:.2e} (energy {:.2e})",
        report.max_deviation, report.energy
    ))
}

fn criterion_supersoliton() -> Result<String, String> {
    let parts = supersoliton_components().map_err(|e| e.to_string())?;
    let rebuilt = parts.scalar.clone() + parts.fermion_term.clone() + parts.top_term.clone();
    if parts.full != rebuilt {
        return Err("expansion does not equal its three-component form".into());
    }
    // F must be i times the superpartner potential evaluated on the kink.
    let expected_f = GradedExpr::normalize(&[vec![
        Factor::Scalar(imag(2, 1)),
        Factor::Pow(susyqm::soliton::expansion_atoms::ra(), 1),
        Factor::Pow(susyqm::soliton::expansion_atoms::beta(), -1),
        Factor::Pow(susyqm::soliton::expansion_atoms::sphi(), 1),
    ]]);
    if parts.f_expr != expected_f {
        return Err(format!("top coefficient {} has the wrong closed form", parts.f_expr));
    }
    let mut worst = 0.0f64;
    for (alpha0, beta) in [(1.0, 1.0), (2.0, 3.0), (0.5, 0.25)] {
        let p = KinkParams::new(alpha0, beta).map_err(|e| e.to_string())?;
        worst = worst.max(sech_identity_max_deviation(&p, 100));
    }
    if worst >= 1e-12 {
        return Err(format!("half-angle identity off by {worst:.3e}"));
    }
    Ok(format!(
        "symbolic split exact, half-angle identity within {worst:.2e} at 100 points"
    ))
}

fn criterion_kink_energy() -> Result<String, String> {
    let p = KinkParams::new(1.0, 1.0).map_err(|e| e.to_string())?;
    let grid = Grid::new(-20.0, 20.0, 16001).map_err(|e| e.to_string())?;
    let energy = kink_energy(&p, &grid).map_err(|e| e.to_string())?;
    if (energy - 8.0).abs() >= 1e-8 * 8.0 {
        return Err(format!("energy {energy} differs from 8 beyond 1e-8 relative"));
    }
    // Independent oracle: on the first-order solution the energy is the
    // gradient integral alone, int phi'^2 dx, integrated here directly.
    let h = grid.h();
    let vals: Vec<f64> = (0..grid.n_points)
        .map(|i| kink_profile_prime(&p, grid.point(i)).powi(2))
        .collect();
    let mut acc = vals[0] + vals[grid.n_points - 1];
    for (i, v) in vals.iter().enumerate().take(grid.n_points - 1).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    let gradient_energy = acc * h / 3.0;
    if (gradient_energy - 8.0).abs() >= 1e-8 * 8.0 {
        return Err(format!("gradient-only oracle gives {gradient_energy}"));
    }
    let mut worst = 0.0f64;
    for i in 0..=2000 {
        let x = -10.0 + 0.01 * i as f64;
        let lhs = 0.5 * kink_profile_prime(&p, x).powi(2);
        let rhs = scalar_potential_u(&p, kink_profile(&p, x));
        worst = worst.max((lhs - rhs).abs());
    }
    if worst >= 1e-10 {
        return Err(format!("first-order identity off by {worst:.3e}"));
    }
    Ok(format!(
        "energy {energy:.10} vs oracle 8 (gradient form {gradient_energy:.10}), pointwise bound within {worst:.1e}"
    ))
}

fn criterion_bag_property() -> Result<String, String> {
    let hits = representation_search();
    if hits.is_empty() {
        return Err("search returned no conventions".into());
    }
    let p = KinkParams::new(1.0, 1.0).map_err(|e| e.to_string())?;
    let xs: Vec<f64> = (0..201).map(|i| -5.0 + 0.05 * i as f64).collect();
    let base = Grid::new(-20.0, 20.0, 16001).map_err(|e| e.to_string())?;
    let refined = base.refined();
    for hit in &hits {
        let spinor = zero_mode_with_phase(&p, hit.phase);
        let maxima = bilinear_maxima(&hit.rep, &spinor, &xs);
        if maxima.scalar_max >= 1e-12 || maxima.kinetic_max >= 1e-12 {
            return Err(format!(
                "convention ({}, {}, {}) leaves bilinears {:.1e}/{:.1e}",
                hit.gamma0_label, hit.gamma1_label, hit.phase_label,
                maxima.scalar_max, maxima.kinetic_max
            ));
        }
        for grid in [&base, &refined] {
            let decomp =
                total_energy(&p, &hit.rep, &spinor, grid, 1e-10).map_err(|e| e.to_string())?;
            if decomp.fermi_energy.abs() >= 1e-10 * decomp.bose_energy {
                return Err(format!(
                    "convention ({}, {}, {}) costs fermion energy {:.3e} on {} points",
                    hit.gamma0_label, hit.gamma1_label, hit.phase_label,
                    decomp.fermi_energy, grid.n_points
                ));
            }
            if !decomp.bag_holds {
                return Err("bag flag cleared despite zero density".into());
            }
        }
    }
    // Negative control: same matrices, non-search phase pair.
    let hit = &hits[0];
    let control = zero_mode_with_phase(&p, [cx(1.0, 0.0), cx(1.0, 0.0)]);
    let decomp = total_energy(&p, &hit.rep, &control, &base, 1e-10).map_err(|e| e.to_string())?;
    if decomp.fermi_energy <= 1e-3 {
        return Err(format!(
            "control phase should cost energy, got {:.3e}",
            decomp.fermi_energy
        ));
    }
    Ok(format!(
        "{} conventions, fermion energy exactly 0 on both grids; control phase costs {:.3}",
        hits.len(),
        decomp.fermi_energy
    ))
}

fn criterion_clifford() -> Result<String, String> {
    let declared = GammaRep::new(mat_scale(&pauli(2), cx(0.0, 1.0)), pauli(3));
    let report = clifford_verify(&declared);
    if !report.pass
        || report.residual_00 != 0.0
        || report.residual_11 != 0.0
        || report.residual_01 != 0.0
    {
        return Err(format!(
            "anti-Hermitian pair should verify exactly, residuals {}/{}/{}",
            report.residual_00, report.residual_11, report.residual_01
        ));
    }
    let bad = GammaRep::new(pauli(1), pauli(3));
    let bad_report = clifford_verify(&bad);
    if bad_report.pass {
        return Err("Hermitian time-direction candidate must fail the metric".into());
    }
    if bad_report.residual_00 != 4.0 {
        return Err(format!(
            "expected the documented residual 4, got {}",
            bad_report.residual_00
        ));
    }
    Ok(format!(
        "declared pair exact; Hermitian candidate fails with residual {} against the (-1,1) metric",
        bad_report.residual_00
    ))
}

mod engine_props {
    use super::*;

    pub struct Gen {
        rng: ChaCha8Rng,
    }

    impl Gen {
        pub fn new(seed: u64) -> Gen {
            Gen {
                rng: ChaCha8Rng::seed_from_u64(seed),
            }
        }

        fn coeff(&mut self) -> susyqm::galg::Coeff {
            let re = coeff::rat(self.rng.gen_range(-5..=5), self.rng.gen_range(1..=3));
            let im = coeff::rat(self.rng.gen_range(-5..=5), self.rng.gen_range(1..=3));
            num::Complex::new(re, im)
        }

        fn nonzero_coeff(&mut self) -> susyqm::galg::Coeff {
            loop {
                let c = self.coeff();
                if !coeff::is_zero(&c) {
                    return c;
                }
            }
        }

        fn even_atom(&mut self) -> Atom {
            match self.rng.gen_range(0..3) {
                0 => atoms::x(),
                1 => atoms::x().dotted(),
                _ => atoms::d_aux(),
            }
        }

        pub fn odd_atom(&mut self) -> Atom {
            match self.rng.gen_range(0..5) {
                0 => atoms::psi(),
                1 => atoms::psi_c(),
                2 => atoms::psi().dotted(),
                3 => atoms::theta(),
                _ => atoms::theta_c(),
            }
        }

        fn odd_atom_dynamical(&mut self) -> Atom {
            match self.rng.gen_range(0..3) {
                0 => atoms::psi(),
                1 => atoms::psi_c(),
                _ => atoms::psi().dotted(),
            }
        }

        fn monomial_factors(&mut self, coordinates: bool) -> Vec<Factor> {
            let mut fs = vec![Factor::Scalar(self.nonzero_coeff())];
            for _ in 0..self.rng.gen_range(0..=2) {
                fs.push(Factor::Pow(self.even_atom(), self.rng.gen_range(1..=2)));
            }
            let odd_count = self.rng.gen_range(0..=2);
            for _ in 0..odd_count {
                let a = if coordinates {
                    self.odd_atom()
                } else {
                    self.odd_atom_dynamical()
                };
                fs.push(Factor::Atom(a));
            }
            fs
        }

        /// Random expression; `coordinates` allows theta/thetac factors.
        pub fn expr(&mut self, coordinates: bool) -> GradedExpr {
            let lists: Vec<Vec<Factor>> = (0..self.rng.gen_range(1..=3))
                .map(|_| self.monomial_factors(coordinates))
                .collect();
            GradedExpr::normalize(&lists)
        }

        /// Random single-monomial expression of definite parity.
        pub fn homogeneous(&mut self) -> GradedExpr {
            loop {
                let e = GradedExpr::normalize(&[self.monomial_factors(true)]);
                if !e.is_zero() {
                    return e;
                }
            }
        }
    }

    pub fn leibniz(g: &mut Gen) -> Result<(), String> {
        let a = g.homogeneous();
        let b = g.expr(true);
        let v = g.odd_atom();
        let product = a.mul_ref(&b);
        let lhs = product.left_derivative(&v).map_err(|e| e.to_string())?;
        let da = a.left_derivative(&v).map_err(|e| e.to_string())?;
        let db = b.left_derivative(&v).map_err(|e| e.to_string())?;
        let sign = match a.parity() {
            Some(Parity::Odd) => -1,
            _ => 1,
        };
        let rhs = da.mul_ref(&b) + a.mul_ref(&db).scale(&coeff::int(sign));
        if lhs != rhs {
            return Err(format!("Leibniz fails: d({a})({b}) in {v:?}"));
        }
        Ok(())
    }

    pub fn involution(g: &mut Gen) -> Result<(), String> {
        let e = g.expr(true);
        if e.conjugate().conjugate() != e {
            return Err(format!("conjugation is not an involution on {e}"));
        }
        Ok(())
    }

    pub fn graded_anticommutativity(g: &mut Gen) -> Result<(), String> {
        let a = g.homogeneous();
        let b = g.homogeneous();
        let both_odd =
            a.parity() == Some(Parity::Odd) && b.parity() == Some(Parity::Odd);
        let sign = if both_odd { -1 } else { 1 };
        if a.mul_ref(&b) != b.mul_ref(&a).scale(&coeff::int(sign)) {
            return Err(format!("graded commutation fails on {a} and {b}"));
        }
        Ok(())
    }

    pub fn berezin_top_coefficient(g: &mut Gen) -> Result<(), String> {
        let a = g.expr(false);
        let b = g.expr(false);
        let c = g.expr(false);
        let d = g.expr(false);
        let th = GradedExpr::from_atom(atoms::theta());
        let thc = GradedExpr::from_atom(atoms::theta_c());
        let e = a + th.mul_ref(&b) + thc.mul_ref(&c) + th.mul_ref(&thc).mul_ref(&d);
        let integral = e
            .berezin(&[atoms::theta(), atoms::theta_c()])
            .map_err(|e| e.to_string())?;
        let expected = d.scale(&coeff::int(susyqm::galg::TOP_COEFFICIENT_SIGN));
        if integral != expected {
            return Err(format!("top coefficient {integral} != {expected}"));
        }
        Ok(())
    }

    pub fn normal_form_idempotence(g: &mut Gen) -> Result<(), String> {
        let e = g.expr(true);
        let lists: Vec<Vec<Factor>> = e
            .terms()
            .map(|(m, c)| {
                let mut fs = vec![Factor::Scalar(c.clone())];
                for (a, k) in m.even_powers() {
                    fs.push(Factor::Pow(a.clone(), k));
                }
                for o in m.odd_atoms() {
                    fs.push(Factor::Atom(o.clone()));
                }
                fs
            })
            .collect();
        if GradedExpr::normalize(&lists) != e {
            return Err(format!("rebuilding the normal form changed {e}"));
        }
        let a = g.expr(true);
        let b = g.expr(true);
        let c = g.expr(true);
        if a.mul_ref(&b).mul_ref(&c) != a.mul_ref(&b.mul_ref(&c)) {
            return Err("product reassociation changed a normal form".into());
        }
        Ok(())
    }
}

fn criterion_engine_properties() -> Result<String, String> {
    let mut g = engine_props::Gen::new(7);
    let mut checks = 0usize;
    for _ in 0..2000 {
        engine_props::leibniz(&mut g)?;
        engine_props::involution(&mut g)?;
        engine_props::graded_anticommutativity(&mut g)?;
        engine_props::berezin_top_coefficient(&mut g)?;
        engine_props::normal_form_idempotence(&mut g)?;
        checks += 5;
    }
    if checks != 10_000 {
        return Err(format!("ran {checks} checks, want 10000"));
    }
    Ok("10000 randomized engine checks across 5 properties".into())
}

#[test]
fn acceptance_criteria() {
    let mut runner = Runner { failures: vec![] };
    let polys = random_superpotentials(50);
    let mut cache: Vec<ComponentLagrangian> = Vec::new();

    runner.run(1, "superalgebra relations", Duration::from_secs(1), || {
        criterion_superalgebra()
    });
    runner.run(2, "component reduction", Duration::from_secs(10), || {
        criterion_reduction(&polys, &mut cache)
    });
    runner.run(3, "off-shell invariance", Duration::from_secs(10), || {
        criterion_invariance(&cache)
    });
    runner.run(4, "spectral pairing", Duration::from_secs(30), || {
        criterion_spectral_pairing()
    });
    runner.run(5, "ground-state profile", Duration::from_secs(10), || {
        criterion_ground_state()
    });
    runner.run(6, "nilpotent expansion", Duration::from_secs(5), || {
        criterion_supersoliton()
    });
    runner.run(7, "topological energy", Duration::from_secs(5), || {
        criterion_kink_energy()
    });
    runner.run(8, "energy bag", Duration::from_secs(10), || {
        criterion_bag_property()
    });
    runner.run(9, "matrix algebra", Duration::from_secs(1), || {
        criterion_clifford()
    });
    runner.run(10, "engine properties", Duration::from_secs(30), || {
        criterion_engine_properties()
    });

    assert!(
        runner.failures.is_empty(),
        "acceptance failures:\n{}",
        runner.failures.join("\n")
    );
}
