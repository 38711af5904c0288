//! From the superspace action to the component Lagrangian and Hamiltonian.
//!
//! The chain is: build `(1/2)(Dth Phi)* (Dth Phi) - f(Phi)`, integrate out
//! the odd pair, split the component Lagrangian into named parts, eliminate
//! the auxiliary field by its algebraic equation of motion `D = -f'(x)`, and
//! Legendre-transform to `H = (1/2)p^2 + (1/2)V^2 + c [psic,psi] V'` with
//! `V = -f'`.
//!
//! The fermion commutator `[psic, psi] = psic psi - psi psic` stays a formal
//! Grassmann pair here (classically `-2 psi psic` in canonical order); the
//! quantized sector values `[psic, psi] = -/+ 1` enter only in the spectral
//! layer.
//!
//! Sign pinning: the mechanical Legendre transform lands on
//! `c = +1/2` (see [`HAMILTONIAN_FERMION_SIGN`]). The commonly displayed
//! template with `-1/2` is the same operator after the relabeling
//! `V -> -V` (equivalently `psi <-> psic`); [`HamiltonianSpec::printed_template`]
//! exhibits that form and a test pins the relation.

use crate::galg::coeff::{self, Coeff};
use crate::galg::{atoms, Atom, Factor, GalgError, GradedExpr, Monomial};
use crate::poly::RationalPoly;
use crate::superspace::{apply_d_cov, printed_component_laws, Superfield, SusyParams};
use num::Zero;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error("reduced Lagrangian has terms outside the component template: {0}")]
    ResidualOutsideTemplate(String),
    #[error("auxiliary field already eliminated")]
    DoubleElimination,
    #[error("auxiliary field still present; eliminate it first")]
    AuxiliaryPresent,
    #[error("superpotential has non-real coefficients")]
    ComplexSuperpotential,
    #[error(transparent)]
    Galg(#[from] GalgError),
}

/// Sign of the fermion term in the mechanical Hamiltonian,
/// `H = (1/2)p^2 + (1/2)V^2 + HAMILTONIAN_FERMION_SIGN * (1/2)[psic,psi]V'`.
pub const HAMILTONIAN_FERMION_SIGN: i64 = 1;

/// Finite power series `f(y) = sum a_n y^n` with exact complex rational
/// coefficients; real coefficients give a real action.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperpotentialSeries {
    coeffs: Vec<Coeff>,
}

impl SuperpotentialSeries {
    pub fn new(mut coeffs: Vec<Coeff>) -> SuperpotentialSeries {
        while coeffs.last().is_some_and(coeff::is_zero) {
            coeffs.pop();
        }
        SuperpotentialSeries { coeffs }
    }

    pub fn zero() -> SuperpotentialSeries {
        SuperpotentialSeries { coeffs: Vec::new() }
    }

    pub fn from_real(p: &RationalPoly) -> SuperpotentialSeries {
        SuperpotentialSeries::new(p.coeffs().iter().cloned().map(coeff::from_rat).collect())
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im.is_zero())
    }

    pub fn real_poly(&self) -> Result<RationalPoly, ReductionError> {
        if !self.is_real() {
            return Err(ReductionError::ComplexSuperpotential);
        }
        Ok(RationalPoly::new(self.coeffs.iter().map(|c| c.re.clone()).collect()))
    }

    pub fn derivative(&self) -> SuperpotentialSeries {
        SuperpotentialSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * coeff::int(n as i64))
                .collect(),
        )
    }

    pub fn negated(&self) -> SuperpotentialSeries {
        SuperpotentialSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Evaluate on any even graded expression; nilpotent parts truncate
    /// themselves through the exact power computation.
    pub fn apply(&self, arg: &GradedExpr) -> GradedExpr {
        let mut acc = GradedExpr::zero();
        let mut power = GradedExpr::one();
        for c in &self.coeffs {
            acc = acc + power.scale(c);
            power = power.mul_ref(arg);
        }
        acc
    }

    pub fn to_graded(&self, var: &Atom) -> GradedExpr {
        self.apply(&GradedExpr::from_atom(var.clone()))
    }
}

/// Component Lagrangian split into its four template parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentLagrangian {
    pub kinetic_bose: GradedExpr,
    pub kinetic_fermi: GradedExpr,
    pub auxiliary: GradedExpr,
    pub yukawa: GradedExpr,
    pub eliminated: bool,
    /// `V = -f'`, recorded when the auxiliary field is integrated out.
    pub potential: Option<SuperpotentialSeries>,
}

impl ComponentLagrangian {
    pub fn total(&self) -> GradedExpr {
        self.kinetic_bose.clone()
            + self.kinetic_fermi.clone()
            + self.auxiliary.clone()
            + self.yukawa.clone()
    }

    pub fn contains_auxiliary(&self) -> bool {
        let d = atoms::d_aux();
        [
            &self.kinetic_bose,
            &self.kinetic_fermi,
            &self.auxiliary,
            &self.yukawa,
        ]
        .iter()
        .any(|e| e.contains_atom(&d))
    }

    pub fn to_text(&self) -> String {
        format!(
            "kinetic_bose: {}\nkinetic_fermi: {}\nauxiliary: {}\nyukawa: {}",
            self.kinetic_bose, self.kinetic_fermi, self.auxiliary, self.yukawa
        )
    }

    pub fn to_latex(&self) -> String {
        format!("L = {}", latex::expr_to_latex(&self.total()))
    }
}

/// The three-term Hamiltonian reached from an eliminated Lagrangian.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianSpec {
    pub potential_v: SuperpotentialSeries,
    pub potential_v_prime: SuperpotentialSeries,
    /// `(1/2)p^2 + (1/2)V(x)^2 + (1/2)[psic,psi] V'(x)` in canonical form.
    pub form: GradedExpr,
}

impl HamiltonianSpec {
    /// The template as usually displayed, `... - (1/2)[psic,psi]V'` with the
    /// same `V`; it is the mechanical form after the relabeling
    /// `psi <-> psic` (equivalently `V -> -V`).
    pub fn printed_template(&self) -> GradedExpr {
        hamiltonian_form(&self.potential_v, -HAMILTONIAN_FERMION_SIGN)
    }

    /// Scalar sector Hamiltonians `(1/2)p^2 + (1/2)V^2 + s*(1/2)V'` for the
    /// quantized commutator values `[psic,psi] = s = -1, +1`.
    pub fn sector_form(&self, commutator_value: i64) -> GradedExpr {
        let x = atoms::x();
        let p = GradedExpr::from_atom(atoms::p());
        let v = self.potential_v.to_graded(&x);
        let vp = self.potential_v_prime.to_graded(&x);
        p.pow(2).scale(&coeff::real(1, 2))
            + v.pow(2).scale(&coeff::real(1, 2))
            + vp.scale(&coeff::real(HAMILTONIAN_FERMION_SIGN * commutator_value, 2))
    }

    pub fn to_text(&self) -> String {
        format!("H = {}", self.form)
    }

    pub fn to_latex(&self) -> String {
        format!("H = {}", latex::expr_to_latex(&self.form))
    }
}

fn half() -> Coeff {
    coeff::real(1, 2)
}

/// `(1/2)(Dth Phi)* (Dth Phi) - f(Phi)`.
pub fn action_integrand(phi: &Superfield, f: &SuperpotentialSeries) -> GradedExpr {
    let expansion = phi.expand();
    let dphi = apply_d_cov(&expansion);
    dphi.conjugate().mul_ref(&dphi).scale(&half()) - f.apply(&expansion)
}

/// Berezin-integrate the action integrand and split the component result.
pub fn reduce_to_lagrangian(
    integrand: &GradedExpr,
) -> Result<ComponentLagrangian, ReductionError> {
    let lagrangian = integrand.berezin(&[atoms::theta(), atoms::theta_c()])?;
    let d = atoms::d_aux();
    let psi = atoms::psi();
    let psi_c = atoms::psi_c();
    let mut parts = ComponentLagrangian {
        kinetic_bose: GradedExpr::zero(),
        kinetic_fermi: GradedExpr::zero(),
        auxiliary: GradedExpr::zero(),
        yukawa: GradedExpr::zero(),
        eliminated: false,
        potential: None,
    };
    let mut residual = GradedExpr::zero();
    for (m, c) in lagrangian.terms() {
        let single = term_expr(m, c);
        let has_dotted_odd = m.odd_atoms().iter().any(|a| a.dot_order > 0);
        let has_dotted_even = m.even_powers().any(|(a, _)| a.dot_order > 0);
        let undotted_pair = m.contains(&psi) && m.contains(&psi_c);
        if m.contains(&d) {
            parts.auxiliary = parts.auxiliary + single;
        } else if has_dotted_odd {
            parts.kinetic_fermi = parts.kinetic_fermi + single;
        } else if has_dotted_even && m.odd_atoms().is_empty() {
            parts.kinetic_bose = parts.kinetic_bose + single;
        } else if undotted_pair && m.odd_atoms().len() == 2 {
            parts.yukawa = parts.yukawa + single;
        } else {
            residual = residual + single;
        }
    }
    if !residual.is_zero() {
        return Err(ReductionError::ResidualOutsideTemplate(residual.to_string()));
    }
    Ok(parts)
}

fn term_expr(m: &Monomial, c: &Coeff) -> GradedExpr {
    let mut factors = vec![Factor::Scalar(c.clone())];
    for (a, k) in m.even_powers() {
        factors.push(Factor::Pow(a.clone(), k));
    }
    for o in m.odd_atoms() {
        factors.push(Factor::Atom(o.clone()));
    }
    GradedExpr::normalize(&[factors])
}

/// Substitute the auxiliary equation of motion `D = -f'(x)`.
pub fn eliminate_auxiliary(
    l: &ComponentLagrangian,
    f: &SuperpotentialSeries,
) -> Result<ComponentLagrangian, ReductionError> {
    if l.eliminated {
        return Err(ReductionError::DoubleElimination);
    }
    let d = atoms::d_aux();
    let v = f.derivative().negated();
    let image = v.to_graded(&atoms::x());
    let sub = |e: &GradedExpr| e.substitute(&d, &image);
    Ok(ComponentLagrangian {
        kinetic_bose: sub(&l.kinetic_bose)?,
        kinetic_fermi: sub(&l.kinetic_fermi)?,
        auxiliary: sub(&l.auxiliary)?,
        yukawa: sub(&l.yukawa)?,
        eliminated: true,
        potential: Some(v),
    })
}

fn hamiltonian_form(v: &SuperpotentialSeries, fermion_sign: i64) -> GradedExpr {
    let x = atoms::x();
    let p = GradedExpr::from_atom(atoms::p());
    let psi = GradedExpr::from_atom(atoms::psi());
    let psi_c = GradedExpr::from_atom(atoms::psi_c());
    let commutator = psi_c.mul_ref(&psi) - psi.mul_ref(&psi_c);
    let v_expr = v.to_graded(&x);
    let vp_expr = v.derivative().to_graded(&x);
    p.pow(2).scale(&half())
        + v_expr.pow(2).scale(&half())
        + commutator
            .mul_ref(&vp_expr)
            .scale(&coeff::real(fermion_sign, 2))
}

/// Legendre transform of an eliminated Lagrangian. The fermion kinetic term
/// is first order, so it carries no independent momentum and the Hamiltonian
/// is `p x' - L` with the potential terms flipped in sign.
pub fn hamiltonian(l: &ComponentLagrangian) -> Result<HamiltonianSpec, ReductionError> {
    if !l.eliminated || l.contains_auxiliary() {
        return Err(ReductionError::AuxiliaryPresent);
    }
    let v = l
        .potential
        .clone()
        .expect("eliminated Lagrangian records its potential");
    Ok(HamiltonianSpec {
        potential_v_prime: v.derivative(),
        form: hamiltonian_form(&v, HAMILTONIAN_FERMION_SIGN),
        potential_v: v,
    })
}

/// Images of the component atoms under one supersymmetry variation,
/// extended to dotted atoms by time differentiation.
fn variation_images(
    phi: &Superfield,
    params: &SusyParams,
) -> impl Fn(&Atom) -> Option<GradedExpr> {
    let laws = printed_component_laws(phi, params);
    let table: BTreeMap<Atom, GradedExpr> = BTreeMap::from([
        (phi.x.clone(), laws.delta_x),
        (phi.psi.clone(), laws.delta_psi),
        (phi.psi_c.clone(), laws.delta_psi_c),
        (phi.d.clone(), laws.delta_d),
    ]);
    move |a: &Atom| {
        let mut base = a.clone();
        base.dot_order = 0;
        let mut img = table.get(&base)?.clone();
        for _ in 0..a.dot_order {
            img = img.time_derivative();
        }
        Some(img)
    }
}

/// First-order variation of the full off-shell Lagrangian.
pub fn vary_lagrangian(
    l: &ComponentLagrangian,
    params: &SusyParams,
) -> Result<GradedExpr, ReductionError> {
    let images = variation_images(&Superfield::standard(), params);
    Ok(l.total().apply_even_derivation(&images)?)
}

/// `delta L` minus the best total-time-derivative candidate; zero exactly
/// when the variation is a surface term.
pub fn invariance_residual(
    l: &ComponentLagrangian,
    params: &SusyParams,
) -> Result<GradedExpr, ReductionError> {
    let delta_l = vary_lagrangian(l, params)?;
    if delta_l.is_zero() {
        return Ok(delta_l);
    }
    let k = total_derivative_candidate(&delta_l);
    Ok(delta_l - k.time_derivative())
}

/// Candidate `K` with `d/dt K` as close to the target as exact linear algebra
/// allows: unknown monomials come from lowering one dot anywhere in the
/// target's support, and their coefficients solve the induced linear system.
fn total_derivative_candidate(target: &GradedExpr) -> GradedExpr {
    let mut seen = BTreeSet::new();
    let mut candidates: Vec<GradedExpr> = Vec::new();
    for (m, _) in target.terms() {
        for cand in lowered_monomials(m) {
            let key = cand
                .terms()
                .next()
                .map(|(mm, _)| mm.clone())
                .expect("candidate is a single monomial");
            if seen.insert(key) {
                candidates.push(cand);
            }
        }
    }
    if candidates.is_empty() {
        return GradedExpr::zero();
    }
    let images: Vec<GradedExpr> = candidates.iter().map(|c| c.time_derivative()).collect();
    let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for e in images.iter().chain(std::iter::once(target)) {
        for (m, _) in e.terms() {
            let next = row_index.len();
            row_index.entry(m.clone()).or_insert(next);
        }
    }
    let n_rows = row_index.len();
    let n_cols = images.len();
    let mut a = vec![vec![Coeff::zero(); n_cols]; n_rows];
    let mut b = vec![Coeff::zero(); n_rows];
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            a[row_index[m]][j] = c.clone();
        }
    }
    for (m, c) in target.terms() {
        b[row_index[m]] = c.clone();
    }
    let solution = solve_least_consistent(a, b);
    let mut k = GradedExpr::zero();
    for (c, cand) in solution.iter().zip(&candidates) {
        if !c.is_zero() {
            k = k + cand.scale(c);
        }
    }
    k
}

/// All single-dot lowerings of a monomial, each as a one-term expression.
fn lowered_monomials(m: &Monomial) -> Vec<GradedExpr> {
    let mut out = Vec::new();
    let evens: Vec<(Atom, i64)> = m.even_powers().map(|(a, k)| (a.clone(), k)).collect();
    let odds: Vec<Atom> = m.odd_atoms().to_vec();
    for (i, (a, _)) in evens.iter().enumerate() {
        let Some(low) = a.undotted() else { continue };
        let mut fs: Vec<Factor> = Vec::new();
        for (j, (b, k)) in evens.iter().enumerate() {
            let k = if i == j { k - 1 } else { *k };
            if k != 0 {
                fs.push(Factor::Pow(b.clone(), k));
            }
        }
        fs.push(Factor::Pow(low, 1));
        fs.extend(odds.iter().cloned().map(Factor::Atom));
        let e = GradedExpr::normalize(&[fs]);
        if !e.is_zero() {
            out.push(e);
        }
    }
    for (i, o) in odds.iter().enumerate() {
        let Some(low) = o.undotted() else { continue };
        let mut fs: Vec<Factor> = evens
            .iter()
            .map(|(a, k)| Factor::Pow(a.clone(), *k))
            .collect();
        for (j, oo) in odds.iter().enumerate() {
            fs.push(Factor::Atom(if i == j { low.clone() } else { oo.clone() }));
        }
        let e = GradedExpr::normalize(&[fs]);
        if !e.is_zero() {
            out.push(e);
        }
    }
    out
}

/// Exact Gaussian elimination; on inconsistent systems returns the particular
/// solution of the consistent sub-system with free variables at zero.
fn solve_least_consistent(mut a: Vec<Vec<Coeff>>, mut b: Vec<Coeff>) -> Vec<Coeff> {
    let n_rows = a.len();
    let n_cols = if n_rows == 0 { 0 } else { a[0].len() };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n_cols];
    let mut rank_row = 0;
    for col in 0..n_cols {
        let Some(pr) = (rank_row..n_rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank_row, pr);
        b.swap(rank_row, pr);
        let inv = coeff::one() / a[rank_row][col].clone();
        for x in a[rank_row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        b[rank_row] = b[rank_row].clone() * inv;
        for r in 0..n_rows {
            if r != rank_row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for cc in 0..n_cols {
                    let delta = factor.clone() * a[rank_row][cc].clone();
                    a[r][cc] = a[r][cc].clone() - delta;
                }
                let delta = factor * b[rank_row].clone();
                b[r] = b[r].clone() - delta;
            }
        }
        pivot_of_col[col] = Some(rank_row);
        rank_row += 1;
        if rank_row == n_rows {
            break;
        }
    }
    (0..n_cols)
        .map(|col| match pivot_of_col[col] {
            Some(r) => b[r].clone(),
            None => Coeff::zero(),
        })
        .collect()
}

pub mod latex {
    //! LaTeX fragment emission for graded expressions.

    use crate::galg::coeff::{Coeff, Rat};
    use crate::galg::{Atom, GradedExpr};
    use num::{One, Signed, Zero};

    fn atom_to_latex(a: &Atom) -> String {
        let base = match a.name.as_str() {
            "theta" => r"\theta".to_string(),
            "psi" => r"\psi".to_string(),
            "eps" => r"\varepsilon".to_string(),
            other => other.to_string(),
        };
        let starred = if a.conjugated {
            format!("{base}^{{*}}")
        } else {
            base
        };
        match a.dot_order {
            0 => starred,
            1 => format!(r"\dot{{{starred}}}"),
            2 => format!(r"\ddot{{{starred}}}"),
            k => format!("{starred}^{{({k})}}"),
        }
    }

    fn rat_to_latex(r: &Rat) -> String {
        if r.is_integer() {
            format!("{}", r.numer())
        } else {
            format!(r"\frac{{{}}}{{{}}}", r.numer(), r.denom())
        }
    }

    /// Magnitude factors of a coefficient, plus whether the term is negated.
    fn coeff_factors(c: &Coeff) -> (Vec<String>, bool) {
        if c.im.is_zero() {
            let mag = c.re.abs();
            let fs = if mag.is_one() {
                Vec::new()
            } else {
                vec![rat_to_latex(&mag)]
            };
            (fs, c.re.is_negative())
        } else if c.re.is_zero() {
            let mag = c.im.abs();
            let mut fs = Vec::new();
            if !mag.is_one() {
                fs.push(rat_to_latex(&mag));
            }
            fs.push("i".to_string());
            (fs, c.im.is_negative())
        } else {
            (
                vec![format!(
                    r"\left({} + {} i\right)",
                    rat_to_latex(&c.re),
                    rat_to_latex(&c.im)
                )],
                false,
            )
        }
    }

    pub fn expr_to_latex(e: &GradedExpr) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in e.terms().enumerate() {
            let (mut factors, negative) = coeff_factors(c);
            for (a, k) in m.even_powers() {
                if k == 1 {
                    factors.push(atom_to_latex(a));
                } else {
                    factors.push(format!("{}^{{{k}}}", atom_to_latex(a)));
                }
            }
            for o in m.odd_atoms() {
                factors.push(atom_to_latex(o));
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&factors.join(" "));
        }
        out
    }
}
