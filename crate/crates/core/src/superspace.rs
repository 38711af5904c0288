//! Superspace calculus over one even time and the odd pair (theta, thetac).
//!
//! Operators act on [`GradedExpr`] values:
//!
//! * supercharges   `Q  = i d/dtheta  - thetac d/dt`,
//!   `Qc = -i d/dthetac + theta d/dt`;
//! * covariant derivatives `Dth  = d/dtheta  - i thetac d/dt`,
//!   `Dthc = d/dthetac - i theta d/dt`.
//!
//! Extensionally (checked on a generic superfield expansion and on a probe
//! basis): `{Q, Qc} = 2i d/dt`, `{Dth, Dthc} = -2i d/dt`, all squares and
//! mixed brackets vanish.
//!
//! The finite transformation convention is pinned to
//! `delta Phi = VARIATION_SIGN * i * (epsc * (Qc Phi) + (Q Phi) * eps)`.
//! [`convention_search`] enumerates all 16 joint sign flips of the four
//! operators; exactly four preserve the bracket algebra, and requiring the
//! component laws `i dx = epsc psic - psi eps`, `dpsi = -i epsc D + epsc x'`,
//! `dD = d/dt(eps psi + psic epsc)` to come out as written selects the single
//! set recorded here.

use crate::galg::{atoms, coeff, Atom, GalgError, GradedExpr};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuperspaceError {
    #[error("expression does not lie in the superfield component basis: {0}")]
    NonSuperfieldForm(String),
    #[error(transparent)]
    Galg(#[from] GalgError),
}

/// Sign pinning the finite variation relative to `i (epsc Qc + Q eps)`.
pub const VARIATION_SIGN: i64 = -1;

/// The component content of a scalar superfield.
#[derive(Clone, Debug)]
pub struct Superfield {
    pub x: Atom,
    pub psi: Atom,
    pub psi_c: Atom,
    pub d: Atom,
}

impl Superfield {
    pub fn standard() -> Superfield {
        Superfield {
            x: atoms::x(),
            psi: atoms::psi(),
            psi_c: atoms::psi_c(),
            d: atoms::d_aux(),
        }
    }

    /// Expansion `x + i theta psi - i psic thetac + thetac theta D`.
    pub fn expand(&self) -> GradedExpr {
        let th = GradedExpr::from_atom(atoms::theta());
        let thc = GradedExpr::from_atom(atoms::theta_c());
        let i = GradedExpr::scalar(coeff::i_unit());
        GradedExpr::from_atom(self.x.clone())
            + i.clone() * th.clone() * GradedExpr::from_atom(self.psi.clone())
            - i * GradedExpr::from_atom(self.psi_c.clone()) * thc.clone()
            + thc * th * GradedExpr::from_atom(self.d.clone())
    }
}

/// Odd transformation parameters.
#[derive(Clone, Debug)]
pub struct SusyParams {
    pub eps: Atom,
    pub eps_c: Atom,
}

impl SusyParams {
    pub fn standard() -> SusyParams {
        SusyParams {
            eps: atoms::eps(),
            eps_c: atoms::eps_c(),
        }
    }
}

fn mul_left(a: Atom, e: &GradedExpr) -> GradedExpr {
    GradedExpr::from_atom(a).mul_ref(e)
}

fn i_times(e: GradedExpr) -> GradedExpr {
    e.scale(&coeff::i_unit())
}

/// Supercharge `Q = i d/dtheta - thetac d/dt`.
pub fn apply_q(e: &GradedExpr) -> GradedExpr {
    i_times(e.left_derivative(&atoms::theta()).expect("theta is odd"))
        - mul_left(atoms::theta_c(), &e.time_derivative())
}

/// Supercharge `Qc = -i d/dthetac + theta d/dt`.
pub fn apply_q_c(e: &GradedExpr) -> GradedExpr {
    -i_times(e.left_derivative(&atoms::theta_c()).expect("thetac is odd"))
        + mul_left(atoms::theta(), &e.time_derivative())
}

/// Covariant derivative `Dth = d/dtheta - i thetac d/dt`.
pub fn apply_d_cov(e: &GradedExpr) -> GradedExpr {
    e.left_derivative(&atoms::theta()).expect("theta is odd")
        - i_times(mul_left(atoms::theta_c(), &e.time_derivative()))
}

/// Covariant derivative `Dthc = d/dthetac - i theta d/dt`.
pub fn apply_d_cov_c(e: &GradedExpr) -> GradedExpr {
    e.left_derivative(&atoms::theta_c()).expect("thetac is odd")
        - i_times(mul_left(atoms::theta(), &e.time_derivative()))
}

type Op = Box<dyn Fn(&GradedExpr) -> GradedExpr>;

fn signed_ops(signs: [i64; 4]) -> [Op; 4] {
    let scale = |s: i64, e: GradedExpr| e.scale(&coeff::int(s));
    [
        Box::new(move |e: &GradedExpr| scale(signs[0], apply_q(e))),
        Box::new(move |e: &GradedExpr| scale(signs[1], apply_q_c(e))),
        Box::new(move |e: &GradedExpr| scale(signs[2], apply_d_cov(e))),
        Box::new(move |e: &GradedExpr| scale(signs[3], apply_d_cov_c(e))),
    ]
}

fn anticommutator(f: &Op, g: &Op, e: &GradedExpr) -> GradedExpr {
    f(&g(e)) + g(&f(e))
}

/// Probe expressions the bracket relations are evaluated on: the generic
/// superfield expansion plus low-degree monomials of both parities.
fn probe_exprs() -> Vec<GradedExpr> {
    let th = GradedExpr::from_atom(atoms::theta());
    let thc = GradedExpr::from_atom(atoms::theta_c());
    let ps = GradedExpr::from_atom(atoms::psi());
    let psc = GradedExpr::from_atom(atoms::psi_c());
    let xx = GradedExpr::from_atom(atoms::x());
    vec![
        Superfield::standard().expand(),
        th.clone(),
        thc.clone(),
        ps.clone(),
        xx.clone(),
        th.clone() * thc.clone() * ps.clone(),
        psc * xx.clone() + th.clone() * GradedExpr::from_atom(atoms::d_aux()),
        thc * xx.time_derivative(),
        GradedExpr::one(),
    ]
}

/// One bracket relation evaluated on every probe.
#[derive(Clone, Debug)]
pub struct AlgebraEntry {
    pub name: String,
    pub residuals: Vec<GradedExpr>,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct AlgebraReport {
    pub entries: Vec<AlgebraEntry>,
}

impl AlgebraReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn to_document(&self) -> AlgebraDocument {
        AlgebraDocument {
            relations: self
                .entries
                .iter()
                .map(|e| AlgebraRelationDoc {
                    name: e.name.clone(),
                    pass: e.pass,
                    residuals: e.residuals.iter().map(|r| r.to_string()).collect(),
                })
                .collect(),
            all_pass: self.all_pass(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraRelationDoc {
    pub name: String,
    pub pass: bool,
    pub residuals: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraDocument {
    pub relations: Vec<AlgebraRelationDoc>,
    pub all_pass: bool,
}

fn algebra_residuals(signs: [i64; 4]) -> Vec<(String, Vec<GradedExpr>)> {
    let [q, qc, d, dc] = signed_ops(signs);
    let probes = probe_exprs();
    let two_i_dt =
        |e: &GradedExpr| e.time_derivative().scale(&(coeff::i_unit() * coeff::int(2)));
    let rows: Vec<(&str, Box<dyn Fn(&GradedExpr) -> GradedExpr>)> = vec![
        (
            "{Q,Qc} - 2i d/dt",
            Box::new(|e| anticommutator(&q, &qc, e) - two_i_dt(e)),
        ),
        ("{Q,Q}", Box::new(|e| anticommutator(&q, &q, e))),
        ("{Qc,Qc}", Box::new(|e| anticommutator(&qc, &qc, e))),
        (
            "{Dth,Dthc} + 2i d/dt",
            Box::new(|e| anticommutator(&d, &dc, e) + two_i_dt(e)),
        ),
        ("{Dth,Q}", Box::new(|e| anticommutator(&d, &q, e))),
        ("{Dth,Qc}", Box::new(|e| anticommutator(&d, &qc, e))),
    ];
    rows.into_iter()
        .map(|(name, rel)| (name.to_string(), probes.iter().map(|p| rel(p)).collect()))
        .collect()
}

/// Evaluate the six bracket relations of the algebra extensionally.
pub fn algebra_report() -> AlgebraReport {
    AlgebraReport {
        entries: algebra_residuals([1, 1, 1, 1])
            .into_iter()
            .map(|(name, residuals)| {
                let pass = residuals.iter().all(|r| r.is_zero());
                AlgebraEntry {
                    name,
                    residuals,
                    pass,
                }
            })
            .collect(),
    }
}

/// The four coefficient expressions of a superfield-shaped element,
/// `e = scalar + i theta psi_coeff - i psi_c_coeff thetac + thetac theta top`.
#[derive(Clone, Debug)]
pub struct Components {
    pub scalar: GradedExpr,
    pub psi_coeff: GradedExpr,
    pub psi_c_coeff: GradedExpr,
    pub top: GradedExpr,
}

/// Split an expression over the basis `(1, theta, thetac, thetac theta)` and
/// read off the component coefficients in the standard parameterization.
pub fn superfield_components(e: &GradedExpr) -> Result<Components, SuperspaceError> {
    let th = atoms::theta();
    let thc = atoms::theta_c();
    let coordinate_free =
        |g: &GradedExpr| g.restrict(|m| !m.contains(&th) && !m.contains(&thc));
    let minus_i = coeff::imag(-1, 1);
    let scalar = coordinate_free(e);
    let psi_coeff = coordinate_free(&e.left_derivative(&th)?).scale(&minus_i);
    let psi_c_coeff = coordinate_free(&e.left_derivative(&thc)?).scale(&minus_i);
    let top = -coordinate_free(&e.left_derivative(&th)?.left_derivative(&thc)?);
    let c = Components {
        scalar,
        psi_coeff,
        psi_c_coeff,
        top,
    };
    let rebuilt = rebuild(&c);
    if rebuilt != *e {
        return Err(SuperspaceError::NonSuperfieldForm((e.clone() - rebuilt).to_string()));
    }
    Ok(c)
}

fn rebuild(c: &Components) -> GradedExpr {
    let th = GradedExpr::from_atom(atoms::theta());
    let thc = GradedExpr::from_atom(atoms::theta_c());
    let i = GradedExpr::scalar(coeff::i_unit());
    c.scalar.clone()
        + i.clone() * th.clone() * c.psi_coeff.clone()
        - i * c.psi_c_coeff.clone() * thc.clone()
        + thc * th * c.top.clone()
}

/// Component variations of one supersymmetry transformation.
#[derive(Clone, Debug)]
pub struct SusyVariation {
    pub delta_phi: GradedExpr,
    pub delta_x: GradedExpr,
    pub delta_psi: GradedExpr,
    pub delta_psi_c: GradedExpr,
    pub delta_d: GradedExpr,
}

/// Finite variation with the pinned convention; see module docs.
pub fn susy_vary(
    phi: &Superfield,
    params: &SusyParams,
) -> Result<SusyVariation, SuperspaceError> {
    let expansion = phi.expand();
    let delta_phi = variation_of(&expansion, params, VARIATION_SIGN);
    let c = superfield_components(&delta_phi)?;
    Ok(SusyVariation {
        delta_phi,
        delta_x: c.scalar,
        delta_psi: c.psi_coeff,
        delta_psi_c: c.psi_c_coeff,
        delta_d: c.top,
    })
}

fn variation_of(expansion: &GradedExpr, params: &SusyParams, sign: i64) -> GradedExpr {
    let qc_phi = apply_q_c(expansion);
    let q_phi = apply_q(expansion);
    let term = mul_left(params.eps_c.clone(), &qc_phi)
        + q_phi.mul_ref(&GradedExpr::from_atom(params.eps.clone()));
    i_times(term).scale(&coeff::int(sign))
}

/// The transformation laws as printed, for comparison against a variation.
pub fn printed_component_laws(phi: &Superfield, params: &SusyParams) -> SusyVariation {
    let e = |a: &Atom| GradedExpr::from_atom(a.clone());
    let i = GradedExpr::scalar(coeff::i_unit());
    let minus_i = GradedExpr::scalar(coeff::imag(-1, 1));
    let eps = e(&params.eps);
    let eps_c = e(&params.eps_c);
    let psi = e(&phi.psi);
    let psi_c = e(&phi.psi_c);
    let x_dot = e(&phi.x).time_derivative();
    let d = e(&phi.d);
    // i dx = epsc psic - psi eps
    let delta_x = minus_i.clone() * (eps_c.clone() * psi_c.clone() - psi.clone() * eps.clone());
    // dpsi = -i epsc D + epsc x'
    let delta_psi = minus_i * eps_c.clone() * d.clone() + eps_c.clone() * x_dot.clone();
    // conjugate law
    let delta_psi_c = i * eps.clone() * d + eps.clone() * x_dot;
    // dD = d/dt (eps psi + psic epsc)
    let delta_d = (eps * psi + psi_c * eps_c).time_derivative();
    SusyVariation {
        delta_phi: GradedExpr::zero(),
        delta_x,
        delta_psi,
        delta_psi_c,
        delta_d,
    }
}

/// Component-by-component mismatches between a variation and the printed
/// laws; empty under the pinned convention.
pub fn printed_law_deviations(v: &SusyVariation, phi: &Superfield, params: &SusyParams) -> Vec<String> {
    let laws = printed_component_laws(phi, params);
    let mut out = Vec::new();
    for (name, got, want) in [
        ("delta_x", &v.delta_x, &laws.delta_x),
        ("delta_psi", &v.delta_psi, &laws.delta_psi),
        ("delta_psi_c", &v.delta_psi_c, &laws.delta_psi_c),
        ("delta_d", &v.delta_d, &laws.delta_d),
    ] {
        if got != want {
            out.push(format!("{name}: got {got}, printed law {want}"));
        }
    }
    out
}

/// Result of enumerating the 16 joint sign choices of (Q, Qc, Dth, Dthc).
#[derive(Clone, Debug)]
pub struct ConventionSearch {
    /// Sign sets preserving all six bracket relations.
    pub algebra_passing: Vec<[i64; 4]>,
    /// Algebra-passing sets that also reproduce the printed component laws
    /// (via the variation built from the flipped supercharges) and the
    /// printed first-order expansion of `Dth Phi`.
    pub full_match: Vec<[i64; 4]>,
}

pub fn convention_search() -> ConventionSearch {
    let phi = Superfield::standard();
    let params = SusyParams::standard();
    let expansion = phi.expand();
    let printed = printed_component_laws(&phi, &params);
    // Dth Phi as displayed: i psi - thetac D - i thetac x' + thetac theta psi'
    let e = |a: Atom| GradedExpr::from_atom(a);
    let th = e(atoms::theta());
    let thc = e(atoms::theta_c());
    let i = GradedExpr::scalar(coeff::i_unit());
    let printed_dth_phi = i.clone() * e(atoms::psi())
        - thc.clone() * e(atoms::d_aux())
        - i * thc.clone() * e(atoms::x()).time_derivative()
        + thc * th * e(atoms::psi()).time_derivative();

    let mut algebra_passing = Vec::new();
    let mut full_match = Vec::new();
    for bits in 0..16u32 {
        let signs = [
            if bits & 1 == 0 { 1 } else { -1 },
            if bits & 2 == 0 { 1 } else { -1 },
            if bits & 4 == 0 { 1 } else { -1 },
            if bits & 8 == 0 { 1 } else { -1 },
        ];
        let algebra_ok = algebra_residuals(signs)
            .iter()
            .all(|(_, rs)| rs.iter().all(|r| r.is_zero()));
        if !algebra_ok {
            continue;
        }
        algebra_passing.push(signs);
        // Variation with flipped charges, written with the printed +i prefix.
        let qc_phi = apply_q_c(&expansion).scale(&coeff::int(signs[1]));
        let q_phi = apply_q(&expansion).scale(&coeff::int(signs[0]));
        let delta_phi = i_times(
            mul_left(params.eps_c.clone(), &qc_phi)
                + q_phi.mul_ref(&GradedExpr::from_atom(params.eps.clone())),
        );
        let Ok(c) = superfield_components(&delta_phi) else {
            continue;
        };
        let laws_ok = c.scalar == printed.delta_x
            && c.psi_coeff == printed.delta_psi
            && c.psi_c_coeff == printed.delta_psi_c
            && c.top == printed.delta_d;
        let display_ok =
            apply_d_cov(&expansion).scale(&coeff::int(signs[2])) == printed_dth_phi;
        if laws_ok && display_ok {
            full_match.push(signs);
        }
    }
    ConventionSearch {
        algebra_passing,
        full_match,
    }
}
