use super::atom::{Atom, Parity};
use super::coeff::{self, Coeff};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GalgError {
    #[error("left derivative with respect to even atom `{0}`")]
    EvenDerivative(String),
    #[error("integration variable `{0}` repeats in the measure")]
    RepeatedIntegrationAtom(String),
    #[error("substitution image has parity {found:?}, target `{target}` is {expected:?}")]
    ParityMismatch {
        target: String,
        expected: Parity,
        found: Parity,
    },
    #[error("cannot substitute into negative power of `{0}`")]
    NegativePowerSubstitution(String),
    #[error("derivation image for `{0}` changes parity")]
    DerivationParity(String),
}

/// One canonical monomial: even atoms with integer exponents (negative powers
/// of even atoms are permitted) and a strictly ascending list of odd atoms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    even: BTreeMap<Atom, i64>,
    odd: Vec<Atom>,
}

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial {
            even: BTreeMap::new(),
            odd: Vec::new(),
        }
    }

    pub fn even_powers(&self) -> impl Iterator<Item = (&Atom, i64)> {
        self.even.iter().map(|(a, k)| (a, *k))
    }

    pub fn odd_atoms(&self) -> &[Atom] {
        &self.odd
    }

    pub fn parity(&self) -> Parity {
        if self.odd.len() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.even.contains_key(atom) || self.odd.binary_search(atom).is_ok()
    }

    pub fn max_dot_order(&self) -> u32 {
        self.even
            .keys()
            .chain(self.odd.iter())
            .map(|a| a.dot_order)
            .max()
            .unwrap_or(0)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.even.keys().chain(self.odd.iter())
    }

    pub fn is_unit(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }
}

/// Sort odd atoms into canonical order, tracking the permutation sign.
/// Returns `None` when a repeated odd atom annihilates the monomial.
fn sort_odd_with_sign(mut odd: Vec<Atom>) -> Option<(Vec<Atom>, bool)> {
    let mut negate = false;
    for i in 1..odd.len() {
        let mut j = i;
        while j > 0 && odd[j] < odd[j - 1] {
            odd.swap(j, j - 1);
            negate = !negate;
            j -= 1;
        }
    }
    if odd.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((odd, negate))
}

/// A single multiplicand in raw (pre-normalization) input.
#[derive(Clone, Debug)]
pub enum Factor {
    Scalar(Coeff),
    Atom(Atom),
    Pow(Atom, i64),
}

/// An element of the graded algebra in canonical normal form: a finite sum of
/// canonical monomials with nonzero exact coefficients. Equality is literal
/// equality of the map, which the normalization invariants make semantic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedExpr {
    terms: BTreeMap<Monomial, Coeff>,
}

impl GradedExpr {
    pub fn zero() -> GradedExpr {
        GradedExpr {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> GradedExpr {
        GradedExpr::scalar(coeff::one())
    }

    pub fn scalar(c: Coeff) -> GradedExpr {
        let mut e = GradedExpr::zero();
        e.insert(Monomial::unit(), c);
        e
    }

    pub fn from_atom(atom: Atom) -> GradedExpr {
        GradedExpr::from_factors(&[Factor::Atom(atom)])
    }

    /// Build one product of raw factors and bring it to normal form.
    pub fn from_factors(factors: &[Factor]) -> GradedExpr {
        let mut c = coeff::one();
        let mut even: BTreeMap<Atom, i64> = BTreeMap::new();
        let mut odd_raw: Vec<Atom> = Vec::new();
        for f in factors {
            match f {
                Factor::Scalar(s) => c = c * s.clone(),
                Factor::Atom(a) => match a.parity {
                    Parity::Even => *even.entry(a.clone()).or_insert(0) += 1,
                    Parity::Odd => odd_raw.push(a.clone()),
                },
                Factor::Pow(a, k) => {
                    assert!(
                        a.is_even() || (0..=1).contains(k),
                        "odd atom power must be 0 or 1"
                    );
                    if a.is_even() {
                        *even.entry(a.clone()).or_insert(0) += k;
                    } else if *k == 1 {
                        odd_raw.push(a.clone());
                    }
                }
            }
        }
        if coeff::is_zero(&c) {
            return GradedExpr::zero();
        }
        even.retain(|_, k| *k != 0);
        let Some((odd, negate)) = sort_odd_with_sign(odd_raw) else {
            return GradedExpr::zero();
        };
        if negate {
            c = -c;
        }
        let mut e = GradedExpr::zero();
        e.insert(Monomial { even, odd }, c);
        e
    }

    /// Normalize a raw sum of factor products.
    pub fn normalize(raw: &[Vec<Factor>]) -> GradedExpr {
        let mut out = GradedExpr::zero();
        for product in raw {
            out = out + GradedExpr::from_factors(product);
        }
        out
    }

    fn insert(&mut self, m: Monomial, c: Coeff) {
        if coeff::is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if coeff::is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(coeff::zero)
    }

    /// The constant (unit-monomial) coefficient.
    pub fn scalar_part(&self) -> Coeff {
        self.coefficient(&Monomial::unit())
    }

    /// Overall parity when every monomial agrees; `None` for mixed content.
    /// The zero element reports `Even`.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = it.next().unwrap_or(Parity::Even);
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Coeff) -> GradedExpr {
        if coeff::is_zero(c) {
            return GradedExpr::zero();
        }
        GradedExpr {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Keep only the monomials satisfying the predicate.
    pub fn restrict(&self, pred: impl Fn(&Monomial) -> bool) -> GradedExpr {
        GradedExpr {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn contains_atom(&self, atom: &Atom) -> bool {
        self.terms.keys().any(|m| m.contains(atom))
    }

    pub fn max_dot_order(&self) -> u32 {
        self.terms.keys().map(|m| m.max_dot_order()).max().unwrap_or(0)
    }

    pub fn mul_ref(&self, rhs: &GradedExpr) -> GradedExpr {
        let mut out = GradedExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut even = ma.even.clone();
                for (a, k) in &mb.even {
                    let e = even.entry(a.clone()).or_insert(0);
                    *e += k;
                    if *e == 0 {
                        even.remove(a);
                    }
                }
                let mut odd_raw = ma.odd.clone();
                odd_raw.extend(mb.odd.iter().cloned());
                let Some((odd, negate)) = sort_odd_with_sign(odd_raw) else {
                    continue;
                };
                let mut c = ca.clone() * cb.clone();
                if negate {
                    c = -c;
                }
                out.insert(Monomial { even, odd }, c);
            }
        }
        out
    }

    /// Integer power; requires a homogeneous even argument for k != 0, 1 only
    /// in the sense that odd contributions square to zero on their own.
    pub fn pow(&self, k: u32) -> GradedExpr {
        let mut out = GradedExpr::one();
        for _ in 0..k {
            out = out.mul_ref(self);
        }
        out
    }

    /// Left Grassmann derivative with respect to an odd atom:
    /// each monomial loses its factor `v` and gains the sign (-1)^k where k
    /// counts the odd atoms standing left of `v` in canonical order.
    pub fn left_derivative(&self, v: &Atom) -> Result<GradedExpr, GalgError> {
        if v.is_even() {
            return Err(GalgError::EvenDerivative(v.to_string()));
        }
        let mut out = GradedExpr::zero();
        for (m, c) in &self.terms {
            if let Ok(k) = m.odd.binary_search(v) {
                let mut odd = m.odd.clone();
                odd.remove(k);
                let mut c = c.clone();
                if k % 2 == 1 {
                    c = -c;
                }
                out.insert(
                    Monomial {
                        even: m.even.clone(),
                        odd,
                    },
                    c,
                );
            }
        }
        Ok(out)
    }

    /// Iterated Berezin integral; `order` lists distinct odd atoms, applied
    /// innermost first as left derivatives.
    pub fn berezin(&self, order: &[Atom]) -> Result<GradedExpr, GalgError> {
        for (i, a) in order.iter().enumerate() {
            if order[..i].contains(a) {
                return Err(GalgError::RepeatedIntegrationAtom(a.to_string()));
            }
        }
        let mut e = self.clone();
        for v in order {
            e = e.left_derivative(v)?;
        }
        Ok(e)
    }

    /// Extend an atom-level image to an even (ungraded Leibniz) derivation.
    /// Images must preserve parity; atoms mapped to `None` are annihilated.
    pub fn apply_even_derivation(
        &self,
        image: &dyn Fn(&Atom) -> Option<GradedExpr>,
    ) -> Result<GradedExpr, GalgError> {
        let mut out = GradedExpr::zero();
        for (m, c) in &self.terms {
            for (a, k) in &m.even {
                let Some(da) = image(a) else { continue };
                if da.is_zero() {
                    continue;
                }
                if da.parity() != Some(Parity::Even) {
                    return Err(GalgError::DerivationParity(a.to_string()));
                }
                let mut even = m.even.clone();
                if *k == 1 {
                    even.remove(a);
                } else {
                    even.insert(a.clone(), k - 1);
                }
                let base = GradedExpr {
                    terms: BTreeMap::from([(
                        Monomial {
                            even,
                            odd: m.odd.clone(),
                        },
                        c.clone() * coeff::int(*k),
                    )]),
                };
                out = out + base.mul_ref(&da);
            }
            for (j, o) in m.odd.iter().enumerate() {
                let Some(doj) = image(o) else { continue };
                if doj.is_zero() {
                    continue;
                }
                if doj.parity() != Some(Parity::Odd) {
                    return Err(GalgError::DerivationParity(o.to_string()));
                }
                let evens = GradedExpr {
                    terms: BTreeMap::from([(
                        Monomial {
                            even: m.even.clone(),
                            odd: m.odd[..j].to_vec(),
                        },
                        c.clone(),
                    )]),
                };
                let suffix = GradedExpr {
                    terms: BTreeMap::from([(
                        Monomial {
                            even: BTreeMap::new(),
                            odd: m.odd[j + 1..].to_vec(),
                        },
                        coeff::one(),
                    )]),
                };
                out = out + evens.mul_ref(&doj).mul_ref(&suffix);
            }
        }
        Ok(out)
    }

    /// Formal time derivative: every time-dependent atom's dot order rises by
    /// one via the Leibniz rule; coordinates, parameters, and constants die.
    pub fn time_derivative(&self) -> GradedExpr {
        self.apply_even_derivation(&|a| {
            if a.time_dependent {
                Some(GradedExpr::from_atom(a.dotted()))
            } else {
                None
            }
        })
        .expect("dotting preserves parity")
    }

    /// Replace every occurrence of `target` by `replacement`.
    /// The replacement must be parity-homogeneous of the target's parity.
    pub fn substitute(
        &self,
        target: &Atom,
        replacement: &GradedExpr,
    ) -> Result<GradedExpr, GalgError> {
        if !replacement.is_zero() {
            match replacement.parity() {
                Some(p) if p == target.parity => {}
                other => {
                    return Err(GalgError::ParityMismatch {
                        target: target.to_string(),
                        expected: target.parity,
                        found: other.unwrap_or(target.parity.flip()),
                    })
                }
            }
        }
        let mut out = GradedExpr::zero();
        for (m, c) in &self.terms {
            if target.is_even() {
                match m.even.get(target) {
                    None => out.insert(m.clone(), c.clone()),
                    Some(k) if *k < 0 => {
                        return Err(GalgError::NegativePowerSubstitution(target.to_string()))
                    }
                    Some(k) => {
                        let mut even = m.even.clone();
                        even.remove(target);
                        let base = GradedExpr {
                            terms: BTreeMap::from([(
                                Monomial {
                                    even,
                                    odd: m.odd.clone(),
                                },
                                c.clone(),
                            )]),
                        };
                        out = out + base.mul_ref(&replacement.pow(*k as u32));
                    }
                }
            } else {
                match m.odd.binary_search(target) {
                    Err(_) => out.insert(m.clone(), c.clone()),
                    Ok(j) => {
                        let prefix = GradedExpr {
                            terms: BTreeMap::from([(
                                Monomial {
                                    even: m.even.clone(),
                                    odd: m.odd[..j].to_vec(),
                                },
                                c.clone(),
                            )]),
                        };
                        let suffix = GradedExpr {
                            terms: BTreeMap::from([(
                                Monomial {
                                    even: BTreeMap::new(),
                                    odd: m.odd[j + 1..].to_vec(),
                                },
                                coeff::one(),
                            )]),
                        };
                        out = out + prefix.mul_ref(replacement).mul_ref(&suffix);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Conjugation: an antiautomorphism. Coefficients conjugate, every atom
    /// maps to its partner, and each monomial's odd factors reverse order
    /// before renormalization.
    pub fn conjugate(&self) -> GradedExpr {
        let mut out = GradedExpr::zero();
        for (m, c) in &self.terms {
            let even: BTreeMap<Atom, i64> = m
                .even
                .iter()
                .map(|(a, k)| (a.conjugate_partner(), *k))
                .collect();
            let odd_raw: Vec<Atom> = m
                .odd
                .iter()
                .rev()
                .map(|a| a.conjugate_partner())
                .collect();
            let Some((odd, negate)) = sort_odd_with_sign(odd_raw) else {
                continue;
            };
            let mut c = coeff::conjugate(c);
            if negate {
                c = -c;
            }
            out.insert(Monomial { even, odd }, c);
        }
        out
    }
}

impl From<Atom> for GradedExpr {
    fn from(a: Atom) -> GradedExpr {
        GradedExpr::from_atom(a)
    }
}

impl Add for GradedExpr {
    type Output = GradedExpr;
    fn add(self, rhs: GradedExpr) -> GradedExpr {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.insert(m, c);
        }
        out
    }
}

impl Sub for GradedExpr {
    type Output = GradedExpr;
    fn sub(self, rhs: GradedExpr) -> GradedExpr {
        self + (-rhs)
    }
}

impl Neg for GradedExpr {
    type Output = GradedExpr;
    fn neg(self) -> GradedExpr {
        GradedExpr {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for GradedExpr {
    type Output = GradedExpr;
    fn mul(self, rhs: GradedExpr) -> GradedExpr {
        self.mul_ref(&rhs)
    }
}

impl Zero for GradedExpr {
    fn zero() -> Self {
        GradedExpr::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for GradedExpr {
    fn one() -> Self {
        GradedExpr::one()
    }
}
