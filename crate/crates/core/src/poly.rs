//! Dense univariate polynomials with exact rational coefficients.
//!
//! These carry superpotentials and potentials between the symbolic layer
//! (where they substitute into graded expressions) and the numeric layer
//! (where they are sampled on grids). Differentiation is always formal.

use crate::galg::coeff::{from_rat, Rat};
use crate::galg::{Atom, GradedExpr};
use num::traits::ToPrimitive;
use num::{BigRational, Signed, Zero};
use std::fmt;

/// Polynomial `sum c_k x^k`; `coeffs[k]` is `c_k`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rat>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> RationalPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    /// Convenience constructor from integer coefficients, lowest degree first.
    pub fn from_integers(coeffs: &[i64]) -> RationalPoly {
        RationalPoly::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> RationalPoly {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> RationalPoly {
        RationalPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Antiderivative vanishing at the origin.
    pub fn antiderivative(&self) -> RationalPoly {
        let mut out = vec![Rat::zero()];
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / BigRational::from_integer((k + 1).into())),
        );
        RationalPoly::new(out)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().expect("rational representable as f64");
        }
        acc
    }

    /// Coefficients converted once for repeated grid evaluation.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().expect("rational representable as f64"))
            .collect()
    }

    pub fn mul(&self, other: &RationalPoly) -> RationalPoly {
        if self.is_zero() || other.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }

    pub fn add(&self, other: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            out[k] += c;
        }
        RationalPoly::new(out)
    }

    pub fn scale(&self, s: &Rat) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Substitute an even atom for the variable, as a graded expression.
    pub fn to_graded(&self, var: &Atom) -> GradedExpr {
        assert!(var.is_even(), "polynomial variable must be even");
        let x = GradedExpr::from_atom(var.clone());
        let mut acc = GradedExpr::zero();
        let mut power = GradedExpr::one();
        for c in &self.coeffs {
            acc = acc + power.clone().scale(&from_rat(c.clone()));
            power = power * x.clone();
        }
        acc
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_mag = mag == Rat::from_integer(1.into());
            match (k, unit_mag) {
                (0, _) => write!(f, "{}", fmt_rat(&mag))?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}*x", fmt_rat(&mag))?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{}*x^{k}", fmt_rat(&mag))?,
            }
        }
        Ok(())
    }
}
