use serde::{Deserialize, Serialize};
use std::fmt;

/// Grading of an atom under the Z2 structure of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// A named generator of the algebra.
///
/// Identity (and the canonical ordering of odd factors) is the triple
/// `(name, conjugated, dot_order)`; the remaining fields are attributes that
/// must be used consistently for a given name. `dot_order` counts applications
/// of the time derivative. `conjugated` marks the partner under conjugation;
/// it stays `false` for self-conjugate (real) atoms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub name: String,
    pub conjugated: bool,
    pub dot_order: u32,
    pub parity: Parity,
    /// Annihilated by the time derivative when false.
    pub time_dependent: bool,
    /// Fixed by conjugation when true (real atoms).
    pub self_conjugate: bool,
}

impl Atom {
    /// Even, real, time-dependent dynamical variable (e.g. a coordinate x(t)).
    pub fn even_dynamical(name: &str) -> Atom {
        Atom {
            name: name.to_string(),
            conjugated: false,
            dot_order: 0,
            parity: Parity::Even,
            time_dependent: true,
            self_conjugate: true,
        }
    }

    /// Odd, time-dependent dynamical variable with a distinct conjugate partner.
    pub fn odd_dynamical(name: &str) -> Atom {
        Atom {
            name: name.to_string(),
            conjugated: false,
            dot_order: 0,
            parity: Parity::Odd,
            time_dependent: true,
            self_conjugate: false,
        }
    }

    /// Odd coordinate or parameter: no time dependence, distinct conjugate.
    pub fn odd_coordinate(name: &str) -> Atom {
        Atom {
            name: name.to_string(),
            conjugated: false,
            dot_order: 0,
            parity: Parity::Odd,
            time_dependent: false,
            self_conjugate: false,
        }
    }

    /// Even real constant (annihilated by the time derivative).
    pub fn even_constant(name: &str) -> Atom {
        Atom {
            name: name.to_string(),
            conjugated: false,
            dot_order: 0,
            parity: Parity::Even,
            time_dependent: true,
            self_conjugate: true,
        }
        .with_time_dependent(false)
    }

    fn with_time_dependent(mut self, td: bool) -> Atom {
        self.time_dependent = td;
        self
    }

    /// The conjugate partner; identity for self-conjugate atoms.
    pub fn conjugate_partner(&self) -> Atom {
        if self.self_conjugate {
            self.clone()
        } else {
            let mut a = self.clone();
            a.conjugated = !a.conjugated;
            a
        }
    }

    /// Same atom with one more time derivative applied.
    pub fn dotted(&self) -> Atom {
        let mut a = self.clone();
        a.dot_order += 1;
        a
    }

    /// Same atom with `dot_order` lowered by one; `None` at zero.
    pub fn undotted(&self) -> Option<Atom> {
        if self.dot_order == 0 {
            return None;
        }
        let mut a = self.clone();
        a.dot_order -= 1;
        Some(a)
    }

    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }
}

impl fmt::Display for Atom {
    /// Text-format token: name, one apostrophe per time derivative, then a
    /// trailing `c` when conjugated (`psi'c` is the conjugate of psi-dot).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for _ in 0..self.dot_order {
            write!(f, "'")?;
        }
        if self.conjugated {
            write!(f, "c")?;
        }
        Ok(())
    }
}

/// Standard atoms used by the superspace and reduction layers.
pub mod atoms {
    use super::Atom;

    /// Odd superspace coordinate.
    pub fn theta() -> Atom {
        Atom::odd_coordinate("theta")
    }

    /// Conjugate odd superspace coordinate.
    pub fn theta_c() -> Atom {
        theta().conjugate_partner()
    }

    /// Odd transformation parameter.
    pub fn eps() -> Atom {
        Atom::odd_coordinate("eps")
    }

    pub fn eps_c() -> Atom {
        eps().conjugate_partner()
    }

    /// Even position component.
    pub fn x() -> Atom {
        Atom::even_dynamical("x")
    }

    /// Odd fermionic component.
    pub fn psi() -> Atom {
        Atom::odd_dynamical("psi")
    }

    pub fn psi_c() -> Atom {
        psi().conjugate_partner()
    }

    /// Even auxiliary component.
    pub fn d_aux() -> Atom {
        Atom::even_dynamical("D")
    }

    /// Canonical momentum conjugate to x.
    pub fn p() -> Atom {
        Atom::even_dynamical("p")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_name_conjugated_dot() {
        let psi_dot = atoms::psi().dotted();
        let psi_c = atoms::psi_c();
        let th = atoms::theta();
        // "psi" < "theta" and (conjugated=false) < (conjugated=true);
        // dot_order breaks ties last.
        assert!(atoms::psi() < psi_dot);
        assert!(psi_dot < psi_c, "unconjugated sorts before conjugated");
        assert!(psi_c < th);
        assert!(th < atoms::theta_c());
    }

    #[test]
    fn conjugation_is_involutive() {
        for a in [atoms::theta(), atoms::psi_c(), atoms::x()] {
            assert_eq!(a.conjugate_partner().conjugate_partner(), a);
        }
    }

    #[test]
    fn real_atoms_are_fixed_by_conjugation() {
        assert_eq!(atoms::x().conjugate_partner(), atoms::x());
        assert_eq!(atoms::d_aux().conjugate_partner(), atoms::d_aux());
    }

    #[test]
    fn display_tokens() {
        assert_eq!(atoms::psi().dotted().to_string(), "psi'");
        assert_eq!(atoms::psi_c().dotted().to_string(), "psi'c");
        assert_eq!(atoms::theta_c().to_string(), "thetac");
    }
}
