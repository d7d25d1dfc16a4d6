//! Named characteristic-polynomial families of the extremal and near-extremal
//! graphs, with exact rational coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{int, nat, q, sign_of_surd, Polynomial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    F,
    G,
    F1,
    F2,
    F3,
    G2,
    G4,
    G8,
    P1,
    P2,
}

impl Family {
    pub const ALL: [Family; 10] =
        [Family::F, Family::G, Family::F1, Family::F2, Family::F3, Family::G2, Family::G4, Family::G8, Family::P1, Family::P2];

    pub fn name(self) -> &'static str {
        match self {
            Family::F => "f",
            Family::G => "g",
            Family::F1 => "f1",
            Family::F2 => "f2",
            Family::F3 => "f3",
            Family::G2 => "g2",
            Family::G4 => "g4",
            Family::G8 => "g8",
            Family::P1 => "p1",
            Family::P2 => "p2",
        }
    }

    /// `true` for families defined at even `n`.
    pub fn even(self) -> bool {
        !matches!(self, Family::G | Family::F3 | Family::P2)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| FamilyError::Unknown(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown polynomial family {0:?}")]
    Unknown(String),
    #[error("family {family} needs {} n, got {n}", if *.even { "even" } else { "odd" })]
    Parity { family: Family, n: usize, even: bool },
    #[error("family {family} needs n >= {min}, got {n}")]
    TooSmall { family: Family, n: usize, min: usize },
    #[error("family g8 needs parameters (a, b, c)")]
    MissingParams,
    #[error("family {0} takes no (a, b, c) parameters")]
    UnexpectedParams(Family),
    #[error("(a, b, c) = ({a}, {b}, {c}) violates a + b + c = n/2 - 1, 2a + b = n/2 at n = {n}")]
    Params { a: usize, b: usize, c: usize, n: usize },
}

/// Checks the two linear constraints on the class sizes of the C4 case.
pub fn abc_valid(n: usize, a: usize, b: usize, c: usize) -> bool {
    n.is_multiple_of(2) && n >= 2 && a + b + c + 1 == n / 2 && 2 * a + b == n / 2
}

fn poly(coeffs: Vec<Rational>) -> Polynomial {
    Polynomial::new(coeffs)
}

pub fn poly_family(family: Family, n: usize, abc: Option<(usize, usize, usize)>) -> Result<Polynomial, FamilyError> {
    if family.even() != n.is_multiple_of(2) {
        return Err(FamilyError::Parity { family, n, even: family.even() });
    }
    if n < 2 {
        return Err(FamilyError::TooSmall { family, n, min: 2 });
    }
    match (family, abc) {
        (Family::G8, None) => return Err(FamilyError::MissingParams),
        (Family::G8, Some((a, b, c))) if !abc_valid(n, a, b, c) => return Err(FamilyError::Params { a, b, c, n }),
        (f, Some(_)) if f != Family::G8 => return Err(FamilyError::UnexpectedParams(f)),
        _ => {}
    }
    let nn = nat(n);
    let n2 = &nn * &nn;
    let z = || int(0);
    let one = || int(1);
    let p = match family {
        Family::F => poly(vec![&n2 / int(4) - &nn, -(&n2 / int(4)), int(-1), one()]),
        Family::G => poly(vec![&n2 / int(4) - &nn + q(3, 4), (one() - &n2) / int(4), int(-1), one()]),
        Family::F1 => poly(vec![&n2 / int(4) - &nn + one(), one() - &n2 / int(4), int(-1), one()]),
        Family::F2 => poly(vec![one() + &n2 / int(2) - int(2) * &nn, -(&nn - int(2)), -(&n2 / int(4)), z(), one()]),
        Family::F3 => poly(vec![&n2 / int(2) - int(2) * &nn + q(3, 2), -(&nn - int(3)), -((&n2 - one()) / int(4)), z(), one()]),
        Family::G2 => {
            let n4 = &nn - int(4);
            poly(vec![
                -(&n4 * &n4),
                int(2) * &nn - int(8),
                int(5) * &n2 / int(4) - int(7) * &nn + int(8),
                -nn.clone(),
                -(&n2 / int(4) - &nn / int(2) + int(3)),
                z(),
                one(),
            ])
        }
        Family::G4 => poly(vec![
            z(),
            -(int(3) * &n2 / int(2) - int(14) * &nn + int(31)),
            int(3) * &nn - int(16),
            int(5) * &n2 / int(4) - int(7) * &nn + int(5),
            -nn.clone(),
            -(&n2 / int(4) - &nn / int(2) + int(3)),
            z(),
            one(),
        ]),
        Family::G8 => {
            let (a, b, c) = abc.expect("checked above");
            let (a, b, c) = (nat(a), nat(b), nat(c));
            let s = &a + &b + &c;
            let half = &nn / int(2);
            let x5 = -(&s * &half + &a + int(2) - &c);
            let x4 = -(int(4) * &a + int(2) * &b);
            let x3 = &s * &nn + &a * &b * &half + &a * &c * &nn + &b * &c * &half
                - int(3) * &b
                - int(4) * &c
                - int(2) * &a * &c
                - &b * &c
                - int(4) * &a;
            let x2 = int(2) * &a * &b;
            let x1 = int(2) * &a * &b + int(2) * &b * &c + &a * &b * &c
                - &a * &b * &half
                - &b * &c * &half
                - &a * &b * &c * &half;
            poly(vec![z(), x1, x2, x3, x4, x5, z(), one()])
        }
        Family::P1 => poly(vec![z(), &n2 / int(2) - int(2) * &nn - int(3), -nn.clone(), one() - &n2 / int(4), z(), one()]),
        Family::P2 => poly(vec![
            z(),
            &n2 / int(2) - int(2) * &nn - q(1, 2),
            one() - &nn,
            (one() - &n2) / int(4),
            z(),
            one(),
        ]),
    };
    Ok(p)
}

/// Exact check that the largest root of `f` (even `n`) or `g` (odd `n`)
/// exceeds `sqrt(floor(n^2/4) + 2)`: the cubic is negative there.
///
/// The cubic is evaluated at `x = sqrt(s)` as `a + b sqrt(s)` and the sign
/// decided by comparing squares.
pub fn root_gap_holds(n: usize) -> bool {
    if n < 4 {
        return false;
    }
    let family = if n.is_multiple_of(2) { Family::F } else { Family::G };
    let p = poly_family(family, n, None).expect("parity matches");
    let s = Rational::from_integer((BigInt::from(n) * BigInt::from(n)) / BigInt::from(4) + BigInt::from(2));
    let (a, b) = p.eval_at_sqrt(&s);
    sign_of_surd(&a, &b, &s) < 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::largest_real_root;

    #[test]
    fn small_instances() {
        assert_eq!(poly_family(Family::F, 8, None).unwrap(), Polynomial::from_ints(&[8, -16, -1, 1]));
        assert_eq!(poly_family(Family::G, 5, None).unwrap(), Polynomial::from_ints(&[2, -6, -1, 1]));
        assert_eq!(poly_family(Family::F2, 6, None).unwrap().eval(&int(3)), int(-5));
        // f1(n/2) = 1 - n/2
        assert_eq!(poly_family(Family::F1, 10, None).unwrap().eval(&int(5)), int(-4));
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(poly_family(Family::F, 7, None), Err(FamilyError::Parity { .. })));
        assert!(matches!(poly_family(Family::P2, 8, None), Err(FamilyError::Parity { .. })));
        assert_eq!(poly_family(Family::G8, 10, None), Err(FamilyError::MissingParams));
        assert!(matches!(poly_family(Family::G8, 10, Some((2, 2, 0))), Err(FamilyError::Params { .. })));
        assert_eq!(poly_family(Family::F, 8, Some((1, 1, 1))), Err(FamilyError::UnexpectedParams(Family::F)));
        assert!("h".parse::<Family>().is_err());
        assert_eq!("g8".parse::<Family>().unwrap(), Family::G8);
    }

    #[test]
    fn roots() {
        let r = largest_real_root(&poly_family(Family::F, 8, None).unwrap(), 1e-12).unwrap();
        assert!((r - 4.2930).abs() < 1e-4);
        assert!(r * r > 18.0);
        let r = largest_real_root(&poly_family(Family::G, 5, None).unwrap(), 1e-12).unwrap();
        assert!((r - 2.8558).abs() < 1e-4);
    }

    #[test]
    fn root_gap_small_n() {
        assert!(root_gap_holds(8));
        assert!(root_gap_holds(9));
        assert!((4..200).all(root_gap_holds));
    }
}
