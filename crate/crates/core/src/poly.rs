//! Univariate polynomials with exact rational coefficients, Sturm chains
//! and real-root isolation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// `num / den` as a rational.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// A count as a rational, without going through `i64`.
pub fn nat(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Dense polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("polynomial is constant")]
    Constant,
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("tolerance must be positive and finite")]
    Tolerance,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn x() -> Self {
        Polynomial { coeffs: vec![Rational::zero(), Rational::one()] }
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// Ascending coefficients; trailing zeros are dropped.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Sign of `self(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        sign(&self.eval(x))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Euclidean division: `self = quot * d + rem`, `deg rem < deg d`.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn squarefree(&self) -> Polynomial {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Evaluates at `x = sqrt(s)` symbolically, returning `(a, b)` with
    /// `self(sqrt(s)) = a + b * sqrt(s)`.
    pub fn eval_at_sqrt(&self, s: &Rational) -> (Rational, Rational) {
        let mut even = Rational::zero();
        let mut odd = Rational::zero();
        let mut power = Rational::one();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k % 2 == 0 {
                even += c * &power;
            } else {
                odd += c * &power;
                power *= s;
            }
        }
        (even, odd)
    }

    /// Cauchy bound: every complex root has modulus below the result.
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading().abs();
        let max = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        max + Rational::one()
    }
}

pub(crate) fn sign(v: &Rational) -> i8 {
    match v.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Sign of `a + b * sqrt(s)` for `s >= 0`.
pub fn sign_of_surd(a: &Rational, b: &Rational, s: &Rational) -> i8 {
    let (sa, sb) = (sign(a), sign(b));
    if sb == 0 || s.is_zero() {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // opposite signs: compare a^2 with b^2 s
    match (a * a).cmp(&(b * b * s)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            if !unit || k == 0 {
                if mag.is_integer() {
                    write!(f, "{}", mag)?;
                } else {
                    write!(f, "({})", mag)?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Sturm chain of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Self {
        let p = p.squarefree();
        let mut seq = vec![p.clone()];
        if p.degree().unwrap_or(0) > 0 {
            seq.push(p.derivative());
            loop {
                let k = seq.len();
                let r = seq[k - 2].div_rem(&seq[k - 1]).1;
                if r.is_zero() {
                    break;
                }
                seq.push(-&r);
            }
        }
        SturmChain { seq }
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.seq[0]
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| sign(&p.leading())))
    }

    fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = sign(&p.leading());
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots strictly greater than `a`.
    pub fn count_above(&self, a: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at_pos_inf())
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf().saturating_sub(self.variations_at_pos_inf())
    }
}

/// A real algebraic number given by a square-free polynomial and an
/// interval `(lo, hi]` containing exactly one of its roots.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub poly: Polynomial,
    pub lo: Rational,
    pub hi: Rational,
}

impl IsolatedRoot {
    /// The largest real root of `p`, if any.
    pub fn largest(p: &Polynomial) -> Result<IsolatedRoot, RootError> {
        if p.degree().unwrap_or(0) == 0 {
            return Err(RootError::Constant);
        }
        let chain = SturmChain::new(p);
        let bound = p.root_bound();
        let mut lo = -bound.clone();
        let mut hi = bound;
        let mut count = chain.count_in(&lo, &hi);
        if count == 0 {
            return Err(RootError::NoRealRoot);
        }
        let two = int(2);
        while count > 1 {
            let mid = (&lo + &hi) / &two;
            let upper = chain.count_in(&mid, &hi);
            if upper >= 1 {
                lo = mid;
                count = upper;
            } else {
                hi = mid;
            }
        }
        Ok(IsolatedRoot { poly: chain.polynomial().clone(), lo, hi })
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Halves the isolating interval, keeping the root inside.
    pub fn bisect(&mut self) {
        let mid = (&self.lo + &self.hi) / int(2);
        let s_mid = self.poly.sign_at(&mid);
        if s_mid == 0 {
            // root is exactly mid; keep it as the closed right end
            self.hi = mid;
            self.lo = &self.hi - (&self.hi - &self.lo) / int(2);
            return;
        }
        let s_hi = self.poly.sign_at(&self.hi);
        if s_hi == 0 || s_hi != s_mid {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn refine_to(&mut self, width: &Rational) {
        while &self.width() > width {
            self.bisect();
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / int(2)).to_f64().unwrap_or(f64::NAN)
    }

    /// Sign of `h` at this root, decided exactly.
    pub fn sign_of(&mut self, h: &Polynomial) -> i8 {
        if h.is_zero() {
            return 0;
        }
        if h.degree() == Some(0) {
            return sign(&h.leading());
        }
        let common = self.poly.gcd(h);
        if common.degree().unwrap_or(0) > 0 && SturmChain::new(&common).count_in(&self.lo, &self.hi) > 0 {
            return 0;
        }
        let hchain = SturmChain::new(h);
        loop {
            if hchain.count_in(&self.lo, &self.hi) == 0 {
                let s = h.sign_at(&self.hi);
                if s != 0 {
                    return s;
                }
            }
            self.bisect();
        }
    }

    /// Exact comparison of two isolated roots.
    pub fn cmp_root(&mut self, other: &mut IsolatedRoot) -> Ordering {
        if self.sign_of(&other.poly) == 0 {
            return Ordering::Equal;
        }
        loop {
            if self.hi <= other.lo {
                return Ordering::Less;
            }
            if other.hi <= self.lo {
                return Ordering::Greater;
            }
            if self.width() >= other.width() {
                self.bisect();
            } else {
                other.bisect();
            }
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&mut self, r: &Rational) -> Ordering {
        let h = Polynomial::new(vec![-r.clone(), Rational::one()]);
        match self.sign_of(&h) {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

/// Largest real root to within `tol`, by Sturm isolation then bisection
/// with exact sign evaluation.
pub fn largest_real_root(p: &Polynomial, tol: f64) -> Result<f64, RootError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(RootError::Tolerance);
    }
    let mut root = IsolatedRoot::largest(p)?;
    let width = Rational::from_float(tol).ok_or(RootError::Tolerance)?;
    root.refine_to(&width);
    Ok(root.midpoint_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Polynomial::from_ints(&[-1, 1]); // x - 1
        let b = Polynomial::from_ints(&[1, 1]); // x + 1
        assert_eq!(&a * &b, Polynomial::from_ints(&[-1, 0, 1]));
        assert_eq!(&(&a * &b) - &(&a * &a), Polynomial::from_ints(&[-2, 2]));
        let (quot, rem) = Polynomial::from_ints(&[-1, 0, 1]).div_rem(&a);
        assert_eq!(quot, b);
        assert!(rem.is_zero());
        let sq = &(&a * &a) * &b;
        assert_eq!(sq.gcd(&sq.derivative()), a);
        assert_eq!(sq.squarefree().monic(), Polynomial::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn display() {
        let f = Polynomial::from_ints(&[8, -16, -1, 1]);
        assert_eq!(f.to_string(), "x^3 - x^2 - 16x + 8");
        let g = Polynomial::new(vec![q(3, 4), Rational::zero(), int(-1)]);
        assert_eq!(g.to_string(), "-x^2 + (3/4)");
    }

    #[test]
    fn sturm_counts() {
        // (x-1)(x-2)(x+3)
        let p = &(&Polynomial::from_ints(&[-1, 1]) * &Polynomial::from_ints(&[-2, 1])) * &Polynomial::from_ints(&[3, 1]);
        let chain = SturmChain::new(&p);
        assert_eq!(chain.count_real(), 3);
        assert_eq!(chain.count_in(&int(0), &int(2)), 2);
        assert_eq!(chain.count_in(&int(1), &int(2)), 1);
        assert_eq!(chain.count_above(&int(1)), 1);
        assert_eq!(SturmChain::new(&Polynomial::from_ints(&[1, 0, 1])).count_real(), 0);
    }

    #[test]
    fn largest_roots() {
        let r = largest_real_root(&Polynomial::from_ints(&[-4, 0, 1]), 1e-12).unwrap();
        assert!((r - 2.0).abs() < 1e-12);
        assert_eq!(largest_real_root(&Polynomial::from_ints(&[1, 0, 1]), 1e-9), Err(RootError::NoRealRoot));
        assert_eq!(largest_real_root(&Polynomial::from_ints(&[5]), 1e-9), Err(RootError::Constant));
        // double root
        let d = Polynomial::from_ints(&[1, -2, 1]);
        assert!((largest_real_root(&d, 1e-12).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn surd_signs() {
        // 1 - sqrt(2) < 0, 2 - sqrt(2) > 0, 2 - sqrt(4) = 0
        assert_eq!(sign_of_surd(&int(1), &int(-1), &int(2)), -1);
        assert_eq!(sign_of_surd(&int(2), &int(-1), &int(2)), 1);
        assert_eq!(sign_of_surd(&int(2), &int(-1), &int(4)), 0);
        let p = Polynomial::from_ints(&[-3, 0, 1]); // x^2 - 3 at sqrt(3)
        let (a, b) = p.eval_at_sqrt(&int(3));
        assert_eq!(sign_of_surd(&a, &b, &int(3)), 0);
    }

    #[test]
    fn root_comparisons() {
        let mut a = IsolatedRoot::largest(&Polynomial::from_ints(&[-2, 0, 1])).unwrap(); // sqrt 2
        let mut b = IsolatedRoot::largest(&Polynomial::from_ints(&[-8, 0, 4])).unwrap(); // sqrt 2
        let mut c = IsolatedRoot::largest(&Polynomial::from_ints(&[-3, 0, 1])).unwrap(); // sqrt 3
        assert_eq!(a.cmp_root(&mut b), Ordering::Equal);
        assert_eq!(a.cmp_root(&mut c), Ordering::Less);
        assert_eq!(c.cmp_root(&mut a), Ordering::Greater);
        assert_eq!(c.cmp_rational(&q(173, 100)), Ordering::Greater);
        assert_eq!(c.cmp_rational(&q(174, 100)), Ordering::Less);
        let mut four = IsolatedRoot::largest(&Polynomial::from_ints(&[-4, 1])).unwrap();
        assert_eq!(four.cmp_rational(&int(4)), Ordering::Equal);
    }
}
