use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense univariate integer polynomial in `v`, coefficient `i` of `v^i`.
///
/// Always normalized: no trailing zero coefficients, so the zero
/// polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(T::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::lift(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![T::one()],
        }
    }

    pub fn monomial(coeff: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self::new(coeffs)
    }

    /// `v^k - 1`.
    pub fn cycle_factor(k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[0] = -T::one();
        coeffs[k] = coeffs[k].clone() + T::one();
        Self::new(coeffs)
    }

    /// `v^(k-1) + ... + v + 1`, so that `v^k - 1 = (v - 1) * nu(k)`.
    pub fn nu(k: usize) -> Self {
        Self::new(vec![T::one(); k])
    }

    /// The `d`-th cyclotomic polynomial, by dividing `v^d - 1` by the
    /// cyclotomic factors of the proper divisors of `d`.
    pub fn cyclotomic(d: usize) -> Self {
        assert!(d >= 1, "cyclotomic index must be positive");
        let mut p = Self::cycle_factor(d);
        for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
            p = p
                .exact_div(&Self::cyclotomic(e))
                .expect("cyclotomic factor divides v^d - 1");
        }
        p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Division with remainder by a monic divisor, exact over the integers.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = match divisor.degree() {
            Some(d) if divisor.coeffs[d].is_one() => d,
            _ => return Err(Error::InvalidArgument("divisor must be monic".into())),
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient if `divisor` (monic) divides `self` exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem_monic(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Largest `k` with `factor^k | self`; `self` must be nonzero and
    /// `factor` monic of positive degree.
    pub fn multiplicity(&self, factor: &Self) -> usize {
        assert!(!self.is_zero() && factor.degree().unwrap_or(0) > 0);
        let mut k = 0;
        let mut p = self.clone();
        while let Some(q) = p.exact_div(factor) {
            p = q;
            k += 1;
        }
        k
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "v")?,
                _ => write!(f, "v^{i}")?,
            }
        }
        Ok(())
    }
}
