//! Exact rationals and their reduction modulo a prime.

use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use crate::ff::{Fp, Poly, Prime};
use crate::{Error, Result};

pub type Rational = Ratio<i64>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// `n/d mod p`, refused when `p | d`.
pub fn reduce(r: &Rational, p: Prime) -> Result<Fp> {
    let den = Fp::new(*r.denom(), p);
    let inv = crate::ff::Field::inv(&den).ok_or(Error::DenominatorVanishes { p: p.get() })?;
    Ok(Fp::new(*r.numer(), p) * inv)
}

/// A polynomial in one variable with rational coefficients, ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly(Vec<Rational>);

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == int(0)) {
            coeffs.pop();
        }
        RatPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        RatPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        RatPoly::new(alloc::vec![c])
    }

    pub fn zero() -> Self {
        RatPoly(Vec::new())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).copied().unwrap_or_else(|| int(0))
    }

    pub fn eval(&self, t: Rational) -> Rational {
        self.0.iter().rev().fold(int(0), |acc, c| acc * t + c)
    }

    /// Product of all denominators' prime divisors must avoid `p`.
    pub fn reduce(&self, p: Prime) -> Result<Poly<Fp>> {
        let coeffs = self.0.iter().map(|c| reduce(c, p)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs, Fp::zero(p)))
    }

    pub fn eval_mod(&self, t: Fp) -> Result<Fp> {
        let p = t.modulus();
        let mut acc = Fp::zero(p);
        for c in self.0.iter().rev() {
            acc = acc * t + reduce(c, p)?;
        }
        Ok(acc)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator(&self) -> i64 {
        use num_integer::Integer;
        self.0.iter().fold(1i64, |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if *c == int(0) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}
