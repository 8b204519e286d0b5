use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{Field, Fp, Prime};
use crate::{Error, Result};

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The zero element is stored alongside so the zero polynomial still knows
/// its field.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>, zero: F) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, zero: zero.zero_like() }
    }

    pub fn zero(like: F) -> Self {
        Poly { coeffs: Vec::new(), zero: like.zero_like() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c], c)
    }

    /// The monomial `x`.
    pub fn x(like: F) -> Self {
        Poly::new(vec![like.zero_like(), like.one_like()], like)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().copied().unwrap_or(self.zero)
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).copied().unwrap_or(self.zero)
    }

    pub fn eval(&self, x: F) -> F {
        self.coeffs.iter().rev().fold(self.zero, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        let one = self.zero.one_like();
        let mut k = self.zero;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in self.coeffs.iter().skip(1) {
            k = k + one;
            out.push(c * k);
        }
        Poly::new(out, self.zero)
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: F) -> Self {
        Poly::new(self.coeffs.iter().map(|&a| a * c).collect(), self.zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect(), self.zero)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect(), self.zero)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.zero);
        }
        let mut out = vec![self.zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Poly::new(out, self.zero)
    }

    /// Euclidean division. Fails only for a zero divisor.
    pub fn div_rem(&self, rhs: &Self) -> Result<(Self, Self)> {
        let d = rhs.degree().ok_or(Error::ZeroPolynomial)?;
        let inv = rhs.leading().inv().ok_or(Error::ZeroPolynomial)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Poly::zero(self.zero), self.clone()));
        }
        let mut quot = vec![self.zero; rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d] * inv;
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j] - c * b;
            }
        }
        rem.truncate(d);
        Ok((Poly::new(quot, self.zero), Poly::new(rem, self.zero)))
    }

    pub fn rem(&self, rhs: &Self) -> Result<Self> {
        Ok(self.div_rem(rhs)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::constant(self.zero.one_like()).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Composition `self(g) mod m`, by Horner.
    pub fn compose_mod(&self, g: &Self, m: &Self) -> Result<Self> {
        let mut acc = Poly::zero(self.zero);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c)).rem(m)?;
        }
        Ok(acc)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.zero.one_like()
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// Maximum degree accepted by [`IntPolynomial`].
pub const MAX_INT_DEGREE: usize = 8;

/// A nonzero integer polynomial of degree at most 8, ascending coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(coeffs: impl Into<Vec<i64>>) -> Result<Self> {
        let mut coeffs = coeffs.into();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if coeffs.len() - 1 > MAX_INT_DEGREE {
            return Err(Error::DegreeTooLarge(coeffs.len() - 1));
        }
        Ok(IntPolynomial { coeffs })
    }

    /// Coefficients listed from the leading term down, as usually printed.
    pub fn from_descending(coeffs: &[i64]) -> Result<Self> {
        let mut v = coeffs.to_vec();
        v.reverse();
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> i64 {
        *self.coeffs.last().expect("nonzero")
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * x + c as i128)
    }

    pub fn derivative(&self) -> Option<Self> {
        let d: Vec<i64> = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as i64).collect();
        IntPolynomial::new(d).ok()
    }

    /// Reduction modulo `p`; the leading coefficient may vanish.
    pub fn reduce(&self, p: Prime) -> Poly<Fp> {
        let z = Fp::zero(p);
        Poly::new(self.coeffs.iter().map(|&c| Fp::new(c, p)).collect(), z)
    }

    /// Reduction modulo `p` that keeps the degree, or an error if it drops.
    pub fn reduce_exact(&self, p: Prime) -> Result<Poly<Fp>> {
        let r = self.reduce(p);
        if r.degree() != Some(self.degree()) {
            return Err(Error::LeadingCoefficientVanishes { p: p.get() });
        }
        Ok(r)
    }

    /// Polynomial discriminant `(-1)^(n(n-1)/2) Res(f, f') / a_n`.
    pub fn discriminant(&self) -> Result<i128> {
        let n = self.degree();
        let Some(df) = self.derivative() else {
            return Ok(1);
        };
        if n == 1 {
            return Ok(1);
        }
        let res = resultant(&self.coeffs, df.coeffs())?;
        let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
        let lead = self.leading() as i128;
        if res % lead != 0 {
            return Err(Error::InvalidModel("discriminant is not integral".into()));
        }
        Ok(sign * res / lead)
    }

    /// Cubic resolvent `y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2)` of a
    /// monic quartic `x^4 + a x^3 + b x^2 + c x + d`.
    pub fn cubic_resolvent(&self) -> Result<IntPolynomial> {
        if self.degree() != 4 || !self.is_monic() {
            return Err(Error::InvalidModel("cubic resolvent needs a monic quartic".into()));
        }
        let [d, c, b, a, _] = [self.coeffs[0], self.coeffs[1], self.coeffs[2], self.coeffs[3], self.coeffs[4]];
        IntPolynomial::new(vec![-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1])
    }
}

/// Resultant of two integer polynomials via the Sylvester matrix and
/// fraction-free Gaussian elimination.
fn resultant(f: &[i64], g: &[i64]) -> Result<i128> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut a = vec![vec![0i128; size]; size];
    for i in 0..n {
        for (j, &c) in f.iter().rev().enumerate() {
            a[i][i + j] = c as i128;
        }
    }
    for i in 0..m {
        for (j, &c) in g.iter().rev().enumerate() {
            a[n + i][i + j] = c as i128;
        }
    }
    bareiss_det(&mut a)
}

fn bareiss_det(a: &mut [Vec<i128>]) -> Result<i128> {
    let n = a.len();
    let overflow = || Error::InvalidModel("integer overflow in determinant".into());
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .ok_or_else(overflow)?;
                a[i][j] = t / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let a = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            if a != 1 || i == 0 {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn fp_poly(c: &[i64], q: Prime) -> Poly<Fp> {
        IntPolynomial::new(c.to_vec()).unwrap().reduce(q)
    }

    #[test]
    fn division_identity() {
        let q = p(13);
        let a = fp_poly(&[3, 0, 5, 1, 7, 2], q);
        let b = fp_poly(&[1, 4, 0, 3], q);
        let (d, r) = a.div_rem(&b).unwrap();
        assert_eq!(d.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 3);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let q = p(7);
        let common = fp_poly(&[2, 1], q);
        let a = common.mul(&fp_poly(&[1, 0, 1], q));
        let b = common.mul(&fp_poly(&[3, 1], q));
        assert_eq!(a.gcd(&b), common);
        assert!(Poly::zero(Fp::zero(q)).gcd(&Poly::zero(Fp::zero(q))).is_zero());
    }

    #[test]
    fn discriminants() {
        let c = |v: &[i64]| IntPolynomial::from_descending(v).unwrap();
        assert_eq!(c(&[1, 0, -3, -1]).discriminant(), Ok(81));
        assert_eq!(c(&[1, 0, 2, -8]).discriminant(), Ok(-1760));
        assert_eq!(c(&[1, -1, 1, 1]).discriminant(), Ok(-44));
        assert_eq!(c(&[1, 0, -2]).discriminant(), Ok(8));
        assert_eq!(c(&[2, 0, -2]).discriminant(), Ok(16));
        // x^4 + 1 has discriminant 256
        assert_eq!(c(&[1, 0, 0, 0, 1]).discriminant(), Ok(256));
    }

    #[test]
    fn resolvent_shares_discriminant() {
        let f = IntPolynomial::from_descending(&[1, 0, -2, -4, -1]).unwrap();
        let r = f.cubic_resolvent().unwrap();
        assert_eq!(f.discriminant().unwrap(), r.discriminant().unwrap());
    }

    #[test]
    fn display_form() {
        let f = IntPolynomial::from_descending(&[1, -1, 1, 1]).unwrap();
        assert_eq!(format!("{f}"), "x^3 - x^2 + x + 1");
        let g = IntPolynomial::from_descending(&[-2, 0, 3, 0]).unwrap();
        assert_eq!(format!("{g}"), "-2x^3 + 3x");
        assert_eq!(IntPolynomial::new(vec![0, 0]), Err(Error::ZeroPolynomial));
    }
}
