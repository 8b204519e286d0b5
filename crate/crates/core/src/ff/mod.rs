//! Prime fields, their quadratic extensions, and polynomials over both.

mod ext;
mod factor;
mod poly;

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::{Error, Result};

pub use ext::Fp2;
pub use factor::{
    factorization_pattern, factorization_pattern_exhaustive, frobenius_order, order_from_pattern, FactorPattern,
    GroupLabel,
};
pub use poly::{IntPolynomial, Poly};

/// Largest prime accepted by [`Prime::new`].
pub const MAX_PRIME: u64 = 1 << 31;

/// A rational prime no larger than `2^31`, checked by trial division.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u32);

impl Prime {
    pub fn new(value: u64) -> Result<Self> {
        if value > MAX_PRIME {
            return Err(Error::PrimeTooLarge(value));
        }
        if !is_prime(value) {
            return Err(Error::NotPrime(value));
        }
        Ok(Prime(value as u32))
    }

    #[inline]
    pub const fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_odd(self) -> bool {
        self.0 != 2
    }

    pub fn require_odd(self) -> Result<()> {
        if self.is_odd() {
            Ok(())
        } else {
            Err(Error::EvenPrime)
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(value: u32) -> Result<Self> {
        Prime::new(value as u64)
    }
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes `p <= bound`, ascending.
pub fn primes_up_to(bound: u32) -> Vec<Prime> {
    (2..=bound as u64).filter(|&n| is_prime(n)).map(|n| Prime(n as u32)).collect()
}

/// Operations shared by `F_p` and `F_{p^2}` so polynomial code can be generic.
///
/// Elements carry their field, so constants are produced from an existing
/// element rather than out of thin air.
pub trait Field:
    Copy + PartialEq + fmt::Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn characteristic(&self) -> Prime;
    /// Number of elements of the field.
    fn field_order(&self) -> u64;

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

/// An element of `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    residue: u32,
    modulus: Prime,
}

impl Fp {
    pub fn new(value: i64, p: Prime) -> Self {
        let m = p.get() as i64;
        Fp { residue: value.rem_euclid(m) as u32, modulus: p }
    }

    pub fn from_i128(value: i128, p: Prime) -> Self {
        let m = p.get() as i128;
        Fp { residue: value.rem_euclid(m) as u32, modulus: p }
    }

    #[inline]
    pub fn zero(p: Prime) -> Self {
        Fp { residue: 0, modulus: p }
    }

    #[inline]
    pub fn one(p: Prime) -> Self {
        Fp { residue: 1 % p.get(), modulus: p }
    }

    #[inline]
    pub fn residue(self) -> u32 {
        self.residue
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.modulus
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn centered(self) -> i64 {
        let r = self.residue as i64;
        let p = self.modulus.get() as i64;
        if 2 * r > p {
            r - p
        } else {
            r
        }
    }

    /// All elements of `F_p` in increasing residue order.
    pub fn elements(p: Prime) -> impl Iterator<Item = Fp> {
        (0..p.get()).map(move |r| Fp { residue: r, modulus: p })
    }

    /// Quadratic character of this element: 0, 1 or -1.
    pub fn quadratic_character(self) -> Result<i8> {
        self.modulus.require_odd()?;
        if self.residue == 0 {
            return Ok(0);
        }
        let e = (self.modulus.get() as u64 - 1) / 2;
        Ok(if Field::pow(&self, e).residue == 1 { 1 } else { -1 })
    }

    /// A square root, if one exists (Tonelli–Shanks).
    pub fn sqrt(self) -> Option<Fp> {
        let p = self.modulus.get() as u64;
        if self.residue == 0 || p == 2 {
            return Some(self);
        }
        if self.quadratic_character().ok()? != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = Fp::new(2, self.modulus);
        while z.quadratic_character().ok()? != -1 {
            z += Fp::one(self.modulus);
        }
        let mut m = s;
        let mut c = z.pow(q);
        let mut t = self.pow(q);
        let mut r = self.pow(q.div_ceil(2));
        while t.residue != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2.residue != 1 {
                t2 = t2 * t2;
                i += 1;
            }
            let b = c.pow(1u64 << (m - i - 1));
            m = i;
            c = b * b;
            t *= c;
            r *= b;
        }
        Some(r)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.residue as u64 + rhs.residue as u64;
        let p = self.modulus.get() as u64;
        Fp { residue: (if s >= p { s - p } else { s }) as u32, modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus.get() as u64;
        let s = self.residue as u64 + p - rhs.residue as u64;
        Fp { residue: (if s >= p { s - p } else { s }) as u32, modulus: self.modulus }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let m = (self.residue as u64 * rhs.residue as u64) % self.modulus.get() as u64;
        Fp { residue: m as u32, modulus: self.modulus }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        if self.residue == 0 {
            self
        } else {
            Fp { residue: self.modulus.get() - self.residue, modulus: self.modulus }
        }
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp::zero(self.modulus)
    }
    fn one_like(&self) -> Self {
        Fp::one(self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.residue == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.residue == 0 {
            None
        } else {
            Some(self.pow(self.modulus.get() as u64 - 2))
        }
    }
    fn characteristic(&self) -> Prime {
        self.modulus
    }
    fn field_order(&self) -> u64 {
        self.modulus.get() as u64
    }
}

/// Legendre symbol `(a/p)` for odd `p`.
pub fn legendre(a: i64, p: Prime) -> Result<i8> {
    p.require_odd()?;
    Fp::new(a, p).quadratic_character()
}

/// A formal integer combination of quadratic characters, `sum c_d * chi_d`.
///
/// `chi_1` is the trivial character and `chi_d(p) = (d/p)` otherwise. Used for
/// the trace of Frobenius on algebraic cycles, e.g. `36 + chi_5`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacterSum {
    terms: Vec<(i64, i64)>,
}

impl CharacterSum {
    /// Terms are `(d, coefficient)`; terms with the same `d` are merged.
    pub fn new(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut merged: Vec<(i64, i64)> = Vec::new();
        for (d, c) in terms {
            match merged.iter_mut().find(|(e, _)| *e == d) {
                Some(slot) => slot.1 += c,
                None => merged.push((d, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        merged.sort_by_key(|&(d, _)| (d != 1, d.unsigned_abs(), d < 0));
        CharacterSum { terms: merged }
    }

    pub fn terms(&self) -> &[(i64, i64)] {
        &self.terms
    }

    /// Sum of coefficients, the dimension of the underlying permutation module.
    pub fn dimension(&self) -> i64 {
        self.terms.iter().map(|&(_, c)| c).sum()
    }

    pub fn coefficient(&self, d: i64) -> i64 {
        self.terms.iter().find(|&&(e, _)| e == d).map_or(0, |&(_, c)| c)
    }

    pub fn eval(&self, p: Prime) -> Result<i64> {
        let mut total = 0i64;
        for &(d, c) in &self.terms {
            let chi = if d == 1 { 1 } else { legendre(d, p)? as i64 };
            total += c * chi;
        }
        Ok(total)
    }
}

impl fmt::Display for CharacterSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, &(d, c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            if d == 1 {
                write!(f, "{a}")?;
            } else if a == 1 {
                write!(f, "chi({d})")?;
            } else {
                write!(f, "{a}*chi({d})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn prime_construction() {
        assert!(Prime::new(1).is_err());
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
        assert_eq!(Prime::new(43).unwrap().get(), 43);
        assert_eq!(Prime::new(2_147_483_659), Err(Error::PrimeTooLarge(2_147_483_659)));
        assert!(Prime::new(2_147_483_647).is_ok());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(5, p(11)), Ok(1));
        assert_eq!(legendre(0, p(7)), Ok(0));
        assert_eq!(legendre(5, p(3)), Ok(-1));
        assert_eq!(legendre(3, p(2)), Err(Error::EvenPrime));
    }

    #[test]
    fn legendre_agrees_with_square_table() {
        for q in primes_up_to(60).into_iter().filter(|q| q.is_odd()) {
            let squares: Vec<u32> = Fp::elements(q).map(|x| (x * x).residue()).collect();
            for a in -70i64..70 {
                let r = a.rem_euclid(q.get() as i64) as u32;
                let expected = if r == 0 {
                    0
                } else if squares.contains(&r) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(a, q).unwrap(), expected, "({a}/{q})");
            }
        }
    }

    #[test]
    fn sqrt_roundtrip() {
        for q in primes_up_to(200) {
            for x in Fp::elements(q) {
                let sq = x * x;
                let r = sq.sqrt().expect("square has a root");
                assert_eq!(r * r, sq);
            }
        }
    }

    #[test]
    fn inverse_and_pow() {
        let q = p(43);
        for x in Fp::elements(q).skip(1) {
            assert_eq!(x * x.inv().unwrap(), Fp::one(q));
        }
        assert_eq!(Fp::zero(q).inv(), None);
        assert_eq!(Fp::new(-1, q).centered(), -1);
    }

    #[test]
    fn character_sum_eval_and_display() {
        let tr2 = CharacterSum::new([(1, 34), (5, 3), (-1, 1), (-5, 1)]);
        // chi_5(3) = -1, chi_-1(3) = -1, chi_-5(3) = 1
        assert_eq!(tr2.eval(p(3)), Ok(31));
        assert_eq!(tr2.dimension(), 39);
        assert_eq!(alloc::format!("{}", CharacterSum::new([(5, 1), (1, 36)])), "36 + chi(5)");
        assert_eq!(CharacterSum::new([(1, 2), (1, -2)]).terms(), &[]);
    }

    proptest! {
        #[test]
        fn legendre_is_multiplicative(a in -5000i64..5000, b in -5000i64..5000, idx in 1usize..40) {
            let q = primes_up_to(200)[idx];
            let (la, lb) = (legendre(a, q).unwrap(), legendre(b, q).unwrap());
            prop_assert_eq!(legendre(a * b, q).unwrap(), la * lb);
        }
    }
}
