use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::{Field, Fp, Prime};

/// An element `a + b*w` of `F_{p^2}`, where `w^2 = s*w + n`.
///
/// For odd `p` we take `s = 0` and `n` the least non-residue; for `p = 2`
/// the modulus is `w^2 + w + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2 {
    a: Fp,
    b: Fp,
    s: Fp,
    n: Fp,
}

impl Fp2 {
    fn modulus_for(p: Prime) -> (Fp, Fp) {
        if p.get() == 2 {
            return (Fp::one(p), Fp::one(p));
        }
        let n =
            Fp::elements(p).skip(1).find(|x| x.quadratic_character() == Ok(-1)).expect("odd prime has a non-residue");
        (Fp::zero(p), n)
    }

    pub fn new(a: Fp, b: Fp) -> Self {
        let (s, n) = Self::modulus_for(a.modulus());
        Fp2 { a, b, s, n }
    }

    pub fn from_base(a: Fp) -> Self {
        Self::new(a, Fp::zero(a.modulus()))
    }

    /// All `p^2` elements; base-field elements come first.
    pub fn elements(p: Prime) -> impl Iterator<Item = Fp2> {
        let (s, n) = Self::modulus_for(p);
        Fp::elements(p).flat_map(move |b| Fp::elements(p).map(move |a| Fp2 { a, b, s, n }))
    }

    pub fn parts(self) -> (Fp, Fp) {
        (self.a, self.b)
    }

    pub fn is_base(self) -> bool {
        self.b.is_zero()
    }

    fn with(self, a: Fp, b: Fp) -> Self {
        Fp2 { a, b, ..self }
    }

    /// The Frobenius conjugate `x^p`.
    pub fn frobenius(self) -> Self {
        Field::pow(&self, self.a.modulus().get() as u64)
    }
}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}w (mod {})", self.a, self.b, self.a.modulus())
    }
}

impl Add for Fp2 {
    type Output = Fp2;
    fn add(self, rhs: Fp2) -> Fp2 {
        self.with(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for Fp2 {
    type Output = Fp2;
    fn sub(self, rhs: Fp2) -> Fp2 {
        self.with(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Mul for Fp2 {
    type Output = Fp2;
    fn mul(self, rhs: Fp2) -> Fp2 {
        // (a + bw)(c + dw) = ac + bd*n + (ad + bc + bd*s) w
        let bd = self.b * rhs.b;
        self.with(self.a * rhs.a + bd * self.n, self.a * rhs.b + self.b * rhs.a + bd * self.s)
    }
}

impl Neg for Fp2 {
    type Output = Fp2;
    fn neg(self) -> Fp2 {
        self.with(-self.a, -self.b)
    }
}

impl Field for Fp2 {
    fn zero_like(&self) -> Self {
        let z = Fp::zero(self.a.modulus());
        self.with(z, z)
    }
    fn one_like(&self) -> Self {
        let p = self.a.modulus();
        self.with(Fp::one(p), Fp::zero(p))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let q = self.field_order();
        Some(self.pow(q - 2))
    }
    fn characteristic(&self) -> Prime {
        self.a.modulus()
    }
    fn field_order(&self) -> u64 {
        let p = self.a.modulus().get() as u64;
        p * p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::primes_up_to;

    #[test]
    fn field_axioms_small_primes() {
        for p in primes_up_to(13) {
            let all: alloc::vec::Vec<Fp2> = Fp2::elements(p).collect();
            assert_eq!(all.len() as u64, (p.get() as u64).pow(2));
            for &x in &all {
                if !x.is_zero() {
                    assert_eq!(x * x.inv().unwrap(), x.one_like());
                }
                // x^(p^2) = x
                assert_eq!(x.pow(x.field_order()), x);
                // fixed points of Frobenius are exactly the base field
                assert_eq!(x.frobenius() == x, x.is_base());
            }
        }
    }

    #[test]
    fn every_base_element_is_a_square() {
        for p in primes_up_to(31) {
            for a in Fp::elements(p) {
                let x = Fp2::from_base(a);
                assert!(Fp2::elements(p).any(|y| y * y == x));
            }
        }
    }
}
