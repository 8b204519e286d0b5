//! The finite group `G~` of pairs `(A, C)` with `A` a trace-zero 2x2 matrix
//! over F_2 and `C` in GL_2(F_2), under `(A,C)(B,D) = (A + C B C^-1, CD)`.

use alloc::vec::Vec;
use core::fmt;

/// A 2x2 matrix over F_2 packed as bits `a11 a12 a21 a22` (bit 0 is `a11`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2F2(u8);

impl Mat2F2 {
    pub const ZERO: Mat2F2 = Mat2F2(0);
    pub const IDENTITY: Mat2F2 = Mat2F2(0b1001);

    pub fn new(a11: u8, a12: u8, a21: u8, a22: u8) -> Self {
        Mat2F2((a11 & 1) | (a12 & 1) << 1 | (a21 & 1) << 2 | (a22 & 1) << 3)
    }

    pub fn entry(self, i: usize, j: usize) -> u8 {
        (self.0 >> (2 * i + j)) & 1
    }

    pub fn all() -> impl Iterator<Item = Mat2F2> {
        (0..16).map(Mat2F2)
    }

    pub fn general_linear() -> impl Iterator<Item = Mat2F2> {
        Self::all().filter(|m| m.det() == 1)
    }

    pub fn trace(self) -> u8 {
        self.entry(0, 0) ^ self.entry(1, 1)
    }

    pub fn det(self) -> u8 {
        (self.entry(0, 0) & self.entry(1, 1)) ^ (self.entry(0, 1) & self.entry(1, 0))
    }

    /// Inverse when invertible; over F_2 this is the adjugate.
    pub fn inverse(self) -> Option<Self> {
        (self.det() == 1).then(|| Mat2F2::new(self.entry(1, 1), self.entry(0, 1), self.entry(1, 0), self.entry(0, 0)))
    }

    pub fn apply(self, v: [u8; 2]) -> [u8; 2] {
        [(self.entry(0, 0) & v[0]) ^ (self.entry(0, 1) & v[1]), (self.entry(1, 0) & v[0]) ^ (self.entry(1, 1) & v[1])]
    }
}

impl core::ops::Add for Mat2F2 {
    type Output = Mat2F2;
    #[allow(clippy::suspicious_arithmetic_impl)] // entrywise addition in F_2
    fn add(self, rhs: Mat2F2) -> Mat2F2 {
        Mat2F2(self.0 ^ rhs.0)
    }
}

impl core::ops::Mul for Mat2F2 {
    type Output = Mat2F2;
    fn mul(self, rhs: Mat2F2) -> Mat2F2 {
        let e = |i, j| (self.entry(i, 0) & rhs.entry(0, j)) ^ (self.entry(i, 1) & rhs.entry(1, j));
        Mat2F2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl fmt::Display for Mat2F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}{};{}{}]", self.entry(0, 0), self.entry(0, 1), self.entry(1, 0), self.entry(1, 1))
    }
}

/// An element `(A, C)` of the semidirect product `M_2(F_2) x| GL_2(F_2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GtElement {
    pub a: Mat2F2,
    pub c: Mat2F2,
}

impl GtElement {
    pub const IDENTITY: GtElement = GtElement { a: Mat2F2::ZERO, c: Mat2F2::IDENTITY };

    /// `None` unless `C` is invertible.
    pub fn new(a: Mat2F2, c: Mat2F2) -> Option<Self> {
        (c.det() == 1).then_some(GtElement { a, c })
    }

    pub fn in_g_tilde(self) -> bool {
        self.a.trace() == 0
    }

    pub fn inverse(self) -> Self {
        // (A, C)^-1 = (-C^-1 A C, C^-1)
        let ci = self.c.inverse().expect("second component is invertible");
        GtElement { a: ci * self.a * self.c, c: ci }
    }

    pub fn order(self) -> u32 {
        let mut g = self;
        let mut n = 1;
        while g != Self::IDENTITY {
            g = semidirect_mul(g, self);
            n += 1;
        }
        n
    }
}

impl fmt::Display for GtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.c)
    }
}

pub fn semidirect_mul(g: GtElement, h: GtElement) -> GtElement {
    let ci = g.c.inverse().expect("second component is invertible");
    GtElement { a: g.a + g.c * h.a * ci, c: g.c * h.c }
}

/// All 48 elements with trace-zero first component, in a fixed order.
pub fn build_g_tilde() -> Vec<GtElement> {
    let mut out = Vec::with_capacity(48);
    for a in Mat2F2::all().filter(|a| a.trace() == 0) {
        for c in Mat2F2::general_linear() {
            out.push(GtElement { a, c });
        }
    }
    out
}

pub fn center(elements: &[GtElement]) -> Vec<GtElement> {
    elements
        .iter()
        .copied()
        .filter(|&g| elements.iter().all(|&h| semidirect_mul(g, h) == semidirect_mul(h, g)))
        .collect()
}

/// The image of `j`: an element of the affine group `F_2^2 x| GL_2(F_2)`
/// together with a sign bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JImage {
    pub v: [u8; 2],
    pub c: Mat2F2,
    pub e: u8,
}

impl JImage {
    pub const IDENTITY: JImage = JImage { v: [0, 0], c: Mat2F2::IDENTITY, e: 0 };

    pub fn affine_order(self) -> u32 {
        let base = JImage { e: 0, ..self };
        let mut g = base;
        let mut n = 1;
        while g != Self::IDENTITY {
            g = g * base;
            n += 1;
        }
        n
    }
}

impl core::ops::Mul for JImage {
    type Output = JImage;
    /// `(v, C)(w, D) = (v + Cw, CD)` on the affine part, addition on the bit.
    fn mul(self, rhs: JImage) -> JImage {
        let cw = self.c.apply(rhs.v);
        JImage { v: [self.v[0] ^ cw[0], self.v[1] ^ cw[1]], c: self.c * rhs.c, e: self.e ^ rhs.e }
    }
}

/// `((a1 a2; a3 a1), C) -> ((a2, a3), C, a1 + a2 + a3)`.
pub fn j_map(g: GtElement) -> JImage {
    let (a1, a2, a3) = (g.a.entry(0, 0), g.a.entry(0, 1), g.a.entry(1, 0));
    JImage { v: [a2, a3], c: g.c, e: a1 ^ a2 ^ a3 }
}

/// `tr(A C) mod 2`.
pub fn tau_tilde(g: GtElement) -> u8 {
    (g.a * g.c).trace()
}

/// Number of elements of each order, indexed by order.
pub fn order_census(orders: impl IntoIterator<Item = u32>) -> [usize; 7] {
    let mut census = [0; 7];
    for n in orders {
        census[n as usize] += 1;
    }
    census
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices() {
        assert_eq!(Mat2F2::general_linear().count(), 6);
        assert_eq!(Mat2F2::all().filter(|m| m.trace() == 0).count(), 8);
        for m in Mat2F2::general_linear() {
            assert_eq!(m * m.inverse().unwrap(), Mat2F2::IDENTITY);
        }
        assert_eq!(Mat2F2::new(1, 1, 0, 1).apply([0, 1]), [1, 1]);
    }

    #[test]
    fn identity_acts_trivially() {
        for h in build_g_tilde() {
            assert_eq!(semidirect_mul(GtElement::IDENTITY, h), h);
            assert_eq!(semidirect_mul(h, h.inverse()), GtElement::IDENTITY);
        }
    }

    #[test]
    fn tau_vanishes_on_pure_linear_part() {
        for c in Mat2F2::general_linear() {
            assert_eq!(tau_tilde(GtElement { a: Mat2F2::ZERO, c }), 0);
        }
        assert_eq!(j_map(GtElement::IDENTITY), JImage::IDENTITY);
    }
}
