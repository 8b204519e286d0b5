use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use super::{Field, Fp, IntPolynomial, Poly, Prime};
use crate::{Error, Result};

/// Degrees of the irreducible factors of a squarefree polynomial, ascending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorPattern(Vec<u32>);

impl FactorPattern {
    pub fn new(mut degrees: Vec<u32>) -> Self {
        degrees.sort_unstable();
        FactorPattern(degrees)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn root_count(&self) -> usize {
        self.0.iter().filter(|&&d| d == 1).count()
    }

    pub fn is_irreducible(&self) -> bool {
        self.0.len() == 1
    }

    /// Order of the Frobenius permutation with this cycle type.
    pub fn cycle_order(&self) -> u32 {
        self.0.iter().fold(1, |acc, &d| acc.lcm(&d))
    }

    /// Sign of the permutation with this cycle type.
    pub fn sign(&self) -> i8 {
        let even_cycles = self.0.iter().filter(|&&d| d % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for FactorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

fn checked_reduction(f: &IntPolynomial, p: Prime) -> Result<Poly<Fp>> {
    let r = f.reduce_exact(p)?;
    if r.gcd(&r.derivative()).degree() != Some(0) {
        return Err(Error::NotSquarefree { p: p.get() });
    }
    Ok(r.monic())
}

/// Factorization pattern by distinct-degree factorization.
///
/// `x^(p^d) mod f` is built by repeated `p`-th powers. Fails if the leading
/// coefficient vanishes mod `p` or the reduction is not squarefree.
pub fn factorization_pattern(f: &IntPolynomial, p: Prime) -> Result<FactorPattern> {
    let mut rest = checked_reduction(f, p)?;
    let zero = Fp::zero(p);
    let x = Poly::x(zero);
    let mut h = x.clone();
    let mut degrees = Vec::new();
    let mut d = 0u32;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d as usize > deg {
            degrees.push(deg as u32);
            break;
        }
        h = h.pow_mod(p.get() as u64, &rest)?;
        let g = h.sub(&x).gcd(&rest);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 {
            degrees.extend(core::iter::repeat_n(d, gd / d as usize));
            rest = rest.div_rem(&g)?.0;
            h = h.rem(&rest)?;
        }
    }
    Ok(FactorPattern::new(degrees))
}

/// Factorization pattern by root counting and a search for quadratic
/// factors. Slow, limited to degree 4, and independent of the DDF code.
pub fn factorization_pattern_exhaustive(f: &IntPolynomial, p: Prime) -> Result<FactorPattern> {
    if f.degree() > 4 {
        return Err(Error::DegreeTooLarge(f.degree()));
    }
    let r = checked_reduction(f, p)?;
    let roots = Fp::elements(p).filter(|&a| r.eval(a).is_zero()).count() as u32;
    let n = f.degree() as u32;
    let degrees = match (n, roots) {
        (_, r) if r == n => alloc::vec![1; n as usize],
        (2, 0) | (3, 0) => alloc::vec![n],
        (4, 0) if has_quadratic_factor(&r, p)? => alloc::vec![2, 2],
        (4, 0) => alloc::vec![4],
        (3, 1) => alloc::vec![1, 2],
        (4, 1) => alloc::vec![1, 3],
        (4, 2) => alloc::vec![1, 1, 2],
        _ => return Err(Error::Contradiction(alloc::format!("{roots} roots of a squarefree degree {n} polynomial"))),
    };
    Ok(FactorPattern::new(degrees))
}

fn has_quadratic_factor(f: &Poly<Fp>, p: Prime) -> Result<bool> {
    for b in Fp::elements(p) {
        for c in Fp::elements(p) {
            let q = Poly::new(alloc::vec![c, b, Fp::one(p)], c);
            if f.rem(&q)?.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Transitive Galois groups that occur for the residual representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupLabel {
    C3,
    S3,
    S4,
    /// Splitting field of a cubic composed with `Q(sqrt d)`.
    S3xC2 {
        d: i64,
    },
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::C3 => f.write_str("C3"),
            GroupLabel::S3 => f.write_str("S3"),
            GroupLabel::S4 => f.write_str("S4"),
            GroupLabel::S3xC2 { d } => write!(f, "S3xC2[{d}]"),
        }
    }
}

/// Order of Frobenius at `p` in the Galois group of the splitting field of
/// `f`, composed with `Q(sqrt d)` for `S3xC2`.
pub fn frobenius_order(f: &IntPolynomial, p: Prime, group: &GroupLabel) -> Result<u32> {
    let pattern = factorization_pattern(f, p)?;
    let chi = match group {
        GroupLabel::S3xC2 { d } => Some(super::legendre(*d, p)?),
        _ => None,
    };
    order_from_pattern(group, &pattern, chi)
}

/// Order of a Frobenius element with the given cycle type and, for `S3xC2`,
/// the value of the quadratic character.
pub fn order_from_pattern(group: &GroupLabel, pattern: &FactorPattern, chi: Option<i8>) -> Result<u32> {
    let mismatch = || Error::PatternMismatch { pattern: pattern.clone(), group: group.clone() };
    let degs = pattern.degrees();
    let ok = match group {
        GroupLabel::C3 => matches!(degs, [1, 1, 1] | [3]),
        GroupLabel::S3 | GroupLabel::S3xC2 { .. } => matches!(degs, [1, 1, 1] | [1, 2] | [3]),
        GroupLabel::S4 => pattern.total_degree() == 4,
    };
    if !ok {
        return Err(mismatch());
    }
    let base = pattern.cycle_order();
    match group {
        GroupLabel::S3xC2 { .. } => match chi {
            Some(1) => Ok(base),
            Some(-1) => Ok(base.lcm(&2)),
            _ => Err(mismatch()),
        },
        _ => Ok(base),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::primes_up_to;
    use proptest::prelude::*;

    fn poly(desc: &[i64]) -> IntPolynomial {
        IntPolynomial::from_descending(desc).unwrap()
    }

    #[test]
    fn known_patterns() {
        let p7 = Prime::new(7).unwrap();
        // x^3 - 2 is irreducible mod 7 (2 is not a cube)
        assert_eq!(factorization_pattern(&poly(&[1, 0, 0, -2]), p7).unwrap().degrees(), &[3]);
        // x^4 + 1 = (x^2 + 3x + 1)(x^2 + 4x + 1) mod 7
        assert_eq!(factorization_pattern(&poly(&[1, 0, 0, 0, 1]), p7).unwrap().degrees(), &[2, 2]);
        assert_eq!(factorization_pattern(&poly(&[1, 0, 0, -1]), p7), Ok(FactorPattern::new(alloc::vec![1, 1, 1])));
    }

    #[test]
    fn refuses_bad_reductions() {
        let p3 = Prime::new(3).unwrap();
        assert_eq!(factorization_pattern(&poly(&[3, 0, 1]), p3), Err(Error::LeadingCoefficientVanishes { p: 3 }));
        assert_eq!(factorization_pattern(&poly(&[1, 0, 0, -2]), p3), Err(Error::NotSquarefree { p: 3 }));
    }

    #[test]
    fn spec_examples() {
        let p = |n| Prime::new(n).unwrap();
        let c1 = poly(&[1, 0, 2, -8]);
        let c3 = poly(&[1, -1, 1, 1]);
        assert_eq!(factorization_pattern(&c1, p(3)).unwrap().degrees(), &[3]);
        assert_eq!(factorization_pattern(&poly(&[1, 0, -1]), p(5)).unwrap().degrees(), &[1, 1]);
        assert_eq!(factorization_pattern(&c3, p(7)).unwrap().degrees(), &[1, 2]);
        assert_eq!(frobenius_order(&c1, p(3), &GroupLabel::S3), Ok(3));
        assert_eq!(frobenius_order(&c3, p(7), &GroupLabel::S3), Ok(2));
        let at13 = factorization_pattern_exhaustive(&c1, p(13)).unwrap().cycle_order();
        assert_eq!(frobenius_order(&c1, p(13), &GroupLabel::S3), Ok(at13));
    }

    #[test]
    fn orders_from_patterns() {
        let g = GroupLabel::S3xC2 { d: 5 };
        let irr = FactorPattern::new(alloc::vec![3]);
        assert_eq!(order_from_pattern(&g, &irr, Some(-1)), Ok(6));
        assert_eq!(order_from_pattern(&GroupLabel::S4, &FactorPattern::new(alloc::vec![4]), None), Ok(4));
        assert_eq!(order_from_pattern(&GroupLabel::S4, &FactorPattern::new(alloc::vec![1, 1, 2]), None), Ok(2));
        let split = FactorPattern::new(alloc::vec![2, 2]);
        assert_eq!(
            order_from_pattern(&GroupLabel::S3, &split, None),
            Err(Error::PatternMismatch { pattern: split.clone(), group: GroupLabel::S3 })
        );
        assert!(order_from_pattern(&GroupLabel::C3, &FactorPattern::new(alloc::vec![1, 2]), None).is_err());
        assert!(order_from_pattern(&g, &irr, None).is_err());
    }

    proptest! {
        #[test]
        fn ddf_agrees_with_exhaustive(
            coeffs in proptest::collection::vec(-30i64..30, 2..=4),
            idx in 0usize..14,
        ) {
            let mut c = coeffs;
            c.push(1);
            let f = IntPolynomial::new(c).unwrap();
            let p = primes_up_to(43)[idx];
            let fast = factorization_pattern(&f, p);
            let slow = factorization_pattern_exhaustive(&f, p);
            prop_assert_eq!(fast.clone(), slow);
            if let Ok(pat) = fast {
                prop_assert_eq!(pat.total_degree() as usize, f.degree());
                // Stickelberger: sign of Frobenius is the character of the discriminant.
                if p.is_odd() {
                    let disc = f.discriminant().unwrap();
                    let chi = Fp::from_i128(disc, p).quadratic_character().unwrap();
                    prop_assert_eq!(chi, pat.sign());
                }
            }
        }
    }
}
