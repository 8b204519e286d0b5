//! Rational elliptic surfaces given as pencils of plane cubics or as
//! Weierstrass families over `P^1_t`, with their singular fibres and the
//! blow-ups needed to make the total space smooth.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::curves::{Cubic, EllipticModel, PlaneCubic, WeierstrassCurve, WeierstrassFp};
use crate::exact::{int, reduce, RatPoly, Rational};
use crate::ff::{is_prime, CharacterSum, Field, Fp, IntPolynomial, Prime};
use crate::{Error, Result};

/// A point of `P^1(F_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasePoint {
    Finite(Fp),
    Infinity,
}

impl BasePoint {
    /// Position in `0..=p`, with infinity last.
    pub fn index(self, p: Prime) -> usize {
        match self {
            BasePoint::Finite(t) => t.residue() as usize,
            BasePoint::Infinity => p.get() as usize,
        }
    }
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasePoint::Finite(t) => write!(f, "{t}"),
            BasePoint::Infinity => f.write_str("inf"),
        }
    }
}

/// `P^1(F_p)` in the order `0, 1, ..., p-1, inf`.
pub fn base_line(p: Prime) -> impl Iterator<Item = BasePoint> {
    Fp::elements(p).map(BasePoint::Finite).chain(core::iter::once(BasePoint::Infinity))
}

/// Where a cusp sits: at infinity, or at the roots of an irreducible
/// polynomial over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CuspLocation {
    Infinity,
    Finite(IntPolynomial),
}

impl CuspLocation {
    pub fn degree(&self) -> usize {
        match self {
            CuspLocation::Infinity => 1,
            CuspLocation::Finite(f) => f.degree(),
        }
    }

    /// The points of `P^1(F_p)` over this location. Fails when the location
    /// runs into infinity or into itself modulo `p`.
    pub fn points(&self, p: Prime) -> Result<Vec<BasePoint>> {
        match self {
            CuspLocation::Infinity => Ok(alloc::vec![BasePoint::Infinity]),
            CuspLocation::Finite(f) => {
                let r = f.reduce_exact(p).map_err(|_| Error::CuspCollision { p: p.get() })?;
                if r.gcd(&r.derivative()).degree() != Some(0) {
                    return Err(Error::CuspCollision { p: p.get() });
                }
                Ok(Fp::elements(p).filter(|&t| r.eval(t).is_zero()).map(BasePoint::Finite).collect())
            }
        }
    }

    /// The location as a rational number, when it has degree one.
    pub fn rational_value(&self) -> Option<Rational> {
        match self {
            CuspLocation::Finite(f) if f.degree() == 1 => Some(Rational::new(-f.coeffs()[0], f.coeffs()[1])),
            _ => None,
        }
    }
}

impl fmt::Display for CuspLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CuspLocation::Infinity => f.write_str("inf"),
            CuspLocation::Finite(poly) => match self.rational_value() {
                Some(v) => write!(f, "{v}"),
                None => write!(f, "root of {poly}"),
            },
        }
    }
}

/// A semistable singular fibre of type `I_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cusp {
    pub location: CuspLocation,
    /// Kodaira index `n` of `I_n`; also the number of components `b(s)`.
    pub n: u32,
    /// `d` such that, over a rational point of the location, the fibre is
    /// split multiplicative exactly when `(d/p) = 1`. `None` for `I_1`
    /// fibres whose splitting is read off the tangent cone instead.
    pub split_field: Option<i64>,
}

impl Cusp {
    pub fn components(&self) -> u32 {
        self.n
    }

    /// Euler number contribution of all conjugate fibres together.
    pub fn euler_number(&self) -> u32 {
        self.n * self.location.degree() as u32
    }

    fn split_from_field(&self, p: Prime) -> Result<Option<bool>> {
        Ok(match self.split_field {
            Some(1) => Some(true),
            Some(d) => Some(crate::ff::legendre(d, p)? == 1),
            None => None,
        })
    }
}

/// A point of a singular fibre that is blown up on the smooth model; each of
/// its `components` exceptional curves adds `p` points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResolutionPoint {
    pub location: CuspLocation,
    /// Coordinates `(x:y:z)` in the plane (or Weierstrass) chart of the fibre.
    pub point: [i64; 3],
    pub components: u32,
}

/// The generic fibre as a family over `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FibreFamily {
    /// Ten monomial coefficients, each of degree at most one in `t`; the
    /// fibre at infinity is the coefficient of `t`.
    Pencil { coeffs: [RatPoly; 10] },
    /// `y^2 = x^3 + a2 x^2 + a4 x + a6` with `deg a_i <= i`. The fibre at
    /// infinity uses `s = 1/t`, `x = X/s^2`, `y = Y/s^3`.
    Weierstrass { a2: RatPoly, a4: RatPoly, a6: RatPoly },
}

/// Weights of `a2, a4, a6` in the chart at infinity.
pub const WEIERSTRASS_WEIGHTS: [usize; 3] = [2, 4, 6];

/// A single fibre reduced modulo `p`.
#[derive(Clone, Debug, PartialEq)]
pub enum Fibre {
    Plane(Cubic<Fp>),
    Weierstrass(WeierstrassFp),
}

impl Fibre {
    pub fn count_points(&self, p: Prime) -> u64 {
        match self {
            Fibre::Plane(c) => c.count_points(p),
            Fibre::Weierstrass(e) => e.count_points(),
        }
    }

    pub fn is_smooth(&self, p: Prime) -> bool {
        match self {
            Fibre::Plane(c) => c.is_smooth(p, c.count_points(p)),
            Fibre::Weierstrass(e) => e.is_smooth(),
        }
    }

    pub fn is_singular_at(&self, pt: [Fp; 3]) -> bool {
        match self {
            Fibre::Plane(c) => c.is_singular_at(pt),
            Fibre::Weierstrass(e) => {
                // affine points only: the point at infinity is always smooth
                if pt[2].is_zero() {
                    return false;
                }
                let inv = pt[2].inv().expect("nonzero");
                let (x, y) = (pt[0] * inv, pt[1] * inv);
                y.is_zero() && e.singular_x() == Some(x)
            }
        }
    }

    /// `1` if the branches at the unique rational node are rational, `-1`
    /// if they are conjugate.
    pub fn node_tangent_character(&self, p: Prime) -> Result<i8> {
        match self {
            Fibre::Plane(c) => c.node_tangent_character(p),
            Fibre::Weierstrass(e) => {
                let x0 = e.singular_x().ok_or_else(|| Error::InvalidModel("fibre has no rational node".into()))?;
                // y^2 = (x - x0)^2 (x + a2 + 2 x0)
                let slope = x0 + x0 + x0 + e.a2;
                match slope.quadratic_character()? {
                    0 => Err(Error::InvalidModel("singular point is not a node".into())),
                    c => Ok(c),
                }
            }
        }
    }
}

/// Number of `F_p`-points on a fibre of type `I_n` from its combinatorics:
/// `np` when split, otherwise `2(p+1)` for even `n` and `p+2` for odd `n`.
pub fn combinatorial_count(n: u32, split: bool, p: Prime) -> u64 {
    let p = p.get() as u64;
    match (split, n % 2) {
        (true, _) => n as u64 * p,
        (false, 0) => 2 * (p + 1),
        (false, _) => p + 2,
    }
}

/// Rational nodes on a fibre of type `I_n`: all of them when split, one
/// when non-split of odd length, none otherwise.
pub fn rational_node_count(n: u32, split: bool) -> u32 {
    match (split, n % 2) {
        (true, _) => n,
        (false, 1) => 1,
        (false, _) => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    pub name: String,
    pub family: FibreFamily,
    pub cusps: Vec<Cusp>,
    pub resolution: Vec<ResolutionPoint>,
    /// Rank of the Picard group of the generic fibre over `Q(t)`.
    pub pic_rank: u32,
    /// Trace of Frobenius on `H^2`, divided by `p`.
    pub h2: CharacterSum,
    pub bad_primes: Vec<u32>,
}

/// A singular fibre over a point of `P^1(F_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CuspPoint<'a> {
    pub at: BasePoint,
    pub cusp: &'a Cusp,
}

impl SurfaceModel {
    /// Structural checks that do not depend on a prime.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidModel(alloc::format!("{}: {m}", self.name)));
        match &self.family {
            FibreFamily::Pencil { coeffs } => {
                if coeffs.iter().any(|c| c.degree().is_some_and(|d| d > 1)) {
                    return bad("pencil coefficient of degree above one".into());
                }
                if coeffs.iter().all(|c| c.coeff(1) == int(0)) {
                    return bad("pencil is constant in t".into());
                }
            }
            FibreFamily::Weierstrass { a2, a4, a6 } => {
                for (a, w) in [a2, a4, a6].into_iter().zip(WEIERSTRASS_WEIGHTS) {
                    if a.degree().is_some_and(|d| d > w) {
                        return bad("Weierstrass coefficient exceeds its weight".into());
                    }
                }
            }
        }
        if self.cusps.iter().any(|c| c.n == 0) {
            return bad("I_0 listed as a cusp".into());
        }
        let euler: u32 = self.cusps.iter().map(Cusp::euler_number).sum();
        if euler != 12 {
            return bad(alloc::format!("Euler numbers of singular fibres sum to {euler}"));
        }
        for r in &self.resolution {
            if !self.cusps.iter().any(|c| c.location == r.location) {
                return bad(alloc::format!("resolution point over {} which is not a cusp", r.location));
            }
        }
        for p in &self.bad_primes {
            if !is_prime(*p as u64) {
                return bad(alloc::format!("bad prime {p} is not prime"));
            }
        }
        for c in &self.cusps {
            if let Some(d) = c.split_field {
                if !support_within(d, &self.bad_primes) {
                    return bad(alloc::format!("split field {d} ramifies at a good prime"));
                }
            }
        }
        if self.h2.dimension() != 10 {
            return bad(alloc::format!("h2 has rank {}, expected 10", self.h2.dimension()));
        }
        Ok(())
    }

    pub fn is_bad(&self, p: Prime) -> bool {
        self.bad_primes.contains(&p.get())
    }

    fn require_good(&self, p: Prime) -> Result<()> {
        if self.is_bad(p) {
            return Err(Error::BadPrime { p: p.get(), reason: alloc::format!("bad reduction of {}", self.name) });
        }
        Ok(())
    }

    /// Fibre over `t` reduced mod `p`, using the chart at infinity there.
    pub fn fibre_at(&self, t: BasePoint, p: Prime) -> Result<Fibre> {
        self.require_good(p)?;
        self.fibre_unchecked(t, p)
    }

    fn fibre_unchecked(&self, t: BasePoint, p: Prime) -> Result<Fibre> {
        let denominator = |e: Error| match e {
            Error::DenominatorVanishes { p } => {
                Error::BadPrime { p, reason: "a coefficient denominator vanishes".into() }
            }
            e => e,
        };
        let at = |a: &RatPoly, weight: usize| -> Result<Fp> {
            match t {
                BasePoint::Finite(t) => a.eval_mod(t),
                BasePoint::Infinity => reduce(&a.coeff(weight), p),
            }
            .map_err(denominator)
        };
        match &self.family {
            FibreFamily::Pencil { coeffs } => {
                let mut c = [Fp::zero(p); 10];
                for (slot, a) in c.iter_mut().zip(coeffs) {
                    *slot = at(a, 1)?;
                }
                Ok(Fibre::Plane(Cubic::from_coeffs(c)))
            }
            FibreFamily::Weierstrass { a2, a4, a6 } => {
                if !p.is_odd() {
                    return Err(Error::BadPrime {
                        p: 2,
                        reason: "Weierstrass model has no elliptic fibres at 2".into(),
                    });
                }
                Ok(Fibre::Weierstrass(WeierstrassFp { a2: at(a2, 2)?, a4: at(a4, 4)?, a6: at(a6, 6)? }))
            }
        }
    }

    /// The fibre over a rational value of `t`, as a curve over `Q`.
    pub fn fibre_over_q(&self, t: Rational) -> Result<EllipticModel> {
        match &self.family {
            FibreFamily::Pencil { coeffs } => {
                let c: [Rational; 10] = core::array::from_fn(|i| coeffs[i].eval(t));
                Ok(EllipticModel::Plane(PlaneCubic::new(c)?))
            }
            FibreFamily::Weierstrass { a2, a4, a6 } => {
                Ok(EllipticModel::Weierstrass(WeierstrassCurve { a2: a2.eval(t), a4: a4.eval(t), a6: a6.eval(t) }))
            }
        }
    }

    /// Singular fibres over `P^1(F_p)`. Fails if two cusps meet mod `p`.
    pub fn cusp_points(&self, p: Prime) -> Result<Vec<CuspPoint<'_>>> {
        let mut out: Vec<CuspPoint<'_>> = Vec::new();
        for cusp in &self.cusps {
            for at in cusp.location.points(p)? {
                if out.iter().any(|c| c.at == at) {
                    return Err(Error::CuspCollision { p: p.get() });
                }
                out.push(CuspPoint { at, cusp });
            }
        }
        Ok(out)
    }

    pub fn cusp_at(&self, t: BasePoint, p: Prime) -> Result<Option<&Cusp>> {
        Ok(self.cusp_points(p)?.into_iter().find(|c| c.at == t).map(|c| c.cusp))
    }

    /// Exceptional curves over `t`: raw fibre count plus `p` per component.
    fn exceptional_points(&self, t: BasePoint, p: Prime, fibre: &Fibre) -> Result<u64> {
        let mut extra = 0u64;
        for r in &self.resolution {
            if !r.location.points(p)?.contains(&t) {
                continue;
            }
            let pt = r.point.map(|c| Fp::new(c, p));
            if !fibre.is_singular_at(pt) {
                return Err(Error::InvalidModel(alloc::format!(
                    "{}: resolution point {:?} over {t} is not singular mod {p}",
                    self.name,
                    r.point
                )));
            }
            extra += r.components as u64 * p.get() as u64;
        }
        Ok(extra)
    }

    /// Points on the fibre of the smooth surface over `t`.
    pub fn count_resolved_fibre(&self, t: BasePoint, p: Prime) -> Result<u64> {
        let fibre = self.fibre_at(t, p)?;
        Ok(fibre.count_points(p) + self.exceptional_points(t, p, &fibre)?)
    }

    /// Resolved fibre counts over `0, 1, ..., p-1, inf`.
    pub fn fibre_counts(&self, p: Prime) -> Result<Vec<u64>> {
        base_line(p).map(|t| self.count_resolved_fibre(t, p)).collect()
    }

    pub fn surface_point_count(&self, p: Prime) -> Result<u64> {
        Ok(self.fibre_counts(p)?.iter().sum())
    }

    /// `1 + tr_2 + p^2` from the stored action on `H^2`.
    pub fn expected_point_count(&self, p: Prime) -> Result<u64> {
        let q = p.get() as i64;
        Ok((1 + self.h2.eval(p)? * q + q * q) as u64)
    }

    /// Whether the fibre over `t` is split multiplicative; for `I_1` this is
    /// read from the tangent cone of the raw fibre.
    pub fn is_split(&self, cusp: &Cusp, t: BasePoint, p: Prime) -> Result<bool> {
        match cusp.split_from_field(p)? {
            Some(s) => Ok(s),
            None => Ok(self.fibre_at(t, p)?.node_tangent_character(p)? == 1),
        }
    }

    /// Rational nodes of the resolved fibre over a rational cusp point.
    pub fn rational_nodes(&self, cusp: &Cusp, t: BasePoint, p: Prime) -> Result<u32> {
        Ok(rational_node_count(cusp.n, self.is_split(cusp, t, p)?))
    }

    /// Quadratic character of the two branches at a rational node of the
    /// fibre over `t`. Components of a split `I_n`, `n >= 2`, are rational;
    /// the single rational node of a non-split odd `I_n` joins two conjugate
    /// components.
    pub fn branch_character(&self, cusp: &Cusp, t: BasePoint, p: Prime) -> Result<i8> {
        if cusp.n == 1 {
            return self.fibre_at(t, p)?.node_tangent_character(p);
        }
        Ok(if self.is_split(cusp, t, p)? { 1 } else { -1 })
    }

    /// Primes below `bound` where the model degenerates: denominators vanish,
    /// the Weierstrass form is unusable, or cusps collide.
    pub fn degenerate_primes(&self, bound: u32) -> Vec<u32> {
        crate::ff::primes_up_to(bound)
            .into_iter()
            .filter(|&p| {
                self.fibre_unchecked(BasePoint::Infinity, p).is_err()
                    || Fp::elements(p).any(|t| self.fibre_unchecked(BasePoint::Finite(t), p).is_err())
                    || self.cusp_points(p).is_err()
            })
            .map(Prime::get)
            .collect()
    }

    /// Points of `P^1(F_p)` with a singular raw fibre, found by testing
    /// every fibre for smoothness. Slow; used to audit the cusp list.
    pub fn singular_base_points(&self, p: Prime) -> Result<Vec<BasePoint>> {
        let mut out = Vec::new();
        for t in base_line(p) {
            if !self.fibre_at(t, p)?.is_smooth(p) {
                out.push(t);
            }
        }
        Ok(out)
    }
}

/// Whether every prime dividing `d` lies in `primes`.
pub fn support_within(d: i64, primes: &[u32]) -> bool {
    let mut m = d.unsigned_abs();
    for &q in primes {
        while q > 1 && m.is_multiple_of(q as u64) {
            m /= q as u64;
        }
    }
    m == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ff::primes_up_to;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn fin(t: i64, q: Prime) -> BasePoint {
        BasePoint::Finite(Fp::new(t, q))
    }

    #[test]
    fn catalog_models_validate() {
        for s in catalog::surfaces() {
            s.validate().unwrap();
        }
    }

    #[test]
    fn fibre_examples() {
        let s15 = catalog::s1_5();
        let q = p(3);
        let expected = PlaneCubic::from_ints([0, 1, -1, 0, 1, 1, 0, -2, 0, 0]).unwrap().reduce(q).unwrap();
        assert_eq!(s15.fibre_at(fin(11, q), q).unwrap(), Fibre::Plane(expected));
        assert!(matches!(catalog::y2().fibre_at(fin(4, p(11)), p(11)), Err(Error::BadPrime { p: 11, .. })));
        let inf = catalog::hesse().fibre_at(BasePoint::Infinity, p(5)).unwrap();
        let xyz = PlaneCubic::from_ints([0, 0, 0, 0, 1, 0, 0, 0, 0, 0]).unwrap().reduce(p(5)).unwrap();
        assert_eq!(inf, Fibre::Plane(xyz));
    }

    #[test]
    fn resolved_fibre_examples() {
        let s15 = catalog::s1_5();
        assert_eq!(s15.count_resolved_fibre(fin(0, p(7)), p(7)), Ok(35));
        let y3 = catalog::y3();
        // nodal y^2 = x(x-1)^2 plus the exceptional curve of the I_2
        assert_eq!(y3.count_resolved_fibre(fin(0, p(3)), p(3)), Ok(6));
        assert_eq!(catalog::y2().surface_point_count(p(3)), Ok(40));
        assert_eq!(catalog::y2().surface_point_count(p(7)), Ok(120));
        assert_eq!(s15.surface_point_count(p(3)), Ok(40));
    }

    #[test]
    fn surface_counts_match_h2_action() {
        for s in catalog::surfaces() {
            for q in primes_up_to(43).into_iter().filter(|q| q.is_odd() && !s.is_bad(*q)) {
                assert_eq!(s.surface_point_count(q), s.expected_point_count(q), "{} at {q}", s.name);
            }
        }
    }

    #[test]
    fn singular_fibres_match_kodaira_combinatorics() {
        for s in catalog::surfaces() {
            for q in primes_up_to(43).into_iter().filter(|q| q.is_odd() && !s.is_bad(*q)) {
                for c in s.cusp_points(q).unwrap() {
                    let split = s.is_split(c.cusp, c.at, q).unwrap();
                    assert_eq!(
                        s.count_resolved_fibre(c.at, q).unwrap(),
                        combinatorial_count(c.cusp.n, split, q),
                        "{} over {} mod {q}",
                        s.name,
                        c.at
                    );
                }
            }
        }
    }

    #[test]
    fn cusp_list_matches_singular_fibres() {
        for s in catalog::surfaces() {
            for q in primes_up_to(17).into_iter().filter(|q| !s.is_bad(*q)) {
                let mut listed: Vec<BasePoint> = s.cusp_points(q).unwrap().iter().map(|c| c.at).collect();
                listed.sort_by_key(|t| t.index(q));
                assert_eq!(s.singular_base_points(q).unwrap(), listed, "{} mod {q}", s.name);
            }
        }
    }

    #[test]
    fn bad_primes_are_exactly_the_degenerate_ones() {
        for s in catalog::surfaces() {
            assert_eq!(s.degenerate_primes(400), s.bad_primes, "{}", s.name);
        }
    }

    #[test]
    fn support_check() {
        assert!(support_within(-1795, &[2, 5, 11, 359]));
        assert!(!support_within(-3, &[2]));
        assert!(support_within(-1, &[]));
    }
}
