//! Plane cubics and Weierstrass curves over `F_p`: point counts, smoothness,
//! `a_p`, and the splitting character of a nodal fibre.

use alloc::vec::Vec;
use core::fmt;

use crate::exact::{int, reduce, Rational};
use crate::ff::{Field, Fp, Fp2, Poly, Prime};
use crate::{Error, Result};

/// Exponents of the ten cubic monomials, in the order
/// `x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3`.
pub const MONOMIALS: [[u32; 3]; 10] =
    [[3, 0, 0], [2, 1, 0], [2, 0, 1], [1, 2, 0], [1, 1, 1], [1, 0, 2], [0, 3, 0], [0, 2, 1], [0, 1, 2], [0, 0, 3]];

pub const MONOMIAL_NAMES: [&str; 10] = ["x3", "x2y", "x2z", "xy2", "xyz", "xz2", "y3", "y2z", "yz2", "z3"];

/// A homogeneous ternary form given by its nonzero terms.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<F: Field> {
    terms: Vec<([u32; 3], F)>,
    zero: F,
}

impl<F: Field> Form<F> {
    pub fn new(terms: impl IntoIterator<Item = ([u32; 3], F)>, zero: F) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Form { terms, zero: zero.zero_like() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, pt: [F; 3]) -> F {
        let mut acc = self.zero;
        for (e, c) in &self.terms {
            acc = acc + *c * pt[0].pow(e[0] as u64) * pt[1].pow(e[1] as u64) * pt[2].pow(e[2] as u64);
        }
        acc
    }

    pub fn partial(&self, var: usize) -> Self {
        let one = self.zero.one_like();
        let terms = self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, c)| {
            let mut k = self.zero;
            for _ in 0..e[var] {
                k = k + one;
            }
            let mut e2 = *e;
            e2[var] -= 1;
            (e2, *c * k)
        });
        Form::new(terms, self.zero)
    }

    /// Restriction to the line `t -> base + t*dir`, as a polynomial in `t`.
    pub fn restrict(&self, base: [F; 3], dir: [F; 3]) -> Poly<F> {
        let lin = |i: usize| Poly::new(alloc::vec![base[i], dir[i]], self.zero);
        let coords = [lin(0), lin(1), lin(2)];
        let mut acc = Poly::zero(self.zero);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(*c);
            for (v, coord) in coords.iter().enumerate() {
                for _ in 0..e[v] {
                    term = term.mul(coord);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn map<G: Field>(&self, zero: G, f: impl Fn(F) -> G) -> Form<G> {
        Form::new(self.terms.iter().map(|(e, c)| (*e, f(*c))), zero)
    }
}

/// A plane cubic over `F_p` (or `F_{p^2}`), with cached partial derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct Cubic<F: Field> {
    form: Form<F>,
    grad: [Form<F>; 3],
}

impl<F: Field> Cubic<F> {
    pub fn from_form(form: Form<F>) -> Self {
        let grad = [form.partial(0), form.partial(1), form.partial(2)];
        Cubic { form, grad }
    }

    pub fn from_coeffs(coeffs: [F; 10]) -> Self {
        let zero = coeffs[0].zero_like();
        Self::from_form(Form::new(MONOMIALS.iter().copied().zip(coeffs), zero))
    }

    pub fn form(&self) -> &Form<F> {
        &self.form
    }

    pub fn eval(&self, pt: [F; 3]) -> F {
        self.form.eval(pt)
    }

    pub fn is_singular_at(&self, pt: [F; 3]) -> bool {
        self.form.eval(pt).is_zero() && self.grad.iter().all(|g| g.eval(pt).is_zero())
    }

    /// Gcd of the equation and its gradient restricted to a line; a nonzero
    /// root of it (or a zero result) marks a singular point on that line.
    fn singular_gcd(&self, base: [F; 3], dir: [F; 3]) -> Poly<F> {
        let mut g = self.form.restrict(base, dir);
        for d in &self.grad {
            g = g.gcd(&d.restrict(base, dir));
        }
        g
    }
}

/// Projective points of `P^2(F_p)`: `(x:y:1)`, `(x:1:0)`, `(1:0:0)`.
pub fn projective_plane(p: Prime) -> impl Iterator<Item = [Fp; 3]> {
    let (z, o) = (Fp::zero(p), Fp::one(p));
    let affine = Fp::elements(p).flat_map(move |x| Fp::elements(p).map(move |y| [x, y, o]));
    let line = Fp::elements(p).map(move |x| [x, o, z]);
    affine.chain(line).chain(core::iter::once([o, z, z]))
}

impl Cubic<Fp> {
    pub fn prime(&self) -> Option<Prime> {
        self.form.terms.first().map(|(_, c)| c.modulus())
    }

    /// Number of projective `F_p`-points.
    pub fn count_points(&self, p: Prime) -> u64 {
        projective_plane(p).filter(|&pt| self.eval(pt).is_zero()).count() as u64
    }

    /// `F_p`-points at which the curve is singular.
    pub fn singular_points(&self, p: Prime) -> Vec<[Fp; 3]> {
        projective_plane(p).filter(|&pt| self.is_singular_at(pt)).collect()
    }

    /// Whether the curve is smooth over the algebraic closure.
    ///
    /// A singular cubic has a singular point over `F_p`, a conjugate pair of
    /// them over `F_{p^2}` (line plus conic), or is a triangle of lines
    /// conjugate over `F_{p^3}`, which has no `F_p`-points at all.
    pub fn is_smooth(&self, p: Prime, points: u64) -> bool {
        if self.form.is_zero() || points == 0 {
            return false;
        }
        if projective_plane(p).any(|pt| self.is_singular_at(pt)) {
            return false;
        }
        let (z, o) = (Fp::zero(p), Fp::one(p));
        // (x:1:0) for x anywhere in the closure; coefficients lie in F_p.
        if self.singular_gcd([z, o, z], [o, z, z]).degree() != Some(0) {
            return false;
        }
        let lifted = Cubic::from_form(self.form.map(Fp2::from_base(z), Fp2::from_base));
        let (z2, o2) = (Fp2::from_base(z), Fp2::from_base(o));
        for x0 in Fp2::elements(p).filter(|x| !x.is_base()) {
            if lifted.singular_gcd([x0, z2, o2], [z2, o2, z2]).degree() != Some(0) {
                return false;
            }
        }
        // x0 in F_p with a conjugate pair of y values over F_{p^2}
        for x0 in Fp::elements(p) {
            if self.singular_gcd([x0, z, o], [z, o, z]).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Quadratic character of the tangent cone at the unique `F_p`-rational
    /// node: `1` if the two branches are defined over `F_p`, `-1` if they
    /// are conjugate.
    pub fn node_tangent_character(&self, p: Prime) -> Result<i8> {
        p.require_odd()?;
        let sing = self.singular_points(p);
        let [pt] = sing.as_slice() else {
            return Err(Error::InvalidModel(alloc::format!(
                "expected one rational singular point mod {p}, found {}",
                sing.len()
            )));
        };
        let k = (0..3).rev().find(|&i| !pt[i].is_zero()).expect("projective point");
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let second = |a: usize, b: usize| self.grad[a].partial(b).eval(*pt);
        let det = second(i, i) * second(j, j) - second(i, j) * second(i, j);
        if det.is_zero() {
            return Err(Error::InvalidModel(alloc::format!("singular point mod {p} is not a node")));
        }
        (-det).quadratic_character()
    }
}

/// A plane cubic with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlaneCubic {
    coeffs: [Rational; 10],
}

impl PlaneCubic {
    pub fn new(coeffs: [Rational; 10]) -> Result<Self> {
        if coeffs.iter().all(|c| *c == int(0)) {
            return Err(Error::InvalidModel("zero cubic".into()));
        }
        Ok(PlaneCubic { coeffs })
    }

    pub fn from_ints(coeffs: [i64; 10]) -> Result<Self> {
        Self::new(coeffs.map(int))
    }

    pub fn coeffs(&self) -> &[Rational; 10] {
        &self.coeffs
    }

    pub fn reduce(&self, p: Prime) -> Result<Cubic<Fp>> {
        let mut out = [Fp::zero(p); 10];
        for (slot, c) in out.iter_mut().zip(&self.coeffs) {
            *slot = reduce(c, p)
                .map_err(|_| Error::BadPrime { p: p.get(), reason: "a coefficient denominator vanishes".into() })?;
        }
        let cubic = Cubic::from_coeffs(out);
        if cubic.form.is_zero() {
            return Err(Error::BadPrime { p: p.get(), reason: "the cubic vanishes identically".into() });
        }
        Ok(cubic)
    }
}

impl fmt::Debug for PlaneCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_map();
        for (name, c) in MONOMIAL_NAMES.iter().zip(&self.coeffs) {
            if *c != int(0) {
                list.entry(name, &alloc::format!("{c}"));
            }
        }
        list.finish()
    }
}

/// Outcome of counting a curve over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveCount {
    pub p: Prime,
    pub points: u64,
    pub smooth: bool,
}

impl CurveCount {
    fn checked(p: Prime, points: u64, smooth: bool) -> Result<Self> {
        let c = CurveCount { p, points, smooth };
        if smooth {
            let a = c.trace();
            if (a * a) as u64 > 4 * p.get() as u64 {
                return Err(Error::HasseBound { p: p.get(), points });
            }
        }
        Ok(c)
    }

    fn trace(&self) -> i64 {
        self.p.get() as i64 + 1 - self.points as i64
    }

    /// `a_p = p + 1 - N`, refused for singular reductions.
    pub fn ap(&self) -> Result<i64> {
        if !self.smooth {
            return Err(Error::SingularReduction { p: self.p.get() });
        }
        Ok(self.trace())
    }
}

pub fn count_plane_cubic(c: &PlaneCubic, p: Prime) -> Result<CurveCount> {
    let cubic = c.reduce(p)?;
    let points = cubic.count_points(p);
    CurveCount::checked(p, points, cubic.is_smooth(p, points))
}

/// `y^2 = x^3 + a2 x^2 + a4 x + a6` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve {
    pub a2: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

/// The reduction of a [`WeierstrassCurve`] at an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeierstrassFp {
    pub a2: Fp,
    pub a4: Fp,
    pub a6: Fp,
}

impl WeierstrassFp {
    pub fn rhs(&self, x: Fp) -> Fp {
        ((x + self.a2) * x + self.a4) * x + self.a6
    }

    fn cubic(&self) -> Poly<Fp> {
        let one = Fp::one(self.a2.modulus());
        Poly::new(alloc::vec![self.a6, self.a4, self.a2, one], one)
    }

    pub fn is_smooth(&self) -> bool {
        let f = self.cubic();
        f.gcd(&f.derivative()).degree() == Some(0)
    }

    /// `1 + sum_x (1 + (f(x)/p))`.
    pub fn count_points(&self) -> u64 {
        let p = self.a2.modulus();
        let mut n = 1u64;
        for x in Fp::elements(p) {
            n += (1 + self.rhs(x).quadratic_character().expect("odd p")) as u64;
        }
        n
    }

    /// The singular point `(x, 0)` of a singular reduction, if rational.
    pub fn singular_x(&self) -> Option<Fp> {
        let f = self.cubic();
        let g = f.gcd(&f.derivative());
        match g.degree() {
            Some(1) => Some(-g.coeff(0)),
            _ => None,
        }
    }
}

impl WeierstrassCurve {
    pub fn reduce(&self, p: Prime) -> Result<WeierstrassFp> {
        if !p.is_odd() {
            return Err(Error::BadPrime { p: 2, reason: "Weierstrass model has no elliptic fibres at 2".into() });
        }
        let r = |c: &Rational| {
            reduce(c, p)
                .map_err(|_| Error::BadPrime { p: p.get(), reason: "a coefficient denominator vanishes".into() })
        };
        Ok(WeierstrassFp { a2: r(&self.a2)?, a4: r(&self.a4)?, a6: r(&self.a6)? })
    }
}

pub fn count_weierstrass(e: &WeierstrassCurve, p: Prime) -> Result<CurveCount> {
    let r = e.reduce(p)?;
    CurveCount::checked(p, r.count_points(), r.is_smooth())
}

/// Two-variable enumeration, kept as an independent check of the
/// character-sum formula.
pub fn count_weierstrass_naive(e: &WeierstrassFp) -> u64 {
    let p = e.a2.modulus();
    let mut n = 1u64;
    for x in Fp::elements(p) {
        let rhs = e.rhs(x);
        n += Fp::elements(p).filter(|&y| y * y == rhs).count() as u64;
    }
    n
}

/// An elliptic curve over `Q` in one of the two supported shapes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EllipticModel {
    Plane(PlaneCubic),
    Weierstrass(WeierstrassCurve),
}

impl EllipticModel {
    pub fn count(&self, p: Prime) -> Result<CurveCount> {
        match self {
            EllipticModel::Plane(c) => count_plane_cubic(c, p),
            EllipticModel::Weierstrass(e) => count_weierstrass(e, p),
        }
    }

    /// `a_p` by point counting.
    pub fn ap(&self, p: Prime) -> Result<i64> {
        self.count(p)?.ap()
    }
}
