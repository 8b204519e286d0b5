//! Fibre products `Y x_{P^1} Y'` twisted by an involution of the base, their
//! nodes and resolutions, point counts, and the Lefschetz trace chain
//! `N -> tr_3 -> tr_U`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::curves::EllipticModel;
use crate::exact::{int, Rational};
use crate::ff::{legendre, CharacterSum, Fp, IntPolynomial, Prime};
use crate::surfaces::{base_line, BasePoint, Cusp, CuspLocation, SurfaceModel};
use crate::{Error, Result};

/// The map of the base used to glue the two surfaces: the fibre of the
/// product over `t` is `Y_t x Y'_{pi(t)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Involution {
    Identity,
    /// `t -> a - t`.
    Reflection(i64),
}

impl Involution {
    pub fn apply(self, t: BasePoint) -> BasePoint {
        match (self, t) {
            (Involution::Reflection(a), BasePoint::Finite(x)) => BasePoint::Finite(Fp::new(a, x.modulus()) - x),
            _ => t,
        }
    }

    pub fn apply_rational(self, t: Rational) -> Rational {
        match self {
            Involution::Identity => t,
            Involution::Reflection(a) => int(a) - t,
        }
    }

    /// Image of a cusp location, with its polynomial normalised to a
    /// positive leading coefficient.
    pub fn apply_location(self, loc: &CuspLocation) -> Result<CuspLocation> {
        let CuspLocation::Finite(f) = loc else {
            return Ok(CuspLocation::Infinity);
        };
        let Involution::Reflection(a) = self else {
            return Ok(loc.clone());
        };
        // f(a - t) by Horner in Z[t]
        let mut acc: Vec<i64> = Vec::new();
        for &c in f.coeffs().iter().rev() {
            let mut next = alloc::vec![0i64; acc.len() + 1];
            for (i, &v) in acc.iter().enumerate() {
                next[i] += a * v;
                next[i + 1] -= v;
            }
            next[0] += c;
            acc = next;
        }
        if acc.last().is_some_and(|&l| l < 0) {
            acc.iter_mut().for_each(|c| *c = -*c);
        }
        Ok(CuspLocation::Finite(IntPolynomial::new(acc)?))
    }

    pub fn is_involution_on(self, p: Prime) -> bool {
        base_line(p).all(|t| self.apply(self.apply(t)) == t)
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Involution::Identity => f.write_str("t"),
            Involution::Reflection(a) => write!(f, "{a} - t"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Resolution {
    /// Replace the node by a line: `+p` points.
    Small,
    /// Blow up the node: an exceptional quadric with `(p+1)^2` or `p^2+1`
    /// points replaces one point.
    Big,
}

/// An elliptic curve `E` with `E x P^1` components in the singular fibres,
/// contributing `multiplicity` copies of its `H^1` to `H^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPiece {
    pub curve: EllipticModel,
    pub multiplicity: u32,
    /// Name of the surface and the value of `t` defining the curve.
    pub origin: (String, Rational),
    /// Weight-two newform expected to share its `a_p`.
    pub form: String,
}

/// A threefold as recorded in the model data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreefoldSpec {
    pub name: String,
    pub left: SurfaceModel,
    pub right: SurfaceModel,
    pub involution: Involution,
    /// Primes that are refused, with the reason.
    pub refused: Vec<(u32, String)>,
    /// Trace on `H^2`, divided by `p`.
    pub tr2: CharacterSum,
    /// Divisor classes as `(d, count)`: `d = 1` counts rational classes, other
    /// `d` count pairs conjugate over `Q(sqrt d)`. Cross-checks `tr2`.
    pub divisor_census: Option<Vec<(i64, u32)>>,
    pub v_piece: Vec<VPiece>,
    /// Weight-four newform expected on `U`.
    pub u_form: String,
    /// Whether modularity is only conjectured (too many candidate fields).
    pub conjectural: bool,
}

/// Nodes of the singular threefold above one common cusp (counted over the
/// algebraic closure, conjugate cusps together).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeClass {
    pub location: CuspLocation,
    pub left_n: u32,
    pub right_n: u32,
    pub nodes: u32,
    pub resolution: Resolution,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeCensus {
    pub classes: Vec<NodeClass>,
    pub small: u32,
    pub big: u32,
}

impl NodeCensus {
    pub fn total(&self) -> u32 {
        self.small + self.big
    }
}

/// How a point count splits between the raw fibre sum and the node
/// corrections.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CountBreakdown {
    pub fibre_sum: u64,
    pub small_nodes: u32,
    pub big_split: u32,
    pub big_nonsplit: u32,
    pub total: u64,
}

/// A singular fibre of the product over a point of `P^1(F_p)`.
struct ProductCusp<'a> {
    at: BasePoint,
    left: Option<&'a Cusp>,
    right: Option<&'a Cusp>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Counted,
    Cache,
    /// Taken from a printed table.
    Table,
    /// `tr_2` from the character formula.
    CharacterFormula,
    /// Derived from the other fields by the Lefschetz formula.
    Lefschetz,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Counted => "counted",
            Source::Cache => "cache",
            Source::Table => "table",
            Source::CharacterFormula => "character-formula",
            Source::Lefschetz => "lefschetz",
        })
    }
}

/// Frobenius traces at one prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub p: Prime,
    pub points: u64,
    pub tr2: i64,
    pub tr3: i64,
    pub tr_u: i64,
    pub points_source: Source,
}

impl TraceRecord {
    pub fn sources(&self) -> [(&'static str, Source); 4] {
        [
            ("N", self.points_source),
            ("tr2", Source::CharacterFormula),
            ("tr3", Source::Lefschetz),
            ("trU", Source::Lefschetz),
        ]
    }

    /// Coefficients of `1 - tr_U T + p^3 T^2`.
    pub fn euler_factor_u(&self) -> [i64; 3] {
        euler_factor_u(self.tr_u, self.p)
    }
}

pub fn euler_factor_u(tr_u: i64, p: Prime) -> [i64; 3] {
    [1, -tr_u, (p.get() as i64).pow(3)]
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::InvalidModel("trace exceeds 64 bits".into()))
}

impl ThreefoldSpec {
    pub fn refusal(&self, p: Prime) -> Option<&str> {
        self.refused.iter().find(|(q, _)| *q == p.get()).map(|(_, r)| r.as_str())
    }

    fn require_good(&self, p: Prime) -> Result<()> {
        if let Some(reason) = self.refusal(p) {
            return Err(Error::BadPrime { p: p.get(), reason: reason.into() });
        }
        if !p.is_odd() {
            return Err(Error::BadPrime { p: 2, reason: "quadratic characters are undefined at 2".into() });
        }
        Ok(())
    }

    /// Common cusps as pairs `(left cusp, right cusp)` over `Q`.
    pub fn common_cusps(&self) -> Result<Vec<(&Cusp, &Cusp)>> {
        let mut out = Vec::new();
        for l in &self.left.cusps {
            let image = self.involution.apply_location(&l.location)?;
            if let Some(r) = self.right.cusps.iter().find(|r| r.location == image) {
                out.push((l, r));
            }
        }
        Ok(out)
    }

    pub fn node_census(&self) -> Result<NodeCensus> {
        let mut classes = Vec::new();
        let (mut small, mut big) = (0, 0);
        for (l, r) in self.common_cusps()? {
            let nodes = l.n * r.n * l.location.degree() as u32;
            let resolution = if l.n == 1 || r.n == 1 { Resolution::Big } else { Resolution::Small };
            match resolution {
                Resolution::Small => small += nodes,
                Resolution::Big => big += nodes,
            }
            classes.push(NodeClass { location: l.location.clone(), left_n: l.n, right_n: r.n, nodes, resolution });
        }
        Ok(NodeCensus { classes, small, big })
    }

    /// `(h^{1,1}, h^{1,2})`. `h^{1,2}` counts `1 + rk Pic` of the generic
    /// fibre, minus the common cusps, plus `b(s) b'(s) - 1` over the others;
    /// each node adds one to `h^{1,1} - h^{1,2}` and each big blow-up one more.
    pub fn hodge_numbers(&self) -> Result<(u32, u32)> {
        let common = self.common_cusps()?;
        let n_common: i64 = common.iter().map(|(l, _)| l.location.degree() as i64).sum();
        let mut h12 = 1 + (self.left.pic_rank + self.right.pic_rank) as i64 - n_common;
        for l in &self.left.cusps {
            if !common.iter().any(|(c, _)| c.location == l.location) {
                h12 += (l.n as i64 - 1) * l.location.degree() as i64;
            }
        }
        for r in &self.right.cusps {
            if !common.iter().any(|(_, c)| c.location == r.location) {
                h12 += (r.n as i64 - 1) * r.location.degree() as i64;
            }
        }
        let h12 = u32::try_from(h12).map_err(|_| Error::InvalidModel("negative h12".into()))?;
        let census = self.node_census()?;
        Ok((h12 + census.total() + census.big, h12))
    }

    /// `E x P^1` fibres over the cusps that are not common: for each, the
    /// curve is the other factor's fibre and the multiplicity `b(s) - 1`.
    pub fn derived_v_piece(&self) -> Result<Vec<(EllipticModel, u32)>> {
        let common = self.common_cusps()?;
        let mut out: Vec<(EllipticModel, u32)> = Vec::new();
        let mut push = |curve: EllipticModel, m: u32| match out.iter_mut().find(|(c, _)| *c == curve) {
            Some(slot) => slot.1 += m,
            None => out.push((curve, m)),
        };
        for l in &self.left.cusps {
            if l.n > 1 && !common.iter().any(|(c, _)| c.location == l.location) {
                let t = l
                    .location
                    .rational_value()
                    .ok_or_else(|| Error::InvalidModel(alloc::format!("irrational cusp {} carries H^3", l.location)))?;
                push(self.right.fibre_over_q(self.involution.apply_rational(t))?, l.n - 1);
            }
        }
        for r in &self.right.cusps {
            if r.n > 1 && !common.iter().any(|(_, c)| c.location == r.location) {
                let t = r
                    .location
                    .rational_value()
                    .ok_or_else(|| Error::InvalidModel(alloc::format!("irrational cusp {} carries H^3", r.location)))?;
                push(self.left.fibre_over_q(self.involution.apply_rational(t))?, r.n - 1);
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidModel(alloc::format!("{}: {m}", self.name)));
        self.left.validate()?;
        self.right.validate()?;
        let (h11, h12) = self.hodge_numbers()?;
        let v_total: u32 = self.v_piece.iter().map(|v| v.multiplicity).sum();
        if v_total != h12 {
            return bad(alloc::format!("V-piece has {v_total} copies but h12 = {h12}"));
        }
        if self.tr2.dimension() != h11 as i64 {
            return bad(alloc::format!("tr2 has rank {} but h11 = {h11}", self.tr2.dimension()));
        }
        let mut derived = self.derived_v_piece()?;
        let mut stored: Vec<(EllipticModel, u32)> =
            self.v_piece.iter().map(|v| (v.curve.clone(), v.multiplicity)).collect();
        derived.sort_by_key(|(_, m)| *m);
        stored.sort_by_key(|(_, m)| *m);
        if derived != stored {
            return bad("V-piece differs from the E x P^1 fibres of the model".into());
        }
        if let Some(census) = &self.divisor_census {
            if divisor_character_sum(census) != self.tr2 {
                return bad("divisor census disagrees with tr2".into());
            }
        }
        for v in &self.v_piece {
            let surface = if v.origin.0 == self.left.name { &self.left } else { &self.right };
            if surface.name != v.origin.0 || surface.fibre_over_q(v.origin.1)? != v.curve {
                return bad(alloc::format!("V-piece curve is not the {} fibre at {}", v.origin.0, v.origin.1));
            }
        }
        Ok(())
    }

    /// All singular fibres of the product over `P^1(F_p)`. Fails when cusps
    /// that are distinct over `Q` meet modulo `p`.
    fn product_cusps(&self, p: Prime) -> Result<Vec<ProductCusp<'_>>> {
        let mut out: Vec<ProductCusp<'_>> = Vec::new();
        for c in self.left.cusp_points(p)? {
            out.push(ProductCusp { at: c.at, left: Some(c.cusp), right: None });
        }
        let common = self.common_cusps()?;
        for c in self.right.cusp_points(p)? {
            let at = self.involution.apply(c.at);
            let shared = common.iter().find(|(_, r)| core::ptr::eq(*r, c.cusp));
            match out.iter_mut().find(|e| e.at == at) {
                Some(slot) if shared.is_some_and(|(l, _)| slot.left.is_some_and(|x| core::ptr::eq(x, *l))) => {
                    slot.right = Some(c.cusp);
                }
                Some(_) => return Err(Error::CuspCollision { p: p.get() }),
                None if shared.is_some() => return Err(Error::CuspCollision { p: p.get() }),
                None => out.push(ProductCusp { at, left: None, right: Some(c.cusp) }),
            }
        }
        Ok(out)
    }

    /// Primes below `bound` at which the product degenerates.
    pub fn degenerate_primes(&self, bound: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self.left.degenerate_primes(bound);
        out.extend(self.right.degenerate_primes(bound));
        for p in crate::ff::primes_up_to(bound) {
            if self.product_cusps(p).is_err() {
                out.push(p.get());
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn count_breakdown(&self, p: Prime) -> Result<CountBreakdown> {
        self.require_good(p)?;
        let left = self.left.fibre_counts(p)?;
        let right = self.right.fibre_counts(p)?;
        let mut b = CountBreakdown::default();
        for t in base_line(p) {
            b.fibre_sum += left[t.index(p)] * right[self.involution.apply(t).index(p)];
        }
        let q = p.get() as u64;
        let mut corrections = 0u64;
        for c in self.product_cusps(p)? {
            let (Some(l), Some(r)) = (c.left, c.right) else { continue };
            let t_right = self.involution.apply(c.at);
            let nodes = self.left.rational_nodes(l, c.at, p)? * self.right.rational_nodes(r, t_right, p)?;
            if nodes == 0 {
                continue;
            }
            if l.n > 1 && r.n > 1 {
                b.small_nodes += nodes;
                corrections += nodes as u64 * q;
                continue;
            }
            let sign = self.left.branch_character(l, c.at, p)? * self.right.branch_character(r, t_right, p)?;
            if sign == 1 {
                b.big_split += nodes;
                corrections += nodes as u64 * ((q + 1) * (q + 1) - 1);
            } else {
                b.big_nonsplit += nodes;
                corrections += nodes as u64 * q * q;
            }
        }
        b.total = b.fibre_sum + corrections;
        Ok(b)
    }

    /// `#W(F_p)` for the resolved threefold.
    pub fn count_points(&self, p: Prime) -> Result<u64> {
        Ok(self.count_breakdown(p)?.total)
    }

    pub fn tr2(&self, p: Prime) -> Result<i64> {
        self.require_good(p)?;
        Ok(self.tr2.eval(p)? * p.get() as i64)
    }

    /// `sum multiplicity * a_p(E)` over the V-piece.
    pub fn v_trace(&self, p: Prime) -> Result<i64> {
        let mut s = 0i64;
        for v in &self.v_piece {
            s += v.multiplicity as i64 * v.curve.ap(p)?;
        }
        Ok(s)
    }

    /// The trace chain from a point count, which may come from a cache.
    pub fn trace_record(&self, p: Prime, points: u64, source: Source) -> Result<TraceRecord> {
        let q = p.get() as i128;
        let tr2 = self.tr2(p)?;
        let tr3 = narrow(1 + (1 + q) * tr2 as i128 + q * q * q - points as i128)?;
        let tr_u = narrow(tr3 as i128 - q * self.v_trace(p)? as i128)?;
        if (tr_u as i128).pow(2) > 4 * q * q * q {
            return Err(Error::WeilBound { p: p.get(), trace: tr_u });
        }
        Ok(TraceRecord { p, points, tr2, tr3, tr_u, points_source: source })
    }

    pub fn traces(&self, p: Prime) -> Result<TraceRecord> {
        let n = self.count_points(p)?;
        self.trace_record(p, n, Source::Counted)
    }

    pub fn tr3(&self, p: Prime) -> Result<i64> {
        Ok(self.traces(p)?.tr3)
    }

    pub fn tr_u(&self, p: Prime) -> Result<i64> {
        Ok(self.traces(p)?.tr_u)
    }

    pub fn euler_factor_u(&self, p: Prime) -> Result<[i64; 3]> {
        Ok(self.traces(p)?.euler_factor_u())
    }
}

/// `sum count * (1 + chi_d)` over conjugate pairs plus the rational classes.
pub fn divisor_character_sum(census: &[(i64, u32)]) -> CharacterSum {
    CharacterSum::new(census.iter().flat_map(|&(d, c)| {
        let c = c as i64;
        if d == 1 {
            alloc::vec![(1, c)]
        } else {
            alloc::vec![(1, c), (d, c)]
        }
    }))
}

/// The quadratic character values `(d/p)` used by a character sum, for
/// reports.
pub fn character_values(sum: &CharacterSum, p: Prime) -> Result<Vec<(i64, i8)>> {
    sum.terms().iter().filter(|(d, _)| *d != 1).map(|&(d, _)| Ok((d, legendre(d, p)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ff::primes_up_to;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn specs_validate() {
        for t in catalog::threefolds() {
            t.validate().unwrap();
        }
    }

    #[test]
    fn hodge_numbers_and_nodes() {
        let expect =
            [("W1", (37, 8), (25, 2)), ("W2", (45, 1), (40, 2)), ("W3", (39, 1), (30, 4)), ("Hesse", (31, 4), (27, 0))];
        for (name, hodge, (small, big)) in expect {
            let t = catalog::threefold(name).unwrap();
            assert_eq!(t.hodge_numbers().unwrap(), hodge, "{name}");
            let census = t.node_census().unwrap();
            assert_eq!((census.small, census.big), (small, big), "{name}");
        }
        let w1 = catalog::threefold("W1").unwrap().node_census().unwrap();
        let at_inf = w1.classes.iter().find(|c| c.location == CuspLocation::Infinity).unwrap();
        assert_eq!((at_inf.nodes, at_inf.resolution), (25, Resolution::Small));
        let w3 = catalog::threefold("W3").unwrap().node_census().unwrap();
        let pair = w3.classes.iter().find(|c| c.location.degree() == 2).unwrap();
        assert_eq!((pair.nodes, pair.resolution), (4, Resolution::Big));
    }

    #[test]
    fn involutions_square_to_identity() {
        for t in catalog::threefolds() {
            for q in primes_up_to(43) {
                assert!(t.involution.is_involution_on(q));
            }
            for c in &t.left.cusps {
                let there = t.involution.apply_location(&c.location).unwrap();
                assert_eq!(t.involution.apply_location(&there).unwrap(), c.location);
            }
        }
    }

    #[test]
    fn lefschetz_examples() {
        let w1 = catalog::threefold("W1").unwrap();
        assert_eq!(w1.tr2(p(3)), Ok(105));
        let r = w1.trace_record(p(3), 475, Source::Table).unwrap();
        assert_eq!((r.tr3, r.tr_u), (-27, -3));
        assert_eq!(r.euler_factor_u(), [1, 3, 27]);
        assert_eq!(w1.trace_record(p(13), 8150, Source::Table).unwrap().tr3, 418);
        let w3 = catalog::threefold("W3").unwrap();
        assert_eq!(w3.tr2(p(3)), Ok(93));
        let h = catalog::threefold("Hesse").unwrap();
        assert_eq!(h.tr2(p(5)), Ok(55));
        assert_eq!(h.trace_record(p(7), 2133, Source::Table).unwrap().tr3, -53);
    }

    #[test]
    fn small_counts() {
        assert_eq!(catalog::threefold("W1").unwrap().count_points(p(3)), Ok(475));
        assert_eq!(catalog::threefold("W3").unwrap().count_points(p(3)), Ok(410));
        assert_eq!(catalog::threefold("Hesse").unwrap().count_points(p(5)), Ok(471));
    }

    #[test]
    fn refused_primes_cover_degenerations() {
        for t in catalog::threefolds() {
            let mut refused: Vec<u32> = t.refused.iter().map(|(q, _)| *q).collect();
            refused.sort_unstable();
            let mut expected = t.degenerate_primes(400);
            expected.push(2);
            expected.sort_unstable();
            expected.dedup();
            assert_eq!(refused, expected, "{}", t.name);
        }
        let w2 = catalog::threefold("W2").unwrap();
        assert!(matches!(w2.count_points(p(11)), Err(Error::BadPrime { p: 11, .. })));
    }

    #[test]
    fn divisor_census_sum() {
        let s = divisor_character_sum(&[(1, 35), (5, 1)]);
        assert_eq!(s, CharacterSum::new([(1, 36), (5, 1)]));
    }
}
