//! Candidate number fields, identification of the residual field from trace
//! parities, and certificates that a set of test primes is sufficient.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Roots;

use crate::ff::{factorization_pattern, frobenius_order, is_prime, legendre, GroupLabel, IntPolynomial, Prime};
use crate::{Error, Result};

/// Where a candidate polynomial comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSource {
    /// Printed in the source tables.
    Printed,
    /// Found by a bounded search and not printed anywhere we rely on.
    Searched,
    /// Produced by [`enumerate_cubic_candidates`].
    Enumerated,
}

impl fmt::Display for FieldSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldSource::Printed => "printed",
            FieldSource::Searched => "searched",
            FieldSource::Enumerated => "enumerated",
        })
    }
}

impl core::str::FromStr for FieldSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(FieldSource::Printed),
            "searched" => Ok(FieldSource::Searched),
            "enumerated" => Ok(FieldSource::Enumerated),
            other => Err(Error::InvalidModel(alloc::format!("unknown field source {other:?}"))),
        }
    }
}

/// Splits `disc` into its part supported on `s` and the rest.
fn split_support(disc: i128, s: &[u32]) -> (i128, u128) {
    let mut rest = disc.unsigned_abs();
    let mut kernel: i128 = disc.signum();
    for &q in s {
        let q = q as u128;
        let mut e = 0;
        while rest.is_multiple_of(q) {
            rest /= q;
            e += 1;
        }
        if e % 2 == 1 {
            kernel *= q as i128;
        }
    }
    (kernel, rest)
}

fn is_square(n: u128) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// A cubic or quartic field given by a defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCandidate {
    pub polynomial: IntPolynomial,
    pub group: GroupLabel,
    /// Squarefree class of the discriminant, i.e. the quadratic resolvent
    /// field; `1` for `C3`.
    pub resolvent: i64,
    /// Primes of the declared ramification set that divide the discriminant.
    pub support: Vec<u32>,
    pub source: FieldSource,
}

impl FieldCandidate {
    /// Checks that the discriminant is supported on `s` up to a square
    /// factor, which is attributed to the index of the polynomial order.
    pub fn new(polynomial: IntPolynomial, group: GroupLabel, s: &[u32], source: FieldSource) -> Result<Self> {
        let degree_ok = match group {
            GroupLabel::C3 | GroupLabel::S3 => polynomial.degree() == 3,
            GroupLabel::S4 => polynomial.degree() == 4,
            GroupLabel::S3xC2 { .. } => false,
        };
        if !degree_ok || !polynomial.is_monic() {
            return Err(Error::InvalidModel(alloc::format!("{polynomial} cannot define a {group} field")));
        }
        let disc = polynomial.discriminant()?;
        if disc == 0 {
            return Err(Error::InvalidModel(alloc::format!("{polynomial} is not separable")));
        }
        let (kernel, rest) = split_support(disc, s);
        if !is_square(rest) {
            return Err(Error::InvalidModel(alloc::format!(
                "discriminant {disc} of {polynomial} is ramified outside {s:?}"
            )));
        }
        if (group == GroupLabel::C3) != (kernel == 1) {
            return Err(Error::InvalidModel(alloc::format!("discriminant {disc} does not fit group {group}")));
        }
        let support = s.iter().copied().filter(|&q| disc % q as i128 == 0).collect();
        Ok(FieldCandidate { polynomial, group, resolvent: kernel as i64, support, source })
    }

    pub fn discriminant(&self) -> i128 {
        self.polynomial.discriminant().expect("checked at construction")
    }

    pub fn is_irreducible_mod(&self, p: Prime) -> Result<bool> {
        Ok(factorization_pattern(&self.polynomial, p)?.is_irreducible())
    }

    fn divides_discriminant(&self, p: Prime) -> bool {
        self.discriminant() % p.get() as i128 == 0
    }
}

impl fmt::Display for FieldCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, {})", self.polynomial, self.group, self.source)
    }
}

fn describe(c: &[&FieldCandidate]) -> String {
    let names: Vec<String> = c.iter().map(|c| alloc::format!("{}", c.polynomial)).collect();
    names.join(", ")
}

/// The cubic candidate whose reduction is irreducible exactly at the primes
/// with odd trace.
pub fn identify_residual<'a>(candidates: &'a [FieldCandidate], parity: &[(Prime, bool)]) -> Result<&'a FieldCandidate> {
    let cubics: Vec<&FieldCandidate> = candidates.iter().filter(|c| c.polynomial.degree() == 3).collect();
    for &(p, _) in parity {
        if let Some(c) = cubics.iter().find(|c| c.divides_discriminant(p)) {
            return Err(Error::BadPrime {
                p: p.get(),
                reason: alloc::format!("{p} divides the discriminant of {}", c.polynomial),
            });
        }
    }
    let mut survivors = Vec::new();
    for c in cubics {
        let mut fits = true;
        for &(p, odd) in parity {
            if c.is_irreducible_mod(p)? != odd {
                fits = false;
                break;
            }
        }
        if fits {
            survivors.push(c);
        }
    }
    match survivors.len() {
        1 => Ok(survivors[0]),
        0 => Err(Error::Contradiction("no candidate matches the trace parities".into())),
        _ => Err(Error::Ambiguous(alloc::format!("several candidates match: {}", describe(&survivors)))),
    }
}

/// Squarefree integers built from `-1` and `s`, other than `1` and
/// `resolvent`, one per class modulo `resolvent`, with the representative of
/// least absolute value (positive on ties).
pub fn quadratic_classes(s: &[u32], resolvent: i64) -> Vec<i64> {
    let gens: Vec<i64> = core::iter::once(-1).chain(s.iter().map(|&q| q as i64)).collect();
    let squarefree = |mut d: i64| {
        for &q in s {
            let q = q as i64;
            if d % (q * q) == 0 {
                d /= q * q;
            }
        }
        d
    };
    let mut reps: Vec<i64> = Vec::new();
    for mask in 1u32..(1 << gens.len()) {
        let d: i64 = gens.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| g).product();
        if d == 1 || d == resolvent {
            continue;
        }
        let partner = squarefree(d * resolvent);
        let rep = if (d.abs(), -d.signum()) <= (partner.abs(), -partner.signum()) { d } else { partner };
        if !reps.contains(&rep) {
            reps.push(rep);
        }
    }
    reps.sort_by_key(|&d| (d.abs(), -d.signum()));
    reps
}

/// What a witness prime rules out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessTarget {
    /// The splitting field of the cubic composed with `Q(sqrt d)`.
    Quadratic(i64),
    /// An `S4` extension containing the cubic field.
    Quartic(IntPolynomial, FieldSource),
}

impl fmt::Display for WitnessTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessTarget::Quadratic(d) => write!(f, "sqrt({d})"),
            WitnessTarget::Quartic(q, _) => write!(f, "{q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub target: WitnessTarget,
    pub p: Prime,
    pub order: u32,
}

/// Proof that trace agreement on `test_primes` rules out every `S3 x C2`
/// and `S4` image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SufficiencyCertificate {
    pub setting: String,
    pub ramification: Vec<u32>,
    pub cubic: IntPolynomial,
    pub identification: Vec<Prime>,
    pub test_primes: Vec<Prime>,
    pub witnesses: Vec<Witness>,
}

impl SufficiencyCertificate {
    /// Recomputes every witness order from scratch.
    pub fn verify(&self) -> Result<()> {
        for p in &self.identification {
            if !self.test_primes.contains(p) {
                return Err(Error::Uncovered(alloc::format!("identification prime {p} is not a test prime")));
            }
        }
        for w in &self.witnesses {
            if !self.test_primes.contains(&w.p) {
                return Err(Error::Uncovered(alloc::format!("witness {} is not a test prime", w.p)));
            }
            let (order, want) = match &w.target {
                WitnessTarget::Quadratic(d) => (frobenius_order(&self.cubic, w.p, &GroupLabel::S3xC2 { d: *d })?, 6),
                WitnessTarget::Quartic(q, _) => (frobenius_order(q, w.p, &GroupLabel::S4)?, 4),
            };
            if order != w.order || order != want {
                return Err(Error::Contradiction(alloc::format!(
                    "witness {} for {} has order {order}, certificate says {}",
                    w.p,
                    w.target,
                    w.order
                )));
            }
        }
        Ok(())
    }
}

/// Finds, for each candidate extension, a test prime whose Frobenius has
/// maximal order: 6 in `S3 x C2`, 4 in `S4`.
pub fn certify_sufficient_set(
    setting: &str,
    ramification: &[u32],
    cubic: &FieldCandidate,
    identification: &[Prime],
    quadratics: &[i64],
    quartics: &[FieldCandidate],
    test_primes: &[Prime],
) -> Result<SufficiencyCertificate> {
    for &p in test_primes {
        if ramification.contains(&p.get()) {
            return Err(Error::BadPrime { p: p.get(), reason: "test prime inside the ramification set".into() });
        }
    }
    for &d in quadratics {
        let (_, rest) = split_support(d as i128, ramification);
        if rest != 1 {
            return Err(Error::InvalidModel(alloc::format!("Q(sqrt {d}) is ramified outside {ramification:?}")));
        }
    }
    for q in quartics {
        if q.group != GroupLabel::S4 || q.support.iter().any(|p| !ramification.contains(p)) {
            return Err(Error::InvalidModel(alloc::format!("{q} is not an S4 candidate for {ramification:?}")));
        }
    }
    let mut witnesses = Vec::new();
    let mut uncovered = Vec::new();
    for &d in quadratics {
        let group = GroupLabel::S3xC2 { d };
        let mut found = None;
        for &p in test_primes {
            if cubic.divides_discriminant(p) {
                continue;
            }
            if frobenius_order(&cubic.polynomial, p, &group)? == 6 {
                found = Some(p);
                break;
            }
        }
        match found {
            Some(p) => witnesses.push(Witness { target: WitnessTarget::Quadratic(d), p, order: 6 }),
            None => uncovered
                .push(alloc::format!("sqrt({d}): need p with {} irreducible mod p and ({d}/p) = -1", cubic.polynomial)),
        }
    }
    for q in quartics {
        let mut found = None;
        for &p in test_primes {
            // an index prime of the polynomial says nothing about Frobenius
            if q.divides_discriminant(p) {
                continue;
            }
            if frobenius_order(&q.polynomial, p, &GroupLabel::S4)? == 4 {
                found = Some(p);
                break;
            }
        }
        match found {
            Some(p) => {
                witnesses.push(Witness { target: WitnessTarget::Quartic(q.polynomial.clone(), q.source), p, order: 4 })
            }
            None => uncovered.push(alloc::format!("{}: need p with {} irreducible mod p", q.polynomial, q.polynomial)),
        }
    }
    if !uncovered.is_empty() {
        return Err(Error::Uncovered(uncovered.join("; ")));
    }
    let cert = SufficiencyCertificate {
        setting: setting.into(),
        ramification: ramification.to_vec(),
        cubic: cubic.polynomial.clone(),
        identification: identification.to_vec(),
        test_primes: test_primes.to_vec(),
        witnesses,
    };
    cert.verify()?;
    Ok(cert)
}

/// The primes at which the two-dimensional criterion with ramification
/// `{2, 3}` compares traces.
pub const PROPOSITION_PRIMES: [u32; 9] = [5, 7, 11, 13, 17, 19, 23, 31, 37];

/// Primes whose Frobenius elements fill `Gal(Q(zeta_24)/Q)` minus the identity.
pub const COMPOSITUM_PRIMES: [u32; 7] = [5, 7, 11, 13, 17, 19, 23];

/// Checks that `COMPOSITUM_PRIMES` meet every nontrivial class of
/// `(Z/24)^*`; returns the residues found.
pub fn compositum_coverage() -> Result<Vec<u32>> {
    let mut residues: Vec<u32> = COMPOSITUM_PRIMES.iter().map(|p| p % 24).collect();
    residues.sort_unstable();
    let units: Vec<u32> = (2..24).filter(|&r| num_integer::gcd(r, 24) == 1).collect();
    if residues != units {
        return Err(Error::Uncovered(alloc::format!("residues {residues:?} miss part of {units:?}")));
    }
    Ok(residues)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropositionVerdict {
    pub isomorphic: bool,
    pub mismatches: Vec<(u32, i64, i64)>,
    pub residues: Vec<u32>,
}

fn trace_at(traces: &[(Prime, i64)], p: u32) -> Result<i64> {
    traces
        .iter()
        .find(|(q, _)| q.get() == p)
        .map(|&(_, t)| t)
        .ok_or_else(|| Error::InvalidModel(alloc::format!("no trace at {p}")))
}

/// Two-dimensional 2-adic representations unramified outside `{2, 3}` with
/// equal determinant and an even trace at 11 or 13 have isomorphic
/// semisimplifications iff their traces agree at `PROPOSITION_PRIMES`.
pub fn proposition1_check(
    traces1: &[(Prime, i64)],
    traces2: &[(Prime, i64)],
    same_determinant: bool,
) -> Result<PropositionVerdict> {
    if !same_determinant {
        return Err(Error::HypothesisViolated("the determinants are not known to agree".into()));
    }
    for traces in [traces1, traces2] {
        if trace_at(traces, 11)? % 2 != 0 && trace_at(traces, 13)? % 2 != 0 {
            return Err(Error::HypothesisViolated(
                "traces at 11 and 13 are both odd; the residual field may be the C3 field, use a sufficiency certificate".into(),
            ));
        }
    }
    let residues = compositum_coverage()?;
    let mut mismatches = Vec::new();
    for p in PROPOSITION_PRIMES {
        let (a, b) = (trace_at(traces1, p)?, trace_at(traces2, p)?);
        if a != b {
            mismatches.push((p, a, b));
        }
    }
    Ok(PropositionVerdict { isomorphic: mismatches.is_empty(), mismatches, residues })
}

/// Number of auxiliary primes in a field fingerprint.
pub const FINGERPRINT_PRIMES: usize = 50;

/// Factorization patterns at the first `FINGERPRINT_PRIMES` odd primes not
/// skipped, each packed as an integer.
fn fingerprint(f: &IntPolynomial, skip: impl Fn(u32) -> bool) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(FINGERPRINT_PRIMES);
    let mut q = 3u32;
    while out.len() < FINGERPRINT_PRIMES {
        if is_prime(q as u64) && !skip(q) {
            let pattern = factorization_pattern(f, Prime::new(q as u64)?)?;
            out.push(pattern.degrees().iter().fold(0, |acc, d| acc * 8 + d));
        }
        q += 2;
    }
    Ok(out)
}

fn has_integer_root(b: i64, c: i64, a: i64) -> bool {
    if c == 0 {
        return true;
    }
    let f = |r: i64| r * r * r + a * r * r + b * r + c;
    let n = c.unsigned_abs();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            for r in [d, n / d] {
                let r = r as i64;
                if f(r) == 0 || f(-r) == 0 {
                    return true;
                }
            }
        }
        d += 1;
    }
    false
}

/// Cubic fields with discriminant supported on `s`, found among
/// `x^3 + a x^2 + b x + c` with `a` in `{-1, 0, 1}` and `|b|, |c| <= bound`.
/// Every shift class of cubics meets `a` in `{-1, 0, 1}`, and `a = 0` gives
/// the depressed family. Fields are told apart by factorization patterns at
/// `FINGERPRINT_PRIMES` primes outside `s`; each is represented by its
/// smallest polynomial. This is a sample, not a completeness proof.
pub fn enumerate_cubic_candidates(s: &[u32], bound: i64) -> Result<Vec<FieldCandidate>> {
    if s.iter().any(|&q| !is_prime(q as u64)) || bound > 10_000 {
        return Err(Error::InvalidModel("enumeration expects a set of primes and bound <= 10^4".into()));
    }
    let mut polys: Vec<(i64, i64, i64)> = Vec::new();
    for a in -1..=1i64 {
        for b in -bound..=bound {
            for c in -bound..=bound {
                let (a1, b1, c1) = (a as i128, b as i128, c as i128);
                let disc =
                    a1 * a1 * b1 * b1 - 4 * b1 * b1 * b1 - 4 * a1 * a1 * a1 * c1 - 27 * c1 * c1 + 18 * a1 * b1 * c1;
                if disc == 0 || split_support(disc, s).1 != 1 || has_integer_root(b, c, a) {
                    continue;
                }
                polys.push((a, b, c));
            }
        }
    }
    let height = |&(a, b, c): &(i64, i64, i64)| {
        (a.abs().max(b.abs()).max(c.abs()), a.abs() + b.abs() + c.abs(), a.abs(), -a, b.abs(), -b, c.abs(), -c)
    };
    polys.sort_by_key(height);
    let mut seen: BTreeMap<Vec<u32>, ()> = BTreeMap::new();
    let mut out = Vec::new();
    for (a, b, c) in polys {
        let f = IntPolynomial::new(alloc::vec![c, b, a, 1])?;
        let key = fingerprint(&f, |q| s.contains(&q))?;
        if seen.insert(key, ()).is_some() {
            continue;
        }
        let disc = f.discriminant()?;
        let group = if disc > 0 && is_square(disc as u128) { GroupLabel::C3 } else { GroupLabel::S3 };
        out.push(FieldCandidate::new(f, group, s, FieldSource::Enumerated)?);
    }
    Ok(out)
}

/// `true` if the Galois closures of `f` and `g` give the same Frobenius
/// cycle types at the fingerprint primes; for cubics this identifies the field.
pub fn same_field(f: &IntPolynomial, g: &IntPolynomial) -> Result<bool> {
    let d = f.discriminant()? * g.discriminant()?;
    let skip = |q: u32| d % q as i128 == 0;
    Ok(fingerprint(f, skip)? == fingerprint(g, skip)?)
}

/// Sanity check on the character used by a quadratic candidate.
pub fn quadratic_splits(d: i64, p: Prime) -> Result<bool> {
    Ok(legendre(d, p)? == 1)
}
