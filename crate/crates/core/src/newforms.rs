//! Coefficients of the modular forms, trace matching, and the decomposition
//! of the zeta function into Dirichlet and modular L-factors.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::ff::{is_prime, CharacterSum, Prime};
use crate::threefold::{ThreefoldSpec, TraceRecord};
use crate::{Error, Result};

/// Where a stored coefficient comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    /// Read off a printed q-expansion.
    Expansion,
    /// A trace of Frobenius identified with the coefficient.
    TraceTable,
    /// Supplied through an import file.
    Imported,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Expansion => "expansion",
            Provenance::TraceTable => "trace-table",
            Provenance::Imported => "imported",
        })
    }
}

impl core::str::FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "expansion" => Ok(Provenance::Expansion),
            "trace-table" => Ok(Provenance::TraceTable),
            "imported" => Ok(Provenance::Imported),
            other => Err(Error::InvalidModel(alloc::format!("unknown provenance {other:?}"))),
        }
    }
}

/// A newform known through finitely many prime-indexed coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub label: String,
    pub weight: u32,
    pub level: u64,
    coeffs: BTreeMap<u32, (i64, Provenance)>,
}

impl QExpansion {
    pub fn new(label: impl Into<String>, weight: u32, level: u64) -> Result<Self> {
        if weight < 2 || !weight.is_multiple_of(2) {
            return Err(Error::InvalidModel(alloc::format!("unsupported weight {weight}")));
        }
        Ok(QExpansion { label: label.into(), weight, level, coeffs: BTreeMap::new() })
    }

    /// Ingests a printed expansion `sum a_n q^n` for `n <= bound`, missing
    /// terms being zero. Composite coefficients are checked against the Hecke
    /// relations and then dropped; only `a_p` is kept.
    pub fn from_expansion(
        label: impl Into<String>,
        weight: u32,
        level: u64,
        terms: &[(u32, i64)],
        bound: u32,
    ) -> Result<Self> {
        let mut f = QExpansion::new(label, weight, level)?;
        let mut a = alloc::vec![0i64; bound as usize + 1];
        for &(n, c) in terms {
            if n == 0 || n > bound {
                return Err(Error::InvalidModel(alloc::format!("term q^{n} outside 1..={bound}")));
            }
            a[n as usize] = c;
        }
        if a[1] != 1 {
            return Err(Error::InvalidModel("expansion is not normalised".into()));
        }
        for n in 2..=bound {
            let expected = f.hecke_predict(&a, n);
            if let Some(e) = expected {
                if e != a[n as usize] {
                    return Err(Error::HeckeMismatch { label: f.label.clone(), n, expected: e, found: a[n as usize] });
                }
            }
        }
        for n in 2..=bound {
            if is_prime(n as u64) {
                f.insert(n, a[n as usize], Provenance::Expansion)?;
            }
        }
        Ok(f)
    }

    /// `a_n` for composite `n` from smaller coefficients.
    fn hecke_predict(&self, a: &[i64], n: u32) -> Option<i64> {
        let (q, e) = smallest_prime_power(n);
        if q == n && e == 1 {
            return None;
        }
        let qe = q.pow(e);
        if qe != n {
            return Some(a[qe as usize] * a[(n / qe) as usize]);
        }
        let below = a[q.pow(e - 1) as usize];
        if self.level.is_multiple_of(q as u64) {
            return Some(a[q as usize] * below);
        }
        let twice_below = a[q.pow(e - 2) as usize];
        Some(a[q as usize] * below - (q as i64).pow(self.weight - 1) * twice_below)
    }

    /// Adds an `a_p`, checking the Weil bound `a_p^2 <= 4 p^(k-1)`.
    pub fn insert(&mut self, p: u32, a: i64, provenance: Provenance) -> Result<()> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if (a as i128).pow(2) > 4 * (p as i128).pow(self.weight - 1) {
            return Err(Error::WeilBound { p, trace: a });
        }
        if let Some(&(old, _)) = self.coeffs.get(&p) {
            if old != a {
                return Err(Error::HeckeMismatch { label: self.label.clone(), n: p, expected: old, found: a });
            }
            return Ok(());
        }
        self.coeffs.insert(p, (a, provenance));
        Ok(())
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (u32, i64, Provenance)> + '_ {
        self.coeffs.iter().map(|(&p, &(a, s))| (p, a, s))
    }

    pub fn get(&self, p: Prime) -> Option<(i64, Provenance)> {
        self.coeffs.get(&p.get()).copied()
    }

    /// The stored `a_p`; never extrapolated.
    pub fn ap(&self, p: Prime) -> Result<i64> {
        self.get(p).map(|(a, _)| a).ok_or_else(|| Error::UnknownCoefficient { label: self.label.clone(), p: p.get() })
    }

    pub fn is_bad(&self, p: Prime) -> bool {
        self.level.is_multiple_of(p.get() as u64)
    }
}

fn smallest_prime_power(n: u32) -> (u32, u32) {
    let mut q = 2;
    while !n.is_multiple_of(q) {
        q += 1;
    }
    let (mut m, mut e) = (n, 0);
    while m % q == 0 {
        m /= q;
        e += 1;
    }
    (q, e)
}

pub fn ap_newform(f: &QExpansion, p: Prime) -> Result<i64> {
    f.ap(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchRow {
    pub p: Prime,
    pub tr_u: i64,
    pub ap: i64,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchReport {
    pub variety: String,
    pub form: String,
    pub rows: Vec<MatchRow>,
}

impl MatchReport {
    pub fn verdict(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }
}

/// Compares `tr_U` with `a_p` on already computed trace records.
pub fn match_records(variety: &str, records: &[TraceRecord], form: &QExpansion) -> Result<MatchReport> {
    let rows = records
        .iter()
        .map(|r| {
            let ap = form.ap(r.p)?;
            Ok(MatchRow { p: r.p, tr_u: r.tr_u, ap, equal: ap == r.tr_u })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MatchReport { variety: variety.into(), form: form.label.clone(), rows })
}

pub fn match_traces(t: &ThreefoldSpec, form: &QExpansion, primes: &[Prime]) -> Result<MatchReport> {
    let records = primes.iter().map(|&p| t.traces(p)).collect::<Result<Vec<_>>>()?;
    match_records(&t.name, &records, form)
}

/// A collection of forms addressed by label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormStore {
    forms: Vec<QExpansion>,
}

impl FormStore {
    pub fn new(forms: Vec<QExpansion>) -> Self {
        FormStore { forms }
    }

    pub fn get(&self, label: &str) -> Result<&QExpansion> {
        self.forms
            .iter()
            .find(|f| f.label == label)
            .ok_or_else(|| Error::InvalidModel(alloc::format!("no form labelled {label}")))
    }

    pub fn forms(&self) -> &[QExpansion] {
        &self.forms
    }
}

/// Where a weight-two coefficient used in a local check came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VSource {
    /// Stored coefficient, equal to the count on the curve.
    Stored,
    /// Not stored; taken from counting points on the curve.
    Counted,
}

/// The local zeta function at `p` predicted by the L-decomposition,
/// compared with the point count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCheck {
    pub p: Prime,
    pub counted: u64,
    pub predicted: i128,
    /// `H^3` factor as `(c, m)` pairs meaning `(1 - c T + p^3 T^2)^m`.
    pub h3_factors: Vec<(i128, u32)>,
    pub v_sources: Vec<VSource>,
}

impl LocalCheck {
    pub fn ok(&self) -> bool {
        self.counted as i128 == self.predicted
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaReport {
    pub variety: String,
    /// Exponents of `zeta(chi_d, s-1)`; `d = 1` is the Riemann zeta.
    pub h2: CharacterSum,
    pub v_factors: Vec<(String, u32)>,
    pub u_form: String,
    pub conjectural: bool,
    pub checks: Vec<LocalCheck>,
}

impl ZetaReport {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(LocalCheck::ok)
    }

    /// The decomposition as a formula, up to finitely many Euler factors.
    pub fn formula(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for &(d, e) in self.h2.terms() {
            let base = if d == 1 { String::from("zeta(s-1)") } else { alloc::format!("zeta(chi_{d}, s-1)") };
            if e == 1 {
                let _ = write!(s, "{base} ");
            } else {
                let _ = write!(s, "{base}^{e} ");
            }
        }
        for (g, m) in &self.v_factors {
            if *m == 1 {
                let _ = write!(s, "L({g}, s-1) ");
            } else {
                let _ = write!(s, "L({g}, s-1)^{m} ");
            }
        }
        let _ = write!(s, "L({}, s)", self.u_form);
        s
    }
}

/// Decomposition of `L(W, s)` and its check at every supplied trace record:
/// the Lefschetz number predicted from the form coefficients
/// `1 + (1+p) tr_2 + p^3 - (a_p(f) + p sum m a_p(g))` must equal `N`.
pub fn zeta_report(t: &ThreefoldSpec, records: &[TraceRecord], store: &FormStore) -> Result<ZetaReport> {
    let u = store.get(&t.u_form)?;
    let mut checks = Vec::new();
    for r in records {
        let p = r.p;
        let q = p.get() as i128;
        let mut h3 = alloc::vec![(u.ap(p)? as i128, 1)];
        let mut v_trace = 0i128;
        let mut v_sources = Vec::new();
        for v in &t.v_piece {
            let counted = v.curve.ap(p)?;
            let g = store.get(&v.form)?;
            let (a, src) = match g.get(p) {
                Some((a, _)) if a == counted => (a, VSource::Stored),
                Some((a, _)) => {
                    return Err(Error::HeckeMismatch {
                        label: g.label.clone(),
                        n: p.get(),
                        expected: counted,
                        found: a,
                    })
                }
                None => (counted, VSource::Counted),
            };
            v_sources.push(src);
            v_trace += v.multiplicity as i128 * a as i128;
            // H^1(E)(-1) contributes 1 - p a T + p^3 T^2
            h3.push((q * a as i128, v.multiplicity));
        }
        let tr2 = t.tr2.eval(p)? as i128 * q;
        let tr3 = u.ap(p)? as i128 + q * v_trace;
        debug_assert_eq!(h3.iter().map(|&(c, m)| c * m as i128).sum::<i128>(), tr3);
        let predicted = 1 + (1 + q) * tr2 + q * q * q - tr3;
        checks.push(LocalCheck { p, counted: r.points, predicted, h3_factors: h3, v_sources });
    }
    Ok(ZetaReport {
        variety: t.name.clone(),
        h2: t.tr2.clone(),
        v_factors: t.v_piece.iter().map(|v| (v.form.clone(), v.multiplicity)).collect(),
        u_form: t.u_form.clone(),
        conjectural: t.conjectural,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn stored_coefficients() {
        let store = catalog::forms();
        assert_eq!(store.get("f55").unwrap().ap(p(3)), Ok(-3));
        assert_eq!(store.get("f22").unwrap().ap(p(13)), Ok(-72));
        let f27 = store.get("f27").unwrap();
        assert_eq!(f27.get(p(37)), Some((-430, Provenance::TraceTable)));
        assert_eq!(f27.get(p(13)), Some((20, Provenance::Expansion)));
        assert_eq!(
            store.get("g39490").unwrap().ap(p(17)),
            Err(Error::UnknownCoefficient { label: "g39490".into(), p: 17 })
        );
    }

    #[test]
    fn hecke_ingestion_rejects_bad_composites() {
        let g = QExpansion::from_expansion("g", 2, 11, &[(1, 1), (2, -2), (3, -1), (4, 3)], 4);
        assert_eq!(g, Err(Error::HeckeMismatch { label: "g".into(), n: 4, expected: 2, found: 3 }));
        let ok = QExpansion::from_expansion("g", 2, 11, &[(1, 1), (2, -2), (3, -1), (4, 2), (6, 2)], 6);
        assert!(ok.is_ok());
        // a_6 missing means a_6 = 0, contradicting a_2 a_3 = 2
        let missing = QExpansion::from_expansion("g", 2, 11, &[(1, 1), (2, -2), (3, -1), (4, 2)], 6);
        assert!(matches!(missing, Err(Error::HeckeMismatch { n: 6, .. })));
    }

    #[test]
    fn weil_bounds_on_store() {
        for f in catalog::forms().forms() {
            for (q, a, _) in f.coefficients() {
                assert!((a as i128).pow(2) <= 4 * (q as i128).pow(f.weight - 1), "{} a_{q}", f.label);
            }
        }
        let mut f = QExpansion::new("h", 2, 1).unwrap();
        assert_eq!(f.insert(5, 5, Provenance::Imported), Err(Error::WeilBound { p: 5, trace: 5 }));
    }

    #[test]
    fn deliberate_mismatch() {
        let w1 = catalog::w1();
        let store = catalog::forms();
        let report = match_traces(&w1, store.get("f22").unwrap(), &[p(3)]).unwrap();
        assert!(!report.verdict());
        assert_eq!((report.rows[0].tr_u, report.rows[0].ap), (-3, -7));
    }

    #[test]
    fn zeta_formula_text() {
        let store = catalog::forms();
        let r = zeta_report(&catalog::w1(), &[], &store).unwrap();
        assert_eq!(r.formula(), "zeta(s-1)^36 zeta(chi_5, s-1) L(g11, s-1)^8 L(f55, s)");
        let h = zeta_report(&catalog::hesse_product(), &[], &store).unwrap();
        assert_eq!(h.formula(), "zeta(s-1)^21 zeta(chi_-3, s-1)^10 L(g27, s-1)^4 L(f27, s)");
        assert!(zeta_report(&catalog::w2(), &[], &store).unwrap().conjectural);
    }
}
