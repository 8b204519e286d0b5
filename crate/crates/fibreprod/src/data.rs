//! The text data files: surfaces, threefolds, candidate fields and newform
//! coefficients. Built-in copies are compiled in; `--data-dir` replaces them.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use fibreprod_core::catalog::CertificationPlan;
use fibreprod_core::curves::MONOMIAL_NAMES;
use fibreprod_core::exact::{RatPoly, Rational};
use fibreprod_core::ff::{CharacterSum, GroupLabel, IntPolynomial};
use fibreprod_core::galois::{FieldCandidate, FieldSource};
use fibreprod_core::newforms::{FormStore, Provenance, QExpansion};
use fibreprod_core::surfaces::{Cusp, CuspLocation, FibreFamily, ResolutionPoint, SurfaceModel};
use fibreprod_core::threefold::{Involution, ThreefoldSpec, VPiece};
use fibreprod_core::Prime;
use serde::Deserialize;

use crate::error::{CliError, Result};

pub const SURFACES: &str = "surfaces.toml";
pub const THREEFOLDS: &str = "threefolds.toml";
pub const FIELDS: &str = "fields.toml";
pub const NEWFORMS: &str = "newforms.tsv";

const BUILTIN: [(&str, &str); 4] = [
    (SURFACES, include_str!("../data/surfaces.toml")),
    (THREEFOLDS, include_str!("../data/threefolds.toml")),
    (FIELDS, include_str!("../data/fields.toml")),
    (NEWFORMS, include_str!("../data/newforms.tsv")),
];

#[derive(Deserialize)]
#[serde(untagged)]
enum LocationRaw {
    Named(String),
    Roots(Vec<i64>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CuspRaw {
    at: LocationRaw,
    n: u32,
    split: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ResolutionRaw {
    at: LocationRaw,
    point: [i64; 3],
    components: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeierstrassRaw {
    a2: Vec<String>,
    a4: Vec<String>,
    a6: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceRaw {
    name: String,
    pic_rank: u32,
    h2: Vec<(i64, i64)>,
    bad_primes: Vec<u32>,
    pencil: Option<BTreeMap<String, Vec<String>>>,
    weierstrass: Option<WeierstrassRaw>,
    #[serde(default)]
    cusp: Vec<CuspRaw>,
    #[serde(default)]
    resolution: Vec<ResolutionRaw>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfacesFile {
    surface: Vec<SurfaceRaw>,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum InvolutionRaw {
    Identity,
    Reflection(i64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RefusalRaw {
    p: u32,
    reason: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VPieceRaw {
    surface: String,
    t: String,
    multiplicity: u32,
    form: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ThreefoldRaw {
    name: String,
    left: String,
    right: String,
    involution: InvolutionRaw,
    tr2: Vec<(i64, i64)>,
    divisor_census: Option<Vec<(i64, u32)>>,
    u_form: String,
    conjectural: bool,
    table_primes: Vec<u32>,
    refused: Vec<RefusalRaw>,
    v_piece: Vec<VPieceRaw>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ThreefoldsFile {
    threefold: Vec<ThreefoldRaw>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldRaw {
    polynomial: Vec<i64>,
    source: String,
    group: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ListRaw {
    name: String,
    ramification: Vec<u32>,
    group: String,
    fields: Vec<FieldRaw>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanRaw {
    variety: String,
    ramification: Vec<u32>,
    cubics: String,
    quartics: String,
    identification: Vec<u32>,
    test_primes: Vec<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldsFile {
    list: Vec<ListRaw>,
    plan: Vec<PlanRaw>,
}

/// A threefold together with the primes its reports use by default.
#[derive(Clone, Debug)]
pub struct Variety {
    pub spec: ThreefoldSpec,
    pub table_primes: Vec<Prime>,
}

#[derive(Clone, Debug)]
pub struct Dataset {
    pub surfaces: Vec<SurfaceModel>,
    pub varieties: Vec<Variety>,
    pub field_lists: BTreeMap<String, Vec<FieldCandidate>>,
    pub plans: Vec<CertificationPlan>,
    pub forms: FormStore,
}

fn rational(file: &str, s: &str) -> Result<Rational> {
    s.trim().parse().map_err(|_| CliError::data(file, format!("not a rational number: {s:?}")))
}

fn rat_poly(file: &str, coeffs: &[String]) -> Result<RatPoly> {
    Ok(RatPoly::new(coeffs.iter().map(|c| rational(file, c)).collect::<Result<_>>()?))
}

fn location(file: &str, raw: &LocationRaw) -> Result<CuspLocation> {
    match raw {
        LocationRaw::Named(s) if s == "infinity" => Ok(CuspLocation::Infinity),
        LocationRaw::Named(s) => Err(CliError::data(file, format!("unknown location {s:?}"))),
        LocationRaw::Roots(c) => Ok(CuspLocation::Finite(IntPolynomial::new(c.clone())?)),
    }
}

fn prime(file: &str, p: u32) -> Result<Prime> {
    Prime::new(p as u64).map_err(|e| CliError::data(file, e.to_string()))
}

fn primes(file: &str, list: &[u32]) -> Result<Vec<Prime>> {
    list.iter().map(|&p| prime(file, p)).collect()
}

fn parse_toml<T: serde::de::DeserializeOwned>(file: &str, text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| CliError::data(file, e.to_string()))
}

fn surface(raw: SurfaceRaw) -> Result<SurfaceModel> {
    let f = SURFACES;
    let family = match (raw.pencil, raw.weierstrass) {
        (Some(terms), None) => {
            let mut coeffs: [RatPoly; 10] = Default::default();
            for (name, c) in &terms {
                let i = MONOMIAL_NAMES
                    .iter()
                    .position(|m| m == name)
                    .ok_or_else(|| CliError::data(f, format!("{}: unknown monomial {name:?}", raw.name)))?;
                coeffs[i] = rat_poly(f, c)?;
            }
            FibreFamily::Pencil { coeffs }
        }
        (None, Some(w)) => {
            FibreFamily::Weierstrass { a2: rat_poly(f, &w.a2)?, a4: rat_poly(f, &w.a4)?, a6: rat_poly(f, &w.a6)? }
        }
        _ => return Err(CliError::data(f, format!("{}: give exactly one of pencil, weierstrass", raw.name))),
    };
    let cusps = raw
        .cusp
        .iter()
        .map(|c| Ok(Cusp { location: location(f, &c.at)?, n: c.n, split_field: c.split }))
        .collect::<Result<_>>()?;
    let resolution = raw
        .resolution
        .iter()
        .map(|r| Ok(ResolutionPoint { location: location(f, &r.at)?, point: r.point, components: r.components }))
        .collect::<Result<_>>()?;
    let model = SurfaceModel {
        name: raw.name,
        family,
        cusps,
        resolution,
        pic_rank: raw.pic_rank,
        h2: CharacterSum::new(raw.h2),
        bad_primes: raw.bad_primes,
    };
    model.validate().map_err(|e| CliError::data(f, format!("{}: {e}", model.name)))?;
    Ok(model)
}

fn threefold(raw: ThreefoldRaw, surfaces: &[SurfaceModel]) -> Result<Variety> {
    let f = THREEFOLDS;
    let find = |name: &str| {
        surfaces
            .iter()
            .find(|s| s.name == name)
            .cloned()
            .ok_or_else(|| CliError::data(f, format!("{}: unknown surface {name:?}", raw.name)))
    };
    let v_piece = raw
        .v_piece
        .iter()
        .map(|v| {
            let s = find(&v.surface)?;
            let t = rational(f, &v.t)?;
            Ok(VPiece {
                curve: s.fibre_over_q(t)?,
                multiplicity: v.multiplicity,
                origin: (s.name.clone(), t),
                form: v.form.clone(),
            })
        })
        .collect::<Result<_>>()?;
    let spec = ThreefoldSpec {
        name: raw.name.clone(),
        left: find(&raw.left)?,
        right: find(&raw.right)?,
        involution: match raw.involution {
            InvolutionRaw::Identity => Involution::Identity,
            InvolutionRaw::Reflection(a) => Involution::Reflection(a),
        },
        refused: raw.refused.into_iter().map(|r| (r.p, r.reason)).collect(),
        tr2: CharacterSum::new(raw.tr2),
        divisor_census: raw.divisor_census,
        v_piece,
        u_form: raw.u_form,
        conjectural: raw.conjectural,
    };
    spec.validate().map_err(|e| CliError::data(f, format!("{}: {e}", spec.name)))?;
    Ok(Variety { spec, table_primes: primes(f, &raw.table_primes)? })
}

fn group(file: &str, s: &str) -> Result<GroupLabel> {
    match s {
        "C3" => Ok(GroupLabel::C3),
        "S3" => Ok(GroupLabel::S3),
        "S4" => Ok(GroupLabel::S4),
        other => Err(CliError::data(file, format!("unknown group {other:?}"))),
    }
}

type FieldLists = BTreeMap<String, Vec<FieldCandidate>>;

fn fields(text: &str) -> Result<(FieldLists, Vec<CertificationPlan>)> {
    let f = FIELDS;
    let raw: FieldsFile = parse_toml(f, text)?;
    let mut lists = BTreeMap::new();
    for list in raw.list {
        let default = group(f, &list.group)?;
        let mut out = Vec::new();
        for field in list.fields {
            let g = match &field.group {
                Some(g) => group(f, g)?,
                None => default.clone(),
            };
            let poly = IntPolynomial::from_descending(&field.polynomial)?;
            let source: FieldSource = field.source.parse()?;
            out.push(
                FieldCandidate::new(poly, g, &list.ramification, source)
                    .map_err(|e| CliError::data(f, format!("{}: {e}", list.name)))?,
            );
        }
        if lists.insert(list.name.clone(), out).is_some() {
            return Err(CliError::data(f, format!("duplicate list {}", list.name)));
        }
    }
    let mut plans = Vec::new();
    for plan in raw.plan {
        let get = |name: &str| {
            lists
                .get(name)
                .cloned()
                .ok_or_else(|| CliError::data(f, format!("{}: unknown list {name:?}", plan.variety)))
        };
        plans.push(CertificationPlan {
            variety: plan.variety.clone(),
            ramification: plan.ramification.clone(),
            cubics: get(&plan.cubics)?,
            identification: primes(f, &plan.identification)?,
            quartics: get(&plan.quartics)?,
            test_primes: primes(f, &plan.test_primes)?,
        });
    }
    Ok((lists, plans))
}

/// One row of the newform table.
struct FormRow {
    label: String,
    weight: u32,
    level: u64,
    n: u32,
    a: i64,
    kind: String,
}

fn form_rows(text: &str) -> Result<Vec<FormRow>> {
    let f = NEWFORMS;
    let mut rows = Vec::new();
    let mut header = false;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if !header {
            if cols != ["label", "weight", "level", "n", "a_n", "kind"] {
                return Err(CliError::data(f, format!("line {}: unexpected header {line:?}", i + 1)));
            }
            header = true;
            continue;
        }
        let bad = |what: &str| CliError::data(f, format!("line {}: bad {what}", i + 1));
        if cols.len() != 6 {
            return Err(bad("column count"));
        }
        rows.push(FormRow {
            label: cols[0].to_string(),
            weight: cols[1].parse().map_err(|_| bad("weight"))?,
            level: cols[2].parse().map_err(|_| bad("level"))?,
            n: cols[3].parse().map_err(|_| bad("n"))?,
            a: cols[4].parse().map_err(|_| bad("a_n"))?,
            kind: cols[5].to_string(),
        });
    }
    Ok(rows)
}

fn forms(text: &str) -> Result<FormStore> {
    let f = NEWFORMS;
    let rows = form_rows(text)?;
    let mut labels: Vec<&str> = Vec::new();
    for r in &rows {
        if !labels.contains(&r.label.as_str()) {
            labels.push(&r.label);
        }
    }
    let mut out = Vec::new();
    for label in labels {
        let mine: Vec<&FormRow> = rows.iter().filter(|r| r.label == label).collect();
        let (weight, level) = (mine[0].weight, mine[0].level);
        if mine.iter().any(|r| (r.weight, r.level) != (weight, level)) {
            return Err(CliError::data(f, format!("{label}: inconsistent weight or level")));
        }
        let expansion: Vec<(u32, i64)> = mine.iter().filter(|r| r.kind == "expansion").map(|r| (r.n, r.a)).collect();
        let bound = expansion.iter().map(|t| t.0).max().unwrap_or(0);
        if (1..=bound).any(|n| expansion.iter().filter(|t| t.0 == n).count() != 1) {
            return Err(CliError::data(f, format!("{label}: expansion must list each n from 1 to {bound} once")));
        }
        let mut form = QExpansion::from_expansion(label, weight, level, &expansion, bound)?;
        for r in mine.iter().filter(|r| r.kind != "expansion") {
            let provenance: Provenance = r.kind.parse()?;
            form.insert(r.n, r.a, provenance)?;
        }
        out.push(form);
    }
    Ok(FormStore::new(out))
}

impl Dataset {
    pub fn builtin() -> Result<Self> {
        let text = |name: &str| BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, t)| t.to_string()).unwrap();
        Self::from_texts(&text(SURFACES), &text(THREEFOLDS), &text(FIELDS), &text(NEWFORMS))
    }

    /// Reads the four files from `dir`; a missing file falls back to the
    /// built-in copy.
    pub fn load(dir: &Path) -> Result<Self> {
        if !dir.is_dir() {
            return Err(CliError::Config(format!("data directory {} does not exist", dir.display())));
        }
        let mut texts = Vec::new();
        for (name, builtin) in BUILTIN {
            let path = dir.join(name);
            texts.push(if path.exists() {
                fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?
            } else {
                builtin.to_string()
            });
        }
        Self::from_texts(&texts[0], &texts[1], &texts[2], &texts[3])
    }

    pub fn from_texts(surfaces: &str, threefolds: &str, fields_text: &str, newforms: &str) -> Result<Self> {
        let raw: SurfacesFile = parse_toml(SURFACES, surfaces)?;
        let surfaces = raw.surface.into_iter().map(surface).collect::<Result<Vec<_>>>()?;
        let raw: ThreefoldsFile = parse_toml(THREEFOLDS, threefolds)?;
        let varieties = raw.threefold.into_iter().map(|t| threefold(t, &surfaces)).collect::<Result<Vec<_>>>()?;
        let (field_lists, plans) = fields(fields_text)?;
        let forms = forms(newforms)?;
        for v in &varieties {
            forms.get(&v.spec.u_form).map_err(|e| CliError::data(NEWFORMS, e.to_string()))?;
            for piece in &v.spec.v_piece {
                forms.get(&piece.form).map_err(|e| CliError::data(NEWFORMS, e.to_string()))?;
            }
        }
        for plan in &plans {
            if !varieties.iter().any(|v| v.spec.name == plan.variety) {
                return Err(CliError::data(FIELDS, format!("plan for unknown variety {}", plan.variety)));
            }
        }
        Ok(Dataset { surfaces, varieties, field_lists, plans, forms })
    }

    pub fn variety(&self, name: &str) -> Result<&Variety> {
        self.varieties.iter().find(|v| v.spec.name == name).ok_or_else(|| {
            let names: Vec<&str> = self.varieties.iter().map(|v| v.spec.name.as_str()).collect();
            CliError::Config(format!("unknown variety {name:?}; expected one of {}", names.join(", ")))
        })
    }

    pub fn plan(&self, variety: &str) -> Option<&CertificationPlan> {
        self.plans.iter().find(|p| p.variety == variety)
    }
}
