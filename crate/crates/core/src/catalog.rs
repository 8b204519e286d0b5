//! Built-in models: the four surfaces, the four threefolds, the six modular
//! forms and the candidate field lists.
//!
//! The `fibreprod` crate ships the same data as text files; its tests check
//! that both sources agree.

use alloc::vec;
use alloc::vec::Vec;

use crate::exact::{int, ratio, RatPoly, Rational};
use crate::ff::{CharacterSum, GroupLabel, IntPolynomial, Prime};
use crate::galois::{FieldCandidate, FieldSource};
use crate::newforms::{FormStore, Provenance, QExpansion};
use crate::surfaces::{Cusp, CuspLocation, FibreFamily, ResolutionPoint, SurfaceModel};
use crate::threefold::{Involution, ThreefoldSpec, VPiece};
use alloc::string::String;

fn poly(ascending: &[i64]) -> IntPolynomial {
    IntPolynomial::new(ascending.to_vec()).expect("nonzero catalog polynomial")
}

fn at(ascending: &[i64]) -> CuspLocation {
    CuspLocation::Finite(poly(ascending))
}

fn cusp(location: CuspLocation, n: u32, split_field: Option<i64>) -> Cusp {
    Cusp { location, n, split_field }
}

fn res(location: CuspLocation, point: [i64; 3], components: u32) -> ResolutionPoint {
    ResolutionPoint { location, point, components }
}

fn pencil(entries: &[(usize, &[Rational])]) -> FibreFamily {
    let mut coeffs: [RatPoly; 10] = Default::default();
    for (i, c) in entries {
        coeffs[*i] = RatPoly::new(c.to_vec());
    }
    FibreFamily::Pencil { coeffs }
}

/// `t^2 - 11t - 1`, whose roots carry the `I_1` fibres shared by the first
/// three threefolds.
fn golden_pair() -> CuspLocation {
    at(&[-1, -11, 1])
}

/// `x(x-z)(y-z) + t yz(x-y)`.
pub fn s1_5() -> SurfaceModel {
    SurfaceModel {
        name: "S1_5".into(),
        family: pencil(&[
            (1, &[int(1)]),
            (2, &[int(-1)]),
            (4, &[int(-1), int(1)]),
            (5, &[int(1)]),
            (7, &[int(0), int(-1)]),
        ]),
        cusps: vec![
            cusp(CuspLocation::Infinity, 5, Some(1)),
            cusp(at(&[0, 1]), 5, Some(1)),
            cusp(golden_pair(), 1, None),
        ],
        resolution: vec![
            res(at(&[0, 1]), [0, 1, 0], 1),
            res(at(&[0, 1]), [1, 1, 1], 1),
            res(CuspLocation::Infinity, [1, 0, 0], 1),
            res(CuspLocation::Infinity, [0, 0, 1], 1),
        ],
        pic_rank: 1,
        h2: CharacterSum::new([(1, 10)]),
        bad_primes: vec![5],
    }
}

/// `(x+y+z)(11/8 xy + 11/8 yz + 125/88 zx) - (t + 125/88) xyz`.
pub fn y2() -> SurfaceModel {
    let e = ratio(11, 8);
    let f = ratio(125, 88);
    SurfaceModel {
        name: "Y2".into(),
        family: pencil(&[
            (1, &[e]),
            (2, &[f]),
            (3, &[e]),
            (4, &[ratio(11, 4), int(-1)]),
            (5, &[f]),
            (7, &[e]),
            (8, &[e]),
        ]),
        cusps: vec![
            cusp(CuspLocation::Infinity, 6, Some(1)),
            cusp(at(&[125, 88]), 2, Some(-1795)),
            cusp(at(&[0, 1]), 2, Some(5)),
            cusp(golden_pair(), 1, None),
        ],
        resolution: vec![
            res(CuspLocation::Infinity, [1, 0, 0], 1),
            res(CuspLocation::Infinity, [0, 1, 0], 1),
            res(CuspLocation::Infinity, [0, 0, 1], 1),
        ],
        pic_rank: 2,
        h2: CharacterSum::new([(1, 10)]),
        bad_primes: vec![2, 5, 11, 359],
    }
}

/// `y^2 = x(x-1)(x + t^2 - 11t - 1)`.
pub fn y3() -> SurfaceModel {
    SurfaceModel {
        name: "Y3".into(),
        family: FibreFamily::Weierstrass {
            a2: RatPoly::from_ints(&[-2, -11, 1]),
            a4: RatPoly::from_ints(&[1, 11, -1]),
            a6: RatPoly::zero(),
        },
        cusps: vec![
            cusp(CuspLocation::Infinity, 4, Some(1)),
            cusp(at(&[0, 1]), 2, Some(1)),
            cusp(at(&[-11, 1]), 2, Some(1)),
            cusp(golden_pair(), 2, Some(-1)),
        ],
        resolution: vec![
            res(CuspLocation::Infinity, [0, 0, 1], 3),
            res(at(&[0, 1]), [1, 0, 1], 1),
            res(at(&[-11, 1]), [1, 0, 1], 1),
            res(golden_pair(), [0, 0, 1], 1),
        ],
        pic_rank: 2,
        h2: CharacterSum::new([(1, 8), (5, 2)]),
        bad_primes: vec![2, 5, 11],
    }
}

/// `x^3 + y^3 + z^3 + t xyz`.
pub fn hesse() -> SurfaceModel {
    SurfaceModel {
        name: "Hesse".into(),
        family: pencil(&[(0, &[int(1)]), (4, &[int(0), int(1)]), (6, &[int(1)]), (9, &[int(1)])]),
        cusps: vec![
            cusp(CuspLocation::Infinity, 3, Some(1)),
            cusp(at(&[3, 1]), 3, Some(-3)),
            cusp(at(&[9, -3, 1]), 3, Some(-3)),
        ],
        resolution: Vec::new(),
        pic_rank: 1,
        h2: CharacterSum::new([(1, 7), (-3, 3)]),
        bad_primes: vec![3],
    }
}

pub fn surfaces() -> Vec<SurfaceModel> {
    vec![s1_5(), y2(), y3(), hesse()]
}

pub fn surface(name: &str) -> Option<SurfaceModel> {
    surfaces().into_iter().find(|s| s.name == name)
}

fn v_piece(surface: &SurfaceModel, t: Rational, multiplicity: u32, form: &str) -> VPiece {
    VPiece {
        curve: surface.fibre_over_q(t).expect("catalog fibre is a cubic"),
        multiplicity,
        origin: (surface.name.clone(), t),
        form: form.into(),
    }
}

fn refused(list: &[(u32, &str)]) -> Vec<(u32, String)> {
    list.iter().map(|&(p, r)| (p, r.into())).collect()
}

const NO_CHARACTERS_AT_2: &str = "quadratic characters are undefined at 2";
const GOLDEN_MERGE: &str = "the I_1 cusps over t^2 - 11t - 1 merge into a type II fibre";

/// `S1_5` glued to itself along `t -> 11 - t`.
pub fn w1() -> ThreefoldSpec {
    let s = s1_5();
    ThreefoldSpec {
        name: "W1".into(),
        v_piece: vec![v_piece(&s, int(11), 8, "g11")],
        left: s.clone(),
        right: s,
        involution: Involution::Reflection(11),
        refused: refused(&[
            (2, NO_CHARACTERS_AT_2),
            (5, GOLDEN_MERGE),
            (11, "the cusps 0 and 11 meet, giving extra nodes"),
        ]),
        tr2: CharacterSum::new([(1, 36), (5, 1)]),
        divisor_census: Some(vec![(1, 35), (5, 1)]),
        u_form: "f55".into(),
        conjectural: false,
    }
}

/// `S1_5 x Y2` over the identity.
pub fn w2() -> ThreefoldSpec {
    let s = s1_5();
    ThreefoldSpec {
        name: "W2".into(),
        v_piece: vec![v_piece(&s, ratio(-125, 88), 1, "g39490")],
        left: s,
        right: y2(),
        involution: Involution::Identity,
        refused: refused(&[
            (2, "bad reduction at 2: the pencil has denominator 88"),
            (5, GOLDEN_MERGE),
            (11, "bad reduction at 11: the pencil has denominator 88"),
            (359, "bad reduction at 359: the I_2 cusp at -125/88 meets the I_1 cusps"),
        ]),
        tr2: CharacterSum::new([(1, 44), (5, 1)]),
        divisor_census: None,
        u_form: "f55".into(),
        conjectural: true,
    }
}

/// `S1_5 x Y3` over the identity.
pub fn w3() -> ThreefoldSpec {
    let s = s1_5();
    ThreefoldSpec {
        name: "W3".into(),
        v_piece: vec![v_piece(&s, int(11), 1, "g11")],
        left: s,
        right: y3(),
        involution: Involution::Identity,
        refused: refused(&[
            (2, "bad reduction at 2: the Weierstrass equation does not give elliptic fibres"),
            (5, "the I_2 fibres of Y3 over t^2 - 11t - 1 merge modulo 5"),
            (11, "bad reduction at 11: the cusps 0 and 11 of Y3 meet"),
        ]),
        tr2: CharacterSum::new([(1, 34), (5, 3), (-1, 1), (-5, 1)]),
        divisor_census: None,
        u_form: "f22".into(),
        conjectural: false,
    }
}

/// The Hesse pencil glued to itself along `t -> 3 - t`.
pub fn hesse_product() -> ThreefoldSpec {
    let s = hesse();
    ThreefoldSpec {
        name: "Hesse".into(),
        v_piece: vec![v_piece(&s, int(6), 4, "g27")],
        left: s.clone(),
        right: s,
        involution: Involution::Reflection(3),
        refused: refused(&[(2, NO_CHARACTERS_AT_2), (3, "bad reduction at 3: all cusps meet")]),
        tr2: CharacterSum::new([(1, 21), (-3, 10)]),
        divisor_census: Some(vec![(1, 11), (-3, 10)]),
        u_form: "f27".into(),
        conjectural: false,
    }
}

pub fn threefolds() -> Vec<ThreefoldSpec> {
    vec![w1(), w2(), w3(), hesse_product()]
}

pub fn threefold(name: &str) -> Option<ThreefoldSpec> {
    threefolds().into_iter().find(|t| t.name == name)
}

/// Printed expansions are ingested up to `q^13`.
pub const EXPANSION_BOUND: u32 = 13;

fn form(label: &str, weight: u32, level: u64, terms: &[(u32, i64)], traces: &[(u32, i64)]) -> QExpansion {
    let mut f = QExpansion::from_expansion(label, weight, level, terms, EXPANSION_BOUND).expect("catalog expansion");
    for &(p, a) in traces {
        f.insert(p, a, Provenance::TraceTable).expect("catalog trace");
    }
    f
}

pub fn forms() -> FormStore {
    FormStore::new(vec![
        form(
            "g11",
            2,
            11,
            &[(1, 1), (2, -2), (3, -1), (4, 2), (5, 1), (6, 2), (7, -2), (9, -2), (10, -2), (11, 1), (12, -2), (13, 4)],
            &[],
        ),
        form("g27", 2, 27, &[(1, 1), (4, -2), (7, -1), (13, 5)], &[]),
        form(
            "g39490",
            2,
            39490,
            &[
                (1, 1),
                (2, 1),
                (3, -1),
                (4, 1),
                (5, 1),
                (6, -1),
                (7, 3),
                (8, 1),
                (9, -2),
                (10, 1),
                (11, 1),
                (12, -1),
                (13, 4),
            ],
            &[],
        ),
        form(
            "f55",
            4,
            55,
            &[
                (1, 1),
                (2, 1),
                (3, -3),
                (4, -7),
                (5, -5),
                (6, -3),
                (7, -9),
                (8, -15),
                (9, -18),
                (10, -5),
                (11, 11),
                (12, 21),
                (13, 2),
            ],
            &[(17, 21), (23, 22), (41, -478), (43, -8)],
        ),
        form(
            "f22",
            4,
            22,
            &[
                (1, 1),
                (2, -2),
                (3, -7),
                (4, 4),
                (5, -19),
                (6, 14),
                (7, 14),
                (8, -8),
                (9, 22),
                (10, 38),
                (11, 11),
                (12, -28),
                (13, -72),
            ],
            &[(23, -107), (31, 117)],
        ),
        form(
            "f27",
            4,
            27,
            &[(1, 1), (2, -3), (4, 1), (5, -15), (7, -25), (8, 21), (10, 45), (11, 15), (13, 20)],
            &[(17, -72), (19, 2), (23, -114), (31, 101), (37, -430)],
        ),
    ])
}

/// Ramification set of `U` for the first three threefolds.
pub const RAMIFICATION_2_5_11: [u32; 3] = [2, 5, 11];
/// Ramification set of `U` for the Hesse product.
pub const RAMIFICATION_2_3: [u32; 2] = [2, 3];

fn field(desc: &[i64], group: GroupLabel, s: &[u32], source: FieldSource) -> FieldCandidate {
    let f = IntPolynomial::from_descending(desc).expect("catalog polynomial");
    FieldCandidate::new(f, group, s, source).expect("catalog field")
}

/// Cubic fields with discriminant supported on `{2, 5, 11}`. The two fields
/// cut out by residual representations are kept in their printed form.
pub fn cubic_fields_2_5_11() -> Vec<FieldCandidate> {
    let s = &RAMIFICATION_2_5_11;
    vec![
        field(&[1, -1, 1, 1], GroupLabel::S3, s, FieldSource::Printed),
        field(&[1, 1, 2, -2], GroupLabel::S3, s, FieldSource::Enumerated),
        field(&[1, 1, 4, -2], GroupLabel::S3, s, FieldSource::Enumerated),
        field(&[1, 0, 2, -8], GroupLabel::S3, s, FieldSource::Printed),
        field(&[1, 0, -5, 10], GroupLabel::S3, s, FieldSource::Enumerated),
        field(&[1, 1, -18, -2], GroupLabel::S3, s, FieldSource::Enumerated),
        field(&[1, 1, 4, 20], GroupLabel::S3, s, FieldSource::Enumerated),
    ]
}

/// Cubic fields with discriminant supported on `{2, 3}`.
pub fn cubic_fields_2_3() -> Vec<FieldCandidate> {
    let s = &RAMIFICATION_2_3;
    let e = FieldSource::Enumerated;
    vec![
        field(&[1, 0, 0, 2], GroupLabel::S3, s, e),
        field(&[1, 0, 0, 3], GroupLabel::S3, s, e),
        field(&[1, 0, -3, 1], GroupLabel::C3, s, e),
        field(&[1, 0, 3, 2], GroupLabel::S3, s, e),
        field(&[1, 0, -3, 4], GroupLabel::S3, s, e),
        field(&[1, 0, 0, 6], GroupLabel::S3, s, e),
        field(&[1, 0, 6, 8], GroupLabel::S3, s, e),
        field(&[1, 0, -9, 6], GroupLabel::S3, s, e),
        field(&[1, 0, 0, 12], GroupLabel::S3, s, e),
    ]
}

/// `S4` quartics unramified outside `{2, 5, 11}` whose cubic resolvent field
/// is `Q(x^3 + 2x - 8)`.
pub fn w1_quartics() -> Vec<FieldCandidate> {
    let list: [[i64; 5]; 15] = [
        [1, 0, 0, -220, 165],
        [1, -2, -26, -28, -24],
        [1, 0, -10, -40, 10],
        [1, -2, -1, -8, -4],
        [1, -2, -15, -28, -24],
        [1, 0, -22, -176, -110],
        [1, 0, 0, -440, -3410],
        [1, 0, -20, -40, -10],
        [1, 0, 20, -80, 60],
        [1, 0, 44, -352, 132],
        [1, 0, -12, -16, -20],
        [1, 0, 0, -8, -2],
        [1, 0, -4, -4, 9],
        [1, 0, 0, -176, 418],
        [1, 0, 0, -1760, -440],
    ];
    list.iter().map(|q| field(q, GroupLabel::S4, &RAMIFICATION_2_5_11, FieldSource::Printed)).collect()
}

/// `S4` quartics with discriminant `-11` times a square whose cubic
/// resolvent field is `Q(x^3 - x^2 + x + 1)`; found by our own search.
pub fn w3_quartics() -> Vec<FieldCandidate> {
    let list: [[i64; 5]; 3] = [[1, 0, -2, -4, -1], [1, 2, -4, 6, -2], [1, 0, 22, -88, 77]];
    list.iter().map(|q| field(q, GroupLabel::S4, &RAMIFICATION_2_5_11, FieldSource::Searched)).collect()
}

/// Everything needed to certify that a table of traces determines `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificationPlan {
    pub variety: String,
    pub ramification: Vec<u32>,
    pub cubics: Vec<FieldCandidate>,
    /// Primes whose trace parities single out the residual field.
    pub identification: Vec<Prime>,
    pub quartics: Vec<FieldCandidate>,
    pub test_primes: Vec<Prime>,
}

fn primes(list: &[u64]) -> Vec<Prime> {
    list.iter().map(|&p| Prime::new(p).expect("catalog prime")).collect()
}

/// Plans for the varieties certified through a sufficient set; the Hesse
/// product goes through the fixed nine-prime criterion and W2 is not
/// certified.
pub fn certification_plan(variety: &str) -> Option<CertificationPlan> {
    match variety {
        "W1" => Some(CertificationPlan {
            variety: variety.into(),
            ramification: RAMIFICATION_2_5_11.to_vec(),
            cubics: cubic_fields_2_5_11(),
            identification: primes(&[3, 7, 17]),
            quartics: w1_quartics(),
            test_primes: primes(&[3, 7, 13, 17, 23, 41, 43]),
        }),
        // 3 and 7 alone leave x^3 + x^2 + 2x - 2 as a second candidate
        "W3" => Some(CertificationPlan {
            variety: variety.into(),
            ramification: RAMIFICATION_2_5_11.to_vec(),
            cubics: cubic_fields_2_5_11(),
            identification: primes(&[3, 7, 13, 23, 31]),
            quartics: w3_quartics(),
            test_primes: primes(&[3, 7, 13, 23, 31]),
        }),
        _ => None,
    }
}
