use fibreprod_core::catalog;
use fibreprod_core::ff::{frobenius_order, primes_up_to, GroupLabel, IntPolynomial};
use fibreprod_core::galois::*;
use fibreprod_core::{Error, Prime};

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn poly(desc: &[i64]) -> IntPolynomial {
    IntPolynomial::from_descending(desc).unwrap()
}

#[test]
fn g_tilde_is_a_group_of_order_48() {
    let g = build_g_tilde();
    assert_eq!(g.len(), 48);
    for &x in &g {
        assert!(x.in_g_tilde());
        for &y in &g {
            let xy = semidirect_mul(x, y);
            assert!(g.contains(&xy));
            for &z in &g {
                assert_eq!(semidirect_mul(xy, z), semidirect_mul(x, semidirect_mul(y, z)));
            }
        }
        assert_eq!(semidirect_mul(x, x.inverse()), GtElement::IDENTITY);
        assert_eq!(semidirect_mul(x.inverse(), x), GtElement::IDENTITY);
    }
    assert_eq!(center(&g).len(), 2);
    let census = order_census(g.iter().map(|x| x.order()));
    // S4 x C2: orders 1, 2, 3, 4, 6 with 1, 19, 8, 12, 8 elements
    assert_eq!(census, [0, 1, 19, 8, 12, 0, 8]);
}

#[test]
fn j_is_an_isomorphism_onto_s4_times_c2() {
    let g = build_g_tilde();
    let mut images: Vec<JImage> = g.iter().map(|&x| j_map(x)).collect();
    for &x in &g {
        for &y in &g {
            assert_eq!(j_map(semidirect_mul(x, y)), j_map(x) * j_map(y));
        }
    }
    images.sort();
    images.dedup();
    assert_eq!(images.len(), 48);

    let mut affine: Vec<JImage> = images.iter().map(|&i| JImage { e: 0, ..i }).collect();
    affine.sort();
    affine.dedup();
    assert_eq!(affine.len(), 24);
    let census = order_census(affine.iter().map(|a| a.affine_order()));
    assert_eq!((census[3], census[4]), (8, 6));

    let kernel_part: Vec<GtElement> = g.iter().copied().filter(|&x| j_map(x).e == 0).collect();
    let census = order_census(kernel_part.iter().map(|x| x.order()));
    assert_eq!((kernel_part.len(), census[3], census[4]), (24, 8, 6));
}

#[test]
fn tau_detects_orders_four_and_six() {
    for x in build_g_tilde() {
        let big = matches!(x.order(), 4 | 6);
        assert_eq!(tau_tilde(x) == 1, big, "{x}");
    }
}

#[test]
fn residual_identification() {
    let c = catalog::cubic_fields_2_5_11();
    let w1 = identify_residual(&c, &[(prime(3), true), (prime(7), true), (prime(17), true)]).unwrap();
    assert_eq!(w1.polynomial, poly(&[1, 0, 2, -8]));
    assert_eq!(w1.resolvent, -110);

    let short = identify_residual(&c, &[(prime(3), true), (prime(7), false)]);
    assert!(matches!(&short, Err(Error::Ambiguous(m)) if m.contains("x^3 + x^2 + 2x - 2")), "{short:?}");
    let plan = catalog::certification_plan("W3").unwrap();
    let traces = [(3, -7), (7, 14), (13, -72), (23, -107), (31, 117)];
    let parity: Vec<_> = traces.iter().map(|&(p, t): &(u64, i64)| (prime(p), t % 2 != 0)).collect();
    let w3 = identify_residual(&plan.cubics, &parity).unwrap();
    assert_eq!(w3.polynomial, poly(&[1, -1, 1, 1]));

    let nine = catalog::cubic_fields_2_3();
    let c3 = identify_residual(&nine, &[(prime(11), true), (prime(13), true)]).unwrap();
    assert_eq!(c3.group, GroupLabel::C3);
    let none = identify_residual(&nine, &[(prime(5), true), (prime(11), false), (prime(7), true), (prime(13), true)]);
    assert!(matches!(none, Err(Error::Contradiction(_))), "{none:?}");
    assert!(matches!(identify_residual(&nine, &[(prime(3), true)]), Err(Error::BadPrime { p: 3, .. })));
}

#[test]
fn enumeration_reproduces_catalog_fields() {
    for (s, list) in [
        (&catalog::RAMIFICATION_2_3[..], catalog::cubic_fields_2_3()),
        (&catalog::RAMIFICATION_2_5_11[..], catalog::cubic_fields_2_5_11()),
    ] {
        let found = enumerate_cubic_candidates(s, 60).unwrap();
        assert_eq!(found.len(), list.len(), "{s:?}");
        for c in &list {
            let hits = found.iter().filter(|f| same_field(&f.polynomial, &c.polynomial).unwrap()).count();
            assert_eq!(hits, 1, "{}", c.polynomial);
        }
    }
    let nine = enumerate_cubic_candidates(&catalog::RAMIFICATION_2_3, 200).unwrap();
    assert_eq!(nine.len(), 9);
    assert!(nine.iter().any(|f| f.polynomial == poly(&[1, 0, 0, 2])));
    assert!(nine.iter().any(|f| f.polynomial == poly(&[1, 0, -3, 1]) && f.group == GroupLabel::C3));
    assert!(enumerate_cubic_candidates(&[11], 200).unwrap().is_empty());
}

#[test]
fn quartics_lie_over_the_residual_cubic() {
    let cases = [(poly(&[1, 0, 2, -8]), catalog::w1_quartics()), (poly(&[1, -1, 1, 1]), catalog::w3_quartics())];
    for (cubic, quartics) in cases {
        for q in &quartics {
            let r = q.polynomial.cubic_resolvent().unwrap();
            assert!(same_field(&r, &cubic).unwrap(), "{}", q.polynomial);
            // irreducible over Q: an S4 quartic stays irreducible modulo some prime
            let orders: Vec<u32> = primes_up_to(200)
                .into_iter()
                .filter(|p| q.discriminant() % p.get() as i128 != 0)
                .map(|p| frobenius_order(&q.polynomial, p, &GroupLabel::S4).unwrap())
                .collect();
            assert!(orders.contains(&4) && orders.contains(&3), "{}", q.polynomial);
        }
    }
    for q in catalog::w3_quartics() {
        assert_eq!(q.resolvent, -11);
        assert_eq!(q.support, [2, 11]);
    }
}

fn certify(name: &str, resolvent: i64) -> Result<SufficiencyCertificate, Error> {
    let plan = catalog::certification_plan(name).unwrap();
    let cubic = plan.cubics.iter().find(|c| c.resolvent == resolvent).unwrap();
    let quadratics = quadratic_classes(&plan.ramification, resolvent);
    certify_sufficient_set(
        name,
        &plan.ramification,
        cubic,
        &plan.identification,
        &quadratics,
        &plan.quartics,
        &plan.test_primes,
    )
}

#[test]
fn sufficiency_certificates() {
    let w1 = certify("W1", -110).unwrap_or_else(|e| panic!("{e}"));
    let quartic_primes: Vec<u32> =
        w1.witnesses.iter().filter(|w| matches!(w.target, WitnessTarget::Quartic(..))).map(|w| w.p.get()).collect();
    assert_eq!(quartic_primes.len(), 15);
    assert!(quartic_primes.iter().all(|p| [13, 23, 41, 43].contains(p)));
    let quadratic_primes: Vec<u32> =
        w1.witnesses.iter().filter(|w| matches!(w.target, WitnessTarget::Quadratic(_))).map(|w| w.p.get()).collect();
    assert_eq!(quadratic_primes.len(), 7);
    assert!(quadratic_primes.iter().all(|p| [3, 7, 17].contains(p)));
    w1.verify().unwrap();

    let w3 = certify("W3", -11).unwrap();
    for w in &w3.witnesses {
        match w.target {
            WitnessTarget::Quartic(..) => assert!([7, 13].contains(&w.p.get())),
            WitnessTarget::Quadratic(_) => assert!([3, 23, 31].contains(&w.p.get())),
        }
    }

    let mut forged = w1.clone();
    forged.witnesses[0].p = prime(13);
    assert!(forged.verify().is_err());
}

#[test]
fn proposition_for_the_hesse_product() {
    let hesse = catalog::hesse_product();
    let f27 = catalog::forms();
    let f27 = f27.get("f27").unwrap();
    let mut u = Vec::new();
    let mut f = Vec::new();
    for p in PROPOSITION_PRIMES {
        let p = prime(p as u64);
        u.push((p, hesse.traces(p).unwrap().tr_u));
        f.push((p, f27.ap(p).unwrap()));
    }
    let v = proposition1_check(&u, &f, true).unwrap();
    assert!(v.isomorphic);
    assert_eq!(v.residues, [5, 7, 11, 13, 17, 19, 23]);

    let mut bumped = u.clone();
    bumped[1].1 += 1;
    let v = proposition1_check(&bumped, &f, true).unwrap();
    assert_eq!(v.mismatches, [(7, -24, -25)]);

    let mut odd = u.clone();
    odd[3].1 += 1;
    assert!(matches!(proposition1_check(&odd, &odd, true), Err(Error::HypothesisViolated(_))));
    assert!(matches!(proposition1_check(&u, &f, false), Err(Error::HypothesisViolated(_))));
}

#[test]
fn trace_parity_follows_the_residual_cubic() {
    let cases = [
        (catalog::w1(), poly(&[1, 0, 2, -8])),
        (catalog::w2(), poly(&[1, 0, 2, -8])),
        (catalog::w3(), poly(&[1, -1, 1, 1])),
        (catalog::hesse_product(), poly(&[1, 0, 3, 2])),
    ];
    for (t, cubic) in cases {
        for p in primes_up_to(43) {
            if t.refusal(p).is_some() {
                continue;
            }
            let odd = t.traces(p).unwrap().tr_u % 2 != 0;
            let order = frobenius_order(&cubic, p, &GroupLabel::S3).unwrap();
            assert_eq!(odd, order == 3, "{} at {p}", t.name);
        }
    }
}
