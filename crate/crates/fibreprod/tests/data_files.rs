use std::fs;

use fibreprod::data::{Dataset, FIELDS, NEWFORMS, SURFACES, THREEFOLDS};
use fibreprod::CliError;
use fibreprod_core::catalog;

#[test]
fn bundled_files_match_the_catalog() {
    let d = Dataset::builtin().unwrap();
    assert_eq!(d.surfaces, catalog::surfaces());
    let specs: Vec<_> = d.varieties.iter().map(|v| v.spec.clone()).collect();
    assert_eq!(specs, catalog::threefolds());
    assert_eq!(d.forms, catalog::forms());
    assert_eq!(d.field_lists["cubics-2-5-11"], catalog::cubic_fields_2_5_11());
    assert_eq!(d.field_lists["cubics-2-3"], catalog::cubic_fields_2_3());
    assert_eq!(d.field_lists["w1-quartics"], catalog::w1_quartics());
    assert_eq!(d.field_lists["w3-quartics"], catalog::w3_quartics());
    for name in ["W1", "W3"] {
        assert_eq!(d.plan(name), catalog::certification_plan(name).as_ref(), "{name}");
    }
    assert!(d.plan("W2").is_none() && d.plan("Hesse").is_none());
}

#[test]
fn table_primes_avoid_refusals() {
    let d = Dataset::builtin().unwrap();
    for v in &d.varieties {
        assert!(!v.table_primes.is_empty());
        for &p in &v.table_primes {
            assert!(v.spec.refusal(p).is_none(), "{} at {p}", v.spec.name);
        }
    }
}

#[test]
fn data_dir_overrides_and_rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    // An empty directory falls back to the bundled files.
    let d = Dataset::load(dir.path()).unwrap();
    assert_eq!(d.varieties.len(), 4);

    let builtin = Dataset::builtin().unwrap();
    let original = include_str!("../data/newforms.tsv");
    let tampered = original.replacen("f55\t4\t55\t2\t1\texpansion", "f55\t4\t55\t2\t3\texpansion", 1);
    assert_ne!(original, tampered, "fixture row not found");
    fs::write(dir.path().join(NEWFORMS), tampered).unwrap();
    // a_2 = 3 breaks the Hecke relation a_4 = a_2^2 - 8.
    assert!(Dataset::load(dir.path()).is_err());
    fs::remove_file(dir.path().join(NEWFORMS)).unwrap();

    let text = include_str!("../data/threefolds.toml").replacen("u_form = \"f22\"", "u_form = \"f23\"", 1);
    fs::write(dir.path().join(THREEFOLDS), text).unwrap();
    assert!(matches!(Dataset::load(dir.path()), Err(CliError::Data { .. }) | Err(CliError::Config(_))));
    fs::remove_file(dir.path().join(THREEFOLDS)).unwrap();

    fs::write(dir.path().join(SURFACES), "[[surface]]\nname = 1\n").unwrap();
    assert!(Dataset::load(dir.path()).is_err());
    fs::write(dir.path().join(FIELDS), include_str!("../data/fields.toml")).unwrap();
    fs::remove_file(dir.path().join(SURFACES)).unwrap();
    assert_eq!(Dataset::load(dir.path()).unwrap().field_lists, builtin.field_lists);
}
