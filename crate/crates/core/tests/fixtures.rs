//! Every shipped fixture verifies, and a damaged copy does not.

use std::path::PathBuf;

use hlc_core::fixture::{Body, FixtureFile};
use hlc_core::DEFAULT_SEED_CAP;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn all_fixtures() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    v.sort();
    v
}

#[test]
fn shipped_fixtures_pass() {
    let files = all_fixtures();
    assert!(files.len() >= 12);
    for path in files {
        let fx = FixtureFile::load(&path).unwrap();
        let report = fx.verify(DEFAULT_SEED_CAP).unwrap();
        assert!(report.passed(), "{}: {report}", path.display());
        assert!(report.checked > 0);
    }
}

#[test]
fn render_round_trips_every_fixture() {
    for path in all_fixtures() {
        let fx = FixtureFile::load(&path).unwrap();
        let again: FixtureFile = fx.render().parse().unwrap();
        assert_eq!(again, fx, "{}", path.display());
    }
}

#[test]
fn damaged_entries_are_reported() {
    let mut fx = FixtureFile::load(&fixture_dir().join("e6_row16.txt")).unwrap();
    let Body::Monomials(ms) = &mut fx.body else { panic!("monomial fixture expected") };
    ms[0] = ms[0].shifted(-2);
    let report = fx.verify(DEFAULT_SEED_CAP).unwrap();
    assert!(!report.passed());
    assert_eq!(report.missing.len(), 1);

    let mut fx = FixtureFile::load(&fixture_dir().join("a2_level2_matrices.txt")).unwrap();
    let Body::Matrices { l, .. } = &mut fx.body else { panic!("matrix fixture expected") };
    l[0][1] += 1;
    assert!(!fx.verify(DEFAULT_SEED_CAP).unwrap().passed());
}
