//! The shipped fixture classes reproduce their known widths.

use std::fs;
use std::path::Path;

use edval::{ed_report, Classification, SymbolClass};

fn load(name: &str) -> SymbolClass {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {path:?}: {e}"));
    SymbolClass::parse(text.trim()).expect("fixtures parse")
}

#[test]
fn chain_fixture_widths() {
    // the degree-3 chain classes attached to the known invariant values
    let t1 = ed_report(&load("t1.txt"), false);
    assert_eq!(t1.rho, 7);
    assert!(t1.exact);
    assert_eq!(t1.classification, Classification::NonSymbol);

    let t2 = ed_report(&load("t2.txt"), false);
    assert_eq!(t2.rho, 9);
    assert!(t2.exact);
}

#[test]
fn block_fixture() {
    let r = ed_report(&load("block_r2.txt"), false);
    assert_eq!(r.rho, 4);
    let block = r.brauer.expect("degree 2");
    assert_eq!(block.i0, 4);
    assert!(block
        .divisors
        .iter()
        .all(|d| *d == num_bigint::BigInt::from(1)));
}

#[test]
fn generic_fixture() {
    let r = ed_report(&load("generic_r2_d3.txt"), false);
    assert_eq!(r.rho, 6);
    assert!(r.exact);
}

#[test]
fn congruence_fixture() {
    let r = ed_report(&load("congruence_nv5_d3.txt"), false);
    assert_eq!(r.rho, 5);
    assert_eq!(r.classification, Classification::NonSymbol);
}

#[test]
fn fixtures_match_generators() {
    assert_eq!(load("t1.txt"), SymbolClass::chain(3, 2).unwrap());
    assert_eq!(load("t2.txt"), SymbolClass::chain(4, 2).unwrap());
    assert_eq!(
        load("block_r2.txt"),
        SymbolClass::block_brauer(2, 2, 1).unwrap()
    );
    assert_eq!(
        load("generic_r2_d3.txt"),
        SymbolClass::generic(2, 3, 2, 1).unwrap()
    );
    assert_eq!(
        load("congruence_nv5_d3.txt"),
        SymbolClass::congruence(5, 3, 2).unwrap()
    );
}
