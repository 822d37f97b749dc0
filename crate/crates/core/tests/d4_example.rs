//! The D4 example with `xi = (4,3,2,2)`: the table of highest weights and
//! the exchange relations among the truncated q-characters.

use hlc_core::grid::HeightFunction;
use hlc_core::hl::hl_table;
use hlc_core::root::{DynkinDiagram, Family};
use hlc_core::ymono::YMonomial;

fn ym(s: &str) -> YMonomial {
    s.parse().unwrap()
}

fn list(s: &str) -> Vec<YMonomial> {
    s.split('|').map(|t| ym(t.trim())).collect()
}

/// `lhs ; first ; second`, each a `|`-separated product.
const RELATIONS: [&str; 8] = [
    "1_4 2_1 | 1_2 ; 2_1 | 1_2 1_4 ; 2_1 2_3",
    "1_4 3_0 4_0 | 2_1 ; 1_4 2_1 | 3_0 | 4_0 ; 3_0 3_2 | 4_0 4_2",
    "2_3 3_0 4_0 | 1_4 2_1 ; 1_4 3_0 4_0 | 2_1 2_3 ; 1_2 1_4 | 3_0 3_2 | 4_0 4_2",
    "1_4 4_0 | 3_0 ; 1_4 3_0 4_0 ; 4_0 4_2",
    "1_4 3_0 | 4_0 ; 1_4 3_0 4_0 ; 3_0 3_2",
    "1_4 2_3 3_0 4_0 | 1_4 3_0 4_0 ; 2_3 3_0 4_0 | 1_4 4_0 | 1_4 3_0 ; 1_2 1_4 | 3_0 3_2 | 4_0 4_2",
    "2_3 3_0 | 1_4 4_0 ; 1_4 2_3 3_0 4_0 ; 1_2 1_4 | 3_0 3_2",
    "2_3 4_0 | 1_4 3_0 ; 1_4 2_3 3_0 4_0 ; 1_2 1_4 | 4_0 4_2",
];

fn xi() -> HeightFunction {
    HeightFunction::new(&DynkinDiagram::new(Family::D, 4).unwrap(), vec![4, 3, 2, 2]).unwrap()
}

#[test]
fn sixteen_modules() {
    let t = hl_table(&xi()).unwrap();
    let mut want = list(
        "1_4|2_3|3_2|4_2|2_1|1_4 2_1|1_2|3_0|4_0|1_4 3_0 4_0|1_4 3_0|1_4 4_0|2_3 3_0 4_0|2_3 3_0|2_3 4_0|1_4 2_3 3_0 4_0",
    );
    want.sort();
    assert_eq!(t.monomials(), want);
}

#[test]
fn exchange_relations_hold() {
    let mut t = hl_table(&xi()).unwrap();
    t.compute_qchars().unwrap();
    for rel in RELATIONS {
        let parts: Vec<Vec<YMonomial>> = rel.split(';').map(list).collect();
        assert!(t.verify_relation(&parts[0], &parts[1], &parts[2]).unwrap(), "{rel}");
    }
    for mesh in t.ar.meshes() {
        assert!(t.verify_mesh_identity(&mesh).unwrap());
    }
}

#[test]
fn a_wrong_relation_is_rejected() {
    let mut t = hl_table(&xi()).unwrap();
    t.compute_qchars().unwrap();
    let ok = t.verify_relation(&list("1_4 4_0 | 3_0"), &list("1_4 3_0 4_0"), &list("3_0 3_2")).unwrap();
    assert!(!ok);
}
