//! Randomised invariants of the algebraic layers.

#![allow(clippy::needless_range_loop)]

use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use hlc_core::cluster::{dynkin_b, enumerate_bfs, extract_gf, principal_seed};
use hlc_core::grid::{mutate_b, mutate_b_eps, GridQuiver, HeightFunction};
use hlc_core::laurent::{LaurentPoly, Monomial, TropMonomial, VarTable};
use hlc_core::root::{qcartan_by_recurrence, DynkinDiagram, Family, QCartanTable};
use hlc_core::ymono::YMonomial;

fn table() -> Arc<VarTable> {
    VarTable::new(["a", "b", "c"]).unwrap()
}

type Terms = Vec<(Vec<i64>, i64)>;

fn terms(lo: i64, coeff: std::ops::Range<i64>) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(lo..3i64, 3), coeff), 0..5)
}

fn poly(t: &Arc<VarTable>, ts: &Terms) -> LaurentPoly {
    ts.iter().fold(LaurentPoly::zero(t), |acc, (e, c)| {
        &acc + &LaurentPoly::monomial(t, Monomial::from_dense(e), BigInt::from(*c))
    })
}

fn diagram() -> impl Strategy<Value = DynkinDiagram> {
    prop_oneof![
        (1usize..=8).prop_map(|n| DynkinDiagram::new(Family::A, n).unwrap()),
        (4usize..=8).prop_map(|n| DynkinDiagram::new(Family::D, n).unwrap()),
        (6usize..=8).prop_map(|n| DynkinDiagram::new(Family::E, n).unwrap()),
    ]
}

fn height(d: &DynkinDiagram, bits: u64, base: i64) -> HeightFunction {
    HeightFunction::from_edge_bits(d, bits, base)
}

/// Skew-symmetric principal part with a few frozen rows below it.
fn extended_b() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<usize>)> {
    (2usize..5, 0usize..3).prop_flat_map(|(n, f)| {
        (prop::collection::vec(-2i64..=2, n * (n - 1) / 2), prop::collection::vec(-2i64..=2, n * f)).prop_map(
            move |(upper, frozen)| {
                let mut b = vec![vec![0; n]; n + f];
                let mut it = upper.into_iter();
                for i in 0..n {
                    for j in i + 1..n {
                        let v = it.next().unwrap();
                        b[i][j] = v;
                        b[j][i] = -v;
                    }
                }
                for r in 0..f {
                    b[n + r].copy_from_slice(&frozen[r * n..(r + 1) * n]);
                }
                (b, (0..n).collect())
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(p in terms(-2, -3..4), q in terms(-2, -3..4), r in terms(-2, -3..4)) {
        let t = table();
        let (p, q, r) = (poly(&t, &p), poly(&t, &q), poly(&t, &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &LaurentPoly::one(&t), p.clone());
        if !q.is_zero() {
            prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
        }
    }

    #[test]
    fn tropical_evaluation_is_a_homomorphism(
        p in terms(0, 1..4),
        q in terms(0, 1..4),
        imgs in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 3),
    ) {
        let t = table();
        let (p, q) = (poly(&t, &p), poly(&t, &q));
        prop_assume!(!p.is_zero() && !q.is_zero());
        let imgs: Vec<TropMonomial> = imgs.into_iter().map(TropMonomial::new).collect();
        let (tp, tq) = (p.tropical_eval(&imgs).unwrap(), q.tropical_eval(&imgs).unwrap());
        prop_assert_eq!((&p * &q).tropical_eval(&imgs).unwrap(), tp.mul(&tq));
        prop_assert_eq!((&p + &q).tropical_eval(&imgs).unwrap(), tp.oplus(&tq));
    }

    #[test]
    fn matrix_mutation_is_an_involution((b, cols) in extended_b(), k in 0usize..4) {
        let k = k % cols.len();
        let once = mutate_b(&b, &cols, k).unwrap();
        prop_assert_eq!(mutate_b(&once, &cols, k).unwrap(), b.clone());
        prop_assert_eq!(mutate_b_eps(&b, &cols, k, -1).unwrap(), once);
    }

    #[test]
    fn compatible_pairs_survive_mutation(d in diagram(), bits in any::<u64>(), ell in 1usize..=3, walk in prop::collection::vec(any::<usize>(), 1..6)) {
        let xi = height(&d, bits, 0);
        let g = GridQuiver::new(&xi, ell).unwrap();
        let mut s = g.seed_matrices(&QCartanTable::new(&d));
        prop_assert!(s.compat().ok);
        for k in walk {
            s = s.mutate(k % s.col_rows.len()).unwrap();
            prop_assert!(s.compat().ok);
        }
    }

    #[test]
    fn quantum_cartan_periodicity_and_antisymmetry(d in diagram(), i in 0usize..8, j in 0usize..8, m in 1i64..40) {
        let n = d.rank();
        let (i, j) = (i % n, j % n);
        let t = QCartanTable::new(&d);
        let h = t.period();
        let raw = qcartan_by_recurrence(&d, (2 * h) as usize);
        let r = ((m - 1) % h) as usize;
        prop_assert_eq!(raw[r + h as usize][i][j], raw[r][i][j]);
        prop_assert_eq!(t.entry(i, j, m), t.entry(j, i, m));
        prop_assert_eq!(t.n_func(i, j, -m), -t.n_func(i, j, m));
    }

    #[test]
    fn laurent_phenomenon_on_walks(bits in any::<u64>(), walk in prop::collection::vec(0usize..4, 1..8)) {
        let d = DynkinDiagram::new(Family::D, 4).unwrap();
        let xi = height(&d, bits, 0);
        let b = dynkin_b(&xi);
        let e = enumerate_bfs(&b, 1000).unwrap();
        let mut s = principal_seed(&b).unwrap();
        for k in walk {
            s = s.mutate(k).unwrap();
            let data = extract_gf(&s.vars[k], 4).unwrap();
            prop_assert!(data.f.is_positive());
            let listed = e.by_g(&data.g).unwrap();
            prop_assert_eq!(&listed.f, &data.f);
        }
    }

    #[test]
    fn y_monomial_text_round_trip(pairs in prop::collection::vec((0usize..8, -10i64..10, -3i64..=3), 0..6)) {
        let m = YMonomial::from_pairs(pairs);
        let back: YMonomial = m.render().parse().unwrap();
        prop_assert_eq!(back, m);
    }
}
