use proptest::prelude::*;

use tropmirror::coordring::{section_ring, verify_isomorphism};
use tropmirror::floer::{assemble_algebra, check_axioms, cup_product, floer_group, triangle_target};
use tropmirror::lattice::{polytope_from_bundle, standard};
use tropmirror::{Polytope, RationalVector, SupportFunction};

fn p2() -> Polytope {
    let fan = standard::projective_plane();
    polytope_from_bundle(&fan, &SupportFunction::constant(&fan, 1)).unwrap()
}

#[test]
fn target_examples() {
    let p = RationalVector::from_ints(&[1, 1]);
    let q = RationalVector::from_ints(&[-2, 1]);
    assert_eq!(triangle_target(0, 2, 3, &p, &q).unwrap(), RationalVector::from_ints(&[0, 1]));
    assert!(triangle_target(1, 0, 1, &p, &q).is_err());
}

#[test]
fn degree_one_generates_degree_two() {
    let q = p2();
    let alg = assemble_algebra(&q, 2).unwrap();
    let mut hit = vec![false; alg.piece(2).dim()];
    for a in 0..alg.piece(1).dim() {
        for b in 0..alg.piece(1).dim() {
            hit[alg.product(1, a, 1, b).unwrap()] = true;
        }
    }
    assert!(hit.iter().all(|&h| h));
}

#[test]
fn injected_fault_is_caught() {
    let q = p2();
    let mut alg = assemble_algebra(&q, 3).unwrap();
    let ring = section_ring(&q, 3);
    assert!(verify_isomorphism(&alg, &ring).success());
    let r = alg.product(1, 0, 1, 1);
    alg.set_product(1, 0, 1, 1, r.map(|r| r + 1));
    let report = verify_isomorphism(&alg, &ring);
    assert!(!report.success());
    assert_eq!(report.mismatches.len(), 1);
    assert!(!check_axioms(&alg).unwrap().ok());
}

#[test]
fn translation_preserves_structure_constants() {
    let q = p2();
    let alg = assemble_algebra(&q, 3).unwrap();
    for v in [[1, 0], [0, 1], [-1, 1]] {
        let moved = q.translate(&RationalVector::from_ints(&v));
        let alg2 = assemble_algebra(&moved, 3).unwrap();
        assert_eq!(alg.dims(), alg2.dims());
        for (j, k) in alg.table_keys().collect::<Vec<_>>() {
            assert_eq!(alg.table(j, k), alg2.table(j, k), "({j},{k}) after {v:?}");
        }
        assert!(verify_isomorphism(&alg2, &section_ring(&moved, 3)).success());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ladder_products_are_commutative_and_land_in_the_sum(j in 1i64..4, k in 1i64..4, a in 0usize..1000, b in 0usize..1000) {
        let q = p2();
        let g1 = floer_group(&q, 0, j);
        let g2 = floer_group(&q, j, j + k);
        let g1b = floer_group(&q, 0, k);
        let g2b = floer_group(&q, k, j + k);
        let x = &g1.basis()[a % g1.dim()];
        let y = &g2.basis()[b % g2.dim()];
        let xy = cup_product(x, y, &q).unwrap().expect("positive ladder products never vanish");
        prop_assert_eq!(xy.l1, 0);
        prop_assert_eq!(xy.l2, j + k);
        // Swap the factors: same points, other twist order.
        let y2 = g1b.basis()[g1b.index_of(&y.point).unwrap()].clone();
        let x2 = g2b.basis()[g2b.index_of(&x.point).unwrap()].clone();
        let yx = cup_product(&y2, &x2, &q).unwrap().unwrap();
        prop_assert_eq!(xy.point, yx.point);
    }
}
