use num::BigRational;
use proptest::prelude::*;

use tropmirror::coordring::EhrhartPolynomial;
use tropmirror::lattice::{
    dilate_count, dilate_interior_count, format_rational, integer_points, lattice_points, parse_rational,
    polytope_from_bundle, standard, Convexity,
};
use tropmirror::{Fan, Polytope, RationalVector, SupportFunction};

fn polygon(points: &[(i64, i64)]) -> Option<Polytope> {
    let pts: Vec<RationalVector> = points.iter().map(|&(a, b)| RationalVector::from_ints(&[a, b])).collect();
    Polytope::hull(&pts).ok().filter(|q| q.is_full_dimensional())
}

fn unimodular(ops: &[(usize, i64)]) -> Vec<Vec<i64>> {
    // Products of shears and a swap; determinant +-1.
    let mut g = vec![vec![1, 0], vec![0, 1]];
    for &(kind, k) in ops {
        let e = match kind {
            0 => vec![vec![1, k], vec![0, 1]],
            1 => vec![vec![1, 0], vec![k, 1]],
            _ => vec![vec![0, 1], vec![1, 0]],
        };
        g = (0..2).map(|i| (0..2).map(|j| (0..2).map(|l| e[i][l] * g[l][j]).sum()).collect()).collect();
    }
    g
}

fn fans() -> Vec<Fan> {
    vec![standard::projective_plane(), standard::p1_times_p1(), standard::hirzebruch_f1()]
}

#[test]
fn p2_polytope() {
    let fan = standard::projective_plane();
    let q = polytope_from_bundle(&fan, &SupportFunction::constant(&fan, 1)).unwrap();
    assert_eq!(q.vertices().len(), 3);
    assert_eq!((1..=4).map(|j| dilate_count(&q, j)).collect::<Vec<_>>(), vec![10, 28, 55, 91]);
    assert_eq!((1..=4).map(|j| dilate_interior_count(&q, j)).collect::<Vec<_>>(), vec![1, 10, 28, 55]);
}

#[test]
fn weighted_projective_plane_is_not_smooth() {
    assert!(!standard::weighted_112().is_smooth().unwrap());
    assert!(standard::projective_space3().is_smooth().unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_strings_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let r = BigRational::new(p.into(), q.into());
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn polytope_json_round_trip(pts in prop::collection::vec((-4i64..=4, -4i64..=4), 3..7)) {
        if let Some(q) = polygon(&pts) {
            let back = Polytope::from_json(&q.to_json()).unwrap();
            prop_assert_eq!(back.vertices(), q.vertices());
            let text = serde_json::to_string(&q.to_json()).unwrap();
            prop_assert!(!text.contains('.'));
        }
    }

    #[test]
    fn dilate_and_refine_agree(pts in prop::collection::vec((-3i64..=3, -3i64..=3), 3..7), j in 1u64..5) {
        if let Some(q) = polygon(&pts) {
            let dilated = integer_points(&q.dilate(&j.into()), false).len();
            prop_assert_eq!(dilated, lattice_points(&q, j).len());
            prop_assert_eq!(dilated, dilate_count(&q, j));
            // Every refined point scales back to an integer point of jQ.
            for p in lattice_points(&q, j) {
                let scaled = p.scale(&BigRational::from_integer(j.into()));
                prop_assert!(scaled.to_lattice().is_some());
            }
        }
    }

    #[test]
    fn ehrhart_fit_and_reciprocity(pts in prop::collection::vec((-3i64..=3, -3i64..=3), 3..7)) {
        if let Some(q) = polygon(&pts) {
            let e = EhrhartPolynomial::fit(&q).unwrap();
            prop_assert_eq!(e.degree(), 2);
            for j in 0..=6u64 {
                prop_assert_eq!(e.eval(j as i64), BigRational::from_integer(dilate_count(&q, j).into()));
            }
            for j in 1..=4u64 {
                prop_assert_eq!(e.eval(-(j as i64)), BigRational::from_integer(dilate_interior_count(&q, j).into()));
            }
        }
    }

    #[test]
    fn unimodular_invariance(ops in prop::collection::vec((0usize..3, -2i64..=2), 0..5), which in 0usize..3) {
        let fan = &fans()[which];
        let g = unimodular(&ops);
        let moved = fan.transform(&g).unwrap();
        prop_assert!(moved.is_smooth().unwrap());
        prop_assert!(moved.is_complete().unwrap());
        let phi = SupportFunction::constant(fan, 1);
        prop_assert_eq!(phi.convexity(&moved).unwrap(), Convexity::Strict);
        let q = polytope_from_bundle(fan, &phi).unwrap();
        let q2 = polytope_from_bundle(&moved, &phi).unwrap();
        for j in 1..=3 {
            prop_assert_eq!(dilate_count(&q, j), dilate_count(&q2, j));
        }
    }
}
