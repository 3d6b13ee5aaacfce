use num_traits::Zero;
use proptest::prelude::*;

use orbifolder::enumeration::Enumerator;
use orbifolder::exact::{format_rational, parse_rational, rat, smith_normal_form};
use orbifolder::isometry::FrameShape;
use orbifolder::lattice::{Lattice, Sublattice};
use orbifolder::{Int, IntMatrix, Rational};

fn positive_gram(a: &[Vec<i64>]) -> IntMatrix {
    let a = IntMatrix::from_i64(a);
    a.transpose().mul(&a).add(&IntMatrix::identity(a.rows()))
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..100) {
        let x = rat(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&x)), Some(x));
    }

    #[test]
    fn smith_product_is_determinant(a in square(3)) {
        let m = IntMatrix::from_i64(&a);
        let product: Int = smith_normal_form(&m).invariant_factors().iter().product();
        let det = m.det();
        if det.is_zero() {
            prop_assert!(smith_normal_form(&m).invariant_factors().len() < 3);
        } else {
            prop_assert_eq!(product, num_traits::Signed::abs(&det));
        }
    }

    #[test]
    fn dual_of_dual_is_the_lattice(a in square(3)) {
        let l = Lattice::new(positive_gram(&a).scale(&Int::from(2)), None).unwrap();
        let dd = l.dual().dual();
        let base: Sublattice = l.as_sublattice();
        prop_assert!(dd.contains_lattice(&base) && base.contains_lattice(&dd));
        prop_assert_eq!(l.dual().determinant() * Rational::from_integer(l.det().clone()), rat(1, 1));
    }

    #[test]
    fn short_vectors_come_in_pairs(a in square(3), bound in 1i64..8) {
        let gram = positive_gram(&a);
        let vs = Enumerator::new(&gram).unwrap().vectors_up_to_norm(&rat(bound, 1));
        for v in &vs {
            let neg: Vec<Int> = v.iter().map(|x| -x).collect();
            prop_assert!(vs.contains(&neg));
        }
    }

    #[test]
    fn frame_shape_powers_keep_degree(t in 1u64..=12, k in 1u64..=12) {
        let exps = std::iter::once((t, 1)).collect();
        let f = FrameShape::new(exps);
        prop_assert_eq!(f.power(k).degree(), f.degree());
    }
}

#[test]
fn frame_shapes_parse_and_render() {
    for s in ["1^8 2^8", "2^12", "1^2 2^1 4^1 8^2", "2^3 6^3"] {
        let f = FrameShape::parse(s).unwrap();
        assert_eq!(f.degree(), 24);
        assert_eq!(f.to_string(), s);
    }
    assert_eq!(FrameShape::parse("2^12").unwrap().order(), 2);
    assert_eq!(FrameShape::parse("1^8 2^8").unwrap().power(2).to_string(), "1^24");
}
