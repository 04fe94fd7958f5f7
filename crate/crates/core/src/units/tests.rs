use super::*;
use crate::cli::dsl::parse_spec;
use crate::filtration::{delta_chain, DeltaDepth};
use crate::group::{build_group, direct_product, GroupRef, Subgroup};
use crate::{Int, ZElement};

fn g(s: &str) -> GroupRef {
    build_group(&parse_spec(s).unwrap()).unwrap()
}

fn ints(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}

#[test]
fn bass_on_c5() {
    let c5 = g("cyclic(5)");
    let chain = delta_chain(&c5, 3).unwrap();
    let u = bass_unit(&chain, 1, 2, 4).unwrap();
    assert_eq!(u.element.to_dense(), ints(&[-2, 1, 3, 1, -2]));
    assert!(!u.trivial);
    assert!(u.verify());
    assert_eq!(torsion_probe(&u, 100), TorsionProbe::NoTorsion { bound: 100 });
    assert!(bass_unit(&chain, 1, 2, 3).is_err());
    assert!(bass_unit(&chain, 1, 1, 7).unwrap().element.is_one());
}

#[test]
fn bass_minus_one_is_trivial() {
    let c6 = g("cyclic(6)");
    let chain = delta_chain(&c6, 2).unwrap();
    let u = bass_unit(&chain, 1, 5, 2).unwrap();
    assert!(u.trivial);
    // (1 + g + … + g⁴)² − 4ĝ = g⁴
    assert_eq!(u.element.as_trivial_unit(), Some((4, true)));
}

#[test]
fn bass_closed_form_inverse() {
    // u_{2,4}(g)⁻¹ = u_{3,4}(g²) on C₅
    let c5 = g("cyclic(5)");
    let chain = delta_chain(&c5, 2).unwrap();
    let u = bass_unit(&chain, 1, 2, 4).unwrap();
    let v = bass_unit(&chain, 2, 3, 4).unwrap();
    assert!((&u.element * &v.element).is_one());
}

#[test]
fn bicyclic_examples() {
    let s3 = g("sym(3)");
    let chain = delta_chain(&s3, 3).unwrap();
    let a = s3.find_element("(1 2)").unwrap();
    let c = s3.find_element("(1 2 3)").unwrap();
    let u = bicyclic_unit(&chain, a, c);
    assert!(!u.trivial && u.verify());
    assert!(u.depth.at_least(2));
    assert_eq!(torsion_probe(&u, 100), TorsionProbe::NoTorsion { bound: 100 });
    let t = bicyclic_unit(&chain, c, a);
    assert!(t.trivial && t.element.is_one());

    let c4 = g("cyclic(4)");
    let chain = delta_chain(&c4, 2).unwrap();
    assert!(bicyclic_family(&chain).iter().all(|u| u.trivial && u.element.is_one()));
}

#[test]
fn trivial_unit_torsion() {
    let s3 = g("sym(3)");
    let chain = delta_chain(&s3, 2).unwrap();
    for x in s3.elements() {
        let u = trivial_unit(&chain, x);
        assert_eq!(torsion_probe(&u, 100), TorsionProbe::Order { m: s3.element_order(x) as u64 });
    }
}

#[test]
fn nilpotent_search_examples() {
    let s3 = g("sym(3)");
    let chain = delta_chain(&s3, 1).unwrap();
    match nilpotent_search(&chain, 2, 6) {
        NilpotentSearch::Found { alpha, canonical: Some((x, h)) } => {
            assert!(!alpha.is_zero() && (&alpha * &alpha).is_zero());
            assert!(!Subgroup::generated(&s3, [x]).contains(s3.conj(x, h)));
        }
        other => panic!("{other:?}"),
    }
    let (a, b) = (s3.find_element("(1 2)").unwrap(), s3.find_element("(1 3)").unwrap());
    let alpha = bicyclic_nilpotent(&chain, a, b);
    assert!(!alpha.is_zero() && (&alpha * &alpha).is_zero());
    let c6 = g("cyclic(6)");
    assert_eq!(nilpotent_search(&delta_chain(&c6, 1).unwrap(), 2, 6), NilpotentSearch::NoneCommutative);
    let q8 = g("quaternion(8)");
    match nilpotent_search(&delta_chain(&q8, 1).unwrap(), 1, 4) {
        NilpotentSearch::NoneFound { exhaustive: true, searched } => assert!(searched > 0),
        other => panic!("{other:?}"),
    }
}

#[test]
fn nilpotent_based_units() {
    let s3 = g("sym(3)");
    let c5 = g("cyclic(5)");
    let c2 = g("cyclic(2)");
    let a = s3.find_element("(1 2)").unwrap();
    let b = s3.find_element("(1 3)").unwrap();
    let s3_chain = delta_chain(&s3, 1).unwrap();
    let alpha = bicyclic_nilpotent(&s3_chain, a, b);

    let p = direct_product(&s3, &c5, 512).unwrap();
    let chain = delta_chain(&p.group, 4).unwrap();
    let u = nilpotent_based_unit(&alpha, 1, &p, &chain).unwrap();
    assert!(!u.trivial && u.verify());
    assert!(matches!(u.provenance, Provenance::NilpotentBased { coprime: true, .. }));
    assert_eq!(u.depth, DeltaDepth::AtLeast { depth: 4 });
    let zero = nilpotent_based_unit(&ZElement::zero(&s3), 1, &p, &chain).unwrap();
    assert!(zero.element.is_one() && zero.trivial);
    assert!(nilpotent_based_unit(&ZElement::g_minus_one(&s3, a), 1, &p, &chain).is_err());
    assert!(nilpotent_based_unit(&alpha, 0, &p, &chain).is_err());

    let q = direct_product(&s3, &c2, 512).unwrap();
    let chain = delta_chain(&q.group, 3).unwrap();
    let u = nilpotent_based_unit(&alpha, 1, &q, &chain).unwrap();
    assert!(u.verify());
    assert!(matches!(u.provenance, Provenance::NilpotentBased { coprime: false, .. }));
}

#[test]
fn unit_json_shape() {
    let c5 = g("cyclic(5)");
    let chain = delta_chain(&c5, 2).unwrap();
    let json = serde_json::to_value(bass_unit(&chain, 1, 2, 4).unwrap().to_json()).unwrap();
    assert_eq!(json["provenance"]["kind"], "bass");
    assert_eq!(json["element"]["coeffs"]["0"], "-2");
}
