use augring::cli::dsl::{parse_spec, GroupSpec};
use augring::group::{
    abelian_invariants, build_group, direct_product, lower_central_series, structural_report, Permutation,
};
use augring::{GroupRef, QuotientGroup, Subgroup};
use proptest::prelude::*;

fn g(s: &str) -> GroupRef {
    build_group(&parse_spec(s).unwrap()).unwrap()
}

fn perm_group(gens: &[Vec<usize>]) -> GroupRef {
    let cycles = gens
        .iter()
        .map(|images| Permutation::from_images(images.clone()).unwrap().cycles())
        .collect();
    build_group(&GroupSpec::Perm(cycles)).unwrap()
}

fn random_perm_group() -> impl Strategy<Value = GroupRef> {
    let perm = Just((0..5).collect::<Vec<usize>>()).prop_shuffle();
    prop::collection::vec(perm, 1..=3).prop_map(|gens| perm_group(&gens))
}

/// Brute-force commutator subgroup `[A, G]` without normal closure shortcuts.
fn naive_commutator(group: &GroupRef, a: &Subgroup) -> Vec<usize> {
    let mut set = vec![false; group.order()];
    set[0] = true;
    loop {
        let mut changed = false;
        let current: Vec<usize> = (0..group.order()).filter(|&i| set[i]).collect();
        for &x in a.elements() {
            for y in group.elements() {
                let c = group.mul(group.mul(group.inv(x), group.inv(y)), group.mul(x, y));
                if !set[c] {
                    set[c] = true;
                    changed = true;
                }
            }
        }
        for &x in &current {
            for &y in &current {
                let z = group.mul(x, y);
                if !set[z] {
                    set[z] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return (0..group.order()).filter(|&i| set[i]).collect();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_groups_are_associative_with_inverses(group in random_perm_group()) {
        prop_assert!(group.verify_associativity());
        for x in group.elements() {
            prop_assert_eq!(group.mul(x, group.inv(x)), 0);
            prop_assert_eq!(group.pow(x, group.element_order(x) as i64), 0);
            prop_assert_eq!(group.exponent() % group.element_order(x), 0);
        }
        prop_assert_eq!(120 % group.order(), 0);
    }

    #[test]
    fn generated_subgroups_are_closed(group in random_perm_group(), picks in prop::collection::vec(0usize..120, 1..3)) {
        let gens: Vec<usize> = picks.iter().map(|p| p % group.order()).collect();
        let h = Subgroup::generated(&group, gens.iter().copied());
        prop_assert!(h.is_closed());
        prop_assert_eq!(group.order() % h.order(), 0);
        for &x in &gens {
            prop_assert!(h.contains(x));
        }
        let n = h.normalizer();
        prop_assert!(h.is_subgroup_of(&n));
        let closure = Subgroup::normal_closure(&group, gens.iter().copied());
        prop_assert!(closure.is_normal());
        prop_assert!(h.is_subgroup_of(&closure));
    }

    #[test]
    fn lower_central_series_is_normal_and_descending(group in random_perm_group()) {
        let lcs = lower_central_series(&group);
        let terms = lcs.terms();
        prop_assert!(terms[0].is_whole());
        for w in terms.windows(2) {
            prop_assert!(w[1].is_subgroup_of(&w[0]));
            prop_assert!(w[1] != w[0]);
            prop_assert_eq!(naive_commutator(&group, &w[0]), w[1].elements().to_vec());
        }
        for t in terms {
            prop_assert!(t.is_normal());
        }
        prop_assert_eq!(lcs.is_nilpotent(), lcs.stable_term().is_trivial());
    }

    #[test]
    fn quotients_by_series_terms_are_homomorphic_images(group in random_perm_group()) {
        let lcs = lower_central_series(&group);
        for t in lcs.terms() {
            let q = QuotientGroup::new(t).unwrap();
            prop_assert!(q.verify());
            prop_assert_eq!(q.quotient.order() * t.order(), group.order());
        }
        let ab = QuotientGroup::new(lcs.term(2)).unwrap();
        prop_assert!(ab.quotient.is_abelian());
        let inv = abelian_invariants(&ab.quotient);
        prop_assert_eq!(inv.iter().product::<u64>(), ab.quotient.order() as u64);
        for w in inv.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn rebuilding_reproduces_indices_and_hash(gens in prop::collection::vec(Just((0..5).collect::<Vec<usize>>()).prop_shuffle(), 1..=3)) {
        let a = perm_group(&gens);
        let b = perm_group(&gens);
        prop_assert_eq!(a.canonical_hash(), b.canonical_hash());
        for x in a.elements() {
            prop_assert_eq!(a.label(x), b.label(x));
            prop_assert_eq!(b.find_element(&a.label(x)).unwrap(), x);
        }
    }
}

#[test]
fn named_constructors_have_expected_orders() {
    for (spec, order, exponent) in [
        ("cyclic(1)", 1, 1),
        ("cyclic(12)", 12, 12),
        ("elemab(2,3)", 8, 2),
        ("dihedral(5)", 10, 10),
        ("quaternion(16)", 16, 8),
        ("sym(4)", 24, 12),
        ("alt(4)", 12, 6),
        ("alt(5)", 60, 30),
        ("product(quaternion(8), cyclic(2))", 16, 4),
    ] {
        let group = g(spec);
        assert_eq!((group.order(), group.exponent()), (order, exponent), "{spec}");
        assert!(group.verify_associativity(), "{spec}");
    }
}

#[test]
fn direct_product_projections_and_commuting_factors() {
    let s3 = g("sym(3)");
    let c5 = g("cyclic(5)");
    let p = direct_product(&s3, &c5, 512).unwrap();
    assert_eq!(p.group.order(), 30);
    for a in s3.elements() {
        for b in c5.elements() {
            let x = p.left_embed[a];
            let y = p.right_embed[b];
            assert_eq!(p.group.mul(x, y), p.group.mul(y, x));
        }
    }
    let left = Subgroup::generated(&p.group, p.left_embed.iter().copied());
    assert_eq!(left.order(), 6);
    assert!(left.is_normal());
}

#[test]
fn structure_of_small_groups() {
    let d4 = structural_report(&g("dihedral(4)"));
    assert_eq!(d4.nilpotency_class, Some(2));
    assert_eq!(d4.abelianization, vec![2, 2]);
    let s4 = structural_report(&g("sym(4)"));
    assert_eq!(s4.gamma_orders, vec![24, 12]);
    assert_eq!(s4.abelianization, vec![2]);
    assert_eq!(s4.element_orders.values().sum::<usize>(), 24);
}
