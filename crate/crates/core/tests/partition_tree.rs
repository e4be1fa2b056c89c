use std::collections::BTreeSet;

use orbit_codes::gu_partition::{chain_partition, is_fair, partition};
use orbit_codes::multishot::{IntraDistance, CountMode};
use orbit_codes::orbit_code::generate_orbit;
use orbit_codes::reproduce::{alphabet_tree_gf64, cyclic_group, field_subspace, gf64, CYCLIC_63};
use orbit_codes::subspace::Subspace;
use proptest::prelude::*;

#[test]
fn spread_complement_tree_is_fair_within_each_class() {
    let tree = alphabet_tree_gf64().unwrap();
    assert_eq!(tree.depth(), 4);
    for l in 1..=3 {
        let lv = &tree.levels()[l];
        assert!(lv.nested);
        for class in 0..22 {
            let subsets: Vec<Vec<Subspace>> =
                lv.nodes.iter().filter(|n| n.class == class).map(|n| n.members.clone()).collect();
            assert_eq!(subsets.len(), [1, 3, 9][l - 1]);
            assert!(is_fair(&subsets));
        }
    }
    // distinct orbit codes need not share a distance distribution
    let level1: Vec<Vec<Subspace>> = tree.levels()[1].nodes.iter().map(|n| n.members.clone()).collect();
    assert!(!is_fair(&level1));
    assert_eq!(tree.intrasubset_distance(4).unwrap().distance, IntraDistance::Unbounded);
}

#[test]
fn column_paths_reach_nested_subsets() {
    let tree = alphabet_tree_gf64().unwrap();
    let sizes: Vec<usize> = (0..=4).map(|l| tree.node_at_path(&[3, 1, 2, 6][..l]).unwrap().members.len()).collect();
    assert_eq!(sizes, vec![1386, 63, 21, 7, 1]);
    let leaf = &tree.node_at_path(&[3, 1, 2, 6]).unwrap().members[0];
    for l in 0..4 {
        assert!(tree.node_at_path(&[3, 1, 2, 6][..l]).unwrap().members.binary_search(leaf).is_ok());
    }
    assert!(tree.node_at_path(&[22]).is_err());
}

#[test]
fn count_modes() {
    let tree = alphabet_tree_gf64().unwrap();
    let profile = tree.intrasubset_distance_with(1, CountMode::Profile).unwrap();
    assert_eq!(profile.fast_computations, 62 * 22);
    let auto = tree.intrasubset_distance(1).unwrap();
    assert_eq!(profile.distance, auto.distance);
    let reduced = tree.intrasubset_distance_with(1, CountMode::Reduced(1)).unwrap();
    assert_eq!(reduced.fast_computations, 21 * 22);
    assert_eq!(reduced.distance, auto.distance);
    let root = tree.intrasubset_distance(0).unwrap();
    assert_eq!(root.distance, IntraDistance::Finite(2));
    assert_eq!(root.naive_computations, 1386 * 1385 / 2);
}

fn code63() -> orbit_codes::orbit_code::OrbitCode {
    let fs = gf64();
    generate_orbit(&cyclic_group(&fs, 63), &field_subspace(&fs, &CYCLIC_63)).unwrap()
}

#[test]
fn chain_levels_refine() {
    let fs = gf64();
    let code = code63();
    let series: Vec<_> = [63, 21, 7, 1].iter().map(|&o| (*cyclic_group(&fs, o)).clone()).collect();
    let chain = chain_partition(&code, &series).unwrap();
    assert!(chain.is_fair_chain());
    for w in chain.levels.windows(2) {
        for small in &w[1].subsets {
            let parents = w[0].subsets.iter().filter(|big| small.iter().all(|x| big.contains(x))).count();
            assert_eq!(parents, 1);
        }
        let total: usize = w[1].subsets.iter().map(Vec::len).sum();
        assert_eq!(total, 63);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn subcodes_partition_the_code(d in prop::sample::select(vec![1u32, 3, 7, 9, 21, 63]), e in 0u32..63) {
        let fs = gf64();
        let code = code63();
        let p = partition(&code, &cyclic_group(&fs, d)).unwrap();
        let mut seen = BTreeSet::new();
        for s in p.subcodes() {
            prop_assert_eq!(s.codewords.len(), d as usize);
            for c in &s.codewords {
                prop_assert!(seen.insert(c.clone()));
            }
        }
        prop_assert_eq!(seen.len(), 63);
        // profiles are invariant under moving the base subcode by the top group
        let g = orbit_codes::group_action::GroupElement::FieldScalar(e);
        let moved = code.group().act(&g, code.initial()).unwrap();
        let i = p.subcode_of(&moved).unwrap();
        for s in p.subcodes() {
            prop_assert_eq!(p.profile_polynomial(&s.representative, 0).unwrap(), p.profile_polynomial(&s.representative, i).unwrap());
        }
    }

    #[test]
    fn distance_profile_is_constant_on_the_orbit(i in 0usize..63) {
        let code = code63();
        let base = code.distance_profile(code.initial()).unwrap();
        prop_assert_eq!(code.distance_profile(&code.codewords()[i]).unwrap(), base.clone());
        prop_assert_eq!(base.total(), 62);
    }
}
