use tollbooth::gadgets::gen_random_sp_l_instance;
use tollbooth::mintb::{make_list, max_used_path_length, min_edges_to_induce, solve_l_instance, LengthValue};
use tollbooth::oracle::{brute_force_mintb, max_inducible_length, SupportProfile, Subnetwork};
use tollbooth::rational::ratio;
use tollbooth::sp::build_parse_tree;

#[test]
fn dp_support_matches_brute_force() {
    for seed in 0..300 {
        let m = 1 + (seed as usize % 8);
        let inst = gen_random_sp_l_instance(seed, m, 6);
        let tree = build_parse_tree(inst.network()).unwrap();
        let sol = solve_l_instance(&inst, &tree, None).unwrap();
        let (k, witness) = brute_force_mintb(&inst, m).unwrap();
        assert_eq!(sol.support, k, "seed {seed}: {:?}", inst);
        assert!(inst.induced_length(&sol.tolls).is_some(), "seed {seed}");
        assert!(inst.induced_length(&witness).is_some(), "seed {seed}");
        assert_eq!(witness.support_size(), k);
    }
}

#[test]
fn every_list_entry_is_the_largest_inducible_length() {
    for seed in 1000..1150 {
        let m = 1 + (seed as usize % 7);
        let inst = gen_random_sp_l_instance(seed, m, 5);
        let tree = build_parse_tree(inst.network()).unwrap();
        let lists = make_list(&tree, &inst).unwrap();
        for (index, list) in lists.iter().enumerate() {
            let sub = Subnetwork::of_tree_node(&tree, index);
            for entry in list.entries() {
                let oracle = max_inducible_length(&inst, &sub, entry.eta).unwrap();
                assert_eq!(oracle.as_ref(), Some(&entry.length), "seed {seed} node {index} eta {}", entry.eta);
            }
            if list.is_used() {
                for eta in 0..list.first().eta {
                    assert_eq!(max_inducible_length(&inst, &sub, eta).unwrap(), None, "seed {seed} node {index}");
                }
            }
        }
    }
}

#[test]
fn lookup_matches_oracle_minimum() {
    for seed in 2000..2100 {
        let m = 1 + (seed as usize % 7);
        let inst = gen_random_sp_l_instance(seed, m, 4);
        let tree = build_parse_tree(inst.network()).unwrap();
        let lists = make_list(&tree, &inst).unwrap();
        let lmax = max_used_path_length(&tree, &inst).unwrap();
        let base = lmax.finite().unwrap().clone();
        let profile = SupportProfile::build(&inst, m).unwrap();
        for step in 0..=20 {
            let target = LengthValue::Finite(&base + ratio(step, 2));
            let (_, eta) = min_edges_to_induce(&lists[tree.root()], &target).unwrap();
            assert_eq!(profile.min_support(&target), Some(eta), "seed {seed} target {target}");
            if step > 0 {
                let below = LengthValue::Finite(&base - ratio(step, 2));
                assert_eq!(profile.min_support(&below), None, "seed {seed}");
            }
        }
        let (_, eta) = min_edges_to_induce(&lists[tree.root()], &LengthValue::Infinite).unwrap();
        assert_eq!(profile.min_support(&LengthValue::Infinite), Some(eta));
    }
}
