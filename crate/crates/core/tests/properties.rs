use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;
use weylworks::characters::{character_table, kostka};
use weylworks::glmodules::irrep_plucker;
use weylworks::lattice::{
    fixed_point, jordan_type, random_stable_subspace, stratum_membership, LatticeJson, LatticeSubspace, Membership,
};
use weylworks::skewhowe::{build_bimodule, hom_space, induced_gln_module};
use weylworks::springercount::{component_count, interpolate};
use weylworks::weights::{
    compositions, conjugate, partitions_of, weyl_permute, Partition, Permutation, WeightVec,
};

/// Hook-content formula for dim V(λ) of GL_n.
fn hook_content_dim(lam: &Partition, n: usize) -> u64 {
    let parts = lam.parts();
    let dual = conjugate(lam);
    let (mut num, mut den) = (1u128, 1u128);
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            num *= (n as i64 + j as i64 - i as i64) as u128;
            den *= (row - j + dual.part(j) - i - 1) as u128;
        }
    }
    (num / den) as u64
}

fn small_partition(max_size: usize) -> impl Strategy<Value = Partition> {
    (1..=max_size).prop_flat_map(|k| {
        let all = partitions_of(k);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

#[test]
fn kostka_sums_to_hook_content() {
    for size in 1..=6 {
        for lam in partitions_of(size) {
            for n in lam.length()..=4 {
                let total: u64 = compositions(size, n).iter().map(|mu| kostka(&lam, mu).unwrap()).sum();
                assert_eq!(total, hook_content_dim(&lam, n), "{lam} n = {n}");
            }
        }
    }
}

#[test]
fn four_constructions_agree() {
    for size in 1..=4 {
        let b = build_bimodule(3, 3, size).unwrap();
        for lam in partitions_of(size) {
            if lam.length() > 3 || lam.largest() > 3 {
                continue;
            }
            let dual = conjugate(&lam);
            for mu in compositions(size, 3) {
                let k = kostka(&dual, &mu).unwrap();
                assert_eq!(hom_space(&b, &lam, &mu).unwrap().dim as u64, k, "{lam} {mu}");
                assert_eq!(component_count(&lam, &mu, 3).unwrap(), k, "{lam} {mu}");
            }
        }
    }
}

#[test]
fn induced_module_is_the_conjugate_irrep() {
    let b = build_bimodule(3, 2, 3).unwrap();
    for lam in partitions_of(3) {
        if lam.length() > 2 {
            continue;
        }
        let module = induced_gln_module(&b, &lam).unwrap();
        module.check_relations().unwrap();
        let table = character_table(&conjugate(&lam).to_dominant(3).unwrap(), 3).unwrap();
        let expected: BTreeMap<_, _> = table.entries.into_iter().filter(|(_, m)| *m > 0).collect();
        assert_eq!(module.character(), expected, "{lam}");
        let dec = module.decompose().unwrap();
        assert_eq!(dec.multiplicity(&conjugate(&lam).to_dominant(3).unwrap()), 1);
    }
}

#[test]
fn fixed_points_lie_in_their_stratum() {
    for size in 1..=4 {
        for mu in compositions(size, 3) {
            let l = fixed_point(&mu, 3).unwrap();
            let sorted = Partition::from_unsorted(mu.entries().iter().map(|&x| x as usize).collect());
            assert_eq!(jordan_type(&l).unwrap(), sorted);
            for lam in partitions_of(size) {
                let expected = if lam == sorted {
                    Membership::InStratum
                } else if weylworks::weights::partition_dominance_leq(&sorted, &lam) {
                    Membership::InClosureOnly
                } else {
                    Membership::Outside
                };
                assert_eq!(stratum_membership(&l, &lam), expected, "{mu} {lam}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn plucker_irrep_matches_character(lam in small_partition(5), extra in 0usize..2) {
        let n = (lam.length() + extra).clamp(1, 3);
        prop_assume!(lam.length() <= n);
        let module = irrep_plucker(&lam, n).unwrap();
        module.check_relations().unwrap();
        let table = character_table(&lam.to_dominant(n).unwrap(), n).unwrap();
        let expected: BTreeMap<_, _> = table.entries.into_iter().filter(|(_, m)| *m > 0).collect();
        prop_assert_eq!(module.character(), expected);
    }

    #[test]
    fn kostka_is_weyl_invariant(lam in small_partition(6), perm in Just(()).prop_perturb(|_, mut rng| {
        let mut v: Vec<usize> = (0..4).collect();
        for i in (1..4).rev() {
            v.swap(i, (rng.next_u32() as usize) % (i + 1));
        }
        v
    })) {
        prop_assume!(lam.length() <= 4);
        let w = Permutation::new(perm).unwrap();
        for mu in compositions(lam.size(), 4) {
            let moved = weyl_permute(&w, &mu).unwrap();
            prop_assert_eq!(kostka(&lam, &mu).unwrap(), kostka(&lam, &moved).unwrap());
        }
    }

    #[test]
    fn random_subspaces_lie_in_their_stratum(n in 1usize..4, d in 1usize..4, gens in 1usize..4, seed in any::<u64>()) {
        let l = random_stable_subspace(n, d, gens, seed).unwrap();
        prop_assert!(l.is_x_stable());
        let nu = jordan_type(&l).unwrap();
        prop_assert_eq!(nu.size(), l.dim());
        prop_assert!(nu.length() <= n);
        prop_assert_eq!(stratum_membership(&l, &nu), Membership::InStratum);
    }

    #[test]
    fn lattice_json_round_trip(n in 1usize..4, d in 1usize..4, seed in any::<u64>()) {
        let l = random_stable_subspace(n, d, 2, seed).unwrap();
        let text = serde_json::to_string(&l.to_json()).unwrap();
        let back: LatticeJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(LatticeSubspace::from_json(&back).unwrap(), l);
    }

    #[test]
    fn interpolation_recovers_polynomials(coeffs in prop::collection::vec(0u32..50, 1..6)) {
        let primes = [2u64, 3, 5, 7, 11, 13, 17];
        let degree = coeffs.len() - 1;
        let counts: BTreeMap<u64, BigUint> = primes[..coeffs.len() + 1]
            .iter()
            .map(|&q| {
                let v = coeffs.iter().rev().fold(BigUint::from(0u32), |acc, &c| acc * q + c);
                (q, v)
            })
            .collect();
        let poly = interpolate(&counts, degree).unwrap();
        let got: Vec<String> = poly.coefficients().iter().map(|c| c.to_string()).collect();
        let mut want: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
        while want.len() > 1 && want.last().unwrap() == "0" {
            want.pop();
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn weight_json_round_trip(entries in prop::collection::vec(-20i64..20, 1..6)) {
        let w = WeightVec::new(entries).unwrap();
        let text = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<WeightVec>(&text).unwrap(), w);
    }
}
