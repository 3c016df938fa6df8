use std::collections::BTreeMap;

use cvpolar::distance::ExtNat;
use cvpolar::oracle::{
    coset_min_weight, delta_profile, exhaustive_min_distance, theorem1_sides, ErasureOracle,
};
use cvpolar::rng::substream;
use cvpolar::subspace::{enumerate_subspaces, s3_index, tau_tables};
use cvpolar::{BitVector, CodeSpec};
use rand::Rng;

#[test]
fn tau_composition_of_half_length_spaces() {
    let tau = tau_tables();
    for n in [2usize, 4, 8] {
        let half = n / 2;
        let full = ErasureOracle::new(n).unwrap();
        let small = ErasureOracle::new(half).unwrap();
        let low = (1u64 << half) - 1;
        for phi in 0..n {
            let psi = phi.div_ceil(2) as isize - 1;
            for e in 0u64..(1 << n) {
                let x = small.chi_mask(psi, 3, e & low).unwrap();
                let z = small.chi_mask(psi, 3, e >> half).unwrap();
                let i = s3_index(x.mask()).unwrap();
                let j = s3_index(z.mask()).unwrap();
                let want = full.chi_mask(phi as isize, 3, e).unwrap();
                let got = tau.get(phi % 2, i, j);
                assert_eq!(Some(got), s3_index(want.mask()), "n={n} phi={phi} E={e:b}");
            }
        }
    }
}

#[test]
fn weight_is_minimum_over_spaces_without_leading_unit() {
    for n in [1usize, 2, 4, 8, 16] {
        let spaces = enumerate_subspaces(3).unwrap();
        for phi in 0..n {
            let profile = delta_profile(n, phi as isize, 3).unwrap();
            let rhs = spaces
                .iter()
                .filter(|s| !s.contains(0b001))
                .map(|s| profile[s.mask() as usize])
                .min()
                .unwrap();
            let lhs = coset_min_weight(n, phi, &BitVector::from_bits(&[1])).unwrap();
            assert_eq!(lhs, rhs, "n={n} phi={phi}");
        }
    }
}

#[test]
fn coset_weight_spot_checks() {
    for (n, phi, p) in [(4usize, 2usize, vec![1u8, 0]), (2, 0, vec![1]), (8, 5, vec![1, 0, 0]), (16, 9, vec![1, 1, 0])] {
        let (lhs, rhs) = theorem1_sides(n, phi, &BitVector::from_bits(&p)).unwrap();
        assert_eq!(lhs, rhs);
        assert!(lhs.is_finite());
    }
}

fn random_code(n: usize, rng: &mut impl Rng) -> CodeSpec {
    let mut frozen = BTreeMap::new();
    let mut info = Vec::new();
    for i in 0..n {
        match rng.gen_range(0..3) {
            0 if !info.is_empty() => {
                let list: Vec<usize> = info.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                frozen.insert(i, list);
            }
            1 => {
                frozen.insert(i, Vec::new());
            }
            _ => info.push(i),
        }
    }
    if info.is_empty() {
        frozen.remove(&(n - 1));
    }
    CodeSpec::new(n, 0, frozen).unwrap()
}

#[test]
fn distance_is_at_least_the_least_coset_weight() {
    let mut rng = substream(2024, 0);
    for trial in 0..100 {
        let n = [4usize, 8, 16][trial % 3];
        let code = random_code(n, &mut rng);
        let d = exhaustive_min_distance(&code).unwrap();
        let bound = code
            .info_set()
            .iter()
            .map(|&i| coset_min_weight(n, i, &BitVector::from_bits(&[1])).unwrap())
            .min()
            .unwrap();
        assert!(ExtNat::new(d) >= bound, "{}", code.serialize());
    }
}

#[test]
fn row_zero_in_the_information_set_gives_distance_one() {
    for n in [2usize, 4, 8, 16, 32] {
        let code = CodeSpec::from_info_set(n, &[0, n - 1]).unwrap();
        assert_eq!(exhaustive_min_distance(&code).unwrap(), 1);
    }
}
