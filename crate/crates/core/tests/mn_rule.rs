use std::collections::BTreeMap;

use affine_fk::partition::Partition;
use affine_fk::perm::{elements_of_length, elements_up_to};
use affine_fk::schubert_ring::{affine_schubert, schubert_basis, xi_representative};
use affine_fk::strong_order::{mn_coefficient, ribbons};
use affine_fk::symfunc::affine_stanley_power_sums;
use affine_fk::{AffinePermutation, Basis, SymFunc, Q};

fn w(n: usize, word: &[usize]) -> AffinePermutation {
    AffinePermutation::from_word(n, word).unwrap()
}

fn p_m(k: usize, m: usize) -> SymFunc {
    SymFunc::single(Basis::P, Some(k), Partition::new(vec![m]).unwrap()).unwrap()
}

#[test]
fn three_chains_into_s1s0() {
    let n = 4;
    let target = w(n, &[1, 0]);
    let cases = [
        (vec![1, 2, 3, 1, 0], vec![(-2, 1), (-4, 1), (-1, 1)], 1),
        (vec![2, 0, 3, 1, 0], vec![(-4, 1), (-1, 2), (-1, 1)], -1),
        (vec![0, 3, 2, 1, 0], vec![(0, 6), (0, 5), (0, 3)], 1),
    ];
    for (word, chain, sign) in cases {
        let inside = w(n, &word);
        let found: Vec<_> = ribbons(&inside, 3)
            .unwrap()
            .into_iter()
            .filter(|r| r.word() == chain)
            .collect();
        assert_eq!(found.len(), 1, "chain {chain:?} from {word:?}");
        assert_eq!(found[0].outside(), &target);
        assert_eq!(found[0].sign, sign);
        assert_eq!(mn_coefficient(&inside, 3, &target).unwrap(), sign);
    }
    // p_3 F̃_{s1 s0} = F̃_{12310} − F̃_{20310} + F̃_{03210} in Λ^(3).
    let lhs = p_m(3, 3)
        .multiply(&affine_stanley_power_sums(&target).unwrap())
        .unwrap();
    let rhs = affine_stanley_power_sums(&w(n, &[1, 2, 3, 1, 0]))
        .unwrap()
        .sub(&affine_stanley_power_sums(&w(n, &[2, 0, 3, 1, 0])).unwrap())
        .unwrap()
        .add(&affine_stanley_power_sums(&w(n, &[0, 3, 2, 1, 0])).unwrap())
        .unwrap();
    assert_eq!(lhs.project_to_quotient(3).unwrap(), rhs.project_to_quotient(3).unwrap());
}

/// `c^w_{m,v}` for every `w` of length `ℓ(v) + m`.
fn mn_row(v: &AffinePermutation, m: usize) -> BTreeMap<AffinePermutation, i64> {
    elements_of_length(v.n(), v.length() + m)
        .iter()
        .map(|u| (u.clone(), mn_coefficient(u, m, v).unwrap()))
        .filter(|(_, c)| *c != 0)
        .collect()
}

#[test]
fn mn_rule_for_affine_stanley_functions() {
    let n = 3;
    for v in elements_up_to(n, 4) {
        for m in 1..n {
            let lhs = p_m(n - 1, m).multiply(&affine_stanley_power_sums(&v).unwrap()).unwrap();
            let mut rhs = SymFunc::zero(Basis::P, None);
            for (u, c) in mn_row(&v, m) {
                rhs = rhs
                    .add(&affine_stanley_power_sums(&u).unwrap().scale(&Q::from_integer(c.into())))
                    .unwrap();
            }
            assert_eq!(
                lhs.project_to_quotient(n - 1).unwrap(),
                rhs.project_to_quotient(n - 1).unwrap(),
                "v = {v}, m = {m}"
            );
        }
    }
}

#[test]
fn mn_rule_for_affine_schubert_classes() {
    let n = 3;
    for v in elements_up_to(n, 4) {
        for m in 1..n {
            let prod = &xi_representative(n, m).unwrap() * &*affine_schubert(&v).unwrap();
            let expansion = schubert_basis(n, v.length() + m).unwrap().expand(&prod).unwrap();
            let expected: BTreeMap<AffinePermutation, Q> = mn_row(&v, m)
                .into_iter()
                .map(|(u, c)| (u, Q::from_integer(c.into())))
                .collect();
            assert_eq!(expansion, expected, "v = {v}, m = {m}");
        }
    }
}
