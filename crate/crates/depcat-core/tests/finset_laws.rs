use depcat_core::cwf::{check_laws, pi_uniqueness, Model};
use depcat_core::finset::{exhaustive_seeds, random_seeds, DFinSet, FinSetModel, FinSetSampler};

#[test]
fn exhaustive_small_instances_satisfy_every_law() {
    let m = FinSetModel::new();
    let mut s = FinSetSampler::new(1);
    let r = check_laws(&m, &mut s, &exhaustive_seeds(3));
    assert!(r.all_passed(), "{}", r);
    assert!(r.unchecked().is_empty(), "{:?}", r.unchecked());
}

#[test]
fn random_instances_satisfy_every_law() {
    let m = FinSetModel::new();
    let mut s = FinSetSampler::new(2);
    let r = check_laws(&m, &mut s, &random_seeds(200, 2));
    assert!(r.all_passed(), "{}", r);
    assert!(r.unchecked().is_empty(), "{:?}", r.unchecked());
}

#[test]
fn pi_structures_agree_up_to_unique_iso() {
    let m1 = FinSetModel::new();
    let m2 = FinSetModel { pi_tag: Some(9), ..FinSetModel::new() };
    for seed in exhaustive_seeds(2) {
        assert!(pi_uniqueness(&m1, &m2, &seed.a, &seed.b).unwrap());
        let b_const = DFinSet::constant(m1.ext(&seed.a).unwrap(), depcat_core::finset::FinSet::range(2));
        assert!(pi_uniqueness(&m1, &m2, &seed.a, &b_const).unwrap());
    }
}
