//! Ring laws and homomorphism properties on randomly sampled elements.
//! Each case is driven by a seed so failures replay exactly.

use galois_core::arith::{RatFunc, Rational};
use galois_core::families::{make_ogz, make_qogz, make_xf, FSpec, Family, Placement};
use galois_core::sample::Sampler;
use proptest::prelude::*;

fn families() -> Vec<Family> {
    vec![
        make_xf(2, &FSpec::Power(2), Placement::CoefficientLeft).unwrap(),
        make_ogz(&[1, 2], None, Placement::CoefficientLeft).unwrap(),
        make_qogz(&[1, 1], None, Placement::ShiftLeft).unwrap(),
    ]
}

/// Rational value of `f` at a point; `None` where a denominator vanishes.
fn value(f: &RatFunc, point: &[Rational]) -> Option<Rational> {
    let table = f.table();
    let mut values: Vec<Option<Rational>> = point.iter().cloned().map(Some).collect();
    values.resize(table.nvars(), Some(Rational::new(3.into(), 7.into())));
    f.evaluate(&values).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn fraction_field_laws(seed in any::<u64>(), which in 0usize..3) {
        let fam = &families()[which];
        let table = fam.setting.table().clone();
        let vars: Vec<usize> = (0..table.nvars()).collect();
        let mut s = Sampler::new(seed);
        let a = s.ratfunc(&table, &vars, 2);
        let b = s.ratfunc(&table, &vars, 2);
        let c = s.ratfunc(&table, &vars, 2);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        // evaluation is a ring map: compare against rational arithmetic
        let p = s.generic_point(&fam.setting, 9);
        if let (Some(va), Some(vb), Some(vc)) = (value(&a, &p), value(&b, &p), value(&c, &p)) {
            let lhs = value(&(&(&a * &b) - &c), &p);
            prop_assert_eq!(lhs, Some(&va * &vb - &vc));
        }
    }

    #[test]
    fn shifts_are_ring_automorphisms(seed in any::<u64>(), which in 0usize..3) {
        let fam = &families()[which];
        let set = &fam.setting;
        let table = set.table().clone();
        let vars: Vec<usize> = (0..table.nvars()).collect();
        let mut s = Sampler::new(seed);
        let a = s.ratfunc(&table, &vars, 2);
        let b = s.ratfunc(&table, &vars, 2);
        let mu = s.shift(set, 2);
        let nu = s.shift(set, 2);
        prop_assert_eq!(set.apply_shift(&mu, &(&a * &b)), &set.apply_shift(&mu, &a) * &set.apply_shift(&mu, &b));
        prop_assert_eq!(set.apply_shift(&mu, &(&a + &b)), &set.apply_shift(&mu, &a) + &set.apply_shift(&mu, &b));
        prop_assert_eq!(set.apply_shift(&mu, &set.apply_shift(&nu, &a)), set.apply_shift(&mu.compose(&nu), &a));
    }

    #[test]
    fn skew_ring_laws(seed in any::<u64>(), which in 0usize..3) {
        let fam = &families()[which];
        let set = &fam.setting;
        let mut s = Sampler::new(seed);
        let x = s.skew(set, 2, 1);
        let y = s.skew(set, 2, 1);
        let z = s.skew(set, 2, 1);
        prop_assert_eq!(x.mul(&y, set).mul(&z, set), x.mul(&y.mul(&z, set), set));
        prop_assert_eq!(x.mul(&y.add(&z), set), x.mul(&y, set).add(&x.mul(&z, set)));
        // dagger is an involutive anti-automorphism
        prop_assert_eq!(x.dagger(set).dagger(set), x.clone());
        prop_assert_eq!(x.mul(&y, set).dagger(set), y.dagger(set).mul(&x.dagger(set), set));
    }

    #[test]
    fn group_acts_by_ring_automorphisms(seed in any::<u64>(), which in 0usize..3) {
        let fam = &families()[which];
        let set = &fam.setting;
        let mut s = Sampler::new(seed);
        let x = s.skew(set, 2, 1);
        let y = s.skew(set, 2, 1);
        for g in set.group().generators() {
            prop_assert_eq!(x.mul(&y, set).act(&g, set), x.act(&g, set).mul(&y.act(&g, set), set));
        }
        for (label, gen) in fam.labels.iter().zip(&fam.generators) {
            prop_assert!(gen.is_invariant(set), "{} is not invariant", label);
        }
    }
}
