use std::time::Instant;

use galois_core::cert::{certify_family, CertOptions, Verdict};
use galois_core::families::{FSpec, FamilyConfig};

fn configs() -> Vec<FamilyConfig> {
    let mut v = Vec::new();
    for n in 2..=4 {
        v.push(FamilyConfig::Xf { n, f: FSpec::PowerSum(2), placement: None });
    }
    for (r, j) in [
        (vec![1, 1], None),
        (vec![1, 2], None),
        (vec![2, 2], None),
        (vec![1, 2, 3], None),
        (vec![1, 2], Some(vec![])),
        (vec![1, 2, 3], Some(vec![2])),
    ] {
        v.push(FamilyConfig::Ogz { r: r.clone(), j: j.clone(), placement: None });
    }
    for (pi, j) in [(vec![1], None), (vec![1, 1], None), (vec![1, 2], None), (vec![1, 2], Some(vec![]))] {
        v.push(FamilyConfig::FiniteW { pi, j, placement: None });
    }
    for (r, j) in [(vec![1, 1], None), (vec![1, 2], None), (vec![2, 2], None), (vec![1, 2], Some(vec![]))] {
        v.push(FamilyConfig::Qogz { r, j, placement: None });
    }
    v
}

#[test]
fn every_family_passes_its_certificate() {
    for c in configs() {
        let t = Instant::now();
        let f = c.build().unwrap();
        let cert = certify_family(&f, &CertOptions::default()).unwrap();
        eprintln!("{c:?}: {:?} in {:?}", cert.verdict, t.elapsed());
        assert_eq!(cert.verdict, Verdict::Pass, "{c:?}: {:?}", cert.counterexample);
        assert!(cert.replay(&f.setting, &f.generators).unwrap());
    }
}

#[test]
fn placement_decides_the_order_kind() {
    use galois_core::cert::{certify_coprincipal, certify_principal};
    use galois_core::families::{make_ogz, make_qogz, Placement};
    let opts = CertOptions::default();
    for r in [vec![1, 2], vec![2, 2]] {
        let shift_left = make_ogz(&r, None, Placement::ShiftLeft).unwrap();
        assert_eq!(certify_family(&shift_left, &opts).unwrap().verdict, Verdict::Pass);
        let q = make_qogz(&r, None, Placement::CoefficientLeft).unwrap();
        assert_eq!(certify_family(&q, &opts).unwrap().verdict, Verdict::Pass);
    }
    // each placement certifies only its own kind
    let q = make_qogz(&[2, 2], None, Placement::ShiftLeft).unwrap();
    let c = certify_principal(&q.setting, &q.generators, None, &opts).unwrap();
    assert_eq!(c.verdict, Verdict::Fail);
    let o = make_ogz(&[2, 2], None, Placement::CoefficientLeft).unwrap();
    let c2 = certify_coprincipal(&o.setting, &o.generators, None, &opts).unwrap();
    assert_eq!(c2.verdict, Verdict::Fail);
}
