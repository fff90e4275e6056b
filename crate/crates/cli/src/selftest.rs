//! End-to-end invariant suites at small sizes.
//!
//! `flip_shift_sign` makes the suites use the opposite shift convention in
//! their own oracles while the library keeps its convention, so a
//! convention mismatch must surface as a failure.

use std::time::Instant;

use anyhow::{ensure, Context, Result};
use galois_core::arith::{RatFunc, Rational};
use galois_core::cert::{certify_family, CertOptions, Verdict};
use galois_core::families::{make_finite_w, make_ogz, make_qogz, make_xf, FSpec, Family, Placement};
use galois_core::gz::{act_point, build_family_module, canonicalize, character_key, full_assignment, ModuleOptions};
use galois_core::sample::Sampler;
use galois_core::setting::Setting;
use galois_core::skew::{ShiftOp, SkewElement};
use galois_core::symmetry::Character;

pub struct Options {
    pub seed: u64,
    pub flip_shift_sign: bool,
}

pub struct SuiteResult {
    pub name: &'static str,
    pub outcome: Result<String>,
    pub seconds: f64,
}

fn families() -> Result<Vec<Family>> {
    Ok(vec![
        make_xf(2, &FSpec::PowerSum(2), Placement::CoefficientLeft)?,
        make_ogz(&[1, 2], None, Placement::CoefficientLeft)?,
        make_qogz(&[1, 1], None, Placement::ShiftLeft)?,
        make_finite_w(&[1, 1], None, Placement::CoefficientLeft)?,
    ])
}

fn oriented(mu: &ShiftOp, flip: bool) -> ShiftOp {
    if flip {
        mu.inverse()
    } else {
        mu.clone()
    }
}

/// `X(a)` recomputed term by term.
fn evaluate(x: &SkewElement, a: &RatFunc, set: &Setting, flip: bool) -> RatFunc {
    let parts: Vec<RatFunc> = x.terms().iter().map(|(mu, c)| c * &set.apply_shift(&oriented(mu, flip), a)).collect();
    RatFunc::sum(set.table(), parts.iter())
}

fn composition(opts: &Options) -> Result<String> {
    let mut s = Sampler::new(opts.seed);
    let fams = families()?;
    for fam in &fams {
        let set = &fam.setting;
        let vars: Vec<usize> = (0..set.table().nvars()).collect();
        for i in 0..40 {
            let x = s.skew(set, 2, 2);
            let y = fam.generators[i % fam.generators.len()].clone();
            let a = s.ratfunc(set.table(), &vars, 2);
            let lhs = evaluate(&x, &evaluate(&y, &a, set, opts.flip_shift_sign), set, opts.flip_shift_sign);
            let rhs = evaluate(&x.mul(&y, set), &a, set, opts.flip_shift_sign);
            ensure!(lhs == rhs, "{}: X(Y(a)) != (XY)(a) at sample {i}", set.name());
        }
    }
    Ok(format!("{} triples", 40 * fams.len()))
}

fn round_trip(opts: &Options) -> Result<String> {
    let mut s = Sampler::new(opts.seed ^ 1);
    let fams = families()?;
    for fam in &fams[..3] {
        let set = &fam.setting;
        let g = set.group();
        let d = set.d_sgn();
        ensure!(g.is_relative_invariant(d, Character::Sgn), "{}: d_sgn is not alternating", set.name());
        let vars: Vec<usize> = (0..set.table().nblock_vars()).collect();
        for i in 0..30 {
            let p = s.poly(set.table(), &vars, 2, 3, true);
            let sym = RatFunc::from(g.symmetrize_poly(&p)?);
            let back = g.divide_by_relative_invariant(&(&sym * d), d)?;
            ensure!(back == sym, "{}: sample {i} does not round trip", set.name());
        }
    }
    Ok("90 symmetric samples".into())
}

fn certification(opts: &Options) -> Result<String> {
    let cert_opts = CertOptions { seed: opts.seed, spot_samples: 8, ..CertOptions::default() };
    let fams = families()?;
    for fam in &fams {
        let cert = certify_family(fam, &cert_opts)?;
        ensure!(cert.verdict == Verdict::Pass, "{}: verdict {:?}", fam.setting.name(), cert.verdict);
        ensure!(cert.replay(&fam.setting, &fam.generators)?, "{}: certificate does not replay", fam.setting.name());
    }
    Ok(format!("{} families certified and replayed", fams.len()))
}

fn module(opts: &Options) -> Result<String> {
    let fam = make_ogz(&[1, 2], None, Placement::CoefficientLeft)?;
    let set = &fam.setting;
    let q = Rational::from_integer(2.into());
    let mut s = Sampler::new(opts.seed ^ 2);
    for _ in 0..3 {
        let seed = s.generic_point(set, 9);
        let m = build_family_module(&fam, &seed, &ModuleOptions::default())?;
        ensure!(m.weights.iter().all(|(_, d)| *d == 1), "{}: weight space of dimension > 1", set.name());
        for (i, b) in m.basis.iter().enumerate() {
            let values = full_assignment(set, &b.coords, &q);
            for (x, mat) in fam.generators.iter().zip(&m.matrices) {
                for (mu, c) in x.terms() {
                    let target = canonicalize(set, &act_point(set, &oriented(mu, opts.flip_shift_sign), &b.coords, &q));
                    let Some(j) = m.index_of(&target) else { continue };
                    let expected = c.evaluate(&values)?;
                    let got = mat.entries.get(&(i, j)).cloned().unwrap_or_default();
                    ensure!(got == expected, "{}: entry ({i}, {j}) of {} is {got}, expected {expected}", set.name(), mat.label);
                }
            }
        }
    }
    Ok("3 generic seeds against direct evaluation".into())
}

fn charkey(opts: &Options) -> Result<String> {
    let mut s = Sampler::new(opts.seed ^ 3);
    let q = Rational::from_integer(2.into());
    let fams = families()?;
    let mut pairs = 0;
    for fam in &fams[..3] {
        let set = &fam.setting;
        let elements = set.group().elements()?;
        for _ in 0..20 {
            let p = s.generic_point(set, 9);
            let key = character_key(set, &p, &q)?;
            for g in &elements {
                let gp = g.act_on_point(&p);
                ensure!(character_key(set, &gp, &q)? == key, "{}: key differs across an orbit", set.name());
                pairs += 1;
            }
            let other = s.generic_point(set, 9);
            let same_orbit = elements.iter().any(|g| g.act_on_point(&p) == other);
            ensure!((character_key(set, &other, &q)? == key) == same_orbit, "{}: key collision", set.name());
        }
    }
    Ok(format!("{pairs} orbit pairs"))
}

type Suite = (&'static str, fn(&Options) -> Result<String>);

const SUITES: [Suite; 5] = [
    ("composition", composition),
    ("relative-invariants", round_trip),
    ("certification", certification),
    ("module", module),
    ("character-keys", charkey),
];

pub fn run(opts: &Options) -> Vec<SuiteResult> {
    SUITES
        .iter()
        .map(|(name, f)| {
            let t = Instant::now();
            let outcome = f(opts).with_context(|| format!("suite {name}"));
            SuiteResult { name, outcome, seconds: t.elapsed().as_secs_f64() }
        })
        .collect()
}
