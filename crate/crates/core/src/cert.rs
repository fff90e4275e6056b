//! Certification of generator sets: the support criterion for Galois
//! rings, principal and co-principal orders via denominator clearing, and
//! Dedekind witnesses for families of shifts.
//!
//! A principal certificate rests on the clearing lemma: if every generator
//! `X` is invariant and `d_sgn · X` has Laurent polynomial coefficients, then
//! `X(γ) ∈ Γ` for every invariant `γ`. Evaluation spot checks on sampled
//! invariants are recorded alongside as redundancy, never as the basis of
//! the verdict.

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{Monomial, Poly, RatFunc, Rational, VarId};
use crate::error::{Error, Result};
use crate::families::{Family, OrderKind};
use crate::lattice::{hermite_normal_form, is_full_lattice};
use crate::setting::{Direction, Setting};
use crate::skew::{ShiftOp, SkewElement, SkewTerm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertOptions {
    /// Monoid exploration box: every coordinate in `[-bound, bound]`.
    pub bound: i32,
    /// Random invariant products per spot check.
    pub spot_samples: usize,
    /// Maximal number of invariant factors in a random product.
    pub spot_max_factors: usize,
    pub seed: u64,
}

impl Default for CertOptions {
    fn default() -> Self {
        CertOptions { bound: 8, spot_samples: 20, spot_max_factors: 4, seed: 0x5eed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Conjunction: a failure dominates, then inconclusiveness.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertKind {
    GaloisRing,
    Principal,
    CoPrincipal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `d · X`.
    Left,
    /// `X · d`.
    Right,
}

/// A path in the monoid: `target` is the sum of `supports[i]` over `path`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachWitness {
    pub target: Vec<i32>,
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportEvidence {
    pub supports: Vec<Vec<i32>>,
    pub cone: Vec<Direction>,
    /// Hermite normal form of the lattice spanned by the supports.
    pub hnf: Vec<Vec<String>>,
    pub lattice_full: bool,
    pub bound: i32,
    pub witnesses: Vec<ReachWitness>,
    /// Cone generators not reached; each comes with the reason.
    pub unreached: Vec<(Vec<i32>, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClearingWitness {
    pub generator: usize,
    pub label: String,
    /// `"X"` or `"dagger(X)"`.
    pub operator: String,
    pub side: Side,
    pub d: String,
    pub cleared: Vec<SkewTerm>,
    pub clears: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheckEvidence {
    pub seed: u64,
    pub invariants: usize,
    pub evaluations: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertKind,
    pub setting: String,
    pub labels: Vec<String>,
    pub verdict: Verdict,
    pub galois_ring: SupportEvidence,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub clearing: Vec<ClearingWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spot_checks: Option<SpotCheckEvidence>,
    /// How membership in the standard order is established.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub membership: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Result of [`clears`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clearing {
    pub clears: bool,
    pub cleared: SkewElement,
}

/// Left: coefficients `d · x_μ`; right: `x_μ · μ(d)`, the coefficients of
/// `X · d`. Clears when every one of them is a Laurent polynomial over the
/// scalar parameters.
pub fn clears(x: &SkewElement, d: &RatFunc, side: Side, setting: &Setting) -> Clearing {
    let cleared = match side {
        Side::Left => x.left_mul_coeff(d),
        Side::Right => x.right_mul_coeff(d, setting),
    };
    let ok = cleared.terms().values().all(RatFunc::is_laurent_over_scalars);
    Clearing { clears: ok, cleared }
}

fn check_invariance(setting: &Setting, generators: &[SkewElement]) -> Result<()> {
    for (i, x) in generators.iter().enumerate() {
        x.check_admissible(setting)?;
        if !x.is_invariant(setting) {
            return Err(Error::NonInvariantGenerator { index: i });
        }
    }
    Ok(())
}

fn cone_targets(cone: &[Direction]) -> Vec<Vec<i32>> {
    let dim = cone.len();
    let mut out = Vec::new();
    for (i, d) in cone.iter().enumerate() {
        let mut push = |s: i32| {
            let mut v = vec![0; dim];
            v[i] = s;
            out.push(v);
        };
        match d {
            Direction::Both => {
                push(1);
                push(-1);
            }
            Direction::Forward => push(1),
            Direction::Backward => push(-1),
        }
    }
    out
}

/// Breadth-first exploration of the monoid generated by `supports` inside
/// the box; returns a shortest path to every reachable target.
fn reach(supports: &[Vec<i32>], targets: &[Vec<i32>], bound: i32) -> HashMap<Vec<i32>, Vec<usize>> {
    let dim = targets.first().map_or(0, Vec::len);
    let mut parent: HashMap<Vec<i32>, (Vec<i32>, usize)> = HashMap::new();
    let origin = vec![0; dim];
    let mut seen: std::collections::HashSet<Vec<i32>> = std::collections::HashSet::new();
    seen.insert(origin.clone());
    let mut queue = VecDeque::from([origin.clone()]);
    let mut remaining: std::collections::HashSet<&Vec<i32>> = targets.iter().collect();
    while let Some(v) = queue.pop_front() {
        if remaining.is_empty() {
            break;
        }
        for (k, s) in supports.iter().enumerate() {
            let w: Vec<i32> = v.iter().zip(s).map(|(a, b)| a + b).collect();
            if w.iter().any(|c| c.abs() > bound) || seen.contains(&w) {
                continue;
            }
            seen.insert(w.clone());
            parent.insert(w.clone(), (v.clone(), k));
            remaining.remove(&w);
            queue.push_back(w);
        }
    }
    let mut out = HashMap::new();
    for t in targets {
        if !seen.contains(t) {
            continue;
        }
        let mut path = Vec::new();
        let mut cur = t.clone();
        while cur != origin {
            let (p, k) = parent[&cur].clone();
            path.push(k);
            cur = p;
        }
        path.reverse();
        out.insert(t.clone(), path);
    }
    out
}

/// The union of supports must generate the whole cone as a monoid. The
/// generated group is decided exactly by Hermite normal form; a target
/// whose sign no support can produce is a definitive failure; otherwise
/// targets are searched for in the exploration box and a miss is reported
/// as inconclusive.
fn support_evidence(setting: &Setting, generators: &[SkewElement], bound: i32) -> (SupportEvidence, Verdict) {
    let dim = setting.dim();
    let mut supports: Vec<Vec<i32>> = generators
        .iter()
        .flat_map(|x| x.support())
        .map(|mu| mu.coords().to_vec())
        .filter(|s| s.iter().any(|&c| c != 0))
        .collect();
    supports.sort();
    supports.dedup();
    let cone = setting.monoid().cone().to_vec();
    let rows: Vec<Vec<i64>> = supports.iter().map(|s| s.iter().map(|&c| c as i64).collect()).collect();
    let hnf = hermite_normal_form(&rows, dim);
    let lattice_full = is_full_lattice(&hnf, dim);
    let targets = cone_targets(&cone);
    let mut unreached = Vec::new();
    let mut witnesses = Vec::new();
    let mut verdict = if lattice_full { Verdict::Pass } else { Verdict::Fail };
    if !lattice_full {
        for t in &targets {
            unreached.push((t.clone(), "outside the lattice spanned by the supports".to_string()));
        }
    } else {
        let paths = reach(&supports, &targets, bound);
        for t in &targets {
            if let Some(p) = paths.get(t) {
                witnesses.push(ReachWitness { target: t.clone(), path: p.clone() });
                continue;
            }
            let blocked = t.iter().enumerate().any(|(j, &tj)| {
                (tj < 0 && supports.iter().all(|s| s[j] >= 0)) || (tj > 0 && supports.iter().all(|s| s[j] <= 0))
            });
            if blocked {
                verdict = Verdict::Fail;
                unreached.push((t.clone(), "no support has the required sign".into()));
            } else {
                verdict = verdict.and(Verdict::Inconclusive);
                unreached.push((t.clone(), format!("not reached within box [-{bound}, {bound}]")));
            }
        }
    }
    let hnf = hnf.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    (SupportEvidence { supports, cone, hnf, lattice_full, bound, witnesses, unreached }, verdict)
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("X{i}")).collect()
}

/// Decides whether the generators span a Galois ring: they must be
/// invariant and their supports must generate the monoid.
pub fn check_galois_ring(setting: &Setting, generators: &[SkewElement], opts: &CertOptions) -> Result<Certificate> {
    check_invariance(setting, generators)?;
    let (evidence, verdict) = support_evidence(setting, generators, opts.bound);
    let counterexample = evidence.unreached.first().map(|(t, why)| format!("cone generator {t:?}: {why}"));
    Ok(Certificate {
        kind: CertKind::GaloisRing,
        setting: setting.name().to_string(),
        labels: default_labels(generators.len()),
        verdict,
        galois_ring: evidence,
        clearing: vec![],
        spot_checks: None,
        membership: vec![],
        counterexample,
    })
}

/// Invariant generators followed by seeded random products of them.
pub fn spot_check_invariants(setting: &Setting, opts: &CertOptions) -> Vec<Poly> {
    let gens = setting.invariant_generators();
    let mut out = gens.to_vec();
    if gens.is_empty() {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.spot_samples {
        let k = rng.gen_range(1..=opts.spot_max_factors.max(1));
        let mut p = Poly::one(setting.table());
        for _ in 0..k {
            p = &p * &gens[rng.gen_range(0..gens.len())];
        }
        out.push(p);
    }
    out
}

/// `X(γ)` from the left-cleared form `Σ c_μ μ(γ) / d`, avoiding gcds with
/// `d` whenever the division is exact.
fn evaluate_cleared(cleared: &SkewElement, d: &RatFunc, gamma: &Poly, setting: &Setting) -> RatFunc {
    let g = RatFunc::from(gamma.clone());
    let s = cleared.evaluate(&g, setting);
    if let Some(q) = s.num().try_div(d.num()) {
        if let Ok(r) = RatFunc::new(&q * d.den(), s.den().clone()) {
            return r;
        }
    }
    s.div(d).expect("d is nonzero")
}

fn certify(
    setting: &Setting,
    generators: &[SkewElement],
    labels: Option<&[String]>,
    kind: CertKind,
    opts: &CertOptions,
) -> Result<Certificate> {
    let mut cert = check_galois_ring(setting, generators, opts)?;
    cert.kind = kind;
    if let Some(l) = labels {
        cert.labels = l.to_vec();
    }
    let d = setting.d_sgn().clone();
    let operator = if kind == CertKind::CoPrincipal { "dagger(X)" } else { "X" };
    let gammas = spot_check_invariants(setting, opts);
    let results: Vec<(ClearingWitness, Vec<String>)> = generators
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let op = if kind == CertKind::CoPrincipal { x.dagger(setting) } else { x.clone() };
            let c = clears(&op, &d, Side::Left, setting);
            let mut failures = Vec::new();
            if c.clears {
                for gamma in &gammas {
                    let v = evaluate_cleared(&c.cleared, &d, gamma, setting);
                    if !v.is_laurent_over_scalars() {
                        failures.push(format!("{operator}_{i}({gamma}) has denominator {}", v.den()));
                    } else if !setting.group().is_invariant(&v) {
                        failures.push(format!("{operator}_{i}({gamma}) = {v} is not invariant"));
                    }
                }
            }
            let w = ClearingWitness {
                generator: i,
                label: cert.labels.get(i).cloned().unwrap_or_default(),
                operator: operator.to_string(),
                side: Side::Left,
                d: d.to_string(),
                cleared: c.cleared.to_json_terms(),
                clears: c.clears,
            };
            (w, failures)
        })
        .collect();
    let mut failures = Vec::new();
    for (w, f) in results {
        if !w.clears && cert.counterexample.is_none() {
            cert.counterexample =
                Some(format!("d_sgn does not clear the denominators of {}({})", w.operator, w.label));
        }
        if !w.clears {
            cert.verdict = Verdict::Fail;
        }
        cert.clearing.push(w);
        failures.extend(f);
    }
    if !failures.is_empty() {
        cert.verdict = Verdict::Fail;
        if cert.counterexample.is_none() {
            cert.counterexample = failures.first().cloned();
        }
    }
    if cert.clearing.iter().all(|w| w.clears) {
        cert.membership.push("certified via d_sgn".into());
    }
    cert.membership.push(format!("spot-checked on {} invariants", gammas.len()));
    cert.spot_checks = Some(SpotCheckEvidence {
        seed: opts.seed,
        invariants: gammas.len(),
        evaluations: gammas.len() * generators.len(),
        failures,
    });
    Ok(cert)
}

/// Principal Galois order: Galois ring, `d_sgn · X` clears, and `X(γ)` is
/// an invariant Laurent polynomial on sampled `γ`.
pub fn certify_principal(
    setting: &Setting,
    generators: &[SkewElement],
    labels: Option<&[String]>,
    opts: &CertOptions,
) -> Result<Certificate> {
    certify(setting, generators, labels, CertKind::Principal, opts)
}

/// Co-principal Galois order: the same tests applied to `X†`.
pub fn certify_coprincipal(
    setting: &Setting,
    generators: &[SkewElement],
    labels: Option<&[String]>,
    opts: &CertOptions,
) -> Result<Certificate> {
    certify(setting, generators, labels, CertKind::CoPrincipal, opts)
}

/// Runs the certificate matching the family's placement.
pub fn certify_family(family: &Family, opts: &CertOptions) -> Result<Certificate> {
    let labels = Some(family.labels.as_slice());
    match family.order_kind() {
        OrderKind::Principal => certify_principal(&family.setting, &family.generators, labels, opts),
        OrderKind::CoPrincipal => certify_coprincipal(&family.setting, &family.generators, labels, opts),
    }
}

impl Certificate {
    /// Re-checks the stored witnesses against the generators: support
    /// union, lattice, reach paths, and for each clearing witness that
    /// dividing the cleared form by `d` gives back the operator exactly.
    pub fn replay(&self, setting: &Setting, generators: &[SkewElement]) -> Result<bool> {
        let (evidence, _) = support_evidence(setting, generators, self.galois_ring.bound);
        if evidence.supports != self.galois_ring.supports || evidence.hnf != self.galois_ring.hnf {
            return Ok(false);
        }
        for w in &self.galois_ring.witnesses {
            let mut sum = vec![0; setting.dim()];
            for &k in &w.path {
                let Some(s) = self.galois_ring.supports.get(k) else { return Ok(false) };
                for (a, b) in sum.iter_mut().zip(s) {
                    *a += b;
                }
            }
            if sum != w.target {
                return Ok(false);
            }
        }
        if self.galois_ring.witnesses.len() != cone_targets(&self.galois_ring.cone).len()
            && self.verdict == Verdict::Pass
        {
            return Ok(false);
        }
        let d = setting.d_sgn();
        let dinv = d.inv()?;
        for w in &self.clearing {
            let Some(x) = generators.get(w.generator) else { return Ok(false) };
            let op = if w.operator == "dagger(X)" { x.dagger(setting) } else { x.clone() };
            if w.d != d.to_string() {
                return Ok(false);
            }
            let cleared = SkewElement::from_json_terms(&w.cleared, setting)?;
            if cleared.terms().values().all(RatFunc::is_laurent_over_scalars) != w.clears {
                return Ok(false);
            }
            let back = match w.side {
                Side::Left => cleared.left_mul_coeff(&dinv),
                Side::Right => cleared.right_mul_coeff(&dinv, setting),
            };
            if back != op {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Witness for Dedekind independence of a list of shifts: elements
/// `γ_1 = 1, γ_2, ...` with `det(μ_j(γ_i)) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DedekindWitness {
    pub gammas: Vec<Poly>,
    /// `matrix[i][j] = μ_j(γ_i)`.
    pub matrix: Vec<Vec<Poly>>,
    pub determinant: Poly,
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        panic!("determinant of an empty matrix");
    }
    let table = m[0][0].table().clone();
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut prev = Poly::one(&table);
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Poly::zero(&table),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.exact_div(&prev).expect("Bareiss divisions are exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Largest sum of absolute exponents over the terms.
fn abs_degree(p: &Poly) -> u32 {
    p.terms()
        .map(|(m, _)| m.exponents().iter().map(|e| e.unsigned_abs()).sum::<u32>())
        .max()
        .unwrap_or(0)
}

/// Monomials in `vars` of total degree exactly `deg`.
fn monomials_of_degree(nvars: usize, vars: &[VarId], deg: u32) -> Vec<Monomial> {
    if vars.is_empty() {
        return if deg == 0 { vec![Monomial::one(nvars)] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in (0..=deg).rev() {
        for mut m in monomials_of_degree(nvars, &vars[1..], deg - e) {
            m.set_exp(vars[0], e as i32);
            out.push(m);
        }
    }
    out
}

/// Greedy search: after `γ_1 = 1`, each `γ_i` is the first candidate making
/// the leading `i × i` minor nonzero. Candidates are monomials in the mobile
/// variables by increasing degree, then seeded random products of
/// invariants; nothing beyond `max_degree` is tried.
pub fn dedekind_witness(
    setting: &Setting,
    shifts: &[ShiftOp],
    max_degree: u32,
    seed: u64,
) -> Result<DedekindWitness> {
    if shifts.is_empty() {
        return Err(Error::InvalidConfig("no shifts given".into()));
    }
    for (i, a) in shifts.iter().enumerate() {
        if a.dim() != setting.dim() {
            return Err(Error::InvalidConfig(format!("shift {a} has the wrong dimension")));
        }
        if shifts[..i].contains(a) {
            return Err(Error::InvalidConfig(format!("shift {a} is repeated")));
        }
    }
    let t = setting.table().clone();
    let row = |g: &Poly| -> Vec<Poly> { shifts.iter().map(|mu| setting.apply_shift_poly(mu, g)).collect() };
    let one = Poly::one(&t);
    let mut gammas = vec![one.clone()];
    let mut matrix = vec![row(&one)];
    let mobile = setting.monoid().mobile().to_vec();
    let mut candidates: Vec<Poly> = (1..=max_degree)
        .flat_map(|deg| monomials_of_degree(t.nvars(), &mobile, deg))
        .map(|m| Poly::monomial(&t, m, Rational::from_integer(1.into())))
        .collect();
    let invs = setting.invariant_generators();
    if !invs.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let mut p = Poly::from_int(&t, rng.gen_range(1..=5));
            for _ in 0..rng.gen_range(1..=3) {
                let c = Poly::from_int(&t, rng.gen_range(-3..=3));
                p = &p * &(&invs[rng.gen_range(0..invs.len())] + &c);
            }
            if abs_degree(&p) <= max_degree {
                candidates.push(p);
            }
        }
    }
    let mut next = 0;
    while gammas.len() < shifts.len() {
        let n = gammas.len() + 1;
        let found = loop {
            let Some(c) = candidates.get(next) else { break None };
            next += 1;
            let r = row(c);
            let minor: Vec<Vec<Poly>> =
                matrix.iter().chain(std::iter::once(&r)).map(|row| row[..n].to_vec()).collect();
            if !bareiss_determinant(&minor).is_zero() {
                break Some((c.clone(), r));
            }
        };
        match found {
            Some((c, r)) => {
                gammas.push(c);
                matrix.push(r);
            }
            None => return Err(Error::SearchExhausted { degree: max_degree }),
        }
    }
    let determinant = bareiss_determinant(&matrix);
    Ok(DedekindWitness { gammas, matrix, determinant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_ratfunc, VarTable};
    use crate::families::{make_ogz, make_xf, FSpec, Placement};
    use crate::setting::{MonoidSpec, ShiftMode};
    use crate::symmetry::{BlockKind, GroupSpec};
    use std::sync::Arc;

    fn line_setting(dir: Direction) -> Setting {
        let t = Arc::new(VarTable::with_blocks(&[1], false, vec![]).unwrap());
        let g = GroupSpec::new(&t, vec![BlockKind::A]).unwrap();
        let m = MonoidSpec::new(vec![0], ShiftMode::Additive, vec![dir]).unwrap();
        Setting::new("line", g, m).unwrap()
    }

    fn cofactor(m: &[Vec<Poly>]) -> Poly {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = Poly::zero(m[0][0].table());
        for j in 0..m.len() {
            let minor: Vec<Vec<Poly>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect()).collect();
            let term = &m[0][j] * &cofactor(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn index_two_support_fails() {
        let s = line_setting(Direction::Both);
        let x = SkewElement::term(RatFunc::one(s.table()), ShiftOp::from(vec![2]));
        let c = check_galois_ring(&s, &[x], &CertOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert!(!c.galois_ring.lattice_full);
    }

    #[test]
    fn one_sided_support_in_group_cone_fails() {
        let s = line_setting(Direction::Both);
        let x = SkewElement::term(RatFunc::one(s.table()), ShiftOp::from(vec![1]));
        let c = check_galois_ring(&s, std::slice::from_ref(&x), &CertOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        let s = line_setting(Direction::Forward);
        let c = check_galois_ring(&s, &[x], &CertOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
    }

    #[test]
    fn symmetric_denominator_does_not_clear() {
        let t = Arc::new(VarTable::with_blocks(&[2], false, vec![]).unwrap());
        let g = GroupSpec::new(&t, vec![BlockKind::A]).unwrap();
        let m = MonoidSpec::new(vec![0, 1], ShiftMode::Additive, vec![Direction::Both; 2]).unwrap();
        let s = Setting::new("s2", g, m).unwrap();
        let a = parse_ratfunc(&t, "1/(x[1]+x[2])").unwrap();
        let x = SkewElement::orbit_sum(&a, &ShiftOp::unit(2, 0, 1), &s).unwrap();
        assert!(!clears(&x, s.d_sgn(), Side::Left, &s).clears);
        let b = parse_ratfunc(&t, "1/(x[1]-x[2])").unwrap();
        let y = SkewElement::orbit_sum(&RatFunc::one(&t), &ShiftOp::unit(2, 0, 1), &s).unwrap().left_mul_coeff(&b);
        assert!(clears(&y, s.d_sgn(), Side::Left, &s).clears);
    }

    #[test]
    fn principal_certificates_replay() {
        let f = make_xf(2, &FSpec::PowerSum(1), Placement::CoefficientLeft).unwrap();
        let c = certify_family(&f, &CertOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Pass, "{c:?}");
        assert!(c.replay(&f.setting, &f.generators).unwrap());
        let json = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        let other = make_xf(2, &FSpec::PowerSum(2), Placement::CoefficientLeft).unwrap();
        assert!(!c.replay(&other.setting, &other.generators).unwrap());

        let o = make_ogz(&[1, 2], None, Placement::CoefficientLeft).unwrap();
        let c = certify_family(&o, &CertOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Pass, "{c:?}");
        assert!(c.replay(&o.setting, &o.generators).unwrap());
    }

    #[test]
    fn dedekind_small_cases() {
        let s = line_setting(Direction::Both);
        let w = dedekind_witness(&s, &[ShiftOp::identity(1)], 4, 1).unwrap();
        assert!(w.gammas[0].is_one());
        assert!(w.determinant.is_one());
        let w = dedekind_witness(&s, &[ShiftOp::identity(1), ShiftOp::unit(1, 0, 1)], 4, 1).unwrap();
        assert_eq!(w.gammas[1].to_string(), "x[1,1]");
        assert_eq!(w.determinant, Poly::from_int(s.table(), -1));
        let shifts: Vec<ShiftOp> = (0..4).map(|k| ShiftOp::unit(1, 0, k)).collect();
        let w = dedekind_witness(&s, &shifts, 4, 1).unwrap();
        assert_eq!(w.determinant, cofactor(&w.matrix));
        assert!(!w.determinant.is_zero());
        assert!(matches!(
            dedekind_witness(&s, &[ShiftOp::identity(1), ShiftOp::identity(1)], 4, 1),
            Err(Error::InvalidConfig(_))
        ));
        // four shifts need a cubic over one variable
        assert!(matches!(dedekind_witness(&s, &shifts, 2, 1), Err(Error::SearchExhausted { degree: 2 })));
    }
}
