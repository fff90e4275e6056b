//! Constructors for the concrete operator families: symmetric difference
//! operators `X_f`, orthogonal Gelfand-Zeitlin algebras, their quantum
//! deformations, and finite W-algebras of type A.
//!
//! Each family is described by a difference operator `Σ δ^{±1} · A`. The
//! placement selects whether `A` sits to the left of the shift (principal,
//! right modules) or the shift to the left of `A` (co-principal, left
//! modules); the two choices are exchanged by the dagger.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{parse_ratfunc, Central, Monomial, Poly, RatFunc, Rational, VarId, VarTable};
use crate::error::{Error, Result};
use crate::setting::{Direction, MonoidSpec, Setting, ShiftMode};
use crate::skew::{ShiftOp, SkewElement};
use crate::symmetry::{elementary_symmetric, q_difference, ratio_difference, BlockKind, GroupSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    /// `A · δ`.
    CoefficientLeft,
    /// `δ · A = δ(A) δ`.
    ShiftLeft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Principal,
    CoPrincipal,
}

impl Placement {
    pub fn order_kind(self) -> OrderKind {
        match self {
            Placement::CoefficientLeft => OrderKind::Principal,
            Placement::ShiftLeft => OrderKind::CoPrincipal,
        }
    }
}

/// Choice of the equivariant tuple `f` for `X_f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FSpec {
    /// `f_i = x_i^k`.
    Power(u32),
    /// `f_i = x_1^k + ... + x_n^k` for every `i`.
    PowerSum(u32),
    /// Explicit expressions `f_1, ..., f_n`.
    Custom(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyConfig {
    Xf {
        n: usize,
        f: FSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        placement: Option<Placement>,
    },
    Ogz {
        r: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        j: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        placement: Option<Placement>,
    },
    Qogz {
        r: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        j: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        placement: Option<Placement>,
    },
    FiniteW {
        pi: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        j: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        placement: Option<Placement>,
    },
}

impl FamilyConfig {
    pub fn build(&self) -> Result<Family> {
        match self {
            FamilyConfig::Xf { n, f, placement } => make_xf(*n, f, placement.unwrap_or(Placement::CoefficientLeft)),
            FamilyConfig::Ogz { r, j, placement } => {
                make_ogz(r, j.as_deref(), placement.unwrap_or(Placement::CoefficientLeft))
            }
            FamilyConfig::Qogz { r, j, placement } => {
                make_qogz(r, j.as_deref(), placement.unwrap_or(Placement::ShiftLeft))
            }
            FamilyConfig::FiniteW { pi, j, placement } => {
                make_finite_w(pi, j.as_deref(), placement.unwrap_or(Placement::CoefficientLeft))
            }
        }
    }
}

/// Generating series `B(u) = Σ_k u^k B_k` of a finite W-algebra.
#[derive(Debug, Clone)]
pub struct USeries {
    pub label: String,
    pub series: SkewElement,
    /// `B_0, B_1, ...` (zero coefficients kept so the index is the power).
    pub coefficients: Vec<SkewElement>,
}

#[derive(Debug, Clone)]
pub struct Family {
    pub setting: Setting,
    pub generators: Vec<SkewElement>,
    pub labels: Vec<String>,
    pub placement: Placement,
    /// Finite W-algebras only: the `B^±_r(u)` series.
    pub u_series: Vec<USeries>,
    /// Finite W-algebras only: coefficients of `A_r(u) = Π (u + x_ri)`,
    /// lowest power first.
    pub a_series: Vec<Vec<Poly>>,
}

impl Family {
    pub fn order_kind(&self) -> OrderKind {
        self.placement.order_kind()
    }

    pub fn generator(&self, label: &str) -> Option<&SkewElement> {
        self.labels.iter().position(|l| l == label).map(|i| &self.generators[i])
    }
}

/// `coeff · δ` or `δ · coeff` in left-normal form.
fn placed(setting: &Setting, placement: Placement, coeff: RatFunc, mu: ShiftOp) -> (ShiftOp, RatFunc) {
    match placement {
        Placement::CoefficientLeft => (mu, coeff),
        Placement::ShiftLeft => {
            let moved = setting.apply_shift(&mu, &coeff);
            (mu, moved)
        }
    }
}

fn check_invariant(family: &Family) -> Result<()> {
    for (i, x) in family.generators.iter().enumerate() {
        if !x.is_invariant(&family.setting) {
            return Err(Error::NonInvariantGenerator { index: i });
        }
    }
    Ok(())
}

fn parse_j(j: Option<&[usize]>, n: usize) -> Result<BTreeSet<usize>> {
    let full: BTreeSet<usize> = (1..n).collect();
    let Some(j) = j else { return Ok(full) };
    let set: BTreeSet<usize> = j.iter().copied().collect();
    if set.len() != j.len() {
        return Err(Error::InvalidConfig("J contains duplicates".into()));
    }
    if let Some(bad) = set.iter().find(|k| !full.contains(k)) {
        return Err(Error::InvalidConfig(format!("J entry {bad} outside 1..{}", n.saturating_sub(1))));
    }
    Ok(set)
}

fn check_signature(r: &[usize], what: &str) -> Result<()> {
    if r.is_empty() || r.contains(&0) {
        return Err(Error::InvalidConfig(format!("{what} must be a nonempty tuple of positive integers")));
    }
    Ok(())
}

/// `X_f = Σ_i f_i / Π_{j≠i}(x_j − x_i) · μ_i` where `μ_i(x_j) = x_j + δ_ij`.
/// The raising shift is stored as `−e_i` under the convention `x -> x − s`,
/// so the cone points backward.
pub fn make_xf(n: usize, f: &FSpec, placement: Placement) -> Result<Family> {
    if n == 0 {
        return Err(Error::InvalidConfig("n must be positive".into()));
    }
    let table = Arc::new(VarTable::with_blocks(&[n], false, vec![])?);
    let group = GroupSpec::new(&table, vec![BlockKind::A])?;
    let monoid = MonoidSpec::new((0..n).collect(), ShiftMode::Additive, vec![Direction::Backward; n])?;
    let setting = Setting::new(format!("xf(n={n})"), group, monoid)?;
    let x = |i: usize| Poly::var(&table, i);
    let fs: Vec<RatFunc> = match f {
        FSpec::Power(k) => (0..n).map(|i| RatFunc::from(x(i).pow(*k))).collect(),
        FSpec::PowerSum(k) => {
            let p = (0..n).fold(Poly::zero(&table), |acc, i| &acc + &x(i).pow(*k));
            vec![RatFunc::from(p); n]
        }
        FSpec::Custom(exprs) => {
            if exprs.len() != n {
                return Err(Error::InvalidConfig(format!("expected {n} entries in f, got {}", exprs.len())));
            }
            exprs
                .iter()
                .map(|e| parse_ratfunc(&table, e).map_err(Error::from))
                .collect::<Result<_>>()?
        }
    };
    for g in setting.group().generators() {
        for i in 0..n {
            if g.apply(&fs[i]) != fs[g.perm()[i]] {
                return Err(Error::EquivarianceViolation(format!(
                    "σ(f_{}) differs from f_{} for σ = {:?}",
                    i + 1,
                    g.perm()[i] + 1,
                    g.perm()
                )));
            }
        }
    }
    let mut terms = Vec::with_capacity(n);
    for i in 0..n {
        let mut den = Poly::one(&table);
        for j in (0..n).filter(|&j| j != i) {
            den = &den * &(&x(j) - &x(i));
        }
        let coeff = fs[i].div(&RatFunc::from(den))?;
        terms.push(placed(&setting, placement, coeff, ShiftOp::unit(n, i, -1)));
    }
    let gen = SkewElement::from_terms(&table, terms);
    let family = Family {
        setting,
        generators: vec![gen],
        labels: vec!["X_f".into()],
        placement,
        u_series: vec![],
        a_series: vec![],
    };
    check_invariant(&family)?;
    Ok(family)
}

/// Block-variable rows `x[k,1..r_k]`; `None` for row 0 and row n+1.
fn row(table: &VarTable, k: isize) -> Vec<VarId> {
    if k < 1 || k as usize > table.blocks().len() {
        return vec![];
    }
    table.block_vars(k as usize - 1).collect()
}

fn ogz_like_cone(n: usize, sizes: &[usize], j: &BTreeSet<usize>) -> (Vec<VarId>, Vec<Direction>) {
    let mut mobile = Vec::new();
    let mut cone = Vec::new();
    let mut offset = 0;
    for k in 1..n {
        for _ in 0..sizes[k - 1] {
            mobile.push(offset);
            cone.push(if j.contains(&k) { Direction::Both } else { Direction::Forward });
            offset += 1;
        }
    }
    (mobile, cone)
}

/// Rational OGZ generators `X_k^± = Σ_i (δ^{ki})^{±1} · A^±_ki` with
/// `A^±_ki = ∓ Π_j (x_{k±1,j} − x_ki) / Π_{j≠i} (x_kj − x_ki)`.
pub fn make_ogz(r: &[usize], j: Option<&[usize]>, placement: Placement) -> Result<Family> {
    check_signature(r, "r")?;
    let n = r.len();
    let j = parse_j(j, n)?;
    let table = Arc::new(VarTable::with_blocks(r, false, vec![])?);
    let group = GroupSpec::new(&table, vec![BlockKind::A; n])?;
    let (mobile, cone) = ogz_like_cone(n, r, &j);
    let monoid = MonoidSpec::new(mobile, ShiftMode::Additive, cone)?;
    let setting = Setting::new(format!("ogz(r={})", join(r)), group, monoid)?;
    let x = |v: VarId| Poly::var(&table, v);
    let mut generators = Vec::new();
    let mut labels = Vec::new();
    for k in 1..n {
        for sign in [1i32, -1] {
            if sign < 0 && !j.contains(&k) {
                continue;
            }
            let this = row(&table, k as isize);
            let other = row(&table, k as isize + sign as isize);
            let mut terms = Vec::new();
            for &xi in &this {
                let mut num = Poly::constant(&table, Rational::from_integer((-sign).into()));
                for &y in &other {
                    num = &num * &(&x(y) - &x(xi));
                }
                let mut den = Poly::one(&table);
                for &xj in this.iter().filter(|&&v| v != xi) {
                    den = &den * &(&x(xj) - &x(xi));
                }
                let coeff = RatFunc::new(num, den)?;
                terms.push(placed(&setting, placement, coeff, setting.unit_shift(xi, sign)));
            }
            generators.push(SkewElement::from_terms(&table, terms));
            labels.push(format!("X{}_{}", if sign > 0 { '+' } else { '-' }, k));
        }
    }
    let family = Family { setting, generators, labels, placement, u_series: vec![], a_series: vec![] };
    check_invariant(&family)?;
    Ok(family)
}

/// Quantum OGZ generators with multiplicative shifts `x -> q^{∓1} x`,
/// type D groups and
/// `A^±_ki = ∓ x_ki^{−(r_{k±1} − r_k)} Π_j [x_{k±1,j}/x_ki]_q / Π_{j≠i} [x_kj/x_ki]_q`,
/// where `[t]_q = (t − t⁻¹)/(q − q⁻¹)` and `r_0 = 0`.
pub fn make_qogz(r: &[usize], j: Option<&[usize]>, placement: Placement) -> Result<Family> {
    check_signature(r, "r")?;
    let n = r.len();
    let j = parse_j(j, n)?;
    let table = Arc::new(VarTable::with_blocks(r, true, vec![Central::Q])?);
    let q = table.central(Central::Q).expect("q present");
    let group = GroupSpec::new(&table, vec![BlockKind::D; n])?;
    let (mobile, cone) = ogz_like_cone(n, r, &j);
    let monoid = MonoidSpec::new(mobile, ShiftMode::Multiplicative, cone)?;
    let setting = Setting::new(format!("qogz(r={})", join(r)), group, monoid)?;
    let qq = q_difference(&table, q);
    let rk = |k: isize| if k < 1 || k as usize > n { 0 } else { r[k as usize - 1] as i32 };
    let mut generators = Vec::new();
    let mut labels = Vec::new();
    for k in 1..n {
        for sign in [1i32, -1] {
            if sign < 0 && !j.contains(&k) {
                continue;
            }
            let this = row(&table, k as isize);
            let other = row(&table, k as isize + sign as isize);
            let exponent = -(rk(k as isize + sign as isize) - rk(k as isize));
            let mut terms = Vec::new();
            for &xi in &this {
                let mut num = Poly::monomial(
                    &table,
                    Monomial::var(table.nvars(), xi, exponent),
                    Rational::from_integer((-sign).into()),
                );
                for &y in &other {
                    num = &num * &ratio_difference(&table, y, xi);
                }
                let mut den = Poly::one(&table);
                for &xj in this.iter().filter(|&&v| v != xi) {
                    den = &den * &ratio_difference(&table, xj, xi);
                }
                // (q − q⁻¹) normalizations: one per numerator and denominator factor
                let excess = other.len() as i32 - (this.len() as i32 - 1);
                let (num, den) = if excess >= 0 {
                    (num, &den * &qq.pow(excess as u32))
                } else {
                    (&num * &qq.pow((-excess) as u32), den)
                };
                let coeff = RatFunc::new(num, den)?;
                terms.push(placed(&setting, placement, coeff, setting.unit_shift(xi, sign)));
            }
            generators.push(SkewElement::from_terms(&table, terms));
            labels.push(format!("X{}_{}", if sign > 0 { '+' } else { '-' }, k));
        }
    }
    let family = Family { setting, generators, labels, placement, u_series: vec![], a_series: vec![] };
    check_invariant(&family)?;
    Ok(family)
}

/// Finite W-algebra `W(π)`: row `r` carries `m_r = p_1 + ... + p_r`
/// variables permuted by `S_{m_r}`. For a row variable `a`,
/// `X^±_a(u) = ∓ Π_{b≠a}(u + x_b) Π_{y ∈ row r±1}(y − x_a) / Π_{b≠a}(x_b − x_a)`
/// and `B^±_r(u) = Σ_a δ_a^{±1} · X^±_a(u)`. The flat generators are the
/// coefficients of the powers of `u`.
pub fn make_finite_w(pi: &[usize], j: Option<&[usize]>, placement: Placement) -> Result<Family> {
    check_signature(pi, "π")?;
    if pi.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidConfig("π must be weakly increasing".into()));
    }
    let n = pi.len();
    let j = parse_j(j, n)?;
    let sizes: Vec<usize> = pi
        .iter()
        .scan(0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let table = Arc::new(VarTable::with_blocks(&sizes, false, vec![Central::U])?);
    let u = table.central(Central::U).expect("u present");
    let group = GroupSpec::new(&table, vec![BlockKind::A; n])?;
    let (mobile, cone) = ogz_like_cone(n, &sizes, &j);
    let monoid = MonoidSpec::new(mobile, ShiftMode::Additive, cone)?;
    let setting = Setting::new(format!("finite_w(pi={})", join(pi)), group, monoid)?;
    let x = |v: VarId| Poly::var(&table, v);
    let uu = Poly::var(&table, u);

    let mut generators = Vec::new();
    let mut labels = Vec::new();
    let mut u_series = Vec::new();
    for k in 1..n {
        for sign in [1i32, -1] {
            if sign < 0 && !j.contains(&k) {
                continue;
            }
            let this = row(&table, k as isize);
            let other = row(&table, k as isize + sign as isize);
            let mut terms = Vec::new();
            for &a in &this {
                let mut num = Poly::constant(&table, Rational::from_integer((-sign).into()));
                let mut den = Poly::one(&table);
                for &b in this.iter().filter(|&&b| b != a) {
                    num = &num * &(&uu + &x(b));
                    den = &den * &(&x(b) - &x(a));
                }
                for &y in &other {
                    num = &num * &(&x(y) - &x(a));
                }
                let coeff = RatFunc::new(num, den)?;
                terms.push(placed(&setting, placement, coeff, setting.unit_shift(a, sign)));
            }
            let series = SkewElement::from_terms(&table, terms);
            let degree = this.len() - 1;
            let mut coefficients = vec![SkewElement::zero(&table); degree + 1];
            for (mu, c) in series.terms() {
                for (p, cp) in c.coefficients_in_var(u)?.into_iter().enumerate() {
                    coefficients[p] = coefficients[p].add(&SkewElement::term(cp, mu.clone()));
                }
            }
            let label = format!("B{}_{}", if sign > 0 { '+' } else { '-' }, k);
            for (p, c) in coefficients.iter().enumerate() {
                if !c.is_zero() {
                    generators.push(c.clone());
                    labels.push(format!("{label}[u^{p}]"));
                }
            }
            u_series.push(USeries { label, series, coefficients });
        }
    }
    let mut a_series = Vec::new();
    for k in 1..=n {
        let xs: Vec<Poly> = row(&table, k as isize).into_iter().map(x).collect();
        // Π (u + x) = Σ_p e_{m−p}(x) u^p
        let e = elementary_symmetric(&table, &xs);
        a_series.push(e.into_iter().rev().collect());
    }
    let family = Family { setting, generators, labels, placement, u_series, a_series };
    check_invariant(&family)?;
    Ok(family)
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_ratfunc;

    fn rf(s: &Setting, src: &str) -> RatFunc {
        parse_ratfunc(s.table(), src).unwrap()
    }

    #[test]
    fn xf_small_cases() {
        let f = make_xf(1, &FSpec::Custom(vec!["1".into()]), Placement::CoefficientLeft).unwrap();
        let s = &f.setting;
        assert_eq!(f.generators[0], SkewElement::term(RatFunc::one(s.table()), ShiftOp::unit(1, 0, -1)));
        let f = make_xf(2, &FSpec::Custom(vec!["1".into(), "1".into()]), Placement::CoefficientLeft).unwrap();
        let s = &f.setting;
        let expected = SkewElement::from_terms(
            s.table(),
            vec![
                (ShiftOp::unit(2, 0, -1), rf(s, "1/(x[2]-x[1])")),
                (ShiftOp::unit(2, 1, -1), rf(s, "1/(x[1]-x[2])")),
            ],
        );
        assert_eq!(f.generators[0], expected);
        // μ_1 raises x_1
        let mu = SkewElement::term(RatFunc::one(s.table()), ShiftOp::unit(2, 0, -1));
        assert_eq!(mu.evaluate(&rf(s, "x[1]"), s), rf(s, "x[1]+1"));
        assert!(matches!(
            make_xf(2, &FSpec::Custom(vec!["x[1]".into(), "1".into()]), Placement::CoefficientLeft),
            Err(Error::EquivarianceViolation(_))
        ));
    }

    #[test]
    fn xf_evaluation_formula() {
        let f = make_xf(3, &FSpec::Power(2), Placement::CoefficientLeft).unwrap();
        let s = &f.setting;
        let g = rf(s, "x[1]*x[2]^2 + x[3]");
        let mut expected = RatFunc::zero(s.table());
        for i in 1..=3 {
            let mut d = String::from("1");
            for j in (1..=3).filter(|&j| j != i) {
                d.push_str(&format!("*(x[{j}]-x[{i}])"));
            }
            let shifted = g.to_string().replace(&format!("x[1,{i}]"), &format!("(x[1,{i}]+1)"));
            expected = &expected + &rf(s, &format!("x[{i}]^2*({shifted})/({d})"));
        }
        assert_eq!(f.generators[0].evaluate(&g, s), expected);
    }

    #[test]
    fn ogz_single_terms() {
        let f = make_ogz(&[1, 1], None, Placement::CoefficientLeft).unwrap();
        let s = &f.setting;
        let xp = f.generator("X+_1").unwrap();
        assert_eq!(*xp, SkewElement::term(rf(s, "-(x[2,1]-x[1,1])"), ShiftOp::unit(1, 0, 1)));
        let xm = f.generator("X-_1").unwrap();
        assert_eq!(*xm, SkewElement::term(rf(s, "1"), ShiftOp::unit(1, 0, -1)));
        assert_eq!(f.setting.monoid().cone(), &[Direction::Both]);
        let para = make_ogz(&[1, 2, 3], Some(&[2]), Placement::CoefficientLeft).unwrap();
        assert_eq!(para.generators.len(), 3);
        assert_eq!(
            para.setting.monoid().cone(),
            &[Direction::Forward, Direction::Both, Direction::Both]
        );
        assert!(make_ogz(&[1, 0], None, Placement::CoefficientLeft).is_err());
        assert!(make_ogz(&[1, 2], Some(&[2]), Placement::CoefficientLeft).is_err());
    }

    #[test]
    fn qogz_invariance_and_shape() {
        for r in [vec![1, 1], vec![1, 2], vec![2, 2]] {
            let f = make_qogz(&r, None, Placement::ShiftLeft).unwrap();
            assert_eq!(f.generators.len(), 2);
            for x in &f.generators {
                assert!(x.is_invariant(&f.setting));
            }
        }
    }

    #[test]
    fn finite_w_matches_ogz_for_unit_shape() {
        let w = make_finite_w(&[1, 1], None, Placement::CoefficientLeft).unwrap();
        let o = make_ogz(&[1, 2], None, Placement::CoefficientLeft).unwrap();
        assert_eq!(w.labels, vec!["B+_1[u^0]", "B-_1[u^0]"]);
        for (a, b) in w.generators.iter().zip(&o.generators) {
            assert_eq!(a.to_string(), b.to_string());
        }
        let w = make_finite_w(&[1, 2], None, Placement::CoefficientLeft).unwrap();
        assert_eq!(w.u_series[0].coefficients.len(), 1);
        assert!(make_finite_w(&[2, 1], None, Placement::CoefficientLeft).is_err());
        let w = make_finite_w(&[2, 2], None, Placement::CoefficientLeft).unwrap();
        // X(u) has u-degree m_1 − 1 = 1
        assert_eq!(w.u_series[0].coefficients.len(), 2);
        for coeffs in &w.a_series {
            for c in coeffs {
                assert!(w.setting.group().is_invariant_poly(c));
            }
        }
    }

    #[test]
    fn config_round_trip() {
        let c: FamilyConfig = serde_json::from_str(r#"{"family":"ogz","r":[1,2],"j":[1]}"#).unwrap();
        assert_eq!(c, FamilyConfig::Ogz { r: vec![1, 2], j: Some(vec![1]), placement: None });
        let c: FamilyConfig = serde_json::from_str(r#"{"family":"xf","n":3,"f":{"power_sum":2}}"#).unwrap();
        assert!(c.build().is_ok());
        assert!(serde_json::from_str::<FamilyConfig>(r#"{"family":"ogz","r":[1,2],"bogus":1}"#).is_err());
    }
}
