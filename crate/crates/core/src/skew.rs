//! The skew monoid ring `L∗M`: finite sums `Σ x_μ μ` with rational-function
//! coefficients written to the left of shift operators, multiplied by
//! `aμ · bν = a μ(b) μν`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{parse_ratfunc, RatFunc, VarTable};
use crate::error::{Error, Result};
use crate::setting::Setting;
use crate::symmetry::GroupElement;

/// Element of the shift monoid: integer vector over the mobile coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShiftOp(Vec<i32>);

impl ShiftOp {
    pub fn identity(dim: usize) -> Self {
        ShiftOp(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize, k: i32) -> Self {
        let mut v = vec![0; dim];
        v[i] = k;
        ShiftOp(v)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&s| s == 0)
    }

    pub fn compose(&self, other: &ShiftOp) -> ShiftOp {
        ShiftOp(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> ShiftOp {
        ShiftOp(self.0.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, k: i32) -> ShiftOp {
        ShiftOp(self.0.iter().map(|a| a * k).collect())
    }
}

impl From<Vec<i32>> for ShiftOp {
    fn from(v: Vec<i32>) -> Self {
        ShiftOp(v)
    }
}

impl fmt::Display for ShiftOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// One serialized term `coeff · shift`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewTerm {
    pub shift: Vec<i32>,
    pub coeff: String,
}

/// `Σ x_μ μ` in left-normal form. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewElement {
    table: Arc<VarTable>,
    terms: BTreeMap<ShiftOp, RatFunc>,
}

impl fmt::Debug for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewElement({})", self)
    }
}

impl fmt::Display for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(mu, c)| format!("({}){}", c, mu)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl SkewElement {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        SkewElement { table: Arc::clone(table), terms: BTreeMap::new() }
    }

    pub fn one(setting: &Setting) -> Self {
        Self::term(RatFunc::one(setting.table()), setting.identity_shift())
    }

    /// `f · μ`.
    pub fn term(f: RatFunc, mu: ShiftOp) -> Self {
        let table = Arc::clone(f.table());
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(mu, f);
        }
        SkewElement { table, terms }
    }

    /// Element of the coefficient field, `f · e`.
    pub fn scalar(setting: &Setting, f: RatFunc) -> Self {
        Self::term(f, setting.identity_shift())
    }

    /// Sum of the given terms; repeated shifts are added.
    pub fn from_terms<I: IntoIterator<Item = (ShiftOp, RatFunc)>>(table: &Arc<VarTable>, items: I) -> Self {
        let mut out = SkewElement::zero(table);
        for (mu, f) in items {
            out.add_term(mu, &f);
        }
        out
    }

    fn add_term(&mut self, mu: ShiftOp, f: &RatFunc) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mu) {
            Entry::Vacant(e) => {
                e.insert(f.clone());
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + f;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn terms(&self) -> &BTreeMap<ShiftOp, RatFunc> {
        &self.terms
    }

    pub fn coefficient(&self, mu: &ShiftOp) -> Option<&RatFunc> {
        self.terms.get(mu)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Shifts with nonzero coefficient, in increasing order.
    pub fn support(&self) -> Vec<ShiftOp> {
        self.terms.keys().cloned().collect()
    }

    pub fn add(&self, other: &SkewElement) -> SkewElement {
        let mut out = self.clone();
        for (mu, f) in &other.terms {
            out.add_term(mu.clone(), f);
        }
        out
    }

    pub fn neg(&self) -> SkewElement {
        SkewElement {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(mu, f)| (mu.clone(), -f)).collect(),
        }
    }

    pub fn sub(&self, other: &SkewElement) -> SkewElement {
        self.add(&other.neg())
    }

    /// `f · X`.
    pub fn left_mul_coeff(&self, f: &RatFunc) -> SkewElement {
        SkewElement::from_terms(&self.table, self.terms.iter().map(|(mu, c)| (mu.clone(), f * c)))
    }

    /// `X · f = Σ x_μ μ(f) μ`.
    pub fn right_mul_coeff(&self, f: &RatFunc, setting: &Setting) -> SkewElement {
        SkewElement::from_terms(
            &self.table,
            self.terms.iter().map(|(mu, c)| (mu.clone(), c * &setting.apply_shift(mu, f))),
        )
    }

    /// `(Σ a_μ μ)(Σ b_ν ν) = Σ a_μ μ(b_ν) μν`.
    pub fn mul(&self, other: &SkewElement, setting: &Setting) -> SkewElement {
        let mut out = SkewElement::zero(&self.table);
        for (mu, a) in &self.terms {
            let sub = setting.shift_substitution(mu);
            for (nu, b) in &other.terms {
                let moved = if mu.is_identity() { b.clone() } else { sub.apply(b) };
                out.add_term(mu.compose(nu), &(a * &moved));
            }
        }
        out
    }

    /// `g(X) = Σ g(x_μ) (g μ g⁻¹)`.
    pub fn act(&self, g: &GroupElement, setting: &Setting) -> SkewElement {
        SkewElement::from_terms(
            &self.table,
            self.terms.iter().map(|(mu, c)| (setting.conjugate_shift(g, mu), g.apply(c))),
        )
    }

    /// Fixed by every group generator.
    pub fn is_invariant(&self, setting: &Setting) -> bool {
        setting.group().generators().iter().all(|g| self.act(g, setting) == *self)
    }

    /// `X(a) = Σ x_μ μ(a)`.
    pub fn evaluate(&self, a: &RatFunc, setting: &Setting) -> RatFunc {
        let parts: Vec<RatFunc> = self.terms.iter().map(|(mu, c)| c * &setting.apply_shift(mu, a)).collect();
        RatFunc::sum(&self.table, parts.iter())
    }

    /// Anti-automorphism fixing coefficients and inverting shifts:
    /// `(a μ)† = μ⁻¹ · a = μ⁻¹(a) μ⁻¹`. Images of one-sided cones live in the
    /// opposite cone; see [`dagger_checked`](Self::dagger_checked).
    pub fn dagger(&self, setting: &Setting) -> SkewElement {
        SkewElement::from_terms(
            &self.table,
            self.terms.iter().map(|(mu, c)| {
                let inv = mu.inverse();
                let moved = setting.apply_shift(&inv, c);
                (inv, moved)
            }),
        )
    }

    /// Dagger that insists every inverted shift is admissible in the
    /// setting's own cone.
    pub fn dagger_checked(&self, setting: &Setting) -> Result<SkewElement> {
        for mu in self.terms.keys() {
            let inv = mu.inverse();
            if !setting.is_admissible(&inv) {
                return Err(Error::NonInvertibleShift { shift: mu.to_string() });
            }
        }
        Ok(self.dagger(setting))
    }

    /// Coefficients written to the right of the shifts:
    /// `X = Σ μ · μ⁻¹(x_μ)`.
    pub fn right_normal_form(&self, setting: &Setting) -> BTreeMap<ShiftOp, RatFunc> {
        self.terms
            .iter()
            .map(|(mu, c)| (mu.clone(), setting.apply_shift(&mu.inverse(), c)))
            .collect()
    }

    /// Inverse of [`right_normal_form`](Self::right_normal_form).
    pub fn from_right_normal_form(map: &BTreeMap<ShiftOp, RatFunc>, setting: &Setting) -> SkewElement {
        SkewElement::from_terms(
            setting.table(),
            map.iter().map(|(mu, c)| (mu.clone(), setting.apply_shift(mu, c))),
        )
    }

    pub fn check_admissible(&self, setting: &Setting) -> Result<()> {
        self.terms.keys().try_for_each(|mu| setting.check_admissible(mu))
    }

    pub fn to_json_terms(&self) -> Vec<SkewTerm> {
        self.terms
            .iter()
            .map(|(mu, c)| SkewTerm { shift: mu.coords().to_vec(), coeff: c.to_string() })
            .collect()
    }

    pub fn from_json_terms(terms: &[SkewTerm], setting: &Setting) -> Result<SkewElement> {
        let mut items = Vec::with_capacity(terms.len());
        for t in terms {
            if t.shift.len() != setting.dim() {
                return Err(Error::Malformed(format!(
                    "shift of length {} in a setting of dimension {}",
                    t.shift.len(),
                    setting.dim()
                )));
            }
            let c = parse_ratfunc(setting.table(), &t.coeff)?;
            items.push((ShiftOp::from(t.shift.clone()), c));
        }
        Ok(SkewElement::from_terms(setting.table(), items))
    }

    /// The invariant orbit sum `[a μ] = Σ_{g ∈ G/G_μ} g(a) (g μ g⁻¹)`.
    /// Requires `a` fixed by the stabilizer of `μ`.
    pub fn orbit_sum(a: &RatFunc, mu: &ShiftOp, setting: &Setting) -> Result<SkewElement> {
        for g in setting.stabilizer_generators(mu) {
            if g.apply(a) != *a {
                return Err(Error::StabilizerViolation { shift: mu.to_string(), coeff: a.to_string() });
            }
        }
        let gens = setting.group().generators();
        let mut reps: BTreeMap<ShiftOp, GroupElement> = BTreeMap::new();
        let mut queue = VecDeque::new();
        reps.insert(mu.clone(), setting.group().identity());
        queue.push_back(mu.clone());
        while let Some(nu) = queue.pop_front() {
            let h = reps[&nu].clone();
            for s in &gens {
                let next = setting.conjugate_shift(s, &nu);
                if !reps.contains_key(&next) {
                    reps.insert(next.clone(), s.compose(&h));
                    queue.push_back(next);
                }
            }
        }
        Ok(SkewElement::from_terms(setting.table(), reps.into_iter().map(|(nu, h)| (nu, h.apply(a)))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Central, VarTable};
    use crate::setting::{Direction, MonoidSpec, ShiftMode};
    use crate::symmetry::{BlockKind, GroupSpec};

    fn additive(n: usize) -> Setting {
        let t = Arc::new(VarTable::with_blocks(&[n], false, vec![]).unwrap());
        let g = GroupSpec::new(&t, vec![BlockKind::A]).unwrap();
        let m = MonoidSpec::new((0..n).collect(), ShiftMode::Additive, vec![Direction::Both; n]).unwrap();
        Setting::new("test", g, m).unwrap()
    }

    fn rf(s: &Setting, src: &str) -> RatFunc {
        parse_ratfunc(s.table(), src).unwrap()
    }

    #[test]
    fn product_rule() {
        let s = additive(1);
        let mu = s.unit_shift(0, 1);
        let x = SkewElement::term(rf(&s, "x[1]"), mu.clone());
        let sq = x.mul(&x, &s);
        assert_eq!(sq, SkewElement::term(rf(&s, "x[1]*(x[1]-1)"), mu.pow(2)));
        let one = SkewElement::one(&s);
        assert_eq!(one.mul(&x, &s), x);
        assert_eq!(x.mul(&one, &s), x);
        let f = SkewElement::scalar(&s, rf(&s, "1/(x[1]+2)"));
        let g = SkewElement::scalar(&s, rf(&s, "x[1]^2"));
        assert_eq!(f.mul(&g, &s), SkewElement::scalar(&s, rf(&s, "x[1]^2/(x[1]+2)")));
    }

    #[test]
    fn group_action_moves_shifts() {
        let s = additive(2);
        let swap = &s.group().generators()[0];
        let x = SkewElement::term(rf(&s, "x[1]"), s.unit_shift(0, 1));
        assert_eq!(x.act(swap, &s), SkewElement::term(rf(&s, "x[2]"), s.unit_shift(1, 1)));
        assert_eq!(x.act(&s.group().identity(), &s), x);
    }

    #[test]
    fn evaluation_and_support() {
        let s = additive(1);
        let mu = SkewElement::term(RatFunc::one(s.table()), s.unit_shift(0, 1));
        assert_eq!(mu.evaluate(&rf(&s, "x[1]"), &s), rf(&s, "x[1]-1"));
        assert!(mu.evaluate(&rf(&s, "0"), &s).is_zero());
        assert!(SkewElement::zero(s.table()).support().is_empty());
        assert_eq!(mu.support(), vec![s.unit_shift(0, 1)]);
    }

    #[test]
    fn dagger_examples() {
        let s = additive(1);
        let x = SkewElement::term(rf(&s, "x[1]"), s.unit_shift(0, 1));
        assert_eq!(x.dagger(&s), SkewElement::term(rf(&s, "x[1]+1"), s.unit_shift(0, -1)));
        assert_eq!(x.dagger(&s).dagger(&s), x);
        let c = SkewElement::scalar(&s, rf(&s, "x[1]^3"));
        assert_eq!(c.dagger(&s), c);
        let y = SkewElement::term(rf(&s, "1/(x[1]+3)"), s.unit_shift(0, 2));
        assert_eq!(x.mul(&y, &s).dagger(&s), y.dagger(&s).mul(&x.dagger(&s), &s));
    }

    #[test]
    fn dagger_checked_on_one_sided_cone() {
        let t = Arc::new(VarTable::with_blocks(&[1], false, vec![]).unwrap());
        let g = GroupSpec::new(&t, vec![BlockKind::A]).unwrap();
        let m = MonoidSpec::new(vec![0], ShiftMode::Additive, vec![Direction::Forward]).unwrap();
        let s = Setting::new("cone", g, m).unwrap();
        let x = SkewElement::term(rf(&s, "x[1]"), s.unit_shift(0, 1));
        assert!(matches!(x.dagger_checked(&s), Err(Error::NonInvertibleShift { .. })));
        assert!(x.dagger(&s).check_admissible(&s.opposite()).is_ok());
    }

    #[test]
    fn orbit_sums_and_stabilizers() {
        let s2 = additive(2);
        let mu1 = s2.unit_shift(0, 1);
        let sum = SkewElement::orbit_sum(&RatFunc::one(s2.table()), &mu1, &s2).unwrap();
        let expected = SkewElement::from_terms(
            s2.table(),
            vec![(mu1.clone(), RatFunc::one(s2.table())), (s2.unit_shift(1, 1), RatFunc::one(s2.table()))],
        );
        assert_eq!(sum, expected);
        assert!(sum.is_invariant(&s2));
        assert!(s2.stabilizer_generators(&mu1).is_empty());
        assert_eq!(s2.stabilizer_generators(&s2.identity_shift()).len(), 1);

        let s3 = additive(3);
        let stab = s3.stabilizer_generators(&s3.unit_shift(0, 1));
        assert_eq!(stab.len(), 1);
        assert_eq!(stab[0].perm(), &[0, 2, 1]);

        let sym = rf(&s2, "x[1]*x[2]");
        let e = s2.identity_shift();
        assert_eq!(SkewElement::orbit_sum(&sym, &e, &s2).unwrap(), SkewElement::scalar(&s2, sym));
        assert!(matches!(
            SkewElement::orbit_sum(&rf(&s2, "x[1]"), &e, &s2),
            Err(Error::StabilizerViolation { .. })
        ));
        let a = rf(&s2, "x[1]^2/(x[1]-x[2])");
        assert!(SkewElement::orbit_sum(&a, &mu1, &s2).unwrap().is_invariant(&s2));
    }

    #[test]
    fn multiplicative_mode() {
        let t = Arc::new(VarTable::with_blocks(&[2], true, vec![Central::Q]).unwrap());
        let g = GroupSpec::new(&t, vec![BlockKind::D]).unwrap();
        let m = MonoidSpec::new(vec![0, 1], ShiftMode::Multiplicative, vec![Direction::Both; 2]).unwrap();
        let s = Setting::new("q", g, m).unwrap();
        let mu = SkewElement::term(RatFunc::one(s.table()), s.unit_shift(0, 1));
        assert_eq!(mu.evaluate(&rf(&s, "x[1,1]"), &s), rf(&s, "q^-1*x[1,1]"));
        // the sign change conjugates shifts without changing them
        let flip = s.group().generators().into_iter().find(|g| g.signs()[0] < 0).unwrap();
        assert_eq!(s.conjugate_shift(&flip, &s.unit_shift(0, 1)), s.unit_shift(0, 1));
        let stab = s.stabilizer_generators(&s.unit_shift(0, 1));
        assert_eq!(stab.len(), 1);
        assert_eq!(stab[0].perm(), &[0, 1]);
    }

    #[test]
    fn json_round_trip() {
        let s = additive(2);
        let x = SkewElement::from_terms(
            s.table(),
            vec![(s.unit_shift(0, 1), rf(&s, "1/(x[2]-x[1])")), (s.unit_shift(1, 1), rf(&s, "1/(x[1]-x[2])"))],
        );
        let json = serde_json::to_string(&x.to_json_terms()).unwrap();
        let back: Vec<SkewTerm> = serde_json::from_str(&json).unwrap();
        assert_eq!(SkewElement::from_json_terms(&back, &s).unwrap(), x);
        let rn = x.right_normal_form(&s);
        assert_eq!(SkewElement::from_right_normal_form(&rn, &s), x);
    }
}
