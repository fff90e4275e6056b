use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ArithError, Monomial, Rational, VarId, VarTable};

/// Sparse multivariate Laurent polynomial with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by graded-lex monomials, so two
/// polynomials are equal exactly when their term maps are equal.
#[derive(Clone)]
pub struct Poly {
    table: Arc<VarTable>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.same_table(other), "polynomials over different tables");
        self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Poly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Poly { table: Arc::clone(table), terms: BTreeMap::new() }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn constant(table: &Arc<VarTable>, c: Rational) -> Self {
        Self::monomial(table, Monomial::one(table.nvars()), c)
    }

    pub fn from_int(table: &Arc<VarTable>, c: i64) -> Self {
        Self::constant(table, Rational::from_integer(c.into()))
    }

    pub fn var(table: &Arc<VarTable>, v: VarId) -> Self {
        Self::monomial(table, Monomial::var(table.nvars(), v, 1), Rational::one())
    }

    pub fn monomial(table: &Arc<VarTable>, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), table.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { table: Arc::clone(table), terms }
    }

    /// Build from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(table: &Arc<VarTable>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            accumulate(&mut map, m, c);
        }
        Poly { table: Arc::clone(table), terms: map }
    }

    pub(crate) fn from_map(table: &Arc<VarTable>, terms: BTreeMap<Monomial, Rational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Poly { table: Arc::clone(table), terms }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn same_table(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || self.table == other.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// Constant term value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Poly { table: Arc::clone(&self.table), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        let terms = self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect();
        Poly { table: Arc::clone(&self.table), terms }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.table);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest exponent of `v` (0 for the zero polynomial).
    pub fn degree_in(&self, v: VarId) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: VarId) -> i32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.leading().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    /// Whether `v` occurs with a nonzero exponent in some term.
    pub fn uses(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exp(v) != 0)
    }

    pub fn used_vars(&self) -> Vec<VarId> {
        (0..self.table.nvars()).filter(|&v| self.uses(v)).collect()
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.table.nvars()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.meet(m)),
        }
    }

    /// Minimum exponents restricted to Laurent variables (zero elsewhere).
    pub fn laurent_content(&self) -> Monomial {
        let mut m = self.monomial_content();
        for v in 0..self.table.nvars() {
            if !self.table.is_laurent(v) {
                m.set_exp(v, 0);
            }
        }
        m
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| m.exponents().iter().any(|&e| e < 0))
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn integer_content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    /// Integer-primitive associate with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.integer_content();
        if self.leading_coefficient().is_negative() {
            c = -c;
        }
        if c.is_one() {
            return self.clone();
        }
        let inv = c.recip();
        self.scale(&inv)
    }

    /// Split into terms grouped by the exponents of `vars`; the keys carry
    /// only those exponents, the values are free of `vars`.
    pub fn coefficients_in(&self, vars: &[VarId]) -> BTreeMap<Monomial, Poly> {
        let n = self.table.nvars();
        let mut out: BTreeMap<Monomial, BTreeMap<Monomial, Rational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let mut key = Monomial::one(n);
            for &v in vars {
                key.set_exp(v, rest.take(v));
            }
            out.entry(key).or_default().insert(rest, c.clone());
        }
        out.into_iter()
            .map(|(k, t)| (k, Poly::from_map(&self.table, t)))
            .collect()
    }

    /// Dense coefficient list in `v`; requires non-negative exponents of `v`.
    pub fn to_univariate(&self, v: VarId) -> Vec<Poly> {
        let deg = self.degree_in(v).max(0) as usize;
        debug_assert!(self.min_degree_in(v) >= 0);
        let mut maps: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.take(v) as usize;
            maps[e].insert(rest, c.clone());
        }
        maps.into_iter().map(|t| Poly::from_map(&self.table, t)).collect()
    }

    pub fn from_univariate(table: &Arc<VarTable>, v: VarId, coeffs: &[Poly]) -> Poly {
        let mut terms = BTreeMap::new();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m = m.clone();
                m.set_exp(v, m.exp(v) + e as i32);
                terms.insert(m, a.clone());
            }
        }
        Poly { table: Arc::clone(table), terms }
    }

    /// Divide by `lm_b`-led divisor in graded-lex order. Returns quotient and
    /// remainder; with `early_exit` the scan stops at the first remainder term
    /// (quotient is then meaningless).
    fn div_rem_impl(&self, b: &Poly, early_exit: bool) -> (Poly, Poly) {
        let (lm_b, lc_b) = b.leading().expect("division by zero polynomial");
        let lc_inv = lc_b.recip();
        let mut p = self.terms.clone();
        let mut q = BTreeMap::new();
        let mut r = BTreeMap::new();
        while let Some((m, c)) = p.pop_last() {
            if lm_b.divides(&m) {
                let t = m.div(lm_b);
                let k = &c * &lc_inv;
                for (bm, bc) in b.terms.iter().rev().skip(1) {
                    accumulate(&mut p, bm.mul(&t), -(&k * bc));
                }
                q.insert(t, k);
            } else {
                r.insert(m, c);
                if early_exit {
                    break;
                }
            }
        }
        (Poly::from_map(&self.table, q), Poly::from_map(&self.table, r))
    }

    /// Quotient `self / b` in the Laurent polynomial ring, or `NotDivisible`
    /// carrying `r` with `self = b * q + r`.
    pub fn exact_div(&self, b: &Poly) -> Result<Poly, ArithError> {
        self.laurent_div(b, false)
    }

    /// Like [`exact_div`](Self::exact_div) but returns `None` quickly on failure.
    pub fn try_div(&self, b: &Poly) -> Option<Poly> {
        self.laurent_div(b, true).ok()
    }

    fn laurent_div(&self, b: &Poly, fast: bool) -> Result<Poly, ArithError> {
        if b.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if let Some(c) = b.constant_value() {
            return Ok(self.scale(&c.recip()));
        }
        let ma = self.laurent_content();
        let mb = b.laurent_content();
        let a_norm = self.mul_monomial(&ma.pow(-1));
        let b_norm = b.mul_monomial(&mb.pow(-1));
        if b_norm.is_monomial() {
            // b is a unit times a non-laurent monomial
            let (m, c) = b_norm.leading().unwrap();
            if a_norm.terms.keys().all(|k| m.divides(k)) {
                let q = a_norm.mul_monomial(&m.pow(-1)).scale(&c.recip());
                return Ok(q.mul_monomial(&ma.div(&mb)));
            }
        }
        let (q, r) = a_norm.div_rem_impl(&b_norm, fast);
        if r.is_zero() {
            Ok(q.mul_monomial(&ma.div(&mb)))
        } else if fast {
            Err(ArithError::NotDivisible { remainder: String::new() })
        } else {
            Err(ArithError::NotDivisible { remainder: r.mul_monomial(&ma).to_string() })
        }
    }

    /// Evaluate with every variable assigned.
    pub fn evaluate(&self, values: &[Option<Rational>]) -> Result<Rational, ArithError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = values
                    .get(v)
                    .and_then(|x| x.as_ref())
                    .ok_or_else(|| ArithError::MissingValue(self.table.name(v)))?;
                if e < 0 && x.is_zero() {
                    return Err(ArithError::DenominatorVanishes { factor: self.table.name(v) });
                }
                t *= num_traits::pow::Pow::pow(x, e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map_coefficients<F: Fn(&Rational) -> Rational>(&self, f: F) -> Poly {
        Poly::from_terms(&self.table, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

pub(crate) fn accumulate(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        debug_assert!(self.same_table(rhs));
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Poly { table: Arc::clone(&self.table), terms }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        debug_assert!(self.same_table(rhs));
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut terms, m.clone(), -c.clone());
        }
        Poly { table: Arc::clone(&self.table), terms }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        debug_assert!(self.same_table(rhs));
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.table);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                accumulate(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Poly { table: Arc::clone(&self.table), terms }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        Poly { table: Arc::clone(&self.table), terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &'a Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Central};

    fn table() -> Arc<VarTable> {
        Arc::new(VarTable::with_blocks(&[2], false, vec![]).unwrap())
    }

    #[test]
    fn difference_of_squares() {
        let t = table();
        let x = Poly::var(&t, 0);
        let y = Poly::var(&t, 1);
        let lhs = (&x - &y) * (&x + &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
        assert_eq!(&lhs + &Poly::zero(&t), lhs);
    }

    #[test]
    fn exact_division() {
        let t = table();
        let x = Poly::var(&t, 0);
        let y = Poly::var(&t, 1);
        let a = &(&(&x * &x) * &y) - &(&x * &(&y * &y));
        let q = a.exact_div(&(&x - &y)).unwrap();
        assert_eq!(q, &x * &y);
        assert_eq!(a.exact_div(&a).unwrap(), Poly::one(&t));
        let err = x.exact_div(&(&x + &Poly::one(&t))).unwrap_err();
        assert!(matches!(err, ArithError::NotDivisible { .. }));
        assert!(x.try_div(&(&x + &Poly::one(&t))).is_none());
    }

    #[test]
    fn laurent_division() {
        let t = Arc::new(VarTable::with_blocks(&[2], true, vec![Central::Q]).unwrap());
        let x = Poly::var(&t, 0);
        let y = Poly::var(&t, 1);
        let xinv = Poly::monomial(&t, Monomial::var(3, 0, -1), rat(1));
        // (x/y - y/x) = (x^2 - y^2)/(xy) ; divide x^-1 y^-1 (x^2-y^2) by (x-y)
        let a = &(&xinv * &Poly::monomial(&t, Monomial::var(3, 1, -1), rat(1))) * &(&(&x * &x) - &(&y * &y));
        let q = a.exact_div(&(&x - &y)).unwrap();
        assert_eq!(&q * &(&x - &y), a);
        // monomial divisors in laurent variables are units
        assert_eq!(x.exact_div(&xinv).unwrap(), &x * &x);
    }

    #[test]
    fn evaluation() {
        let t = table();
        let p = &Poly::var(&t, 0) - &Poly::var(&t, 1);
        assert_eq!(p.evaluate(&[Some(rat(3)), Some(rat(1))]).unwrap(), rat(2));
        assert!(p.evaluate(&[Some(rat(3)), None]).is_err());
    }

    #[test]
    fn content_and_primitive() {
        let t = table();
        let p = Poly::from_terms(
            &t,
            vec![
                (Monomial::var(2, 0, 1), Rational::new(4.into(), 3.into())),
                (Monomial::one(2), Rational::new((-2).into(), 1.into())),
            ],
        );
        assert_eq!(p.integer_content(), Rational::new(2.into(), 3.into()));
        let pp = p.primitive();
        assert_eq!(pp.coefficient(&Monomial::var(2, 0, 1)), rat(2));
        assert_eq!(pp.coefficient(&Monomial::one(2)), rat(-3));
        assert_eq!((-&p).primitive(), pp);
    }
}
