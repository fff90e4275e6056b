use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::gcd::gcd_any;
use super::{ArithError, Poly, Rational, VarId, VarTable};

/// Normalized quotient of Laurent polynomials.
///
/// Invariants: the denominator is nonzero, has no negative exponents, is not
/// divisible by any Laurent variable, is integer-primitive with positive
/// leading coefficient, and is coprime to the numerator. Equal values therefore
/// have identical representations.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize(num, den, false))
    }

    /// Build from parts already known to be coprime (e.g. images of a
    /// normalized fraction under a ring automorphism).
    pub(crate) fn from_coprime(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        Self::normalize(num, den, true)
    }

    fn normalize(mut num: Poly, mut den: Poly, coprime: bool) -> Self {
        let table = Arc::clone(num.table());
        if num.is_zero() {
            return RatFunc::zero(&table);
        }
        if let Some(c) = den.constant_value() {
            return RatFunc { num: num.scale(&c.recip()), den: Poly::one(&table) };
        }
        let m = den.laurent_content();
        if !m.is_one() {
            let inv = m.pow(-1);
            den = den.mul_monomial(&inv);
            num = num.mul_monomial(&inv);
        }
        if !coprime {
            let g = gcd_any(&num, &den);
            if !g.is_one() {
                num = num.exact_div(&g).expect("gcd divides numerator");
                den = den.exact_div(&g).expect("gcd divides denominator");
            }
        }
        let mut c = den.integer_content();
        if den.leading_coefficient().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            let inv = c.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn zero(table: &Arc<VarTable>) -> Self {
        RatFunc { num: Poly::zero(table), den: Poly::one(table) }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        RatFunc { num: Poly::one(table), den: Poly::one(table) }
    }

    pub fn constant(table: &Arc<VarTable>, c: Rational) -> Self {
        RatFunc { num: Poly::constant(table, c), den: Poly::one(table) }
    }

    pub fn from_int(table: &Arc<VarTable>, c: i64) -> Self {
        Self::constant(table, Rational::from_integer(c.into()))
    }

    pub fn var(table: &Arc<VarTable>, v: VarId) -> Self {
        RatFunc { num: Poly::var(table, v), den: Poly::one(table) }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.num.table()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Denominator is 1, i.e. a Laurent polynomial over the rationals.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Laurent polynomial in the non-scalar variables with coefficients in
    /// the field of fractions of the scalar parameters (`q`): the denominator
    /// involves scalar variables only.
    pub fn is_laurent_over_scalars(&self) -> bool {
        let t = self.table();
        self.den.used_vars().into_iter().all(|v| t.is_scalar(v))
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.table());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFunc, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone(), true))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, ArithError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<RatFunc, ArithError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn evaluate(&self, values: &[Option<Rational>]) -> Result<Rational, ArithError> {
        let d = self.den.evaluate(values)?;
        if d.is_zero() {
            return Err(ArithError::DenominatorVanishes { factor: self.den.to_string() });
        }
        Ok(self.num.evaluate(values)? / d)
    }

    /// Coefficients of `v^0, v^1, ...` when `v` is a polynomial variable
    /// absent from the denominator.
    pub fn coefficients_in_var(&self, v: VarId) -> Result<Vec<RatFunc>, ArithError> {
        if self.den.uses(v) || self.num.min_degree_in(v) < 0 {
            return Err(ArithError::NotPolynomialIn(self.table().name(v)));
        }
        Ok(self
            .num
            .to_univariate(v)
            .into_iter()
            .map(|c| RatFunc::from_coprime_checked(c, self.den.clone()))
            .collect())
    }

    /// Like `new` for a nonzero denominator; cancels common factors.
    fn from_coprime_checked(num: Poly, den: Poly) -> RatFunc {
        RatFunc::normalize(num, den, false)
    }

    /// Sum of many fractions.
    pub fn sum<'a, I: IntoIterator<Item = &'a RatFunc>>(table: &Arc<VarTable>, items: I) -> RatFunc {
        items.into_iter().fold(RatFunc::zero(table), |acc, x| &acc + x)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        let one = Poly::one(p.table());
        RatFunc::normalize(p, one, true)
    }
}

impl From<&Poly> for RatFunc {
    fn from(p: &Poly) -> Self {
        RatFunc::from(p.clone())
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, c, d) = (&self.num, &self.den, &rhs.num, &rhs.den);
        if b == d {
            if b.is_one() {
                return RatFunc::from(a + c);
            }
            return RatFunc::normalize(a + c, b.clone(), false);
        }
        if b.is_one() {
            return RatFunc::from_coprime(&(a * d) + c, d.clone());
        }
        if d.is_one() {
            return RatFunc::from_coprime(a + &(c * b), b.clone());
        }
        let g = gcd_any(b, d);
        if g.is_one() {
            return RatFunc::from_coprime(&(a * d) + &(c * b), b * d);
        }
        let b1 = b.exact_div(&g).expect("gcd divides");
        let d1 = d.exact_div(&g).expect("gcd divides");
        let num = &(a * &d1) + &(c * &b1);
        if num.is_zero() {
            return RatFunc::zero(self.table());
        }
        let h = gcd_any(&num, &g);
        if h.is_one() {
            RatFunc::from_coprime(num, &(&b1 * &d1) * &g)
        } else {
            let num = num.exact_div(&h).expect("gcd divides");
            let g1 = g.exact_div(&h).expect("gcd divides");
            RatFunc::from_coprime(num, &(&b1 * &d1) * &g1)
        }
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.table());
        }
        let (a, b, c, d) = (&self.num, &self.den, &rhs.num, &rhs.den);
        if b.is_one() && d.is_one() {
            return RatFunc::from(a * c);
        }
        let (a1, d1) = cancel(a, d);
        let (c1, b1) = cancel(c, b);
        RatFunc::from_coprime(&a1 * &c1, &b1 * &d1)
    }
}

/// Remove gcd(n, d) from both; shortcut when d is 1.
fn cancel(n: &Poly, d: &Poly) -> (Poly, Poly) {
    if d.is_one() || n.is_constant() {
        return (n.clone(), d.clone());
    }
    let g = gcd_any(n, d);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (n.exact_div(&g).expect("gcd divides"), d.exact_div(&g).expect("gcd divides"))
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: &'a RatFunc) -> RatFunc {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Central, Monomial};

    fn t2() -> Arc<VarTable> {
        Arc::new(VarTable::with_blocks(&[2], false, vec![]).unwrap())
    }

    #[test]
    fn inverse_cancellation() {
        let t = t2();
        let d = &Poly::var(&t, 0) - &Poly::var(&t, 1);
        let r = RatFunc::new(Poly::one(&t), d.clone()).unwrap();
        assert_eq!(&r * &RatFunc::from(d), RatFunc::one(&t));
    }

    #[test]
    fn canonical_form() {
        let t = t2();
        let x = Poly::var(&t, 0);
        let y = Poly::var(&t, 1);
        // (2x^2 - 2y^2) / (-4x + 4y) = -(x + y)/2
        let r = RatFunc::new((&(&x * &x) - &(&y * &y)).scale(&rat(2)), (&x - &y).scale(&rat(-4))).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &(&x + &y).scale(&Rational::new((-1).into(), 2.into())));
        let s = RatFunc::new(x.clone(), (&y - &x).scale(&rat(3))).unwrap();
        assert!(s.den().leading_coefficient() > rat(0));
        assert!(RatFunc::new(x.clone(), Poly::zero(&t)).is_err());
    }

    #[test]
    fn laurent_units_move_to_numerator() {
        let t = Arc::new(VarTable::with_blocks(&[2], true, vec![Central::Q]).unwrap());
        let x = Poly::var(&t, 0);
        let y = Poly::var(&t, 1);
        let q = Poly::var(&t, 2);
        // 1/(x*(x-y)) has denominator x - y and numerator x^-1
        let r = RatFunc::new(Poly::one(&t), &x * &(&x - &y)).unwrap();
        assert_eq!(r.den(), &(&x - &y));
        assert_eq!(r.num(), &Poly::monomial(&t, Monomial::var(3, 0, -1), rat(1)));
        // 1/(q - q^-1) = q/(q^2 - 1)
        let qinv = Poly::monomial(&t, Monomial::var(3, 2, -1), rat(1));
        let s = RatFunc::new(Poly::one(&t), &q - &qinv).unwrap();
        assert_eq!(s.num(), &q);
        assert_eq!(s.den(), &(&(&q * &q) - &Poly::one(&t)));
        assert!(s.is_laurent_over_scalars());
        assert!(!r.is_laurent_over_scalars());
    }

    #[test]
    fn addition_with_common_factors() {
        let t = Arc::new(VarTable::with_blocks(&[3], false, vec![]).unwrap());
        let x = |i| Poly::var(&t, i);
        let a = RatFunc::new(Poly::one(&t), &(&x(0) - &x(1)) * &(&x(0) - &x(2))).unwrap();
        let b = RatFunc::new(Poly::one(&t), &(&x(1) - &x(0)) * &(&x(1) - &x(2))).unwrap();
        let c = RatFunc::new(Poly::one(&t), &(&x(2) - &x(0)) * &(&x(2) - &x(1))).unwrap();
        // sum of 1/prod_{j!=i}(x_i - x_j) over three variables vanishes
        assert!((&(&a + &b) + &c).is_zero());
        let d = RatFunc::new(x(0), &(&x(0) - &x(1)) * &(&x(0) - &x(2))).unwrap();
        let e = RatFunc::new(x(1), &(&x(1) - &x(0)) * &(&x(1) - &x(2))).unwrap();
        let f = RatFunc::new(x(2), &(&x(2) - &x(0)) * &(&x(2) - &x(1))).unwrap();
        assert!((&(&d + &e) + &f).is_zero());
    }

    #[test]
    fn coefficient_extraction() {
        let t = Arc::new(VarTable::with_blocks(&[2], false, vec![Central::U]).unwrap());
        let r = crate::arith::parse_ratfunc(&t, "(u+x[1,1])*(u+x[1,2])/(x[1,1]-x[1,2])").unwrap();
        let c = r.coefficients_in_var(2).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c[2].den() == &(&Poly::var(&t, 0) - &Poly::var(&t, 1)));
        assert!(RatFunc::new(Poly::one(&t), Poly::var(&t, 2)).unwrap().coefficients_in_var(2).is_err());
    }

    #[test]
    fn evaluation_errors() {
        let t = t2();
        let r = RatFunc::new(Poly::one(&t), &Poly::var(&t, 0) - &Poly::var(&t, 1)).unwrap();
        assert!(matches!(
            r.evaluate(&[Some(rat(1)), Some(rat(1))]),
            Err(ArithError::DenominatorVanishes { .. })
        ));
        assert_eq!(r.evaluate(&[Some(rat(3)), Some(rat(1))]).unwrap(), Rational::new(1.into(), 2.into()));
    }
}
