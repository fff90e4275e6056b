//! Multivariate polynomial GCD over the rationals.
//!
//! Recursive primitive-remainder-sequence algorithm: pick a main variable,
//! split off the content (a GCD in one variable fewer), run a primitive PRS on
//! the primitive parts. Shortcuts run first and settle almost every call:
//! monomial content is stripped, variables occurring in only one argument
//! reduce to a content computation, trial division catches "one argument
//! divides the other", univariate images modulo a prime prove coprimality,
//! and a heuristic integer GCD recovers nontrivial factors. The PRS is the
//! fallback when all of these fail.
//!
//! Complexity is exponential in the number of variables in the worst case; it
//! is meant for a dozen variables and low degrees.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::heu::heuristic_gcd;
use super::{ArithError, Poly, Rational, VarId};

/// Greatest common divisor, normalized to be primitive over the integers with
/// a positive leading coefficient. Monomial factors in Laurent variables are
/// units and never appear in the result.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly, ArithError> {
    if a.is_zero() && b.is_zero() {
        return Err(ArithError::BothZero);
    }
    Ok(gcd_any(a, b))
}

/// GCD where zero arguments are allowed as long as one side is nonzero;
/// panics-free variant used internally.
pub(crate) fn gcd_any(a: &Poly, b: &Poly) -> Poly {
    let table = Arc::clone(a.table());
    if a.is_zero() {
        return strip_laurent(b).primitive();
    }
    if b.is_zero() {
        return strip_laurent(a).primitive();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mut common = ma.meet(&mb);
    for v in 0..table.nvars() {
        if table.is_laurent(v) {
            common.set_exp(v, 0);
        }
    }
    let a1 = a.mul_monomial(&ma.pow(-1));
    let b1 = b.mul_monomial(&mb.pow(-1));
    // recursive contents treat Laurent monomials as units and may leave them in
    let g = strip_laurent(&gcd_reduced(&a1, &b1));
    g.mul_monomial(&common).primitive()
}

fn strip_laurent(a: &Poly) -> Poly {
    a.mul_monomial(&a.laurent_content().pow(-1))
}

/// Both arguments nonzero, non-negative exponents, not divisible by any
/// variable.
fn gcd_reduced(a: &Poly, b: &Poly) -> Poly {
    let table = a.table();
    if a.is_constant() || b.is_constant() {
        return Poly::one(table);
    }
    if a == b {
        return a.primitive();
    }
    // trial division, smaller into larger
    let (small, large) = if a.nterms() <= b.nterms() { (a, b) } else { (b, a) };
    if large.try_div(small).is_some() {
        return small.primitive();
    }

    let va = a.used_vars();
    let vb = b.used_vars();
    let only_a: Vec<VarId> = va.iter().copied().filter(|v| !vb.contains(v)).collect();
    if !only_a.is_empty() {
        return content_gcd(b, a, &only_a);
    }
    let only_b: Vec<VarId> = vb.iter().copied().filter(|v| !va.contains(v)).collect();
    if !only_b.is_empty() {
        return content_gcd(a, b, &only_b);
    }

    let (a, b) = (&a.primitive(), &b.primitive());
    if coprime_by_images(a, b, &va) {
        return Poly::one(table);
    }
    if let Some(g) = heuristic_gcd(a, b, &va) {
        return g;
    }

    // same variable set; a main variable in which one side has low degree
    // keeps the remainder sequence short
    let x = *va
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).min(b.degree_in(v)), a.degree_in(v).max(b.degree_in(v))))
        .expect("non-constant polynomial uses a variable");

    let ua = a.to_univariate(x);
    let ub = b.to_univariate(x);
    let ca = content(&ua);
    let cb = content(&ub);
    let c = gcd_any(&ca, &cb);
    let pa = divide_coeffs(&ua, &ca);
    let pb = divide_coeffs(&ub, &cb);

    let (mut p1, mut p2) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    let g = loop {
        if p2.len() == 1 {
            // nonzero constant in x after removing content: unit
            break vec![Poly::one(table)];
        }
        let r = prem(&p1, &p2);
        if r.is_empty() {
            break p2;
        }
        if r.len() == 1 {
            break vec![Poly::one(table)];
        }
        let cr = content(&r);
        p1 = p2;
        p2 = divide_coeffs(&r, &cr);
    };
    let g = Poly::from_univariate(table, x, &g);
    // primitive part in x
    let gu = g.to_univariate(x);
    let cg = content(&gu);
    let g = Poly::from_univariate(table, x, &divide_coeffs(&gu, &cg));
    (&c * &g).primitive()
}

/// Proves gcd(a, b) = 1 for integer polynomials: for every shared variable
/// `x`, specialize the others at a point where both leading coefficients in
/// `x` survive modulo a prime. A common factor of positive degree in `x`
/// would divide both images (Gauss), so coprime images rule it out. `false`
/// means "not proven", never "not coprime".
fn coprime_by_images(a: &Poly, b: &Poly, vars: &[VarId]) -> bool {
    let n = a.table().nvars();
    vars.iter().all(|&x| {
        let ua = a.to_univariate(x);
        let ub = b.to_univariate(x);
        (0..2u64).any(|attempt| {
            let point: Vec<u64> = (0..n as u64).map(|v| specialization(v, attempt)).collect();
            match (image(&ua, &point), image(&ub, &point)) {
                (Some(ia), Some(ib)) => modp::gcd_degree(ia, ib) == 0,
                _ => false,
            }
        })
    })
}

/// Deterministic, well spread residues for specializations.
fn specialization(v: u64, attempt: u64) -> u64 {
    let h = (v + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (attempt + 1).wrapping_mul(0xc2b2_ae3d_27d4_eb4f);
    h % modp::P
}

/// Coefficients modulo the prime at `point`; `None` when the leading one
/// vanishes.
fn image(coeffs: &[Poly], point: &[u64]) -> Option<Vec<u64>> {
    let out: Vec<u64> = coeffs.iter().map(|c| modp::evaluate(c, point)).collect::<Option<_>>()?;
    if out.last().is_none_or(|&c| c == 0) {
        None
    } else {
        Some(out)
    }
}

/// Arithmetic modulo the Mersenne prime 2^61 - 1.
mod modp {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    use crate::arith::Poly;

    pub const P: u64 = (1 << 61) - 1;

    fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64) -> u64 {
        pow(a, P - 2)
    }

    fn reduce(x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
    }

    /// Image of a polynomial with non-negative exponents; `None` if a
    /// coefficient denominator vanishes.
    pub fn evaluate(p: &Poly, point: &[u64]) -> Option<u64> {
        let mut acc = 0u64;
        for (m, c) in p.terms() {
            let den = reduce(c.denom());
            if den == 0 {
                return None;
            }
            let mut t = mul(reduce(c.numer()), inv(den));
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = mul(t, pow(point[v], e as u64));
                }
            }
            acc = (acc + t) % P;
        }
        Some(acc)
    }

    /// Degree of the gcd of two univariate images (ascending coefficients,
    /// nonzero leading coefficient).
    pub fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_empty() {
                return a.len() - 1;
            }
            let lb = inv(*b.last().expect("nonempty"));
            while a.len() >= b.len() {
                let k = mul(*a.last().expect("nonempty"), lb);
                let shift = a.len() - b.len();
                for (i, &bi) in b.iter().enumerate() {
                    a[i + shift] = (a[i + shift] + P - mul(k, bi)) % P;
                }
                while a.last() == Some(&0) {
                    a.pop();
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
    }
}

/// gcd(keep, content of `other` with respect to `vars`), where `keep` does not
/// involve `vars`.
fn content_gcd(keep: &Poly, other: &Poly, vars: &[VarId]) -> Poly {
    let mut coeffs: Vec<Poly> = other.coefficients_in(vars).into_values().collect();
    coeffs.sort_by_key(|c| (c.nterms(), c.total_degree()));
    let mut g = keep.clone();
    for c in coeffs {
        g = gcd_any(&g, &c);
        if g.is_constant() {
            return Poly::one(keep.table());
        }
    }
    g.primitive()
}

/// GCD of the coefficients of a dense univariate polynomial.
fn content(coeffs: &[Poly]) -> Poly {
    let mut nonzero: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| (c.nterms(), c.total_degree()));
    let table = coeffs[0].table();
    let mut g = match nonzero.first() {
        Some(c) => (*c).clone(),
        None => return Poly::one(table),
    };
    for c in &nonzero[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd_any(&g, c);
    }
    if g.is_constant() {
        Poly::one(table)
    } else {
        g.primitive()
    }
}

fn divide_coeffs(coeffs: &[Poly], c: &Poly) -> Vec<Poly> {
    let divided: Vec<Poly> = if c.is_one() {
        coeffs.to_vec()
    } else {
        coeffs
            .iter()
            .map(|p| p.exact_div(c).expect("content divides every coefficient"))
            .collect()
    };
    // common integer content keeps PRS coefficients small
    let mut num = num_bigint::BigInt::zero();
    let mut den = num_bigint::BigInt::one();
    for p in &divided {
        for (_, a) in p.terms() {
            num = num.gcd(a.numer());
            den = den.lcm(a.denom());
        }
    }
    if num.is_zero() || (num.is_one() && den.is_one()) {
        return divided;
    }
    let k = Rational::new(den, num);
    divided.iter().map(|p| p.scale(&k)).collect()
}

/// Pseudo-remainder of dense univariate polynomials (trailing zeros trimmed).
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<Poly> = a.to_vec();
    trim(&mut r);
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly> = Vec::with_capacity(dr);
        if let Some(c) = lb.constant_value() {
            let k = lr.scale(&c.recip());
            for (i, ri) in r.iter().enumerate().take(dr) {
                let sub = if i >= shift { &k * &b[i - shift] } else { Poly::zero(ri.table()) };
                next.push(ri - &sub);
            }
        } else {
            for (i, ri) in r.iter().enumerate().take(dr) {
                let mut t = lb * ri;
                if i >= shift {
                    t = &t - &(&lr * &b[i - shift]);
                }
                next.push(t);
            }
        }
        r = next;
        trim(&mut r);
    }
    r
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().is_some_and(|p| p.is_zero()) {
        v.pop();
    }
}

/// Least common multiple (normalized like [`gcd`]).
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.table());
    }
    let g = gcd_any(a, b);
    (a * &b.exact_div(&g).expect("gcd divides")).primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Central, VarTable};

    fn t(n: usize) -> Arc<VarTable> {
        Arc::new(VarTable::with_blocks(&[n], false, vec![]).unwrap())
    }

    #[test]
    fn common_linear_factor() {
        let t = t(2);
        let x = Poly::var(&t, 0);
        let y = Poly::var(&t, 1);
        let a = &(&x * &x) - &(&y * &y);
        let b = &x - &y;
        assert_eq!(gcd(&a, &b).unwrap(), b);
        assert_eq!(gcd(&a, &Poly::one(&t)).unwrap(), Poly::one(&t));
        assert!(matches!(gcd(&Poly::zero(&t), &Poly::zero(&t)), Err(ArithError::BothZero)));
    }

    #[test]
    fn vandermonde_times_coprime() {
        let t = t(3);
        let x = |i| Poly::var(&t, i);
        let v = &x(0) - &x(1);
        let s = &(&x(0) * &x(2)) + &Poly::from_int(&t, 3);
        let u = &(&x(1) * &x(1)) + &x(2);
        let g = gcd(&(&v * &s), &(&v * &u)).unwrap();
        assert_eq!(g, v);
        // oracle: exact division of both arguments
        assert!((&v * &s).exact_div(&g).is_ok());
        assert!((&v * &u).exact_div(&g).is_ok());
    }

    #[test]
    fn normalization_is_primitive_positive() {
        let t = t(2);
        let x = Poly::var(&t, 0);
        let y = Poly::var(&t, 1);
        let a = (&x - &y).scale(&rat(-6));
        let b = (&(&x - &y) * &(&x + &y)).scale(&Rational::new(3.into(), 4.into()));
        assert_eq!(gcd(&a, &b).unwrap(), &x - &y);
    }

    #[test]
    fn monomial_content_kept_for_polynomial_vars() {
        let t = t(2);
        let x = Poly::var(&t, 0);
        let y = Poly::var(&t, 1);
        let a = &(&x * &x) * &y;
        let b = &(&x * &y) + &(&x * &x);
        assert_eq!(gcd(&a, &b).unwrap(), x);
    }

    #[test]
    fn laurent_monomials_are_units() {
        let t = Arc::new(VarTable::with_blocks(&[2], true, vec![Central::Q]).unwrap());
        let x = Poly::var(&t, 0);
        let y = Poly::var(&t, 1);
        let a = &(&x * &x) * &(&x - &y);
        let b = &x * &(&x - &y);
        assert_eq!(gcd(&a, &b).unwrap(), &x - &y);
    }

    #[test]
    fn higher_degree_prs() {
        let t = t(3);
        let x = |i| Poly::var(&t, i);
        let f = &(&(&x(0) * &x(0)) + &(&x(1) * &x(2))) + &Poly::from_int(&t, 1);
        let g1 = &(&x(0) * &x(1)) - &(&x(2) * &x(2));
        let g2 = &(&(&x(0) * &x(0)) * &x(2)) + &x(1);
        let a = &f * &g1;
        let b = &f * &g2;
        assert_eq!(gcd(&a, &b).unwrap(), f.primitive());
        assert_eq!(lcm(&g1, &g2), (&g1 * &g2).primitive());
    }

    #[test]
    fn laurent_q_against_linear_factor() {
        // PRS in q blows up here; the image test settles it at once
        let t = Arc::new(VarTable::with_blocks(&[1, 1], true, vec![Central::Q]).unwrap());
        let n = crate::arith::parse_poly(
            &t,
            "-5*x[2,1]^3*q^3 + 25/6*x[1,1]^-2*x[2,1]^6*q^2 - 4*x[1,1]*x[2,1]^2*q^2 + 125/12*x[1,1]^-3*x[2,1]^6*q^2 \
             - x[1,1]*x[2,1]^2*q + 5*x[1,1]^-1*x[2,1]^3*q - x[1,1]^2 + 5/6*x[2,1]^3*q^-1 + 4*x[2,1]^2 \
             + 25/6*x[1,1]^-6*x[2,1]^3*q^2 + 10/3*x[1,1]^-5*x[2,1]^2*q + 5/6*x[1,1]^-4*q^-1",
        )
        .unwrap();
        let d = crate::arith::parse_poly(&t, "3*q^4 - 4*x[1,1]*x[2,1]").unwrap();
        assert!(gcd(&n, &d).unwrap().is_one());
        assert_eq!(gcd(&(&n * &d), &(&d * &d)).unwrap(), d);
    }

    #[test]
    fn univariate_image_gcd() {
        // (x - 1)(x + 2) and (x - 1)(x - 3)
        let m = |c: i64| if c < 0 { modp::P - (-c) as u64 } else { c as u64 };
        let r = |v: &[i64]| v.iter().map(|&c| m(c)).collect::<Vec<_>>();
        assert_eq!(modp::gcd_degree(r(&[-2, 1, 1]), r(&[3, -4, 1])), 1);
        assert_eq!(modp::gcd_degree(r(&[-2, 1, 1]), r(&[3, 1])), 0);
        assert_eq!(modp::gcd_degree(r(&[5]), r(&[3, 1])), 0);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn planted_factor_divides_gcd(seed in 0u64..10_000) {
            let t = Arc::new(VarTable::with_blocks(&[3], true, vec![Central::Q]).unwrap());
            let vars: Vec<VarId> = (0..t.nvars()).collect();
            let mut s = crate::sample::Sampler::new(seed);
            let f = s.poly(&t, &vars, 2, 3, true);
            let g1 = s.poly(&t, &vars, 2, 3, true);
            let g2 = s.poly(&t, &vars, 2, 3, true);
            proptest::prop_assume!(!f.is_zero() && !g1.is_zero() && !g2.is_zero());
            let a = &f * &g1;
            let b = &f * &g2;
            let g = gcd(&a, &b).unwrap();
            proptest::prop_assert!(a.try_div(&g).is_some());
            proptest::prop_assert!(b.try_div(&g).is_some());
            proptest::prop_assert!(g.try_div(&strip_laurent(&f)).is_some());
            // cofactors are coprime
            let ca = a.exact_div(&g).unwrap();
            let cb = b.exact_div(&g).unwrap();
            proptest::prop_assert!(gcd(&ca, &cb).unwrap().is_constant());
        }
    }
}
