//! Heuristic integer GCD: evaluate variables at large integers, take the
//! integer GCD, read the answer back off its balanced base-`xi` digits, and
//! keep it only if it divides both arguments. Any failure reports `None`;
//! the caller falls back to remainder sequences.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Poly, Rational, VarId, VarTable};

/// Integer polynomial with non-negative exponents.
type ZPoly = BTreeMap<Monomial, BigInt>;

const ATTEMPTS: usize = 6;
/// Evaluation points past this size cost more than they save.
const MAX_XI_BITS: u64 = 60_000;

/// GCD of two nonzero polynomials with integer coefficients and
/// non-negative exponents over `vars`, primitive with positive leading
/// coefficient.
pub(crate) fn heuristic_gcd(a: &Poly, b: &Poly, vars: &[VarId]) -> Option<Poly> {
    let table = Arc::clone(a.table());
    let za = to_z(a)?;
    let zb = to_z(b)?;
    let (h, _, _) = heu(&za, &zb, vars, &table)?;
    let g = from_z(&table, &h).primitive();
    (a.try_div(&g).is_some() && b.try_div(&g).is_some()).then_some(g)
}

fn to_z(p: &Poly) -> Option<ZPoly> {
    p.terms()
        .map(|(m, c)| {
            if !c.is_integer() || m.exponents().iter().any(|&e| e < 0) {
                return None;
            }
            Some((m.clone(), c.to_integer()))
        })
        .collect()
}

fn from_z(table: &Arc<VarTable>, p: &ZPoly) -> Poly {
    Poly::from_terms(table, p.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()))))
}

fn max_norm(p: &ZPoly) -> BigInt {
    p.values().map(|c| c.abs()).max().unwrap_or_default()
}

fn content(p: &ZPoly) -> BigInt {
    p.values().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn scale_div(p: &ZPoly, k: &BigInt) -> ZPoly {
    p.iter().map(|(m, c)| (m.clone(), c / k)).collect()
}

fn scale_mul(p: &ZPoly, k: &BigInt) -> ZPoly {
    p.iter().map(|(m, c)| (m.clone(), c * k)).collect()
}

/// Leading coefficient in `x` (a polynomial in the other variables) reduced
/// to its largest absolute coefficient; only its size matters.
fn lead_size(p: &ZPoly, x: VarId) -> BigInt {
    let top = p.keys().map(|m| m.exp(x)).max().unwrap_or(0);
    p.iter().filter(|(m, _)| m.exp(x) == top).map(|(_, c)| c.abs()).max().unwrap_or_else(BigInt::one)
}

fn evaluate(p: &ZPoly, x: VarId, xi: &BigInt) -> ZPoly {
    let mut out = ZPoly::new();
    for (m, c) in p {
        let mut m2 = m.clone();
        let e = m2.take(x);
        let t = c * num_traits::pow(xi.clone(), e as usize);
        let slot = out.entry(m2).or_insert_with(BigInt::zero);
        *slot += t;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Balanced base-`xi` expansion of every coefficient, digits becoming the
/// coefficients of powers of `x`.
fn interpolate(h: &ZPoly, x: VarId, xi: &BigInt) -> ZPoly {
    let half = xi / 2;
    let mut out = ZPoly::new();
    let mut rest = h.clone();
    let mut i: i32 = 0;
    while !rest.is_empty() {
        let mut next = ZPoly::new();
        for (m, c) in &rest {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            let q = (c - &d) / xi;
            if !d.is_zero() {
                let mut m2 = m.clone();
                m2.set_exp(x, i);
                out.insert(m2, d);
            }
            if !q.is_zero() {
                next.insert(m.clone(), q);
            }
        }
        rest = next;
        i += 1;
    }
    out
}

fn is_constant(p: &ZPoly) -> bool {
    p.keys().all(|m| m.is_one())
}

fn constant(p: &ZPoly) -> BigInt {
    p.values().next().cloned().unwrap_or_default()
}

/// Exact quotient over the integers, if any.
fn divide(a: &ZPoly, b: &ZPoly, table: &Arc<VarTable>) -> Option<ZPoly> {
    let q = from_z(table, a).try_div(&from_z(table, b))?;
    to_z(&q)
}

/// Returns (gcd, a / gcd, b / gcd) including the integer content.
fn heu(a: &ZPoly, b: &ZPoly, vars: &[VarId], table: &Arc<VarTable>) -> Option<(ZPoly, ZPoly, ZPoly)> {
    if is_constant(a) && is_constant(b) {
        let (ca, cb) = (constant(a), constant(b));
        let g = ca.gcd(&cb);
        let one = Monomial::one(table.nvars());
        let mk = |c: BigInt| ZPoly::from([(one.clone(), c)]);
        return Some((mk(g.clone()), mk(&ca / &g), mk(&cb / &g)));
    }
    let x = *vars.iter().find(|&&v| a.keys().chain(b.keys()).any(|m| m.exp(v) != 0))?;
    let rest: Vec<VarId> = vars.iter().copied().filter(|&v| v != x).collect();

    let common = content(a).gcd(&content(b));
    let a = scale_div(a, &common);
    let b = scale_div(b, &common);
    let wrap = |(h, ca, cb): (ZPoly, ZPoly, ZPoly)| (scale_mul(&h, &common), ca, cb);

    let (na, nb) = (max_norm(&a), max_norm(&b));
    let bound: BigInt = BigInt::from(2) * na.clone().min(nb.clone()) + 29;
    let lead: BigInt = (&na / lead_size(&a, x)).min(&nb / lead_size(&b, x));
    let mut xi: BigInt = bound.clone().min(bound.sqrt() * 99).max(lead * 2 + 2);

    for _ in 0..ATTEMPTS {
        if xi.bits() > MAX_XI_BITS {
            return None;
        }
        let ea = evaluate(&a, x, &xi);
        let eb = evaluate(&b, x, &xi);
        if !ea.is_empty() && !eb.is_empty() {
            if let Some((h, cfa, cfb)) = heu(&ea, &eb, &rest, table) {
                let hx = interpolate(&h, x, &xi);
                let hx = scale_div(&hx, &content(&hx));
                if let (Some(qa), Some(qb)) = (divide(&a, &hx, table), divide(&b, &hx, table)) {
                    return Some(wrap((hx, qa, qb)));
                }
                let fa = interpolate(&cfa, x, &xi);
                if let Some(hx) = divide(&a, &fa, table) {
                    if let Some(qb) = divide(&b, &hx, table) {
                        return Some(wrap((hx, fa, qb)));
                    }
                }
                let fb = interpolate(&cfb, x, &xi);
                if let Some(hx) = divide(&b, &fb, table) {
                    if let Some(qa) = divide(&a, &hx, table) {
                        return Some(wrap((hx, qa, fb)));
                    }
                }
            }
        }
        let r = xi.sqrt().sqrt();
        xi = &xi * 73794 * r / 27011;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize) -> Arc<VarTable> {
        Arc::new(VarTable::with_blocks(&[n], false, vec![]).unwrap())
    }

    #[test]
    fn recovers_planted_factor() {
        let t = table(3);
        let x = |i| Poly::var(&t, i);
        let f = &(&(&x(0) * &x(1)) - &Poly::from_int(&t, 7)) + &(&x(2) * &x(2));
        let g1 = &(&x(0) * &x(0)) + &(&x(1) * &Poly::from_int(&t, 3));
        let g2 = &(&x(2) * &x(1)) - &x(0);
        let g = heuristic_gcd(&(&f * &g1), &(&f * &g2), &[0, 1, 2]).unwrap();
        assert_eq!(g, f.primitive());
    }

    #[test]
    fn balanced_digits_round_trip() {
        let t = table(2);
        let p = to_z(&crate::arith::parse_poly(&t, "3*x[1,1]^2 - 5*x[1,1]*x[1,2] - 1").unwrap()).unwrap();
        let xi = BigInt::from(1000);
        assert_eq!(interpolate(&evaluate(&p, 0, &xi), 0, &xi), p);
    }
}
