//! Products of symmetric groups (type A blocks) and even-signed permutation
//! groups G(2,2,r) (type D blocks) acting on the block variables of a table.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{Central, Monomial, Poly, RatFunc, Rational, VarId, VarTable};
use crate::error::{Error, Result};

/// Default bound on |G| for full enumeration.
pub const DEFAULT_GROUP_CAP: u128 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    /// Full symmetric group on the block.
    A,
    /// Permutations together with sign changes of even cardinality.
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Character {
    Trivial,
    Sgn,
}

impl Character {
    pub fn value(self, g: &GroupElement) -> i32 {
        match self {
            Character::Trivial => 1,
            Character::Sgn => g.sgn(),
        }
    }
}

/// `x_v -> signs[v] * x_{perm[v]}` on block variables; centrals are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    perm: Vec<VarId>,
    signs: Vec<i8>,
}

impl GroupElement {
    pub fn identity(nblock_vars: usize) -> Self {
        GroupElement { perm: (0..nblock_vars).collect(), signs: vec![1; nblock_vars] }
    }

    pub(crate) fn from_parts(perm: Vec<VarId>, signs: Vec<i8>) -> Self {
        debug_assert_eq!(perm.len(), signs.len());
        GroupElement { perm, signs }
    }

    pub fn perm(&self) -> &[VarId] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    /// `self ∘ other`: first apply `other`, then `self`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let perm = other.perm.iter().map(|&t| self.perm[t]).collect();
        let signs = other
            .perm
            .iter()
            .zip(&other.signs)
            .map(|(&t, &b)| b * self.signs[t])
            .collect();
        GroupElement { perm, signs }
    }

    pub fn inverse(&self) -> GroupElement {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for v in 0..n {
            perm[self.perm[v]] = v;
            signs[self.perm[v]] = self.signs[v];
        }
        GroupElement { perm, signs }
    }

    /// Sign of the underlying permutation.
    pub fn sgn(&self) -> i32 {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut s = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.perm[v];
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    pub fn apply_poly(&self, p: &Poly) -> Poly {
        if self.is_identity() {
            return p.clone();
        }
        let nb = self.perm.len();
        let mut terms = BTreeMap::new();
        for (m, c) in p.terms() {
            let e = m.exponents();
            let mut out = Monomial::one(e.len());
            let mut negate = false;
            for (v, &k) in e.iter().enumerate() {
                if v < nb {
                    out.set_exp(self.perm[v], k);
                    if self.signs[v] < 0 && k % 2 != 0 {
                        negate = !negate;
                    }
                } else {
                    out.set_exp(v, k);
                }
            }
            terms.insert(out, if negate { -c.clone() } else { c.clone() });
        }
        Poly::from_terms(p.table(), terms)
    }

    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        if self.is_identity() {
            return f.clone();
        }
        RatFunc::from_coprime(self.apply_poly(f.num()), self.apply_poly(f.den()))
    }

    /// Transport a point: coordinate `v` of `p` moves to `perm[v]` with its
    /// sign applied. Invariant functions take equal values on `p` and the
    /// result.
    pub fn act_on_point(&self, p: &[Rational]) -> Vec<Rational> {
        let mut out = p.to_vec();
        for v in 0..self.perm.len() {
            out[self.perm[v]] = if self.signs[v] < 0 { -p[v].clone() } else { p[v].clone() };
        }
        out
    }
}

/// Group attached to the blocks of a variable table.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    table: Arc<VarTable>,
    kinds: Vec<BlockKind>,
    cap: u128,
}

impl GroupSpec {
    pub fn new(table: &Arc<VarTable>, kinds: Vec<BlockKind>) -> Result<Self> {
        if kinds.len() != table.blocks().len() {
            return Err(Error::InvalidGroup(format!(
                "{} block kinds for {} blocks",
                kinds.len(),
                table.blocks().len()
            )));
        }
        for (b, k) in table.blocks().iter().zip(&kinds) {
            if *k == BlockKind::D && !b.laurent {
                return Err(Error::InvalidGroup(format!("type D block {} is not a Laurent block", b.id)));
            }
        }
        Ok(GroupSpec { table: Arc::clone(table), kinds, cap: DEFAULT_GROUP_CAP })
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn kinds(&self) -> &[BlockKind] {
        &self.kinds
    }

    pub fn order(&self) -> u128 {
        self.table
            .blocks()
            .iter()
            .zip(&self.kinds)
            .map(|(b, k)| {
                let f: u128 = (1..=b.len as u128).product();
                match k {
                    BlockKind::A => f,
                    BlockKind::D => f << b.len.saturating_sub(1),
                }
            })
            .product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.table.nblock_vars())
    }

    fn transposition(&self, a: VarId, b: VarId) -> GroupElement {
        let mut g = self.identity();
        g.perm.swap(a, b);
        g
    }

    /// Adjacent transpositions in every block, plus the sign change of the
    /// first two coordinates in D blocks of size at least 2.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut gens = Vec::new();
        for (b, k) in self.kinds.iter().enumerate() {
            let vars = self.table.block_vars(b);
            for v in vars.start..vars.end.saturating_sub(1) {
                gens.push(self.transposition(v, v + 1));
            }
            if *k == BlockKind::D && vars.len() >= 2 {
                let mut g = self.identity();
                g.signs[vars.start] = -1;
                g.signs[vars.start + 1] = -1;
                gens.push(g);
            }
        }
        gens
    }

    /// All elements, in a fixed order. Fails beyond the enumeration cap.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let order = self.order();
        if order > self.cap {
            return Err(Error::GroupTooLarge { order, cap: self.cap });
        }
        let mut out = vec![self.identity()];
        for (b, k) in self.kinds.iter().enumerate() {
            let vars = self.table.block_vars(b);
            let local = block_elements(vars.len(), *k);
            let mut next = Vec::with_capacity(out.len() * local.len());
            for g in &out {
                for (perm, signs) in &local {
                    let mut h = g.clone();
                    for i in 0..vars.len() {
                        h.perm[vars.start + i] = vars.start + perm[i];
                        h.signs[vars.start + i] = signs[i];
                    }
                    next.push(h);
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub fn is_invariant(&self, f: &RatFunc) -> bool {
        self.is_relative_invariant(f, Character::Trivial)
    }

    pub fn is_invariant_poly(&self, p: &Poly) -> bool {
        self.generators().iter().all(|g| g.apply_poly(p) == *p)
    }

    /// `g(f) = χ(g) f` for every generator, which suffices because both sides
    /// are multiplicative in `g`.
    pub fn is_relative_invariant(&self, f: &RatFunc, chi: Character) -> bool {
        self.generators().iter().all(|g| {
            let image = g.apply(f);
            if chi.value(g) == 1 {
                image == *f
            } else {
                image == -f
            }
        })
    }

    /// Reynolds operator `(1/|G|) Σ g(f)`.
    pub fn symmetrize(&self, f: &RatFunc) -> Result<RatFunc> {
        let elements = self.elements()?;
        let table = f.table();
        let sum = if elements.len() > 32 {
            elements
                .par_iter()
                .map(|g| g.apply(f))
                .reduce(|| RatFunc::zero(table), |a, b| &a + &b)
        } else {
            RatFunc::sum(table, elements.iter().map(|g| g.apply(f)).collect::<Vec<_>>().iter())
        };
        Ok(sum.scale(&Rational::new(1.into(), (elements.len() as u64).into())))
    }

    pub fn symmetrize_poly(&self, p: &Poly) -> Result<Poly> {
        self.project_poly(p, Character::Trivial)
    }

    /// `(1/|G|) Σ χ(g) g(p)`; the image is a χ-relative invariant.
    pub fn project_poly(&self, p: &Poly, chi: Character) -> Result<Poly> {
        let elements = self.elements()?;
        let table = p.table();
        let image = |g: &GroupElement| {
            let q = g.apply_poly(p);
            if chi.value(g) == 1 {
                q
            } else {
                -q
            }
        };
        let sum = elements
            .par_iter()
            .map(image)
            .reduce(|| Poly::zero(table), |a, b| &a + &b);
        Ok(sum.scale(&Rational::new(1.into(), (elements.len() as u64).into())))
    }

    /// `Π_k Π_{i<j} (x_ki − x_kj)` over all blocks; type A only.
    pub fn vandermonde(&self) -> Result<Poly> {
        if self.kinds.iter().any(|k| *k != BlockKind::A) {
            return Err(Error::UnsupportedBlock { what: "vandermonde", expected: "A" });
        }
        let mut d = Poly::one(&self.table);
        for b in 0..self.kinds.len() {
            d = &d * &self.block_vandermonde(b);
        }
        Ok(d)
    }

    fn block_vandermonde(&self, b: usize) -> Poly {
        let vars = self.table.block_vars(b);
        let mut d = Poly::one(&self.table);
        for i in vars.clone() {
            for j in i + 1..vars.end {
                d = &d * &(&Poly::var(&self.table, i) - &Poly::var(&self.table, j));
            }
        }
        d
    }

    /// `Π_k Π_{i<j} ((x_ki/x_kj) − (x_kj/x_ki)) / (q − q⁻¹)`; type D only.
    pub fn q_vandermonde(&self) -> Result<RatFunc> {
        if self.kinds.iter().any(|k| *k != BlockKind::D) {
            return Err(Error::UnsupportedBlock { what: "q_vandermonde", expected: "D" });
        }
        let mut d = RatFunc::one(&self.table);
        for b in 0..self.kinds.len() {
            d = &d * &self.block_q_vandermonde(b)?;
        }
        Ok(d)
    }

    fn block_q_vandermonde(&self, b: usize) -> Result<RatFunc> {
        let t = &self.table;
        let q = t.central(Central::Q).ok_or(Error::MissingCentral("q"))?;
        let qq = q_difference(t, q);
        let vars = t.block_vars(b);
        let mut num = Poly::one(t);
        let mut npairs = 0;
        for i in vars.clone() {
            for j in i + 1..vars.end {
                num = &num * &ratio_difference(t, i, j);
                npairs += 1;
            }
        }
        Ok(RatFunc::new(num, qq.pow(npairs))?)
    }

    /// The sign-character relative invariant: Vandermonde factors on A
    /// blocks, q-Vandermonde factors on D blocks.
    pub fn d_sgn(&self) -> Result<RatFunc> {
        let mut d = RatFunc::one(&self.table);
        for (b, k) in self.kinds.iter().enumerate() {
            let f = match k {
                BlockKind::A => RatFunc::from(self.block_vandermonde(b)),
                BlockKind::D => self.block_q_vandermonde(b)?,
            };
            d = &d * &f;
        }
        Ok(d)
    }

    /// Quotient `a / d` for a χ-relative invariant `a` and the matching
    /// relative invariant `d`. The quotient must be a Laurent polynomial
    /// (over the scalar parameters) and invariant.
    pub fn divide_by_relative_invariant(&self, a: &RatFunc, d: &RatFunc) -> Result<RatFunc> {
        let quotient = match (a.as_poly(), d.as_poly()) {
            (Some(pa), Some(pd)) => match pa.exact_div(pd) {
                Ok(q) => RatFunc::from(q),
                Err(crate::arith::ArithError::NotDivisible { remainder }) => {
                    return Err(Error::NotDivisible { remainder })
                }
                Err(e) => return Err(e.into()),
            },
            _ => {
                let q = a.div(d)?;
                if !q.is_laurent_over_scalars() {
                    return Err(Error::NotDivisible { remainder: format!("denominator {}", q.den()) });
                }
                q
            }
        };
        if !self.is_invariant(&quotient) {
            return Err(Error::NotRelativeInvariant { quotient: quotient.to_string() });
        }
        Ok(quotient)
    }

    /// Invariants used as a fingerprint of Γ: elementary symmetric
    /// polynomials on A blocks; on D blocks the first r−1 elementary
    /// symmetric polynomials of the squares, the product P and P⁻¹.
    pub fn invariant_generators(&self) -> Vec<Poly> {
        let t = &self.table;
        let mut out = Vec::new();
        for (b, k) in self.kinds.iter().enumerate() {
            let vars: Vec<VarId> = self.table.block_vars(b).collect();
            match k {
                BlockKind::A => {
                    let xs: Vec<Poly> = vars.iter().map(|&v| Poly::var(t, v)).collect();
                    out.extend(elementary_symmetric(t, &xs).into_iter().skip(1));
                }
                BlockKind::D => {
                    let squares: Vec<Poly> = vars
                        .iter()
                        .map(|&v| Poly::monomial(t, Monomial::var(t.nvars(), v, 2), Rational::one()))
                        .collect();
                    let e = elementary_symmetric(t, &squares);
                    out.extend(e.into_iter().skip(1).take(vars.len().saturating_sub(1)));
                    let mut pm = Monomial::one(t.nvars());
                    for &v in &vars {
                        pm.set_exp(v, 1);
                    }
                    out.push(Poly::monomial(t, pm.clone(), Rational::one()));
                    out.push(Poly::monomial(t, pm.pow(-1), Rational::one()));
                }
            }
        }
        out
    }
}

/// `[e_0, e_1, ..., e_n]` of the given polynomials.
pub fn elementary_symmetric(table: &Arc<VarTable>, xs: &[Poly]) -> Vec<Poly> {
    let mut e = vec![Poly::one(table)];
    e.extend(std::iter::repeat_with(|| Poly::zero(table)).take(xs.len()));
    for (n, x) in xs.iter().enumerate() {
        for k in (1..=n + 1).rev() {
            e[k] = &e[k] + &(&e[k - 1] * x);
        }
    }
    e
}

/// `q − q⁻¹` as a Laurent polynomial.
pub(crate) fn q_difference(t: &Arc<VarTable>, q: VarId) -> Poly {
    &Poly::var(t, q) - &Poly::monomial(t, Monomial::var(t.nvars(), q, -1), Rational::one())
}

/// `x_a/x_b − x_b/x_a` as a Laurent polynomial.
pub(crate) fn ratio_difference(t: &Arc<VarTable>, a: VarId, b: VarId) -> Poly {
    let n = t.nvars();
    let mut m = Monomial::var(n, a, 1);
    m.set_exp(b, -1);
    &Poly::monomial(t, m.clone(), Rational::one()) - &Poly::monomial(t, m.pow(-1), Rational::one())
}

/// Local (permutation, signs) pairs of one block, in lexicographic order.
fn block_elements(r: usize, kind: BlockKind) -> Vec<(Vec<usize>, Vec<i8>)> {
    let perms = permutations(r);
    let sign_vectors: Vec<Vec<i8>> = match kind {
        BlockKind::A => vec![vec![1; r]],
        BlockKind::D => (0..1u32 << r)
            .filter(|m| m.count_ones() % 2 == 0)
            .map(|m| (0..r).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect())
            .collect(),
    };
    let mut out = Vec::with_capacity(perms.len() * sign_vectors.len());
    for p in &perms {
        for s in &sign_vectors {
            out.push((p.clone(), s.clone()));
        }
    }
    out
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(r - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, r - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Values of the fingerprint invariants at a point (all block variables and
/// centrals assigned).
pub fn char_key(generators: &[Poly], point: &[Option<Rational>]) -> Result<Vec<Rational>> {
    generators
        .iter()
        .map(|g| g.evaluate(point).map_err(Error::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, parse_ratfunc, rat};

    fn a_spec(sizes: &[usize]) -> GroupSpec {
        let t = Arc::new(VarTable::with_blocks(sizes, false, vec![]).unwrap());
        GroupSpec::new(&t, vec![BlockKind::A; sizes.len()]).unwrap()
    }

    fn d_spec(sizes: &[usize]) -> GroupSpec {
        let t = Arc::new(VarTable::with_blocks(sizes, true, vec![Central::Q]).unwrap());
        GroupSpec::new(&t, vec![BlockKind::D; sizes.len()]).unwrap()
    }

    #[test]
    fn orders_and_enumeration() {
        assert_eq!(a_spec(&[3]).order(), 6);
        assert_eq!(d_spec(&[3]).order(), 24);
        assert_eq!(d_spec(&[1, 2]).order(), 4);
        let g = d_spec(&[3]);
        let els = g.elements().unwrap();
        assert_eq!(els.len(), 24);
        let distinct: std::collections::HashSet<_> = els.iter().collect();
        assert_eq!(distinct.len(), 24);
        for e in &els {
            assert_eq!(e.signs().iter().filter(|&&s| s < 0).count() % 2, 0);
        }
        assert!(matches!(a_spec(&[9]).with_cap(1000).elements(), Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn d_type_needs_laurent_block() {
        let t = Arc::new(VarTable::with_blocks(&[2], false, vec![]).unwrap());
        assert!(GroupSpec::new(&t, vec![BlockKind::D]).is_err());
    }

    #[test]
    fn swap_and_sign_actions() {
        let g = a_spec(&[2]);
        let t = g.table();
        let s = &g.generators()[0];
        assert_eq!(s.apply_poly(&parse_poly(t, "x[1]-x[2]").unwrap()), parse_poly(t, "x[2]-x[1]").unwrap());
        let d = d_spec(&[2]);
        let flip = d.generators().into_iter().find(|g| g.signs()[0] < 0).unwrap();
        let p = parse_poly(d.table(), "x[1,1]*x[1,2]").unwrap();
        assert_eq!(flip.apply_poly(&p), p);
        let a3 = a_spec(&[3]);
        let e1 = parse_poly(a3.table(), "x[1]+x[2]+x[3]").unwrap();
        for g in a3.elements().unwrap() {
            assert_eq!(g.apply_poly(&e1), e1);
        }
    }

    #[test]
    fn composition_matches_sequential_action() {
        let d = d_spec(&[3]);
        let els = d.elements().unwrap();
        let f = parse_ratfunc(d.table(), "x[1,1]^2*x[1,2]^-1/(x[1,1]-3*x[1,3]) + q*x[1,3]").unwrap();
        for (i, g) in els.iter().enumerate().step_by(5) {
            let h = &els[(i * 7 + 3) % els.len()];
            assert_eq!(g.apply(&h.apply(&f)), g.compose(h).apply(&f));
            assert!(g.compose(&g.inverse()).is_identity());
        }
    }

    #[test]
    fn symmetrize_examples() {
        let g = a_spec(&[2]);
        let t = g.table();
        let x1 = parse_ratfunc(t, "x[1]").unwrap();
        assert_eq!(g.symmetrize(&x1).unwrap(), parse_ratfunc(t, "(x[1]+x[2])/2").unwrap());
        assert!(g.symmetrize(&parse_ratfunc(t, "x[1]-x[2]").unwrap()).unwrap().is_zero());
        let inv = parse_ratfunc(t, "x[1]*x[2]/(x[1]+x[2])").unwrap();
        assert_eq!(g.symmetrize(&inv).unwrap(), inv);
    }

    #[test]
    fn relative_invariants_and_vandermonde() {
        let g = a_spec(&[2]);
        let t = g.table();
        assert!(g.is_relative_invariant(&parse_ratfunc(t, "x[1]-x[2]").unwrap(), Character::Sgn));
        assert!(!g.is_relative_invariant(&parse_ratfunc(t, "x[1]+x[2]").unwrap(), Character::Sgn));
        assert_eq!(g.vandermonde().unwrap(), parse_poly(t, "x[1]-x[2]").unwrap());

        let d = d_spec(&[1, 1]);
        assert!(d.q_vandermonde().unwrap().is_one());
        let d2 = d_spec(&[2]);
        let vq = d2.q_vandermonde().unwrap();
        assert_eq!(
            vq,
            parse_ratfunc(d2.table(), "(x[1,1]/x[1,2] - x[1,2]/x[1,1])/(q-q^-1)").unwrap()
        );
        assert!(d2.is_relative_invariant(&vq, Character::Sgn));
        let point = [Some(rat(4)), Some(rat(1)), Some(rat(2))];
        assert_eq!(vq.evaluate(&point).unwrap(), Rational::new(5.into(), 2.into()));
        assert!(d2.vandermonde().is_err());
        assert!(a_spec(&[2]).q_vandermonde().is_err());
    }

    #[test]
    fn division_by_relative_invariant() {
        let g = a_spec(&[2]);
        let t = g.table();
        let d = RatFunc::from(g.vandermonde().unwrap());
        let a = parse_ratfunc(t, "x[1]^2*x[2]-x[1]*x[2]^2").unwrap();
        assert_eq!(g.divide_by_relative_invariant(&a, &d).unwrap(), parse_ratfunc(t, "x[1]*x[2]").unwrap());
        assert!(g.divide_by_relative_invariant(&d, &d).unwrap().is_one());
        let bad = parse_ratfunc(t, "x[1]^2").unwrap();
        assert!(matches!(g.divide_by_relative_invariant(&bad, &d), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn fingerprint_generators_are_invariant() {
        let g = a_spec(&[2]);
        let gens = g.invariant_generators();
        assert_eq!(gens, vec![parse_poly(g.table(), "x[1]+x[2]").unwrap(), parse_poly(g.table(), "x[1]*x[2]").unwrap()]);
        let d = d_spec(&[2]);
        let t = d.table();
        let gens = d.invariant_generators();
        assert_eq!(
            gens,
            vec![
                parse_poly(t, "x[1,1]^2+x[1,2]^2").unwrap(),
                parse_poly(t, "x[1,1]*x[1,2]").unwrap(),
                parse_poly(t, "x[1,1]^-1*x[1,2]^-1").unwrap(),
            ]
        );
        for p in d_spec(&[3]).invariant_generators() {
            assert!(d_spec(&[3]).is_invariant_poly(&p));
        }
        assert_eq!(a_spec(&[1]).invariant_generators().len(), 1);
    }
}
