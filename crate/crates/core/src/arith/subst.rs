use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::accumulate;
use super::{ArithError, Central, Monomial, Poly, RatFunc, Rational, VarId, VarTable};

/// Image of one variable under an affine automorphism:
/// `x_v -> scale * q^q_exp * x_target + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarImage {
    pub target: VarId,
    pub scale: Rational,
    pub q_exp: i32,
    pub offset: Rational,
}

impl VarImage {
    pub fn identity(v: VarId) -> Self {
        VarImage { target: v, scale: Rational::one(), q_exp: 0, offset: Rational::zero() }
    }

    fn is_monomial(&self) -> bool {
        self.offset.is_zero()
    }
}

/// Ring automorphism built from permutations, sign changes, additive shifts
/// and multiplicative `q`-shifts of the variables. Images of coprime
/// numerator and denominator stay coprime, so no gcd is needed when applying
/// it to a normalized fraction.
#[derive(Clone, Debug)]
pub struct Substitution {
    table: Arc<VarTable>,
    images: Vec<VarImage>,
    q: Option<VarId>,
}

impl Substitution {
    pub fn identity(table: &Arc<VarTable>) -> Self {
        Substitution {
            table: Arc::clone(table),
            images: (0..table.nvars()).map(VarImage::identity).collect(),
            q: table.central(Central::Q),
        }
    }

    /// Set the image of `v`. Offsets on Laurent variables and `q`-powers
    /// without a `q` in the table are rejected.
    pub fn set(&mut self, v: VarId, image: VarImage) -> Result<(), ArithError> {
        if !image.offset.is_zero() && self.table.is_laurent(v) {
            return Err(ArithError::InvalidSubstitution(format!(
                "additive shift of Laurent variable {}",
                self.table.name(v)
            )));
        }
        if image.q_exp != 0 && self.q.is_none() {
            return Err(ArithError::MissingCentral("q"));
        }
        if image.scale.is_zero() {
            return Err(ArithError::InvalidSubstitution("zero scale".into()));
        }
        self.images[v] = image;
        Ok(())
    }

    pub fn image(&self, v: VarId) -> &VarImage {
        &self.images[v]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(v, im)| *im == VarImage::identity(v))
    }

    pub fn apply_poly(&self, p: &Poly) -> Poly {
        if self.is_identity() {
            return p.clone();
        }
        let n = self.table.nvars();
        let mut out = BTreeMap::new();
        let mut cache: HashMap<(VarId, i32), Poly> = HashMap::new();
        for (m, c) in p.terms() {
            let mut mono = Monomial::one(n);
            let mut coeff = c.clone();
            let mut factors: Vec<(VarId, i32)> = Vec::new();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let im = &self.images[v];
                if im.is_monomial() {
                    mono.set_exp(im.target, mono.exp(im.target) + e);
                    if !im.scale.is_one() {
                        coeff *= num_traits::pow::Pow::pow(&im.scale, e);
                    }
                    if im.q_exp != 0 {
                        let q = self.q.expect("checked in set");
                        mono.set_exp(q, mono.exp(q) + im.q_exp * e);
                    }
                } else {
                    factors.push((v, e));
                }
            }
            if factors.is_empty() {
                accumulate(&mut out, mono, coeff);
                continue;
            }
            let mut term = Poly::monomial(&self.table, mono, coeff);
            for (v, e) in factors {
                let f = cache.entry((v, e)).or_insert_with(|| self.affine_power(v, e));
                term = &term * f;
            }
            for (m, c) in term.into_terms() {
                accumulate(&mut out, m, c);
            }
        }
        Poly::from_terms(&self.table, out)
    }

    fn affine_power(&self, v: VarId, e: i32) -> Poly {
        debug_assert!(e > 0, "offsets only on polynomial variables");
        let im = &self.images[v];
        let mut mono = Monomial::var(self.table.nvars(), im.target, 1);
        if im.q_exp != 0 {
            mono.set_exp(self.q.expect("checked in set"), im.q_exp);
        }
        let lin = &Poly::monomial(&self.table, mono, im.scale.clone()) + &Poly::constant(&self.table, im.offset.clone());
        lin.pow(e as u32)
    }

    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        if self.is_identity() {
            return f.clone();
        }
        let num = self.apply_poly(f.num());
        let den = self.apply_poly(f.den());
        RatFunc::from_coprime(num, den)
    }
}
