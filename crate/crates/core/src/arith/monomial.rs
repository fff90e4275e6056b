use std::cmp::Ordering;

use smallvec::SmallVec;

use super::VarId;

/// Dense exponent vector over all variables of a table. Exponents may be
/// negative for Laurent variables.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// variable 0, then variable 1, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[i32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, v: VarId, exp: i32) -> Self {
        let mut m = Self::one(nvars);
        m.0[v] = exp;
        m
    }

    pub fn from_exponents(exps: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn exp(&self, v: VarId) -> i32 {
        self.0[v]
    }

    pub fn set_exp(&mut self, v: VarId, e: i32) {
        self.0[v] = e;
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` as exponent subtraction (may produce negative exponents).
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|&e| e * k).collect())
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a.min(b)).collect())
    }

    /// True when every exponent of `self` is at most the matching exponent of
    /// `other`, i.e. `self` divides `other` among monomials with non-negative
    /// exponents.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Zero out the given variable, returning its old exponent.
    pub fn take(&mut self, v: VarId) -> i32 {
        std::mem::replace(&mut self.0[v], 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x = Monomial::from_exponents(&[1, 0]);
        let y = Monomial::from_exponents(&[0, 1]);
        let y2 = Monomial::from_exponents(&[0, 2]);
        let one = Monomial::one(2);
        assert!(one < y && y < x && x < y2);
        let xinv = Monomial::from_exponents(&[-1, 0]);
        assert!(xinv < one);
    }

    #[test]
    fn arithmetic() {
        let a = Monomial::from_exponents(&[2, -1]);
        let b = Monomial::from_exponents(&[1, 3]);
        assert_eq!(a.mul(&b).exponents(), &[3, 2]);
        assert_eq!(a.div(&b).exponents(), &[1, -4]);
        assert_eq!(a.meet(&b).exponents(), &[1, -1]);
        assert!(Monomial::from_exponents(&[1, 0]).divides(&b));
        assert!(!a.divides(&b));
    }
}
