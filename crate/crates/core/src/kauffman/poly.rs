//! Integer Laurent polynomials in the two variables a and z.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse Laurent polynomial; keys are (a exponent, z exponent), zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i32, i32), i64>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        LaurentPoly2::default()
    }

    pub fn one() -> Self {
        LaurentPoly2::monomial(1, 0, 0)
    }

    pub fn monomial(coeff: i64, a: i32, z: i32) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert((a, z), coeff);
        }
        LaurentPoly2 { terms }
    }

    /// delta = (a + a^-1) z^-1 - 1, the value of an extra split unknot.
    pub fn delta() -> Self {
        let mut p = LaurentPoly2::zero();
        p.add_term(1, 1, -1);
        p.add_term(1, -1, -1);
        p.add_term(-1, 0, 0);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)) == Some(&1)
    }

    pub fn add_term(&mut self, coeff: i64, a: i32, z: i32) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry((a, z)).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&(a, z));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    /// Multiplies by coeff * a^da * z^dz in place.
    pub fn scale(&self, coeff: i64, da: i32, dz: i32) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for ((a, z), c) in self.terms() {
            out.add_term(c * coeff, a + da, z + dz);
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> LaurentPoly2 {
        let mut base = self.clone();
        let mut acc = LaurentPoly2::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Substitutes a -> a^-1 (the mirror image polynomial).
    pub fn mirror_a(&self) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for ((a, z), c) in self.terms() {
            out.add_term(c, -a, z);
        }
        out
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for ((a, z), c) in rhs.terms() {
            out.add_term(c, a, z);
        }
        out
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for ((a, z), c) in rhs.terms() {
            out.add_term(-c, a, z);
        }
        out
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for ((a1, z1), c1) in self.terms() {
            for ((a2, z2), c2) in rhs.terms() {
                out.add_term(c1 * c2, a1 + a2, z1 + z2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        self.scale(-1, 0, 0)
    }
}

impl fmt::Display for LaurentPoly2 {
    /// Canonical form: `coeff a^i z^j` terms joined by `+`, ordered by
    /// (i, j).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, z), c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{c} a^{a} z^{z}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_laws_spotcheck() {
        let p = LaurentPoly2::monomial(2, 1, -1);
        let q = LaurentPoly2::delta();
        let r = LaurentPoly2::monomial(-1, 0, 2);
        let left = &(&p + &q) * &r;
        let right = &(&p * &r) + &(&q * &r);
        assert_eq!(left, right);
        assert_eq!(&p - &p, LaurentPoly2::zero());
    }

    #[test]
    fn mirror_is_involution() {
        let q = &LaurentPoly2::delta() * &LaurentPoly2::monomial(3, 2, 1);
        assert_eq!(q.mirror_a().mirror_a(), q);
    }

    #[test]
    fn delta_display() {
        assert_eq!(
            LaurentPoly2::delta().to_string(),
            "1 a^-1 z^-1+-1 a^0 z^0+1 a^1 z^-1"
        );
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let d = LaurentPoly2::delta();
        assert_eq!(d.pow(0), LaurentPoly2::one());
        assert_eq!(d.pow(3), &(&d * &d) * &d);
    }
}
