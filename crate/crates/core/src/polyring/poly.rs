use std::cmp::Ordering;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf::Field;

/// Dense univariate polynomial, coefficients little-endian.
///
/// The highest stored coefficient is nonzero; the zero polynomial has no
/// coefficients and degree `None`. Arithmetic methods take the coefficient
/// field explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + Eq> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn new<F: Field<Elem = E>>(mut coeffs: Vec<E>, k: &F) -> Self {
        while coeffs.last().is_some_and(|c| k.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(c: E, k: &F) -> Self {
        Poly::new(vec![c], k)
    }

    pub fn one<F: Field<Elem = E>>(k: &F) -> Self {
        Poly { coeffs: vec![k.one()] }
    }

    pub fn x<F: Field<Elem = E>>(k: &F) -> Self {
        Poly { coeffs: vec![k.zero(), k.one()] }
    }

    /// `c * x^degree`.
    pub fn monomial<F: Field<Elem = E>>(c: E, degree: usize, k: &F) -> Self {
        let mut coeffs = vec![k.zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs, k)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one<F: Field<Elem = E>>(n: usize, k: &F) -> Self {
        let mut coeffs = vec![k.zero(); n + 1];
        coeffs[n] = k.one();
        coeffs[0] = k.sub(&coeffs[0], &k.one());
        Poly::new(coeffs, k)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, i: usize, k: &F) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, k: &F) -> bool {
        self.leading().is_some_and(|c| *c == k.one())
    }

    pub fn is_one<F: Field<Elem = E>>(&self, k: &F) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == k.one()
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o = k.add(o, c);
        }
        Poly::new(out, k)
    }

    pub fn neg<F: Field<Elem = E>>(&self, k: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        self.add(&other.neg(k), k)
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, k: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|x| k.mul(x, c)).collect(), k)
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        Poly::new(out, k)
    }

    /// Quotient and remainder with `deg r < deg divisor`.
    pub fn divmod<F: Field<Elem = E>>(&self, divisor: &Self, k: &F) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = k.inv(divisor.leading().expect("nonzero divisor"))?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![k.zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[top], k.zero());
            if k.is_zero(&c) {
                continue;
            }
            let factor = k.mul(&c, &lead_inv);
            for (j, dj) in divisor.coeffs[..dd].iter().enumerate() {
                let idx = top - dd + j;
                rem[idx] = k.sub(&rem[idx], &k.mul(&factor, dj));
            }
            quot[top - dd] = factor;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot, k), Poly::new(rem, k)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, divisor: &Self, k: &F) -> Result<Self> {
        Ok(self.divmod(divisor, k)?.1)
    }

    /// Exact quotient; errors if `divisor` does not divide `self`.
    pub fn div_exact<F: Field<Elem = E>>(&self, divisor: &Self, k: &F) -> Result<Self> {
        let (q, r) = self.divmod(divisor, k)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Result<bool> {
        Ok(other.rem(self, k)?.is_zero())
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic<F: Field<Elem = E>>(&self, k: &F) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(c) if *c == k.one() => self.clone(),
            Some(c) => self.scale(&k.inv(c).expect("nonzero leading coefficient"), k),
        }
    }

    /// Monic gcd; `gcd(f, 0) = monic(f)` and `gcd(0, 0) = 0`.
    pub fn gcd<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// `(g, s, t)` with `g = s*self + t*other` monic.
    pub fn ext_gcd<F: Field<Elem = E>>(&self, other: &Self, k: &F) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(k), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1, k).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, k), k);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, k), k);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(c) => {
                let inv = k.inv(&c).expect("nonzero leading coefficient");
                (r0.scale(&inv, k), s0.scale(&inv, k), t0.scale(&inv, k))
            }
        }
    }

    /// Inverse of `self` modulo `modulus`.
    pub fn inv_mod<F: Field<Elem = E>>(&self, modulus: &Self, k: &F) -> Result<Self> {
        let a = self.rem(modulus, k)?;
        let (g, s, _) = a.ext_gcd(modulus, k);
        if !g.is_one(k) {
            return Err(Error::NotInvertible);
        }
        s.rem(modulus, k)
    }

    pub fn mul_mod<F: Field<Elem = E>>(&self, other: &Self, modulus: &Self, k: &F) -> Result<Self> {
        self.mul(other, k).rem(modulus, k)
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod<F: Field<Elem = E>>(&self, exp: &BigUint, modulus: &Self, k: &F) -> Result<Self> {
        let base = self.rem(modulus, k)?;
        let mut acc = Poly::one(k).rem(modulus, k)?;
        for i in (0..exp.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus, k)?;
            if exp.bit(i) {
                acc = acc.mul_mod(&base, modulus, k)?;
            }
        }
        Ok(acc)
    }

    pub fn pow<F: Field<Elem = E>>(&self, exp: u64, k: &F) -> Self {
        let mut acc = Poly::one(k);
        for i in (0..u64::BITS - exp.leading_zeros()).rev() {
            acc = acc.mul(&acc, k);
            if (exp >> i) & 1 == 1 {
                acc = acc.mul(self, k);
            }
        }
        acc
    }

    pub fn derivative<F: Field<Elem = E>>(&self, k: &F) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| k.mul(&k.from_int(i as u64), c)).collect();
        Poly::new(coeffs, k)
    }

    /// Horner evaluation at a point of the coefficient field.
    pub fn eval<F: Field<Elem = E>>(&self, at: &E, k: &F) -> E {
        self.coeffs.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, at), c))
    }
}

/// Degree first, then coefficient vectors lexicographically from the
/// constant term upward.
impl<E: Ord> Ord for Poly<E> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl<E: Ord> PartialOrd for Poly<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use proptest::prelude::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..3, 0..max_len)
    }

    #[test]
    fn normalization() {
        let k = f3();
        let p = Poly::new(vec![1, 2, 0, 0], &k);
        assert_eq!(p.coeffs(), &[1, 2]);
        assert_eq!(Poly::new(vec![0, 0], &k), Poly::zero());
        assert_eq!(Poly::<u64>::zero().degree(), None);
        assert_eq!(p.add(&p.neg(&k), &k), Poly::zero());
    }

    #[test]
    fn division_by_zero() {
        let k = f3();
        let p = Poly::new(vec![1, 1], &k);
        assert_eq!(p.divmod(&Poly::zero(), &k), Err(Error::DivisionByZero));
    }

    #[test]
    fn derivative_in_characteristic() {
        let k = f3();
        // d/dx (x^3 + 2x^2 + x) = 3x^2 + 4x + 1 = x + 1 over F_3.
        let p = Poly::new(vec![0, 1, 2, 1], &k);
        assert_eq!(p.derivative(&k).coeffs(), &[1, 1]);
    }

    #[test]
    fn ordering() {
        let k = f3();
        let a = Poly::new(vec![1, 0, 1], &k);
        let b = Poly::new(vec![0, 1, 1], &k);
        let c = Poly::new(vec![2, 1], &k);
        assert!(c < b && b < a);
    }

    proptest! {
        #[test]
        fn divmod_round_trip(f in arb_poly(12), g in arb_poly(7)) {
            let k = f3();
            let f = Poly::new(f, &k);
            let g = Poly::new(g, &k);
            prop_assume!(!g.is_zero());
            let (q, r) = f.divmod(&g, &k).unwrap();
            prop_assert_eq!(q.mul(&g, &k).add(&r, &k), f);
            prop_assert!(r.degree() < g.degree());
        }

        #[test]
        fn gcd_is_monic_common_divisor(f in arb_poly(9), g in arb_poly(9), h in arb_poly(4)) {
            let k = f3();
            let h = Poly::new(h, &k);
            let f = Poly::new(f, &k).mul(&h, &k);
            let g = Poly::new(g, &k).mul(&h, &k);
            let d = f.gcd(&g, &k);
            if f.is_zero() && g.is_zero() {
                prop_assert!(d.is_zero());
            } else {
                prop_assert!(d.is_monic(&k));
                prop_assert!(d.divides(&f, &k).unwrap());
                prop_assert!(d.divides(&g, &k).unwrap());
                if !h.is_zero() {
                    prop_assert!(d.degree() >= h.degree());
                }
            }
            prop_assert_eq!(f.gcd(&Poly::zero(), &k), f.monic(&k));
        }

        #[test]
        fn bezout_identity(f in arb_poly(9), g in arb_poly(9)) {
            let k = f3();
            let f = Poly::new(f, &k);
            let g = Poly::new(g, &k);
            let (d, s, t) = f.ext_gcd(&g, &k);
            prop_assert_eq!(s.mul(&f, &k).add(&t.mul(&g, &k), &k), d.clone());
            prop_assert_eq!(d, f.gcd(&g, &k));
        }
    }
}
