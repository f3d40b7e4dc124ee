use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use super::{check_budget, find_irreducible, Field, FieldSpec};
use crate::error::{Error, Result};
use crate::polyring::{is_irreducible, Poly};

/// The extension `F_{q^n} = F_q[x]/(f)` of a base field `F`.
///
/// Elements are coefficient vectors of length `n`, constant term first.
#[derive(Clone)]
pub struct ExtSpec<F: Field = FieldSpec> {
    inner: Arc<Inner<F>>,
}

struct Inner<F: Field> {
    base: F,
    n: usize,
    modulus: Poly<F::Elem>,
    /// Column `i` is `x^{i q} mod f`; the Frobenius map is this matrix.
    frobenius: Vec<Vec<F::Elem>>,
    order: BigUint,
}

impl<F: Field> ExtSpec<F> {
    /// Degree-`n` extension with the lexicographically smallest modulus.
    pub fn new(base: &F, n: usize) -> Result<Self> {
        let f = find_irreducible(base, n)?;
        Self::build(base.clone(), f)
    }

    /// `F[x]/(f)` for a monic irreducible `f`.
    pub fn with_modulus(base: &F, f: Poly<F::Elem>) -> Result<Self> {
        let n = f
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidModulus("modulus must have degree >= 1".into()))?;
        if !f.is_monic(base) {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if !is_irreducible(&f, base)? {
            return Err(Error::InvalidModulus(format!("degree-{n} modulus is reducible")));
        }
        Self::build(base.clone(), f)
    }

    fn build(base: F, modulus: Poly<F::Elem>) -> Result<Self> {
        let n = modulus.degree().unwrap_or(0);
        let xq = Poly::x(&base).pow_mod(&base.order(), &modulus, &base)?;
        let mut frobenius = Vec::with_capacity(n);
        let mut col = Poly::constant(base.one(), &base);
        for _ in 0..n {
            frobenius.push(pad(&col, n, &base));
            col = col.mul(&xq, &base).rem(&modulus, &base)?;
        }
        let order = num_traits::pow::pow(base.order(), n);
        Ok(ExtSpec { inner: Arc::new(Inner { base, n, modulus, frobenius, order }) })
    }

    pub fn base(&self) -> &F {
        &self.inner.base
    }

    pub fn degree(&self) -> usize {
        self.inner.n
    }

    pub fn modulus(&self) -> &Poly<F::Elem> {
        &self.inner.modulus
    }

    /// `frobenius_matrix()[i]` is the coordinate vector of `x^{iq}`.
    pub fn frobenius_matrix(&self) -> &[Vec<F::Elem>] {
        &self.inner.frobenius
    }

    pub fn check(&self, a: &[F::Elem]) -> Result<()> {
        if a.len() != self.inner.n {
            return Err(Error::DimensionMismatch { expected: self.inner.n, got: a.len() });
        }
        Ok(())
    }

    /// The constant `c` of the base field as an element of the extension.
    pub fn embed(&self, c: &F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.inner.base.zero(); self.inner.n];
        v[0] = c.clone();
        v
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(&self) -> Vec<F::Elem> {
        let k = &self.inner.base;
        pad(&Poly::x(k).rem(&self.inner.modulus, k).unwrap_or_else(|_| Poly::zero()), self.inner.n, k)
    }

    pub fn from_poly(&self, p: &Poly<F::Elem>) -> Vec<F::Elem> {
        let k = &self.inner.base;
        let r = p.rem(&self.inner.modulus, k).unwrap_or_else(|_| Poly::zero());
        pad(&r, self.inner.n, k)
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> Poly<F::Elem> {
        Poly::new(a.to_vec(), &self.inner.base)
    }

    /// `a^q`, computed as a matrix-vector product since `c^q = c` for base constants.
    pub fn frobenius(&self, a: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.check(a)?;
        Ok(self.frobenius_unchecked(a))
    }

    pub(crate) fn frobenius_unchecked(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        let k = &self.inner.base;
        let mut out = vec![k.zero(); self.inner.n];
        for (ai, col) in a.iter().zip(&self.inner.frobenius) {
            if k.is_zero(ai) {
                continue;
            }
            for (o, c) in out.iter_mut().zip(col) {
                *o = k.add(o, &k.mul(ai, c));
            }
        }
        out
    }

    /// `[a, a^q, ..., a^{q^{n-1}}]`.
    pub fn conjugates(&self, a: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
        self.check(a)?;
        let mut out = Vec::with_capacity(self.inner.n);
        let mut cur = a.to_vec();
        for _ in 0..self.inner.n {
            let next = self.frobenius_unchecked(&cur);
            out.push(cur);
            cur = next;
        }
        Ok(out)
    }

    /// `a + a^q + ... + a^{q^{n-1}}`, returned as a base-field element.
    pub fn field_trace(&self, a: &[F::Elem]) -> Result<F::Elem> {
        let k = &self.inner.base;
        let mut sum = vec![k.zero(); self.inner.n];
        for c in self.conjugates(a)? {
            for (s, x) in sum.iter_mut().zip(&c) {
                *s = k.add(s, x);
            }
        }
        if sum[1..].iter().any(|x| !k.is_zero(x)) {
            return Err(Error::Inconsistent("trace does not lie in the base field".into()));
        }
        Ok(sum.swap_remove(0))
    }

    /// Every element once, in lexicographic coefficient order (constant
    /// term most significant), refusing fields larger than `budget`.
    pub fn elements(&self, budget: u64) -> Result<Elements<F>> {
        check_budget(self.size(), budget, "extension field elements")?;
        let q = self.inner.base.size().unwrap_or(0);
        Ok(Elements { ext: self.clone(), q, digits: vec![0; self.inner.n], done: false })
    }

    /// Element whose coefficient `i` is the base element with index `digits[i]`.
    pub fn element_from_digits(&self, digits: &[u64]) -> Vec<F::Elem> {
        digits.iter().map(|&d| self.inner.base.element(d)).collect()
    }
}

fn pad<F: Field>(p: &Poly<F::Elem>, n: usize, k: &F) -> Vec<F::Elem> {
    let mut v = p.coeffs().to_vec();
    v.resize(n, k.zero());
    v
}

impl<F: Field> Field for ExtSpec<F> {
    type Elem = Vec<F::Elem>;

    fn characteristic(&self) -> u64 {
        self.inner.base.characteristic()
    }

    fn order(&self) -> BigUint {
        self.inner.order.clone()
    }

    fn size(&self) -> Option<u64> {
        u64::try_from(&self.inner.order).ok()
    }

    fn zero(&self) -> Self::Elem {
        vec![self.inner.base.zero(); self.inner.n]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.inner.base.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.inner.base.is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.inner.base;
        a.iter().zip(b).map(|(x, y)| k.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.inner.base;
        a.iter().zip(b).map(|(x, y)| k.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        let k = &self.inner.base;
        a.iter().map(|x| k.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.inner.base;
        let n = self.inner.n;
        let mut prod = vec![k.zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = k.add(&prod[i + j], &k.mul(x, y));
            }
        }
        let f = self.inner.modulus.coeffs();
        for top in (n..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[top], k.zero());
            if k.is_zero(&c) {
                continue;
            }
            for (j, fj) in f[..n].iter().enumerate() {
                let idx = top - n + j;
                prod[idx] = k.sub(&prod[idx], &k.mul(&c, fj));
            }
        }
        prod.truncate(n);
        prod
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        let k = &self.inner.base;
        let ap = Poly::new(a.clone(), k);
        let inv = ap.inv_mod(&self.inner.modulus, k)?;
        Ok(pad(&inv, self.inner.n, k))
    }

    fn from_int(&self, c: u64) -> Self::Elem {
        self.embed(&self.inner.base.from_int(c))
    }

    /// The constant term is the most significant digit, so indices follow
    /// the lexicographic order of coefficient vectors.
    fn element(&self, mut index: u64) -> Self::Elem {
        let q = self.inner.base.size().unwrap_or(u64::MAX);
        let mut digits = vec![0u64; self.inner.n];
        for d in digits.iter_mut().rev() {
            *d = index % q;
            index /= q;
        }
        self.element_from_digits(&digits)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        (0..self.inner.n).map(|_| self.inner.base.random(rng)).collect()
    }
}

impl<F: Field> PartialEq for ExtSpec<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl<F: Field> fmt::Debug for ExtSpec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[x]/({:?})", self.inner.base, self.inner.modulus.coeffs())
    }
}

/// Iterator over all elements of an [`ExtSpec`]; see [`ExtSpec::elements`].
pub struct Elements<F: Field> {
    ext: ExtSpec<F>,
    q: u64,
    digits: Vec<u64>,
    done: bool,
}

impl<F: Field> Iterator for Elements<F> {
    type Item = Vec<F::Elem>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = self.ext.element_from_digits(&self.digits);
        // The last coordinate varies fastest.
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.q {
                break;
            }
            self.digits[i] = 0;
        }
        Some(item)
    }
}
