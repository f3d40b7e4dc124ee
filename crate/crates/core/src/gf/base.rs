use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use super::{find_irreducible, Field};
use crate::counting::{factorize, is_prime, PrimePower};
use crate::error::{Error, Result};
use crate::polyring::Poly;

/// Fields up to this size get full addition/multiplication tables.
const TABLE_LIMIT: u64 = 256;
/// Largest non-prime `q` supported (log/antilog tables).
const LOG_TABLE_LIMIT: u64 = 1 << 20;
/// Primes must keep products inside `u64`.
const PRIME_LIMIT: u64 = 1 << 32;

/// The base field `F_q`, `q = p^k`.
///
/// Cheap to clone: the arithmetic tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

struct Inner {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible of degree `k` over `F_p`; `None` for prime fields.
    modulus: Option<Poly<u64>>,
    arith: Arith,
}

enum Arith {
    /// Direct modular arithmetic (prime fields above the table limit).
    Prime,
    /// Full `q x q` tables, row-major.
    Tables { add: Vec<u32>, mul: Vec<u32>, neg: Vec<u32>, inv: Vec<u32> },
    /// `exp[i] = g^i` for a generator `g`; addition is digitwise base `p`.
    Log { exp: Vec<u32>, log: Vec<u32> },
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= PRIME_LIMIT {
            return Err(Error::FieldTooLarge(format!("prime {p} >= 2^32")));
        }
        let mut inner = Inner { p, k: 1, q: p, modulus: None, arith: Arith::Prime };
        if p <= TABLE_LIMIT {
            inner.arith = build_tables(&inner);
        }
        Ok(FieldSpec { inner: Arc::new(inner) })
    }

    /// `F_{p^k}` with the lexicographically smallest modulus.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        let prime = FieldSpec::prime(p)?;
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree k must be >= 1".into()));
        }
        if k == 1 {
            return Ok(prime);
        }
        let g = find_irreducible(&prime, k as usize)?;
        FieldSpec::with_modulus(p, g)
    }

    pub fn from_q(q: u64) -> Result<Self> {
        let pp = PrimePower::from_q(q)?;
        FieldSpec::new(pp.p, pp.k)
    }

    pub fn from_prime_power(pp: PrimePower) -> Result<Self> {
        FieldSpec::new(pp.p, pp.k)
    }

    /// `F_p[y]/(g)` for an explicit monic irreducible `g` over `F_p`.
    pub fn with_modulus(p: u64, g: Poly<u64>) -> Result<Self> {
        let prime = FieldSpec::prime(p)?;
        let k = g
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidModulus("modulus must have degree >= 1".into()))?;
        if !g.is_monic(&prime) {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if g.coeffs().iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus("coefficients must lie in [0, p)".into()));
        }
        if !crate::polyring::is_irreducible(&g, &prime)? {
            return Err(Error::InvalidModulus("modulus is reducible".into()));
        }
        if k == 1 {
            return Ok(prime);
        }
        let q = (p as u128).pow(k as u32);
        if q > LOG_TABLE_LIMIT as u128 {
            return Err(Error::FieldTooLarge(format!("{p}^{k} exceeds the 2^20 limit for non-prime q")));
        }
        let mut inner = Inner { p, k: k as u32, q: q as u64, modulus: Some(g), arith: Arith::Prime };
        inner.arith = if inner.q <= TABLE_LIMIT { build_tables(&inner) } else { build_log(&inner)? };
        Ok(FieldSpec { inner: Arc::new(inner) })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn q(&self) -> u64 {
        self.inner.q
    }

    pub fn prime_power(&self) -> PrimePower {
        PrimePower { q: self.inner.q, p: self.inner.p, k: self.inner.k }
    }

    pub fn modulus(&self) -> Option<&Poly<u64>> {
        self.inner.modulus.as_ref()
    }

    /// Base-`p` digits of an element (coefficients of `1, y, ..., y^{k-1}`).
    pub fn to_digits(&self, a: u64) -> Vec<u64> {
        to_digits(a, self.inner.p, self.inner.k)
    }

    pub fn from_digits(&self, digits: &[u64]) -> Result<u64> {
        if digits.len() > self.inner.k as usize {
            return Err(Error::DimensionMismatch { expected: self.inner.k as usize, got: digits.len() });
        }
        let p = self.inner.p;
        let mut acc = 0u64;
        for &d in digits.iter().rev() {
            if d >= p {
                return Err(Error::Parse(format!("digit {d} is not in [0, {p})")));
            }
            acc = acc * p + d;
        }
        Ok(acc)
    }

    #[inline]
    fn add_raw(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.inner;
        match &inner.arith {
            Arith::Tables { add, .. } => add[(a * inner.q + b) as usize] as u64,
            Arith::Prime => {
                let s = a + b;
                if s >= inner.p {
                    s - inner.p
                } else {
                    s
                }
            }
            Arith::Log { .. } => digit_add(a, b, inner.p, inner.k),
        }
    }

    #[inline]
    fn neg_raw(&self, a: u64) -> u64 {
        let inner = &*self.inner;
        match &inner.arith {
            Arith::Tables { neg, .. } => neg[a as usize] as u64,
            Arith::Prime => {
                if a == 0 {
                    0
                } else {
                    inner.p - a
                }
            }
            Arith::Log { .. } => {
                let digits = to_digits(a, inner.p, inner.k);
                let negated: Vec<u64> = digits.iter().map(|&d| (inner.p - d) % inner.p).collect();
                from_digits_unchecked(&negated, inner.p)
            }
        }
    }

    #[inline]
    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.inner;
        match &inner.arith {
            Arith::Tables { mul, .. } => mul[(a * inner.q + b) as usize] as u64,
            Arith::Prime => a * b % inner.p,
            Arith::Log { exp, log } => {
                if a == 0 || b == 0 {
                    return 0;
                }
                let order = inner.q - 1;
                let s = (log[a as usize] as u64 + log[b as usize] as u64) % order;
                exp[s as usize] as u64
            }
        }
    }
}

impl Field for FieldSpec {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.inner.p
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.inner.q)
    }

    fn size(&self) -> Option<u64> {
        Some(self.inner.q)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.add_raw(*a, *b)
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add_raw(*a, self.neg_raw(*b))
    }

    fn neg(&self, a: &u64) -> u64 {
        self.neg_raw(*a)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_raw(*a, *b)
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::NotInvertible);
        }
        let inner = &*self.inner;
        Ok(match &inner.arith {
            Arith::Tables { inv, .. } => inv[*a as usize] as u64,
            Arith::Prime => crate::counting::pow_mod(*a, inner.p - 2, inner.p),
            Arith::Log { exp, log } => {
                let order = inner.q - 1;
                exp[((order - log[*a as usize] as u64) % order) as usize] as u64
            }
        })
    }

    fn from_int(&self, c: u64) -> u64 {
        c % self.inner.p
    }

    fn element(&self, index: u64) -> u64 {
        debug_assert!(index < self.inner.q);
        index
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.inner.q)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.k == other.inner.k
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.modulus {
            None => write!(f, "F_{}", self.inner.p),
            Some(g) => write!(f, "F_{}[y]/({:?})", self.inner.p, g.coeffs()),
        }
    }
}

fn to_digits(mut a: u64, p: u64, k: u32) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn from_digits_unchecked(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn digit_add(a: u64, b: u64, p: u64, k: u32) -> u64 {
    if p == 2 {
        return a ^ b;
    }
    let (mut a, mut b) = (a, b);
    let mut acc = 0;
    let mut place = 1;
    for _ in 0..k {
        acc += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    acc
}

/// Product of two canonical integers in `F_p[y]/(g)`, by schoolbook
/// multiplication and reduction on digit vectors.
fn slow_mul(a: u64, b: u64, inner: &Inner) -> u64 {
    let (p, k) = (inner.p, inner.k as usize);
    let Some(g) = &inner.modulus else {
        return a * b % p;
    };
    let da = to_digits(a, p, k as u32);
    let db = to_digits(b, p, k as u32);
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let gc = g.coeffs();
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        // g is monic: y^k = -(g_0 + ... + g_{k-1} y^{k-1}).
        for (j, &gj) in gc[..k].iter().enumerate() {
            let idx = top - k + j;
            prod[idx] = (prod[idx] + (p - gj) * c) % p;
        }
        prod[top] = 0;
    }
    from_digits_unchecked(&prod[..k], p)
}

fn build_tables(inner: &Inner) -> Arith {
    let q = inner.q;
    let mut add = vec![0u32; (q * q) as usize];
    let mut mul = vec![0u32; (q * q) as usize];
    for a in 0..q {
        for b in a..q {
            let s = digit_add(a, b, inner.p, inner.k) as u32;
            let m = slow_mul(a, b, inner) as u32;
            add[(a * q + b) as usize] = s;
            add[(b * q + a) as usize] = s;
            mul[(a * q + b) as usize] = m;
            mul[(b * q + a) as usize] = m;
        }
    }
    let mut neg = vec![0u32; q as usize];
    let mut inv = vec![0u32; q as usize];
    for a in 0..q {
        for b in 0..q {
            if add[(a * q + b) as usize] == 0 {
                neg[a as usize] = b as u32;
            }
            if mul[(a * q + b) as usize] == 1 {
                inv[a as usize] = b as u32;
            }
        }
    }
    Arith::Tables { add, mul, neg, inv }
}

fn build_log(inner: &Inner) -> Result<Arith> {
    let q = inner.q;
    let order = q - 1;
    let cofactors: Vec<u64> = factorize(order).into_iter().map(|(r, _)| order / r).collect();
    let slow_pow = |a: u64, mut e: u64| {
        let (mut acc, mut base) = (1u64, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = slow_mul(acc, base, inner);
            }
            base = slow_mul(base, base, inner);
            e >>= 1;
        }
        acc
    };
    let generator = (2..q)
        .find(|&g| cofactors.iter().all(|&c| slow_pow(g, c) != 1))
        .ok_or_else(|| Error::Inconsistent("no multiplicative generator found".into()))?;
    let mut exp = vec![0u32; order as usize];
    let mut log = vec![0u32; q as usize];
    let mut cur = 1u64;
    for i in 0..order {
        exp[i as usize] = cur as u32;
        log[cur as usize] = i as u32;
        cur = slow_mul(cur, generator, inner);
    }
    Ok(Arith::Log { exp, log })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check_axioms(k: &FieldSpec, trials: usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..trials {
            let (a, b, c) = (k.random(&mut rng), k.random(&mut rng), k.random(&mut rng));
            assert_eq!(k.add(&a, &b), k.add(&b, &a));
            assert_eq!(k.mul(&a, &b), k.mul(&b, &a));
            assert_eq!(k.add(&k.add(&a, &b), &c), k.add(&a, &k.add(&b, &c)));
            assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
            assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
            assert_eq!(k.add(&a, &k.neg(&a)), 0);
            assert_eq!(k.sub(&k.add(&a, &b), &b), a);
            if a != 0 {
                assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn axioms_across_representations() {
        // Tables (prime and extension), direct prime, log tables.
        for k in [
            FieldSpec::prime(2).unwrap(),
            FieldSpec::prime(251).unwrap(),
            FieldSpec::prime(65_537).unwrap(),
            FieldSpec::from_q(4).unwrap(),
            FieldSpec::from_q(9).unwrap(),
            FieldSpec::from_q(1024).unwrap(),
            FieldSpec::from_q(3125).unwrap(),
        ] {
            check_axioms(&k, 300);
        }
    }

    #[test]
    fn log_and_table_arithmetic_agree_with_schoolbook() {
        for k in [FieldSpec::from_q(16).unwrap(), FieldSpec::from_q(729).unwrap()] {
            let q = k.q();
            for a in (0..q).step_by(7) {
                for b in (0..q).step_by(5) {
                    assert_eq!(k.mul(&a, &b), slow_mul(a, b, &k.inner));
                }
            }
        }
    }

    #[test]
    fn f4_structure() {
        let k = FieldSpec::from_q(4).unwrap();
        assert_eq!(k.modulus().unwrap().coeffs(), &[1, 1, 1]);
        // y = 2, y^2 = y + 1 = 3.
        assert_eq!(k.mul(&2, &2), 3);
        assert_eq!(k.inv(&0), Err(Error::NotInvertible));
        assert_eq!(k.to_digits(3), vec![1, 1]);
        assert_eq!(k.from_digits(&[0, 1]).unwrap(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(FieldSpec::prime(6), Err(Error::NotPrime(6))));
        assert!(FieldSpec::from_q(6).is_err());
        let f2 = FieldSpec::prime(2).unwrap();
        let reducible = Poly::new(vec![1, 0, 1], &f2);
        assert!(matches!(FieldSpec::with_modulus(2, reducible), Err(Error::InvalidModulus(_))));
    }

    #[test]
    fn explicit_modulus_is_respected() {
        let f2 = FieldSpec::prime(2).unwrap();
        let g = Poly::new(vec![1, 1, 0, 0, 1], &f2);
        let k = FieldSpec::with_modulus(2, g.clone()).unwrap();
        assert_eq!(k.modulus(), Some(&g));
        assert_ne!(k, FieldSpec::from_q(16).unwrap());
        check_axioms(&k, 200);
    }
}
