//! Small-integer number theory: factorization, Möbius, totient and
//! multiplicative order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime factorization by trial division, primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn moebius(d: u64) -> Result<i8> {
    if d < 1 {
        return Err(Error::InvalidArgument("moebius requires d >= 1".into()));
    }
    let f = factorize(d);
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len().is_multiple_of(2) { 1 } else { -1 })
}

pub fn euler_phi(d: u64) -> Result<u64> {
    if d < 1 {
        return Err(Error::InvalidArgument("euler_phi requires d >= 1".into()));
    }
    Ok(factorize(d).into_iter().fold(d, |acc, (p, _)| acc / p * (p - 1)))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Least `t >= 1` with `q^t = 1 (mod d)`; `mult_order(q, 1) = 1`.
pub fn mult_order(q: u64, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if d == 1 {
        return Ok(1);
    }
    if q.gcd(&d) != 1 {
        return Err(Error::InvalidArgument(format!("gcd({q}, {d}) != 1")));
    }
    let phi = euler_phi(d)?;
    // The order divides phi(d); shrink phi by each prime as far as possible.
    let mut t = phi;
    for (r, _) in factorize(phi) {
        while t % r == 0 && pow_mod(q, t / r, d) == 1 {
            t /= r;
        }
    }
    Ok(t)
}

pub fn is_primitive_root(q: u64, n: u64) -> Result<bool> {
    Ok(mult_order(q, n)? == euler_phi(n)?)
}

/// Largest `v` with `q^v | t`.
pub fn q_adic_valuation(t: &BigUint, q: u64) -> Result<u64> {
    if t.is_zero() {
        return Err(Error::InvalidArgument("valuation of 0 is undefined".into()));
    }
    if q < 2 {
        return Err(Error::InvalidArgument("valuation base must be >= 2".into()));
    }
    let q = BigUint::from(q);
    let mut t = t.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = t.div_rem(&q);
        if !rem.is_zero() {
            return Ok(v);
        }
        t = quot;
        v += 1;
    }
}

/// A prime power `q = p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePower {
    pub q: u64,
    pub p: u64,
    pub k: u32,
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::NotPrimePower(format!("{p}^0")));
        }
        let q = p.checked_pow(k).ok_or_else(|| Error::FieldTooLarge(format!("{p}^{k} overflows u64")))?;
        Ok(PrimePower { q, p, k })
    }

    pub fn from_q(q: u64) -> Result<Self> {
        match factorize(q).as_slice() {
            [(p, k)] => PrimePower::new(*p, *k),
            _ => Err(Error::NotPrimePower(q.to_string())),
        }
    }

    pub fn big(&self) -> BigUint {
        BigUint::from(self.q)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// Accepts either a bare integer (`"9"`) or a `"p^k"` literal (`"3^2"`).
impl FromStr for PrimePower {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::NotPrimePower(s.to_string());
        match s.split_once('^') {
            Some((p, k)) => {
                let p: u64 = p.trim().parse().map_err(|_| bad())?;
                let k: u32 = k.trim().parse().map_err(|_| bad())?;
                PrimePower::new(p, k).map_err(|_| bad())
            }
            None => {
                let q: u64 = s.parse().map_err(|_| bad())?;
                PrimePower::from_q(q)
            }
        }
    }
}

/// `n = m * p^e` with `p` not dividing `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitN {
    pub n: u64,
    pub p: u64,
    pub m: u64,
    pub e: u32,
}

impl SplitN {
    pub fn new(n: u64, p: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument("n must be >= 1".into()));
        }
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let (mut m, mut e) = (n, 0);
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        Ok(SplitN { n, p, m, e })
    }

    pub fn p_power(&self) -> u64 {
        self.p.pow(self.e)
    }
}

pub(crate) fn big_pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow::pow(BigUint::from(base), exp as usize)
}

pub(crate) fn big_one() -> BigUint {
    BigUint::one()
}
