//! Closed-form counts: normal elements, normal bases, irreducible
//! polynomials with prescribed trace, and the two sides of the
//! normal-element / nonzero-trace inequality.
//!
//! Every quantity is an exact big integer. Divisor sums over the
//! trace-restricted counts range over the divisors of the `p`-free part
//! `m` of `n`, not over the divisors of `n`.

mod arith;
mod report;

pub(crate) use arith::{big_one, big_pow, pow_mod};
pub use arith::{
    divisors, euler_phi, factorize, is_prime, is_primitive_root, moebius, mult_order, prime_divisors, q_adic_valuation,
    PrimePower, SplitN,
};
pub use report::{CountReport, CSV_HEADER};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

fn check_n(n: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    Ok(())
}

fn exact_div(num: &BigUint, den: &BigUint, what: &str) -> Result<BigUint> {
    let (quot, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(Error::Inconsistent(format!("{what}: {num} not divisible by {den}")));
    }
    Ok(quot)
}

fn to_unsigned(x: BigInt, what: &str) -> Result<BigUint> {
    if x.is_negative() {
        return Err(Error::Inconsistent(format!("{what} is negative: {x}")));
    }
    Ok(x.to_biguint().unwrap_or_default())
}

/// `sum_{d | divisors_of} mu(d) q^{n/d}`.
fn moebius_sum(n: u64, q: u64, divisors_of: u64) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for d in divisors(divisors_of) {
        let term = BigInt::from_biguint(Sign::Plus, big_pow(q, n / d));
        match moebius(d)? {
            1 => acc += term,
            -1 => acc -= term,
            _ => {}
        }
    }
    Ok(acc)
}

/// Number of normal elements of `F_{q^n}` over `F_q`:
/// `q^{n-m} * prod_{d | m} (q^{tau(d)} - 1)^{phi(d)/tau(d)}`.
pub fn v_count(n: u64, q: PrimePower) -> Result<BigUint> {
    check_n(n)?;
    let split = SplitN::new(n, q.p)?;
    let mut acc = big_pow(q.q, n - split.m);
    for d in divisors(split.m) {
        let tau = mult_order(q.q, d)?;
        let phi = euler_phi(d)?;
        if phi % tau != 0 {
            return Err(Error::Inconsistent(format!("tau({d}) = {tau} does not divide phi({d}) = {phi}")));
        }
        let base = big_pow(q.q, tau) - big_one();
        acc *= num_traits::pow::pow(base, (phi / tau) as usize);
    }
    Ok(acc)
}

/// Number of normal bases, `v(n, q) / n`.
pub fn normal_basis_count(n: u64, q: PrimePower) -> Result<BigUint> {
    let v = v_count(n, q)?;
    exact_div(&v, &BigUint::from(n), "normal element count / n")
}

/// Number of monic irreducibles of degree `n` whose `x^{n-1}` coefficient
/// is the nonzero base-field element with canonical index `t`.
///
/// The value does not depend on `t`; the argument is only range-checked.
pub fn irr_count_trace(n: u64, q: PrimePower, t: u64) -> Result<BigUint> {
    check_n(n)?;
    if t == 0 {
        return Err(Error::InvalidArgument("trace t must be nonzero; use zero_trace_irr_count".into()));
    }
    if t >= q.q {
        return Err(Error::InvalidArgument(format!("trace index {t} is not an element of F_{}", q.q)));
    }
    let m_divisors = SplitN::new(n, q.p)?.m;
    let sum = to_unsigned(moebius_sum(n, q.q, m_divisors)?, "trace-restricted Moebius sum")?;
    exact_div(&sum, &(q.big() * BigUint::from(n)), "I_q(n, t)")
}

/// Number of monic irreducibles of degree `n` with nonzero `x^{n-1}` coefficient.
pub fn nonzero_trace_irr_count(n: u64, q: PrimePower) -> Result<BigUint> {
    Ok(irr_count_trace(n, q, 1)? * BigUint::from(q.q - 1))
}

/// Total number of monic irreducibles of degree `n` (divisor sum over all of `n`).
pub fn total_irr_count(n: u64, q: PrimePower) -> Result<BigUint> {
    check_n(n)?;
    let sum = to_unsigned(moebius_sum(n, q.q, n)?, "necklace sum")?;
    exact_div(&sum, &BigUint::from(n), "irreducible count")
}

/// Number of monic irreducibles of degree `n` with zero `x^{n-1}` coefficient.
pub fn zero_trace_irr_count(n: u64, q: PrimePower) -> Result<BigUint> {
    let total = total_irr_count(n, q)?;
    let nonzero = nonzero_trace_irr_count(n, q)?;
    if nonzero > total {
        return Err(Error::Inconsistent("nonzero-trace count exceeds total".into()));
    }
    Ok(total - nonzero)
}

/// Both sides of the inequality `v(n, q) <= ((q-1)/q) * sum_{d | m} mu(d) q^{n/d}`.
pub fn inequality_sides(n: u64, q: PrimePower) -> Result<(BigUint, BigUint)> {
    let lhs = v_count(n, q)?;
    let m_divisors = SplitN::new(n, q.p)?.m;
    let sum = to_unsigned(moebius_sum(n, q.q, m_divisors)?, "trace-restricted Moebius sum")?;
    let rhs = exact_div(&sum, &q.big(), "Moebius sum / q")? * BigUint::from(q.q - 1);
    Ok((lhs, rhs))
}

/// True iff `n` is a power of `p` (including `n = 1`), or `n` is a prime
/// other than `p` modulo which `q` is a primitive root.
pub fn equality_predicate(n: u64, q: PrimePower) -> bool {
    let Ok(split) = SplitN::new(n, q.p) else {
        return false;
    };
    if split.m == 1 {
        return true;
    }
    is_prime(n) && n != q.p && is_primitive_root(q.q, n).unwrap_or(false)
}

/// `q^{1 + phi(n)} - q^{phi(n)} - q` for squarefree `n` coprime to `p` with
/// at least two prime factors. Lower-bounds the number of elements
/// annihilated by `Psi_1 (x) Psi_n` that are neither trace-zero nor of
/// degree less than `n`.
pub fn witness_lower_bound(n: u64, q: PrimePower) -> Result<BigUint> {
    check_n(n)?;
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        return Err(Error::InvalidArgument(format!("{n} is not squarefree")));
    }
    if f.len() < 2 {
        return Err(Error::InvalidArgument(format!("{n} has fewer than two prime factors")));
    }
    if n.is_multiple_of(q.p) {
        return Err(Error::InvalidArgument(format!("characteristic {} divides {n}", q.p)));
    }
    let phi = euler_phi(n)?;
    let value = BigInt::from(big_pow(q.q, phi + 1)) - BigInt::from(big_pow(q.q, phi)) - BigInt::from(q.q);
    if value < BigInt::from(1) {
        return Err(Error::Inconsistent(format!("witness bound {value} < 1")));
    }
    to_unsigned(value, "witness bound")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::from_q(q).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn normal_element_counts() {
        assert_eq!(v_count(3, pp(2)).unwrap(), big(3));
        assert_eq!(v_count(4, pp(2)).unwrap(), big(8));
        assert_eq!(v_count(7, pp(2)).unwrap(), big(49));
        assert_eq!(v_count(1, pp(5)).unwrap(), big(4));
    }

    #[test]
    fn normal_basis_counts() {
        assert_eq!(normal_basis_count(3, pp(2)).unwrap(), big(1));
        assert_eq!(normal_basis_count(4, pp(2)).unwrap(), big(2));
        assert_eq!(normal_basis_count(7, pp(2)).unwrap(), big(7));
        assert_eq!(normal_basis_count(1, pp(7)).unwrap(), big(6));
    }

    #[test]
    fn trace_restricted_counts() {
        assert_eq!(irr_count_trace(2, pp(2), 1).unwrap(), big(1));
        assert_eq!(irr_count_trace(7, pp(2), 1).unwrap(), big(9));
        assert_eq!(irr_count_trace(2, pp(3), 1).unwrap(), big(1));
        assert_eq!(irr_count_trace(2, pp(3), 2).unwrap(), big(1));
        assert!(irr_count_trace(2, pp(3), 0).is_err());
        assert!(irr_count_trace(2, pp(3), 3).is_err());
    }

    #[test]
    fn nonzero_trace_counts() {
        assert_eq!(nonzero_trace_irr_count(7, pp(2)).unwrap(), big(9));
        assert_eq!(nonzero_trace_irr_count(2, pp(3)).unwrap(), big(2));
        assert_eq!(nonzero_trace_irr_count(3, pp(2)).unwrap(), big(1));
    }

    #[test]
    fn total_counts() {
        assert_eq!(total_irr_count(7, pp(2)).unwrap(), big(18));
        assert_eq!(total_irr_count(2, pp(3)).unwrap(), big(3));
        assert_eq!(zero_trace_irr_count(3, pp(2)).unwrap(), big(1));
    }

    #[test]
    fn sides_spot_values() {
        let s = |n, q| inequality_sides(n, pp(q)).unwrap();
        assert_eq!(s(3, 2), (big(3), big(3)));
        assert_eq!(s(7, 2), (big(49), big(63)));
        assert_eq!(s(4, 3), (big(32), big(48)));
    }

    #[test]
    fn sum_runs_over_m_divisors() {
        // n = 6, q = 2: m = 3. Over d | 3 the sum is 64 - 4 = 60; over d | 6
        // it would be 64 - 8 - 4 + 2 = 54.
        let (lhs, rhs) = inequality_sides(6, pp(2)).unwrap();
        assert_eq!(lhs, big(24));
        assert_eq!(rhs, big(30));
        assert_eq!(total_irr_count(6, pp(2)).unwrap(), big(9));
    }

    #[test]
    fn predicate_cases() {
        assert!(equality_predicate(4, pp(2)));
        assert!(equality_predicate(3, pp(2)));
        assert!(!equality_predicate(7, pp(2)));
        assert!(equality_predicate(1, pp(9)));
        assert!(!equality_predicate(6, pp(5)));
    }

    #[test]
    fn witness_bounds() {
        assert_eq!(witness_lower_bound(6, pp(5)).unwrap(), big(95));
        assert_eq!(witness_lower_bound(15, pp(2)).unwrap(), big(254));
        assert!(witness_lower_bound(6, pp(2)).is_err());
        assert!(witness_lower_bound(7, pp(2)).is_err());
        assert!(witness_lower_bound(12, pp(5)).is_err());
    }
}
