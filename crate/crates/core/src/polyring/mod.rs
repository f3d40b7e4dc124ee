//! Univariate polynomials over finite fields: irreducibility, complete
//! factorization, cyclotomic polynomials and the factorization of `x^n - 1`
//! grouped by cyclotomic divisor.

mod cyclotomic;
mod factor;
mod poly;

pub use cyclotomic::{cyclotomic, factor_xn_minus_1, CyclotomicBlock, XnMinusOne};
pub use factor::{
    berlekamp, distinct_degree, equal_degree, factor, factor_with_rng, squarefree_decomposition, Factorization,
    DEFAULT_SEED,
};
pub use poly::Poly;

use crate::counting::prime_divisors;
use crate::error::{Error, Result};
use crate::gf::{check_budget, Field};

/// Default enumeration budget for irreducible-polynomial scans.
pub const DEFAULT_POLY_BUDGET: u64 = 1 << 16;

/// Coefficient of `x^{n-1}` of a monic degree-`n` polynomial.
///
/// The field trace of a root is the negative of this value; both vanish together.
pub fn poly_trace<F: Field>(f: &Poly<F::Elem>, k: &F) -> Result<F::Elem> {
    let n = f.degree().filter(|&d| d >= 1).ok_or(Error::ConstantPolynomial)?;
    if !f.is_monic(k) {
        return Err(Error::NotMonic);
    }
    Ok(f.coeff(n - 1, k))
}

/// Rabin's test: `x^{q^n} = x (mod f)` and `gcd(x^{q^{n/r}} - x, f) = 1`
/// for every prime `r | n`.
pub fn is_irreducible<F: Field>(f: &Poly<F::Elem>, k: &F) -> Result<bool> {
    let n = f.degree().filter(|&d| d >= 1).ok_or(Error::ConstantPolynomial)?;
    if n == 1 {
        return Ok(true);
    }
    let f = f.monic(k);
    if k.is_zero(&f.coeffs()[0]) {
        return Ok(false);
    }
    let q = k.order();
    let x = Poly::x(k);
    let checkpoints: Vec<usize> = prime_divisors(n as u64).into_iter().map(|r| n / r as usize).collect();
    let mut h = x.clone();
    for j in 1..=n {
        h = h.pow_mod(&q, &f, k)?;
        if checkpoints.contains(&j) && !h.sub(&x, k).gcd(&f, k).is_one(k) {
            return Ok(false);
        }
    }
    Ok(h == x)
}

/// The monic degree-`n` polynomial at position `index` of the lexicographic
/// order on `(c_0, ..., c_{n-1})` (constant term most significant).
pub fn monic_from_index<F: Field>(mut index: u64, n: usize, k: &F) -> Poly<F::Elem> {
    let q = k.size().unwrap_or(u64::MAX);
    let mut coeffs = vec![k.zero(); n + 1];
    coeffs[n] = k.one();
    for c in coeffs[..n].iter_mut().rev() {
        *c = k.element(index % q);
        index /= q;
    }
    Poly::new(coeffs, k)
}

/// Every monic irreducible of degree `n` exactly once, in lexicographic
/// order, refusing scans of more than `budget` candidates.
pub fn enumerate_monic_irreducibles<F: Field>(
    n: usize,
    k: &F,
    budget: u64,
) -> Result<impl Iterator<Item = Poly<F::Elem>> + '_> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    let total = k.size().and_then(|q| q.checked_pow(n as u32));
    let total = check_budget(total, budget, "monic polynomials")?;
    Ok((0..total).filter_map(move |i| {
        let f = monic_from_index(i, n, k);
        is_irreducible(&f, k).ok().filter(|&irr| irr).map(|_| f)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{total_irr_count, PrimePower};
    use crate::gf::FieldSpec;
    use num_bigint::BigUint;

    fn f(q: u64) -> FieldSpec {
        FieldSpec::from_q(q).unwrap()
    }

    /// Oracle: trial division by every monic polynomial of degree <= n/2.
    fn trial_division_irreducible(p: &Poly<u64>, k: &FieldSpec) -> bool {
        let n = p.degree().unwrap();
        (1..=n / 2).all(|d| (0..k.q().pow(d as u32)).all(|i| !monic_from_index(i, d, k).divides(p, k).unwrap()))
    }

    #[test]
    fn trace_reading() {
        let k2 = f(2);
        assert_eq!(poly_trace(&Poly::new(vec![1, 1, 1], &k2), &k2).unwrap(), 1);
        assert_eq!(poly_trace(&Poly::new(vec![1, 0, 0, 1], &k2), &k2).unwrap(), 0);
        let k3 = f(3);
        assert_eq!(poly_trace(&Poly::new(vec![1, 0, 2, 1], &k3), &k3).unwrap(), 2);
        assert_eq!(poly_trace(&Poly::new(vec![1, 0, 2, 2], &k3), &k3), Err(Error::NotMonic));
        assert_eq!(poly_trace(&Poly::new(vec![1], &k3), &k3), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn irreducibility_examples() {
        let k = f(2);
        assert!(is_irreducible(&Poly::new(vec![1, 1, 1], &k), &k).unwrap());
        assert!(!is_irreducible(&Poly::new(vec![1, 0, 1], &k), &k).unwrap());
        let quartic = Poly::new(vec![1, 1, 1, 1, 1], &k);
        assert!(trial_division_irreducible(&quartic, &k));
        assert!(is_irreducible(&quartic, &k).unwrap());
        assert_eq!(is_irreducible(&Poly::new(vec![1], &k), &k), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn rabin_matches_trial_division() {
        for q in [2u64, 3, 4] {
            let k = f(q);
            for n in 1..=5usize {
                if q.pow(n as u32) > 1024 {
                    continue;
                }
                for i in 0..q.pow(n as u32) {
                    let p = monic_from_index(i, n, &k);
                    assert_eq!(
                        is_irreducible(&p, &k).unwrap(),
                        trial_division_irreducible(&p, &k),
                        "q={q} {:?}",
                        p.coeffs()
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let k2 = f(2);
        let quads: Vec<_> = enumerate_monic_irreducibles(2, &k2, DEFAULT_POLY_BUDGET).unwrap().collect();
        assert_eq!(quads, vec![Poly::new(vec![1, 1, 1], &k2)]);
        let cubics: Vec<_> = enumerate_monic_irreducibles(3, &k2, DEFAULT_POLY_BUDGET).unwrap().collect();
        assert_eq!(cubics, vec![Poly::new(vec![1, 0, 1, 1], &k2), Poly::new(vec![1, 1, 0, 1], &k2)]);
        let k3 = f(3);
        assert_eq!(enumerate_monic_irreducibles(2, &k3, DEFAULT_POLY_BUDGET).unwrap().count(), 3);
        assert!(enumerate_monic_irreducibles(17, &k2, DEFAULT_POLY_BUDGET).is_err());
    }

    #[test]
    fn enumerated_counts_match_necklace_formula() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let k = f(q);
            let mut n = 1usize;
            while q.pow(n as u32) <= 1 << 12 {
                let count = enumerate_monic_irreducibles(n, &k, DEFAULT_POLY_BUDGET).unwrap().count();
                let expected = total_irr_count(n as u64, PrimePower::from_q(q).unwrap()).unwrap();
                assert_eq!(BigUint::from(count), expected, "q={q} n={n}");
                n += 1;
            }
        }
    }

    #[test]
    fn index_order_is_lexicographic() {
        let k = f(3);
        let polys: Vec<_> = (0..27).map(|i| monic_from_index(i, 3, &k)).collect();
        let mut sorted = polys.clone();
        sorted.sort();
        assert_eq!(polys, sorted);
        assert_eq!(polys[1].coeffs(), &[0, 0, 1, 1]);
    }
}
