use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{factor_with_rng, Factorization, Poly};
use crate::counting::{divisors, euler_phi, moebius, mult_order, SplitN};
use crate::error::{Error, Result};
use crate::gf::Field;

/// The `d`-th cyclotomic polynomial over `k`, as
/// `prod_{e | d} (x^{d/e} - 1)^{mu(e)}` evaluated by exact division.
pub fn cyclotomic<F: Field>(d: u64, k: &F) -> Result<Poly<F::Elem>> {
    if d < 1 {
        return Err(Error::InvalidArgument("d must be >= 1".into()));
    }
    if d.is_multiple_of(k.characteristic()) {
        return Err(Error::InvalidArgument(format!("characteristic {} divides {d}", k.characteristic())));
    }
    let mut num = Poly::one(k);
    let mut den = Poly::one(k);
    for e in divisors(d) {
        let term = Poly::x_pow_minus_one((d / e) as usize, k);
        match moebius(e)? {
            1 => num = num.mul(&term, k),
            -1 => den = den.mul(&term, k),
            _ => {}
        }
    }
    let phi = num.div_exact(&den, k)?;
    if phi.degree() != Some(euler_phi(d)? as usize) {
        return Err(Error::Inconsistent(format!("cyclotomic({d}) has the wrong degree")));
    }
    Ok(phi)
}

/// Irreducible factors of one cyclotomic polynomial `Phi_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicBlock<E> {
    pub d: u64,
    pub phi: u64,
    /// Order of `q` modulo `d`, the common degree of the factors.
    pub tau: u64,
    pub cyclotomic: Poly<E>,
    pub factors: Vec<Poly<E>>,
}

/// `x^n - 1 = (prod_{d | m} Phi_d)^{p^e}` with each `Phi_d` split into its
/// `phi(d)/tau(d)` irreducible factors of degree `tau(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XnMinusOne<E> {
    pub split: SplitN,
    pub blocks: Vec<CyclotomicBlock<E>>,
}

impl<E: Clone + Eq + Ord> XnMinusOne<E> {
    /// Multiplicity `p^e` of every factor.
    pub fn multiplicity(&self) -> u64 {
        self.split.p_power()
    }

    /// All irreducible factors, each with multiplicity `p^e`.
    pub fn irreducible_factorization(&self) -> Factorization<E> {
        let mult = self.multiplicity() as u32;
        let mut parts: Vec<_> =
            self.blocks.iter().flat_map(|b| b.factors.iter().map(move |f| (f.clone(), mult))).collect();
        parts.sort();
        Factorization::from_sorted_unchecked(parts, true)
    }

    /// The coarser factorization into cyclotomic polynomials `Phi_d`, `d | m`.
    pub fn cyclotomic_factorization(&self) -> Factorization<E> {
        let mult = self.multiplicity() as u32;
        let mut parts: Vec<_> = self.blocks.iter().map(|b| (b.cyclotomic.clone(), mult)).collect();
        parts.sort();
        let irreducible = self.blocks.iter().all(|b| b.factors.len() == 1);
        Factorization::from_sorted_unchecked(parts, irreducible)
    }
}

/// Factors `x^n - 1` over `k` grouped by the divisors `d` of the `p`-free
/// part `m` of `n`, checking every factor degree against `tau(d)`.
pub fn factor_xn_minus_1<F: Field>(n: u64, k: &F, seed: u64) -> Result<XnMinusOne<F::Elem>> {
    let q = k.size().ok_or_else(|| Error::FieldTooLarge("field order must fit in u64".into()))?;
    let split = SplitN::new(n, k.characteristic())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks = Vec::new();
    for d in divisors(split.m) {
        let cyc = cyclotomic(d, k)?;
        let phi = euler_phi(d)?;
        let tau = mult_order(q % d, d)?;
        let fact = factor_with_rng(&cyc, k, &mut rng)?;
        let factors: Vec<_> = fact
            .parts()
            .iter()
            .map(|(b, e)| {
                if *e != 1 {
                    return Err(Error::Inconsistent(format!("cyclotomic({d}) is not squarefree")));
                }
                Ok(b.clone())
            })
            .collect::<Result<_>>()?;
        if factors.iter().any(|f| f.degree() != Some(tau as usize)) || factors.len() as u64 != phi / tau {
            return Err(Error::Inconsistent(format!(
                "cyclotomic({d}) does not split into {} factors of degree {tau}",
                phi / tau
            )));
        }
        blocks.push(CyclotomicBlock { d, phi, tau, cyclotomic: cyc, factors });
    }
    let out = XnMinusOne { split, blocks };
    if out.irreducible_factorization().product(k) != Poly::x_pow_minus_one(n as usize, k) {
        return Err(Error::Inconsistent(format!("factors do not reconstruct x^{n} - 1")));
    }
    Ok(out)
}
