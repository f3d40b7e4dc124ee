use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_irreducible, Poly};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::nullspace;

/// Seed used by [`factor`] for equal-degree splitting.
pub const DEFAULT_SEED: u64 = 0x6e6f_726d_6261_7365;

/// Fields of at most this many elements are split with Berlekamp's algorithm.
const BERLEKAMP_LIMIT: u64 = 3;

/// Pairwise-coprime monic parts `(base, multiplicity)` whose product is a
/// monic polynomial. Parts are kept sorted by degree, then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<E> {
    parts: Vec<(Poly<E>, u32)>,
    irreducible_parts: bool,
}

impl<E: Clone + Eq + Ord> Factorization<E> {
    /// Validates and sorts the parts. With `irreducible_parts` set, every
    /// base must pass the irreducibility test.
    pub fn new<F: Field<Elem = E>>(mut parts: Vec<(Poly<E>, u32)>, irreducible_parts: bool, k: &F) -> Result<Self> {
        for (base, mult) in &parts {
            if *mult == 0 {
                return Err(Error::InvalidFactorization("multiplicity must be >= 1".into()));
            }
            if base.degree().unwrap_or(0) < 1 {
                return Err(Error::InvalidFactorization("bases must have degree >= 1".into()));
            }
            if !base.is_monic(k) {
                return Err(Error::InvalidFactorization("bases must be monic".into()));
            }
            if irreducible_parts && !is_irreducible(base, k)? {
                return Err(Error::InvalidFactorization("base flagged irreducible is reducible".into()));
            }
        }
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if !parts[i].0.gcd(&parts[j].0, k).is_one(k) {
                    return Err(Error::InvalidFactorization("bases are not pairwise coprime".into()));
                }
            }
        }
        parts.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        Ok(Factorization { parts, irreducible_parts })
    }

    pub fn parts(&self) -> &[(Poly<E>, u32)] {
        &self.parts
    }

    pub fn irreducible_parts(&self) -> bool {
        self.irreducible_parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `sum e_i deg(l_i)`.
    pub fn degree(&self) -> usize {
        self.parts.iter().map(|(b, e)| b.degree().unwrap_or(0) * *e as usize).sum()
    }

    pub fn product<F: Field<Elem = E>>(&self, k: &F) -> Poly<E> {
        self.parts.iter().fold(Poly::one(k), |acc, (b, e)| acc.mul(&b.pow(*e as u64, k), k))
    }

    /// Checks that the parts multiply out to `monic(l)`.
    pub fn check_product<F: Field<Elem = E>>(&self, l: &Poly<E>, k: &F) -> Result<()> {
        if self.product(k) != l.monic(k) {
            return Err(Error::InvalidFactorization("parts do not multiply to the polynomial".into()));
        }
        Ok(())
    }

    /// Replaces the multiset of parts without re-validating; callers uphold the invariants.
    pub(crate) fn from_sorted_unchecked(parts: Vec<(Poly<E>, u32)>, irreducible_parts: bool) -> Self {
        Factorization { parts, irreducible_parts }
    }
}

/// Complete factorization into monic irreducibles with the default seed.
pub fn factor<F: Field>(f: &Poly<F::Elem>, k: &F) -> Result<Factorization<F::Elem>> {
    factor_with_rng(f, k, &mut ChaCha8Rng::seed_from_u64(DEFAULT_SEED))
}

/// Squarefree decomposition, then Berlekamp (`q <= 3`) or distinct-degree
/// plus equal-degree splitting.
pub fn factor_with_rng<F: Field, R: Rng + ?Sized>(
    f: &Poly<F::Elem>,
    k: &F,
    rng: &mut R,
) -> Result<Factorization<F::Elem>> {
    if f.degree().unwrap_or(0) < 1 {
        return Err(Error::ConstantPolynomial);
    }
    let small = k.size().is_some_and(|q| q <= BERLEKAMP_LIMIT);
    let mut parts = Vec::new();
    for (sqf, mult) in squarefree_decomposition(f, k)? {
        let irreducibles = if small {
            berlekamp(&sqf, k)?
        } else {
            let mut out = Vec::new();
            for (g, d) in distinct_degree(&sqf, k)? {
                out.extend(equal_degree(&g, d, k, rng)?);
            }
            out
        };
        parts.extend(irreducibles.into_iter().map(|g| (g, mult)));
    }
    parts.sort();
    Ok(Factorization::from_sorted_unchecked(parts, true))
}

/// `f = prod g_i^{e_i}` with each `g_i` squarefree, monic and the `g_i`
/// pairwise coprime.
pub fn squarefree_decomposition<F: Field>(f: &Poly<F::Elem>, k: &F) -> Result<Vec<(Poly<F::Elem>, u32)>> {
    if f.degree().unwrap_or(0) < 1 {
        return Err(Error::ConstantPolynomial);
    }
    let mut out = Vec::new();
    collect_squarefree(&f.monic(k), 1, k, &mut out)?;
    Ok(out)
}

fn collect_squarefree<F: Field>(
    f: &Poly<F::Elem>,
    scale: u32,
    k: &F,
    out: &mut Vec<(Poly<F::Elem>, u32)>,
) -> Result<()> {
    let p = k.characteristic() as u32;
    let df = f.derivative(k);
    if df.is_zero() {
        return collect_squarefree(&pth_root(f, k), scale * p, k, out);
    }
    let mut c = f.gcd(&df, k);
    let mut w = f.div_exact(&c, k)?;
    let mut i = 1;
    while !w.is_one(k) {
        let y = w.gcd(&c, k);
        let z = w.div_exact(&y, k)?;
        if !z.is_one(k) {
            out.push((z, i * scale));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w, k)?;
    }
    if !c.is_one(k) {
        collect_squarefree(&pth_root(&c, k), scale * p, k, out)?;
    }
    Ok(())
}

/// `g` with `g^p = f`, for `f` a polynomial in `x^p`.
fn pth_root<F: Field>(f: &Poly<F::Elem>, k: &F) -> Poly<F::Elem> {
    let p = k.characteristic() as usize;
    let root_exp = k.order() / BigUint::from(p as u64);
    let coeffs = f.coeffs().iter().step_by(p).map(|c| k.pow(c, &root_exp)).collect();
    Poly::new(coeffs, k)
}

/// Splits a squarefree monic `f` into `(product of all degree-d factors, d)`.
pub fn distinct_degree<F: Field>(f: &Poly<F::Elem>, k: &F) -> Result<Vec<(Poly<F::Elem>, usize)>> {
    let q = k.order();
    let x = Poly::x(k);
    let mut rest = f.monic(k);
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&q, &rest, k)?;
        let g = h.sub(&x, k).gcd(&rest, k);
        if !g.is_one(k) {
            rest = rest.div_exact(&g, k)?;
            h = h.rem(&rest, k)?;
            out.push((g, d));
        }
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg >= 1) {
        out.push((rest, deg));
    }
    Ok(out)
}

/// Cantor–Zassenhaus splitting of a product of distinct monic irreducibles
/// all of degree `d`.
pub fn equal_degree<F: Field, R: Rng + ?Sized>(
    f: &Poly<F::Elem>,
    d: usize,
    k: &F,
    rng: &mut R,
) -> Result<Vec<Poly<F::Elem>>> {
    let n = f.degree().ok_or(Error::ConstantPolynomial)?;
    if d == 0 || n % d != 0 {
        return Err(Error::InvalidArgument(format!("degree {n} is not a multiple of {d}")));
    }
    if n == d {
        return Ok(vec![f.monic(k)]);
    }
    let q = k.order();
    let even = k.characteristic() == 2;
    let exponent = (num_traits::pow::pow(q.clone(), d) - BigUint::one()) >> 1;
    let trace_steps = (q.bits() - 1) as usize * d;
    loop {
        let a = Poly::new((0..n).map(|_| k.random(rng)).collect(), k);
        if a.degree().unwrap_or(0) < 1 {
            continue;
        }
        let b = if even {
            // Absolute trace a + a^2 + ... + a^{2^{kd-1}}.
            let mut term = a.clone();
            let mut acc = a.clone();
            for _ in 1..trace_steps {
                term = term.mul_mod(&term, f, k)?;
                acc = acc.add(&term, k);
            }
            acc
        } else {
            a.pow_mod(&exponent, f, k)?.sub(&Poly::one(k), k)
        };
        let g = b.gcd(f, k);
        if g.degree().is_some_and(|dg| dg >= 1 && dg < n) {
            let h = f.div_exact(&g, k)?;
            let mut out = equal_degree(&g, d, k, rng)?;
            out.extend(equal_degree(&h, d, k, rng)?);
            out.sort();
            return Ok(out);
        }
    }
}

/// Berlekamp's deterministic splitting of a squarefree monic `f`.
///
/// Enumerates the whole field when splitting, so it is only used for tiny `q`.
pub fn berlekamp<F: Field>(f: &Poly<F::Elem>, k: &F) -> Result<Vec<Poly<F::Elem>>> {
    let n = f.degree().filter(|&d| d >= 1).ok_or(Error::ConstantPolynomial)?;
    let f = f.monic(k);
    if n == 1 {
        return Ok(vec![f]);
    }
    let q = k.size().ok_or_else(|| Error::FieldTooLarge("Berlekamp needs an enumerable field".into()))?;
    // Column i of Q is x^{qi} mod f; solve (Q - I) v = 0.
    let xq = Poly::x(k).pow_mod(&k.order(), &f, k)?;
    let mut cols = Vec::with_capacity(n);
    let mut cur = Poly::one(k);
    for _ in 0..n {
        let mut c = cur.coeffs().to_vec();
        c.resize(n, k.zero());
        cols.push(c);
        cur = cur.mul_mod(&xq, &f, k)?;
    }
    let rows: Vec<Vec<F::Elem>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let entry = cols[c][r].clone();
                    if r == c {
                        k.sub(&entry, &k.one())
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();
    let basis = nullspace(rows, n, k);
    let target = basis.len();
    let mut factors = vec![f.clone()];
    'outer: for v in &basis {
        let v = Poly::new(v.clone(), k);
        if v.degree().unwrap_or(0) < 1 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors.drain(..) {
            let mut u = u;
            for s in 0..q {
                if u.degree().unwrap_or(0) <= 1 {
                    break;
                }
                let shifted = v.sub(&Poly::constant(k.element(s), k), k);
                let g = shifted.gcd(&u, k);
                if g.degree().is_some_and(|dg| dg >= 1) && g.degree() < u.degree() {
                    u = u.div_exact(&g, k)?;
                    next.push(g);
                }
            }
            next.push(u);
        }
        factors = next;
        if factors.len() == target {
            break 'outer;
        }
    }
    if factors.len() != target {
        return Err(Error::Inconsistent(format!("Berlekamp found {} factors, expected {target}", factors.len())));
    }
    factors.sort();
    Ok(factors)
}
