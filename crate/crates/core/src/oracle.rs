//! Brute-force ground truth: normality by rank of the conjugate matrix
//! (cross-checked by the Hensel–Ore gcd criterion), exhaustive counts of
//! normal elements and N-polynomials, and witness search.
//!
//! Everything here enumerates; nothing calls the closed forms in
//! [`crate::counting`].

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{check_budget, ExtSpec, Field, FieldSpec};
use crate::linalg::{rank, rank_gf2};
use crate::polyring::{monic_from_index, poly_trace, Factorization, Poly};

/// Rows `a, a^q, ..., a^{q^{n-1}}` as coordinate vectors in the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateMatrix<E> {
    pub rows: Vec<Vec<E>>,
}

impl<E: Clone> ConjugateMatrix<E> {
    pub fn of<F: Field<Elem = E>>(a: &[E], ext: &ExtSpec<F>) -> Result<Self> {
        Ok(ConjugateMatrix { rows: ext.conjugates(a)? })
    }

    pub fn rank<F: Field<Elem = E>>(&self, k: &F) -> usize {
        rank(&mut self.rows.clone(), k)
    }
}

/// Normality as full rank of the conjugate matrix.
pub fn is_normal_rank<F: Field>(a: &[F::Elem], ext: &ExtSpec<F>) -> Result<bool> {
    Ok(ConjugateMatrix::of(a, ext)?.rank(ext.base()) == ext.degree())
}

/// Hensel–Ore criterion: `gcd(x^n - 1, sum_i a^{q^i} x^i) = 1` over `F_{q^n}`.
pub fn is_normal_gcd<F: Field>(a: &[F::Elem], ext: &ExtSpec<F>) -> Result<bool> {
    let n = ext.degree();
    let conj = ext.conjugates(a)?;
    let orbit_poly = Poly::new(conj, ext);
    let xn1 = Poly::x_pow_minus_one(n, ext);
    Ok(xn1.gcd(&orbit_poly, ext).is_one(ext))
}

/// Whether `a` generates a normal basis of `ext` over its base; both
/// criteria are evaluated and must agree.
pub fn is_normal<F: Field>(a: &[F::Elem], ext: &ExtSpec<F>) -> Result<bool> {
    let by_rank = is_normal_rank(a, ext)?;
    let by_gcd = is_normal_gcd(a, ext)?;
    if by_rank != by_gcd {
        return Err(Error::Inconsistent(format!("rank test says {by_rank}, gcd test says {by_gcd} for {a:?}")));
    }
    Ok(by_rank)
}

/// Least `t >= 1` with `a^{q^t} = a`.
pub fn degree_of<F: Field>(a: &[F::Elem], ext: &ExtSpec<F>) -> Result<usize> {
    ext.check(a)?;
    let mut cur = ext.frobenius_unchecked(a);
    let mut t = 1;
    while cur != a {
        cur = ext.frobenius_unchecked(&cur);
        t += 1;
        if t > ext.degree() {
            return Err(Error::Inconsistent("Frobenius orbit longer than n".into()));
        }
    }
    Ok(t)
}

/// Outcome of the N-polynomial test, with the failing certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NPolyVerdict {
    NPolynomial,
    Reducible,
    /// Irreducible, but the `x^{n-1}` coefficient vanishes, so the roots sum to zero.
    ZeroTrace,
    /// Irreducible with nonzero trace, conjugate matrix of rank `rank < n`.
    RankDeficient {
        rank: usize,
    },
}

impl NPolyVerdict {
    pub fn is_n_polynomial(&self) -> bool {
        matches!(self, NPolyVerdict::NPolynomial)
    }
}

/// Conjugates `x^{q^i} mod f`, `0 <= i < n`, when `f` is irreducible
/// (Rabin's test, sharing the Frobenius iterates).
fn irreducible_conjugates<F: Field>(f: &Poly<F::Elem>, k: &F) -> Result<Option<Vec<Poly<F::Elem>>>> {
    let n = f.degree().filter(|&d| d >= 1).ok_or(Error::ConstantPolynomial)?;
    let x = Poly::x(k);
    if n > 1 && k.is_zero(&f.coeffs()[0]) {
        return Ok(None);
    }
    let checkpoints: Vec<usize> =
        crate::counting::prime_divisors(n as u64).into_iter().map(|r| n / r as usize).collect();
    let q = k.order();
    let mut conj = Vec::with_capacity(n);
    let mut h = x.rem(f, k)?;
    for j in 1..=n {
        conj.push(h.clone());
        h = h.pow_mod(&q, f, k)?;
        if checkpoints.contains(&j) && !h.sub(&x, k).gcd(f, k).is_one(k) {
            return Ok(None);
        }
    }
    Ok((h == x.rem(f, k)?).then_some(conj))
}

fn conjugate_rank<F: Field>(conj: &[Poly<F::Elem>], n: usize, k: &F) -> usize {
    let mut rows: Vec<Vec<F::Elem>> = conj
        .iter()
        .map(|c| {
            let mut v = c.coeffs().to_vec();
            v.resize(n, k.zero());
            v
        })
        .collect();
    rank(&mut rows, k)
}

/// Classifies a monic polynomial as N-polynomial or names why it is not.
pub fn n_polynomial_verdict<F: Field>(f: &Poly<F::Elem>, k: &F) -> Result<NPolyVerdict> {
    let n = f.degree().filter(|&d| d >= 1).ok_or(Error::ConstantPolynomial)?;
    if !f.is_monic(k) {
        return Err(Error::NotMonic);
    }
    let Some(conj) = irreducible_conjugates(f, k)? else {
        return Ok(NPolyVerdict::Reducible);
    };
    let r = conjugate_rank(&conj, n, k);
    let zero_trace = k.is_zero(&poly_trace(f, k)?);
    match (zero_trace, r == n) {
        (true, true) => Err(Error::Inconsistent("trace-zero polynomial with independent roots".into())),
        (true, false) => Ok(NPolyVerdict::ZeroTrace),
        (false, true) => Ok(NPolyVerdict::NPolynomial),
        (false, false) => Ok(NPolyVerdict::RankDeficient { rank: r }),
    }
}

/// Irreducible with linearly independent roots. Testing the canonical root
/// `x mod f` suffices: its conjugates are the other roots.
pub fn is_n_polynomial<F: Field>(f: &Poly<F::Elem>, k: &F) -> Result<bool> {
    Ok(n_polynomial_verdict(f, k)?.is_n_polynomial())
}

fn chunk_ranges(total: u64) -> Vec<(u64, u64)> {
    let chunks = (rayon::current_num_threads() as u64 * 4).clamp(1, total.max(1));
    let step = total.div_ceil(chunks);
    (0..chunks).map(|c| (c * step, ((c + 1) * step).min(total))).filter(|(s, e)| s < e).collect()
}

/// Exhaustive count of normal elements of `ext` over its base field.
///
/// Walks the field in `F_p`-digit order keeping the conjugate matrix up to
/// date by linearity (one matrix addition per digit step), then tests full
/// rank. Over `F_2` rows are packed into machine words.
pub fn count_normal_elements(ext: &ExtSpec<FieldSpec>, budget: u64) -> Result<BigUint> {
    let total = check_budget(ext.size(), budget, "extension field elements")?;
    let k = ext.base();
    let (n, p, kd) = (ext.degree(), k.p(), k.k() as usize);
    if n > 64 {
        return Err(Error::FieldTooLarge("degree above 64".into()));
    }
    // Conjugate matrix of each F_p-basis vector y^t x^j, position j*kd + t.
    let mut basis = Vec::with_capacity(n * kd);
    for j in 0..n {
        for t in 0..kd {
            let mut b = ext.zero();
            b[j] = p.pow(t as u32);
            basis.push(ext.conjugates(&b)?);
        }
    }
    let counts: Vec<u64> = if k.q() == 2 {
        let packed: Vec<Vec<u64>> = basis.iter().map(|m| m.iter().map(|row| pack(row)).collect()).collect();
        chunk_ranges(total).into_par_iter().map(|(start, end)| scan_gf2(&packed, n, start, end)).collect()
    } else {
        let flat: Vec<Vec<u64>> = basis.iter().map(|m| m.concat()).collect();
        chunk_ranges(total).into_par_iter().map(|(start, end)| scan_generic(&flat, n, k, start, end)).collect()
    };
    Ok(BigUint::from(counts.iter().sum::<u64>()))
}

fn pack(row: &[u64]) -> u64 {
    row.iter().enumerate().fold(0, |acc, (j, &b)| acc | (b << j))
}

fn start_digits(mut index: u64, positions: usize, p: u64) -> Vec<u64> {
    (0..positions)
        .map(|_| {
            let d = index % p;
            index /= p;
            d
        })
        .collect()
}

fn scan_gf2(basis: &[Vec<u64>], n: usize, start: u64, end: u64) -> u64 {
    let mut digits = start_digits(start, basis.len(), 2);
    let mut cur = vec![0u64; n];
    for (d, m) in digits.iter().zip(basis) {
        if *d == 1 {
            cur.iter_mut().zip(m).for_each(|(c, x)| *c ^= x);
        }
    }
    let mut work = vec![0u64; n];
    let mut count = 0;
    for _ in start..end {
        work.copy_from_slice(&cur);
        if rank_gf2(&mut work) == n {
            count += 1;
        }
        let mut pos = 0;
        while pos < digits.len() {
            basis[pos].iter().zip(cur.iter_mut()).for_each(|(x, c)| *c ^= x);
            digits[pos] ^= 1;
            if digits[pos] == 1 {
                break;
            }
            pos += 1;
        }
    }
    count
}

fn scan_generic(basis: &[Vec<u64>], n: usize, k: &FieldSpec, start: u64, end: u64) -> u64 {
    let p = k.p();
    let mut digits = start_digits(start, basis.len(), p);
    let mut cur = vec![0u64; n * n];
    for (d, m) in digits.iter().zip(basis) {
        let c = k.from_int(*d);
        cur.iter_mut().zip(m).for_each(|(x, y)| *x = k.add(x, &k.mul(&c, y)));
    }
    let mut work = vec![0u64; n * n];
    let mut count = 0;
    for _ in start..end {
        work.copy_from_slice(&cur);
        if full_rank_flat(&mut work, n, k) {
            count += 1;
        }
        let mut pos = 0;
        while pos < digits.len() {
            cur.iter_mut().zip(&basis[pos]).for_each(|(x, y)| *x = k.add(x, y));
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
    count
}

/// Whether the row-major `n x n` matrix is invertible; stops at the first
/// column without a pivot.
fn full_rank_flat(m: &mut [u64], n: usize, k: &FieldSpec) -> bool {
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r * n + col] != 0) else {
            return false;
        };
        if pivot != col {
            for c in col..n {
                m.swap(pivot * n + c, col * n + c);
            }
        }
        let inv = k.inv(&m[col * n + col]).expect("pivot is nonzero");
        for r in col + 1..n {
            let lead = m[r * n + col];
            if lead == 0 {
                continue;
            }
            let factor = k.neg(&k.mul(&lead, &inv));
            for c in col..n {
                let v = k.mul(&factor, &m[col * n + c]);
                m[r * n + c] = k.add(&m[r * n + c], &v);
            }
        }
    }
    true
}

/// Element-by-element count running both normality criteria; errors on the
/// first disagreement.
pub fn count_normal_elements_dual<F: Field>(ext: &ExtSpec<F>, budget: u64) -> Result<BigUint> {
    let mut count = BigUint::default();
    for a in ext.elements(budget)? {
        if is_normal(&a, ext)? {
            count += 1u32;
        }
    }
    Ok(count)
}

/// One monic irreducible found by the exhaustive scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScannedIrreducible {
    pub poly: Poly<u64>,
    /// Canonical index of the `x^{n-1}` coefficient.
    pub trace: u64,
    pub n_polynomial: bool,
}

/// Every monic irreducible of degree `n` over `k` in lexicographic order,
/// each classified by trace and N-polynomial status.
pub fn scan_irreducibles(n: usize, k: &FieldSpec, budget: u64) -> Result<Vec<ScannedIrreducible>> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    let total = check_budget(k.q().checked_pow(n as u32), budget, "monic polynomials")?;
    let chunks: Vec<Result<Vec<ScannedIrreducible>>> = chunk_ranges(total)
        .into_par_iter()
        .map(|(start, end)| {
            let mut out = Vec::new();
            for i in start..end {
                let f = monic_from_index(i, n, k);
                if let Some(conj) = irreducible_conjugates(&f, k)? {
                    let trace = poly_trace(&f, k)?;
                    let n_polynomial = conjugate_rank(&conj, n, k) == n;
                    out.push(ScannedIrreducible { poly: f, trace, n_polynomial });
                }
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for c in chunks {
        all.extend(c?);
    }
    Ok(all)
}

/// Exhaustive N-polynomial and nonzero-trace counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NPolyCounts {
    pub npoly_count: BigUint,
    pub nonzero_trace_count: BigUint,
    /// Every N-polynomial has nonzero trace.
    pub containment_ok: bool,
}

pub fn count_npolys_and_traces(n: usize, k: &FieldSpec, budget: u64) -> Result<NPolyCounts> {
    let scanned = scan_irreducibles(n, k, budget)?;
    Ok(summarize(&scanned))
}

pub fn summarize(scanned: &[ScannedIrreducible]) -> NPolyCounts {
    let npoly = scanned.iter().filter(|s| s.n_polynomial).count();
    let nonzero = scanned.iter().filter(|s| s.trace != 0).count();
    let containment_ok = scanned.iter().all(|s| !s.n_polynomial || s.trace != 0);
    NPolyCounts { npoly_count: BigUint::from(npoly), nonzero_trace_count: BigUint::from(nonzero), containment_ok }
}

/// Number of monic irreducibles of degree `n` per trace value (indexed by
/// the canonical index of the trace).
pub fn counts_by_trace(n: usize, k: &FieldSpec, budget: u64) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; k.q() as usize];
    for s in scan_irreducibles(n, k, budget)? {
        counts[s.trace as usize] += 1;
    }
    Ok(counts)
}

/// Lexicographically smallest monic irreducible with nonzero trace that is
/// not an N-polynomial.
pub fn find_witness(n: usize, k: &FieldSpec, budget: u64) -> Result<Option<Poly<u64>>> {
    Ok(scan_irreducibles(n, k, budget)?.into_iter().filter(|s| s.trace != 0 && !s.n_polynomial).map(|s| s.poly).min())
}

/// Generalized Euler function by enumeration: polynomials of degree below
/// `deg l` (zero included) that no base of `fact` divides.
pub fn phi_by_enumeration<F: Field>(
    l: &Poly<F::Elem>,
    fact: &Factorization<F::Elem>,
    k: &F,
    budget: u64,
) -> Result<BigUint> {
    fact.check_product(l, k)?;
    let deg = l.degree().ok_or_else(|| Error::InvalidFactorization("l must be nonzero".into()))?;
    let q = k.size().ok_or_else(|| Error::FieldTooLarge("field too large to enumerate".into()))?;
    let total = check_budget(q.checked_pow(deg as u32), budget, "residues")?;
    let mut count = 0u64;
    for i in 0..total {
        let mut idx = i;
        let coeffs = (0..deg)
            .map(|_| {
                let d = idx % q;
                idx /= q;
                k.element(d)
            })
            .collect();
        let r = Poly::new(coeffs, k);
        let mut excluded = false;
        for (b, _) in fact.parts() {
            if b.divides(&r, k)? {
                excluded = true;
                break;
            }
        }
        if !excluded {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}
