//! Linearized polynomials `L(x) = sum c_i x^{q^i}` handled through their
//! conventional q-associates `l(x) = sum c_i x^i`.
//!
//! Composition of q-polynomials corresponds to ordinary multiplication of
//! associates, so the operator (of degree `q^deg l`) is never expanded;
//! evaluation runs through iterated Frobenius instead.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf::{check_budget, ExtSpec, Field};
use crate::polyring::{Factorization, Poly};

/// A q-polynomial over `F`, stored as its associate.
#[derive(Clone, Debug, PartialEq)]
pub struct QPoly<F: Field> {
    field: F,
    associate: Poly<F::Elem>,
}

impl<F: Field> QPoly<F> {
    pub fn new(associate: Poly<F::Elem>, field: &F) -> Self {
        QPoly { field: field.clone(), associate }
    }

    /// The identity operator `x` (associate `1`).
    pub fn identity(field: &F) -> Self {
        QPoly::new(Poly::one(field), field)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn associate(&self) -> &Poly<F::Elem> {
        &self.associate
    }

    /// Coefficient `c_i` multiplies `x^{q^i}`.
    pub fn coeffs(&self) -> &[F::Elem] {
        self.associate.coeffs()
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// `L1(L2(x))`, whose associate is `l1 * l2`.
    pub fn symbolic_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(QPoly::new(self.associate.mul(&other.associate, &self.field), &self.field))
    }

    /// Whether `self` symbolically divides `l`, i.e. the associates divide.
    pub fn symbolic_divides(&self, l: &Self) -> Result<bool> {
        self.same_field(l)?;
        if self.associate.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.associate.divides(&l.associate, &self.field)
    }

    /// `sum c_i a^{q^i}` in `ext`.
    pub fn evaluate(&self, a: &[F::Elem], ext: &ExtSpec<F>) -> Result<Vec<F::Elem>> {
        if *ext.base() != self.field {
            return Err(Error::FieldMismatch);
        }
        ext.check(a)?;
        let mut acc = ext.zero();
        let mut conj = a.to_vec();
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                conj = ext.frobenius_unchecked(&conj);
            }
            if !self.field.is_zero(c) {
                acc = ext.add(&acc, &scale(&conj, c, &self.field));
            }
        }
        Ok(acc)
    }
}

fn scale<F: Field>(v: &[F::Elem], c: &F::Elem, k: &F) -> Vec<F::Elem> {
    v.iter().map(|x| k.mul(x, c)).collect()
}

/// `sum c_i conj[i mod n]`, using `a^{q^n} = a` to wrap high coefficients.
fn eval_on_conjugates<F: Field>(coeffs: &[F::Elem], conj: &[Vec<F::Elem>], k: &F) -> Vec<F::Elem> {
    let n = conj.len();
    let mut acc = vec![k.zero(); n];
    for (i, c) in coeffs.iter().enumerate() {
        if k.is_zero(c) {
            continue;
        }
        for (a, x) in acc.iter_mut().zip(&conj[i % n]) {
            *a = k.add(a, &k.mul(c, x));
        }
    }
    acc
}

/// Symbolic factorization `L = L_1^{(x) e_1} (x) ... (x) L_r^{(x) e_r}` with
/// pairwise coprime associates.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicFactorization<F: Field> {
    field: F,
    associates: Factorization<F::Elem>,
}

impl<F: Field> SymbolicFactorization<F> {
    pub fn from_associates(associates: Factorization<F::Elem>, field: &F) -> Self {
        SymbolicFactorization { field: field.clone(), associates }
    }

    pub fn new(parts: Vec<(QPoly<F>, u32)>, field: &F) -> Result<Self> {
        if parts.iter().any(|(l, _)| l.field != *field) {
            return Err(Error::FieldMismatch);
        }
        let assoc = parts.into_iter().map(|(l, e)| (l.associate, e)).collect();
        Ok(SymbolicFactorization::from_associates(Factorization::new(assoc, false, field)?, field))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn associates(&self) -> &Factorization<F::Elem> {
        &self.associates
    }

    pub fn parts(&self) -> Vec<(QPoly<F>, u32)> {
        self.associates.parts().iter().map(|(b, e)| (QPoly::new(b.clone(), &self.field), *e)).collect()
    }

    /// `sum e_i n_i`, so that `L` has degree `q^degree()`.
    pub fn degree(&self) -> usize {
        self.associates.degree()
    }

    /// The whole operator `L`.
    pub fn operator(&self) -> QPoly<F> {
        QPoly::new(self.associates.product(&self.field), &self.field)
    }

    /// `K_i`: the operator with one copy of the `i`-th factor removed.
    pub fn omitted(&self, i: usize) -> Result<QPoly<F>> {
        let (base, _) = self
            .associates
            .parts()
            .get(i)
            .ok_or_else(|| Error::InvalidArgument(format!("no factor with index {i}")))?;
        let l = self.associates.product(&self.field);
        Ok(QPoly::new(l.div_exact(base, &self.field)?, &self.field))
    }
}

/// `prod_i (Q^{n_i} - 1) Q^{n_i (e_i - 1)}`, which equals
/// `Q^n prod_i (1 - Q^{-n_i})` without rationals.
fn exclusion_count<E: Clone + Eq + Ord>(fact: &Factorization<E>, order: &BigUint) -> BigUint {
    fact.parts().iter().fold(BigUint::one(), |acc, (b, e)| {
        let ni = b.degree().unwrap_or(0);
        let qn = num_traits::pow::pow(order.clone(), ni);
        acc * (&qn - BigUint::one()) * num_traits::pow::pow(qn, (*e - 1) as usize)
    })
}

/// `|S_F(L)|`: roots of `L` lying in no kernel of an omitted-factor operator `K_i`.
pub fn root_count<F: Field>(fact: &SymbolicFactorization<F>) -> Result<BigUint> {
    Ok(exclusion_count(&fact.associates, &fact.field.order()))
}

/// As [`root_count`], additionally checking that the factorization has total
/// associate degree `n`.
pub fn root_count_checked<F: Field>(fact: &SymbolicFactorization<F>, n: usize) -> Result<BigUint> {
    if fact.degree() != n {
        return Err(Error::InvalidFactorization(format!("associate degrees sum to {}, expected {n}", fact.degree())));
    }
    root_count(fact)
}

/// Generalized Euler function: the number of polynomials of degree below
/// `deg l` that no base of `fact` divides.
pub fn generalized_phi<F: Field>(l: &Poly<F::Elem>, fact: &Factorization<F::Elem>, k: &F) -> Result<BigUint> {
    if l.is_zero() {
        return Err(Error::InvalidFactorization("l must be nonzero".into()));
    }
    fact.check_product(l, k)?;
    Ok(exclusion_count(fact, &k.order()))
}

/// Splits the base at `part_index` into coprime `g * h`, keeping its
/// multiplicity. Checks that the generalized Euler function strictly drops.
pub fn refine<F: Field>(
    fact: &Factorization<F::Elem>,
    part_index: usize,
    g: &Poly<F::Elem>,
    h: &Poly<F::Elem>,
    k: &F,
) -> Result<Factorization<F::Elem>> {
    let (base, mult) = fact
        .parts()
        .get(part_index)
        .ok_or_else(|| Error::InvalidArgument(format!("no part with index {part_index}")))?;
    if g.degree().unwrap_or(0) < 1 || h.degree().unwrap_or(0) < 1 {
        return Err(Error::InvalidFactorization("g and h must have degree >= 1".into()));
    }
    let (g, h) = (g.monic(k), h.monic(k));
    if g.mul(&h, k) != *base {
        return Err(Error::InvalidFactorization("g * h differs from the refined base".into()));
    }
    if !g.gcd(&h, k).is_one(k) {
        return Err(Error::InvalidFactorization("g and h are not coprime".into()));
    }
    let mut parts: Vec<_> = fact.parts().to_vec();
    parts.remove(part_index);
    parts.push((g, *mult));
    parts.push((h, *mult));
    let irreducible = fact.irreducible_parts() || {
        let mut all = true;
        for (b, _) in &parts {
            all &= crate::polyring::is_irreducible(b, k)?;
        }
        all
    };
    let refined = Factorization::new(parts, irreducible, k)?;
    let order = k.order();
    let (before, after) = (exclusion_count(fact, &order), exclusion_count(&refined, &order));
    if after >= before {
        return Err(Error::Inconsistent(format!("refinement did not decrease Phi ({before} -> {after})")));
    }
    Ok(refined)
}

/// Roots of `L` in `ext` that are roots of no `K_i`, found by evaluating
/// every element. The associate of `L` must divide `x^n - 1` so that all
/// of its roots lie in `ext`.
pub fn s_members<F: Field>(
    fact: &SymbolicFactorization<F>,
    ext: &ExtSpec<F>,
    budget: u64,
) -> Result<Vec<Vec<F::Elem>>> {
    let mut out = Vec::new();
    scan_s(fact, ext, budget, |beta| out.push(beta.to_vec()))?;
    Ok(out)
}

/// Brute-force `|S_F(L)|`, the oracle companion of [`root_count`].
pub fn brute_force_s<F: Field>(fact: &SymbolicFactorization<F>, ext: &ExtSpec<F>, budget: u64) -> Result<BigUint> {
    let mut count = BigUint::zero();
    scan_s(fact, ext, budget, |_| count += 1u32)?;
    Ok(count)
}

fn scan_s<F: Field>(
    fact: &SymbolicFactorization<F>,
    ext: &ExtSpec<F>,
    budget: u64,
    mut visit: impl FnMut(&[F::Elem]),
) -> Result<()> {
    let k = &fact.field;
    if ext.base() != k {
        return Err(Error::FieldMismatch);
    }
    let n = ext.degree();
    let l = fact.associates.product(k);
    if !l.divides(&Poly::x_pow_minus_one(n, k), k)? {
        return Err(Error::InvalidFactorization(format!(
            "associate does not divide x^{n} - 1, so L does not split in the extension"
        )));
    }
    check_budget(ext.size(), budget, "extension field elements")?;
    let omitted: Vec<Poly<F::Elem>> =
        (0..fact.associates.len()).map(|i| fact.omitted(i).map(|q| q.associate)).collect::<Result<_>>()?;
    for beta in ext.elements(budget)? {
        let conj = ext.conjugates(&beta)?;
        if !ext.is_zero(&eval_on_conjugates(l.coeffs(), &conj, k)) {
            continue;
        }
        if omitted.iter().all(|ki| !ext.is_zero(&eval_on_conjugates(ki.coeffs(), &conj, k))) {
            visit(&beta);
        }
    }
    Ok(())
}

/// The symbolic factorization `x^{q^n} - x = (x)_{d | m} Psi_d^{p^e}` whose
/// associates are the cyclotomic polynomials dividing `x^n - 1`.
pub fn cyclotomic_symbolic_factorization<F: Field>(n: u64, k: &F, seed: u64) -> Result<SymbolicFactorization<F>> {
    let t = crate::polyring::factor_xn_minus_1(n, k, seed)?;
    Ok(SymbolicFactorization::from_associates(t.cyclotomic_factorization(), k))
}

/// The finest symbolic factorization of `x^{q^n} - x`, one part per
/// irreducible factor of `x^n - 1`.
pub fn irreducible_symbolic_factorization<F: Field>(n: u64, k: &F, seed: u64) -> Result<SymbolicFactorization<F>> {
    let t = crate::polyring::factor_xn_minus_1(n, k, seed)?;
    Ok(SymbolicFactorization::from_associates(t.irreducible_factorization(), k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{v_count, PrimePower};
    use crate::gf::{FieldSpec, DEFAULT_ELEMENT_BUDGET};
    use crate::polyring::{factor, DEFAULT_SEED};

    fn f(q: u64) -> FieldSpec {
        FieldSpec::from_q(q).unwrap()
    }

    fn qp(coeffs: Vec<u64>, k: &FieldSpec) -> QPoly<FieldSpec> {
        QPoly::new(Poly::new(coeffs, k), k)
    }

    fn fact(parts: Vec<(Vec<u64>, u32)>, k: &FieldSpec) -> Factorization<u64> {
        Factorization::new(parts.into_iter().map(|(c, e)| (Poly::new(c, k), e)).collect(), false, k).unwrap()
    }

    #[test]
    fn symbolic_mul_examples() {
        let k2 = f(2);
        let l = qp(vec![1, 1], &k2);
        let sq = l.symbolic_mul(&l).unwrap();
        assert_eq!(sq.coeffs(), &[1, 0, 1]);
        // (x^2 + x)^2 + (x^2 + x) = x^4 + x in characteristic 2; check pointwise on F_16.
        let ext = ExtSpec::new(&k2, 4).unwrap();
        for b in ext.elements(DEFAULT_ELEMENT_BUDGET).unwrap() {
            let inner = l.evaluate(&b, &ext).unwrap();
            let composed = l.evaluate(&inner, &ext).unwrap();
            let direct = ext.add(&ext.pow_u64(&b, 4), &b);
            assert_eq!(composed, direct);
            assert_eq!(sq.evaluate(&b, &ext).unwrap(), direct);
        }
        assert_eq!(l.symbolic_mul(&QPoly::identity(&k2)).unwrap(), l);

        let k3 = f(3);
        let l1 = qp(vec![2, 1], &k3);
        let l2 = qp(vec![1, 1], &k3);
        let prod = l1.symbolic_mul(&l2).unwrap();
        assert_eq!(prod.coeffs(), &[2, 0, 1]);
        let ext = ExtSpec::new(&k3, 2).unwrap();
        for b in ext.elements(DEFAULT_ELEMENT_BUDGET).unwrap() {
            let composed = l1.evaluate(&l2.evaluate(&b, &ext).unwrap(), &ext).unwrap();
            let direct = ext.sub(&ext.pow_u64(&b, 9), &b);
            assert_eq!(composed, direct);
            assert_eq!(direct, ext.zero());
        }
        assert_eq!(l1.symbolic_mul(&qp(vec![1, 1], &k2)), Err(Error::FieldMismatch));
    }

    #[test]
    fn symbolic_divides_examples() {
        let k2 = f(2);
        assert!(qp(vec![1, 1], &k2).symbolic_divides(&qp(vec![1, 0, 1], &k2)).unwrap());
        assert!(qp(vec![1, 1, 1], &k2).symbolic_divides(&qp(vec![1, 0, 0, 1], &k2)).unwrap());
        assert!(!qp(vec![1, 1], &k2).symbolic_divides(&qp(vec![1, 1, 1], &k2)).unwrap());
        assert_eq!(qp(vec![], &k2).symbolic_divides(&qp(vec![1], &k2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluate_examples() {
        for (q, n) in [(2u64, 3usize), (3, 2), (4, 2)] {
            let k = f(q);
            let ext = ExtSpec::new(&k, n).unwrap();
            let xn1 = QPoly::new(Poly::x_pow_minus_one(n, &k), &k);
            let trace_op = QPoly::new(Poly::new(vec![1; n], &k), &k);
            for b in ext.elements(DEFAULT_ELEMENT_BUDGET).unwrap() {
                assert_eq!(xn1.evaluate(&b, &ext).unwrap(), ext.zero());
                assert_eq!(trace_op.evaluate(&b, &ext).unwrap(), ext.embed(&ext.field_trace(&b).unwrap()));
            }
        }
        let k2 = f(2);
        let ext = ExtSpec::new(&k2, 2).unwrap();
        let alpha = ext.generator();
        assert_eq!(qp(vec![1, 1], &k2).evaluate(&alpha, &ext).unwrap(), ext.one());
        assert!(qp(vec![1, 1], &k2).evaluate(&[1], &ext).is_err());
    }

    #[test]
    fn root_count_examples() {
        let k2 = f(2);
        let x7 = SymbolicFactorization::from_associates(fact(vec![(vec![1, 1], 1), (vec![1, 1, 1], 1)], &k2), &k2);
        assert_eq!(root_count(&x7).unwrap(), BigUint::from(3u32));
        let ext8 = ExtSpec::new(&k2, 3).unwrap();
        assert_eq!(brute_force_s(&x7, &ext8, DEFAULT_ELEMENT_BUDGET).unwrap(), BigUint::from(3u32));

        let single = SymbolicFactorization::from_associates(fact(vec![(vec![1, 1, 0, 1], 1)], &k2), &k2);
        assert_eq!(root_count(&single).unwrap(), BigUint::from(7u32));

        let squared = SymbolicFactorization::from_associates(fact(vec![(vec![1, 1], 2)], &k2), &k2);
        assert_eq!(root_count(&squared).unwrap(), BigUint::from(2u32));
        let ext4 = ExtSpec::new(&k2, 2).unwrap();
        assert_eq!(brute_force_s(&squared, &ext4, DEFAULT_ELEMENT_BUDGET).unwrap(), BigUint::from(2u32));
        assert!(root_count_checked(&squared, 3).is_err());
        assert_eq!(root_count_checked(&squared, 2).unwrap(), BigUint::from(2u32));

        for q in [2u64, 3, 5] {
            let k = f(q);
            let one = cyclotomic_symbolic_factorization(1, &k, DEFAULT_SEED).unwrap();
            let ext = ExtSpec::new(&k, 1).unwrap();
            assert_eq!(brute_force_s(&one, &ext, DEFAULT_ELEMENT_BUDGET).unwrap(), BigUint::from(q - 1));
        }
    }

    #[test]
    fn cyclotomic_s_set_counts_normal_elements() {
        let k2 = f(2);
        let sf = cyclotomic_symbolic_factorization(3, &k2, DEFAULT_SEED).unwrap();
        let ext = ExtSpec::new(&k2, 3).unwrap();
        assert_eq!(brute_force_s(&sf, &ext, DEFAULT_ELEMENT_BUDGET).unwrap(), BigUint::from(3u32));
        // The finest factorization counts normal elements for any n.
        for (q, n) in [(2u64, 4u64), (2, 6), (3, 3), (3, 4), (4, 3), (5, 2)] {
            let k = f(q);
            let sf = irreducible_symbolic_factorization(n, &k, DEFAULT_SEED).unwrap();
            let ext = ExtSpec::new(&k, n as usize).unwrap();
            let expected = v_count(n, PrimePower::from_q(q).unwrap()).unwrap();
            assert_eq!(root_count(&sf).unwrap(), expected);
            assert_eq!(brute_force_s(&sf, &ext, DEFAULT_ELEMENT_BUDGET).unwrap(), expected);
        }
    }

    #[test]
    fn brute_force_rejects_non_splitting_operators() {
        let k2 = f(2);
        let sf = SymbolicFactorization::from_associates(fact(vec![(vec![1, 1, 1], 1)], &k2), &k2);
        let ext = ExtSpec::new(&k2, 4).unwrap();
        assert!(matches!(brute_force_s(&sf, &ext, DEFAULT_ELEMENT_BUDGET), Err(Error::InvalidFactorization(_))));
    }

    #[test]
    fn phi_examples() {
        let k2 = f(2);
        let l = Poly::x_pow_minus_one(3, &k2);
        let fine = fact(vec![(vec![1, 1], 1), (vec![1, 1, 1], 1)], &k2);
        let coarse = fact(vec![(vec![1, 0, 0, 1], 1)], &k2);
        assert_eq!(generalized_phi(&l, &fine, &k2).unwrap(), BigUint::from(3u32));
        assert_eq!(generalized_phi(&l, &coarse, &k2).unwrap(), BigUint::from(7u32));
        let sq = Poly::new(vec![1, 0, 1], &k2);
        assert_eq!(generalized_phi(&sq, &fact(vec![(vec![1, 1], 2)], &k2), &k2).unwrap(), BigUint::from(2u32));
        assert!(generalized_phi(&sq, &fine, &k2).is_err());
    }

    #[test]
    fn refine_examples() {
        let k2 = f(2);
        let coarse = fact(vec![(vec![1, 0, 0, 1], 1)], &k2);
        let g = Poly::new(vec![1, 1], &k2);
        let h = Poly::new(vec![1, 1, 1], &k2);
        let fine = refine(&coarse, 0, &g, &h, &k2).unwrap();
        assert_eq!(fine.len(), 2);
        assert!(fine.irreducible_parts());
        let l = Poly::x_pow_minus_one(3, &k2);
        assert_eq!(generalized_phi(&l, &coarse, &k2).unwrap(), BigUint::from(7u32));
        assert_eq!(generalized_phi(&l, &fine, &k2).unwrap(), BigUint::from(3u32));

        let k3 = f(3);
        let coarse = fact(vec![(vec![2, 0, 1], 1)], &k3);
        let fine = refine(&coarse, 0, &Poly::new(vec![2, 1], &k3), &Poly::new(vec![1, 1], &k3), &k3).unwrap();
        let l = Poly::x_pow_minus_one(2, &k3);
        assert_eq!(generalized_phi(&l, &coarse, &k3).unwrap(), BigUint::from(8u32));
        assert_eq!(generalized_phi(&l, &fine, &k3).unwrap(), BigUint::from(4u32));

        // (x + 1)^2 over F_2 cannot be split into coprime halves.
        let bad = fact(vec![(vec![1, 0, 1], 1)], &k2);
        assert!(refine(&bad, 0, &g, &g, &k2).is_err());
        assert!(refine(&coarse, 0, &g, &h, &k3).is_err());
    }

    #[test]
    fn full_factorization_minimizes_phi() {
        let k3 = f(3);
        let l = Poly::x_pow_minus_one(8, &k3);
        let full = factor(&l, &k3).unwrap();
        let coarse = fact(vec![(l.coeffs().to_vec(), 1)], &k3);
        assert!(generalized_phi(&l, &full, &k3).unwrap() < generalized_phi(&l, &coarse, &k3).unwrap());
    }
}
