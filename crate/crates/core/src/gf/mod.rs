//! Finite fields as a two-level tower `F_p ⊂ F_q ⊂ F_{q^n}`.
//!
//! [`FieldSpec`] is the base field `F_q = F_p[y]/(g)`; its elements are the
//! canonical integers `sum c_i p^i` built from the coefficients of `y^i`.
//! [`ExtSpec`] is `F_q[x]/(f)` with elements stored as little-endian
//! coefficient vectors over the base. Moduli default to the
//! lexicographically smallest monic irreducible (see [`find_irreducible`]).

mod base;
mod ext;

pub use base::FieldSpec;
pub use ext::{Elements, ExtSpec};

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::polyring::{is_irreducible, Poly};

/// Default enumeration budget for element scans (`q^n` at most `2^20`).
pub const DEFAULT_ELEMENT_BUDGET: u64 = 1 << 20;

/// Arithmetic of a finite field with cheaply clonable elements.
///
/// Elements are totally ordered by their canonical encoding; this order
/// drives every "lexicographically smallest" choice in the crate.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn characteristic(&self) -> u64;
    fn order(&self) -> BigUint;
    /// Number of elements, if it fits in a `u64`.
    fn size(&self) -> Option<u64>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Image of the integer `c` under `Z -> F_p -> F`.
    fn from_int(&self, c: u64) -> Self::Elem;
    /// Element with canonical index `index < size()`, in increasing
    /// canonical order.
    fn element(&self, index: u64) -> Self::Elem;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, exp: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &Self::Elem, exp: u64) -> Self::Elem {
        self.pow(a, &BigUint::from(exp))
    }
}

/// Refuses enumerations of more than `budget` items.
pub fn check_budget(size: Option<u64>, budget: u64, what: &str) -> Result<u64> {
    match size {
        Some(s) if s <= budget => Ok(s),
        Some(s) => Err(Error::BudgetExceeded { size: format!("{what} ({s})"), budget }),
        None => Err(Error::BudgetExceeded { size: format!("{what} (> 2^64)"), budget }),
    }
}

/// Lexicographically smallest monic irreducible of the given degree over `field`.
///
/// Candidates `c_0 + c_1 x + ... + x^degree` are compared on
/// `(c_0, c_1, ..., c_{degree-1})` with the constant term most significant,
/// each coefficient by its canonical encoding.
pub fn find_irreducible<F: Field>(field: &F, degree: usize) -> Result<Poly<F::Elem>> {
    if degree == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    if degree == 1 {
        return Ok(Poly::x(field));
    }
    let q = field.size().ok_or_else(|| Error::FieldTooLarge("base field too large to scan".into()))?;
    // Constant term 0 means divisible by x, so the scan starts at c_0 = 1.
    let mut digits = vec![0u64; degree];
    digits[0] = 1;
    loop {
        let mut coeffs: Vec<F::Elem> = digits.iter().map(|&d| field.element(d)).collect();
        coeffs.push(field.one());
        let f = Poly::new(coeffs, field);
        if is_irreducible(&f, field)? {
            return Ok(f);
        }
        // Advance the last coordinate fastest.
        let mut i = degree - 1;
        loop {
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            if i == 0 {
                return Err(Error::Inconsistent(format!("no irreducible of degree {degree} found")));
            }
            i -= 1;
        }
    }
}
