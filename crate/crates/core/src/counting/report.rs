use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::{equality_predicate, inequality_sides, nonzero_trace_irr_count, normal_basis_count, PrimePower, SplitN};
use crate::error::Result;

fn big_str<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn opt_big_str<S: Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Exact record of the inequality at one `(q, n)`.
///
/// Serialized field order is the CSV column order; big integers serialize as
/// decimal strings and absent oracle values as empty cells (JSON `null`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub q: u64,
    pub n: u64,
    pub m: u64,
    pub e: u32,
    #[serde(serialize_with = "big_str")]
    pub lhs: BigUint,
    #[serde(serialize_with = "big_str")]
    pub rhs: BigUint,
    pub equality: bool,
    pub predicate: bool,
    #[serde(serialize_with = "big_str")]
    pub v: BigUint,
    #[serde(serialize_with = "big_str")]
    pub nb_count: BigUint,
    #[serde(serialize_with = "big_str")]
    pub irr_nonzero_trace: BigUint,
    #[serde(serialize_with = "opt_big_str")]
    pub oracle_v: Option<BigUint>,
    #[serde(serialize_with = "opt_big_str")]
    pub oracle_npoly: Option<BigUint>,
    #[serde(serialize_with = "opt_big_str")]
    pub oracle_irr: Option<BigUint>,
    /// Every enumerated N-polynomial had nonzero trace.
    #[serde(skip)]
    pub oracle_containment: Option<bool>,
}

pub const CSV_HEADER: &str =
    "q,n,m,e,lhs,rhs,equality,predicate,v,nb_count,irr_nonzero_trace,oracle_v,oracle_npoly,oracle_irr";

impl CountReport {
    /// Closed-form fields only; oracle fields empty.
    pub fn closed_form(n: u64, q: PrimePower) -> Result<Self> {
        let split = SplitN::new(n, q.p)?;
        let (lhs, rhs) = inequality_sides(n, q)?;
        Ok(CountReport {
            q: q.q,
            n,
            m: split.m,
            e: split.e,
            equality: lhs == rhs,
            predicate: equality_predicate(n, q),
            v: lhs.clone(),
            lhs,
            rhs,
            nb_count: normal_basis_count(n, q)?,
            irr_nonzero_trace: nonzero_trace_irr_count(n, q)?,
            oracle_v: None,
            oracle_npoly: None,
            oracle_irr: None,
            oracle_containment: None,
        })
    }

    /// First violated invariant, if any.
    pub fn violation(&self) -> Option<String> {
        let at = format!("q={} n={}", self.q, self.n);
        let n = BigUint::from(self.n);
        if self.lhs > self.rhs {
            return Some(format!("{at}: lhs {} > rhs {}", self.lhs, self.rhs));
        }
        if self.equality != (self.lhs == self.rhs) {
            return Some(format!("{at}: equality flag disagrees with lhs, rhs"));
        }
        if self.equality != self.predicate {
            return Some(format!("{at}: equality is {} but predicate is {}", self.equality, self.predicate));
        }
        if self.v != self.lhs {
            return Some(format!("{at}: v {} differs from lhs {}", self.v, self.lhs));
        }
        let (nb, r) = self.lhs.div_rem(&n);
        if r != BigUint::default() || nb != self.nb_count {
            return Some(format!("{at}: lhs {} is not n * nb_count {}", self.lhs, self.nb_count));
        }
        let (irr, r) = self.rhs.div_rem(&n);
        if r != BigUint::default() || irr != self.irr_nonzero_trace {
            return Some(format!("{at}: rhs {} is not n * irr_nonzero_trace {}", self.rhs, self.irr_nonzero_trace));
        }
        let checks = [
            ("oracle_v", &self.oracle_v, &self.v),
            ("oracle_npoly", &self.oracle_npoly, &self.nb_count),
            ("oracle_irr", &self.oracle_irr, &self.irr_nonzero_trace),
        ];
        for (name, oracle, closed) in checks {
            if let Some(o) = oracle {
                if o != closed {
                    return Some(format!("{at}: {name} {o} differs from closed form {closed}"));
                }
            }
        }
        if self.oracle_containment == Some(false) {
            return Some(format!("{at}: an N-polynomial with zero trace was found"));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::from_q(q).unwrap()
    }

    #[test]
    fn report_fields() {
        let r = CountReport::closed_form(7, pp(2)).unwrap();
        assert_eq!((r.m, r.e), (7, 0));
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (BigUint::from(49u32), BigUint::from(63u32)));
        assert_eq!((r.equality, r.predicate), (false, false));
        assert_eq!((r.nb_count.clone(), r.irr_nonzero_trace.clone()), (BigUint::from(7u32), BigUint::from(9u32)));
        assert_eq!(r.violation(), None);

        let r = CountReport::closed_form(6, pp(2)).unwrap();
        assert_eq!((r.m, r.e), (3, 1));
        assert_eq!(r.violation(), None);
    }

    #[test]
    fn violations_are_reported() {
        let mut r = CountReport::closed_form(7, pp(2)).unwrap();
        r.oracle_v = Some(BigUint::from(48u32));
        assert!(r.violation().unwrap().contains("oracle_v"));
        let mut r = CountReport::closed_form(3, pp(2)).unwrap();
        r.predicate = false;
        assert!(r.violation().unwrap().contains("predicate"));
    }

    #[test]
    fn json_uses_decimal_strings() {
        let r = CountReport::closed_form(24, pp(16)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["rhs"], serde_json::Value::String(r.rhs.to_string()));
        assert!(v["oracle_v"].is_null());
        assert!(v.get("oracle_containment").is_none());
        assert!(r.rhs > BigUint::from(u64::MAX));
    }
}
