//! Finite-field algebra for normal bases and N-polynomials.
//!
//! The crate is organized as a stack:
//!
//! * [`gf`]: the field tower `F_p ⊂ F_q ⊂ F_{q^n}`, Frobenius and trace.
//! * [`polyring`]: polynomials over any [`gf::Field`], irreducibility,
//!   factorization, cyclotomic polynomials and `x^n - 1`.
//! * [`linearized`]: q-polynomials handled through their conventional
//!   q-associates.
//! * [`counting`]: exact closed-form counts and the normal-element /
//!   nonzero-trace inequality.
//! * [`oracle`]: brute-force ground truth for every closed form.
//! * [`sweep`]: per-`(q, n)` [`counting::CountReport`]s and the verification
//!   sweep behind the `normbase` binary; [`text`] holds its input and output
//!   forms.

pub mod counting;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod linearized;
pub mod oracle;
pub mod polyring;
pub mod sweep;
pub mod text;

pub use error::{Error, Result};
