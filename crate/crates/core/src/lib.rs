//! Six-vertex model with domain wall boundary conditions at the combinatorial
//! point, and the enumeration of alternating sign matrices it encodes.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactnum`] exact rationals, dense rational polynomials, Laurent
//!   polynomials in `s = e^{iu}`, the cyclotomic field `Q(e^{iπ/6})` and a
//!   double-double float for ill-conditioned evaluations.
//! * [`linalg`] LU determinants over any of the scalar types above.
//! * [`asmcount`] ASM generation, half-turn symmetric ASMs, and the closed
//!   forms for total and refined counts.
//! * [`icemodel`] vertex weights, brute-force state sums, the Izergin-Korepin
//!   determinant and its companion, and the Vandermonde-type forms.
//! * [`recur`] Fourier reconstruction of `f_n`, `g_n`, the three-column
//!   recurrences, `S_n`, and the normalized recurrence for `z_n`, `v_n`.
//! * [`cli`] command front end.

pub mod asmcount;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod icemodel;
pub mod linalg;
pub mod recur;

pub use error::{Error, Result};
