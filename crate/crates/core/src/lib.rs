//! Derivations of polynomial rings in characteristic `p > 0`.
//!
//! The crate decides, by exact computation over `F_p`, when an irreducible
//! derivation of `K[x_1, .., x_n]` is Jacobian, certifies `(n - 1)`-element
//! p-bases of its ring of constants, and in two variables extracts the single
//! generator `f` with `K[x, y]^d = K[x^p, y^p, f]`.
//!
//! Modules:
//! - [`poly`]: sparse polynomials over `F_p` / `F_p[t]`, gcd, `B`-expansion.
//! - [`deriv`]: derivations, divergence, Jacobian minors, `d_F`, dgcd.
//! - [`pconst`]: rings of constants and the decision procedures.
//! - [`textio`]: polynomial grammar, derivation spec files, reports.
//! - [`fuzz`]: seeded property suites shared by the CLI and the tests.

pub mod cli;
pub mod deriv;
pub mod field;
pub mod fuzz;
pub mod linalg;
pub mod pconst;
pub mod poly;
pub mod sample;
pub mod textio;

pub use deriv::{DerivError, Derivation, TupleF};
pub use pconst::{ConstError, JacobianWitness, KernelBasis, TwoVarReport};
pub use poly::{BExpansion, Context, Poly, PolyError};
pub use textio::{format_poly, parse_derivation_spec, parse_poly, ParseError};
