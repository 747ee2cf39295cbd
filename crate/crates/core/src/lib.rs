//! Inversion of the two-data spherical Radon transform for spheres centred on
//! the plane `z = 0`.
//!
//! A function `f` on R³ is observed through two moments of its restriction to
//! each sphere `S(p, q, t)` centred at `(p, q, 0)`: the spherical mean `Mf` and
//! the first cosine coefficient `a01`. The value `f(x, y, z)` for `z != 0` is
//! the limit of explicit partial sums that combine `Mf`, `a01`, their iterated
//! planar Laplacians and two families of phantom-independent filter
//! polynomials built from exact rational recurrences.
//!
//! Crate layout:
//!
//! * [`coeff_tables`] – exact recurrence coefficients and filter polynomials.
//! * [`forward`] – spherical means, harmonic coefficients and the two-data transform.
//! * [`phantom`] – test fields with analytic ground truth.
//! * [`moment_data`] – sampled moment grids, stencil Laplacians, radial rules.
//! * [`reconstructor`] – the order-n partial sums at points and on slices.
//! * [`verifier`] – brute-force residual checks of the underlying identities.
//! * [`cli`] – the `planar-srt` command-line front end.

pub mod cli;
pub mod coeff_tables;
pub mod error;
pub mod forward;
pub mod jet;
pub mod legendre;
pub mod moment_data;
pub mod phantom;
pub mod quadrature;
pub mod reconstructor;
pub mod verifier;

mod io_util;

pub use coeff_tables::{build_tables, polynomial_set, CoefficientTable, PolynomialSet, Rational};
pub use error::{Error, Result};
pub use forward::{SphereCenter, TwoData};
pub use moment_data::MomentGrid;
pub use phantom::ScalarField3D;
pub use quadrature::SphericalQuadratureRule;
pub use reconstructor::{ReconstructionRequest, ReconstructionResult};
