//! Approximate GCD of univariate polynomials with complex coefficients.
//!
//! Given a pair `(f, g)` and a target degree `d`, the library finds a
//! minimally perturbed pair `(f~, g~)` admitting an exact common divisor `h`
//! of degree `d`. The search is an equality-constrained minimization over
//! the perturbed coefficients and a cofactor pair `(a, b)`: feasibility of
//! `a*f~ + b*g~ = 0` with unit joint cofactor norm certifies the common
//! divisor through the subresultant matrix, and an undamped Newton iteration
//! on the saddle-point system drives the perturbation to a local minimum.
//! The divisor itself is then read off by least-squares division and the
//! pair corrected to exact multiples.
//!
//! Complex data never reaches the factorizations directly: every complex
//! system is embedded as a doubled real one via `[[Re, -Im], [Im, Re]]`.
//!
//! # Example
//!
//! ```
//! use gpgcd::poly::UnivariatePoly;
//! use gpgcd::optimizer::OptimizerConfig;
//!
//! // f = (x-1)(x+2), g = (x-1)(x-3): a degree-1 common divisor exists
//! let f = UnivariatePoly::from_real(&[-2.0, 1.0, 1.0]);
//! let g = UnivariatePoly::from_real(&[3.0, -4.0, 1.0]);
//! let result = gpgcd::approximate_gcd(f, g, 1, &OptimizerConfig::default()).unwrap();
//! assert!(result.perturbation < 1e-8);
//! assert_eq!(result.h.nominal_degree(), 1);
//! ```

pub mod error;
pub mod harness;
pub mod io;
pub mod kernel;
pub mod optimizer;
pub mod poly;
pub mod recovery;

pub use error::{Error, Result};
pub use optimizer::{OptimizerConfig, ProblemSpec};
pub use poly::UnivariatePoly;
pub use recovery::{ApproxGcdResult, CandidateUsed};

/// Runs the full pipeline: set up the problem, iterate to a feasible
/// minimizer, recover the divisor and correct the pair.
pub fn approximate_gcd(
    f: UnivariatePoly,
    g: UnivariatePoly,
    d: usize,
    config: &OptimizerConfig,
) -> Result<ApproxGcdResult> {
    let spec = ProblemSpec::new(f, g, d)?;
    let state = spec.run(config)?;
    recovery::recover_gcd(&state, &spec)
}
