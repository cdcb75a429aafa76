//! The core iteration: pack the polynomial coefficients and cofactors into a
//! real decision vector, evaluate the objective, constraint stack and its
//! Jacobian, initialize from an SVD of the subresultant embedding, and drive
//! the equality-constrained Newton loop to a feasible minimizer.
//!
//! # Decision vector layout
//!
//! For input degrees `m = deg F`, `n = deg G` and target GCD degree `d`, the
//! decision vector has dimension `4(m + n - d + 2)` and is laid out as eight
//! descending-order blocks:
//!
//! ```text
//! [ Re f~ (m+1) | Re g~ (n+1) | Im f~ (m+1) | Im g~ (n+1)
//!   | Re a (n-d+1) | Re b (m-d+1) | Im a (n-d+1) | Im b (m-d+1) ]
//! ```
//!
//! where `f~`, `g~` are the perturbed polynomials and `a`, `b` the cofactors
//! satisfying `a*f~ + b*g~ = 0` with `||a||^2 + ||b||^2 = 1` at feasibility.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{
    self, complex_to_real_block, smallest_singular_pair, solve_saddle_point, RealMatrix, RealVector,
};
use crate::poly::{convolution_matrix, subresultant_matrix, ComplexMatrix, UnivariatePoly};

/// Packed real decision vector; see the module docs for the block layout.
pub type DecisionVector = DVector<f64>;

/// An approximate-GCD problem instance: the input pair and the target degree.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    f: UnivariatePoly,
    g: UnivariatePoly,
    m: usize,
    n: usize,
    d: usize,
    // coefficient part of the initial point, cached for objective/gradient
    original_coeffs: RealVector,
}

impl ProblemSpec {
    /// Validates `deg(f) >= deg(g) > 0` and `deg(g) >= d > 0`.
    pub fn new(f: UnivariatePoly, g: UnivariatePoly, d: usize) -> Result<Self> {
        let m = f.nominal_degree();
        let n = g.nominal_degree();
        if !(m >= n && n > 0) {
            return Err(Error::InvalidArgument(format!(
                "expected deg(f) >= deg(g) > 0, got deg(f)={m}, deg(g)={n}"
            )));
        }
        if !(d > 0 && d <= n) {
            return Err(Error::InvalidArgument(format!(
                "expected 0 < d <= deg(g), got d={d}, deg(g)={n}"
            )));
        }
        let mut original_coeffs = RealVector::zeros(2 * (m + n + 2));
        write_coeff_blocks(&mut original_coeffs, &f, &g, m, n);
        Ok(Self { f, g, m, n, d, original_coeffs })
    }

    pub fn f(&self) -> &UnivariatePoly {
        &self.f
    }

    pub fn g(&self) -> &UnivariatePoly {
        &self.g
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of coordinates holding polynomial coefficients.
    pub fn coeff_len(&self) -> usize {
        2 * (self.m + self.n + 2)
    }

    /// Number of coordinates holding cofactor coefficients.
    pub fn cofactor_len(&self) -> usize {
        2 * (self.m + self.n - 2 * self.d + 2)
    }

    /// Total decision-vector dimension, `4(m + n - d + 2)`.
    pub fn dimension(&self) -> usize {
        4 * (self.m + self.n - self.d + 2)
    }

    /// Number of constraint rows, `2(m + n - d + 1) + 1`.
    pub fn constraint_rows(&self) -> usize {
        2 * (self.m + self.n - self.d + 1) + 1
    }

    /// Packs perturbed polynomials and cofactors into a decision vector.
    pub fn pack(
        &self,
        f_tilde: &UnivariatePoly,
        g_tilde: &UnivariatePoly,
        a: &UnivariatePoly,
        b: &UnivariatePoly,
    ) -> Result<DecisionVector> {
        let slots = [
            (f_tilde.nominal_degree(), self.m, "f~"),
            (g_tilde.nominal_degree(), self.n, "g~"),
            (a.nominal_degree(), self.n - self.d, "a"),
            (b.nominal_degree(), self.m - self.d, "b"),
        ];
        for (deg, slot, name) in slots {
            if deg > slot {
                return Err(Error::InvalidArgument(format!(
                    "degree of {name} ({deg}) exceeds its slot ({slot})"
                )));
            }
        }
        let mut x = DVector::zeros(self.dimension());
        write_coeff_blocks(&mut x, f_tilde, g_tilde, self.m, self.n);
        let base = self.coeff_len();
        let (la, lb) = (self.n - self.d + 1, self.m - self.d + 1);
        write_desc(&mut x, base, a, la, |c| c.re);
        write_desc(&mut x, base + la, b, lb, |c| c.re);
        write_desc(&mut x, base + la + lb, a, la, |c| c.im);
        write_desc(&mut x, base + 2 * la + lb, b, lb, |c| c.im);
        Ok(x)
    }

    /// Recovers `(f~, g~, a, b)` from a decision vector.
    pub fn unpack(&self, x: &DecisionVector) -> (UnivariatePoly, UnivariatePoly, UnivariatePoly, UnivariatePoly) {
        assert_eq!(x.len(), self.dimension(), "decision vector has the wrong dimension");
        let (m, n, d) = (self.m, self.n, self.d);
        let f = read_complex(x, 0, m + n + 2, m + 1);
        let g = read_complex(x, m + 1, m + n + 2, n + 1);
        let base = self.coeff_len();
        let (la, lb) = (n - d + 1, m - d + 1);
        let a = read_complex(x, base, la + lb, la);
        let b = read_complex(x, base + la, la + lb, lb);
        (f, g, a, b)
    }

    /// The cofactor coordinates of `x` as one real vector `(v1; v2)`.
    fn cofactor_coords(&self, x: &DecisionVector) -> RealVector {
        x.rows(self.coeff_len(), self.cofactor_len()).into_owned()
    }

    /// Sum of squared perturbations of the coefficient coordinates from the
    /// original inputs; cofactor coordinates do not contribute.
    pub fn objective(&self, x: &DecisionVector) -> f64 {
        let mut total = 0.0;
        for i in 0..self.coeff_len() {
            let delta = x[i] - self.original_coeffs[i];
            total += delta * delta;
        }
        total
    }

    /// Gradient of the halved objective: the coefficient perturbation on the
    /// coefficient coordinates, zero on the cofactor coordinates.
    pub fn gradient(&self, x: &DecisionVector) -> RealVector {
        let mut g = RealVector::zeros(self.dimension());
        for i in 0..self.coeff_len() {
            g[i] = x[i] - self.original_coeffs[i];
        }
        g
    }

    /// Evaluates the constraint stack `q(x)`.
    ///
    /// Row 0 is the cofactor normalization `||a||^2 + ||b||^2 - 1`; the
    /// remaining `2(m+n-d+1)` rows are the real embedding of the subresultant
    /// system applied to the cofactor coordinates, i.e. the stacked real and
    /// imaginary coefficients of `a*f~ + b*g~`.
    pub fn constraint(&self, x: &DecisionVector) -> RealVector {
        let (f, g, _, _) = self.unpack(x);
        let v = self.cofactor_coords(x);
        let n_embed = complex_to_real_block(&self.subresultant(&f, &g));
        let mut q = RealVector::zeros(self.constraint_rows());
        q[0] = v.norm_squared() - 1.0;
        q.rows_mut(1, self.constraint_rows() - 1).copy_from(&(&n_embed * &v));
        q
    }

    /// Assembles the constraint Jacobian at `x`:
    ///
    /// ```text
    /// [   0      0    2 v1^t  2 v2^t ]
    /// [  A1    -A2      N1     -N2   ]
    /// [  A2     A1      N2      N1   ]
    /// ```
    ///
    /// where `A1 + i A2` is the convolution block pair `[C_m(a)  C_n(b)]`
    /// and `N1 + i N2` the subresultant matrix of the current `(f~, g~)`.
    pub fn jacobian(&self, x: &DecisionVector) -> RealMatrix {
        let (f, g, a, b) = self.unpack(x);
        let v = self.cofactor_coords(x);

        let a_embed = complex_to_real_block(&self.cofactor_block(&a, &b));
        let n_embed = complex_to_real_block(&self.subresultant(&f, &g));

        let rows = self.constraint_rows();
        let mut j = RealMatrix::zeros(rows, self.dimension());
        for (i, vi) in v.iter().enumerate() {
            j[(0, self.coeff_len() + i)] = 2.0 * vi;
        }
        j.view_mut((1, 0), (rows - 1, self.coeff_len())).copy_from(&a_embed);
        j.view_mut((1, self.coeff_len()), (rows - 1, self.cofactor_len())).copy_from(&n_embed);
        j
    }

    /// Initial decision vector: the original coefficients together with the
    /// cofactor candidate read off the right singular vector of the smallest
    /// singular value of the embedded subresultant matrix of `(F, G)`. The
    /// singular vector has unit norm, so the normalization row is satisfied
    /// exactly at the initial point.
    pub fn initialize(&self) -> Result<DecisionVector> {
        let n_embed = complex_to_real_block(&self.subresultant(&self.f, &self.g));
        let (_, _, v) = smallest_singular_pair(&n_embed)?;
        let (a, b) = self.cofactors_from_kernel(&v);
        self.pack(&self.f, &self.g, &a, &b)
    }

    /// Splits a stacked real kernel vector `(v1; v2)` into the cofactor pair.
    fn cofactors_from_kernel(&self, v: &RealVector) -> (UnivariatePoly, UnivariatePoly) {
        let half = self.cofactor_len() / 2;
        assert_eq!(v.len(), self.cofactor_len());
        let la = self.n - self.d + 1;
        let lb = self.m - self.d + 1;
        let a = read_complex_halves(v, 0, half, la);
        let b = read_complex_halves(v, la, half, lb);
        (a, b)
    }

    /// Runs the Newton iteration from the SVD initial point.
    ///
    /// Each step solves the saddle-point system for the search direction and
    /// applies it undamped; the loop stops when the step 2-norm drops to
    /// `config.epsilon`. The Jacobian's row rank is monitored every
    /// iteration, and losing full rank aborts the run.
    pub fn run(&self, config: &OptimizerConfig) -> Result<IterationState> {
        if config.epsilon <= 0.0 || config.epsilon.is_nan() || config.max_iterations == 0 {
            return Err(Error::InvalidArgument(
                "epsilon must be positive and max_iterations at least 1".into(),
            ));
        }
        let mut x = self.initialize()?;
        let mut last = IterationState {
            x: x.clone(),
            iteration: 0,
            last_step_norm: f64::INFINITY,
            constraint_norm: self.constraint(&x).amax(),
        };
        for k in 0..config.max_iterations {
            let q = self.constraint(&x);
            let j = self.jacobian(&x);
            let grad = self.gradient(&x);

            let sv = j.clone().singular_values();
            if sv.min() < config.rank_tolerance * sv.max() {
                return Err(Error::JacobianRankDeficient { iteration: k });
            }

            let (step, _multipliers) = solve_saddle_point(&j, &grad, &q).map_err(|e| match e {
                Error::RankDeficient { .. } => Error::JacobianRankDeficient { iteration: k },
                other => other,
            })?;
            x += &step;
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::Numeric(format!("iterate became non-finite at iteration {k}")));
            }

            let step_norm = step.norm();
            last = IterationState {
                x: x.clone(),
                iteration: k + 1,
                last_step_norm: step_norm,
                constraint_norm: self.constraint(&x).amax(),
            };
            if step_norm <= config.epsilon {
                return Ok(last);
            }
        }
        Err(Error::NonConvergence { max_iterations: config.max_iterations, last: Box::new(last) })
    }

    fn subresultant(&self, f: &UnivariatePoly, g: &UnivariatePoly) -> ComplexMatrix {
        subresultant_matrix(f, g, self.d - 1).expect("degree slots fixed by construction")
    }

    /// The complex convolution block `[C_m(a)  C_n(b)]`, whose real embedding
    /// forms the coefficient columns of the Jacobian.
    fn cofactor_block(&self, a: &UnivariatePoly, b: &UnivariatePoly) -> ComplexMatrix {
        let ca = convolution_matrix(a, self.m);
        let cb = convolution_matrix(b, self.n);
        let rows = self.m + self.n - self.d + 1;
        debug_assert_eq!(ca.nrows(), rows);
        debug_assert_eq!(cb.nrows(), rows);
        let mut out = ComplexMatrix::zeros(rows, self.m + self.n + 2);
        out.view_mut((0, 0), (rows, self.m + 1)).copy_from(&ca);
        out.view_mut((0, self.m + 1), (rows, self.n + 1)).copy_from(&cb);
        out
    }
}

/// Stopping and safety parameters for the Newton loop.
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    /// Stop threshold on the 2-norm of the update vector.
    pub epsilon: f64,
    /// Iteration cap; exceeding it is reported as an error.
    pub max_iterations: usize,
    /// Relative singular-value ratio below which the Jacobian is treated as
    /// rank-deficient.
    pub rank_tolerance: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { epsilon: 1e-8, max_iterations: 50, rank_tolerance: kernel::RANK_TOLERANCE }
    }
}

/// Snapshot of the iteration at exit.
#[derive(Debug, Clone)]
pub struct IterationState {
    pub x: DecisionVector,
    /// Number of Newton steps taken.
    pub iteration: usize,
    pub last_step_norm: f64,
    /// Max-norm of the constraint stack at `x`.
    pub constraint_norm: f64,
}

/// Writes the four coefficient blocks (Re f, Re g, Im f, Im g), descending
/// order, into the front of a packed vector.
fn write_coeff_blocks(x: &mut RealVector, f: &UnivariatePoly, g: &UnivariatePoly, m: usize, n: usize) {
    write_desc(x, 0, f, m + 1, |c| c.re);
    write_desc(x, m + 1, g, n + 1, |c| c.re);
    write_desc(x, m + n + 2, f, m + 1, |c| c.im);
    write_desc(x, 2 * m + n + 3, g, n + 1, |c| c.im);
}

/// Writes one real component of `p` in descending order into `len` slots
/// starting at `offset`, zero-padding degrees above the polynomial's own.
fn write_desc(x: &mut RealVector, offset: usize, p: &UnivariatePoly, len: usize, comp: impl Fn(&Complex64) -> f64) {
    for r in 0..len {
        let degree_wanted = len - 1 - r;
        let c = p.coeff(degree_wanted);
        x[offset + r] = comp(&c);
    }
}

/// Reads a complex polynomial whose real part starts at `offset` and whose
/// imaginary part sits `imag_stride` slots later, both descending.
fn read_complex(x: &RealVector, offset: usize, imag_stride: usize, len: usize) -> UnivariatePoly {
    let coeffs = (0..len)
        .map(|j| {
            let r = len - 1 - j;
            Complex64::new(x[offset + r], x[offset + imag_stride + r])
        })
        .collect();
    UnivariatePoly::new(coeffs)
}

fn read_complex_halves(v: &RealVector, offset: usize, half: usize, len: usize) -> UnivariatePoly {
    let coeffs = (0..len)
        .map(|j| {
            let r = len - 1 - j;
            Complex64::new(v[offset + r], v[offset + half + r])
        })
        .collect();
    UnivariatePoly::new(coeffs)
}
