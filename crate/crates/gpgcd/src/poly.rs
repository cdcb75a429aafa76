//! Univariate polynomials with complex coefficients, plus the structured
//! matrices (convolution and Sylvester/subresultant) built from them.
//!
//! Coefficients are stored in ascending degree order: index `j` holds the
//! coefficient of `x^j`. The matrix builders use the conventional descending
//! order internally; that convention never leaks outside this module except
//! through [`UnivariatePoly::coeffs_descending`].

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix used by the structured-matrix builders.
pub type ComplexMatrix = DMatrix<Complex64>;

/// A univariate polynomial over the complex numbers.
///
/// The degree is a *container* property: the coefficient slot of the leading
/// term is kept even when its value is zero or numerically tiny, because the
/// matrices built from a polynomial depend on its degree slot, not on the
/// magnitude of its leading coefficient. No automatic trimming is performed.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariatePoly {
    coeffs: Vec<Complex64>,
}

impl UnivariatePoly {
    /// Builds a polynomial from ascending-order coefficients.
    ///
    /// Panics if `coeffs` is empty or contains a non-finite component;
    /// callers handling untrusted input validate before constructing.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial has at least one coefficient");
        assert!(
            coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()),
            "polynomial coefficients must be finite"
        );
        Self { coeffs }
    }

    /// The zero polynomial, represented with a single zero coefficient.
    pub fn zero() -> Self {
        Self::new(vec![Complex64::ZERO])
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::constant(Complex64::ONE)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// Builds a polynomial with real coefficients, ascending order.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&re| Complex64::new(re, 0.0)).collect())
    }

    /// Builds a polynomial from `(re, im)` pairs, ascending order.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Self {
        Self::new(pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
    }

    /// Degree slot of the container; the leading coefficient may be zero.
    pub fn nominal_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ascending-order coefficients.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `x^j`, or zero beyond the degree slot.
    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or(Complex64::ZERO)
    }

    /// Descending-order coefficient vector, leading term first.
    pub fn coeffs_descending(&self) -> Vec<Complex64> {
        self.coeffs.iter().rev().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// Squared coefficient 2-norm: the sum of `re^2 + im^2` over coefficients.
    pub fn norm2_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Coefficient 2-norm.
    pub fn norm2(&self) -> f64 {
        self.norm2_sq().sqrt()
    }

    /// Componentwise real part, same degree slot.
    pub fn real_part(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| Complex64::new(c.re, 0.0)).collect())
    }

    /// Componentwise imaginary part, same degree slot.
    pub fn imag_part(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| Complex64::new(c.im, 0.0)).collect())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}

impl std::ops::Add for &UnivariatePoly {
    type Output = UnivariatePoly;

    /// Coefficientwise sum; the degree slot is the maximum of the inputs.
    fn add(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect();
        UnivariatePoly::new(coeffs)
    }
}

impl std::ops::Sub for &UnivariatePoly {
    type Output = UnivariatePoly;

    fn sub(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect();
        UnivariatePoly::new(coeffs)
    }
}

impl std::ops::Neg for &UnivariatePoly {
    type Output = UnivariatePoly;

    fn neg(self) -> UnivariatePoly {
        UnivariatePoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Mul for &UnivariatePoly {
    type Output = UnivariatePoly;

    /// Coefficient convolution; the degree slot is the sum of the inputs'
    /// slots, except that multiplying by a zero polynomial yields the
    /// canonical zero.
    fn mul(self, rhs: &UnivariatePoly) -> UnivariatePoly {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePoly::zero();
        }
        let mut coeffs = vec![Complex64::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UnivariatePoly::new(coeffs)
    }
}

/// Builds the convolution (banded) matrix of `p` with `k + 1` columns.
///
/// Column `c` holds the descending coefficients of `p` shifted down by `c`
/// rows; the matrix has `deg(p) + k + 1` rows. Multiplying it by the
/// descending coefficient vector of a degree-`k` polynomial `q` yields the
/// descending coefficient vector of `p * q`.
pub fn convolution_matrix(p: &UnivariatePoly, k: usize) -> ComplexMatrix {
    let deg = p.nominal_degree();
    let desc = p.coeffs_descending();
    let mut m = ComplexMatrix::zeros(deg + k + 1, k + 1);
    for col in 0..=k {
        for (r, &c) in desc.iter().enumerate() {
            m[(col + r, col)] = c;
        }
    }
    m
}

/// Builds the `k`-th subresultant matrix of `f` and `g`: the left `n - k`
/// columns of `f`-coefficients next to the left `m - k` columns of
/// `g`-coefficients, where `m = deg(f) >= n = deg(g) > k`.
///
/// The result has `m + n - k` rows and `m + n - 2k` columns. Multiplying it
/// by the stacked descending coefficients of `(a, b)` with `deg(a) <= n-k-1`
/// and `deg(b) <= m-k-1` yields the descending coefficients of `a*f + b*g`.
pub fn subresultant_matrix(f: &UnivariatePoly, g: &UnivariatePoly, k: usize) -> Result<ComplexMatrix> {
    let m = f.nominal_degree();
    let n = g.nominal_degree();
    if !(k < n && n <= m) {
        return Err(Error::InvalidArgument(format!(
            "subresultant matrix requires 0 <= k < deg(g) <= deg(f), got k={k}, deg(g)={n}, deg(f)={m}"
        )));
    }
    let cf = convolution_matrix(f, n - k - 1);
    let cg = convolution_matrix(g, m - k - 1);
    debug_assert_eq!(cf.nrows(), m + n - k);
    debug_assert_eq!(cg.nrows(), m + n - k);
    let mut out = ComplexMatrix::zeros(m + n - k, m + n - 2 * k);
    out.view_mut((0, 0), (m + n - k, n - k)).copy_from(&cf);
    out.view_mut((0, n - k), (m + n - k, m - k)).copy_from(&cg);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn add_identity_and_cancellation() {
        let p = UnivariatePoly::from_real(&[1.0, 1.0]); // x + 1
        let sum = &p + &UnivariatePoly::zero();
        assert_eq!(sum, p);

        // (x^2 - 1) + 1 = x^2, degree slot preserved
        let q = UnivariatePoly::from_real(&[-1.0, 0.0, 1.0]);
        let r = &q + &UnivariatePoly::one();
        assert_eq!(r.coeffs(), &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(r.nominal_degree(), 2);
    }

    #[test]
    fn add_complex_components() {
        // ix + x = (1+i)x
        let p = UnivariatePoly::new(vec![c(0.0, 0.0), c(0.0, 1.0)]);
        let q = UnivariatePoly::from_real(&[0.0, 1.0]);
        let r = &p + &q;
        assert_eq!(r.coeffs(), &[c(0.0, 0.0), c(1.0, 1.0)]);
    }

    #[test]
    fn mul_difference_of_squares_over_c() {
        // (x - i)(x + i) = x^2 + 1
        let p = UnivariatePoly::new(vec![c(0.0, -1.0), c(1.0, 0.0)]);
        let q = UnivariatePoly::new(vec![c(0.0, 1.0), c(1.0, 0.0)]);
        let r = &p * &q;
        assert_eq!(r.coeffs(), &[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn mul_identity_and_real_case() {
        let p = UnivariatePoly::from_pairs(&[(3.0, -2.0), (0.5, 1.0), (2.0, 0.0)]);
        assert_eq!(&p * &UnivariatePoly::one(), p);

        let a = UnivariatePoly::from_real(&[-1.0, 1.0]);
        let b = UnivariatePoly::from_real(&[1.0, 1.0]);
        assert_eq!((&a * &b).coeffs(), UnivariatePoly::from_real(&[-1.0, 0.0, 1.0]).coeffs());
    }

    #[test]
    fn mul_by_zero_is_canonical_zero() {
        let p = UnivariatePoly::from_real(&[1.0, 2.0, 3.0]);
        let z = &p * &UnivariatePoly::zero();
        assert!(z.is_zero());
        assert_eq!(z.nominal_degree(), 0);
    }

    #[test]
    fn norm2_sq_examples() {
        assert_eq!(UnivariatePoly::from_real(&[1.0, 1.0]).norm2_sq(), 2.0);
        assert_eq!(UnivariatePoly::from_pairs(&[(1.0, 1.0)]).norm2_sq(), 2.0);
        assert_eq!(UnivariatePoly::zero().norm2_sq(), 0.0);
    }

    #[test]
    fn norm2_sq_invariant_under_unit_modulus_scaling() {
        let p = UnivariatePoly::from_pairs(&[(3.0, -2.0), (0.5, 1.0), (2.0, 4.0)]);
        let theta: f64 = 0.7321;
        let s = c(theta.cos(), theta.sin());
        assert!((p.scale(s).norm2_sq() - p.norm2_sq()).abs() < 1e-12);
    }

    #[test]
    fn real_and_imag_parts() {
        // (1+2i)x + 3
        let p = UnivariatePoly::from_pairs(&[(3.0, 0.0), (1.0, 2.0)]);
        assert_eq!(p.real_part().coeffs(), &[c(3.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(p.imag_part().coeffs(), &[c(0.0, 0.0), c(2.0, 0.0)]);

        let real = UnivariatePoly::from_real(&[1.0, -4.0, 2.0]);
        assert!(real.imag_part().is_zero());

        // reconstruction: re(p) + i * im(p) = p
        let i = UnivariatePoly::constant(c(0.0, 1.0));
        let rebuilt = &p.real_part() + &(&i * &p.imag_part());
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn convolution_matrix_band_pattern() {
        // p = x + 1, k = 1: three rows, two shifted copies of (1, 1)
        let p = UnivariatePoly::from_real(&[1.0, 1.0]);
        let m = convolution_matrix(&p, 1);
        assert_eq!((m.nrows(), m.ncols()), (3, 2));
        let expect = [[1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        for r in 0..3 {
            for col in 0..2 {
                assert_eq!(m[(r, col)], c(expect[r][col], 0.0));
            }
        }

        // single-column case: p = 2x + 1, k = 0
        let p = UnivariatePoly::from_real(&[1.0, 2.0]);
        let m = convolution_matrix(&p, 0);
        assert_eq!((m.nrows(), m.ncols()), (2, 1));
        assert_eq!(m[(0, 0)], c(2.0, 0.0));
        assert_eq!(m[(1, 0)], c(1.0, 0.0));
    }

    #[test]
    fn convolution_matrix_multiplies_like_the_polynomial() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let dp = rng.random_range(0..=20usize);
            let dq = rng.random_range(0..=20usize);
            let p = UnivariatePoly::new(
                (0..=dp).map(|_| c(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0))).collect(),
            );
            let q = UnivariatePoly::new(
                (0..=dq).map(|_| c(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0))).collect(),
            );
            let m = convolution_matrix(&p, q.nominal_degree());
            let qv = nalgebra::DVector::from_vec(q.coeffs_descending());
            let got = &m * &qv;
            // oracle: direct polynomial multiplication
            let want = (&p * &q).coeffs_descending();
            let scale: f64 = want.iter().map(|w| w.norm()).sum::<f64>().max(1.0);
            for (gi, wi) in got.iter().zip(want.iter()) {
                assert!((gi - wi).norm() <= 1e-13 * scale);
            }
        }
    }

    #[test]
    fn sylvester_matrix_small_case() {
        // f = x^2 - 1, g = x - 1, k = 0
        let f = UnivariatePoly::from_real(&[-1.0, 0.0, 1.0]);
        let g = UnivariatePoly::from_real(&[-1.0, 1.0]);
        let m = subresultant_matrix(&f, &g, 0).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (3, 3));
        let expect = [[1.0, 1.0, 0.0], [0.0, -1.0, 1.0], [-1.0, 0.0, -1.0]];
        for r in 0..3 {
            for col in 0..3 {
                assert_eq!(m[(r, col)], c(expect[r][col], 0.0));
            }
        }

        // kernel combination: 1 * f + (-x - 1) * g = 0
        let v = nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)]);
        let prod = &m * &v;
        assert!(prod.iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn subresultant_dimensions() {
        let f = UnivariatePoly::from_real(&(0..=10).map(|i| i as f64 + 1.0).collect::<Vec<_>>());
        let g = UnivariatePoly::from_real(&(0..=10).map(|i| 2.0 * i as f64 + 1.0).collect::<Vec<_>>());
        // k = d - 1 with m = n = 10, d = 5
        let m = subresultant_matrix(&f, &g, 4).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (16, 12));
    }

    #[test]
    fn subresultant_rejects_bad_degrees() {
        let f = UnivariatePoly::from_real(&[1.0, 1.0]);
        let g = UnivariatePoly::from_real(&[-1.0, 0.0, 1.0]);
        // deg(g) > deg(f)
        assert!(subresultant_matrix(&f, &g, 0).is_err());
        // k >= deg(g)
        assert!(subresultant_matrix(&g, &f, 1).is_err());
    }
}
