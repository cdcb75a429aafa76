//! Shared test support: an exact Gaussian-rational polynomial GCD used as an
//! independent oracle, plus small helpers for randomized checks.
//!
//! The oracle is deliberately self-contained and exact (arbitrary-precision
//! rationals), so it shares no code path with the floating-point library it
//! checks.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use gpgcd::UnivariatePoly;

/// A Gaussian rational, `re + im*i` with exact rational components.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussRat {
    re: BigRational,
    im: BigRational,
}

impl GaussRat {
    pub fn from_ints(re: i64, im: i64) -> Self {
        Self { re: BigRational::from(BigInt::from(re)), im: BigRational::from(BigInt::from(im)) }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn sub(&self, rhs: &Self) -> Self {
        Self { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn div(&self, rhs: &Self) -> Self {
        let denom = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        assert!(!denom.is_zero(), "division by zero Gaussian rational");
        Self {
            re: (&self.re * &rhs.re + &self.im * &rhs.im) / &denom,
            im: (&self.im * &rhs.re - &self.re * &rhs.im) / &denom,
        }
    }
}

/// Polynomial over the Gaussian rationals, ascending coefficients, trimmed.
#[derive(Clone, Debug)]
pub struct GaussPoly {
    coeffs: Vec<GaussRat>,
}

impl GaussPoly {
    pub fn from_int_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut p = Self {
            coeffs: pairs.iter().map(|&(re, im)| GaussRat::from_ints(re, im)).collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_zero() {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GaussRat::is_zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact remainder of `self` divided by `rhs`.
    fn rem(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "remainder by the zero polynomial");
        let mut r = self.clone();
        r.trim();
        while !r.is_zero() && r.degree() >= rhs.degree() {
            let shift = r.degree() - rhs.degree();
            let factor = r.coeffs.last().unwrap().div(rhs.coeffs.last().unwrap());
            for (i, b) in rhs.coeffs.iter().enumerate() {
                let delta = factor.mul(b);
                r.coeffs[shift + i] = r.coeffs[shift + i].sub(&delta);
            }
            // the leading term cancels exactly
            r.coeffs.pop();
            r.trim();
        }
        r
    }

    /// Degree of the exact GCD, by the Euclidean algorithm.
    pub fn gcd_degree(&self, rhs: &Self) -> usize {
        let mut a = self.clone();
        let mut b = rhs.clone();
        if a.is_zero() {
            return b.degree();
        }
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.degree()
    }
}

/// The same integer-pair coefficients as an f64 polynomial.
pub fn poly_from_int_pairs(pairs: &[(i64, i64)]) -> UnivariatePoly {
    UnivariatePoly::new(
        pairs.iter().map(|&(re, im)| Complex64::new(re as f64, im as f64)).collect(),
    )
}

/// Random complex polynomial filling the whole degree slot.
pub fn random_poly(rng: &mut ChaCha8Rng, deg: usize, range: f64) -> UnivariatePoly {
    UnivariatePoly::new(
        (0..=deg)
            .map(|_| Complex64::new(rng.random_range(-range..range), rng.random_range(-range..range)))
            .collect(),
    )
}

/// Random Gaussian-integer coefficient pairs with a guaranteed nonzero
/// leading coefficient.
pub fn random_int_pairs(rng: &mut ChaCha8Rng, deg: usize) -> Vec<(i64, i64)> {
    let mut pairs: Vec<(i64, i64)> = (0..=deg)
        .map(|_| (rng.random_range(-3..=3), rng.random_range(-3..=3)))
        .collect();
    if pairs[deg] == (0, 0) {
        pairs[deg] = (1, rng.random_range(-2..=2));
    }
    pairs
}

/// Asserts that `actual` equals `expected` up to one complex scalar factor,
/// with coefficientwise error at most `tol` relative to the largest
/// expected coefficient. The scalar is matched on the expected side's
/// largest coefficient, which keeps the comparison stable under ties.
pub fn assert_proportional(actual: &UnivariatePoly, expected: &UnivariatePoly, tol: f64) {
    assert_eq!(actual.nominal_degree(), expected.nominal_degree(), "degree slots differ");
    let mut idx = 0;
    let mut best = 0.0;
    for (j, z) in expected.coeffs().iter().enumerate() {
        if z.norm() > best {
            best = z.norm();
            idx = j;
        }
    }
    assert!(best > 0.0, "expected polynomial is zero");
    let ratio = expected.coeff(idx) / actual.coeff(idx);
    let scaled = actual.scale(ratio);
    for (sa, se) in scaled.coeffs().iter().zip(expected.coeffs()) {
        assert!(
            (sa - se).norm() <= tol * best.max(1.0),
            "mismatch beyond tolerance {tol}: {scaled:?} vs {expected:?}"
        );
    }
}
