//! Randomized instance generation and batch benchmarking.
//!
//! Instances are built by planting a monic random GCD inside a monic random
//! pair and adding noise rescaled to a prescribed 2-norm. Trials derive
//! per-trial seeds from the master seed with a SplitMix-style mixer, so a
//! batch is reproducible and trials are independent streams that can be run
//! in parallel.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::{OptimizerConfig, ProblemSpec};
use crate::poly::UnivariatePoly;
use crate::recovery::recover_gcd;

/// Parameters of one randomized instance family.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceParams {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    /// Target 2-norm of the noise added to each polynomial.
    pub e_f: f64,
    pub e_g: f64,
    /// Random coefficients are drawn uniformly from `[-coeff_range, coeff_range]`.
    pub coeff_range: f64,
    pub seed: u64,
    /// Draw only real coefficients instead of complex ones.
    pub real_only: bool,
}

impl InstanceParams {
    pub fn new(m: usize, n: usize, d: usize, e_f: f64, e_g: f64, seed: u64) -> Result<Self> {
        let params =
            Self { m, n, d, e_f, e_g, coeff_range: 10.0, seed, real_only: false };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m >= self.n && self.n > self.d && self.d > 0) {
            return Err(Error::InvalidArgument(format!(
                "expected m >= n > d > 0, got m={}, n={}, d={}",
                self.m, self.n, self.d
            )));
        }
        if self.e_f < 0.0 || self.e_g < 0.0 {
            return Err(Error::InvalidArgument("noise norms must be non-negative".into()));
        }
        if self.coeff_range <= 0.0 || self.coeff_range.is_nan() {
            return Err(Error::InvalidArgument("coeff_range must be positive".into()));
        }
        Ok(())
    }
}

/// A generated instance with the planted structure kept for verification.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub f: UnivariatePoly,
    pub g: UnivariatePoly,
    /// Noise-free pair `f0 = gcd * f_prime`, `g0 = gcd * g_prime`.
    pub f0: UnivariatePoly,
    pub g0: UnivariatePoly,
    /// The planted monic GCD of degree `d`.
    pub gcd: UnivariatePoly,
    pub f_prime: UnivariatePoly,
    pub g_prime: UnivariatePoly,
}

/// Aggregate statistics of one benchmark batch.
///
/// Means are taken over converged trials only; the convergence rate counts
/// all trials.
#[derive(Debug, Clone)]
pub struct ExperimentRecord {
    pub params: InstanceParams,
    pub trials: usize,
    pub mean_error: f64,
    pub mean_iterations: f64,
    pub mean_time_seconds: f64,
    pub convergence_rate: f64,
}

/// Flat serialization schema shared by the CSV and JSON emitters.
#[derive(Debug, Serialize, Deserialize)]
struct RecordDocument {
    m: usize,
    n: usize,
    d: usize,
    #[serde(rename = "e_F")]
    e_f: f64,
    #[serde(rename = "e_G")]
    e_g: f64,
    trials: usize,
    mean_error: f64,
    mean_iterations: f64,
    mean_time_s: f64,
    convergence_rate: f64,
}

impl ExperimentRecord {
    fn document(&self) -> RecordDocument {
        RecordDocument {
            m: self.params.m,
            n: self.params.n,
            d: self.params.d,
            e_f: self.params.e_f,
            e_g: self.params.e_g,
            trials: self.trials,
            mean_error: self.mean_error,
            mean_iterations: self.mean_iterations,
            mean_time_s: self.mean_time_seconds,
            convergence_rate: self.convergence_rate,
        }
    }

    /// Two-line CSV: header and one data row.
    pub fn to_csv(&self) -> String {
        let d = self.document();
        format!(
            "m,n,d,e_F,e_G,trials,mean_error,mean_iterations,mean_time_s,convergence_rate\n{},{},{},{},{},{},{},{},{},{}\n",
            d.m,
            d.n,
            d.d,
            d.e_f,
            d.e_g,
            d.trials,
            d.mean_error,
            d.mean_iterations,
            d.mean_time_s,
            d.convergence_rate
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.document()).expect("record serializes")
    }
}

/// SplitMix64 finalizer; decorrelates consecutive inputs.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-trial seed derived from the master seed and the trial index.
pub fn derive_trial_seed(master: u64, trial: u64) -> u64 {
    splitmix64(master ^ splitmix64(trial.wrapping_add(1)))
}

fn random_coeff(rng: &mut ChaCha8Rng, range: f64, real_only: bool) -> Complex64 {
    let re = rng.random_range(-range..range);
    let im = if real_only { 0.0 } else { rng.random_range(-range..range) };
    Complex64::new(re, im)
}

/// Monic polynomial of the given degree with random lower coefficients.
fn random_monic(rng: &mut ChaCha8Rng, deg: usize, range: f64, real_only: bool) -> UnivariatePoly {
    let mut coeffs: Vec<Complex64> =
        (0..deg).map(|_| random_coeff(rng, range, real_only)).collect();
    coeffs.push(Complex64::ONE);
    UnivariatePoly::new(coeffs)
}

/// Fully random polynomial filling the whole degree slot; resampled in the
/// (practically impossible) event that every coefficient is zero, since it
/// is rescaled by its norm.
fn random_noise(rng: &mut ChaCha8Rng, deg: usize, range: f64, real_only: bool) -> UnivariatePoly {
    loop {
        let p = UnivariatePoly::new(
            (0..=deg).map(|_| random_coeff(rng, range, real_only)).collect(),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

/// Generates one instance, keeping the planted parts.
pub fn generate_instance_full(params: &InstanceParams) -> Result<GeneratedInstance> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (range, real_only) = (params.coeff_range, params.real_only);

    let gcd = random_monic(&mut rng, params.d, range, real_only);
    let f_prime = random_monic(&mut rng, params.m - params.d, range, real_only);
    let g_prime = random_monic(&mut rng, params.n - params.d, range, real_only);
    let f0 = &gcd * &f_prime;
    let g0 = &gcd * &g_prime;

    let f = add_scaled_noise(&mut rng, &f0, params.e_f, params.m, range, real_only);
    let g = add_scaled_noise(&mut rng, &g0, params.e_g, params.n, range, real_only);

    Ok(GeneratedInstance { f, g, f0, g0, gcd, f_prime, g_prime })
}

fn add_scaled_noise(
    rng: &mut ChaCha8Rng,
    base: &UnivariatePoly,
    e: f64,
    deg: usize,
    range: f64,
    real_only: bool,
) -> UnivariatePoly {
    if e == 0.0 {
        return base.clone();
    }
    let noise = random_noise(rng, deg - 1, range, real_only);
    let scaled = noise.scale(Complex64::new(e / noise.norm2(), 0.0));
    base + &scaled
}

/// Generates the test pair `(f, g)`.
pub fn generate_instance(params: &InstanceParams) -> Result<(UnivariatePoly, UnivariatePoly)> {
    let inst = generate_instance_full(params)?;
    Ok((inst.f, inst.g))
}

/// Runs `trials` independent instances of the given family and aggregates
/// perturbation, iteration and timing statistics.
///
/// Trials run in parallel; results are merged in trial order, so the
/// non-timing statistics are reproducible for a fixed seed. Per-trial
/// failures lower the convergence rate instead of aborting the batch.
pub fn run_batch(
    params: &InstanceParams,
    trials: usize,
    config: &OptimizerConfig,
) -> Result<ExperimentRecord> {
    params.validate()?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }

    let outcomes: Vec<Option<(f64, usize, f64)>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut p = params.clone();
            p.seed = derive_trial_seed(params.seed, trial as u64);
            let (f, g) = generate_instance(&p).ok()?;
            let spec = ProblemSpec::new(f, g, p.d).ok()?;
            let started = Instant::now();
            let state = spec.run(config).ok()?;
            let result = recover_gcd(&state, &spec).ok()?;
            let elapsed = started.elapsed().as_secs_f64();
            Some((result.perturbation, result.iterations, elapsed))
        })
        .collect();

    let mut converged = 0usize;
    let (mut err_sum, mut iter_sum, mut time_sum) = (0.0, 0.0, 0.0);
    for (perturbation, iterations, elapsed) in outcomes.iter().flatten() {
        converged += 1;
        err_sum += perturbation;
        iter_sum += *iterations as f64;
        time_sum += elapsed;
    }
    let denom = converged.max(1) as f64;
    Ok(ExperimentRecord {
        params: params.clone(),
        trials,
        mean_error: if converged > 0 { err_sum / denom } else { f64::NAN },
        mean_iterations: if converged > 0 { iter_sum / denom } else { f64::NAN },
        mean_time_seconds: if converged > 0 { time_sum / denom } else { f64::NAN },
        convergence_rate: converged as f64 / trials as f64,
    })
}
