//! Shared helpers for the oracle tests: normal and binomial samplers built
//! on the engine RNG, independent of the special-function kernels they are
//! used to check.

use multalpha::rng::Xoshiro256PlusPlus;
use multalpha::specfun::ln_gamma;

/// Standard normal draw (Box-Muller, one variate per call).
pub fn standard_normal(rng: &mut Xoshiro256PlusPlus) -> f64 {
    let u1 = (rng.uniform() + f64::MIN_POSITIVE).min(1.0 - 1e-16);
    let u2 = rng.uniform();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Binomial sampler via inverse-transform on a precomputed CDF table.
pub struct BinomialSampler {
    cdf: Vec<f64>,
}

impl BinomialSampler {
    pub fn new(n: u64, p: f64) -> Self {
        let n_f = n as f64;
        let ln_np = p.ln();
        let ln_nq = (1.0 - p).ln();
        let mut cdf = Vec::with_capacity(n as usize + 1);
        let mut acc = 0.0;
        for k in 0..=n {
            let k_f = k as f64;
            let ln_pmf = ln_gamma(n_f + 1.0) - ln_gamma(k_f + 1.0) - ln_gamma(n_f - k_f + 1.0)
                + k_f * ln_np
                + (n_f - k_f) * ln_nq;
            acc += ln_pmf.exp();
            cdf.push(acc);
        }
        BinomialSampler { cdf }
    }

    pub fn sample(&self, rng: &mut Xoshiro256PlusPlus) -> u64 {
        let u = rng.uniform() * self.cdf.last().copied().unwrap_or(1.0);
        self.cdf.partition_point(|&c| c < u) as u64
    }
}

/// Running mean and variance (Welford).
#[derive(Default)]
pub struct RunningStats {
    n: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Standard error of the mean.
    pub fn se(&self) -> f64 {
        (self.m2 / (self.n.saturating_sub(1)) as f64 / self.n as f64).sqrt()
    }
}
