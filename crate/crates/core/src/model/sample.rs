//! Deterministic sampling from the intraclass model.
//!
//! Draws are partitioned into blocks of [`SUBSTREAM_BLOCK`] draws; block b is
//! generated by a fresh ChaCha12 stream seeded from `mix(seed, b)`. The
//! output therefore depends only on `(seed, n, k, σ², ρ, μ)` and is invariant
//! to how blocks are scheduled across workers. Standard normals come from the
//! Marsaglia polar transform.
//!
//! For ρ ≥ 0 a draw uses the one-factor representation
//! Z = μ + σ(√ρ·W₀·𝟙 + √(1−ρ)·W) (k+1 normals); for ρ < 0 it applies the
//! spectral square root of Σ to k normals.

use alloc::vec::Vec;
use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use super::intraclass::{IntraclassModel, MeanVector, ModelError};

/// Name of the pseudorandom scheme, recorded in CSV headers.
pub const GENERATOR_NAME: &str = "chacha12-polar-blocked";

/// Draws per substream block.
pub const SUBSTREAM_BLOCK: usize = 1 << 16;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Seed of substream block `block` under master seed `seed`.
pub fn substream_seed(seed: u64, block: u64) -> u64 {
    splitmix64(seed ^ splitmix64(block))
}

/// Standard normal stream over one substream block.
pub struct NormalSource {
    rng: ChaCha12Rng,
    spare: Option<f64>,
}

impl NormalSource {
    pub fn for_block(seed: u64, block: u64) -> Self {
        Self {
            rng: ChaCha12Rng::seed_from_u64(substream_seed(seed, block)),
            spare: None,
        }
    }

    #[inline]
    fn uniform_open(&mut self) -> f64 {
        // (0, 1): top 53 bits, offset by half an ulp so 0 is excluded.
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
    }

    /// Next N(0, 1) variate (Marsaglia polar method).
    #[inline]
    pub fn next_normal(&mut self) -> f64 {
        if let Some(v) = self.spare.take() {
            return v;
        }
        loop {
            let u = 2.0 * self.uniform_open() - 1.0;
            let v = 2.0 * self.uniform_open() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let m = libm::sqrt(-2.0 * libm::log(s) / s);
                self.spare = Some(v * m);
                return u * m;
            }
        }
    }
}

impl IntraclassModel {
    /// Visit n i.i.d. draws from N(μ, Σ) in substream order.
    ///
    /// The closure receives each draw through a reused buffer.
    pub fn for_each_draw<F: FnMut(&[f64])>(
        &self,
        mu: &MeanVector,
        n: usize,
        seed: u64,
        mut visit: F,
    ) -> Result<(), ModelError> {
        if mu.k() != self.k() {
            return Err(ModelError::DimensionMismatch {
                expected: self.k(),
                got: mu.k(),
            });
        }
        let k = self.k();
        let sigma = libm::sqrt(self.sigma2());
        let rho = self.rho();
        let one_factor = rho >= 0.0;
        let (common_scale, idio_scale, spectral_shift) = if one_factor {
            (sigma * libm::sqrt(rho), sigma * libm::sqrt(1.0 - rho), 0.0)
        } else {
            // Spectral root: sqrt(Sigma) = a(I − J/k) + c·J/k with J = 11'.
            let a = sigma * libm::sqrt(1.0 - rho);
            let c = sigma * libm::sqrt(1.0 + (k as f64 - 1.0) * rho);
            (0.0, a, (c - a) / k as f64)
        };
        let mut z = alloc::vec![0.0f64; k];
        let mut remaining = n;
        let mut block = 0u64;
        while remaining > 0 {
            let count = remaining.min(SUBSTREAM_BLOCK);
            let mut src = NormalSource::for_block(seed, block);
            for _ in 0..count {
                if one_factor {
                    let w0 = src.next_normal();
                    for (zi, &mi) in z.iter_mut().zip(mu.coords()) {
                        *zi = mi + common_scale * w0 + idio_scale * src.next_normal();
                    }
                } else {
                    let mut sum = 0.0;
                    for zi in z.iter_mut() {
                        *zi = src.next_normal();
                        sum += *zi;
                    }
                    let shift = spectral_shift * sum;
                    for (zi, &mi) in z.iter_mut().zip(mu.coords()) {
                        *zi = mi + idio_scale * *zi + shift;
                    }
                }
                visit(&z);
            }
            remaining -= count;
            block += 1;
        }
        Ok(())
    }

    /// n i.i.d. draws from N(μ, Σ), deterministic in `seed`.
    pub fn sample(
        &self,
        mu: &MeanVector,
        n: usize,
        seed: u64,
    ) -> Result<Vec<Vec<f64>>, ModelError> {
        let mut out = Vec::with_capacity(n);
        self.for_each_draw(mu, n, seed, |z| out.push(z.to_vec()))?;
        Ok(out)
    }
}
