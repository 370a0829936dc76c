//! Reproducible, splittable random streams.
//!
//! Each stream is a ChaCha8 keystream selected by `(seed, stream_id)`. Monte
//! Carlo loops derive one stream per trajectory index, so results do not
//! depend on how work is scheduled across threads.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    inner: ChaCha8Rng,
    spare: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream_id);
        RngStream {
            seed,
            stream_id,
            inner,
            spare: None,
        }
    }

    /// Stream for item `index` of a named task; distinct `(tag, index)` pairs
    /// give distinct stream ids.
    pub fn derive(seed: u64, tag: u64, index: u64) -> Self {
        RngStream::new(seed, splitmix64(splitmix64(tag) ^ index))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        ((self.inner.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box–Muller; the second variate is cached.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let th = std::f64::consts::TAU * u2;
        self.spare = Some(r * th.sin());
        r * th.cos()
    }

    /// Centred complex Gaussian with `E|g|² = variance`.
    pub fn complex_normal(&mut self, variance: f64) -> Complex64 {
        let sd = (0.5 * variance).sqrt();
        let re = self.normal();
        let im = self.normal();
        Complex64::new(sd * re, sd * im)
    }

    /// Exp(1).
    pub fn exp1(&mut self) -> f64 {
        -self.uniform().ln()
    }

    /// Gamma(shape, 1) for a positive integer shape, as a sum of exponentials.
    pub fn gamma_int(&mut self, shape: usize) -> f64 {
        (0..shape).map(|_| self.exp1()).sum()
    }
}

/// SplitMix64 finaliser, used to scatter stream ids.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_streams_repeat() {
        let mut a = RngStream::new(7, 3);
        let mut b = RngStream::new(7, 3);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn distinct_streams_differ() {
        let mut a = RngStream::new(7, 3);
        let mut b = RngStream::new(7, 4);
        let same = (0..64).filter(|_| a.next_u64() == b.next_u64()).count();
        assert_eq!(same, 0);
    }

    #[test]
    fn uniform_in_open_interval_with_correct_mean() {
        let mut r = RngStream::new(1, 0);
        let n = 200_000;
        let mut s = 0.0;
        for _ in 0..n {
            let u = r.uniform();
            assert!(u > 0.0 && u < 1.0);
            s += u;
        }
        let se = (1.0f64 / 12.0 / n as f64).sqrt();
        assert!((s / n as f64 - 0.5).abs() < 4.0 * se);
    }

    #[test]
    fn cross_stream_correlation_is_small() {
        let n = 100_000;
        let mut a = RngStream::derive(11, 1, 0);
        let mut b = RngStream::derive(11, 1, 1);
        let c: f64 = (0..n).map(|_| a.normal() * b.normal()).sum::<f64>() / n as f64;
        assert!(c.abs() < 4.0 / (n as f64).sqrt());
    }

    #[test]
    fn normal_moments() {
        let mut r = RngStream::new(5, 9);
        let n = 200_000;
        let (mut m1, mut m2) = (0.0, 0.0);
        for _ in 0..n {
            let z = r.normal();
            m1 += z;
            m2 += z * z;
        }
        let nf = n as f64;
        assert!((m1 / nf).abs() < 4.0 / nf.sqrt());
        assert!((m2 / nf - 1.0).abs() < 4.0 * (2.0 / nf).sqrt());
    }
}
