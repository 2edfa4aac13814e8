//! Seeded pseudorandom generation with stable cross-platform output.
//!
//! The generator is xoshiro256** (Blackman & Vigna) seeded through SplitMix64,
//! implemented directly so the byte streams behind every synthetic fixture and
//! every fitted ensemble are pinned by the algorithm, not by a library
//! version. All derived sampling (uniform floats, normals, weighted draws)
//! goes through `next_u64`, so identical seeds give identical sequences on
//! every platform.

/// SplitMix64 step; used for seeding and for deriving per-stream seeds.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent stream seed from a master seed and a stream index.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut state = master ^ stream;
    splitmix64(&mut state)
}

/// xoshiro256** pseudorandom generator.
#[derive(Clone, Debug)]
pub struct Rng {
    s: [u64; 4],
}

impl Rng {
    pub fn seed_from(seed: u64) -> Self {
        let mut state = seed;
        let mut s = [0u64; 4];
        for word in &mut s {
            *word = splitmix64(&mut state);
        }
        Rng { s }
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, n)` via the 128-bit multiply reduction.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Uniform in `[lo, hi)`.
    pub fn range_f64(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.uniform() * (hi - lo)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Standard normal via Box-Muller.
    pub fn gauss(&mut self) -> f64 {
        let u1 = self.uniform().max(1e-300);
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Index draw from a cumulative weight table (last entry = total weight).
    pub fn weighted_index(&mut self, cumulative: &[f64]) -> usize {
        debug_assert!(!cumulative.is_empty());
        let total = *cumulative.last().unwrap();
        let x = self.uniform() * total;
        match cumulative.binary_search_by(|c| c.partial_cmp(&x).unwrap()) {
            Ok(i) => (i + 1).min(cumulative.len() - 1),
            Err(i) => i.min(cumulative.len() - 1),
        }
    }

    /// First `k` elements of a Fisher-Yates pass over `0..n`, for sampling
    /// feature subsets without replacement.
    pub fn sample_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        let mut pool: Vec<usize> = (0..n).collect();
        let k = k.min(n);
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_sequence_is_pinned() {
        // First outputs for seed 0, fixed by the SplitMix64 + xoshiro256**
        // reference algorithms; any change to the generator must fail here.
        let mut rng = Rng::seed_from(0);
        let got: Vec<u64> = (0..4).map(|_| rng.next_u64()).collect();
        assert_eq!(
            got,
            vec![
                11091344671253066420,
                13793997310169335082,
                1900383378846508768,
                7684712102626143532,
            ]
        );
    }

    #[test]
    fn same_seed_same_stream_distinct_seeds_differ() {
        let mut a = Rng::seed_from(42);
        let mut b = Rng::seed_from(42);
        let mut c = Rng::seed_from(43);
        let xs: Vec<u64> = (0..64).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..64).map(|_| b.next_u64()).collect();
        let zs: Vec<u64> = (0..64).map(|_| c.next_u64()).collect();
        assert_eq!(xs, ys);
        assert_ne!(xs, zs);
    }

    #[test]
    fn uniform_stays_in_unit_interval() {
        let mut rng = Rng::seed_from(7);
        for _ in 0..10_000 {
            let x = rng.uniform();
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn below_is_bounded_and_roughly_uniform() {
        let mut rng = Rng::seed_from(11);
        let mut counts = [0u32; 10];
        for _ in 0..100_000 {
            counts[rng.below(10) as usize] += 1;
        }
        for &c in &counts {
            assert!((8_000..12_000).contains(&c), "bucket count {c} out of range");
        }
    }

    #[test]
    fn weighted_index_tracks_weights() {
        let mut rng = Rng::seed_from(3);
        let cumulative = [0.2, 0.3, 1.0];
        let mut counts = [0u32; 3];
        for _ in 0..100_000 {
            counts[rng.weighted_index(&cumulative)] += 1;
        }
        assert!((counts[0] as f64 / 100_000.0 - 0.2).abs() < 0.01);
        assert!((counts[1] as f64 / 100_000.0 - 0.1).abs() < 0.01);
        assert!((counts[2] as f64 / 100_000.0 - 0.7).abs() < 0.01);
    }

    #[test]
    fn sample_indices_without_replacement() {
        let mut rng = Rng::seed_from(1);
        for _ in 0..100 {
            let mut sample = rng.sample_indices(20, 7);
            sample.sort_unstable();
            sample.dedup();
            assert_eq!(sample.len(), 7);
            assert!(sample.iter().all(|&i| i < 20));
        }
    }
}
