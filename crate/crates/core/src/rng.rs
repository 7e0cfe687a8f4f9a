//! Seeded pseudo-random generator for the cost simulations.
//!
//! Simulation outputs must be bit-reproducible across implementations, so
//! the generator is pinned down exactly rather than borrowed from a
//! library:
//!
//! * State expansion: splitmix64 — `s += 0x9E3779B97F4A7C15`, then
//!   `z = s; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//!   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)`.
//! * Recurrence: xoshiro256++ over four 64-bit words seeded by four
//!   consecutive splitmix64 outputs. Output is
//!   `rotl(s0 + s3, 23) + s0` before the state update.
//! * Floats: `uniform()` takes the top 53 bits, `(x >> 11) * 2^-53`,
//!   giving a value in `[0, 1)`.
//! * Substreams: run `i` of a simulation with master seed `m` uses the
//!   generator seeded with `m.wrapping_add(i)`; the splitmix64 expansion
//!   decorrelates adjacent seeds. Results are therefore independent of the
//!   order in which runs execute.

/// splitmix64 stream, used to expand a single `u64` seed into generator
/// state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// xoshiro256++ generator with splitmix64 seeding.
#[derive(Debug, Clone)]
pub struct Xoshiro256PlusPlus {
    s: [u64; 4],
}

impl Xoshiro256PlusPlus {
    pub fn from_seed(seed: u64) -> Self {
        let mut sm = SplitMix64::new(seed);
        Self {
            s: [sm.next_u64(), sm.next_u64(), sm.next_u64(), sm.next_u64()],
        }
    }

    /// Generator for run `run_index` of the simulation seeded by
    /// `master_seed`.
    pub fn substream(master_seed: u64, run_index: u64) -> Self {
        Self::from_seed(master_seed.wrapping_add(run_index))
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = (s[0].wrapping_add(s[3])).rotate_left(23).wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform draw in `[0, 1)` from the top 53 bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.uniform() * (hi - lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_known_answers() {
        // Reference outputs of the canonical splitmix64 for seed 1234567.
        let mut sm = SplitMix64::new(1234567);
        let got: Vec<u64> = (0..3).map(|_| sm.next_u64()).collect();
        assert_eq!(got, vec![6457827717110365317, 3203168211198807973, 9817491932198370423]);
    }

    #[test]
    fn deterministic_streams() {
        let mut a = Xoshiro256PlusPlus::from_seed(42);
        let mut b = Xoshiro256PlusPlus::from_seed(42);
        for _ in 0..1000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = Xoshiro256PlusPlus::from_seed(43);
        assert_ne!(a.next_u64(), c.next_u64());
    }

    #[test]
    fn frozen_stream_head() {
        // Locks the exact output sequence; any change breaks reproducibility
        // of archived simulation artifacts.
        let mut rng = Xoshiro256PlusPlus::from_seed(42);
        let head: Vec<u64> = (0..4).map(|_| rng.next_u64()).collect();
        assert_eq!(
            head,
            vec![
                15021278609987233951,
                5881210131331364753,
                18149643915985481100,
                12933668939759105464,
            ]
        );
    }

    #[test]
    fn uniform_in_unit_interval() {
        let mut rng = Xoshiro256PlusPlus::from_seed(7);
        let mut sum = 0.0;
        for _ in 0..100_000 {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
            sum += u;
        }
        let mean = sum / 100_000.0;
        assert!((mean - 0.5).abs() < 0.005, "mean {mean}");
    }

    #[test]
    fn substreams_differ_and_are_order_free() {
        let mut r0 = Xoshiro256PlusPlus::substream(99, 0);
        let mut r1 = Xoshiro256PlusPlus::substream(99, 1);
        assert_ne!(r0.next_u64(), r1.next_u64());
        let mut again = Xoshiro256PlusPlus::substream(99, 1);
        again.next_u64();
        assert_eq!(again.next_u64(), r1.next_u64());
    }
}
