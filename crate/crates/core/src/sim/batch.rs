//! Seeded Monte Carlo batches with tallies and CSV reports.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::protocols::{simulate_pm_two_bits, simulate_singlet_one_bit, PmRound, SingletRound};
use super::BlochVector;
use crate::error::Result;
use crate::par;

/// Rounds per independently seeded chunk. Chunk `k` uses stream `k` of the
/// batch seed, so tallies do not depend on the thread count.
pub const CHUNK: u64 = 65_536;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Protocol {
    /// `simulate_pm_two_bits`; tallies `[b = +1, b = -1, 0, 0]`.
    PrepareMeasure,
    /// `simulate_singlet_one_bit`; tallies `[++, +-, -+, --]`.
    Singlet,
}

impl Protocol {
    pub fn as_str(&self) -> &'static str {
        match self {
            Protocol::PrepareMeasure => "pm_two_bits",
            Protocol::Singlet => "singlet_one_bit",
        }
    }

    pub fn bits_per_round(&self) -> usize {
        match self {
            Protocol::PrepareMeasure => PmRound::BITS,
            Protocol::Singlet => SingletRound::BITS,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleBatch {
    pub protocol: Protocol,
    pub x: BlochVector,
    pub y: BlochVector,
    pub n: u64,
    pub seed: u64,
    pub tallies: [u64; 4],
    /// Bits communicated over the whole batch.
    pub bits_sent: u64,
}

fn tally_chunk(protocol: Protocol, x: &BlochVector, y: &BlochVector, rounds: u64, rng: &mut ChaCha8Rng) -> ([u64; 4], u64) {
    let mut t = [0u64; 4];
    let mut bits = 0u64;
    for _ in 0..rounds {
        match protocol {
            Protocol::PrepareMeasure => {
                let r = simulate_pm_two_bits(x, y, rng);
                t[usize::from(r.b < 0)] += 1;
                bits += r.bits.len() as u64;
            }
            Protocol::Singlet => {
                let r = simulate_singlet_one_bit(x, y, rng);
                t[2 * usize::from(r.a < 0) + usize::from(r.b < 0)] += 1;
                bits += 1;
            }
        }
    }
    (t, bits)
}

/// `n` rounds of `protocol` at settings `(x, y)`.
pub fn run_batch(protocol: Protocol, x: BlochVector, y: BlochVector, n: u64, seed: u64) -> Result<SampleBatch> {
    x.check_unit("first setting")?;
    y.check_unit("second setting")?;
    let chunks = n.div_ceil(CHUNK);
    let parts = par::map_range(chunks as usize, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let rounds = CHUNK.min(n - k as u64 * CHUNK);
        tally_chunk(protocol, &x, &y, rounds, &mut rng)
    });
    let mut tallies = [0u64; 4];
    let mut bits_sent = 0;
    for (t, b) in parts {
        for (acc, v) in tallies.iter_mut().zip(t) {
            *acc += v;
        }
        bits_sent += b;
    }
    Ok(SampleBatch {
        protocol,
        x,
        y,
        n,
        seed,
        tallies,
        bits_sent,
    })
}

pub const BATCH_CSV_HEADER: &str =
    "protocol,x1,x2,x3,y1,y2,y3,n,seed,tally0,tally1,tally2,tally3,bits_per_round,mean_a,mean_b,empirical,oracle,z_score";

impl SampleBatch {
    fn frac(&self, k: u64) -> f64 {
        k as f64 / self.n as f64
    }

    /// Empirical `p(+1)` (prepare-and-measure) or `E[ab]` (singlet).
    pub fn empirical(&self) -> f64 {
        let t = self.tallies;
        match self.protocol {
            Protocol::PrepareMeasure => self.frac(t[0]),
            Protocol::Singlet => self.frac(t[0] + t[3]) - self.frac(t[1] + t[2]),
        }
    }

    /// Marginal means `E[a]`, `E[b]` of the singlet simulation (`b` only for
    /// prepare-and-measure, as `+-1` mean).
    pub fn marginals(&self) -> (f64, f64) {
        let t = self.tallies;
        match self.protocol {
            Protocol::PrepareMeasure => (f64::NAN, self.frac(t[0]) - self.frac(t[1])),
            Protocol::Singlet => (
                self.frac(t[0] + t[1]) - self.frac(t[2] + t[3]),
                self.frac(t[0] + t[2]) - self.frac(t[1] + t[3]),
            ),
        }
    }

    /// `(1 + x . y) / 2` or `-x . y`.
    pub fn oracle(&self) -> f64 {
        match self.protocol {
            Protocol::PrepareMeasure => ((1.0 + self.x.dot(&self.y)) / 2.0).clamp(0.0, 1.0),
            Protocol::Singlet => -self.x.dot(&self.y),
        }
    }

    /// Standard deviation of [`Self::empirical`] under the oracle.
    pub fn sigma(&self) -> f64 {
        let o = self.oracle();
        let var = match self.protocol {
            Protocol::PrepareMeasure => o * (1.0 - o),
            Protocol::Singlet => 1.0 - o * o,
        };
        (var.max(0.0) / self.n as f64).sqrt()
    }

    /// `(empirical - oracle) / sigma`; zero when both agree exactly.
    pub fn z_score(&self) -> f64 {
        let d = self.empirical() - self.oracle();
        let s = self.sigma();
        if d.abs() <= 1e-15 {
            0.0
        } else if s == 0.0 {
            f64::INFINITY * d.signum()
        } else {
            d / s
        }
    }

    pub fn within_sigmas(&self, k: f64) -> bool {
        self.z_score().abs() <= k
    }

    pub fn to_csv_row(&self) -> String {
        let (ma, mb) = self.marginals();
        let values = [
            self.x.0[0], self.x.0[1], self.x.0[2], self.y.0[0], self.y.0[1], self.y.0[2],
        ];
        let mut f: Vec<String> = vec![self.protocol.as_str().to_string()];
        f.extend(values.iter().map(|v| format!("{v:.12}")));
        f.push(self.n.to_string());
        f.push(self.seed.to_string());
        f.extend(self.tallies.iter().map(|t| t.to_string()));
        f.push(self.protocol.bits_per_round().to_string());
        f.push(if ma.is_nan() { String::new() } else { format!("{ma:.8}") });
        f.push(format!("{mb:.8}"));
        f.push(format!("{:.8}", self.empirical()));
        f.push(format!("{:.8}", self.oracle()));
        f.push(format!("{:.4}", self.z_score()));
        f.join(",")
    }
}
