//! Memoryless binary-input channels producing log-likelihood ratios
//! `ln W(0|y) / W(1|y)`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{invalid, Result};
use crate::gf2::BitVector;

pub trait Channel: Send + Sync + std::fmt::Debug {
    /// Registry name (`bec`, `awgn`).
    fn name(&self) -> &'static str;
    /// The channel parameter as reported in results (`pe` or Eb/N0 in dB).
    fn param(&self) -> f64;
    fn transmit(&self, c: &BitVector, rng: &mut ChaCha8Rng) -> Vec<f64>;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bec {
    pe: f64,
}

impl Bec {
    pub fn new(pe: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&pe) {
            return Err(invalid(format!("erasure probability {pe} outside [0, 1]")));
        }
        Ok(Self { pe })
    }

    pub fn pe(&self) -> f64 {
        self.pe
    }
}

impl Channel for Bec {
    fn name(&self) -> &'static str {
        "bec"
    }

    fn param(&self) -> f64 {
        self.pe
    }

    fn transmit(&self, c: &BitVector, rng: &mut ChaCha8Rng) -> Vec<f64> {
        c.iter()
            .map(|bit| {
                if rng.gen_bool(self.pe) {
                    0.0
                } else if bit {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            })
            .collect()
    }
}

/// BPSK (`0 -> +1`, `1 -> -1`) over additive white Gaussian noise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Awgn {
    ebn0_db: f64,
    rate: f64,
    sigma: f64,
}

impl Awgn {
    pub fn new(ebn0_db: f64, rate: f64) -> Result<Self> {
        if !ebn0_db.is_finite() {
            return Err(invalid(format!("Eb/N0 {ebn0_db} is not finite")));
        }
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(invalid(format!("code rate {rate} outside (0, 1]")));
        }
        let sigma2 = 1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0));
        Ok(Self {
            ebn0_db,
            rate,
            sigma: sigma2.sqrt(),
        })
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma * self.sigma
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }
}

impl Channel for Awgn {
    fn name(&self) -> &'static str {
        "awgn"
    }

    fn param(&self) -> f64 {
        self.ebn0_db
    }

    fn transmit(&self, c: &BitVector, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let noise = Normal::new(0.0, self.sigma).expect("positive sigma");
        let scale = 2.0 / self.sigma2();
        c.iter()
            .map(|bit| {
                let x = if bit { -1.0 } else { 1.0 };
                scale * (x + noise.sample(rng))
            })
            .collect()
    }
}

/// Names accepted by [`channel_by_name`].
pub const CHANNELS: &[&str] = &["bec", "awgn"];

/// `param` is the erasure probability for `bec` and Eb/N0 in dB for `awgn`.
pub fn channel_by_name(name: &str, param: f64, rate: f64) -> Result<Box<dyn Channel>> {
    match name {
        "bec" => Ok(Box::new(Bec::new(param)?)),
        "awgn" => Ok(Box::new(Awgn::new(param, rate)?)),
        other => Err(invalid(format!("unknown channel '{other}' (expected one of {CHANNELS:?})"))),
    }
}
