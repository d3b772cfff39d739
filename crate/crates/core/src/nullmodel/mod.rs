//! Null models and synthetic data.
//!
//! Every stochastic routine draws from ChaCha8 seeded with
//! [`RandomSeed`]; series `i` reads stream `i` of that generator, so results
//! do not depend on how work is scheduled across threads.

mod fictitious;
mod market;
mod shuffle;

pub use fictitious::{default_fict_sigma, fictitious_currency, FictMode};
pub use market::{generate_market, preferential_tree, Attachment, Bloc, MarketModel, REFERENCE_CODE};
pub use shuffle::shuffle_returns;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RandomSeed(pub u64);

impl RandomSeed {
    /// Generator for one series (or any other independent unit of work).
    pub fn stream(self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(stream);
        rng
    }

    /// Derived seed for a nested procedure.
    pub fn derive(self, salt: u64) -> RandomSeed {
        RandomSeed(self.0 ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

impl From<u64> for RandomSeed {
    fn from(seed: u64) -> Self {
        RandomSeed(seed)
    }
}
