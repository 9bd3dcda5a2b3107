use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// RNG seed: a master value plus a stream index for per-trial derivation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub master: u64,
    #[serde(default)]
    pub stream: u64,
}

impl Seed {
    pub const fn new(master: u64, stream: u64) -> Self {
        Seed { master, stream }
    }

    /// Same master, different stream.
    pub const fn with_stream(self, stream: u64) -> Self {
        Seed {
            master: self.master,
            stream,
        }
    }

    /// ChaCha8 keyed by `master` with stream id `stream`. Distinct pairs
    /// give distinct (key, stream) states, so their outputs are independent.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.master.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(self.stream);
        rng
    }
}

impl From<u64> for Seed {
    fn from(master: u64) -> Self {
        Seed { master, stream: 0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn head(s: Seed) -> [u64; 4] {
        let mut r = s.rng();
        [r.random(), r.random(), r.random(), r.random()]
    }

    #[test]
    fn reproducible() {
        assert_eq!(head(Seed::new(7, 3)), head(Seed::new(7, 3)));
    }

    #[test]
    fn streams_and_masters_differ() {
        let a = head(Seed::new(7, 0));
        assert_ne!(a, head(Seed::new(7, 1)));
        assert_ne!(a, head(Seed::new(8, 0)));
        assert_ne!(head(Seed::new(0, 1)), head(Seed::new(1, 0)));
    }
}
