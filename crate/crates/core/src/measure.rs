// SPDX-License-Identifier: Apache-2.0

//! Exact-versus-sampled bookkeeping shared by the measures that minimize or
//! maximize over linear transformations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// How a min/max over a group or a coset family is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Full enumeration; refuses arguments beyond the exact budget.
    Exact,
    /// Falls back to `samples` seeded random transformations beyond the exact
    /// budget. Within the budget the result is still exact.
    Sampled { samples: usize, seed: u64 },
}

impl Mode {
    pub(crate) fn rng(&self, stream: u64) -> Option<ChaCha8Rng> {
        match *self {
            Mode::Exact => None,
            Mode::Sampled { seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(stream);
                Some(rng)
            }
        }
    }
}

/// What a reported number means relative to the true value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Semantics {
    Exact,
    /// A minimum over sampled transformations: never below the true value.
    UpperBound,
    /// A maximum over a sampled family: never above the true value.
    LowerBound,
    /// Neither bound is guaranteed.
    Estimate,
}

impl Semantics {
    pub fn is_exact(self) -> bool {
        self == Semantics::Exact
    }

    /// Combines the semantics of a maximum over parts.
    pub(crate) fn max_of(self, part: Semantics) -> Semantics {
        match (self, part) {
            (Semantics::Exact, p) => p,
            (s, Semantics::Exact) => s,
            (a, b) if a == b => a,
            _ => Semantics::Estimate,
        }
    }
}

/// A computed value with its semantics and witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measured<W> {
    pub value: u32,
    pub semantics: Semantics,
    pub witness: W,
}

impl<W> Measured<W> {
    pub fn exact(value: u32, witness: W) -> Self {
        Measured { value, semantics: Semantics::Exact, witness }
    }

    pub fn is_exact(&self) -> bool {
        self.semantics.is_exact()
    }
}
