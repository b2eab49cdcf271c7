//! Shared fixtures for the criterion benches.

use puntua_core::synth::{corpus, SynthOptions};
use puntua_core::Utterance;

/// Fixed-seed corpus so bench runs are comparable.
pub fn bench_corpus(n: usize) -> Vec<Utterance> {
    corpus(n, 0x5eed, &SynthOptions::default())
}
