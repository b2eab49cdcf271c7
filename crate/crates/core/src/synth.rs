//! Seeded synthetic corpora for demos, benchmarks and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::labels::{Lead, Trail};
use crate::utterance::{AcousticPrediction, TokenPrediction, Utterance};

const PLAIN: &[&str] = &[
    "los", "sábados", "están", "abiertos", "tengo", "una", "cuenta", "nueva", "el", "pago",
    "llegó", "ayer", "puedo", "cambiar", "mi", "plan", "hoy", "necesito", "ayuda", "con", "la",
    "factura", "sí", "claro", "gracias", "muy", "bien", "tienen", "envío", "gratis",
];
const CUES: &[&str] = &["qué", "cómo", "cuándo", "dónde", "cuál", "quién"];
const MARKERS: &[&str] = &["okey", "bueno", "pues", "entonces"];

#[derive(Debug, Clone, Copy)]
pub struct SynthOptions {
    pub question_rate: f64,
    /// Probability the acoustic channel catches a real question.
    pub acoustic_recall: f64,
    /// Probability the acoustic channel marks a declarative as a question.
    pub acoustic_false_alarm: f64,
    /// Generate a lexical track; otherwise it is left empty.
    pub lexical: bool,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions {
            question_rate: 0.4,
            acoustic_recall: 0.8,
            acoustic_false_alarm: 0.1,
            lexical: true,
        }
    }
}

/// `n` utterances with acoustic and reference tracks, deterministic in `seed`.
pub fn corpus(n: usize, seed: u64, opts: &SynthOptions) -> Vec<Utterance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|i| utterance(&mut rng, i, opts)).collect()
}

fn pick<'a>(rng: &mut ChaCha8Rng, words: &[&'a str]) -> &'a str {
    words[rng.random_range(0..words.len())]
}

fn utterance(rng: &mut ChaCha8Rng, index: usize, opts: &SynthOptions) -> Utterance {
    let mut words = Vec::new();
    let mut reference = Vec::new();
    if rng.random_bool(0.3) {
        words.push(pick(rng, MARKERS).to_string());
        reference.push(TokenPrediction::trail(Trail::Comma));
    }
    let question = rng.random_bool(opts.question_rate);
    let cued = question && rng.random_bool(0.5);
    let body_start = words.len();
    let body_len = rng.random_range(1..=6);
    for k in 0..body_len {
        let w = if cued && k == 0 {
            pick(rng, CUES)
        } else {
            pick(rng, PLAIN)
        };
        words.push(w.to_string());
        reference.push(TokenPrediction::NONE);
    }
    let last = words.len() - 1;
    if question {
        reference[body_start].lead = Lead::OpenQuestion;
        reference[last].trail = Trail::CloseQuestion;
    } else {
        reference[last].trail = Trail::Period;
    }

    let mut acoustic = vec![AcousticPrediction::NONE; words.len()];
    let hit = if question {
        rng.random_bool(opts.acoustic_recall)
    } else {
        rng.random_bool(opts.acoustic_false_alarm)
    };
    if hit {
        acoustic[last] = AcousticPrediction::QUESTION;
    }

    let lexical = if opts.lexical {
        reference
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let trail = if i != last {
                    r.trail
                } else if question && !cued {
                    // Without a cue word the text alone looks declarative.
                    Trail::Period
                } else if !question && rng.random_bool(0.1) {
                    Trail::CloseQuestion
                } else {
                    r.trail
                };
                let prob = match trail {
                    Trail::None => rng.random_range(0.9..=1.0),
                    _ if i == last => rng.random_range(0.5..=1.0),
                    _ => rng.random_range(0.8..=1.0),
                };
                TokenPrediction::trail(trail).with_prob(round3(prob))
            })
            .collect()
    } else {
        Vec::new()
    };

    Utterance {
        id: format!("syn-{index:04}"),
        words,
        lexical,
        acoustic: Some(acoustic),
        reference: Some(reference),
        reference_words: None,
    }
}

fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}
