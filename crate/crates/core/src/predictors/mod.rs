//! Sources of predictions: prediction files, the rule-based lexical
//! baseline, and LLM completion endpoints.

pub mod io;
pub mod llm;
pub mod prompt;
pub mod rules;

pub use io::{load_predictions, read_predictions, read_records, write_predictions, LexicalTrack};
pub use llm::{
    benchmark_llm, BenchOptions, BenchRecord, CompletionClient, HttpCompletionClient,
    LlmEndpointConfig, API_KEY_ENV,
};
pub use prompt::{build_prompt, extract_query, PromptMode, PromptTemplate, Shot};
pub use rules::{rule_lexical_predict, RuleTable};
