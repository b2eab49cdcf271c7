//! Chat-completion client and the reliability/latency benchmark loop.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::metrics::check_reliability;
use crate::predictors::prompt::{build_prompt, PromptTemplate};
use crate::utterance::Utterance;

/// Environment variable holding the endpoint API key.
pub const API_KEY_ENV: &str = "PUNTUA_LLM_API_KEY";

#[derive(Clone)]
pub struct LlmEndpointConfig {
    /// Full URL of a chat-completions endpoint.
    pub url: String,
    pub model: String,
    pub temperature: f64,
    pub max_tokens: u32,
    pub timeout: Duration,
    api_key: String,
}

impl std::fmt::Debug for LlmEndpointConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LlmEndpointConfig")
            .field("url", &self.url)
            .field("model", &self.model)
            .field("temperature", &self.temperature)
            .field("max_tokens", &self.max_tokens)
            .field("timeout", &self.timeout)
            .finish_non_exhaustive()
    }
}

impl LlmEndpointConfig {
    pub fn new(
        url: impl Into<String>,
        model: impl Into<String>,
        api_key: impl Into<String>,
    ) -> Result<Self> {
        let api_key = api_key.into();
        if api_key.trim().is_empty() {
            return Err(Error::Config("API key is empty".into()));
        }
        Ok(LlmEndpointConfig {
            url: url.into(),
            model: model.into(),
            temperature: 0.2,
            max_tokens: 1024,
            timeout: Duration::from_secs(60),
            api_key,
        })
    }

    /// Read the API key from [`API_KEY_ENV`].
    pub fn from_env(url: impl Into<String>, model: impl Into<String>) -> Result<Self> {
        let key = std::env::var(API_KEY_ENV)
            .map_err(|_| Error::Config(format!("{API_KEY_ENV} is not set")))?;
        LlmEndpointConfig::new(url, model, key)
    }

    pub fn api_key(&self) -> &str {
        &self.api_key
    }
}

/// Something that turns a prompt into a completion.
pub trait CompletionClient: Sync {
    fn complete(&self, prompt: &str) -> Result<String>;
}

/// Single-user-message chat completion over HTTP (OpenAI-compatible shape).
pub struct HttpCompletionClient {
    config: LlmEndpointConfig,
    agent: ureq::Agent,
}

impl HttpCompletionClient {
    pub fn new(config: LlmEndpointConfig) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(config.timeout))
            .build()
            .into();
        HttpCompletionClient { config, agent }
    }
}

impl CompletionClient for HttpCompletionClient {
    fn complete(&self, prompt: &str) -> Result<String> {
        let body = json!({
            "model": self.config.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.config.temperature,
            "max_tokens": self.config.max_tokens,
        });
        let mut response = self
            .agent
            .post(&self.config.url)
            .header("Authorization", &format!("Bearer {}", self.config.api_key))
            .send_json(&body)
            .map_err(|e| Error::Endpoint(e.to_string()))?;
        let value: serde_json::Value = response
            .body_mut()
            .read_json()
            .map_err(|e| Error::Endpoint(format!("bad response body: {e}")))?;
        value
            .pointer("/choices/0/message/content")
            .and_then(|v| v.as_str())
            .map(|s| s.trim().to_string())
            .ok_or_else(|| Error::Endpoint("response has no choices[0].message.content".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchOptions {
    /// Requests allowed in flight at once.
    pub max_inflight: usize,
    /// Extra attempts after a transport failure.
    pub retries: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            max_inflight: 1,
            retries: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub id: String,
    /// Raw completion; kept even when unreliable.
    pub output: Option<String>,
    pub reliable: bool,
    /// Seconds spent in the successful call.
    pub latency: Option<f64>,
    pub attempts: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Send every utterance (marks removed) through the endpoint and check each
/// answer for reliability. Results come back in input order.
pub fn benchmark_llm<C: CompletionClient>(
    utterances: &[Utterance],
    client: &C,
    template: &PromptTemplate,
    options: BenchOptions,
) -> Result<Vec<BenchRecord>> {
    template.validate()?;
    let prompts = utterances
        .iter()
        .map(|u| build_prompt(&u.words.join(" "), template))
        .collect::<Result<Vec<_>>>()?;

    let run_one = |(u, prompt): (&Utterance, &String)| {
        let mut last_error = None;
        for attempt in 1..=options.retries + 1 {
            let started = Instant::now();
            match client.complete(prompt) {
                Ok(output) => {
                    let latency = started.elapsed().as_secs_f64();
                    return BenchRecord {
                        id: u.id.clone(),
                        reliable: check_reliability(&u.words, &output),
                        output: Some(output),
                        latency: Some(latency),
                        attempts: attempt,
                        error: None,
                    };
                }
                Err(e) => {
                    log::warn!("utterance {}: attempt {attempt} failed: {e}", u.id);
                    last_error = Some(e.to_string());
                }
            }
        }
        BenchRecord {
            id: u.id.clone(),
            output: None,
            reliable: false,
            latency: None,
            attempts: options.retries + 1,
            error: last_error,
        }
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.max_inflight.max(1))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let records: Vec<BenchRecord> = pool.install(|| {
        utterances
            .par_iter()
            .zip(prompts.par_iter())
            .map(run_one)
            .collect()
    });

    if !records.is_empty() && records.iter().all(|r| r.output.is_none()) {
        let first = records[0].error.clone().unwrap_or_default();
        return Err(Error::Endpoint(format!(
            "all {} requests failed (first error: {first})",
            records.len()
        )));
    }
    Ok(records)
}
