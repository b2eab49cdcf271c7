//! `puntua`: restore, evaluate, tune and benchmark Spanish punctuation.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use puntua_core::Error;

#[derive(Parser)]
#[command(
    name = "puntua",
    version,
    about = "Hybrid acoustic/lexical punctuation restoration for Spanish transcripts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Table,
    Records,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    Lexical,
    Acoustic,
    Hybrid,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ObjectiveArg {
    #[value(name = "micro-f1")]
    MicroF1,
    #[value(name = "cq-f1")]
    CqF1,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum PromptArg {
    Zero,
    Few,
}

#[derive(Subcommand)]
enum Command {
    /// Consolidate, repair and render every utterance of a prediction file.
    Restore {
        #[arg(long)]
        pred: String,
        #[arg(long, default_value_t = 0.75)]
        t_question: f64,
        #[arg(long, default_value_t = 0.75)]
        t_declarative: f64,
        /// Skip the acoustic channel entirely.
        #[arg(long)]
        lexical_only: bool,
        /// Output file, `-` for stdout.
        #[arg(long)]
        out: String,
        /// Print the label tracks after each stage to stderr.
        #[arg(long)]
        debug_stages: bool,
    },
    /// Score predictions against the reference tracks.
    Eval {
        #[arg(long)]
        pred: String,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 0.75)]
        t_question: f64,
        #[arg(long, default_value_t = 0.75)]
        t_declarative: f64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Grid-search the two thresholds on a development set.
    Tune {
        #[arg(long)]
        dev: String,
        #[arg(long, default_value_t = 0.5)]
        grid_start: f64,
        #[arg(long, default_value_t = 1.0)]
        grid_stop: f64,
        #[arg(long, default_value_t = 0.05)]
        grid_step: f64,
        #[arg(long, value_enum, default_value = "micro-f1")]
        objective: ObjectiveArg,
    },
    /// Benchmark a chat-completions endpoint for reliability and latency.
    /// The API key is read from PUNTUA_LLM_API_KEY.
    #[command(name = "bench-llm")]
    BenchLlm {
        #[arg(long)]
        input: String,
        #[arg(long)]
        endpoint: String,
        #[arg(long)]
        model: String,
        #[arg(long, value_enum)]
        prompt: PromptArg,
        /// JSON lines of {"input": ..., "output": ...}; exactly three.
        #[arg(long)]
        shots: Option<String>,
        #[arg(long, default_value_t = 1)]
        max_inflight: usize,
        #[arg(long, default_value_t = 2)]
        retries: usize,
        /// Score unreliable outputs as predicting no marks instead of skipping them.
        #[arg(long)]
        include_unreliable: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Fill the lexical track with the rule-based baseline.
    #[command(name = "predict-rules")]
    PredictRules {
        #[arg(long)]
        input: String,
        #[arg(long)]
        out: String,
        /// JSON object overriding rule table fields.
        #[arg(long)]
        rules: Option<String>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Validation(_)
        | Error::LengthMismatch { .. }
        | Error::Parse { .. }
        | Error::Io(_) => 1,
        Error::Config(_) => 2,
        Error::Endpoint(_) => 3,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Restore {
            pred,
            t_question,
            t_declarative,
            lexical_only,
            out,
            debug_stages,
        } => commands::restore(
            &pred,
            t_question,
            t_declarative,
            lexical_only,
            &out,
            debug_stages,
        ),
        Command::Eval {
            pred,
            mode,
            t_question,
            t_declarative,
            format,
        } => commands::eval(&pred, mode, t_question, t_declarative, format),
        Command::Tune {
            dev,
            grid_start,
            grid_stop,
            grid_step,
            objective,
        } => commands::tune(&dev, grid_start, grid_stop, grid_step, objective),
        Command::BenchLlm {
            input,
            endpoint,
            model,
            prompt,
            shots,
            max_inflight,
            retries,
            include_unreliable,
            format,
        } => commands::bench_llm(commands::BenchArgs {
            input,
            endpoint,
            model,
            prompt,
            shots,
            max_inflight,
            retries,
            include_unreliable,
            format,
        }),
        Command::PredictRules { input, out, rules } => {
            commands::predict_rules(&input, &out, rules.as_deref())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
