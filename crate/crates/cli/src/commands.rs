use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};

use puntua_core::pipeline::{apply_rules, evaluate, restore_corpus, summarize_bench, EvalMode};
use puntua_core::predictors::{
    benchmark_llm, load_predictions, read_records, write_predictions, BenchOptions,
    HttpCompletionClient, LexicalTrack, LlmEndpointConfig, PromptTemplate, RuleTable, Shot,
};
use puntua_core::{report, tune_thresholds, Error, GridSpec, Objective, Result, Thresholds};

use crate::{Format, Mode, ObjectiveArg, PromptArg};

fn open_output(path: &str) -> Result<Box<dyn Write>> {
    if path == "-" {
        return Ok(Box::new(BufWriter::new(io::stdout().lock())));
    }
    let file = File::create(path)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{path}: {e}"))))?;
    Ok(Box::new(BufWriter::new(file)))
}

fn open_input(path: &str) -> Result<BufReader<File>> {
    let file = File::open(path)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{path}: {e}"))))?;
    Ok(BufReader::new(file))
}

pub fn restore(
    pred: &str,
    t_question: f64,
    t_declarative: f64,
    lexical_only: bool,
    out: &str,
    debug_stages: bool,
) -> Result<()> {
    let th = Thresholds::new(t_question, t_declarative)?;
    let utterances = load_predictions(pred)?;
    let restored = restore_corpus(&utterances, th, lexical_only)?;
    let mut w = open_output(out)?;
    for r in &restored {
        writeln!(w, "{}\t{}", r.id, r.text)?;
    }
    w.flush()?;
    if debug_stages {
        let stderr = io::stderr();
        let mut e = stderr.lock();
        for r in &restored {
            let line = serde_json::json!({"id": r.id, "stages": r.stages});
            writeln!(e, "{line}")?;
        }
    }
    let fallbacks = restored.iter().filter(|r| r.fallback).count();
    eprintln!(
        "restored {} utterance(s), {} lexical-only fallback(s)",
        restored.len(),
        fallbacks
    );
    Ok(())
}

pub fn eval(
    pred: &str,
    mode: Mode,
    t_question: f64,
    t_declarative: f64,
    format: Format,
) -> Result<()> {
    let th = Thresholds::new(t_question, t_declarative)?;
    let utterances = load_predictions(pred)?;
    let mode = match mode {
        Mode::Lexical => EvalMode::Lexical,
        Mode::Acoustic => EvalMode::Acoustic,
        Mode::Hybrid => EvalMode::Hybrid,
    };
    let rep = evaluate(&utterances, mode, th)?;
    let text = match format {
        Format::Table => report::eval_table(&format!("{mode} evaluation"), &rep),
        Format::Records => report::eval_records(&mode.to_string(), &rep),
    };
    print!("{text}");
    Ok(())
}

pub fn tune(dev: &str, start: f64, stop: f64, step: f64, objective: ObjectiveArg) -> Result<()> {
    let grid = GridSpec::new(start, stop, step)?;
    let objective = match objective {
        ObjectiveArg::MicroF1 => Objective::MicroF1,
        ObjectiveArg::CqF1 => Objective::CqF1,
    };
    let utterances = load_predictions(dev)?;
    let result = tune_thresholds(&utterances, grid, objective)?;
    print!("{}", report::tune_records(&result));
    eprintln!(
        "best t_question={} t_declarative={} ({} points)",
        result.best.question(),
        result.best.declarative(),
        result.surface.len()
    );
    Ok(())
}

pub struct BenchArgs {
    pub input: String,
    pub endpoint: String,
    pub model: String,
    pub prompt: PromptArg,
    pub shots: Option<String>,
    pub max_inflight: usize,
    pub retries: usize,
    pub include_unreliable: bool,
    pub format: Format,
}

fn load_shots(path: &str) -> Result<Vec<Shot>> {
    let mut shots = Vec::new();
    for (i, line) in open_input(path)?.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let shot: Shot = serde_json::from_str(&line).map_err(|e| Error::Parse {
            file: path.into(),
            line: i + 1,
            path: String::new(),
            message: e.to_string(),
        })?;
        shots.push(shot);
    }
    Ok(shots)
}

pub fn bench_llm(args: BenchArgs) -> Result<()> {
    let config = LlmEndpointConfig::from_env(&args.endpoint, &args.model)?;
    if args.max_inflight == 0 {
        return Err(Error::Config("--max-inflight must be at least 1".into()));
    }
    let template = match (args.prompt, &args.shots) {
        (PromptArg::Zero, None) => PromptTemplate::zero_shot(),
        (PromptArg::Zero, Some(_)) => {
            return Err(Error::Config("--shots only applies to --prompt few".into()))
        }
        (PromptArg::Few, None) => PromptTemplate::default_few_shot(),
        (PromptArg::Few, Some(path)) => PromptTemplate::few_shot(load_shots(path)?)?,
    };
    let utterances = read_records(
        open_input(&args.input)?,
        &args.input,
        LexicalTrack::Optional,
    )?;
    let client = HttpCompletionClient::new(config);
    let options = BenchOptions {
        max_inflight: args.max_inflight,
        retries: args.retries,
    };
    let records = benchmark_llm(&utterances, &client, &template, options)?;
    let summary = summarize_bench(&utterances, &records, args.include_unreliable)?;
    let text = match args.format {
        Format::Table => report::bench_table(&summary),
        Format::Records => report::bench_records(&records, &summary),
    };
    print!("{text}");
    Ok(())
}

pub fn predict_rules(input: &str, out: &str, rules: Option<&str>) -> Result<()> {
    let rules = match rules {
        Some(path) => {
            let table: RuleTable =
                serde_json::from_reader(open_input(path)?).map_err(|e| Error::Parse {
                    file: path.into(),
                    line: e.line(),
                    path: String::new(),
                    message: e.to_string(),
                })?;
            table
        }
        None => RuleTable::default(),
    };
    let mut utterances = read_records(open_input(input)?, input, LexicalTrack::Optional)?;
    apply_rules(&mut utterances, &rules)?;
    write_predictions(open_output(out)?, &utterances)?;
    eprintln!("predicted {} utterance(s)", utterances.len());
    Ok(())
}
