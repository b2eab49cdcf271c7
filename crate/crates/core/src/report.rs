//! Plain-text tables and line-delimited JSON records for reports.
//!
//! Record lines always carry a `kind` field so runs can be diffed and
//! filtered line by line.

use std::fmt::Write;

use serde_json::json;

use crate::consolidator::TuneResult;
use crate::metrics::EvalReport;
use crate::pipeline::{BenchSummary, BENCH_CONTEXT};
use crate::predictors::BenchRecord;

pub fn eval_table(title: &str, report: &EvalReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{title} ({} utterances)", report.utterances);
    let _ = writeln!(
        s,
        "{:<8} {:>8} {:>8} {:>8} {:>7} {:>7} {:>7}",
        "mark", "P (%)", "R (%)", "F1 (%)", "tp", "fp", "fn"
    );
    for m in &report.marks {
        let _ = writeln!(
            s,
            "{:<8} {:>8.2} {:>8.2} {:>8.2} {:>7} {:>7} {:>7}",
            m.mark.as_str(),
            m.precision,
            m.recall,
            m.f1,
            m.tp,
            m.fp,
            m.fn_
        );
    }
    let _ = writeln!(s, "{:<8} {:>26.2}", "micro", report.micro_f1);
    if let Some(wer) = report.wer {
        let _ = writeln!(s, "{:<8} {:>26.2}", "WER (%)", wer);
    }
    if let Some(r) = report.reliability {
        let _ = writeln!(s, "{:<8} {:>26.1}", "reliab.", r);
    }
    for note in &report.notes {
        let _ = writeln!(s, "note: {note}");
    }
    s
}

pub fn eval_records(mode: &str, report: &EvalReport) -> String {
    let mut s = String::new();
    for m in &report.marks {
        let line = json!({
            "kind": "mark",
            "mode": mode,
            "mark": m.mark,
            "precision": m.precision,
            "recall": m.recall,
            "f1": m.f1,
            "tp": m.tp,
            "fp": m.fp,
            "fn": m.fn_,
        });
        let _ = writeln!(s, "{line}");
    }
    let summary = json!({
        "kind": "summary",
        "mode": mode,
        "utterances": report.utterances,
        "micro_f1": report.micro_f1,
        "wer": report.wer,
    });
    let _ = writeln!(s, "{summary}");
    for note in &report.notes {
        let _ = writeln!(s, "{}", json!({"kind": "note", "text": note}));
    }
    s
}

/// The whole grid surface followed by the selected point. F1 values are
/// percentages.
pub fn tune_records(result: &TuneResult) -> String {
    let mut s = String::new();
    for p in &result.surface {
        let line = json!({
            "kind": "grid_point",
            "t_question": p.t_question,
            "t_declarative": p.t_declarative,
            "micro_f1": 100.0 * p.micro_f1,
            "cq_f1": 100.0 * p.cq_f1,
        });
        let _ = writeln!(s, "{line}");
    }
    let best = json!({
        "kind": "best",
        "objective": result.objective,
        "t_question": result.best.question(),
        "t_declarative": result.best.declarative(),
        "value": 100.0 * result.value,
        "grid_points": result.surface.len(),
    });
    let _ = writeln!(s, "{best}");
    s
}

pub fn bench_records(records: &[BenchRecord], summary: &BenchSummary) -> String {
    let mut s = String::new();
    for r in records {
        let mut v = serde_json::to_value(r).expect("record serializes");
        v["kind"] = json!("utterance");
        let _ = writeln!(s, "{v}");
    }
    let line = json!({
        "kind": "bench_summary",
        "utterances": summary.utterances,
        "reliability": summary.reliability,
        "latency": summary.latency,
    });
    let _ = writeln!(s, "{line}");
    if let Some(report) = &summary.report {
        s.push_str(&eval_records("llm", report));
    }
    for c in BENCH_CONTEXT {
        let _ = writeln!(s, "{}", json!({"kind": "note", "text": c}));
    }
    s
}

pub fn bench_table(summary: &BenchSummary) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "LLM benchmark ({} utterances)", summary.utterances);
    let _ = writeln!(s, "{:<14} {:>8.1}", "reliability %", summary.reliability);
    match &summary.latency {
        Some(l) => {
            let _ = writeln!(
                s,
                "{:<14} {:>8.3}  (min {:.3}, p50 {:.3}, p95 {:.3}, max {:.3}, n={})",
                "latency s", l.mean, l.min, l.p50, l.p95, l.max, l.count
            );
        }
        None => {
            let _ = writeln!(s, "{:<14} {:>8}", "latency s", "-");
        }
    }
    if let Some(report) = &summary.report {
        s.push('\n');
        s.push_str(&eval_table("reliable subset", report));
    }
    for c in BENCH_CONTEXT {
        let _ = writeln!(s, "note: {c}");
    }
    s
}
