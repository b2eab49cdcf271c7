//! Exhaustive grid evaluation built from the oracle pieces.

#![allow(dead_code)]

use puntua_core::{Lead, MarkLabel, Objective, Utterance};

use super::oracles::{algorithm_one, cmp_fraction, f1_fraction, naive_counts, naive_repair};

struct OraclePoint {
    tq: f64,
    td: f64,
    micro: (u64, u64),
    cq: (u64, u64),
}

/// Exhaustive evaluation of every grid point through the oracle pipeline,
/// then selection by (objective, C_Q F1, -t_question, -t_declarative).
pub fn oracle_tune(
    dev: &[Utterance],
    axis: &[f64],
    objective: Objective,
) -> (f64, f64, (u64, u64)) {
    let mut points = Vec::new();
    for &tq in axis {
        for &td in axis {
            let mut totals = std::collections::BTreeMap::new();
            for u in dev {
                let acoustic = u.acoustic.as_ref().unwrap();
                let trails: Vec<String> = u
                    .lexical
                    .iter()
                    .zip(acoustic)
                    .map(|(l, a)| {
                        algorithm_one(
                            MarkLabel::from(a.trail).as_str(),
                            MarkLabel::from(l.trail).as_str(),
                            l.prob.unwrap(),
                            tq,
                            td,
                        )
                    })
                    .collect();
                let trails: Vec<&str> = trails.iter().map(String::as_str).collect();
                let leads: Vec<bool> = u
                    .lexical
                    .iter()
                    .map(|l| l.lead == Lead::OpenQuestion)
                    .collect();
                let leads = naive_repair(&leads, &trails);
                let pred: Vec<(bool, &str)> =
                    leads.into_iter().zip(trails.iter().copied()).collect();
                let reference: Vec<(bool, &str)> = u
                    .reference
                    .as_ref()
                    .unwrap()
                    .iter()
                    .map(|r| {
                        (
                            r.lead == Lead::OpenQuestion,
                            MarkLabel::from(r.trail).as_str(),
                        )
                    })
                    .collect();
                for (k, (tp, fp, fn_)) in naive_counts(&pred, &reference) {
                    let e = totals.entry(k).or_insert((0u64, 0u64, 0u64));
                    e.0 += tp;
                    e.1 += fp;
                    e.2 += fn_;
                }
            }
            let pooled = totals
                .values()
                .fold((0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
            let cq = totals["C_Q"];
            points.push(OraclePoint {
                tq,
                td,
                micro: f1_fraction(pooled.0, pooled.1, pooled.2),
                cq: f1_fraction(cq.0, cq.1, cq.2),
            });
        }
    }
    let objective_of = |p: &OraclePoint| match objective {
        Objective::MicroF1 => p.micro,
        Objective::CqF1 => p.cq,
    };
    let best = points
        .iter()
        .max_by(|a, b| {
            cmp_fraction(objective_of(a), objective_of(b))
                .then(cmp_fraction(a.cq, b.cq))
                .then(b.tq.partial_cmp(&a.tq).unwrap())
                .then(b.td.partial_cmp(&a.td).unwrap())
        })
        .unwrap();
    (best.tq, best.td, objective_of(best))
}
