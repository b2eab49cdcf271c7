//! Independent reference implementations used as test oracles. These are
//! written from the rule descriptions, deliberately without sharing code or
//! data structures with the library.

#![allow(dead_code)]

/// Line-by-line transcription of the thresholding pseudocode, on label strings.
pub fn algorithm_one(
    pred_a: &str,
    pred_l: &str,
    p_l: f64,
    t_question: f64,
    t_declarative: f64,
) -> String {
    let pred_c;
    if pred_a == "C_Q" && (pred_l == "PERIOD" || pred_l == "COMMA") {
        if p_l <= t_declarative {
            pred_c = "C_Q";
        } else {
            pred_c = pred_l;
        }
    } else if pred_a != "C_Q" && pred_l == "C_Q" {
        if p_l <= t_question {
            pred_c = "PERIOD";
        } else {
            pred_c = "C_Q";
        }
    } else {
        pred_c = pred_l;
    }
    pred_c.to_string()
}

/// Textbook full-matrix Levenshtein distance over words.
pub fn levenshtein(a: &[String], b: &[String]) -> usize {
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, cell) in d[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let cost = if a[i - 1].to_lowercase() == b[j - 1].to_lowercase() {
                0
            } else {
                1
            };
            d[i][j] = (d[i - 1][j] + 1)
                .min(d[i][j - 1] + 1)
                .min(d[i - 1][j - 1] + cost);
        }
    }
    d[a.len()][b.len()]
}

/// (kind, hyp index, ref index); kind is "M", "S", "I" or "D".
pub type Op = (&'static str, Option<usize>, Option<usize>);

/// Every alignment script between `h` and `r`, built back to front.
pub fn all_scripts(h: &[&str], r: &[&str]) -> Vec<Vec<Op>> {
    fn go(
        h: &[&str],
        r: &[&str],
        i: usize,
        j: usize,
        suffix: &mut Vec<Op>,
        out: &mut Vec<Vec<Op>>,
    ) {
        if i == 0 && j == 0 {
            let mut s = suffix.clone();
            s.reverse();
            out.push(s);
            return;
        }
        if i > 0 && j > 0 {
            let kind = if h[i - 1] == r[j - 1] { "M" } else { "S" };
            suffix.push((kind, Some(i - 1), Some(j - 1)));
            go(h, r, i - 1, j - 1, suffix, out);
            suffix.pop();
        }
        if j > 0 {
            suffix.push(("D", None, Some(j - 1)));
            go(h, r, i, j - 1, suffix, out);
            suffix.pop();
        }
        if i > 0 {
            suffix.push(("I", Some(i - 1), None));
            go(h, r, i - 1, j, suffix, out);
            suffix.pop();
        }
    }
    let mut out = Vec::new();
    go(h, r, h.len(), r.len(), &mut Vec::new(), &mut out);
    out
}

pub fn script_cost(s: &[Op]) -> usize {
    s.iter().filter(|op| op.0 != "M").count()
}

/// The minimal script preferred by the canonical tie-break: compare scripts
/// from their last op backwards, diagonal < delete < insert.
pub fn canonical_script(h: &[&str], r: &[&str]) -> Vec<Op> {
    let scripts = all_scripts(h, r);
    let best = scripts.iter().map(|s| script_cost(s)).min().unwrap();
    let rank = |op: &Op| match op.0 {
        "M" | "S" => 0,
        "D" => 1,
        _ => 2,
    };
    scripts
        .into_iter()
        .filter(|s| script_cost(s) == best)
        .min_by_key(|s| s.iter().rev().map(rank).collect::<Vec<_>>())
        .unwrap()
}

/// Question-pair repair written from the rule statement.
///
/// A `¿` at i is matched iff some `?` at j >= i exists with no other `¿` in
/// (i, j] and no `?` in [i, j). Unmatched `¿` are removed; each unmatched `?`
/// gets a `¿` at the start of its unpunctuated run.
pub fn naive_repair(leads: &[bool], trails: &[&str]) -> Vec<bool> {
    let n = leads.len();
    let lead_matched = |leads: &[bool], i: usize| {
        (i..n).any(|j| {
            trails[j] == "C_Q"
                && !(i + 1..=j).any(|k| leads[k])
                && !(i..j).any(|k| trails[k] == "C_Q")
        })
    };
    let mut out: Vec<bool> = (0..n).map(|i| leads[i] && lead_matched(leads, i)).collect();
    let closes_matched: Vec<bool> = (0..n)
        .map(|j| {
            trails[j] == "C_Q"
                && (0..=j).any(|i| {
                    out[i] && !(i + 1..=j).any(|k| out[k]) && !(i..j).any(|k| trails[k] == "C_Q")
                })
        })
        .collect();
    let snapshot = out.clone();
    for j in 0..n {
        if trails[j] == "C_Q" && !closes_matched[j] {
            let after_trail = (0..j).filter(|&t| trails[t] != "NONE").map(|t| t + 1).max();
            let at_lead = (0..=j).filter(|&t| snapshot[t]).max();
            let start = [Some(0), after_trail, at_lead]
                .into_iter()
                .flatten()
                .max()
                .unwrap();
            out[start] = true;
        }
    }
    out
}

/// Positional (tp, fp, fn) per mark name, over (lead is ¿, trail) pairs.
pub fn naive_counts(
    pred: &[(bool, &str)],
    reference: &[(bool, &str)],
) -> std::collections::BTreeMap<&'static str, (u64, u64, u64)> {
    let mut m = std::collections::BTreeMap::new();
    for name in ["O_Q", "C_Q", "COMMA", "PERIOD"] {
        m.insert(name, (0, 0, 0));
    }
    let key = |s: &str| -> &'static str {
        match s {
            "C_Q" => "C_Q",
            "COMMA" => "COMMA",
            "PERIOD" => "PERIOD",
            _ => "NONE",
        }
    };
    for (p, r) in pred.iter().zip(reference) {
        match (p.0, r.0) {
            (true, true) => m.get_mut("O_Q").unwrap().0 += 1,
            (true, false) => m.get_mut("O_Q").unwrap().1 += 1,
            (false, true) => m.get_mut("O_Q").unwrap().2 += 1,
            _ => {}
        }
        let (pk, rk) = (key(p.1), key(r.1));
        if pk == rk {
            if pk != "NONE" {
                m.get_mut(pk).unwrap().0 += 1;
            }
        } else {
            if pk != "NONE" {
                m.get_mut(pk).unwrap().1 += 1;
            }
            if rk != "NONE" {
                m.get_mut(rk).unwrap().2 += 1;
            }
        }
    }
    m
}

/// F1 as an exact fraction (numerator, denominator); 0/0 is returned as (0, 1).
pub fn f1_fraction(tp: u64, fp: u64, fn_: u64) -> (u64, u64) {
    let den = 2 * tp + fp + fn_;
    if den == 0 {
        (0, 1)
    } else {
        (2 * tp, den)
    }
}

/// Compare two non-negative fractions exactly.
pub fn cmp_fraction(a: (u64, u64), b: (u64, u64)) -> std::cmp::Ordering {
    (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128))
}
