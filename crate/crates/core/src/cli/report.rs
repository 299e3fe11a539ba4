//! Text and JSON rendering of check reports.

use serde::Serialize;

use crate::bialgebra::{CheckItem, CheckReport, ItemVerdict, Overall};

pub const SCHEMA: u32 = 1;

/// Everything one command prints.
#[derive(Clone, Debug, Serialize)]
pub struct Output {
    pub schema: u32,
    pub command: String,
    pub overall: Overall,
    pub reports: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Output {
    pub fn new(command: impl Into<String>, reports: Vec<CheckReport>) -> Self {
        let overall = Overall::combine(reports.iter().map(|r| r.overall));
        Output {
            schema: SCHEMA,
            command: command.into(),
            overall,
            reports,
            summary: None,
            notes: Vec::new(),
        }
    }
}

pub fn item_line(item: &CheckItem, degree_bound: usize) -> String {
    let mut line = match item.verdict {
        ItemVerdict::Member => format!("{}: member", item.label),
        ItemVerdict::Fail => format!("{}: FAIL remainder: {}", item.label, item.remainder),
        ItemVerdict::Inconclusive => format!("{}: INCONCLUSIVE (bound {degree_bound})", item.label),
    };
    if let Some(o) = &item.oracle {
        if !o.agrees {
            line.push_str(&format!(" ORACLE DISAGREES ({})", o.outcome));
        }
    }
    line
}

fn render_report(r: &CheckReport, depth: usize, out: &mut String) {
    let bar = "=".repeat(depth + 2);
    out.push_str(&format!(
        "{bar} {} [{}]: {}\n",
        r.check,
        r.presentations.join(" -> "),
        r.overall.as_str()
    ));
    for item in &r.items {
        out.push_str(&item_line(item, r.engine.degree_bound));
        out.push('\n');
        for t in &item.trace {
            out.push_str(&format!("  {t}\n"));
        }
    }
    for s in &r.engine.systems {
        out.push_str(&format!(
            "system {}: {} rules, {} (bound {})\n",
            s.name,
            s.rules,
            s.status.as_str(),
            r.engine.degree_bound
        ));
    }
    if let Some(o) = &r.engine.oracle {
        let ranks: Vec<String> = o.trials.iter().map(|t| t.rank.to_string()).collect();
        let (rows, cols) = o.trials.first().map_or((0, 0), |t| (t.rows, t.cols));
        out.push_str(&format!(
            "oracle: seed {}, cap {}, {} point(s), matrix {}x{}, rank {}, {}\n",
            o.seed,
            o.degree_cap,
            o.trials.len(),
            rows,
            cols,
            ranks.join("/"),
            if o.agrees { "agrees" } else { "DISAGREES" }
        ));
    }
    for p in &r.parts {
        render_report(p, depth + 1, out);
    }
}

pub fn render_text(o: &Output) -> String {
    let mut out = String::new();
    for r in &o.reports {
        render_report(r, 0, &mut out);
    }
    for n in &o.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out.push_str(&format!("overall: {}\n", o.overall.as_str()));
    if let Some(s) = &o.summary {
        out.push_str(s);
        out.push('\n');
    }
    out
}

pub fn render_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
