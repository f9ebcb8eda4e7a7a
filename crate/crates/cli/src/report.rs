//! Machine-readable run reports with a stable field order, plus the CSV and
//! human renderings of result tables.

use cycloprime::{SymbolValue, TestParams, Verdict, Witness};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolReport {
    pub sign: i8,
    pub l: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WitnessReport {
    Factor { value: String },
    Congruence { j: usize, observed: String, expected: String },
    DegenerateSymbol,
}

/// One run, serialized with a fixed field order so byte-level diffing works.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// "engine", "lucas-lehmer" or "pepin".
    pub kind: String,
    /// Engine runs: the odd prime p. Baselines: the index.
    pub p: u32,
    /// Engine runs: the exponent index n. Baselines: 0.
    pub n: u32,
    /// Decimal digits of the tested number.
    pub digits: u64,
    pub mode: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol: Option<SymbolReport>,
    /// Whether the fixed residue-class table covers this M (engine runs).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_covered: Option<bool>,
    pub iterations: u64,
    pub elapsed_s: f64,
}

fn witness_report(witness: &Witness) -> WitnessReport {
    match witness {
        Witness::Factor(f) => WitnessReport::Factor { value: f.to_string() },
        Witness::Congruence { j, observed, expected } => WitnessReport::Congruence {
            j: *j,
            observed: observed.to_string(),
            expected: expected.to_string(),
        },
        Witness::DegenerateSymbol => WitnessReport::DegenerateSymbol,
    }
}

fn symbol_report(symbol: &SymbolValue) -> SymbolReport {
    SymbolReport { sign: symbol.sign, l: symbol.l }
}

pub fn engine_report(params: &TestParams, verdict: &Verdict) -> Report {
    let table_covered = cycloprime::symbol::table_lookup(params.p, &params.m).is_ok();
    Report {
        kind: "engine".into(),
        p: params.p,
        n: params.n,
        digits: params.digits(),
        mode: verdict.mode.as_str().into(),
        verdict: verdict.outcome.as_str().into(),
        witness: verdict.witness.as_ref().map(witness_report),
        symbol: verdict.symbol.as_ref().map(symbol_report),
        table_covered: Some(table_covered),
        iterations: verdict.iterations,
        elapsed_s: verdict.elapsed.as_secs_f64(),
    }
}

pub fn baseline_report(kind: &str, index: u32, digits: u64, verdict: &Verdict) -> Report {
    Report {
        kind: kind.into(),
        p: index,
        n: 0,
        digits,
        mode: verdict.mode.as_str().into(),
        verdict: verdict.outcome.as_str().into(),
        witness: verdict.witness.as_ref().map(witness_report),
        symbol: None,
        table_covered: None,
        iterations: verdict.iterations,
        elapsed_s: verdict.elapsed.as_secs_f64(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    /// One human-readable line for a single run.
    pub fn human_line(&self) -> String {
        let target = match self.kind.as_str() {
            "engine" => format!("{}^(2^{})+1", 2 * self.p, self.n),
            "lucas-lehmer" => format!("2^{}-1", self.p),
            _ => format!("2^(2^{})+1", self.p),
        };
        let detail = match &self.witness {
            Some(WitnessReport::Factor { value }) => format!(" (factor {value})"),
            Some(WitnessReport::Congruence { j, .. }) => {
                format!(" (congruence S^({j}) missed)")
            }
            Some(WitnessReport::DegenerateSymbol) => " (symbol is +-1)".into(),
            None => String::new(),
        };
        format!(
            "{} [{} digits]: {}{} [{}] in {:.3} s",
            target, self.digits, self.verdict, detail, self.mode, self.elapsed_s
        )
    }
}

pub const CSV_HEADER: &str = "n,primality,time_s";

/// Primality column in the result tables: yes / no / inapplicable.
pub fn primality_word(verdict: &str) -> &'static str {
    match verdict {
        "prime" => "yes",
        "composite" => "no",
        _ => "inapplicable",
    }
}

pub fn csv_row(report: &Report) -> String {
    format!(
        "{},{},{:.3}",
        report.n,
        primality_word(&report.verdict),
        report.elapsed_s
    )
}

pub fn csv_table(reports: &[Report]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    out
}

pub fn json_table(reports: &[Report]) -> String {
    serde_json::to_string(reports).expect("report serialization cannot fail")
}

/// The result-table rendering for people: M shown for primes, dash
/// otherwise, matching the shape of the published timing tables.
pub fn human_table(params_list: &[TestParams], reports: &[Report]) -> String {
    let mut out = format!("{:<5} {:<24} {:<12} {}\n", "n", "M", "primality", "time_s");
    for (params, report) in params_list.iter().zip(reports) {
        let m_column = if report.verdict == "prime" {
            let s = params.m.to_string();
            if s.len() <= 24 {
                s
            } else {
                format!("[{} digits]", report.digits)
            }
        } else {
            "-".into()
        };
        out.push_str(&format!(
            "{:<5} {:<24} {:<12} {:.3}\n",
            report.n,
            m_column,
            primality_word(&report.verdict),
            report.elapsed_s
        ));
    }
    out
}
