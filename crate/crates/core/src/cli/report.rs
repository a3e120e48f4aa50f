use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::conditions::ConditionReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub inputs: Vec<String>,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimension {
    pub space: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

/// Reduced structure: bivector components on `N`, or structure constants
/// on a basis of representatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Structure {
    Bivector { variables: Vec<String>, entries: Vec<BivectorEntry> },
    Bracket { basis: Vec<String>, entries: Vec<TableEntry> },
    LieJordan { basis: Vec<String>, jordan: Vec<TableEntry>, lie: Vec<TableEntry> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivectorEntry {
    pub i: String,
    pub j: String,
    pub coeff: String,
}

/// Outcome of one pipeline run. The machine form is deterministic JSON;
/// timing appears only in the human form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub pipeline: String,
    pub passed: bool,
    pub dimensions: Vec<Dimension>,
    pub conditions: Vec<ConditionEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub structures: Vec<Structure>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(scenario: impl Into<String>, pipeline: impl Into<String>) -> Self {
        Report {
            scenario: scenario.into(),
            pipeline: pipeline.into(),
            passed: true,
            dimensions: Vec::new(),
            conditions: Vec::new(),
            structures: Vec::new(),
            elapsed: None,
        }
    }

    /// Appends a condition report, rendering elements with `show`;
    /// condition names get `prefix` when it is nonempty.
    pub fn absorb<T>(&mut self, prefix: &str, report: &ConditionReport<T>, show: impl Fn(&T) -> String) {
        let label = |s: &str| if prefix.is_empty() { s.to_string() } else { format!("{}: {}", prefix, s) };
        for (space, dim) in &report.dimensions {
            self.dimensions.push(Dimension { space: label(space), dim: *dim });
        }
        for c in &report.conditions {
            self.push(ConditionEntry {
                name: label(&c.name),
                passed: c.passed,
                checked: c.checked,
                detail: c.detail.clone(),
                witness: c.witness.as_ref().map(|w| WitnessEntry {
                    inputs: w.inputs.iter().map(&show).collect(),
                    residual: show(&w.residual),
                }),
            });
        }
    }

    pub fn push(&mut self, entry: ConditionEntry) {
        self.passed &= entry.passed;
        self.conditions.push(entry);
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionEntry> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_machine(src: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(src)
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} [{}]", self.scenario, self.pipeline);
        if !self.dimensions.is_empty() {
            let dims: Vec<String> = self.dimensions.iter().map(|d| format!("dim {} = {}", d.space, d.dim)).collect();
            let _ = writeln!(out, "  {}", dims.join(", "));
        }
        for c in &self.conditions {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "  {} {} ({} checked)", verdict, c.name, c.checked);
            if let Some(d) = &c.detail {
                let _ = write!(out, ": {}", d);
            }
            let _ = writeln!(out);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "       witness ({}) -> {}", w.inputs.join(", "), w.residual);
            }
        }
        for s in &self.structures {
            render_structure(&mut out, s);
        }
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        match self.elapsed {
            Some(t) => {
                let _ = writeln!(out, "result: {} in {:.3} s", verdict, t.as_secs_f64());
            }
            None => {
                let _ = writeln!(out, "result: {}", verdict);
            }
        }
        out
    }
}

fn render_structure(out: &mut String, s: &Structure) {
    let table = |out: &mut String, open: &str, sep: &str, close: &str, basis: &[String], entries: &[TableEntry]| {
        for e in entries {
            let _ = writeln!(out, "    {}{}{}{}{} = {}", open, basis[e.i], sep, basis[e.j], close, e.value);
        }
    };
    match s {
        Structure::Bivector { variables, entries } => {
            let _ = writeln!(out, "  bivector on ({}):", variables.join(", "));
            if entries.is_empty() {
                let _ = writeln!(out, "    0");
            }
            for e in entries {
                let coeff = match e.coeff.as_str() {
                    "1" => String::new(),
                    "-1" => "-".to_string(),
                    c if c.contains(' ') => format!("({}) ", c),
                    c => format!("{} ", c),
                };
                let _ = writeln!(out, "    {}∂{}∧∂{}", coeff, e.i, e.j);
            }
        }
        Structure::Bracket { basis, entries } => {
            let _ = writeln!(out, "  bracket on {} representatives (nonzero values):", basis.len());
            table(out, "{", ", ", "}", basis, entries);
        }
        Structure::LieJordan { basis, jordan, lie } => {
            let _ = writeln!(out, "  quotient on {} representatives (nonzero values):", basis.len());
            table(out, "", " ∘ ", "", basis, jordan);
            table(out, "[", ", ", "]", basis, lie);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::{Condition, Witness};

    fn sample() -> Report {
        let mut cr: ConditionReport<i32> = ConditionReport::new();
        cr.dimension("B", 3);
        cr.push(Condition::pass("closed", 6));
        cr.push(Condition::fail("ideal", 2, Witness { inputs: vec![1, 2], residual: -1 }).with_detail("d"));
        let mut r = Report::new("s", "p");
        r.absorb("", &cr, |x| x.to_string());
        r.structures.push(Structure::Bracket {
            basis: vec!["x".into(), "y".into()],
            entries: vec![TableEntry { i: 0, j: 1, value: "1".into() }],
        });
        r
    }

    #[test]
    fn machine_form_round_trips() {
        let r = sample();
        let text = r.to_machine();
        let back = Report::from_machine(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_machine(), text);
    }

    #[test]
    fn failing_condition_sets_verdict() {
        let r = sample();
        assert!(!r.passed);
        assert_eq!(r.exit_code(), 1);
        let human = r.to_human();
        assert!(human.contains("FAIL ideal (2 checked): d"));
        assert!(human.contains("witness (1, 2) -> -1"));
        assert!(human.contains("{x, y} = 1"));
    }
}
