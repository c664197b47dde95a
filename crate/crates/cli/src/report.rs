use choquet_rn::spec::SpecFile;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub source: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictRow {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// What a command computed: pass/fail verdicts plus supporting tables.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub verdicts: Vec<VerdictRow>,
    pub results: Map<String, Value>,
}

impl Outcome {
    pub fn verdict(&mut self, name: impl Into<String>, holds: bool, witness: Option<String>) {
        self.verdicts.push(VerdictRow {
            name: name.into(),
            holds,
            witness,
        });
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    /// `{"passed", "verdicts", "results"}` without the run metadata.
    pub fn to_value(&self) -> Value {
        serde_json::json!({
            "passed": self.passed(),
            "verdicts": self.verdicts,
            "results": self.results,
        })
    }

    /// Nests another outcome under `key`, prefixing its verdict names.
    pub fn merge(&mut self, key: &str, other: Outcome) {
        for v in other.verdicts {
            self.verdicts.push(VerdictRow {
                name: format!("{key}: {}", v.name),
                ..v
            });
        }
        self.results.insert(key.to_string(), Value::Object(other.results));
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input: Option<Input>,
    pub passed: bool,
    pub exit_status: u8,
    pub verdicts: Vec<VerdictRow>,
    pub results: Map<String, Value>,
    pub spec: Option<SpecFile>,
}

impl RunReport {
    pub fn new(command: Vec<String>, input: Option<Input>, spec: Option<SpecFile>, outcome: Outcome) -> Self {
        let passed = outcome.passed();
        RunReport {
            command,
            input,
            passed,
            exit_status: if passed { 0 } else { 1 },
            verdicts: outcome.verdicts,
            results: outcome.results,
            spec,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Aligned text rendering of exactly the facts in the JSON form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command      choquet-rn {}\n", self.command.join(" ")));
        if let Some(input) = &self.input {
            out.push_str(&format!("input        {}\n", input.source));
            out.push_str(&format!("sha256       {}\n", input.sha256));
        }
        out.push_str(&format!(
            "status       {} (exit {})\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.exit_status
        ));
        if !self.verdicts.is_empty() {
            out.push_str("\nverdicts\n");
            for v in &self.verdicts {
                out.push_str(&format!("  {}  {}\n", if v.holds { "PASS" } else { "FAIL" }, v.name));
                if let Some(w) = &v.witness {
                    out.push_str(&format!("        witness: {w}\n"));
                }
            }
        }
        section(&mut out, "results", &Value::Object(self.results.clone()));
        if let Some(spec) = &self.spec {
            section(&mut out, "spec", &serde_json::to_value(spec).expect("spec serializes"));
        }
        out
    }
}

fn section(out: &mut String, title: &str, value: &Value) {
    let mut rows = Vec::new();
    flatten("", value, &mut rows);
    if rows.is_empty() {
        return;
    }
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    out.push_str(&format!("\n{title}\n"));
    for (k, v) in rows {
        let pad = width - k.chars().count();
        out.push_str(&format!("  {k}{}  {v}\n", " ".repeat(pad)));
    }
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            if map.is_empty() && !prefix.is_empty() {
                rows.push((prefix.to_string(), "{}".into()));
            }
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, rows);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                rows.push((prefix.to_string(), "[]".into()));
            }
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        Value::Null => rows.push((prefix.to_string(), "null".into())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}
