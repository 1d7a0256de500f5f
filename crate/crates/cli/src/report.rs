//! Deterministic run reports. The machine format serializes exactly the
//! fields below in order and omits wall-clock timings, so identical
//! invocations produce byte-identical documents.

use serde::Serialize;

#[derive(Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub params: String,
    pub verdict: bool,
    pub witness: Option<String>,
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: Option<String>,
    pub seed: Option<u64>,
    /// Printable artifact lines: cube tables, triangulations, constants.
    pub lines: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub overall: bool,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report {
            command,
            input_digest: None,
            seed: None,
            lines: Vec::new(),
            checks: Vec::new(),
            overall: true,
        }
    }

    pub fn push_check(
        &mut self,
        name: &str,
        params: &str,
        verdict: bool,
        witness: Option<String>,
        millis: u128,
    ) {
        self.overall &= verdict;
        self.checks.push(CheckRecord {
            name: name.to_string(),
            params: params.to_string(),
            verdict,
            witness,
            millis,
        });
    }

    /// Informational record that never affects the overall verdict.
    pub fn push_info(&mut self, name: &str, params: &str, note: String) {
        self.checks.push(CheckRecord {
            name: name.to_string(),
            params: params.to_string(),
            verdict: true,
            witness: Some(note),
            millis: 0,
        });
    }

    pub fn machine(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if let Some(d) = &self.input_digest {
            out.push_str(&format!("input sha256: {}\n", d));
        }
        if let Some(s) = self.seed {
            out.push_str(&format!("seed: {}\n", s));
        }
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {} {} ({} ms)",
                if c.verdict { "ok" } else { "FAIL" },
                c.name,
                c.params,
                c.millis
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  {}", w));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.overall { "pass" } else { "fail" }
        ));
        out
    }
}
