//! Verification reports: a deterministic key-value text form and JSON.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub id: String,
    pub property: String,
    pub params: String,
    /// `"exact-zero"`, or the max-entry defect in scientific notation.
    pub defect: String,
    pub pass: bool,
}

/// A measurement that is reported but not judged.
#[derive(Debug, Clone, Serialize)]
pub struct Note {
    pub id: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub backend: Backend,
    pub tolerance: f64,
    pub cases: Vec<Case>,
    pub notes: Vec<Note>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

pub struct Builder {
    backend: Backend,
    tolerance: f64,
    cases: Vec<Case>,
    notes: Vec<Note>,
}

impl Builder {
    pub fn new(backend: Backend, tolerance: f64) -> Self {
        Self { backend, tolerance, cases: Vec::new(), notes: Vec::new() }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// Record a defect. Exact runs pass only on an exact zero; float runs
    /// compare against the tolerance.
    pub fn defect(&mut self, id: impl Into<String>, property: impl Into<String>, params: impl Into<String>, d: f64) {
        let (defect, pass) = match self.backend {
            Backend::Exact if d == 0.0 => ("exact-zero".to_string(), true),
            Backend::Exact => (format!("{d:e}"), false),
            Backend::Float => (format!("{d:e}"), d <= self.tolerance),
        };
        self.cases.push(Case { id: id.into(), property: property.into(), params: params.into(), defect, pass });
    }

    /// Record a boolean outcome.
    pub fn check(&mut self, id: impl Into<String>, property: impl Into<String>, params: impl Into<String>, ok: bool) {
        let defect = if ok { "exact-zero" } else { "mismatch" };
        self.cases.push(Case { id: id.into(), property: property.into(), params: params.into(), defect: defect.into(), pass: ok });
    }

    pub fn note(&mut self, id: impl Into<String>, value: impl Into<String>) {
        self.notes.push(Note { id: id.into(), value: value.into() });
    }

    pub fn finish(self, suite: &str, seed: u64) -> Report {
        let passed = self.cases.iter().filter(|c| c.pass).count();
        Report {
            suite: suite.into(),
            seed,
            backend: self.backend,
            tolerance: self.tolerance,
            summary: Summary { total: self.cases.len(), passed, failed: self.cases.len() - passed },
            cases: self.cases,
            notes: self.notes,
            wall_time_ms: None,
        }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite = {}\nseed = {}\nbackend = {}\ntolerance = {:e}\n",
            self.suite,
            self.seed,
            self.backend.name(),
            self.tolerance
        );
        for c in &self.cases {
            out += &format!(
                "case id={} pass={} defect={} params={} property={}\n",
                c.id,
                c.pass,
                c.defect,
                quote(&c.params),
                quote(&c.property)
            );
        }
        for n in &self.notes {
            out += &format!("note id={} value={}\n", n.id, quote(&n.value));
        }
        out += &format!(
            "summary total={} passed={} failed={}\nresult = {}\n",
            self.summary.total,
            self.summary.passed,
            self.summary.failed,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        if let Some(ms) = self.wall_time_ms {
            out += &format!("wall_time_ms = {ms:.1}\n");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_and_float_judgement() {
        let mut b = Builder::new(Backend::Exact, 1e-10);
        b.defect("a", "p", "", 0.0);
        b.defect("b", "p", "", 1e-300);
        let r = b.finish("s", 1);
        assert_eq!((r.summary.passed, r.summary.failed), (1, 1));
        assert!(r.to_text().contains("result = FAIL"));

        let mut b = Builder::new(Backend::Float, 1e-10);
        b.defect("a", "p", "", 1e-12);
        b.note("n", "1.5");
        let r = b.finish("s", 1);
        assert!(r.passed());
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["backend"], "float");
        assert_eq!(json["notes"][0]["value"], "1.5");
        assert!(json.get("wall_time_ms").is_none());
    }

    #[test]
    fn text_is_quoted() {
        let mut b = Builder::new(Backend::Exact, 0.0);
        b.check("x", "a \"b\"", "n=1", true);
        assert!(b.finish("s", 0).to_text().contains(r#"property="a \"b\"""#));
    }
}
