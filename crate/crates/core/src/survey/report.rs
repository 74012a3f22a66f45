use std::fmt;

use super::table::aligned;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Stated in the source text.
    Stated,
    /// Computed independently in this crate (no printed value exists).
    Derived,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Stated => "stated",
            Source::Derived => "derived",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub computed: String,
    pub expected: String,
    pub source: Source,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.computed == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub id: String,
    pub title: String,
    pub inputs: Vec<(String, String)>,
    pub checks: Vec<Check>,
    /// Facts taken from the literature without recomputation.
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
}

impl CaseReport {
    pub(crate) fn new(id: &str, title: &str) -> Self {
        CaseReport {
            id: id.to_string(),
            title: title.to_string(),
            inputs: Vec::new(),
            checks: Vec::new(),
            assumptions: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn input(&mut self, key: &str, value: impl Into<String>) {
        self.inputs.push((key.to_string(), value.into()));
    }

    pub(crate) fn check(&mut self, name: &str, computed: impl ToString, expected: impl ToString, source: Source) {
        self.checks.push(Check {
            name: name.to_string(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            source,
        });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass()).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("case {}: {}\n", self.id, self.title);
        if !self.inputs.is_empty() {
            out += "inputs:\n";
            let rows: Vec<[String; 2]> = self.inputs.iter().map(|(k, v)| [format!("  {k}"), v.clone()]).collect();
            out += &aligned(&rows);
        }
        out += "checks:\n";
        let mut rows = vec![[
            "  name".to_string(),
            "computed".to_string(),
            "expected".to_string(),
            "source".to_string(),
            "status".to_string(),
        ]];
        for c in &self.checks {
            rows.push([
                format!("  {}", c.name),
                c.computed.clone(),
                c.expected.clone(),
                c.source.to_string(),
                if c.pass() { "pass" } else { "FAIL" }.to_string(),
            ]);
        }
        out += &aligned(&rows);
        if !self.assumptions.is_empty() {
            out += "cited assumptions:\n";
            for a in &self.assumptions {
                out += &format!("  - {a}\n");
            }
        }
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        out += &format!("status: {}\n", if self.pass() { "pass" } else { "FAIL" });
        out
    }

    /// One tab-separated record per line.
    pub fn to_records(&self) -> String {
        let mut out = format!("case\t{}\ttitle\t{}\n", self.id, self.title);
        for (k, v) in &self.inputs {
            out += &format!("case\t{}\tinput\t{k}\t{v}\n", self.id);
        }
        for c in &self.checks {
            out += &format!(
                "case\t{}\tcheck\t{}\t{}\t{}\t{}\t{}\n",
                self.id,
                c.name,
                c.computed,
                c.expected,
                c.source,
                if c.pass() { "pass" } else { "fail" }
            );
        }
        for a in &self.assumptions {
            out += &format!("case\t{}\tcited\t{a}\n", self.id);
        }
        for n in &self.notes {
            out += &format!("case\t{}\tnote\t{n}\n", self.id);
        }
        out += &format!("case\t{}\tstatus\t{}\n", self.id, if self.pass() { "pass" } else { "fail" });
        out
    }
}
