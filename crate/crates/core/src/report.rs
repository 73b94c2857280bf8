//! Line-oriented check reports with a JSON twin.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub detail: String,
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub pass: bool,
    pub title: String,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            checks: Vec::new(),
            pass: true,
            title: title.into(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.pass &= pass;
        self.checks.push(Check {
            detail: detail.into(),
            name: name.into(),
            pass,
        });
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.check(format!("{}/{}", other.title, c.name), c.pass, c.detail);
        }
    }

    /// `CHECK <name>: PASS|FAIL <detail>` per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "CHECK {}: {} {}\n",
                c.name,
                if c.pass { "PASS" } else { "FAIL" },
                c.detail
            ));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json() {
        let mut r = Report::new("demo");
        r.check("a", true, "ok");
        r.check("b", false, "bad");
        assert!(!r.pass);
        assert_eq!(r.to_text(), "CHECK a: PASS ok\nCHECK b: FAIL bad\n");
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][1]["pass"], false);
    }
}
