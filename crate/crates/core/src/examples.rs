//! Named example groups and their expected classification.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::lie_data::CartanType;
use crate::number_field::{parse_profile, NumberFieldProfile};
use crate::solitude::{solitude_verdict, CspPolicy, Outcome};

const BUILTIN: &str = include_str!("../data/examples.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    SolitaryOrNgr,
    NotSolitary,
}

impl Expected {
    pub fn matches(self, o: &Outcome) -> bool {
        matches!(
            (self, o),
            (
                Expected::SolitaryOrNgr,
                Outcome::SolitaryOrNotGrothendieckRigid
            ) | (Expected::NotSolitary, Outcome::NotSolitary { .. })
        )
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::SolitaryOrNgr => "solitary_or_ngr",
            Expected::NotSolitary => "not_solitary",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedExample {
    pub display_name: String,
    pub cartan_type: CartanType,
    pub field: NumberFieldProfile,
    pub expected: Expected,
}

/// Parses `name;type;profile;expected` records. Blank lines and `#`
/// comments are skipped.
pub fn parse_examples(text: &str) -> Result<Vec<NamedExample>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::MalformedTable {
            line: i + 1,
            reason,
        };
        let parts: Vec<&str> = line.split(';').map(str::trim).collect();
        let [name, ty, profile, expected] = parts[..] else {
            return Err(bad(format!("expected 4 fields, found {}", parts.len())));
        };
        let expected = match expected {
            "solitary_or_ngr" => Expected::SolitaryOrNgr,
            "not_solitary" => Expected::NotSolitary,
            other => return Err(bad(format!("unknown expectation '{other}'"))),
        };
        out.push(NamedExample {
            display_name: name.to_string(),
            cartan_type: ty.parse().map_err(|e: Error| bad(e.to_string()))?,
            field: parse_profile(profile).map_err(|e| bad(e.to_string()))?,
            expected,
        });
    }
    Ok(out)
}

pub fn builtin_examples() -> Vec<NamedExample> {
    parse_examples(BUILTIN).expect("bundled example fixture parses")
}

pub fn load_examples(path: &Path) -> Result<Vec<NamedExample>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::MalformedTable {
        line: 0,
        reason: format!("{}: {e}", path.display()),
    })?;
    parse_examples(&text)
}

#[derive(Debug, Clone)]
pub struct ExampleResult {
    pub example: NamedExample,
    pub outcome: Outcome,
    pub pass: bool,
}

pub fn run_examples(examples: &[NamedExample], policy: CspPolicy) -> Vec<ExampleResult> {
    examples
        .iter()
        .map(|e| {
            let outcome = solitude_verdict(e.cartan_type, &e.field, policy).outcome;
            ExampleResult {
                pass: e.expected.matches(&outcome),
                example: e.clone(),
                outcome,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_lists_pass() {
        let ex = builtin_examples();
        assert_eq!(
            ex.iter()
                .filter(|e| e.expected == Expected::SolitaryOrNgr)
                .count(),
            14
        );
        assert_eq!(
            ex.iter()
                .filter(|e| e.expected == Expected::NotSolitary)
                .count(),
            15
        );
        for r in run_examples(&ex, CspPolicy::default()) {
            assert!(
                r.pass,
                "{} gave {}",
                r.example.display_name,
                r.outcome.shape()
            );
        }
    }

    #[test]
    fn malformed_lines_report_line_number() {
        let err = parse_examples("# c\nSL_3(Z);A_2;deg=1,r1=1,r2=0\n").unwrap_err();
        assert!(matches!(err, Error::MalformedTable { line: 2, .. }));
        assert!(parse_examples("x;A_2;deg=1,r1=1,r2=0;maybe").is_err());
    }
}
