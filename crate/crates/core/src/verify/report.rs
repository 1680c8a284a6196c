//! Check records and report serialization (JSON, CSV, plain table).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::ExactRational;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Note marking a printed example value that disagrees with the computed one.
pub const NOTE_DISCREPANCY: &str = "paper-example-discrepancy";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "=")]
    Equal,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::Equal => "=",
        }
    }

    pub fn holds(self, lhs: &ExactRational, rhs: &ExactRational) -> bool {
        match self {
            Relation::AtMost => lhs <= rhs,
            Relation::Equal => lhs == rhs,
        }
    }
}

/// One evaluated (or skipped) statement instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub relation: Relation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<ExactRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_decimal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<ExactRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_decimal: Option<String>,
    pub holds: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
}

type SortKey<'a> = (
    &'a str,
    &'a str,
    &'a Option<Vec<usize>>,
    &'a Option<Vec<usize>>,
    Option<usize>,
    &'a Option<String>,
);

impl CheckRecord {
    pub fn compare(
        id: &str,
        group: &str,
        relation: Relation,
        lhs: ExactRational,
        rhs: ExactRational,
    ) -> Self {
        let holds = relation.holds(&lhs, &rhs);
        CheckRecord {
            id: id.to_string(),
            group: group.to_string(),
            subgroup: None,
            normal: None,
            n: None,
            relation,
            lhs_decimal: Some(lhs.to_decimal(3)),
            rhs_decimal: Some(rhs.to_decimal(3)),
            lhs: Some(lhs),
            rhs: Some(rhs),
            holds,
            skipped: false,
            note: None,
            witness: None,
        }
    }

    /// A record for an instance that could not be evaluated within limits.
    pub fn skipped(id: &str, group: &str, reason: impl Into<String>) -> Self {
        CheckRecord {
            id: id.to_string(),
            group: group.to_string(),
            subgroup: None,
            normal: None,
            n: None,
            relation: Relation::AtMost,
            lhs: None,
            lhs_decimal: None,
            rhs: None,
            rhs_decimal: None,
            holds: false,
            skipped: true,
            note: Some("limit".into()),
            witness: Some(BTreeMap::from([("reason".to_string(), reason.into())])),
        }
    }

    pub fn is_flagged(&self) -> bool {
        self.note.as_deref() == Some(NOTE_DISCREPANCY)
    }

    /// Evaluated, not flagged, and false.
    pub fn is_violation(&self) -> bool {
        !self.skipped && !self.holds && !self.is_flagged()
    }

    fn sort_key(&self) -> SortKey<'_> {
        (
            &self.id,
            &self.group,
            &self.subgroup,
            &self.normal,
            self.n,
            &self.note,
        )
    }
}

impl PartialOrd for CheckRecord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CheckRecord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.lhs.cmp(&other.lhs))
            .then_with(|| self.rhs.cmp(&other.rhs))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub flagged: usize,
}

/// The configuration echoed into a report. Worker count and output
/// location are deliberately absent so reports compare equal across them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportConfig {
    pub max_order: usize,
    pub max_cosets: usize,
    pub n_range: String,
    pub theorems: Vec<String>,
    pub corpus: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub config: ReportConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

const CSV_FIELDS: [&str; 14] = [
    "id",
    "group",
    "subgroup",
    "normal",
    "n",
    "relation",
    "lhs",
    "lhs_decimal",
    "rhs",
    "rhs_decimal",
    "holds",
    "skipped",
    "note",
    "witness",
];

impl VerificationReport {
    pub fn new(config: ReportConfig, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort();
        let mut summary = Summary::default();
        for c in &checks {
            if c.skipped {
                summary.skipped += 1;
            } else if c.is_flagged() {
                summary.flagged += 1;
            } else if c.holds {
                summary.pass += 1;
            } else {
                summary.fail += 1;
            }
        }
        VerificationReport {
            version: TOOL_VERSION.to_string(),
            config,
            checks,
            summary,
        }
    }

    pub fn violations(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.is_violation())
    }

    pub fn flagged(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.is_flagged())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Internal(format!("report serialization failed: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    /// One row per check, same field names as the JSON records. Element
    /// lists are space-separated; witnesses are `key=value` joined by `;`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Internal(format!("csv serialization failed: {e}"));
        w.write_record(CSV_FIELDS).map_err(io)?;
        for c in &self.checks {
            w.write_record(row(c)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    /// Human-readable listing followed by the summary line.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.skipped {
                "SKIP"
            } else if c.is_flagged() {
                "FLAG"
            } else if c.holds {
                "ok"
            } else {
                "FAIL"
            };
            let r = row(c);
            let _ = writeln!(
                out,
                "{status:<4} {:<13} {:<9} H={:<24} N={:<12} n={:<2} {} {} {} {}",
                r[0], r[1], r[2], r[3], r[4], r[7], r[5], r[9], r[12]
            );
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "pass {}  fail {}  skipped {}  flagged {}",
            s.pass, s.fail, s.skipped, s.flagged
        );
        out
    }
}

fn join(v: &Option<Vec<usize>>) -> String {
    v.as_ref()
        .map(|xs| {
            xs.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

fn row(c: &CheckRecord) -> Vec<String> {
    let opt = |r: &Option<ExactRational>| r.as_ref().map(ToString::to_string).unwrap_or_default();
    vec![
        c.id.clone(),
        c.group.clone(),
        join(&c.subgroup),
        join(&c.normal),
        c.n.map(|n| n.to_string()).unwrap_or_default(),
        c.relation.as_str().to_string(),
        opt(&c.lhs),
        c.lhs_decimal.clone().unwrap_or_default(),
        opt(&c.rhs),
        c.rhs_decimal.clone().unwrap_or_default(),
        c.holds.to_string(),
        c.skipped.to_string(),
        c.note.clone().unwrap_or_default(),
        c.witness
            .as_ref()
            .map(|w| {
                w.iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .unwrap_or_default(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    fn sample() -> VerificationReport {
        let mut flagged =
            CheckRecord::compare("ex-3.3", "D8", Relation::Equal, r(1, 1), r(192, 2048));
        flagged.note = Some(NOTE_DISCREPANCY.into());
        let checks = vec![
            CheckRecord::compare("thm-2.2", "S3", Relation::AtMost, r(1, 2), r(1, 1)),
            CheckRecord::compare("thm-2.6", "C2", Relation::AtMost, r(3, 4), r(5, 8)),
            CheckRecord::skipped("thm-2.2", "S4", "tensor square too large"),
            flagged,
        ];
        let config = ReportConfig {
            max_order: 16,
            max_cosets: 10,
            n_range: "1..4".into(),
            theorems: vec![],
            corpus: vec![],
        };
        VerificationReport::new(config, checks)
    }

    #[test]
    fn summary_counts() {
        let rep = sample();
        assert_eq!(
            rep.summary,
            Summary {
                pass: 1,
                fail: 1,
                skipped: 1,
                flagged: 1
            }
        );
        assert_eq!(rep.violations().count(), 1);
        assert_eq!(rep.checks[0].id, "ex-3.3");
    }

    #[test]
    fn json_fields() {
        let v: serde_json::Value = serde_json::from_str(&sample().to_json().unwrap()).unwrap();
        let first = &v["checks"][0];
        assert_eq!(first["lhs"], "1/1");
        assert_eq!(first["rhs"], "3/32");
        assert_eq!(first["rhs_decimal"], "0.094");
        assert_eq!(first["note"], NOTE_DISCREPANCY);
        assert!(first.get("skipped").is_none());
        assert_eq!(v["summary"]["flagged"], 1);
    }

    #[test]
    fn csv_has_one_row_per_check() {
        let rep = sample();
        let text = rep.to_csv().unwrap();
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let headers: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
        assert_eq!(headers[0], "id");
        assert!(headers.contains(&"lhs_decimal".to_string()));
        assert_eq!(rd.records().count(), rep.checks.len());
        assert_eq!(rep.to_table().lines().count(), rep.checks.len() + 1);
    }
}
