//! Acceptance criteria, one line each.

use std::io::Write;

use binmat::catalog::Catalog;
use binmat::verify::{run_many, CheckResult, Report};
use serde_json::Value;

struct Criterion {
    number: usize,
    title: &'static str,
    checks: &'static [&'static str],
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        title: "simple extension DAG from P9 to PG(3,2)",
        checks: &["table-1a"],
    },
    Criterion {
        number: 2,
        title: "cosimple coextensions of P9",
        checks: &["table-1b"],
    },
    Criterion {
        number: 3,
        title: "circuit-cocircuits and self-duality",
        checks: &["claim-2"],
    },
    Criterion {
        number: 4,
        title: "3-connected extensions of E5 and their minors",
        checks: &["table-2a"],
    },
    Criterion {
        number: 5,
        title: "extensions of K5\\e and the prism, with element maps",
        checks: &["table-3a", "table-3b", "bijections"],
    },
    Criterion {
        number: 6,
        title: "3-connected coextensions of D1 and D2",
        checks: &["table-4", "claim-7"],
    },
    Criterion {
        number: 7,
        title: "prism-free chain from E5 to R17",
        checks: &["table-5"],
    },
    Criterion {
        number: 8,
        title: "R17 extremality",
        checks: &["r17-extremal"],
    },
    Criterion {
        number: 9,
        title: "coextensions of A, B, C, Z, X1, X3 and the E4 witnesses",
        checks: &[
            "A1-partition-A",
            "A1-partition-B",
            "A1-partition-C",
            "A1-partition-Z",
            "A2-partition-X1",
            "A2-partition-X3",
            "claim-5",
        ],
    },
    Criterion {
        number: 10,
        title: "Z_r families have no M(W4)-minor",
        checks: &["family-properties"],
    },
    Criterion {
        number: 11,
        title: "internal 4-connectivity of R17 and PG(3,2) restrictions",
        checks: &["corollary-3.1"],
    },
    Criterion {
        number: 12,
        title: "property suite on catalog matroids",
        checks: &["properties"],
    },
];

fn line(s: &str) {
    // Written past the test harness capture so the lines always show.
    let mut out = std::io::stdout().lock();
    writeln!(out, "{s}").unwrap();
    out.flush().unwrap();
}

fn result<'a>(report: &'a Report, id: &str) -> &'a CheckResult {
    report.results.iter().find(|r| r.check_id == id).unwrap()
}

fn names(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn acceptance_criteria() {
    let cat = Catalog::load().expect("catalog loads");
    let ids: Vec<&str> = CRITERIA
        .iter()
        .flat_map(|c| c.checks.iter().copied())
        .collect();
    let report = run_many(&cat, &ids, 0);

    let mut unexpected = Vec::new();
    for c in CRITERIA {
        let failed: Vec<&str> = c
            .checks
            .iter()
            .copied()
            .filter(|id| !result(&report, id).passed())
            .collect();
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        let note = if failed.is_empty() {
            String::new()
        } else {
            format!(" (failing: {})", failed.join(", "))
        };
        line(&format!(
            "criterion {:>2}: {status} {}{note}",
            c.number, c.title
        ));
        if !failed.is_empty() && c.number != 11 {
            unexpected.push(c.number);
        }
    }

    // Criterion 11 cannot pass as stated. The computed set of chain members
    // that are not internally 4-connected is {C, G, K} rather than {B, G, K},
    // and D3 also fails among the PG(3,2) restrictions.
    let cor = result(&report, "corollary-3.1");
    assert!(!cor.passed());
    let groups = cor.details["groups"].as_array().unwrap();
    assert_eq!(names(&groups[0]["only_computed"]), ["C"]);
    assert_eq!(names(&groups[0]["only_stated"]), ["B"]);
    assert_eq!(names(&groups[1]["only_computed"]), ["D3"]);
    assert!(names(&groups[1]["only_stated"]).is_empty());

    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}
