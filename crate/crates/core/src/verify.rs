//! Registry of reproducible checks.
//!
//! Each check recomputes one table or claim and compares it with the values
//! transcribed under `fixtures/tables`. Partitions are compared in full:
//! every class as a set of vectors, and every named class by isomorphism
//! with the catalog entry of that name.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::catalog::{build_z, Catalog, CatalogError, Family};
use crate::connect::{is_internally_4_connected, lambda_mask, non_minimal_exact_3_separation};
use crate::enumerate::{
    coextend_by, coextension_row_types, coextensions, extend_by, extensions, grow_3connected,
    has_minor, minor_is, EnumerateError, RowTypes,
};
use crate::gf2::{format_vector, parse_vector};
use crate::iso::{canonical_form, is_isomorphic, verify_map, CanonicalForm};
use crate::matroid::{BinaryMatroid, ElementSet, Label, MatroidError};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("fixture: {0}")]
    Fixture(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    pub details: Value,
    /// Seconds.
    pub runtime: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Outcome of a run over several checks.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub passed: usize,
    pub failed: usize,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Pretty JSON. With `runtimes = false` the runtime fields are zeroed so
    /// that reports from different runs compare byte for byte.
    pub fn to_json(&self, runtimes: bool) -> String {
        let mut r = self.clone();
        if !runtimes {
            for c in &mut r.results {
                c.runtime = 0.0;
            }
        }
        serde_json::to_string_pretty(&r).expect("report serializes")
    }
}

const PARTITION_CHECKS: &[(&str, &str)] = &[
    ("table-1a", "tables/table_1a.toml"),
    ("table-1b", "tables/table_1b.toml"),
    ("table-2a", "tables/table_2a.toml"),
    ("table-3a", "tables/table_3a.toml"),
    ("table-3b", "tables/table_3b.toml"),
    ("table-4", "tables/table_4.toml"),
];

/// Every registered check id, in report order.
pub fn check_ids() -> Vec<&'static str> {
    vec![
        "table-1a",
        "table-1b",
        "claim-2",
        "table-2a",
        "table-3a",
        "table-3b",
        "bijections",
        "table-4",
        "claim-7",
        "table-5",
        "r17-extremal",
        "A1-partition-A",
        "A1-partition-B",
        "A1-partition-C",
        "A1-partition-Z",
        "A2-partition-X1",
        "A2-partition-X3",
        "claim-5",
        "family-properties",
        "corollary-3.1",
        "properties",
    ]
}

/// Runs one check against the catalog (and the catalog's fixtures).
pub fn run_check(cat: &Catalog, id: &str) -> Result<CheckResult, VerifyError> {
    let start = Instant::now();
    let (ok, details) = match id {
        "claim-2" => claim_2(cat)?,
        "bijections" => bijections(cat)?,
        "claim-7" => claim_7(cat)?,
        "table-5" => table_5(cat)?,
        "r17-extremal" => r17_extremal(cat)?,
        "claim-5" => claim_5(cat)?,
        "family-properties" => family_properties(cat)?,
        "corollary-3.1" => corollary(cat)?,
        "properties" => properties(cat)?,
        _ => {
            if let Some(&(_, file)) = PARTITION_CHECKS.iter().find(|(c, _)| *c == id) {
                partition_table(cat, file, None)?
            } else if let Some(p) = id.strip_prefix("A1-partition-") {
                appendix(cat, "tables/table_a1.toml", p)?
            } else if let Some(p) = id.strip_prefix("A2-partition-") {
                appendix(cat, "tables/table_a2.toml", p)?
            } else {
                return Err(VerifyError::UnknownCheck(id.into()));
            }
        }
    };
    Ok(CheckResult {
        check_id: id.into(),
        status: if ok { Status::Pass } else { Status::Fail },
        details,
        runtime: start.elapsed().as_secs_f64(),
    })
}

/// Runs the given checks on `jobs` threads (0 = rayon default). A check
/// that errors is reported as a failure carrying the error.
pub fn run_many(cat: &Catalog, ids: &[&str], jobs: usize) -> Report {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let results: Vec<CheckResult> = pool.install(|| {
        ids.par_iter()
            .map(|id| {
                let start = Instant::now();
                run_check(cat, id).unwrap_or_else(|e| CheckResult {
                    check_id: id.to_string(),
                    status: Status::Fail,
                    details: json!({ "error": e.to_string() }),
                    runtime: start.elapsed().as_secs_f64(),
                })
            })
            .collect()
    });
    let passed = results.iter().filter(|r| r.passed()).count();
    Report {
        schema: SCHEMA,
        passed,
        failed: results.len() - passed,
        results,
    }
}

pub fn run_all(cat: &Catalog, jobs: usize) -> Report {
    run_many(cat, &check_ids(), jobs)
}

// ---------------------------------------------------------------------------
// Partition tables

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    kind: String,
    #[serde(default)]
    pool: Vec<String>,
    block: Vec<Block>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Block {
    parent: String,
    #[serde(default)]
    class: Vec<ClassSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassSpec {
    name: Option<String>,
    label: Option<String>,
    vectors: Vec<String>,
    #[serde(default)]
    minors: Vec<String>,
    /// The printed list where it disagrees with `minors`.
    #[serde(default)]
    printed_minors: Vec<String>,
    #[serde(default)]
    contraction_minors: Vec<String>,
    #[serde(default)]
    deletion_minors: Vec<String>,
}

/// How the candidates of a table are generated.
fn table_mode(file: &str) -> (bool, bool) {
    // (simple or cosimple, 3-connected)
    match file {
        "tables/table_1a.toml" | "tables/table_1b.toml" => (true, false),
        _ => (true, true),
    }
}

struct Computed {
    vectors: BTreeSet<String>,
    representative: BinaryMatroid,
    fingerprint: CanonicalForm,
}

fn computed_classes(
    kind: &str,
    parent: &BinaryMatroid,
    file: &str,
    pool: &[String],
) -> Result<Vec<Computed>, VerifyError> {
    let (simple, conn3) = table_mode(file);
    let classes = match kind {
        "extension" if !pool.is_empty() => return pool_classes(parent, pool),
        "extension" => extensions(parent, simple, conn3)?,
        "coextension" => coextensions(parent, simple, conn3)?,
        other => {
            return Err(VerifyError::Fixture(format!(
                "unknown table kind {other:?}"
            )))
        }
    };
    Ok(classes
        .into_iter()
        .map(|c| Computed {
            vectors: c.vector_strings().into_iter().collect(),
            representative: c.representative,
            fingerprint: c.fingerprint,
        })
        .collect())
}

/// Extensions of `parent` by the pool columns it lacks, grouped by
/// isomorphism.
fn pool_classes(parent: &BinaryMatroid, pool: &[String]) -> Result<Vec<Computed>, VerifyError> {
    let have: BTreeSet<u64> = parent.columns().iter().copied().collect();
    let mut out: Vec<Computed> = Vec::new();
    for s in pool {
        let v = vector(s)?;
        if have.contains(&v) {
            continue;
        }
        let m = extend_by(parent, v)?;
        let f = canonical_form(&m).map_err(EnumerateError::from)?;
        match out.iter_mut().find(|c| c.fingerprint == f) {
            Some(c) => {
                c.vectors.insert(s.clone());
            }
            None => out.push(Computed {
                vectors: [s.clone()].into(),
                representative: m,
                fingerprint: f,
            }),
        }
    }
    Ok(out)
}

fn vector(s: &str) -> Result<u64, VerifyError> {
    parse_vector(s).map_err(|c| VerifyError::Fixture(format!("bad character {c:?} in {s}")))
}

fn has_contraction_minor(m: &BinaryMatroid, x: &BinaryMatroid) -> bool {
    x.rank() <= m.rank() && x.len() + (m.rank() - x.rank()) == m.len() && has_minor(m, x).is_some()
}

fn has_deletion_minor(m: &BinaryMatroid, x: &BinaryMatroid) -> bool {
    x.rank() == m.rank() && has_minor(m, x).is_some()
}

/// Compares one block; returns (ok, details).
fn compare_block(
    cat: &Catalog,
    block: &Block,
    computed: &[Computed],
) -> Result<(bool, Value), VerifyError> {
    let expected: Vec<BTreeSet<String>> = block
        .class
        .iter()
        .map(|c| c.vectors.iter().cloned().collect())
        .collect();
    let got: Vec<&BTreeSet<String>> = computed.iter().map(|c| &c.vectors).collect();
    let missing: Vec<&BTreeSet<String>> = expected.iter().filter(|e| !got.contains(e)).collect();
    let unexpected: Vec<&BTreeSet<String>> = got
        .iter()
        .copied()
        .filter(|g| !expected.contains(g))
        .collect();
    let mut problems: Vec<Value> = Vec::new();
    let mut errata: Vec<Value> = Vec::new();
    for (spec, exp) in block.class.iter().zip(&expected) {
        let Some(c) = computed.iter().find(|c| &c.vectors == exp) else {
            continue;
        };
        let tag = spec
            .name
            .clone()
            .or(spec.label.clone())
            .unwrap_or_else(|| exp.iter().next().cloned().unwrap_or_default());
        if let Some(name) = &spec.name {
            if is_isomorphic(&c.representative, cat.matroid(name)?).is_none() {
                problems.push(json!({ "class": tag, "not_isomorphic_to": name }));
            }
        }
        for x in &spec.minors {
            if has_minor(&c.representative, cat.matroid(x)?).is_none() {
                problems.push(json!({ "class": tag, "missing_minor": x }));
            }
        }
        // A printed minor dropped from `minors` must really be absent.
        for x in spec
            .printed_minors
            .iter()
            .filter(|x| !spec.minors.contains(x))
        {
            let present = has_minor(&c.representative, cat.matroid(x)?).is_some();
            if present {
                problems.push(json!({ "class": tag, "printed_minor_present": x }));
            } else {
                errata.push(json!({ "class": tag, "printed_minor_absent": x }));
            }
        }
        for x in &spec.contraction_minors {
            if !has_contraction_minor(&c.representative, cat.matroid(x)?) {
                problems.push(json!({ "class": tag, "missing_contraction_minor": x }));
            }
        }
        for x in &spec.deletion_minors {
            if !has_deletion_minor(&c.representative, cat.matroid(x)?) {
                problems.push(json!({ "class": tag, "missing_deletion_minor": x }));
            }
        }
    }
    let ok = missing.is_empty() && unexpected.is_empty() && problems.is_empty();
    let classes: Vec<Value> = computed
        .iter()
        .map(|c| json!({ "vectors": c.vectors, "fingerprint": c.fingerprint.to_hex() }))
        .collect();
    Ok((
        ok,
        json!({
            "parent": block.parent,
            "classes": classes,
            "missing": missing,
            "unexpected": unexpected,
            "problems": problems,
            "errata": errata,
        }),
    ))
}

/// Checks every block of a table, or only the block whose parent is `only`.
fn partition_table(
    cat: &Catalog,
    file: &str,
    only: Option<&str>,
) -> Result<(bool, Value), VerifyError> {
    let table: TableFile = cat.fixtures().toml(file)?;
    let blocks: Vec<&Block> = table
        .block
        .iter()
        .filter(|b| only.is_none_or(|p| b.parent == p))
        .collect();
    if blocks.is_empty() {
        return Err(VerifyError::Fixture(format!(
            "{file}: no block for {only:?}"
        )));
    }
    let outcomes: Vec<(bool, Value)> = blocks
        .par_iter()
        .map(|b| {
            let parent = cat.matroid(&b.parent)?;
            let computed = computed_classes(&table.kind, parent, file, &table.pool)?;
            compare_block(cat, b, &computed)
        })
        .collect::<Result<_, VerifyError>>()?;
    let ok = outcomes.iter().all(|(o, _)| *o);
    let blocks: Vec<Value> = outcomes.into_iter().map(|(_, v)| v).collect();
    Ok((ok, json!({ "blocks": blocks })))
}

fn appendix(cat: &Catalog, file: &str, parent: &str) -> Result<(bool, Value), VerifyError> {
    let table: TableFile = cat.fixtures().toml(file)?;
    if !table.block.iter().any(|b| b.parent == parent) {
        return Err(VerifyError::UnknownCheck(format!(
            "{file} has no block {parent}"
        )));
    }
    partition_table(cat, file, Some(parent))
}

// ---------------------------------------------------------------------------
// Claims

fn set(labels: &[usize]) -> ElementSet {
    ElementSet::from_ints(labels.iter().copied())
}

fn claim_2(cat: &Catalog) -> Result<(bool, Value), VerifyError> {
    let mut rows = Vec::new();
    let mut ok = true;
    let mut circ_cocirc = |name: &str, s: &[usize]| -> Result<(), VerifyError> {
        let m = cat.matroid(name)?;
        let e = set(s);
        let v = m.is_circuit(&e)? && m.is_cocircuit(&e)?;
        ok &= v;
        rows.push(json!({ "matroid": name, "set": s, "circuit_and_cocircuit": v }));
        Ok(())
    };
    for n in ["P9", "D1", "D3"] {
        circ_cocirc(n, &[1, 2, 5, 6])?;
    }
    for n in ["E1", "E2", "E3", "E6", "E6star", "E7"] {
        circ_cocirc(n, &[1, 2, 6, 7])?;
    }
    let d2 = is_internally_4_connected(cat.matroid("D2")?);
    ok &= d2;
    rows.push(json!({ "matroid": "D2", "internally_4_connected": d2 }));
    for n in ["E4", "E5"] {
        let m = cat.matroid(n)?;
        let sd = is_isomorphic(m, &m.dual()).is_some();
        ok &= sd;
        rows.push(json!({ "matroid": n, "self_dual": sd }));
    }
    Ok((ok, json!({ "rows": rows })))
}

#[derive(Debug, Deserialize)]
struct BijectionFile {
    bijection: Vec<Bijection>,
}

#[derive(Debug, Deserialize)]
struct Bijection {
    id: String,
    from: String,
    to: String,
    images: Vec<usize>,
}

fn bijections(cat: &Catalog) -> Result<(bool, Value), VerifyError> {
    let file: BijectionFile = cat.fixtures().toml("tables/bijections.toml")?;
    let mut ok = true;
    let mut rows = Vec::new();
    for b in &file.bijection {
        let m = cat.matroid(&b.from)?;
        let n = cat.matroid(&b.to)?;
        let map: BTreeMap<Label, Label> = b
            .images
            .iter()
            .enumerate()
            .map(|(i, &j)| (Label::from(i + 1), Label::from(j)))
            .collect();
        let v = verify_map(m, n, &map).unwrap_or(false);
        ok &= v;
        rows.push(json!({ "id": b.id, "from": b.from, "to": b.to, "verified": v }));
    }
    Ok((ok, json!({ "bijections": rows })))
}

/// Coextensions of D2: only A, B, C and Z lack an E4-minor.
fn claim_7(cat: &Catalog) -> Result<(bool, Value), VerifyError> {
    let e4 = cat.matroid("E4")?;
    let special: Vec<&BinaryMatroid> = ["A", "B", "C", "Z"]
        .iter()
        .map(|n| cat.matroid(n))
        .collect::<Result<_, _>>()?;
    let classes = coextensions(cat.matroid("D2_table4")?, true, true)?;
    let rows: Vec<(bool, bool, Value)> = classes
        .par_iter()
        .map(|c| {
            let is_special = special
                .iter()
                .any(|s| is_isomorphic(&c.representative, s).is_some());
            let e4_minor = has_minor(&c.representative, e4).is_some();
            let v = json!({
                "first_row": format_vector(c.vectors[0], c.width),
                "one_of_ABCZ": is_special,
                "e4_minor": e4_minor,
            });
            (is_special, e4_minor, v)
        })
        .collect();
    let n_special = rows.iter().filter(|r| r.0).count();
    let ok = n_special == 4 && rows.iter().all(|(s, e, _)| *s || *e);
    Ok((
        ok,
        json!({ "classes": rows.into_iter().map(|r| r.2).collect::<Vec<_>>() }),
    ))
}

fn table_5(cat: &Catalog) -> Result<(bool, Value), VerifyError> {
    let (mut ok, partition) = partition_table(cat, "tables/table_5.toml", None)?;
    // Growth from E5 avoiding the prism reaches exactly E5 and the chain.
    let table: TableFile = cat.fixtures().toml("tables/table_5.toml")?;
    let mut names: BTreeSet<String> = ["E5".to_string()].into();
    for b in &table.block {
        names.insert(b.parent.clone());
        names.extend(b.class.iter().filter_map(|c| c.name.clone()));
    }
    let expected: BTreeMap<CanonicalForm, String> = names
        .iter()
        .map(|n| {
            Ok((
                canonical_form(cat.matroid(n)?).map_err(EnumerateError::from)?,
                n.clone(),
            ))
        })
        .collect::<Result<_, VerifyError>>()?;
    let prism = cat.matroid("prism")?.clone();
    let growth = grow_3connected(cat.matroid("E5")?, 5, 18, &[prism])?;
    let mut reached = BTreeSet::new();
    let mut outside = Vec::new();
    for (chain, f) in growth.chains.iter().zip(&growth.fingerprints) {
        match expected.get(f) {
            Some(n) => {
                reached.insert(n.clone());
            }
            None => outside.push(json!({ "size": chain.last().len(), "fingerprint": f.to_hex() })),
        }
    }
    let unreached: Vec<&String> = names.iter().filter(|n| !reached.contains(*n)).collect();
    let largest = growth
        .chains
        .iter()
        .map(|c| c.last().len())
        .max()
        .unwrap_or(0);
    ok &= outside.is_empty() && unreached.is_empty() && largest == 17;
    Ok((
        ok,
        json!({
            "partition": partition,
            "growth": {
                "classes": growth.chains.len(),
                "largest": largest,
                "outside_chain": outside,
                "unreached": unreached,
            },
        }),
    ))
}

fn r17_extremal(cat: &Catalog) -> Result<(bool, Value), VerifyError> {
    let r17 = cat.matroid("R17")?;
    let prism = cat.matroid("prism")?;
    let own = has_minor(r17, prism);
    let classes = extensions(r17, true, true)?;
    let rows: Vec<(bool, Value)> = classes
        .par_iter()
        .map(|c| {
            let w = has_minor(&c.representative, prism);
            let v = json!({
                "vectors": c.vector_strings(),
                "prism_minor": w.as_ref().map(|w| json!({
                    "contract": w.contract_set.to_string(),
                    "delete": w.delete_set.to_string(),
                })),
            });
            (w.is_some(), v)
        })
        .collect();
    let ok = own.is_none() && !rows.is_empty() && rows.iter().all(|r| r.0);
    Ok((
        ok,
        json!({
            "r17_has_prism_minor": own.is_some(),
            "extensions": rows.into_iter().map(|r| r.1).collect::<Vec<_>>(),
        }),
    ))
}

#[derive(Debug, Deserialize)]
struct Claim5File {
    rows: Vec<RowSpec>,
    witness: Vec<WitnessSpec>,
}

#[derive(Debug, Deserialize)]
struct RowSpec {
    parent: String,
    type_ii: Vec<String>,
    type_iii: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct WitnessSpec {
    parent: String,
    row: String,
    contract: Vec<usize>,
    delete: Vec<usize>,
    target: String,
}

fn claim_5(cat: &Catalog) -> Result<(bool, Value), VerifyError> {
    let file: Claim5File = cat.fixtures().toml("tables/claim_5.toml")?;
    let mut ok = true;
    let mut rows = Vec::new();
    for r in &file.rows {
        let t = coextension_row_types(cat.matroid(&r.parent)?, &[])?;
        let ii = RowTypes::strings(&t.type_ii, t.width);
        let iii = RowTypes::strings(&t.type_iii, t.width);
        let v = ii == r.type_ii && iii == r.type_iii;
        ok &= v;
        rows.push(json!({ "parent": r.parent, "type_ii": ii, "type_iii": iii, "match": v }));
    }
    let mut witnesses = Vec::new();
    for w in &file.witness {
        let m = coextend_by(cat.matroid(&w.parent)?, vector(&w.row)?)?.relabel_positional();
        let found = minor_is(
            &m,
            &set(&w.contract),
            &set(&w.delete),
            cat.matroid(&w.target)?,
        )?;
        ok &= found.is_some();
        witnesses.push(json!({
            "parent": w.parent,
            "row": w.row,
            "contract": w.contract,
            "delete": w.delete,
            "target": w.target,
            "holds": found.is_some(),
        }));
    }
    Ok((ok, json!({ "rows": rows, "witnesses": witnesses })))
}

fn family_properties(cat: &Catalog) -> Result<(bool, Value), VerifyError> {
    let w4 = crate::catalog::build_family(Family::Wheel(4))?;
    let prism = cat.matroid("prism")?;
    let prism_dual = prism.dual();
    let mut ok = true;
    let mut rows = Vec::new();
    for r in 4..=6 {
        let z = build_z(r)?;
        let del = |l: String| z.delete(&[Label::new(l)].into_iter().collect());
        let members = [
            (format!("Z{r}"), z.clone()),
            (format!("Z{r}*"), z.dual()),
            (format!("Z{r}\\b{r}"), del(format!("b{r}"))?),
            (format!("Z{r}\\c{r}"), del(format!("c{r}"))?),
        ];
        for (name, m) in members {
            let [a, b, c] = [&w4, prism, &prism_dual].map(|x| has_minor(&m, x).is_some());
            ok &= !(a || b || c);
            rows.push(
                json!({ "matroid": name, "w4_minor": a, "prism_minor": b, "prism_dual_minor": c }),
            );
        }
    }
    let z4 = build_z(4)?;
    let del = |l: &str| z4.delete(&[Label::new(l)].into_iter().collect());
    let ag = is_isomorphic(&del("c4")?, cat.matroid("AG32")?).is_some();
    let s8 = is_isomorphic(&del("b4")?, cat.matroid("S8")?).is_some();
    ok &= ag && s8;
    Ok((
        ok,
        json!({ "rows": rows, "Z4\\c4 = AG32": ag, "Z4\\b4 = S8": s8 }),
    ))
}

#[derive(Debug, Deserialize)]
struct CorollaryFile {
    group: Vec<CorollaryGroup>,
}

#[derive(Debug, Deserialize)]
struct CorollaryGroup {
    id: String,
    members: Vec<String>,
    stated_not_i4c: Vec<String>,
}

fn corollary(cat: &Catalog) -> Result<(bool, Value), VerifyError> {
    let file: CorollaryFile = cat.fixtures().toml("tables/corollary_3_1.toml")?;
    let mut ok = true;
    let mut groups = Vec::new();
    for g in &file.group {
        let mut computed = Vec::new();
        let mut separations = Vec::new();
        for n in &g.members {
            let m = cat.matroid(n)?;
            if !is_internally_4_connected(m) {
                computed.push(n.clone());
                let sep = non_minimal_exact_3_separation(m).map(|s| s.side_a.to_string());
                separations.push(json!({ "matroid": n, "separation": sep }));
            }
        }
        let stated: BTreeSet<&String> = g.stated_not_i4c.iter().collect();
        let got: BTreeSet<&String> = computed.iter().collect();
        let v = stated == got;
        ok &= v;
        groups.push(json!({
            "group": g.id,
            "stated_not_i4c": g.stated_not_i4c,
            "computed_not_i4c": computed,
            "only_stated": stated.difference(&got).collect::<Vec<_>>(),
            "only_computed": got.difference(&stated).collect::<Vec<_>>(),
            "witnesses": separations,
        }));
    }
    Ok((ok, json!({ "groups": groups })))
}

// ---------------------------------------------------------------------------
// Property suite

/// Exhaustive isomorphism search over bijections, pruned by comparing the
/// rank of every subset of the elements placed so far.
fn brute_force_isomorphic(m: &BinaryMatroid, n: &BinaryMatroid) -> bool {
    if m.len() != n.len() || m.rank() != n.rank() {
        return false;
    }
    let k = m.len();
    let rm: Vec<u8> = (0..1u64 << k).map(|s| m.rank_mask(s) as u8).collect();
    let rn: Vec<u8> = (0..1u64 << k).map(|s| n.rank_mask(s) as u8).collect();
    fn go(i: usize, k: usize, img: &mut Vec<usize>, used: u64, rm: &[u8], rn: &[u8]) -> bool {
        if i == k {
            return true;
        }
        for j in 0..k {
            if used >> j & 1 == 1 {
                continue;
            }
            img.push(j);
            // Subsets containing the new element i.
            let consistent = (0..1u64 << i).all(|s| {
                let t = (0..i)
                    .filter(|&b| s >> b & 1 == 1)
                    .fold(1u64 << j, |acc, b| acc | 1 << img[b]);
                rm[(s | 1 << i) as usize] == rn[t as usize]
            });
            if consistent && go(i + 1, k, img, used | 1 << j, rm, rn) {
                return true;
            }
            img.pop();
        }
        false
    }
    go(0, k, &mut Vec::with_capacity(k), 0, &rm, &rn)
}

fn properties(cat: &Catalog) -> Result<(bool, Value), VerifyError> {
    let small: Vec<(&str, &BinaryMatroid)> = cat
        .entries()
        .filter(|e| e.matroid.len() <= 10)
        .map(|e| (e.name.as_str(), &e.matroid))
        .collect();
    let mut failures: Vec<Value> = Vec::new();

    for (name, m) in &small {
        let dd = m.dual().dual();
        let same = dd.labels() == m.labels()
            && verify_map(m, &dd, &crate::iso::Isomorphism::identity(m).map).unwrap_or(false);
        if !same {
            failures.push(json!({ "matroid": name, "property": "dual involution" }));
        }
        let d = m.dual();
        let full = m.full_mask();
        let lam: Vec<usize> = (0..=full).map(|x| lambda_mask(m, x)).collect();
        if (0..=full).any(|x| {
            lam[x as usize] != lam[(full & !x) as usize] || lam[x as usize] != lambda_mask(&d, x)
        }) {
            failures.push(json!({ "matroid": name, "property": "lambda symmetry" }));
        }
        let sub = (0..=full).into_par_iter().all(|x| {
            (0..=full).all(|y| {
                lam[x as usize] + lam[y as usize] >= lam[(x | y) as usize] + lam[(x & y) as usize]
            })
        });
        if !sub {
            failures.push(json!({ "matroid": name, "property": "submodularity" }));
        }
    }

    // Canonical form under reordering and renaming.
    let relabel_ok: Vec<(String, bool)> = cat
        .entries()
        .filter(|e| e.matroid.len() <= 12)
        .par_bridge()
        .map(|e| {
            let m = &e.matroid;
            let f = canonical_form(m).ok();
            let n = m.len();
            let rev: Vec<usize> = (0..n).rev().collect();
            let rot: Vec<usize> = (0..n).map(|i| (i + 3) % n).collect();
            let renamed: BTreeMap<Label, Label> = m
                .labels()
                .iter()
                .map(|l| (l.clone(), Label::new(format!("x{l}"))))
                .collect();
            let variants = [
                m.reorder(&rev),
                m.reorder(&rot),
                m.relabel(&renamed).expect("bijective"),
            ];
            let same = variants.iter().all(|v| canonical_form(v).ok() == f);
            (e.name.clone(), same && f.is_some())
        })
        .collect();
    let mut relabel_ok = relabel_ok;
    relabel_ok.sort();
    for (name, good) in &relabel_ok {
        if !good {
            failures.push(json!({ "matroid": name, "property": "canonical relabel invariance" }));
        }
    }

    let pairs: Vec<(usize, usize)> = (0..small.len())
        .flat_map(|i| (i..small.len()).map(move |j| (i, j)))
        .collect();
    let disagreements: Vec<Value> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let (a, m) = small[i];
            let (b, n) = small[j];
            let fast = is_isomorphic(m, n).is_some();
            let slow = brute_force_isomorphic(m, n);
            (fast != slow).then(|| json!({ "pair": [a, b], "fast": fast, "brute": slow }))
        })
        .collect();
    failures.extend(disagreements);
    Ok((
        failures.is_empty(),
        json!({
            "matroids": small.len(),
            "pairs": pairs.len(),
            "failures": failures,
        }),
    ))
}
