//! Named matroids and the graph and geometry families they come from.
//!
//! Entries are listed in `fixtures/catalog.toml`. Each one is read from a
//! matrix file, built from a family, or derived from an earlier entry. The
//! fixtures are compiled in; [`Fixtures::Dir`] reads them from disk instead.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connect::is_internally_4_connected;
use crate::enumerate::extend_by;
use crate::gf2::parse_vector;
use crate::iso::is_isomorphic;
use crate::matroid::{numbered_labels, BinaryMatroid, Label, MatroidError};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("fixture {path}: {message}")]
    Fixture { path: String, message: String },
    #[error("entry {name}: {message}")]
    Recipe { name: String, message: String },
    #[error("entry {name} fails its expected block: {message}")]
    Expectation { name: String, message: String },
    #[error("family parameter out of range: {0}")]
    Family(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

const EMBEDDED: &[(&str, &str)] = &[
    ("catalog.toml", include_str!("../fixtures/catalog.toml")),
    ("matroids/A.mat", include_str!("../fixtures/matroids/A.mat")),
    ("matroids/B.mat", include_str!("../fixtures/matroids/B.mat")),
    ("matroids/C.mat", include_str!("../fixtures/matroids/C.mat")),
    (
        "matroids/D1.mat",
        include_str!("../fixtures/matroids/D1.mat"),
    ),
    (
        "matroids/D2.mat",
        include_str!("../fixtures/matroids/D2.mat"),
    ),
    (
        "matroids/D2_K5e.mat",
        include_str!("../fixtures/matroids/D2_K5e.mat"),
    ),
    (
        "matroids/D2_table4.mat",
        include_str!("../fixtures/matroids/D2_table4.mat"),
    ),
    (
        "matroids/D3.mat",
        include_str!("../fixtures/matroids/D3.mat"),
    ),
    (
        "matroids/D3_K5e.mat",
        include_str!("../fixtures/matroids/D3_K5e.mat"),
    ),
    (
        "matroids/E1.mat",
        include_str!("../fixtures/matroids/E1.mat"),
    ),
    (
        "matroids/E2.mat",
        include_str!("../fixtures/matroids/E2.mat"),
    ),
    (
        "matroids/E3.mat",
        include_str!("../fixtures/matroids/E3.mat"),
    ),
    (
        "matroids/E4.mat",
        include_str!("../fixtures/matroids/E4.mat"),
    ),
    (
        "matroids/E4_prism.mat",
        include_str!("../fixtures/matroids/E4_prism.mat"),
    ),
    (
        "matroids/E5.mat",
        include_str!("../fixtures/matroids/E5.mat"),
    ),
    (
        "matroids/E5_P9.mat",
        include_str!("../fixtures/matroids/E5_P9.mat"),
    ),
    (
        "matroids/E6.mat",
        include_str!("../fixtures/matroids/E6.mat"),
    ),
    (
        "matroids/E6_prism.mat",
        include_str!("../fixtures/matroids/E6_prism.mat"),
    ),
    (
        "matroids/E6star.mat",
        include_str!("../fixtures/matroids/E6star.mat"),
    ),
    (
        "matroids/E7.mat",
        include_str!("../fixtures/matroids/E7.mat"),
    ),
    (
        "matroids/E7star_prism.mat",
        include_str!("../fixtures/matroids/E7star_prism.mat"),
    ),
    (
        "matroids/G_prism_edge.mat",
        include_str!("../fixtures/matroids/G_prism_edge.mat"),
    ),
    (
        "matroids/K33p_dual.mat",
        include_str!("../fixtures/matroids/K33p_dual.mat"),
    ),
    (
        "matroids/K5.mat",
        include_str!("../fixtures/matroids/K5.mat"),
    ),
    (
        "matroids/K5e.mat",
        include_str!("../fixtures/matroids/K5e.mat"),
    ),
    (
        "matroids/P9.mat",
        include_str!("../fixtures/matroids/P9.mat"),
    ),
    (
        "matroids/R17.mat",
        include_str!("../fixtures/matroids/R17.mat"),
    ),
    (
        "matroids/S8.mat",
        include_str!("../fixtures/matroids/S8.mat"),
    ),
    (
        "matroids/X1.mat",
        include_str!("../fixtures/matroids/X1.mat"),
    ),
    (
        "matroids/X3.mat",
        include_str!("../fixtures/matroids/X3.mat"),
    ),
    ("matroids/Y.mat", include_str!("../fixtures/matroids/Y.mat")),
    (
        "matroids/prism.mat",
        include_str!("../fixtures/matroids/prism.mat"),
    ),
    (
        "tables/bijections.toml",
        include_str!("../fixtures/tables/bijections.toml"),
    ),
    (
        "tables/corollary_3_1.toml",
        include_str!("../fixtures/tables/corollary_3_1.toml"),
    ),
    (
        "tables/claim_5.toml",
        include_str!("../fixtures/tables/claim_5.toml"),
    ),
    (
        "tables/table_1a.toml",
        include_str!("../fixtures/tables/table_1a.toml"),
    ),
    (
        "tables/table_1b.toml",
        include_str!("../fixtures/tables/table_1b.toml"),
    ),
    (
        "tables/table_2a.toml",
        include_str!("../fixtures/tables/table_2a.toml"),
    ),
    (
        "tables/table_3a.toml",
        include_str!("../fixtures/tables/table_3a.toml"),
    ),
    (
        "tables/table_3b.toml",
        include_str!("../fixtures/tables/table_3b.toml"),
    ),
    (
        "tables/table_4.toml",
        include_str!("../fixtures/tables/table_4.toml"),
    ),
    (
        "tables/table_5.toml",
        include_str!("../fixtures/tables/table_5.toml"),
    ),
    (
        "tables/table_a1.toml",
        include_str!("../fixtures/tables/table_a1.toml"),
    ),
    (
        "tables/table_a2.toml",
        include_str!("../fixtures/tables/table_a2.toml"),
    ),
];

/// Where fixture files come from.
#[derive(Debug, Clone, Default)]
pub enum Fixtures {
    #[default]
    Embedded,
    Dir(PathBuf),
}

impl Fixtures {
    /// Reads a fixture by its path relative to the fixtures root.
    pub fn read(&self, rel: &str) -> Result<String, CatalogError> {
        match self {
            Fixtures::Embedded => EMBEDDED
                .iter()
                .find(|(p, _)| *p == rel)
                .map(|(_, s)| s.to_string())
                .ok_or_else(|| CatalogError::Fixture {
                    path: rel.into(),
                    message: "no such fixture".into(),
                }),
            Fixtures::Dir(root) => {
                std::fs::read_to_string(root.join(rel)).map_err(|e| CatalogError::Fixture {
                    path: root.join(rel).display().to_string(),
                    message: e.to_string(),
                })
            }
        }
    }

    /// Parses a TOML fixture.
    pub fn toml<T: for<'de> Deserialize<'de>>(&self, rel: &str) -> Result<T, CatalogError> {
        toml::from_str(&self.read(rel)?).map_err(|e| CatalogError::Fixture {
            path: rel.into(),
            message: e.to_string(),
        })
    }

    /// Writes every embedded fixture under `dir`, for editing or fault
    /// injection.
    pub fn export(dir: &Path) -> std::io::Result<()> {
        for (rel, text) in EMBEDDED {
            let path = dir.join(rel);
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, text)?;
        }
        Ok(())
    }
}

/// Facts stated for an entry, checked when the catalog loads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub rank: usize,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_dual: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub internally_4_connected: Option<bool>,
}

impl Expected {
    /// Compares against `m`; returns the first mismatch.
    pub fn check(&self, m: &BinaryMatroid) -> Result<(), String> {
        if m.rank() != self.rank || m.len() != self.size {
            return Err(format!(
                "rank {} size {}, expected rank {} size {}",
                m.rank(),
                m.len(),
                self.rank,
                self.size
            ));
        }
        if let Some(s) = self.simple {
            if m.is_simple() != s {
                return Err(format!("simple = {}, expected {s}", !s));
            }
        }
        if let Some(s) = self.self_dual {
            if is_isomorphic(m, &m.dual()).is_some() != s {
                return Err(format!("self-dual = {}, expected {s}", !s));
            }
        }
        if let Some(s) = self.internally_4_connected {
            if is_internally_4_connected(m) != s {
                return Err(format!("internally 4-connected = {}, expected {s}", !s));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub matroid: BinaryMatroid,
    pub provenance: String,
    pub expected: Expected,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntrySpec {
    name: String,
    provenance: String,
    expected: Expected,
    file: Option<String>,
    family: Option<String>,
    param: Option<usize>,
    extra: Option<usize>,
    base: Option<String>,
    #[serde(default)]
    extend: Vec<String>,
    restrict: Option<usize>,
    #[serde(default)]
    dual: bool,
}

#[derive(Debug, Deserialize)]
struct CatalogFile {
    entry: Vec<EntrySpec>,
}

/// The graph and geometry families used by the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Cycle matroid of the wheel with `r` spokes.
    Wheel(usize),
    /// `K_{3,p}` with `extra` edges added inside the 3-vertex side.
    K3p {
        p: usize,
        extra: usize,
    },
    /// PG(3,2) with its `k` numerically largest points removed.
    Pg32Minus(usize),
    /// PG(r-1,2): every nonzero vector of length `r`.
    Projective(usize),
    /// AG(r-1,2): vectors of length `r` with first entry 1.
    Affine(usize),
    Z(usize),
}

/// Builds a member of a family.
pub fn build_family(f: Family) -> Result<BinaryMatroid, CatalogError> {
    let bad = |s: &str| Err(CatalogError::Family(s.into()));
    match f {
        Family::Wheel(r) => {
            if r < 3 {
                return bad("wheel needs r >= 3");
            }
            // Hub is vertex r; rim vertices 0..r.
            let mut edges: Vec<(usize, usize)> = (0..r).map(|i| (i, r)).collect();
            edges.extend((0..r).map(|i| (i, (i + 1) % r)));
            Ok(BinaryMatroid::from_graph(&edges)?)
        }
        Family::K3p { p, extra } => {
            if p < 3 || extra > 3 {
                return bad("K3p needs p >= 3 and extra <= 3");
            }
            let mut edges = Vec::new();
            for a in 0..3 {
                for b in 0..p {
                    edges.push((a, 3 + b));
                }
            }
            edges.extend([(0, 1), (0, 2), (1, 2)].into_iter().take(extra));
            Ok(BinaryMatroid::from_graph(&edges)?)
        }
        Family::Pg32Minus(k) => {
            if k > 2 {
                return bad("at most two points may be removed from PG(3,2)");
            }
            let cols: Vec<u64> = (1..=15 - k as u64).collect();
            Ok(BinaryMatroid::from_columns(
                4,
                &cols,
                numbered_labels(cols.len()),
            )?)
        }
        Family::Projective(r) => {
            if !(1..=6).contains(&r) {
                return bad("projective rank must be 1..=6");
            }
            let cols: Vec<u64> = (1..1u64 << r).collect();
            Ok(BinaryMatroid::from_columns(
                r,
                &cols,
                numbered_labels(cols.len()),
            )?)
        }
        Family::Affine(r) => {
            if !(2..=7).contains(&r) {
                return bad("affine rank must be 2..=7");
            }
            let cols: Vec<u64> = (0..1u64 << (r - 1)).map(|k| 1 | k << 1).collect();
            Ok(BinaryMatroid::from_columns(
                r,
                &cols,
                numbered_labels(cols.len()),
            )?)
        }
        Family::Z(r) => build_z(r),
    }
}

/// `Z_r = [I_r | D]`: the first `r` columns of `D` have zeros on the diagonal
/// and ones elsewhere, the last is all ones. Labels are `1..r`, `b1..br`,
/// `cr`.
pub fn build_z(r: usize) -> Result<BinaryMatroid, CatalogError> {
    if !(4..=20).contains(&r) {
        return Err(CatalogError::Family(format!(
            "Z_r needs 4 <= r <= 20, got {r}"
        )));
    }
    let ones = (1u64 << r) - 1;
    let mut cols: Vec<u64> = (0..r).map(|i| 1u64 << i).collect();
    cols.extend((0..r).map(|i| ones & !(1 << i)));
    cols.push(ones);
    let mut labels = numbered_labels(r);
    labels.extend((1..=r).map(|i| Label::new(format!("b{i}"))));
    labels.push(Label::new(format!("c{r}")));
    Ok(BinaryMatroid::from_columns(r, &cols, labels)?)
}

/// Read-only registry of named matroids.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
    order: Vec<String>,
    fixtures: Fixtures,
}

impl Catalog {
    /// The compiled-in catalog.
    pub fn load() -> Result<Self, CatalogError> {
        Self::from_fixtures(Fixtures::Embedded)
    }

    pub fn from_fixtures(fixtures: Fixtures) -> Result<Self, CatalogError> {
        let file: CatalogFile = fixtures.toml("catalog.toml")?;
        let mut cat = Catalog {
            entries: BTreeMap::new(),
            order: Vec::new(),
            fixtures,
        };
        for spec in file.entry {
            let m = cat.build(&spec)?;
            spec.expected
                .check(&m)
                .map_err(|message| CatalogError::Expectation {
                    name: spec.name.clone(),
                    message,
                })?;
            cat.order.push(spec.name.clone());
            cat.entries.insert(
                spec.name.clone(),
                CatalogEntry {
                    name: spec.name,
                    matroid: m,
                    provenance: spec.provenance,
                    expected: spec.expected,
                },
            );
        }
        Ok(cat)
    }

    fn build(&self, spec: &EntrySpec) -> Result<BinaryMatroid, CatalogError> {
        let err = |message: String| CatalogError::Recipe {
            name: spec.name.clone(),
            message,
        };
        let sources = [
            spec.file.is_some(),
            spec.family.is_some(),
            spec.base.is_some(),
        ];
        if sources.iter().filter(|&&s| s).count() != 1 {
            return Err(err("needs exactly one of file, family, base".into()));
        }
        if let Some(file) = &spec.file {
            let path = format!("matroids/{file}");
            let text = self.fixtures.read(&path)?;
            return text
                .parse()
                .map_err(|e: MatroidError| CatalogError::Fixture {
                    path,
                    message: e.to_string(),
                });
        }
        if let Some(family) = &spec.family {
            let p = spec.param.ok_or_else(|| err("family needs param".into()))?;
            let f = match family.as_str() {
                "wheel" => Family::Wheel(p),
                "k3p" => Family::K3p {
                    p,
                    extra: spec.extra.unwrap_or(0),
                },
                "pg32_minus" => Family::Pg32Minus(p),
                "projective" => Family::Projective(p),
                "affine" => Family::Affine(p),
                "z" => Family::Z(p),
                other => return Err(err(format!("unknown family {other:?}"))),
            };
            return build_family(f);
        }
        let base = spec.base.as_deref().unwrap_or_default();
        let mut m = self
            .entries
            .get(base)
            .map(|e| e.matroid.clone())
            .ok_or_else(|| err(format!("base {base:?} must be listed earlier")))?;
        if let Some(k) = spec.restrict {
            if k > m.len() {
                return Err(err(format!("cannot keep {k} of {} columns", m.len())));
            }
            m = m.restrict_mask((1u64 << k) - 1);
        }
        for v in &spec.extend {
            let col = parse_vector(v).map_err(|c| err(format!("bad character {c:?} in {v}")))?;
            if v.len() != m.rank() {
                return Err(err(format!(
                    "column {v} has length {}, rank is {}",
                    v.len(),
                    m.rank()
                )));
            }
            m = extend_by(&m, col)?;
        }
        if spec.dual {
            m = m.dual();
        }
        Ok(m)
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry, CatalogError> {
        self.entries
            .get(name)
            .ok_or_else(|| CatalogError::UnknownName(name.into()))
    }

    /// Shorthand for `get(name)?.matroid`.
    pub fn matroid(&self, name: &str) -> Result<&BinaryMatroid, CatalogError> {
        Ok(&self.get(name)?.matroid)
    }

    /// Names in registry order.
    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.order.iter().map(|n| &self.entries[n])
    }

    pub fn fixtures(&self) -> &Fixtures {
        &self.fixtures
    }

    /// Catalog names whose matroid is isomorphic to `m`.
    pub fn names_isomorphic_to(&self, m: &BinaryMatroid) -> Vec<String> {
        self.entries()
            .filter(|e| is_isomorphic(&e.matroid, m).is_some())
            .map(|e| e.name.clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> Catalog {
        Catalog::load().expect("catalog loads")
    }

    fn iso(a: &BinaryMatroid, b: &BinaryMatroid) -> bool {
        is_isomorphic(a, b).is_some()
    }

    #[test]
    fn every_entry_meets_its_expected_block() {
        let c = cat();
        for e in c.entries() {
            assert_eq!(e.expected.check(&e.matroid), Ok(()), "{}", e.name);
        }
        assert!(c.names().len() > 50);
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert!(matches!(
            cat().get("nope"),
            Err(CatalogError::UnknownName(_))
        ));
    }

    #[test]
    fn prism_is_dual_of_k5_minus_edge() {
        let c = cat();
        let k5e: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .filter(|&e| e != (3, 4))
            .collect();
        let g = BinaryMatroid::from_graph(&k5e).unwrap();
        assert!(iso(c.matroid("prism").unwrap(), &g.dual()));
        assert!(iso(c.matroid("K5e").unwrap(), &g));
    }

    #[test]
    fn z4_deletions() {
        let c = cat();
        let z4 = build_z(4).unwrap();
        assert_eq!((z4.rank(), z4.len()), (4, 9));
        let del = |l: &str| z4.delete(&[Label::new(l)].into_iter().collect()).unwrap();
        assert!(iso(&del("c4"), c.matroid("AG32").unwrap()));
        assert!(iso(&del("b4"), c.matroid("S8").unwrap()));
        assert!(!iso(&del("b4"), &del("c4")));
        assert!(build_z(3).is_err());
        for r in 4..=7 {
            assert_eq!(build_z(r).unwrap().len(), 2 * r + 1);
        }
    }

    #[test]
    fn families() {
        let pg = build_family(Family::Pg32Minus(0)).unwrap();
        assert_eq!((pg.rank(), pg.len()), (4, 15));
        let w3 = build_family(Family::Wheel(3)).unwrap();
        let k4: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .collect();
        assert!(iso(&w3, &BinaryMatroid::from_graph(&k4).unwrap()));
        assert!(build_family(Family::Wheel(2)).is_err());
        assert!(build_family(Family::K3p { p: 3, extra: 4 }).is_err());
        assert!(build_family(Family::Pg32Minus(3)).is_err());
        let k33 = build_family(Family::K3p { p: 3, extra: 0 }).unwrap();
        assert_eq!((k33.rank(), k33.len()), (5, 9));
    }

    #[test]
    fn e5_extends_k33() {
        let c = cat();
        let e5 = c.matroid("E5").unwrap();
        let k33 = c.matroid("K33").unwrap();
        let hits = e5
            .labels()
            .iter()
            .filter(|l| {
                iso(
                    &e5.delete(&[(*l).clone()].into_iter().collect()).unwrap(),
                    k33,
                )
            })
            .count();
        assert!(hits > 0);
    }

    #[test]
    fn f7_has_no_simple_extension() {
        let f7 = cat().matroid("F7").unwrap().clone();
        assert_eq!((f7.rank(), f7.len()), (3, 7));
        for v in 0..8u64 {
            assert!(!extend_by(&f7, v).unwrap().is_simple());
        }
    }

    #[test]
    fn z_is_the_table_4_class() {
        // Z as a restriction of R17 against Z as a coextension of D2.
        let c = cat();
        let z = c.matroid("Z").unwrap();
        let found = crate::enumerate::coextensions(c.matroid("D2_table4").unwrap(), true, true)
            .unwrap()
            .iter()
            .any(|k| iso(&k.representative, z));
        assert!(found);
    }

    #[test]
    fn r10_extensions_are_z_and_b() {
        let c = cat();
        let classes = crate::enumerate::extensions(c.matroid("R10").unwrap(), true, true).unwrap();
        assert_eq!(classes.len(), 2);
        let z = classes
            .iter()
            .find(|k| iso(&k.representative, c.matroid("Z").unwrap()))
            .unwrap();
        assert_eq!(
            z.vector_strings(),
            ["01011", "01101", "10101", "10110", "11010", "11111"]
        );
        let other = classes
            .iter()
            .find(|k| k.fingerprint != z.fingerprint)
            .unwrap();
        assert!(iso(&other.representative, c.matroid("B").unwrap()));
        assert!(!iso(&other.representative, c.matroid("A").unwrap()));
    }

    #[test]
    fn r17_minus_e_is_a_deletion_of_r17() {
        let c = cat();
        let r17 = c.matroid("R17").unwrap();
        let m = c.matroid("R17_minus_e").unwrap();
        assert!((0..17).any(|i| iso(&r17.delete_mask(1 << i), m)));
    }

    #[test]
    fn p_delta_entries_have_stated_rank() {
        let c = cat();
        let p = c.matroid("P_Delta_F7_F7_minus_z").unwrap();
        let pd = c.matroid("P_Delta_F7_F7_minus_z_dual").unwrap();
        assert_eq!((p.rank(), p.len()), (4, 10));
        assert_eq!((pd.rank(), pd.len()), (6, 10));
        assert!(iso(&p.dual(), pd));
        // Two Fano planes in PG(3,2) sharing the line {e1, e2, e1+e2}, with
        // e1 deleted from the shared line.
        let mut cols: Vec<u64> = (1..8u64)
            .chain((1..8u64).map(|v| (v & 3) | (v & 4) << 1))
            .collect();
        cols.sort_unstable();
        cols.dedup();
        assert_eq!(cols.len(), 11);
        cols.retain(|&v| v != 1);
        let glued = BinaryMatroid::from_columns(4, &cols, numbered_labels(10)).unwrap();
        assert!(iso(&glued, p));
        assert!(iso(&glued, c.matroid("D1").unwrap()));
    }

    #[test]
    fn directory_fixtures_match_embedded() {
        let dir = tempfile::tempdir().unwrap();
        Fixtures::export(dir.path()).unwrap();
        let from_disk = Catalog::from_fixtures(Fixtures::Dir(dir.path().into())).unwrap();
        let built_in = cat();
        assert_eq!(from_disk.names(), built_in.names());
        for e in built_in.entries() {
            assert!(
                from_disk.matroid(&e.name).unwrap() == &e.matroid,
                "{}",
                e.name
            );
        }
    }

    #[test]
    fn corrupted_fixture_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        Fixtures::export(dir.path()).unwrap();
        let p = dir.path().join("matroids/E5.mat");
        let text = std::fs::read_to_string(&p)
            .unwrap()
            .replace("11000", "10000");
        std::fs::write(&p, text).unwrap();
        let r = Catalog::from_fixtures(Fixtures::Dir(dir.path().into()));
        assert!(matches!(r, Err(CatalogError::Expectation { .. })), "{r:?}");
    }
}
