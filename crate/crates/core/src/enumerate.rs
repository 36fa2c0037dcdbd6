//! Single-element extensions and coextensions up to isomorphism, minor
//! search, the decomposer criterion and splitter-style growth.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::connect::{is_3_connected, lambda_mask};
use crate::gf2::{format_vector, XorBasis};
use crate::iso::{
    canonical_form, find_embedding, k_subsets, verify_map, CanonicalForm, IsoError, Isomorphism,
};
use crate::matroid::{mask_indices, BinaryMatroid, ElementSet, Label, MatroidError};

/// Growth bounds beyond which [`grow_3connected`] refuses to run.
pub const MAX_GROWTH_SIZE: usize = crate::iso::MAX_CANONICAL_SIZE;
pub const MAX_GROWTH_RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error("cannot extend a rank-0 matroid")]
    RankZero,
    #[error("matroid must be given in standard form [I|D]")]
    NotStandardForm,
    #[error("seed is not 3-connected")]
    SeedNotThreeConnected,
    #[error("growth bounds out of range: {0}")]
    Bounds(String),
    #[error("decomposer preconditions failed: {0:?}")]
    Preconditions(Vec<PreconditionFailure>),
}

/// Whether a class was produced by adding a column or a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthKind {
    Extension,
    Coextension,
}

/// One isomorphism class of single-element (co)extensions.
///
/// `vectors` are the added columns (extension) or the added rows under `D`
/// (coextension) that produce a matroid isomorphic to `representative`,
/// which is built from the first of them.
#[derive(Debug, Clone)]
pub struct ExtensionClass {
    pub kind: GrowthKind,
    pub representative: BinaryMatroid,
    pub vectors: Vec<u64>,
    pub width: usize,
    pub fingerprint: CanonicalForm,
    pub name: Option<String>,
}

impl ExtensionClass {
    pub fn vector_strings(&self) -> Vec<String> {
        self.vectors
            .iter()
            .map(|&v| format_vector(v, self.width))
            .collect()
    }

    pub fn record(&self) -> ClassRecord {
        ClassRecord {
            name: self.name.clone(),
            columns: self.vector_strings(),
            fingerprint: self.fingerprint.to_hex(),
        }
    }
}

/// Serialized form of one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub name: Option<String>,
    pub columns: Vec<String>,
    pub fingerprint: String,
}

/// Serialized form of a class partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassPartition {
    pub parent: String,
    pub classes: Vec<ClassRecord>,
}

impl ClassPartition {
    pub fn new(parent: impl Into<String>, classes: &[ExtensionClass]) -> Self {
        Self {
            parent: parent.into(),
            classes: classes.iter().map(ExtensionClass::record).collect(),
        }
    }
}

/// A label not used by `m`: one more than the largest numeric label, or
/// `e<n+1>` when no label is numeric.
pub fn fresh_label(m: &BinaryMatroid) -> Label {
    let max = m
        .labels()
        .iter()
        .filter_map(|l| l.as_str().parse::<usize>().ok())
        .max();
    match max {
        Some(k) => Label::from(k + 1),
        None => {
            let mut i = m.len() + 1;
            loop {
                let l = Label::new(format!("e{i}"));
                if m.index_of(&l).is_err() {
                    return l;
                }
                i += 1;
            }
        }
    }
}

/// `m` plus the column `v`, under a fresh label.
pub fn extend_by(m: &BinaryMatroid, v: u64) -> Result<BinaryMatroid, MatroidError> {
    m.extend(v, fresh_label(m))
}

/// `m` (in standard form) plus the row `row` under `D`, under a fresh label.
pub fn coextend_by(m: &BinaryMatroid, row: u64) -> Result<BinaryMatroid, MatroidError> {
    m.coextend_standard(row, fresh_label(m))
}

/// Vectors of the given width in the order their text forms sort.
fn vectors_in_text_order(width: usize) -> Vec<u64> {
    let mut v: Vec<u64> = (0..1u64 << width).collect();
    v.sort_by_key(|&x| format_vector(x, width));
    v
}

/// Groups candidate matroids by canonical form, in order of first
/// appearance.
fn classify(
    kind: GrowthKind,
    width: usize,
    candidates: Vec<(u64, BinaryMatroid)>,
    require_3connected: bool,
) -> Result<Vec<ExtensionClass>, EnumerateError> {
    let forms: Vec<CanonicalForm> = candidates
        .par_iter()
        .map(|(_, m)| canonical_form(m))
        .collect::<Result<_, _>>()?;
    let mut classes: Vec<ExtensionClass> = Vec::new();
    let mut index: HashMap<CanonicalForm, usize> = HashMap::new();
    for ((v, m), f) in candidates.into_iter().zip(forms) {
        match index.get(&f) {
            Some(&i) => classes[i].vectors.push(v),
            None => {
                index.insert(f.clone(), classes.len());
                classes.push(ExtensionClass {
                    kind,
                    representative: m,
                    vectors: vec![v],
                    width,
                    fingerprint: f,
                    name: None,
                });
            }
        }
    }
    if require_3connected {
        let keep: Vec<bool> = classes
            .par_iter()
            .map(|c| is_3_connected(&c.representative))
            .collect();
        let mut flags = keep.into_iter();
        classes.retain(|_| flags.next().expect("one flag per class"));
    }
    Ok(classes)
}

/// Single-element extensions of `m` grouped into isomorphism classes.
///
/// Candidates are all vectors of length `rank(m)`; with `require_simple` the
/// zero vector and existing columns are skipped (and any other candidate
/// whose result is not simple).
pub fn extensions(
    m: &BinaryMatroid,
    require_simple: bool,
    require_3connected: bool,
) -> Result<Vec<ExtensionClass>, EnumerateError> {
    let r = m.rank();
    if r == 0 {
        return Err(EnumerateError::RankZero);
    }
    let existing: BTreeSet<u64> = m.columns().iter().copied().collect();
    let candidates: Vec<(u64, BinaryMatroid)> = vectors_in_text_order(r)
        .into_iter()
        .filter(|v| !require_simple || (*v != 0 && !existing.contains(v)))
        .map(|v| Ok((v, extend_by(m, v)?)))
        .collect::<Result<Vec<_>, MatroidError>>()?
        .into_iter()
        .filter(|(_, e)| !require_simple || e.is_simple())
        .collect();
    classify(GrowthKind::Extension, r, candidates, require_3connected)
}

/// Single-element coextensions of `m` (in standard form `[I_r | D]`) by a new
/// row under `D`, grouped into isomorphism classes. The new element sits
/// right after the identity block.
pub fn coextensions(
    m: &BinaryMatroid,
    require_cosimple: bool,
    require_3connected: bool,
) -> Result<Vec<ExtensionClass>, EnumerateError> {
    if !m.is_standard_form() {
        return Err(EnumerateError::NotStandardForm);
    }
    let width = m.len() - m.rank();
    let candidates: Vec<(u64, BinaryMatroid)> = vectors_in_text_order(width)
        .into_par_iter()
        .map(|row| Ok((row, coextend_by(m, row)?)))
        .collect::<Result<Vec<_>, MatroidError>>()?
        .into_iter()
        .filter(|(_, c)| !require_cosimple || c.is_cosimple())
        .collect();
    classify(
        GrowthKind::Coextension,
        width,
        candidates,
        require_3connected,
    )
}

/// The rows available when coextending a standard-form matroid whose last
/// column is treated as the most recently added element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowTypes {
    /// Rows that are good for the matroid without its last column, followed
    /// by a 0 or a 1.
    pub type_i: Vec<u64>,
    /// Unit rows with a 1 also in the last position.
    pub type_ii: Vec<u64>,
    /// Rows of `D` with the last entry flipped ("in series" with an existing
    /// row).
    pub type_iii: Vec<u64>,
    pub width: usize,
}

impl RowTypes {
    pub fn strings(rows: &[u64], width: usize) -> Vec<String> {
        rows.iter().map(|&r| format_vector(r, width)).collect()
    }

    pub fn all(&self) -> BTreeSet<u64> {
        self.type_i
            .iter()
            .chain(&self.type_ii)
            .chain(&self.type_iii)
            .copied()
            .collect()
    }
}

/// Builds the three row families for `m = [I_r | D]`. `base_rows` are the
/// acceptable coextension rows of `m` with its last column deleted.
pub fn coextension_row_types(
    m: &BinaryMatroid,
    base_rows: &[u64],
) -> Result<RowTypes, EnumerateError> {
    let d = m.d_block().ok_or(EnumerateError::NotStandardForm)?;
    let k = d.n_cols();
    if k == 0 {
        return Err(EnumerateError::NotStandardForm);
    }
    let last = 1u64 << (k - 1);
    let type_i = base_rows.iter().flat_map(|&b| [b, b | last]).collect();
    let type_ii = (0..k - 1).map(|i| 1u64 << i | last).collect();
    let type_iii = d.row_words().iter().map(|&row| row ^ last).collect();
    Ok(RowTypes {
        type_i,
        type_ii,
        type_iii,
        width: k,
    })
}

/// Rows of the 3-connected cosimple coextensions of `m` that avoid every
/// matroid in `forbidden` as a minor.
pub fn rows_avoiding(
    m: &BinaryMatroid,
    forbidden: &[BinaryMatroid],
) -> Result<Vec<u64>, EnumerateError> {
    let classes = coextensions(m, true, true)?;
    Ok(classes
        .iter()
        .filter(|c| {
            forbidden
                .iter()
                .all(|f| has_minor(&c.representative, f).is_none())
        })
        .flat_map(|c| c.vectors.iter().copied())
        .collect())
}

/// `m / contract_set \ delete_set`, with `iso` mapping it onto the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub contract_set: ElementSet,
    pub delete_set: ElementSet,
    pub iso: Isomorphism,
}

impl MinorWitness {
    /// Applies the contraction and deletion and checks the map.
    pub fn verify(&self, m: &BinaryMatroid, target: &BinaryMatroid) -> bool {
        if !self.contract_set.is_disjoint(&self.delete_set) {
            return false;
        }
        let Ok(reduced) = m.minor(&self.contract_set, &self.delete_set) else {
            return false;
        };
        matches!(verify_map(&reduced, target, &self.iso.map), Ok(true))
    }
}

/// Searches for a `target`-minor of `m`.
///
/// Contracts independent sets of size `r(m) - r(target)` (every minor can be
/// written with an independent contraction set and a coindependent deletion
/// set) and looks for the target among the restrictions of the quotient.
pub fn has_minor(m: &BinaryMatroid, target: &BinaryMatroid) -> Option<MinorWitness> {
    if target.len() > m.len() || target.rank() > m.rank() {
        return None;
    }
    let k = m.rank() - target.rank();
    if m.len() - target.len() < k {
        return None;
    }
    let subsets: Vec<u64> = k_subsets(m.len(), k)
        .filter(|&c| m.is_independent_mask(c))
        .collect();
    let search = |c: u64| -> Option<MinorWitness> {
        let mut span = XorBasis::default();
        for i in mask_indices(c) {
            span.insert(m.columns()[i]);
        }
        let host: Vec<u64> = m.columns().iter().map(|&v| span.reduce(v)).collect();
        let avail = m.full_mask() & !c;
        let pos = find_embedding(target, &host, avail)?;
        let image = pos.iter().fold(0u64, |acc, &j| acc | 1 << j);
        Some(MinorWitness {
            contract_set: m.set_of_mask(c),
            delete_set: m.set_of_mask(avail & !image),
            iso: Isomorphism {
                map: pos
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (m.labels()[j].clone(), target.labels()[i].clone()))
                    .collect(),
            },
        })
    };
    if subsets.len() > 8 {
        subsets.par_iter().find_map_first(|&c| search(c))
    } else {
        subsets.iter().find_map(|&c| search(c))
    }
}

/// Checks a stated minor: `m / contract \ delete ≅ target`.
pub fn minor_is(
    m: &BinaryMatroid,
    contract: &ElementSet,
    delete: &ElementSet,
    target: &BinaryMatroid,
) -> Result<Option<MinorWitness>, MatroidError> {
    let reduced = m.minor(contract, delete)?;
    Ok(
        crate::iso::is_isomorphic(&reduced, target).map(|iso| MinorWitness {
            contract_set: contract.clone(),
            delete_set: delete.clone(),
            iso,
        }),
    )
}

/// Why a decomposer query was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PreconditionFailure {
    NotThreeConnected,
    TooFewElements(usize),
    SetSizeNotFour(usize),
    NotCircuit,
    NotCocircuit,
    NotNonMinimalExactThreeSeparation,
}

/// Outcome for one class of 3-connected (co)extensions.
#[derive(Debug, Clone, Serialize)]
pub struct DecomposerEntry {
    pub kind: GrowthKind,
    pub vectors: Vec<String>,
    pub fingerprint: String,
    pub name: Option<String>,
    /// False when the class filter excluded the class from the verdict.
    pub included: bool,
    /// One flag per member vector: is the set still a circuit and a cocircuit.
    pub preserved: Vec<bool>,
    /// Positions (1-based) of the set in the representative's element order.
    pub positional_image: Vec<usize>,
}

impl DecomposerEntry {
    pub fn all_preserved(&self) -> bool {
        self.preserved.iter().all(|&p| p)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecomposerReport {
    pub entries: Vec<DecomposerEntry>,
    pub verdict: bool,
}

impl DecomposerReport {
    /// The first included class whose members do not all preserve the set.
    pub fn first_failure(&self) -> Option<&DecomposerEntry> {
        self.entries
            .iter()
            .find(|e| e.included && !e.all_preserved())
    }
}

/// Checks whether `a` stays a circuit and a cocircuit in every 3-connected
/// single-element extension and coextension of `n` admitted by `include`.
///
/// Labels survive (co)extension, so the image of `a` is `a` itself; the
/// report also gives its positions in each representative.
pub fn decomposer_criterion(
    n: &BinaryMatroid,
    a: &ElementSet,
    include: &(dyn Fn(&BinaryMatroid) -> bool + Sync),
) -> Result<DecomposerReport, EnumerateError> {
    let am = n.mask_of(a)?;
    let mut failures = Vec::new();
    if !is_3_connected(n) {
        failures.push(PreconditionFailure::NotThreeConnected);
    }
    if n.len() < 8 {
        failures.push(PreconditionFailure::TooFewElements(n.len()));
    }
    if a.len() != 4 {
        failures.push(PreconditionFailure::SetSizeNotFour(a.len()));
    }
    if !n.is_circuit_mask(am) {
        failures.push(PreconditionFailure::NotCircuit);
    }
    if !n.is_cocircuit_mask(am) {
        failures.push(PreconditionFailure::NotCocircuit);
    }
    let rest = n.len() - a.len();
    if a.len() < 4 || rest < 4 || lambda_mask(n, am) != 2 {
        failures.push(PreconditionFailure::NotNonMinimalExactThreeSeparation);
    }
    if !failures.is_empty() {
        return Err(EnumerateError::Preconditions(failures));
    }
    let base = n.standardized();
    let mut entries = Vec::new();
    let groups = [
        (extensions(&base, true, true)?, GrowthKind::Extension),
        (coextensions(&base, true, true)?, GrowthKind::Coextension),
    ];
    for (classes, kind) in groups {
        for class in classes {
            let preserved: Vec<bool> = class
                .vectors
                .iter()
                .map(|&v| {
                    let member = match kind {
                        GrowthKind::Extension => extend_by(&base, v),
                        GrowthKind::Coextension => coextend_by(&base, v),
                    }?;
                    let mask = member.mask_of(a)?;
                    Ok(member.is_circuit_mask(mask) && member.is_cocircuit_mask(mask))
                })
                .collect::<Result<_, MatroidError>>()?;
            let rep = &class.representative;
            let positional_image = mask_indices(rep.mask_of(a)?).map(|i| i + 1).collect();
            entries.push(DecomposerEntry {
                kind,
                vectors: class.vector_strings(),
                fingerprint: class.fingerprint.to_hex(),
                name: class.name.clone(),
                included: include(rep),
                preserved,
                positional_image,
            });
        }
    }
    let verdict = entries
        .iter()
        .filter(|e| e.included)
        .all(DecomposerEntry::all_preserved);
    Ok(DecomposerReport { entries, verdict })
}

/// A sequence of 3-connected matroids, each obtained from the previous one by
/// one growth step.
#[derive(Debug, Clone)]
pub struct SplitterChain {
    pub steps: Vec<BinaryMatroid>,
}

impl SplitterChain {
    pub fn last(&self) -> &BinaryMatroid {
        self.steps.last().expect("chains are nonempty")
    }

    /// Checks the step shape: every member 3-connected; a rank-increasing
    /// step adds at most three elements, and when it adds three they form a
    /// triad; a rank-preserving step adds exactly one element. Rank-increasing
    /// steps all come first.
    pub fn check_shape(&self) -> Result<(), String> {
        let mut rank_phase = true;
        for (k, m) in self.steps.iter().enumerate() {
            if !is_3_connected(m) {
                return Err(format!("step {k} is not 3-connected"));
            }
            if k == 0 {
                continue;
            }
            let prev = &self.steps[k - 1];
            let added = m.len().checked_sub(prev.len()).ok_or("size decreased")?;
            match m.rank().checked_sub(prev.rank()) {
                Some(1) => {
                    if !rank_phase {
                        return Err(format!("step {k} raises rank after a rank-preserving step"));
                    }
                    if added == 0 || added > 3 {
                        return Err(format!("step {k} adds {added} elements with the rank"));
                    }
                    if added == 3 {
                        let new: u64 = prev
                            .labels()
                            .iter()
                            .try_fold(m.full_mask(), |acc, l| {
                                m.index_of(l).map(|i| acc & !(1 << i))
                            })
                            .map_err(|e| e.to_string())?;
                        if !m.is_cocircuit_mask(new) {
                            return Err(format!(
                                "step {k} adds three elements that are not a triad"
                            ));
                        }
                    }
                }
                Some(0) => {
                    rank_phase = false;
                    if added != 1 {
                        return Err(format!("step {k} adds {added} elements at constant rank"));
                    }
                }
                _ => return Err(format!("step {k} changes rank by more than one")),
            }
        }
        Ok(())
    }
}

/// Result of [`grow_3connected`]: one chain from the seed to every class
/// reached (the first chain is the seed alone).
#[derive(Debug, Clone)]
pub struct Growth {
    pub chains: Vec<SplitterChain>,
    pub fingerprints: Vec<CanonicalForm>,
}

impl Growth {
    /// Classes reached beyond the seed.
    pub fn grown(&self) -> impl Iterator<Item = &SplitterChain> {
        self.chains.iter().skip(1)
    }
}

struct GrowNode {
    matroid: BinaryMatroid,
    parent: Option<usize>,
    rank_stage: bool,
}

/// Generates every 3-connected matroid reachable from `seed` within the
/// bounds while avoiding every `forbidden` minor.
///
/// Growth follows the strong splitter shape: first rank-increasing steps (a
/// coextension followed by up to two extensions, with three new elements
/// required to form a triad), then single-element extensions at constant
/// rank. Intermediate matroids inside one rank-increasing step need not be
/// 3-connected. Classes are deduplicated by canonical form.
pub fn grow_3connected(
    seed: &BinaryMatroid,
    max_rank: usize,
    max_size: usize,
    forbidden: &[BinaryMatroid],
) -> Result<Growth, EnumerateError> {
    if max_size > MAX_GROWTH_SIZE || max_rank > MAX_GROWTH_RANK {
        return Err(EnumerateError::Bounds(format!(
            "max_rank {max_rank} (limit {MAX_GROWTH_RANK}), max_size {max_size} (limit {MAX_GROWTH_SIZE})"
        )));
    }
    if seed.len() > max_size || seed.rank() > max_rank {
        return Err(EnumerateError::Bounds("seed exceeds the bounds".into()));
    }
    if !is_3_connected(seed) {
        return Err(EnumerateError::SeedNotThreeConnected);
    }
    let mut nodes = vec![GrowNode {
        matroid: seed.standardized(),
        parent: None,
        rank_stage: true,
    }];
    let mut fingerprints = vec![canonical_form(seed)?];
    let mut index: HashMap<CanonicalForm, usize> = HashMap::new();
    index.insert(fingerprints[0].clone(), 0);
    // Fingerprints already rejected (not 3-connected or containing a
    // forbidden minor).
    let mut rejected: BTreeSet<CanonicalForm> = BTreeSet::new();

    let admit = |cands: Vec<BinaryMatroid>,
                 rejected: &BTreeSet<CanonicalForm>|
     -> Result<Vec<(CanonicalForm, BinaryMatroid, bool)>, EnumerateError> {
        cands
            .into_par_iter()
            .map(|c| {
                let f = canonical_form(&c)?;
                if rejected.contains(&f) {
                    return Ok((f, c, false));
                }
                let ok = is_3_connected(&c) && forbidden.iter().all(|x| has_minor(&c, x).is_none());
                Ok((f, c, ok))
            })
            .collect()
    };

    for rank in seed.rank()..=max_rank {
        // Constant-rank closure at this rank, breadth first.
        let mut queue: Vec<usize> = (0..nodes.len())
            .filter(|&i| nodes[i].matroid.rank() == rank)
            .collect();
        while let Some(i) = queue.first().copied() {
            queue.remove(0);
            let m = nodes[i].matroid.clone();
            if m.len() >= max_size {
                continue;
            }
            let existing: BTreeSet<u64> = m.columns().iter().copied().collect();
            let mut cands = Vec::new();
            for v in 1..1u64 << rank {
                if !existing.contains(&v) {
                    cands.push(extend_by(&m, v)?);
                }
            }
            for (f, c, ok) in admit(cands, &rejected)? {
                if !ok {
                    rejected.insert(f);
                    continue;
                }
                if index.contains_key(&f) {
                    continue;
                }
                index.insert(f.clone(), nodes.len());
                fingerprints.push(f);
                queue.push(nodes.len());
                nodes.push(GrowNode {
                    matroid: c.standardized(),
                    parent: Some(i),
                    rank_stage: false,
                });
            }
        }
        if rank == max_rank {
            break;
        }
        // Rank-increasing steps from matroids reached by rank increases only.
        let sources: Vec<usize> = (0..nodes.len())
            .filter(|&i| nodes[i].rank_stage && nodes[i].matroid.rank() == rank)
            .collect();
        for i in sources {
            let m = nodes[i].matroid.clone();
            let cands = rank_steps(&m, max_size)?;
            for (f, c, ok) in admit(cands, &rejected)? {
                if !ok {
                    rejected.insert(f);
                    continue;
                }
                match index.get(&f) {
                    Some(&j) => {
                        // A class first met through a later step still counts as
                        // reachable by rank increases.
                        if !nodes[j].rank_stage && nodes[j].matroid.rank() == rank + 1 {
                            nodes[j].rank_stage = true;
                            nodes[j].parent = Some(i);
                            nodes[j].matroid = c.standardized();
                        }
                    }
                    None => {
                        index.insert(f.clone(), nodes.len());
                        fingerprints.push(f);
                        nodes.push(GrowNode {
                            matroid: c.standardized(),
                            parent: Some(i),
                            rank_stage: true,
                        });
                    }
                }
            }
        }
    }

    let chains = (0..nodes.len())
        .map(|i| {
            let mut steps = vec![nodes[i].matroid.clone()];
            let mut cur = nodes[i].parent;
            while let Some(p) = cur {
                steps.push(nodes[p].matroid.clone());
                cur = nodes[p].parent;
            }
            steps.reverse();
            SplitterChain { steps }
        })
        .collect();
    Ok(Growth {
        chains,
        fingerprints,
    })
}

/// Candidates for one rank-increasing step from `m` (standard form): a
/// coextension by any row, then up to two new columns. Three-element steps
/// keep only those whose new elements form a triad.
fn rank_steps(m: &BinaryMatroid, max_size: usize) -> Result<Vec<BinaryMatroid>, EnumerateError> {
    let width = m.len() - m.rank();
    let mut out = Vec::new();
    for row in 0..1u64 << width {
        let c = coextend_by(m, row)?;
        if c.len() > max_size {
            continue;
        }
        out.push(c.clone());
        let r = c.rank();
        let existing: BTreeSet<u64> = c.columns().iter().copied().collect();
        let fresh: Vec<u64> = (1..1u64 << r).filter(|v| !existing.contains(v)).collect();
        for (a, &v1) in fresh.iter().enumerate() {
            if c.len() + 1 > max_size {
                break;
            }
            let c1 = extend_by(&c, v1)?;
            out.push(c1.clone());
            if c.len() + 2 > max_size {
                continue;
            }
            for &v2 in &fresh[a + 1..] {
                let c2 = extend_by(&c1, v2)?;
                if c2.is_cocircuit_mask(new_elements_mask(m, &c2)) {
                    out.push(c2);
                }
            }
        }
    }
    Ok(out)
}

/// Elements of `grown` whose labels are not in `base`.
fn new_elements_mask(base: &BinaryMatroid, grown: &BinaryMatroid) -> u64 {
    grown
        .labels()
        .iter()
        .enumerate()
        .filter(|(_, l)| base.index_of(l).is_err())
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;
    use crate::matroid::numbered_labels;

    fn std_form(d: &str) -> BinaryMatroid {
        let d: BitMatrix = d.parse().unwrap();
        let n = d.n_rows() + d.n_cols();
        BinaryMatroid::from_standard_form(&d, numbered_labels(n)).unwrap()
    }

    fn f7() -> BinaryMatroid {
        std_form("0111\n1011\n1101")
    }

    #[test]
    fn fresh_labels() {
        assert_eq!(fresh_label(&f7()), Label::from(8));
        let named = f7().relabel(&[("7".into(), "x".into())].into()).unwrap();
        assert_eq!(fresh_label(&named), Label::from(7));
    }

    #[test]
    fn f7_has_no_simple_extension() {
        assert!(extensions(&f7(), true, false).unwrap().is_empty());
    }

    #[test]
    fn rank_zero_cannot_be_extended() {
        let m = BinaryMatroid::from_columns(0, &[0], numbered_labels(1)).unwrap();
        assert_eq!(
            extensions(&m, true, true).unwrap_err(),
            EnumerateError::RankZero
        );
    }

    #[test]
    fn non_simple_mode_admits_loops_and_parallels() {
        let classes = extensions(&f7(), false, false).unwrap();
        let total: usize = classes.iter().map(|c| c.vectors.len()).sum();
        assert_eq!(total, 8);
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn coextensions_need_standard_form() {
        let m = f7().reorder(&[6, 5, 4, 3, 2, 1, 0]);
        assert_eq!(
            coextensions(&m, true, true).unwrap_err(),
            EnumerateError::NotStandardForm
        );
    }

    #[test]
    fn minor_of_itself_is_identity_sized() {
        let m = f7();
        let w = has_minor(&m, &m).unwrap();
        assert!(w.contract_set.is_empty() && w.delete_set.is_empty());
        assert!(w.verify(&m, &m));
    }

    #[test]
    fn row_types_for_small_matrix() {
        let m = std_form("011\n101");
        let t = coextension_row_types(&m, &[0b01]).unwrap();
        assert_eq!(RowTypes::strings(&t.type_i, 3), vec!["100", "101"]);
        assert_eq!(RowTypes::strings(&t.type_ii, 3), vec!["101", "011"]);
        assert_eq!(RowTypes::strings(&t.type_iii, 3), vec!["010", "100"]);
    }

    #[test]
    fn growth_guards() {
        assert!(matches!(
            grow_3connected(&f7(), 3, 99, &[]),
            Err(EnumerateError::Bounds(_))
        ));
        let u = std_form("10\n01");
        assert_eq!(
            grow_3connected(&u, 3, 5, &[]).unwrap_err(),
            EnumerateError::SeedNotThreeConnected
        );
    }

    #[test]
    fn f7_cannot_grow_within_seven_elements() {
        let g = grow_3connected(&f7(), 3, 7, &[]).unwrap();
        assert_eq!(g.chains.len(), 1);
        assert_eq!(g.chains[0].steps.len(), 1);
    }
}
