//! Exhaustive enumeration of origamis, orbit classification, property
//! surveys and corpus persistence.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::OrigamiError;
use crate::origami::{HermiteForm, Origami};
use crate::permutation::Permutation;
use crate::properties::nonuniform_direction;
use crate::sl2::{orbit, OrbitRecord};

pub const DEFAULT_MAX_N: usize = 8;
pub const CORPUS_VERSION: u32 = 1;
/// Directions `|dx|, |dy| ≤ 3` are checked for cylinder uniformity.
pub const UNIFORMITY_NORM: u32 = 3;

/// Largest square count accepted by [`enumerate`], from `ORIGAMI_MAX_N` if set.
pub fn max_n() -> usize {
    std::env::var("ORIGAMI_MAX_N")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

fn check_n(n: usize) -> Result<(), OrigamiError> {
    let cap = max_n();
    if n == 0 || n > cap {
        return Err(OrigamiError::OutOfRange(format!(
            "square count {n} outside 1..={cap}"
        )));
    }
    Ok(())
}

/// Partitions of `n` into non-increasing parts.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The permutation with consecutive cycles of the given lengths.
fn cycle_type_representative(n: usize, parts: &[usize]) -> Permutation {
    let mut images = Vec::with_capacity(n);
    let mut start = 0u32;
    for &len in parts {
        let len = len as u32;
        images.extend((0..len).map(|k| start + (k + 1) % len));
        start += len;
    }
    Permutation::from_images(images).expect("cycle representative is a bijection")
}

/// Candidate pairs examined at square count `n`: one `h` per cycle type
/// times every `v`.
pub fn node_count(n: usize) -> u64 {
    partitions(n).len() as u64 * (1..=n as u64).product::<u64>()
}

/// Canonical forms of all transitive pairs `(h, v)` with `h` of cycle type
/// `parts` and `v(0) = first`.
fn enumerate_slice(n: usize, parts: &[usize], first: u32) -> Vec<Origami> {
    let h = cycle_type_representative(n, parts);
    let rest: Vec<u32> = (0..n as u32).filter(|&x| x != first).collect();
    let mut seen = HashSet::new();
    for tail in rest.iter().copied().permutations(n - 1) {
        let mut images = Vec::with_capacity(n);
        images.push(first);
        images.extend(tail);
        let v = Permutation::from_images(images).expect("permutation of 0..n");
        if let Ok(o) = Origami::new(h.clone(), v) {
            seen.insert(o.canonical_form());
        }
    }
    seen.into_iter().collect()
}

/// One representative (the canonical form) per isomorphism class of
/// origamis with `n` squares and genus at least `genus_min`, sorted.
pub fn enumerate(n: usize, genus_min: usize) -> Result<Vec<Origami>, OrigamiError> {
    check_n(n)?;
    let slices: Vec<(Vec<usize>, u32)> = partitions(n)
        .into_iter()
        .flat_map(|p| (0..n as u32).map(move |f| (p.clone(), f)))
        .collect();
    let found: BTreeSet<Origami> = slices
        .par_iter()
        .map(|(parts, first)| enumerate_slice(n, parts, *first))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .filter(|o| o.genus() >= genus_min)
        .collect();
    Ok(found.into_iter().collect())
}

/// Partitions `entries` into SL(2,Z)-orbits and evaluates each orbit once.
/// Records are sorted by their smallest member, so the result does not
/// depend on the input order.
pub fn classify_orbits(entries: &[Origami]) -> Vec<OrbitRecord> {
    let mut sorted: Vec<Origami> = entries.iter().map(Origami::canonical_form).collect();
    sorted.sort();
    sorted.dedup();
    let mut assigned: HashSet<Origami> = HashSet::new();
    let mut orbits = Vec::new();
    for o in &sorted {
        if assigned.contains(o) {
            continue;
        }
        let orb = orbit(o);
        assigned.extend(orb.members().iter().cloned());
        orbits.push(orb);
    }
    let mut records: Vec<OrbitRecord> = orbits.into_par_iter().map(OrbitRecord::evaluate).collect();
    records.sort_by(|a, b| a.orbit.min_member().cmp(b.orbit.min_member()));
    records
}

#[derive(Clone, Debug)]
pub struct SurveyConfig {
    pub n_max: usize,
    pub genus_min: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Stop before a square count whose candidate pairs would exceed this
    /// cumulative total.
    pub max_nodes: Option<u64>,
}

impl SurveyConfig {
    pub fn new(n_max: usize, genus_min: usize) -> Self {
        SurveyConfig {
            n_max,
            genus_min,
            jobs: None,
            max_nodes: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyCounts {
    pub n: usize,
    pub origamis_up_to_iso: usize,
    pub orbits: usize,
    pub genus2plus_orbits: usize,
    /// Balanced orbits of genus at least 2.
    pub balanced_orbits: usize,
    pub corners_orbits: usize,
    pub normal_origamis: usize,
    /// `balanced_orbits / genus2plus_orbits`, as a reduced fraction.
    pub balanced_fraction: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub n: usize,
    /// Smallest canonical member, one-based images.
    pub h: Vec<usize>,
    pub v: Vec<usize>,
    pub size: usize,
    pub genus: usize,
    pub zeros: Vec<usize>,
    pub corners: bool,
    pub normal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub implication: String,
    pub h: Vec<usize>,
    pub v: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuntimeStat {
    pub n: usize,
    pub wall_ms: f64,
    pub nodes: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchReport {
    pub n_max: usize,
    pub genus_min: usize,
    pub counts: Vec<SurveyCounts>,
    pub balanced: Vec<OrbitSummary>,
    pub implication_violations: Vec<Violation>,
    /// Set when the survey stopped early; names the first skipped square count.
    pub truncated: Option<String>,
    /// Timing is excluded from the serialized report to keep it reproducible.
    #[serde(skip)]
    pub runtime_stats: Vec<RuntimeStat>,
    #[serde(skip)]
    pub records: Vec<OrbitRecord>,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn summary(r: &OrbitRecord) -> OrbitSummary {
    let rep = r.orbit.min_member();
    OrbitSummary {
        n: rep.n(),
        h: rep.h().one_based(),
        v: rep.v().one_based(),
        size: r.orbit.len(),
        genus: r.stratum.genus,
        zeros: r.stratum.zero_orders.clone(),
        corners: r.corners,
        normal: r.contains_normal,
    }
}

fn violations(r: &OrbitRecord) -> Vec<Violation> {
    let mut out = Vec::new();
    if r.stratum.genus < 2 {
        return out;
    }
    let rep = r.orbit.min_member();
    let mut push = |implication: &str, o: &Origami, detail: String| {
        out.push(Violation {
            implication: implication.to_string(),
            h: o.h().one_based(),
            v: o.v().one_based(),
            detail,
        })
    };
    if r.corners && !r.balanced {
        push("corners => balanced", rep, "orbit is unbalanced".into());
    }
    if r.contains_normal {
        if !r.balanced {
            push("normal => balanced", rep, "orbit is unbalanced".into());
        }
        for m in r.orbit.members() {
            if let Some(d) = nonuniform_direction(m, UNIFORMITY_NORM) {
                push(
                    "normal => uniform cylinders",
                    m,
                    format!("cylinders in direction {d} differ in width or height"),
                );
            }
        }
    }
    out
}

fn fraction(num: usize, den: usize) -> Option<String> {
    if den == 0 {
        return None;
    }
    let g = num_integer::gcd(num, den);
    Some(format!("{}/{}", num / g, den / g))
}

fn survey_inner(config: &SurveyConfig) -> Result<SearchReport, OrigamiError> {
    check_n(config.n_max)?;
    let mut report = SearchReport {
        n_max: config.n_max,
        genus_min: config.genus_min,
        counts: Vec::new(),
        balanced: Vec::new(),
        implication_violations: Vec::new(),
        truncated: None,
        runtime_stats: Vec::new(),
        records: Vec::new(),
    };
    let mut nodes_so_far = 0u64;
    for n in 1..=config.n_max {
        let nodes = node_count(n);
        if let Some(budget) = config.max_nodes {
            if nodes_so_far + nodes > budget {
                report.truncated = Some(format!(
                    "stopped before n={n}: {} candidate pairs exceed the budget of {budget}",
                    nodes_so_far + nodes
                ));
                break;
            }
        }
        nodes_so_far += nodes;
        let start = Instant::now();
        let origamis = enumerate(n, config.genus_min)?;
        let records = classify_orbits(&origamis);
        let higher: Vec<&OrbitRecord> = records.iter().filter(|r| r.stratum.genus >= 2).collect();
        let balanced = higher.iter().filter(|r| r.balanced).count();
        report.counts.push(SurveyCounts {
            n,
            origamis_up_to_iso: origamis.len(),
            orbits: records.len(),
            genus2plus_orbits: higher.len(),
            balanced_orbits: balanced,
            corners_orbits: higher.iter().filter(|r| r.corners).count(),
            normal_origamis: records
                .iter()
                .filter(|r| r.contains_normal)
                .map(|r| r.orbit.len())
                .sum(),
            balanced_fraction: fraction(balanced, higher.len()),
        });
        report
            .balanced
            .extend(higher.iter().filter(|r| r.balanced).map(|r| summary(r)));
        let found: Vec<Violation> = records.par_iter().flat_map(violations).collect();
        report.implication_violations.extend(found);
        report.runtime_stats.push(RuntimeStat {
            n,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
            nodes,
        });
        report.records.extend(records);
    }
    Ok(report)
}

/// Enumerates, classifies and evaluates every square count up to `n_max`.
pub fn run_survey(config: &SurveyConfig) -> Result<SearchReport, OrigamiError> {
    match config.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| OrigamiError::OutOfRange(format!("thread pool: {e}")))?
            .install(|| survey_inner(config)),
        None => survey_inner(config),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusFlags {
    pub balanced: bool,
    pub corners: bool,
    pub normal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    pub n: usize,
    pub h: Vec<usize>,
    pub v: Vec<usize>,
    pub genus: usize,
    pub zeros: Vec<usize>,
    pub orbit: String,
    pub flags: CorpusFlags,
    pub holonomy: HermiteForm,
}

impl CorpusEntry {
    pub fn origami(&self) -> Result<Origami, OrigamiError> {
        Origami::new(
            Permutation::from_one_based(&self.h)?,
            Permutation::from_one_based(&self.v)?,
        )
    }
}

/// SHA-256 of the canonical text serialization, in hex.
pub fn corpus_id(o: &Origami) -> String {
    hex::encode(Sha256::digest(o.canonical_form().to_string().as_bytes()))
}

/// One entry per orbit member, sorted by square count and id.
pub fn corpus_entries(records: &[OrbitRecord]) -> Vec<CorpusEntry> {
    let mut entries: Vec<CorpusEntry> = records
        .par_iter()
        .flat_map_iter(|r| {
            let orbit_id = corpus_id(r.orbit.min_member());
            r.orbit
                .members()
                .iter()
                .map(|m| CorpusEntry {
                    id: corpus_id(m),
                    n: m.n(),
                    h: m.h().one_based(),
                    v: m.v().one_based(),
                    genus: r.stratum.genus,
                    zeros: r.stratum.zero_orders.clone(),
                    orbit: orbit_id.clone(),
                    flags: CorpusFlags {
                        balanced: r.balanced,
                        corners: r.corners,
                        normal: r.contains_normal,
                    },
                    holonomy: m.holonomy_lattice(),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    entries.sort_by(|a, b| (a.n, &a.id).cmp(&(b.n, &b.id)));
    entries
}

#[derive(Serialize, Deserialize)]
struct CorpusFile {
    version: u32,
    entries: Vec<CorpusEntry>,
}

pub fn save_corpus(entries: &[CorpusEntry], path: &Path) -> Result<(), OrigamiError> {
    let file = CorpusFile {
        version: CORPUS_VERSION,
        entries: entries.to_vec(),
    };
    std::fs::write(path, serde_json::to_string(&file)? + "\n")?;
    Ok(())
}

pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>, OrigamiError> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let found = value.get("version").and_then(serde_json::Value::as_u64);
    if found != Some(CORPUS_VERSION as u64) {
        return Err(OrigamiError::SchemaVersion {
            found: found.unwrap_or(0),
            expected: CORPUS_VERSION as u64,
        });
    }
    let file: CorpusFile = serde_json::from_value(value)?;
    Ok(file.entries)
}
