//! Sphere-intersection classifiers and their VC-dimension.
//!
//! Two classes over a set `E`:
//!
//! * two-parameter: `h_{u,v}(x) = 1` iff `||x - u|| = ||x - v|| = t`, `u != v` in `E`;
//! * one-parameter: `h_y(x) = 1` iff `||x - y|| = t`, `y` in `E`.
//!
//! For a candidate set `C = (c_1, ..., c_n)` each `w ∈ E` gets a mask
//! `m(w) = { i : ||c_i - w|| = t }`. The pattern of `h_y` on `C` is `m(y)`
//! and the pattern of `h_{u,v}` is `m(u) & m(v)`, so shattering reduces to
//! bit operations on at most `2^n` distinct masks.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{PointId, Space};
use crate::geometry::Geometry;
use crate::graph::DistanceGraph;
use crate::pointset::PointSet;
use crate::prism::{classify_prism, enumerate_prisms, Prism, PrismClass, PrismFilter, PrismOrder};

/// Largest candidate set size the pattern encoding accepts.
pub const MAX_PATTERN_WIDTH: usize = 20;
/// Candidate sets are packed into a `u128`, 24 bits per point.
const MAX_PACKED: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassKind {
    TwoParam,
    OneParam,
}

impl std::str::FromStr for ClassKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-param" => Ok(ClassKind::TwoParam),
            "one-param" => Ok(ClassKind::OneParam),
            _ => Err(Error::InvalidArgument(format!("unknown class '{s}' (two-param | one-param)"))),
        }
    }
}

impl ClassKind {
    /// Largest size a shattered set can have: `d` for two parameters,
    /// `d + 1` for one.
    pub fn structural_cap(self, d: usize) -> usize {
        match self {
            ClassKind::TwoParam => d,
            ClassKind::OneParam => d + 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Hypothesis {
    TwoParam { u: PointId, v: PointId },
    OneParam { y: PointId },
}

impl Hypothesis {
    pub fn two_param(u: PointId, v: PointId) -> Result<Self> {
        if u == v {
            return Err(Error::InvalidHypothesis("u and v must differ".into()));
        }
        Ok(Hypothesis::TwoParam { u, v })
    }

    pub fn one_param(y: PointId) -> Self {
        Hypothesis::OneParam { y }
    }

    pub fn kind(&self) -> ClassKind {
        match self {
            Hypothesis::TwoParam { .. } => ClassKind::TwoParam,
            Hypothesis::OneParam { .. } => ClassKind::OneParam,
        }
    }

    pub fn evaluate(&self, x: PointId, space: &Space) -> bool {
        match *self {
            Hypothesis::TwoParam { u, v } => space.at_t(x, u) && space.at_t(x, v),
            Hypothesis::OneParam { y } => space.at_t(x, y),
        }
    }

    /// Whether the parameters are admissible over `domain`.
    pub fn belongs_to(&self, domain: &PointSet) -> bool {
        match *self {
            Hypothesis::TwoParam { u, v } => u != v && domain.contains(u) && domain.contains(v),
            Hypothesis::OneParam { y } => domain.contains(y),
        }
    }

    /// `{ x ∈ domain : h(x) = 1 }`.
    pub fn support(&self, geometry: &Geometry, domain: &PointSet) -> PointSet {
        match *self {
            Hypothesis::TwoParam { u, v } => geometry
                .sphere_within(u, domain)
                .intersection(&geometry.sphere(v)),
            Hypothesis::OneParam { y } => geometry.sphere_within(y, domain),
        }
    }
}

/// Ordered two-parameter hypotheses `(u, v)`, `u != v`, `u` major, over the domain.
pub fn two_param_scan(domain: &PointSet) -> impl Iterator<Item = Hypothesis> + '_ {
    domain.iter().flat_map(move |u| {
        domain
            .iter()
            .filter(move |&v| v != u)
            .map(move |v| Hypothesis::TwoParam { u, v })
    })
}

pub fn class_scan(domain: &PointSet, kind: ClassKind) -> Box<dyn Iterator<Item = Hypothesis> + '_> {
    match kind {
        ClassKind::TwoParam => Box::new(two_param_scan(domain)),
        ClassKind::OneParam => Box::new(domain.iter().map(Hypothesis::one_param)),
    }
}

/// `m(w)` for every `w` in the domain, in canonical order.
fn sphere_masks(candidate: &[PointId], domain: &PointSet, space: &Space) -> Vec<u64> {
    domain
        .iter()
        .map(|w| {
            candidate
                .iter()
                .enumerate()
                .filter(|(_, &c)| space.at_t(c, w))
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect()
}

/// Distinct mask values with multiplicities capped at 2.
fn mask_multiset(masks: &[u64], n: usize) -> Vec<(u64, u8)> {
    let mut counts = vec![0u8; 1 << n];
    for &m in masks {
        let c = &mut counts[m as usize];
        *c = (*c + 1).min(2);
    }
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(m, &c)| (m as u64, c))
        .collect()
}

fn patterns_from_masks(masks: &[u64], n: usize, kind: ClassKind) -> BTreeSet<u64> {
    let distinct = mask_multiset(masks, n);
    let full = 1usize << n;
    let mut seen = BTreeSet::new();
    match kind {
        ClassKind::OneParam => {
            seen.extend(distinct.iter().map(|&(m, _)| m));
        }
        ClassKind::TwoParam => {
            'outer: for (i, &(a, ca)) in distinct.iter().enumerate() {
                if ca >= 2 {
                    seen.insert(a);
                }
                for &(b, _) in &distinct[i + 1..] {
                    seen.insert(a & b);
                    if seen.len() == full {
                        break 'outer;
                    }
                }
            }
        }
    }
    seen
}

fn check_candidate(candidate: &[PointId], domain: &PointSet) -> Result<()> {
    if candidate.len() > MAX_PATTERN_WIDTH {
        return Err(Error::PatternTooWide(candidate.len()));
    }
    let distinct: BTreeSet<_> = candidate.iter().collect();
    if distinct.len() != candidate.len() {
        return Err(Error::InvalidArgument("candidate points must be distinct".into()));
    }
    if let Some(c) = candidate.iter().find(|&&c| !domain.contains(c)) {
        return Err(Error::InvalidArgument(format!("candidate point {} not in E", c.0)));
    }
    Ok(())
}

/// All restrictions `(h(c_1), ..., h(c_n))` of the class to `candidate`,
/// bit `i` holding `h(c_i)`.
pub fn dichotomy_patterns(
    domain: &PointSet,
    candidate: &[PointId],
    kind: ClassKind,
    space: &Space,
) -> Result<BTreeSet<u64>> {
    check_candidate(candidate, domain)?;
    let masks = sphere_masks(candidate, domain, space);
    Ok(patterns_from_masks(&masks, candidate.len(), kind))
}

pub fn is_shattered(domain: &PointSet, candidate: &[PointId], kind: ClassKind, space: &Space) -> Result<bool> {
    Ok(dichotomy_patterns(domain, candidate, kind, space)?.len() == 1 << candidate.len())
}

fn shattered_unchecked(domain: &PointSet, candidate: &[PointId], kind: ClassKind, space: &Space) -> bool {
    let masks = sphere_masks(candidate, domain, space);
    patterns_from_masks(&masks, candidate.len(), kind).len() == 1 << candidate.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    /// Bit `i` set iff center point `i` belongs to the subset.
    pub mask: u64,
    pub subset: Vec<PointId>,
    pub hypothesis: Hypothesis,
}

/// A prism center together with a classifier for each of its subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShatterWitness {
    pub prism: Prism,
    pub assignment: Vec<WitnessEntry>,
    /// `y(A)` for each proper nonempty subset, indexed like `assignment`.
    poles: Vec<Option<PointId>>,
}

impl ShatterWitness {
    /// Re-evaluates every assigned classifier on every center point.
    pub fn validate(&self, space: &Space) -> bool {
        validate_assignment(&self.prism.center, &self.assignment, space)
    }

    /// One-parameter classifiers built from the same poles: `h_{y(A)}` for
    /// proper nonempty `A`, `h_z` for the whole center, and a pole-free
    /// point of `E` for the empty set.
    pub fn one_param_assignment(&self, domain: &PointSet, space: &Space) -> Option<Vec<WitnessEntry>> {
        let center = &self.prism.center;
        let n = center.len();
        let full = (1u64 << n) - 1;
        let masks = sphere_masks(center, domain, space);
        let ids = domain.to_vec();
        self.assignment
            .iter()
            .zip(&self.poles)
            .map(|(entry, pole)| {
                let y = if entry.mask == full {
                    self.prism.tail[0]
                } else if entry.mask == 0 {
                    ids[masks.iter().position(|&m| m == 0)?]
                } else {
                    (*pole)?
                };
                Some(WitnessEntry {
                    mask: entry.mask,
                    subset: entry.subset.clone(),
                    hypothesis: Hypothesis::one_param(y),
                })
            })
            .collect()
    }
}

pub fn validate_assignment(center: &[PointId], assignment: &[WitnessEntry], space: &Space) -> bool {
    let n = center.len();
    assignment.len() == 1 << n
        && assignment.iter().enumerate().all(|(i, entry)| {
            entry.mask == i as u64
                && center
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| entry.hypothesis.evaluate(c, space) == (entry.mask >> j & 1 == 1))
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
pub enum WitnessError {
    #[error("prism is not affinely nondegenerate in E")]
    NotApplicable,
    #[error("no classifier isolates subset {subset:?}")]
    Unrealizable { subset: Vec<PointId> },
}

/// Builds classifiers for every subset of a prism's center: `h_{z,w}` for the
/// whole center, `h_{z,y(A)}` for proper nonempty `A` where `y(A) ∈ E` is a
/// pole of `A` at distance `t` from no other center point, and the first
/// canonical `h_{u,v}` vanishing on the center for the empty set.
pub fn shatter_witness(
    prism: &Prism,
    domain: &PointSet,
    geometry: &Geometry,
) -> std::result::Result<ShatterWitness, WitnessError> {
    let space = geometry.space();
    let in_domain = prism.components().all(|c| domain.contains(c));
    let class = classify_prism(prism, geometry).map_err(|_| WitnessError::NotApplicable)?;
    if !in_domain || class != PrismClass::AffinelyNondegenerate || prism.size() > MAX_PATTERN_WIDTH {
        return Err(WitnessError::NotApplicable);
    }
    let center = &prism.center;
    let n = center.len();
    let full = (1u64 << n) - 1;
    let [z, w] = prism.tail;
    let ids = domain.to_vec();
    let masks = sphere_masks(center, domain, space);

    let mut assignment = Vec::with_capacity(1 << n);
    let mut poles = Vec::with_capacity(1 << n);
    for mask in 0..=full {
        let subset: Vec<PointId> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| center[i]).collect();
        let unrealizable = || WitnessError::Unrealizable { subset: subset.clone() };
        let (hypothesis, pole) = if mask == full {
            (Hypothesis::TwoParam { u: z, v: w }, None)
        } else if mask == 0 {
            let pair = ids.iter().enumerate().find_map(|(i, &u)| {
                ids.iter()
                    .enumerate()
                    .find(|&(j, _)| j != i && masks[i] & masks[j] == 0)
                    .map(|(_, &v)| (u, v))
            });
            let (u, v) = pair.ok_or_else(unrealizable)?;
            (Hypothesis::TwoParam { u, v }, None)
        } else {
            let pos = masks.iter().position(|&m| m == mask).ok_or_else(unrealizable)?;
            let y = ids[pos];
            let partner = if y == z { w } else { z };
            (Hypothesis::TwoParam { u: partner, v: y }, Some(y))
        };
        assignment.push(WitnessEntry {
            mask,
            subset,
            hypothesis,
        });
        poles.push(pole);
    }
    Ok(ShatterWitness {
        prism: prism.clone(),
        assignment,
        poles,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum VcValue {
    Exact(usize),
    /// The search budget ran out; at least this many points are shattered.
    AtLeast(usize),
}

impl VcValue {
    pub fn lower(self) -> usize {
        match self {
            VcValue::Exact(v) | VcValue::AtLeast(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperBoundSource {
    /// Exhaustive search found no shattered set one above the value.
    Exhaustive,
    /// The value reached the structural cap and the level above was not searched.
    Structural,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VcBudget {
    /// Candidate sets per search level.
    pub max_candidates: usize,
    /// Prisms tried by the prism-guided witness search.
    pub max_prisms: usize,
    /// Search the level above the structural cap instead of trusting the cap.
    pub search_above_cap: bool,
    /// Wall-clock limit; passing it turns the answer into a lower bound.
    #[serde(skip)]
    pub deadline: Option<Instant>,
}

impl Default for VcBudget {
    fn default() -> Self {
        Self {
            max_candidates: 4_000_000,
            max_prisms: 200_000,
            search_above_cap: true,
            deadline: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStat {
    pub n: usize,
    pub candidates: usize,
    pub shattered: bool,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VcReport {
    pub kind: ClassKind,
    pub value: VcValue,
    pub structural_cap: usize,
    pub upper_bound: UpperBoundSource,
    /// A largest shattered set found.
    pub shattered_set: Vec<PointId>,
    pub prism_witness: Option<ShatterWitness>,
    pub prisms_tried: usize,
    /// The class over `E` is empty and the value 0 is a convention.
    pub degenerate_input: bool,
    /// A set larger than the structural cap was shattered.
    pub cap_violated: bool,
    /// The deadline passed before the search finished.
    pub timed_out: bool,
    pub levels: Vec<LevelStat>,
}

/// Tries affinely nondegenerate `d`-prisms of the graph (one representative
/// per unordered prism) until one yields a valid [`ShatterWitness`].
pub fn prism_guided_witness(graph: &DistanceGraph, max_prisms: usize) -> (Option<ShatterWitness>, usize) {
    let d = graph.params().d();
    let geometry = graph.geometry();
    let mut tried = 0;
    for prism in enumerate_prisms(graph, d, PrismFilter::AffinelyNondegenerate, PrismOrder::Unordered)
        .take(max_prisms)
    {
        tried += 1;
        if let Ok(w) = shatter_witness(&prism, graph.vertex_set(), geometry) {
            if w.validate(geometry.space()) {
                return (Some(w), tried);
            }
        }
    }
    (None, tried)
}

fn pack(ids: &[PointId]) -> u128 {
    ids.iter().fold(0u128, |acc, id| acc << 24 | id.0 as u128)
}

fn unpack(key: u128, n: usize) -> Vec<PointId> {
    (0..n)
        .rev()
        .map(|i| PointId((key >> (24 * i) & 0xFF_FFFF) as u32))
        .collect()
}

/// Every `n`-subset of some support: the only sets that can carry the
/// all-ones pattern. `None` when the count exceeds `max`.
fn candidates(supports: &[Vec<PointId>], n: usize, max: usize) -> Option<Vec<u128>> {
    let mut keys: Vec<u128> = Vec::new();
    for s in supports {
        if s.len() < n {
            continue;
        }
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            let c: Vec<PointId> = idx.iter().map(|&i| s[i]).collect();
            keys.push(pack(&c));
            if keys.len() > max.saturating_mul(4).max(1 << 16) {
                keys.sort_unstable();
                keys.dedup();
                if keys.len() > max {
                    return None;
                }
            }
            let mut i = n;
            let advanced = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if idx[i] < s.len() - n + i {
                    idx[i] += 1;
                    for j in i + 1..n {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break true;
                }
            };
            if !advanced {
                break;
            }
        }
    }
    keys.sort_unstable();
    keys.dedup();
    (keys.len() <= max).then_some(keys)
}

/// Distinct nonempty supports of the class over the domain, sorted.
fn distinct_supports(graph: &DistanceGraph, kind: ClassKind) -> Vec<Vec<PointId>> {
    let verts = graph.num_vertices();
    let mut supports: Vec<Vec<PointId>> = match kind {
        ClassKind::OneParam => (0..verts).map(|i| graph.neighbors_at(i).to_vec()).collect(),
        ClassKind::TwoParam => (0..verts)
            .into_par_iter()
            .flat_map_iter(|i| {
                let a = graph.neighbors_at(i);
                (i + 1..verts).map(move |j| a.intersection(graph.neighbors_at(j)).to_vec())
            })
            .collect(),
    };
    supports.retain(|s| !s.is_empty());
    supports.sort_unstable();
    supports.dedup();
    supports
}

/// Exact VC-dimension of the class over the graph's vertex set.
///
/// Shattered sets are searched level by level among subsets of single
/// supports, since the all-ones pattern needs one classifier covering the
/// whole set. For the two-parameter class the level `d` is first attempted
/// through prism witnesses. The search stops at the first level with no
/// shattered set; shattering is inherited by subsets, so that level minus one
/// is the answer.
pub fn vc_dimension(graph: &DistanceGraph, kind: ClassKind, budget: &VcBudget) -> VcReport {
    let d = graph.params().d();
    let cap = kind.structural_cap(d);
    let domain = graph.vertex_set();
    let space = graph.geometry().space();
    let mut report = VcReport {
        kind,
        value: VcValue::Exact(0),
        structural_cap: cap,
        upper_bound: UpperBoundSource::None,
        shattered_set: Vec::new(),
        prism_witness: None,
        prisms_tried: 0,
        degenerate_input: false,
        cap_violated: false,
        timed_out: false,
        levels: Vec::new(),
    };
    let class_empty = match kind {
        ClassKind::TwoParam => domain.len() < 2,
        ClassKind::OneParam => domain.is_empty(),
    };
    if class_empty {
        report.degenerate_input = true;
        report.upper_bound = UpperBoundSource::Exhaustive;
        return report;
    }

    let mut level = 1;
    if kind == ClassKind::TwoParam {
        let (witness, tried) = prism_guided_witness(graph, budget.max_prisms);
        report.prisms_tried = tried;
        if let Some(w) = witness {
            report.shattered_set = w.prism.center.clone();
            report.levels.push(LevelStat {
                n: d,
                candidates: tried,
                shattered: true,
                method: "prism".into(),
            });
            report.prism_witness = Some(w);
            level = d + 1;
        }
    }

    let supports = distinct_supports(graph, kind);
    loop {
        let lower = level - 1;
        if level > cap && !budget.search_above_cap {
            report.value = VcValue::Exact(lower);
            report.upper_bound = UpperBoundSource::Structural;
            return report;
        }
        if level > MAX_PACKED || level > MAX_PATTERN_WIDTH {
            report.value = VcValue::AtLeast(lower);
            return report;
        }
        let Some(keys) = candidates(&supports, level, budget.max_candidates) else {
            if level > cap {
                report.value = VcValue::Exact(lower);
                report.upper_bound = UpperBoundSource::Structural;
            } else {
                report.value = VcValue::AtLeast(lower);
            }
            return report;
        };
        let timed_out = AtomicBool::new(false);
        let found = keys.par_iter().find_map_first(|&key| {
            if budget.deadline.is_some_and(|d| Instant::now() > d) {
                timed_out.store(true, Ordering::Relaxed);
                return None;
            }
            let c = unpack(key, level);
            shattered_unchecked(domain, &c, kind, space).then_some(c)
        });
        if found.is_none() && timed_out.load(Ordering::Relaxed) {
            report.value = VcValue::AtLeast(lower);
            report.timed_out = true;
            return report;
        }
        report.levels.push(LevelStat {
            n: level,
            candidates: keys.len(),
            shattered: found.is_some(),
            method: "support-search".into(),
        });
        match found {
            Some(c) => {
                if level > cap {
                    report.cap_violated = true;
                }
                report.shattered_set = c;
                level += 1;
            }
            None => {
                report.value = VcValue::Exact(lower);
                report.upper_bound = UpperBoundSource::Exhaustive;
                return report;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum AuditMode {
    /// Every `n`-subset of `E`, up to `max_subsets`.
    Exhaustive { max_subsets: u64 },
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n: usize,
    pub kind: ClassKind,
    pub mode: AuditMode,
    pub examined: u64,
    pub shattered: u64,
    pub first_shattered: Option<Vec<PointId>>,
    /// The budget stopped an exhaustive audit early.
    pub partial: bool,
}

impl AuditReport {
    pub fn none_shattered(&self) -> bool {
        self.shattered == 0
    }
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Looks for shattered `n`-subsets of `E` by direct enumeration or sampling.
pub fn upper_bound_audit(
    domain: &PointSet,
    n: usize,
    kind: ClassKind,
    space: &Space,
    mode: AuditMode,
) -> Result<AuditReport> {
    if n == 0 || n > MAX_PATTERN_WIDTH {
        return Err(Error::PatternTooWide(n));
    }
    let ids = domain.to_vec();
    let mut report = AuditReport {
        n,
        kind,
        mode,
        examined: 0,
        shattered: 0,
        first_shattered: None,
        partial: false,
    };
    match mode {
        AuditMode::Exhaustive { max_subsets } => {
            let total = binomial(ids.len() as u64, n as u64);
            report.partial = total.is_none_or(|t| t > max_subsets);
            // Per-first-element blocks keep the merge in canonical order.
            let blocks: Vec<(u64, u64, Option<Vec<PointId>>)> = (0..ids.len())
                .into_par_iter()
                .map(|first| {
                    let mut examined = 0u64;
                    let mut shattered = 0u64;
                    let mut first_hit = None;
                    let rest = &ids[first + 1..];
                    if rest.len() + 1 < n {
                        return (0, 0, None);
                    }
                    let k = n - 1;
                    let mut idx: Vec<usize> = (0..k).collect();
                    loop {
                        let mut c = vec![ids[first]];
                        c.extend(idx.iter().map(|&i| rest[i]));
                        examined += 1;
                        if shattered_unchecked(domain, &c, kind, space) {
                            shattered += 1;
                            first_hit.get_or_insert(c);
                        }
                        let mut i = k;
                        let advanced = loop {
                            if i == 0 {
                                break false;
                            }
                            i -= 1;
                            if idx[i] < rest.len() - k + i {
                                idx[i] += 1;
                                for j in i + 1..k {
                                    idx[j] = idx[j - 1] + 1;
                                }
                                break true;
                            }
                        };
                        if !advanced {
                            break;
                        }
                    }
                    (examined, shattered, first_hit)
                })
                .collect();
            let mut budget_left = max_subsets;
            for (examined, shattered, hit) in blocks {
                if examined > budget_left {
                    report.partial = true;
                    break;
                }
                budget_left -= examined;
                report.examined += examined;
                report.shattered += shattered;
                if report.first_shattered.is_none() {
                    report.first_shattered = hit;
                }
            }
        }
        AuditMode::Sampled { samples, seed } => {
            if ids.len() < n {
                return Ok(report);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draws: Vec<Vec<PointId>> = (0..samples)
                .map(|_| {
                    let mut pick: Vec<usize> = sample(&mut rng, ids.len(), n).into_vec();
                    pick.sort_unstable();
                    pick.into_iter().map(|i| ids[i]).collect()
                })
                .collect();
            let hits: Vec<bool> = draws
                .par_iter()
                .map(|c| shattered_unchecked(domain, c, kind, space))
                .collect();
            report.examined = samples as u64;
            report.shattered = hits.iter().filter(|&&h| h).count() as u64;
            report.first_shattered = hits.iter().position(|&h| h).map(|i| draws[i].clone());
        }
    }
    Ok(report)
}
