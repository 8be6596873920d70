//! Prisms: a tail pair `(y, z)` and an ordered center `(x^1, ..., x^n)` with
//! every center point at distance `t` from both tail points.
//!
//! In the distance graph a prism is a copy of `K_{2,n}`; its center is an
//! ordered choice of `n` common neighbors of the tail. Counts here are over
//! ordered tails and ordered centers unless stated otherwise, so an
//! unordered prism shows up `2 * n!` times.

use std::collections::BTreeSet;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldParams, PointId};
use crate::geometry::{is_affinely_independent, Geometry};
use crate::graph::DistanceGraph;
use crate::pointset::PointSet;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Prism {
    pub tail: [PointId; 2],
    pub center: Vec<PointId>,
}

impl Prism {
    pub fn new(tail: [PointId; 2], center: Vec<PointId>) -> Self {
        Self { tail, center }
    }

    /// `n`, the number of center points.
    pub fn size(&self) -> usize {
        self.center.len()
    }

    pub fn components(&self) -> impl Iterator<Item = PointId> + '_ {
        self.tail.iter().chain(&self.center).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrismClass {
    Degenerate,
    /// Nondegenerate with an affinely dependent center.
    Nondegenerate,
    AffinelyNondegenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrismFilter {
    Nondegenerate,
    AffinelyNondegenerate,
}

/// `Ordered` yields every ordered tail and ordered center. `Unordered` yields
/// one representative per unordered prism: `y < z` and an ascending center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrismOrder {
    Ordered,
    Unordered,
}

impl std::str::FromStr for PrismFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nondegenerate" => Ok(PrismFilter::Nondegenerate),
            "affinely-nondegenerate" => Ok(PrismFilter::AffinelyNondegenerate),
            _ => Err(Error::InvalidArgument(format!(
                "unknown filter '{s}' (nondegenerate | affinely-nondegenerate)"
            ))),
        }
    }
}

impl std::str::FromStr for PrismOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordered" => Ok(PrismOrder::Ordered),
            "unordered" => Ok(PrismOrder::Unordered),
            _ => Err(Error::InvalidArgument(format!("unknown order '{s}' (ordered | unordered)"))),
        }
    }
}

/// `k (k-1) ... (k-n+1)`.
pub fn falling_factorial(k: u64, n: usize) -> u128 {
    if (n as u64) > k {
        return 0;
    }
    (0..n as u64).map(|i| (k - i) as u128).product()
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Number of nondegenerate `n`-prisms with ordered tail and ordered center:
/// `Σ_{x != y} k_{(x,y)} (k_{(x,y)} - 1) ... (k_{(x,y)} - n + 1)`.
pub fn count_prisms_formula(graph: &DistanceGraph, n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidArgument("prism size n must be at least 1".into()));
    }
    let verts = graph.num_vertices();
    let per_row: Vec<u128> = (0..verts)
        .into_par_iter()
        .map(|i| {
            let a = graph.neighbors_at(i);
            (0..verts)
                .filter(|&j| j != i)
                .map(|j| falling_factorial(a.intersection_len(graph.neighbors_at(j)) as u64, n))
                .sum()
        })
        .collect();
    per_row
        .into_iter()
        .try_fold(0u128, |acc, x| acc.checked_add(x))
        .ok_or(Error::Overflow)
}

/// Steps through index tuples drawn from `0..len`: `n`-permutations in
/// lexicographic order, or ascending `n`-combinations.
#[derive(Debug, Clone)]
struct CenterCursor {
    len: usize,
    order: PrismOrder,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl CenterCursor {
    fn new(len: usize, n: usize, order: PrismOrder) -> Self {
        Self {
            len,
            order,
            idx: vec![0; n],
            started: false,
            done: n > len,
        }
    }

    fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            for (i, v) in self.idx.iter_mut().enumerate() {
                *v = i;
            }
            return Some(&self.idx);
        }
        let ok = match self.order {
            PrismOrder::Unordered => self.next_combination(),
            PrismOrder::Ordered => self.next_permutation(),
        };
        if ok {
            Some(&self.idx)
        } else {
            self.done = true;
            None
        }
    }

    fn next_combination(&mut self) -> bool {
        let n = self.idx.len();
        let mut i = n;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.len - n + i {
                self.idx[i] += 1;
                for j in i + 1..n {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn next_permutation(&mut self) -> bool {
        let n = self.idx.len();
        let mut used = vec![false; self.len];
        for &v in &self.idx {
            used[v] = true;
        }
        let mut i = n;
        while i > 0 {
            i -= 1;
            used[self.idx[i]] = false;
            if let Some(next) = (self.idx[i] + 1..self.len).find(|&v| !used[v]) {
                self.idx[i] = next;
                used[next] = true;
                let mut fill = 0;
                for slot in i + 1..n {
                    while used[fill] {
                        fill += 1;
                    }
                    self.idx[slot] = fill;
                    used[fill] = true;
                }
                return true;
            }
        }
        false
    }
}

/// Lazy, deterministic prism enumeration over a distance graph.
///
/// Tails are visited in lexicographic order of canonical indices; for each
/// tail the centers come in lexicographic order over the tail's common
/// neighbors.
pub struct PrismIter<'g> {
    graph: &'g DistanceGraph,
    n: usize,
    filter: PrismFilter,
    order: PrismOrder,
    y: usize,
    z: usize,
    common: Vec<PointId>,
    cursor: Option<CenterCursor>,
}

impl<'g> PrismIter<'g> {
    fn new(graph: &'g DistanceGraph, n: usize, filter: PrismFilter, order: PrismOrder) -> Self {
        Self {
            graph,
            n,
            filter,
            order,
            y: 0,
            z: 0,
            common: Vec::new(),
            cursor: None,
        }
    }

    fn next_tail(&mut self) -> bool {
        let verts = self.graph.num_vertices();
        loop {
            if self.cursor.is_some() {
                self.z += 1;
            }
            if self.z >= verts {
                self.y += 1;
                self.z = 0;
            }
            if self.y >= verts {
                return false;
            }
            if self.order == PrismOrder::Unordered && self.z <= self.y {
                self.z = self.y + 1;
                if self.z >= verts {
                    self.cursor = Some(CenterCursor::new(0, 1, self.order));
                    continue;
                }
            }
            if self.z == self.y {
                self.cursor = Some(CenterCursor::new(0, 1, self.order));
                continue;
            }
            let common = self
                .graph
                .neighbors_at(self.y)
                .intersection(self.graph.neighbors_at(self.z));
            self.common = common.to_vec();
            self.cursor = Some(CenterCursor::new(self.common.len(), self.n, self.order));
            return true;
        }
    }
}

impl Iterator for PrismIter<'_> {
    type Item = Prism;

    fn next(&mut self) -> Option<Prism> {
        if self.n == 0 {
            return None;
        }
        if self.cursor.is_none() && !self.next_tail() {
            return None;
        }
        loop {
            let cursor = self.cursor.as_mut().expect("set by next_tail");
            if let Some(idx) = cursor.advance() {
                let center: Vec<PointId> = idx.iter().map(|&i| self.common[i]).collect();
                if self.filter == PrismFilter::AffinelyNondegenerate
                    && !is_affinely_independent(self.graph.geometry().space(), &center)
                {
                    continue;
                }
                let vs = self.graph.vertices();
                return Some(Prism::new([vs[self.y], vs[self.z]], center));
            }
            if !self.next_tail() {
                return None;
            }
        }
    }
}

/// Nondegenerate prisms of size `n` (center points distinct, tail distinct).
/// Take a prefix with `.take(limit)` for a budget.
pub fn enumerate_prisms(
    graph: &DistanceGraph,
    n: usize,
    filter: PrismFilter,
    order: PrismOrder,
) -> PrismIter<'_> {
    PrismIter::new(graph, n, filter, order)
}

/// Classifies a prism, rejecting tuples that break the distance invariant.
pub fn classify_prism(prism: &Prism, geometry: &Geometry) -> Result<PrismClass> {
    let space = geometry.space();
    for (position, &x) in prism.center.iter().enumerate() {
        if !space.at_t(x, prism.tail[0]) || !space.at_t(x, prism.tail[1]) {
            return Err(Error::NotAPrism { position });
        }
    }
    let distinct: BTreeSet<PointId> = prism.components().collect();
    if distinct.len() != prism.size() + 2 {
        return Ok(PrismClass::Degenerate);
    }
    if is_affinely_independent(space, &prism.center) {
        Ok(PrismClass::AffinelyNondegenerate)
    } else {
        Ok(PrismClass::Nondegenerate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FractionMethod {
    Exact,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionReport {
    pub method: FractionMethod,
    pub n: usize,
    /// Ordered nondegenerate prisms (all of them for `Exact`, draws for `Sampled`).
    pub examined: u128,
    pub affinely_nondegenerate: u128,
    pub ratio: f64,
    /// Ordered nondegenerate prism count from the falling-factorial sum.
    pub nondegenerate_total: u128,
}

/// `N'_n(E) / N_n(E)` with `n = d`, by exact enumeration or by uniform
/// sampling of ordered nondegenerate prisms.
pub fn affinely_nondegenerate_fraction(
    graph: &DistanceGraph,
    method: FractionMethod,
) -> Result<FractionReport> {
    let n = graph.params().d();
    let total = count_prisms_formula(graph, n)?;
    if total == 0 {
        return Err(Error::NoPrisms);
    }
    let space = graph.geometry().space();
    let (examined, good) = match method {
        FractionMethod::Exact => {
            let verts = graph.num_vertices();
            let per_tail: Vec<u128> = (0..verts)
                .into_par_iter()
                .map(|y| {
                    let mut good = 0u128;
                    for z in y + 1..verts {
                        let common = graph.neighbors_at(y).intersection(graph.neighbors_at(z)).to_vec();
                        let mut cursor = CenterCursor::new(common.len(), n, PrismOrder::Unordered);
                        let mut center = vec![PointId(0); n];
                        while let Some(idx) = cursor.advance() {
                            for (slot, &i) in center.iter_mut().zip(idx) {
                                *slot = common[i];
                            }
                            if is_affinely_independent(space, &center) {
                                good += 1;
                            }
                        }
                    }
                    good
                })
                .collect();
            let scale = 2 * factorial(n);
            (total, per_tail.iter().sum::<u128>() * scale)
        }
        FractionMethod::Sampled { samples, seed } => {
            if samples == 0 {
                return Err(Error::InvalidArgument("sample count must be positive".into()));
            }
            let sampler = PrismSampler::new(graph, n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let good = (0..samples)
                .filter(|_| is_affinely_independent(space, &sampler.draw(&mut rng).center))
                .count() as u128;
            (samples as u128, good)
        }
    };
    Ok(FractionReport {
        method,
        n,
        examined,
        affinely_nondegenerate: good,
        ratio: good as f64 / examined as f64,
        nondegenerate_total: total,
    })
}

/// Uniform draws from the ordered nondegenerate `n`-prisms: a tail pair
/// weighted by its number of center arrangements, then a uniform ordered
/// center from the common neighborhood.
pub struct PrismSampler<'g> {
    graph: &'g DistanceGraph,
    n: usize,
    pairs: Vec<(usize, usize)>,
    dist: WeightedIndex<f64>,
}

impl<'g> PrismSampler<'g> {
    pub fn new(graph: &'g DistanceGraph, n: usize) -> Result<Self> {
        let counts = graph.two_path_counts();
        let verts = graph.num_vertices();
        let (pairs, weights): (Vec<(usize, usize)>, Vec<f64>) = (0..verts)
            .flat_map(|i| (0..verts).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| ((i, j), falling_factorial(counts.get_at(i, j) as u64, n) as f64))
            .filter(|&(_, w)| w > 0.0)
            .unzip();
        if pairs.is_empty() {
            return Err(Error::NoPrisms);
        }
        let dist = WeightedIndex::new(&weights).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(Self { graph, n, pairs, dist })
    }

    pub fn draw<R: rand::Rng>(&self, rng: &mut R) -> Prism {
        let (i, j) = self.pairs[self.dist.sample(rng)];
        let common = self.graph.neighbors_at(i).intersection(self.graph.neighbors_at(j)).to_vec();
        let center = sample(rng, common.len(), self.n).iter().map(|k| common[k]).collect();
        let vs = self.graph.vertices();
        Prism::new([vs[i], vs[j]], center)
    }
}

/// `count` seeded uniform ordered prisms passing `filter`, drawn by
/// rejection; gives up after `100 * count` rejected draws.
pub fn sample_prisms(
    graph: &DistanceGraph,
    n: usize,
    filter: PrismFilter,
    count: usize,
    seed: u64,
) -> Result<Vec<Prism>> {
    let sampler = PrismSampler::new(graph, n)?;
    let space = graph.geometry().space();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut rejected = 0usize;
    while out.len() < count {
        let p = sampler.draw(&mut rng);
        if filter == PrismFilter::Nondegenerate || is_affinely_independent(space, &p.center) {
            out.push(p);
        } else {
            rejected += 1;
            if rejected > count.saturating_mul(100) {
                return Err(Error::InvalidArgument(format!(
                    "only {} of {count} prisms found after {rejected} rejections",
                    out.len()
                )));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetPoles {
    pub subset: Vec<PointId>,
    pub pole_count: usize,
    pub bad: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadSetReport {
    pub prism: Prism,
    /// Every center subset with `1 <= |A| <= n - 1`, in bitmask order.
    pub subsets: Vec<SubsetPoles>,
}

impl BadSetReport {
    pub fn bad_subsets(&self) -> impl Iterator<Item = &SubsetPoles> {
        self.subsets.iter().filter(|s| s.bad)
    }

    pub fn admits_bad_set(&self) -> bool {
        self.subsets.iter().any(|s| s.bad)
    }
}

/// Tests every center subset `A` with `1 <= |A| <= n - 1` for `P`-badness:
/// `A` is bad when every full-space pole of `A` lies on a sphere around some
/// center point outside `A`. An `A` without poles is bad.
pub fn find_bad_sets(prism: &Prism, geometry: &Geometry) -> BadSetReport {
    let spheres: Vec<PointSet> = prism.center.iter().map(|&c| geometry.sphere(c)).collect();
    let n = prism.size();
    let mut subsets = Vec::new();
    for mask in 1u32..(1 << n) - 1 {
        let inside: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let mut poles = spheres[inside[0]].clone();
        for &i in &inside[1..] {
            poles.intersect_with(&spheres[i]);
        }
        let mut covered = PointSet::empty(geometry.universe());
        for i in (0..n).filter(|&i| mask >> i & 1 == 0) {
            covered.union_with(&spheres[i]);
        }
        subsets.push(SubsetPoles {
            subset: inside.iter().map(|&i| prism.center[i]).collect(),
            pole_count: poles.len(),
            bad: poles.is_subset(&covered),
        });
    }
    BadSetReport {
        prism: prism.clone(),
        subsets,
    }
}

/// Prisms from [`enumerate_prisms`] whose center has no bad subset.
pub fn prisms_admitting_no_bad_set(
    graph: &DistanceGraph,
    n: usize,
    filter: PrismFilter,
    order: PrismOrder,
) -> impl Iterator<Item = Prism> + '_ {
    let geometry = graph.geometry();
    enumerate_prisms(graph, n, filter, order).filter(move |p| !find_bad_sets(p, geometry).admits_bad_set())
}

/// `2 (d - k) q^{d-k-1}`: the pole-count ceiling for a `k`-set that is bad
/// in an affinely nondegenerate prism. The claim is `|Pole(B)|` strictly below this.
pub fn max_poles_bound(k: usize, params: &FieldParams) -> u128 {
    let d = params.d();
    if k >= d {
        return 0;
    }
    2 * (d - k) as u128 * (params.q() as u128).pow((d - k - 1) as u32)
}

/// Exponent `d^2 - kd - d + k - 1 = (d - k)(d - 1) - 1`.
pub fn census_exponent(k: usize, d: usize) -> i64 {
    (d as i64 - k as i64) * (d as i64 - 1) - 1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub subset: Vec<PointId>,
    pub k: usize,
    /// Ordered affinely nondegenerate prisms `P` with `B ⊆ C(P)` and `B` bad in `P`.
    pub count: u128,
    /// Unordered (tail set, center set) pairs behind `count`.
    pub distinct: u128,
    pub scale_exponent: i64,
    pub scale: f64,
    pub empirical_constant: f64,
    /// `|Pole(B)|` over the full space.
    pub pole_count: usize,
    pub max_poles_bound: u128,
    /// `|Pole(B)| < 2 (d - k) q^{d-k-1}`; only meaningful when `count > 0`.
    pub max_poles_holds: bool,
}

/// Counts affinely nondegenerate `d`-prisms in `E` (the graph's vertex set)
/// whose center contains `B` and in which `B` is bad.
pub fn bad_prism_census(graph: &DistanceGraph, subset: &[PointId]) -> Result<CensusReport> {
    let params = *graph.params();
    let d = params.d();
    let k = subset.len();
    if k == 0 || k >= d {
        return Err(Error::InvalidArgument(format!(
            "subset size {k} outside 1..={}",
            d - 1
        )));
    }
    let distinct: BTreeSet<PointId> = subset.iter().copied().collect();
    if distinct.len() != k {
        return Err(Error::InvalidArgument("subset points must be distinct".into()));
    }
    let geometry = graph.geometry();
    let space = geometry.space();
    let full = PointSet::full(geometry.universe());
    let full_poles = geometry.poles(subset, &full)?;
    let in_e = subset.iter().all(|&b| graph.position(b).is_some());
    let tails: Vec<PointId> = if in_e {
        full_poles.intersection(graph.vertex_set()).to_vec()
    } else {
        Vec::new()
    };
    let subset_set = PointSet::from_ids(geometry.universe(), subset.iter().copied())?;

    let per_tail: Vec<u128> = (0..tails.len())
        .into_par_iter()
        .map(|a| {
            let mut found = 0u128;
            let ya = graph.neighbors(tails[a]).expect("tail in E");
            for &zb in &tails[a + 1..] {
                let common = ya.intersection(graph.neighbors(zb).expect("tail in E"));
                let rest: Vec<PointId> = common.difference(&subset_set).to_vec();
                let mut cursor = CenterCursor::new(rest.len(), d - k, PrismOrder::Unordered);
                let mut center: Vec<PointId> = subset.to_vec();
                center.resize(d, PointId(0));
                while let Some(idx) = cursor.advance() {
                    for (slot, &i) in center[k..].iter_mut().zip(idx) {
                        *slot = rest[i];
                    }
                    if !is_affinely_independent(space, &center) {
                        continue;
                    }
                    let covered = geometry.sphere_union(&center[k..]);
                    if full_poles.is_subset(&covered) {
                        found += 1;
                    }
                }
            }
            found
        })
        .collect();
    let distinct_count: u128 = per_tail.iter().sum();
    let count = distinct_count * 2 * factorial(d);
    let exponent = census_exponent(k, d);
    let scale = (params.q() as f64).powi(exponent as i32);
    let bound = max_poles_bound(k, &params);
    Ok(CensusReport {
        subset: subset.to_vec(),
        k,
        count,
        distinct: distinct_count,
        scale_exponent: exponent,
        scale,
        empirical_constant: count as f64 / scale,
        pole_count: full_poles.len(),
        max_poles_bound: bound,
        max_poles_holds: (full_poles.len() as u128) < bound,
    })
}

/// Greedily picks `a` poles so that `J ∪ {y, z}` is affinely independent,
/// always taking the first admissible pole in canonical order.
pub fn pole_subset_j(
    geometry: &Geometry,
    poles: &PointSet,
    y: PointId,
    z: PointId,
    a: usize,
) -> Option<Vec<PointId>> {
    let space = geometry.space();
    let mut chosen = vec![y, z];
    if !is_affinely_independent(space, &chosen) {
        return None;
    }
    for _ in 0..a {
        let next = poles.iter().find(|&p| {
            let mut trial = chosen.clone();
            trial.push(p);
            is_affinely_independent(space, &trial)
        })?;
        chosen.push(next);
    }
    Some(chosen.split_off(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Point;
    use crate::graph::build_graph;
    use rand::seq::SliceRandom;

    fn graph(q: u32, d: usize, t: u32) -> DistanceGraph {
        let p = FieldParams::new(q, d, t).unwrap();
        build_graph(&PointSet::full(p.num_points()), &p).unwrap()
    }

    fn random_graph(q: u32, d: usize, t: u32, size: usize, seed: u64) -> DistanceGraph {
        let p = FieldParams::new(q, d, t).unwrap();
        let mut ids: Vec<PointId> = (0..p.num_points()).map(PointId::from).collect();
        ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let e = PointSet::from_ids(p.num_points(), ids.into_iter().take(size)).unwrap();
        build_graph(&e, &p).unwrap()
    }

    /// All ordered (n+2)-tuples of vertices checked against the definition.
    fn naive_prism_count(g: &DistanceGraph, n: usize) -> u128 {
        let vs = g.vertices();
        let sp = g.geometry().space();
        let mut count = 0;
        let mut idx = vec![0usize; n + 2];
        loop {
            let pts: Vec<PointId> = idx.iter().map(|&i| vs[i]).collect();
            let distinct: BTreeSet<_> = pts.iter().collect();
            if distinct.len() == n + 2
                && pts[2..].iter().all(|&x| sp.at_t(x, pts[0]) && sp.at_t(x, pts[1]))
            {
                count += 1;
            }
            let mut i = n + 2;
            loop {
                if i == 0 {
                    return count;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < vs.len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling_factorial(5, 0), 1);
        assert_eq!(falling_factorial(5, 2), 20);
        assert_eq!(falling_factorial(2, 3), 0);
    }

    #[test]
    fn cursor_orders() {
        let mut c = CenterCursor::new(3, 2, PrismOrder::Ordered);
        let mut seen = Vec::new();
        while let Some(idx) = c.advance() {
            seen.push(idx.to_vec());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 2], vec![2, 0], vec![2, 1]]
        );
        let mut c = CenterCursor::new(4, 2, PrismOrder::Unordered);
        let mut count = 0;
        while c.advance().is_some() {
            count += 1;
        }
        assert_eq!(count, 6);
        assert!(CenterCursor::new(1, 2, PrismOrder::Ordered).advance().is_none());
    }

    #[test]
    fn f3_plane_has_72_prisms() {
        let g = graph(3, 2, 1);
        assert_eq!(count_prisms_formula(&g, 2).unwrap(), 72);
        assert_eq!(naive_prism_count(&g, 2), 72);
        let listed: Vec<Prism> =
            enumerate_prisms(&g, 2, PrismFilter::Nondegenerate, PrismOrder::Ordered).collect();
        assert_eq!(listed.len(), 72);
        assert!(listed.windows(2).all(|w| w[0] < w[1]));
        let affine =
            enumerate_prisms(&g, 2, PrismFilter::AffinelyNondegenerate, PrismOrder::Ordered).count();
        assert_eq!(affine, 72);
        let unordered =
            enumerate_prisms(&g, 2, PrismFilter::Nondegenerate, PrismOrder::Unordered).count();
        assert_eq!(unordered as u128 * 2 * factorial(2), 72);
    }

    #[test]
    fn n1_counts_distinct_pair_two_paths() {
        let g = graph(3, 2, 1);
        assert_eq!(
            count_prisms_formula(&g, 1).unwrap(),
            g.two_path_counts().off_diagonal_sum()
        );
        let p = *g.params();
        let edge = PointSet::from_ids(9, [PointId(0), PointId(3)]).unwrap();
        let single = build_graph(&edge, &p).unwrap();
        assert_eq!(single.num_edges(), 1);
        assert_eq!(count_prisms_formula(&single, 1).unwrap(), 0);
    }

    #[test]
    fn formula_matches_naive_enumeration() {
        let g5 = graph(5, 2, 1);
        assert_eq!(count_prisms_formula(&g5, 2).unwrap(), naive_prism_count(&g5, 2));
        for seed in 0..10 {
            let g = random_graph(3, 2, 1, 4 + seed as usize % 6, seed);
            assert_eq!(count_prisms_formula(&g, 2).unwrap(), naive_prism_count(&g, 2));
            let g = random_graph(5, 2, 1, 8 + seed as usize, seed);
            assert_eq!(count_prisms_formula(&g, 2).unwrap(), naive_prism_count(&g, 2));
        }
    }

    #[test]
    fn enumeration_is_stable_and_limited() {
        let g = graph(5, 2, 1);
        let a: Vec<Prism> =
            enumerate_prisms(&g, 2, PrismFilter::Nondegenerate, PrismOrder::Ordered).take(5).collect();
        let b: Vec<Prism> =
            enumerate_prisms(&g, 2, PrismFilter::Nondegenerate, PrismOrder::Ordered).take(5).collect();
        assert_eq!(a.len(), 5);
        assert_eq!(a, b);
    }

    #[test]
    fn plane_centers_of_size_three_are_never_independent() {
        let g = graph(5, 2, 1);
        let n = enumerate_prisms(&g, 3, PrismFilter::AffinelyNondegenerate, PrismOrder::Unordered).count();
        assert_eq!(n, 0);
    }

    #[test]
    fn classification() {
        let g = graph(3, 2, 1);
        let geo = g.geometry();
        let p = enumerate_prisms(&g, 2, PrismFilter::Nondegenerate, PrismOrder::Ordered)
            .next()
            .unwrap();
        assert_eq!(classify_prism(&p, geo).unwrap(), PrismClass::AffinelyNondegenerate);
        let repeated = Prism::new(p.tail, vec![p.center[0], p.center[0]]);
        assert_eq!(classify_prism(&repeated, geo).unwrap(), PrismClass::Degenerate);
        let broken = Prism::new(p.tail, vec![p.tail[0], p.center[0]]);
        assert_eq!(classify_prism(&broken, geo), Err(Error::NotAPrism { position: 0 }));
    }

    #[test]
    fn coplanar_center_in_f5_4() {
        // Search F_5^4 for a nondegenerate 4-prism whose center spans only a plane.
        let g = graph(5, 4, 1);
        let geo = g.geometry();
        let sp = geo.space();
        let y = PointId(0);
        let found = geo.sphere(y).iter().find_map(|z| {
            let common = geo.sphere(y).intersection(&geo.sphere(z)).to_vec();
            let mut cursor = CenterCursor::new(common.len(), 4, PrismOrder::Unordered);
            while let Some(idx) = cursor.advance() {
                let center: Vec<PointId> = idx.iter().map(|&i| common[i]).collect();
                if crate::geometry::affine_rank_ids(sp, &center).unwrap() == 2 {
                    return Some(Prism::new([y, z], center));
                }
            }
            None
        });
        let prism = found.expect("a coplanar center exists in F_5^4");
        assert_eq!(classify_prism(&prism, geo).unwrap(), PrismClass::Nondegenerate);
    }

    #[test]
    fn isotropic_line_gives_affinely_degenerate_prism_in_dimension_three() {
        // v = (1,2,0) is isotropic mod 5 and b = (0,0,1) is orthogonal to it
        // with ||b|| = 1, so b + cv lies on S_1 and on S_1 + v.
        let p = FieldParams::new(5, 3, 1).unwrap();
        let geo = Geometry::new(p);
        let id = |c: [u32; 3]| Point::new(c.to_vec(), &p).unwrap().index(&p);
        let prism = Prism::new(
            [id([0, 0, 0]), id([1, 2, 0])],
            vec![id([0, 0, 1]), id([1, 2, 1]), id([2, 4, 1])],
        );
        assert_eq!(classify_prism(&prism, &geo).unwrap(), PrismClass::Nondegenerate);
    }

    #[test]
    fn exact_fraction_in_the_plane_is_one() {
        let g = graph(3, 2, 1);
        let r = affinely_nondegenerate_fraction(&g, FractionMethod::Exact).unwrap();
        assert_eq!(r.examined, 72);
        assert_eq!(r.affinely_nondegenerate, 72);
        assert_eq!(r.ratio, 1.0);
    }

    #[test]
    fn sampled_fraction_is_seeded() {
        let g = graph(5, 3, 1);
        let m = FractionMethod::Sampled { samples: 500, seed: 11 };
        let a = affinely_nondegenerate_fraction(&g, m).unwrap();
        let b = affinely_nondegenerate_fraction(&g, m).unwrap();
        assert_eq!(a, b);
        assert!(a.ratio > 0.0 && a.ratio <= 1.0);
        let exact = affinely_nondegenerate_fraction(&g, FractionMethod::Exact).unwrap();
        assert!((exact.ratio - a.ratio).abs() < 0.1);
    }

    #[test]
    fn no_prisms_is_an_error() {
        let p = FieldParams::new(3, 2, 1).unwrap();
        let g = build_graph(&PointSet::from_ids(9, [PointId(0)]).unwrap(), &p).unwrap();
        assert_eq!(
            affinely_nondegenerate_fraction(&g, FractionMethod::Exact),
            Err(Error::NoPrisms)
        );
    }

    /// Badness straight from the definition, one point at a time.
    fn literal_bad(prism: &Prism, subset: &[PointId], geo: &Geometry) -> bool {
        let sp = geo.space();
        let rest: Vec<PointId> = prism.center.iter().filter(|c| !subset.contains(c)).copied().collect();
        sp.ids().all(|x| {
            let is_pole = subset.iter().all(|&a| sp.at_t(x, a));
            !is_pole || rest.iter().any(|&r| sp.at_t(x, r))
        })
    }

    #[test]
    fn bad_sets_match_literal_definition_on_f3_plane() {
        let g = graph(3, 2, 1);
        let geo = g.geometry();
        for prism in enumerate_prisms(&g, 2, PrismFilter::Nondegenerate, PrismOrder::Ordered) {
            let report = find_bad_sets(&prism, geo);
            assert_eq!(report.subsets.len(), 2);
            for s in &report.subsets {
                assert_eq!(s.bad, literal_bad(&prism, &s.subset, geo));
            }
        }
    }

    #[test]
    fn poleless_subset_is_bad() {
        // q=3, d=3, t=1 has two-point sphere intersections; pick a prism-like
        // center whose pair has no pole to exercise the vacuous case directly.
        let p = FieldParams::new(3, 2, 1).unwrap();
        let geo = Geometry::new(p);
        let g = build_graph(&PointSet::full(9), &p).unwrap();
        let prism = enumerate_prisms(&g, 2, PrismFilter::Nondegenerate, PrismOrder::Ordered)
            .next()
            .unwrap();
        let report = find_bad_sets(&prism, &geo);
        for s in report.subsets.iter().filter(|s| s.pole_count == 0) {
            assert!(s.bad);
        }
    }

    #[test]
    fn poles_shrink_as_subsets_grow() {
        let g = graph(5, 3, 1);
        let geo = g.geometry();
        let full = PointSet::full(geo.universe());
        for prism in enumerate_prisms(&g, 3, PrismFilter::Nondegenerate, PrismOrder::Unordered).take(200) {
            for mask in 1u32..8 {
                let a: Vec<PointId> = (0..3).filter(|i| mask >> i & 1 == 1).map(|i| prism.center[i]).collect();
                let pa = geo.poles(&a, &full).unwrap();
                for extra in prism.center.iter().filter(|c| !a.contains(c)) {
                    let mut bigger = a.clone();
                    bigger.push(*extra);
                    assert!(geo.poles(&bigger, &full).unwrap().is_subset(&pa));
                }
            }
        }
    }

    #[test]
    fn census_single_point_f3_plane() {
        let g = graph(3, 2, 1);
        let geo = g.geometry();
        let b = PointId(0);
        let census = bad_prism_census(&g, &[b]).unwrap();
        // Oracle: scan all ordered prisms.
        let expected = enumerate_prisms(&g, 2, PrismFilter::AffinelyNondegenerate, PrismOrder::Ordered)
            .filter(|p| p.center.contains(&b))
            .filter(|p| literal_bad(p, &[b], geo))
            .count() as u128;
        assert_eq!(census.count, expected);
        assert_eq!(census.scale_exponent, 0);
        assert!(census.empirical_constant >= 0.0);
    }

    #[test]
    fn census_of_unreachable_subset_is_zero() {
        let p = FieldParams::new(3, 2, 1).unwrap();
        let e = PointSet::from_ids(9, [PointId(0), PointId(1)]).unwrap();
        let g = build_graph(&e, &p).unwrap();
        assert_eq!(bad_prism_census(&g, &[PointId(8)]).unwrap().count, 0);
        assert!(bad_prism_census(&g, &[]).is_err());
        assert!(bad_prism_census(&g, &[PointId(0), PointId(1)]).is_err());
    }

    #[test]
    fn census_matches_enumeration_in_f5_cubed() {
        let g = graph(5, 3, 1);
        let geo = g.geometry();
        let b = [PointId(0)];
        let census = bad_prism_census(&g, &b).unwrap();
        let expected = enumerate_prisms(&g, 3, PrismFilter::AffinelyNondegenerate, PrismOrder::Unordered)
            .filter(|p| p.center.contains(&b[0]))
            .filter(|p| literal_bad(p, &b, geo))
            .count() as u128;
        assert_eq!(census.distinct, expected);
        assert_eq!(census.scale_exponent, 3);
    }

    #[test]
    fn greedy_pole_subset() {
        let g = graph(5, 3, 1);
        let geo = g.geometry();
        let full = PointSet::full(geo.universe());
        let poles = geo.poles(&[PointId(0)], &full).unwrap();
        let v: Vec<PointId> = poles.to_vec();
        let j = pole_subset_j(geo, &poles, v[0], v[1], 1).expect("sphere has off-line points");
        let mut all = vec![v[0], v[1]];
        all.extend(&j);
        assert!(is_affinely_independent(geo.space(), &all));
    }

    #[test]
    fn sampled_prisms_are_uniform_and_valid() {
        let g = graph(3, 2, 1);
        let geo = g.geometry();
        let draws = sample_prisms(&g, 2, PrismFilter::Nondegenerate, 7200, 8).unwrap();
        assert_eq!(draws, sample_prisms(&g, 2, PrismFilter::Nondegenerate, 7200, 8).unwrap());
        let mut counts = std::collections::BTreeMap::new();
        for p in &draws {
            assert_ne!(classify_prism(p, geo).unwrap(), PrismClass::Degenerate);
            *counts.entry(p.clone()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 72);
        // 100 expected per prism; 5 sigma is 50.
        assert!(counts.values().all(|&c| (50..=150).contains(&c)), "{counts:?}");

        let g = graph(5, 3, 1);
        for p in sample_prisms(&g, 3, PrismFilter::AffinelyNondegenerate, 50, 1).unwrap() {
            assert_eq!(classify_prism(&p, g.geometry()).unwrap(), PrismClass::AffinelyNondegenerate);
        }
        assert_eq!(
            sample_prisms(&graph(3, 3, 1), 3, PrismFilter::Nondegenerate, 1, 0).unwrap_err(),
            Error::NoPrisms
        );
    }
}
