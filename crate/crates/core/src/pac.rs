//! Realizable PAC learning of sphere-intersection classifiers.
//!
//! A [`LearningTask`] fixes the domain `E`, a hidden target classifier and a
//! distribution over `E`. Samples are labeled by the target, the learner is
//! empirical risk minimization over the class in canonical scan order, and
//! losses are computed exactly by enumerating `E`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::distributions::{Distribution as _, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PointId;
use crate::geometry::Geometry;
use crate::pointset::PointSet;
use crate::vc::{ClassKind, Hypothesis};

/// Tolerance on the total mass of explicit weights.
pub const WEIGHT_TOLERANCE: f64 = 1e-12;
/// Two-sided 95% normal quantile used for the optional Wilson band.
pub const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "weights")]
pub enum Distribution {
    Uniform,
    /// One weight per point of `E`, in ascending index order.
    Weights(Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct LearningTask {
    geometry: Arc<Geometry>,
    domain: PointSet,
    ids: Vec<PointId>,
    target: Hypothesis,
    distribution: Distribution,
    seed: u64,
}

impl LearningTask {
    pub fn new(
        geometry: Arc<Geometry>,
        domain: PointSet,
        target: Hypothesis,
        distribution: Distribution,
        seed: u64,
    ) -> Result<Self> {
        if domain.universe() != geometry.universe() {
            return Err(Error::UniverseMismatch {
                expected: geometry.universe(),
                got: domain.universe(),
            });
        }
        if !target.belongs_to(&domain) {
            return Err(Error::InvalidHypothesis("target parameters must lie in E".into()));
        }
        if let Distribution::Weights(w) = &distribution {
            if w.len() != domain.len() {
                return Err(Error::InvalidDistribution(format!(
                    "expected {} weights, got {}",
                    domain.len(),
                    w.len()
                )));
            }
            if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
                return Err(Error::InvalidDistribution("weights must be finite and non-negative".into()));
            }
            let total: f64 = w.iter().sum();
            if (total - 1.0).abs() > WEIGHT_TOLERANCE {
                return Err(Error::InvalidDistribution(format!("weights sum to {total}")));
            }
        }
        let ids = domain.to_vec();
        Ok(Self {
            geometry,
            domain,
            ids,
            target,
            distribution,
            seed,
        })
    }

    pub fn uniform(geometry: Arc<Geometry>, domain: PointSet, target: Hypothesis, seed: u64) -> Result<Self> {
        Self::new(geometry, domain, target, Distribution::Uniform, seed)
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn domain(&self) -> &PointSet {
        &self.domain
    }

    pub fn kind(&self) -> ClassKind {
        self.target.kind()
    }

    pub fn target(&self) -> Hypothesis {
        self.target
    }

    pub fn distribution(&self) -> &Distribution {
        &self.distribution
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Probability mass of each point of `E`, ascending.
    pub fn weights(&self) -> Vec<f64> {
        match &self.distribution {
            Distribution::Uniform => vec![1.0 / self.ids.len() as f64; self.ids.len()],
            Distribution::Weights(w) => w.clone(),
        }
    }

    fn sampler(&self) -> Sampler<'_> {
        match &self.distribution {
            Distribution::Uniform => Sampler::Uniform(&self.ids),
            Distribution::Weights(w) => {
                Sampler::Weighted(&self.ids, WeightedIndex::new(w).expect("validated weights"))
            }
        }
    }
}

enum Sampler<'a> {
    Uniform(&'a [PointId]),
    Weighted(&'a [PointId], WeightedIndex<f64>),
}

impl Sampler<'_> {
    fn draw<R: Rng>(&self, rng: &mut R) -> PointId {
        match self {
            Sampler::Uniform(ids) => ids[rng.gen_range(0..ids.len())],
            Sampler::Weighted(ids, w) => ids[w.sample(rng)],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LabeledPoint {
    pub point: PointId,
    pub label: bool,
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for trial `trial` at sample size `m`, independent of scheduling.
pub fn child_seed(master: u64, m: usize, trial: usize) -> u64 {
    mix(mix(mix(master) ^ m as u64) ^ trial as u64)
}

fn sample_with<R: Rng>(task: &LearningTask, sampler: &Sampler<'_>, m: usize, rng: &mut R) -> Vec<LabeledPoint> {
    let space = task.geometry.space();
    (0..m)
        .map(|_| {
            let point = sampler.draw(rng);
            LabeledPoint {
                point,
                label: task.target.evaluate(point, space),
            }
        })
        .collect()
}

/// `m` i.i.d. draws labeled by the target, seeded by the task seed.
pub fn draw_sample(task: &LearningTask, m: usize) -> Vec<LabeledPoint> {
    draw_sample_seeded(task, m, task.seed)
}

pub fn draw_sample_seeded(task: &LearningTask, m: usize, seed: u64) -> Vec<LabeledPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(task, &task.sampler(), m, &mut rng)
}

/// Exact `P_{x~D}[h(x) != c(x)]`.
pub fn true_loss(h: &Hypothesis, task: &LearningTask) -> f64 {
    let space = task.geometry.space();
    let disagree = |x: PointId| h.evaluate(x, space) != task.target.evaluate(x, space);
    match &task.distribution {
        Distribution::Uniform => {
            task.ids.iter().filter(|&&x| disagree(x)).count() as f64 / task.ids.len() as f64
        }
        Distribution::Weights(w) => task
            .ids
            .iter()
            .zip(w)
            .filter(|(&x, _)| disagree(x))
            .map(|(_, &p)| p)
            .sum(),
    }
}

/// Monte Carlo estimate of the loss from `draws` fresh samples.
pub fn estimate_loss(h: &Hypothesis, task: &LearningTask, draws: usize, seed: u64) -> f64 {
    let space = task.geometry.space();
    let sampler = task.sampler();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let miss = (0..draws)
        .filter(|_| {
            let x = sampler.draw(&mut rng);
            h.evaluate(x, space) != task.target.evaluate(x, space)
        })
        .count();
    miss as f64 / draws as f64
}

/// Number of sample points `h` labels differently from the sample.
pub fn empirical_errors(h: &Hypothesis, sample: &[LabeledPoint], geometry: &Geometry) -> usize {
    sample
        .iter()
        .filter(|s| h.evaluate(s.point, geometry.space()) != s.label)
        .count()
}

/// Empirical risk minimizer over the class on `E`.
///
/// Distinct labeled points are packed into bit rows: row `w` marks the
/// sample points at distance `t` from `w`, so `h_{u,v}` labels the sample
/// by `row(u) & row(v)` and `h_y` by `row(y)`.
pub fn erm_learn(sample: &[LabeledPoint], domain: &PointSet, kind: ClassKind, geometry: &Geometry) -> Result<Hypothesis> {
    let ids = domain.to_vec();
    let empty = match kind {
        ClassKind::TwoParam => ids.len() < 2,
        ClassKind::OneParam => ids.is_empty(),
    };
    if empty {
        return Err(Error::EmptyClass);
    }
    let space = geometry.space();

    let mut counts: BTreeMap<LabeledPoint, usize> = BTreeMap::new();
    for s in sample {
        *counts.entry(*s).or_default() += 1;
    }
    let entries: Vec<(LabeledPoint, usize)> = counts.into_iter().collect();
    let words = entries.len().div_ceil(64).max(1);
    let mut labels = vec![0u64; words];
    for (i, (s, _)) in entries.iter().enumerate() {
        if s.label {
            labels[i / 64] |= 1 << (i % 64);
        }
    }
    let rows: Vec<Vec<u64>> = ids
        .iter()
        .map(|&w| {
            let mut row = vec![0u64; words];
            for (i, (s, _)) in entries.iter().enumerate() {
                if space.at_t(s.point, w) {
                    row[i / 64] |= 1 << (i % 64);
                }
            }
            row
        })
        .collect();

    let errors = |pattern: &mut dyn Iterator<Item = u64>, cap: usize| -> usize {
        let mut total = 0;
        for (wi, word) in pattern.enumerate() {
            let mut diff = word ^ labels[wi];
            while diff != 0 {
                total += entries[wi * 64 + diff.trailing_zeros() as usize].1;
                if total >= cap {
                    return total;
                }
                diff &= diff - 1;
            }
        }
        total
    };

    let mut best: Option<(usize, Hypothesis)> = None;
    let mut consider = |pattern: &mut dyn Iterator<Item = u64>, h: Hypothesis| {
        let cap = best.map_or(usize::MAX, |(e, _)| e);
        let err = errors(pattern, cap);
        if err < cap || best.is_none() {
            best = Some((err, h));
        }
        err == 0
    };
    match kind {
        ClassKind::OneParam => {
            for (i, &y) in ids.iter().enumerate() {
                if consider(&mut rows[i].iter().copied(), Hypothesis::OneParam { y }) {
                    break;
                }
            }
        }
        ClassKind::TwoParam => {
            'scan: for (i, &u) in ids.iter().enumerate() {
                for (j, &v) in ids.iter().enumerate() {
                    if i != j && consider(&mut rows[i].iter().zip(&rows[j]).map(|(a, b)| a & b), Hypothesis::TwoParam { u, v }) {
                        break 'scan;
                    }
                }
            }
        }
    }
    Ok(best.expect("class is non-empty").1)
}

/// Largest support `|supp h ∩ E|` over the class, with the hypothesis attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossCeiling {
    pub max_support: usize,
    pub argmax: Hypothesis,
    pub domain_size: usize,
    /// `2 * max_support / |E|`: no two classifiers disagree on more mass
    /// under the uniform distribution.
    pub ceiling: f64,
}

pub fn loss_ceiling(domain: &PointSet, kind: ClassKind, geometry: &Geometry) -> Result<LossCeiling> {
    let ids = domain.to_vec();
    let spheres: Vec<PointSet> = ids.par_iter().map(|&w| geometry.sphere_within(w, domain)).collect();
    let best = match kind {
        ClassKind::OneParam => spheres
            .iter()
            .zip(&ids)
            .map(|(s, &y)| (s.len(), Hypothesis::OneParam { y }))
            .fold(None, max_first),
        ClassKind::TwoParam => (0..ids.len())
            .into_par_iter()
            .map(|i| {
                (0..ids.len())
                    .filter(|&j| j != i)
                    .map(|j| {
                        let h = Hypothesis::TwoParam { u: ids[i], v: ids[j] };
                        (spheres[i].intersection_len(&spheres[j]), h)
                    })
                    .fold(None, max_first)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .fold(None, max_first),
    };
    let (max_support, argmax) = best.ok_or(Error::EmptyClass)?;
    Ok(LossCeiling {
        max_support,
        argmax,
        domain_size: ids.len(),
        ceiling: 2.0 * max_support as f64 / ids.len() as f64,
    })
}

fn max_first(acc: Option<(usize, Hypothesis)>, x: (usize, Hypothesis)) -> Option<(usize, Hypothesis)> {
    match acc {
        Some(a) if a.0 >= x.0 => Some(a),
        _ => Some(x),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub m: usize,
    pub trials: usize,
    pub successes: usize,
    pub frequency: f64,
    /// ERM outputs with zero empirical error.
    pub consistent: usize,
    pub mean_loss: f64,
    pub max_loss: f64,
    /// Wilson score interval for the success probability, when requested.
    pub band: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "m")]
pub enum SampleEstimate {
    At(usize),
    /// No grid size reached the target frequency.
    Beyond(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleComplexityCurve {
    pub epsilon: f64,
    pub delta: f64,
    pub trials: usize,
    pub seed: u64,
    pub points: Vec<CurvePoint>,
    /// Smallest grid size with success frequency at least `1 - delta`.
    pub m_hat: SampleEstimate,
    /// Same, using the lower end of the Wilson band.
    pub m_hat_conservative: Option<SampleEstimate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub m_grid: Vec<usize>,
    pub trials: usize,
    pub confidence_band: bool,
}

pub const MIN_TRIALS: usize = 100;

pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Runs `trials` seeded experiments per grid size: draw, learn, score.
///
/// `epsilon` may equal 1, where every classifier succeeds.
pub fn sample_complexity_sweep(task: &LearningTask, config: &SweepConfig) -> Result<SampleComplexityCurve> {
    let SweepConfig {
        epsilon,
        delta,
        ref m_grid,
        trials,
        confidence_band,
    } = *config;
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1], got {epsilon}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument(format!("delta must lie in (0, 1), got {delta}")));
    }
    if trials < MIN_TRIALS {
        return Err(Error::InvalidArgument(format!("at least {MIN_TRIALS} trials required, got {trials}")));
    }
    if m_grid.is_empty() || m_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("m grid must be non-empty and strictly increasing".into()));
    }
    let sampler = task.sampler();
    let geometry = task.geometry();
    let mut points = Vec::with_capacity(m_grid.len());
    for &m in m_grid {
        let outcomes: Vec<Result<(f64, bool)>> = (0..trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = ChaCha8Rng::seed_from_u64(child_seed(task.seed, m, trial));
                let sample = sample_with(task, &sampler, m, &mut rng);
                let h = erm_learn(&sample, &task.domain, task.kind(), geometry)?;
                Ok((true_loss(&h, task), empirical_errors(&h, &sample, geometry) == 0))
            })
            .collect();
        let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
        let successes = outcomes.iter().filter(|(l, _)| *l <= epsilon).count();
        let loss_sum: f64 = outcomes.iter().map(|(l, _)| l).sum();
        points.push(CurvePoint {
            m,
            trials,
            successes,
            frequency: successes as f64 / trials as f64,
            consistent: outcomes.iter().filter(|(_, c)| *c).count(),
            mean_loss: loss_sum / trials as f64,
            max_loss: outcomes.iter().map(|(l, _)| *l).fold(0.0, f64::max),
            band: confidence_band.then(|| wilson_interval(successes, trials, Z_95)),
        });
    }
    let max_m = *m_grid.last().expect("non-empty grid");
    let estimate = |ok: &dyn Fn(&CurvePoint) -> bool| {
        points
            .iter()
            .find(|p| ok(p))
            .map_or(SampleEstimate::Beyond(max_m), |p| SampleEstimate::At(p.m))
    };
    let m_hat = estimate(&|p| p.frequency >= 1.0 - delta);
    let m_hat_conservative =
        confidence_band.then(|| estimate(&|p| p.band.is_some_and(|(lo, _)| lo >= 1.0 - delta)));
    Ok(SampleComplexityCurve {
        epsilon,
        delta,
        trials,
        seed: task.seed,
        points,
        m_hat,
        m_hat_conservative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldParams, Point};

    fn full_task(q: u32, d: usize, t: u32, kind: ClassKind, seed: u64) -> LearningTask {
        let p = FieldParams::new(q, d, t).unwrap();
        let geo = Arc::new(Geometry::new(p));
        let target = match kind {
            ClassKind::TwoParam => Hypothesis::TwoParam {
                u: PointId(0),
                v: PointId(1),
            },
            ClassKind::OneParam => Hypothesis::OneParam { y: PointId(0) },
        };
        LearningTask::uniform(geo, PointSet::full(p.num_points()), target, seed).unwrap()
    }

    #[test]
    fn task_validation() {
        let p = FieldParams::new(3, 2, 1).unwrap();
        let geo = Arc::new(Geometry::new(p));
        let e = PointSet::from_ids(9, [PointId(0), PointId(1)]).unwrap();
        let outside = Hypothesis::TwoParam {
            u: PointId(0),
            v: PointId(5),
        };
        assert!(LearningTask::uniform(geo.clone(), e.clone(), outside, 0).is_err());
        let h = Hypothesis::TwoParam {
            u: PointId(0),
            v: PointId(1),
        };
        let bad = Distribution::Weights(vec![0.5, 0.5 + 1e-9]);
        assert!(LearningTask::new(geo.clone(), e.clone(), h, bad, 0).is_err());
        let close = Distribution::Weights(vec![0.5, 0.5 + 1e-13]);
        assert!(LearningTask::new(geo.clone(), e.clone(), h, close, 0).is_ok());
        assert!(LearningTask::new(geo, e, h, Distribution::Weights(vec![1.5, -0.5]), 0).is_err());
    }

    #[test]
    fn empty_sample_and_labels() {
        let task = full_task(3, 2, 1, ClassKind::TwoParam, 9);
        assert!(draw_sample(&task, 0).is_empty());
        let s = draw_sample(&task, 500);
        let sp = task.geometry().space();
        assert!(s.iter().all(|x| x.label == task.target().evaluate(x.point, sp)));
        assert_eq!(s, draw_sample(&task, 500));
    }

    #[test]
    fn uniform_frequencies() {
        let task = full_task(3, 2, 1, ClassKind::TwoParam, 2024);
        let n = 10_000;
        let s = draw_sample(&task, n);
        let p = 1.0 / 9.0;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        for id in 0..9 {
            let c = s.iter().filter(|x| x.point == PointId(id)).count() as f64;
            assert!((c - n as f64 * p).abs() <= 3.0 * sigma, "point {id}: {c}");
        }
    }

    #[test]
    fn loss_examples() {
        let task = full_task(5, 2, 1, ClassKind::TwoParam, 1);
        assert_eq!(true_loss(&task.target(), &task), 0.0);
        let geo = task.geometry();
        let e = task.domain();
        let c_supp = task.target().support(geo, e);
        // Look for a classifier with support disjoint from the target's.
        let ids = e.to_vec();
        let h = ids
            .iter()
            .flat_map(|&u| ids.iter().map(move |&v| (u, v)))
            .filter(|(u, v)| u != v)
            .map(|(u, v)| Hypothesis::TwoParam { u, v })
            .find(|h| {
                let s = h.support(geo, e);
                !s.is_empty() && s.is_disjoint(&c_supp)
            })
            .unwrap();
        let expected = (h.support(geo, e).len() + c_supp.len()) as f64 / 25.0;
        assert_eq!(true_loss(&h, &task), expected);
    }

    #[test]
    fn erm_examples() {
        let task = full_task(5, 2, 1, ClassKind::TwoParam, 3);
        let geo = task.geometry();
        let first = erm_learn(&[], task.domain(), ClassKind::TwoParam, geo).unwrap();
        assert_eq!(
            first,
            Hypothesis::TwoParam {
                u: PointId(0),
                v: PointId(1)
            }
        );
        let p = geo.params();
        let x = Point::new(vec![1, 0], p).unwrap().index(p);
        let sample = [LabeledPoint { point: x, label: true }];
        let h = erm_learn(&sample, task.domain(), ClassKind::TwoParam, geo).unwrap();
        assert!(h.evaluate(x, geo.space()));
        assert!(erm_learn(&[], &PointSet::from_ids(25, [x]).unwrap(), ClassKind::TwoParam, geo).is_err());
    }

    /// ERM by literal scan, evaluating every classifier on every sample point.
    fn literal_erm(sample: &[LabeledPoint], domain: &PointSet, kind: ClassKind, geo: &Geometry) -> Hypothesis {
        let mut best: Option<(usize, Hypothesis)> = None;
        for h in crate::vc::class_scan(domain, kind) {
            let e = empirical_errors(&h, sample, geo);
            if best.is_none_or(|(b, _)| e < b) {
                best = Some((e, h));
            }
        }
        best.unwrap().1
    }

    #[test]
    fn erm_matches_literal_scan() {
        for kind in [ClassKind::TwoParam, ClassKind::OneParam] {
            let task = full_task(5, 2, 2, kind, 11);
            let geo = task.geometry();
            for seed in 0..15 {
                let mut sample = draw_sample_seeded(&task, 3 + seed as usize * 4, seed);
                // Flip a label to exercise the non-realizable path.
                if seed % 3 == 0 {
                    sample[0].label = !sample[0].label;
                }
                assert_eq!(
                    erm_learn(&sample, task.domain(), kind, geo).unwrap(),
                    literal_erm(&sample, task.domain(), kind, geo)
                );
            }
        }
    }

    #[test]
    fn weighted_sampling_and_loss() {
        let p = FieldParams::new(3, 2, 1).unwrap();
        let geo = Arc::new(Geometry::new(p));
        let mut w = vec![0.0; 9];
        w[4] = 1.0;
        let target = Hypothesis::OneParam { y: PointId(0) };
        let task = LearningTask::new(geo, PointSet::full(9), target, Distribution::Weights(w), 5).unwrap();
        assert!(draw_sample(&task, 50).iter().all(|s| s.point == PointId(4)));
        let h = Hypothesis::OneParam { y: PointId(4) };
        // (1,1) is at distance 2 from the origin, at distance 0 from itself.
        assert_eq!(true_loss(&h, &task), 0.0);
        assert_eq!(estimate_loss(&h, &task, 100, 1), 0.0);
    }

    #[test]
    fn sweep_contracts() {
        let task = full_task(5, 2, 1, ClassKind::TwoParam, 77);
        let cfg = SweepConfig {
            epsilon: 1.0,
            delta: 0.1,
            m_grid: vec![0, 5, 10],
            trials: 100,
            confidence_band: true,
        };
        let curve = sample_complexity_sweep(&task, &cfg).unwrap();
        assert_eq!(curve.m_hat, SampleEstimate::At(0));
        assert_eq!(curve, sample_complexity_sweep(&task, &cfg).unwrap());
        assert!(curve.points.iter().all(|p| p.consistent == p.trials));

        let mut bad = cfg.clone();
        bad.trials = 99;
        assert!(sample_complexity_sweep(&task, &bad).is_err());
        bad = cfg.clone();
        bad.m_grid = vec![5, 5];
        assert!(sample_complexity_sweep(&task, &bad).is_err());
        bad = cfg;
        bad.epsilon = 0.0;
        assert!(sample_complexity_sweep(&task, &bad).is_err());
    }

    #[test]
    fn ceiling_dominates_losses() {
        let task = full_task(5, 2, 1, ClassKind::TwoParam, 0);
        let c = loss_ceiling(task.domain(), ClassKind::TwoParam, task.geometry()).unwrap();
        assert_eq!(c.max_support, 2);
        for h in crate::vc::class_scan(task.domain(), ClassKind::TwoParam) {
            assert!(true_loss(&h, &task) <= c.ceiling);
        }
    }

    #[test]
    fn wilson_contains_estimate() {
        let (lo, hi) = wilson_interval(90, 100, Z_95);
        assert!(lo < 0.9 && 0.9 < hi);
        assert_eq!(wilson_interval(100, 100, Z_95).1, 1.0);
    }

    #[test]
    fn child_seeds_differ() {
        let s: std::collections::BTreeSet<u64> =
            (0..10).flat_map(|m| (0..10).map(move |t| child_seed(42, m, t))).collect();
        assert_eq!(s.len(), 100);
    }
}
