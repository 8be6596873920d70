//! The distance graph `G_t(E)`: vertices `E`, edges `x ~ y` iff `||x - y|| = t`.
//!
//! Neighborhoods are bitsets over the full point universe, so the common
//! neighbor count of two vertices is a word-wise AND plus popcount.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::check::CheckOutcome;
use crate::error::{Error, Result};
use crate::field::{FieldParams, PointId};
use crate::geometry::Geometry;
use crate::pointset::PointSet;

const NOT_A_VERTEX: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct DistanceGraph {
    geometry: Arc<Geometry>,
    vertex_set: PointSet,
    vertices: Vec<PointId>,
    position: Vec<u32>,
    adjacency: Vec<PointSet>,
}

impl DistanceGraph {
    pub fn new(geometry: Arc<Geometry>, vertex_set: &PointSet) -> Result<Self> {
        if vertex_set.universe() != geometry.universe() {
            return Err(Error::UniverseMismatch {
                expected: geometry.universe(),
                got: vertex_set.universe(),
            });
        }
        let vertices = vertex_set.to_vec();
        let mut position = vec![NOT_A_VERTEX; geometry.universe()];
        for (i, v) in vertices.iter().enumerate() {
            position[v.index()] = i as u32;
        }
        let adjacency = vertices
            .par_iter()
            .map(|&v| geometry.sphere_within(v, vertex_set))
            .collect();
        Ok(Self {
            geometry,
            vertex_set: vertex_set.clone(),
            vertices,
            position,
            adjacency,
        })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn geometry_arc(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    pub fn params(&self) -> &FieldParams {
        self.geometry.params()
    }

    pub fn vertex_set(&self) -> &PointSet {
        &self.vertex_set
    }

    /// Vertices in ascending canonical order.
    pub fn vertices(&self) -> &[PointId] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn position(&self, v: PointId) -> Option<usize> {
        self.position
            .get(v.index())
            .filter(|&&p| p != NOT_A_VERTEX)
            .map(|&p| p as usize)
    }

    pub fn neighbors(&self, v: PointId) -> Option<&PointSet> {
        self.position(v).map(|p| &self.adjacency[p])
    }

    pub fn neighbors_at(&self, position: usize) -> &PointSet {
        &self.adjacency[position]
    }

    pub fn degree(&self, v: PointId) -> Option<usize> {
        self.neighbors(v).map(PointSet::len)
    }

    /// Number of undirected edges.
    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(PointSet::len).sum::<usize>() / 2
    }

    /// `k_{(x,y)} = |N(x) ∩ N(y)|`.
    pub fn common_neighbors(&self, x: PointId, y: PointId) -> Option<usize> {
        Some(self.neighbors(x)?.intersection_len(self.neighbors(y)?))
    }

    /// `Γ_k`: ordered `(k+1)`-tuples of vertices with consecutive steps at
    /// distance `t`, repeats allowed. Computed as `k` adjacency-vector
    /// products starting from the all-ones vector.
    pub fn gamma_k(&self, k: usize) -> Result<u128> {
        if k == 0 {
            return Err(Error::InvalidArgument("chain length k must be at least 1".into()));
        }
        let mut walks = vec![1u128; self.vertices.len()];
        for _ in 0..k {
            walks = self
                .adjacency
                .par_iter()
                .map(|nbrs| {
                    nbrs.iter()
                        .map(|y| walks[self.position[y.index()] as usize])
                        .try_fold(0u128, |acc, w| acc.checked_add(w))
                        .ok_or(Error::Overflow)
                })
                .collect::<Result<Vec<_>>>()?;
        }
        walks
            .into_iter()
            .try_fold(0u128, |acc, w| acc.checked_add(w))
            .ok_or(Error::Overflow)
    }

    pub fn two_path_counts(&self) -> PairPathCounts {
        let n = self.vertices.len();
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let a = &self.adjacency[i];
                self.adjacency
                    .iter()
                    .map(|b| a.intersection_len(b) as u32)
                    .collect()
            })
            .collect();
        PairPathCounts {
            vertices: self.vertices.clone(),
            position: self.position.clone(),
            counts: rows.concat(),
        }
    }

    pub fn gamma_report(&self, k: usize) -> Result<GammaReport> {
        let gamma = self.gamma_k(k)?;
        Ok(GammaReport::new(self.params(), self.num_vertices(), k, gamma))
    }
}

pub fn build_graph(vertex_set: &PointSet, params: &FieldParams) -> Result<DistanceGraph> {
    DistanceGraph::new(Arc::new(Geometry::new(*params)), vertex_set)
}

/// Dense table of `k_{(x,y)}` over ordered vertex pairs. The diagonal holds
/// `k_{(x,x)} = deg(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairPathCounts {
    vertices: Vec<PointId>,
    position: Vec<u32>,
    counts: Vec<u32>,
}

impl PairPathCounts {
    pub fn get(&self, x: PointId, y: PointId) -> Option<u32> {
        let i = *self.position.get(x.index()).filter(|&&p| p != NOT_A_VERTEX)? as usize;
        let j = *self.position.get(y.index()).filter(|&&p| p != NOT_A_VERTEX)? as usize;
        Some(self.counts[i * self.vertices.len() + j])
    }

    pub fn get_at(&self, i: usize, j: usize) -> u32 {
        self.counts[i * self.vertices.len() + j]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// `(x, y, k_{(x,y)})` for all ordered pairs with `x != y`, row-major.
    pub fn off_diagonal(&self) -> impl Iterator<Item = (PointId, PointId, u32)> + '_ {
        let n = self.vertices.len();
        (0..n).flat_map(move |i| {
            (0..n)
                .filter(move |&j| j != i)
                .map(move |j| (self.vertices[i], self.vertices[j], self.counts[i * n + j]))
        })
    }

    /// `Σ_{x != y} k_{(x,y)}`.
    pub fn off_diagonal_sum(&self) -> u128 {
        self.off_diagonal().map(|(_, _, k)| k as u128).sum()
    }

    /// `Σ_x k_{(x,x)} = Σ_x deg(x) = Γ_1`.
    pub fn diagonal_sum(&self) -> u128 {
        let n = self.vertices.len();
        (0..n).map(|i| self.counts[i * n + i] as u128).sum()
    }

    pub fn max_off_diagonal(&self) -> u32 {
        self.off_diagonal().map(|(_, _, k)| k).max().unwrap_or(0)
    }
}

/// Chain count against its main term `|E|^{k+1} / q^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaReport {
    pub k: usize,
    pub set_size: usize,
    pub gamma: u128,
    pub main_term: f64,
    pub discrepancy: f64,
    pub discrepancy_bound: f64,
    /// `|E| > (2k / ln 2) q^{(d+1)/2}`.
    pub hypothesis_met: bool,
    pub within_bound: bool,
    /// `Γ_k >= main_term / 2`.
    pub at_least_half_main_term: bool,
}

impl GammaReport {
    pub fn new(params: &FieldParams, set_size: usize, k: usize, gamma: u128) -> Self {
        let q = params.q() as f64;
        let d = params.d() as f64;
        let e = set_size as f64;
        let q_k = q.powi(k as i32);
        let scale = 2.0 * k as f64 / std::f64::consts::LN_2 * q.powf((d + 1.0) / 2.0);
        // Exact: q^k * D_k = q^k * Γ_k - |E|^{k+1}.
        let scaled_disc = (params.q() as i128).pow(k as u32) * gamma as i128
            - (set_size as i128).pow(k as u32 + 1);
        let scaled_bound = scale * e.powi(k as i32);
        let main_term = e.powi(k as i32 + 1) / q_k;
        GammaReport {
            k,
            set_size,
            gamma,
            main_term,
            discrepancy: scaled_disc as f64 / q_k,
            discrepancy_bound: scaled_bound / q_k,
            hypothesis_met: e > scale,
            within_bound: (scaled_disc.unsigned_abs() as f64) <= scaled_bound,
            at_least_half_main_term: 2.0 * gamma as f64 >= main_term,
        }
    }

    pub fn outcome(&self) -> CheckOutcome {
        if !self.hypothesis_met {
            CheckOutcome::HypothesisUnmet
        } else {
            CheckOutcome::from_bool(self.within_bound)
        }
    }
}

pub fn gamma_bound_check(
    vertex_set: &PointSet,
    k: usize,
    params: &FieldParams,
) -> Result<GammaReport> {
    build_graph(vertex_set, params)?.gamma_report(k)
}
