//! Exact VC-dimension of both sphere-intersection classes by search.

use std::sync::Arc;

use ffvc::graph::DistanceGraph;
use ffvc::vc::{vc_dimension, ClassKind, VcBudget};
use ffvc::{FieldParams, Geometry, PointSet};

fn main() -> ffvc::Result<()> {
    for (q, d) in [(5, 2), (7, 2), (11, 2), (3, 3), (5, 3)] {
        let params = FieldParams::new(q, d, 1)?;
        let graph = DistanceGraph::new(Arc::new(Geometry::new(params)), &PointSet::full(params.num_points()))?;
        for kind in [ClassKind::OneParam, ClassKind::TwoParam] {
            let r = vc_dimension(&graph, kind, &VcBudget::default());
            let levels: Vec<_> = r.levels.iter().map(|l| (l.n, l.candidates)).collect();
            println!(
                "F_{q}^{d} {kind:?}: {:?} (cap {}, upper bound {:?}) candidates per level {levels:?}",
                r.value, r.structural_cap, r.upper_bound
            );
        }
    }
    Ok(())
}
