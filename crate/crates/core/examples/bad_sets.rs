//! Bad subsets of prism centers and their pole counts against 2(d-k)q^{d-k-1}.
//!
//! In F_3^4 some bad 3-sets have exactly as many poles as the bound allows.

use std::sync::Arc;

use ffvc::graph::DistanceGraph;
use ffvc::prism::{classify_prism, enumerate_prisms, find_bad_sets, max_poles_bound, PrismClass, PrismFilter, PrismOrder};
use ffvc::{FieldParams, Geometry, PointSet};

fn main() -> ffvc::Result<()> {
    for (q, d, t, budget) in [(3, 2, 1, usize::MAX), (5, 3, 1, 20_000), (3, 4, 1, 20_000)] {
        let params = FieldParams::new(q, d, t)?;
        let graph = DistanceGraph::new(Arc::new(Geometry::new(params)), &PointSet::full(params.num_points()))?;
        let geometry = graph.geometry();
        let (mut prisms, mut bad, mut at_bound) = (0, 0, 0);
        let mut example = None;
        for prism in enumerate_prisms(&graph, d, PrismFilter::Nondegenerate, PrismOrder::Unordered).take(budget) {
            if classify_prism(&prism, geometry)? != PrismClass::AffinelyNondegenerate {
                continue;
            }
            prisms += 1;
            for s in find_bad_sets(&prism, geometry).bad_subsets() {
                bad += 1;
                if s.pole_count as u128 >= max_poles_bound(s.subset.len(), &params) {
                    at_bound += 1;
                    example.get_or_insert((prism.clone(), s.clone()));
                }
            }
        }
        println!("F_{q}^{d} t={t}: {prisms} affinely nondegenerate prisms, {bad} bad sets, {at_bound} reach the pole bound");
        if let Some((p, s)) = example {
            println!(
                "  e.g. tail {:?} center {:?}: subset {:?} has {} poles, bound {}",
                p.tail,
                p.center,
                s.subset,
                s.pole_count,
                max_poles_bound(s.subset.len(), &params)
            );
        }
    }
    Ok(())
}
