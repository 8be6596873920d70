//! Prism counts from the common-neighbor formula, a few listed prisms, and
//! the share whose center is affinely independent.

use std::sync::Arc;

use ffvc::graph::DistanceGraph;
use ffvc::prism::{classify_prism, count_prisms_formula, enumerate_prisms, PrismClass, PrismFilter, PrismOrder};
use ffvc::{FieldParams, Geometry, PointSet};

fn main() -> ffvc::Result<()> {
    for (q, d, t) in [(3, 2, 1), (5, 2, 1), (5, 3, 2)] {
        let params = FieldParams::new(q, d, t)?;
        let graph = DistanceGraph::new(Arc::new(Geometry::new(params)), &PointSet::full(params.num_points()))?;
        let ordered = count_prisms_formula(&graph, d)?;
        let mut total = 0;
        let mut independent = 0;
        for prism in enumerate_prisms(&graph, d, PrismFilter::Nondegenerate, PrismOrder::Unordered) {
            total += 1;
            if classify_prism(&prism, graph.geometry())? == PrismClass::AffinelyNondegenerate {
                independent += 1;
            }
        }
        println!("F_{q}^{d} t={t}: {ordered} ordered {d}-prisms, {total} unordered, {independent} affinely nondegenerate");
        if let Some(p) = enumerate_prisms(&graph, d, PrismFilter::Nondegenerate, PrismOrder::Unordered).next() {
            let space = graph.geometry().space();
            let show = |ids: &[ffvc::PointId]| ids.iter().map(|&x| format!("{:?}", space.coords(x))).collect::<Vec<_>>();
            println!("  first: tail {:?} center {:?}", show(&p.tail), show(&p.center));
        }
    }
    Ok(())
}
