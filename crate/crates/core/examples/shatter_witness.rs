//! A prism center shattered by explicit classifiers, one per subset.

use std::sync::Arc;

use ffvc::graph::DistanceGraph;
use ffvc::vc::prism_guided_witness;
use ffvc::{FieldParams, Geometry, PointSet};

fn main() -> ffvc::Result<()> {
    let params = FieldParams::new(5, 3, 1)?;
    let graph = DistanceGraph::new(Arc::new(Geometry::new(params)), &PointSet::full(params.num_points()))?;
    let space = graph.geometry().space();
    let (witness, tried) = prism_guided_witness(&graph, 200_000);
    let Some(w) = witness else {
        println!("no witness in {tried} prisms");
        return Ok(());
    };
    let c = |x| format!("{:?}", space.coords(x));
    println!("prism {tried}: tail {} {}", c(w.prism.tail[0]), c(w.prism.tail[1]));
    println!("center {:?}", w.prism.center.iter().map(|&x| c(x)).collect::<Vec<_>>());
    for entry in &w.assignment {
        println!("  {:03b} <- {:?}", entry.mask, entry.hypothesis);
    }
    println!("valid: {}", w.validate(space));
    Ok(())
}
