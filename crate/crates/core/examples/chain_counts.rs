//! k-chain counts in the distance graph of random subsets, with the
//! discrepancy |Γ_k - |E|^{k+1}/q^k| next to its bound.

use std::sync::Arc;

use ffvc::graph::DistanceGraph;
use ffvc::harness::sample_subset;
use ffvc::{FieldParams, Geometry};

fn main() -> ffvc::Result<()> {
    let params = FieldParams::new(5, 3, 1)?;
    let geometry = Arc::new(Geometry::new(params));
    println!("{:>5} {:>2} {:>14} {:>12} {:>12}  hypothesis", "|E|", "k", "gamma", "discrepancy", "bound");
    for (i, size) in [40, 80, 125].into_iter().enumerate() {
        let set = sample_subset(&params, size, i as u64)?;
        let graph = DistanceGraph::new(geometry.clone(), &set)?;
        for k in 1..=3 {
            let r = graph.gamma_report(k)?;
            println!(
                "{:>5} {:>2} {:>14} {:>12.1} {:>12.1}  {}",
                size,
                k,
                r.gamma,
                r.discrepancy,
                r.discrepancy_bound,
                if r.hypothesis_met { "met" } else { "unmet" }
            );
        }
    }
    Ok(())
}
