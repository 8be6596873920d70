//! Loads a point set from a text file and counts its 2-chains.
//!
//!     cargo run --example point_file -- points.txt 5 2 1

use std::path::PathBuf;
use std::sync::Arc;

use ffvc::graph::DistanceGraph;
use ffvc::harness::load_pointset;
use ffvc::{FieldParams, Geometry};

fn main() -> ffvc::Result<()> {
    let mut args = std::env::args().skip(1);
    let params = |a: Option<String>, default: u32| a.and_then(|s| s.parse().ok()).unwrap_or(default);
    let path = args.next().map(PathBuf::from);
    let (q, d, t) = (params(args.next(), 5), params(args.next(), 2) as usize, params(args.next(), 1));
    let params = FieldParams::new(q, d, t)?;
    let set = match path {
        Some(p) => load_pointset(&p, &params)?,
        None => ffvc::harness::parse_pointset("# a unit square\n0,0\n1,0\n0,1\n1,1\n", &params)?,
    };
    let graph = DistanceGraph::new(Arc::new(Geometry::new(params)), &set)?;
    println!("{} points, {} edges, gamma_2 = {}", set.len(), graph.num_edges(), graph.gamma_k(2)?);
    Ok(())
}
