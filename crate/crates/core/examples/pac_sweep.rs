//! Success frequency of ERM as the sample grows, with Wilson bands.

use std::sync::Arc;

use ffvc::pac::{sample_complexity_sweep, LearningTask, SweepConfig};
use ffvc::vc::Hypothesis;
use ffvc::{FieldParams, Geometry, PointId, PointSet};

fn main() -> ffvc::Result<()> {
    let params = FieldParams::new(7, 2, 1)?;
    let geometry = Arc::new(Geometry::new(params));
    let target = Hypothesis::two_param(PointId(0), PointId(8))?;
    let task = LearningTask::uniform(geometry, PointSet::full(49), target, 42)?;
    let curve = sample_complexity_sweep(
        &task,
        &SweepConfig {
            epsilon: 0.02,
            delta: 0.1,
            m_grid: vec![0, 2, 4, 8, 16, 32, 64, 128],
            trials: 400,
            confidence_band: true,
        },
    )?;
    println!("{:>4} {:>9} {:>17} {:>10}", "m", "success", "95% band", "mean loss");
    for p in &curve.points {
        let (lo, hi) = p.band.unwrap_or((f64::NAN, f64::NAN));
        println!("{:>4} {:>9.3} ({:.3}, {:.3}) {:>10.4}", p.m, p.frequency, lo, hi, p.mean_loss);
    }
    println!("m_hat {:?}, conservative {:?}", curve.m_hat, curve.m_hat_conservative);
    Ok(())
}
