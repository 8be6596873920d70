//! Sphere sizes |S_t| for every radius, against q^{d-1} ± q^{d/2}.
//!
//!     cargo run --example sphere_sizes -- 7 3

use ffvc::geometry::verify_sphere_size_bounds;
use ffvc::FieldParams;

fn main() -> ffvc::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let q = args.first().copied().unwrap_or(7);
    let d = args.get(1).copied().unwrap_or(3) as usize;
    let report = verify_sphere_size_bounds(&FieldParams::new(q, d, 1)?);
    println!("F_{q}^{d}: {} points", (q as u64).pow(d as u32));
    for row in &report.rows {
        println!(
            "  t={:>2}  |S_t|={:>6}  band ({:.1}, {:.1})  {}",
            row.t,
            row.size,
            row.lower,
            row.upper,
            if row.holds { "ok" } else { "OUTSIDE" }
        );
    }
    Ok(())
}
