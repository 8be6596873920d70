//! Totally isotropic lines in F_q^3 carry more of a sphere, and more common
//! poles, than the generic count allows. Whether they exist depends on t.

use ffvc::geometry::{affine_lines, affine_sphere_intersection, slice_bound};
use ffvc::FieldParams;

fn main() -> ffvc::Result<()> {
    for q in [3, 5, 7] {
        for t in 1..q {
            let params = FieldParams::new(q, 3, t)?;
            let mut worst = (0, None);
            let mut over = 0;
            for line in affine_lines(&params) {
                let hit = affine_sphere_intersection(&line, &params).len();
                if hit as u128 > slice_bound(1, q) {
                    over += 1;
                    debug_assert!(line.is_totally_isotropic(&params));
                }
                if hit > worst.0 {
                    worst = (hit, Some(line));
                }
            }
            let (hit, line) = worst;
            let line = line.expect("lines exist");
            println!(
                "q={q} t={t}: {over} lines exceed {} sphere points; largest slice {hit} on {:?} + s{:?}",
                slice_bound(1, q),
                line.basepoint().coords(),
                line.basis()[0].coords()
            );
        }
    }
    Ok(())
}
