//! Spheres, affine subspaces and poles in `F_q^d`.
//!
//! A sphere here is `S_t + c = { x : ||x - c|| = t }`. Spheres are
//! materialized by scanning the space once for `S_t` around the origin and
//! translating that list, so `sphere(c)` costs `O(|S_t| * d)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{inv_mod, mul_mod, sub_mod, FieldParams, Point, PointId, Space};
use crate::pointset::PointSet;

/// Space tables plus the origin sphere `S_t`.
#[derive(Debug, Clone)]
pub struct Geometry {
    space: Space,
    base_sphere: Vec<PointId>,
}

impl Geometry {
    pub fn new(params: FieldParams) -> Self {
        let space = Space::new(params);
        let t = params.t();
        let base_sphere = space.ids().filter(|&x| space.norm_of(x) == t).collect();
        Self { space, base_sphere }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn params(&self) -> &FieldParams {
        self.space.params()
    }

    pub fn universe(&self) -> usize {
        self.space.len()
    }

    /// `|S_t|`.
    pub fn sphere_size(&self) -> usize {
        self.base_sphere.len()
    }

    /// `S_t + center` over the full space.
    pub fn sphere(&self, center: PointId) -> PointSet {
        let mut set = PointSet::empty(self.universe());
        for &s in &self.base_sphere {
            set.insert(self.space.sum(s, center));
        }
        set
    }

    /// `(S_t + center) ∩ domain`.
    pub fn sphere_within(&self, center: PointId, domain: &PointSet) -> PointSet {
        let mut set = PointSet::empty(self.universe());
        for &s in &self.base_sphere {
            let x = self.space.sum(s, center);
            if domain.contains(x) {
                set.insert(x);
            }
        }
        set
    }

    /// `{ y ∈ domain : ||y - a|| = t for every a ∈ anchors }`.
    pub fn poles(&self, anchors: &[PointId], domain: &PointSet) -> Result<PointSet> {
        let (first, rest) = anchors.split_first().ok_or(Error::EmptyPointList)?;
        let mut set = self.sphere_within(*first, domain);
        for &a in rest {
            if set.is_empty() {
                break;
            }
            set.intersect_with(&self.sphere(a));
        }
        Ok(set)
    }

    /// Union of the spheres around `centers`.
    pub fn sphere_union(&self, centers: &[PointId]) -> PointSet {
        let mut set = PointSet::empty(self.universe());
        for &c in centers {
            for &s in &self.base_sphere {
                set.insert(self.space.sum(s, c));
            }
        }
        set
    }
}

/// Exact membership set of `S_t + center`.
pub fn sphere_points(center: &Point, params: &FieldParams) -> Result<PointSet> {
    let space = Space::new(*params);
    let c = validated_id(center, params)?;
    let t = params.t();
    let mut set = PointSet::empty(space.len());
    for x in space.ids() {
        if space.dist(x, c) == t {
            set.insert(x);
        }
    }
    Ok(set)
}

fn validated_id(p: &Point, params: &FieldParams) -> Result<PointId> {
    let p = Point::new(p.coords().to_vec(), params)?;
    Ok(p.index(params))
}

/// `|S_t|` for every `t` in `0..q`, from one pass over the norm table.
pub fn sphere_sizes(space: &Space) -> Vec<u64> {
    let mut counts = vec![0u64; space.params().q() as usize];
    for x in space.ids() {
        counts[space.norm_of(x) as usize] += 1;
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereSizeRow {
    pub t: u32,
    pub size: u64,
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereSizeReport {
    pub q: u32,
    pub d: usize,
    pub rows: Vec<SphereSizeRow>,
}

impl SphereSizeReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Checks `q^{d-1} - q^{d/2} < |S_t| < q^{d-1} + q^{d/2}` for every nonzero
/// `t`. The radius stored in `params` is ignored.
///
/// The comparison is exact: it tests `(|S_t| - q^{d-1})^2 < q^d` in integers.
pub fn verify_sphere_size_bounds(params: &FieldParams) -> SphereSizeReport {
    let space = Space::new(*params);
    let sizes = sphere_sizes(&space);
    let q = params.q() as i128;
    let d = params.d() as u32;
    let main = q.pow(d - 1);
    let q_d = q.pow(d);
    let half = (params.q() as f64).powf(params.d() as f64 / 2.0);
    let rows = (1..params.q())
        .map(|t| {
            let size = sizes[t as usize];
            let dev = size as i128 - main;
            SphereSizeRow {
                t,
                size,
                lower: main as f64 - half,
                upper: main as f64 + half,
                holds: dev * dev < q_d,
            }
        })
        .collect();
    SphereSizeReport {
        q: params.q(),
        d: params.d(),
        rows,
    }
}

/// Rank over `F_q` of the given row vectors (Gaussian elimination).
pub fn rank_mod(rows: &[Vec<u32>], q: u32) -> usize {
    let mut m: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&v| v % q).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][col], q);
        for v in m[rank].iter_mut() {
            *v = mul_mod(*v, inv, q);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (v, &p) in row.iter_mut().zip(&pivot_row) {
                    *v = sub_mod(*v, mul_mod(factor, p, q), q);
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank of `{p_i - p_1 : i >= 2}`. `k` points are affinely independent
/// exactly when this equals `k - 1`.
pub fn affine_rank(points: &[Point], params: &FieldParams) -> Result<usize> {
    let (first, rest) = points.split_first().ok_or(Error::EmptyPointList)?;
    let rows: Vec<Vec<u32>> = rest
        .iter()
        .map(|p| p.sub(first, params).coords().to_vec())
        .collect();
    Ok(rank_mod(&rows, params.q()))
}

/// [`affine_rank`] on canonical indices.
pub fn affine_rank_ids(space: &Space, ids: &[PointId]) -> Result<usize> {
    let (&first, rest) = ids.split_first().ok_or(Error::EmptyPointList)?;
    let rows: Vec<Vec<u32>> = rest
        .iter()
        .map(|&p| space.coords(space.diff(p, first)).to_vec())
        .collect();
    Ok(rank_mod(&rows, space.params().q()))
}

pub fn is_affinely_independent(space: &Space, ids: &[PointId]) -> bool {
    !ids.is_empty() && affine_rank_ids(space, ids).is_ok_and(|r| r + 1 == ids.len())
}

/// `basepoint + span(basis)` with linearly independent `basis`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSubspace {
    basepoint: Point,
    basis: Vec<Point>,
}

impl AffineSubspace {
    pub fn new(basepoint: Point, basis: Vec<Point>, params: &FieldParams) -> Result<Self> {
        let basepoint = Point::new(basepoint.coords().to_vec(), params)?;
        for v in &basis {
            Point::new(v.coords().to_vec(), params)?;
        }
        let rows: Vec<Vec<u32>> = basis.iter().map(|v| v.coords().to_vec()).collect();
        if rank_mod(&rows, params.q()) != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Self { basepoint, basis })
    }

    /// Uniformly random basepoint and a random independent `n`-frame.
    pub fn random<R: Rng>(params: &FieldParams, n: usize, rng: &mut R) -> Result<Self> {
        if n > params.d() {
            return Err(Error::InvalidArgument(format!(
                "subspace dimension {n} exceeds ambient dimension {}",
                params.d()
            )));
        }
        let q = params.q();
        let draw = |rng: &mut R| {
            Point::new((0..params.d()).map(|_| rng.gen_range(0..q)).collect(), params)
                .expect("coordinates drawn in range")
        };
        let basepoint = draw(rng);
        let mut basis: Vec<Point> = Vec::with_capacity(n);
        while basis.len() < n {
            let v = draw(rng);
            let mut rows: Vec<Vec<u32>> = basis.iter().map(|b| b.coords().to_vec()).collect();
            rows.push(v.coords().to_vec());
            if rank_mod(&rows, q) == rows.len() {
                basis.push(v);
            }
        }
        Ok(Self { basepoint, basis })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basepoint(&self) -> &Point {
        &self.basepoint
    }

    pub fn basis(&self) -> &[Point] {
        &self.basis
    }

    /// All `q^n` points, coefficient vectors in lexicographic order.
    pub fn points(&self, params: &FieldParams) -> Vec<Point> {
        let q = params.q();
        let n = self.basis.len();
        let mut out = Vec::with_capacity((q as usize).pow(n as u32));
        let mut coeffs = vec![0u32; n];
        loop {
            let mut p = self.basepoint.clone();
            for (c, v) in coeffs.iter().zip(&self.basis) {
                p = p.add(&v.scale(*c, params), params);
            }
            out.push(p);
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    /// Whether the direction space is totally isotropic: every pair of
    /// basis vectors, including each with itself, has zero dot product.
    pub fn is_totally_isotropic(&self, params: &FieldParams) -> bool {
        self.basis.iter().all(|u| {
            self.basis
                .iter()
                .all(|v| crate::field::dot(u, v, params) == 0)
        })
    }
}

/// `A ∩ S_t`, found by enumerating the `q^n` points of `A`.
pub fn affine_sphere_intersection(sub: &AffineSubspace, params: &FieldParams) -> PointSet {
    let t = params.t();
    let mut set = PointSet::empty(params.num_points());
    for p in sub.points(params) {
        if crate::field::norm(&p, params) == t {
            set.insert(p.index(params));
        }
    }
    set
}

/// `2 q^{n-1}`, the sphere-slice bound for an `n`-dimensional subspace.
pub fn slice_bound(n: usize, q: u32) -> u128 {
    if n == 0 {
        return 1;
    }
    2 * (q as u128).pow(n as u32 - 1)
}

/// `2 q^{d-k}`, the bound on common poles of `k` affinely independent points.
pub fn pole_bound(k: usize, params: &FieldParams) -> u128 {
    2 * (params.q() as u128).pow((params.d() - k.min(params.d())) as u32)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceCheck {
    pub dimension: usize,
    pub size: usize,
    pub bound: u128,
    pub within_bound: bool,
    pub totally_isotropic: bool,
}

pub fn check_slice(sub: &AffineSubspace, params: &FieldParams) -> SliceCheck {
    let size = affine_sphere_intersection(sub, params).len();
    let bound = slice_bound(sub.dimension(), params.q());
    SliceCheck {
        dimension: sub.dimension(),
        size,
        bound,
        within_bound: size as u128 <= bound,
        totally_isotropic: sub.is_totally_isotropic(params),
    }
}

/// Common poles of `anchors` inside `domain`.
pub fn poles(anchors: &[Point], domain: &PointSet, params: &FieldParams) -> Result<PointSet> {
    if domain.universe() != params.num_points() {
        return Err(Error::UniverseMismatch {
            expected: params.num_points(),
            got: domain.universe(),
        });
    }
    let ids = anchors
        .iter()
        .map(|p| validated_id(p, params))
        .collect::<Result<Vec<_>>>()?;
    Geometry::new(*params).poles(&ids, domain)
}

/// Every affine line of the space once: directions normalized to a leading
/// 1, basepoints taken from a complement of the direction.
pub fn affine_lines(params: &FieldParams) -> Vec<AffineSubspace> {
    let space = Space::new(*params);
    let mut lines = Vec::new();
    for dir in space.ids().skip(1) {
        let v = space.point(dir);
        let lead = v.coords().iter().position(|&c| c != 0).expect("nonzero direction");
        if v.coords()[lead] != 1 {
            continue;
        }
        for base in space.ids() {
            let b = space.point(base);
            if b.coords()[lead] == 0 {
                lines.push(AffineSubspace {
                    basepoint: b,
                    basis: vec![v.clone()],
                });
            }
        }
    }
    lines
}

/// `k` affinely independent points, drawn uniformly by rejection.
pub fn random_independent_tuple<R: Rng>(space: &Space, k: usize, rng: &mut R) -> Result<Vec<PointId>> {
    let d = space.params().d();
    if k == 0 || k > d + 1 {
        return Err(Error::InvalidArgument(format!(
            "an affinely independent tuple in dimension {d} has 1..={} points, got {k}",
            d + 1
        )));
    }
    loop {
        let ids: Vec<PointId> = (0..k)
            .map(|_| PointId(rng.gen_range(0..space.len() as u32)))
            .collect();
        if is_affinely_independent(space, &ids) {
            return Ok(ids);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleCheck {
    pub anchors: Vec<PointId>,
    pub pole_count: usize,
    pub bound: u128,
    pub within_bound: bool,
    /// At least two poles, and their affine span is totally isotropic.
    pub poles_isotropic: bool,
}

/// Full-space common poles of an affinely independent tuple against `2 q^{d-k}`.
pub fn check_poles(anchors: &[PointId], geometry: &Geometry) -> Result<PoleCheck> {
    let space = geometry.space();
    let params = space.params();
    if let Some(&bad) = anchors.iter().find(|a| a.index() >= space.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad.index(),
            len: space.len(),
        });
    }
    if !is_affinely_independent(space, anchors) {
        return Err(Error::InvalidArgument("anchors must be affinely independent".into()));
    }
    let poles = geometry.poles(anchors, &PointSet::full(space.len()))?;
    let pole_count = poles.len();
    let bound = pole_bound(anchors.len(), params);
    Ok(PoleCheck {
        poles_isotropic: pole_count >= 2 && affine_span(space, &poles.to_vec())?.is_totally_isotropic(params),
        anchors: anchors.to_vec(),
        pole_count,
        bound,
        within_bound: pole_count as u128 <= bound,
    })
}

/// Smallest affine subspace containing the points, as `p_1 + span` of an
/// independent subset of the differences.
pub fn affine_span(space: &Space, ids: &[PointId]) -> Result<AffineSubspace> {
    let (&first, rest) = ids.split_first().ok_or(Error::EmptyPointList)?;
    let params = space.params();
    let q = params.q();
    let mut basis: Vec<Point> = Vec::new();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for &p in rest {
        let v = space.point(space.diff(p, first));
        rows.push(v.coords().to_vec());
        if rank_mod(&rows, q) == rows.len() {
            basis.push(v);
        } else {
            rows.pop();
        }
    }
    AffineSubspace::new(space.point(first), basis, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn line_enumeration_counts() {
        // q^{d-1} (q^d - 1) / (q - 1) lines.
        assert_eq!(affine_lines(&params(3, 2, 1)).len(), 12);
        assert_eq!(affine_lines(&params(5, 2, 1)).len(), 30);
        assert_eq!(affine_lines(&params(3, 3, 1)).len(), 117);
        let p = params(5, 2, 1);
        let sets: std::collections::BTreeSet<Vec<PointId>> = affine_lines(&p)
            .iter()
            .map(|l| {
                let mut v: Vec<PointId> = l.points(&p).iter().map(|x| x.index(&p)).collect();
                v.sort();
                v
            })
            .collect();
        assert_eq!(sets.len(), 30);
    }

    #[test]
    fn independent_tuples_and_pole_checks() {
        let p = params(5, 3, 2);
        let geo = Geometry::new(p);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for k in 1..=3 {
            let a = random_independent_tuple(geo.space(), k, &mut rng).unwrap();
            let c = check_poles(&a, &geo).unwrap();
            assert_eq!(c.anchors.len(), k);
        }
        assert!(random_independent_tuple(geo.space(), 5, &mut rng).is_err());
        let dep: Vec<PointId> = [[0, 0, 0], [1, 1, 1], [2, 2, 2]].iter().map(|c| pt(c, &p).index(&p)).collect();
        assert!(check_poles(&dep, &geo).is_err());
    }

    #[test]
    fn isotropic_triple_exceeds_pole_bound() {
        // Anchors -(1,2,0), -(2,1,0), -(1,0,2) in F_3^3 with t = 2: the poles
        // form the isotropic line through the origin spanned by (1,1,1).
        let p = params(3, 3, 2);
        let a: Vec<PointId> = [[2, 1, 0], [1, 2, 0], [2, 0, 1]].iter().map(|c| pt(c, &p).index(&p)).collect();
        let c = check_poles(&a, &Geometry::new(p)).unwrap();
        assert_eq!(c.pole_count, 3);
        assert_eq!(c.bound, 2);
        assert!(!c.within_bound);
        assert!(c.poles_isotropic);
    }

    fn params(q: u32, d: usize, t: u32) -> FieldParams {
        FieldParams::new(q, d, t).unwrap()
    }

    fn pt(c: &[u32], p: &FieldParams) -> Point {
        Point::new(c.to_vec(), p).unwrap()
    }

    fn brute_sphere(center: &Point, p: &FieldParams) -> Vec<Point> {
        (0..p.num_points())
            .map(|i| crate::field::index_point(i, p).unwrap())
            .filter(|x| crate::field::norm(&x.sub(center, p), p) == p.t())
            .collect()
    }

    #[test]
    fn sphere_in_f3_squared() {
        let p = params(3, 2, 1);
        let s = sphere_points(&Point::zero(&p), &p).unwrap();
        let expected: Vec<PointId> = [[0, 1], [0, 2], [1, 0], [2, 0]]
            .iter()
            .map(|c| pt(c, &p).index(&p))
            .collect();
        assert_eq!(s.to_vec(), expected);

        let shift = pt(&[1, 1], &p);
        let moved = sphere_points(&shift, &p).unwrap();
        let translated: PointSet = PointSet::from_ids(
            9,
            [[0, 1], [0, 2], [1, 0], [2, 0]]
                .iter()
                .map(|c| pt(c, &p).add(&shift, &p).index(&p)),
        )
        .unwrap();
        assert_eq!(moved, translated);
    }

    #[test]
    fn circle_size_f5() {
        let p = params(5, 2, 1);
        assert_eq!(sphere_points(&Point::zero(&p), &p).unwrap().len(), 4);
    }

    #[test]
    fn geometry_sphere_matches_scan() {
        for (q, d, t) in [(3, 2, 1), (5, 2, 2), (3, 3, 2), (5, 3, 1)] {
            let p = params(q, d, t);
            let g = Geometry::new(p);
            for c in g.space().ids() {
                let center = g.space().point(c);
                let scanned: Vec<PointId> =
                    brute_sphere(&center, &p).iter().map(|x| x.index(&p)).collect();
                assert_eq!(g.sphere(c).to_vec(), scanned);
            }
        }
    }

    #[test]
    fn sphere_size_examples() {
        let r = verify_sphere_size_bounds(&params(3, 2, 1));
        assert_eq!(r.rows[0].size, 4);
        assert!(r.all_hold());
        let r = verify_sphere_size_bounds(&params(5, 3, 1));
        let s2 = r.rows[1].size;
        assert!((15..=36).contains(&s2), "|S_2| = {s2}");
        assert_eq!(s2, brute_sphere(&Point::zero(&params(5, 3, 2)), &params(5, 3, 2)).len() as u64);
        assert!(r.all_hold());
    }

    #[test]
    fn rank_examples() {
        let p = params(3, 2, 1);
        let r = |pts: &[[u32; 2]]| {
            let v: Vec<Point> = pts.iter().map(|c| pt(c, &p)).collect();
            affine_rank(&v, &p).unwrap()
        };
        assert_eq!(r(&[[0, 0], [1, 0], [2, 0]]), 1);
        assert_eq!(r(&[[0, 0], [1, 0], [0, 1]]), 2);
        assert_eq!(r(&[[0, 0]]), 0);
        assert_eq!(affine_rank(&[], &p), Err(Error::EmptyPointList));
    }

    #[test]
    fn rank_mod_handles_dependent_rows() {
        assert_eq!(rank_mod(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]], 7), 2);
        assert_eq!(rank_mod(&[vec![0, 0], vec![0, 0]], 5), 0);
        assert_eq!(rank_mod(&[], 5), 0);
    }

    #[test]
    fn affine_subspace_rejects_dependent_basis() {
        let p = params(5, 3, 1);
        let e = AffineSubspace::new(
            Point::zero(&p),
            vec![pt(&[1, 2, 0], &p), pt(&[2, 4, 0], &p)],
            &p,
        );
        assert_eq!(e, Err(Error::DependentBasis));
    }

    #[test]
    fn line_slice_examples() {
        let p = params(3, 2, 1);
        let line = AffineSubspace::new(Point::zero(&p), vec![pt(&[1, 0], &p)], &p).unwrap();
        let s = affine_sphere_intersection(&line, &p);
        assert_eq!(
            s.to_vec(),
            vec![pt(&[1, 0], &p).index(&p), pt(&[2, 0], &p).index(&p)]
        );
        assert!(s.len() as u128 <= slice_bound(1, 3));

        // (0,1) + c(1,0): norms 1, 2, 2.
        let line = AffineSubspace::new(pt(&[0, 1], &p), vec![pt(&[1, 0], &p)], &p).unwrap();
        assert_eq!(affine_sphere_intersection(&line, &p).to_vec(), vec![pt(&[0, 1], &p).index(&p)]);

        // t = 2 has no solution on the x-axis of F_3^2 since 2 is not a square.
        let p2 = params(3, 2, 2);
        let axis = AffineSubspace::new(Point::zero(&p2), vec![pt(&[1, 0], &p2)], &p2).unwrap();
        assert!(affine_sphere_intersection(&axis, &p2).is_empty());
    }

    #[test]
    fn isotropic_line_lies_on_sphere() {
        // (1,1,1) is isotropic mod 3 and orthogonal to (1,2,0), whose norm is 2.
        let p = params(3, 3, 2);
        let line = AffineSubspace::new(pt(&[1, 2, 0], &p), vec![pt(&[1, 1, 1], &p)], &p).unwrap();
        let check = check_slice(&line, &p);
        assert!(check.totally_isotropic);
        assert_eq!(check.size, 3);
        assert!(!check.within_bound);
    }

    #[test]
    fn pole_examples() {
        let p = params(3, 2, 1);
        let full = PointSet::full(9);
        let origin = Point::zero(&p);
        let s = poles(std::slice::from_ref(&origin), &full, &p).unwrap();
        assert_eq!(s.len(), 4);
        let s = poles(&[origin.clone(), pt(&[1, 0], &p)], &full, &p).unwrap();
        assert_eq!(s.to_vec(), vec![pt(&[2, 0], &p).index(&p)]);
        let s = poles(&[origin, pt(&[1, 1], &p)], &full, &p).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.len() as u128, pole_bound(2, &p));
        assert_eq!(poles(&[], &full, &p), Err(Error::EmptyPointList));
    }

    #[test]
    fn translation_equivariance_exhaustive() {
        for q in [3, 5] {
            let p = params(q, 2, 1);
            let g = Geometry::new(p);
            let sp = g.space();
            let full = PointSet::full(sp.len());
            // A small domain that is not translation invariant.
            let domain = PointSet::from_ids(sp.len(), sp.ids().filter(|x| x.0 % 3 != 1)).unwrap();
            for v in sp.ids() {
                let shift = |set: &PointSet| {
                    PointSet::from_ids(sp.len(), set.iter().map(|x| sp.sum(x, v))).unwrap()
                };
                for c in sp.ids() {
                    assert_eq!(g.sphere(sp.sum(c, v)), shift(&g.sphere(c)));
                    let a = [c, PointId((c.0 + 1) % sp.len() as u32)];
                    let moved = [sp.sum(a[0], v), sp.sum(a[1], v)];
                    assert_eq!(
                        g.poles(&moved, &full).unwrap(),
                        shift(&g.poles(&a, &full).unwrap())
                    );
                    assert_eq!(
                        g.poles(&moved, &shift(&domain)).unwrap(),
                        shift(&g.poles(&a, &domain).unwrap())
                    );
                }
            }
        }
    }

    #[test]
    fn random_subspaces_in_the_plane_respect_slice_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [3, 5, 7] {
            let p = params(q, 2, 1);
            for n in 1..=2 {
                for _ in 0..200 {
                    let sub = AffineSubspace::random(&p, n, &mut rng).unwrap();
                    assert!(check_slice(&sub, &p).within_bound);
                }
            }
        }
    }

    #[test]
    fn affine_span_contains_its_points() {
        let p = params(5, 3, 1);
        let sp = Space::new(p);
        let ids = [PointId(0), PointId(7), PointId(14), PointId(31)];
        let span = affine_span(&sp, &ids).unwrap();
        let members: Vec<PointId> = span.points(&p).iter().map(|x| x.index(&p)).collect();
        for id in ids {
            assert!(members.contains(&id));
        }
        assert_eq!(span.dimension(), affine_rank_ids(&sp, &ids).unwrap());
    }
}
