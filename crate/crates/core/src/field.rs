//! Arithmetic in `F_q` and `F_q^d` for an odd prime `q`.
//!
//! Residues are always stored as least non-negative representatives. Points
//! of `F_q^d` are addressed by a row-major radix-`q` index: the first
//! coordinate is the most significant digit, so `(1, 2)` over `F_3` is
//! `1 * 3 + 2 = 5`. Every other module uses this index as the canonical
//! point order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper limit on `q^d` for anything that materializes the whole space.
pub const MAX_POINTS: usize = 1 << 24;

/// The ambient space `F_q^d` together with the radius parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldParams {
    q: u32,
    d: usize,
    t: u32,
}

impl FieldParams {
    pub fn new(q: u32, d: usize, t: u32) -> Result<Self> {
        if q < 3 || !is_prime(q) {
            return Err(Error::InvalidModulus(q));
        }
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        if t == 0 || t >= q {
            return Err(Error::InvalidRadius { q, t });
        }
        let params = Self { q, d, t };
        if params.checked_num_points().is_none() {
            return Err(Error::SpaceTooLarge { q, d });
        }
        Ok(params)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Same space, different radius.
    pub fn with_t(&self, t: u32) -> Result<Self> {
        Self::new(self.q, self.d, t)
    }

    /// `q^d`.
    pub fn num_points(&self) -> usize {
        self.checked_num_points().expect("validated at construction")
    }

    fn checked_num_points(&self) -> Option<usize> {
        let mut n: usize = 1;
        for _ in 0..self.d {
            n = n.checked_mul(self.q as usize)?;
            if n > MAX_POINTS {
                return None;
            }
        }
        Some(n)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u32;
    while (i as u64) * (i as u64) <= n as u64 {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

pub fn add_mod(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 + b as u64) % q as u64) as u32
}

pub fn sub_mod(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 + q as u64 - (b as u64 % q as u64)) % q as u64) as u32
}

pub fn mul_mod(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 * b as u64) % q as u64) as u32
}

pub fn pow_mod(mut base: u32, mut exp: u64, q: u32) -> u32 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse of a nonzero residue (Fermat).
pub fn inv_mod(a: u32, q: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(q));
    pow_mod(a, q as u64 - 2, q)
}

/// Canonical index of a point: the position of a point in row-major order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub u32);

impl PointId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for PointId {
    fn from(i: usize) -> Self {
        PointId(i as u32)
    }
}

/// A vector in `F_q^d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<u32>);

impl Point {
    pub fn new(coords: Vec<u32>, params: &FieldParams) -> Result<Self> {
        if coords.len() != params.d {
            return Err(Error::WrongArity {
                expected: params.d,
                got: coords.len(),
            });
        }
        if let Some(&value) = coords.iter().find(|&&c| c >= params.q) {
            return Err(Error::CoordinateOutOfRange { value, q: params.q });
        }
        Ok(Point(coords))
    }

    pub fn zero(params: &FieldParams) -> Self {
        Point(vec![0; params.d])
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn index(&self, params: &FieldParams) -> PointId {
        point_index(self, params)
    }

    pub fn from_index(id: PointId, params: &FieldParams) -> Result<Self> {
        index_point(id.index(), params)
    }

    pub fn add(&self, other: &Point, params: &FieldParams) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| add_mod(a, b, params.q))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Point, params: &FieldParams) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| sub_mod(a, b, params.q))
                .collect(),
        )
    }

    pub fn scale(&self, c: u32, params: &FieldParams) -> Point {
        Point(self.0.iter().map(|&a| mul_mod(a, c, params.q)).collect())
    }
}

/// `||p|| = p_1^2 + ... + p_d^2 mod q`. No square root is taken.
pub fn norm(p: &Point, params: &FieldParams) -> u32 {
    dot(p, p, params)
}

/// The bilinear form inducing `norm`.
pub fn dot(x: &Point, y: &Point, params: &FieldParams) -> u32 {
    let q = params.q as u64;
    (x.0.iter().zip(&y.0).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % q) as u32
}

pub fn point_index(p: &Point, params: &FieldParams) -> PointId {
    let q = params.q as usize;
    PointId(p.0.iter().fold(0usize, |acc, &c| acc * q + c as usize) as u32)
}

pub fn index_point(index: usize, params: &FieldParams) -> Result<Point> {
    let len = params.num_points();
    if index >= len {
        return Err(Error::IndexOutOfRange { index, len });
    }
    let q = params.q as usize;
    let mut coords = vec![0u32; params.d];
    let mut rest = index;
    for slot in coords.iter_mut().rev() {
        *slot = (rest % q) as u32;
        rest /= q;
    }
    Ok(Point(coords))
}

/// Precomputed coordinate and norm tables for the whole of `F_q^d`.
///
/// Everything that loops over point pairs goes through this: the distance
/// `||x - y||` becomes a digit-wise subtraction plus one table lookup.
#[derive(Debug, Clone)]
pub struct Space {
    params: FieldParams,
    coords: Vec<u32>,
    norms: Vec<u32>,
}

impl Space {
    pub fn new(params: FieldParams) -> Self {
        let n = params.num_points();
        let d = params.d;
        let mut coords = Vec::with_capacity(n * d);
        let mut norms = Vec::with_capacity(n);
        for i in 0..n {
            let p = index_point(i, &params).expect("in range");
            norms.push(norm(&p, &params));
            coords.extend_from_slice(p.coords());
        }
        Self {
            params,
            coords,
            norms,
        }
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.norms.is_empty()
    }

    pub fn coords(&self, id: PointId) -> &[u32] {
        let d = self.params.d;
        &self.coords[id.index() * d..(id.index() + 1) * d]
    }

    pub fn point(&self, id: PointId) -> Point {
        Point(self.coords(id).to_vec())
    }

    pub fn id(&self, p: &Point) -> PointId {
        point_index(p, &self.params)
    }

    pub fn norm_of(&self, id: PointId) -> u32 {
        self.norms[id.index()]
    }

    /// Index of `x - y`.
    pub fn diff(&self, x: PointId, y: PointId) -> PointId {
        let q = self.params.q;
        let idx = self
            .coords(x)
            .iter()
            .zip(self.coords(y))
            .fold(0usize, |acc, (&a, &b)| acc * q as usize + sub_mod(a, b, q) as usize);
        PointId(idx as u32)
    }

    /// Index of `x + y`.
    pub fn sum(&self, x: PointId, y: PointId) -> PointId {
        let q = self.params.q;
        let idx = self
            .coords(x)
            .iter()
            .zip(self.coords(y))
            .fold(0usize, |acc, (&a, &b)| acc * q as usize + add_mod(a, b, q) as usize);
        PointId(idx as u32)
    }

    /// `||x - y||`.
    pub fn dist(&self, x: PointId, y: PointId) -> u32 {
        self.norms[self.diff(x, y).index()]
    }

    /// `||x - y|| == t`.
    pub fn at_t(&self, x: PointId, y: PointId) -> bool {
        self.dist(x, y) == self.params.t
    }

    pub fn ids(&self) -> impl Iterator<Item = PointId> + '_ {
        (0..self.len()).map(PointId::from)
    }
}
