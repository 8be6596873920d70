//! Brute-force oracles written against the definitions, sharing no code
//! with the library beyond the point index convention (row-major, radix q).
#![allow(dead_code)]

pub fn decode(index: usize, q: u32, d: usize) -> Vec<u32> {
    let mut c = vec![0u32; d];
    let mut rest = index;
    for slot in c.iter_mut().rev() {
        *slot = (rest % q as usize) as u32;
        rest /= q as usize;
    }
    c
}

pub fn encode(c: &[u32], q: u32) -> usize {
    c.iter().fold(0, |acc, &x| acc * q as usize + x as usize)
}

pub fn norm(c: &[u32], q: u32) -> u32 {
    (c.iter().map(|&x| x as u64 * x as u64).sum::<u64>() % q as u64) as u32
}

pub fn dist(a: &[u32], b: &[u32], q: u32) -> u32 {
    let diff: Vec<u32> = a.iter().zip(b).map(|(&x, &y)| (x + q - y) % q).collect();
    norm(&diff, q)
}

/// Coordinates of every point, by index.
pub fn all_points(q: u32, d: usize) -> Vec<Vec<u32>> {
    (0..(q as usize).pow(d as u32)).map(|i| decode(i, q, d)).collect()
}

/// Adjacency over a point list: `|| x - y || = t`.
pub struct Oracle {
    pub q: u32,
    pub d: usize,
    pub t: u32,
    pub pts: Vec<Vec<u32>>,
}

impl Oracle {
    pub fn new(q: u32, d: usize, t: u32) -> Self {
        Self {
            q,
            d,
            t,
            pts: all_points(q, d),
        }
    }

    pub fn adj(&self, a: usize, b: usize) -> bool {
        dist(&self.pts[a], &self.pts[b], self.q) == self.t
    }

    pub fn sphere_size(&self, t: u32) -> usize {
        self.pts.iter().filter(|p| norm(p, self.q) == t).count()
    }

    /// Ordered `(k+1)`-walks `x_0 ~ x_1 ~ ... ~ x_k` inside `set`, by nested loops.
    pub fn chains(&self, set: &[usize], k: usize) -> u128 {
        fn go(o: &Oracle, set: &[usize], last: usize, left: usize) -> u128 {
            if left == 0 {
                return 1;
            }
            set.iter().filter(|&&x| o.adj(last, x)).map(|&x| go(o, set, x, left - 1)).sum()
        }
        set.iter().map(|&x| go(self, set, x, k)).sum()
    }

    /// Ordered nondegenerate `n`-prisms inside `set`: distinct tail `(y, z)`,
    /// distinct center points each adjacent to both.
    pub fn prisms(&self, set: &[usize], n: usize) -> u128 {
        let mut total = 0u128;
        for &y in set {
            for &z in set {
                if y == z {
                    continue;
                }
                let common: Vec<usize> = set.iter().copied().filter(|&x| self.adj(x, y) && self.adj(x, z)).collect();
                total += ordered_selections(&common, n);
            }
        }
        total
    }

    /// Full-space points at distance `t` from every anchor.
    pub fn poles(&self, anchors: &[usize]) -> Vec<usize> {
        (0..self.pts.len())
            .filter(|&y| anchors.iter().all(|&a| self.adj(y, a)))
            .collect()
    }
}

/// Ordered selections of `n` distinct elements, counted by explicit recursion.
fn ordered_selections(items: &[usize], n: usize) -> u128 {
    fn go(items: &[usize], used: &mut Vec<bool>, left: usize) -> u128 {
        if left == 0 {
            return 1;
        }
        let mut s = 0;
        for i in 0..items.len() {
            if !used[i] {
                used[i] = true;
                s += go(items, used, left - 1);
                used[i] = false;
            }
        }
        s
    }
    go(items, &mut vec![false; items.len()], n)
}

/// Rank over `F_q` by row reduction.
pub fn rank(mut rows: Vec<Vec<u32>>, q: u32) -> usize {
    let inv = |a: u32| (1..q).find(|&b| (a as u64 * b as u64) % q as u64 == 1).unwrap();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let f = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = (*x as u64 * f as u64 % q as u64) as u32;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let m = rows[i][c];
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(pivot) {
                    *x = ((*x as u64 + (q - m) as u64 * p as u64) % q as u64) as u32;
                }
            }
        }
        r += 1;
    }
    r
}

/// Affine independence: differences from the first point are linearly independent.
pub fn affinely_independent(pts: &[&[u32]], q: u32) -> bool {
    let rows: Vec<Vec<u32>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0]).map(|(&a, &b)| (a + q - b) % q).collect())
        .collect();
    rows.is_empty() || rank(rows.clone(), q) == rows.len()
}
