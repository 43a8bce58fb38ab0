//! Subspaces of `GF(q)^d`, the `(11,5,2)` biplane and the affine-hyperplane
//! group divisible design `D(d,q)`.

use crate::field::FieldGF;

/// A vector of `GF(q)^d` is encoded as `sum v_i q^i`.
pub fn vector_index(v: &[u32], q: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &c| acc * q + c)
}

pub fn vector_from_index(mut x: u32, q: u32, d: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(d);
    for _ in 0..d {
        v.push(x % q);
        x /= q;
    }
    v
}

/// A linear subspace held by its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Row-reduces `vectors` and returns the subspace they span.
    pub fn span(field: &FieldGF, ambient: usize, vectors: &[Vec<u32>]) -> Subspace {
        let mut rows: Vec<Vec<u32>> = vectors.to_vec();
        let mut rank = 0;
        for col in 0..ambient {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let s = field.inv(rows[rank][col]).expect("non-zero pivot");
            for c in 0..ambient {
                rows[rank][c] = field.mul(rows[rank][c], s);
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != 0 {
                    let f = rows[r][col];
                    for c in 0..ambient {
                        let t = field.mul(f, rows[rank][c]);
                        rows[r][c] = field.sub(rows[r][c], t);
                    }
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        Subspace { ambient, basis: rows }
    }

    fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.iter().position(|&c| c != 0).expect("echelon rows are non-zero")).collect()
    }

    pub fn contains(&self, field: &FieldGF, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        for (row, piv) in self.basis.iter().zip(self.pivots()) {
            let c = w[piv];
            if c != 0 {
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = field.sub(*x, field.mul(c, r));
                }
            }
        }
        w.iter().all(|&c| c == 0)
    }

    /// Every vector of the subspace, as vector indices in ascending order.
    pub fn vectors(&self, field: &FieldGF) -> Vec<u32> {
        let q = field.order();
        let mut out = Vec::with_capacity(q.pow(self.dim() as u32) as usize);
        for coeffs in 0..q.pow(self.dim() as u32) {
            let c = vector_from_index(coeffs, q, self.dim());
            let mut v = vec![0u32; self.ambient];
            for (row, &ci) in self.basis.iter().zip(&c) {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(ci, r));
                }
            }
            out.push(vector_index(&v, q));
        }
        out.sort_unstable();
        out
    }
}

/// Number of `k`-dimensional subspaces of `GF(q)^d`.
pub fn gaussian_binomial(d: u32, k: u32, q: u64) -> u64 {
    if k > d {
        return 0;
    }
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= (q as u128).pow(d - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

/// All `dim`-dimensional subspaces of `GF(q)^d`, ordered by pivot columns and
/// then by the free entries.
pub fn enumerate_subspaces(field: &FieldGF, d: usize, dim: usize) -> Vec<Subspace> {
    if dim > d {
        return Vec::new();
    }
    let q = field.order();
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..dim).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..dim)
            .flat_map(|r| {
                let pivots = &pivots;
                ((pivots[r] + 1)..d).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let count = (q as u64).pow(free.len() as u32);
        for assignment in 0..count {
            let mut basis = vec![vec![0u32; d]; dim];
            for (r, &p) in pivots.iter().enumerate() {
                basis[r][p] = 1;
            }
            let mut a = assignment;
            for &(r, c) in &free {
                basis[r][c] = (a % q as u64) as u32;
                a /= q as u64;
            }
            out.push(Subspace { ambient: d, basis });
        }
        // next combination of pivot columns
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < d - dim + i {
                pivots[i] += 1;
                for j in i + 1..dim {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The `(11,5,2)` biplane: translates of the quadratic residues mod 11.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biplane {
    pub points: Vec<u32>,
    pub blocks: Vec<Vec<u32>>,
}

pub fn biplane_h11() -> Biplane {
    const BASE: [u32; 5] = [1, 3, 4, 5, 9];
    let blocks = (0..11)
        .map(|t| {
            let mut b: Vec<u32> = BASE.iter().map(|x| (x + t) % 11).collect();
            b.sort_unstable();
            b
        })
        .collect();
    Biplane { points: (0..11).collect(), blocks }
}

/// `x + H` with `x` outside the hyperplane `H`; `rep` is the smallest vector
/// index in the coset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineHyperplane {
    pub hyperplane: Subspace,
    pub rep: u32,
}

/// The design `D(d,q)`: non-zero vectors against affine hyperplanes missing
/// the origin.
#[derive(Debug, Clone)]
pub struct GddDesign {
    pub q: u32,
    pub d: usize,
    /// Vector indices of the non-zero vectors, ascending.
    pub points: Vec<u32>,
    pub blocks: Vec<AffineHyperplane>,
    /// Point set of each block (vector indices, ascending).
    pub block_points: Vec<Vec<u32>>,
}

impl GddDesign {
    pub fn point_in_block(&self, point: u32, block: usize) -> bool {
        self.block_points[block].binary_search(&point).is_ok()
    }
}

pub fn gdd_points_blocks(field: &FieldGF, d: usize) -> GddDesign {
    let q = field.order();
    let total = q.pow(d as u32);
    let points: Vec<u32> = (1..total).collect();
    let mut blocks = Vec::new();
    for h in enumerate_subspaces(field, d, d - 1) {
        let inside = h.vectors(field);
        let outside = (0..total)
            .find(|x| inside.binary_search(x).is_err())
            .map(|x| vector_from_index(x, q, d))
            .expect("a hyperplane is proper");
        for lambda in 1..q {
            let shift: Vec<u32> = outside.iter().map(|&c| field.mul(lambda, c)).collect();
            let mut coset: Vec<u32> = inside
                .iter()
                .map(|&y| {
                    let yv = vector_from_index(y, q, d);
                    let s: Vec<u32> = yv.iter().zip(&shift).map(|(&a, &b)| field.add(a, b)).collect();
                    vector_index(&s, q)
                })
                .collect();
            coset.sort_unstable();
            blocks.push((AffineHyperplane { hyperplane: h.clone(), rep: coset[0] }, coset));
        }
    }
    blocks.sort();
    let (blocks, block_points) = blocks.into_iter().unzip();
    GddDesign { q, d, points, blocks, block_points }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts() {
        let f2 = FieldGF::new(2, 1).unwrap();
        assert_eq!(enumerate_subspaces(&f2, 3, 1).len(), 7);
        let f3 = FieldGF::new(3, 1).unwrap();
        assert_eq!(enumerate_subspaces(&f3, 2, 1).len(), 4);
        assert_eq!(enumerate_subspaces(&f3, 4, 0).len(), 1);
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 16] {
            let f = FieldGF::from_order(q).unwrap();
            for d in 1..=6usize {
                if (q as u64).pow(d as u32) > 4096 {
                    break;
                }
                for k in 0..=d {
                    let subs = enumerate_subspaces(&f, d, k);
                    assert_eq!(subs.len() as u64, gaussian_binomial(d as u32, k as u32, q as u64), "q={q} d={d} k={k}");
                }
            }
        }
    }

    #[test]
    fn enumerated_subspaces_are_canonical_and_distinct() {
        let f = FieldGF::from_order(3).unwrap();
        let subs = enumerate_subspaces(&f, 3, 2);
        let mut spans: Vec<Vec<u32>> = subs.iter().map(|s| s.vectors(&f)).collect();
        for (s, v) in subs.iter().zip(&spans) {
            let vecs: Vec<Vec<u32>> = v.iter().map(|&x| vector_from_index(x, 3, 3)).collect();
            assert_eq!(&Subspace::span(&f, 3, &vecs), s);
        }
        spans.sort();
        spans.dedup();
        assert_eq!(spans.len(), 13);
    }

    #[test]
    fn biplane_properties() {
        let h = biplane_h11();
        assert_eq!(h.blocks.len(), 11);
        for p in 0..11u32 {
            assert_eq!(h.blocks.iter().filter(|b| b.contains(&p)).count(), 5);
            for r in p + 1..11 {
                let common = h.blocks.iter().filter(|b| b.contains(&p) && b.contains(&r)).count();
                assert_eq!(common, 2, "pair ({p},{r})");
            }
        }
    }

    fn check_gdd(q: u32, d: usize) {
        let f = FieldGF::from_order(q).unwrap();
        let gdd = gdd_points_blocks(&f, d);
        let qd = q.pow(d as u32) as usize;
        assert_eq!(gdd.points.len(), qd - 1);
        assert_eq!(gdd.blocks.len(), qd - 1);
        let k = q.pow(d as u32 - 1) as usize;
        let lambda2 = q.pow(d as u32 - 2) as usize;
        for b in &gdd.block_points {
            assert_eq!(b.len(), k);
            assert!(!b.contains(&0));
        }
        for &x in &gdd.points {
            let containing = (0..gdd.blocks.len()).filter(|&b| gdd.point_in_block(x, b)).count();
            assert_eq!(containing, k);
        }
        let line = |x: u32| -> Subspace { Subspace::span(&f, d, &[vector_from_index(x, q, d)]) };
        for (i, &x) in gdd.points.iter().enumerate() {
            for &y in &gdd.points[i + 1..] {
                let common = (0..gdd.blocks.len())
                    .filter(|&b| gdd.point_in_block(x, b) && gdd.point_in_block(y, b))
                    .count();
                let expected = if line(x) == line(y) { 0 } else { lambda2 };
                assert_eq!(common, expected, "q={q} d={d} pair ({x},{y})");
            }
        }
    }

    #[test]
    fn gdd_axioms() {
        check_gdd(3, 2);
        check_gdd(2, 3);
        check_gdd(4, 2);
        check_gdd(5, 2);
        check_gdd(3, 3);
    }

    #[test]
    fn gdd_small_counts() {
        let f = FieldGF::from_order(3).unwrap();
        let g = gdd_points_blocks(&f, 2);
        assert_eq!((g.points.len(), g.blocks.len(), g.block_points[0].len()), (8, 8, 3));
    }
}
