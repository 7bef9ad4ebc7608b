//! Two-sided bounds on the largest density of a subset of Z or Z^2 with no
//! isometric copy of an integer-sided triangle.
//!
//! Lower bounds come from periodic sets (subsets of a torus whose periodic
//! extension is copy-free). Upper bounds come from finite patches without
//! wraparound: a set of density `d` meets some translate of an `n x m`
//! patch in at least `d * n * m` points, and those points are copy-free, so
//! `d <= alpha(patch) / (n * m)`.

use num_rational::BigRational;

use crate::geometry::lattice::{self, IPoint};
use crate::geometry::Triangle;
use crate::hypergraph::{max_copy_free_subset_blocks, Hypergraph, Witness, MAX_BLOCK};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DensityError {
    #[error("triangle sides must be integers; rescale first")]
    NonIntegralSides,
    #[error("dims must be one or two positive integers, got {0:?}")]
    BadDims(Vec<i64>),
    #[error("product set is not copy-free: {copy:?}")]
    ProductNotCopyFree { copy: [IPoint; 3] },
    #[error("product construction needs a one-dimensional witness")]
    NotOneDimensional,
}

/// A subset of the torus `[0, n) x [0, m)` (`m = 1` in one dimension)
/// whose periodic extension has no copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusBound {
    pub dims: Vec<i64>,
    /// Cells in row-major order `(i, j)`; `j = 0` in one dimension.
    pub witness: Vec<IPoint>,
    pub lower: BigRational,
}

impl TorusBound {
    pub fn dimension(&self) -> usize {
        self.dims.len()
    }
}

/// Maximum copy-free subset of the patch `[0, n) x [0, m)`, no wraparound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchBound {
    pub dims: Vec<i64>,
    pub alpha: usize,
    pub upper: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityBound {
    pub dimension: usize,
    pub torus: Option<TorusBound>,
    pub patch: Option<PatchBound>,
}

fn sides<S: Scalar>(t: &Triangle<S>) -> Result<[i64; 3], DensityError> {
    t.integer_sides().ok_or(DensityError::NonIntegralSides)
}

fn shape(dims: &[i64]) -> Result<(i64, i64), DensityError> {
    match *dims {
        [n] if n > 0 => Ok((n, 1)),
        [n, m] if n > 0 && m > 0 => Ok((n, m)),
        _ => Err(DensityError::BadDims(dims.to_vec())),
    }
}

fn ratio(p: usize, q: i64) -> BigRational {
    BigRational::new((p as i64).into(), q.into())
}

/// Hypergraph of copies in the torus with cell `(i, j)` at index `i * m + j`.
/// Copies that wrap onto repeated cells give edges of size one or two.
fn torus_hypergraph(sides: [i64; 3], n: i64, m: i64, one_dim: bool) -> Hypergraph {
    let offsets = lattice::copy_offsets(sides, one_dim);
    let cell = |p: IPoint| (p.0.rem_euclid(n) * m + p.1.rem_euclid(m)) as usize;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..m {
            for (o2, o3) in &offsets {
                edges.push(vec![cell((i, j)), cell((i + o2.0, j + o2.1)), cell((i + o3.0, j + o3.1))]);
            }
        }
    }
    Hypergraph::new((n * m) as usize, edges).expect("torus cells in range")
}

/// Copies of the patch `[0, n) x [0, m)` with lexicographically smallest
/// vertex first, so every copy is listed once.
fn patch_hypergraph(sides: [i64; 3], n: i64, m: i64, one_dim: bool) -> Hypergraph {
    let offsets: Vec<_> =
        lattice::copy_offsets(sides, one_dim).into_iter().filter(|(o2, _)| *o2 > (0, 0)).collect();
    let inside = |p: IPoint| p.0 >= 0 && p.1 >= 0 && p.0 < n && p.1 < m;
    let idx = |p: IPoint| (p.0 * m + p.1) as usize;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..m {
            for (o2, o3) in &offsets {
                let z2 = (i + o2.0, j + o2.1);
                let z3 = (i + o3.0, j + o3.1);
                if inside(z2) && inside(z3) {
                    edges.push(vec![idx((i, j)), idx(z2), idx(z3)]);
                }
            }
        }
    }
    Hypergraph::new((n * m) as usize, edges).expect("patch cells in range")
}

/// Square tiles of side `min(c + 1, 4)` (runs of 16 in one dimension); a
/// copy has diameter `c`, so small tiles see many whole copies.
fn tiles(n: i64, m: i64, c: i64) -> Vec<Vec<usize>> {
    if m == 1 {
        return (0..n as usize).collect::<Vec<_>>().chunks(MAX_BLOCK).map(|c| c.to_vec()).collect();
    }
    let w = (c + 1).min(4);
    let mut out = Vec::new();
    for bi in (0..n).step_by(w as usize) {
        for bj in (0..m).step_by(w as usize) {
            let mut b = Vec::new();
            for i in bi..(bi + w).min(n) {
                for j in bj..(bj + w).min(m) {
                    b.push((i * m + j) as usize);
                }
            }
            out.push(b);
        }
    }
    out
}

/// Scans every copy with first vertex in the fundamental domain; returns
/// one whose three vertices all lie in the periodic extension of `cells`.
pub fn find_periodic_copy(sides: [i64; 3], dims: &[i64], cells: &[IPoint]) -> Option<[IPoint; 3]> {
    let (n, m) = shape(dims).ok()?;
    let one_dim = dims.len() == 1;
    let mut member = vec![false; (n * m) as usize];
    for &(i, j) in cells {
        member[(i.rem_euclid(n) * m + j.rem_euclid(m)) as usize] = true;
    }
    let has = |p: IPoint| member[(p.0.rem_euclid(n) * m + p.1.rem_euclid(m)) as usize];
    let ring = if one_dim { lattice::ring_1d } else { lattice::ring };
    for &z1 in cells {
        for &r2 in &sides {
            for z2 in ring(z1, r2) {
                if !has(z2) {
                    continue;
                }
                for &r3 in &sides {
                    for z3 in ring(z1, r3) {
                        if has(z3) && lattice::is_copy(z1, z2, z3, sides) {
                            return Some([z1, z2, z3]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Largest periodic copy-free set on the torus with the given dims.
pub fn density_lower_torus<S: Scalar>(t: &Triangle<S>, dims: &[i64]) -> Result<TorusBound, DensityError> {
    let sides = sides(t)?;
    let (n, m) = shape(dims)?;
    let h = torus_hypergraph(sides, n, m, dims.len() == 1);
    let blocks = tiles(n, m, sides[2]);
    let r = max_copy_free_subset_blocks(&h, &blocks);
    let Witness::Subset(idx) = r.witness else { unreachable!("subset solver returns a subset") };
    let witness: Vec<IPoint> = idx.iter().map(|&v| (v as i64 / m, v as i64 % m)).collect();
    debug_assert!(find_periodic_copy(sides, dims, &witness).is_none());
    Ok(TorusBound { dims: dims.to_vec(), lower: ratio(witness.len(), n * m), witness })
}

pub fn density_upper_patch<S: Scalar>(t: &Triangle<S>, dims: &[i64]) -> Result<PatchBound, DensityError> {
    let sides = sides(t)?;
    let (n, m) = shape(dims)?;
    let h = patch_hypergraph(sides, n, m, dims.len() == 1);
    let r = max_copy_free_subset_blocks(&h, &tiles(n, m, sides[2]));
    let alpha = r.optimum.expect("subset solver always has an optimum");
    Ok(PatchBound { dims: dims.to_vec(), alpha, upper: ratio(alpha, n * m) })
}

/// Both bounds for one triangle.
pub fn density_bounds<S: Scalar>(
    t: &Triangle<S>,
    torus_dims: &[i64],
    patch_dims: &[i64],
) -> Result<DensityBound, DensityError> {
    let torus = density_lower_torus(t, torus_dims)?;
    let patch = density_upper_patch(t, patch_dims)?;
    if torus.dims.len() != patch.dims.len() {
        return Err(DensityError::BadDims(patch_dims.to_vec()));
    }
    Ok(DensityBound { dimension: torus.dims.len(), torus: Some(torus), patch: Some(patch) })
}

/// `S1 x S1` on the `(n, n)` torus, re-verified by a fresh periodic scan.
pub fn product_construction<S: Scalar>(t: &Triangle<S>, s1: &TorusBound) -> Result<TorusBound, DensityError> {
    let sides = sides(t)?;
    let [n] = s1.dims[..] else {
        return Err(DensityError::NotOneDimensional);
    };
    let xs: Vec<i64> = s1.witness.iter().map(|p| p.0).collect();
    let witness: Vec<IPoint> = xs.iter().flat_map(|&x| xs.iter().map(move |&y| (x, y))).collect();
    let dims = vec![n, n];
    if let Some(copy) = find_periodic_copy(sides, &dims, &witness) {
        return Err(DensityError::ProductNotCopyFree { copy });
    }
    Ok(TorusBound { lower: ratio(witness.len(), n * n), dims, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;

    fn t112() -> Triangle<Q> {
        Triangle::from_ints(1, 1, 2).unwrap()
    }

    fn q(p: i64, r: i64) -> Q {
        Q::new(p.into(), r.into())
    }

    #[test]
    fn torus_1d() {
        let b = density_lower_torus(&t112(), &[3]).unwrap();
        assert_eq!(b.lower, q(2, 3));
        assert_eq!(b.witness, vec![(0, 0), (1, 0)]);
        let one = density_lower_torus(&t112(), &[1]).unwrap();
        assert_eq!(one.lower, q(0, 1));
        let t = Triangle::<Q>::from_ints(2, 3, 4).unwrap();
        assert_eq!(density_lower_torus(&t, &[1]).unwrap().lower, q(1, 1));
    }

    #[test]
    fn torus_2d() {
        let b = density_lower_torus(&t112(), &[3, 3]).unwrap();
        assert!(b.lower >= q(4, 9));
        assert_eq!(b.witness, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert!(find_periodic_copy([1, 1, 2], &[3, 3], &b.witness).is_none());
    }

    #[test]
    fn patch_1d() {
        assert_eq!(density_upper_patch(&t112(), &[3]).unwrap().upper, q(2, 3));
        let p = density_upper_patch(&t112(), &[6]).unwrap();
        assert_eq!((p.alpha, p.upper), (4, q(2, 3)));
    }

    #[test]
    fn patch_2d() {
        let p = density_upper_patch(&t112(), &[3, 3]).unwrap();
        assert_eq!(p.alpha, 4);
        assert!(p.upper >= q(4, 9));
    }

    #[test]
    fn product() {
        let s1 = density_lower_torus(&t112(), &[3]).unwrap();
        let p = product_construction(&t112(), &s1).unwrap();
        assert_eq!(p.lower, q(4, 9));
        assert_eq!(p.lower.clone(), s1.lower.clone() * s1.lower);
        let empty = TorusBound { dims: vec![3], witness: vec![], lower: q(0, 1) };
        assert_eq!(product_construction(&t112(), &empty).unwrap().lower, q(0, 1));
        let full = TorusBound { dims: vec![3], witness: vec![(0, 0), (1, 0), (2, 0)], lower: q(1, 1) };
        assert!(matches!(product_construction(&t112(), &full), Err(DensityError::ProductNotCopyFree { .. })));
    }

    #[test]
    fn rejects_non_integral() {
        let t = Triangle::<Q>::new(q(1, 2), q(1, 1), q(1, 1)).unwrap();
        assert_eq!(density_lower_torus(&t, &[3]), Err(DensityError::NonIntegralSides));
        assert_eq!(density_upper_patch(&t112(), &[0]), Err(DensityError::BadDims(vec![0])));
    }

    #[test]
    fn patch_monotone_under_doubling() {
        let a = density_upper_patch(&t112(), &[3, 3]).unwrap();
        let b = density_upper_patch(&t112(), &[6, 6]).unwrap();
        assert!(b.upper <= a.upper);
    }
}
