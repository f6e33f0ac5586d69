//! Exact incremental convex hull (beneath-beyond) over integer coordinates.
//!
//! The boundary is kept as a simplicial complex; a new point sees a facet only
//! when it lies strictly beyond its hyperplane, so coplanar neighbours stay and
//! the cone over the horizon may produce several simplices sharing one
//! hyperplane. Facets are merged by outward normal afterwards.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::math::{det_int, primitive, rank, IntVec, Rat};

pub(crate) struct Simplex {
    pub verts: Vec<usize>,
    pub normal: IntVec,
    pub offset: BigInt,
}

pub(crate) struct HullResult {
    pub affine_dim: usize,
    /// Indices of extreme points, in input order.
    pub extreme: Vec<usize>,
    /// Boundary triangulation (only when full-dimensional, d ≥ 2).
    pub simplices: Vec<Simplex>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn sub(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Scales rational points by the lcm of their denominators.
pub(crate) fn integerize(points: &[Vec<Rat>]) -> (Vec<IntVec>, BigInt) {
    let l = points
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let pts = points
        .iter()
        .map(|p| p.iter().map(|x| x.numer() * (&l / x.denom())).collect())
        .collect();
    (pts, l)
}

/// Indices of a maximal affinely independent subset, starting from point 0.
pub(crate) fn affine_basis(points: &[IntVec]) -> Vec<usize> {
    let mut basis = vec![0];
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let d = points[0].len();
    for (i, p) in points.iter().enumerate().skip(1) {
        if rows.len() == d {
            break;
        }
        let diff: Vec<Rat> = sub(p, &points[0]).into_iter().map(Rat::from_integer).collect();
        rows.push(diff);
        if rank(&rows) == rows.len() {
            basis.push(i);
        } else {
            rows.pop();
        }
    }
    basis
}

/// Hyperplane through `d` affinely independent points in ℤ^d, primitive normal.
fn hyperplane(points: &[IntVec], idx: &[usize]) -> (IntVec, BigInt) {
    let d = points[0].len();
    let base = &points[idx[0]];
    let diffs: Vec<IntVec> = idx[1..].iter().map(|&i| sub(&points[i], base)).collect();
    let mut normal = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<BigInt>> = diffs
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let m = det_int(&minor);
        normal.push(if j % 2 == 0 { m } else { -m });
    }
    let normal = primitive(&normal).expect("affinely independent points span a hyperplane");
    let offset = dot(&normal, base);
    (normal, offset)
}

fn oriented(points: &[IntVec], verts: Vec<usize>, interior_sum: &[BigInt], weight: &BigInt) -> Simplex {
    let (mut normal, mut offset) = hyperplane(points, &verts);
    // interior point is interior_sum / weight
    if dot(&normal, interior_sum) > &offset * weight {
        normal.iter_mut().for_each(|x| *x = -x.clone());
        offset = -offset;
    }
    let mut verts = verts;
    verts.sort_unstable();
    Simplex { verts, normal, offset }
}

/// Convex hull of distinct integer points.
pub(crate) fn hull(points: &[IntVec]) -> HullResult {
    let n = points.len();
    let d = points[0].len();
    let basis = affine_basis(points);
    let k = basis.len() - 1;
    if k == 0 {
        return HullResult { affine_dim: 0, extreme: vec![0], simplices: vec![] };
    }
    if k < d {
        return lower_dimensional(points, &basis);
    }
    if d == 1 {
        let lo = (0..n).min_by(|&a, &b| points[a][0].cmp(&points[b][0])).unwrap();
        let hi = (0..n).max_by(|&a, &b| points[a][0].cmp(&points[b][0])).unwrap();
        let mut extreme = vec![lo, hi];
        extreme.sort_unstable();
        return HullResult { affine_dim: 1, extreme, simplices: vec![] };
    }

    let weight = BigInt::from(d + 1);
    let mut interior_sum = vec![BigInt::zero(); d];
    for &i in &basis {
        for (s, x) in interior_sum.iter_mut().zip(&points[i]) {
            *s += x;
        }
    }
    let mut facets: Vec<Simplex> = (0..=d)
        .map(|skip| {
            let verts: Vec<usize> = basis.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
            oriented(points, verts, &interior_sum, &weight)
        })
        .collect();

    let mut in_basis = vec![false; n];
    basis.iter().for_each(|&i| in_basis[i] = true);
    for q in 0..n {
        if in_basis[q] {
            continue;
        }
        let p = &points[q];
        let (visible, kept): (Vec<Simplex>, Vec<Simplex>) =
            facets.into_iter().partition(|f| dot(&f.normal, p) > f.offset);
        facets = kept;
        if visible.is_empty() {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for f in &visible {
            for skip in 0..d {
                let ridge: Vec<usize> = f.verts.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
                *ridges.entry(ridge).or_default() += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridges.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r).collect();
        horizon.sort_unstable();
        for mut ridge in horizon {
            ridge.push(q);
            facets.push(oriented(points, ridge, &interior_sum, &weight));
        }
    }

    // A triangulation vertex is extreme iff the normals around it span ℝ^d.
    let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
    for (fi, f) in facets.iter().enumerate() {
        for &v in &f.verts {
            incident.entry(v).or_default().push(fi);
        }
    }
    let mut extreme: Vec<usize> = incident
        .into_iter()
        .filter(|(_, fs)| {
            let mut normals: Vec<&IntVec> = fs.iter().map(|&fi| &facets[fi].normal).collect();
            normals.sort();
            normals.dedup();
            let rows: Vec<Vec<Rat>> =
                normals.iter().map(|n| n.iter().cloned().map(Rat::from_integer).collect()).collect();
            rank(&rows) == d
        })
        .map(|(v, _)| v)
        .collect();
    extreme.sort_unstable();
    HullResult { affine_dim: d, extreme, simplices: facets }
}

/// Coordinates on which the affine span of `basis` projects bijectively.
pub(crate) fn chart_columns(points: &[IntVec], basis: &[usize]) -> Vec<usize> {
    let d = points[0].len();
    let diffs: Vec<IntVec> = basis[1..].iter().map(|&i| sub(&points[i], &points[basis[0]])).collect();
    let mut cols = Vec::new();
    for c in 0..d {
        cols.push(c);
        let rows: Vec<Vec<Rat>> = diffs
            .iter()
            .map(|r| cols.iter().map(|&j| Rat::from_integer(r[j].clone())).collect())
            .collect();
        if rank(&rows) < cols.len() {
            cols.pop();
        }
        if cols.len() == diffs.len() {
            break;
        }
    }
    cols
}

fn lower_dimensional(points: &[IntVec], basis: &[usize]) -> HullResult {
    let cols = chart_columns(points, basis);
    let projected: Vec<IntVec> = points.iter().map(|p| cols.iter().map(|&c| p[c].clone()).collect()).collect();
    // projection is injective on the affine span, so distinct inputs stay distinct
    let inner = hull(&projected);
    HullResult { affine_dim: inner.affine_dim, extreme: inner.extreme, simplices: vec![] }
}

/// Sum of |det| over boundary simplices coned from `apex`; equals d!·vol.
pub(crate) fn cone_volume_times_factorial(points: &[IntVec], simplices: &[Simplex], apex: usize) -> BigInt {
    let a = &points[apex];
    simplices
        .iter()
        .filter(|s| !s.verts.contains(&apex))
        .map(|s| {
            let m: Vec<IntVec> = s.verts.iter().map(|&v| sub(&points[v], a)).collect();
            det_int(&m).abs()
        })
        .fold(BigInt::zero(), |acc, x| acc + x)
}
