//! Exact convex polytopes in V- and H-representation.
//!
//! A [`Polytope`] is stored by its canonical vertex list (exactly the extreme
//! points, sorted lexicographically). Facets carry primitive outward integer
//! normals and rational offsets, `{ x : ⟨normal, x⟩ ≤ offset }`, and are
//! computed on first use.

mod hull;
mod json;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::math::{dot_int_rat, primitive, rank, IntVec, Rat, RatVec};

pub use json::PolytopeJson;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: IntVec,
    pub offset: Rat,
    /// Indices into [`Polytope::vertices`] of the vertices on this facet.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointLocation {
    Interior,
    Boundary,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeMode {
    All,
    InteriorOnly,
}

#[derive(Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<RatVec>,
    affine_dim: usize,
    facets: OnceLock<Vec<Facet>>,
    simplices: OnceLock<Vec<Vec<usize>>>,
}

impl Clone for Polytope {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            vertices: self.vertices.clone(),
            affine_dim: self.affine_dim,
            facets: self.facets.clone(),
            simplices: self.simplices.clone(),
        }
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

fn check_len(v: &[Rat], d: usize) -> Result<()> {
    if v.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: v.len() });
    }
    Ok(())
}

impl Polytope {
    /// Convex hull of a finite point set in ℚ^d.
    pub fn convex_hull(points: &[RatVec], d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        for p in points {
            check_len(p, d)?;
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let (ints, _) = hull::integerize(&pts);
        let res = hull::hull(&ints);
        let vertices = res.extreme.iter().map(|&i| pts[i].clone()).collect();
        Ok(Self::from_parts(d, vertices, res.affine_dim))
    }

    pub fn from_int_points(points: &[IntVec], d: usize) -> Result<Self> {
        let pts: Vec<RatVec> = points.iter().map(|p| crate::math::to_rat_vec(p)).collect();
        Self::convex_hull(&pts, d)
    }

    fn from_parts(dim: usize, vertices: Vec<RatVec>, affine_dim: usize) -> Self {
        Self { dim, vertices, affine_dim, facets: OnceLock::new(), simplices: OnceLock::new() }
    }

    /// Axis-parallel box ∏[lo_i, hi_i].
    pub fn cuboid(lo: &[Rat], hi: &[Rat]) -> Result<Self> {
        let d = lo.len();
        check_len(hi, d)?;
        let corners: Vec<RatVec> = (0..1usize << d)
            .map(|mask| (0..d).map(|i| if mask >> i & 1 == 1 { hi[i].clone() } else { lo[i].clone() }).collect())
            .collect();
        Self::convex_hull(&corners, d)
    }

    /// `w · conv{0, e_1, …, e_d}`.
    pub fn dilated_simplex(d: usize, w: &Rat) -> Result<Self> {
        let mut pts = vec![vec![Rat::zero(); d]];
        for i in 0..d {
            let mut e = vec![Rat::zero(); d];
            e[i] = w.clone();
            pts.push(e);
        }
        Self::convex_hull(&pts, d)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn require_full_dimensional(&self) -> Result<()> {
        if self.is_full_dimensional() {
            Ok(())
        } else {
            Err(Error::DimensionDeficient { affine_dim: self.affine_dim, ambient_dim: self.dim })
        }
    }

    /// True when every vertex has integer coordinates.
    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().flatten().all(|x| x.is_integer())
    }

    fn compute_hrep(&self) -> (Vec<Facet>, Vec<Vec<usize>>) {
        let d = self.dim;
        let (ints, scale) = hull::integerize(&self.vertices);
        if d == 1 {
            let facets = vec![
                Facet { normal: vec![BigInt::one()], offset: self.vertices[1][0].clone(), vertices: vec![1] },
                Facet { normal: vec![-BigInt::one()], offset: -self.vertices[0][0].clone(), vertices: vec![0] },
            ];
            return (sort_facets(facets), vec![vec![1]]);
        }
        let res = hull::hull(&ints);
        debug_assert_eq!(res.extreme.len(), self.vertices.len());
        let mut facets: Vec<Facet> = Vec::new();
        let mut normals: Vec<(IntVec, BigInt)> = res.simplices.iter().map(|s| (s.normal.clone(), s.offset.clone())).collect();
        normals.sort();
        normals.dedup();
        for (normal, offset) in normals {
            let on: Vec<usize> = ints
                .iter()
                .enumerate()
                .filter(|(_, p)| p.iter().zip(&normal).fold(BigInt::zero(), |acc, (x, a)| acc + x * a) == offset)
                .map(|(i, _)| i)
                .collect();
            facets.push(Facet { normal, offset: Rat::new(offset, scale.clone()), vertices: on });
        }
        let simplices = res.simplices.into_iter().map(|s| s.verts).collect();
        (sort_facets(facets), simplices)
    }

    fn ensure_hrep(&self) {
        if self.facets.get().is_some() && self.simplices.get().is_some() {
            return;
        }
        let (f, s) = self.compute_hrep();
        let _ = self.facets.set(f);
        let _ = self.simplices.set(s);
    }

    /// Facets with primitive outward normals; requires full dimension.
    pub fn facets(&self) -> Result<&[Facet]> {
        self.require_full_dimensional()?;
        if let Some(f) = self.facets.get() {
            return Ok(f);
        }
        self.ensure_hrep();
        Ok(self.facets.get().expect("initialized"))
    }

    /// Facets recomputed from the vertex list, ignoring any seeded cache.
    pub fn fresh_facets(&self) -> Result<Vec<Facet>> {
        self.require_full_dimensional()?;
        Ok(self.compute_hrep().0)
    }

    fn simplices(&self) -> &[Vec<usize>] {
        if let Some(s) = self.simplices.get() {
            return s;
        }
        let (f, s) = self.compute_hrep();
        let _ = self.facets.set(f);
        let _ = self.simplices.set(s);
        self.simplices.get().expect("initialized")
    }

    pub fn locate(&self, x: &[Rat]) -> Result<PointLocation> {
        check_len(x, self.dim)?;
        let mut on_boundary = false;
        for f in self.facets()? {
            let s = dot_int_rat(&f.normal, x);
            if s > f.offset {
                return Ok(PointLocation::Outside);
            }
            if s == f.offset {
                on_boundary = true;
            }
        }
        Ok(if on_boundary { PointLocation::Boundary } else { PointLocation::Interior })
    }

    /// Closed membership; works in any affine dimension.
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        check_len(x, self.dim)?;
        if self.is_full_dimensional() {
            return Ok(self.locate(x)? != PointLocation::Outside);
        }
        Ok(self.lower_dim_chart().contains(x))
    }

    fn lower_dim_chart(&self) -> LowerDimChart {
        LowerDimChart::new(self)
    }

    /// Integer bounding box `[⌊min⌋, ⌈max⌉]` per coordinate.
    pub fn integer_bounding_box(&self) -> (IntVec, IntVec) {
        let lo = (0..self.dim).map(|j| self.vertices.iter().map(|v| v[j].floor().to_integer()).min().unwrap()).collect();
        let hi = (0..self.dim).map(|j| self.vertices.iter().map(|v| v[j].ceil().to_integer()).max().unwrap()).collect();
        (lo, hi)
    }

    /// Lattice points, sorted lexicographically.
    pub fn lattice_points(&self, mode: LatticeMode) -> Result<Vec<IntVec>> {
        let (lo, hi) = self.integer_bounding_box();
        let mut out = Vec::new();
        if !self.is_full_dimensional() {
            if mode == LatticeMode::InteriorOnly {
                self.require_full_dimensional()?;
            }
            let chart = self.lower_dim_chart();
            for_each_in_box(&lo, &hi, |x| {
                if chart.contains(&crate::math::to_rat_vec(x)) {
                    out.push(x.to_vec());
                }
            });
            return Ok(out);
        }
        // ⟨a,x⟩ is an integer on lattice points, so compare against integer thresholds
        let thresholds: Vec<(&IntVec, BigInt)> = self
            .facets()?
            .iter()
            .map(|f| {
                let t = match mode {
                    LatticeMode::All => f.offset.floor().to_integer(),
                    LatticeMode::InteriorOnly => f.offset.ceil().to_integer() - 1,
                };
                (&f.normal, t)
            })
            .collect();
        for_each_in_box(&lo, &hi, |x| {
            let inside = thresholds
                .iter()
                .all(|(a, t)| a.iter().zip(x).fold(BigInt::zero(), |acc, (ai, xi)| acc + ai * xi) <= *t);
            if inside {
                out.push(x.to_vec());
            }
        });
        Ok(out)
    }

    /// Lattice-normalized volume (unit cube = 1); zero when not full-dimensional.
    pub fn volume(&self) -> Rat {
        if !self.is_full_dimensional() {
            return Rat::zero();
        }
        let d = self.dim;
        if d == 1 {
            return &self.vertices[1][0] - &self.vertices[0][0];
        }
        let (ints, scale) = hull::integerize(&self.vertices);
        let simplices: Vec<hull::Simplex> = self
            .simplices()
            .iter()
            .map(|v| hull::Simplex { verts: v.clone(), normal: vec![], offset: BigInt::zero() })
            .collect();
        let total = hull::cone_volume_times_factorial(&ints, &simplices, 0);
        let factorial: BigInt = (1..=d).map(BigInt::from).product();
        Rat::new(total, factorial * scale.pow(d as u32))
    }

    /// Hull of all pairwise vertex differences.
    pub fn difference_body(&self) -> Result<SymmetricBody> {
        self.require_full_dimensional()?;
        let mut diffs = Vec::with_capacity(self.vertices.len() * self.vertices.len());
        for v in &self.vertices {
            for w in &self.vertices {
                diffs.push(v.iter().zip(w).map(|(a, b)| a - b).collect::<RatVec>());
            }
        }
        SymmetricBody::new(Polytope::convex_hull(&diffs, self.dim)?)
    }

    /// Pairs of vertex indices joined by an edge.
    pub fn edges(&self) -> Result<Vec<(usize, usize)>> {
        let facets = self.facets()?;
        let d = self.dim;
        let n = self.vertices.len();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let rows: Vec<Vec<Rat>> = facets
                    .iter()
                    .filter(|f| f.vertices.contains(&u) && f.vertices.contains(&v))
                    .map(|f| crate::math::to_rat_vec(&f.normal))
                    .collect();
                if rank(&rows) + 1 == d {
                    out.push((u, v));
                }
            }
        }
        Ok(out)
    }

    pub fn translate(&self, t: &[Rat]) -> Result<Self> {
        check_len(t, self.dim)?;
        let pts: Vec<RatVec> = self.vertices.iter().map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect()).collect();
        Self::convex_hull(&pts, self.dim)
    }

    pub fn scale(&self, c: &Rat) -> Result<Self> {
        let pts: Vec<RatVec> = self.vertices.iter().map(|v| v.iter().map(|a| a * c).collect()).collect();
        Self::convex_hull(&pts, self.dim)
    }

    /// Image under `x ↦ M x` for an integer matrix `M` (rows given).
    pub fn map_linear(&self, m: &[IntVec]) -> Result<Self> {
        let pts: Vec<RatVec> = self.vertices.iter().map(|v| m.iter().map(|row| dot_int_rat(row, v)).collect()).collect();
        Self::convex_hull(&pts, m.len())
    }
}

fn sort_facets(mut facets: Vec<Facet>) -> Vec<Facet> {
    facets.sort_by(|a, b| a.normal.cmp(&b.normal));
    facets
}

/// Calls `f` on every integer point of the box `lo ≤ x ≤ hi`, lexicographically.
pub(crate) fn for_each_in_box(lo: &[BigInt], hi: &[BigInt], mut f: impl FnMut(&[BigInt])) {
    let d = lo.len();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let mut x = lo.to_vec();
    loop {
        f(&x);
        let mut j = d;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            if x[j] < hi[j] {
                x[j] += 1;
                for k in j + 1..d {
                    x[k] = lo[k].clone();
                }
                break;
            }
        }
    }
}

/// Membership for polytopes of positive codimension: affine-hull test plus a
/// full-dimensional hull in coordinate projection.
struct LowerDimChart {
    base: RatVec,
    directions: Vec<RatVec>,
    cols: Vec<usize>,
    projected: Option<Polytope>,
}

impl LowerDimChart {
    fn new(p: &Polytope) -> Self {
        let base = p.vertices[0].clone();
        let mut directions: Vec<RatVec> = Vec::new();
        for v in &p.vertices[1..] {
            let diff: RatVec = v.iter().zip(&base).map(|(a, b)| a - b).collect();
            directions.push(diff);
            if rank(&directions) < directions.len() {
                directions.pop();
            }
        }
        let mut cols = Vec::new();
        for c in 0..p.dim {
            cols.push(c);
            let rows: Vec<Vec<Rat>> = directions.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
            if rank(&rows) < cols.len() {
                cols.pop();
            }
        }
        let projected = if directions.is_empty() {
            None
        } else {
            let pts: Vec<RatVec> = p.vertices.iter().map(|v| cols.iter().map(|&c| v[c].clone()).collect()).collect();
            Some(Polytope::convex_hull(&pts, cols.len()).expect("projection of a nonempty set"))
        };
        Self { base, directions, cols, projected }
    }

    fn contains(&self, x: &[Rat]) -> bool {
        let Some(proj) = &self.projected else {
            return x == self.base.as_slice();
        };
        let diff: RatVec = x.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        let mut rows = self.directions.clone();
        rows.push(diff);
        if rank(&rows) > self.directions.len() {
            return false;
        }
        let px: RatVec = self.cols.iter().map(|&c| x[c].clone()).collect();
        proj.locate(&px).map(|l| l != PointLocation::Outside).unwrap_or(false)
    }
}

/// A full-dimensional polytope whose vertex set is closed under negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricBody {
    body: Polytope,
}

impl SymmetricBody {
    pub fn new(body: Polytope) -> Result<Self> {
        body.require_full_dimensional()?;
        let closed = body.vertices.iter().all(|v| {
            let neg: RatVec = v.iter().map(|x| -x).collect();
            body.vertices.binary_search(&neg).is_ok()
        });
        if !closed {
            return Err(Error::NotSymmetric);
        }
        Ok(Self { body })
    }

    /// Symmetric hull of `points ∪ −points`.
    pub fn symmetrized(points: &[RatVec], d: usize) -> Result<Self> {
        let mut all = points.to_vec();
        all.extend(points.iter().map(|p| p.iter().map(|x| -x).collect::<RatVec>()));
        Self::new(Polytope::convex_hull(&all, d)?)
    }

    pub fn body(&self) -> &Polytope {
        &self.body
    }

    pub fn into_body(self) -> Polytope {
        self.body
    }

    pub fn dim(&self) -> usize {
        self.body.dim
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.body.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        self.body.facets().expect("symmetric bodies are full-dimensional")
    }

    /// `{ φ : ⟨φ, v⟩ ≤ 1 for every vertex v }`.
    ///
    /// Vertices of the polar are `normal / offset` over the facets; its facets
    /// are the vertices of `self`, so the facet cache is filled directly.
    pub fn polar(&self) -> SymmetricBody {
        let d = self.dim();
        let facets = self.facets();
        let mut verts: Vec<(RatVec, usize)> = facets
            .iter()
            .enumerate()
            .map(|(i, f)| (f.normal.iter().map(|a| Rat::from_integer(a.clone()) / &f.offset).collect(), i))
            .collect();
        verts.sort();
        let mut position = vec![0; verts.len()];
        for (pos, (_, orig)) in verts.iter().enumerate() {
            position[*orig] = pos;
        }
        let polar_facets: Vec<Facet> = self
            .vertices()
            .iter()
            .enumerate()
            .map(|(vi, v)| {
                let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                let scaled: IntVec = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
                let normal = primitive(&scaled).expect("origin is interior, vertices are nonzero");
                // v = s · normal with s > 0
                let idx = normal.iter().position(|x| !x.is_zero()).unwrap();
                let s = Rat::new(scaled[idx].clone(), normal[idx].clone() * &l);
                let mut on: Vec<usize> =
                    facets.iter().enumerate().filter(|(_, f)| f.vertices.contains(&vi)).map(|(fi, _)| position[fi]).collect();
                on.sort_unstable();
                Facet { normal, offset: s.recip(), vertices: on }
            })
            .collect();
        let polytope = Polytope::from_parts(d, verts.into_iter().map(|(v, _)| v).collect(), d);
        let _ = polytope.facets.set(sort_facets(polar_facets));
        SymmetricBody { body: polytope }
    }

    pub fn scale(&self, c: &Rat) -> Result<Self> {
        Self::new(self.body.scale(c)?)
    }
}
