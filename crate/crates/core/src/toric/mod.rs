//! Seshadri successive minima of toric line bundles, read off the moment
//! polytope.
//!
//! At a smooth torus-fixed point the minima are exact: they are widths of
//! faces measured in the coordinates given by the edge generators of the
//! vertex cone. At a very general point they are bracketed by the Minkowski
//! minima of the difference body and of its polar.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gon::successive_minima;
use crate::math::{det_int, format_rat, primitive, solve, to_rat_vec, IntVec, Rat, RatVec};
use crate::polytope::Polytope;
use crate::report::{factorial, Quantity, TheoremId, TheoremReport};

/// Full-dimensional polytope with integer vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentPolytope {
    polytope: Polytope,
}

impl MomentPolytope {
    pub fn new(polytope: Polytope) -> Result<Self> {
        polytope.require_full_dimensional()?;
        if !polytope.is_lattice() {
            return Err(Error::NonLatticeVertex);
        }
        Ok(Self { polytope })
    }

    pub fn from_int_points(points: &[IntVec], d: usize) -> Result<Self> {
        Self::new(Polytope::from_int_points(points, d)?)
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    /// Vertices as integer vectors.
    pub fn int_vertices(&self) -> Vec<IntVec> {
        self.polytope
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| x.to_integer()).collect())
            .collect()
    }

    fn vertex_index(&self, u: &[BigInt]) -> Result<usize> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: u.len() });
        }
        let target = to_rat_vec(u);
        self.polytope.vertices().iter().position(|v| *v == target).ok_or(Error::NotAVertex)
    }

    /// For every vertex, the neighbouring vertex indices along edges.
    fn neighbours(&self) -> Result<Vec<Vec<usize>>> {
        let mut adj = vec![Vec::new(); self.polytope.vertices().len()];
        for (a, b) in self.polytope.edges()? {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(adj)
    }

    /// Every vertex has exactly `d` edges.
    pub fn is_simple(&self) -> Result<bool> {
        let d = self.dim();
        Ok(self.neighbours()?.iter().all(|n| n.len() == d))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCone {
    pub vertex: IntVec,
    /// Primitive edge directions, ordered by the neighbouring vertex.
    pub edge_generators: Vec<IntVec>,
    pub smooth: bool,
}

fn cone_at(mp: &MomentPolytope, index: usize, neighbours: &[usize]) -> Result<VertexCone> {
    let verts = mp.int_vertices();
    let u = &verts[index];
    let edge_generators = neighbours
        .iter()
        .map(|&j| primitive(&verts[j].iter().zip(u).map(|(a, b)| a - b).collect::<IntVec>()))
        .collect::<Result<Vec<_>>>()?;
    let smooth = edge_generators.len() == mp.dim() && det_int(&edge_generators).abs().is_one();
    Ok(VertexCone { vertex: u.clone(), edge_generators, smooth })
}

/// Edge generators of the polytope at the vertex `u`.
pub fn vertex_cone(mp: &MomentPolytope, u: &[BigInt]) -> Result<VertexCone> {
    let index = mp.vertex_index(u)?;
    let adj = mp.neighbours()?;
    cone_at(mp, index, &adj[index])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    InvariantPoint,
    FamilyFormula,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::InvariantPoint => "invariant_point",
            Provenance::FamilyFormula => "family_formula",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpsEntry {
    Exact { value: Rat, provenance: Provenance },
    Bracket { lo: Rat, hi: Rat },
}

impl EpsEntry {
    pub fn lo(&self) -> &Rat {
        match self {
            EpsEntry::Exact { value, .. } => value,
            EpsEntry::Bracket { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &Rat {
        match self {
            EpsEntry::Exact { value, .. } => value,
            EpsEntry::Bracket { hi, .. } => hi,
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo() <= x && x <= self.hi()
    }

    fn to_json(&self) -> Value {
        match self {
            EpsEntry::Exact { value, provenance } => {
                json!({ "exact": format_rat(value), "provenance": provenance.as_str() })
            }
            EpsEntry::Bracket { lo, hi } => json!({ "lo": format_rat(lo), "hi": format_rat(hi) }),
        }
    }
}

/// `ε_1 ≥ … ≥ ε_d`, each exact or bracketed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsProfile {
    pub entries: Vec<EpsEntry>,
}

impl EpsProfile {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Exact values, if every entry is exact.
    pub fn exact_values(&self) -> Option<Vec<Rat>> {
        self.entries
            .iter()
            .map(|e| match e {
                EpsEntry::Exact { value, .. } => Some(value.clone()),
                EpsEntry::Bracket { .. } => None,
            })
            .collect()
    }

    /// `(lo, hi)` pairs, if every entry is a bracket.
    pub fn brackets(&self) -> Option<Vec<(Rat, Rat)>> {
        self.entries
            .iter()
            .map(|e| match e {
                EpsEntry::Bracket { lo, hi } => Some((lo.clone(), hi.clone())),
                EpsEntry::Exact { .. } => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({ "eps": self.entries.iter().map(EpsEntry::to_json).collect::<Vec<_>>() })
    }
}

/// Exact `ε_i` at the torus-fixed point of the vertex `u`.
///
/// Writing `□ − u` in the basis of edge generators puts it inside the
/// positive orthant; `ε_i` is the smallest, over coordinate faces of
/// codimension `i − 1`, of the largest coordinate sum on that face.
pub fn eps_at_invariant_point(mp: &MomentPolytope, u: &[BigInt]) -> Result<EpsProfile> {
    let d = mp.dim();
    let index = mp.vertex_index(u)?;
    let adj = mp.neighbours()?;
    if adj.iter().any(|n| n.len() != d) {
        return Err(Error::NotAmplePolytope);
    }
    let cone = cone_at(mp, index, &adj[index])?;
    if !cone.smooth {
        return Err(Error::SingularVertex { det: det_int(&cone.edge_generators).abs().to_string() });
    }
    // columns of the basis matrix are the generators
    let basis: Vec<RatVec> = (0..d).map(|r| cone.edge_generators.iter().map(|g| Rat::from_integer(g[r].clone())).collect()).collect();
    let coords: Vec<RatVec> = mp
        .polytope()
        .vertices()
        .iter()
        .map(|v| {
            let shifted: RatVec = v.iter().zip(&cone.vertex).map(|(a, b)| a - Rat::from_integer(b.clone())).collect();
            solve(&basis, &shifted).expect("unimodular basis")
        })
        .collect();
    debug_assert!(coords.iter().flatten().all(|c| !c.is_negative()));

    let mut entries = Vec::with_capacity(d);
    for i in 0..d {
        let mut best: Option<Rat> = None;
        for_each_subset(d, i, &mut |j: &[usize]| {
            let face_max = coords
                .iter()
                .filter(|c| j.iter().all(|&k| c[k].is_zero()))
                .map(|c| (0..d).filter(|k| !j.contains(k)).map(|k| c[k].clone()).sum::<Rat>())
                .max()
                .expect("the vertex itself lies on every coordinate face");
            if best.as_ref().is_none_or(|b| face_max < *b) {
                best = Some(face_max);
            }
        });
        entries.push(EpsEntry::Exact { value: best.expect("at least one subset"), provenance: Provenance::InvariantPoint });
    }
    Ok(EpsProfile { entries })
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), f);
}

/// Minima of the difference body and of its polar, with the lattice width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketData {
    pub lambda: Vec<Rat>,
    pub lambda_dual: Vec<Rat>,
    pub width: Rat,
    pub profile: EpsProfile,
}

/// Brackets for `ε_i` at a very general point.
pub fn eps_bracket_details(mp: &MomentPolytope) -> Result<BracketData> {
    let d = mp.dim();
    let k = mp.polytope().difference_body()?;
    let lambda = successive_minima(&k).lambdas;
    let lambda_dual = successive_minima(&k.polar()).lambdas;
    let width = lambda_dual[0].clone();
    let dr = Rat::from_integer(BigInt::from(d));

    let mut lo: Vec<Rat> = lambda.iter().map(|l| l.recip()).collect();
    let w_over_d = &width / &dr;
    if w_over_d > lo[d - 1] {
        lo[d - 1] = w_over_d;
    }
    let mut hi: Vec<Rat> = (0..d)
        .map(|i| Rat::from_integer(BigInt::from(d - i)) * &lambda_dual[d - 1 - i])
        .collect();
    // ε is nonincreasing, so each bound propagates along the chain
    for i in (0..d - 1).rev() {
        if lo[i + 1] > lo[i] {
            lo[i] = lo[i + 1].clone();
        }
    }
    for i in 1..d {
        if hi[i - 1] < hi[i] {
            hi[i] = hi[i - 1].clone();
        }
    }
    let entries = lo.into_iter().zip(hi).map(|(lo, hi)| EpsEntry::Bracket { lo, hi }).collect();
    Ok(BracketData { lambda, lambda_dual, width, profile: EpsProfile { entries } })
}

pub fn eps_bracket_general(mp: &MomentPolytope) -> Result<EpsProfile> {
    Ok(eps_bracket_details(mp)?.profile)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `(ℙ^d, O(w))`, moment polytope `w·Δ_d`.
    ProjectiveSpace { d: usize, w: BigInt },
    /// `(ℙ¹)^d` with bidegree `weights`, moment polytope `∏ [0, w_i]`.
    ProductOfP1 { weights: Vec<BigInt> },
}

/// Closed-form `ε_i` of a family together with its moment polytope.
pub fn exact_eps_family(family: &Family) -> Result<(EpsProfile, MomentPolytope)> {
    let exact = |value: BigInt| EpsEntry::Exact { value: Rat::from_integer(value), provenance: Provenance::FamilyFormula };
    match family {
        Family::ProjectiveSpace { d, w } => {
            if !w.is_positive() {
                return Err(Error::InvalidWeights(format!("degree {w} is not positive")));
            }
            if *d == 0 {
                return Err(Error::InvalidWeights("dimension must be positive".into()));
            }
            let entries = vec![exact(w.clone()); *d];
            let mp = MomentPolytope::new(Polytope::dilated_simplex(*d, &Rat::from_integer(w.clone()))?)?;
            Ok((EpsProfile { entries }, mp))
        }
        Family::ProductOfP1 { weights } => {
            if weights.is_empty() {
                return Err(Error::InvalidWeights("no weights".into()));
            }
            if let Some(bad) = weights.iter().find(|w| !w.is_positive()) {
                return Err(Error::InvalidWeights(format!("weight {bad} is not positive")));
            }
            let mut sorted = weights.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let entries = (0..sorted.len()).map(|i| exact(sorted[i..].iter().sum())).collect();
            let lo = vec![Rat::zero(); weights.len()];
            let hi: Vec<Rat> = weights.iter().map(|w| Rat::from_integer(w.clone())).collect();
            let mp = MomentPolytope::new(Polytope::cuboid(&lo, &hi)?)?;
            Ok((EpsProfile { entries }, mp))
        }
    }
}

/// `vol(L) = d! · vol_M(□)`.
pub fn toric_volume(mp: &MomentPolytope) -> Rat {
    factorial(mp.dim() as u64) * mp.polytope().volume()
}

fn instance(mp: &MomentPolytope) -> Value {
    serde_json::to_value(mp.polytope().to_json()).expect("plain data")
}

/// `1 ≤ vol(L) / ∏ ε_i ≤ d!`, or its consequence for brackets.
pub fn verify_m2m(mp: &MomentPolytope, eps: &EpsProfile) -> Result<TheoremReport> {
    let d = mp.dim();
    if eps.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: eps.dim() });
    }
    let vol = toric_volume(mp);
    let mut r = TheoremReport::new(TheoremId::SeshadriVolume, instance(mp));
    r.set("d", Quantity::Count(d as u64)).set("volume", Quantity::Rat(vol.clone()));
    if let Some(values) = eps.exact_values() {
        let product: Rat = values.iter().fold(Rat::one(), |acc, x| acc * x);
        r.set("ratio", Quantity::Rat(vol / product)).set("eps", Quantity::Rats(values));
    } else if let Some(brackets) = eps.brackets() {
        let (lo, hi): (Vec<Rat>, Vec<Rat>) = brackets.into_iter().unzip();
        r.set("lo", Quantity::Rats(lo)).set("hi", Quantity::Rats(hi));
    } else {
        return Err(Error::MixedProfile);
    }
    Ok(r.finish())
}

/// `w/d ≤ lo_d ≤ hi_d ≤ w` for the last bracket, `w` the lattice width.
pub fn verify_width_sandwich(mp: &MomentPolytope) -> Result<TheoremReport> {
    let data = eps_bracket_details(mp)?;
    let d = mp.dim();
    let last = &data.profile.entries[d - 1];
    let mut r = TheoremReport::new(TheoremId::WidthSandwich, instance(mp));
    r.set("d", Quantity::Count(d as u64))
        .set("width", Quantity::Rat(data.width.clone()))
        .set("lo_d", Quantity::Rat(last.lo().clone()))
        .set("hi_d", Quantity::Rat(last.hi().clone()));
    Ok(r.finish())
}

#[cfg(test)]
mod tests;
