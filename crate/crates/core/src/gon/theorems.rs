//! Exact verifiers for the inequalities between volume, successive minima,
//! dual minima, lattice width and interior lattice points.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{lattice_width, successive_minima};
use crate::error::{Error, Result};
use crate::math::{hermite_basis, lattice_span, rank, to_rat_vec, IntVec, Rat};
use crate::polytope::{LatticeMode, Polytope, SymmetricBody};
use crate::report::{Quantity, TheoremId, TheoremReport};

fn instance(p: &Polytope) -> serde_json::Value {
    serde_json::to_value(p.to_json()).expect("plain data")
}

/// `1/d! ≤ vol(P) · ∏ λ_i(ℤ^d, P − P) ≤ 1`.
pub fn verify_minkowski_second(p: &Polytope) -> Result<TheoremReport> {
    p.require_full_dimensional()?;
    let vol = p.volume();
    let sm = successive_minima(&p.difference_body()?);
    let product = sm.lambdas.iter().fold(vol.clone(), |acc, l| acc * l);
    let mut r = TheoremReport::new(TheoremId::MinkowskiSecond, instance(p));
    r.set("d", Quantity::Count(p.dim() as u64))
        .set("volume", Quantity::Rat(vol))
        .set("lambda", Quantity::Rats(sm.lambdas))
        .set("product", Quantity::Rat(product))
        .witness("lambda", sm.witnesses);
    Ok(r.finish())
}

/// `1 ≤ λ_i(K) · λ_{d−i+1}(K*) ≤ d` for every i.
pub fn verify_transference(k: &SymmetricBody) -> TheoremReport {
    let d = k.dim();
    let sm = successive_minima(k);
    let dual = successive_minima(&k.polar());
    let products: Vec<Rat> = (0..d).map(|i| &sm.lambdas[i] * &dual.lambdas[d - 1 - i]).collect();
    let mut r = TheoremReport::new(TheoremId::Transference, instance(k.body()));
    r.set("d", Quantity::Count(d as u64))
        .set("lambda", Quantity::Rats(sm.lambdas))
        .set("lambda_dual", Quantity::Rats(dual.lambdas))
        .set("products", Quantity::Rats(products))
        .witness("lambda", sm.witnesses)
        .witness("lambda_dual", dual.witnesses);
    r.finish()
}

/// `1 ≤ λ_1(K) · λ_2(K*) ≤ 3/2` in the plane.
pub fn verify_sharp_2d(k: &SymmetricBody) -> Result<TheoremReport> {
    if k.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: k.dim() });
    }
    let sm = successive_minima(k);
    let dual = successive_minima(&k.polar());
    let product = &sm.lambdas[0] * &dual.lambdas[1];
    let mut r = TheoremReport::new(TheoremId::Sharp2d, instance(k.body()));
    r.set("lambda1", Quantity::Rat(sm.lambdas[0].clone()))
        .set("lambda2_dual", Quantity::Rat(dual.lambdas[1].clone()))
        .set("product", Quantity::Rat(product))
        .witness("lambda1", vec![sm.witnesses[0].clone()])
        .witness("lambda2_dual", dual.witnesses);
    Ok(r.finish())
}

fn diffs_from(points: &[IntVec], base: &IntVec) -> Vec<IntVec> {
    points.iter().map(|a| a.iter().zip(base).map(|(x, y)| x - y).collect()).collect()
}

/// Greedy `m_0, …, m_k` from `points` with `m_i − m_0` independent.
fn affine_independent(points: &[IntVec]) -> Vec<IntVec> {
    let Some(base) = points.first() else { return vec![] };
    let mut chosen = vec![base.clone()];
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for p in &points[1..] {
        let diff: IntVec = p.iter().zip(base).map(|(x, y)| x - y).collect();
        rows.push(to_rat_vec(&diff));
        if rank(&rows) == rows.len() {
            chosen.push(p.clone());
        } else {
            rows.pop();
        }
    }
    chosen
}

/// Greedy subset of `vectors` with the same ℤ-span as all of them.
fn generating_subset(vectors: &[IntVec], d: usize) -> Vec<IntVec> {
    let mut chosen: Vec<IntVec> = Vec::new();
    let mut basis = hermite_basis(&chosen, d).expect("dimensions agree");
    for v in vectors {
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        chosen.push(v.clone());
        let next = hermite_basis(&chosen, d).expect("dimensions agree");
        if next == basis {
            chosen.pop();
        } else {
            basis = next;
        }
        if lattice_span(&chosen, d).map(|s| s.generates_full_lattice).unwrap_or(false) {
            break;
        }
    }
    chosen
}

/// Flatness items a–e and the basis-of-differences statement for a
/// full-dimensional rational polytope.
///
/// Conclusions are evaluated, with witnesses, whether or not the width
/// hypothesis is met; items with a failed hypothesis hold vacuously.
pub fn flatness_report(p: &Polytope) -> Result<TheoremReport> {
    p.require_full_dimensional()?;
    let d = p.dim();
    let width = lattice_width(p)?;
    let interior = p.lattice_points(LatticeMode::InteriorOnly)?;
    let vol = p.volume();

    let independent = affine_independent(&interior);
    let interior_dim = independent.len().saturating_sub(1);
    let (spans, generators) = match interior.first() {
        Some(a0) => {
            let diffs = diffs_from(&interior, a0);
            let spans = lattice_span(&diffs, d)?.generates_full_lattice;
            (spans, if spans { generating_subset(&diffs, d) } else { vec![] })
        }
        None => (false, vec![]),
    };

    let mut r = TheoremReport::new(TheoremId::Flatness, instance(p));
    r.set("d", Quantity::Count(d as u64))
        .set("width", Quantity::Rat(width.width.clone()))
        .set("interior_count", Quantity::Count(interior.len() as u64))
        .set("interior_dim", Quantity::Count(interior_dim as u64))
        .set("interior_spans_lattice", Quantity::Flag(spans))
        .set("volume", Quantity::Rat(vol))
        .witness("width_functional", vec![width.witness.clone()]);
    let dr = Rat::from_integer(BigInt::from(d));
    r.set("d_vacuous", Quantity::Flag(&width.width / &dr - &dr < Rat::zero()));
    if let Some(a0) = interior.first() {
        r.witness("a", vec![a0.clone()]);
    }
    if interior_dim == d {
        r.witness("b", independent.clone());
        r.witness("intro2", independent);
    }
    if spans {
        r.witness("c", generators);
    }
    let mut r = r.finish();
    if let Some(items) = crate::report::flatness_items(&r) {
        for (name, ok) in items {
            r.set(&format!("item_{name}"), Quantity::Flag(ok));
        }
    }
    Ok(r)
}
