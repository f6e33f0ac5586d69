//! Gauge functions, Minkowski successive minima and lattice width, all exact.
//!
//! Minima are found by exhaustive enumeration of the lattice points of `R·K`
//! for a radius `R` that provably bounds the last minimum, so there is no
//! reduction step and no approximation.

mod enumerate;
mod theorems;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::math::{dot_int_rat, rank, to_rat_vec, IntVec, Rat};
use crate::polytope::{Polytope, SymmetricBody};

pub use enumerate::lattice_points_with_gauge_at_most;
pub use theorems::{flatness_report, verify_minkowski_second, verify_sharp_2d, verify_transference};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessiveMinima {
    pub lambdas: Vec<Rat>,
    pub witnesses: Vec<IntVec>,
}

impl SuccessiveMinima {
    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthResult {
    pub width: Rat,
    pub witness: IntVec,
}

/// `min { t ≥ 0 : x ∈ tK }`, as the largest ratio `⟨a, x⟩ / b` over facets.
pub fn gauge(k: &SymmetricBody, x: &[Rat]) -> Rat {
    k.facets()
        .iter()
        .map(|f| dot_int_rat(&f.normal, x) / &f.offset)
        .fold(Rat::zero(), |acc, g| if g > acc { g } else { acc })
}

pub fn gauge_int(k: &SymmetricBody, x: &[BigInt]) -> Rat {
    gauge(k, &to_rat_vec(x))
}

fn l1(x: &[BigInt]) -> BigInt {
    x.iter().map(|v| v.abs()).sum()
}

/// Candidate order: gauge, then ℓ1 norm, then lexicographically descending,
/// which lists e_1 before e_2 on ties.
fn candidate_order(a: &(Rat, BigInt, IntVec), b: &(Rat, BigInt, IntVec)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)).then_with(|| b.2.cmp(&a.2))
}

fn unit(d: usize, i: usize) -> Vec<Rat> {
    let mut e = vec![Rat::zero(); d];
    e[i] = Rat::from_integer(1.into());
    e
}

fn candidates(k: &SymmetricBody, radius: &Rat) -> Vec<(Rat, BigInt, IntVec)> {
    let mut c: Vec<(Rat, BigInt, IntVec)> = lattice_points_with_gauge_at_most(k, radius)
        .into_iter()
        .map(|(x, g)| {
            let n = l1(&x);
            (g, n, x)
        })
        .collect();
    c.sort_by(candidate_order);
    c
}

/// Successive minima λ_1 ≤ … ≤ λ_d of ℤ^d with respect to `k`.
pub fn successive_minima(k: &SymmetricBody) -> SuccessiveMinima {
    let d = k.dim();
    let unit_gauges: Vec<Rat> = (0..d).map(|i| gauge(k, &unit(d, i))).collect();
    // the standard basis is independent, so its largest gauge bounds λ_d
    let cap = unit_gauges.iter().max().expect("d ≥ 1").clone();
    let mut radius = unit_gauges.iter().min().expect("d ≥ 1").clone();
    loop {
        let mut lambdas = Vec::with_capacity(d);
        let mut witnesses: Vec<IntVec> = Vec::with_capacity(d);
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(d);
        for (g, _, x) in candidates(k, &radius) {
            rows.push(to_rat_vec(&x));
            if rank(&rows) == rows.len() {
                lambdas.push(g);
                witnesses.push(x);
                if witnesses.len() == d {
                    break;
                }
            } else {
                rows.pop();
            }
        }
        // every lattice point of gauge ≤ radius was seen, so a full set is final
        if witnesses.len() == d {
            return SuccessiveMinima { lambdas, witnesses };
        }
        radius = (radius * Rat::from_integer(2.into())).min(cap.clone());
    }
}

/// First minimum only; cheaper than the full sequence.
pub fn first_minimum(k: &SymmetricBody) -> (Rat, IntVec) {
    let d = k.dim();
    let radius = (0..d).map(|i| gauge(k, &unit(d, i))).min().expect("d ≥ 1");
    let (g, _, x) = candidates(k, &radius).into_iter().next().expect("some e_i has gauge ≤ radius");
    (g, x)
}

/// Length of the interval `⟨φ, P⟩`.
pub fn width_along(p: &Polytope, phi: &[BigInt]) -> Rat {
    let vals: Vec<Rat> = p.vertices().iter().map(|v| dot_int_rat(phi, v)).collect();
    let max = vals.iter().max().expect("nonempty").clone();
    let min = vals.iter().min().expect("nonempty").clone();
    max - min
}

/// Lattice width as the first minimum of the polar of the difference body.
pub fn lattice_width(p: &Polytope) -> Result<WidthResult> {
    let k = p.difference_body()?;
    let polar = k.polar();
    let (width, witness) = first_minimum(&polar);
    Ok(WidthResult { width, witness })
}
