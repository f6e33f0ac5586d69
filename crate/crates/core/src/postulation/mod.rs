//! Lattice points and volumes of the boxes
//! `□(t) = { x ∈ ℝ^d_{≥0} : x_i + … + x_d ≤ t_i for all i }`,
//! and the dimension of degree-`q` forms on `ℙ^d` with prescribed
//! multiplicities along a linear flag.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::math::{format_rat, solve, Rat, RatVec};
use crate::polytope::Polytope;
use crate::report::{Quantity, TheoremId, TheoremReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxSpec {
    t: Vec<Rat>,
}

impl BoxSpec {
    pub fn new(t: Vec<Rat>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(bad) = t.iter().find(|x| x.is_negative()) {
            return Err(Error::NegativeParameter(format!("box parameter {} is negative", format_rat(bad))));
        }
        Ok(Self { t })
    }

    pub fn t(&self) -> &[Rat] {
        &self.t
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    /// `t_1 ≥ t_2 ≥ … ≥ t_d`.
    pub fn is_sorted(&self) -> bool {
        self.t.windows(2).all(|w| w[0] >= w[1])
    }

    /// `x ∈ □(t)`.
    pub fn contains(&self, x: &[Rat]) -> bool {
        let mut suffix = Rat::zero();
        for i in (0..self.dim()).rev() {
            if x[i].is_negative() {
                return false;
            }
            suffix += &x[i];
            if suffix > self.t[i] {
                return false;
            }
        }
        true
    }

    /// Vertices, by solving every choice of `d` tight constraints.
    pub fn vertices(&self) -> Vec<RatVec> {
        let d = self.dim();
        // rows 0..d: -x_k ≤ 0; rows d..2d: x_i + … + x_d ≤ t_i
        let rows: Vec<(RatVec, Rat)> = (0..d)
            .map(|k| ((0..d).map(|j| if j == k { -Rat::one() } else { Rat::zero() }).collect(), Rat::zero()))
            .chain((0..d).map(|i| ((0..d).map(|j| if j >= i { Rat::one() } else { Rat::zero() }).collect(), self.t[i].clone())))
            .collect();
        let mut out: Vec<RatVec> = Vec::new();
        let mut pick = Vec::with_capacity(d);
        choose(2 * d, d, 0, &mut pick, &mut |sel: &[usize]| {
            let a: Vec<RatVec> = sel.iter().map(|&r| rows[r].0.clone()).collect();
            let b: RatVec = sel.iter().map(|&r| rows[r].1.clone()).collect();
            if let Some(x) = solve(&a, &b) {
                if self.contains(&x) && !out.contains(&x) {
                    out.push(x);
                }
            }
        });
        out.sort();
        out
    }

    pub fn to_polytope(&self) -> Polytope {
        Polytope::convex_hull(&self.vertices(), self.dim()).expect("the origin is always a vertex")
    }
}

fn choose(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        cur.push(i);
        choose(n, k, i + 1, cur, f);
        cur.pop();
    }
}

/// Multiplicities `p_1, …, p_d` along a linear flag in `ℙ^d`, in degree `q`.
///
/// A negative `q` describes the zero space of forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagSpec {
    pub d: usize,
    pub p: Vec<u64>,
    pub q: i64,
}

impl FlagSpec {
    pub fn new(d: usize, p: Vec<u64>, q: i64) -> Result<Self> {
        if p.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: p.len() });
        }
        Ok(Self { d, p, q })
    }
}

/// `|ℤ^d ∩ □(t)|`.
pub fn box_count(b: &BoxSpec) -> BigInt {
    let bounds: Vec<BigInt> = b.t.iter().map(|x| x.floor().to_integer()).collect();
    count_suffix(&bounds, bounds.len(), &BigInt::zero())
}

// points (x_1..x_i) below index i, given x_{i+1} + … + x_d = s
fn count_suffix(bounds: &[BigInt], i: usize, s: &BigInt) -> BigInt {
    if i == 0 {
        return BigInt::one();
    }
    let room = &bounds[i - 1] - s;
    if room.is_negative() {
        return BigInt::zero();
    }
    if i == 1 {
        return room + 1;
    }
    let mut total = BigInt::zero();
    let mut x = BigInt::zero();
    while x <= room {
        total += count_suffix(bounds, i - 1, &(s + &x));
        x += 1;
    }
    total
}

/// The closed form for sorted parameters in dimension at most 3.
pub fn box_volume_closed_form(b: &BoxSpec) -> Option<Rat> {
    if !b.is_sorted() {
        return None;
    }
    let t = &b.t;
    let c = |n: i64| Rat::from_integer(BigInt::from(n));
    match t.len() {
        1 => Some(t[0].clone()),
        2 => Some((c(2) * &t[0] * &t[1] - &t[1] * &t[1]) / c(2)),
        3 => {
            let (t1, t2, t3) = (&t[0], &t[1], &t[2]);
            Some((c(6) * t1 * t2 * t3 - c(3) * t3 * t3 * t1 - c(3) * t3 * t2 * t2 + t3 * t3 * t3) / c(6))
        }
        _ => None,
    }
}

/// Volume from the vertex description, triangulated.
pub fn box_volume_triangulated(b: &BoxSpec) -> Rat {
    b.to_polytope().volume()
}

/// Exact volume; the closed form when it applies.
pub fn box_volume(b: &BoxSpec) -> Rat {
    box_volume_closed_form(b).unwrap_or_else(|| box_volume_triangulated(b))
}

/// `vol □(t) ≤ ∏ t_i`.
pub fn check_vol_bound(b: &BoxSpec) -> TheoremReport {
    let vol = box_volume(b);
    let product = b.t.iter().fold(Rat::one(), |acc, x| acc * x);
    let instance = json!({ "t": b.t.iter().map(format_rat).collect::<Vec<_>>() });
    let mut r = TheoremReport::new(TheoremId::VolumeBound, instance);
    r.set("t", Quantity::Rats(b.t.clone()))
        .set("volume", Quantity::Rat(vol))
        .set("product", Quantity::Rat(product));
    r.finish()
}

/// Number of monomials `z_0^{α_0} ⋯ z_d^{α_d}` of degree `q` with
/// `α_i + … + α_d ≤ q − p_i` for every `i`.
pub fn flag_h0(f: &FlagSpec) -> BigInt {
    if f.q < 0 {
        return BigInt::zero();
    }
    let q = f.q as u64;
    let caps: Vec<i64> = f.p.iter().map(|&p| q as i64 - p.to_i64().unwrap_or(i64::MAX)).collect();
    if caps.iter().any(|&c| c < 0) {
        return BigInt::zero();
    }
    // choose α_d, α_{d-1}, …, α_1 in turn; α_0 takes the rest
    fn go(caps: &[i64], i: usize, suffix: i64, q: i64) -> BigInt {
        if i == 0 {
            return BigInt::from(u8::from(suffix <= q));
        }
        let mut total = BigInt::zero();
        let mut a = 0;
        while suffix + a <= caps[i - 1] {
            total += go(caps, i - 1, suffix + a, q);
            a += 1;
        }
        total
    }
    go(&caps, f.d, 0, q as i64)
}
