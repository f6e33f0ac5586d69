//! Theorem reports: named exact quantities plus a verdict that can be
//! recomputed from those quantities alone.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::math::{format_rat, IntVec, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TheoremId {
    MinkowskiSecond,
    Transference,
    Sharp2d,
    Flatness,
    VolumeBound,
    SeshadriVolume,
    WidthSandwich,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::MinkowskiSecond => "minkowski_second",
            TheoremId::Transference => "transference",
            TheoremId::Sharp2d => "sharp_2d_transference",
            TheoremId::Flatness => "flatness",
            TheoremId::VolumeBound => "box_volume_bound",
            TheoremId::SeshadriVolume => "seshadri_volume",
            TheoremId::WidthSandwich => "width_sandwich",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    Rat(Rat),
    Rats(Vec<Rat>),
    Count(u64),
    Flag(bool),
}

impl Quantity {
    fn to_json(&self) -> Value {
        match self {
            Quantity::Rat(r) => Value::String(format_rat(r)),
            Quantity::Rats(rs) => Value::Array(rs.iter().map(|r| Value::String(format_rat(r))).collect()),
            Quantity::Count(n) => json!(n),
            Quantity::Flag(b) => json!(b),
        }
    }
}

/// Integer vector as a JSON array; entries outside i64 fall back to strings.
pub fn int_vec_json(v: &[BigInt]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| match x.to_i64() {
                Some(n) => json!(n),
                None => Value::String(x.to_string()),
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub instance: Value,
    pub quantities: BTreeMap<String, Quantity>,
    pub verdict: Verdict,
    pub witnesses: BTreeMap<String, Vec<IntVec>>,
}

impl TheoremReport {
    pub fn new(theorem: TheoremId, instance: Value) -> Self {
        Self { theorem, instance, quantities: BTreeMap::new(), verdict: Verdict::Holds, witnesses: BTreeMap::new() }
    }

    pub fn set(&mut self, name: &str, q: Quantity) -> &mut Self {
        self.quantities.insert(name.to_string(), q);
        self
    }

    pub fn witness(&mut self, name: &str, vs: Vec<IntVec>) -> &mut Self {
        self.witnesses.insert(name.to_string(), vs);
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn rat(&self, name: &str) -> Option<&Rat> {
        match self.quantities.get(name)? {
            Quantity::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn rats(&self, name: &str) -> Option<&[Rat]> {
        match self.quantities.get(name)? {
            Quantity::Rats(r) => Some(r),
            _ => None,
        }
    }

    pub fn count(&self, name: &str) -> Option<u64> {
        match self.quantities.get(name)? {
            Quantity::Count(n) => Some(*n),
            _ => None,
        }
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        match self.quantities.get(name)? {
            Quantity::Flag(b) => Some(*b),
            _ => None,
        }
    }

    /// Sets the verdict from the recorded quantities.
    pub fn finish(mut self) -> Self {
        self.verdict = self.recheck();
        self
    }

    /// Recomputes the verdict using only `quantities`.
    pub fn recheck(&self) -> Verdict {
        Verdict::from_bool(self.recheck_inner().unwrap_or(false))
    }

    fn recheck_inner(&self) -> Option<bool> {
        let one = Rat::one();
        match self.theorem {
            TheoremId::MinkowskiSecond => {
                let d = self.count("d")?;
                let vol = self.rat("volume")?;
                let lambda = self.rats("lambda")?;
                let product = self.rat("product")?;
                let recomputed = lambda.iter().fold(vol.clone(), |acc, l| acc * l);
                Some(recomputed == *product && *product >= factorial(d).recip() && *product <= one)
            }
            TheoremId::Transference => {
                let d = self.count("d")? as usize;
                let lambda = self.rats("lambda")?;
                let dual = self.rats("lambda_dual")?;
                let bound = Rat::from_integer(BigInt::from(d));
                Some(
                    lambda.len() == d
                        && dual.len() == d
                        && (0..d).all(|i| {
                            let p = &lambda[i] * &dual[d - 1 - i];
                            p >= one && p <= bound
                        }),
                )
            }
            TheoremId::Sharp2d => {
                let l1 = self.rat("lambda1")?;
                let l2 = self.rat("lambda2_dual")?;
                let product = self.rat("product")?;
                let three_halves = Rat::new(3.into(), 2.into());
                Some(l1 * l2 == *product && *product >= one && *product <= three_halves)
            }
            TheoremId::Flatness => {
                let items = flatness_items(self)?;
                Some(items.iter().all(|(_, ok)| *ok))
            }
            TheoremId::VolumeBound => {
                let t = self.rats("t")?;
                let vol = self.rat("volume")?;
                let product = t.iter().fold(Rat::one(), |acc, x| acc * x);
                Some(*vol <= product && self.rat("product") == Some(&product))
            }
            TheoremId::SeshadriVolume => {
                let d = self.count("d")?;
                let vol = self.rat("volume")?;
                if let Some(eps) = self.rats("eps") {
                    let prod = eps.iter().fold(Rat::one(), |acc, x| acc * x);
                    if prod.is_zero() {
                        return Some(false);
                    }
                    let ratio = vol / &prod;
                    Some(self.rat("ratio") == Some(&ratio) && ratio >= one && ratio <= factorial(d))
                } else {
                    let lo = self.rats("lo")?;
                    let hi = self.rats("hi")?;
                    let plo = lo.iter().fold(Rat::one(), |acc, x| acc * x);
                    let phi = hi.iter().fold(Rat::one(), |acc, x| acc * x);
                    Some(plo <= *vol && *vol <= factorial(d) * phi)
                }
            }
            TheoremId::WidthSandwich => {
                let d = Rat::from_integer(BigInt::from(self.count("d")?));
                let w = self.rat("width")?;
                let lo = self.rat("lo_d")?;
                let hi = self.rat("hi_d")?;
                Some(&(w / d) <= lo && lo <= hi && hi <= w)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let mut q = Map::new();
        for (k, v) in &self.quantities {
            q.insert(k.clone(), v.to_json());
        }
        let mut w = Map::new();
        for (k, vs) in &self.witnesses {
            w.insert(k.clone(), Value::Array(vs.iter().map(|v| int_vec_json(v)).collect()));
        }
        json!({
            "theorem": self.theorem.as_str(),
            "verdict": self.verdict.as_str(),
            "instance": self.instance,
            "quantities": Value::Object(q),
            "witnesses": Value::Object(w),
        })
    }
}

pub(crate) fn factorial(d: u64) -> Rat {
    Rat::from_integer((1..=d).map(BigInt::from).product())
}

/// Per-item outcome of a flatness report, recomputed from its quantities.
///
/// An item whose hypothesis fails holds vacuously.
pub fn flatness_items(r: &TheoremReport) -> Option<Vec<(&'static str, bool)>> {
    let d = r.count("d")?;
    let dr = Rat::from_integer(BigInt::from(d));
    let w = r.rat("width")?;
    let count = r.count("interior_count")?;
    let interior_dim = r.count("interior_dim")?;
    let spans = r.flag("interior_spans_lattice")?;
    let vol = r.rat("volume")?;
    let fact = factorial(d);
    let exp = i32::try_from(d).ok()?;

    let a = !(*w > &dr * &dr) || count > 0;
    let b = !(*w > &dr * (&dr + Rat::one())) || (count > 0 && interior_dim == d);
    let c = !(*w > Rat::from_integer(2.into()) * &dr * &dr) || (count > 0 && spans);
    let intro2 = !(*w > &dr * &dr + &dr) || (count > 0 && interior_dim == d);
    let rhs = w / &dr - &dr;
    let item_d = rhs < Rat::zero() || &fact * Rat::from_integer(BigInt::from(count)) >= rhs.pow(exp);
    let item_e = &fact * vol >= (w / &dr).pow(exp);
    Some(vec![("a", a), ("b", b), ("c", c), ("d", item_d), ("e", item_e), ("intro2", intro2)])
}
