use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::gauge_int;
use crate::math::{IntVec, Rat};
use crate::polytope::SymmetricBody;

/// Depth-first enumeration over a box with per-facet partial sums.
///
/// Points are produced with first nonzero coordinate positive (one of each
/// `±x` pair), zero excluded.
struct Search<'a, T> {
    normals: &'a [Vec<T>],
    thresholds: &'a [T],
    bounds: &'a [T],
    // slack[j][i] = Σ_{k ≥ j} |a_ik| · bound_k
    slack: Vec<Vec<T>>,
    out: Vec<Vec<T>>,
}

impl<T> Search<'_, T>
where
    T: Signed + Integer + Clone,
{
    /// Values of the last coordinate compatible with every facet, solved
    /// directly instead of scanned.
    fn last_coordinate(&mut self, x: &mut Vec<T>, partial: &[T], all_zero: bool) {
        let level = self.bounds.len() - 1;
        let b = self.bounds[level].clone();
        let mut lo = if all_zero { T::one() } else { -b.clone() };
        let mut hi = b;
        for (i, p) in partial.iter().enumerate() {
            let a = &self.normals[i][level];
            let room = self.thresholds[i].clone() - p.clone();
            if a.is_zero() {
                if room.is_negative() {
                    return;
                }
            } else if a.is_positive() {
                hi = hi.min(room.div_floor(a));
            } else {
                lo = lo.max((-room).div_ceil(&-a.clone()));
            }
        }
        let mut v = lo;
        while v <= hi {
            x.push(v.clone());
            self.out.push(x.clone());
            x.pop();
            v = v + T::one();
        }
    }

    fn run(&mut self, level: usize, x: &mut Vec<T>, partial: &[T], all_zero: bool) {
        let d = self.bounds.len();
        for (i, p) in partial.iter().enumerate() {
            if p.clone() - self.slack[level][i].clone() > self.thresholds[i] {
                return;
            }
        }
        if level + 1 == d {
            self.last_coordinate(x, partial, all_zero);
            return;
        }
        let b = self.bounds[level].clone();
        let mut v = if all_zero { T::zero() } else { -b.clone() };
        while v <= b {
            let next: Vec<T> = partial
                .iter()
                .zip(self.normals)
                .map(|(p, a)| p.clone() + a[level].clone() * v.clone())
                .collect();
            x.push(v.clone());
            let zero = all_zero && v.is_zero();
            self.run(level + 1, x, &next, zero);
            x.pop();
            v = v + T::one();
        }
    }
}

fn search<T: Signed + Integer + Clone>(normals: &[Vec<T>], thresholds: &[T], bounds: &[T]) -> Vec<Vec<T>> {
    let d = bounds.len();
    let m = normals.len();
    let mut slack = vec![vec![T::zero(); m]; d + 1];
    for j in (0..d).rev() {
        for i in 0..m {
            slack[j][i] = slack[j + 1][i].clone() + normals[i][j].abs() * bounds[j].clone();
        }
    }
    let mut s = Search { normals, thresholds, bounds, slack, out: Vec::new() };
    let mut x = Vec::with_capacity(d);
    s.run(0, &mut x, &vec![T::zero(); m], true);
    s.out
}

const SMALL: i64 = 1 << 24;

/// All nonzero lattice points (one per `±` pair) with gauge at most `radius`,
/// paired with their exact gauge.
pub fn lattice_points_with_gauge_at_most(k: &SymmetricBody, radius: &Rat) -> Vec<(IntVec, Rat)> {
    let d = k.dim();
    let facets = k.facets();
    let bounds: IntVec = (0..d)
        .map(|j| {
            let m = k.vertices().iter().map(|v| v[j].abs()).max().expect("nonempty");
            (radius * m).floor().to_integer()
        })
        .collect();
    let thresholds: IntVec = facets.iter().map(|f| (radius * &f.offset).floor().to_integer()).collect();
    // scan the widest coordinate last, where it is solved rather than enumerated
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| bounds[a].cmp(&bounds[b]));
    let bounds: IntVec = order.iter().map(|&j| bounds[j].clone()).collect();
    let normals: Vec<IntVec> = facets.iter().map(|f| order.iter().map(|&j| f.normal[j].clone()).collect()).collect();

    let fits = |x: &BigInt| x.to_i64().is_some_and(|v| v.abs() < SMALL);
    let small = bounds.iter().all(fits) && normals.iter().flatten().all(fits) && thresholds.iter().all(|t| t.to_i64().is_some());
    let points: Vec<IntVec> = if small {
        let to = |v: &IntVec| v.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<i64>>();
        let n64: Vec<Vec<i64>> = normals.iter().map(to).collect();
        search(&n64, &to(&thresholds), &to(&bounds))
            .into_iter()
            .map(|x| x.into_iter().map(BigInt::from).collect())
            .collect()
    } else {
        search(&normals, &thresholds, &bounds)
    };
    points
        .into_iter()
        .map(|y| {
            let mut x = vec![BigInt::from(0); d];
            for (pos, &j) in order.iter().enumerate() {
                x[j] = y[pos].clone();
            }
            if x.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
                x = x.into_iter().map(|v| -v).collect();
            }
            let g = gauge_int(k, &x);
            (x, g)
        })
        .filter(|(_, g)| g <= radius)
        .collect()
}
