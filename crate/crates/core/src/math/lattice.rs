use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntVec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSpan {
    pub rank_over_q: usize,
    pub generates_full_lattice: bool,
}

/// Row echelon (Hermite-style) basis of the integer span of `vectors`.
///
/// Rows are nonzero, pivots strictly increase in column and are positive.
/// The product of the pivots is the index of the span inside its saturation
/// when the rank is full.
pub fn hermite_basis(vectors: &[IntVec], d: usize) -> Result<Vec<IntVec>> {
    for v in vectors {
        if v.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: v.len() });
        }
    }
    let mut rows: Vec<IntVec> = vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for c in 0..d {
        loop {
            // smallest nonzero |entry| in column c among rows r..
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(p) = best else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                for j in c..d {
                    let v = &q * &rows[r][j];
                    rows[i][j] -= v;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    Ok(rows)
}

/// Rank over ℚ of `vectors`, and whether their ℤ-span is all of ℤ^d.
pub fn lattice_span(vectors: &[IntVec], d: usize) -> Result<LatticeSpan> {
    let basis = hermite_basis(vectors, d)?;
    let rank = basis.len();
    let unimodular = rank == d
        && basis.iter().all(|row| {
            let pivot = row.iter().find(|x| !x.is_zero()).expect("nonzero row");
            pivot.is_one()
        });
    Ok(LatticeSpan { rank_over_q: rank, generates_full_lattice: unimodular })
}

/// `v / gcd(v)`, keeping the sign of every entry.
pub fn primitive(v: &[BigInt]) -> Result<IntVec> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Primitive representative whose first nonzero entry is positive.
pub fn primitive_canonical(v: &[BigInt]) -> Result<IntVec> {
    let mut p = primitive(v)?;
    if p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in p.iter_mut() {
            *x = -x.clone();
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::int_vec;
    use proptest::prelude::*;

    fn span(vs: &[&[i64]], d: usize) -> (usize, bool) {
        let vs: Vec<IntVec> = vs.iter().map(|v| int_vec(v)).collect();
        let s = lattice_span(&vs, d).unwrap();
        (s.rank_over_q, s.generates_full_lattice)
    }

    #[test]
    fn span_examples() {
        assert_eq!(span(&[&[1, 0], &[0, 1]], 2), (2, true));
        assert_eq!(span(&[&[2, 0], &[0, 1]], 2), (2, false));
        assert_eq!(span(&[&[1, 2], &[2, 3]], 2), (2, true));
        assert_eq!(span(&[&[2, 0], &[3, 0], &[0, 5]], 2), (2, false));
        assert_eq!(span(&[&[2, 4], &[3, 6]], 2), (1, false));
        assert_eq!(span(&[], 3), (0, false));
        assert_eq!(span(&[&[2, 0], &[3, 0], &[0, 5], &[0, 7]], 2), (2, true));
    }

    #[test]
    fn span_dimension_mismatch() {
        let vs = vec![int_vec(&[1, 0]), int_vec(&[1, 0, 0])];
        assert_eq!(lattice_span(&vs, 2), Err(Error::DimensionMismatch { expected: 2, got: 3 }));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&int_vec(&[4, -6])).unwrap(), int_vec(&[2, -3]));
        assert_eq!(primitive(&int_vec(&[0, 5])).unwrap(), int_vec(&[0, 1]));
        assert_eq!(primitive(&int_vec(&[3, 7])).unwrap(), int_vec(&[3, 7]));
        assert_eq!(primitive(&int_vec(&[-4, 6])).unwrap(), int_vec(&[-2, 3]));
        assert_eq!(primitive_canonical(&int_vec(&[-4, 6])).unwrap(), int_vec(&[2, -3]));
        assert_eq!(primitive(&int_vec(&[0, 0])), Err(Error::ZeroVector));
    }

    fn small_vecs(d: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-6i64..=6, d), 0..6)
    }

    proptest! {
        #[test]
        fn span_rank_bounds(vs in small_vecs(3)) {
            let iv: Vec<IntVec> = vs.iter().map(|v| int_vec(v)).collect();
            let s = lattice_span(&iv, 3).unwrap();
            prop_assert!(s.rank_over_q <= 3);
            if s.generates_full_lattice {
                prop_assert_eq!(s.rank_over_q, 3);
            }
        }

        #[test]
        fn span_invariant_under_permutation_and_negation(vs in small_vecs(3), flips in prop::collection::vec(any::<bool>(), 6)) {
            let iv: Vec<IntVec> = vs.iter().map(|v| int_vec(v)).collect();
            let mut other: Vec<IntVec> = iv
                .iter()
                .zip(&flips)
                .map(|(v, &f)| if f { v.iter().map(|x| -x).collect() } else { v.clone() })
                .collect();
            other.reverse();
            prop_assert_eq!(lattice_span(&iv, 3).unwrap(), lattice_span(&other, 3).unwrap());
        }

        #[test]
        fn primitive_of_multiple(v in prop::collection::vec(-20i64..=20, 3), k in 1i64..9) {
            prop_assume!(v.iter().any(|&x| x != 0));
            let scaled: Vec<i64> = v.iter().map(|x| x * k).collect();
            prop_assert_eq!(primitive(&int_vec(&scaled)).unwrap(), primitive(&int_vec(&v)).unwrap());
        }
    }
}
