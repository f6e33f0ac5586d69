use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::math::{int, int_vec, rat, ratio, rat_vec};
use crate::report::Verdict;

fn boxed(w: &[i64]) -> MomentPolytope {
    let lo = vec![rat(0); w.len()];
    let hi: Vec<Rat> = w.iter().map(|&x| rat(x)).collect();
    MomentPolytope::new(Polytope::cuboid(&lo, &hi).unwrap()).unwrap()
}

fn simplex(d: usize, w: i64) -> MomentPolytope {
    MomentPolytope::new(Polytope::dilated_simplex(d, &rat(w)).unwrap()).unwrap()
}

fn exact(values: &[Rat]) -> Vec<EpsEntry> {
    values.iter().map(|v| EpsEntry::Exact { value: v.clone(), provenance: Provenance::InvariantPoint }).collect()
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| int(x)).collect()
}

fn values(p: &EpsProfile) -> Vec<Rat> {
    p.exact_values().unwrap()
}

#[test]
fn moment_polytope_rejects_bad_input() {
    let half = Polytope::cuboid(&[rat(0)], &[ratio(1, 2)]).unwrap();
    assert_eq!(MomentPolytope::new(half), Err(Error::NonLatticeVertex));
    let flat = Polytope::from_int_points(&[int_vec(&[0, 0]), int_vec(&[1, 1])], 2).unwrap();
    assert!(matches!(MomentPolytope::new(flat), Err(Error::DimensionDeficient { .. })));
}

#[test]
fn vertex_cone_examples() {
    let c = vertex_cone(&boxed(&[3, 2]), &ints(&[0, 0])).unwrap();
    assert_eq!(c.edge_generators, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);
    assert!(c.smooth);

    let c = vertex_cone(&simplex(2, 2), &ints(&[2, 0])).unwrap();
    assert_eq!(c.edge_generators, vec![int_vec(&[-1, 0]), int_vec(&[-1, 1])]);
    assert!(c.smooth);

    let c = vertex_cone(&simplex(2, 2), &ints(&[0, 0])).unwrap();
    let mut g = c.edge_generators.clone();
    g.sort();
    assert_eq!(g, vec![int_vec(&[0, 1]), int_vec(&[1, 0])]);

    let tri = MomentPolytope::from_int_points(&[int_vec(&[0, 0]), int_vec(&[2, 1]), int_vec(&[1, 2])], 2).unwrap();
    assert!(!vertex_cone(&tri, &ints(&[0, 0])).unwrap().smooth);

    assert_eq!(vertex_cone(&boxed(&[3, 2]), &ints(&[1, 0])), Err(Error::NotAVertex));
}

#[test]
fn eps_at_invariant_point_examples() {
    let p = eps_at_invariant_point(&boxed(&[3, 2]), &ints(&[0, 0])).unwrap();
    assert_eq!(p.entries, exact(&[rat(5), rat(2)]));
    for d in 1..=3 {
        for w in 1..=3 {
            let p = eps_at_invariant_point(&simplex(d, w), &vec![int(0); d]).unwrap();
            assert_eq!(values(&p), vec![rat(w); d]);
        }
    }
    let p = eps_at_invariant_point(&boxed(&[3, 2, 1]), &ints(&[0, 0, 0])).unwrap();
    assert_eq!(values(&p), vec![rat(6), rat(3), rat(1)]);
}

#[test]
fn eps_at_invariant_point_errors() {
    let tri = MomentPolytope::from_int_points(&[int_vec(&[0, 0]), int_vec(&[2, 1]), int_vec(&[1, 2])], 2).unwrap();
    assert_eq!(eps_at_invariant_point(&tri, &ints(&[0, 0])), Err(Error::SingularVertex { det: "3".into() }));

    let pyramid = MomentPolytope::from_int_points(
        &[int_vec(&[0, 0, 0]), int_vec(&[2, 0, 0]), int_vec(&[0, 2, 0]), int_vec(&[2, 2, 0]), int_vec(&[1, 1, 1])],
        3,
    )
    .unwrap();
    assert!(!pyramid.is_simple().unwrap());
    assert_eq!(eps_at_invariant_point(&pyramid, &ints(&[0, 0, 0])), Err(Error::NotAmplePolytope));
    assert_eq!(eps_at_invariant_point(&boxed(&[3, 2]), &ints(&[1, 1])), Err(Error::NotAVertex));
}

#[test]
fn bracket_examples() {
    let p = eps_bracket_general(&simplex(2, 1)).unwrap();
    assert_eq!(p.brackets().unwrap(), vec![(rat(1), rat(2)), (rat(1), rat(1))]);

    let p = eps_bracket_general(&boxed(&[3, 2, 1])).unwrap();
    assert_eq!(p.brackets().unwrap(), vec![(rat(3), rat(9)), (rat(2), rat(4)), (rat(1), rat(1))]);

    for d in 1..=3 {
        let p = eps_bracket_general(&boxed(&vec![1; d])).unwrap();
        let expected: Vec<(Rat, Rat)> = (0..d).map(|i| (rat(1), rat((d - i) as i64))).collect();
        assert_eq!(p.brackets().unwrap(), expected);
    }
}

#[test]
fn bracket_data_for_the_families() {
    for d in 2..=3 {
        for w in 1..=3 {
            let data = eps_bracket_details(&simplex(d, w)).unwrap();
            assert_eq!(data.lambda, vec![ratio(1, w); d]);
            assert_eq!(data.lambda_dual, vec![rat(w); d]);
            assert_eq!(data.width, rat(w));
        }
    }
    let data = eps_bracket_details(&boxed(&[3, 2, 1])).unwrap();
    assert_eq!(data.lambda, vec![ratio(1, 3), ratio(1, 2), rat(1)]);
    assert_eq!(data.lambda_dual, vec![rat(1), rat(2), rat(3)]);
}

#[test]
fn family_examples() {
    let (p, mp) = exact_eps_family(&Family::ProjectiveSpace { d: 3, w: int(2) }).unwrap();
    assert_eq!(values(&p), vec![rat(2); 3]);
    assert_eq!(mp, simplex(3, 2));

    let (p, _) = exact_eps_family(&Family::ProductOfP1 { weights: ints(&[3, 2, 1]) }).unwrap();
    assert_eq!(values(&p), vec![rat(6), rat(3), rat(1)]);
    let (p, _) = exact_eps_family(&Family::ProductOfP1 { weights: ints(&[1, 3, 2]) }).unwrap();
    assert_eq!(values(&p), vec![rat(6), rat(3), rat(1)]);
    let (p, _) = exact_eps_family(&Family::ProductOfP1 { weights: ints(&[1, 1]) }).unwrap();
    assert_eq!(values(&p), vec![rat(2), rat(1)]);
    assert!(p.entries.iter().all(|e| matches!(e, EpsEntry::Exact { provenance: Provenance::FamilyFormula, .. })));

    assert!(matches!(
        exact_eps_family(&Family::ProductOfP1 { weights: ints(&[2, 0]) }),
        Err(Error::InvalidWeights(_))
    ));
    assert!(matches!(exact_eps_family(&Family::ProjectiveSpace { d: 2, w: int(-1) }), Err(Error::InvalidWeights(_))));
}

#[test]
fn toric_volume_examples() {
    assert_eq!(toric_volume(&simplex(2, 1)), rat(1));
    assert_eq!(toric_volume(&boxed(&[3, 2, 1])), rat(36));
    for d in 1..=3 {
        for w in 1..=3 {
            assert_eq!(toric_volume(&simplex(d, w)), rat(w.pow(d as u32)));
        }
    }
}

#[test]
fn m2m_examples() {
    let (eps, mp) = exact_eps_family(&Family::ProductOfP1 { weights: ints(&[3, 2, 1]) }).unwrap();
    let r = verify_m2m(&mp, &eps).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    assert_eq!(r.rat("volume"), Some(&rat(36)));
    assert_eq!(r.rat("ratio"), Some(&rat(2)));

    let (eps, mp) = exact_eps_family(&Family::ProjectiveSpace { d: 2, w: int(2) }).unwrap();
    let r = verify_m2m(&mp, &eps).unwrap();
    assert_eq!(r.rat("ratio"), Some(&rat(1)));
    assert_eq!(r.verdict, Verdict::Holds);

    let (eps, mp) = exact_eps_family(&Family::ProductOfP1 { weights: ints(&[100, 1]) }).unwrap();
    let r = verify_m2m(&mp, &eps).unwrap();
    assert_eq!(r.rat("ratio"), Some(&ratio(200, 101)));
    assert_eq!(r.verdict, Verdict::Holds);

    let bracket = eps_bracket_general(&mp).unwrap();
    assert_eq!(verify_m2m(&mp, &bracket).unwrap().verdict, Verdict::Holds);

    let mixed = EpsProfile { entries: vec![eps.entries[0].clone(), bracket.entries[1].clone()] };
    assert_eq!(verify_m2m(&mp, &mixed), Err(Error::MixedProfile));
}

#[test]
fn m2m_detects_a_wrong_profile() {
    let mp = boxed(&[3, 2, 1]);
    let wrong = EpsProfile { entries: exact(&[rat(1), rat(1), rat(1)]) };
    assert_eq!(verify_m2m(&mp, &wrong).unwrap().verdict, Verdict::Violated);
}

#[test]
fn profile_json() {
    let p = eps_at_invariant_point(&boxed(&[3, 2]), &ints(&[0, 0])).unwrap();
    assert_eq!(
        p.to_json().to_string(),
        r#"{"eps":[{"exact":"5","provenance":"invariant_point"},{"exact":"2","provenance":"invariant_point"}]}"#
    );
    let b = eps_bracket_general(&simplex(2, 1)).unwrap();
    assert_eq!(b.to_json().to_string(), r#"{"eps":[{"hi":"2","lo":"1"},{"hi":"1","lo":"1"}]}"#);
}

#[test]
fn width_sandwich_examples() {
    for mp in [simplex(2, 1), simplex(3, 2), boxed(&[3, 2, 1]), boxed(&[5, 5])] {
        let r = verify_width_sandwich(&mp).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
    }
}

fn weights(max_d: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1i64..=5, 1..=max_d)
}

/// Random integer matrix with determinant ±1, as a product of shears.
fn unimodular(d: usize) -> impl Strategy<Value = Vec<IntVec>> {
    prop::collection::vec((0..d, 0..d, -2i64..=2), 0..4).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, c) in ops {
            if i != j {
                for k in 0..d {
                    m[i][k] += c * m[j][k];
                }
            }
        }
        m.iter().map(|r| int_vec(r)).collect()
    })
}

fn apply(m: &[IntVec], v: &[BigInt]) -> IntVec {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn families_agree_with_every_invariant_point(w in weights(3)) {
        let (family, mp) = exact_eps_family(&Family::ProductOfP1 { weights: ints(&w) }).unwrap();
        for u in mp.int_vertices() {
            prop_assert_eq!(values(&eps_at_invariant_point(&mp, &u).unwrap()), values(&family));
        }
        let d = w.len();
        let (family, mp) = exact_eps_family(&Family::ProjectiveSpace { d, w: int(w[0]) }).unwrap();
        for u in mp.int_vertices() {
            prop_assert_eq!(values(&eps_at_invariant_point(&mp, &u).unwrap()), values(&family));
        }
    }

    #[test]
    fn brackets_contain_family_values(w in weights(3), proj in any::<bool>()) {
        let family = if proj {
            Family::ProjectiveSpace { d: w.len(), w: int(w[0]) }
        } else {
            Family::ProductOfP1 { weights: ints(&w) }
        };
        let (exact, mp) = exact_eps_family(&family).unwrap();
        let bracket = eps_bracket_general(&mp).unwrap();
        for (e, b) in values(&exact).iter().zip(&bracket.entries) {
            prop_assert!(b.contains(e), "{} not in [{}, {}]", e, b.lo(), b.hi());
        }
        let r = verify_m2m(&mp, &exact).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Holds);
        prop_assert_eq!(verify_m2m(&mp, &bracket).unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn exact_values_are_nonincreasing(w in weights(3)) {
        let mp = boxed(&w);
        let v = values(&eps_at_invariant_point(&mp, &vec![int(0); w.len()]).unwrap());
        prop_assert!(v.windows(2).all(|p| p[0] >= p[1]));
    }

    #[test]
    fn scaling_multiplies_everything(w in weights(2), q in 1i64..=3) {
        let mp = boxed(&w);
        let scaled = MomentPolytope::new(mp.polytope().scale(&rat(q)).unwrap()).unwrap();
        let d = w.len();
        let zero = vec![int(0); d];
        let a = values(&eps_at_invariant_point(&mp, &zero).unwrap());
        let b = values(&eps_at_invariant_point(&scaled, &zero).unwrap());
        prop_assert_eq!(b, a.iter().map(|x| x * rat(q)).collect::<Vec<_>>());
        let ba = eps_bracket_general(&mp).unwrap().brackets().unwrap();
        let bb = eps_bracket_general(&scaled).unwrap().brackets().unwrap();
        for ((l1, h1), (l2, h2)) in ba.iter().zip(&bb) {
            prop_assert_eq!(l1 * rat(q), l2.clone());
            prop_assert_eq!(h1 * rat(q), h2.clone());
        }
        prop_assert_eq!(toric_volume(&scaled), toric_volume(&mp) * rat(q.pow(d as u32)));
        let wa = eps_bracket_details(&mp).unwrap().width;
        let wb = eps_bracket_details(&scaled).unwrap().width;
        prop_assert_eq!(wb, wa * rat(q));
    }

    #[test]
    fn unimodular_and_translation_invariance(w in weights(3).prop_filter("d ≥ 2", |w| w.len() >= 2),
                                            m in unimodular(3), t in prop::collection::vec(-3i64..=3, 3)) {
        let d = w.len();
        let m: Vec<IntVec> = m.iter().take(d).map(|r| r[..d].to_vec()).collect();
        prop_assume!(det_int(&m).abs().is_one());
        let t = &t[..d];
        let mp = boxed(&w);
        let image: Vec<IntVec> = mp
            .int_vertices()
            .iter()
            .map(|v| apply(&m, v).iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        let moved = MomentPolytope::from_int_points(&image, d).unwrap();
        for u in mp.int_vertices() {
            let u2: IntVec = apply(&m, &u).iter().zip(t).map(|(a, b)| a + b).collect();
            prop_assert_eq!(
                eps_at_invariant_point(&mp, &u).unwrap(),
                eps_at_invariant_point(&moved, &u2).unwrap()
            );
        }
        prop_assert_eq!(eps_bracket_general(&mp).unwrap(), eps_bracket_general(&moved).unwrap());
        prop_assert_eq!(toric_volume(&mp), toric_volume(&moved));
    }

    #[test]
    fn width_sandwich_on_random_lattice_polygons(pts in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 3..=7)) {
        let v: Vec<RatVec> = pts.iter().map(|p| rat_vec(p)).collect();
        let p = Polytope::convex_hull(&v, 2).unwrap();
        prop_assume!(p.is_full_dimensional());
        let mp = MomentPolytope::new(p).unwrap();
        prop_assert_eq!(verify_width_sandwich(&mp).unwrap().verdict, Verdict::Holds);
        let b = eps_bracket_general(&mp).unwrap();
        prop_assert!(b.entries.iter().all(|e| e.lo() > &rat(0) && e.lo() <= e.hi()));
        prop_assert_eq!(verify_m2m(&mp, &b).unwrap().verdict, Verdict::Holds);
    }
}
