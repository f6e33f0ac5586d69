use latmin_core::gon::{lattice_width, successive_minima, verify_minkowski_second};
use latmin_core::math::{int, rat, rat_vec, ratio};
use latmin_core::postulation::{box_count, flag_h0, BoxSpec, FlagSpec};
use latmin_core::suite::{run_suite, SuiteConfig, SuiteKind};
use latmin_core::toric::{eps_at_invariant_point, exact_eps_family, verify_m2m, Family};
use latmin_core::{Error, MomentPolytope, PointLocation, Polytope, SymmetricBody, Verdict};

fn points(raw: &[&[i64]]) -> Vec<Vec<latmin_core::Rat>> {
    raw.iter().map(|v| rat_vec(v)).collect()
}

#[test]
fn hull_drops_interior_points() {
    let p = Polytope::convex_hull(&points(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[2, 2]]), 2).unwrap();
    assert_eq!(p.vertices().len(), 3);
    assert_eq!(p.volume(), rat(8));
    assert_eq!(p.locate(&rat_vec(&[2, 2])).unwrap(), PointLocation::Boundary);
    assert_eq!(p.locate(&rat_vec(&[1, 1])).unwrap(), PointLocation::Interior);
}

#[test]
fn degenerate_hull_keeps_its_affine_dimension() {
    let segment = Polytope::convex_hull(&points(&[&[0, 0], &[1, 1], &[2, 2]]), 2).unwrap();
    assert_eq!(segment.affine_dim(), 1);
    assert_eq!(segment.vertices().len(), 2);
    let err = lattice_width(&segment).unwrap_err();
    assert!(matches!(err, Error::DimensionDeficient { .. }), "{err:?}");
    assert_eq!(err.kind(), "dimension_deficient");
}

#[test]
fn cross_polytope_minima_and_polar() {
    let k = SymmetricBody::symmetrized(&points(&[&[1, 0], &[0, 1]]), 2).unwrap();
    let sm = successive_minima(&k);
    assert_eq!(sm.lambdas, vec![rat(1), rat(1)]);
    let dual = successive_minima(&k.polar());
    assert_eq!(dual.lambdas, vec![rat(1), rat(1)]);
    assert_eq!(k.polar().polar(), k);
}

#[test]
fn thin_triangle_width_and_minkowski() {
    let p = Polytope::convex_hull(&points(&[&[0, 0], &[6, 1], &[0, 1]]), 2).unwrap();
    let w = lattice_width(&p).unwrap();
    assert_eq!(w.width, rat(1));
    let report = verify_minkowski_second(&p).unwrap();
    assert_eq!(report.verdict, Verdict::Holds);
}

#[test]
fn toric_family_agrees_with_vertex_formula() {
    let (eps, mp) = exact_eps_family(&Family::ProjectiveSpace { d: 3, w: int(2) }).unwrap();
    let at_origin = eps_at_invariant_point(&mp, &[int(0), int(0), int(0)]).unwrap();
    assert_eq!(eps.exact_values(), at_origin.exact_values());
    assert_eq!(verify_m2m(&mp, &eps).unwrap().verdict, Verdict::Holds);
}

#[test]
fn moment_polytope_requires_lattice_vertices() {
    let p = Polytope::convex_hull(&[rat_vec(&[0, 0]), vec![ratio(1, 2), rat(0)], rat_vec(&[0, 1])], 2).unwrap();
    let err = MomentPolytope::new(p).unwrap_err();
    assert_eq!(err.kind(), "non_lattice_vertex");
}

#[test]
fn postulation_counts() {
    let b = BoxSpec::new(vec![rat(2), rat(1)]).unwrap();
    assert!(box_count(&b) > int(0));
    // sections of O(3) on the projective line
    assert_eq!(flag_h0(&FlagSpec::new(1, vec![0], 3).unwrap()), int(4));
}

#[test]
fn suites_run_through_the_public_api() {
    for kind in SuiteKind::ALL {
        let cfg = SuiteConfig::new(kind, 42, 6, 2, 3).unwrap();
        let summary = run_suite(&cfg, false).unwrap();
        assert_eq!(summary.violated, 0, "{kind}");
        assert_eq!(summary.holds, 6, "{kind}");
    }
}
