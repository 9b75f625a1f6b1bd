use lattice_entropy::catalog;
use lattice_entropy::checker::{self, Verdict};
use lattice_entropy::map::parallel_edges;
use lattice_entropy::planar::{planar_patch, PlanarGraph};
use lattice_entropy::report::{render_table, Format};
use lattice_entropy::invariants::{nu_bipyramid, nu_bipyramid_planar};

const TOL: f64 = 1e-4;

#[test]
fn bounds_hold_for_table_lattices() {
    for r in checker::table1(TOL) {
        assert!(r.error.is_none(), "{}", r.name);
        let z = r.z.unwrap();
        assert!(r.nu_diamond_over_2pi <= z + TOL, "{}", r.name);
        assert!(z <= r.nu_bar_over_2pi + TOL, "{}", r.name);
        assert!(!r.any_failure(), "{}", r.name);
    }
}

#[test]
fn counterexample_misses_lower_bound_by_clear_margin() {
    let entry = catalog::get("3^3-4^2").unwrap();
    let r = checker::check_entry(&entry, TOL).unwrap();
    assert!(r.nu_diamond_over_2pi - r.z.unwrap() > 1e-3);
    assert!(r.any_failure());
    assert_eq!(r.verdict("upper").unwrap().verdict, Verdict::Holds);
}

#[test]
fn parallel_edges_repair_the_counterexample() {
    let m = catalog::get("3^3-4^2").unwrap().map;
    let r = checker::verify_parallel("3^3-4^2", &m, 2, TOL).unwrap();
    for v in &r.verdicts {
        assert_eq!(v.verdict, Verdict::Holds, "{}", v.name);
    }
    assert!(r.identities.iter().all(|c| c.passed));
}

#[test]
fn strict_bounds_propagate_across_catalog() {
    for entry in catalog::all().unwrap() {
        if entry.expected.is_none() {
            continue;
        }
        let s = if entry.map.vertex_count() > 6 { 2 } else { 3 };
        let r = checker::verify_parallel(entry.name, &entry.map, s, TOL).unwrap();
        assert!(r.all_passed(), "{} parallel", entry.name);
        if entry.map.regular_degree() == Some(3) {
            assert!(checker::verify_truncate(entry.name, &entry.map, TOL).unwrap().all_passed(), "{}", entry.name);
            assert!(checker::verify_medial(entry.name, &entry.map, TOL).unwrap().all_passed(), "{}", entry.name);
        }
    }
}

#[test]
fn regular_lattices_tie_strict_forms() {
    let m = catalog::get("square").unwrap().map;
    let r = checker::check_bounds("square", &m, &Default::default(), TOL).unwrap();
    let z = r.z.unwrap();
    let v = checker::BoundVerdict::new("t", ("nu", r.nu_diamond_over_2pi), ("z", z), r.z_error.unwrap(), true);
    assert_eq!(v.verdict, Verdict::InconclusiveWithinTolerance);
    assert_eq!(r.verdict("lower").unwrap().verdict, Verdict::Holds);
}

#[test]
fn medial_family_rejects_large_depth() {
    assert!(checker::medial_truncation_family(checker::MAX_FAMILY_STEPS + 1).is_err());
    let fam = checker::medial_truncation_family(checker::MAX_FAMILY_STEPS).unwrap();
    assert_eq!(fam.last().unwrap().medial_vertices, 3usize.pow(7));
}

#[test]
fn truncate_requires_three_regular() {
    let m = catalog::get("square").unwrap().map;
    assert!(checker::verify_truncate("square", &m, TOL).is_err());
    assert!(checker::verify_medial("square", &m, TOL).is_err());
    assert!(parallel_edges(&m, 0).is_err());
}

#[test]
fn patch_upper_bound_holds_for_every_lattice() {
    for entry in catalog::all().unwrap() {
        let g = planar_patch(&entry.map, 3).unwrap();
        let r = checker::check_planar(&g).unwrap();
        assert_eq!(r.verdicts[0].verdict, Verdict::Holds, "{}", entry.name);
    }
}

#[test]
fn square_patch_diamond_volume_converges() {
    let target = nu_bipyramid(&catalog::get("square").unwrap().map);
    let err = |n: usize| {
        let g = planar_patch(&catalog::get("square").unwrap().map, n).unwrap();
        (nu_bipyramid_planar(&g) - target).abs()
    };
    let (e10, e20, e40) = (err(10), err(20), err(40));
    assert!(e20 < e10 && e40 < e20);
    // Boundary effects decay like 1/n.
    assert!(e40 * 40.0 < 1.5 * e10 * 10.0);
    let r = checker::check_planar(&planar_patch(&catalog::get("square").unwrap().map, 10).unwrap()).unwrap();
    assert!(r.verdicts[0].margin > 0.0);
    assert!(r.hyperbolic);
}

#[test]
fn planar_json_round_trip() {
    let g = PlanarGraph::grid(3, 4).unwrap();
    let back = PlanarGraph::from_json(&g.to_json()).unwrap();
    assert_eq!(back.edges(), g.edges());
    assert!(PlanarGraph::from_json("{\"vertices\":[[0,0],[1,1],[1,0],[0,1]],\"edges\":[[0,1],[2,3]]}").is_err());
}

#[test]
fn report_formats_are_stable() {
    let a = render_table(&checker::table1(TOL), Format::Csv);
    let b = render_table(&checker::table1(TOL), Format::Csv);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 17);
}
