use lattice_entropy::catalog;
use lattice_entropy::entropy::{
    default_sizes, entropy_finite_size, entropy_logdet, mahler_measure, LaurentPoly2,
};
use lattice_entropy::map::{medial, parallel_edges, truncate};
use proptest::prelude::*;

const TOL: f64 = 1e-4;

#[test]
fn logdet_and_finite_size_agree_on_catalog() {
    let sizes = default_sizes(64);
    for entry in catalog::all().unwrap() {
        let a = entropy_logdet(&entry.map, TOL).unwrap();
        let b = entropy_finite_size(&entry.map, &sizes).unwrap();
        let budget = 2.0 * (a.error + b.error);
        assert!(
            (a.value - b.value).abs() <= budget.max(1e-6),
            "{}: {} vs {} (budget {budget:e})",
            entry.name,
            a.value,
            b.value
        );
    }
}

#[test]
fn construction_shifts_on_three_regular_catalog() {
    for entry in catalog::all().unwrap() {
        let m = &entry.map;
        let base = entropy_logdet(m, TOL).unwrap().value;
        let p = entropy_logdet(&parallel_edges(m, 2).unwrap(), TOL).unwrap().value;
        let nv = m.vertex_count() as f64;
        assert!((p - base - nv * 2f64.ln()).abs() <= 3.0 * TOL, "{} parallel", entry.name);
        if m.regular_degree() != Some(3) {
            continue;
        }
        let t = entropy_logdet(&truncate(m).unwrap(), TOL).unwrap().value;
        assert!((t - base - nv / 2.0 * 15f64.ln()).abs() <= 3.0 * TOL, "{} truncate", entry.name);
        let md = entropy_logdet(&medial(m).unwrap(), TOL).unwrap().value;
        assert!((md - base - nv / 2.0 * 6f64.ln()).abs() <= 3.0 * TOL, "{} medial", entry.name);
    }
}

#[test]
fn logdet_is_deterministic() {
    let m = catalog::get("cairo").unwrap().map;
    let a = entropy_logdet(&m, TOL).unwrap();
    let b = entropy_logdet(&m, TOL).unwrap();
    assert_eq!(a.value.to_bits(), b.value.to_bits());
}

fn small_poly() -> impl Strategy<Value = LaurentPoly2> {
    prop::collection::vec((-3i32..=3, -1i64..=2, -1i64..=2), 1..4).prop_map(|terms| {
        let mut p = LaurentPoly2::from_terms(terms.into_iter().map(|(c, a, b)| (c as f64, a, b)));
        // A dominant constant term keeps the polynomial away from zero on the torus.
        p.add_term(12.0, 0, 0);
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mahler_measure_is_additive(p in small_poly(), q in small_poly()) {
        let tol = 1e-6;
        let mp = mahler_measure(&p, tol).unwrap().value;
        let mq = mahler_measure(&q, tol).unwrap().value;
        let mpq = mahler_measure(&p.mul(&q), tol).unwrap().value;
        prop_assert!((mpq - mp - mq).abs() <= 2.0 * tol, "{} vs {}", mpq, mp + mq);
    }

    #[test]
    fn monomial_factors_do_not_change_measure(p in small_poly(), a in -3i64..3, b in -3i64..3) {
        let shifted = p.mul(&LaurentPoly2::from_terms([(1.0, a, b)]));
        let m0 = mahler_measure(&p, 1e-6).unwrap().value;
        let m1 = mahler_measure(&shifted, 1e-6).unwrap().value;
        prop_assert!((m0 - m1).abs() <= 2e-6);
    }
}
