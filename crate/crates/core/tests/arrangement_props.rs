use triplepoint::arrangement::{
    classify_intersections, concurrent_triples, expected_triple_count, is_real,
    ordinary_point_check, triple_points, Arrangement, FieldMode,
};
use triplepoint::Error;

#[test]
fn determinant_test_matches_divisibility_for_small_polygons() {
    for n in [6, 8, 10, 12, 14, 16] {
        let arr = Arrangement::furedi_palasti(n, FieldMode::Cyclotomic).unwrap();
        assert!(arr.divisibility_mismatches().is_empty(), "n = {n}");
        assert!(concurrent_triples(n)
            .iter()
            .all(|t| (t[0] + t[1] + t[2]) % n == 0));
        assert_eq!(
            triple_points(&arr).unwrap().len(),
            expected_triple_count(n),
            "n = {n}"
        );
    }
}

#[test]
fn compact_and_cyclotomic_coordinates_agree_numerically() {
    for n in [6, 12] {
        let a = Arrangement::furedi_palasti(n, FieldMode::Compact).unwrap();
        let b = Arrangement::furedi_palasti(n, FieldMode::Cyclotomic).unwrap();
        for (p, q) in a.points().iter().zip(b.points()) {
            let (pa, qa) = (p.affine_approx().unwrap(), q.affine_approx().unwrap());
            assert!((pa.0 - qa.0).abs() < 1e-12 && (pa.1 - qa.1).abs() < 1e-12);
        }
        let ta = classify_intersections(a.lines()).unwrap();
        let tb = classify_intersections(b.lines()).unwrap();
        assert_eq!(ta.count_with_multiplicity(3), tb.count_with_multiplicity(3));
        assert_eq!(ta.count_with_multiplicity(2), tb.count_with_multiplicity(2));
    }
}

#[test]
fn cyclotomic_coordinates_are_fixed_by_conjugation() {
    for n in [6, 10, 14, 18] {
        let order = if n % 4 == 0 { n } else { 2 * n } as u32;
        let arr = Arrangement::furedi_palasti(n, FieldMode::Cyclotomic).unwrap();
        for p in arr.points() {
            for c in p.coords() {
                assert_eq!(&c.cyclotomic_conjugate(order), c, "n = {n}");
            }
        }
        for l in arr.lines() {
            assert!(l.coeffs().iter().all(is_real));
            assert!(
                l.coeffs()
                    .iter()
                    .all(|c| &c.cyclotomic_conjugate(order) == c),
                "n = {n}"
            );
        }
    }
}

#[test]
fn real_arrangements_have_ordinary_points() {
    let arr = Arrangement::furedi_palasti(12, FieldMode::Compact).unwrap();
    assert!(ordinary_point_check(arr.lines()).unwrap().ordinary > 0);
}

#[test]
fn unsupported_sizes() {
    assert!(matches!(
        Arrangement::furedi_palasti(7, FieldMode::Cyclotomic),
        Err(Error::UnsupportedSize(7, _))
    ));
    assert!(matches!(
        Arrangement::furedi_palasti(4, FieldMode::Cyclotomic),
        Err(Error::UnsupportedSize(4, _))
    ));
    assert!(Arrangement::furedi_palasti(14, FieldMode::Compact).is_err());
}
