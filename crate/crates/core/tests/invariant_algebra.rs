mod invariant {
    use valgebra::interval::Interval;
    use valgebra::invariant::*;
    use valgebra::scalar::qi;
    use valgebra::valuation::EvalOptions;
    use valgebra::Error;
    use valgebra::QPolytope;

    #[test]
    fn planar_intrinsic_volumes() {
        let opts = EvalOptions::default();
        let basis = intrinsic_basis(2, 4).unwrap();
        let sq = QPolytope::unit_cube(2);
        assert!(basis.evaluate(1, &sq, &opts).unwrap().contains(&qi(2)));
        assert_eq!(basis.evaluate(2, &sq, &opts).unwrap(), Interval::point(qi(1)));
        assert!(basis.evaluate(0, &sq, &opts).unwrap().contains(&qi(1)));
        let basis3 = intrinsic_basis(3, 2).unwrap();
        let seg = QPolytope::segment(vec![qi(0); 3], vec![qi(3), qi(0), qi(0)]);
        assert!(basis3.evaluate(1, &seg, &opts).unwrap().contains(&qi(3)));
        assert_eq!(intrinsic_basis(4, 1), Err(Error::UnsupportedDimension(4)));
    }

    #[test]
    fn planar_structure_constant() {
        let opts = EvalOptions::default();
        let sc = structure_constants(2, 5, &default_test_bodies(2, 11), 11, &opts).unwrap();
        let c11 = sc.get(1, 1).unwrap().combined.clone().unwrap();
        let (lo, hi) = c11.to_f64();
        assert!(lo <= std::f64::consts::FRAC_PI_2 && std::f64::consts::FRAC_PI_2 <= hi);
        assert!(hi - lo <= 1e-2);
        assert_eq!(sc.get(0, 2).unwrap().combined, Some(Interval::point(qi(1))));
        let t = truncated_poly_check(&sc, &QPolytope::unit_cube(2), &opts).unwrap();
        assert!(t.pass());
    }

    #[test]
    fn dimension_utilities() {
        assert_eq!(unitary_dimension(0, 2), Ok(1));
        assert_eq!(unitary_dimension(2, 2), Ok(2));
        assert_eq!(unitary_dimension(3, 2), Ok(1));
        assert!(unitary_dimension(5, 2).is_err());
        let h: Vec<usize> = (0..=4).map(|k| unitary_dimension(k, 2).unwrap()).collect();
        assert_eq!(h, vec![1, 1, 2, 1, 1]);
        assert_eq!(
            lefschetz_check(&h),
            LefschetzReport {
                holds: true,
                duality: true
            }
        );
        assert!(lefschetz_check(&[1, 2, 1]).holds);
        assert!(!lefschetz_check(&[2, 1, 2]).holds);
    }

    #[test]
    fn stability_on_planar_bodies() {
        let opts = EvalOptions::default();
        let bodies = vec![QPolytope::unit_cube(2), QPolytope::standard_simplex(2)];
        for k in 0..=2 {
            assert!(stable_iso_check(k, 2, &bodies, &opts).unwrap().pass(), "k = {k}");
        }
        let area = stable_iso_check(2, 2, &bodies, &opts).unwrap();
        assert!(area.entries[0].restricted.contains(&qi(1)));
    }
}

mod invariant_properties {
    use valgebra::filtration::{w_level, SampleSet};
    use valgebra::invariant::*;
    use valgebra::scalar::qi;
    use valgebra::valuation::{EvalOptions, QValuation};
    use valgebra::{LinearMap, QPolytope};

    #[test]
    fn structure_constants_are_symmetric_and_tighten() {
        let opts = EvalOptions::default();
        let bodies = default_test_bodies(2, 3);
        let coarse = structure_constants(2, 3, &bodies, 3, &opts).unwrap();
        let fine = structure_constants(2, 4, &bodies, 3, &opts).unwrap();
        for sc in [&coarse, &fine] {
            for e in &sc.entries {
                let mirror = sc.get(e.j, e.i).unwrap();
                assert_eq!((&e.per_body, &e.combined), (&mirror.per_body, &mirror.combined));
            }
        }
        let (c, f) = (coarse.get(1, 1).unwrap(), fine.get(1, 1).unwrap());
        for (a, b) in c.per_body.iter().zip(&f.per_body) {
            assert!(b.width() <= a.width());
        }
    }

    #[test]
    fn restriction_examples() {
        let embed = LinearMap::coordinate_embedding(&[0, 1], 3);
        let sq = QPolytope::unit_cube(2);
        let vol = restriction(&QValuation::volume(3), &embed).unwrap();
        assert_eq!(vol.evaluate(&sq).unwrap(), qi(0));
        let chi = restriction(&QValuation::euler(3), &embed).unwrap();
        assert_eq!(chi.evaluate(&sq).unwrap(), qi(1));
        let skew = LinearMap::new(vec![vec![qi(1), qi(1)], vec![qi(0), qi(1)], vec![qi(0), qi(0)]], 2).unwrap();
        assert!(restriction(&QValuation::euler(3), &skew).is_err());
    }

    #[test]
    fn restriction_does_not_lower_the_w_level() {
        let opts = EvalOptions::default();
        let embed = LinearMap::coordinate_embedding(&[0, 1], 3);
        let big = SampleSet::default_for(3, 5).pairs();
        let small = SampleSet::default_for(2, 5).pairs();
        let a = QPolytope::standard_simplex(3);
        for v in [
            QValuation::mv(3, vec![a.clone()], qi(1)).unwrap(),
            QValuation::mv(3, vec![a.clone(), a], qi(1)).unwrap(),
        ] {
            let before = w_level(&v, &big, &opts).unwrap().unwrap_or(4);
            let after = w_level(&restriction(&v, &embed).unwrap(), &small, &opts)
                .unwrap()
                .unwrap_or(4);
            assert!(after >= before, "{after} < {before}");
        }
    }
}
