mod valuation {
    use valgebra::polynomial::Polynomial;
    use valgebra::scalar::{q, qi};
    use valgebra::valuation::*;
    use valgebra::Error;
    use valgebra::LinearMap;
    use valgebra::QPolytope;

    #[test]
    fn generator_examples() {
        let sq = QPolytope::unit_cube(2);
        assert_eq!(QValuation::volume(2).evaluate(&sq).unwrap(), qi(1));
        assert_eq!(QValuation::euler(2).evaluate(&sq).unwrap(), qi(1));
        let pd = QValuation::pd(2, Polynomial::var(2, 0), vec![sq.clone()], None, qi(1)).unwrap();
        assert_eq!(pd.evaluate(&sq).unwrap(), q(3, 2));
    }

    #[test]
    fn lowered_forms_agree_with_direct_evaluation() {
        let sq = QPolytope::unit_cube(2);
        let tri = QPolytope::standard_simplex(2);
        let opts = EvalOptions::default().diagonal_route();
        for v in [
            QValuation::mv(2, vec![tri.clone()], q(2, 3)).unwrap(),
            QValuation::euler(2),
            QValuation::pd(2, Polynomial::var(2, 1), vec![tri.clone()], Some(sq.clone()), qi(1)).unwrap(),
        ] {
            let direct = v.evaluate(&tri).unwrap();
            let mut lowered = qi(0);
            for (c, l) in v.lower(&opts).unwrap() {
                lowered += c * l.evaluate(&tri, &opts).unwrap();
            }
            assert_eq!(direct, lowered);
        }
    }

    #[test]
    fn validation() {
        let sq = QPolytope::unit_cube(2);
        assert!(matches!(
            QValuation::mv(2, vec![sq.clone(); 3], qi(1)),
            Err(Error::WrongArity { .. })
        ));
        assert!(matches!(
            QValuation::mv(3, vec![sq], qi(1)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            QValuation::volume(2).evaluate(&QPolytope::unit_cube(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn restriction() {
        let embed = LinearMap::coordinate_embedding(&[0, 1], 3);
        let sq = QPolytope::unit_cube(2);
        let r = QValuation::volume(3).restrict(&embed).unwrap();
        assert_eq!(r.evaluate(&sq).unwrap(), qi(0));
        let chi = QValuation::euler(3).restrict(&embed).unwrap();
        assert_eq!(chi, QValuation::euler(2));
        let skew = LinearMap::new(vec![vec![qi(1), qi(1)], vec![qi(0), qi(1)], vec![qi(0), qi(0)]], 2).unwrap();
        assert_eq!(QValuation::volume(3).restrict(&skew), Err(Error::NotIsometric));
    }
}

mod valuation_analysis {
    use valgebra::polynomial::Polynomial;
    use valgebra::scalar::{q, qi};
    use valgebra::valuation::*;
    use valgebra::Error;
    use valgebra::{QPolytope, Rational};

    type QV = Valuation<Rational>;

    fn bodies() -> Vec<QPolytope> {
        vec![
            QPolytope::unit_cube(2),
            QPolytope::standard_simplex(2),
            QPolytope::hull(vec![vec![qi(0), qi(0)], vec![qi(3), qi(1)], vec![qi(1), qi(2)]], 2).unwrap(),
        ]
    }

    #[test]
    fn decomposition_of_shifted_volume() {
        let a = QPolytope::hull(vec![vec![qi(0), qi(0)], vec![qi(2), qi(0)], vec![qi(0), qi(1)]], 2).unwrap();
        let v = QV::pd(2, Polynomial::one(2), Vec::new(), Some(a.clone()), qi(1)).unwrap();
        let opts = EvalOptions::default();
        let d = homogeneous_decomposition(&v, &bodies(), &opts).unwrap();
        assert!(d.reassembles && d.degree_pure);
        let k = &bodies()[2];
        assert_eq!(d.components[2].evaluate(k).unwrap(), k.volume());
        let two_mv = qi(2) * valgebra::mixed::mixed_volume(&[k, &a]).unwrap();
        assert_eq!(d.components[1].evaluate(k).unwrap(), two_mv);
        assert_eq!(d.components[0].evaluate(k).unwrap(), a.volume());
        let pd = QV::pd(2, Polynomial::var(2, 0), Vec::new(), None, qi(1)).unwrap();
        assert_eq!(
            homogeneous_decomposition(&pd, &bodies(), &opts),
            Err(Error::NotTranslationInvariant)
        );
    }

    #[test]
    fn parity_examples() {
        let k = QPolytope::unit_cube(2);
        let (even, odd) = parity_decomposition(&QV::volume(2));
        assert_eq!(even.evaluate(&k).unwrap(), qi(1));
        assert_eq!(odd.evaluate(&k).unwrap(), qi(0));
        let t = QPolytope::standard_simplex(2);
        let (_, odd) = parity_decomposition(&QV::mv(2, vec![t], qi(1)).unwrap());
        let witness = QPolytope::hull(vec![vec![qi(0), qi(0)], vec![qi(2), qi(0)], vec![qi(0), qi(1)]], 2).unwrap();
        assert_ne!(odd.evaluate(&witness).unwrap(), qi(0));
        let (_, odd) = parity_decomposition(&QV::mv(2, vec![k.clone()], qi(1)).unwrap());
        for b in bodies() {
            assert_eq!(odd.evaluate(&b).unwrap(), qi(0));
        }
    }

    #[test]
    fn pairing_examples() {
        let sq = QPolytope::unit_cube(2);
        let a = QV::mv(2, vec![sq.clone()], qi(1)).unwrap();
        let m = pairing_matrix(&[a.clone()], &[a.clone()]).unwrap();
        assert_eq!(m.entries, vec![vec![q(1, 2)]]);
        let m = pairing_matrix(&[QV::zero(2), a.clone()], &[a.clone()]).unwrap();
        assert_eq!(m.entries[0], vec![qi(0)]);
        assert!(matches!(
            pairing_matrix(&[a], &[QV::volume(2)]),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn profiles() {
        let sq = QPolytope::unit_cube(2);
        let e1 = vec![qi(1), qi(0)];
        let opts = EvalOptions::default();
        let mv = QV::mv(2, vec![sq.clone()], qi(1)).unwrap();
        assert_eq!(translation_profile(&mv, &sq, &e1, &opts).unwrap().degree(), 0);
        let pd = QV::pd(2, Polynomial::var(2, 0), vec![sq.clone()], None, qi(1)).unwrap();
        let p = translation_profile(&pd, &sq, &e1, &opts).unwrap();
        assert_eq!(p.degree(), 1);
        assert_eq!(p.eval(&[qi(0)]).unwrap(), q(3, 2));
        let chi = translation_profile(&QV::euler(2), &sq, &e1, &opts).unwrap();
        assert_eq!(chi, Polynomial::from_univariate(&[qi(1)]));
    }

    #[test]
    fn axiom_on_box_splits() {
        let opts = EvalOptions::default();
        let (lo, hi) = (vec![qi(0), qi(0)], vec![qi(1), qi(1)]);
        let r = valuation_axiom_check(&QV::volume(2), &lo, &hi, 0, &q(1, 2), &opts).unwrap();
        assert_eq!(
            (r.union.clone(), r.first.clone(), r.intersection.clone()),
            (qi(1), q(1, 2), qi(0))
        );
        assert!(r.holds());
        let r = valuation_axiom_check(&QV::euler(2), &lo, &hi, 1, &q(1, 3), &opts).unwrap();
        assert!(r.holds() && r.intersection == qi(1));
        let pd = QV::pd(2, Polynomial::var(2, 0), Vec::new(), None, qi(1)).unwrap();
        assert!(valuation_axiom_check(&pd, &lo, &hi, 0, &q(1, 4), &opts).unwrap().holds());
        assert!(matches!(
            valuation_axiom_check(&pd, &lo, &hi, 0, &qi(1), &opts),
            Err(Error::CutOutsideBox(_))
        ));
    }
}

mod valuation_product {
    use valgebra::scalar::{q, qi};
    use valgebra::valuation::*;
    use valgebra::Error;
    use valgebra::QPolytope;

    type QV = Valuation<valgebra::Rational>;

    fn tri(pts: &[(i64, i64)]) -> QPolytope {
        QPolytope::hull(pts.iter().map(|&(x, y)| vec![qi(x), qi(y)]).collect(), 2).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let sq = QPolytope::unit_cube(2);
        let a = QV::mv(2, vec![sq.clone()], qi(1)).unwrap();
        let prod = closed_form_product(&a, &a).unwrap();
        assert_eq!(prod.evaluate(&sq).unwrap(), q(1, 2));
        let pt = QV::mv(2, vec![QPolytope::origin(2)], qi(1)).unwrap();
        assert_eq!(closed_form_product(&a, &pt).unwrap().evaluate(&sq).unwrap(), qi(0));
        assert!(matches!(
            closed_form_product(&a, &QV::volume(2)),
            Err(Error::DegreeMismatch(_))
        ));
        let cube = QPolytope::unit_cube(3);
        let b = QV::mv(3, vec![cube.clone(), cube.clone()], qi(1)).unwrap();
        let c = QV::mv(3, vec![cube.clone()], qi(1)).unwrap();
        assert_eq!(closed_form_product(&b, &c).unwrap().evaluate(&cube).unwrap(), q(1, 3));
    }

    #[test]
    fn diagonal_route_matches_closed_form() {
        let sq = QPolytope::unit_cube(2);
        let t = tri(&[(0, 0), (2, 0), (1, 3)]);
        let a = QV::mv(2, vec![t.clone()], qi(1)).unwrap();
        let b = QV::mv(2, vec![sq.clone()], q(1, 2)).unwrap();
        let k = tri(&[(0, 0), (3, 1), (1, 2)]);
        let fast = closed_form_product(&a, &b).unwrap().evaluate(&k).unwrap();
        let slow = diagonal_product_evaluate(&a, &b, &k, &EvalOptions::default()).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn unit_and_vanishing() {
        let sq = QPolytope::unit_cube(2);
        let k = tri(&[(0, 0), (3, 1), (1, 2)]);
        let chi = QV::euler(2);
        let a = QV::mv(2, vec![sq.clone()], qi(1)).unwrap();
        let opts = EvalOptions::default();
        assert_eq!(
            diagonal_product_evaluate(&chi, &a, &k, &opts).unwrap(),
            a.evaluate(&k).unwrap()
        );
        let vol = QV::volume(2);
        assert_eq!(diagonal_product_evaluate(&vol, &vol, &k, &opts).unwrap(), qi(0));
        assert!(product(&vol, &vol).unwrap().terms().is_empty());
    }

    #[test]
    fn exterior_product_on_boxes() {
        let seg = QPolytope::unit_cube(1);
        let v = QV::volume(1);
        let ext = exterior_product(&v, &v).unwrap();
        assert_eq!(ext.evaluate(&QPolytope::unit_cube(2)).unwrap(), qi(1));
        let sq = QPolytope::unit_cube(2);
        let psi = QV::mv(2, vec![sq.clone()], qi(1)).unwrap();
        let k = seg.scale(&qi(3)).unwrap();
        let l = tri(&[(0, 0), (2, 0), (1, 3)]);
        let chi_psi = exterior_product(&QV::euler(1), &psi).unwrap();
        assert_eq!(chi_psi.evaluate(&k.cartesian_product(&l)).unwrap(), psi.evaluate(&l).unwrap());
    }

    #[test]
    fn odd_witness() {
        let a = tri(&[(0, 0), (1, 0), (0, 1)]);
        let b = tri(&[(0, 0), (2, 0), (0, 1)]);
        let w = odd_product_witness(&a, &b).unwrap();
        assert!(w.routes_agree());
        assert_ne!(w.value, qi(0));
        assert_eq!(w.value, -w.mixed_difference.clone());
        let sym = QPolytope::unit_cube(2);
        assert_eq!(odd_product_witness(&sym, &b).unwrap().value, qi(0));
        let flipped = odd_product_witness(&a, &b.reflect()).unwrap();
        assert_eq!(flipped.value, -w.value);
    }

    #[test]
    fn cost_guard() {
        let cube = QPolytope::unit_cube(4);
        let v = QV::mv(4, vec![cube.clone()], qi(1)).unwrap();
        assert!(matches!(
            diagonal_product_evaluate(&v, &v, &cube, &EvalOptions::default()),
            Err(Error::CostGuard { dim: 4, limit: 3 })
        ));
    }
}
