mod filtration {
    use valgebra::filtration::*;
    use valgebra::polynomial::Polynomial;
    use valgebra::scalar::{q, qi};
    use valgebra::valuation::EvalOptions;
    use valgebra::valuation::Valuation;
    use valgebra::Error;
    use valgebra::QPolytope;
    use valgebra::Rational;

    type QV = Valuation<Rational>;

    fn sq() -> QPolytope {
        QPolytope::unit_cube(2)
    }

    #[test]
    fn profile_examples() {
        let opts = EvalOptions::default();
        let zero = vec![qi(0), qi(0)];
        let a = QPolytope::standard_simplex(2);
        let v = QV::mv(2, vec![a.clone()], qi(1)).unwrap();
        let p = scaling_profile(&v, &sq(), &zero, &opts).unwrap();
        assert_eq!(p.lowest_order, Some(1));
        assert_eq!(p.coefficient(1), valgebra::mixed::mixed_volume(&[&sq(), &a]).unwrap());
        let chi = scaling_profile(&QV::euler(2), &sq(), &zero, &opts).unwrap();
        assert_eq!(chi.lowest_order, Some(0));
        let seg = QPolytope::segment(vec![qi(0), qi(0)], vec![qi(1), qi(1)]);
        let vol = scaling_profile(&QV::volume(2), &seg, &zero, &opts).unwrap();
        assert_eq!(vol.lowest_order, None);
        assert!(vol.vanishes_to_order(5));
    }

    #[test]
    fn memberships() {
        let opts = EvalOptions::default();
        let pt = QPolytope::origin(2);
        let seg = QPolytope::segment(vec![qi(0), qi(0)], vec![qi(2), qi(1)]);
        let samples = vec![pt.clone(), seg.clone()];
        assert!(gamma_membership(&QV::volume(2), 2, &samples, &opts).unwrap().pass);
        assert!(!gamma_membership(&QV::euler(2), 1, &samples, &opts).unwrap().pass);
        let v = QV::mv(2, vec![sq()], qi(1)).unwrap();
        assert!(gamma_membership(&v, 1, &samples, &opts).unwrap().pass);
        assert!(!gamma_membership(&v, 2, &samples, &opts).unwrap().pass);
        let set = SampleSet::default_for(2, 7);
        let pairs = set.pairs();
        assert!(w_membership(&v, 1, &pairs, &opts).unwrap().pass);
        assert!(!w_membership(&v, 2, &pairs, &opts).unwrap().pass);
        let pd = QV::pd(2, Polynomial::var(2, 0), vec![sq()], None, qi(1)).unwrap();
        assert!(w_membership(&pd, 1, &pairs, &opts).unwrap().pass);
        assert!(w_membership(&QV::zero(2), 9, &pairs, &opts).unwrap().pass);
    }

    #[test]
    fn symbol_routes() {
        let opts = EvalOptions::default();
        let set = SampleSet::default_for(2, 7);
        let bodies = set.full_dimensional();
        let pd = QV::pd(2, Polynomial::var(2, 0), vec![sq()], None, qi(1)).unwrap();
        let s = symbol(&pd, 1, &bodies, &set.x_grid, &opts).unwrap();
        assert_eq!(s.routes_agree(), Some(true));
        // Q(φ)(K)(x) = x ⋅ 2 V(K, A)
        let k = &bodies[0];
        let expected = Polynomial::var(2, 0).scale(&(qi(2) * valgebra::mixed::mixed_volume(&[k, &sq()]).unwrap()));
        assert_eq!(s.extracted[0], expected);
        let vol = symbol(&QV::volume(2), 2, &bodies, &set.x_grid, &opts).unwrap();
        assert_eq!(vol.extracted[0], Polynomial::constant(2, k.volume()));
        assert!(matches!(
            symbol(&QV::euler(2), 1, &bodies, &set.x_grid, &opts),
            Err(Error::PreconditionUnmet(_))
        ));
        let killed = symbol(&QV::volume(2), 1, &bodies, &set.x_grid, &opts).unwrap();
        assert!(killed.is_zero());
    }

    #[test]
    fn q_homomorphism() {
        let opts = EvalOptions::default();
        let set = SampleSet::default_for(2, 7);
        let bodies: Vec<QPolytope> = set.full_dimensional().into_iter().take(2).collect();
        let a = QV::mv(2, vec![sq()], qi(1)).unwrap();
        let r = q_homomorphism_check(&a, &a, 1, 1, &bodies, &set.x_grid, &opts).unwrap();
        assert!(r.holds());
        assert_eq!(r.lhs[0], Polynomial::constant(2, q(1, 2) * bodies[0].volume()));
        let pd = QV::pd(2, Polynomial::var(2, 0), vec![sq()], None, qi(1)).unwrap();
        assert!(q_homomorphism_check(&pd, &a, 1, 1, &bodies, &set.x_grid, &opts)
            .unwrap()
            .holds());
    }
}
