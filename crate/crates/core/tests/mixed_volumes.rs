mod mixed {
    use valgebra::interval::Interval;
    use valgebra::mixed::*;
    use valgebra::polynomial::Polynomial;
    use valgebra::scalar::{q, qi};
    use valgebra::Error;
    use valgebra::Polytope;
    use valgebra::Rational;

    type QP = Polytope<Rational>;

    fn seg(a: &[i64], b: &[i64]) -> QP {
        Polytope::segment(a.iter().map(|&x| qi(x)).collect(), b.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn mixed_volume_examples() {
        let sq = QP::unit_cube(2);
        assert_eq!(mixed_volume(&[&sq, &sq]).unwrap(), qi(1));
        let s1 = seg(&[0, 0], &[1, 0]);
        let s2 = seg(&[0, 0], &[0, 1]);
        assert_eq!(mixed_volume(&[&s1, &s2]).unwrap(), q(1, 2));
        assert_eq!(mixed_volume(&[&sq, &sq.reflect()]).unwrap(), qi(1));
        assert!(matches!(mixed_volume(&[&sq]), Err(Error::WrongArity { .. })));
    }

    #[test]
    fn coefficient_engine_matches_grid() {
        let sq = QP::unit_cube(2);
        assert_eq!(mixed_coefficient(&sq, &[&sq], None).unwrap(), qi(2));
        let x = Polynomial::var(2, 0);
        let mp = minkowski_polynomial(&sq, &[&sq], Some(&x)).unwrap();
        assert_eq!(mp.eval(&[qi(1)]).unwrap(), qi(4));
        let direct = derivative_at_zero(&mp, &[0]).unwrap();
        assert_eq!(mixed_coefficient(&sq, &[&sq], Some(&x)).unwrap(), direct);
        assert_eq!(direct, q(3, 2));
    }

    #[test]
    fn minkowski_polynomial_examples() {
        let sq = QP::unit_cube(2);
        let mp = minkowski_polynomial(&sq, &[&sq], None).unwrap();
        assert_eq!(mp.univariate_coefficients().unwrap(), vec![qi(1), qi(2), qi(1)]);
        let pt = QP::origin(2);
        let tri = QP::standard_simplex(2);
        let mp = minkowski_polynomial(&pt, &[&tri], None).unwrap();
        assert_eq!(mp.univariate_coefficients().unwrap(), vec![qi(0), qi(0), q(1, 2)]);
        assert_eq!(derivative_at_zero(&mp, &[]).unwrap(), qi(0));
        assert_eq!(derivative_at_zero(&mp, &[1]), Err(Error::UnknownVariable(1)));
    }

    #[test]
    fn projection_examples() {
        let m = QP::unit_cube(1);
        let a = QP::unit_cube(2);
        let r = projection_identity_check(&m, &[&a], &[0]).unwrap();
        assert_eq!(r.lhs, q(1, 2));
        assert!(r.holds());
        assert!(matches!(
            projection_identity_check(&m, &[&a], &[2]),
            Err(Error::MisalignedSplit(_))
        ));
    }

    #[test]
    fn segment_steiner() {
        let s = seg(&[0, 0], &[3, 0]);
        let v = intrinsic_volumes(&s, 2).unwrap();
        assert!(v[1].contains(&qi(3)));
        assert_eq!(v[2], Interval::point(qi(0)));
        assert!(v[0].contains(&qi(1)));
    }
}
