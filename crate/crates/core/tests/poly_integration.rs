mod polynomial {
    use valgebra::polynomial::*;
    use valgebra::scalar::{q, qi, Rational};

    type P = Polynomial<Rational>;

    #[test]
    fn eval_and_ring_ops() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let f = x.mul(&x).unwrap().add(&y).unwrap();
        assert_eq!(f.eval(&[qi(2), qi(3)]).unwrap(), qi(7));
        assert_eq!(x.mul(&x).unwrap(), P::monomial(vec![2, 0], qi(1)));
        let e = P::var(1, 0).external_product(&P::var(1, 0));
        assert_eq!(e.eval(&[qi(2), qi(3)]).unwrap(), qi(6));
        assert!(x.sub(&x).unwrap().is_zero());
        assert_eq!(f.degree(), 2);
        assert_eq!(f.homogeneous_degrees(), vec![1, 2]);
    }

    #[test]
    fn translate_and_reflect() {
        let x = P::var(1, 0);
        let f = x.pow(2);
        let g = f.translate(&[qi(1)]).unwrap();
        assert_eq!(g.univariate_coefficients().unwrap(), vec![qi(1), qi(2), qi(1)]);
        let h = x.pow(3).add(&x.pow(2)).unwrap().reflect();
        assert_eq!(h.eval(&[qi(2)]).unwrap(), qi(-4));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let vals: Vec<Rational> = (0..5)
            .map(|t| {
                let t = qi(t);
                &t * &t * &t * q(1, 2) - &t + qi(3)
            })
            .collect();
        assert_eq!(interpolate_1d(&vals), vec![qi(3), qi(-1), qi(0), q(1, 2)]);
    }

    #[test]
    fn grid_interpolation() {
        let f = P::from_terms(2, [(vec![1, 1], qi(2)), (vec![2, 0], q(1, 3)), (vec![0, 0], qi(5))]).unwrap();
        let d = 2;
        let vals: Vec<Rational> = (0..9)
            .map(|i| {
                let e = grid_point(2, 3, i);
                f.eval(&[qi(e[0] as i64), qi(e[1] as i64)]).unwrap()
            })
            .collect();
        assert_eq!(interpolate_grid(2, d, &vals), f);
    }

    #[test]
    fn affine_substitution() {
        // f(x, y) = x y at (x, y) = (t + 1, 2t)
        let f = P::monomial(vec![1, 1], qi(1));
        let g = f.substitute_affine(&[vec![qi(1)], vec![qi(2)]], &[qi(1), qi(0)], 1).unwrap();
        assert_eq!(g.univariate_coefficients().unwrap(), vec![qi(0), qi(2), qi(2)]);
    }
}

mod integration {
    use valgebra::integration::*;
    use valgebra::polynomial::Polynomial;
    use valgebra::scalar::{q, qi, Rational};
    use valgebra::Error;
    use valgebra::Polytope;

    type P = Polynomial<Rational>;

    fn tri() -> Vec<Vec<Rational>> {
        vec![vec![qi(0), qi(0)], vec![qi(1), qi(0)], vec![qi(0), qi(1)]]
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(integrate_simplex(&tri(), &P::one(2)).unwrap(), q(1, 2));
        assert_eq!(integrate_simplex(&tri(), &P::var(2, 0)).unwrap(), q(1, 6));
        let degenerate = vec![vec![qi(0), qi(0)], vec![qi(1), qi(1)], vec![qi(1), qi(1)]];
        assert_eq!(integrate_simplex(&degenerate, &P::var(2, 0)).unwrap(), qi(0));
        assert!(matches!(
            integrate_simplex(&tri()[..2], &P::one(2)),
            Err(Error::WrongVertexCount { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn polytope_examples() {
        let sq = Polytope::<Rational>::unit_cube(2);
        assert_eq!(integrate(&sq, &P::one(2)).unwrap(), qi(1));
        assert_eq!(integrate(&sq, &P::var(2, 0)).unwrap(), q(1, 2));
        let big = sq.scale(&qi(2)).unwrap();
        assert_eq!(integrate(&big, &P::var(2, 0)).unwrap(), qi(4));
        let seg = Polytope::segment(vec![qi(0), qi(0)], vec![qi(1), qi(1)]);
        assert_eq!(integrate(&seg, &P::var(2, 0)).unwrap(), qi(0));
    }

    #[test]
    fn quadratic_over_shifted_triangle() {
        // ∫ over the triangle (1,0),(2,0),(1,1) of x y
        let t = vec![vec![qi(1), qi(0)], vec![qi(2), qi(0)], vec![qi(1), qi(1)]];
        let f = P::monomial(vec![1, 1], qi(1));
        // ∫_0^1 ∫_1^{2-y} x y dx dy = ∫_0^1 y ((2-y)^2 - 1) / 2 dy = 5/24
        assert_eq!(integrate_simplex(&t, &f).unwrap(), q(5, 24));
    }
}
