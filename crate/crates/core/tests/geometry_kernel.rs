mod scalar {
    use valgebra::scalar::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4"), Some(q(3, 2)));
        assert_eq!(parse_rational("-7"), Some(qi(-7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&q(6, 4)), "3/2");
        assert_eq!(format_rational(&qi(5)), "5");
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial::<Rational>(5), qi(120));
        assert_eq!(binomial::<Rational>(6, 3), qi(20));
        assert_eq!(binomial::<Rational>(2, 3), qi(0));
        assert_eq!(binomial::<f64>(4, 2), 6.0);
    }

    #[test]
    fn canonical_hyperplanes_agree() {
        let mut a = vec![q(1, 2), q(-3, 4)];
        let mut b = q(5, 4);
        Rational::canonicalize_hyperplane(&mut a, &mut b);
        assert_eq!(a, vec![qi(2), qi(-3)]);
        assert_eq!(b, qi(5));
        let mut a2 = vec![qi(4), qi(-6)];
        let mut b2 = qi(10);
        Rational::canonicalize_hyperplane(&mut a2, &mut b2);
        assert_eq!((a2, b2), (a, b));
    }

    #[test]
    fn f64_bounds_enclose() {
        let third = q(1, 3);
        let (lo, hi) = third.to_f64_bounds();
        assert!(lo <= hi);
        assert!(Rational::from_float(lo).unwrap() <= third);
        assert!(Rational::from_float(hi).unwrap() >= third);
    }
}

mod linalg {
    use valgebra::linalg::*;
    use valgebra::scalar::{q, qi, Rational};

    #[test]
    fn determinant_and_rank() {
        let m = vec![vec![qi(2), qi(1)], vec![qi(1), qi(3)]];
        assert_eq!(determinant(&m), qi(5));
        let sing = vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]];
        assert_eq!(determinant(&sing), qi(0));
        assert_eq!(rank(&sing), 1);
        assert_eq!(rank::<Rational>(&[]), 0);
    }

    #[test]
    fn null_vector_is_orthogonal() {
        let rows = vec![vec![qi(1), qi(2), qi(3)], vec![qi(0), qi(1), q(1, 2)]];
        let v = null_vector(&rows, 3).unwrap();
        for r in &rows {
            assert_eq!(dot(r, &v), qi(0));
        }
        assert!(v.iter().any(|x| *x != qi(0)));
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec![qi(1), qi(1)], vec![qi(1), qi(-1)]];
        let x = solve(&a, &[qi(3), qi(1)]).unwrap();
        assert_eq!(x, vec![qi(2), qi(1)]);
        assert!(solve(&[vec![qi(1), qi(1)], vec![qi(2), qi(2)]], &[qi(0), qi(1)]).is_none());
    }

    #[test]
    fn float_determinant() {
        let m: Vec<Vec<f64>> = vec![vec![0.0, 2.0], vec![3.0, 1.0]];
        assert!((determinant(&m) + 6.0).abs() < 1e-12);
    }
}

mod interval {
    use valgebra::interval::*;
    use valgebra::scalar::{q, qi, Rational};

    #[test]
    fn arithmetic() {
        let a = Interval::new(qi(1), qi(2));
        let b = Interval::new(qi(-1), qi(3));
        assert_eq!(a.mul(&b), Interval::new(qi(-2), qi(6)));
        assert_eq!(a.add(&b), Interval::new(qi(0), qi(5)));
        assert!(a.div(&b).is_none());
        assert_eq!(a.div(&a).unwrap(), Interval::new(q(1, 2), qi(2)));
        assert!(a.excludes_zero());
        assert!(!b.excludes_zero());
    }

    #[test]
    fn float_enclosure() {
        let t: Interval<Rational> = Interval::point(q(1, 3));
        let (lo, hi) = t.to_f64();
        assert!(lo < hi);
        assert!(t.contains_f64(1.0 / 3.0));
    }
}

mod geometry {
    use valgebra::geometry::*;
    use valgebra::scalar::{q, qi, Rational};
    use valgebra::Error;

    fn poly(raw: &[&[i64]]) -> Polytope<Rational> {
        let pts = raw.iter().map(|p| p.iter().map(|&x| qi(x)).collect()).collect();
        Polytope::hull(pts, raw[0].len()).unwrap()
    }

    #[test]
    fn hull_drops_interior_points() {
        let pts = vec![
            vec![qi(0), qi(0)],
            vec![qi(1), qi(0)],
            vec![qi(0), qi(1)],
            vec![qi(1), qi(1)],
            vec![q(1, 2), q(1, 2)],
        ];
        let p = Polytope::hull(pts, 2).unwrap();
        assert_eq!(p, Polytope::unit_cube(2));
    }

    #[test]
    fn hull_errors() {
        assert_eq!(Polytope::<Rational>::hull(vec![], 2), Err(Error::EmptyPointSet));
        assert!(matches!(
            Polytope::hull(vec![vec![qi(1)], vec![qi(1), qi(2)]], 1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn single_point_hull() {
        let p = poly(&[&[3, 4]]);
        assert_eq!(p.vertices(), &[vec![qi(3), qi(4)]]);
        assert_eq!(p.affine_dim(), 0);
        assert_eq!(p.volume(), qi(0));
    }

    #[test]
    fn minkowski_examples() {
        let sq = Polytope::<Rational>::unit_cube(2);
        assert_eq!(sq.minkowski_sum(&sq).unwrap(), poly(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]));
        assert_eq!(sq.minkowski_sum(&Polytope::origin(2)).unwrap(), sq);
        let s1 = poly(&[&[0, 0], &[1, 0]]);
        let s2 = poly(&[&[0, 0], &[0, 1]]);
        assert_eq!(s1.minkowski_sum(&s2).unwrap(), sq);
        assert!(sq.minkowski_sum(&Polytope::unit_cube(3)).is_err());
    }

    #[test]
    fn scale_translate_reflect() {
        let sq = Polytope::<Rational>::unit_cube(2);
        assert_eq!(sq.scale(&qi(2)).unwrap(), poly(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]));
        assert_eq!(sq.scale(&qi(0)).unwrap(), Polytope::origin(2));
        assert_eq!(sq.scale(&qi(-1)), Err(Error::NegativeScale));
        assert_eq!(sq.reflect(), poly(&[&[-1, -1], &[0, -1], &[-1, 0], &[0, 0]]));
        assert_eq!(sq.reflect().reflect(), sq);
        let tri = Polytope::<Rational>::standard_simplex(2);
        assert_eq!(tri.translate(&[qi(1), qi(1)]).unwrap(), poly(&[&[1, 1], &[2, 1], &[1, 2]]));
    }

    #[test]
    fn products_and_diagonal() {
        let seg = poly(&[&[0], &[1]]);
        assert_eq!(seg.cartesian_product(&seg), Polytope::unit_cube(2));
        let prism = Polytope::<Rational>::standard_simplex(2).cartesian_product(&seg);
        assert_eq!(prism.num_vertices(), 6);
        let rehull = Polytope::hull(prism.vertices().to_vec(), 3).unwrap();
        assert_eq!(rehull, prism);
        let pt = poly(&[&[1, 2]]);
        assert_eq!(pt.diagonal_embed().vertices(), &[vec![qi(1), qi(2), qi(1), qi(2)]]);
        assert_eq!(seg.diagonal_embed(), poly(&[&[0, 0], &[1, 1]]));
        let d = Polytope::<Rational>::unit_cube(2).diagonal_embed();
        assert_eq!(d.dim(), 4);
        assert_eq!(d.affine_dim(), 2);
        assert_eq!(d.volume(), qi(0));
    }

    #[test]
    fn support_values() {
        let sq = Polytope::<Rational>::unit_cube(2);
        assert_eq!(sq.support(&[qi(1), qi(1)]).unwrap(), qi(2));
        assert_eq!(sq.support(&[qi(0), qi(0)]).unwrap(), qi(0));
    }

    #[test]
    fn volumes() {
        assert_eq!(Polytope::<Rational>::unit_cube(3).volume(), qi(1));
        assert_eq!(Polytope::<Rational>::standard_simplex(3).volume(), q(1, 6));
        let big = Polytope::<Rational>::unit_cube(2).scale(&qi(2)).unwrap();
        assert_eq!(big.volume(), qi(4));
        let seg3 = poly(&[&[0, 0, 0], &[1, 2, 3]]);
        assert_eq!(seg3.affine_dim(), 1);
        assert_eq!(seg3.volume(), qi(0));
    }

    #[test]
    fn triangulations_agree() {
        let p = poly(&[&[0, 0, 0], &[3, 0, 1], &[0, 2, 0], &[1, 1, 3], &[2, 2, 2], &[0, 0, 2]]);
        let a = p.triangulate(TriangulationMethod::Fan).volume();
        let b = p.triangulate(TriangulationMethod::Placing).volume();
        assert_eq!(a, b);
    }

    #[test]
    fn float_scalar_volume() {
        let c = Polytope::<f64>::unit_cube(3);
        assert!((c.volume() - 1.0).abs() < 1e-12);
        let s = Polytope::<f64>::standard_simplex(2).scale(&3.0).unwrap();
        assert!((s.volume() - 4.5).abs() < 1e-12);
    }

    #[test]
    fn containment() {
        let sq = Polytope::<Rational>::unit_cube(2);
        assert!(sq.contains(&[q(1, 2), qi(1)]));
        assert!(!sq.contains(&[q(3, 2), qi(0)]));
        let seg = poly(&[&[0, 0], &[2, 2]]);
        assert!(seg.contains(&[qi(1), qi(1)]));
        assert!(!seg.contains(&[qi(1), qi(0)]));
    }

    #[test]
    fn linear_maps() {
        let d = LinearMap::<Rational>::diagonal(2);
        assert_eq!(d.apply(&[qi(1), qi(2)]), vec![qi(1), qi(2), qi(1), qi(2)]);
        let e = LinearMap::<Rational>::coordinate_embedding(&[0, 2], 3);
        assert!(e.is_coordinate_isometry());
        assert!(!d.is_coordinate_isometry());
        let c = d.compose(&LinearMap::identity(2)).unwrap();
        assert_eq!(c, d);
    }
}

mod geometry_hull {
    use valgebra::geometry::hull::*;
    use valgebra::scalar::{qi, Rational};

    fn pts(raw: &[&[i64]]) -> Vec<Vec<Rational>> {
        raw.iter().map(|p| p.iter().map(|&x| qi(x)).collect()).collect()
    }

    #[test]
    fn square_with_interior_and_edge_points() {
        let p = pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1], &[1, 0]]);
        let h = build(p, 2);
        let mut ext: Vec<_> = h.extreme_indices().into_iter().map(|i| h.points[i].clone()).collect();
        sort_dedup(&mut ext);
        assert_eq!(ext, pts(&[&[0, 0], &[0, 2], &[2, 0], &[2, 2]]));
        assert_eq!(h.hyperplanes().len(), 4);
    }

    #[test]
    fn segment_in_one_dimension() {
        let p = pts(&[&[3], &[-1], &[0], &[2]]);
        let h = build(p, 1);
        let mut ext: Vec<_> = h.extreme_indices().into_iter().map(|i| h.points[i].clone()).collect();
        sort_dedup(&mut ext);
        assert_eq!(ext, pts(&[&[-1], &[3]]));
    }

    #[test]
    fn frame_detects_rank() {
        let p = pts(&[&[0, 0, 0], &[1, 1, 0], &[2, 2, 0]]);
        let f = AffineFrame::of(&p);
        assert_eq!(f.rank, 1);
        assert_eq!(f.pivots, vec![0]);
    }
}

mod integer_hull {
    use valgebra::scalar::{q, qi};
    use valgebra::QPolytope;

    #[test]
    fn interior_points_are_dropped() {
        let mut pts: Vec<Vec<_>> = (0..8).map(|m| (0..3).map(|c| qi(2 * ((m >> c) & 1))).collect()).collect();
        pts.push(vec![qi(1), qi(1), qi(1)]);
        pts.push(vec![qi(1), qi(0), qi(1)]);
        let h = QPolytope::hull(pts, 3).unwrap();
        assert_eq!(h.num_vertices(), 8);
        assert_eq!(h.volume(), qi(8));
    }

    #[test]
    fn wide_coordinates_fall_back_to_exact_arithmetic() {
        let big = 1i64 << 40;
        let pts = vec![
            vec![qi(0), qi(0)],
            vec![qi(big), qi(0)],
            vec![qi(0), qi(big)],
            vec![qi(big), qi(big)],
            vec![q(big, 2), q(big, 3)],
        ];
        let h = QPolytope::hull(pts, 2).unwrap();
        assert_eq!(h.num_vertices(), 4);
        assert_eq!(h.volume(), qi(big) * qi(big));
    }
}

mod geometry_hausdorff {
    use valgebra::geometry::hausdorff::*;
    use valgebra::scalar::{q, qi};
    use valgebra::Polytope;
    use valgebra::Rational;

    #[test]
    fn square_faces() {
        let sq = Polytope::<Rational>::unit_cube(2);
        // 4 vertices, 4 edges, the square itself
        assert_eq!(faces(&sq).len(), 9);
        let cube = Polytope::<Rational>::unit_cube(3);
        assert_eq!(faces(&cube).len(), 8 + 12 + 6 + 1);
    }

    #[test]
    fn point_distances() {
        let sq = Polytope::<Rational>::unit_cube(2);
        assert_eq!(distance_sq_to(&sq, &[qi(2), qi(2)]), qi(2));
        assert_eq!(distance_sq_to(&sq, &[q(1, 2), qi(3)]), qi(4));
        assert_eq!(distance_sq_to(&sq, &[q(1, 2), q(1, 2)]), qi(0));
        let seg = Polytope::segment(vec![qi(0), qi(0)], vec![qi(2), qi(0)]);
        assert_eq!(distance_sq_to(&seg, &[qi(1), qi(1)]), qi(1));
    }

    #[test]
    fn square_example() {
        let a = Polytope::<Rational>::unit_cube(2);
        let b = a.scale(&qi(2)).unwrap();
        let d = hausdorff_distance(&a, &b).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
    }
}

mod geometry_ball {
    use valgebra::geometry::ball::*;
    use valgebra::linalg::norm_sq;
    use valgebra::scalar::qi;
    use valgebra::Error;

    #[test]
    fn vertices_on_sphere_and_symmetric() {
        for n in [2, 3] {
            for level in 1..=3 {
                let b = ball_approx(n, level, BallSide::Inscribed).unwrap();
                for v in b.vertices() {
                    assert_eq!(norm_sq(v), qi(1));
                }
                assert_eq!(b.reflect(), b);
            }
        }
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(ball_approx(2, 1, BallSide::Inscribed).unwrap().num_vertices(), 6);
        assert_eq!(ball_approx(2, 3, BallSide::Inscribed).unwrap().num_vertices(), 24);
        assert_eq!(ball_approx(3, 1, BallSide::Inscribed).unwrap().num_vertices(), 6);
        assert_eq!(ball_approx(3, 2, BallSide::Inscribed).unwrap().num_vertices(), 18);
        assert_eq!(ball_approx(3, 3, BallSide::Inscribed).unwrap().num_vertices(), 66);
    }

    #[test]
    fn circumscribed_contains_ball() {
        for n in [2, 3] {
            let out = ball_approx(n, 2, BallSide::Circumscribed).unwrap();
            assert!(inradius_sq(&out) >= qi(1));
            let inn = ball_approx(n, 2, BallSide::Inscribed).unwrap();
            assert!(inn.is_subset_of(&out));
        }
    }

    #[test]
    fn unsupported() {
        assert_eq!(ball_approx(4, 1, BallSide::Inscribed), Err(Error::UnsupportedDimension(4)));
    }
}

mod random {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use valgebra::random::*;

    #[test]
    fn deterministic_and_full_dimensional() {
        let a = random_polytope(&mut ChaCha8Rng::seed_from_u64(3), 3, 6, 2);
        let b = random_polytope(&mut ChaCha8Rng::seed_from_u64(3), 3, 6, 2);
        assert_eq!(a, b);
        assert!(a.is_full_dimensional());
        assert_eq!(random_simplex(&mut ChaCha8Rng::seed_from_u64(1), 2, 3).num_vertices(), 3);
    }
}
