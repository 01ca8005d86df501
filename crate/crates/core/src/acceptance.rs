//! The acceptance suite: twelve exact or interval-bracketed checks, each with
//! a time budget.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::filtration::{filtration_suite, q_homomorphism_check, scaling_profile, symbol, SampleSet};
use crate::geometry::LinearMap;
use crate::invariant::{default_level, default_test_bodies, lefschetz_check, structure_constants, unitary_dimension};
use crate::mixed::{derivative_identity, mixed_volume, projection_identity_check};
use crate::polynomial::Polynomial;
use crate::random::{random_polytope, random_simplex};
use crate::scalar::{q, qi, Rational};
use crate::valuation::{
    closed_form_product, diagonal_product_evaluate, homogeneous_decomposition, odd_product_witness, pairing_matrix, product,
    valuation_axiom_check, EvalOptions, QValuation,
};
use crate::QPolytope;

pub const DEFAULT_SEED: u64 = 17;

/// `(id, name, budget in seconds)`.
pub const CRITERIA: [(u8, &str, u64); 12] = [
    (1, "diagonal degeneration", 10),
    (2, "complementary-degree dual route", 300),
    (3, "unit, commutativity, associativity", 600),
    (4, "derivative identity", 60),
    (5, "projection identity", 60),
    (6, "odd product witness", 60),
    (7, "intrinsic volume structure constants", 900),
    (8, "homogeneous decomposition", 120),
    (9, "filtration suite", 600),
    (10, "unitary dimensions and Lefschetz", 1),
    (11, "valuation axiom", 60),
    (12, "pairing rank", 60),
];

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {}: {} ({:.2}s of {}s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

pub fn run_criterion(id: u8, seed: u64) -> Option<CriterionResult> {
    let &(_, name, budget) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let outcome = match id {
        1 => diagonal_degeneration(seed),
        2 => dual_route(seed),
        3 => product_laws(seed),
        4 => derivative(seed),
        5 => projection(seed),
        6 => odd_witness(),
        7 => structure(seed),
        8 => decomposition(seed),
        9 => filtration(seed),
        10 => dimensions(),
        11 => axiom(),
        12 => pairing(seed),
        _ => return None,
    };
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget);
    let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let pass = ok && elapsed <= budget;
    let detail = if ok && !pass {
        format!("{detail}; over time budget")
    } else {
        detail
    };
    Some(CriterionResult {
        id,
        name,
        pass,
        detail,
        elapsed,
        budget,
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0, seed)).collect()
}

type Outcome = Result<(bool, String)>;

fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(salt))
}

fn tri(pts: [(i64, i64); 3]) -> QPolytope {
    QPolytope::hull(pts.iter().map(|&(x, y)| vec![qi(x), qi(y)]).collect(), 2).expect("nonempty")
}

fn mv(n: usize, bodies: Vec<QPolytope>) -> Result<QValuation> {
    QValuation::mv(n, bodies, qi(1))
}

fn diagonal_degeneration(seed: u64) -> Outcome {
    let mut r = rng(seed, 1);
    let mut ok = 0;
    for t in 0..20 {
        let n = 2 + t % 2;
        let k = random_polytope(&mut r, n, n + 4, 3);
        let refs = vec![&k; n];
        if mixed_volume(&refs)? == k.volume() {
            ok += 1;
        }
    }
    Ok((ok == 20, format!("{ok}/20 exact")))
}

fn dual_route(seed: u64) -> Outcome {
    let opts = EvalOptions::default();
    let mut r = rng(seed, 2);
    let mut cases = Vec::new();
    for _ in 0..10 {
        let polys: Vec<QPolytope> = (0..3).map(|_| random_polytope(&mut r, 2, 5, 3)).collect();
        cases.push((
            mv(2, vec![polys[0].clone()])?,
            mv(2, vec![polys[1].clone()])?,
            polys[2].clone(),
        ));
    }
    for _ in 0..3 {
        let s: Vec<QPolytope> = (0..4).map(|_| random_simplex(&mut r, 3, 2)).collect();
        cases.push((
            mv(3, vec![s[0].clone(), s[1].clone()])?,
            mv(3, vec![s[2].clone()])?,
            s[3].clone(),
        ));
        cases.push((
            mv(3, vec![s[0].clone()])?,
            mv(3, vec![s[1].clone(), s[2].clone()])?,
            s[3].clone(),
        ));
    }
    let mut ok = 0;
    for (phi, psi, k) in &cases {
        let closed = closed_form_product(phi, psi)?.evaluate_with(k, &opts)?;
        if closed == diagonal_product_evaluate(phi, psi, k, &opts)? {
            ok += 1;
        }
    }
    Ok((ok == cases.len(), format!("{ok}/{} exact (10 at n=2, 6 at n=3)", cases.len())))
}

fn product_laws(seed: u64) -> Outcome {
    let diag = EvalOptions::default().diagonal_route();
    let opts = EvalOptions::default();
    let mut r = rng(seed, 3);
    let a = random_polytope(&mut r, 2, 4, 2);
    let b = random_polytope(&mut r, 2, 4, 2);
    let c = random_polytope(&mut r, 2, 4, 2);
    let sq = QPolytope::unit_cube(2);
    let bodies = vec![
        sq.clone(),
        QPolytope::standard_simplex(2),
        QPolytope::segment(vec![qi(0), qi(0)], vec![qi(2), qi(1)]),
        QPolytope::origin(2),
        random_polytope(&mut r, 2, 5, 2),
    ];
    let mva = mv(2, vec![a.clone()])?;
    let mvb = mv(2, vec![b.clone()])?;
    let pd = QValuation::pd(2, Polynomial::var(2, 0), vec![sq.clone()], Some(c.clone()), qi(1))?;
    let lin = mv(3, vec![a.pad_after(1), c.pad_after(1)])?.restrict(&LinearMap::coordinate_embedding(&[0, 2], 3))?;
    let prod = QValuation::product_generator(mva.clone(), QValuation::volume(2))?;
    let comp = QValuation::component(QValuation::pd(2, Polynomial::one(2), vec![], Some(a.clone()), qi(1))?, 1)?;
    let chi = QValuation::euler(2);

    let mut unit = 0;
    let mut unit_total = 0;
    for psi in [&mva, &pd, &chi, &prod, &lin] {
        let p = QValuation::product_generator(chi.clone(), psi.clone())?;
        for k in &bodies {
            unit_total += 1;
            if p.evaluate_with(k, &diag)? == psi.evaluate_with(k, &opts)? {
                unit += 1;
            }
        }
    }
    // components are not lowerable; the unit law is applied structurally
    for k in &bodies {
        unit_total += 1;
        if product(&chi, &comp)?.evaluate_with(k, &opts)? == comp.evaluate_with(k, &opts)? {
            unit += 1;
        }
    }

    let mut comm = 0;
    let comm_pairs = [(&mva, &mvb), (&mva, &pd), (&pd, &lin)];
    for (x, y) in comm_pairs {
        let xy = QValuation::product_generator(x.clone(), y.clone())?;
        let yx = QValuation::product_generator(y.clone(), x.clone())?;
        if xy.evaluate_with(&bodies[4], &diag)? == yx.evaluate_with(&bodies[4], &diag)? {
            comm += 1;
        }
    }

    let mvcd = mv(2, vec![c.clone(), sq.clone()])?;
    let triples = [(&mva, &mvb, &mvcd), (&mvcd, &mva, &mvb)];
    let mut assoc = 0;
    for (x, y, z) in triples {
        let left = QValuation::product_generator(QValuation::product_generator(x.clone(), y.clone())?, z.clone())?;
        let right = QValuation::product_generator(x.clone(), QValuation::product_generator(y.clone(), z.clone())?)?;
        if left.evaluate_with(&bodies[0], &diag)? == right.evaluate_with(&bodies[0], &diag)? {
            assoc += 1;
        }
    }
    let pass = unit == unit_total && comm == comm_pairs.len() && assoc == triples.len();
    Ok((
        pass,
        format!(
            "unit {unit}/{unit_total}, commutativity {comm}/{}, associativity {assoc}/{}",
            comm_pairs.len(),
            triples.len()
        ),
    ))
}

fn derivative(seed: u64) -> Outcome {
    let mut r = rng(seed, 4);
    let mut ok = 0;
    for t in 0..10 {
        let n = 2 + t % 2;
        let k = random_polytope(&mut r, n, n + 3, 3);
        let m = 1 + (t / 2) % n;
        let slack: Vec<QPolytope> = (0..m).map(|_| random_polytope(&mut r, n, n + 2, 2)).collect();
        let refs: Vec<&QPolytope> = slack.iter().collect();
        if derivative_identity(&k, &refs)?.holds() {
            ok += 1;
        }
    }
    Ok((ok == 10, format!("{ok}/10 exact")))
}

fn projection(seed: u64) -> Outcome {
    let mut r = rng(seed, 5);
    let mut ok = 0;
    let mut total = 0;
    for _ in 0..2 {
        let m = QPolytope::segment(vec![qi(0)], vec![q(3, 2)]);
        let a = random_polytope(&mut r, 2, 4, 2);
        total += 1;
        ok += usize::from(projection_identity_check(&m, &[&a], &[0])?.holds());
        let m2 = random_polytope(&mut r, 2, 4, 2);
        let a1 = random_polytope(&mut r, 4, 6, 1);
        let a2 = random_polytope(&mut r, 4, 6, 1);
        total += 1;
        ok += usize::from(projection_identity_check(&m2, &[&a1, &a2], &[0, 1])?.holds());
    }
    Ok((ok == total, format!("{ok}/{total} exact (N=2,n=1 and N=4,n=2)")))
}

fn odd_witness() -> Outcome {
    let a = tri([(0, 0), (1, 0), (0, 1)]);
    let b = tri([(0, 0), (2, 0), (0, 1)]);
    let w = odd_product_witness(&a, &b)?;
    let square = QPolytope::cuboid(&[qi(-1), qi(-1)], &[qi(1), qi(1)]);
    let sym = odd_product_witness(&square, &b)?;
    let zero = Rational::from_integer(0.into());
    let pass = w.value != zero && w.routes_agree() && sym.value == zero;
    Ok((pass, format!("asymmetric pair {}, symmetric input {}", w.value, sym.value)))
}

fn structure(seed: u64) -> Outcome {
    let opts = EvalOptions::default();
    let half_pi = std::f64::consts::FRAC_PI_2;
    let sc2 = structure_constants(2, default_level(2), &default_test_bodies(2, seed), seed, &opts)?;
    let c11 = sc2.get(1, 1).and_then(|e| e.combined.clone());
    let (n2_ok, n2_detail) = match &c11 {
        Some(c) => {
            let f = c.to_float_interval();
            (
                f.contains(half_pi) && f.width() <= 1e-2,
                format!("n=2 c11 = [{:.6}, {:.6}] width {:.2e}", f.lo, f.hi, f.width()),
            )
        }
        None => (false, "n=2 c11 brackets disjoint".into()),
    };
    let sc3 = structure_constants(3, default_level(3), &default_test_bodies(3, seed), seed, &opts)?;
    let excl = sc3.entries.iter().all(|e| e.excludes_zero());
    let prop = sc2.entries.iter().chain(&sc3.entries).all(|e| e.proportional());
    let c3: Vec<String> = sc3
        .entries
        .iter()
        .filter(|e| e.i > 0 && e.j > 0)
        .filter_map(|e| {
            let f = e.combined.as_ref()?.to_float_interval();
            Some(format!("c{}{}=[{:.3},{:.3}]", e.i, e.j, f.lo, f.hi))
        })
        .collect();
    Ok((
        n2_ok && excl && prop,
        format!("{n2_detail}; n=3 excludes 0: {excl}; proportional: {prop}; {}", c3.join(" ")),
    ))
}

fn decomposition(seed: u64) -> Outcome {
    let opts = EvalOptions::default();
    let mut r = rng(seed, 8);
    let bodies = vec![
        QPolytope::unit_cube(2),
        QPolytope::standard_simplex(2),
        random_polytope(&mut r, 2, 5, 2),
    ];
    let mut ok = 0;
    for _ in 0..5 {
        let a = random_polytope(&mut r, 2, 4, 2);
        let v = QValuation::pd(2, Polynomial::one(2), vec![], Some(a), qi(1))?;
        let d = homogeneous_decomposition(&v, &bodies, &opts)?;
        if d.reassembles && d.degree_pure {
            ok += 1;
        }
    }
    Ok((ok == 5, format!("{ok}/5 reassemble and are degree-pure")))
}

fn filtration(seed: u64) -> Outcome {
    let opts = EvalOptions::default();
    let n = 2;
    let samples = SampleSet::default_for(n, seed);
    let full = samples.full_dimensional();
    let sq = QPolytope::unit_cube(2);
    let t = tri([(0, 0), (2, 0), (1, 3)]);
    let x = Polynomial::var(2, 0);

    let mvs = [mv(2, vec![])?, mv(2, vec![t.clone()])?, mv(2, vec![t.clone(), sq.clone()])?];
    let mut orders_ok = true;
    for (v, i) in mvs.iter().zip([2, 1, 0]) {
        for k in &full {
            for xg in &samples.x_grid {
                orders_ok &= scaling_profile(v, k, xg, &opts)?.lowest_order == Some(i);
            }
        }
    }

    let pd_x = QValuation::pd(2, x.clone(), vec![sq.clone()], None, qi(1))?;
    let pd_int = QValuation::pd(2, x.clone(), vec![], None, qi(1))?;
    let stock = vec![
        QValuation::euler(2),
        mvs[0].clone(),
        mvs[1].clone(),
        mvs[2].clone(),
        pd_x.clone(),
        pd_int.clone(),
    ];
    let suite = filtration_suite(&stock, &samples, &opts)?;
    let sandwich = suite.generators.iter().all(|g| g.sandwich);
    let products = suite.pairs.iter().all(|p| p.pass);

    let pd_poly = QValuation::pd(
        2,
        x.mul(&Polynomial::var(2, 1))?.add(&Polynomial::one(2))?,
        vec![t.clone()],
        None,
        qi(1),
    )?;
    let mut symbols_ok = true;
    for (v, i) in [(&pd_x, 1), (&pd_int, 2), (&pd_poly, 1)] {
        symbols_ok &= symbol(v, i, &full, &samples.x_grid, &opts)?.routes_agree() == Some(true);
    }

    let bodies: Vec<QPolytope> = full.iter().take(2).cloned().collect();
    let chi = QValuation::euler(2);
    let q_pairs = [
        (&mvs[1], &mvs[1], 1, 1),
        (&pd_x, &mvs[1], 1, 1),
        (&pd_x, &pd_x, 1, 1),
        (&chi, &mvs[1], 0, 1),
        (&mvs[2], &mvs[0], 0, 2),
    ];
    let mut q_ok = 0;
    for (a, b, i, j) in q_pairs {
        if q_homomorphism_check(a, b, i, j, &bodies, &samples.x_grid, &opts)?.holds() {
            q_ok += 1;
        }
    }
    let pass = orders_ok && sandwich && products && symbols_ok && q_ok == q_pairs.len();
    Ok((
        pass,
        format!(
            "lowest orders {orders_ok}, sandwich {sandwich}, products {}/{}, symbols {symbols_ok}, homomorphism {q_ok}/{} (seed {})",
            suite.pairs.iter().filter(|p| p.pass).count(),
            suite.pairs.len(),
            q_pairs.len(),
            suite.seed
        ),
    ))
}

fn dimensions() -> Outcome {
    let mut ok = true;
    for m in 0..=4usize {
        for k in 0..=2 * m {
            let d = unitary_dimension(k, m)?;
            ok &= d == 1 + k.min(2 * m - k) / 2 && d == unitary_dimension(2 * m - k, m)?;
        }
        ok &= unitary_dimension(2 * m + 1, m).is_err();
    }
    let orth = lefschetz_check(&[1; 5]);
    let u2: Vec<usize> = (0..=4).map(|k| unitary_dimension(k, 2)).collect::<Result<_>>()?;
    let unitary = lefschetz_check(&u2);
    let pass = ok && orth.holds && unitary.holds && u2 == [1, 1, 2, 1, 1];
    Ok((
        pass,
        format!(
            "formula {ok}, O(n) profile {}, U(2) profile {u2:?} {}",
            orth.holds, unitary.holds
        ),
    ))
}

fn axiom() -> Outcome {
    let opts = EvalOptions::default();
    let lo = [qi(0), qi(0)];
    let hi = [qi(1), qi(2)];
    let pd = QValuation::pd(2, Polynomial::var(2, 0), vec![], None, qi(1))?;
    let cases = [
        ("vol", QValuation::volume(2), 0, q(1, 2)),
        ("euler", QValuation::euler(2), 1, q(1, 3)),
        ("pd", pd, 0, q(1, 3)),
    ];
    let mut held = Vec::new();
    for (name, v, axis, cut) in &cases {
        if valuation_axiom_check(v, &lo, &hi, *axis, cut, &opts)?.holds() {
            held.push(*name);
        }
    }
    Ok((held.len() == cases.len(), format!("exact for {}", held.join(", "))))
}

fn pairing(seed: u64) -> Outcome {
    let mut attempts = Vec::new();
    for attempt in 0..3 {
        let draw = seed + attempt;
        let mut r = rng(draw, 12);
        let left = (0..3)
            .map(|_| mv(2, vec![random_polytope(&mut r, 2, 4, 2)]))
            .collect::<Result<Vec<_>>>()?;
        let right = (0..3)
            .map(|_| mv(2, vec![random_polytope(&mut r, 2, 4, 2)]))
            .collect::<Result<Vec<_>>>()?;
        let m = pairing_matrix(&left, &right)?;
        attempts.push(format!("seed {draw} rank {}", m.rank));
        if m.rank == 3 {
            return Ok((true, attempts.join(", ")));
        }
    }
    Ok((false, format!("three degenerate draws: {}", attempts.join(", "))))
}
