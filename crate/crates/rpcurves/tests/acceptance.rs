//! Acceptance gate: one test per shipped guarantee, each printing a single
//! PASS line (run with `--nocapture` to see them; a failure panics with the
//! offending data).
//!
//! The three bundled fields used throughout:
//!   E1 = x²∂x + (xy + y²)∂y   (two isolated separatrices),
//!   E2 = x²∂x + y²∂y          (a one-parameter separatrix family),
//!   E3 = x²∂x + xy∂y          (dicritical).

mod common;

use common::{random_order2_field, random_poly, random_tangent_map, N};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rpcurves::blowup::{
    dicritical_field, dicritical_map, exp_pullback_check, pullback_field, saturate, BlowupChart,
};
use rpcurves::intersection::{
    intersection_multiplicity, milnor_number, milnor_of_map, Multiplicity,
};
use rpcurves::parse::{parse_field, ParsedInput};
use rpcurves::report::{rp_report, RpBound};
use rpcurves::separatrix::{invariance_residual, restricted_exponent, separatrices};
use rpcurves::series::Series2;
use rpcurves::vector_field::{exp_flow, log_map, VectorField};
use rpcurves::Error;

fn e1() -> VectorField {
    parse_field("x^2, x*y + y^2", N).unwrap()
}

fn e2() -> VectorField {
    parse_field("x^2, y^2", N).unwrap()
}

fn e3() -> VectorField {
    parse_field("x^2, x*y", N).unwrap()
}

/// Extended addition of multiplicities: infinity absorbs.
fn msum(a: Multiplicity, b: Multiplicity) -> Multiplicity {
    match (a, b) {
        (Multiplicity::Finite(x), Multiplicity::Finite(y)) => Multiplicity::Finite(x + y),
        _ => Multiplicity::Infinite,
    }
}

#[test]
fn criterion_1_time_one_flow_of_diagonal_field_has_all_unit_coefficients() {
    let f = exp_flow(&e2()).unwrap();
    let expected_x: Vec<(usize, usize, i64)> = (1..=N).map(|k| (k, 0, 1)).collect();
    let expected_y: Vec<(usize, usize, i64)> = (1..=N).map(|k| (0, k, 1)).collect();
    assert!(
        f.f1().eq_to_degree(&Series2::from_int_terms(N, &expected_x), N),
        "first component differs from x + x^2 + ... + x^12: {}",
        f.f1().render_with("x", "y")
    );
    assert!(
        f.f2().eq_to_degree(&Series2::from_int_terms(N, &expected_y), N),
        "second component differs from y + y^2 + ... + y^12: {}",
        f.f2().render_with("x", "y")
    );
    println!(
        "PASS criterion 1: exp(x^2 d/dx + y^2 d/dy) = (x + sum x^k, y + sum y^k), every coefficient 1 through degree {N}"
    );
}

#[test]
fn criterion_2_pullback_and_saturation_in_chart_u1() {
    let lift = pullback_field(&e2(), BlowupChart::U1).unwrap();
    let want_a = Series2::from_int_terms(N, &[(2, 0, 1)]);
    let want_b = Series2::from_int_terms(N, &[(1, 2, 1), (1, 1, -1)]);
    assert!(lift.a().is_exact() && lift.b().is_exact(), "lift must be exact");
    assert!(
        lift.a().eq_to_degree(&want_a, N) && lift.b().eq_to_degree(&want_b, N),
        "raw lift differs: {}",
        lift.render_with("u", "v")
    );
    let (sat, m) = saturate(&lift, &BlowupChart::U1.divisor(N)).unwrap();
    assert_eq!(m, 1, "the divisor should divide the lift exactly once");
    let sat_a = Series2::from_int_terms(N, &[(1, 0, 1)]);
    let sat_b = Series2::from_int_terms(N, &[(0, 2, 1), (0, 1, -1)]);
    assert!(
        sat.a().eq_to_degree(&sat_a, N) && sat.b().eq_to_degree(&sat_b, N),
        "saturated lift differs: {}",
        sat.render_with("u", "v")
    );
    println!(
        "PASS criterion 2: U1 pullback of x^2 d/dx + y^2 d/dy is u^2 d/du + u(v^2 - v) d/dv; saturation divides u once, leaving u d/du + (v^2 - v) d/dv"
    );
}

#[test]
fn criterion_3_lifting_commutes_with_the_time_one_flow() {
    for (name, x) in [("E1", e1()), ("E2", e2()), ("E3", e3())] {
        for chart in [BlowupChart::U1, BlowupChart::U2] {
            assert!(
                exp_pullback_check(&x, chart).unwrap(),
                "blowup(exp {name}) != exp(pullback {name}) in {chart:?}"
            );
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for k in 0..100 {
        let x = random_order2_field(&mut rng);
        for chart in [BlowupChart::U1, BlowupChart::U2] {
            assert!(
                exp_pullback_check(&x, chart).unwrap(),
                "sample {k}: blowup(exp X) != exp(pullback X) in {chart:?} for X = {}",
                x.render_with("x", "y")
            );
        }
    }
    println!(
        "PASS criterion 3: blowup_map(exp_flow(X)) = exp_flow(pullback_field(X)) to degree {} on E1, E2, E3 and 100 random order-2 fields, both charts",
        N - 2
    );
}

#[test]
fn criterion_4_milnor_numbers_and_fulton_axioms() {
    // Named values.
    assert_eq!(milnor_number(&e2()).unwrap(), Multiplicity::Finite(4));
    assert_eq!(milnor_number(&e1()).unwrap(), Multiplicity::Finite(4));

    // Fulton axioms on random pairs: symmetry, additivity over products,
    // invariance under adding a multiple of the other germ, and the
    // normalization i(x, y) = 1.
    let x_axis = Series2::var_x(N);
    let y_axis = Series2::var_y(N);
    assert_eq!(
        intersection_multiplicity(&x_axis, &y_axis).unwrap(),
        Multiplicity::Finite(1)
    );
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for k in 0..200 {
        let f = random_poly(&mut rng, 1, 3);
        let g = random_poly(&mut rng, 1, 3);
        let h = random_poly(&mut rng, 1, 2);
        let ifg = intersection_multiplicity(&f, &g).unwrap();
        // symmetry
        assert_eq!(
            ifg,
            intersection_multiplicity(&g, &f).unwrap(),
            "sample {k}: i(f,g) != i(g,f)"
        );
        // additivity over products
        let ifh = intersection_multiplicity(&f, &h).unwrap();
        let prod = intersection_multiplicity(&f, &g.mul(&h)).unwrap();
        assert_eq!(prod, msum(ifg, ifh), "sample {k}: i(f,gh) != i(f,g) + i(f,h)");
        // invariance under g -> g + h·f
        let shifted = g.add(&h.mul(&f));
        if !shifted.is_zero() {
            assert_eq!(
                intersection_multiplicity(&f, &shifted).unwrap(),
                ifg,
                "sample {k}: i(f, g + hf) != i(f, g)"
            );
        }
    }

    // The fixed-point multiplicity of the time-one map equals the Milnor
    // number of the field (E3's is infinite, which a finite jet of the flow
    // honestly refuses to certify).
    for (name, x) in [("E1", e1()), ("E2", e2())] {
        let f = exp_flow(&x).unwrap();
        assert_eq!(
            milnor_of_map(&f).unwrap(),
            milnor_number(&x).unwrap(),
            "mu(exp {name}) != mu({name})"
        );
    }
    assert_eq!(milnor_number(&e3()).unwrap(), Multiplicity::Infinite);
    match milnor_of_map(&exp_flow(&e3()).unwrap()) {
        Err(Error::Uncertified { .. }) => {}
        other => panic!("mu(exp E3) from a finite jet should be uncertified, got {other:?}"),
    }
    println!(
        "PASS criterion 4: mu(x^2, y^2) = 4, mu(x^2, xy + y^2) = 4, Fulton axioms on 200 random pairs, and mu(exp X) = mu(X) across the corpus"
    );
}

#[test]
fn criterion_5_full_report_on_the_two_separatrix_field() {
    let input = ParsedInput::Field(e1());
    let rep = rp_report(&input, N).unwrap();
    assert_eq!(rep.milnor, Some(Multiplicity::Finite(4)), "mu(E1) = 4");
    assert_eq!(rep.orders.eta, Some(2), "eta(exp E1) = 2");
    match rep.bound {
        RpBound::Bound { mu, eta, bound } => {
            assert_eq!((mu, eta, bound), (4, 2, 10), "bound = (mu+1)(eta^2-eta) = 10");
        }
        RpBound::DicriticalInfinitelyMany => panic!("E1 is not dicritical"),
    }
    let set = &rep.separatrices;
    assert!(set.includes_x_axis && set.includes_y_axis, "separatrices are the two axes");
    assert_eq!(set.isolated_count(), 2);
    assert!(set.families.is_empty());
    assert_eq!(rep.petals.len(), 2);
    for p in &rep.petals {
        assert_eq!((p.h, p.petal_count), (2, 1), "each axis carries h = 2, one petal");
    }
    assert_eq!(rep.rp_lower_count, 2);
    assert_eq!(rep.lower_within_bound, Some(true));
    println!(
        "PASS criterion 5: report on x^2 d/dx + (xy + y^2) d/dy gives mu = 4, eta = 2, bound = 10, separatrices {{x = 0}}, {{y = 0}}, each with h = 2 and one petal; 2 <= 10"
    );
}

#[test]
fn criterion_6_dicriticality_verdicts_agree_between_field_and_map() {
    let cases = [("E1", e1(), false), ("E2", e2(), false), ("E3", e3(), true)];
    for (name, x, want) in cases {
        let dic_x = dicritical_field(&x).unwrap();
        let dic_f = dicritical_map(&exp_flow(&x).unwrap()).unwrap();
        assert_eq!(dic_x, want, "{name}: field verdict");
        assert_eq!(dic_f, want, "{name}: map verdict");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for k in 0..100 {
        let x = random_order2_field(&mut rng);
        let dic_x = dicritical_field(&x).unwrap();
        let dic_f = dicritical_map(&exp_flow(&x).unwrap()).unwrap();
        assert_eq!(
            dic_x,
            dic_f,
            "sample {k}: verdicts disagree for X = {}",
            x.render_with("x", "y")
        );
    }
    println!(
        "PASS criterion 6: dicritical(E3) = (true, true), dicritical(E1) = (false, false), and field/map verdicts agree on 100 random fields"
    );
}

#[test]
fn criterion_7_exponential_and_logarithm_invert_each_other() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for k in 0..100 {
        let x = random_order2_field(&mut rng);
        let back = log_map(&exp_flow(&x).unwrap()).unwrap();
        assert!(
            back.eq_to_degree(&x, N),
            "sample {k}: log(exp X) != X for X = {}",
            x.render_with("x", "y")
        );
    }
    for k in 0..100 {
        let f = random_tangent_map(&mut rng);
        let again = exp_flow(&log_map(&f).unwrap()).unwrap();
        assert!(
            again.eq_to_degree(&f, N),
            "sample {k}: exp(log f) != f for f = {}",
            f.render_with("x", "y")
        );
    }
    println!(
        "PASS criterion 7: log(exp X) = X and exp(log f) = f to degree {N} on 200 random fields and maps"
    );
}

#[test]
fn criterion_8_reported_separatrices_are_invariant_and_families_are_flagged() {
    for (name, x) in [("E1", e1()), ("E2", e2()), ("E3", e3())] {
        let set = separatrices(&x, 24).unwrap();
        for br in &set.isolated {
            let res = invariance_residual(&x, br, 20).unwrap();
            assert!(
                res.is_zero(),
                "{name}: residual of {} is {}",
                br.describe(),
                res.render_with("z")
            );
            // The restricted dynamics must pass its own invariance gate,
            // except on a branch made of singular points (E3's {x = 0}),
            // where there is no dynamics to restrict.
            match restricted_exponent(&x, br) {
                Ok(_) => {}
                Err(Error::Domain { ref message, .. })
                    if message.contains("singular points") => {}
                Err(e) => panic!("{name}: restricted dynamics on {}: {e}", br.describe()),
            }
        }
    }
    // E2 carries a one-parameter family tangent to y = x: it is reported as
    // a family with a warning, not folded into the isolated count.
    let set = separatrices(&e2(), 24).unwrap();
    assert_eq!(set.isolated_count(), 2, "E2's isolated branches are the axes");
    assert_eq!(set.families.len(), 1, "E2 has one separatrix family");
    let stem = &set.families[0];
    assert!(stem.is_family());
    assert_eq!(
        stem.phi.coeff(1),
        rpcurves::Scalar::from_int(1),
        "the family is tangent to y = x"
    );
    let rep = rp_report(&ParsedInput::Field(e2()), N).unwrap();
    assert!(
        rep.warnings.iter().any(|w| w.contains("separatrix family present")),
        "the report must flag the family hypothesis: {:?}",
        rep.warnings
    );
    println!(
        "PASS criterion 8: invariance residuals vanish to z^20 for every isolated branch on E1, E2, E3; E2's family tangent to y = x is flagged, not counted"
    );
}

#[test]
fn criterion_9_fields_with_linear_part_are_rejected() {
    let x = parse_field("u, v^2 - v", N).unwrap();
    match exp_flow(&x) {
        Err(e) => {
            let msg = e.to_string();
            assert!(
                msg.contains("not tangent to the identity because the vector field has linear part"),
                "unexpected message: {msg}"
            );
        }
        Ok(_) => panic!("exp_flow must reject u d/du + (v^2 - v) d/dv"),
    }
    println!(
        "PASS criterion 9: exp_flow(u d/du + (v^2 - v) d/dv) fails with the documented linear-part error"
    );
}
