use conisym::catalog::*;
use conisym::ideals::{buchberger, saturate, TermOrder};
use conisym::poisson::{surface_bracket_from_f, xyz_names};
use conisym::poly::{int, rat, Polynomial, Rational};
use conisym::{parse_poly, PoissonMatrix};
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn xn_slices_verify() {
    for n in 2..=10 {
        for (s, t) in [(2, int(0)), (4, int(1))] {
            let slice = make_xn(n, s, t.clone()).unwrap();
            let r = verify_xn(&slice);
            assert!(r.passed(), "n={} s={} t={}: {}", n, s, t, r.to_text());
        }
    }
    let r = verify_xn(&make_xn(3, 3, rat(1, 2)).unwrap());
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn xn_rejections() {
    assert!(make_xn(1, 2, int(0)).is_err());
    assert!(make_xn(2, 2, int(1)).is_err());
    assert!(make_xn(2, 3, int(0)).is_err());
    assert!(make_xn(2, 2, rat(-1, 2)).is_err());
    assert_eq!(xn_degrees(4, 2, &int(0)).unwrap(), vec![2, 2, 2, 7, 7]);
}

#[test]
fn tampered_top_entry_breaks_pfaffian() {
    for n in 2..5u32 {
        let mut slice = make_xn(n, 2, int(0)).unwrap();
        let top = xn_delta().pow(n - 1).scale(&int(2 * n as i64 + 1));
        slice.theta = slice.theta.with_entry(3, 4, top);
        let r = verify_xn(&slice);
        assert_eq!(r.get("pfaffian").unwrap().status, conisym::Status::Fail);
    }
}

#[test]
fn listed_surfaces_verify() {
    for family in SurfaceFamily::all_listed(12) {
        let r = verify_surface(&family).unwrap();
        assert!(r.passed(), "{}: {}", family.kind, r.to_text());
        assert_eq!(r.get("radical").is_some(), family.is_singular());
    }
}

#[test]
fn surface_equations() {
    let names = xyz_names();
    let eq = |k| SurfaceFamily::standard(k).unwrap().equation();
    assert_eq!(eq(SurfaceKind::E6), parse_poly("x^4 + y^3 + z^2", &names).unwrap());
    assert_eq!(eq(SurfaceKind::E7), parse_poly("x^3*y + y^3 + z^2", &names).unwrap());
    assert_eq!(eq(SurfaceKind::E8), parse_poly("x^5 + y^3 + z^2", &names).unwrap());
    assert_eq!(eq(SurfaceKind::D(4)), parse_poly("x^3 + x*y^2 + z^2", &names).unwrap());
    let a2 = SurfaceFamily::new(SurfaceKind::A(2), 1, [1, 1, 2]).unwrap();
    let (f, theta, grading) = make_surface(&a2).unwrap();
    assert_eq!(f, parse_poly("x^3 + y*z", &names).unwrap());
    assert_eq!(theta.entry(1, 2), &parse_poly("3*x^2", &names).unwrap());
    assert_eq!(grading.d, vec![1, 1, 2]);
    let e7 = SurfaceFamily::standard(SurfaceKind::E7).unwrap();
    assert_eq!((e7.s, e7.d), (1, [4, 6, 9]));
}

#[test]
fn illegal_weights() {
    let bad = SurfaceFamily { kind: SurfaceKind::A(2), s: 2, d: [2, 2, 2] };
    assert!(matches!(make_surface(&bad), Err(CatalogError::IllegalWeights { .. })));
    assert!(SurfaceFamily::new(SurfaceKind::D(3), 1, [2, 1, 2]).is_err());
    assert!(SurfaceFamily::new(SurfaceKind::E8, 2, [6, 10, 15]).is_err());
    assert!("F4".parse::<SurfaceKind>().is_err());
}

#[test]
fn smooth_surface_skips_radical() {
    let r = verify_surface(&SurfaceFamily::standard(SurfaceKind::Smooth).unwrap()).unwrap();
    assert!(r.passed());
    assert!(r.get("radical").is_none());
}

#[test]
fn tampered_e6_misses_z() {
    let names = xyz_names();
    let f = parse_poly("x^4 + y^3", &names).unwrap();
    let theta = surface_bracket_from_f(&f, names).unwrap();
    let grading = SurfaceFamily::standard(SurfaceKind::E6).unwrap().grading();
    let r = verify_surface_equation("tampered", &f, &theta, &grading, true);
    let radical = r.get("radical").unwrap();
    assert_eq!(radical.status, conisym::Status::Fail);
    assert!(radical.witness.as_deref().unwrap().ends_with(": z"));
}

#[test]
fn degree_tuple_examples() {
    let tuples = enumerate_degree_tuples(1, 8);
    let case1: Vec<[u64; 5]> = tuples.iter().filter(|t| t.case == TupleCase::Case1).map(|t| t.raw).collect();
    assert!(case1.contains(&[2, 2, 3, 3, 4]));
    let flagged: Vec<&DegreeTuple> = tuples.iter().filter(|t| t.exceptional).collect();
    assert_eq!(flagged.len(), 1);
    assert_eq!((flagged[0].raw, flagged[0].a), ([3, 4, 5, 6, 8], 3));
    let case2: Vec<u64> = tuples.iter().filter(|t| t.case == TupleCase::Case2).map(|t| t.a).collect();
    assert_eq!(case2, vec![2, 3]);
    let two = enumerate_degree_tuples(2, 4);
    let t = two.iter().find(|t| t.case == TupleCase::Case1 && t.a == 4).unwrap();
    assert_eq!(t.raw, [4, 4, 6, 6, 8]);
    assert_eq!(t.normalized, [2, 2, 3, 3, 4]);
}

proptest! {
    #[test]
    fn degree_tuples_follow_the_families(s in 1u64..6, extra in 0u64..20) {
        let a_max = 3 * s + extra;
        let tuples = enumerate_degree_tuples(s, a_max);
        let count = (a_max - 2 * s + 1) + (s + 1) + (a_max - 3 * s + 1);
        prop_assert_eq!(tuples.len() as u64, count);
        for t in &tuples {
            let a = t.a;
            let expect = match t.case {
                TupleCase::Case1 => [a, 2 * a - 2 * s, 2 * a - s, 3 * a - 3 * s, 4 * a - 4 * s],
                TupleCase::Case2 => [2 * s, a, 3 * s, a + s, a + 2 * s],
                TupleCase::Case3 => [2 * s, 3 * s, a, a + s, a + 2 * s],
            };
            prop_assert_eq!(t.raw, expect);
            prop_assert!(t.raw.windows(2).all(|w| w[0] <= w[1]));
            let g = t.raw.iter().fold(0u64, |acc, &x| acc.gcd(&x));
            prop_assert_eq!(t.normalized, t.raw.map(|x| x / g));
            prop_assert_eq!(t.normalized.iter().fold(0u64, |acc, &x| acc.gcd(&x)), 1);
            prop_assert_eq!(t.exceptional, t.case == TupleCase::Case1 && a == 3 * s);
        }
    }
}

#[test]
fn condition_star() {
    let (ansatz, _) = exceptional_ansatz();
    assert!(check_condition_star(&ansatz, 4, &[1]));
    // Θ_n has -e1 at (h, e1) and e1 at (y, e0): two disjoint entries.
    let slice = make_xn(2, 2, int(0)).unwrap();
    assert!(check_condition_star(&slice.theta, 4, &[1]));
    let without = slice.theta.with_entry(2, 3, Polynomial::zero(5));
    assert!(!check_condition_star(&without, 4, &[1]));
    assert!(!check_condition_star(&PoissonMatrix::zero(conisym::default_names(5), 5), 4, &[1, 2]));
}

#[test]
fn ansatz_fixture_is_graded() {
    let (theta, grading) = exceptional_ansatz();
    assert_eq!(grading.d, vec![3, 4, 5, 6, 8]);
    assert_eq!(grading.s, 1);
    assert_eq!(theta.arity(), 5 + ANSATZ_PARAMS);
    assert!(theta.check_degree_homogeneity(&grading, None).all_pass());
    assert_eq!(theta.entry(0, 1), &theta.var(3));
    assert_eq!(theta.entry(0, 3), &theta.var(4));
}

/// `J_ijk` for the five coordinates by direct double brackets.
fn jacobi_free(theta: &PoissonMatrix) -> bool {
    let b = |f: &Polynomial, g: &Polynomial| {
        let mut acc = Polynomial::zero(theta.arity());
        for i in 0..5 {
            for j in 0..5 {
                let t = theta.entry(i, j);
                if !t.is_zero() {
                    acc = &acc + &(&(&f.derivative(i).unwrap() * &g.derivative(j).unwrap()) * t);
                }
            }
        }
        acc
    };
    let x = |i| theta.var(i);
    (0..5).all(|i| {
        (i + 1..5).all(|j| {
            (j + 1..5).all(|k| (&(&b(&x(i), &b(&x(j), &x(k))) + &b(&x(j), &b(&x(k), &x(i)))) + &b(&x(k), &b(&x(i), &x(j)))).is_zero())
        })
    })
}

fn curve_point(u: Rational) -> Vec<Rational> {
    let mut p = vec![Rational::zero(); ANSATZ_PARAMS];
    let u2 = &u * &u;
    for (i, v) in [
        (4, u.clone()),
        (5, &u * int(4)),
        (7, &u * int(-2)),
        (8, &u * int(4)),
        (9, &u2 * int(-40)),
        (10, &u * int(-2)),
        (11, &u * int(4)),
        (15, -u.clone()),
        (23, &u * int(2)),
        (25, &u2 * int(-10)),
    ] {
        p[i - 1] = v;
    }
    p
}

#[test]
fn curve_points_are_poisson() {
    for u in [int(1), int(-3), rat(1, 2), rat(-7, 5)] {
        assert!(jacobi_free(&ansatz_at(&curve_point(u.clone()))), "a4 = {}", u);
    }
    assert_eq!(curve_point(int(1)), computed_curve_point());
    assert!(jacobi_free(&ansatz_at(&vec![Rational::zero(); ANSATZ_PARAMS])));
}

#[test]
fn displayed_point_is_not_poisson() {
    assert!(!jacobi_free(&ansatz_at(&displayed_line_point())));
}

#[test]
fn exceptional_elimination() {
    let order = TermOrder::grevlex(ANSATZ_PARAMS);
    let out = exceptional_case_elimination(&order, None).unwrap();
    let r = &out.report;
    assert_eq!(out.coefficients.len(), 66);
    for name in ["ansatz-degrees", "condition-star-5", "a18-in-saturation", "saturation-equals-computed-curve", "curve-point-is-poisson"] {
        assert_eq!(r.get(name).unwrap().status, conisym::Status::Pass, "{}", name);
    }
    // The stated linear relations do not describe the saturated locus.
    assert_eq!(r.get("line-in-saturation").unwrap().status, conisym::Status::Fail);
    assert_eq!(r.get("displayed-point-is-poisson").unwrap().status, conisym::Status::Fail);
    let again = exceptional_case_elimination(&order, None).unwrap();
    assert_eq!(again.saturation, out.saturation);

    // Saturating by a4 alone gives the same curve, still without the line.
    let names = param_names();
    let by_a4 = saturate(&out.coefficients, &parse_poly("a4", &names).unwrap(), &order);
    let curve = buchberger(&computed_curve_relations(), &order);
    assert_eq!(by_a4, curve);
    assert!(!by_a4.contains_all(&displayed_line_relations()));
    assert!(by_a4.contains(&parse_poly("a9 + 40*a4^2", &names).unwrap()));
}
