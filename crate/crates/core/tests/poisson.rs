use conisym::catalog::{make_xn, xn_names};
use conisym::poisson::{gradient, surface_bracket_from_f, xyz_names, PoissonError, PoissonMatrix};
use conisym::poly::{int, rat, GradingData, Monomial, Polynomial, Rational, WeightedDegree};
use conisym::{default_names, parse_poly};
use proptest::prelude::*;

/// Ring `x1..x5, t12, t13, ..., t45` with `Θ_ij = t_ij`.
fn generic_five() -> PoissonMatrix {
    let mut names = default_names(5);
    let mut upper = Vec::new();
    for i in 1..=5 {
        for j in i + 1..=5 {
            names.push(format!("t{}{}", i, j));
        }
    }
    let arity = names.len();
    let mut k = 5;
    for i in 0..5 {
        for j in i + 1..5 {
            upper.push(((i, j), Polynomial::var(arity, k)));
            k += 1;
        }
    }
    PoissonMatrix::from_upper(names, 5, upper).unwrap()
}

#[test]
fn golden_signs_five() {
    let theta = generic_five();
    let shown = [
        "t23*t45 - t24*t35 + t25*t34",
        "-t13*t45 + t14*t35 - t15*t34",
        "t12*t45 - t14*t25 + t15*t24",
        "-t12*t35 + t13*t25 - t15*t23",
        "t12*t34 - t13*t24 + t14*t23",
    ];
    let pf = theta.pfaffian_vector().unwrap();
    for (i, text) in shown.iter().enumerate() {
        assert_eq!(pf[i], theta.parse(text).unwrap(), "component {}", i + 1);
    }
}

#[test]
fn golden_signs_three() {
    let mut names = xyz_names();
    names.extend(["t12", "t13", "t23"].map(String::from));
    let v = |i| Polynomial::var(6, i);
    let theta = PoissonMatrix::from_upper(names, 3, [((0, 1), v(3)), ((0, 2), v(4)), ((1, 2), v(5))]).unwrap();
    let pf = theta.pfaffian_vector().unwrap();
    assert_eq!(pf, vec![v(5), -v(4), v(3)]);
}

#[test]
fn a_n_pfaffian_is_the_gradient() {
    let names = xyz_names();
    for n in 1..8 {
        let f = parse_poly(&format!("x^{} + y*z", n + 1), &names).unwrap();
        let theta = surface_bracket_from_f(&f, names.clone()).unwrap();
        assert_eq!(theta.entry(0, 1), &parse_poly("y", &names).unwrap());
        assert_eq!(theta.entry(0, 2), &parse_poly("-z", &names).unwrap());
        assert_eq!(theta.entry(1, 2), &parse_poly(&format!("{}*x^{}", n + 1, n), &names).unwrap());
        let expect = vec![parse_poly(&format!("{}*x^{}", n + 1, n), &names).unwrap(), parse_poly("z", &names).unwrap(), parse_poly("y", &names).unwrap()];
        assert_eq!(theta.pfaffian_vector().unwrap(), expect);
        assert_eq!(theta.check_pfaffian_condition(&f).unwrap(), int(1));
    }
}

#[test]
fn e8_entries() {
    let names = xyz_names();
    let f = parse_poly("x^5 + y^3 + z^2", &names).unwrap();
    let theta = surface_bracket_from_f(&f, names.clone()).unwrap();
    assert_eq!(theta.entry(0, 1), &parse_poly("2*z", &names).unwrap());
    assert_eq!(theta.entry(0, 2), &parse_poly("-3*y^2", &names).unwrap());
    assert_eq!(theta.entry(1, 2), &parse_poly("5*x^4", &names).unwrap());
    assert!(theta.jacobi_failures().is_empty());
}

#[test]
fn constant_surface_bracket() {
    let names = xyz_names();
    let theta = surface_bracket_from_f(&parse_poly("z", &names).unwrap(), names).unwrap();
    assert!(theta.entry(0, 1).is_constant());
    assert!(theta.jacobi_failures().is_empty());
    let two = parse_poly("x*y", &["x", "y"]).unwrap();
    assert!(matches!(surface_bracket_from_f(&two, vec!["x".into(), "y".into()]), Err(PoissonError::NotSurface(2))));
}

#[test]
fn xn_brackets() {
    let slice = make_xn(2, 2, int(0)).unwrap();
    let theta = &slice.theta;
    let p = |t: &str| theta.parse(t).unwrap();
    assert_eq!(theta.bracket(&p("x"), &p("h")).unwrap(), p("-2*x"));
    assert_eq!(theta.bracket(&p("e0"), &p("e1")).unwrap(), p("4*h^2 + 16*x*y"));
    assert!(theta.bracket(&slice.f, &slice.f).unwrap().is_zero());
    assert!(theta.jacobiator(0, 1, 2).unwrap().is_zero());
}

#[test]
fn xn_pfaffian_scalar() {
    for n in 2..=10 {
        let slice = make_xn(n, 2, int(0)).unwrap();
        assert!(slice.theta.jacobi_failures().is_empty(), "n = {}", n);
        // oracle: the e0-components fix the scalar
        let pf = slice.theta.pfaffian_vector().unwrap();
        let g = slice.f.derivative(3).unwrap();
        let (m, c) = g.max_term().unwrap();
        let lambda = pf[3].coefficient(m) / c;
        for (i, v) in pf.iter().enumerate() {
            assert_eq!(*v, slice.f.derivative(i).unwrap().scale(&lambda));
        }
        assert_eq!(slice.theta.check_pfaffian_condition(&slice.f).unwrap(), lambda);
        assert_eq!(lambda, int(-1));
        let bent = &slice.f + &slice.theta.var(0);
        assert!(slice.theta.check_pfaffian_condition(&bent).is_err());
    }
}

#[test]
fn derivative_formula_gives_unit_scalar() {
    let names = xyz_names();
    for text in ["x^3 + y^3 + z^2", "x^4*y + y^3 + z^2", "x^2*y + y^4 + z^2", "x*y*z + 2*x^3 - z^2"] {
        let f = parse_poly(text, &names).unwrap();
        let theta = surface_bracket_from_f(&f, names.clone()).unwrap();
        assert_eq!(theta.check_pfaffian_condition(&f).unwrap(), int(1), "{}", text);
    }
}

#[test]
fn kernel_examples() {
    let slice = make_xn(3, 2, int(0)).unwrap();
    let mut grad = gradient(&slice.f, 5);
    assert!(slice.theta.kernel_check(&grad));
    assert!(slice.theta.kernel_check(&vec![Polynomial::zero(5); 5]));
    grad[1] = Polynomial::zero(5);
    assert!(!slice.theta.kernel_check(&grad));
    assert!(!slice.theta.kernel_check(&grad[..4]));
}

#[test]
fn degree_homogeneity() {
    for n in 2..6 {
        let slice = make_xn(n, 2, int(0)).unwrap();
        assert!(slice.theta.check_degree_homogeneity(&slice.grading, Some(&slice.f)).all_pass());
        for (s, t) in [(1, rat(0, 1)), (3, rat(1, 2)), (4, int(1)), (6, int(2))] {
            if let Ok(sl) = make_xn(n, s, t.clone()) {
                assert!(sl.theta.check_degree_homogeneity(&sl.grading, Some(&sl.f)).all_pass(), "n={} s={} t={}", n, s, t);
            }
        }
        let flat = GradingData::new(1, vec![1; 5]);
        let report = slice.theta.check_degree_homogeneity(&flat, None);
        assert_eq!(report.failures(), vec![(3, 4)]);
    }
}

#[test]
fn json_round_trip() {
    let slice = make_xn(4, 3, rat(1, 2)).unwrap();
    let text = slice.theta.to_json(&slice.grading);
    let (back, grading) = PoissonMatrix::from_json(&text).unwrap();
    assert_eq!(back, slice.theta);
    assert_eq!(grading, slice.grading);
}

#[test]
fn golden_fixture() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/theta_2.json")).unwrap();
    let (theta, grading) = PoissonMatrix::from_json(&text).unwrap();
    let slice = make_xn(2, 2, int(0)).unwrap();
    assert_eq!(theta.names(), xn_names().as_slice());
    assert_eq!(theta, slice.theta);
    assert_eq!(grading, slice.grading);
}

#[test]
fn malformed_json() {
    assert!(PoissonMatrix::from_json("{").is_err());
    let bad_key = r#"{"vars":["x","y","z"],"s":1,"d":[1,1,1],"entries":{"2,1":"x"}}"#;
    assert!(PoissonMatrix::from_json(bad_key).is_err());
    let short = r#"{"vars":["x","y","z"],"s":1,"d":[1,1],"entries":{}}"#;
    assert!(PoissonMatrix::from_json(short).is_err());
}

/// `J_123` of the ansatz, by expanding the double brackets directly.
fn double_bracket_j123(theta: &PoissonMatrix) -> Polynomial {
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
    &(&b(&x(0), &b(&x(1), &x(2))) + &b(&x(1), &b(&x(2), &x(0)))) + &b(&x(2), &b(&x(0), &x(1)))
}

#[test]
fn ansatz_jacobiator_matches_expansion() {
    let (theta, _) = conisym::catalog::exceptional_ansatz();
    let arity = theta.arity();
    // keep a4 and a15, set every other parameter to zero
    let images: Vec<Polynomial> = (0..arity)
        .map(|i| if i < 5 || i == 5 + 3 || i == 5 + 14 { Polynomial::var(arity, i) } else { Polynomial::zero(arity) })
        .collect();
    let restricted = theta.map_entries(|p| p.substitute(&images).unwrap());
    assert_eq!(restricted.jacobiator(0, 1, 2).unwrap(), double_bracket_j123(&restricted));
    assert_eq!(theta.jacobiator(0, 1, 2).unwrap(), double_bracket_j123(&theta));
}

#[test]
fn bad_inputs() {
    let slice = make_xn(2, 2, int(0)).unwrap();
    assert!(matches!(slice.theta.jacobiator(0, 0, 1), Err(PoissonError::BadTriple(..))));
    assert!(matches!(slice.theta.jacobiator(0, 1, 5), Err(PoissonError::BadTriple(..))));
    assert!(slice.theta.bracket(&Polynomial::var(3, 0), &slice.f).is_err());
    let even = PoissonMatrix::standard_plane();
    assert!(matches!(even.pfaffian_vector(), Err(PoissonError::EvenSize(2))));
    let x = Polynomial::var(2, 0);
    let rows = vec![vec![Polynomial::zero(2), x.clone()], vec![x, Polynomial::zero(2)]];
    assert!(matches!(PoissonMatrix::from_rows(vec!["u".into(), "v".into()], rows), Err(PoissonError::NotSkew(0, 1))));
}

fn small_poly(arity: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((proptest::collection::vec(0u32..3, arity), -3i64..=3), 0..4)
        .prop_map(move |t| Polynomial::from_terms(arity, t.into_iter().map(|(e, c)| (Monomial::new(e), int(c)))))
}

fn skew(n: usize, arity: usize) -> impl Strategy<Value = PoissonMatrix> {
    proptest::collection::vec(small_poly(arity), n * (n - 1) / 2).prop_map(move |entries| {
        let mut upper = Vec::new();
        let mut it = entries.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                upper.push(((i, j), it.next().unwrap()));
            }
        }
        PoissonMatrix::from_upper(default_names(arity), n, upper).unwrap()
    })
}

/// Homogeneous polynomials of degree `deg` for `Θ_2` weights `(2,2,2,3,3)`.
fn xn_homogeneous(deg: u64) -> impl Strategy<Value = Polynomial> {
    let monos = conisym::normal_form::monomials_of_degree(5, &[0, 1, 2, 3, 4], &[2, 2, 2, 3, 3], deg);
    proptest::collection::vec(-3i64..=3, monos.len())
        .prop_map(move |cs| Polynomial::from_terms(5, monos.iter().cloned().zip(cs.into_iter().map(int))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pfaffian_lies_in_kernel_3(theta in skew(3, 3)) {
        prop_assert!(theta.kernel_check(&theta.pfaffian_vector().unwrap()));
    }

    #[test]
    fn pfaffian_lies_in_kernel_5(theta in skew(5, 5)) {
        prop_assert!(theta.kernel_check(&theta.pfaffian_vector().unwrap()));
    }

    #[test]
    fn bracket_axioms(f in small_poly(5), g in small_poly(5), h in small_poly(5), c in -4i64..4) {
        let theta = make_xn(2, 2, int(0)).unwrap().theta;
        let b = |p: &Polynomial, q: &Polynomial| theta.bracket(p, q).unwrap();
        prop_assert_eq!(b(&f, &g), -b(&g, &f));
        prop_assert_eq!(b(&f, &(&g + &h.scale(&int(c)))), &b(&f, &g) + &b(&f, &h).scale(&int(c)));
        prop_assert_eq!(b(&f, &(&g * &h)), &(&b(&f, &g) * &h) + &(&g * &b(&f, &h)));
        let jac = &(&b(&f, &b(&g, &h)) + &b(&g, &b(&h, &f))) + &b(&h, &b(&f, &g));
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn nambu_brackets_are_poisson(f in small_poly(3)) {
        let theta = surface_bracket_from_f(&f, xyz_names()).unwrap();
        prop_assert!(theta.jacobi_failures().is_empty());
        let grad = gradient(&f, 3);
        prop_assert_eq!(theta.pfaffian_vector().unwrap(), grad);
    }

    #[test]
    fn brackets_respect_the_grading((a, b, p, q) in (2u64..7, 2u64..7).prop_flat_map(|(a, b)| (Just(a), Just(b), xn_homogeneous(a), xn_homogeneous(b)))) {
        let slice = make_xn(2, 2, int(0)).unwrap();
        let weights: Vec<Rational> = slice.grading.d.iter().map(|&x| int(x as i64)).collect();
        let pq = slice.theta.bracket(&p, &q).unwrap();
        let deg = pq.homogeneous_degree(&weights).unwrap();
        prop_assert!(deg == WeightedDegree::Any || deg.admits(&int(a as i64 + b as i64 - 2)));
    }
}
