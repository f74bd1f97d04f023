use proptest::prelude::*;

use super::*;
use crate::exactalg::rational::{int, rat};
use crate::exactalg::{parse_polynomial, Polynomial, Rational, VarContext};
use crate::models::{ModelDef, ModelId, ParameterSet, RatFun, MODEL_ORDER};
use crate::sampling::ParamGrid;

fn sixd() -> ParameterSet {
    ParameterSet::sbg(int(1), int(10), rat(1, 5))
}

#[test]
fn repressilators_are_stable() {
    let rep = ParameterSet::sbg(rat(3, 10), int(4), rat(3, 5));
    for (id, p) in [(ModelId::Rep3d, rep), (ModelId::Fwd6d, sixd()), (ModelId::Bwd6d, sixd())] {
        let m = ModelDef::new(id, 1).unwrap();
        let r = classify(&m, &p).unwrap();
        assert_eq!(r.verdict, Verdict::AsymptoticallyStable, "{id}");
        assert_eq!(r.hurwitz_stable, Some(true));
        assert!(r.consistent);
        assert!(r.eigenvalues.iter().all(|z| z[0] < 0.0));
        assert!(r.closed_form_discrepancy.unwrap() < 1e-9, "{id}: {:?}", r.closed_form_discrepancy);
        assert_eq!(r.char_poly.len(), m.dim() + 1);
        if id == ModelId::Bwd6d {
            assert_eq!(r.linear_factor_positive, Some(true));
            assert!(!r.complex_pairs.is_empty());
        }
    }
}

#[test]
fn hill_models_get_decided_hurwitz_signs() {
    for id in [ModelId::Goodwin, ModelId::Elowitz] {
        let p = ParameterSet::defaults(id);
        let m = ModelDef::for_params(id, &p).unwrap();
        let r = classify(&m, &p).unwrap();
        assert!(r.hurwitz_stable.is_some(), "{id}");
        assert!(r.consistent, "{id}");
        assert!(r.closed_form_eigenvalues.is_none());
    }
}

#[test]
fn rep3d_hopf_formula_matches_hand_expansion() {
    let m = ModelDef::new(ModelId::Rep3d, 1).unwrap();
    let f = HopfFormula::for_model(&m).unwrap();
    let p = |t: &str| parse_polynomial(t, m.vars(), MODEL_ORDER).unwrap();
    assert_eq!(f.stationarity[0], p("-g*x*z - g*x + s*z + b + s"));
    let d = p("(1+x)^2*(1+y)^2*(1+z)^2");
    // a_3 = (g^3 D + b^3) / D and Delta_2 = (8 g^3 D - b^3) / D
    let same = |fr: &Fraction, num: &Polynomial, den: &Polynomial| &fr.num * den == num * &fr.den;
    assert!(same(&f.a_n, &(&(&p("g^3") * &d) + &p("b^3")), &d));
    let top = f.delta_top.as_ref().unwrap();
    assert!(same(top, &(&(&p("8*g^3") * &d) - &p("b^3")), &d));
    assert_eq!(f.delta_lower.len(), 1);
    assert!(same(&f.delta_lower[0], &p("3*g"), &p("1")));
    let states_degree = top.num.terms().iter().map(|(_, e)| e.exponents()[3..].iter().sum::<u32>()).max().unwrap();
    assert_eq!(states_degree, 6);
}

#[test]
fn one_dimensional_formula_is_false() {
    let vars = VarContext::new(&["s", "g", "x"]);
    let rhs = vec![RatFun::new(
        parse_polynomial("s - g*x", &vars, MODEL_ORDER).unwrap(),
        Polynomial::one(&vars, MODEL_ORDER),
    )];
    let f = HopfFormula::build(&vars, &[2], &rhs).unwrap();
    assert!(f.is_trivially_false());
    assert!(f.delta_lower.is_empty());
    // a_1 = g
    assert_eq!(f.a_n.num, parse_polynomial("g", &vars, MODEL_ORDER).unwrap());
    let v = f.evaluate(&[int(1), int(2), rat(1, 2)]).unwrap();
    assert!(v.stationary && v.a_n_positive && !v.satisfied);
}

#[test]
fn ratio_below_one_at_documented_point() {
    let p = ParameterSet::sbg(rat(1, 10), int(100), rat(1, 10));
    let r = ratio_report(&p).unwrap();
    assert!((r.re.abs() - 0.0531).abs() < 1e-4, "{}", r.re);
    assert!((r.im - 0.0813).abs() < 1e-4, "{}", r.im);
    assert!(r.ratio < 1.0);
    assert!(!r.claim_holds);
    assert!(r.stable);
}

#[test]
fn small_rep3d_scan_is_deterministic() {
    let m = ModelDef::new(ModelId::Rep3d, 1).unwrap();
    let f = HopfFormula::for_model(&m).unwrap();
    let g = ParamGrid::parse("s:1e-2:1e2:3,b:1e-2:1e2:3,g:1e-2:1e2:3", true).unwrap();
    let a = hopf_falsify(&m, &ParameterSet::new(), &ScanSpec::Grid(g.clone()), 42, Some(&f)).unwrap();
    let b = hopf_falsify(&m, &ParameterSet::new(), &ScanSpec::Grid(g), 42, Some(&f)).unwrap();
    assert!(a.witnesses.is_empty() && a.sign_changes.is_empty());
    assert_eq!(a.states_checked, 27);
    assert_eq!(a.formula_checked, 27);
    assert_eq!(a.formula_disagreements, 0);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(a.min_delta_top.unwrap() > 0.0);
}

#[test]
fn sixd_scan_without_formula() {
    let m = ModelDef::new(ModelId::Bwd6d, 1).unwrap();
    let spec = ScanSpec::Random { names: vec!["s".into(), "b".into(), "g".into()], lo: 1e-2, hi: 1e2, count: 12 };
    let r = hopf_falsify(&m, &ParameterSet::new(), &spec, 7, None).unwrap();
    assert_eq!(r.points, 12);
    assert!(r.witnesses.is_empty());
}

fn companion(c: &[Rational]) -> Vec<Vec<f64>> {
    // c = [1, a1, ..., an]
    let n = c.len() - 1;
    let mut m = vec![vec![0.0; n]; n];
    for j in 0..n {
        m[0][j] = -crate::exactalg::rational::to_f64(&c[j + 1]);
    }
    for i in 1..n {
        m[i][i - 1] = 1.0;
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn routh_hurwitz_agrees_with_eigenvalues(
        coeffs in proptest::collection::vec((-20i64..21, 1i64..5), 1..7)
    ) {
        let mut c = vec![int(1)];
        c.extend(coeffs.iter().map(|&(a, b)| rat(a, b)));
        let ev = eigen_numeric(&companion(&c)).unwrap();
        let max_re = ev.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
        // skip numerically ambiguous cases near the axis
        prop_assume!(max_re.abs() > 1e-6);
        prop_assert_eq!(hurwitz_stable(&c).unwrap(), Some(max_re < 0.0));
    }
}
