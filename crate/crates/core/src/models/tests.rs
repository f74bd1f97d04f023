use std::cmp::Ordering;

use super::*;
use crate::exactalg::rational::{int, rat};
use num_traits::Zero;

use crate::exactalg::{Field, QuadSurd, Ring};

fn rep3d_params() -> ParameterSet {
    ParameterSet::sbg(rat(3, 10), int(4), rat(3, 5))
}

fn sixd_params() -> ParameterSet {
    ParameterSet::sbg(int(1), int(10), rat(1, 5))
}

fn poly(m: &ModelDef, text: &str) -> Polynomial {
    parse_polynomial(text, m.vars(), MODEL_ORDER).unwrap()
}

#[test]
fn rep3d_rhs_by_substitution() {
    let m = ModelDef::new(ModelId::Rep3d, 1).unwrap();
    let v = m.rhs_exact(&rep3d_params(), &[int(1), int(2), int(2)]).unwrap();
    assert_eq!(v[0], rat(31, 30));
    assert_eq!(m.stationarity_numerators()[0], poly(&m, "s + s*z + b - g*x - g*x*z"));
    assert!(matches!(m.rhs_exact(&rep3d_params(), &[int(1), int(2), int(-1)]), Err(Error::Domain(_))));
}

#[test]
fn reduced_sets_match_expanded_forms() {
    let fwd = ModelDef::new(ModelId::Fwd6d, 1).unwrap().reduced_numerators().unwrap();
    let p = |t: &str| parse_polynomial(t, &fwd.vars, MODEL_ORDER).unwrap();
    assert_eq!(
        fwd.polys,
        vec![
            p("s + b*x1 - g*x1 + s*x1 - g*x1^2 + s*x5 - g*x1*x5"),
            p("s + s*x1 + b*x3 - g*x3 + s*x3 - g*x1*x3 - g*x3^2"),
            p("s + s*x3 + b*x5 - g*x5 + s*x5 - g*x3*x5 - g*x5^2"),
        ]
    );
    let bwd = ModelDef::new(ModelId::Bwd6d, 1).unwrap().reduced_numerators().unwrap();
    assert_eq!(
        bwd.polys,
        vec![
            p("s - g*x1 + b*x3 + s*x3 - g*x1*x3 + s*x5 - g*x1*x5"),
            p("s + s*x1 - g*x3 - g*x1*x3 + b*x5 + s*x5 - g*x3*x5"),
            p("s + b*x1 + s*x1 + s*x3 - g*x5 - g*x1*x5 - g*x3*x5"),
        ]
    );
    assert!(ModelDef::new(ModelId::Rep3d, 1).unwrap().reduced_numerators().is_none());
}

#[test]
fn pairwise_difference_law() {
    for id in [ModelId::Fwd6d, ModelId::Bwd6d] {
        let m = ModelDef::new(id, 1).unwrap();
        assert_eq!(m.symmetry().len(), 3);
        for &(i, j) in m.symmetry() {
            let (fi, fj) = (&m.rhs()[i], &m.rhs()[j]);
            assert_eq!(fi.den, fj.den);
            let xi = Polynomial::var(m.vars(), MODEL_ORDER, m.state_index(i));
            let xj = Polynomial::var(m.vars(), MODEL_ORDER, m.state_index(j));
            let g = poly(&m, "g");
            let lhs = &fi.num - &fj.num;
            let rhs = &(&(-&g) * &(&xi - &xj)) * &fi.den;
            assert_eq!(lhs, rhs, "{id} pair ({i}, {j})");
        }
    }
}

#[test]
fn rep3d_closed_forms() {
    let p = rep3d_params();
    let m = ModelDef::new(ModelId::Rep3d, 1).unwrap();
    let pts = closed_form_steady_states(ModelId::Rep3d, &p).unwrap();
    let (a, b) = (&pts[0], &pts[1]);
    assert!(!a.positive && b.positive);
    assert!(a.coords[0].sign() == Ordering::Less);
    let bx = b.coords_f64()[0];
    assert!((bx - 2.438711).abs() < 1e-6);
    assert!(b.residual_f64(&m, &p).unwrap() < 1e-12);
    assert_eq!(b.vanishes_exactly(&m, &p).unwrap(), Some(true));
    assert_eq!(a.vanishes_exactly(&m, &p).unwrap(), Some(true));
    let rhs = m.rhs_f64(&p, &b.coords_f64()).unwrap();
    assert!(rhs.iter().all(|v| v.abs() < 1e-12));
    // u = sqrt(10.41)
    let u = match &b.coords[0] {
        Coordinate::Surd(q) => q.d.clone(),
        _ => unreachable!(),
    };
    assert_eq!(u, rat(1041, 100));
}

#[test]
fn sixd_closed_forms() {
    let p = sixd_params();
    for id in [ModelId::Fwd6d, ModelId::Bwd6d] {
        let m = ModelDef::new(id, 1).unwrap();
        let pts = closed_form_steady_states(id, &p).unwrap();
        let (f, h) = (&pts[0], &pts[1]);
        assert!(f.positive && !h.positive);
        assert!((f.coords_f64()[0] - 29.58450).abs() < 1e-5);
        assert!((h.coords_f64()[0] + 0.084504).abs() < 1e-6);
        assert_eq!(f.vanishes_exactly(&m, &p).unwrap(), Some(true));
        assert_eq!(h.vanishes_exactly(&m, &p).unwrap(), Some(true));
        let rhs = m.rhs_f64(&p, &f.coords_f64()).unwrap();
        assert!(rhs.iter().all(|v| v.abs() < 1e-12));
        match &f.coords[0] {
            Coordinate::Surd(q) => assert_eq!(q.d, rat(14084, 100)),
            _ => unreachable!(),
        }
    }
}

#[test]
fn closed_forms_agree_with_newton() {
    // Newton on the stationarity numerators from a nearby start
    let p = rep3d_params();
    let m = ModelDef::new(ModelId::Rep3d, 1).unwrap();
    let pf: Vec<f64> = p.values_for(m.id).unwrap().iter().map(crate::exactalg::rational::to_f64).collect();
    let mut x = vec![2.0, 3.0, 2.5];
    for _ in 0..50 {
        let f = m.rhs_in(&pf, &x).unwrap();
        let j = m.jacobian_in(&pf, &x).unwrap();
        let jm = nalgebra::DMatrix::from_fn(3, 3, |r, c| j[r][c]);
        let dx = jm.lu().solve(&nalgebra::DVector::from_vec(f)).unwrap();
        for k in 0..3 {
            x[k] -= dx[k];
        }
    }
    let b = closed_form_steady_states(ModelId::Rep3d, &p).unwrap()[1].coords_f64();
    for k in 0..3 {
        assert!((x[k] - b[k]).abs() < 1e-10);
    }
}

#[test]
fn jacobian_structure() {
    let p = rep3d_params();
    let m = ModelDef::new(ModelId::Rep3d, 1).unwrap();
    let st = [int(1), int(2), int(3)];
    let j = m.jacobian_exact(&p, &st).unwrap();
    let g = rat(3, 5);
    for i in 0..3 {
        assert_eq!(j[i][i], -&g);
    }
    assert!(j[0][1].is_zero() && j[1][2].is_zero() && j[2][0].is_zero());
    // d/dz of b/(1+z) at z = 3
    assert_eq!(j[0][2], -int(4) / int(16));
    assert_eq!(j[1][0], -int(4) / int(4));
    let bwd = ModelDef::new(ModelId::Bwd6d, 1).unwrap();
    let st: Vec<Rational> = (1..=6).map(int).collect();
    let j = bwd.jacobian_exact(&sixd_params(), &st).unwrap();
    for i in [0, 2, 4] {
        assert_eq!(j[i][i], -rat(1, 5));
    }
}

#[test]
fn char_poly_at_zero_is_signed_determinant() {
    for id in ModelId::ALL {
        let p = ParameterSet::defaults(id);
        let m = ModelDef::for_params(id, &p).unwrap();
        let st: Vec<Rational> = (0..m.dim()).map(|k| rat(k as i64 + 1, 2)).collect();
        let cp = m.char_poly(&p, &st).unwrap();
        assert_eq!(cp.degree(), Some(m.dim()));
        assert_eq!(cp.lc(), Some(&int(1)));
        let j = m.jacobian_exact(&p, &st).unwrap();
        let det = crate::exactalg::matrix::determinant(&j);
        let sign = if m.dim() % 2 == 0 { int(1) } else { int(-1) };
        assert_eq!(cp.eval(&int(0)), sign * det);
    }
}

fn surd_char_poly(m: &ModelDef, p: &ParameterSet, x: &QuadSurd) -> Vec<QuadSurd> {
    let params: Vec<QuadSurd> = p.values_for(m.id).unwrap().into_iter().map(|v| QuadSurd::rational(v, &x.d)).collect();
    let j = m.jacobian_in(&params, &vec![x.clone(); m.dim()]).unwrap();
    char_poly_coeffs(&j)
}

fn horner(c: &[QuadSurd], t: &QuadSurd) -> QuadSurd {
    c.iter().fold(t.zero_like(), |acc, a| acc.mul_ref(t).add_ref(a))
}

#[test]
fn fwd6d_eigenvalues_at_f() {
    let p = sixd_params();
    let m = ModelDef::new(ModelId::Fwd6d, 1).unwrap();
    let (f, _) = sixd_points(&p).unwrap();
    let cp = surd_char_poly(&m, &p, &f);
    let g = QuadSurd::rational(rat(1, 5), &f.d);
    let b = QuadSurd::rational(int(10), &f.d);
    let one = g.one_like();
    let two = one.add_ref(&one);
    let w = one.add_ref(&two.mul_ref(&f));
    // -g is a root of multiplicity three
    let shifted = |c: &[QuadSurd]| -> Vec<QuadSurd> {
        // synthetic division by (lambda + g)
        let mut out = Vec::new();
        let mut acc = g.zero_like();
        for a in c {
            acc = acc.mul_ref(&g.neg_ref()).add_ref(a);
            out.push(acc.clone());
        }
        out
    };
    let mut c = cp.clone();
    for _ in 0..3 {
        let d = shifted(&c);
        assert!(d.last().unwrap().vanishes());
        c = d[..d.len() - 1].to_vec();
    }
    // kappa_4 = -g + b / (1 + 2f)^2
    let k4 = g.neg_ref().add_ref(&b.div(&w.mul_ref(&w)).unwrap());
    assert!(horner(&cp, &k4).vanishes());
}

#[test]
fn bwd6d_char_poly_factorization() {
    let p = sixd_params();
    let m = ModelDef::new(ModelId::Bwd6d, 1).unwrap();
    let (f, _) = sixd_points(&p).unwrap();
    let cp = surd_char_poly(&m, &p, &f);
    let c = |r: Rational| QuadSurd::rational(r, &f.d);
    let (g, b, one) = (c(rat(1, 5)), c(int(10)), c(int(1)));
    let w = one.add_ref(&c(int(2)).mul_ref(&f));
    let w2 = w.mul_ref(&w);
    let w4 = w2.mul_ref(&w2);
    // polynomials in u as coefficient vectors, highest first
    let mul = |a: &[QuadSurd], b: &[QuadSurd]| -> Vec<QuadSurd> {
        let mut out = vec![g.zero_like(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
            }
        }
        out
    };
    let lin_g = vec![one.clone(), g.clone()];
    let mut prod = mul(&mul(&lin_g, &lin_g), &lin_g);
    prod = mul(&prod, &[w2.clone(), b.neg_ref().add_ref(&g.mul_ref(&w2))]);
    let f2 = f.mul_ref(&f);
    let quad = vec![
        w4.clone(),
        w2.mul_ref(&b.add_ref(&c(int(2)).mul_ref(&g).mul_ref(&w2))),
        g.mul_ref(&g)
            .mul_ref(&w4)
            .add_ref(&b.mul_ref(&g).mul_ref(&w2))
            .add_ref(&b.mul_ref(&b).mul_ref(&one.add_ref(&c(int(3)).mul_ref(&f)).add_ref(&c(int(3)).mul_ref(&f2)))),
    ];
    prod = mul(&prod, &quad);
    let w6 = w4.mul_ref(&w2);
    let scaled: Vec<QuadSurd> = prod.iter().map(|a| a.div(&w6).unwrap()).collect();
    assert_eq!(scaled.len(), cp.len());
    for (x, y) in scaled.iter().zip(&cp) {
        assert!(x.sub_ref(y).vanishes(), "{x} vs {y}");
    }
}

#[test]
fn elowitz_with_unit_hill_matches_rep3d() {
    let e = ModelDef::new(ModelId::Elowitz, 1).unwrap().symmetric_equation().unwrap();
    let r = ModelDef::new(ModelId::Rep3d, 1).unwrap().symmetric_equation().unwrap();
    let ctx = VarContext::new(&["s", "b", "u"]);
    // alpha0 -> s, alpha -> b, beta absent
    let e = e.map_vars(&ctx, &[0, 1, 0, 2], MODEL_ORDER);
    assert!(!e.involves(1) || e.degree_in(1) == 1);
    let r = r.specialize(&[("g", int(1))]).unwrap().embed(&ctx, MODEL_ORDER).unwrap();
    assert_eq!(e, r);
}

#[test]
fn goodwin_and_elowitz_fixed_points() {
    for id in [ModelId::Goodwin, ModelId::Elowitz] {
        let p = ParameterSet::defaults(id);
        let m = ModelDef::for_params(id, &p).unwrap();
        let st = symmetric_fixed_point(&m, &p).unwrap();
        assert!(st.positive);
        let x = st.coords_f64();
        let rhs = m.rhs_f64(&p, &x).unwrap();
        let scale = x.iter().fold(1.0f64, |a, v| a.max(v.abs()));
        assert!(rhs.iter().all(|v| v.abs() < 1e-10 * scale), "{id}: {rhs:?}");
    }
    let p = ParameterSet::defaults(ModelId::Elowitz).with("n", int(1));
    let m = ModelDef::for_params(ModelId::Elowitz, &p).unwrap();
    let u = symmetric_fixed_point(&m, &p).unwrap().coords_f64()[0];
    // rep3d B with s = alpha0, b = alpha, g = 1
    let q = ParameterSet::sbg(rat(1, 5), int(200), int(1));
    let b = closed_form_steady_states(ModelId::Rep3d, &q).unwrap()[1].coords_f64()[0];
    assert!((u - b).abs() < 1e-9 * b);
}

#[test]
fn compiled_matches_exact() {
    for id in ModelId::ALL {
        let p = ParameterSet::defaults(id);
        let m = ModelDef::for_params(id, &p).unwrap();
        let c = m.compile(&p).unwrap();
        let st: Vec<f64> = (0..m.dim()).map(|k| 0.5 + k as f64 * 0.7).collect();
        let mut out = vec![0.0; m.dim()];
        c.eval(&st, &mut out).unwrap();
        let exact = m.rhs_f64(&p, &st).unwrap();
        for k in 0..m.dim() {
            assert!((out[k] - exact[k]).abs() < 1e-9 * exact[k].abs().max(1.0));
        }
    }
}
