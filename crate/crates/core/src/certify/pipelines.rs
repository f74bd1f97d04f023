use std::cmp::Ordering;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::data;
use super::solve::{solve_zero_dim, ShapeForm};
use crate::error::{Error, Result};
use crate::exactalg::rational::{format_rational, int, rat, to_f64};
use crate::exactalg::{Monomial, Polynomial, QuadSurd, Rational, VarContext};
use crate::groebner::Budget;
use crate::models::{rep3d_points, sixd_points, ModelDef, ModelId, ParameterSet};
use crate::realroots::{isolate_roots, Domain, IntervalJson, IsolatingInterval, UniPoly};
use crate::sampling::log_uniform_samples;

/// Largest width of a reported coordinate enclosure.
pub fn enclosure_width() -> Rational {
    rat(1, 1_000_000_000)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleSpec {
    pub count: usize,
    pub lo: f64,
    pub hi: f64,
    pub seed: u64,
}

/// A certified real solution: root of `defining_polynomial` in `root`,
/// coordinates `x_k = coordinate_polynomials[k](t)`.
#[derive(Clone, Debug, Serialize)]
pub struct PointCert {
    pub label: Option<String>,
    pub approx: Vec<f64>,
    pub defining_polynomial: String,
    pub separating_form: Vec<String>,
    pub coordinate_polynomials: Vec<String>,
    pub root: IntervalJson,
    pub enclosures: Vec<IntervalJson>,
    pub max_width: f64,
    /// The closed form satisfies the defining data exactly and lies in
    /// every enclosure.
    pub exact_match: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchSummary {
    pub name: String,
    pub defining_polynomial: String,
    pub leading_coefficient: Option<String>,
    pub real_solutions: usize,
    pub positive: usize,
    pub excluded: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleResult {
    pub index: usize,
    pub params: Value,
    pub real_solutions: usize,
    pub positive: Vec<PointCert>,
    /// Real solutions outside the open positive orthant.
    pub excluded: Vec<Vec<f64>>,
    pub unique_positive: bool,
    /// Every positive point has equal reduced coordinates (6D models).
    pub symmetric: Option<bool>,
    pub branches: Vec<BranchSummary>,
    /// Positive triples on the J1 branch (bwd6d).
    pub j1_positive: Option<usize>,
    /// Direct Gröbner enumeration agrees with the branch analysis (bwd6d).
    pub gb_agrees: Option<bool>,
    pub gb_pairs: usize,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Flags {
    pub unique_positive: bool,
    pub symmetric: Option<bool>,
    pub no_positive_on_j1: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub method: String,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, method: &str, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, method: method.into(), detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub model: ModelId,
    pub sampling: Option<SampleSpec>,
    pub samples: Vec<SampleResult>,
    pub checks: Vec<Check>,
    pub flags: Flags,
    pub failures: usize,
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub budget: Budget,
    /// For bwd6d, the first this many samples are also solved by a direct
    /// Gröbner basis.
    pub gb_cross_check: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { budget: Budget::from_env(), gb_cross_check: usize::MAX }
    }
}

fn require_positive(m: ModelId, p: &ParameterSet) -> Result<()> {
    p.validate(m).map_err(|e| Error::Precondition(e.to_string()))
}

fn assignments(p: &ParameterSet) -> Result<Vec<(&'static str, Rational)>> {
    Ok(vec![("s", p.s()?.clone()), ("b", p.b()?.clone()), ("g", p.g()?.clone())])
}

fn specialize_all(polys: &[Polynomial], p: &ParameterSet) -> Result<Vec<Polynomial>> {
    let a = assignments(p)?;
    polys.iter().map(|f| f.specialize(&a)).collect()
}

fn interval_json(lo: &Rational, hi: &Rational) -> IntervalJson {
    IsolatingInterval { lo: lo.clone(), hi: hi.clone(), multiplicity_free: true }.to_json()
}

fn between(lo: &Rational, hi: &Rational, x: &QuadSurd) -> bool {
    use crate::exactalg::{OrderedField, Ring};
    let l = QuadSurd::rational(lo.clone(), &x.d);
    let h = QuadSurd::rational(hi.clone(), &x.d);
    x.sub_ref(&l).sign() != Ordering::Less && h.sub_ref(x).sign() != Ordering::Less
}

fn point_cert(shape: &ShapeForm, root: &IsolatingInterval, closed: Option<(&str, &[QuadSurd])>) -> PointCert {
    let eps = enclosure_width();
    let (root, boxes) = shape.enclosure(root, &eps);
    let max_width = boxes.iter().map(|(a, b)| to_f64(&(b - a))).fold(0.0, f64::max);
    let approx = boxes.iter().map(|(a, b)| to_f64(&((a + b) / int(2)))).collect();
    let (label, exact_match) = match closed {
        Some((name, xs)) => {
            let ok = shape.is_point(&root, xs) && boxes.iter().zip(xs).all(|((a, b), x)| between(a, b, x));
            (Some(name.to_string()), ok)
        }
        None => (None, false),
    };
    PointCert {
        label,
        approx,
        defining_polynomial: shape.eliminant.to_string(),
        separating_form: shape.form.iter().map(format_rational).collect(),
        coordinate_polynomials: (0..shape.coords.len()).map(|k| shape.coordinate(k).to_string()).collect(),
        root: root.to_json(),
        enclosures: boxes.iter().map(|(a, b)| interval_json(a, b)).collect(),
        max_width,
        exact_match,
    }
}

/// Coordinates at the midpoint of the isolating interval; informational.
fn approx_point(shape: &ShapeForm, root: &IsolatingInterval) -> Vec<f64> {
    let mid = root.midpoint();
    (0..shape.coords.len()).map(|k| to_f64(&shape.coordinate(k).eval(&mid))).collect()
}

struct Enumeration {
    real: usize,
    positive: Vec<PointCert>,
    positive_roots: Vec<IsolatingInterval>,
    excluded: Vec<Vec<f64>>,
}

fn enumerate(shape: &ShapeForm, closed: Option<(&str, &[QuadSurd])>) -> Enumeration {
    let pts = shape.real_points();
    let mut out = Enumeration { real: pts.len(), positive: Vec::new(), positive_roots: Vec::new(), excluded: Vec::new() };
    for pt in pts {
        if pt.positive() {
            out.positive.push(point_cert(shape, &pt.root, closed));
            out.positive_roots.push(pt.root);
        } else {
            out.excluded.push(approx_point(shape, &pt.root));
        }
    }
    out
}

fn empty_result(index: usize, p: &ParameterSet) -> SampleResult {
    SampleResult {
        index,
        params: p.to_json_value(),
        real_solutions: 0,
        positive: Vec::new(),
        excluded: Vec::new(),
        unique_positive: false,
        symmetric: None,
        branches: Vec::new(),
        j1_positive: None,
        gb_agrees: None,
        gb_pairs: 0,
        error: None,
    }
}

fn rep3d_sample(index: usize, p: &ParameterSet, opts: &CertifyOptions) -> Result<SampleResult> {
    let md = ModelDef::new(ModelId::Rep3d, 1)?;
    let sys = specialize_all(&md.stationarity_numerators(), p)?;
    let shape = solve_zero_dim(&sys, &opts.budget)?;
    let (_, b) = rep3d_points(p)?;
    let closed = vec![b; 3];
    let e = enumerate(&shape, Some(("B", &closed)));
    let mut r = empty_result(index, p);
    r.real_solutions = e.real;
    r.unique_positive = e.positive.len() == 1 && e.positive[0].exact_match;
    r.positive = e.positive;
    r.excluded = e.excluded;
    r.gb_pairs = shape.pairs_processed;
    Ok(r)
}

/// Exact equality of the reduced coordinates at every positive point.
fn symmetric_at(shape: &ShapeForm, roots: &[IsolatingInterval]) -> bool {
    let ctx = &shape.vars;
    let ord = crate::exactalg::TermOrder::Lex;
    let diff = |i: usize, j: usize| &Polynomial::var(ctx, ord, i) - &Polynomial::var(ctx, ord, j);
    roots.iter().all(|r| shape.vanishes_at(&diff(0, 1), r) && shape.vanishes_at(&diff(1, 2), r))
}

fn reduced_system(m: ModelId) -> Result<Vec<Polynomial>> {
    Ok(ModelDef::new(m, 1)?.reduced_numerators().expect("6D model").polys)
}

fn fwd6d_sample(index: usize, p: &ParameterSet, opts: &CertifyOptions) -> Result<SampleResult> {
    let sys = specialize_all(&reduced_system(ModelId::Fwd6d)?, p)?;
    let shape = solve_zero_dim(&sys, &opts.budget)?;
    let (f, _) = sixd_points(p)?;
    let closed = vec![f; 3];
    let e = enumerate(&shape, Some(("F", &closed)));
    let mut r = empty_result(index, p);
    r.real_solutions = e.real;
    r.symmetric = Some(symmetric_at(&shape, &e.positive_roots));
    r.unique_positive = e.positive.len() == 1 && e.positive[0].exact_match;
    r.positive = e.positive;
    r.excluded = e.excluded;
    r.gb_pairs = shape.pairs_processed;
    Ok(r)
}

fn linear_in(h: &Polynomial, var: usize, x5: usize) -> Result<(Rational, UniPoly)> {
    let mut e = vec![0u32; h.nvars()];
    e[var] = 1;
    let c = h.coefficient(&Monomial::new(e.clone()));
    if c.is_zero() || h.degree_in(var) != 1 {
        return Err(Error::Precondition(format!("{h} is not linear in {}", h.vars().names()[var])));
    }
    let rest = h - &Polynomial::var(h.vars(), h.order(), var).scale(&c);
    Ok((c.clone(), UniPoly::from_polynomial(&rest, x5)?.scale(&-c.recip())))
}

fn x5_only(h: &Polynomial) -> bool {
    !h.involves(0) && !h.involves(1)
}

fn branch_shape(vars: &VarContext, poly: UniPoly, coords: Vec<UniPoly>) -> ShapeForm {
    let eliminant = poly.squarefree();
    let roots = isolate_roots(&eliminant, &Domain::All);
    ShapeForm {
        vars: vars.clone(),
        form: vec![Rational::zero(), Rational::zero(), Rational::one()],
        eliminant,
        coords,
        roots,
        pairs_processed: 0,
    }
}

/// The J1 branch at `p`: the cubic `h1` in `x5`, then `x3` from `h2` and
/// `x1` from `h3`.
pub fn j1_branch(p: &ParameterSet) -> Result<(ShapeForm, Rational)> {
    let j1 = data::ideal(data::J1_H123, "J1")?.specialize(&assignments(p)?)?;
    let vars = j1.vars().clone();
    let (x1, x3, x5) = (0, 1, 2);
    let gens = j1.generators();
    let h1 = gens.iter().find(|h| x5_only(h)).ok_or_else(|| Error::Parse("J1 has no cubic in x5".into()))?;
    let h2 = gens.iter().find(|h| h.involves(x3)).ok_or_else(|| Error::Parse("J1 has no h2".into()))?;
    let h3 = gens.iter().find(|h| h.involves(x1)).ok_or_else(|| Error::Parse("J1 has no h3".into()))?;
    let cubic = UniPoly::from_polynomial(h1, x5)?;
    let lc = cubic.lc().cloned().unwrap_or_else(Rational::zero);
    assert!(!lc.is_zero() && cubic.degree() == Some(3), "h1 degenerates at positive parameters");
    let (_, r3) = linear_in(h2, x3, x5)?;
    let (_, r1) = linear_in(h3, x1, x5)?;
    let x = UniPoly::new(vec![Rational::zero(), Rational::one()]);
    Ok((branch_shape(&vars, cubic, vec![r1, r3, x]), lc))
}

/// The J2 branch: the quadratic in `x5` with `x1 = x3 = x5`.
pub fn j2_branch(p: &ParameterSet) -> Result<ShapeForm> {
    let j2 = data::ideal(data::J1_H123, "J2")?.specialize(&assignments(p)?)?;
    let vars = j2.vars().clone();
    let q = j2
        .generators()
        .iter()
        .find(|h| x5_only(h))
        .ok_or_else(|| Error::Parse("J2 has no quadratic in x5".into()))?;
    let quad = UniPoly::from_polynomial(q, 2)?;
    let x = UniPoly::new(vec![Rational::zero(), Rational::one()]);
    Ok(branch_shape(&vars, quad, vec![x.clone(), x.clone(), x]))
}

fn summary(name: &str, shape: &ShapeForm, lc: Option<&Rational>, e: &Enumeration) -> BranchSummary {
    BranchSummary {
        name: name.into(),
        defining_polynomial: shape.eliminant.to_string(),
        leading_coefficient: lc.map(format_rational),
        real_solutions: e.real,
        positive: e.positive.len(),
        excluded: e.excluded.clone(),
    }
}

fn bwd6d_sample(index: usize, p: &ParameterSet, opts: &CertifyOptions) -> Result<SampleResult> {
    let (f, _) = sixd_points(p)?;
    let closed = vec![f; 3];
    let cf = Some(("F", closed.as_slice()));
    let (j1, lc) = j1_branch(p)?;
    let e1 = enumerate(&j1, cf);
    let j2 = j2_branch(p)?;
    let e2 = enumerate(&j2, cf);
    let mut r = empty_result(index, p);
    r.branches = vec![summary("J1", &j1, Some(&lc), &e1), summary("J2", &j2, None, &e2)];
    r.j1_positive = Some(e1.positive.len());
    r.real_solutions = e1.real + e2.real;
    let branch_ok = e1.positive.is_empty() && e2.positive.len() == 1 && e2.positive[0].exact_match;
    r.symmetric = Some(symmetric_at(&j1, &e1.positive_roots) && symmetric_at(&j2, &e2.positive_roots));
    r.excluded = e1.excluded.into_iter().chain(e2.excluded).collect();
    r.unique_positive = branch_ok;
    r.positive = e1.positive.into_iter().chain(e2.positive).collect();
    if index < opts.gb_cross_check {
        let sys = specialize_all(&reduced_system(ModelId::Bwd6d)?, p)?;
        let shape = solve_zero_dim(&sys, &opts.budget)?;
        let eg = enumerate(&shape, cf);
        let agrees = eg.positive.len() == 1 && eg.positive[0].exact_match;
        r.gb_agrees = Some(agrees);
        r.gb_pairs = shape.pairs_processed;
        r.unique_positive &= agrees;
    }
    Ok(r)
}

/// Certifies one parameter point; failures are recorded in the result.
pub fn certify_sample(m: ModelId, index: usize, p: &ParameterSet, opts: &CertifyOptions) -> SampleResult {
    let run = match m {
        ModelId::Rep3d => rep3d_sample(index, p, opts),
        ModelId::Fwd6d => fwd6d_sample(index, p, opts),
        ModelId::Bwd6d => bwd6d_sample(index, p, opts),
        _ => Err(Error::Unsupported(format!("no certification pipeline for {m}"))),
    };
    run.unwrap_or_else(|e| {
        let mut r = empty_result(index, p);
        r.error = Some(e.to_string());
        r
    })
}

fn sample_passed(r: &SampleResult) -> bool {
    r.error.is_none() && r.unique_positive && r.symmetric != Some(false) && r.j1_positive.unwrap_or(0) == 0 && r.gb_agrees != Some(false)
}

/// Certification over explicit parameter points, in parallel, reported in
/// input order.
pub fn certify_points(
    m: ModelId,
    points: &[ParameterSet],
    sampling: Option<SampleSpec>,
    opts: &CertifyOptions,
) -> Result<CertificateReport> {
    for p in points {
        require_positive(m, p)?;
    }
    if !m.is_repressilator() {
        return Err(Error::Unsupported(format!("no certification pipeline for {m}")));
    }
    let samples: Vec<SampleResult> =
        points.par_iter().enumerate().map(|(i, p)| certify_sample(m, i, p, opts)).collect();
    let failures = samples.iter().filter(|r| !sample_passed(r)).count();
    let flags = Flags {
        unique_positive: samples.iter().all(|r| r.error.is_none() && r.unique_positive),
        symmetric: (m != ModelId::Rep3d).then(|| samples.iter().all(|r| r.symmetric == Some(true))),
        no_positive_on_j1: (m == ModelId::Bwd6d).then(|| samples.iter().all(|r| r.j1_positive == Some(0))),
    };
    let checks = symmetry_check(m)?.into_iter().collect();
    Ok(CertificateReport { model: m, sampling, samples, checks, flags, failures })
}

/// Pairwise law `d(x_i - x_j)/dt = -g (x_i - x_j)` as a polynomial
/// identity after clearing denominators.
fn symmetry_check(m: ModelId) -> Result<Option<Check>> {
    let md = ModelDef::new(m, 1)?;
    if md.symmetry().is_empty() {
        return Ok(None);
    }
    let vars = md.vars();
    let ord = crate::models::MODEL_ORDER;
    let g = Polynomial::var_named(vars, ord, "g")?;
    let ok = md.symmetry().iter().all(|&(i, j)| {
        let (fi, fj) = (&md.rhs()[i], &md.rhs()[j]);
        let lhs = &(&fi.num * &fj.den) - &(&fj.num * &fi.den);
        let xi = Polynomial::var(vars, ord, md.state_index(i));
        let xj = Polynomial::var(vars, ord, md.state_index(j));
        let rhs = &(&(&g * &(&xj - &xi)) * &fi.den) * &fj.den;
        lhs == rhs
    });
    Ok(Some(Check::new("pairwise-symmetry", ok, "symbolic", "d(x_i - x_j)/dt = -g (x_i - x_j) for the paired states")))
}

pub fn certify_rep3d(p: &ParameterSet) -> Result<CertificateReport> {
    certify_points(ModelId::Rep3d, std::slice::from_ref(p), None, &CertifyOptions::default())
}

pub fn certify_fwd6d(p: &ParameterSet) -> Result<CertificateReport> {
    certify_points(ModelId::Fwd6d, std::slice::from_ref(p), None, &CertifyOptions::default())
}

pub fn certify_bwd6d(p: &ParameterSet) -> Result<CertificateReport> {
    certify_points(ModelId::Bwd6d, std::slice::from_ref(p), None, &CertifyOptions::default())
}

/// Seeded log-uniform sampling of `(s, b, g)` followed by certification.
pub fn certify_sampled(m: ModelId, spec: &SampleSpec, opts: &CertifyOptions) -> Result<CertificateReport> {
    let points = log_uniform_samples(&["s", "b", "g"], spec.lo, spec.hi, spec.count, spec.seed)?;
    certify_points(m, &points, Some(spec.clone()), opts)
}
