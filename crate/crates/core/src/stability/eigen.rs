use std::cmp::Ordering;

use nalgebra::{Complex, DMatrix, Schur};

use crate::error::{Error, Result};
use crate::exactalg::rational::int;
use crate::exactalg::{Field, OrderedField, QuadSurd, Ring};
use crate::models::{rep3d_points, sixd_points, ModelId, ParameterSet};

pub type C64 = Complex<f64>;

/// Eigenvalues of a real square matrix via a real Schur decomposition,
/// sorted by real part, then imaginary part.
pub fn eigen_numeric(j: &[Vec<f64>]) -> Result<Vec<C64>> {
    let n = j.len();
    if n == 0 || j.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition("eigenvalues need a square nonempty matrix".into()));
    }
    if j.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("matrix has non-finite entries".into()));
    }
    let m = DMatrix::from_fn(n, n, |r, c| j[r][c]);
    let norm = m.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE);
    // Francis iterations can stall on symmetric spectra; a diagonal shift
    // breaks the symmetry
    let mut found = None;
    for shift in [0.0, 0.1, 0.37, -0.23, 1.3] {
        let sigma = shift * norm;
        let sh = &m + DMatrix::<f64>::identity(n, n) * sigma;
        if let Some(schur) = Schur::try_new(sh, f64::EPSILON, 2000) {
            let ev: Vec<C64> = quasi_triangular_eigenvalues(&schur.unpack().1).iter().map(|z| z - sigma).collect();
            if ev.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                found = Some(ev);
                break;
            }
        }
    }
    let mut ev = found.ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
    sort_eigen(&mut ev);
    Ok(ev)
}

/// Eigenvalues of the 1x1 and 2x2 diagonal blocks of a real Schur factor.
fn quasi_triangular_eigenvalues(t: &DMatrix<f64>) -> Vec<C64> {
    let n = t.nrows();
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        if i + 1 == n || t[(i + 1, i)] == 0.0 {
            out.push(C64::new(t[(i, i)], 0.0));
            i += 1;
            continue;
        }
        let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
        let mean = 0.5 * (a + d);
        let disc = 0.25 * (a - d) * (a - d) + b * c;
        if disc >= 0.0 {
            let r = disc.sqrt();
            out.push(C64::new(mean - r, 0.0));
            out.push(C64::new(mean + r, 0.0));
        } else {
            let r = (-disc).sqrt();
            out.push(C64::new(mean, -r));
            out.push(C64::new(mean, r));
        }
        i += 2;
    }
    out
}

pub fn sort_eigen(ev: &mut [C64]) {
    ev.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal).then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal)));
}

/// Exact eigenvalue: a real number in `Q(sqrt d)` or a conjugate pair with
/// real part and squared imaginary part in `Q(sqrt d)`.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactEigen {
    Real(QuadSurd),
    Pair { re: QuadSurd, im_sq: QuadSurd },
}

impl ExactEigen {
    pub fn re(&self) -> &QuadSurd {
        match self {
            ExactEigen::Real(r) => r,
            ExactEigen::Pair { re, .. } => re,
        }
    }

    /// One value for a real eigenvalue, two for a pair.
    pub fn values(&self) -> Vec<C64> {
        match self {
            ExactEigen::Real(r) => vec![C64::new(r.to_f64(), 0.0)],
            ExactEigen::Pair { re, im_sq } => {
                let im = im_sq.to_f64().max(0.0).sqrt();
                vec![C64::new(re.to_f64(), -im), C64::new(re.to_f64(), im)]
            }
        }
    }
}

pub fn flatten(ev: &[ExactEigen]) -> Vec<C64> {
    let mut out: Vec<C64> = ev.iter().flat_map(ExactEigen::values).collect();
    sort_eigen(&mut out);
    out
}

fn constant(v: i64, like: &QuadSurd) -> QuadSurd {
    QuadSurd::rational(int(v), &like.d)
}

/// Closed-form eigenvalues at the positive steady state of a repressilator model.
pub fn eigen_closed_form(m: ModelId, p: &ParameterSet) -> Result<Vec<ExactEigen>> {
    p.validate(m)?;
    let (s, b, g) = (p.s()?.clone(), p.b()?.clone(), p.g()?.clone());
    match m {
        ModelId::Rep3d => {
            let (_, bpt) = rep3d_points(p)?;
            let u = QuadSurd::sqrt(&bpt.d);
            let q = |r: &crate::exactalg::Rational| QuadSurd::rational(r.clone(), &u.d);
            let (s, g) = (q(&s), q(&g));
            let sum = g.add_ref(&s).add_ref(&u);
            let two_sum = constant(2, &u).mul_ref(&sum);
            let l1 = constant(-2, &u).mul_ref(&g).mul_ref(&u).div(&sum).unwrap();
            let three = constant(3, &u);
            let re = g
                .neg_ref()
                .mul_ref(&three.mul_ref(&g).add_ref(&three.mul_ref(&s)).add_ref(&u))
                .div(&two_sum)
                .unwrap();
            let im = g.mul_ref(&g.add_ref(&s).sub_ref(&u)).div(&two_sum).unwrap();
            let im_sq = three.mul_ref(&im).mul_ref(&im);
            Ok(vec![ExactEigen::Real(l1), ExactEigen::Pair { re, im_sq }])
        }
        ModelId::Fwd6d => {
            let (f, _) = sixd_points(p)?;
            let q = |r: &crate::exactalg::Rational| QuadSurd::rational(r.clone(), &f.d);
            let (b, g) = (q(&b), q(&g));
            let w = constant(1, &f).add_ref(&constant(2, &f).mul_ref(&f));
            let w2 = w.mul_ref(&w);
            let k4 = g.neg_ref().add_ref(&b.div(&w2).unwrap());
            let two_w2 = constant(2, &f).mul_ref(&w2);
            let re = g
                .neg_ref()
                .add_ref(&b.mul_ref(&constant(2, &f).add_ref(&constant(3, &f).mul_ref(&f))).div(&two_w2).unwrap());
            let im = b.mul_ref(&f).div(&two_w2).unwrap();
            let im_sq = constant(3, &f).mul_ref(&im).mul_ref(&im);
            let mg = ExactEigen::Real(g.neg_ref());
            Ok(vec![mg.clone(), mg.clone(), mg, ExactEigen::Real(k4), ExactEigen::Pair { re, im_sq }])
        }
        ModelId::Bwd6d => {
            let fac = bwd6d_factors(p)?;
            let mg = ExactEigen::Real(fac.g.neg_ref());
            let four_w8 = constant(4, &fac.w).mul_ref(&fac.quad[0]).mul_ref(&fac.quad[0]);
            let re = fac.quad[1].neg_ref().div(&constant(2, &fac.w).mul_ref(&fac.quad[0])).unwrap();
            let im_sq = fac.discriminant.neg_ref().div(&four_w8).unwrap();
            Ok(vec![mg.clone(), mg.clone(), mg, ExactEigen::Real(fac.linear_root.clone()), ExactEigen::Pair { re, im_sq }])
        }
        _ => Err(Error::Unsupported(format!("no closed-form eigenvalues for {m}"))),
    }
}

/// Factors of the bwd6d characteristic polynomial at `F`:
/// `(lambda + g)^3 (w^2 lambda - b + g w^2) (q0 lambda^2 + q1 lambda + q2) / w^6`
/// with `w = 1 + 2f`.
#[derive(Clone, Debug)]
pub struct Bwd6dFactors {
    pub f: QuadSurd,
    pub g: QuadSurd,
    pub w: QuadSurd,
    /// `-b + g w^2`; positive exactly when the linear-factor root is negative.
    pub linear_constant: QuadSurd,
    pub linear_root: QuadSurd,
    pub quad: [QuadSurd; 3],
    pub discriminant: QuadSurd,
}

pub fn bwd6d_factors(p: &ParameterSet) -> Result<Bwd6dFactors> {
    let (f, _) = sixd_points(p)?;
    let q = |r: &crate::exactalg::Rational| QuadSurd::rational(r.clone(), &f.d);
    let (b, g) = (q(p.b()?), q(p.g()?));
    let c = |v: i64| constant(v, &f);
    let w = c(1).add_ref(&c(2).mul_ref(&f));
    let w2 = w.mul_ref(&w);
    let w4 = w2.mul_ref(&w2);
    let linear_constant = b.neg_ref().add_ref(&g.mul_ref(&w2));
    let linear_root = linear_constant.neg_ref().div(&w2).unwrap();
    let f2 = f.mul_ref(&f);
    let q0 = w4.clone();
    let q1 = w2.mul_ref(&b.add_ref(&c(2).mul_ref(&g).mul_ref(&w2)));
    let q2 = g
        .mul_ref(&g)
        .mul_ref(&w4)
        .add_ref(&b.mul_ref(&g).mul_ref(&w2))
        .add_ref(&b.mul_ref(&b).mul_ref(&c(1).add_ref(&c(3).mul_ref(&f)).add_ref(&c(3).mul_ref(&f2))));
    let discriminant = q1.mul_ref(&q1).sub_ref(&c(4).mul_ref(&q0).mul_ref(&q2));
    Ok(Bwd6dFactors { f, g, w, linear_constant, linear_root, quad: [q0, q1, q2], discriminant })
}

/// Pairs each closed-form value with its nearest unused numeric value and
/// returns the largest relative distance.
pub fn max_relative_discrepancy(closed: &[C64], numeric: &[C64]) -> f64 {
    let mut used = vec![false; numeric.len()];
    let mut worst = 0.0f64;
    for c in closed {
        let mut best = (f64::INFINITY, usize::MAX);
        for (k, v) in numeric.iter().enumerate() {
            if !used[k] {
                let d = (c - v).norm();
                if d < best.0 {
                    best = (d, k);
                }
            }
        }
        if best.1 == usize::MAX {
            return f64::INFINITY;
        }
        used[best.1] = true;
        worst = worst.max(best.0 / c.norm().max(f64::MIN_POSITIVE));
    }
    worst
}
