use proptest::prelude::*;
use crate::error::Error;
use crate::models::{ModelDef, ModelId, ParameterSet};

use super::*;
use crate::exactalg::rational::{int, rat};
use crate::sampling::ParamGrid;

fn damped_rep3d() -> (ModelDef, ParameterSet) {
    (ModelDef::new(ModelId::Rep3d, 1).unwrap(), ParameterSet::sbg(rat(3, 10), int(4), rat(3, 5)))
}

fn bwd6d_reference() -> (ModelDef, ParameterSet) {
    (ModelDef::new(ModelId::Bwd6d, 1).unwrap(), ParameterSet::sbg(int(1), int(10), rat(1, 5)))
}

const BWD6D_X0: [f64; 6] = [25.0, 23.0, 25.0, 30.5, 21.0, 30.0];

#[test]
fn linear_decay() {
    let o = Options { positive: false, ..Options::new(1.0) };
    let tr = integrate_fn(
        |x, out| {
            out[0] = -x[0];
            Ok(())
        },
        &[1.0],
        &o,
    )
    .unwrap();
    let e = (-1f64).exp();
    assert!((tr.last()[0] - e).abs() <= 10.0 * o.rel_tol * e);
    assert!(tr.t.windows(2).all(|w| w[0] < w[1]));
    let mid = tr.at(0.5).unwrap()[0];
    assert!((mid - (-0.5f64).exp()).abs() < 1e-7);
    let m = damping_metrics(&tr, &[1e-9]).unwrap();
    assert_eq!(m.crossings, vec![0]);
    assert_eq!(m.classification, Oscillation::Monotone);
}

#[test]
fn damped_rep3d_run() {
    let (m, p) = damped_rep3d();
    let tr = integrate(&m, &p, &[1.0, 2.0, 2.0], &Options::new(40.0)).unwrap();
    assert!(tr.last().iter().all(|x| (x - 2.438711).abs() < 1e-3), "{:?}", tr.last());
    assert!(tr.x.iter().flatten().all(|&v| v > 0.0));
    let dm = damping_metrics(&tr, &[2.438711180; 3]).unwrap();
    assert_eq!(dm.classification, Oscillation::DampedOscillation, "{dm:?}");
    assert!(dm.overshoot > 0.0);
}

#[test]
fn bwd6d_pairwise_decay() {
    let (m, p) = bwd6d_reference();
    let o = Options { max_step: Some(0.5), ..Options::new(60.0) };
    let tr = integrate(&m, &p, &BWD6D_X0, &o).unwrap();
    assert!(tr.last().iter().all(|x| (x - 29.58450).abs() < 1e-3), "{:?}", tr.last());
    let r = pairwise_decay_check(&tr, 0.2, 1e-6).unwrap();
    assert!(r.passed, "{r:?}");
    let x = tr.at(5.0).unwrap();
    assert!(((x[3] - x[2]) - 5.5 * (-1f64).exp()).abs() < 1e-5);
}

#[test]
fn equal_pairs_stay_equal() {
    let (m, p) = bwd6d_reference();
    let tr = integrate(&m, &p, &[3.0, 3.0, 1.0, 1.0, 2.0, 2.0], &Options::new(20.0)).unwrap();
    assert!(tr.x.iter().all(|x| x[0] == x[1] && x[2] == x[3] && x[4] == x[5]));
    assert!(pairwise_decay_check(&tr, 0.2, 1e-6).unwrap().passed);
}

#[test]
fn pairwise_rejects_rep3d() {
    let (m, p) = damped_rep3d();
    let tr = integrate(&m, &p, &[1.0, 2.0, 2.0], &Options::new(1.0)).unwrap();
    assert!(matches!(pairwise_decay_check(&tr, 0.6, 1e-6), Err(Error::Unsupported(_))));
}

#[test]
fn rejects_bad_inputs() {
    let (m, p) = damped_rep3d();
    assert!(matches!(integrate(&m, &p, &[1.0, -2.0, 2.0], &Options::new(1.0)), Err(Error::Precondition(_))));
    assert!(matches!(integrate(&m, &p, &[1.0, 2.0], &Options::new(1.0)), Err(Error::Precondition(_))));
    let o = Options { rel_tol: 0.0, ..Options::new(1.0) };
    assert!(integrate(&m, &p, &[1.0, 2.0, 2.0], &o).is_err());
}

#[test]
fn orthant_exit_is_an_error() {
    let o = Options::new(5.0);
    let r = integrate_fn(
        |_, out| {
            out[0] = -1.0;
            Ok(())
        },
        &[1.0],
        &o,
    );
    assert!(matches!(r, Err(Error::Integration(_))));
}

#[test]
fn tolerance_halving() {
    let (m, p) = damped_rep3d();
    let x0 = [1.0, 2.0, 2.0];
    let a = integrate(&m, &p, &x0, &Options { rel_tol: 1e-6, ..Options::new(20.0) }).unwrap();
    let b = integrate(&m, &p, &x0, &Options { rel_tol: 5e-7, ..Options::new(20.0) }).unwrap();
    let norm = a.last().iter().map(|v| v * v).sum::<f64>().sqrt();
    let diff = a.last().iter().zip(b.last()).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt();
    assert!(diff < 10.0 * 1e-6 * norm, "{diff}");
}

#[test]
fn csv_layout() {
    let (m, p) = damped_rep3d();
    let tr = integrate(&m, &p, &[1.0, 2.0, 2.0], &Options::new(1.0)).unwrap();
    let text = tr.to_csv().unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x1,x2,x3"));
    assert_eq!(lines.count(), tr.t.len());
}

#[test]
fn rep3d_sweep_is_stable_and_damped() {
    let spec = SweepSpec {
        model: ModelId::Rep3d,
        grid: ParamGrid::parse("s:0.25:0.35:2,b:3.5:4.5:2,g:0.5:0.7:2", false).unwrap(),
        base: ParameterSet::new(),
        x0: X0Policy::Fixed(vec![1.0, 2.0, 2.0]),
        seed: 1,
        t_end: None,
        eigen_only: false,
    };
    let rows = sweep(&spec).unwrap();
    assert_eq!(rows.len(), 8);
    for r in &rows {
        assert_eq!(r.verdict, Some(crate::stability::Verdict::AsymptoticallyStable), "{r:?}");
        assert_eq!(r.oscillation.as_deref(), Some("damped"), "{r:?}");
    }
    let csv = sweep_csv(&spec, &rows).unwrap();
    assert!(csv.starts_with("s,b,g,verdict,max_re,oscillation,converged,crossings_x1"));
}

#[test]
fn x0_policy_parse() {
    assert_eq!(X0Policy::parse("fixed:1,2,2").unwrap(), X0Policy::Fixed(vec![1.0, 2.0, 2.0]));
    assert_eq!(X0Policy::parse("perturb:0.2").unwrap(), X0Policy::Perturbed { rel: 0.2 });
    assert!(X0Policy::parse("random").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn positive_orthant_is_invariant(x in prop::collection::vec(1e-3f64..50.0, 3), s in 1i64..20, b in 1i64..40, g in 1i64..20) {
        let m = ModelDef::new(ModelId::Rep3d, 1).unwrap();
        let p = ParameterSet::sbg(rat(s, 10), rat(b, 10), rat(g, 10));
        let tr = integrate(&m, &p, &x, &Options::new(10.0)).unwrap();
        prop_assert!(tr.x.iter().flatten().all(|&v| v > 0.0));
        prop_assert!(tr.t.windows(2).all(|w| w[0] < w[1]));
    }
}

fn elowitz_rows(n: i64) -> Vec<SweepRow> {
    let base = ParameterSet::new().with("alpha0", int(0)).with("n", int(n));
    let spec = SweepSpec {
        model: ModelId::Elowitz,
        grid: ParamGrid::parse("alpha:1:1e4:10,beta:0.1:10:10", true).unwrap(),
        base,
        x0: X0Policy::Perturbed { rel: 0.1 },
        seed: 1,
        t_end: None,
        eigen_only: true,
    };
    sweep(&spec).unwrap()
}

#[test]
fn elowitz_hill_two_has_both_regions() {
    let rows = elowitz_rows(2);
    assert!(rows.iter().all(|r| r.error.is_none()));
    let unstable = rows.iter().filter(|r| r.verdict == Some(crate::stability::Verdict::Unstable)).count();
    assert!(unstable > 0 && unstable < rows.len(), "{unstable}");
}

#[test]
fn elowitz_hill_one_is_stable() {
    let rows = elowitz_rows(1);
    assert!(rows.iter().all(|r| r.verdict == Some(crate::stability::Verdict::AsymptoticallyStable)));
}
