use std::path::Path;

use serde_json::{json, Value};
use steadycert_core::certify::{
    allwright_check, certify_bwd6d, certify_fwd6d, certify_rep3d, certify_sampled, verify_decompositions,
    CertificateReport, CertifyOptions, Decomposition, SampleSpec,
};
use steadycert_core::exactalg::{IdealJson, TermOrder};
use steadycert_core::groebner::{buchberger, groebner, Budget, Ideal};
use steadycert_core::models::{steady_states, Coordinate, ModelConfig, ModelDef, ModelId, ParameterSet};
use steadycert_core::sampling::{parse_range, ParamGrid};
use steadycert_core::simulate::{default_t_end, integrate, sweep, sweep_csv, Options, SweepSpec, X0Policy};
use steadycert_core::stability::{classify, hopf_falsify, HopfFormula, ScanSpec, Verdict};

use crate::output::{envelope, write_json, write_text};
use crate::{Cli, Command, Format, ModelArgs, Order};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] steadycert_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

type Outcome = Result<u8, CliError>;

/// Exit status for a run whose mathematical expectation did not hold.
const VIOLATED: u8 = 2;

fn resolve(args: &ModelArgs) -> Result<(ModelId, ParameterSet), CliError> {
    let (model, params) = match &args.config {
        Some(path) => {
            let cfg = ModelConfig::parse(&std::fs::read_to_string(path)?)?;
            if let Some(m) = &args.model {
                if ModelId::parse(m)? != cfg.model {
                    return Err(CliError::Usage(format!("--model {m} disagrees with the model in {}", path.display())));
                }
            }
            (cfg.model, cfg.params)
        }
        None => {
            let m = args.model.as_deref().ok_or_else(|| CliError::Usage("--model or --config is required".into()))?;
            let model = ModelId::parse(m)?;
            let p = match &args.params {
                Some(text) => ParameterSet::parse_assignments(text)?,
                None => ParameterSet::defaults(model),
            };
            (model, p)
        }
    };
    params.validate(model)?;
    Ok((model, params))
}

fn budget(cli: &Cli) -> Budget {
    let d = Budget::default();
    Budget::new(cli.budget_pairs.or(d.max_pairs), cli.budget_secs.or(d.max_seconds)).env_override()
}

fn set_jobs(cli: &Cli, parallel: bool) {
    let n = cli.jobs.unwrap_or(if parallel { 0 } else { 1 });
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
}

fn coordinate_text(c: &Coordinate) -> String {
    match c {
        Coordinate::Surd(q) => q.to_string(),
        Coordinate::Algebraic(a) => format!("root of {} in [{}, {}]", a.poly, a.interval.lo, a.interval.hi),
    }
}

fn in_memory(cli: &Cli) -> Option<&Path> {
    cli.out.as_deref()
}

pub fn run(cli: &Cli, argv: &[String]) -> Outcome {
    let budget = budget(cli);
    let parallel = matches!(cli.command, Command::HopfScan { .. } | Command::Certify { .. } | Command::Sweep { .. });
    set_jobs(cli, parallel);
    match &cli.command {
        Command::SteadyStates { model } => steady(cli, argv, &budget, model),
        Command::Stability { model } => stability(cli, argv, &budget, model),
        Command::HopfScan { model, grid, log, samples, range, formula } => {
            hopf_scan(cli, argv, &budget, model, grid.as_deref(), *log, *samples, range, *formula)
        }
        Command::Certify { model, samples, range, gb_cross_check, allwright } => {
            certify(cli, argv, &budget, model, *samples, range, *gb_cross_check, *allwright)
        }
        Command::VerifyDecomposition { which, samples } => {
            let which = Decomposition::parse(which)?;
            let report = verify_decompositions(which, cli.seed, *samples, &budget)?;
            let ok = report.all_passed;
            write_json(in_memory(cli), &envelope("verify-decomposition", argv, cli.seed, &budget, report)?)?;
            Ok(if ok { 0 } else { VIOLATED })
        }
        Command::Simulate { model, init, t_end, rel_tol, abs_tol, max_step, format } => {
            let init = init.as_deref().ok_or_else(|| CliError::Usage("--init is required".into()))?;
            let (id, p) = resolve(model)?;
            let x0: Vec<f64> = init
                .split(',')
                .map(|s| s.trim().parse::<f64>().map_err(|e| CliError::Usage(format!("--init {s:?}: {e}"))))
                .collect::<Result<_, _>>()?;
            let m = ModelDef::for_params(id, &p)?;
            let o = Options {
                rel_tol: *rel_tol,
                abs_tol: *abs_tol,
                max_step: *max_step,
                ..Options::new(t_end.unwrap_or_else(|| default_t_end(id)))
            };
            let tr = integrate(&m, &p, &x0, &o)?;
            match format {
                Format::Csv => write_text(in_memory(cli), &tr.to_csv()?)?,
                Format::Json => write_json(in_memory(cli), &envelope("simulate", argv, cli.seed, &budget, &tr)?)?,
            }
            Ok(0)
        }
        Command::Sweep { model, grid, log, x0, t_end, eigen_only, format } => {
            let id = ModelId::parse(model.model.as_deref().ok_or_else(|| CliError::Usage("--model is required".into()))?)?;
            let base = match &model.params {
                Some(t) => ParameterSet::parse_assignments(t)?,
                None => ParameterSet::defaults(id),
            };
            let spec = SweepSpec {
                model: id,
                grid: ParamGrid::parse(grid, *log)?,
                base,
                x0: X0Policy::parse(x0)?,
                seed: cli.seed,
                t_end: *t_end,
                eigen_only: *eigen_only,
            };
            let rows = sweep(&spec)?;
            match format {
                Format::Csv => write_text(in_memory(cli), &sweep_csv(&spec, &rows)?)?,
                Format::Json => write_json(in_memory(cli), &envelope("sweep", argv, cli.seed, &budget, &rows)?)?,
            }
            Ok(0)
        }
        Command::Groebner { input, order, reduce } => {
            let j = IdealJson::parse(&std::fs::read_to_string(input)?)?;
            let ord = match order {
                Order::Lex => TermOrder::Lex,
                Order::Degrevlex => TermOrder::DegRevLex,
            };
            let ideal = Ideal::from_json(&j, ord)?;
            let gb = if *reduce { groebner(&ideal, ord, &budget)? } else { buchberger(&ideal, ord, &budget)? };
            let result = json!({
                "order": format!("{order:?}").to_lowercase(),
                "reduced": gb.reduced,
                "unit": gb.is_unit(),
                "stats": gb.stats,
                "basis": IdealJson::from_polys(j.name.as_deref(), gb.vars(), &gb.basis),
            });
            write_json(in_memory(cli), &envelope("groebner", argv, cli.seed, &budget, result)?)?;
            Ok(0)
        }
    }
}

fn steady(cli: &Cli, argv: &[String], budget: &Budget, args: &ModelArgs) -> Outcome {
    let (id, p) = resolve(args)?;
    let m = ModelDef::for_params(id, &p)?;
    let states = steady_states(&m, &p)?;
    let mut list = Vec::new();
    for st in &states {
        list.push(json!({
            "label": st.label,
            "coords": st.coords_f64(),
            "exact": st.coords.iter().map(coordinate_text).collect::<Vec<_>>(),
            "positive": st.positive,
            "residual": st.residual_f64(&m, &p)?,
            "vanishes_exactly": st.vanishes_exactly(&m, &p)?,
        }));
    }
    let positive = states.iter().filter(|s| s.positive).count();
    let result = json!({
        "model": id,
        "params": p.to_json_value(),
        "states": list,
        "positive_count": positive,
    });
    write_json(in_memory(cli), &envelope("steady-states", argv, cli.seed, budget, result)?)?;
    Ok(if id.is_repressilator() && positive != 1 { VIOLATED } else { 0 })
}

fn stability(cli: &Cli, argv: &[String], budget: &Budget, args: &ModelArgs) -> Outcome {
    let (id, p) = resolve(args)?;
    let m = ModelDef::for_params(id, &p)?;
    let r = classify(&m, &p)?;
    let ok = r.consistent && (!id.is_repressilator() || r.verdict == Verdict::AsymptoticallyStable);
    write_json(in_memory(cli), &envelope("stability", argv, cli.seed, budget, r)?)?;
    Ok(if ok { 0 } else { VIOLATED })
}

#[allow(clippy::too_many_arguments)]
fn hopf_scan(
    cli: &Cli,
    argv: &[String],
    budget: &Budget,
    args: &ModelArgs,
    grid: Option<&str>,
    log: bool,
    samples: Option<usize>,
    range: &str,
    formula: bool,
) -> Outcome {
    let id = ModelId::parse(args.model.as_deref().ok_or_else(|| CliError::Usage("--model is required".into()))?)?;
    let base = match &args.params {
        Some(t) => ParameterSet::parse_assignments(t)?,
        None => ParameterSet::defaults(id),
    };
    let spec = match (grid, samples) {
        (Some(g), _) => ScanSpec::Grid(ParamGrid::parse(g, log)?),
        (None, Some(n)) => {
            let (lo, hi) = parse_range(range)?;
            let names = id.param_names().iter().map(|s| s.to_string()).collect();
            ScanSpec::Random { names, lo, hi, count: n }
        }
        (None, None) => return Err(CliError::Usage("hopf-scan needs --grid or --samples".into())),
    };
    let m = ModelDef::for_params(id, &base)?;
    let f = if formula { Some(HopfFormula::for_model(&m)?) } else { None };
    let r = hopf_falsify(&m, &base, &spec, cli.seed, f.as_ref())?;
    let ok = r.formula_disagreements == 0 && (!id.is_repressilator() || r.witnesses.is_empty());
    write_json(in_memory(cli), &envelope("hopf-scan", argv, cli.seed, budget, r)?)?;
    Ok(if ok { 0 } else { VIOLATED })
}

fn report_ok(r: &CertificateReport) -> bool {
    r.failures == 0 && r.flags.unique_positive && r.flags.symmetric != Some(false) && r.flags.no_positive_on_j1 != Some(false)
}

#[allow(clippy::too_many_arguments)]
fn certify(
    cli: &Cli,
    argv: &[String],
    budget: &Budget,
    args: &ModelArgs,
    samples: Option<usize>,
    range: &str,
    gb_cross_check: Option<usize>,
    allwright: bool,
) -> Outcome {
    let report = match samples {
        Some(count) => {
            let id =
                ModelId::parse(args.model.as_deref().ok_or_else(|| CliError::Usage("--model is required".into()))?)?;
            let (lo, hi) = parse_range(range)?;
            let opts = CertifyOptions { budget: *budget, gb_cross_check: gb_cross_check.unwrap_or(usize::MAX) };
            certify_sampled(id, &SampleSpec { count, lo, hi, seed: cli.seed }, &opts)?
        }
        None => {
            let (id, p) = resolve(args)?;
            match id {
                ModelId::Rep3d => certify_rep3d(&p)?,
                ModelId::Fwd6d => certify_fwd6d(&p)?,
                ModelId::Bwd6d => certify_bwd6d(&p)?,
                other => return Err(CliError::Usage(format!("certify supports rep3d, fwd6d and bwd6d, not {other}"))),
            }
        }
    };
    let mut ok = report_ok(&report);
    let mut extra = Value::Null;
    if allwright {
        if report.model != ModelId::Rep3d {
            return Err(CliError::Usage("--allwright applies to rep3d".into()));
        }
        let mut checks = Vec::new();
        for s in &report.samples {
            let p = ParameterSet::from_json_value(&s.params)?;
            let a = allwright_check(&p)?;
            ok &= a.holds;
            checks.push(a);
        }
        extra = serde_json::to_value(checks)?;
    }
    let mut result = serde_json::to_value(&report)?;
    if allwright {
        result["allwright"] = extra;
    }
    write_json(in_memory(cli), &envelope("certify", argv, cli.seed, budget, result)?)?;
    Ok(if ok { 0 } else { VIOLATED })
}
