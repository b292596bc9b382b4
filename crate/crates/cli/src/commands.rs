//! The four subcommands, each producing a [`Table`] or a list of reports.

use std::f64::consts::PI;

use ptosc::oracle::{check_suite, default_validation_params, OracleGrid, OracleReport};
use ptosc::probabilities::{
    cardioid_r, cardioid_ratio, closed_form_at_phase, hermitian_at_phase, hermitian_scaled_masses, naive_at_phase,
    probability_trace, pt_scaled_masses,
};
use ptosc::{eigensystem, EigenSystem, Flavour, Method, ModelError, ModelParams};

use crate::config::SweepConfig;
use crate::error::CliError;
use crate::output::Table;

/// Methods in column order, independent of the order they were requested in.
const METHOD_ORDER: [Method; 4] = [
    Method::ClosedForm,
    Method::Trace,
    Method::Hermitian,
    Method::NaiveContinuation,
];

fn columns_for(method: Method) -> &'static [&'static str] {
    match method {
        Method::ClosedForm => &["pt_survival", "pt_transition"],
        Method::Trace => &["trace_survival", "trace_transition"],
        Method::Hermitian => &["herm_survival", "herm_transition"],
        Method::NaiveContinuation => &["naive_transition"],
    }
}

/// The parameter sets swept over: the raw triple if given, otherwise one
/// η-parameterised set per η value.
fn sweep_params(cfg: &SweepConfig) -> Result<Vec<ModelParams>, CliError> {
    match &cfg.raw_params {
        Some(p) => Ok(vec![*p]),
        None => cfg
            .eta
            .values()
            .into_iter()
            .map(|eta| ModelParams::from_eta(eta, cfg.ratio, cfg.mass_sum, 0.0).map_err(CliError::from))
            .collect(),
    }
}

fn check_pt_domain(eta: f64) -> Result<(), CliError> {
    if eta > 1.0 {
        return Err(ModelError::BrokenPtPhase { eta }.into());
    }
    Ok(())
}

fn check_hermitian_domain(eta: f64, ratio: f64) -> Result<(), CliError> {
    let (_, lower) = hermitian_scaled_masses(eta, ratio);
    if lower <= 0.0 {
        return Err(ModelError::TachyonicMass { m_minus_sq: lower }.into());
    }
    Ok(())
}

/// Survival and transition probabilities from flavour 1 over an η × ϑ grid.
/// The trace columns evolve from `t0` to `t0 + 2ϑ/Δω`.
pub fn cmd_probabilities(cfg: &SweepConfig) -> Result<Table, CliError> {
    let methods: Vec<Method> = METHOD_ORDER.into_iter().filter(|m| cfg.methods.contains(m)).collect();
    let mut columns = vec!["eta", "phase"];
    for &m in &methods {
        columns.extend_from_slice(columns_for(m));
    }
    let mut table = Table::new(columns);
    let phases = cfg.phase.values();
    let (one, two) = (Flavour::One, Flavour::Two);

    for params in sweep_params(cfg)? {
        let eta = params.eta();
        check_pt_domain(eta)?;
        let es: Option<EigenSystem> = if methods.contains(&Method::Trace) {
            Some(eigensystem(&params)?)
        } else {
            None
        };
        if methods.contains(&Method::Hermitian) {
            check_hermitian_domain(eta, params.ratio())?;
        }

        for &phase in &phases {
            let mut row = vec![Some(eta), Some(phase)];
            for &m in &methods {
                match m {
                    Method::ClosedForm => {
                        row.push(Some(closed_form_at_phase(one, one, eta, phase)));
                        row.push(Some(closed_form_at_phase(one, two, eta, phase)));
                    }
                    Method::Trace => {
                        let es = es.as_ref().expect("eigensystem built for trace");
                        let t = cfg.t0 + 2.0 * phase / es.delta_omega();
                        row.push(Some(probability_trace(one, one, cfg.t0, t, es)?.value));
                        row.push(Some(probability_trace(one, two, cfg.t0, t, es)?.value));
                    }
                    Method::Hermitian => {
                        row.push(Some(hermitian_at_phase(one, one, eta, phase)));
                        row.push(Some(hermitian_at_phase(one, two, eta, phase)));
                    }
                    Method::NaiveContinuation => {
                        row.push(Some(naive_at_phase(one, two, eta, phase)?));
                    }
                }
            }
            table.push(row);
        }
    }
    Ok(table)
}

/// Squared eigenmasses of both models divided by `m1² + m2²`. The PT
/// columns are empty in the broken phase.
pub fn cmd_masses(cfg: &SweepConfig) -> Result<Table, CliError> {
    let mut table = Table::new(vec!["eta", "pt_plus", "pt_minus", "herm_plus", "herm_minus"]);
    let (etas, ratio) = match &cfg.raw_params {
        Some(p) => (vec![p.eta()], p.ratio()),
        None => (cfg.eta.values(), cfg.ratio),
    };
    for eta in etas {
        let pt = pt_scaled_masses(eta, ratio);
        let (hp, hm) = hermitian_scaled_masses(eta, ratio);
        table.push(vec![Some(eta), pt.map(|m| m.0), pt.map(|m| m.1), Some(hp), Some(hm)]);
    }
    Ok(table)
}

/// Dirac-norm cardioid `r(ϑ)` and `r(ϑ)/r(π)`.
pub fn cmd_cardioid(cfg: &SweepConfig) -> Result<Table, CliError> {
    let mut table = Table::new(vec!["eta", "phase", "r", "r_ratio"]);
    let etas = match &cfg.raw_params {
        Some(p) => vec![p.eta()],
        None => cfg.eta.values(),
    };
    let phases = cfg.phase.values();
    for eta in etas {
        cardioid_r(PI, eta)?;
        for &phase in &phases {
            table.push(vec![
                Some(eta),
                Some(phase),
                Some(cardioid_r(phase, eta)?),
                Some(cardioid_ratio(phase, eta)?),
            ]);
        }
    }
    Ok(table)
}

/// Runs the oracle suite. With no explicit parameters the built-in
/// validation set is used.
pub fn cmd_validate(params: Option<Vec<ModelParams>>, tolerance: Option<f64>) -> Vec<OracleReport> {
    let params = params.unwrap_or_else(default_validation_params);
    let grid = OracleGrid {
        tolerance_override: tolerance,
        ..OracleGrid::default()
    };
    check_suite(&params, &grid)
}

pub fn validation_params(cfg: &SweepConfig, explicit_eta: bool) -> Result<Option<Vec<ModelParams>>, CliError> {
    if cfg.raw_params.is_some() || explicit_eta {
        Ok(Some(sweep_params(cfg)?))
    } else {
        Ok(None)
    }
}

pub fn render_reports_text(reports: &[OracleReport]) -> String {
    let width = reports.iter().map(|r| r.check_name.len()).max().unwrap_or(5).max(5);
    let mut out = format!(
        "{:<width$}  {:>12}  {:>10}  {:>7}  status\n",
        "check", "max_error", "tolerance", "points"
    );
    for r in reports {
        out.push_str(&format!(
            "{:<width$}  {:>12.3e}  {:>10.1e}  {:>7}  {}\n",
            r.check_name,
            r.max_abs_error,
            r.tolerance,
            r.grid_size,
            if r.passed { "ok" } else { "FAIL" }
        ));
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    out.push_str(&format!("{} checks, {} failed\n", reports.len(), failed));
    out
}

pub fn render_reports_json(reports: &[OracleReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialise");
    s.push('\n');
    s
}
