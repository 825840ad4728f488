use std::io::Write;
use std::process::ExitCode;

use coherent_core::analytic::{
    analytic_evolved_wavefunction, coherent_wavefunction, default_fock_truncation, evolve_label,
    fock_coefficients, fock_synthesize, phaseless_evolved_wavefunction, phaseless_gaussian,
};
use coherent_core::propagator::{fock_evolve, split_step_evolve, PropagationPlan};
use coherent_core::verify::{fidelity, run_full_suite, Check, SuiteConfig};
use coherent_core::{CoherentLabel, Grid, PhysicalParams, WaveFunction};
use serde_json::{json, Value};

use crate::config::{CliError, EvolveArgs, Format, Method, RunConfig, VerifyArgs, WavefnArgs};
use crate::output::{self, float, io_error, write_meta, TOOL};

/// Exit status of a command that ran to completion.
pub enum Status {
    Ok,
    ChecksFailed,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => ExitCode::SUCCESS,
            Status::ChecksFailed => ExitCode::from(1),
        }
    }
}

fn alpha_text(label: &CoherentLabel) -> String {
    let a = label.alpha();
    format!("{} {}", float(a.re), float(a.im))
}

fn base_meta(command: &str, config: &RunConfig, grid: &Grid) -> Vec<(&'static str, String)> {
    let p = &config.params;
    vec![
        ("tool", TOOL.to_string()),
        ("command", command.to_string()),
        (
            "units",
            format!("hbar={} mass={} omega={}", p.hbar(), p.mass(), p.omega()),
        ),
        (
            "grid",
            format!(
                "n={} x_min={} x_max={} sigma_mult={}",
                grid.len(),
                float(grid.x_min()),
                float(grid.x_max()),
                config.sigma_mult
            ),
        ),
        ("steps_per_period", config.steps_per_period.to_string()),
    ]
}

/// Closed form at `t`. At `t = 0` the initial state is returned without any
/// evolution so that every path writes identical data there.
fn closed_form(
    label: &CoherentLabel,
    t: f64,
    phaseless: bool,
    params: &PhysicalParams,
    grid: &Grid,
) -> Result<WaveFunction, CliError> {
    Ok(match (t == 0.0, phaseless) {
        (true, false) => coherent_wavefunction(label, params, grid)?,
        (true, true) => phaseless_gaussian(label, params, grid)?,
        (false, false) => analytic_evolved_wavefunction(label, t, params, grid)?,
        (false, true) => phaseless_evolved_wavefunction(label, t, params, grid)?,
    })
}

pub fn wavefn(args: &WavefnArgs) -> Result<Status, CliError> {
    let config = RunConfig::from_common(&args.common, Format::Csv)?;
    let label = config.single_label()?;
    let grid = config.grid_for(&label)?;
    let t = args.time.resolve(&config.params);
    let psi = closed_form(&label, t, args.phaseless, &config.params, &grid)?;

    let mut meta = base_meta("wavefn", &config, &grid);
    meta.push((
        "form",
        if args.phaseless {
            "phaseless"
        } else {
            "coherent"
        }
        .into(),
    ));
    meta.push(("alpha", alpha_text(&label)));
    meta.push(("t", float(t)));

    let mut w = output::open(config.out.as_deref())?;
    match config.format {
        Format::Csv => {
            write_meta(&mut *w, &meta).map_err(io_error)?;
            output::write_curve_csv(&mut *w, &psi).map_err(io_error)?;
        }
        Format::Json => {
            let doc =
                json!({ "metadata": output::meta_json(&meta), "data": output::curve_json(&psi) });
            output::write_json(&mut *w, &doc).map_err(io_error)?;
        }
    }
    w.flush().map_err(io_error)?;
    Ok(Status::Ok)
}

struct Snapshot {
    t: f64,
    label_t: CoherentLabel,
    psi: WaveFunction,
    fidelity: Option<f64>,
}

fn snapshot(
    method: Method,
    label: &CoherentLabel,
    t: f64,
    config: &RunConfig,
    grid: &Grid,
) -> Result<Snapshot, CliError> {
    let params = &config.params;
    let reference = closed_form(label, t, false, params, grid)?;
    let label_t = evolve_label(label, t, params).label;
    if t == 0.0 || method == Method::Analytic {
        let fidelity = (method != Method::Analytic).then_some(1.0);
        return Ok(Snapshot {
            t,
            label_t,
            psi: reference,
            fidelity,
        });
    }
    let psi = match method {
        Method::Splitstep => {
            let steps = (t / params.period() * config.steps_per_period as f64).ceil() as usize;
            let plan = PropagationPlan::new(t, steps.max(1), *grid, *params)?;
            let psi0 = coherent_wavefunction(label, params, grid)?;
            split_step_evolve(&psi0, &plan)?
        }
        Method::Fock => {
            let c0 = fock_coefficients(label, default_fock_truncation(label));
            fock_synthesize(&fock_evolve(&c0, t, params), params, grid)
        }
        Method::Analytic => unreachable!(),
    };
    let fidelity = Some(fidelity(&psi, &reference)?);
    Ok(Snapshot {
        t,
        label_t,
        psi,
        fidelity,
    })
}

pub fn evolve(args: &EvolveArgs) -> Result<Status, CliError> {
    let config = RunConfig::from_common(&args.common, Format::Csv)?;
    let label = config.single_label()?;
    let grid = config.grid_for(&label)?;
    if !(args.periods.is_finite() && args.periods > 0.0) {
        return Err(CliError::Usage(format!(
            "--periods must be positive, got {}",
            args.periods
        )));
    }
    let horizon = args.periods * config.params.period();
    let times = args
        .times
        .iter()
        .map(|spec| {
            let t = spec.resolve(&config.params);
            if (0.0..=horizon * (1.0 + 1e-12)).contains(&t) {
                Ok(t)
            } else {
                Err(CliError::Usage(format!(
                    "time {spec} lies outside the horizon [0, {horizon}]"
                )))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let snapshots = times
        .iter()
        .map(|&t| snapshot(args.method, &label, t, &config, &grid))
        .collect::<Result<Vec<_>, _>>()?;

    let mut meta = base_meta("evolve", &config, &grid);
    meta.push(("method", args.method.to_string()));
    meta.push(("alpha", alpha_text(&label)));
    meta.push(("periods", args.periods.to_string()));

    let mut w = output::open(config.out.as_deref())?;
    match config.format {
        Format::Csv => {
            write_meta(&mut *w, &meta).map_err(io_error)?;
            for (k, snap) in snapshots.iter().enumerate() {
                let mut block = vec![
                    ("snapshot", k.to_string()),
                    ("t", float(snap.t)),
                    ("alpha_t", alpha_text(&snap.label_t)),
                ];
                if let Some(f) = snap.fidelity {
                    block.push(("fidelity_vs_analytic", float(f)));
                }
                writeln!(w).map_err(io_error)?;
                write_meta(&mut *w, &block).map_err(io_error)?;
                output::write_curve_csv(&mut *w, &snap.psi).map_err(io_error)?;
            }
        }
        Format::Json => {
            let snaps: Vec<Value> = snapshots
                .iter()
                .map(|s| {
                    let a = s.label_t.alpha();
                    json!({
                        "t": s.t,
                        "alpha_t": [a.re, a.im],
                        "fidelity_vs_analytic": s.fidelity,
                        "data": output::curve_json(&s.psi),
                    })
                })
                .collect();
            let doc = json!({ "metadata": output::meta_json(&meta), "snapshots": snaps });
            output::write_json(&mut *w, &doc).map_err(io_error)?;
        }
    }
    w.flush().map_err(io_error)?;
    Ok(Status::Ok)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn write_checks_csv(w: &mut dyn Write, checks: &[Check]) -> std::io::Result<()> {
    writeln!(w, "name,value,relation,threshold,pass,note")?;
    for c in checks {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            csv_field(&c.name),
            c.value.map(float).unwrap_or_default(),
            c.relation,
            float(c.threshold),
            if c.pass { "PASS" } else { "FAIL" },
            csv_field(c.note.as_deref().unwrap_or(""))
        )?;
    }
    Ok(())
}

pub fn verify(args: &VerifyArgs) -> Result<Status, CliError> {
    let suite = RunConfig::suite(&args.suite)?;
    let config = RunConfig::from_common(&args.common, Format::Json)?;
    if args.sample_times == 0 {
        return Err(CliError::Usage("--sample-times must be positive".into()));
    }
    let alphas = if config.labels.is_empty() {
        SuiteConfig::default_alphas()
    } else {
        config.labels.clone()
    };
    let suite_config = SuiteConfig {
        params: config.params,
        alphas,
        grid_n: config.grid_n,
        sigma_multiple: config.sigma_mult,
        steps_per_period: config.steps_per_period,
        sample_times: args.sample_times,
        phase_factor: !args.drop_phase_factor,
        suite,
        ..SuiteConfig::default()
    };
    let report = run_full_suite(&suite_config);
    let all_pass = report.all_pass();

    let mut w = output::open(config.out.as_deref())?;
    match config.format {
        Format::Json => {
            let mut cfg = serde_json::to_value(&suite_config).expect("config serializes");
            cfg["tool"] = json!(TOOL);
            let doc = json!({ "config": cfg, "checks": report.checks, "all_pass": all_pass });
            output::write_json(&mut *w, &doc).map_err(io_error)?;
        }
        Format::Csv => {
            let p = &suite_config.params;
            let alphas: Vec<String> = suite_config.alphas.iter().map(alpha_text).collect();
            let meta = [
                ("tool", TOOL.to_string()),
                ("command", "verify".to_string()),
                ("suite", suite.to_string()),
                (
                    "units",
                    format!("hbar={} mass={} omega={}", p.hbar(), p.mass(), p.omega()),
                ),
                ("alphas", alphas.join("; ")),
                ("grid_n", suite_config.grid_n.to_string()),
                ("sigma_mult", suite_config.sigma_multiple.to_string()),
                (
                    "steps_per_period",
                    suite_config.steps_per_period.to_string(),
                ),
                ("sample_times", suite_config.sample_times.to_string()),
                ("phase_factor", suite_config.phase_factor.to_string()),
                ("all_pass", all_pass.to_string()),
            ];
            write_meta(&mut *w, &meta).map_err(io_error)?;
            write_checks_csv(&mut *w, &report.checks).map_err(io_error)?;
        }
    }
    w.flush().map_err(io_error)?;
    Ok(if all_pass {
        Status::Ok
    } else {
        Status::ChecksFailed
    })
}
