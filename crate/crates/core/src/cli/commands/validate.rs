use super::{config_err, data_from, Process, Resolved};
use crate::bounds::{check_generator_bound, validate_bridge_assumptions, SubspaceProjector};
use crate::cli::output::{Cell, Table};
use crate::cli::Outcome;
use crate::error::Result;
use crate::forward::{check_lg_numeric, check_linear_growth, check_sigma_bound, Diffusion, Envelope};
use crate::measures::{quantile_rk, validate_data_spec};
use crate::report::{Check, CheckReport};
use crate::rng::derive_seed;

fn parse_basis(text: &str, d: usize) -> Result<Vec<Vec<f64>>> {
    text.split(';')
        .map(|row| {
            let v: Vec<f64> = row
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<f64>().map_err(|_| config_err(format!("`basis`: `{s}` is not a number"))))
                .collect::<Result<_>>()?;
            if v.len() != d {
                return Err(config_err(format!("`basis`: row has {} entries, expected d = {d}", v.len())));
            }
            Ok(v)
        })
        .collect()
}

fn process_checks<D: Diffusion>(
    process: &D,
    proj: &SubspaceProjector,
    mu: f64,
    n: usize,
    env: Envelope,
    seed: u64,
    report: &mut CheckReport,
) -> Result<()> {
    let sb = check_sigma_bound(process, proj, n, env, derive_seed(seed, 3))?;
    report.push(Check::new("dispersion balance sum<a y,y> >= 3<aG^,G^>", sb.passed, sb.max_violation, 1e-9));
    let gb = check_generator_bound(process, proj, mu, n, env, derive_seed(seed, 4))?;
    report.push(Check::new("generator bound A H <= mu H", gb.passed, gb.max_excess, 1e-9));
    Ok(())
}

pub fn run(cfg: &Resolved, seed: u64) -> Result<Outcome> {
    let data = data_from(cfg)?;
    let process = Process::from(cfg)?;
    let mu = cfg.real("mu");
    let k = cfg.count("k");
    let n_points = cfg.count("n_points");
    let proj = match cfg.raw("basis") {
        "principal" => SubspaceProjector::with_leading(&data.principal_direction(), k)?,
        text => SubspaceProjector::new(parse_basis(text, data.d)?)?,
    };
    let env = Envelope::gaussian(data.radius);

    let mut report = validate_data_spec(&data, cfg.count("n_mc"), derive_seed(seed, 1))?;
    match &process {
        Process::Ou(ou) => {
            let lg = check_linear_growth(ou, mu, n_points, env, derive_seed(seed, 2));
            report.push(Check::new("linear growth |<b,u>| <= mu |<x,u>|", lg.passed, lg.max_ratio, 1.0 + 1e-9));
            process_checks(ou, &proj, mu, n_points, env, seed, &mut report)?;
        }
        Process::Langevin(tl) => {
            let lg = check_lg_numeric(tl, mu, 10.0 * data.outer_radius(), cfg.count("n_grid"))?;
            report.push(
                Check::new("LG_mu on the radial grid", lg.passed, lg.max_excess, 1e-9)
                    .with_note(format!("worst radius {:.6e}", lg.worst_radius)),
            );
            process_checks(tl, &proj, mu, n_points, env, seed, &mut report)?;
        }
    }
    let r_k = match cfg.real_or_auto("r_k") {
        Some(r) => r,
        None => quantile_rk(&process.invariant(), k, data.eps, cfg.count("n_mc"), derive_seed(seed, 5))?.r_k,
    };
    report.extend(validate_bridge_assumptions(mu, data.radius, data.delta, data.eps, data.d, cfg.real("beta"), r_k));

    let mut table = Table::new("validate", &["check", "passed", "measured", "threshold", "margin", "std_error"]);
    for c in &report.checks {
        table.push(vec![
            c.name.as_str().into(),
            (if c.passed { "true" } else { "false" }).into(),
            c.measured.into(),
            c.threshold.into(),
            c.margin().into(),
            Cell::from(c.std_error),
        ]);
    }
    Ok(Outcome {
        tables: vec![table],
        checks: report,
        summary: format!("r_k = {r_k:.6}\n"),
        ..Outcome::default()
    })
}
