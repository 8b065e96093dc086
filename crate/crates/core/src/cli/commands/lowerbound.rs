use super::{config_err, data_from, Process, Resolved};
use crate::bounds::{ou_tv_upper_bound, tv_lower_bound, PiTermSource, RateFunction, SubspaceProjector};
use crate::cli::output::{Chart, Series, Table};
use crate::cli::Outcome;
use crate::error::Result;
use crate::forward::check_lg_numeric;
use crate::measures::{quantile_rk, InitialLaw};
use crate::report::Check;
use crate::rng::derive_seed;
use crate::stats::chisq_quantile;

pub fn run(cfg: &Resolved, seed: u64) -> Result<Outcome> {
    let data = data_from(cfg)?;
    let process = Process::from(cfg)?;
    let mu = cfg.real("mu");
    let k = cfg.count("k");
    if k > data.d {
        return Err(config_err(format!("k = {k} exceeds d = {}", data.d)));
    }
    let pi = process.invariant();
    let mut outcome = Outcome::default();

    let r_k = match (cfg.real_or_auto("r_k"), &process) {
        (Some(r), _) => r,
        // Under N(0, I/μ), μ|G|² is χ²_k: the quantile is exact.
        (None, Process::Ou(_)) => (1.0 + chisq_quantile(k, 1.0 - data.eps / 2.0)? / mu).sqrt(),
        (None, Process::Langevin(_)) => {
            quantile_rk(&pi, k, data.eps, cfg.count("n_quantile"), derive_seed(seed, 3))?.r_k
        }
    };
    if !(r_k >= 1.0) {
        return Err(config_err(format!("r_k must be at least 1, got {r_k}")));
    }
    if data.radius < 2.0 * r_k {
        return Err(config_err(format!(
            "the lower bound at T_c requires 2 r_k <= R, got r_k = {r_k}, R = {}",
            data.radius
        )));
    }
    let t_c = (data.radius / (2.0 * r_k)).ln() / mu;

    if let Process::Langevin(tl) = &process {
        let lg = check_lg_numeric(tl, mu, 10.0 * data.outer_radius(), 2000)?;
        outcome.checks.push(
            Check::new("LG_mu holds on the radial grid", lg.passed, lg.max_excess, 0.0)
                .with_note(format!("worst radius {:.6e}", lg.worst_radius)),
        );
    }

    let proj = SubspaceProjector::with_leading(&data.principal_direction(), k)?;
    let rate = RateFunction::linear(mu)?;
    let pi_source = match &process {
        Process::Ou(_) => PiTermSource::GaussianClosedForm { mu },
        Process::Langevin(_) => PiTermSource::Spherical { measure: &pi, n: cfg.count("n_pi") },
    };
    let from_data = cfg.raw("initial") == "data";
    let law: &dyn InitialLaw = if from_data { &data } else { &pi };
    let floor = (data.b_rho() - data.eps) / 2.0;

    let mut times: Vec<(f64, &str)> = cfg.reals("times").into_iter().map(|t| (t, "grid")).collect();
    times.push((t_c, "T_c"));

    let mut table = Table::new(
        "lowerbound",
        &[
            "t", "label", "r", "C_rT", "pi_term", "pi_se", "rho_tail_term", "rho_tail_se", "integral_term",
            "integral_se", "total", "total_se", "floor", "upper_bound", "upper_se",
        ],
    );
    let mut lower_curve = Vec::new();
    let mut upper_curve = Vec::new();
    let mut worst_order = f64::NEG_INFINITY;
    let mut worst_null = f64::NEG_INFINITY;
    let mc_seed = derive_seed(seed, 4);
    for (t, label) in times {
        let rep = tv_lower_bound(pi_source, law, &proj, &rate, r_k, t, cfg.count("n"), mc_seed)?;
        let upper = match &process {
            Process::Ou(_) if from_data && mu * t > std::f64::consts::LN_2 / 2.0 => {
                Some(ou_tv_upper_bound(mu, &data, t, cfg.count("n"), derive_seed(seed, 5))?)
            }
            _ => None,
        };
        table.push(vec![
            t.into(),
            label.into(),
            r_k.into(),
            rep.c_rt.into(),
            rep.pi_term.into(),
            rep.pi_se.into(),
            rep.rho_tail_term.into(),
            rep.rho_tail_se.into(),
            rep.integral_term.into(),
            rep.integral_se.into(),
            rep.total.into(),
            rep.total_se.into(),
            floor.into(),
            upper.map(|u| u.value).into(),
            upper.map(|u| u.mass_std_error).into(),
        ]);
        lower_curve.push((t, rep.total));
        if let Some(u) = upper {
            upper_curve.push((t, u.value));
            worst_order = worst_order.max(rep.total - u.value - 3.0 * (rep.total_se + u.mass_std_error));
        }
        if !from_data {
            worst_null = worst_null.max(rep.total - 3.0 * rep.total_se);
        }
        if label == "T_c" && from_data {
            outcome.checks.push(
                Check::new("total(T_c) >= (b_rho-eps)/2 - 3se", rep.total >= floor - 3.0 * rep.total_se, rep.total, floor)
                    .with_std_error(rep.total_se),
            );
        }
    }
    if !upper_curve.is_empty() {
        outcome.checks.push(Check::new("lower - upper - 3se <= 0 on the grid", worst_order <= 0.0, worst_order, 0.0));
    }
    if !from_data {
        outcome.checks.push(Check::new("total - 3se <= 0 when started from pi", worst_null <= 0.0, worst_null, 0.0));
    }
    let mut series = vec![Series { name: "lower bound".into(), points: lower_curve }];
    if !upper_curve.is_empty() {
        series.push(Series { name: "upper bound".into(), points: upper_curve });
    }
    outcome.charts.push(Chart {
        name: "lowerbound".into(),
        title: format!("TV bounds, {} process, d = {}", cfg.raw("process"), data.d),
        x_label: "t".into(),
        y_label: "TV bound".into(),
        series,
    });
    outcome.summary = format!("r_k = {r_k:.6}, T_c = {t_c:.6}\n");
    outcome.tables.push(table);
    Ok(outcome)
}
