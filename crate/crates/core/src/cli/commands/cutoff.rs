use super::{config_err, data_from, Resolved};
use crate::bounds::horizons;
use crate::cli::output::{Chart, Series, Table};
use crate::cli::Outcome;
use crate::error::Result;
use crate::forward::{EndpointSampler, OUProcess};
use crate::measures::sample_data;
use crate::report::Check;
use crate::rng::derive_seed;
use crate::stats::projected_tv_vs_gaussian;

pub fn run(cfg: &Resolved, seed: u64) -> Result<Outcome> {
    let data = data_from(cfg)?;
    let (d, radius, eps, mu) = (data.d, data.radius, data.eps, cfg.real("mu"));
    let need = (eps.sqrt() * (d as f64).powf(0.25)).max((2.0 * (1.0 / eps).ln()).sqrt());
    if radius < need {
        return Err(config_err(format!(
            "the cut-off statement requires R >= max(eps^(1/2) d^(1/4), sqrt(2 log(1/eps))) = {need}, got R = {radius}"
        )));
    }
    let h = horizons(mu, radius, data.delta, eps, d, None, None)?;
    let bins = cfg.real_or_auto("bins").map(|b| b as usize);
    let floor = (data.b_rho() - eps) / 2.0;

    let mut times: Vec<(f64, &str)> = cfg.reals("times").into_iter().map(|t| (t, "grid")).collect();
    times.push((h.t_b, "T_b"));
    times.push((h.t_ou_prop, "T_OU_prop"));
    times.sort_by(|a, b| a.0.total_cmp(&b.0));

    let ou = OUProcess::new(mu, d)?;
    let starts = sample_data(&data, cfg.count("n"), derive_seed(seed, 1))?;
    let dir = data.principal_direction();
    let noise_seed = derive_seed(seed, 2);

    let mut table = Table::new("cutoff", &["t", "label", "tv", "tv_se", "bins", "floor", "eps", "T_b", "T_OU_prop"]);
    let mut curve = Vec::new();
    let mut outcome = Outcome::default();
    for (t, label) in times {
        let ends = ou.propagate(&starts, t, noise_seed)?;
        let tv = projected_tv_vs_gaussian(&ends, &dir, mu, bins, None)?;
        table.push(vec![
            t.into(),
            label.into(),
            tv.value.into(),
            tv.std_error.into(),
            tv.bins.into(),
            floor.into(),
            eps.into(),
            h.t_b.into(),
            h.t_ou_prop.into(),
        ]);
        curve.push((t, tv.value));
        match label {
            "T_b" => outcome.checks.push(
                Check::new("TV(T_b) >= (b_rho-eps)/2 - 3se", tv.value >= floor - 3.0 * tv.std_error, tv.value, floor)
                    .with_std_error(tv.std_error),
            ),
            "T_OU_prop" => outcome.checks.push(
                Check::new("TV(T_OU_prop) <= eps + 3se", tv.value <= eps + 3.0 * tv.std_error, tv.value, eps)
                    .with_std_error(tv.std_error),
            ),
            _ => {}
        }
    }
    let (t0, t1) = (curve[0].0, curve[curve.len() - 1].0);
    let span = |v: f64| vec![(t0, v), (t1, v)];
    outcome.charts.push(Chart {
        name: "cutoff".into(),
        title: format!("Projected TV to N(0, 1/mu), d = {d}, R = {radius}"),
        x_label: "t".into(),
        y_label: "TV".into(),
        series: vec![
            Series { name: "projected TV".into(), points: curve },
            Series { name: "(b_rho - eps)/2".into(), points: span(floor) },
            Series { name: "eps".into(), points: span(eps) },
        ],
    });
    outcome.summary = format!("T_b = {:.6}, T_OU_prop = {:.6}\n", h.t_b, h.t_ou_prop);
    outcome.tables.push(table);
    Ok(outcome)
}
