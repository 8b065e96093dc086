use super::{config_err, Resolved};
use crate::cli::output::{Cell, Chart, Series, Table};
use crate::cli::Outcome;
use crate::error::Result;
use crate::measures::{quantile_rk, RadialProfile, SphericalMeasure};
use crate::rng::derive_seed;

pub fn run(cfg: &Resolved, seed: u64) -> Result<Outcome> {
    let ps = cfg.reals("p_list");
    let ds = cfg.reals("d_list");
    if ps.is_empty() || ds.is_empty() {
        return Err(config_err("p_list and d_list must be nonempty"));
    }
    for &d in &ds {
        if d.fract() != 0.0 || d < 1.0 {
            return Err(config_err(format!("d_list entry {d} is not a positive integer")));
        }
    }
    let (eps, n, k, a) = (cfg.real("eps"), cfg.count("n"), cfg.count("k"), cfg.real("a"));

    let mut header: Vec<String> = vec!["p".into()];
    header.extend(ds.iter().map(|d| format!("d={d}")));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut wide = Table::new("quantile_table", &header_refs);
    let mut long = Table::new("quantile_table_long", &["p", "d", "radius", "radius_se", "r_k", "r_k_se", "n"]);
    let mut series = Vec::new();
    let mut cell = 0u64;
    for &p in &ps {
        let mut row: Vec<Cell> = vec![p.into()];
        let mut points = Vec::new();
        for &d in &ds {
            let pi = SphericalMeasure::new(d as usize, RadialProfile::PowerTail { a, p })?;
            let q = quantile_rk(&pi, k, eps, n, derive_seed(seed, cell))?;
            cell += 1;
            row.push(q.radius.into());
            long.push(vec![p.into(), d.into(), q.radius.into(), q.radius_se.into(), q.r_k.into(), q.r_k_se.into(), n.into()]);
            points.push((d.log10(), q.radius));
        }
        wide.push(row);
        series.push(Series { name: format!("p = {p}"), points });
    }
    let outcome = Outcome {
        tables: vec![wide.clone(), long],
        charts: vec![Chart {
            name: "quantile_table".into(),
            title: format!("Projected-ball radius, k = {k}, eps = {eps}"),
            x_label: "log10 d".into(),
            y_label: "radius".into(),
            series,
        }],
        summary: wide.render(&[]),
        ..Outcome::default()
    };
    Ok(outcome)
}
