use super::{config_err, median, Resolved};
use crate::bounds::horizons;
use crate::cli::output::{Cell, Chart, Series, Table};
use crate::cli::Outcome;
use crate::error::Result;
use crate::forward::OUProcess;
use crate::rng::{derive_seed, par_map};
use crate::stats::{ks_sweep, SweepPoint, SweepStart};

pub fn run(cfg: &Resolved, seed: u64) -> Result<Outcome> {
    let (d, radius, mu) = (cfg.count("d"), cfg.real("R"), cfg.real("mu"));
    let times: Vec<(f64, String)> = match cfg.raw("times") {
        "auto" => {
            if !(radius > 2.0) {
                return Err(config_err("times = auto needs R > 2; give an explicit list"));
            }
            let h = horizons(mu, radius, cfg.real("delta"), cfg.real("eps"), d, None, None)?;
            vec![
                (0.0, "0".into()),
                (h.t_b / 2.0, "T_b/2".into()),
                (h.t_b, "T_b".into()),
                (h.t_ou_prop, "T_OU_prop".into()),
            ]
        }
        list => {
            let mut out = Vec::new();
            for item in list.split(',') {
                let t: f64 = item
                    .trim()
                    .parse()
                    .map_err(|_| config_err(format!("`times`: `{item}` is not a number")))?;
                if !(t >= 0.0 && t.is_finite()) {
                    return Err(config_err(format!("`times`: {t} must be a finite nonnegative number")));
                }
                out.push((t, "grid".into()));
            }
            out
        }
    };
    let ts: Vec<f64> = times.iter().map(|(t, _)| *t).collect();
    let ou = OUProcess::new(mu, d)?;
    let stationary = ou.invariant_measure();
    let x0 = vec![radius / (d as f64).sqrt(); d];
    let reps = cfg.count("repetitions");
    let runs: Vec<Result<Vec<SweepPoint>>> = par_map(reps, |rep| {
        let start = if radius > 0.0 { SweepStart::Point(&x0) } else { SweepStart::Law(&stationary) };
        ks_sweep(&ou, start, mu, &ts, derive_seed(seed, rep as u64))
    });
    let runs: Vec<Vec<SweepPoint>> = runs.into_iter().collect::<Result<_>>()?;

    let mut table = Table::new(
        "ks_sweep",
        &["t", "label", "repetition", "statistic", "p_value", "std_statistic", "std_p_value"],
    );
    for (rep, run) in runs.iter().enumerate() {
        for (pt, (_, label)) in run.iter().zip(&times) {
            table.push(vec![
                pt.t.into(),
                label.as_str().into(),
                rep.into(),
                pt.raw.statistic.into(),
                pt.raw.p_value.into(),
                pt.standardized.statistic.into(),
                pt.standardized.p_value.into(),
            ]);
        }
    }
    let mut summary = String::from("t,label,median_statistic,median_std_statistic\n");
    let mut curve = Vec::new();
    for (j, (t, label)) in times.iter().enumerate() {
        let mut raw: Vec<f64> = runs.iter().map(|r| r[j].raw.statistic).collect();
        let mut pv: Vec<f64> = runs.iter().map(|r| r[j].raw.p_value).collect();
        let mut std: Vec<f64> = runs.iter().map(|r| r[j].standardized.statistic).collect();
        let mut spv: Vec<f64> = runs.iter().map(|r| r[j].standardized.p_value).collect();
        let (m_raw, m_std) = (median(&mut raw), median(&mut std));
        table.push(vec![
            (*t).into(),
            label.as_str().into(),
            Cell::from("median"),
            m_raw.into(),
            median(&mut pv).into(),
            m_std.into(),
            median(&mut spv).into(),
        ]);
        summary.push_str(&format!("{t:.6},{label},{m_raw:.6},{m_std:.6}\n"));
        curve.push((*t, m_raw));
    }
    Ok(Outcome {
        tables: vec![table],
        charts: vec![Chart {
            name: "ks_sweep".into(),
            title: format!("Median KS statistic over {reps} paths, d = {d}"),
            x_label: "t".into(),
            y_label: "KS statistic".into(),
            series: vec![Series { name: "median D_n".into(), points: curve }],
        }],
        summary,
        ..Outcome::default()
    })
}
