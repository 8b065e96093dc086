mod classify;
mod cutoff;
mod ks;
mod lowerbound;
mod quantile;
mod validate;

use super::config::{count, pos, real, Key, Kind, Resolved};
use super::{Command, Outcome};
use crate::error::{Error, Result};
use crate::measures::{ModeKind, MultiModalData, RadialProfile, SphericalMeasure};
use crate::forward::{lg_max_scale, OUProcess, TemperedLangevin};

const MODE_KINDS: &[&str] = &["uniform-ball", "truncated-gaussian"];

const fn choice(name: &'static str, options: &'static [&'static str], default: &'static str, doc: &'static str) -> Key {
    Key { name, kind: Kind::Choice(options), default: Some(default), doc }
}

const fn reals(name: &'static str, default: &'static str, doc: &'static str) -> Key {
    Key { name, kind: Kind::Reals { lo: 0.0 }, default: Some(default), doc }
}

const fn pos_or_auto(name: &'static str, doc: &'static str) -> Key {
    Key { name, kind: Kind::RealOrAuto { lo: 0.0, hi: f64::INFINITY, open_lo: true }, default: Some("auto"), doc }
}

const UNIT: f64 = 1.0;

macro_rules! data_keys {
    ($d:expr, $r:expr, $delta:expr, $eps:expr) => {
        [
            count("d", 1, 10_000_000, Some($d), "ambient dimension"),
            Key { name: "R", kind: Kind::Real { lo: 2.0, hi: f64::INFINITY, open_lo: true }, default: Some($r), doc: "distance scale of the furthest mode" },
            Key { name: "delta", kind: Kind::Real { lo: 0.0, hi: UNIT, open_lo: true }, default: Some($delta), doc: "relative mode radius" },
            Key { name: "eps", kind: Kind::Real { lo: 0.0, hi: UNIT, open_lo: true }, default: Some($eps), doc: "tolerance" },
            real("b_rho", 0.0, 1.0, Some("0.5"), "weight of the furthest mode"),
            pos_or_auto("bulk_scale", "per-coordinate sd of the Gaussian bulk; auto = R/(4 sqrt d)"),
            choice("mode_kind", MODE_KINDS, "uniform-ball", "shape of the mode"),
        ]
    };
}

const CUTOFF: &[Key] = &{
    let d = data_keys!("16", "50", "0.02", "0.05");
    [
        d[0], d[1], d[2], d[3], d[4], d[5], d[6],
        pos("mu", Some("1"), "OU rate"),
        count("n", 1, 100_000_000, Some("100000"), "samples from the data law"),
        reals("times", "0,0.5,1,1.5,2,2.5,3,3.5,4,5,6,7,8,10", "time grid; T_b and T_OU_prop are added"),
        Key { name: "bins", kind: Kind::RealOrAuto { lo: 2.0, hi: 1e7, open_lo: false }, default: Some("auto"), doc: "histogram bins" },
    ]
};

const LOWERBOUND: &[Key] = &{
    let d = data_keys!("16", "200", "0.02", "0.05");
    [
        choice("process", &["ou", "langevin"], "ou", "forward process"),
        pos("mu", Some("1"), "rate of the Lyapunov inequality (OU rate for process = ou)"),
        pos_or_auto("a", "profile scale for langevin; auto = (mu/p)^(1/(2 ell+1)) - ell"),
        Key { name: "p", kind: Kind::Real { lo: 0.0, hi: 2.0, open_lo: true }, default: Some("1"), doc: "profile exponent for langevin" },
        real("ell", 0.0, f64::INFINITY, Some("0.4"), "temperature for langevin"),
        d[0], d[1], d[2], d[3], d[4], d[5], d[6],
        count("k", 3, 10_000_000, Some("3"), "projection rank"),
        choice("initial", &["data", "pi"], "data", "initial law"),
        pos_or_auto("r_k", "auto = estimated projected quantile radius"),
        count("n", 1, 100_000_000, Some("100000"), "samples from the initial law"),
        count("n_pi", 1, 100_000_000, Some("100000"), "samples for a Monte-Carlo pi-term"),
        count("n_quantile", 1, 100_000_000, Some("300000"), "samples for r_k"),
        reals("times", "0,0.5,1,1.5,2,3,4,5,6,8", "time grid; T_c is appended"),
    ]
};

const QUANTILE: &[Key] = &[
    Key { name: "p_list", kind: Kind::Reals { lo: 0.0 }, default: Some("1.8,1.6,1.4,1.2,1"), doc: "tail exponents" },
    reals("d_list", "3,30,300,3000", "dimensions"),
    Key { name: "eps", kind: Kind::Real { lo: 0.0, hi: UNIT, open_lo: true }, default: Some("0.1"), doc: "tolerance" },
    count("n", 1, 100_000_000, Some("300000"), "samples per cell"),
    count("k", 1, 10_000_000, Some("3"), "projection rank"),
    pos("a", Some("1"), "profile scale"),
];

const KS: &[Key] = &[
    count("d", 1, 100_000_000, Some("1024"), "dimension"),
    real("R", 0.0, f64::INFINITY, Some("255"), "|x0|; 0 starts from the invariant law"),
    pos("mu", Some("1"), "OU rate"),
    Key { name: "eps", kind: Kind::Real { lo: 0.0, hi: UNIT, open_lo: true }, default: Some("0.05"), doc: "tolerance for the horizons" },
    real("delta", 0.0, 1.0, Some("0.02"), "relative mode radius for T_OU_prop"),
    count("repetitions", 1, 1_000_000, Some("20"), "independent paths"),
    Key { name: "times", kind: Kind::Text, default: Some("auto"), doc: "auto = 0, T_b/2, T_b, T_OU_prop; or a list" },
];

const CLASSIFY: &[Key] = &[
    pos("p", None, "tail exponent"),
    real("ell", 0.0, f64::INFINITY, None, "temperature"),
];

const VALIDATE: &[Key] = &{
    let d = data_keys!("16", "1000000", "0.01", "0.1");
    [
        choice("process", &["ou", "langevin"], "ou", "forward process"),
        pos("mu", Some("1"), "rate"),
        pos_or_auto("a", "profile scale for langevin; auto = (mu/p)^(1/(2 ell+1)) - ell"),
        Key { name: "p", kind: Kind::Real { lo: 0.0, hi: 2.0, open_lo: true }, default: Some("1"), doc: "profile exponent" },
        real("ell", 0.0, f64::INFINITY, Some("0.4"), "temperature"),
        d[0], d[1], d[2], d[3], d[4], d[5], d[6],
        real("beta", 0.0, 1.0, Some("0.3"), "exponent of the bridge conditions"),
        count("k", 3, 10_000_000, Some("3"), "projection rank"),
        pos_or_auto("r_k", "auto = estimated projected quantile radius"),
        Key { name: "basis", kind: Kind::Text, default: Some("principal"), doc: "principal, or rows of reals separated by ';'" },
        count("n_mc", 1, 100_000_000, Some("100000"), "samples for the tail check and r_k"),
        count("n_points", 1, 100_000_000, Some("10000"), "envelope points per check"),
        count("n_grid", 2, 100_000_000, Some("10000"), "radii for the LG check"),
    ]
};

pub fn schema(command: Command) -> &'static [Key] {
    match command {
        Command::Cutoff => CUTOFF,
        Command::Lowerbound => LOWERBOUND,
        Command::QuantileTable => QUANTILE,
        Command::KsSweep => KS,
        Command::Classify => CLASSIFY,
        Command::Validate => VALIDATE,
    }
}

pub fn run(command: Command, cfg: &Resolved, seed: u64) -> Result<Outcome> {
    match command {
        Command::Cutoff => cutoff::run(cfg, seed),
        Command::Lowerbound => lowerbound::run(cfg, seed),
        Command::QuantileTable => quantile::run(cfg, seed),
        Command::KsSweep => ks::run(cfg, seed),
        Command::Classify => classify::run(cfg),
        Command::Validate => validate::run(cfg, seed),
    }
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn data_from(cfg: &Resolved) -> Result<MultiModalData> {
    let mut data = MultiModalData::single_mode(cfg.count("d"), cfg.real("R"), cfg.real("delta"), cfg.real("eps"), cfg.real("b_rho"));
    if let Some(s) = cfg.real_or_auto("bulk_scale") {
        data = data.with_bulk_scale(s);
    }
    if cfg.raw("mode_kind") == "truncated-gaussian" {
        data = data.with_mode_kind(ModeKind::TruncatedGaussian);
    }
    data.check_structure()?;
    Ok(data)
}

/// Forward process selected by `process`, `mu`, `a`, `p`, `ell`.
enum Process {
    Ou(OUProcess),
    Langevin(TemperedLangevin),
}

impl Process {
    fn from(cfg: &Resolved) -> Result<Self> {
        let mu = cfg.real("mu");
        let d = cfg.count("d");
        match cfg.raw("process") {
            "ou" => Ok(Process::Ou(OUProcess::new(mu, d)?)),
            _ => {
                let p = cfg.real("p");
                let ell = cfg.real("ell");
                let a = match cfg.real_or_auto("a") {
                    Some(a) => a,
                    None => {
                        let a = lg_max_scale(mu, p, ell);
                        if !(a > 0.0) {
                            return Err(config_err(format!(
                                "no admissible scale a for mu = {mu}, p = {p}, ell = {ell}; set `a` explicitly"
                            )));
                        }
                        a
                    }
                };
                Ok(Process::Langevin(TemperedLangevin::new(RadialProfile::PowerTail { a, p }, ell, d)?))
            }
        }
    }

    fn invariant(&self) -> SphericalMeasure {
        match self {
            Process::Ou(o) => o.invariant_measure(),
            Process::Langevin(t) => t.invariant_measure(),
        }
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}
