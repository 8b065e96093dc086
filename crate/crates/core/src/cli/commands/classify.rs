use super::Resolved;
use crate::cli::output::{fmt_g, Cell, Table};
use crate::cli::Outcome;
use crate::error::Result;
use crate::forward::{classify_ergodicity, Regime};

pub fn run(cfg: &Resolved) -> Result<Outcome> {
    let (p, ell) = (cfg.real("p"), cfg.real("ell"));
    let regime = classify_ergodicity(p, ell)?;
    let (name, exponent) = match regime {
        Regime::Subexponential { exponent } => ("subexponential", Some(exponent)),
        Regime::Exponential => ("exponential", None),
        Regime::Uniform => ("uniform", None),
    };
    let mut table = Table::new("classify", &["p", "ell", "regime", "exponent"]);
    table.push(vec![p.into(), ell.into(), name.into(), Cell::from(exponent)]);
    let summary = match exponent {
        Some(e) => format!("p = {}, ell = {}: {name} (exponent {})\n", fmt_g(p), fmt_g(ell), fmt_g(e)),
        None => format!("p = {}, ell = {}: {name}\n", fmt_g(p), fmt_g(ell)),
    };
    Ok(Outcome { tables: vec![table], summary, ..Outcome::default() })
}
