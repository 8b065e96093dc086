//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//!
//! Reference numbers below are either published table values or come from
//! the oracles in `common`; thresholds are the pinned tolerances.

mod common;

use std::path::Path;
use std::process::Command as Proc;
use std::time::Instant;

use mixlab::bounds::{
    check_generator_bound, expected_h_check, generator_apply_h, kl_gaussians, ou_tv_upper_bound, tv_lower_bound,
    PiTermSource, RateFunction, SubspaceProjector,
};
use mixlab::cli::output::{Cell, Table};
use mixlab::cli::{execute, Command};
use mixlab::forward::{classify_ergodicity, lg_max_scale, Envelope, OUProcess, Regime, TemperedLangevin};
use mixlab::measures::{MultiModalData, RadialProfile};
use mixlab::nalgebra::DMatrix;
use mixlab::stats::chisq_quantile;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use common::{fd_generator, h_of, kl_monte_carlo, ou_coeffs, rng, tempered_coeffs, Spd2};

/// Per-cell relative band for the r_3 table.
const QUANTILE_TABLE_REL: f64 = 0.05;
const QUANTILE_TABLE_SECONDS: f64 = 60.0;
const CUTOFF_SECONDS: f64 = 30.0;
const KS_SECONDS: f64 = 60.0;
/// Monte-Carlo comparisons use this many standard errors.
const SIGMAS: f64 = 3.0;
const GENERATOR_EXCESS: f64 = 1e-9;
const GENERATOR_FD_REL: f64 = 1e-4;
const ROUND_TRIP_LINEAR: f64 = 1e-12;
const ROUND_TRIP_GENERAL: f64 = 1e-8;
const INVERSE_PAIR_REL: f64 = 1e-10;
const KL_MC_REL: f64 = 0.02;
const KL_IDENTITY: f64 = 1e-12;
const KS_START_MIN: f64 = 0.3;
const KS_MIXED_MAX: f64 = 0.05;

/// Values of r_3 for eps = 0.1, rows p = 1.8, 1.6, 1.4, 1.2, 1 and
/// columns d = 3, 30, 300, 3000.
const R3_TABLE: [(f64, [f64; 4]); 5] = [
    (1.8, [2.2, 2.4, 2.8, 3.1]),
    (1.6, [2.6, 3.2, 4.3, 5.7]),
    (1.4, [3.1, 4.6, 7.5, 12.2]),
    (1.2, [4.1, 7.7, 16.1, 34.6]),
    (1.0, [6.3, 15.9, 48.7, 153.2]),
];
const R3_DIMS: [f64; 4] = [3.0, 30.0, 300.0, 3000.0];

type Criterion = fn() -> Verdict;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict { passed, detail: detail.into() }
}

fn column(table: &Table, name: &str) -> usize {
    table.header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name} in {}", table.name))
}

fn num(cell: &Cell) -> f64 {
    match cell {
        Cell::Num(x) => *x,
        Cell::Int(i) => *i as f64,
        other => panic!("expected a number, found {other:?}"),
    }
}

fn text(cell: &Cell) -> String {
    match cell {
        Cell::Text(s) => s.clone(),
        Cell::Int(i) => i.to_string(),
        other => panic!("expected text, found {other:?}"),
    }
}

fn quantile_table() -> Verdict {
    let start = Instant::now();
    let out = execute(Command::QuantileTable, "", 0).expect("quantile-table runs");
    let secs = start.elapsed().as_secs_f64();
    let long = out.tables.iter().find(|t| t.name == "quantile_table_long").expect("long table");
    let (cp, cd, cr) = (column(long, "p"), column(long, "d"), column(long, "radius"));
    let mut worst = (0.0f64, String::new());
    let mut cells = 0;
    for (p, row) in R3_TABLE {
        for (d, reference) in R3_DIMS.iter().zip(row) {
            let got = long
                .rows
                .iter()
                .find(|r| num(&r[cp]) == p && num(&r[cd]) == *d)
                .map(|r| num(&r[cr]))
                .expect("cell present");
            let rel = (got - reference).abs() / reference;
            cells += 1;
            if rel >= worst.0 {
                worst = (rel, format!("p={p} d={d}: {got:.3} vs {reference}"));
            }
        }
    }
    verdict(
        cells == 20 && worst.0 <= QUANTILE_TABLE_REL && secs < QUANTILE_TABLE_SECONDS,
        format!("{cells} cells, worst rel dev {:.4} ({}), {secs:.1} s", worst.0, worst.1),
    )
}

fn cutoff() -> Verdict {
    let start = Instant::now();
    let out = execute(Command::Cutoff, "", 0).expect("cutoff runs");
    let secs = start.elapsed().as_secs_f64();
    let t = &out.tables[0];
    let (cl, ctv, cse) = (column(t, "label"), column(t, "tv"), column(t, "tv_se"));
    let pick = |label: &str| {
        let r = t.rows.iter().find(|r| text(&r[cl]) == label).expect("labelled row");
        (num(&r[ctv]), num(&r[cse]))
    };
    let floor = (0.5 - 0.05) / 2.0;
    let (tv_b, se_b) = pick("T_b");
    let (tv_ou, se_ou) = pick("T_OU_prop");
    verdict(
        tv_b >= floor - SIGMAS * se_b && tv_ou <= 0.05 + SIGMAS * se_ou && secs < CUTOFF_SECONDS,
        format!("TV(T_b) = {tv_b:.4} (floor {floor}), TV(T_OU_prop) = {tv_ou:.4} (eps 0.05), {secs:.1} s"),
    )
}

fn lower_bound() -> Verdict {
    let floor = (0.5 - 0.05) / 2.0;
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, cfg) in [("OU", "process = ou"), ("TL", "process = langevin\np = 1\nell = 0.4")] {
        let out = execute(Command::Lowerbound, cfg, 0).expect("lowerbound runs");
        let t = &out.tables[0];
        let (cl, ct, cs) = (column(t, "label"), column(t, "total"), column(t, "total_se"));
        let r = t.rows.iter().find(|r| text(&r[cl]) == "T_c").expect("T_c row");
        let (total, se) = (num(&r[ct]), num(&r[cs]));
        ok &= total >= floor - SIGMAS * se;
        parts.push(format!("{name} total(T_c) = {total:.4} ± {se:.1e}"));

        let null = execute(Command::Lowerbound, &format!("{cfg}\ninitial = pi"), 0).expect("null run");
        let t = &null.tables[0];
        let (ct, cs) = (column(t, "total"), column(t, "total_se"));
        let worst = t.rows.iter().map(|r| num(&r[ct]) - SIGMAS * num(&r[cs])).fold(f64::NEG_INFINITY, f64::max);
        ok &= worst <= 0.0;
        parts.push(format!("{name} from pi max(total - 3se) = {worst:.4}"));
    }
    verdict(ok, parts.join("; "))
}

fn bound_ordering() -> Verdict {
    let (mu, eps) = (1.0, 0.05);
    let data = MultiModalData::single_mode(16, 50.0, 0.02, eps, 0.5);
    let proj = SubspaceProjector::with_leading(&data.principal_direction(), 3).unwrap();
    let rate = RateFunction::linear(mu).unwrap();
    let r = (1.0 + chisq_quantile(3, 1.0 - eps / 2.0).unwrap() / mu).sqrt();
    let grid = [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0];
    let mut worst = f64::NEG_INFINITY;
    let mut compared = 0;
    for (i, &t) in grid.iter().enumerate() {
        if mu * t <= std::f64::consts::LN_2 / 2.0 {
            continue;
        }
        let lower =
            tv_lower_bound(PiTermSource::GaussianClosedForm { mu }, &data, &proj, &rate, r, t, 100_000, 40 + i as u64)
                .unwrap();
        let upper = ou_tv_upper_bound(mu, &data, t, 100_000, 80 + i as u64).unwrap();
        let sigma = lower.total_se.hypot(upper.mass_std_error);
        worst = worst.max(lower.total - upper.value - SIGMAS * sigma);
        compared += 1;
    }
    verdict(worst <= 0.0, format!("{compared} grid times, max(lower - upper - 3se) = {worst:.4}"))
}

fn unit_vector(d: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut r)).collect();
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

fn generator() -> Verdict {
    let (d, mu, ell, p) = (16, 1.0, 0.4, 1.0);
    let a = lg_max_scale(mu, p, ell);
    let proj = SubspaceProjector::with_leading(&unit_vector(d, 5), 3).unwrap();
    let ou = OUProcess::new(mu, d).unwrap();
    let tl = TemperedLangevin::new(RadialProfile::PowerTail { a, p }, ell, d).unwrap();
    let mut worst_excess = f64::NEG_INFINITY;
    for env in [Envelope::gaussian(50.0), Envelope::LogRadial { min_radius: 1e-3, max_radius: 1e3 }] {
        worst_excess = worst_excess.max(check_generator_bound(&ou, &proj, mu, 10_000, env, 1).unwrap().max_excess);
        worst_excess = worst_excess.max(check_generator_bound(&tl, &proj, mu, 10_000, env, 2).unwrap().max_excess);
    }
    let points = Envelope::LogRadial { min_radius: 0.1, max_radius: 100.0 }.sample(d, 100, 3);
    let basis = proj.basis();
    let mut worst_rel = 0.0f64;
    for x in points.rows() {
        let pairs = [
            (generator_apply_h(&ou, &proj, x), fd_generator(basis, ou_coeffs(mu), x)),
            (generator_apply_h(&tl, &proj, x), fd_generator(basis, tempered_coeffs(a, p, ell), x)),
        ];
        for (exact, fd) in pairs {
            worst_rel = worst_rel.max((exact - fd).abs() / exact.abs());
        }
    }
    verdict(
        worst_excess <= GENERATOR_EXCESS && worst_rel <= GENERATOR_FD_REL,
        format!("max(AH - muH) = {worst_excess:.3e} over 4e4 points, finite-difference rel err {worst_rel:.2e}"),
    )
}

fn rate_calculus() -> Verdict {
    let mut r = rng(6);
    let sqrt_rate = RateFunction::general(f64::sqrt, 1e-6, 1e6).unwrap();
    let (mut lin_trip, mut gen_trip, mut closed, mut pair) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let mu = r.random_range(0.2..5.0);
        let lin = RateFunction::linear(mu).unwrap();
        let u: f64 = 1.0 - r.random::<f64>();
        let y = r.random_range(0.0..10.0);
        lin_trip = lin_trip.max((lin.xi_integral(u, lin.gamma(u, y).unwrap()).unwrap() - y).abs());
        gen_trip = gen_trip.max((sqrt_rate.xi_integral(u, sqrt_rate.gamma(u, y).unwrap()).unwrap() - y).abs());
        let v = u + r.random_range(0.0..100.0);
        closed = closed.max((sqrt_rate.xi_integral(u, v).unwrap() - 2.0 * (v.sqrt() - u.sqrt())).abs());

        let rr = r.random_range(1.0..100.0);
        let t = r.random_range(0.0..5.0);
        let c = lin.c_rt(rr, t).unwrap();
        pair = pair.max((lin.gamma(c, t).unwrap() * rr - 1.0).abs());
        // γ(0, t) = t²/4 for ξ = √s, so 1/r must stay above it.
        let t: f64 = r.random_range(0.0..1.5);
        let r_max = if t > 0.0 { (4.0 / (t * t)).min(100.0) } else { 100.0 };
        let rr = r.random_range(1.0..r_max * 0.999);
        let c = sqrt_rate.c_rt(rr, t).unwrap();
        pair = pair.max((sqrt_rate.gamma(c, t).unwrap() * rr - 1.0).abs());
    }
    verdict(
        lin_trip <= ROUND_TRIP_LINEAR && gen_trip <= ROUND_TRIP_GENERAL && closed <= ROUND_TRIP_GENERAL
            && pair <= INVERSE_PAIR_REL,
        format!(
            "round trip linear {lin_trip:.1e}, sqrt {gen_trip:.1e}, sqrt vs 2(√v-√u) {closed:.1e}, C_rT pair {pair:.1e}"
        ),
    )
}

fn random_spd(r: &mut impl Rng) -> Spd2 {
    let l: [f64; 3] = [StandardNormal.sample(r), StandardNormal.sample(r), StandardNormal.sample(r)];
    Spd2 { a: l[0] * l[0] + 0.2, b: l[0] * l[1], c: l[1] * l[1] + l[2] * l[2] + 0.2 }
}

fn mat(s: Spd2) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[s.a, s.b, s.b, s.c])
}

fn kl() -> Verdict {
    let mut r = rng(7);
    let mut worst = 0.0f64;
    for i in 0..20 {
        let m1 = [StandardNormal.sample(&mut r), StandardNormal.sample(&mut r)];
        let m2 = [StandardNormal.sample(&mut r), StandardNormal.sample(&mut r)];
        let (s1, s2) = (random_spd(&mut r), random_spd(&mut r));
        let exact = kl_gaussians(&m1, &mat(s1), &m2, &mat(s2)).unwrap();
        let (mc, _) = kl_monte_carlo(m1, s1, m2, s2, 1_000_000, 100 + i);
        worst = worst.max((exact - mc).abs() / exact);
    }
    let eye = DMatrix::<f64>::identity(2, 2);
    let s = mat(Spd2 { a: 2.0, b: 0.3, c: 0.7 });
    let same = kl_gaussians(&[0.4, -1.0], &s, &[0.4, -1.0], &s).unwrap();
    let m1 = [1.5, -0.25];
    let shift = (kl_gaussians(&m1, &eye, &[0.0, 0.0], &eye).unwrap() - (m1[0] * m1[0] + m1[1] * m1[1]) / 2.0).abs();
    verdict(
        worst <= KL_MC_REL && same.abs() <= KL_IDENTITY && shift <= KL_IDENTITY,
        format!("20 instances, worst rel dev {worst:.4}; identical {same:.1e}, |m|²/2 residual {shift:.1e}"),
    )
}

fn expected_h() -> Verdict {
    let (d, mu) = (16, 1.0);
    let ou = OUProcess::new(mu, d).unwrap();
    let proj = SubspaceProjector::coordinate(d, 3).unwrap();
    let rate = RateFunction::linear(mu).unwrap();
    let mut r = rng(8);
    let (mut passed, mut worst, mut bound_err) = (0, f64::NEG_INFINITY, 0.0f64);
    for i in 0..20 {
        let radius = 0.5 * 400f64.powf(r.random::<f64>());
        let x: Vec<f64> = unit_vector(d, 200 + i).into_iter().map(|v| v * radius).collect();
        let t = r.random_range(0.0..3.0);
        let rep = expected_h_check(&ou, &proj, &rate, &x, t, 100_000, 300 + i).unwrap();
        let bound = h_of(proj.basis(), &x) * (mu * t).exp();
        bound_err = bound_err.max((rep.bound - bound).abs() / bound);
        worst = worst.max(rep.estimate - rep.bound - SIGMAS * rep.std_error);
        passed += usize::from(rep.estimate <= bound + SIGMAS * rep.std_error);
    }
    verdict(
        passed == 20 && bound_err <= 1e-12,
        format!("{passed}/20 pairs, max(estimate - bound - 3se) = {worst:.3e}"),
    )
}

fn classifier() -> Verdict {
    let sub = |e: f64| Regime::Subexponential { exponent: e };
    let cases = [
        ((0.5, 0.0), sub(1.0 / 3.0)),
        ((0.5, 1.0), Regime::Exponential),
        ((0.5, 1.5), Regime::Exponential),
        ((0.5, 1.6), Regime::Uniform),
        ((1.0, 0.5), Regime::Exponential),
        ((1.0, 0.6), Regime::Uniform),
        ((2.0, 0.0), Regime::Exponential),
        ((3.0, 0.0), Regime::Uniform),
    ];
    let mut wrong = Vec::new();
    for ((p, ell), want) in cases {
        let got = classify_ergodicity(p, ell).unwrap();
        let same = match (got, want) {
            (Regime::Subexponential { exponent: a }, Regime::Subexponential { exponent: b }) => (a - b).abs() < 1e-15,
            (a, b) => a == b,
        };
        if !same {
            wrong.push(format!("({p}, {ell}) gave {got}"));
        }
    }
    verdict(wrong.is_empty(), format!("{} cases, mismatches: [{}]", cases.len(), wrong.join(", ")))
}

fn ks_sweep() -> Verdict {
    let start = Instant::now();
    let out = execute(Command::KsSweep, "", 0).expect("ks-sweep runs");
    let secs = start.elapsed().as_secs_f64();
    let t = &out.tables[0];
    let (cr, cl, cs) = (column(t, "repetition"), column(t, "label"), column(t, "statistic"));
    let medians: Vec<(String, f64)> =
        t.rows.iter().filter(|r| text(&r[cr]) == "median").map(|r| (text(&r[cl]), num(&r[cs]))).collect();
    let reps = t.rows.iter().filter(|r| text(&r[cr]) != "median").count() / medians.len().max(1);
    let first = medians[0].1;
    let last = medians.iter().find(|(l, _)| l == "T_OU_prop").map(|m| m.1).expect("T_OU_prop row");
    let monotone = medians.windows(2).all(|w| w[1].1 <= w[0].1);
    let shown: Vec<String> = medians.iter().map(|(l, m)| format!("{l}:{m:.3}")).collect();
    verdict(
        reps == 20 && medians.len() == 4 && first >= KS_START_MIN && last <= KS_MIXED_MAX && monotone
            && secs < KS_SECONDS,
        format!("medians [{}], {secs:.1} s", shown.join(" ")),
    )
}

fn run_binary(cmd: &str, config: &Path, out: &Path, threads: usize) -> Option<i32> {
    Proc::new(env!("CARGO_BIN_EXE_mixlab"))
        .args([cmd, "--config"])
        .arg(config)
        .args(["--seed", "7", "--out"])
        .arg(out)
        .args(["--threads", &threads.to_string()])
        .output()
        .expect("binary starts")
        .status
        .code()
}

fn csv_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .map(|it| {
            it.filter_map(|e| e.ok())
                .map(|e| e.path())
                .filter(|p| p.extension().is_some_and(|x| x == "csv"))
                .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
                .collect()
        })
        .unwrap_or_default();
    files.sort();
    files
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let commands = [
        ("cutoff", ""),
        ("lowerbound", ""),
        ("quantile-table", ""),
        ("ks-sweep", ""),
        ("classify", "p = 0.5\nell = 0\n"),
        ("validate", ""),
    ];
    let mut differing = Vec::new();
    for (cmd, cfg) in commands {
        let config = dir.path().join(format!("{cmd}.cfg"));
        std::fs::write(&config, cfg).unwrap();
        let (one, eight) = (dir.path().join(format!("{cmd}-1")), dir.path().join(format!("{cmd}-8")));
        let s1 = run_binary(cmd, &config, &one, 1);
        let s8 = run_binary(cmd, &config, &eight, 8);
        let (f1, f8) = (csv_files(&one), csv_files(&eight));
        if s1 != s8 || f1.is_empty() || f1 != f8 {
            differing.push(format!("{cmd} (exit {s1:?}/{s8:?}, {} vs {} csv)", f1.len(), f8.len()));
        }
    }
    verdict(
        differing.is_empty(),
        format!("{} subcommands, differing: [{}]", commands.len(), differing.join(", ")),
    )
}

fn main() {
    let criteria: [(&str, Criterion); 11] = [
        ("r_3 quantile table", quantile_table),
        ("OU cut-off", cutoff),
        ("lower bound at T_c", lower_bound),
        ("lower <= upper", bound_ordering),
        ("generator inequality", generator),
        ("rate calculus", rate_calculus),
        ("Gaussian KL", kl),
        ("E_x[H] comparison", expected_h),
        ("ergodicity classifier", classifier),
        ("KS sweep", ks_sweep),
        ("thread-count determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        failed += usize::from(!v.passed);
        println!("{} {:>2} {name}: {}", if v.passed { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
