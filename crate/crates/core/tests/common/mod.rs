//! Reference computations used as oracles by the integration tests.
//!
//! Nothing here calls into the library's numerical code; each routine is
//! the most direct evaluation of its definition.
#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal_pdf(x: f64, mean: f64, sd: f64) -> f64 {
    let z = (x - mean) / sd;
    (-0.5 * z * z).exp() / (sd * (2.0 * std::f64::consts::PI).sqrt())
}

/// Composite Simpson rule with `n` (even) intervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// ½∫|p - q| between two univariate normals by quadrature.
pub fn normal_tv(m1: f64, s1: f64, m2: f64, s2: f64) -> f64 {
    let lo = (m1 - 12.0 * s1).min(m2 - 12.0 * s2);
    let hi = (m1 + 12.0 * s1).max(m2 + 12.0 * s2);
    0.5 * simpson(|x| (normal_pdf(x, m1, s1) - normal_pdf(x, m2, s2)).abs(), lo, hi, 400_000)
}

/// Density of χ²_k.
pub fn chisq_pdf(k: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let h = k / 2.0;
    ((h - 1.0) * x.ln() - x / 2.0 - h * std::f64::consts::LN_2 - ln_gamma_half_integer(k)).exp()
}

/// ln Γ(k/2) for positive integer k via the recurrences from Γ(1) and Γ(½).
fn ln_gamma_half_integer(k: f64) -> f64 {
    let k = k.round() as u64;
    let (mut v, mut x) = if k.is_multiple_of(2) { (0.0, 1.0) } else { (0.5 * std::f64::consts::PI.ln(), 0.5) };
    while x < k as f64 / 2.0 {
        v += x.ln();
        x += 1.0;
    }
    v
}

/// H(x) = (1 + Σ_j <y_j, x>²)^(-1/2).
pub fn h_of(basis: &[Vec<f64>], x: &[f64]) -> f64 {
    let g2: f64 = basis
        .iter()
        .map(|y| y.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().powi(2))
        .sum();
    1.0 / (1.0 + g2).sqrt()
}

/// <b, ∇H> + ½ Σ_i a_ii ∂²H/∂x_i² by central differences, for a diffusion
/// with drift b(x) and scalar diffusion matrix c(x)·I given by `coeffs`.
pub fn fd_generator(basis: &[Vec<f64>], coeffs: impl Fn(&[f64]) -> (Vec<f64>, f64), x: &[f64]) -> f64 {
    let (b, c) = coeffs(x);
    let g2 = 1.0 / h_of(basis, x).powi(2) - 1.0;
    let s = 1e-3 * (1.0 + g2).sqrt();
    let h0 = h_of(basis, x);
    let mut y = x.to_vec();
    let mut acc = 0.0;
    for i in 0..x.len() {
        y[i] = x[i] + s;
        let hp = h_of(basis, &y);
        y[i] = x[i] - s;
        let hm = h_of(basis, &y);
        y[i] = x[i];
        acc += b[i] * (hp - hm) / (2.0 * s) + 0.5 * c * (hp - 2.0 * h0 + hm) / (s * s);
    }
    acc
}

/// OU drift -μx with a = 2I.
pub fn ou_coeffs(mu: f64) -> impl Fn(&[f64]) -> (Vec<f64>, f64) {
    move |x| (x.iter().map(|v| -mu * v).collect(), 2.0)
}

/// Tempered Langevin with H(r) = a r^p: drift -H^(2ℓ-1)(H - 2ℓ) H' x/|x|,
/// a = 2 H^(2ℓ) I.
pub fn tempered_coeffs(a: f64, p: f64, ell: f64) -> impl Fn(&[f64]) -> (Vec<f64>, f64) {
    move |x| {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let h = a * r.powf(p);
        let dh = a * p * r.powf(p - 1.0);
        let s = -h.powf(2.0 * ell - 1.0) * (h - 2.0 * ell) * dh / r;
        (x.iter().map(|v| s * v).collect(), 2.0 * h.powf(2.0 * ell))
    }
}

/// Symmetric positive-definite 2×2 matrix [[a, b], [b, c]].
#[derive(Debug, Clone, Copy)]
pub struct Spd2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Spd2 {
    pub fn det(&self) -> f64 {
        self.a * self.c - self.b * self.b
    }

    /// x ↦ xᵀ S⁻¹ x.
    pub fn inv_form(&self, x: [f64; 2]) -> f64 {
        (self.c * x[0] * x[0] - 2.0 * self.b * x[0] * x[1] + self.a * x[1] * x[1]) / self.det()
    }

    pub fn log_pdf(&self, mean: [f64; 2], x: [f64; 2]) -> f64 {
        let d = [x[0] - mean[0], x[1] - mean[1]];
        -0.5 * self.inv_form(d) - 0.5 * self.det().ln() - (2.0 * std::f64::consts::PI).ln()
    }

    /// Lower Cholesky factor times z.
    pub fn chol_apply(&self, z: [f64; 2]) -> [f64; 2] {
        let l11 = self.a.sqrt();
        let l21 = self.b / l11;
        let l22 = (self.c - l21 * l21).sqrt();
        [l11 * z[0], l21 * z[0] + l22 * z[1]]
    }
}

/// Mean and standard error of log q1(X) - log q2(X) with X ~ q1.
pub fn kl_monte_carlo(m1: [f64; 2], s1: Spd2, m2: [f64; 2], s2: Spd2, n: usize, seed: u64) -> (f64, f64) {
    let mut r = rng(seed);
    let (mut sum, mut sq) = (0.0, 0.0);
    for _ in 0..n {
        let z = [StandardNormal.sample(&mut r), StandardNormal.sample(&mut r)];
        let e = s1.chol_apply(z);
        let x = [m1[0] + e[0], m1[1] + e[1]];
        let l = s1.log_pdf(m1, x) - s2.log_pdf(m2, x);
        sum += l;
        sq += l * l;
    }
    let nf = n as f64;
    let mean = sum / nf;
    (mean, ((sq / nf - mean * mean) / nf).sqrt())
}

/// Median of a finite sample.
pub fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
