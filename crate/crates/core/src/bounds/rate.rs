use std::fmt;
use std::sync::Arc;

use crate::error::{domain, structural, Result};

type Xi = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Concave growth rate ξ of a Lyapunov inequality E_x[H(Y_t)] ≤ γ(H(x), t).
///
/// Ξ(u, v) = ∫_u^v ds/ξ(s), γ(u, ·) is the inverse of Ξ(u, ·), and η_T is
/// the inverse of γ(·, T).
#[derive(Clone)]
pub enum RateFunction {
    /// ξ(s) = μ s.
    Linear { mu: f64 },
    /// Positive, increasing, concave ξ on (0, ∞). Must be safe to call from
    /// several threads.
    GeneralConcave(Xi),
}

impl fmt::Debug for RateFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RateFunction::Linear { mu } => write!(f, "Linear {{ mu: {mu} }}"),
            RateFunction::GeneralConcave(_) => f.write_str("GeneralConcave(..)"),
        }
    }
}

const GRID_POINTS: usize = 1000;
const CONCAVITY_TOL: f64 = 1e-8;
const QUAD_TOL: f64 = 1e-12;
/// Largest argument explored when bracketing roots of Ξ.
const V_MAX: f64 = 1e300;
const U_MIN: f64 = 1e-300;

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (est, err) = gk15(f, a, b);
    if depth == 0 || err <= tol * est.abs().max(f64::MIN_POSITIVE) || err < 1e-300 {
        return est;
    }
    let m = 0.5 * (a + b);
    adaptive(f, a, m, tol, depth - 1) + adaptive(f, m, b, tol, depth - 1)
}

impl RateFunction {
    pub fn linear(mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(structural(format!("linear rate needs mu > 0, got {mu}")));
        }
        Ok(RateFunction::Linear { mu })
    }

    /// Wraps `xi` after checking positivity, monotonicity and concavity on
    /// 1000 log-spaced points of `[lo, hi]`.
    pub fn general<F>(xi: F, lo: f64, hi: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(structural(format!("diagnostic range [{lo}, {hi}] is invalid")));
        }
        let step = (hi / lo).ln() / (GRID_POINTS - 1) as f64;
        let xs: Vec<f64> = (0..GRID_POINTS).map(|i| lo * (step * i as f64).exp()).collect();
        let fs: Vec<f64> = xs.iter().map(|&x| xi(x)).collect();
        for (x, f) in xs.iter().zip(&fs) {
            if !(f.is_finite() && *f > 0.0) {
                return Err(structural(format!("rate is not positive at s = {x}: {f}")));
            }
        }
        for i in 1..GRID_POINTS {
            if fs[i] < fs[i - 1] {
                return Err(structural(format!("rate decreases near s = {}", xs[i])));
            }
        }
        for i in 1..GRID_POINTS - 1 {
            let w = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
            let chord = fs[i - 1] + w * (fs[i + 1] - fs[i - 1]);
            if chord - fs[i] > CONCAVITY_TOL * (1.0 + fs[i].abs()) {
                return Err(structural(format!("rate is not concave near s = {}", xs[i])));
            }
        }
        Ok(RateFunction::GeneralConcave(Arc::new(xi)))
    }

    /// ξ(s).
    pub fn rate(&self, s: f64) -> f64 {
        match self {
            RateFunction::Linear { mu } => mu * s,
            RateFunction::GeneralConcave(xi) => xi(s),
        }
    }

    /// Ξ(u, v) = ∫_u^v ds/ξ(s) for 0 < u ≤ v.
    pub fn xi_integral(&self, u: f64, v: f64) -> Result<f64> {
        if !(u > 0.0) {
            return Err(domain(format!("Xi needs u > 0, got {u}")));
        }
        if !(v >= u) {
            return Err(domain(format!("Xi needs v >= u, got u = {u}, v = {v}")));
        }
        Ok(self.xi_unchecked(u, v))
    }

    fn xi_unchecked(&self, u: f64, v: f64) -> f64 {
        match self {
            RateFunction::Linear { mu } => (v / u).ln() / mu,
            RateFunction::GeneralConcave(xi) => {
                if u == v {
                    return 0.0;
                }
                // s = e^w turns the integrand into e^w / ξ(e^w).
                let g = |w: f64| {
                    let s = w.exp();
                    s / xi(s)
                };
                let (a, b) = (u.ln(), v.ln());
                let pieces = ((b - a) / 2.0).ceil().max(1.0) as usize;
                let h = (b - a) / pieces as f64;
                (0..pieces)
                    .map(|i| {
                        let lo = a + h * i as f64;
                        let hi = if i + 1 == pieces { b } else { lo + h };
                        adaptive(&g, lo, hi, QUAD_TOL, 30)
                    })
                    .sum()
            }
        }
    }

    /// γ(u, y): the v ≥ u with Ξ(u, v) = y.
    pub fn gamma(&self, u: f64, y: f64) -> Result<f64> {
        if !(u > 0.0) {
            return Err(domain(format!("gamma needs u > 0, got {u}")));
        }
        if !(y >= 0.0) {
            return Err(domain(format!("gamma needs y >= 0, got {y}")));
        }
        match self {
            RateFunction::Linear { mu } => Ok(u * (mu * y).exp()),
            RateFunction::GeneralConcave(xi) => {
                if y == 0.0 {
                    return Ok(u);
                }
                // Bracket in w = ln v, then Newton safeguarded by bisection.
                let w0 = u.ln();
                let mut lo = w0;
                let mut lo_val = 0.0;
                let mut hi = w0 + 1.0;
                let mut hi_val = self.xi_unchecked(u, hi.exp());
                while hi_val < y {
                    if hi.exp() >= V_MAX {
                        return Err(domain(format!(
                            "y = {y} is beyond sup_v Xi(u, v) ≈ {hi_val} for u = {u}"
                        )));
                    }
                    lo = hi;
                    lo_val = hi_val;
                    hi = (w0 + 2.0 * (hi - w0)).min(V_MAX.ln());
                    hi_val = self.xi_unchecked(u, hi.exp());
                }
                let mut w = lo + (hi - lo) * (y - lo_val) / (hi_val - lo_val);
                for _ in 0..200 {
                    let g = self.xi_unchecked(u, w.exp()) - y;
                    if g > 0.0 {
                        hi = w;
                    } else {
                        lo = w;
                    }
                    let s = w.exp();
                    let slope = s / xi(s);
                    let mut next = w - g / slope;
                    if !(next > lo && next < hi) {
                        next = 0.5 * (lo + hi);
                    }
                    if (next - w).abs() <= 1e-15 * w.abs().max(1.0) || hi - lo <= 1e-15 * w.abs().max(1.0) {
                        w = next;
                        break;
                    }
                    w = next;
                }
                Ok(w.exp())
            }
        }
    }

    /// η_T(v): the u with γ(u, T) = v.
    fn eta(&self, v: f64, t: f64) -> Result<f64> {
        match self {
            RateFunction::Linear { mu } => Ok(v * (-mu * t).exp()),
            RateFunction::GeneralConcave(xi) => {
                if t == 0.0 {
                    return Ok(v);
                }
                // γ(u, T) = v  ⇔  Ξ(u, v) = T, decreasing in u.
                if self.xi_unchecked(U_MIN, v) < t {
                    return Err(domain(format!(
                        "gamma(0, T) exceeds {v} for T = {t}; no threshold exists"
                    )));
                }
                let (mut lo, mut hi) = (U_MIN.ln(), v.ln());
                let mut w = 0.5 * (lo + hi);
                for _ in 0..300 {
                    let g = self.xi_unchecked(w.exp(), v) - t;
                    if g > 0.0 {
                        lo = w;
                    } else {
                        hi = w;
                    }
                    let s = w.exp();
                    let slope = -s / xi(s);
                    let mut next = w - g / slope;
                    if !(next > lo && next < hi) {
                        next = 0.5 * (lo + hi);
                    }
                    if (next - w).abs() <= 1e-15 * w.abs().max(1.0) || hi - lo <= 1e-15 * w.abs().max(1.0) {
                        w = next;
                        break;
                    }
                    w = next;
                }
                Ok(w.exp())
            }
        }
    }

    /// C_{r,T} = η_T(1/r), the threshold used by the lower bound.
    pub fn c_rt(&self, r: f64, t: f64) -> Result<f64> {
        if !(r >= 1.0 && r.is_finite()) {
            return Err(domain(format!("C_rT needs r >= 1, got {r}")));
        }
        if !(t >= 0.0 && t.is_finite()) {
            return Err(domain(format!("C_rT needs T >= 0, got {t}")));
        }
        let v = 1.0 / r;
        if v > self.gamma(1.0, t)? {
            return Err(domain(format!("1/r = {v} exceeds gamma(1, T) for T = {t}")));
        }
        self.eta(v, t)
    }
}
