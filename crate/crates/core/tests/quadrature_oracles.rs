//! Closed-form averages checked against direct numerical integration.

use dlcz_core::model::{amplitude_factor, lorentzian_characteristic, DecayModel, MotionBroadeningParams};
use std::f64::consts::PI;

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const K15_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const G7_WEIGHTS: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// 15-point Kronrod estimate and its difference from the embedded 7-point Gauss rule.
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let (mut k, mut g) = (0.0, 0.0);
    for (i, (&x, &w)) in GK_NODES.iter().zip(&K15_WEIGHTS).enumerate() {
        let fx = if x == 0.0 { f(c) } else { f(c - h * x) + f(c + h * x) };
        k += w * fx;
        if i % 2 == 1 {
            g += G7_WEIGHTS[i / 2] * fx;
        }
    }
    (k * h, (k - g).abs() * h)
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (est, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return est;
    }
    let m = 0.5 * (a + b);
    adaptive(f, a, m, tol / 2.0, depth - 1) + adaptive(f, m, b, tol / 2.0, depth - 1)
}

/// Wynn's epsilon algorithm on a sequence of partial sums.
fn wynn_epsilon(sums: &[f64]) -> f64 {
    let n = sums.len();
    let mut prev = vec![0.0; n + 1];
    let mut cur: Vec<f64> = sums.to_vec();
    let mut best = *sums.last().unwrap();
    for k in 1..n {
        let next: Vec<f64> = (0..n - k)
            .map(|i| {
                let d = cur[i + 1] - cur[i];
                if d == 0.0 {
                    f64::INFINITY
                } else {
                    prev[i + 1] + 1.0 / d
                }
            })
            .collect();
        if k % 2 == 0 && next.last().is_some_and(|v| v.is_finite()) {
            best = *next.last().unwrap();
        }
        prev = cur;
        cur = next;
        if cur.len() < 2 {
            break;
        }
    }
    best
}

/// `∫ P(x) cos(k x) dx` for the Lorentzian `P(x) = (s/π)/(x² + s²)`, summed
/// over half-periods of the cosine and extrapolated.
fn lorentzian_cos_integral(s: f64, k: f64) -> f64 {
    let p = |x: f64| (s / PI) / (x * x + s * s);
    if k == 0.0 {
        return 1.0;
    }
    let f = |x: f64| 2.0 * p(x) * (k * x).cos();
    let half = PI / k;
    let mut sum = 0.0;
    let mut sums = Vec::new();
    for n in 0..40 {
        let (a, b) = (n as f64 * half, (n + 1) as f64 * half);
        sum += adaptive(&f, a, b, 1e-14, 30);
        sums.push(sum);
    }
    wynn_epsilon(&sums)
}

#[test]
fn wynn_accelerates_alternating_series() {
    // ln 2 = 1 - 1/2 + 1/3 - ...
    let mut s = 0.0;
    let sums: Vec<f64> = (1..=20)
        .map(|n| {
            s += if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64;
            s
        })
        .collect();
    assert!((wynn_epsilon(&sums) - 2f64.ln()).abs() < 1e-12);
}

#[test]
fn lorentzian_average_matches_double_integral() {
    let (mu, sigma_delta) = (5.0e3, 4e-3);
    // two independent supplies of half-width σ_Δ/2 each
    let sigma_b = sigma_delta / 2.0;
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let x = 5.0 * i as f64 / 19.0;
        let t = x / (2.0 * PI * mu * sigma_delta);
        let k = 2.0 * PI * mu * t;
        // cos(k(a - b)) = cos ka cos kb + sin ka sin kb; the sine averages vanish by symmetry
        let c = lorentzian_cos_integral(sigma_b, k);
        let oracle = c * c;
        let model = lorentzian_characteristic(mu, sigma_delta, t).unwrap();
        worst = worst.max((oracle - model).abs());
    }
    assert!(worst < 1e-6, "max deviation {worst:e}");
}

/// `∫ N(0, s)(x) cos(k x) dx` by direct quadrature over ±12 s.
fn gaussian_cos_integral(s: f64, k: f64) -> f64 {
    let f = |x: f64| (-0.5 * (x / s).powi(2)).exp() / (s * (2.0 * PI).sqrt()) * (k * x).cos();
    adaptive(&f, -12.0 * s, 12.0 * s, 1e-13, 40)
}

#[test]
fn motional_amplitude_matches_velocity_and_position_averages() {
    let m = MotionBroadeningParams {
        delta_k: 2.0 * PI / 795e-9 * 0.0524,
        v_s: 0.12,
        l: 1.0e-3,
        b_gradient: 0.05,
        mu_prime: 1.4e6,
    };
    let decay = DecayModel::FromMotion(m);
    for i in 0..15 {
        let t = i as f64 * 3e-6;
        let velocity = gaussian_cos_integral(m.v_s, m.delta_k * t);
        let position = gaussian_cos_integral(m.l, 2.0 * PI * m.mu_prime * m.b_gradient * t);
        let model = amplitude_factor(&decay, t).unwrap();
        assert!((velocity * position - model).abs() < 1e-9, "t={t}: {} vs {model}", velocity * position);
    }
}
