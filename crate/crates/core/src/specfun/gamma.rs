//! Gamma and digamma for real arguments.

use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn check_pole(function: &'static str, x: f64) -> Result<()> {
    if x <= 0.0 && x == x.round() {
        return Err(Error::Pole { function, x });
    }
    Ok(())
}

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (Γ(x + 1) is being evaluated)
    let mut a = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    a
}

/// Γ(x) for real `x` away from the poles at 0, −1, −2, …
pub fn gamma(x: f64) -> Result<f64> {
    check_pole("gamma", x)?;
    if x < 0.5 {
        // reflection
        return Ok(PI / ((PI * x).sin() * gamma(1.0 - x)?));
    }
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * lanczos_sum(x))
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_pole("ln_gamma", x)?;
    if x < 0.5 {
        let s = (PI * x).sin().abs();
        return Ok(PI.ln() - s.ln() - ln_gamma(1.0 - x)?);
    }
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + lanczos_sum(x).ln())
}

/// ln(n!) for the normalisation prefactors of bound states.
pub fn ln_factorial(n: u32) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n <= 20 {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    // n + 1 > 0 is never a pole
    ln_gamma(n as f64 + 1.0).unwrap_or(f64::NAN)
}

/// Digamma ψ(x) = Γ′(x)/Γ(x).
pub fn digamma(x: f64) -> Result<f64> {
    check_pole("digamma", x)?;
    if x <= 0.0 {
        return Ok(digamma(1.0 - x)? - PI / (PI * x).tan());
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Bernoulli tail: B_2n / (2n x^2n)
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    Ok(acc + x.ln() - 0.5 / x - series)
}
