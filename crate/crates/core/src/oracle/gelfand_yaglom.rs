//! Dirichlet determinant ratios by the Gelfand–Yaglom initial-value method.
//!
//! `u″ = W(τ) u`, `u(−T/2) = 0`, `u′(−T/2) = 1` is integrated with an
//! adaptive Dormand–Prince 5(4) pair. The state is renormalised whenever it
//! grows large and the scale is carried in log form, so exponentially
//! growing solutions do not overflow.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GyOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for GyOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-13,
            abs_tol: 1e-16,
            max_steps: 2_000_000,
        }
    }
}

/// `u(T/2)` as `(sign, ln|u|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointValue {
    pub sign: f64,
    pub ln_abs: f64,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// 5th-order weights are the last row of A; these are the 4th-order ones.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

pub fn shoot<W: Fn(f64) -> f64>(w: W, t: f64, opts: &GyOptions) -> Result<EndpointValue> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("interval length must be positive, got {t}")));
    }
    let rhs = |tau: f64, y: [f64; 2]| [y[1], w(tau) * y[0]];
    let (start, end) = (-0.5 * t, 0.5 * t);
    let mut tau = start;
    let mut y = [0.0, 1.0];
    let mut ln_scale = 0.0;
    let mut h = (t * 1e-3).min(1e-2);
    let mut k = [[0.0; 2]; 7];
    k[0] = rhs(tau, y);
    let mut steps = 0;
    while tau < end {
        if steps >= opts.max_steps {
            return Err(Error::Ode {
                t: tau,
                reason: format!("step budget {} exhausted", opts.max_steps),
            });
        }
        steps += 1;
        if tau + h > end {
            h = end - tau;
        }
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                ys[0] += h * A[s][j] * kj[0];
                ys[1] += h * A[s][j] * kj[1];
            }
            k[s] = rhs(tau + C[s] * h, ys);
        }
        let mut y5 = y;
        let mut err = 0.0f64;
        for i in 0..2 {
            let mut inc5 = 0.0;
            let mut inc4 = 0.0;
            for s in 0..6 {
                inc5 += A[6][s] * k[s][i];
            }
            for s in 0..7 {
                inc4 += B4[s] * k[s][i];
            }
            y5[i] = y[i] + h * inc5;
            let sc = opts.abs_tol + opts.rel_tol * y[i].abs().max(y5[i].abs());
            err = err.max((h * (inc5 - inc4)).abs() / sc);
        }
        if !err.is_finite() {
            return Err(Error::Ode {
                t: tau,
                reason: "non-finite error estimate".into(),
            });
        }
        if err <= 1.0 {
            tau += h;
            y = y5;
            // FSAL: the 7th stage is f at the new point
            k[0] = k[6];
            let mag = y[0].abs().max(y[1].abs());
            if mag > 1e100 {
                y[0] /= mag;
                y[1] /= mag;
                k[0] = rhs(tau, y);
                ln_scale += mag.ln();
            }
        }
        let rejected = err > 1.0;
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if rejected && h < 1e-14 * t {
            return Err(Error::Ode {
                t: tau,
                reason: "step size underflow".into(),
            });
        }
    }
    Ok(EndpointValue {
        sign: y[0].signum(),
        ln_abs: y[0].abs().ln() + ln_scale,
    })
}

/// `Det[−∂² + W_a] / Det[−∂² + W_b]` on `[−T/2, T/2]` with Dirichlet walls.
pub fn gelfand_yaglom_ratio<Wa, Wb>(potential_a: Wa, potential_b: Wb, t: f64) -> Result<f64>
where
    Wa: Fn(f64) -> f64,
    Wb: Fn(f64) -> f64,
{
    gelfand_yaglom_ratio_with(potential_a, potential_b, t, &GyOptions::default())
}

pub fn gelfand_yaglom_ratio_with<Wa, Wb>(potential_a: Wa, potential_b: Wb, t: f64, opts: &GyOptions) -> Result<f64>
where
    Wa: Fn(f64) -> f64,
    Wb: Fn(f64) -> f64,
{
    let a = shoot(potential_a, t, opts)?;
    let b = shoot(potential_b, t, opts)?;
    Ok(a.sign * b.sign * (a.ln_abs - b.ln_abs).exp())
}
