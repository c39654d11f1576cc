//! Tail summation for the slowly converging branch sums of the transfer
//! operator.
//!
//! The basic quantity is `sum_{a >= A} e^{i pi theta a} (a + z)^{-beta}`.
//! It is evaluated by Euler-Maclaurin with the oscillatory phase kept in the
//! summand exactly; the tail integral is closed-form at `theta = 0` and uses
//! the large-phase integration-by-parts expansion otherwise (the start `A`
//! must then satisfy `pi |theta| A >~ 30`, which the caller arranges).

use crate::error::{Error, Result};
use num_complex::Complex64;

const BERNOULLI: [(f64, f64); 5] = [
    // (B_{2k}, (2k)!)
    (1.0 / 6.0, 2.0),
    (-1.0 / 30.0, 24.0),
    (1.0 / 42.0, 720.0),
    (-1.0 / 30.0, 40_320.0),
    (5.0 / 66.0, 3_628_800.0),
];

fn cpow(base: Complex64, exp: Complex64) -> Complex64 {
    // principal branch; all bases here have positive real part
    (exp * base.ln()).exp()
}

/// `int_A^inf e^{i phi t} (t+z)^{-beta} dt` for `phi != 0`, by the descending
/// asymptotic expansion. Returns the value and a remainder estimate.
fn oscillatory_tail_integral(
    beta: Complex64,
    a_start: f64,
    z: Complex64,
    phi: f64,
) -> Result<(Complex64, f64)> {
    let c = z + a_start;
    let iphi = Complex64::new(0.0, phi);
    // J = int_c^inf e^{i phi tau} tau^{-beta} dtau (after shifting by z);
    // t_k = -e^{i phi c} (beta)_k c^{-beta-k} / (i phi)^{k+1}.
    // Asymptotic in |phi c|: sum to the smallest term.
    let phase = (iphi * c).exp();
    let mut poch = Complex64::new(1.0, 0.0);
    let mut cpow_k = cpow(c, -beta);
    let mut inv_iphi = Complex64::new(1.0, 0.0) / iphi;
    let mut total = Complex64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut trunc = f64::INFINITY;
    for k in 0..80 {
        let term = -phase * poch * cpow_k * inv_iphi;
        let mag = term.norm();
        if mag >= last {
            trunc = last;
            break;
        }
        total += term;
        last = mag;
        if mag < 1e-16 * total.norm().max(1e-300) {
            trunc = mag;
            break;
        }
        poch *= beta + k as f64;
        cpow_k /= c;
        inv_iphi /= iphi;
    }
    if !trunc.is_finite() || trunc > 1e-10 * total.norm().max(1e-300) + 1e-280 {
        return Err(Error::TailNotConverged(format!(
            "oscillatory tail integral: min term {trunc:.3e} too large (|phi c| = {:.2})",
            (phi * c.norm()).abs()
        )));
    }
    let shift = (-Complex64::new(0.0, phi) * z).exp();
    Ok((shift * total, trunc))
}

/// `d^n/dt^n [e^{i phi t} (t+z)^{-beta}]` at `t = a`.
fn phase_power_derivative(
    n: usize,
    beta: Complex64,
    a: f64,
    z: Complex64,
    phi: f64,
) -> Complex64 {
    let c = z + a;
    let iphi = Complex64::new(0.0, phi);
    let phase = (iphi * a).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    // sum_j C(n,j) (i phi)^{n-j} (-1)^j (beta)_j (a+z)^{-beta-j}
    let mut binom = 1.0f64;
    let mut poch = Complex64::new(1.0, 0.0); // (beta)_j
    let mut sign = 1.0f64;
    let mut power = cpow(c, -beta);
    for j in 0..=n {
        let osc = if n == j {
            Complex64::new(1.0, 0.0)
        } else {
            iphi.powu((n - j) as u32)
        };
        sum += binom * osc * sign * poch * power;
        if j < n {
            binom *= (n - j) as f64 / (j + 1) as f64;
            poch *= beta + j as f64;
            sign = -sign;
            power /= c;
        }
    }
    phase * sum
}

/// `sum_{a = A}^{inf} e^{i pi theta a} (a + z)^{-beta}`, with `Re(beta) > 1`
/// or nonzero phase for convergence. Returns the value and an error estimate.
pub fn lerch_tail(
    beta: Complex64,
    a_start: u64,
    z: Complex64,
    theta: f64,
) -> Result<(Complex64, f64)> {
    let phi = std::f64::consts::PI * theta;
    let a0 = a_start as f64;
    let c = z + a0;
    let (integral, int_err) = if phi == 0.0 {
        if beta.re <= 1.0 {
            return Err(Error::TailNotConverged(format!(
                "divergent tail: Re(beta) = {} <= 1 with theta = 0",
                beta.re
            )));
        }
        (cpow(c, 1.0 - beta) / (beta - 1.0), 0.0)
    } else {
        oscillatory_tail_integral(beta, a0, z, phi)?
    };
    let mut total = integral + 0.5 * phase_power_derivative(0, beta, a0, z, phi);
    let mut last_term = 0.0;
    for (k, (b2k, fact)) in BERNOULLI.iter().enumerate() {
        let term = -(b2k / fact) * phase_power_derivative(2 * k + 1, beta, a0, z, phi);
        total += term;
        last_term = term.norm();
    }
    Ok((total, int_err + last_term))
}

/// `sum_{a = A}^{inf} a^{-beta}` (Hurwitz-zeta style tail), `Re(beta) > 1`.
pub fn zeta_tail(beta: Complex64, a_start: u64) -> Result<Complex64> {
    Ok(lerch_tail(beta, a_start, Complex64::new(0.0, 0.0), 0.0)?.0)
}

/// Repeated Abel summation of `sum_{i>=0} q^{A+i} psi_i` for vectors
/// `psi_i` (one entry per basis column), `|q| = 1`, `q != 1`. The table must
/// extend far enough that the `depth`-th difference tail truncates cleanly.
pub fn abel_sum_vectors(
    q: Complex64,
    a_start: u64,
    table: &[Vec<Complex64>],
    depth: usize,
) -> Vec<Complex64> {
    let cols = table.first().map_or(0, Vec::len);
    let len = table.len() - depth;
    // forward differences up to `depth`
    let mut diffs: Vec<Vec<Vec<Complex64>>> = vec![table.to_vec()];
    for d in 1..=depth {
        let prev = &diffs[d - 1];
        let next: Vec<Vec<Complex64>> = (0..prev.len() - 1)
            .map(|i| (0..cols).map(|j| prev[i + 1][j] - prev[i][j]).collect())
            .collect();
        diffs.push(next);
    }
    // S_depth by direct summation of the damped difference sequence
    let mut s: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); cols];
    let mut qa = q.powu((a_start % (1 << 30)) as u32); // |q|=1: only phase matters
    // recompute phase accurately: q^a = e^{i arg(q) a}
    let argq = q.arg();
    let phase = |a: u64| Complex64::from_polar(1.0, argq * a as f64);
    qa = phase(a_start);
    let _ = qa;
    for (i, row) in diffs[depth].iter().enumerate().take(len) {
        let w = phase(a_start + i as u64);
        for j in 0..cols {
            s[j] += w * row[j];
        }
    }
    // back-substitute: S_k = (q^A D_k(A) + q S_{k+1}) / (1 - q)
    for k in (0..depth).rev() {
        let head = &diffs[k][0];
        let w = phase(a_start);
        for j in 0..cols {
            s[j] = (w * head[j] + q * s[j]) / (Complex64::new(1.0, 0.0) - q);
        }
    }
    s
}
