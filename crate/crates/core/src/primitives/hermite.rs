use crate::primitives::PhysicalParams;

// Rescale the unnormalized recurrence once it exceeds this magnitude; the
// accumulated log scale is folded back in together with e^{-ξ²/2}.
const RESCALE: f64 = 1e150;

/// Normalized oscillator eigenfunctions `φ_0(x) … φ_{n_max}(x)`.
///
/// Uses the normalized three-term recurrence
/// `φ_{n+1} = sqrt(2/(n+1))·ξ·φ_n − sqrt(n/(n+1))·φ_{n−1}`, `ξ = x/L`, so raw
/// Hermite polynomials never appear. Far outside the classically allowed
/// region the Gaussian factor would underflow long before the polynomial part
/// overflows; a running log scale keeps both finite.
pub fn hermite_functions(x: f64, n_max: usize, params: &PhysicalParams) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    hermite_functions_into(x, params, &mut out);
    out
}

/// Fills `out[n] = φ_n(x)` for `n < out.len()`.
pub fn hermite_functions_into(x: f64, params: &PhysicalParams, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    let xi = x / params.length_scale();
    let gauss_log = -0.5 * xi * xi;
    let amp = params.ground_amplitude();

    let finish = |value: f64, log_scale: f64| -> f64 {
        if value == 0.0 {
            0.0
        } else if log_scale == 0.0 {
            amp * value * gauss_log.exp()
        } else {
            amp * value.signum() * (value.abs().ln() + log_scale + gauss_log).exp()
        }
    };

    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut log_scale = 0.0;
    out[0] = finish(cur, log_scale);
    for n in 0..out.len() - 1 {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * xi * cur - (nf / (nf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
        out[n + 1] = finish(cur, log_scale);
    }
}
