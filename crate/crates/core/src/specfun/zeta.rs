//! Riemann zeta on vertical lines by Euler-Maclaurin summation.

use num_complex::Complex64;

use super::gamma::BERNOULLI_2K;
use crate::error::{Error, Result};

/// Factorials (2k)! for k = 1..=12.
fn factorial_2k(k: usize) -> f64 {
    let mut f = 1.0;
    for i in 2..=(2 * k) {
        f *= i as f64;
    }
    f
}

/// Euler-Maclaurin evaluation with explicit truncation parameters: direct
/// sum to `n` terms and `k` Bernoulli corrections. Exposed so refinement
/// oracles can double the truncation independently of the default.
pub fn zeta_em(s: Complex64, n: usize, k: usize) -> Complex64 {
    assert!(n >= 2 && k >= 1 && k <= BERNOULLI_2K.len());
    let mut direct = Complex64::new(0.0, 0.0);
    for m in 1..n {
        direct += (-s * (m as f64).ln()).exp();
    }
    let nf = n as f64;
    let n_pow = (-s * nf.ln()).exp(); // N^{-s}
    let mut value = direct + n_pow * nf / (s - 1.0) + n_pow * 0.5;

    // sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let mut poch = s; // rising product with 2k-1 factors
    let mut n_shift = n_pow * nf; // N^{-s+1}
    for j in 1..=k {
        n_shift = n_shift / (nf * nf); // N^{-s-2j+1}
        value += BERNOULLI_2K[j - 1] / factorial_2k(j) * poch * n_shift;
        poch = poch * (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
    }
    value
}

/// Riemann zeta for `Re s > 0`, `s != 1`, `|Im s| <= 1000`.
///
/// Truncation `N ~ max(20, 2 |Im s|)` with ten Bernoulli corrections keeps
/// the relative error at or below 1e-10 on the validated strip.
pub fn zeta_cx(s: Complex64) -> Result<Complex64> {
    if s.re <= 0.0 {
        return Err(Error::Domain(format!("zeta_cx: Re s = {} <= 0", s.re)));
    }
    if (s - 1.0).norm() < 1e-9 {
        return Err(Error::Domain("zeta_cx: pole at s = 1".into()));
    }
    if s.im.abs() > 1000.0 {
        return Err(Error::Domain(format!(
            "zeta_cx: |Im s| = {} beyond validated 1000",
            s.im.abs()
        )));
    }
    let n = 20usize.max((2.0 * s.im.abs()).ceil() as usize);
    Ok(zeta_em(s, n, 10))
}
