//! Modified Bessel K with complex order by direct quadrature of the
//! integral representation K_mu(x) = int_0^inf exp(-x cosh t) cosh(mu t) dt.

use num_complex::Complex64;

use super::quad::adaptive_quad;
use super::AccuracyBudget;
use crate::error::{Error, Result};

/// Largest exponent before exp(-u) underflows to zero.
const EXP_UNDERFLOW: f64 = 745.0;

/// K_mu(x) for complex order `mu` and real `x`.
///
/// Validated box: `x >= 0.05`, `|Re mu| <= 5`, `|Im mu| <= 30`. The
/// truncation point T solves `x cosh T = 745`, past which the integrand is
/// below the double-precision underflow threshold.
pub fn bessel_k_cx_order(mu: Complex64, x: f64, budget: &AccuracyBudget) -> Result<Complex64> {
    if x < 0.05 {
        return Err(Error::Domain(format!("bessel_k_cx_order: x = {x} below validated 0.05")));
    }
    if mu.re.abs() > 5.0 || mu.im.abs() > 30.0 {
        return Err(Error::Domain(format!(
            "bessel_k_cx_order: order {mu} outside validated |Re| <= 5, |Im| <= 30"
        )));
    }
    if x >= EXP_UNDERFLOW {
        // Integrand below underflow on the whole half-line.
        return Ok(Complex64::new(0.0, 0.0));
    }
    let t_max = (EXP_UNDERFLOW / x).acosh();
    let f = |t: f64| (mu * t).cosh() * (-x * t.cosh()).exp();
    let r = adaptive_quad(f, 0.0, t_max, budget)?;
    if !r.converged {
        return Err(Error::QuadratureBudget { error: r.error });
    }
    Ok(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    #[test]
    fn half_order_closed_form() {
        // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
        let budget = AccuracyBudget::default();
        let k = bessel_k_cx_order(Complex64::new(0.5, 0.0), 2.0, &budget).unwrap();
        let exact = (PI / 4.0).sqrt() * (-2.0f64).exp();
        assert!((k.re - exact).abs() < 1e-12, "{} vs {exact}", k.re);
        assert!(k.im.abs() < 1e-12);
    }

    #[test]
    fn even_in_order() {
        // K can be large for sizable |Re mu| at small x, so converge on a
        // relative target there.
        let budget = AccuracyBudget::new(1e-10, 1e-12, 500_000);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mu = Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-20.0..20.0));
            let x = rng.gen_range(0.1..10.0);
            let a = bessel_k_cx_order(mu, x, &budget).unwrap();
            let b = bessel_k_cx_order(-mu, x, &budget).unwrap();
            assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn order_zero_against_fixed_grid_refinement() {
        // Fixed-grid Simpson oracle at 4x the node density of a coarse run.
        let x = 1.0;
        let t_max = (EXP_UNDERFLOW / x).acosh();
        let simpson = |n: usize| {
            let h = t_max / n as f64;
            let f = |t: f64| (-x * t.cosh()).exp();
            let mut s = f(0.0) + f(t_max);
            for i in 1..n {
                s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            s * h / 3.0
        };
        let oracle = simpson(4 * 4096);
        let budget = AccuracyBudget::default();
        let k = bessel_k_cx_order(Complex64::new(0.0, 0.0), x, &budget).unwrap();
        assert!((k.re - oracle).abs() < 1e-10, "{} vs {oracle}", k.re);
    }

    #[test]
    fn positive_and_decaying_for_real_order() {
        let budget = AccuracyBudget::default();
        let mut prev = f64::INFINITY;
        for i in 0..10 {
            let x = 0.5 + i as f64;
            let k = bessel_k_cx_order(Complex64::new(1.5, 0.0), x, &budget).unwrap();
            assert!(k.re > 0.0);
            assert!(k.im.abs() < 1e-12);
            assert!(k.re < prev, "|K| must decay in x");
            prev = k.re;
        }
    }

    #[test]
    fn box_rejections() {
        let budget = AccuracyBudget::default();
        assert!(bessel_k_cx_order(Complex64::new(0.0, 0.0), 0.01, &budget).is_err());
        assert!(bessel_k_cx_order(Complex64::new(6.0, 0.0), 1.0, &budget).is_err());
        assert!(bessel_k_cx_order(Complex64::new(0.0, 31.0), 1.0, &budget).is_err());
    }
}
