//! Complex log-Gamma for vertical-line integrands.

use num_complex::Complex64;

use super::gamma::STIRLING;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// ln Gamma(z) on the principal branch up to a multiple of 2 pi i (irrelevant
/// after exponentiation). Requires z away from the non-positive integers.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: ln Gamma(z) = ln pi - ln sin(pi z) - ln Gamma(1 - z)
        let pi = std::f64::consts::PI;
        return Complex64::new(pi.ln(), 0.0) - (z * pi).sin().ln() - ln_gamma_complex(1.0 - z);
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for &(n, d) in STIRLING.iter().take(10) {
        corr += p * (n / d);
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + corr - shift
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_real_axis() {
        let v = ln_gamma_complex(Complex64::new(4.5, 0.0));
        assert!((v.re - crate::scalar::gamma::gamma(4.5).ln()).abs() < 1e-14);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn modulus_on_line() {
        // |Gamma(1/2 + i t)|^2 = pi / cosh(pi t)
        for &t in &[0.3, 2.0, 11.0, 30.0] {
            let v = ln_gamma_complex(Complex64::new(0.5, t));
            let expect = 0.5 * (std::f64::consts::PI / (std::f64::consts::PI * t).cosh()).ln();
            assert!((v.re - expect).abs() < 1e-13, "t = {t}");
        }
    }

    #[test]
    fn recurrence() {
        let z = Complex64::new(0.7, -3.2);
        let lhs = ln_gamma_complex(z + 1.0).exp();
        let rhs = z * ln_gamma_complex(z).exp();
        assert!((lhs - rhs).norm() < 1e-13 * rhs.norm());
    }
}
