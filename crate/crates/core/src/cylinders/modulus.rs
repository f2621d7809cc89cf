//! Modulus of a flat cylinder along a Teichmüller ray.
//!
//! The ray stretches the direction transverse to the cylinder by `e^t` and
//! contracts its core by `e^{-t}`, so the modulus grows as `e^{2t}·mod₀`.
//! Its reciprocal bounds the extremal length of the core curve from above.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::OrigamiError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayModulus {
    pub modulus: f64,
    pub ext_upper_bound: f64,
}

pub fn ray_modulus(mod0: f64, t: f64) -> Result<RayModulus, OrigamiError> {
    if mod0.is_nan() || mod0 <= 0.0 || !mod0.is_finite() {
        return Err(OrigamiError::OutOfRange(format!(
            "initial modulus {mod0} must be positive"
        )));
    }
    if !t.is_finite() {
        return Err(OrigamiError::OutOfRange(format!("time {t} is not finite")));
    }
    let modulus = (2.0 * t).exp() * mod0;
    Ok(RayModulus {
        modulus,
        ext_upper_bound: 1.0 / modulus,
    })
}

/// Exact variant for rational stretch factors `λ = e^t`: returns
/// `(λ²·mod₀, 1/(λ²·mod₀))`.
pub fn ray_modulus_exact(
    mod0: &BigRational,
    stretch: &BigRational,
) -> Result<(BigRational, BigRational), OrigamiError> {
    if !mod0.is_positive() {
        return Err(OrigamiError::OutOfRange(format!(
            "initial modulus {mod0} must be positive"
        )));
    }
    if stretch.is_zero() || stretch.is_negative() {
        return Err(OrigamiError::OutOfRange(format!(
            "stretch factor {stretch} must be positive"
        )));
    }
    let modulus = stretch * stretch * mod0;
    let bound = BigRational::one() / &modulus;
    Ok((modulus, bound))
}

/// Convenience for small rationals.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        let r = ray_modulus(1.0, 0.0).unwrap();
        assert_eq!((r.modulus, r.ext_upper_bound), (1.0, 1.0));
        let r = ray_modulus(1.0, 0.5 * 2f64.ln()).unwrap();
        assert!((r.modulus - 2.0).abs() < 1e-15);
        assert!((r.ext_upper_bound - 0.5).abs() < 1e-15);
    }

    #[test]
    fn exponential_law() {
        let (m0, t) = (0.37, 1.3);
        let m_t = ray_modulus(m0, t).unwrap().modulus;
        let m_2t = ray_modulus(m0, 2.0 * t).unwrap().modulus;
        assert!((m_2t - m_t * m_t / m0).abs() / m_2t < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ray_modulus(0.0, 1.0).is_err());
        assert!(ray_modulus(-1.0, 1.0).is_err());
        assert!(ray_modulus(f64::NAN, 1.0).is_err());
        assert!(ray_modulus_exact(&ratio(0, 1), &ratio(1, 1)).is_err());
        assert!(ray_modulus_exact(&ratio(1, 1), &ratio(-1, 2)).is_err());
    }

    #[test]
    fn exact_product_is_one() {
        let (m, e) = ray_modulus_exact(&ratio(3, 7), &ratio(5, 2)).unwrap();
        assert_eq!(m, ratio(75, 28));
        assert_eq!(m * e, BigRational::one());
    }
}
